//! Exact rational linear feasibility by Fourier-Motzkin elimination.
//!
//! Decides whether a system of inequalities `sum a_i x_i >= b` has a
//! rational solution, and produces one when it does. Dimensions here are
//! tiny (one variable per periodic-domain generator), where elimination is
//! exact and fast.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One inequality `coeffs . x >= bound`.
#[derive(Clone, Debug)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub bound: BigRational,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, bound: BigRational) -> Self {
        Inequality { coeffs, bound }
    }

    pub fn from_ints(coeffs: &[i64], bound: i64) -> Self {
        Inequality {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
            bound: BigRational::from(BigInt::from(bound)),
        }
    }
}

/// Find a rational point satisfying every inequality, if one exists.
pub fn solve(system: &[Inequality], nvars: usize) -> Option<Vec<BigRational>> {
    if nvars == 0 {
        for ineq in system {
            if ineq.bound.is_positive() {
                return None;
            }
        }
        return Some(Vec::new());
    }
    let var = nvars - 1;
    // split on the sign of the coefficient of the last variable
    let mut lowers = Vec::new(); // x_var >= expr
    let mut uppers = Vec::new(); // x_var <= expr
    let mut rest = Vec::new();
    for ineq in system {
        let a = &ineq.coeffs[var];
        if a.is_zero() {
            rest.push(Inequality {
                coeffs: ineq.coeffs[..var].to_vec(),
                bound: ineq.bound.clone(),
            });
        } else {
            // x_var >= (bound - sum_{i<var} c_i x_i) / a when a > 0
            let inv = BigRational::one() / a;
            let coeffs: Vec<BigRational> = ineq.coeffs[..var].iter().map(|c| -(c * &inv)).collect();
            let bound = &ineq.bound * &inv;
            if a.is_positive() {
                lowers.push((coeffs, bound));
            } else {
                uppers.push((coeffs, bound));
            }
        }
    }
    // every lower must not exceed any upper
    for (lc, lb) in &lowers {
        for (uc, ub) in &uppers {
            // lb + lc.x <= ub + uc.x  <=>  (uc - lc).x >= lb - ub
            let coeffs: Vec<BigRational> = uc.iter().zip(lc).map(|(u, l)| u - l).collect();
            rest.push(Inequality {
                coeffs,
                bound: lb - ub,
            });
        }
    }
    let partial = solve(&rest, nvars - 1)?;
    let eval = |expr: &(Vec<BigRational>, BigRational)| -> BigRational {
        let (coeffs, bound) = expr;
        bound
            + coeffs
                .iter()
                .zip(&partial)
                .map(|(c, x)| c * x)
                .sum::<BigRational>()
    };
    let lo = lowers.iter().map(eval).max();
    let hi = uppers.iter().map(eval).min();
    let value = match (lo, hi) {
        (Some(l), Some(h)) => {
            debug_assert!(l <= h);
            (l + h) / BigRational::from(BigInt::from(2))
        }
        (Some(l), None) => l,
        (None, Some(h)) => h,
        (None, None) => BigRational::zero(),
    };
    let mut out = partial;
    out.push(value);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(system: &[Inequality], nvars: usize) -> Option<Vec<BigRational>> {
        let sol = solve(system, nvars)?;
        for ineq in system {
            let lhs: BigRational = ineq.coeffs.iter().zip(&sol).map(|(c, x)| c * x).sum();
            assert!(lhs >= ineq.bound, "violated: {ineq:?} at {sol:?}");
        }
        Some(sol)
    }

    #[test]
    fn feasible_box() {
        // 0 <= x <= 1, 0 <= y <= 1, x + y >= 3/2
        let system = vec![
            Inequality::from_ints(&[1, 0], 0),
            Inequality::from_ints(&[-1, 0], -1),
            Inequality::from_ints(&[0, 1], 0),
            Inequality::from_ints(&[0, -1], -1),
            Inequality::new(
                vec![BigRational::one(), BigRational::one()],
                BigRational::new(BigInt::from(3), BigInt::from(2)),
            ),
        ];
        assert!(check(&system, 2).is_some());
    }

    #[test]
    fn infeasible_pair() {
        // x >= 1 and -x >= 0
        let system = vec![
            Inequality::from_ints(&[1], 1),
            Inequality::from_ints(&[-1], 0),
        ];
        assert!(solve(&system, 1).is_none());
    }

    #[test]
    fn equality_encoded_as_two() {
        // x + y = 1, x >= 0, y >= 0, x - y >= 1 forces (1, 0)
        let system = vec![
            Inequality::from_ints(&[1, 1], 1),
            Inequality::from_ints(&[-1, -1], -1),
            Inequality::from_ints(&[1, 0], 0),
            Inequality::from_ints(&[0, 1], 0),
            Inequality::from_ints(&[1, -1], 1),
        ];
        let sol = check(&system, 2).unwrap();
        assert_eq!(sol[0], BigRational::one());
        assert!(sol[1].is_zero());
    }

    #[test]
    fn infeasible_mixed_signs() {
        // x in span{(1,-1)}, x >= 0, sum = 1: impossible
        // lambda - mu? single generator (1,-1): lambda >= 0 and -lambda >= 0
        // and (lambda)+(-lambda) = 1 impossible
        let system = vec![
            Inequality::from_ints(&[1], 0),
            Inequality::from_ints(&[-1], 0),
            Inequality::from_ints(&[0], 1),
        ];
        assert!(solve(&system, 1).is_none());
    }
}
