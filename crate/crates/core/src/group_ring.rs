//! Exact arithmetic in group rings of free abelian groups.
//!
//! The coefficient ring attached to a surface is the group ring of its first
//! homology, a Laurent polynomial ring in one variable per homology
//! generator. Elements are stored as sorted maps from exponent vectors to
//! nonzero arbitrary-precision integer coefficients, so serialization and
//! memoization keys are canonical. Units are exactly the signed monomials,
//! which is what makes unit-orbit equality a cheap monomial-ratio test.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("lattice mismatch: {0} vs {1}")]
    LatticeMismatch(String, String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("matrix is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("exponent vector has length {got}, lattice rank is {want}")]
    ExponentLength { got: usize, want: usize },
}

/// A free abelian group with a chosen ordered basis, named by opaque labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyLattice {
    labels: Vec<String>,
}

impl HomologyLattice {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self, RingError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(RingError::DuplicateLabel(l.clone()));
            }
        }
        Ok(HomologyLattice { labels })
    }

    /// The rank-zero lattice (trivial homology).
    pub fn trivial() -> Self {
        HomologyLattice { labels: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn describe(&self) -> String {
        format!("[{}]", self.labels.join(","))
    }
}

/// An element of the group ring: a finite integer combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    lattice: HomologyLattice,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl GroupRingElement {
    pub fn zero(lattice: &HomologyLattice) -> Self {
        GroupRingElement {
            lattice: lattice.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lattice: &HomologyLattice) -> Self {
        Self::monomial(lattice, vec![0; lattice.rank()], 1)
    }

    pub fn constant(lattice: &HomologyLattice, c: impl Into<BigInt>) -> Self {
        Self::monomial(lattice, vec![0; lattice.rank()], c)
    }

    /// The generator monomial `q_i`.
    pub fn var(lattice: &HomologyLattice, i: usize) -> Self {
        assert!(i < lattice.rank());
        let mut exp = vec![0; lattice.rank()];
        exp[i] = 1;
        Self::monomial(lattice, exp, 1)
    }

    pub fn monomial(lattice: &HomologyLattice, exp: Vec<i64>, coef: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), lattice.rank());
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        GroupRingElement {
            lattice: lattice.clone(),
            terms,
        }
    }

    pub fn from_terms(
        lattice: &HomologyLattice,
        entries: impl IntoIterator<Item = (Vec<i64>, BigInt)>,
    ) -> Result<Self, RingError> {
        let mut out = Self::zero(lattice);
        for (exp, coef) in entries {
            if exp.len() != lattice.rank() {
                return Err(RingError::ExponentLength {
                    got: exp.len(),
                    want: lattice.rank(),
                });
            }
            out.accumulate(exp, coef);
        }
        Ok(out)
    }

    pub fn lattice(&self) -> &HomologyLattice {
        &self.lattice
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, exp: Vec<i64>, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_lattice(&self, other: &GroupRingElement) -> Result<(), RingError> {
        if self.lattice != other.lattice {
            return Err(RingError::LatticeMismatch(
                self.lattice.describe(),
                other.lattice.describe(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        self.check_lattice(other)?;
        let mut out = self.clone();
        for (exp, coef) in &other.terms {
            out.accumulate(exp.clone(), coef.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            lattice: self.lattice.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        self.add(&other.neg())
    }

    /// Convolution product: exponents add, coefficients multiply.
    pub fn mul(&self, other: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        self.check_lattice(other)?;
        let mut out = Self::zero(&self.lattice);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.accumulate(exp, ca * cb);
            }
        }
        Ok(out)
    }

    /// True iff the element is a unit, i.e. a single monomial with
    /// coefficient plus or minus one.
    pub fn is_unit(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let coef = self.terms.values().next().unwrap();
        coef.abs().is_one()
    }

    /// The inverse of a unit: negate the exponent, keep the sign.
    pub fn unit_inverse(&self) -> Option<GroupRingElement> {
        if !self.is_unit() {
            return None;
        }
        let (exp, coef) = self.terms.iter().next().unwrap();
        Some(Self::monomial(
            &self.lattice,
            exp.iter().map(|x| -x).collect(),
            coef.clone(),
        ))
    }

    /// If `self = u * other` for a unit `u`, return `u`.
    ///
    /// Candidate found from the lexicographically least monomials of each
    /// support, then verified by exact multiplication.
    pub fn unit_ratio(
        &self,
        other: &GroupRingElement,
    ) -> Result<Option<GroupRingElement>, RingError> {
        self.check_lattice(other)?;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(Some(Self::one(&self.lattice))),
            (true, false) | (false, true) => return Ok(None),
            _ => {}
        }
        if self.terms.len() != other.terms.len() {
            return Ok(None);
        }
        let (ea, ca) = self.terms.iter().next().unwrap();
        let (eb, cb) = other.terms.iter().next().unwrap();
        let sign = if ca == cb {
            BigInt::one()
        } else if *ca == -cb {
            -BigInt::one()
        } else {
            return Ok(None);
        };
        let exp: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x - y).collect();
        let u = Self::monomial(&self.lattice, exp, sign);
        if u.mul(other)? == *self {
            Ok(Some(u))
        } else {
            Ok(None)
        }
    }

    /// True iff the two elements lie in the same unit orbit.
    pub fn unit_orbit_eq(&self, other: &GroupRingElement) -> Result<bool, RingError> {
        Ok(self.unit_ratio(other)?.is_some())
    }

    /// Sum of all coefficients, reduced mod 2. This is the composite of the
    /// augmentation (all variables to 1) with reduction to the two-element
    /// field; it sends every unit to 1.
    #[allow(clippy::manual_rem_euclid)] // BigInt has no rem_euclid
    pub fn reduce_mod2(&self) -> u8 {
        let sum: BigInt = self.terms.values().sum();
        let r: BigInt = ((sum % 2) + 2) % 2;
        if r.is_zero() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, coef)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (j, e) in exp.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&self.lattice.labels[j]);
                if *e != 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let lead = if i == 0 { "" } else { " " };
            if mono.is_empty() {
                if i == 0 {
                    write!(f, "{coef}")?;
                } else if coef.is_negative() {
                    write!(f, "{lead}- {}", coef.abs())?;
                } else {
                    write!(f, "{lead}+ {coef}")?;
                }
            } else {
                let mag = coef.abs();
                let c = if mag.is_one() {
                    String::new()
                } else {
                    format!("{mag}*")
                };
                if i == 0 {
                    let s = if coef.is_negative() { "-" } else { "" };
                    write!(f, "{s}{c}{mono}")?;
                } else {
                    let s = if coef.is_negative() { "-" } else { "+" };
                    write!(f, "{lead}{s} {c}{mono}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<i64>,
    coef: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    lattice: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for GroupRingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = ElementRepr {
            lattice: self.lattice.labels.clone(),
            terms: self
                .terms
                .iter()
                .map(|(exp, coef)| TermRepr {
                    exp: exp.clone(),
                    coef: serde_json::Number::from_string_unchecked(coef.to_string()),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupRingElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let lattice = HomologyLattice::new(repr.lattice).map_err(D::Error::custom)?;
        let mut entries = Vec::new();
        for t in repr.terms {
            let coef: BigInt = t
                .coef
                .to_string()
                .parse()
                .map_err(|_| D::Error::custom("coefficient is not an integer"))?;
            entries.push((t.exp, coef));
        }
        GroupRingElement::from_terms(&lattice, entries).map_err(D::Error::custom)
    }
}

/// An integer matrix presenting a homomorphism of homology lattices; induces
/// a ring homomorphism on group rings by mapping monomial exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMap {
    source: HomologyLattice,
    target: HomologyLattice,
    /// `target.rank()` rows by `source.rank()` columns.
    matrix: Vec<Vec<i64>>,
}

impl RingMap {
    pub fn new(
        source: HomologyLattice,
        target: HomologyLattice,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self, RingError> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        if rows != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(RingError::MatrixShape {
                rows,
                cols,
                want_rows: target.rank(),
                want_cols: source.rank(),
            });
        }
        Ok(RingMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(lattice: &HomologyLattice) -> Self {
        let n = lattice.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        RingMap {
            source: lattice.clone(),
            target: lattice.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &HomologyLattice {
        &self.source
    }

    pub fn target(&self) -> &HomologyLattice {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    fn map_exponent(&self, exp: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(exp).map(|(m, e)| m * e).sum())
            .collect()
    }

    /// Push an element forward: map each monomial's exponent vector through
    /// the matrix, summing coefficients of collided monomials.
    pub fn apply(&self, elem: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        if *elem.lattice() != self.source {
            return Err(RingError::LatticeMismatch(
                elem.lattice().describe(),
                self.source.describe(),
            ));
        }
        let mut out = GroupRingElement::zero(&self.target);
        for (exp, coef) in &elem.terms {
            out.accumulate(self.map_exponent(exp), coef.clone());
        }
        Ok(out)
    }

    /// The composite `self . other` (apply `other` first).
    pub fn compose(&self, other: &RingMap) -> Result<RingMap, RingError> {
        if other.target != self.source {
            return Err(RingError::LatticeMismatch(
                other.target.describe(),
                self.source.describe(),
            ));
        }
        let rows = self.target.rank();
        let mid = self.source.rank();
        let cols = other.source.rank();
        let mut matrix = vec![vec![0i64; cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                matrix[i][j] = (0..mid)
                    .map(|k| self.matrix[i][k] * other.matrix[k][j])
                    .sum();
            }
        }
        Ok(RingMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix,
        })
    }
}
