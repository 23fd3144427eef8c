//! The twisted module of a quadrangulated surface: free over the group
//! ring of first homology, with one basis bitstring per choice of basic
//! sutures, graded by Euler class.

use crate::basis::{BitString, Gf2Vector, Grading};
use crate::group_ring::{GroupRingElement, HomologyLattice, RingMap};
use crate::surface::QuadSurface;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("module mismatch: {0}")]
    ModuleMismatch(String),
    #[error("ring error: {0}")]
    Ring(#[from] crate::group_ring::RingError),
    #[error("surface error: {0}")]
    Surface(#[from] crate::surface::SurfaceError),
    #[error("{0}")]
    Invalid(String),
}

/// The free graded module attached to a quadrangulated surface: rank `2^I`
/// over the group ring, basis bitstrings graded by ones minus zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqftModule {
    lattice: HomologyLattice,
    index: usize,
}

impl SqftModule {
    pub fn new(lattice: HomologyLattice, index: usize) -> Self {
        SqftModule { lattice, index }
    }

    /// The module of a surface: index from its statistics, one group-ring
    /// variable per fundamental loop of the spine.
    pub fn of_surface(qs: &QuadSurface) -> Result<Self, AlgebraError> {
        let stats = qs.stats()?;
        let basis = qs.h1_basis()?;
        let labels: Vec<String> = basis
            .loops
            .iter()
            .map(|l| format!("l{}", l.generator_edge))
            .collect();
        Ok(SqftModule {
            lattice: HomologyLattice::new(labels).expect("loop labels are distinct"),
            index: stats.index as usize,
        })
    }

    pub fn lattice(&self) -> &HomologyLattice {
        &self.lattice
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Total rank over the ring.
    pub fn rank(&self) -> u64 {
        1u64 << self.index
    }

    pub fn basis(&self) -> impl Iterator<Item = BitString> {
        BitString::all(self.index)
    }

    /// Rank of the graded summand at grading `e`: zero unless `|e| <= I`
    /// and `e = I (mod 2)`, in which case it is `C(I, (I+e)/2)`.
    pub fn graded_rank(&self, e: i64) -> u64 {
        let index = self.index as i64;
        if e.abs() > index || (e - index) % 2 != 0 {
            return 0;
        }
        let k = ((index + e) / 2) as u64;
        binomial(self.index as u64, k)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// A vector in the module: finitely many basis bitstrings with nonzero
/// group-ring coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqftVector {
    module: SqftModule,
    terms: BTreeMap<BitString, GroupRingElement>,
}

impl SqftVector {
    pub fn zero(module: &SqftModule) -> Self {
        SqftVector {
            module: module.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(module: &SqftModule, b: BitString) -> Self {
        Self::single(module, b, GroupRingElement::one(module.lattice()))
    }

    pub fn single(module: &SqftModule, b: BitString, coef: GroupRingElement) -> Self {
        assert_eq!(b.len(), module.index());
        let mut v = Self::zero(module);
        v.accumulate(b, coef);
        v
    }

    pub fn module(&self) -> &SqftModule {
        &self.module
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BitString, &GroupRingElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: &BitString) -> Option<&GroupRingElement> {
        self.terms.get(b)
    }

    fn accumulate(&mut self, b: BitString, coef: GroupRingElement) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coef).expect("same lattice");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SqftVector) -> Result<SqftVector, AlgebraError> {
        self.check_module(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &GroupRingElement) -> Result<SqftVector, AlgebraError> {
        let mut out = Self::zero(&self.module);
        for (b, c) in &self.terms {
            out.accumulate(*b, c.mul(r)?);
        }
        Ok(out)
    }

    fn check_module(&self, other: &SqftVector) -> Result<(), AlgebraError> {
        if self.module != other.module {
            return Err(AlgebraError::ModuleMismatch(format!(
                "index {} vs {}",
                self.module.index(),
                other.module.index()
            )));
        }
        Ok(())
    }

    /// Common grading of the support.
    pub fn grading(&self) -> Grading {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Grading::Zero,
            Some(b) => b.grading(),
        };
        if it.all(|b| b.grading() == first) {
            Grading::Homogeneous(first)
        } else {
            Grading::Mixed
        }
    }

    /// Digital creation: append a `1` (positive) or `0` (negative) slot to
    /// every basis string; the target module has index one higher.
    pub fn create(&self, positive: bool) -> SqftVector {
        let target = SqftModule::new(self.module.lattice().clone(), self.module.index() + 1);
        let mut out = SqftVector::zero(&target);
        for (b, c) in &self.terms {
            out.accumulate(b.push(positive), c.clone());
        }
        out
    }

    /// Reduce every coefficient mod 2; the identity on basis strings.
    pub fn reduce_module(&self) -> Gf2Vector {
        let mut out = Gf2Vector::zero();
        for (b, c) in &self.terms {
            if c.reduce_mod2() == 1 {
                out.toggle(*b);
            }
        }
        out
    }

    /// Equality up to a single unit factor.
    pub fn orbit_eq(&self, other: &SqftVector) -> Result<bool, AlgebraError> {
        self.check_module(other)?;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(true),
            (true, false) | (false, true) => return Ok(false),
            _ => {}
        }
        if self.terms.len() != other.terms.len() {
            return Ok(false);
        }
        let (b0, c0) = self.terms.iter().next().unwrap();
        let Some(d0) = other.terms.get(b0) else {
            return Ok(false);
        };
        let Some(unit) = c0.unit_ratio(d0)? else {
            return Ok(false);
        };
        if !unit.is_unit() {
            return Ok(false);
        }
        for (b, c) in &self.terms {
            let Some(d) = other.terms.get(b) else {
                return Ok(false);
            };
            if unit.mul(d)? != *c {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Digital annihilation over GF(2) at a tensor slot.
///
/// Deleting value `v` at slot `p`: strings carrying `v` there simply lose
/// the slot; strings carrying the other value lose the slot and flip one
/// matching value elsewhere, summed over all choices.
pub fn annihilate(v: &Gf2Vector, delete_one: bool, slot: usize) -> Gf2Vector {
    let mut out = Gf2Vector::zero();
    for b in v.support() {
        assert!(slot < b.len(), "slot {slot} out of range");
        if b.get(slot) == delete_one {
            out.toggle(b.delete(slot));
        } else {
            for j in 0..b.len() {
                if j != slot && b.get(j) == delete_one {
                    out.toggle(b.flipped(j).delete(slot));
                }
            }
        }
    }
    out
}

/// GF(2) digital creation, for reduced vectors.
pub fn create_gf2(v: &Gf2Vector, positive: bool) -> Gf2Vector {
    let mut out = Gf2Vector::zero();
    for b in v.support() {
        out.toggle(b.push(positive));
    }
    out
}

/// A graded module homomorphism presented by a matrix of group-ring
/// entries over a ring map, with a degree shift.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: SqftModule,
    target: SqftModule,
    ring_map: RingMap,
    /// entries[(target basis, source basis)] over the target lattice.
    entries: BTreeMap<(BitString, BitString), GroupRingElement>,
    degree: i64,
}

impl GradedMap {
    pub fn new(
        source: SqftModule,
        target: SqftModule,
        ring_map: RingMap,
        entries: BTreeMap<(BitString, BitString), GroupRingElement>,
        degree: i64,
    ) -> Result<Self, AlgebraError> {
        if ring_map.source() != source.lattice() || ring_map.target() != target.lattice() {
            return Err(AlgebraError::ModuleMismatch(
                "ring map does not match module lattices".into(),
            ));
        }
        for ((t, s), c) in &entries {
            if t.len() != target.index() || s.len() != source.index() {
                return Err(AlgebraError::ModuleMismatch(
                    "entry basis length mismatch".into(),
                ));
            }
            if c.lattice() != target.lattice() {
                return Err(AlgebraError::ModuleMismatch(
                    "entry coefficient over wrong lattice".into(),
                ));
            }
            if !c.is_zero() && t.grading() != s.grading() + degree {
                return Err(AlgebraError::Invalid(format!(
                    "entry {t} <- {s} violates degree {degree}"
                )));
            }
        }
        Ok(GradedMap {
            source,
            target,
            ring_map,
            entries,
            degree,
        })
    }

    /// The map of a standard gluing: squares are in bijection, the matrix
    /// is the identity on basis strings over the induced ring map.
    pub fn standard_gluing(
        source_qs: &QuadSurface,
        target_qs: &QuadSurface,
        ring_map: RingMap,
    ) -> Result<Self, AlgebraError> {
        if source_qs.square_count() != target_qs.square_count() {
            return Err(AlgebraError::ModuleMismatch(format!(
                "square counts differ: {} vs {}",
                source_qs.square_count(),
                target_qs.square_count()
            )));
        }
        let source = SqftModule::of_surface(source_qs)?;
        let target = SqftModule::of_surface(target_qs)?;
        if ring_map.source() != source.lattice() || ring_map.target() != target.lattice() {
            return Err(AlgebraError::ModuleMismatch(
                "ring map does not match the surface lattices".into(),
            ));
        }
        let one = GroupRingElement::one(target.lattice());
        let entries = source.basis().map(|b| ((b, b), one.clone())).collect();
        GradedMap::new(source, target, ring_map, entries, 0)
    }

    pub fn source(&self) -> &SqftModule {
        &self.source
    }

    pub fn target(&self) -> &SqftModule {
        &self.target
    }

    pub fn ring_map(&self) -> &RingMap {
        &self.ring_map
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn apply(&self, v: &SqftVector) -> Result<SqftVector, AlgebraError> {
        if *v.module() != self.source {
            return Err(AlgebraError::ModuleMismatch("apply on wrong module".into()));
        }
        let mut out = SqftVector::zero(&self.target);
        for (s, c) in v.terms() {
            let pushed = self.ring_map.apply(c)?;
            for ((t, s2), entry) in &self.entries {
                if s2 == s {
                    out.accumulate(*t, entry.mul(&pushed)?);
                }
            }
        }
        Ok(out)
    }

    pub fn compose(&self, first: &GradedMap) -> Result<GradedMap, AlgebraError> {
        if first.target != self.source {
            return Err(AlgebraError::ModuleMismatch(
                "composition modules do not match".into(),
            ));
        }
        let ring_map = self.ring_map.compose(&first.ring_map)?;
        let mut entries: BTreeMap<(BitString, BitString), GroupRingElement> = BTreeMap::new();
        for ((t, m), c2) in &self.entries {
            for ((m2, s), c1) in &first.entries {
                if m2 != m {
                    continue;
                }
                let prod = c2.mul(&self.ring_map.apply(c1)?)?;
                if prod.is_zero() {
                    continue;
                }
                match entries.entry((*t, *s)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&prod)?;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        GradedMap::new(
            first.source.clone(),
            self.target.clone(),
            ring_map,
            entries,
            self.degree + first.degree,
        )
    }

    /// The reduced GF(2) matrix applied to a reduced vector.
    pub fn apply_reduced(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zero();
        for s in v.support() {
            for ((t, s2), entry) in &self.entries {
                if s2 == s && entry.reduce_mod2() == 1 {
                    out.toggle(*t);
                }
            }
        }
        out
    }

    /// Equality up to a separate unit in each graded summand of the source.
    pub fn graded_orbit_eq(&self, other: &GradedMap) -> Result<bool, AlgebraError> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree
        {
            return Ok(false);
        }
        let gradings: std::collections::BTreeSet<i64> =
            self.source.basis().map(|b| b.grading()).collect();
        for e in gradings {
            let mine: Vec<SqftVector> = self
                .source
                .basis()
                .filter(|b| b.grading() == e)
                .map(|b| self.apply(&SqftVector::basis(&self.source, b)))
                .collect::<Result<_, _>>()?;
            let theirs: Vec<SqftVector> = other
                .source
                .basis()
                .filter(|b| b.grading() == e)
                .map(|b| other.apply(&SqftVector::basis(&other.source, b)))
                .collect::<Result<_, _>>()?;
            // find the single unit relating the summand blocks
            let mut unit: Option<GroupRingElement> = None;
            for (m, t) in mine.iter().zip(&theirs) {
                for (b, c) in m.terms() {
                    let Some(d) = t.coefficient(b) else {
                        return Ok(false);
                    };
                    match &unit {
                        None => match c.unit_ratio(d)? {
                            Some(u) if u.is_unit() => unit = Some(u),
                            _ => return Ok(false),
                        },
                        Some(u) => {
                            if u.mul(d)? != *c {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
            for (m, t) in mine.iter().zip(&theirs) {
                if m.terms().count() != t.terms().count() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The ring map induced by a move that keeps the spine edges in place:
/// express each fundamental loop of the source spine, read edge-by-edge,
/// in the target's loop basis. For a cycle `z`, the coordinate on a basis
/// loop is the signed coefficient of its generator edge in `z`.
pub fn induced_ring_map(
    source_qs: &QuadSurface,
    target_qs: &QuadSurface,
) -> Result<RingMap, AlgebraError> {
    let source_basis = source_qs.h1_basis()?;
    let target_basis = target_qs.h1_basis()?;
    let source = SqftModule::of_surface(source_qs)?;
    let target = SqftModule::of_surface(target_qs)?;
    let target_generators: Vec<usize> = target_basis
        .loops
        .iter()
        .map(|l| l.generator_edge)
        .collect();
    let mut matrix = vec![vec![0i64; source_basis.loops.len()]; target_generators.len()];
    for (col, l) in source_basis.loops.iter().enumerate() {
        // signed edge vector of the loop
        let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
        for (edge, forward) in &l.steps {
            *coeffs.entry(*edge).or_insert(0) += if *forward { 1 } else { -1 };
        }
        for (row, gen) in target_generators.iter().enumerate() {
            matrix[row][col] = coeffs.get(gen).copied().unwrap_or(0);
        }
    }
    Ok(RingMap::new(
        source.lattice().clone(),
        target.lattice().clone(),
        matrix,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::Slot;

    #[test]
    fn module_ranks() {
        let sq = SqftModule::of_surface(&fixtures::square().surface).unwrap();
        assert_eq!(sq.rank(), 2);
        assert_eq!(sq.lattice().rank(), 0);
        assert_eq!(sq.graded_rank(1), 1);
        assert_eq!(sq.graded_rank(-1), 1);
        assert_eq!(sq.graded_rank(0), 0);

        let vac = SqftModule::of_surface(&fixtures::vacuum().surface).unwrap();
        assert_eq!(vac.rank(), 1);

        let an = SqftModule::of_surface(&fixtures::annulus().surface).unwrap();
        assert_eq!(an.rank(), 4);
        assert_eq!(an.lattice().rank(), 1);

        let pt = SqftModule::of_surface(&fixtures::punctured_torus().surface).unwrap();
        assert_eq!(pt.rank(), 4);
        assert_eq!(pt.lattice().rank(), 2);
    }

    #[test]
    fn graded_ranks_are_binomial() {
        let m = SqftModule::new(HomologyLattice::trivial(), 4);
        assert_eq!(m.graded_rank(0), 6);
        assert_eq!(m.graded_rank(2), 4);
        assert_eq!(m.graded_rank(4), 1);
        assert_eq!(m.graded_rank(1), 0);
        let total: u64 = (-4..=4).map(|e| m.graded_rank(e)).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn grading_examples() {
        let m = SqftModule::new(HomologyLattice::trivial(), 3);
        let v = SqftVector::basis(&m, BitString::parse("011").unwrap());
        assert_eq!(v.grading(), Grading::Homogeneous(1));
        let m2 = SqftModule::new(HomologyLattice::trivial(), 2);
        let w = SqftVector::basis(&m2, BitString::parse("00").unwrap());
        assert_eq!(w.grading(), Grading::Homogeneous(-2));
        let mixed = w
            .add(&SqftVector::basis(&m2, BitString::parse("01").unwrap()))
            .unwrap();
        assert_eq!(mixed.grading(), Grading::Mixed);
    }

    #[test]
    fn create_appends_bits() {
        let m = SqftModule::new(HomologyLattice::trivial(), 1);
        let v = SqftVector::basis(&m, BitString::parse("0").unwrap());
        let up = v.create(true);
        assert_eq!(up.terms().next().unwrap().0.to_string(), "|01>");
        assert_eq!(up.grading(), Grading::Homogeneous(0));
        // zero maps to zero
        let z = SqftVector::zero(&m);
        assert!(z.create(true).is_zero());
        // equivariance: coefficients ride along
        let l = HomologyLattice::new(vec!["q"]).unwrap();
        let m3 = SqftModule::new(l.clone(), 1);
        let q = GroupRingElement::var(&l, 0);
        let v3 = SqftVector::single(&m3, BitString::parse("1").unwrap(), q.clone());
        let up3 = v3.create(true);
        assert_eq!(up3.coefficient(&BitString::parse("11").unwrap()), Some(&q));
    }

    #[test]
    fn annihilate_examples() {
        // a1 deletes a leading 1
        let v = Gf2Vector::basis(BitString::parse("101").unwrap());
        assert_eq!(annihilate(&v, true, 0).to_string(), "|01>");
        // a1 on a leading 0 flips each 1 in turn
        let v = Gf2Vector::basis(BitString::parse("011").unwrap());
        assert_eq!(annihilate(&v, true, 0).to_string(), "|01> + |10>");
        // empty sum
        let v = Gf2Vector::basis(BitString::parse("000").unwrap());
        assert!(annihilate(&v, true, 0).is_zero());
    }

    #[test]
    fn annihilate_create_identities() {
        // brute force over all strings of length <= 4:
        // a1 . create+ = identity, a1 . create- = flip-sum
        for len in 0..4usize {
            for bits in 0..(1u64 << len) {
                let mut b = BitString::new(len);
                for i in 0..len {
                    b.set(i, (bits >> i) & 1 == 1);
                }
                let v = Gf2Vector::basis(b);
                // create appends at the end: annihilate at the last slot
                let created = create_gf2(&v, true);
                assert_eq!(annihilate(&created, true, len), v);
                let created_minus = create_gf2(&v, false);
                let flipped = annihilate(&created_minus, true, len);
                // expected: sum over ones flipped to zero
                let mut expect = Gf2Vector::zero();
                for j in 0..len {
                    if b.get(j) {
                        expect.toggle(b.flipped(j));
                    }
                }
                assert_eq!(flipped, expect);
            }
        }
    }

    #[test]
    fn grading_shifts_under_operators() {
        let m = SqftModule::new(HomologyLattice::trivial(), 2);
        for bits in ["00", "01", "10", "11"] {
            let b = BitString::parse(bits).unwrap();
            let v = SqftVector::basis(&m, b);
            let Grading::Homogeneous(e) = v.grading() else {
                panic!()
            };
            assert_eq!(v.create(true).grading(), Grading::Homogeneous(e + 1));
            assert_eq!(v.create(false).grading(), Grading::Homogeneous(e - 1));
            let reduced = v.reduce_module();
            let ann = annihilate(&reduced, true, 0);
            if let Grading::Homogeneous(ea) = ann.grading() {
                assert_eq!(ea, e - 1);
            }
        }
    }

    #[test]
    fn reduce_module_examples() {
        let l = HomologyLattice::new(vec!["q"]).unwrap();
        let m = SqftModule::new(l.clone(), 2);
        let b01 = BitString::parse("01").unwrap();
        let q = GroupRingElement::var(&l, 0);
        assert_eq!(
            SqftVector::single(&m, b01, q.clone())
                .reduce_module()
                .to_string(),
            "|01>"
        );
        let two = GroupRingElement::constant(&l, 2);
        assert!(SqftVector::single(&m, b01, two).reduce_module().is_zero());
        let one_plus_q = GroupRingElement::one(&l).add(&q).unwrap();
        let b10 = BitString::parse("10").unwrap();
        assert!(SqftVector::single(&m, b10, one_plus_q)
            .reduce_module()
            .is_zero());
    }

    #[test]
    fn reduction_commutes_with_create() {
        let l = HomologyLattice::new(vec!["q"]).unwrap();
        let m = SqftModule::new(l.clone(), 2);
        let q = GroupRingElement::var(&l, 0);
        let v = SqftVector::single(&m, BitString::parse("01").unwrap(), q)
            .add(&SqftVector::basis(&m, BitString::parse("10").unwrap()))
            .unwrap();
        for sign in [true, false] {
            assert_eq!(
                v.create(sign).reduce_module(),
                create_gf2(&v.reduce_module(), sign)
            );
        }
    }

    #[test]
    fn orbit_eq_examples() {
        let l = HomologyLattice::new(vec!["q"]).unwrap();
        let m = SqftModule::new(l.clone(), 2);
        let b01 = BitString::parse("01").unwrap();
        let b10 = BitString::parse("10").unwrap();
        let v = SqftVector::basis(&m, b01);
        let neg_q = GroupRingElement::monomial(&l, vec![1], -1);
        let w = SqftVector::single(&m, b01, neg_q);
        assert!(v.orbit_eq(&w).unwrap());
        assert!(!v.orbit_eq(&SqftVector::basis(&m, b10)).unwrap());
        let z = SqftVector::zero(&m);
        assert!(z.orbit_eq(&z).unwrap());
        // 2x is not in the orbit of x
        let two = GroupRingElement::constant(&l, 2);
        assert!(!v.orbit_eq(&v.scale(&two).unwrap()).unwrap());
    }

    #[test]
    fn standard_gluing_map_is_identity_on_basis() {
        let two = QuadSurface::disjoint_squares(2);
        let glued = two.standard_glue(Slot::new(0, 3), Slot::new(1, 2)).unwrap();
        let rm = induced_ring_map(&two, &glued).unwrap();
        let map = GradedMap::standard_gluing(&two, &glued, rm).unwrap();
        let src = map.source().clone();
        for b in src.basis() {
            let img = map.apply(&SqftVector::basis(&src, b)).unwrap();
            assert_eq!(img.terms().count(), 1);
            let (tb, c) = img.terms().next().unwrap();
            assert_eq!(*tb, b);
            assert!(c.is_unit());
        }
        assert_eq!(map.degree(), 0);
    }

    #[test]
    fn gluing_maps_compose() {
        // two squares -> disc6 -> annulus: compose the two gluing maps
        let two = QuadSurface::disjoint_squares(2);
        let strip = two.standard_glue(Slot::new(0, 0), Slot::new(1, 1)).unwrap();
        let annulus = strip
            .standard_glue(Slot::new(0, 2), Slot::new(1, 3))
            .unwrap();
        let m1 = GradedMap::standard_gluing(&two, &strip, induced_ring_map(&two, &strip).unwrap())
            .unwrap();
        let m2 = GradedMap::standard_gluing(
            &strip,
            &annulus,
            induced_ring_map(&strip, &annulus).unwrap(),
        )
        .unwrap();
        let composite = m2.compose(&m1).unwrap();
        let direct =
            GradedMap::standard_gluing(&two, &annulus, induced_ring_map(&two, &annulus).unwrap())
                .unwrap();
        // on every basis vector the two agree
        let src = composite.source().clone();
        for b in src.basis() {
            let v = SqftVector::basis(&src, b);
            assert_eq!(composite.apply(&v).unwrap(), direct.apply(&v).unwrap());
        }
        assert!(composite.graded_orbit_eq(&direct).unwrap());
    }

    #[test]
    fn reduced_map_commutes() {
        let two = QuadSurface::disjoint_squares(2);
        let glued = two.standard_glue(Slot::new(0, 3), Slot::new(1, 2)).unwrap();
        let map = GradedMap::standard_gluing(&two, &glued, induced_ring_map(&two, &glued).unwrap())
            .unwrap();
        let src = map.source().clone();
        for b in src.basis() {
            let v = SqftVector::basis(&src, b);
            assert_eq!(
                map.apply(&v).unwrap().reduce_module(),
                map.apply_reduced(&v.reduce_module())
            );
        }
    }

    #[test]
    fn basic_suture_elements_match_bit_labels() {
        // on every corpus surface, the mod-2 element of each basic system
        // is the basis vector with bit 1 exactly at positive squares
        let mut surfaces: Vec<QuadSurface> = ["square", "disc6", "annulus", "punctured-torus"]
            .iter()
            .map(|n| fixtures::fixture(n).unwrap().surface)
            .collect();
        let mut rng = crate::rng::SplitMix64::new(4242);
        for _ in 0..10 {
            surfaces.push(crate::corpus::random_surface(&mut rng, 4));
        }
        for (si, qs) in surfaces.iter().enumerate() {
            let n = qs.square_count();
            for bits in 0..(1u32 << n) {
                let assignment: Vec<bool> = (0..n).map(|i| (bits >> i) & 1 == 1).collect();
                let sys = crate::suture::basic(qs, &assignment).unwrap();
                let v = crate::suture::suture_element_mod2(
                    qs,
                    &sys,
                    crate::suture::ReductionStrategy::Deterministic,
                    1 << 20,
                )
                .unwrap();
                let expect = Gf2Vector::basis(BitString::from_bits(&assignment));
                assert_eq!(v, expect, "surface {si} {assignment:?}");
            }
        }
    }
}
