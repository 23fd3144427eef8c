//! Symbolic Heegaard diagrams assembled from blocks over the squares of a
//! quadrangulation.
//!
//! The diagram is fully determined by the positive spine: one alpha and one
//! beta curve per edge, one region per wedge. Alpha curves split into two
//! arcs indexed by half-edges, beta curves into two arcs indexed by sides;
//! region boundaries carry the signs that make every combinatorial domain
//! built from a spine loop a periodic domain. Admissibility is decided
//! exactly over the rational span of the domain basis, and restored
//! constructively by always-turn-left finger isotopies.

use crate::algebra::{induced_ring_map, AlgebraError, SqftModule};
use crate::feasibility::{solve, Inequality};
use crate::group_ring::RingMap;
use crate::surface::{outgoing_side, QuadSurface, Slot, SpineMap, SurfaceError};
use crate::tape_graph::TapeGraph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeegaardError {
    #[error("surface error: {0}")]
    Surface(#[from] SurfaceError),
    #[error("tape graph error: {0}")]
    Tape(#[from] crate::tape_graph::TapeGraphError),
    #[error("algebra error: {0}")]
    Algebra(String),
    #[error("no spine vertex has degree at least two")]
    NothingToDecompose,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<AlgebraError> for HeegaardError {
    fn from(e: AlgebraError) -> Self {
        HeegaardError::Algebra(e.to_string())
    }
}

/// A region of the diagram: a wedge of the spine, keyed by vertex id and
/// position.
pub type WedgeId = (u64, usize);

/// An arc of the diagram. Alpha arcs are indexed by the half-edge they run
/// along; beta arcs by the side they cross, labeled by the half-edge whose
/// lower half-side lies on that side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Arc {
    Alpha(u64),
    Beta(u64),
}

/// Aggregate statistics of the Heegaard surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeegaardStats {
    pub curve_count: usize,
    pub euler_char: i64,
    pub boundary_components: i64,
    pub genus: i64,
}

#[derive(Clone, Debug)]
pub struct Region {
    pub wedge: WedgeId,
    pub barrier: bool,
    /// Signed bounding arcs; barrier regions also touch the surface
    /// boundary.
    pub arcs: Vec<(Arc, i64)>,
}

#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    qs: QuadSurface,
    spine: TapeGraph,
    spine_map: SpineMap,
    regions: Vec<Region>,
}

/// An integer combination of internal regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicDomain {
    pub coefficients: BTreeMap<WedgeId, i64>,
    /// The non-forest spine edge whose loop generated this domain, when it
    /// came from the basis.
    pub generator_edge: Option<usize>,
}

impl PeriodicDomain {
    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(|c| *c == 0)
    }

    pub fn is_one_signed(&self) -> bool {
        let pos = self.coefficients.values().any(|c| *c > 0);
        let neg = self.coefficients.values().any(|c| *c < 0);
        !(pos && neg)
    }
}

/// A finger-move isotopy arc restoring admissibility for one beta side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaArc {
    /// The half-edge whose beta side the arc serves.
    pub halfedge: u64,
    pub vertex: u64,
    /// One-based index of the half-edge at its vertex.
    pub index: usize,
    /// Wedges the finger sweeps through, from `w_{j-1}` down to `w_1`.
    pub swept: Vec<WedgeId>,
    /// The barrier wedge `w_0` the finger ends in.
    pub terminal: WedgeId,
    /// Alpha arcs crossed on the way: those of the lower-ordered
    /// half-edges.
    pub crossed_alpha: Vec<u64>,
}

/// Per-side admissibility witness after isotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideAccess {
    /// A flanking wedge was already a barrier wedge.
    BarrierWedge(WedgeId),
    /// A finger move makes the terminal barrier wedge adjacent.
    Finger(WedgeId),
}

#[derive(Clone, Debug)]
pub struct AdmissibilityCertificate {
    /// For every edge and each of its two sides (half-edges): the
    /// boundary-adjacent region serving that side.
    pub sides: Vec<(u64, SideAccess)>,
}

#[derive(Clone, Debug)]
pub struct DecompositionStep {
    pub vertex: u64,
    pub degree: usize,
    pub wedge: WedgeId,
    pub cut_edge: (Slot, Slot),
    /// Induced map on homology lattices, from the cut surface into the
    /// uncut one.
    pub iota: RingMap,
    pub certificate: AdmissibilityCertificate,
}

#[derive(Clone, Debug)]
pub struct SfhResult {
    pub module: SqftModule,
    pub trace: Vec<DecompositionStep>,
    pub terminal_surface: QuadSurface,
}

/// Outcome of the raw admissibility decision.
#[derive(Clone, Debug)]
pub enum Admissibility {
    Admissible,
    /// A nonzero non-negative integer periodic domain in the span.
    Inadmissible(PeriodicDomain),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

impl HeegaardDiagram {
    /// Assemble the block diagram of a quadrangulated surface.
    pub fn synth(qs: &QuadSurface) -> Result<Self, HeegaardError> {
        qs.validate()?;
        let (spine, spine_map) = qs.spine(true)?;
        let idx = SpineIndex::build(&spine);
        let mut regions = Vec::new();
        for v in spine.vertices() {
            let d = v.halfedges.len();
            for position in 0..=d {
                let arcs = if d == 0 {
                    Vec::new()
                } else if position == 0 {
                    let h1 = v.halfedges[0];
                    vec![(Arc::Alpha(h1), -idx.eps(h1)), (Arc::Beta(h1), idx.eps(h1))]
                } else if position == d {
                    let hd = v.halfedges[d - 1];
                    let partner = idx.partner(hd);
                    vec![
                        (Arc::Alpha(hd), idx.eps(hd)),
                        (Arc::Beta(partner), -idx.eps(partner)),
                    ]
                } else {
                    let h = v.halfedges[position - 1];
                    let h2 = v.halfedges[position];
                    let partner = idx.partner(h);
                    vec![
                        (Arc::Alpha(h), idx.eps(h)),
                        (Arc::Beta(partner), -idx.eps(partner)),
                        (Arc::Alpha(h2), -idx.eps(h2)),
                        (Arc::Beta(h2), idx.eps(h2)),
                    ]
                };
                regions.push(Region {
                    wedge: (v.id, position),
                    barrier: position == 0 || position == d,
                    arcs,
                });
            }
        }
        Ok(HeegaardDiagram {
            qs: qs.clone(),
            spine,
            spine_map,
            regions,
        })
    }

    pub fn surface(&self) -> &QuadSurface {
        &self.qs
    }

    pub fn spine(&self) -> &TapeGraph {
        &self.spine
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn curve_count(&self) -> usize {
        self.spine.edge_count()
    }

    pub fn stats(&self) -> Result<HeegaardStats, HeegaardError> {
        let st = self.qs.stats()?;
        let euler_char = -2 * st.index;
        let boundary_components = 2 * st.vertex_pairs;
        let genus = 1 - st.euler_char;
        debug_assert_eq!(2 - 2 * genus - boundary_components, euler_char);
        Ok(HeegaardStats {
            curve_count: self.curve_count(),
            euler_char,
            boundary_components,
            genus,
        })
    }

    /// Geometric intersection count of alpha_i with beta_j: two when the
    /// curves sit over the same spine edge, zero otherwise.
    pub fn alpha_beta_intersections(&self, i: usize, j: usize) -> usize {
        if i == j && i < self.spine.edge_count() {
            2
        } else {
            0
        }
    }

    /// Wedge regions in bijection with the edges of the quadrangulation:
    /// barrier wedges with boundary edges, internal wedges with internal
    /// edges. Vacuum wedges carry no square edge.
    pub fn region_edge_bijection(&self) -> Result<BTreeMap<WedgeId, (Slot, bool)>, HeegaardError> {
        let classes = self.qs.vertex_classes()?;
        let mut out = BTreeMap::new();
        for v in self.spine.vertices() {
            let Some(Some(class)) = self.spine_map.vertex_class.get(&v.id) else {
                continue; // vacuum vertex
            };
            let fan = &classes.fans[*class];
            let d = fan.len();
            for position in 0..=d {
                let slot = if position == 0 {
                    crate::surface::incoming_side(fan[0])
                } else {
                    outgoing_side(fan[position - 1])
                };
                let internal = self.qs.glued_to(slot).is_some();
                debug_assert_eq!(internal, position != 0 && position != d);
                out.insert((v.id, position), (slot, internal));
            }
        }
        Ok(out)
    }

    /// The periodic-domain basis: one domain per fundamental loop of the
    /// spine, with wedge coefficients +1 at right-side visits and -1 at
    /// left-side visits.
    pub fn periodic_basis(&self) -> Result<Vec<PeriodicDomain>, HeegaardError> {
        let basis = crate::surface::h1_basis_of_graph(&self.spine);
        let idx = SpineIndex::build(&self.spine);
        let mut out = Vec::new();
        for l in &basis.loops {
            let mut coefficients: BTreeMap<WedgeId, i64> = BTreeMap::new();
            let steps = &l.steps;
            let n = steps.len();
            for i in 0..n {
                let (edge_in, fwd_in) = steps[i];
                let (edge_out, fwd_out) = steps[(i + 1) % n];
                // arrival half-edge of the incoming step, departure of the
                // outgoing
                let he_in = self.spine.edges()[edge_in][usize::from(fwd_in)];
                let he_out = self.spine.edges()[edge_out][usize::from(!fwd_out)];
                let (v_in, pos_in) = idx.at(he_in);
                let (v_out, pos_out) = idx.at(he_out);
                debug_assert_eq!(v_in, v_out, "loop steps must chain");
                let vid = self.spine.vertices()[v_in].id;
                // one-based positions; right visit iff in < out
                let (a, b) = (pos_in + 1, pos_out + 1);
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                for w in lo..hi {
                    *coefficients.entry((vid, w)).or_insert(0) += sign;
                }
            }
            coefficients.retain(|_, c| *c != 0);
            out.push(PeriodicDomain {
                coefficients,
                generator_edge: Some(l.generator_edge),
            });
        }
        Ok(out)
    }

    /// The formal boundary of a domain: signed sum of arcs.
    pub fn boundary_of(&self, domain: &PeriodicDomain) -> BTreeMap<Arc, i64> {
        let region_of: BTreeMap<WedgeId, &Region> =
            self.regions.iter().map(|r| (r.wedge, r)).collect();
        let mut out: BTreeMap<Arc, i64> = BTreeMap::new();
        for (wedge, coeff) in &domain.coefficients {
            let region = region_of[wedge];
            for (arc, sign) in &region.arcs {
                *out.entry(*arc).or_insert(0) += coeff * sign;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// A domain is periodic iff its boundary consists of whole curves: the
    /// two arcs of every alpha and every beta carry equal coefficients.
    pub fn is_periodic(&self, domain: &PeriodicDomain) -> bool {
        let boundary = self.boundary_of(domain);
        let get = |a: Arc| boundary.get(&a).copied().unwrap_or(0);
        self.spine.edges().iter().all(|e| {
            get(Arc::Alpha(e[0])) == get(Arc::Alpha(e[1]))
                && get(Arc::Beta(e[0])) == get(Arc::Beta(e[1]))
        })
    }

    /// Internal wedges in a fixed order.
    fn internal_wedges(&self) -> Vec<WedgeId> {
        self.regions
            .iter()
            .filter(|r| !r.barrier)
            .map(|r| r.wedge)
            .collect()
    }

    /// Decide raw admissibility: inadmissible iff the rational span of the
    /// domain basis contains a nonzero non-negative vector, found by exact
    /// elimination; the witness is cleared to integers.
    pub fn is_admissible_raw(&self) -> Result<Admissibility, HeegaardError> {
        let basis = self.periodic_basis()?;
        if basis.is_empty() {
            return Ok(Admissibility::Admissible);
        }
        let wedges = self.internal_wedges();
        let k = basis.len();
        // variables: lambda_1..lambda_k; constraints:
        //   for each wedge w: sum_e lambda_e D_e[w] >= 0
        //   sum_w sum_e lambda_e D_e[w] = 1 (two inequalities)
        let col =
            |e: usize, w: &WedgeId| -> i64 { basis[e].coefficients.get(w).copied().unwrap_or(0) };
        let mut system = Vec::new();
        for w in &wedges {
            let coeffs: Vec<i64> = (0..k).map(|e| col(e, w)).collect();
            system.push(Inequality::from_ints(&coeffs, 0));
        }
        let totals: Vec<i64> = (0..k)
            .map(|e| wedges.iter().map(|w| col(e, w)).sum())
            .collect();
        system.push(Inequality::from_ints(&totals, 1));
        let neg: Vec<i64> = totals.iter().map(|t| -t).collect();
        system.push(Inequality::from_ints(&neg, -1));
        match solve(&system, k) {
            None => Ok(Admissibility::Admissible),
            Some(lambda) => {
                // witness = lambda . basis, cleared to integers
                let mut coords: Vec<BigRational> = Vec::new();
                for w in &wedges {
                    let x: BigRational = lambda
                        .iter()
                        .enumerate()
                        .map(|(e, l)| l * BigRational::from(BigInt::from(col(e, w))))
                        .sum();
                    coords.push(x);
                }
                let denom_lcm = coords
                    .iter()
                    .map(|c| c.denom().clone())
                    .fold(BigInt::from(1), |acc, d| lcm_big(&acc, &d));
                let mut coefficients = BTreeMap::new();
                for (w, c) in wedges.iter().zip(&coords) {
                    let scaled = c * BigRational::from(denom_lcm.clone());
                    debug_assert!(scaled.is_integer());
                    let as_int = scaled.to_integer();
                    debug_assert!(!as_int.is_negative());
                    if !as_int.is_zero() {
                        let v: i64 = as_int.try_into().map_err(|_| {
                            HeegaardError::Inconsistent("witness overflows i64".into())
                        })?;
                        coefficients.insert(*w, v);
                    }
                }
                Ok(Admissibility::Inadmissible(PeriodicDomain {
                    coefficients,
                    generator_edge: None,
                }))
            }
        }
    }

    /// The finger-move arcs: one per half-edge flanked by internal wedges
    /// on both sides, sweeping down across the lower-ordered half-edges to
    /// the barrier wedge `w_0`.
    pub fn zeta_arcs(&self) -> Result<Vec<ZetaArc>, HeegaardError> {
        let mut out = Vec::new();
        for v in self.spine.vertices() {
            let d = v.halfedges.len();
            for j in 2..d {
                let h = v.halfedges[j - 1];
                let swept: Vec<WedgeId> = (1..j).rev().map(|w| (v.id, w)).collect();
                let crossed_alpha: Vec<u64> = (1..j).rev().map(|p| v.halfedges[p - 1]).collect();
                out.push(ZetaArc {
                    halfedge: h,
                    vertex: v.id,
                    index: j,
                    swept,
                    terminal: (v.id, 0),
                    crossed_alpha,
                });
            }
        }
        Ok(out)
    }

    /// No finger ever sweeps the wedge `w_{d-1}` at a vertex of degree at
    /// least two; the decomposition cuts there.
    pub fn check_disjoint_wedge(&self) -> Result<(), HeegaardError> {
        let arcs = self.zeta_arcs()?;
        for v in self.spine.vertices() {
            let d = v.halfedges.len();
            if d < 2 {
                continue;
            }
            let reserved = (v.id, d - 1);
            for arc in &arcs {
                if arc.swept.contains(&reserved) || arc.terminal == reserved {
                    return Err(HeegaardError::Inconsistent(format!(
                        "zeta arc for half-edge {} sweeps reserved wedge {:?}",
                        arc.halfedge, reserved
                    )));
                }
            }
        }
        Ok(())
    }

    /// After the finger isotopies, every side of every beta curve sees a
    /// boundary-adjacent region.
    pub fn admissibility_certificate(&self) -> Result<AdmissibilityCertificate, HeegaardError> {
        let idx = SpineIndex::build(&self.spine);
        let arcs = self.zeta_arcs()?;
        let mut sides = Vec::new();
        for e in self.spine.edges() {
            for &h in e {
                let (vi, pos) = idx.at(h);
                let v = &self.spine.vertices()[vi];
                let d = v.halfedges.len();
                let j = pos + 1;
                let access = if j == 1 {
                    SideAccess::BarrierWedge((v.id, 0))
                } else if j == d {
                    SideAccess::BarrierWedge((v.id, d))
                } else {
                    let arc = arcs.iter().find(|a| a.halfedge == h).ok_or_else(|| {
                        HeegaardError::Inconsistent(format!(
                            "no zeta arc for internal-flanked half-edge {h}"
                        ))
                    })?;
                    SideAccess::Finger(arc.terminal)
                };
                sides.push((h, access));
            }
        }
        Ok(AdmissibilityCertificate { sides })
    }

    /// Perturbed intersection count after the finger moves: two per curve
    /// pair plus two per alpha crossing of each finger. The extra points
    /// retract away and never enter the homology basis.
    pub fn perturbed_intersections(&self) -> Result<usize, HeegaardError> {
        let arcs = self.zeta_arcs()?;
        let crossings: usize = arcs.iter().map(|a| a.crossed_alpha.len()).sum();
        Ok(2 * self.spine.edge_count() + 2 * crossings)
    }
}

/// One decomposition step: cut the lowest-id vertex of degree >= 2 at its
/// wedge `w_{d-1}`, i.e. cut the corresponding internal edge of the
/// quadrangulation.
pub fn decompose_step(qs: &QuadSurface) -> Result<(QuadSurface, DecompositionStep), HeegaardError> {
    let diagram = HeegaardDiagram::synth(qs)?;
    let bijection = diagram.region_edge_bijection()?;
    let spine = diagram.spine();
    let chosen = spine
        .vertices()
        .iter()
        .find(|v| v.halfedges.len() >= 2)
        .ok_or(HeegaardError::NothingToDecompose)?;
    let d = chosen.halfedges.len();
    let wedge = (chosen.id, d - 1);
    let (slot, internal) = bijection[&wedge];
    if !internal {
        return Err(HeegaardError::Inconsistent(format!(
            "wedge {wedge:?} maps to a boundary edge"
        )));
    }
    let partner = qs
        .glued_to(slot)
        .ok_or_else(|| HeegaardError::Inconsistent("cut edge is unglued".into()))?;
    let cut = qs.cut_internal_edge(slot)?;
    let iota = induced_ring_map(&cut, qs)?;
    let certificate = diagram.admissibility_certificate()?;
    diagram.check_disjoint_wedge()?;
    Ok((
        cut,
        DecompositionStep {
            vertex: chosen.id,
            degree: d,
            wedge,
            cut_edge: (slot, partner),
            iota,
            certificate,
        },
    ))
}

/// Compute the sutured-homology module by decomposing down to disjoint
/// squares. The result is free of rank `2^I` over the group ring of the
/// surface, with basis identified square by square through the trace; at
/// the terminal stage the diagram has no internal regions and a vanishing
/// differential, so generators are the per-block intersection choices.
pub fn sfh(qs: &QuadSurface) -> Result<SfhResult, HeegaardError> {
    let module = SqftModule::of_surface(qs)?;
    let mut trace = Vec::new();
    let mut current = qs.clone();
    loop {
        let has_big_vertex = {
            let (spine, _) = current.spine(true)?;
            spine.vertices().iter().any(|v| v.halfedges.len() >= 2)
        };
        if !has_big_vertex {
            break;
        }
        let (next, step) = decompose_step(&current)?;
        trace.push(step);
        current = next;
    }
    // terminal: disjoint squares and vacua; no internal regions
    let diagram = HeegaardDiagram::synth(&current)?;
    if diagram.regions().iter().any(|r| !r.barrier) {
        return Err(HeegaardError::Inconsistent(
            "terminal diagram retains internal regions".into(),
        ));
    }
    Ok(SfhResult {
        module,
        trace,
        terminal_surface: current,
    })
}

/// Smith normal form diagonal of a small integer matrix.
pub fn smith_diagonal(matrix: &[Vec<i64>]) -> Vec<i64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i64>> = matrix.to_vec();
    let mut out = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // find a nonzero pivot
        let Some((pi, pj)) = (top..rows)
            .flat_map(|i| (top..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(top, pi);
        for row in &mut m {
            row.swap(top, pj);
        }
        // clear the row and column
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in top + 1..rows {
                if m[i][top] != 0 {
                    let q = m[i][top] / m[top][top];
                    for j in top..cols {
                        m[i][j] -= q * m[top][j];
                    }
                    if m[i][top] != 0 {
                        m.swap(top, i);
                        dirty = true;
                    }
                }
            }
            for j in top + 1..cols {
                if m[top][j] != 0 {
                    let q = m[top][j] / m[top][top];
                    for row in m.iter_mut() {
                        row[j] -= q * row[top];
                    }
                    if m[top][j] != 0 {
                        for row in &mut m {
                            row.swap(top, j);
                        }
                        dirty = true;
                    }
                }
            }
        }
        out.push(m[top][top].abs());
        top += 1;
    }
    out.retain(|d| *d != 0);
    // enforce the divisibility chain
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let g = gcd_i64(out[i], out[j]);
            let l = out[i] / g * out[j];
            out[i] = g;
            out[j] = l;
        }
    }
    out
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// True iff the map presented by the matrix is injective with image a
/// direct summand: full column rank with unit elementary divisors.
pub fn is_direct_summand_injection(matrix: &[Vec<i64>], cols: usize) -> bool {
    let diag = smith_diagonal(matrix);
    diag.len() == cols && diag.iter().all(|d| *d == 1)
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = gcd_big(a.clone(), b.clone());
    (a / &g * b).abs()
}

fn gcd_big(mut a: BigInt, mut b: BigInt) -> BigInt {
    a = a.abs();
    b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// Half-edge lookup tables for a spine.
struct SpineIndex {
    at: BTreeMap<u64, (usize, usize)>,
    partner: BTreeMap<u64, u64>,
    first_of_edge: BTreeMap<u64, bool>,
}

impl SpineIndex {
    fn build(spine: &TapeGraph) -> Self {
        let mut at = BTreeMap::new();
        for (vi, v) in spine.vertices().iter().enumerate() {
            for (pos, &h) in v.halfedges.iter().enumerate() {
                at.insert(h, (vi, pos));
            }
        }
        let mut partner = BTreeMap::new();
        let mut first_of_edge = BTreeMap::new();
        for e in spine.edges() {
            partner.insert(e[0], e[1]);
            partner.insert(e[1], e[0]);
            first_of_edge.insert(e[0], true);
            first_of_edge.insert(e[1], false);
        }
        SpineIndex {
            at,
            partner,
            first_of_edge,
        }
    }

    fn at(&self, h: u64) -> (usize, usize) {
        self.at[&h]
    }

    fn partner(&self, h: u64) -> u64 {
        self.partner[&h]
    }

    /// Orientation sign of the alpha arc at a half-edge: +1 on the first
    /// stored half-edge of its edge, -1 on the second.
    fn eps(&self, h: u64) -> i64 {
        if self.first_of_edge[&h] {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rng::SplitMix64;

    #[test]
    fn square_block_stats() {
        let d = HeegaardDiagram::synth(&fixtures::square().surface).unwrap();
        let st = d.stats().unwrap();
        assert_eq!(st.genus, 0);
        assert_eq!(st.boundary_components, 4);
        assert_eq!(st.euler_char, -2);
        assert_eq!(d.alpha_beta_intersections(0, 0), 2);
    }

    #[test]
    fn annulus_diagram_stats() {
        let d = HeegaardDiagram::synth(&fixtures::annulus().surface).unwrap();
        let st = d.stats().unwrap();
        assert_eq!(st.euler_char, -4);
        assert_eq!(st.boundary_components, 4);
        assert_eq!(st.genus, 1);
    }

    #[test]
    fn region_count_equals_edge_count() {
        for name in ["square", "disc6", "annulus", "punctured-torus"] {
            let f = fixtures::fixture(name).unwrap();
            let d = HeegaardDiagram::synth(&f.surface).unwrap();
            let bij = d.region_edge_bijection().unwrap();
            // wedge regions biject with quadrangulation edges
            let edge_count = 4 * f.surface.square_count() - f.surface.gluing_pairs().len();
            assert_eq!(bij.len(), edge_count, "{name}");
            assert_eq!(d.regions().len(), edge_count, "{name}");
            // distinct slots, boundary <-> barrier
            let mut slots = std::collections::BTreeSet::new();
            for (wedge, (slot, internal)) in &bij {
                assert!(slots.insert(*slot), "{name}: duplicate slot");
                let region = d.regions().iter().find(|r| r.wedge == *wedge).unwrap();
                assert_eq!(region.barrier, !internal, "{name}");
            }
        }
    }

    #[test]
    fn square_bijection_counts() {
        let d = HeegaardDiagram::synth(&fixtures::square().surface).unwrap();
        let bij = d.region_edge_bijection().unwrap();
        assert_eq!(bij.len(), 4);
        assert!(bij.values().all(|(_, internal)| !internal));
    }

    #[test]
    fn disc6_internal_wedges() {
        let d = HeegaardDiagram::synth(&fixtures::disc6().surface).unwrap();
        let internal = d.internal_wedges();
        // spine is a 2-edge path: the middle vertex has degree 2, one
        // internal wedge; the single internal edge of the quadrangulation
        assert_eq!(internal.len(), 1);
    }

    #[test]
    fn periodic_basis_sizes_match_h1() {
        for name in ["square", "disc6", "annulus", "punctured-torus"] {
            let f = fixtures::fixture(name).unwrap();
            let d = HeegaardDiagram::synth(&f.surface).unwrap();
            let basis = d.periodic_basis().unwrap();
            assert_eq!(basis.len(), f.surface.stats().unwrap().h1_rank, "{name}");
            for dom in &basis {
                assert!(d.is_periodic(dom), "{name}: domain not periodic");
                assert!(!dom.is_zero(), "{name}: zero basis domain");
            }
        }
    }

    #[test]
    fn punctured_torus_domains_one_signed() {
        let f = fixtures::punctured_torus();
        let d = HeegaardDiagram::synth(&f.surface).unwrap();
        let basis = d.periodic_basis().unwrap();
        assert_eq!(basis.len(), 2);
        for dom in &basis {
            assert!(dom.is_one_signed(), "loop with all vertices on one side");
        }
        match d.is_admissible_raw().unwrap() {
            Admissibility::Inadmissible(witness) => {
                assert!(!witness.is_zero());
                assert!(witness.is_one_signed());
                assert!(d.is_periodic(&witness));
            }
            Admissibility::Admissible => panic!("expected inadmissible"),
        }
    }

    #[test]
    fn annulus_domain_mixed_and_admissible() {
        let f = fixtures::annulus();
        let d = HeegaardDiagram::synth(&f.surface).unwrap();
        let basis = d.periodic_basis().unwrap();
        assert_eq!(basis.len(), 1);
        assert!(!basis[0].is_one_signed(), "one left and one right vertex");
        assert!(d.is_admissible_raw().unwrap().is_admissible());
    }

    #[test]
    fn disc6_admissible_no_domains() {
        let d = HeegaardDiagram::synth(&fixtures::disc6().surface).unwrap();
        assert!(d.periodic_basis().unwrap().is_empty());
        assert!(d.is_admissible_raw().unwrap().is_admissible());
    }

    #[test]
    fn single_wedge_not_periodic() {
        let f = fixtures::punctured_torus();
        let d = HeegaardDiagram::synth(&f.surface).unwrap();
        let w = d.internal_wedges()[0];
        let dom = PeriodicDomain {
            coefficients: [(w, 1)].into_iter().collect(),
            generator_edge: None,
        };
        assert!(!d.is_periodic(&dom));
        // and the zero domain is periodic
        let zero = PeriodicDomain {
            coefficients: BTreeMap::new(),
            generator_edge: None,
        };
        assert!(d.is_periodic(&zero));
    }

    #[test]
    fn zeta_arcs_examples() {
        // square: all wedges barrier, no arcs
        let d = HeegaardDiagram::synth(&fixtures::square().surface).unwrap();
        assert!(d.zeta_arcs().unwrap().is_empty());
        // disc6: middle vertex degree 2: no arcs
        let d6 = HeegaardDiagram::synth(&fixtures::disc6().surface).unwrap();
        assert!(d6.zeta_arcs().unwrap().is_empty());
        // punctured torus: degree-4 vertex: arcs at positions 2 and 3
        let pt = HeegaardDiagram::synth(&fixtures::punctured_torus().surface).unwrap();
        let arcs = pt.zeta_arcs().unwrap();
        assert_eq!(arcs.len(), 2);
        let mut indices: Vec<usize> = arcs.iter().map(|a| a.index).collect();
        indices.sort();
        assert_eq!(indices, vec![2, 3]);
        // w_3 never swept
        pt.check_disjoint_wedge().unwrap();
        for a in &arcs {
            assert!(!a.swept.contains(&(0, 3)));
        }
        // crossings: index-2 arc crosses one alpha, index-3 two
        let crossings: Vec<usize> = {
            let mut v: Vec<(usize, usize)> = arcs
                .iter()
                .map(|a| (a.index, a.crossed_alpha.len()))
                .collect();
            v.sort();
            v.into_iter().map(|(_, c)| c).collect()
        };
        assert_eq!(crossings, vec![1, 2]);
    }

    #[test]
    fn certificates_pass_on_fixtures() {
        for name in ["square", "disc6", "annulus", "punctured-torus"] {
            let f = fixtures::fixture(name).unwrap();
            let d = HeegaardDiagram::synth(&f.surface).unwrap();
            let cert = d.admissibility_certificate().unwrap();
            assert_eq!(cert.sides.len(), 2 * d.curve_count(), "{name}");
        }
    }

    #[test]
    fn randomized_spines_always_certify() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..120 {
            let qs = crate::corpus::random_surface(&mut rng, 5);
            let d = HeegaardDiagram::synth(&qs).unwrap();
            d.check_disjoint_wedge().unwrap();
            d.admissibility_certificate().unwrap();
            for dom in d.periodic_basis().unwrap() {
                assert!(d.is_periodic(&dom));
            }
        }
    }

    #[test]
    fn perturbed_intersections_examples() {
        let sq = HeegaardDiagram::synth(&fixtures::square().surface).unwrap();
        assert_eq!(sq.perturbed_intersections().unwrap(), 2);
        let d6 = HeegaardDiagram::synth(&fixtures::disc6().surface).unwrap();
        assert_eq!(d6.perturbed_intersections().unwrap(), 4);
        let pt = HeegaardDiagram::synth(&fixtures::punctured_torus().surface).unwrap();
        // 2*2 curves + 2*(1 + 2) finger crossings
        assert_eq!(pt.perturbed_intersections().unwrap(), 10);
    }

    #[test]
    fn decompose_punctured_torus_to_squares() {
        let f = fixtures::punctured_torus();
        let (cut, step) = decompose_step(&f.surface).unwrap();
        assert_eq!(step.degree, 4);
        let st = cut.stats().unwrap();
        assert_eq!(st.euler_char, 0, "first cut yields the annulus");
        assert_eq!(st.h1_rank, 1);
        // iota injective with unit elementary divisors
        assert!(is_direct_summand_injection(
            step.iota.matrix(),
            step.iota.source().rank()
        ));
        let (cut2, step2) = decompose_step(&cut).unwrap();
        assert_eq!(cut2.stats().unwrap().euler_char, 1);
        assert!(is_direct_summand_injection(
            step2.iota.matrix(),
            step2.iota.source().rank()
        ));
        let (cut3, _) = decompose_step(&cut2).unwrap();
        assert_eq!(cut3.gluing_pairs().len(), 0, "two disjoint squares");
        assert!(matches!(
            decompose_step(&cut3),
            Err(HeegaardError::NothingToDecompose)
        ));
    }

    #[test]
    fn sfh_fixture_ranks() {
        let sq = sfh(&fixtures::square().surface).unwrap();
        assert_eq!(sq.module.rank(), 2);
        assert_eq!(sq.module.graded_rank(1), 1);
        assert_eq!(sq.module.graded_rank(-1), 1);
        assert!(sq.trace.is_empty());

        let d6 = sfh(&fixtures::disc6().surface).unwrap();
        assert_eq!(d6.module.rank(), 4);
        assert_eq!(d6.module.graded_rank(0), 2);
        assert_eq!(d6.module.graded_rank(2), 1);
        assert_eq!(d6.module.graded_rank(-2), 1);

        let pt = sfh(&fixtures::punctured_torus().surface).unwrap();
        assert_eq!(pt.module.rank(), 4);
        assert_eq!(pt.module.lattice().rank(), 2);
        assert_eq!(pt.trace.len(), 3);
        // terminal surface: two disjoint squares
        assert_eq!(pt.terminal_surface.gluing_pairs().len(), 0);
        assert_eq!(pt.terminal_surface.square_count(), 2);
    }

    #[test]
    fn sfh_traces_terminate_and_inject_randomized() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..40 {
            let qs = crate::corpus::random_surface(&mut rng, 5);
            let result = sfh(&qs).unwrap();
            // each step splits one half-edge off its vertex, so the trace
            // length is exactly the sum of (degree - 1) over spine vertices
            let (spine0, _) = qs.spine(true).unwrap();
            let step_budget: usize = spine0
                .vertices()
                .iter()
                .map(|v| v.halfedges.len().saturating_sub(1))
                .sum();
            assert_eq!(result.trace.len(), step_budget);
            let (terminal_spine, _) = result.terminal_surface.spine(true).unwrap();
            assert!(terminal_spine
                .vertices()
                .iter()
                .all(|v| v.halfedges.len() <= 1));
            let mut h1 = qs.stats().unwrap().h1_rank;
            for step in &result.trace {
                let next_rank = step.iota.source().rank();
                assert!(next_rank == h1 || next_rank + 1 == h1, "h1 drops by 0 or 1");
                assert!(is_direct_summand_injection(
                    step.iota.matrix(),
                    step.iota.source().rank()
                ));
                h1 = next_rank;
            }
            assert_eq!(h1, 0);
            // graded ranks sum to the full rank
            let total: u64 = (-(result.module.index() as i64)..=result.module.index() as i64)
                .map(|e| result.module.graded_rank(e))
                .sum();
            assert_eq!(total, result.module.rank());
        }
    }

    #[test]
    fn smith_diagonal_examples() {
        assert_eq!(smith_diagonal(&[vec![1, 0], vec![0, 1]]), vec![1, 1]);
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![2, 4], vec![0, 0]]), vec![2]);
        assert!(is_direct_summand_injection(&[vec![1], vec![1]], 1));
        assert!(!is_direct_summand_injection(&[vec![2], vec![0]], 1));
    }
}
