//! Quadrangulated occupied surfaces presented as glued squares.
//!
//! Each square has corners 0..3 in positive boundary order, with corner `i`
//! positive iff `i` is even; side `i` runs from corner `i` to corner `i+1`.
//! A gluing identifies two side slots in the orientation-reversing way,
//! matching endpoints of equal sign, which forces glued side indices to
//! have opposite parities. Vacua (discs with one vertex pair and no square)
//! are stored as a bare count.

use crate::tape_graph::{SpineVerdict, TapeGraph, UnionFind, VertexData};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid surface: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("slot {0} out of range")]
    SlotOutOfRange(Slot),
    #[error("slot {0} is already glued")]
    SlotGlued(Slot),
    #[error("slot {0} is not glued")]
    SlotNotGlued(Slot),
    #[error("cannot glue a slot to itself: {0}")]
    SameSlot(Slot),
    #[error("sign-incompatible gluing {0} ~ {1}: side parities must differ")]
    SignMismatch(Slot, Slot),
    #[error("sides {0} and {1} are consecutive (they share a vertex)")]
    ConsecutiveSides(Slot, Slot),
    #[error("side pair at {0} does not join two distinct squares")]
    NotHexagon(Slot),
    #[error("graph is not a spine: a boundary component has no breakpoint")]
    NotSpine,
    #[error("tape graph error: {0}")]
    Tape(#[from] crate::tape_graph::TapeGraphError),
    #[error("fold/zip would leave fewer vertex pairs than components")]
    InvalidMove,
}

/// A side slot of a square: `(square index, side index 0..3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub square: usize,
    pub side: usize,
}

impl Slot {
    pub fn new(square: usize, side: usize) -> Self {
        Slot { square, side }
    }
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.square, self.side)
    }
}

/// A corner slot of a square: `(square index, corner index 0..3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Corner {
    pub square: usize,
    pub corner: usize,
}

impl Corner {
    pub fn sign_positive(&self) -> bool {
        self.corner % 2 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurface {
    square_count: usize,
    /// Symmetric fixed-point-free partial involution on side slots.
    gluings: BTreeMap<Slot, Slot>,
    vacuum_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccupiedStats {
    pub euler_char: i64,
    /// Number of vertex pairs: `N = |V_+| = |V_-|`.
    pub vertex_pairs: i64,
    /// The index `I = N - euler_char`, which equals the square count.
    pub index: i64,
    pub boundary_components: usize,
    pub h1_rank: usize,
    pub components: usize,
}

/// Derived vertex-class structure of a valid surface.
#[derive(Clone, Debug)]
pub struct VertexClasses {
    /// Class id for each corner slot (index `square*4 + corner`).
    pub class_of: Vec<usize>,
    /// For each class: its corners in fan order around the vertex, from the
    /// corner whose incoming side is a boundary side to the corner whose
    /// outgoing side is one.
    pub fans: Vec<Vec<Corner>>,
    /// Sign of each class (true = positive).
    pub positive: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldZip {
    Fold,
    Zip,
}

/// Correspondence between a surface and its extracted spine.
#[derive(Clone, Debug)]
pub struct SpineMap {
    /// For each half-edge id: the square corner it sits at.
    pub halfedge_corner: BTreeMap<u64, Corner>,
    /// For each spine vertex id: the vertex class index (`None` for the
    /// synthetic vertex of a vacuum).
    pub vertex_class: BTreeMap<u64, Option<usize>>,
}

/// A fundamental loop of the spine: cyclic sequence of directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineLoop {
    /// The non-forest edge generating this loop.
    pub generator_edge: usize,
    /// Directed steps `(edge index, traversed_forward)`; the loop starts by
    /// traversing the generator edge forward.
    pub steps: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct H1Basis {
    /// Edge indices of the spanning forest (greedy by lowest edge id).
    pub forest_edges: Vec<usize>,
    pub loops: Vec<SpineLoop>,
}

impl QuadSurface {
    pub fn new(
        square_count: usize,
        gluing_pairs: &[(Slot, Slot)],
        vacuum_count: usize,
    ) -> Result<Self, SurfaceError> {
        let mut qs = QuadSurface {
            square_count,
            gluings: BTreeMap::new(),
            vacuum_count,
        };
        for &(a, b) in gluing_pairs {
            qs.insert_gluing(a, b)?;
        }
        Ok(qs)
    }

    pub fn disjoint_squares(n: usize) -> Self {
        QuadSurface {
            square_count: n,
            gluings: BTreeMap::new(),
            vacuum_count: 0,
        }
    }

    pub fn vacuum() -> Self {
        QuadSurface {
            square_count: 0,
            gluings: BTreeMap::new(),
            vacuum_count: 1,
        }
    }

    fn insert_gluing(&mut self, a: Slot, b: Slot) -> Result<(), SurfaceError> {
        for s in [a, b] {
            if s.square >= self.square_count || s.side >= 4 {
                return Err(SurfaceError::SlotOutOfRange(s));
            }
            if self.gluings.contains_key(&s) {
                return Err(SurfaceError::SlotGlued(s));
            }
        }
        if a == b {
            return Err(SurfaceError::SameSlot(a));
        }
        if a.side % 2 == b.side % 2 {
            return Err(SurfaceError::SignMismatch(a, b));
        }
        self.gluings.insert(a, b);
        self.gluings.insert(b, a);
        Ok(())
    }

    pub fn square_count(&self) -> usize {
        self.square_count
    }

    pub fn vacuum_count(&self) -> usize {
        self.vacuum_count
    }

    pub fn glued_to(&self, s: Slot) -> Option<Slot> {
        self.gluings.get(&s).copied()
    }

    pub fn is_boundary(&self, s: Slot) -> bool {
        !self.gluings.contains_key(&s)
    }

    /// Gluing pairs, each listed once with the smaller slot first.
    pub fn gluing_pairs(&self) -> Vec<(Slot, Slot)> {
        self.gluings
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| (*a, *b))
            .collect()
    }

    pub fn boundary_slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        for sq in 0..self.square_count {
            for side in 0..4 {
                let s = Slot::new(sq, side);
                if self.is_boundary(s) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn corner_index(&self, c: Corner) -> usize {
        c.square * 4 + c.corner
    }

    /// Corner identifications induced by a gluing `(a, b)`: the start of
    /// each side matches the end of the other.
    fn glued_corner_pairs(a: Slot, b: Slot) -> [(Corner, Corner); 2] {
        let ca = |corner: usize| Corner {
            square: a.square,
            corner: corner % 4,
        };
        let cb = |corner: usize| Corner {
            square: b.square,
            corner: corner % 4,
        };
        [(ca(a.side), cb(b.side + 1)), (ca(a.side + 1), cb(b.side))]
    }

    /// Union-find of corner slots under all gluings.
    fn corner_classes(&self) -> (UnionFind, usize) {
        let n = self.square_count * 4;
        let mut uf = UnionFind::new(n);
        for (a, b) in self.gluing_pairs() {
            for (x, y) in Self::glued_corner_pairs(a, b) {
                uf.union(self.corner_index(x), self.corner_index(y));
            }
        }
        (uf, n)
    }

    /// Build vertex classes with fan orders; errors describe the failure.
    pub fn vertex_classes(&self) -> Result<VertexClasses, SurfaceError> {
        let (mut uf, n) = self.corner_classes();
        let mut problems = Vec::new();
        let mut root_to_class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut class_of = vec![usize::MAX; n];
        for sq in 0..self.square_count {
            for corner in 0..4 {
                let i = sq * 4 + corner;
                let r = uf.find(i);
                let next_id = root_to_class.len();
                let cid = *root_to_class.entry(r).or_insert(next_id);
                class_of[i] = cid;
            }
        }
        let nclasses = root_to_class.len();
        let mut members: Vec<Vec<Corner>> = vec![Vec::new(); nclasses];
        let mut positive = vec![false; nclasses];
        for sq in 0..self.square_count {
            for corner in 0..4 {
                let c = Corner { square: sq, corner };
                let cid = class_of[sq * 4 + corner];
                members[cid].push(c);
                positive[cid] = c.sign_positive();
            }
        }
        // sign consistency
        for (cid, ms) in members.iter().enumerate() {
            if !ms.iter().all(|c| c.sign_positive() == positive[cid]) {
                problems.push(format!(
                    "vertex class {cid} mixes positive and negative corners"
                ));
            }
        }
        // Fan chains: start at the unique corner whose incoming side is
        // boundary; advance by crossing the outgoing side; must visit the
        // whole class and end at a boundary outgoing side.
        let mut fans = vec![Vec::new(); nclasses];
        if problems.is_empty() {
            for (cid, ms) in members.iter().enumerate() {
                let starts: Vec<Corner> = ms
                    .iter()
                    .copied()
                    .filter(|c| self.is_boundary(incoming_side(*c)))
                    .collect();
                if starts.len() != 1 {
                    problems.push(format!(
                        "vertex class {cid} has {} boundary-incoming corners (want 1): \
                         interior or pinched vertex",
                        starts.len()
                    ));
                    continue;
                }
                let mut fan = Vec::new();
                let mut cur = starts[0];
                loop {
                    fan.push(cur);
                    if fan.len() > ms.len() {
                        problems.push(format!("vertex class {cid} fan does not close"));
                        break;
                    }
                    let out = outgoing_side(cur);
                    match self.glued_to(out) {
                        None => break,
                        Some(partner) => {
                            // entered through its incoming side
                            cur = Corner {
                                square: partner.square,
                                corner: (partner.side + 1) % 4,
                            };
                        }
                    }
                }
                if fan.len() != ms.len() {
                    problems.push(format!(
                        "vertex class {cid} fan covers {} of {} corners",
                        fan.len(),
                        ms.len()
                    ));
                }
                fans[cid] = fan;
            }
        }
        if problems.is_empty() {
            Ok(VertexClasses {
                class_of,
                fans,
                positive,
            })
        } else {
            Err(SurfaceError::Invalid(problems))
        }
    }

    /// Boundary circles as sequences of boundary side slots, in traversal
    /// order (each side from its start corner to its end corner).
    pub fn boundary_circles(&self) -> Result<Vec<Vec<Slot>>, SurfaceError> {
        let classes = self.vertex_classes()?;
        let mut next: BTreeMap<Slot, Slot> = BTreeMap::new();
        for s in self.boundary_slots() {
            // end corner of s
            let end = Corner {
                square: s.square,
                corner: (s.side + 1) % 4,
            };
            let cid = classes.class_of[self.corner_index(end)];
            let last = *classes.fans[cid].last().unwrap();
            next.insert(s, outgoing_side(last));
        }
        let mut seen: BTreeMap<Slot, bool> = BTreeMap::new();
        let mut circles = Vec::new();
        for s in self.boundary_slots() {
            if seen.contains_key(&s) {
                continue;
            }
            let mut circle = Vec::new();
            let mut cur = s;
            loop {
                seen.insert(cur, true);
                circle.push(cur);
                cur = next[&cur];
                if cur == s {
                    break;
                }
            }
            circles.push(circle);
        }
        Ok(circles)
    }

    /// Check all structural invariants.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let mut problems = Vec::new();
        // involution sanity (construction maintains it; revalidate for
        // deserialized data)
        for (a, b) in &self.gluings {
            if a.square >= self.square_count || a.side >= 4 {
                problems.push(format!("slot {a} out of range"));
            }
            if self.gluings.get(b) != Some(a) {
                problems.push(format!("gluing {a} ~ {b} is not symmetric"));
            }
            if a == b {
                problems.push(format!("slot {a} glued to itself"));
            }
            if a.side % 2 == b.side % 2 {
                problems.push(format!("gluing {a} ~ {b} identifies corners of equal sign"));
            }
        }
        if !problems.is_empty() {
            return Err(SurfaceError::Invalid(problems));
        }
        let classes = self.vertex_classes()?;
        // no closed component: every square component has a boundary side
        let mut uf = UnionFind::new(self.square_count.max(1));
        for (a, b) in self.gluing_pairs() {
            uf.union(a.square, b.square);
        }
        let mut has_boundary = vec![false; self.square_count.max(1)];
        for s in self.boundary_slots() {
            has_boundary[uf.find(s.square)] = true;
        }
        for sq in 0..self.square_count {
            let r = uf.find(sq);
            if !has_boundary[r] {
                problems.push(format!("component of square {sq} is closed"));
            }
        }
        if !problems.is_empty() {
            return Err(SurfaceError::Invalid(problems));
        }
        // boundary circles alternate in sign (forced by the sign-compatible
        // gluing convention, still asserted)
        for circle in self.boundary_circles()? {
            for w in circle.windows(2) {
                let end0 = Corner {
                    square: w[0].square,
                    corner: (w[0].side + 1) % 4,
                };
                let start1 = Corner {
                    square: w[1].square,
                    corner: w[1].side,
                };
                let c0 = classes.class_of[self.corner_index(end0)];
                let c1 = classes.class_of[self.corner_index(start1)];
                if c0 != c1 {
                    problems.push(format!("boundary circle breaks at {} -> {}", w[0], w[1]));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(SurfaceError::Invalid(problems))
        }
    }

    pub fn stats(&self) -> Result<OccupiedStats, SurfaceError> {
        self.validate()?;
        let classes = self.vertex_classes()?;
        let nclasses = classes.fans.len();
        let positives = classes.positive.iter().filter(|p| **p).count();
        let side_classes = self.square_count * 4 - self.gluing_pairs().len();
        let chi = nclasses as i64 - side_classes as i64
            + self.square_count as i64
            + self.vacuum_count as i64;
        let n = positives as i64 + self.vacuum_count as i64;
        let (spine, _) = self.spine(true)?;
        let spine_components = spine_component_count(&spine);
        let h1 = spine.edge_count() + spine_components - spine.vertex_count();
        let stats = OccupiedStats {
            euler_char: chi,
            vertex_pairs: n,
            index: self.square_count as i64,
            boundary_components: self.boundary_circles()?.len() + self.vacuum_count,
            h1_rank: h1,
            components: spine_components,
        };
        debug_assert_eq!(stats.index, stats.vertex_pairs - stats.euler_char);
        Ok(stats)
    }

    /// Extract the spine tape graph of the given sign (`true` = positive).
    ///
    /// One vertex per vertex class of that sign plus one isolated vertex per
    /// vacuum; one edge per square (its same-sign diagonal). Half-edge order
    /// at a vertex is the fan order of the class.
    pub fn spine(&self, positive: bool) -> Result<(TapeGraph, SpineMap), SurfaceError> {
        let classes = self.vertex_classes()?;
        // Half-edge id for the diagonal end of square `sq` at its corner
        // `c` (c in {0,2} for positive, {1,3} for negative): 2*sq + (c>=2).
        let he_of = |c: Corner| -> u64 { (2 * c.square + usize::from(c.corner >= 2)) as u64 };
        let mut vertices = Vec::new();
        let mut halfedge_corner = BTreeMap::new();
        let mut vertex_class = BTreeMap::new();
        let mut next_vid = 0u64;
        for (cid, fan) in classes.fans.iter().enumerate() {
            if classes.positive[cid] != positive {
                continue;
            }
            let halfedges: Vec<u64> = fan.iter().map(|&c| he_of(c)).collect();
            for &c in fan {
                halfedge_corner.insert(he_of(c), c);
            }
            vertices.push(VertexData {
                id: next_vid,
                halfedges,
            });
            vertex_class.insert(next_vid, Some(cid));
            next_vid += 1;
        }
        for _ in 0..self.vacuum_count {
            vertices.push(VertexData {
                id: next_vid,
                halfedges: vec![],
            });
            vertex_class.insert(next_vid, None);
            next_vid += 1;
        }
        let edges: Vec<[u64; 2]> = (0..self.square_count)
            .map(|sq| [(2 * sq) as u64, (2 * sq + 1) as u64])
            .collect();
        Ok((
            TapeGraph::oriented(vertices, edges),
            SpineMap {
                halfedge_corner,
                vertex_class,
            },
        ))
    }

    /// Rebuild a quadrangulated surface from a spine.
    ///
    /// One square per edge; every breakpoint-delimited boundary run of
    /// length `k` contributes a fan of `k` triangles at a fresh negative
    /// vertex, and the two triangles over each edge assemble into its
    /// square. Isolated vertices become vacua.
    pub fn reconstruct(graph: &TapeGraph) -> Result<QuadSurface, SurfaceError> {
        match graph.spine_check()? {
            SpineVerdict::Spine => {}
            _ => return Err(SurfaceError::NotSpine),
        }
        let mut qs = QuadSurface::disjoint_squares(graph.edge_count());
        let mut vacua = 0usize;

        // Triangle legs for the side departed on half-edge `t` of edge `e`:
        // first-stored half-edge owns sides {2,3} of the square, the second
        // owns {0,1}; the departure leg is the odd side, arrival leg even.
        let departure_leg =
            |edge: usize, end: usize| -> Slot { Slot::new(edge, if end == 0 { 3 } else { 1 }) };
        let arrival_leg =
            |edge: usize, end: usize| -> Slot { Slot::new(edge, if end == 0 { 2 } else { 0 }) };
        let end_of = |edge: usize, he: u64| -> usize { usize::from(graph.edges()[edge][0] != he) };

        for walk in graph.boundary_components()? {
            if walk.isolated_vertex.is_some() {
                vacua += 1;
                continue;
            }
            // split the cyclic step sequence into breakpoint-terminated runs
            let steps = &walk.steps;
            let k = steps.len();
            let last_bp = steps
                .iter()
                .rposition(|s| s.breakpoint)
                .expect("spine walks have breakpoints");
            let mut runs: Vec<Vec<&crate::tape_graph::WalkStep>> = Vec::new();
            let mut current = Vec::new();
            for i in 0..k {
                let s = &steps[(last_bp + 1 + i) % k];
                current.push(s);
                if s.breakpoint {
                    runs.push(std::mem::take(&mut current));
                }
            }
            debug_assert!(current.is_empty());
            for run in runs {
                for pair in run.windows(2) {
                    let a = pair[0];
                    let b = pair[1];
                    let ea = (a.edge, end_of(a.edge, a.departed_half_edge));
                    let eb = (b.edge, end_of(b.edge, b.departed_half_edge));
                    qs.insert_gluing(arrival_leg(ea.0, ea.1), departure_leg(eb.0, eb.1))?;
                }
            }
        }
        qs.vacuum_count = vacua;
        Ok(qs)
    }

    /// Slide the diagonal of the hexagon formed by the two squares glued
    /// along `slot`. External gluings are preserved; stats are unchanged.
    pub fn diagonal_slide(&self, slot: Slot, clockwise: bool) -> Result<QuadSurface, SurfaceError> {
        let partner = self
            .glued_to(slot)
            .ok_or(SurfaceError::SlotNotGlued(slot))?;
        if partner.square == slot.square {
            return Err(SurfaceError::NotHexagon(slot));
        }
        let (p, q) = (slot, partner);
        let pc = |k: usize| Corner {
            square: p.square,
            corner: k % 4,
        };
        let qc = |k: usize| Corner {
            square: q.square,
            corner: k % 4,
        };
        // Hexagon corners v0..v5 and outer sides in positive cyclic order.
        let hex_corners = [
            pc(p.side + 1),
            pc(p.side + 2),
            pc(p.side + 3),
            pc(p.side), // = q end
            qc(q.side + 2),
            qc(q.side + 3),
        ];
        let outer = [
            Slot::new(p.square, (p.side + 1) % 4),
            Slot::new(p.square, (p.side + 2) % 4),
            Slot::new(p.square, (p.side + 3) % 4),
            Slot::new(q.square, (q.side + 1) % 4),
            Slot::new(q.square, (q.side + 2) % 4),
            Slot::new(q.square, (q.side + 3) % 4),
        ];
        // New diagonal endpoints: ccw picks v1-v4, cw picks v2-v5. The two
        // new quads list corners cyclically starting at the diagonal.
        let (quad1, quad2): ([usize; 4], [usize; 4]) = if clockwise {
            ([2, 3, 4, 5], [5, 0, 1, 2])
        } else {
            ([1, 2, 3, 4], [4, 5, 0, 1])
        };
        // descriptor: side from quad corner i to corner i+1 is outer side of
        // the hexagon position, except the last which is the new diagonal
        #[derive(Clone, Copy, PartialEq)]
        enum Side {
            Old(Slot),
            Diagonal,
        }
        let describe = |quad: &[usize; 4]| -> ([Corner; 4], [Side; 4]) {
            let corners = [
                hex_corners[quad[0]],
                hex_corners[quad[1]],
                hex_corners[quad[2]],
                hex_corners[quad[3]],
            ];
            let sides = [
                Side::Old(outer[quad[0]]),
                Side::Old(outer[quad[1]]),
                Side::Old(outer[quad[2]]),
                Side::Diagonal,
            ];
            (corners, sides)
        };
        // rotate so the first corner is positive
        let orient = |corners: [Corner; 4], sides: [Side; 4]| -> ([Corner; 4], [Side; 4]) {
            if corners[0].sign_positive() {
                (corners, sides)
            } else {
                (
                    [corners[1], corners[2], corners[3], corners[0]],
                    [sides[1], sides[2], sides[3], sides[0]],
                )
            }
        };
        let (c1, s1) = {
            let (c, s) = describe(&quad1);
            orient(c, s)
        };
        let (c2, s2) = {
            let (c, s) = describe(&quad2);
            orient(c, s)
        };
        let _ = (c1, c2);
        // New squares reuse the two old indices.
        let new_sq = [p.square, q.square];
        let mut relabel: BTreeMap<Slot, Slot> = BTreeMap::new();
        let mut diagonal_slots = Vec::new();
        for (ns, sides) in [(new_sq[0], &s1), (new_sq[1], &s2)] {
            for (i, side) in sides.iter().enumerate() {
                match side {
                    Side::Old(old) => {
                        relabel.insert(*old, Slot::new(ns, i));
                    }
                    Side::Diagonal => diagonal_slots.push(Slot::new(ns, i)),
                }
            }
        }
        let mut pairs = Vec::new();
        for (a, b) in self.gluing_pairs() {
            if (a, b) == (p.min(q), p.max(q)) || (a, b) == (q.min(p), q.max(p)) {
                continue;
            }
            let na = *relabel.get(&a).unwrap_or(&a);
            let nb = *relabel.get(&b).unwrap_or(&b);
            pairs.push((na, nb));
        }
        pairs.push((diagonal_slots[0], diagonal_slots[1]));
        QuadSurface::new(self.square_count, &pairs, self.vacuum_count)
    }

    /// Place a disjoint square next to the surface.
    pub fn create_square(&self) -> QuadSurface {
        QuadSurface {
            square_count: self.square_count + 1,
            gluings: self.gluings.clone(),
            vacuum_count: self.vacuum_count,
        }
    }

    /// Glue two non-consecutive boundary edges. Decreases the Euler
    /// characteristic and vertex-pair count by one each.
    pub fn standard_glue(&self, a: Slot, b: Slot) -> Result<QuadSurface, SurfaceError> {
        for s in [a, b] {
            if s.square >= self.square_count || s.side >= 4 {
                return Err(SurfaceError::SlotOutOfRange(s));
            }
            if !self.is_boundary(s) {
                return Err(SurfaceError::SlotGlued(s));
            }
        }
        if a == b {
            return Err(SurfaceError::SameSlot(a));
        }
        if a.side % 2 == b.side % 2 {
            return Err(SurfaceError::SignMismatch(a, b));
        }
        // non-consecutive: the sides must not share a vertex class
        let classes = self.vertex_classes()?;
        let ends = |s: Slot| {
            [
                classes.class_of[self.corner_index(Corner {
                    square: s.square,
                    corner: s.side,
                })],
                classes.class_of[self.corner_index(Corner {
                    square: s.square,
                    corner: (s.side + 1) % 4,
                })],
            ]
        };
        let ea = ends(a);
        let eb = ends(b);
        if ea.iter().any(|x| eb.contains(x)) {
            return Err(SurfaceError::ConsecutiveSides(a, b));
        }
        let mut out = self.clone();
        out.insert_gluing(a, b)?;
        Ok(out)
    }

    /// Remove an internal-edge gluing; inverse of `standard_glue`.
    pub fn cut_internal_edge(&self, slot: Slot) -> Result<QuadSurface, SurfaceError> {
        let partner = self
            .glued_to(slot)
            .ok_or(SurfaceError::SlotNotGlued(slot))?;
        let mut out = self.clone();
        out.gluings.remove(&slot);
        out.gluings.remove(&partner);
        Ok(out)
    }

    /// Spanning forest of the positive spine and the fundamental loops of
    /// its non-forest edges.
    pub fn h1_basis(&self) -> Result<H1Basis, SurfaceError> {
        let (spine, _) = self.spine(true)?;
        Ok(h1_basis_of_graph(&spine))
    }
}

/// Statistics bookkeeping for fold and zip moves. A fold glues two
/// consecutive boundary edges (not a whole component), keeping the
/// homeomorphism type; a zip closes a two-edge boundary component.
pub fn fold_zip_stats(stats: &OccupiedStats, mv: FoldZip) -> Result<OccupiedStats, SurfaceError> {
    let out = match mv {
        FoldZip::Fold => OccupiedStats {
            euler_char: stats.euler_char,
            vertex_pairs: stats.vertex_pairs - 1,
            index: stats.index - 1,
            boundary_components: stats.boundary_components,
            h1_rank: stats.h1_rank,
            components: stats.components,
        },
        FoldZip::Zip => OccupiedStats {
            euler_char: stats.euler_char + 1,
            vertex_pairs: stats.vertex_pairs - 1,
            index: stats.index - 2,
            boundary_components: stats.boundary_components.saturating_sub(1),
            h1_rank: stats.h1_rank.saturating_sub(1),
            components: stats.components,
        },
    };
    if out.vertex_pairs < out.components as i64 || out.index < 0 {
        return Err(SurfaceError::InvalidMove);
    }
    Ok(out)
}

pub(crate) fn incoming_side(c: Corner) -> Slot {
    Slot::new(c.square, (c.corner + 3) % 4)
}

pub(crate) fn outgoing_side(c: Corner) -> Slot {
    Slot::new(c.square, c.corner)
}

fn spine_component_count(g: &TapeGraph) -> usize {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut pos_of = BTreeMap::new();
    for (i, v) in g.vertices().iter().enumerate() {
        for &h in &v.halfedges {
            pos_of.insert(h, i);
        }
    }
    for e in g.edges() {
        uf.union(pos_of[&e[0]], pos_of[&e[1]]);
    }
    let mut roots = std::collections::BTreeSet::new();
    for i in 0..g.vertex_count() {
        roots.insert(uf.find(i));
    }
    roots.len()
}

/// Greedy lowest-id spanning forest and fundamental loops, for any oriented
/// tape graph.
pub fn h1_basis_of_graph(graph: &TapeGraph) -> H1Basis {
    let mut pos_of: BTreeMap<u64, usize> = BTreeMap::new();
    for (i, v) in graph.vertices().iter().enumerate() {
        for &h in &v.halfedges {
            pos_of.insert(h, i);
        }
    }
    let n = graph.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut forest_edges = Vec::new();
    let mut adjacency: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (ei, e) in graph.edges().iter().enumerate() {
        let (a, b) = (pos_of[&e[0]], pos_of[&e[1]]);
        if uf.find(a) != uf.find(b) {
            uf.union(a, b);
            forest_edges.push(ei);
            adjacency[a].push((b, ei, true));
            adjacency[b].push((a, ei, false));
        }
    }
    let mut loops = Vec::new();
    for (ei, e) in graph.edges().iter().enumerate() {
        if forest_edges.contains(&ei) {
            continue;
        }
        let (a, b) = (pos_of[&e[0]], pos_of[&e[1]]);
        // path from b back to a through the forest
        let path = forest_path(&adjacency, b, a);
        let mut steps = vec![(ei, true)];
        steps.extend(path);
        loops.push(SpineLoop {
            generator_edge: ei,
            steps,
        });
    }
    H1Basis {
        forest_edges,
        loops,
    }
}

/// Unique forest path as directed steps `(edge, forward)`.
fn forest_path(
    adjacency: &[Vec<(usize, usize, bool)>],
    from: usize,
    to: usize,
) -> Vec<(usize, bool)> {
    if from == to {
        return Vec::new();
    }
    let n = adjacency.len();
    let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    visited[from] = true;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(v, ei, fwd) in &adjacency[u] {
            if !visited[v] {
                visited[v] = true;
                prev[v] = Some((u, ei, fwd));
                queue.push_back(v);
            }
        }
    }
    let mut steps = Vec::new();
    let mut cur = to;
    while cur != from {
        let (u, ei, fwd) = prev[cur].expect("forest connects endpoints");
        steps.push((ei, fwd));
        cur = u;
    }
    steps.reverse();
    steps
}

#[derive(Serialize, Deserialize)]
struct QuadSurfaceRepr {
    squares: usize,
    gluings: Vec<[[usize; 2]; 2]>,
    vacua: usize,
}

impl Serialize for QuadSurface {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadSurfaceRepr {
            squares: self.square_count,
            gluings: self
                .gluing_pairs()
                .iter()
                .map(|(a, b)| [[a.square, a.side], [b.square, b.side]])
                .collect(),
            vacua: self.vacuum_count,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadSurface {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = QuadSurfaceRepr::deserialize(deserializer)?;
        let pairs: Vec<(Slot, Slot)> = r
            .gluings
            .iter()
            .map(|[[s0, d0], [s1, d1]]| (Slot::new(*s0, *d0), Slot::new(*s1, *d1)))
            .collect();
        QuadSurface::new(r.squares, &pairs, r.vacua).map_err(D::Error::custom)
    }
}
