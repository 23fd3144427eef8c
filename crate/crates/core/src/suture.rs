//! Suture systems on quadrangulated occupied surfaces.
//!
//! Per square the data is a crossing count on each side (boundary sides
//! always carry one point), a non-crossing perfect matching on the side
//! points in cyclic order, and a nesting forest of closed loops; a vacuum
//! carries its implicit dividing arc plus a loop forest. Glued sides match
//! points in reversed positional order. Complementary regions 2-color with
//! corner `i` in a region of its sign, colors flipping across every suture.
//!
//! Bypass surgery along an internal edge rewires the three strands around
//! the attaching arc by rotating the local matching one step; the mod-2
//! suture element is computed by recursing on up/down surgeries until every
//! system in sight is basic, trivial, or confining.

use crate::basis::{BitString, Gf2Vector};
use crate::rng::SplitMix64;
use crate::surface::{Corner, QuadSurface, Slot, SurfaceError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SutureError {
    #[error("invalid suture system: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("surface error: {0}")]
    Surface(#[from] SurfaceError),
    #[error("attaching arc needs at least 3 crossings on the edge, found {0}")]
    TooFewCrossings(usize),
    #[error("attaching arc middle index {middle} out of range 1..={max}")]
    BadMiddleIndex { middle: usize, max: usize },
    #[error("slot {0} is not an internal edge")]
    NotInternal(Slot),
}

/// A point on a square side: `(side index, position along the side)`.
pub type PointRef = (usize, usize);

/// A closed-loop nesting tree; children are the loops immediately inside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct LoopNode {
    pub children: Vec<LoopNode>,
}

impl LoopNode {
    pub fn leaf() -> Self {
        LoopNode::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VacuumLoopSide {
    /// The half-disc containing the positive vertex.
    Plus,
    /// The half-disc containing the negative vertex.
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSutures {
    /// Crossing counts per side, in side order.
    pub crossings: [usize; 4],
    /// Non-crossing perfect matching on the side points.
    pub matching: Vec<(PointRef, PointRef)>,
    /// Root loops, each placed by the global boundary segment its tree sits
    /// against (segment `k` runs from point `k` to point `k+1` cyclically).
    pub loops: Vec<(usize, LoopNode)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct VacuumSutures {
    pub loops: Vec<(VacuumLoopSide, LoopNode)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SutureSystem {
    pub squares: Vec<SquareSutures>,
    pub vacua: Vec<VacuumSutures>,
}

impl SutureSystem {
    pub fn new(squares: Vec<SquareSutures>, vacua: Vec<VacuumSutures>) -> Self {
        SutureSystem { squares, vacua }
    }

    /// Canonical encoding used as a memoization key.
    pub fn canonical_key(&self) -> String {
        serde_json::to_string(self).expect("suture serialization is infallible")
    }

    pub fn has_loops(&self) -> bool {
        self.squares.iter().any(|s| !s.loops.is_empty())
            || self.vacua.iter().any(|v| !v.loops.is_empty())
    }
}

/// An attaching arc running along an internal edge, spanning the crossings
/// `middle-1, middle, middle+1` in the positional order of `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachingArc {
    pub slot: Slot,
    pub middle: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BypassDirection {
    Up,
    Down,
}

/// The basic suture system for a square-by-square sign assignment
/// (`true` = positive). Vacua receive their single dividing arc.
pub fn basic(qs: &QuadSurface, assignment: &[bool]) -> Result<SutureSystem, SutureError> {
    if assignment.len() != qs.square_count() {
        return Err(SutureError::Invalid(vec![format!(
            "assignment covers {} squares, surface has {}",
            assignment.len(),
            qs.square_count()
        )]));
    }
    let squares = assignment
        .iter()
        .map(|&positive| SquareSutures {
            crossings: [1, 1, 1, 1],
            matching: if positive {
                vec![((3, 0), (0, 0)), ((1, 0), (2, 0))]
            } else {
                vec![((0, 0), (1, 0)), ((2, 0), (3, 0))]
            },
            loops: vec![],
        })
        .collect();
    let vacua = vec![VacuumSutures::default(); qs.vacuum_count()];
    Ok(SutureSystem { squares, vacua })
}

/// The vacuum sutures: just the dividing arc on every vacuum.
pub fn vacuum_sutures(qs: &QuadSurface) -> SutureSystem {
    SutureSystem {
        squares: vec![],
        vacua: vec![VacuumSutures::default(); qs.vacuum_count()],
    }
}

/// If every internal edge is crossed once and there are no loops, the
/// system is basic; classify each square's pattern (`true` = positive).
pub fn basic_assignment(system: &SutureSystem) -> Option<Vec<bool>> {
    if system.has_loops() {
        return None;
    }
    let mut out = Vec::new();
    for sq in &system.squares {
        if sq.crossings != [1, 1, 1, 1] {
            return None;
        }
        let mut matching = sq.matching.clone();
        for pair in &mut matching {
            if pair.0 > pair.1 {
                std::mem::swap(&mut pair.0, &mut pair.1);
            }
        }
        matching.sort();
        if matching == vec![((0, 0), (3, 0)), ((1, 0), (2, 0))] {
            out.push(true);
        } else if matching == vec![((0, 0), (1, 0)), ((2, 0), (3, 0))] {
            out.push(false);
        } else {
            return None;
        }
    }
    Some(out)
}

// ---------------------------------------------------------------------
// Per-square boundary geometry

/// Point layout of one square: global cyclic indices per side.
struct SquareLayout {
    counts: [usize; 4],
    offsets: [usize; 4],
    total: usize,
}

impl SquareLayout {
    fn new(counts: [usize; 4]) -> Self {
        let mut offsets = [0; 4];
        let mut acc = 0;
        for (i, c) in counts.iter().enumerate() {
            offsets[i] = acc;
            acc += c;
        }
        SquareLayout {
            counts,
            offsets,
            total: acc,
        }
    }

    fn global(&self, p: PointRef) -> usize {
        self.offsets[p.0] + p.1
    }

    /// The global segment containing corner `i` (between the last point of
    /// side `i-1` and the first point of side `i`).
    fn corner_segment(&self, corner: usize) -> usize {
        (self.offsets[corner] + self.total - 1) % self.total
    }

    /// The global segment containing piece `j` of a side (piece 0 precedes
    /// the side's first point, piece `count` follows its last).
    fn piece_segment(&self, side: usize, j: usize) -> usize {
        if j == 0 {
            (self.offsets[side] + self.total - 1) % self.total
        } else {
            self.offsets[side] + j - 1
        }
    }
}

/// Faces of one square's chord diagram.
struct SquareFaces {
    layout: SquareLayout,
    /// Face id per global segment.
    seg_face: Vec<usize>,
    face_count: usize,
    /// For each chord (by matching index): the two faces it separates.
    chord_faces: Vec<(usize, usize)>,
    /// Matching as partner array over global indices.
    partner: Vec<usize>,
    /// Chord id per global point.
    chord_of: Vec<usize>,
}

fn square_faces(sq: &SquareSutures) -> Result<SquareFaces, String> {
    let layout = SquareLayout::new(sq.crossings);
    let total = layout.total;
    let mut partner = vec![usize::MAX; total];
    let mut chord_of = vec![usize::MAX; total];
    for (ci, (a, b)) in sq.matching.iter().enumerate() {
        for p in [a, b] {
            if p.0 >= 4 || p.1 >= layout.counts[p.0] {
                return Err(format!("point ({},{}) out of range", p.0, p.1));
            }
        }
        let (ga, gb) = (layout.global(*a), layout.global(*b));
        if ga == gb || partner[ga] != usize::MAX || partner[gb] != usize::MAX {
            return Err(format!("matching reuses a point near ({},{})", a.0, a.1));
        }
        partner[ga] = gb;
        partner[gb] = ga;
        chord_of[ga] = ci;
        chord_of[gb] = ci;
    }
    if partner.contains(&usize::MAX) {
        return Err("matching is not perfect".into());
    }
    // stack scan: faces, with non-crossing check
    let mut seg_face = vec![usize::MAX; total];
    let mut face_count = 1;
    let mut chord_faces = vec![(usize::MAX, usize::MAX); sq.matching.len()];
    let mut stack: Vec<(usize, usize)> = Vec::new(); // (opening point, face entered)
    let mut current = 0usize;
    seg_face[total - 1] = 0;
    for p in 0..total {
        if partner[p] > p {
            let new_face = face_count;
            face_count += 1;
            chord_faces[chord_of[p]] = (current, new_face);
            stack.push((p, current));
            current = new_face;
        } else {
            match stack.pop() {
                Some((open, outer)) if open == partner[p] => current = outer,
                _ => return Err("matching is not non-crossing".into()),
            }
        }
        if p < total - 1 {
            seg_face[p] = current;
        }
    }
    if !stack.is_empty() || current != 0 {
        return Err("matching scan did not close".into());
    }
    Ok(SquareFaces {
        layout,
        seg_face,
        face_count,
        chord_faces,
        partner,
        chord_of,
    })
}

// ---------------------------------------------------------------------
// Global analysis: faces, colors, regions

/// A face of the cut-open complex, before gluing across internal edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum FaceId {
    /// (square, face index in its chord diagram)
    Square(usize, usize),
    /// (vacuum index, positive half?)
    Vacuum(usize, bool),
    /// (global loop id): the annular region inside a loop, outside its
    /// children
    Loop(usize),
}

struct LoopRecord {
    face: FaceId,
    color: bool,
    child_count: usize,
}

/// One-cells of the complex. Loop circles are omitted: each contributes
/// equal vertex and edge counts, so they never move an Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Cell1 {
    /// Interface piece `j` of a glued pair (keyed by the smaller slot).
    Interface(Slot, usize),
    /// Piece `j` of an unglued square side.
    Boundary(Slot, usize),
    /// A chord (square, matching index).
    Chord(usize, usize),
    /// The dividing arc of a vacuum.
    VacuumArc(usize),
    /// Boundary piece of a vacuum (4 per vacuum).
    VacuumBoundary(usize, usize),
}

/// Zero-cells, as identification classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Cell0 {
    /// A suture point class, keyed by its least (slot, position).
    Point(Slot, usize),
    /// A vertex class of the surface.
    VertexClass(usize),
    /// Endpoint of a vacuum arc (vacuum, 0|1).
    VacuumPoint(usize, usize),
    /// A vacuum vertex (vacuum, positive?).
    VacuumVertex(usize, bool),
}

pub(crate) struct Analysis {
    faces: Vec<FaceId>,
    face_color: BTreeMap<FaceId, bool>,
    face_chi: BTreeMap<FaceId, i64>,
    /// For every face: incident 1-cells (each listed once per face side).
    cells1: Vec<(Cell1, FaceId, FaceId)>,
    /// Endpoint classes of each 1-cell.
    cell1_ends: BTreeMap<Cell1, Vec<Cell0>>,
    /// Chord components: for each (square, chord): component id; and whether
    /// each component is closed.
    chord_component: BTreeMap<(usize, usize), usize>,
    component_closed: Vec<bool>,
}

/// A complementary region of the suture system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionInfo {
    pub positive: bool,
    pub euler_char: i64,
    pub confining: bool,
    pub face_count: usize,
}

pub(crate) fn analyze(qs: &QuadSurface, system: &SutureSystem) -> Result<Analysis, SutureError> {
    let mut problems = Vec::new();
    if system.squares.len() != qs.square_count() {
        problems.push(format!(
            "system covers {} squares, surface has {}",
            system.squares.len(),
            qs.square_count()
        ));
    }
    if system.vacua.len() != qs.vacuum_count() {
        problems.push(format!(
            "system covers {} vacua, surface has {}",
            system.vacua.len(),
            qs.vacuum_count()
        ));
    }
    if !problems.is_empty() {
        return Err(SutureError::Invalid(problems));
    }
    // crossing-count constraints
    for (si, sq) in system.squares.iter().enumerate() {
        for side in 0..4 {
            let slot = Slot::new(si, side);
            let c = sq.crossings[side];
            match qs.glued_to(slot) {
                None => {
                    if c != 1 {
                        problems.push(format!("boundary side {slot} carries {c} crossings"));
                    }
                }
                Some(p) => {
                    let pc = system.squares[p.square].crossings[p.side];
                    if pc != c {
                        problems.push(format!(
                            "glued sides {slot} ~ {p} carry {c} vs {pc} crossings"
                        ));
                    }
                    if c % 2 == 0 {
                        problems.push(format!("internal edge {slot} crossed {c} times (even)"));
                    }
                }
            }
        }
    }
    if !problems.is_empty() {
        return Err(SutureError::Invalid(problems));
    }
    let mut sq_faces = Vec::new();
    for (si, sq) in system.squares.iter().enumerate() {
        match square_faces(sq) {
            Ok(f) => sq_faces.push(f),
            Err(e) => {
                return Err(SutureError::Invalid(vec![format!("square {si}: {e}")]));
            }
        }
    }
    // face colors per square: pin corners, propagate across chords
    let mut face_color: BTreeMap<FaceId, bool> = BTreeMap::new();
    for (si, f) in sq_faces.iter().enumerate() {
        let mut color = vec![None; f.face_count];
        for corner in 0..4 {
            let seg = f.layout.corner_segment(corner);
            let face = f.seg_face[seg];
            let want = corner % 2 == 0;
            if let Some(prev) = color[face] {
                if prev != want {
                    problems.push(format!("square {si}: corner colors conflict"));
                }
            }
            color[face] = Some(want);
        }
        // propagate (chord diagram faces form a tree under chord adjacency)
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &f.chord_faces {
                match (color[a], color[b]) {
                    (Some(ca), Some(cb)) => {
                        if ca == cb {
                            problems.push(format!("square {si}: coloring inconsistent"));
                        }
                    }
                    (Some(ca), None) => {
                        color[b] = Some(!ca);
                        changed = true;
                    }
                    (None, Some(cb)) => {
                        color[a] = Some(!cb);
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
            if !problems.is_empty() {
                return Err(SutureError::Invalid(problems));
            }
        }
        for (fi, c) in color.iter().enumerate() {
            match c {
                Some(c) => {
                    face_color.insert(FaceId::Square(si, fi), *c);
                }
                None => problems.push(format!("square {si}: face {fi} unreachable in coloring")),
            }
        }
    }
    for vi in 0..system.vacua.len() {
        face_color.insert(FaceId::Vacuum(vi, true), true);
        face_color.insert(FaceId::Vacuum(vi, false), false);
    }
    if !problems.is_empty() {
        return Err(SutureError::Invalid(problems));
    }
    // loop faces
    let mut loops: Vec<LoopRecord> = Vec::new();
    let mut face_chi: BTreeMap<FaceId, i64> = BTreeMap::new();
    {
        fn add_tree(loops: &mut Vec<LoopRecord>, node: &LoopNode, host: FaceId, color: bool) {
            let id = loops.len();
            loops.push(LoopRecord {
                face: FaceId::Loop(id),
                color,
                child_count: node.children.len(),
            });
            for child in &node.children {
                add_tree(loops, child, host, !color);
            }
        }
        for (si, sq) in system.squares.iter().enumerate() {
            let f = &sq_faces[si];
            for (seg, node) in &sq.loops {
                if *seg >= f.layout.total {
                    problems.push(format!(
                        "square {si}: loop segment {seg} out of range 0..{}",
                        f.layout.total
                    ));
                    continue;
                }
                let host = FaceId::Square(si, f.seg_face[*seg]);
                let host_color = face_color[&host];
                add_tree(&mut loops, node, host, !host_color);
            }
        }
        for (vi, vac) in system.vacua.iter().enumerate() {
            for (side, node) in &vac.loops {
                let host = FaceId::Vacuum(vi, *side == VacuumLoopSide::Plus);
                let host_color = face_color[&host];
                add_tree(&mut loops, node, host, !host_color);
            }
        }
    }
    if !problems.is_empty() {
        return Err(SutureError::Invalid(problems));
    }
    // chi per face: 1 minus the number of immediate holes
    let mut holes: BTreeMap<FaceId, i64> = BTreeMap::new();
    for (si, sq) in system.squares.iter().enumerate() {
        let f = &sq_faces[si];
        for fi in 0..f.face_count {
            face_chi.insert(FaceId::Square(si, fi), 1);
        }
        for (seg, _) in &sq.loops {
            *holes
                .entry(FaceId::Square(si, f.seg_face[*seg]))
                .or_insert(0) += 1;
        }
    }
    for (vi, vac) in system.vacua.iter().enumerate() {
        face_chi.insert(FaceId::Vacuum(vi, true), 1);
        face_chi.insert(FaceId::Vacuum(vi, false), 1);
        for (side, _) in &vac.loops {
            *holes
                .entry(FaceId::Vacuum(vi, *side == VacuumLoopSide::Plus))
                .or_insert(0) += 1;
        }
    }
    for rec in &loops {
        face_chi.insert(rec.face, 1 - rec.child_count as i64);
        face_color.insert(rec.face, rec.color);
    }
    for (face, h) in holes {
        *face_chi.get_mut(&face).unwrap() -= h;
    }
    let faces: Vec<FaceId> = face_chi.keys().copied().collect();

    // 1-cells with their adjacent faces, and endpoint classes
    let classes = qs.vertex_classes()?;
    let corner_class = |c: Corner| Cell0::VertexClass(classes.class_of[c.square * 4 + c.corner]);
    let point_class = |slot: Slot, k: usize| -> Cell0 {
        match qs.glued_to(slot) {
            None => Cell0::Point(slot, k),
            Some(p) => {
                let c = system.squares[slot.square].crossings[slot.side];
                let mirrored = (p, c - 1 - k);
                let own = (slot, k);
                let least = own.min(mirrored);
                Cell0::Point(least.0, least.1)
            }
        }
    };
    let mut cells1: Vec<(Cell1, FaceId, FaceId)> = Vec::new();
    let mut cell1_ends: BTreeMap<Cell1, Vec<Cell0>> = BTreeMap::new();
    let face_of_piece = |si: usize, side: usize, j: usize| -> FaceId {
        let f = &sq_faces[si];
        FaceId::Square(si, f.seg_face[f.layout.piece_segment(side, j)])
    };
    for si in 0..system.squares.len() {
        let f = &sq_faces[si];
        for side in 0..4 {
            let slot = Slot::new(si, side);
            let c = f.layout.counts[side];
            let piece_ends = |j: usize| -> Vec<Cell0> {
                let start = if j == 0 {
                    corner_class(Corner {
                        square: si,
                        corner: side,
                    })
                } else {
                    point_class(slot, j - 1)
                };
                let end = if j == c {
                    corner_class(Corner {
                        square: si,
                        corner: (side + 1) % 4,
                    })
                } else {
                    point_class(slot, j)
                };
                vec![start, end]
            };
            match qs.glued_to(slot) {
                None => {
                    for j in 0..=c {
                        let cell = Cell1::Boundary(slot, j);
                        let face = face_of_piece(si, side, j);
                        cells1.push((cell, face, face));
                        cell1_ends.insert(cell, piece_ends(j));
                    }
                }
                Some(p) => {
                    if slot < p {
                        for j in 0..=c {
                            let cell = Cell1::Interface(slot, j);
                            let fa = face_of_piece(si, side, j);
                            let fb = face_of_piece(p.square, p.side, c - j);
                            // colors must merge consistently
                            if face_color[&fa] != face_color[&fb] {
                                return Err(SutureError::Invalid(vec![format!(
                                    "coloring mismatch across {slot} piece {j}"
                                )]));
                            }
                            cells1.push((cell, fa, fb));
                            cell1_ends.insert(cell, piece_ends(j));
                        }
                    }
                }
            }
        }
        for (ci, (a, b)) in system.squares[si].matching.iter().enumerate() {
            let cell = Cell1::Chord(si, ci);
            let (fa, fb) = f.chord_faces[ci];
            cells1.push((cell, FaceId::Square(si, fa), FaceId::Square(si, fb)));
            cell1_ends.insert(
                cell,
                vec![
                    point_class(Slot::new(si, a.0), a.1),
                    point_class(Slot::new(si, b.0), b.1),
                ],
            );
        }
    }
    for vi in 0..system.vacua.len() {
        let plus = FaceId::Vacuum(vi, true);
        let minus = FaceId::Vacuum(vi, false);
        let arc = Cell1::VacuumArc(vi);
        cells1.push((arc, plus, minus));
        cell1_ends.insert(
            arc,
            vec![Cell0::VacuumPoint(vi, 0), Cell0::VacuumPoint(vi, 1)],
        );
        // boundary: p0, v+, p1, v-
        let pieces = [
            (
                Cell0::VacuumPoint(vi, 0),
                Cell0::VacuumVertex(vi, true),
                plus,
            ),
            (
                Cell0::VacuumVertex(vi, true),
                Cell0::VacuumPoint(vi, 1),
                plus,
            ),
            (
                Cell0::VacuumPoint(vi, 1),
                Cell0::VacuumVertex(vi, false),
                minus,
            ),
            (
                Cell0::VacuumVertex(vi, false),
                Cell0::VacuumPoint(vi, 0),
                minus,
            ),
        ];
        for (j, (a, b, face)) in pieces.iter().enumerate() {
            let cell = Cell1::VacuumBoundary(vi, j);
            cells1.push((cell, *face, *face));
            cell1_ends.insert(cell, vec![*a, *b]);
        }
    }

    // chord components across gluings
    let mut chord_component: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut component_closed: Vec<bool> = Vec::new();
    {
        // neighbor of a chord endpoint across a gluing: the chord in the
        // partner square at the mirrored point
        let endpoint_next = |slot: Slot, k: usize| -> Option<(usize, usize)> {
            let p = qs.glued_to(slot)?;
            let c = system.squares[slot.square].crossings[slot.side];
            let g = sq_faces[p.square].layout.global((p.side, c - 1 - k));
            Some((p.square, sq_faces[p.square].chord_of[g]))
        };
        for si in 0..system.squares.len() {
            for ci in 0..system.squares[si].matching.len() {
                if chord_component.contains_key(&(si, ci)) {
                    continue;
                }
                let comp = component_closed.len();
                // trace in both directions from this chord
                let mut closed = true;
                let mut frontier = vec![(si, ci)];
                chord_component.insert((si, ci), comp);
                while let Some((s, c)) = frontier.pop() {
                    let (a, b) = system.squares[s].matching[c];
                    for p in [a, b] {
                        match endpoint_next(Slot::new(s, p.0), p.1) {
                            None => closed = false,
                            Some(next) => {
                                if let std::collections::btree_map::Entry::Vacant(e) =
                                    chord_component.entry(next)
                                {
                                    e.insert(comp);
                                    frontier.push(next);
                                }
                            }
                        }
                    }
                }
                component_closed.push(closed);
            }
        }
    }

    Ok(Analysis {
        faces,
        face_color,
        face_chi,
        cells1,
        cell1_ends,
        chord_component,
        component_closed,
    })
}

impl Analysis {
    /// Union-find of faces across interface pieces; returns a region id per
    /// face (loop faces are their own regions).
    fn region_of_faces(&self) -> BTreeMap<FaceId, usize> {
        let index: BTreeMap<FaceId, usize> = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        let mut uf = crate::tape_graph::UnionFind::new(self.faces.len());
        for (cell, fa, fb) in &self.cells1 {
            if matches!(cell, Cell1::Interface(_, _)) {
                uf.union(index[fa], index[fb]);
            }
        }
        let mut root_to_region = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            let r = uf.find(i);
            let next = root_to_region.len();
            let region = *root_to_region.entry(r).or_insert(next);
            out.insert(*f, region);
        }
        out
    }

    fn regions(&self) -> Vec<RegionInfo> {
        let region_of = self.region_of_faces();
        let nregions = region_of.values().copied().max().map_or(0, |m| m + 1);
        let mut chi = vec![0i64; nregions];
        let mut color = vec![false; nregions];
        let mut confining = vec![true; nregions];
        let mut face_count = vec![0usize; nregions];
        let mut cell0s: Vec<std::collections::BTreeSet<Cell0>> = vec![Default::default(); nregions];
        let mut cell1_count = vec![0i64; nregions];
        for f in &self.faces {
            let r = region_of[f];
            chi[r] += self.face_chi[f];
            color[r] = self.face_color[f];
            face_count[r] += 1;
        }
        for (cell, fa, fb) in &self.cells1 {
            // a cell separating two regions lies in both closures
            let ra = region_of[fa];
            let rb = region_of[fb];
            let targets = if ra == rb { vec![ra] } else { vec![ra, rb] };
            for r in targets {
                cell1_count[r] += 1;
                for e in &self.cell1_ends[cell] {
                    cell0s[r].insert(*e);
                }
                if matches!(cell, Cell1::Boundary(_, _) | Cell1::VacuumBoundary(_, _)) {
                    confining[r] = false;
                }
            }
        }
        // vertex classes sit on the surface boundary
        for (r, cells) in cell0s.iter().enumerate() {
            if cells
                .iter()
                .any(|c| matches!(c, Cell0::VertexClass(_) | Cell0::VacuumVertex(_, _)))
            {
                confining[r] = false;
            }
        }
        (0..nregions)
            .map(|r| RegionInfo {
                positive: color[r],
                euler_char: cell0s[r].len() as i64 - cell1_count[r] + chi[r],
                confining: confining[r],
                face_count: face_count[r],
            })
            .collect()
    }
}

/// Validate a suture system against its surface.
pub fn validate(qs: &QuadSurface, system: &SutureSystem) -> Result<(), SutureError> {
    qs.validate()?;
    analyze(qs, system).map(|_| ())
}

/// The complementary regions.
pub fn regions(qs: &QuadSurface, system: &SutureSystem) -> Result<Vec<RegionInfo>, SutureError> {
    Ok(analyze(qs, system)?.regions())
}

/// Euler class: chi of the positive regions minus chi of the negative.
pub fn euler_class(qs: &QuadSurface, system: &SutureSystem) -> Result<i64, SutureError> {
    Ok(regions(qs, system)?
        .iter()
        .map(|r| {
            if r.positive {
                r.euler_char
            } else {
                -r.euler_char
            }
        })
        .sum())
}

/// True iff some complementary region avoids the surface boundary.
pub fn is_confining(qs: &QuadSurface, system: &SutureSystem) -> Result<bool, SutureError> {
    Ok(regions(qs, system)?.iter().any(|r| r.confining))
}

/// True iff the system contains a contractible closed suture.
///
/// In-square and vacuum loops are trivial outright. A closed cross-square
/// component is trivial iff cutting the surface along it leaves a piece
/// that is a disc avoiding the boundary.
pub fn is_trivial(qs: &QuadSurface, system: &SutureSystem) -> Result<bool, SutureError> {
    if system.has_loops() {
        return Ok(true);
    }
    let analysis = analyze(qs, system)?;
    for comp in 0..analysis.component_closed.len() {
        if !analysis.component_closed[comp] {
            continue;
        }
        if cut_component_bounds_disc(&analysis, comp) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Cut along closed chord component `comp`; check whether some side piece
/// is a disc not touching the surface boundary.
fn cut_component_bounds_disc(analysis: &Analysis, comp: usize) -> bool {
    let index: BTreeMap<FaceId, usize> = analysis
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| (*f, i))
        .collect();
    let mut uf = crate::tape_graph::UnionFind::new(analysis.faces.len());
    let in_gamma = |cell: &Cell1| -> bool {
        match cell {
            Cell1::Chord(si, ci) => analysis.chord_component[&(*si, *ci)] == comp,
            _ => false,
        }
    };
    for (cell, fa, fb) in &analysis.cells1 {
        let merge = match cell {
            Cell1::Interface(_, _) => true,
            Cell1::Chord(_, _) => !in_gamma(cell),
            Cell1::VacuumArc(_) => true,
            _ => false,
        };
        if merge {
            uf.union(index[fa], index[fb]);
        }
    }
    // pieces adjacent to gamma
    let mut adjacent = std::collections::BTreeSet::new();
    for (cell, fa, fb) in &analysis.cells1 {
        if in_gamma(cell) {
            adjacent.insert(uf.find(index[fa]));
            adjacent.insert(uf.find(index[fb]));
        }
    }
    // endpoint classes of the cut curve: these get duplicated per side
    let mut gamma_points = std::collections::BTreeSet::new();
    for (cell, _, _) in &analysis.cells1 {
        if in_gamma(cell) {
            for end in &analysis.cell1_ends[cell] {
                gamma_points.insert(*end);
            }
        }
    }
    'piece: for root in adjacent {
        let mut chi_faces = 0i64;
        for (i, f) in analysis.faces.iter().enumerate() {
            if uf.find(i) == uf.find(root) {
                chi_faces += analysis.face_chi[f];
            }
        }
        let mut e = 0i64;
        let mut zeros = std::collections::BTreeSet::new();
        let mut gamma_copies = 0i64;
        for (cell, fa, fb) in &analysis.cells1 {
            if in_gamma(cell) {
                // the cut doubles the curve: one arc copy per adjacent side
                for side in [fa, fb] {
                    if uf.find(index[side]) == uf.find(root) {
                        e += 1;
                    }
                }
                continue;
            }
            if uf.find(index[fa]) != uf.find(root) {
                continue;
            }
            if matches!(cell, Cell1::Boundary(_, _) | Cell1::VacuumBoundary(_, _)) {
                continue 'piece; // touches the surface boundary
            }
            e += 1;
            for end in &analysis.cell1_ends[cell] {
                if gamma_points.contains(end) {
                    // a point copy on this side of the cut; interface
                    // pieces flanking the point supply one copy each
                    gamma_copies += 1;
                } else {
                    zeros.insert(*end);
                }
            }
        }
        let chi = zeros.len() as i64 + gamma_copies - e + chi_faces;
        if chi == 1 {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------
// Bypass surgery

/// Local germ bookkeeping for a surgery: the three strand germs per side.
struct SurgerySite {
    a_slot: Slot,
    b_slot: Slot,
    /// A-side points of germs L1, L2, L3 (global indices in square a).
    a_points: [usize; 3],
    /// B-side points of germs R1, R2, R3.
    b_points: [usize; 3],
    count: usize,
    middle: usize,
}

fn surgery_site(
    qs: &QuadSurface,
    system: &SutureSystem,
    arc: &AttachingArc,
) -> Result<SurgerySite, SutureError> {
    let a_slot = arc.slot;
    let b_slot = qs
        .glued_to(a_slot)
        .ok_or(SutureError::NotInternal(a_slot))?;
    let count = system.squares[a_slot.square].crossings[a_slot.side];
    if count < 3 {
        return Err(SutureError::TooFewCrossings(count));
    }
    if arc.middle < 1 || arc.middle > count - 2 {
        return Err(SutureError::BadMiddleIndex {
            middle: arc.middle,
            max: count - 2,
        });
    }
    let i = arc.middle;
    let a_layout = SquareLayout::new(system.squares[a_slot.square].crossings);
    let b_layout = SquareLayout::new(system.squares[b_slot.square].crossings);
    let a_points = [
        a_layout.global((a_slot.side, i - 1)),
        a_layout.global((a_slot.side, i)),
        a_layout.global((a_slot.side, i + 1)),
    ];
    let b_points = [
        b_layout.global((b_slot.side, count - i)),
        b_layout.global((b_slot.side, count - 1 - i)),
        b_layout.global((b_slot.side, count - 2 - i)),
    ];
    Ok(SurgerySite {
        a_slot,
        b_slot,
        a_points,
        b_points,
        count,
        middle: i,
    })
}

/// Perform bypass surgery along the arc. The crossing count on the edge
/// drops by two; spliced strands may spawn closed loops, appended to the
/// owning square's loop forest.
pub fn bypass(
    qs: &QuadSurface,
    system: &SutureSystem,
    arc: &AttachingArc,
    dir: BypassDirection,
) -> Result<SutureSystem, SutureError> {
    let site = surgery_site(qs, system, arc)?;
    let (a_sq, b_sq) = (site.a_slot.square, site.b_slot.square);
    if a_sq == b_sq {
        // a square glued to itself never validates as an occupied surface
        return Err(SutureError::Invalid(vec![format!(
            "edge {} glues square {a_sq} to itself",
            site.a_slot
        )]));
    }

    // Germ nodes: 0..3 are the A-side germs of crossings middle-1, middle,
    // middle+1; 3..6 the B-side germs of the same crossings. New local arcs:
    // up rewires to {A1A2, A3B1, B2B3}, down to {A2A3, A1B3, B1B2}, where
    // B1 faces A1 across the edge.
    let arc_pairs: [(usize, usize); 3] = match dir {
        BypassDirection::Up => [(0, 1), (2, 3), (4, 5)],
        BypassDirection::Down => [(1, 2), (0, 5), (3, 4)],
    };
    let crossing_pair: (usize, usize) = match dir {
        BypassDirection::Up => (2, 3),
        BypassDirection::Down => (0, 5),
    };
    let mut arc_nbr = [usize::MAX; 6];
    for &(x, y) in &arc_pairs {
        arc_nbr[x] = y;
        arc_nbr[y] = x;
    }
    let germ_square = |g: usize| -> usize {
        if g < 3 {
            a_sq
        } else {
            b_sq
        }
    };
    let germ_point = |g: usize| -> usize {
        if g < 3 {
            site.a_points[g]
        } else {
            site.b_points[g - 3]
        }
    };
    let germ_at = |sq: usize, pt: usize| -> Option<usize> {
        (0..6).find(|&g| germ_square(g) == sq && germ_point(g) == pt)
    };

    let layout_a = SquareLayout::new(system.squares[a_sq].crossings);
    let layout_b = SquareLayout::new(system.squares[b_sq].crossings);
    let faces_a = square_faces(&system.squares[a_sq])
        .map_err(|e| SutureError::Invalid(vec![format!("square {a_sq}: {e}")]))?;
    let faces_b = square_faces(&system.squares[b_sq])
        .map_err(|e| SutureError::Invalid(vec![format!("square {b_sq}: {e}")]))?;

    // Old link of each germ: the other endpoint of its chord, which is
    // either a fellow germ or an anchor (a non-surgered point).
    #[derive(Clone, Copy)]
    enum Link {
        Germ(usize),
        Anchor(usize, usize), // (square, old global point)
    }
    let old_link: Vec<Link> = (0..6)
        .map(|g| {
            let sq = germ_square(g);
            let partner = if sq == a_sq {
                faces_a.partner[germ_point(g)]
            } else {
                faces_b.partner[germ_point(g)]
            };
            match germ_at(sq, partner) {
                Some(gg) => Link::Germ(gg),
                None => Link::Anchor(sq, partner),
            }
        })
        .collect();

    // Trace components: paths run anchor - germ - (arc) - germ - ... -
    // anchor; leftover germs form cycles, each a spawned closed loop.
    let mut visited = [false; 6];
    let mut splices: Vec<(usize, usize, usize)> = Vec::new(); // (square, pt, pt)
    let mut crossing_anchors: Option<((usize, usize), (usize, usize))> = None;
    let mut spawned_sides: Vec<usize> = Vec::new(); // owner square per loop
    for g0 in 0..6 {
        if visited[g0] {
            continue;
        }
        let Link::Anchor(asq, apt) = old_link[g0] else {
            continue;
        };
        let mut germs = vec![g0];
        visited[g0] = true;
        let mut cur = g0;
        let (end_sq, end_pt) = loop {
            let nxt = arc_nbr[cur];
            germs.push(nxt);
            visited[nxt] = true;
            match old_link[nxt] {
                Link::Anchor(sq, pt) => break (sq, pt),
                Link::Germ(gg) => {
                    germs.push(gg);
                    visited[gg] = true;
                    cur = gg;
                }
            }
        };
        let crosses = germs.contains(&crossing_pair.0) && germs.contains(&crossing_pair.1);
        if crosses {
            // one anchor sits in each square
            let (ra, rb) = if asq == a_sq {
                ((asq, apt), (end_sq, end_pt))
            } else {
                ((end_sq, end_pt), (asq, apt))
            };
            debug_assert_eq!(ra.0, a_sq);
            debug_assert_eq!(rb.0, b_sq);
            crossing_anchors = Some((ra, rb));
        } else {
            debug_assert_eq!(asq, end_sq);
            splices.push((asq, apt, end_pt));
        }
    }
    for g0 in 0..6 {
        if !visited[g0] {
            // walk the cycle
            let mut cur = g0;
            loop {
                visited[cur] = true;
                let nxt = arc_nbr[cur];
                visited[nxt] = true;
                match old_link[nxt] {
                    Link::Germ(gg) => cur = gg,
                    Link::Anchor(_, _) => unreachable!("cycle hit an anchor"),
                }
                if visited[cur] && cur == g0 {
                    break;
                }
            }
            spawned_sides.push(germ_square(g0));
        }
    }
    let (anchor_a, anchor_b) = crossing_anchors
        .ok_or_else(|| SutureError::Invalid(vec!["crossing strand failed to terminate".into()]))?;

    // Renumbering: two points vanish on each side of the edge.
    let i = site.middle;
    let removed_a: [usize; 2] = match dir {
        BypassDirection::Up => [site.a_points[0], site.a_points[1]],
        BypassDirection::Down => [site.a_points[1], site.a_points[2]],
    };
    let removed_b: [usize; 2] = match dir {
        BypassDirection::Up => [site.b_points[1], site.b_points[2]],
        BypassDirection::Down => [site.b_points[0], site.b_points[1]],
    };
    let survivor_a_old = match dir {
        BypassDirection::Up => site.a_points[2],
        BypassDirection::Down => site.a_points[0],
    };
    let survivor_b_old = match dir {
        BypassDirection::Up => site.b_points[0],
        BypassDirection::Down => site.b_points[2],
    };
    let new_count = site.count - 2;
    let survivor_a_rel = i - 1;
    let survivor_b_rel = new_count - 1 - survivor_a_rel;

    let make_square = |sq: usize| -> SquareSutures {
        let (layout, removed, edge_side, survivor_old, survivor_rel, anchor) = if sq == a_sq {
            (
                &layout_a,
                &removed_a,
                site.a_slot.side,
                survivor_a_old,
                survivor_a_rel,
                anchor_a,
            )
        } else {
            (
                &layout_b,
                &removed_b,
                site.b_slot.side,
                survivor_b_old,
                survivor_b_rel,
                anchor_b,
            )
        };
        let survivors: Vec<usize> = (0..layout.total).filter(|g| !removed.contains(g)).collect();
        let renum: BTreeMap<usize, usize> = survivors
            .iter()
            .enumerate()
            .map(|(new, old)| (*old, new))
            .collect();
        let mut counts = layout.counts;
        counts[edge_side] -= 2;
        let new_layout = SquareLayout::new(counts);
        let to_point = |new_global: usize| -> PointRef { to_side(&new_layout, new_global) };
        let surgered = |g: usize| -> bool {
            (if sq == a_sq {
                site.a_points
            } else {
                site.b_points
            })
            .contains(&g)
        };
        let mut matching: Vec<(PointRef, PointRef)> = system.squares[sq]
            .matching
            .iter()
            .map(|(x, y)| (layout.global(*x), layout.global(*y)))
            .filter(|(gx, gy)| !surgered(*gx) && !surgered(*gy))
            .map(|(gx, gy)| (to_point(renum[&gx]), to_point(renum[&gy])))
            .collect();
        for (ssq, p, q) in &splices {
            if *ssq == sq {
                matching.push((to_point(renum[p]), to_point(renum[q])));
            }
        }
        // the crossing strand ends at the surviving crossing point
        debug_assert_eq!(to_point(renum[&survivor_old]), (edge_side, survivor_rel));
        matching.push((to_point(renum[&anchor.1]), (edge_side, survivor_rel)));
        // Loop placements. Away from the surgery site placements just
        // renumber; the two old segments inside the site need care:
        //  - the inner segment (between the two removed points) loses its
        //    corridor to the edge: its loops sit across the spliced strand
        //    afterwards, or inside the spawned circle when the splice
        //    closes up;
        //  - the outer segment (between a removed point and the survivor)
        //    ends up in the face flanking the surviving crossing.
        let total_new = survivors.len();
        let remap_segment = |old_seg: usize| -> usize {
            let le = survivors.iter().filter(|&&s| s <= old_seg).count();
            (le + total_new - 1) % total_new
        };
        let spawning = spawned_sides.contains(&sq);
        let inner_seg_old = removed[0].min(removed[1]);
        let outer_seg_old = if survivor_old > removed[0].max(removed[1]) {
            removed[0].max(removed[1])
        } else {
            survivor_old
        };
        let surv_global = new_layout.offsets[edge_side] + survivor_rel;
        let seg_at_survivor = match dir {
            // up removes the pair below the survivor, so the vacated
            // stretch is the segment ending at the surviving point
            BypassDirection::Up => (surv_global + new_layout.total - 1) % new_layout.total,
            BypassDirection::Down => surv_global,
        };
        let shell = SquareSutures {
            crossings: counts,
            matching: matching.clone(),
            loops: vec![],
        };
        let new_faces = square_faces(&shell).expect("surgered matching is non-crossing");
        let edge_face = new_faces.seg_face[seg_at_survivor];
        // the strand carrying the spliced arc: a standalone splice chord if
        // one landed in this square, else the crossing chord
        let spliced_chord_global = splices
            .iter()
            .find(|(ssq, _, _)| *ssq == sq)
            .map(|(_, p, _)| renum[p])
            .unwrap_or_else(|| renum[&anchor.1]);
        let across_spliced_face = {
            let ci = new_faces.chord_of[spliced_chord_global];
            let (fa, fb) = new_faces.chord_faces[ci];
            if fa == edge_face {
                fb
            } else {
                fa
            }
        };
        let segment_of_face = |face: usize| -> usize {
            new_faces
                .seg_face
                .iter()
                .position(|&f| f == face)
                .expect("every face touches a segment")
        };
        let mut loops: Vec<(usize, LoopNode)> = Vec::new();
        let mut swallowed: Vec<LoopNode> = Vec::new();
        for (seg, node) in &system.squares[sq].loops {
            if *seg == inner_seg_old {
                if spawning {
                    swallowed.push(node.clone());
                } else {
                    loops.push((segment_of_face(across_spliced_face), node.clone()));
                }
            } else if *seg == outer_seg_old {
                loops.push((seg_at_survivor, node.clone()));
            } else {
                loops.push((remap_segment(*seg), node.clone()));
            }
        }
        if spawning {
            loops.push((
                seg_at_survivor,
                LoopNode {
                    children: swallowed,
                },
            ));
        }
        SquareSutures {
            crossings: counts,
            matching,
            loops,
        }
    };

    let mut out = system.clone();
    out.squares[a_sq] = make_square(a_sq);
    out.squares[b_sq] = make_square(b_sq);
    Ok(out)
}

fn to_side(layout: &SquareLayout, global: usize) -> PointRef {
    for s in (0..4).rev() {
        if layout.counts[s] > 0 && layout.offsets[s] <= global {
            return (s, global - layout.offsets[s]);
        }
    }
    panic!("global point {global} out of range");
}

// ---------------------------------------------------------------------
// Mod-2 suture element

/// Strategy for choosing the next surgery during reduction.
#[derive(Clone, Copy, Debug)]
pub enum ReductionStrategy {
    /// Lowest internal-edge slot with at least three crossings, middle 1.
    Deterministic,
    /// Seeded uniform choice of eligible edge and middle index.
    Seeded(u64),
}

/// All internal-edge slots with at least 3 crossings (lower slot of each
/// glued pair), with their counts.
fn reducible_edges(qs: &QuadSurface, system: &SutureSystem) -> Vec<(Slot, usize)> {
    let mut out = Vec::new();
    for (a, _b) in qs.gluing_pairs() {
        let c = system.squares[a.square].crossings[a.side];
        if c >= 3 {
            out.push((a, c));
        }
    }
    out
}

/// The mod-2 suture element on the bitstring basis of the quadrangulation.
///
/// Trivial or confining systems map to zero; basic systems map to their
/// basis vector (bit 1 at positive squares); otherwise recurse over the two
/// surgeries of a chosen attaching arc, summing over GF(2). Memoized on a
/// canonical encoding; `memo_cap` bounds the number of cached entries.
pub fn suture_element_mod2(
    qs: &QuadSurface,
    system: &SutureSystem,
    strategy: ReductionStrategy,
    memo_cap: usize,
) -> Result<Gf2Vector, SutureError> {
    let mut memo: BTreeMap<String, Gf2Vector> = BTreeMap::new();
    let mut rng = match strategy {
        ReductionStrategy::Deterministic => None,
        ReductionStrategy::Seeded(seed) => Some(SplitMix64::new(seed)),
    };
    reduce(qs, system, &mut memo, &mut rng, memo_cap)
}

fn reduce(
    qs: &QuadSurface,
    system: &SutureSystem,
    memo: &mut BTreeMap<String, Gf2Vector>,
    rng: &mut Option<SplitMix64>,
    memo_cap: usize,
) -> Result<Gf2Vector, SutureError> {
    let key = system.canonical_key();
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let value = if is_trivial(qs, system)? || is_confining(qs, system)? {
        Gf2Vector::zero()
    } else if let Some(assignment) = basic_assignment(system) {
        Gf2Vector::basis(BitString::from_bits(&assignment))
    } else {
        let edges = reducible_edges(qs, system);
        debug_assert!(!edges.is_empty(), "nonbasic system with no reducible edge");
        let (slot, middle) = match rng {
            None => (edges[0].0, 1),
            Some(r) => {
                let (slot, count) = edges[r.below(edges.len())];
                (slot, 1 + r.below(count - 2))
            }
        };
        let arc = AttachingArc { slot, middle };
        let up = bypass(qs, system, &arc, BypassDirection::Up)?;
        let down = bypass(qs, system, &arc, BypassDirection::Down)?;
        let vu = reduce(qs, &up, memo, rng, memo_cap)?;
        let vd = reduce(qs, &down, memo, rng, memo_cap)?;
        vu.add(&vd)
    };
    if memo.len() < memo_cap {
        memo.insert(key, value.clone());
    }
    Ok(value)
}
