//! Tape graphs: finite graphs with a *total* ordering of the half-edges at
//! each vertex.
//!
//! Thickening edges into tapes and vertices into discs produces a surface
//! with boundary; the boundary decomposes into walks over the sides of
//! edges. A walk wraps from the maximal side back to the minimal side at a
//! vertex at a *breakpoint*. Oriented tape graphs whose boundary walks all
//! carry a breakpoint are exactly the spines of quadrangulated occupied
//! surfaces.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TapeGraphError {
    #[error("invalid tape graph: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("operation requires an oriented tape graph (no flipped edges)")]
    NotOriented,
    #[error("inconsistent surface statistics: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub id: u64,
    pub halfedges: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeGraph {
    vertices: Vec<VertexData>,
    edges: Vec<[u64; 2]>,
    flips: Vec<bool>,
}

/// One step of a boundary walk: a side of an edge is traversed, arriving at
/// a vertex, possibly wrapping there (a breakpoint).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    /// Index of the traversed edge.
    pub edge: usize,
    /// Half-edge id identifying the departed side of the edge.
    pub departed_half_edge: u64,
    /// Vertex id arrived at.
    pub arrival_vertex: u64,
    /// True when the walk wraps from the maximal to the minimal side here.
    pub breakpoint: bool,
}

/// A boundary component of the thickened tape graph.
///
/// Isolated vertices contribute a synthetic length-0 walk which counts as
/// carrying a breakpoint; those model vacua, whose spine is a bare vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub steps: Vec<WalkStep>,
    pub isolated_vertex: Option<u64>,
}

impl BoundaryWalk {
    pub fn breakpoint_count(&self) -> usize {
        if self.isolated_vertex.is_some() {
            1
        } else {
            self.steps.iter().filter(|s| s.breakpoint).count()
        }
    }

    pub fn has_breakpoint(&self) -> bool {
        self.breakpoint_count() > 0
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A wedge: one of the `d+1` sectors at a blown-up vertex of degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WedgeIndex {
    pub vertex: u64,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WedgeInfo {
    pub wedge: WedgeIndex,
    pub barrier: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStats {
    pub vertex_ids: Vec<u64>,
    pub euler_char: i64,
    pub boundary_count: usize,
    pub genus: i64,
}

/// Verdict of the spine criterion, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpineVerdict {
    Spine,
    NotOriented,
    /// A boundary walk without any breakpoint.
    BreakpointFree(BoundaryWalk),
}

impl SpineVerdict {
    pub fn is_spine(&self) -> bool {
        matches!(self, SpineVerdict::Spine)
    }
}

pub(crate) struct GraphIndex {
    /// half-edge id -> (vertex index, position at vertex)
    pub he_vertex: BTreeMap<u64, (usize, usize)>,
    /// half-edge id -> (edge index, end 0/1)
    pub he_edge: BTreeMap<u64, (usize, usize)>,
}

impl TapeGraph {
    pub fn new(vertices: Vec<VertexData>, edges: Vec<[u64; 2]>, flips: Vec<bool>) -> Self {
        TapeGraph {
            vertices,
            edges,
            flips,
        }
    }

    /// An oriented graph (all flips false).
    pub fn oriented(vertices: Vec<VertexData>, edges: Vec<[u64; 2]>) -> Self {
        let flips = vec![false; edges.len()];
        TapeGraph::new(vertices, edges, flips)
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[u64; 2]] {
        &self.edges
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, vertex_idx: usize) -> usize {
        self.vertices[vertex_idx].halfedges.len()
    }

    pub fn validate(&self) -> Result<(), TapeGraphError> {
        let mut problems = Vec::new();
        if self.flips.len() != self.edges.len() {
            problems.push(format!(
                "{} flip flags for {} edges",
                self.flips.len(),
                self.edges.len()
            ));
        }
        let mut seen_vertex_ids = BTreeMap::new();
        let mut in_vertex: BTreeMap<u64, usize> = BTreeMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            if let Some(prev) = seen_vertex_ids.insert(v.id, vi) {
                problems.push(format!(
                    "vertex id {} used at positions {prev} and {vi}",
                    v.id
                ));
            }
            for &h in &v.halfedges {
                *in_vertex.entry(h).or_insert(0) += 1;
            }
        }
        let mut in_edge: BTreeMap<u64, usize> = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            if e[0] == e[1] {
                problems.push(format!("edge {ei} repeats half-edge {}", e[0]));
            }
            for &h in e {
                *in_edge.entry(h).or_insert(0) += 1;
            }
        }
        for (h, n) in &in_vertex {
            if *n != 1 {
                problems.push(format!("half-edge {h} appears in {n} vertex lists"));
            }
            if !in_edge.contains_key(h) {
                problems.push(format!("half-edge {h} dangles (no edge pair)"));
            }
        }
        for (h, n) in &in_edge {
            if *n != 1 {
                problems.push(format!("half-edge {h} appears in {n} edge pairs"));
            }
            if !in_vertex.contains_key(h) {
                problems.push(format!("half-edge {h} in an edge pair but at no vertex"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(TapeGraphError::Invalid(problems))
        }
    }

    pub(crate) fn index(&self) -> Result<GraphIndex, TapeGraphError> {
        self.validate()?;
        let mut he_vertex = BTreeMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            for (pos, &h) in v.halfedges.iter().enumerate() {
                he_vertex.insert(h, (vi, pos));
            }
        }
        let mut he_edge = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            he_edge.insert(e[0], (ei, 0));
            he_edge.insert(e[1], (ei, 1));
        }
        Ok(GraphIndex { he_vertex, he_edge })
    }

    pub fn is_oriented(&self) -> bool {
        self.flips.iter().all(|f| !f)
    }

    /// Boundary walks of the thickening.
    ///
    /// The walk departs on a half-side of a half-edge, crosses the edge,
    /// and continues at the arrival vertex: past the partner's successor
    /// when possible, else wrapping to the minimal side with a breakpoint.
    /// Flipped edges swap successor/predecessor roles. Each geometric
    /// boundary circle is reported once; each degree-0 vertex contributes a
    /// synthetic walk.
    pub fn boundary_components(&self) -> Result<Vec<BoundaryWalk>, TapeGraphError> {
        let idx = self.index()?;
        // Departure states: (half-edge, polarity). Polarity 0 departs on the
        // lower half-side (the oriented walk); polarity 1 is the mirror
        // traversal, reached through flipped edges.
        let hes: Vec<u64> = idx.he_vertex.keys().copied().collect();
        let state_of = |h: u64, pol: usize| -> usize {
            let hi = hes.binary_search(&h).unwrap();
            2 * hi + pol
        };
        let nstates = 2 * hes.len();
        let mut next_state = vec![usize::MAX; nstates];
        let mut step_of = vec![None; nstates];
        for &h in &hes {
            for pol in 0..2 {
                let (ei, end) = idx.he_edge[&h];
                let partner = self.edges[ei][1 - end];
                let arr_pol = if self.flips[ei] { pol } else { 1 - pol };
                let (pvi, ppos) = idx.he_vertex[&partner];
                let deg = self.degree(pvi);
                // arr_pol 1: arrived on the upper half-side, continue upward.
                let (nh, npol, bp) = if arr_pol == 1 {
                    if ppos + 1 < deg {
                        (self.vertices[pvi].halfedges[ppos + 1], 0, false)
                    } else {
                        (self.vertices[pvi].halfedges[0], 0, true)
                    }
                } else if ppos > 0 {
                    (self.vertices[pvi].halfedges[ppos - 1], 1, false)
                } else {
                    (self.vertices[pvi].halfedges[deg - 1], 1, true)
                };
                let s = state_of(h, pol);
                next_state[s] = state_of(nh, npol);
                step_of[s] = Some(WalkStep {
                    edge: ei,
                    departed_half_edge: h,
                    arrival_vertex: self.vertices[pvi].id,
                    breakpoint: bp,
                });
            }
        }
        // Enumerate orbits; a geometric circle appears as one orbit per
        // traversal direction, and the two share their undirected
        // half-sides, i.e. their state set modulo polarity pairing with the
        // arrival half-side. Deduplicate by marking the reverse's states.
        let mut seen = vec![false; nstates];
        let mut walks = Vec::new();
        // Polarity-0 departures first: for oriented graphs every circle is
        // walked in its canonical direction, never as the mirror orbit.
        let start_order = (0..nstates).step_by(2).chain((1..nstates).step_by(2));
        for start in start_order {
            if seen[start] {
                continue;
            }
            let mut steps = Vec::new();
            let mut s = start;
            loop {
                seen[s] = true;
                steps.push(step_of[s].clone().unwrap());
                s = next_state[s];
                if s == start {
                    break;
                }
            }
            // Mark the mirror traversal as seen: the same undirected
            // half-side is traversed inward exactly once, as the arrival of
            // the partner's crossing in the reverse orbit.
            let mut r = start;
            loop {
                let (hi, pol) = (r / 2, r % 2);
                let h = hes[hi];
                let (ei, end) = idx.he_edge[&h];
                let partner = self.edges[ei][1 - end];
                let rev_pol = if self.flips[ei] { pol } else { 1 - pol };
                seen[state_of(partner, rev_pol)] = true;
                r = next_state[r];
                if r == start {
                    break;
                }
            }
            walks.push(BoundaryWalk {
                steps,
                isolated_vertex: None,
            });
        }
        for v in &self.vertices {
            if v.halfedges.is_empty() {
                walks.push(BoundaryWalk {
                    steps: Vec::new(),
                    isolated_vertex: Some(v.id),
                });
            }
        }
        Ok(walks)
    }

    /// Connected components with Euler characteristic, boundary count, and
    /// genus of the thickened surface. Requires an oriented graph.
    pub fn surface_stats(&self) -> Result<Vec<ComponentStats>, TapeGraphError> {
        if !self.is_oriented() {
            return Err(TapeGraphError::NotOriented);
        }
        let idx = self.index()?;
        let n = self.vertices.len();
        let mut comp = UnionFind::new(n);
        for e in &self.edges {
            let (v0, _) = idx.he_vertex[&e[0]];
            let (v1, _) = idx.he_vertex[&e[1]];
            comp.union(v0, v1);
        }
        let walks = self.boundary_components()?;
        let vid_to_idx: BTreeMap<u64, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id, i))
            .collect();
        let mut per_root: BTreeMap<usize, (Vec<u64>, i64, usize)> = BTreeMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            let root = comp.find(vi);
            per_root
                .entry(root)
                .or_insert((Vec::new(), 0, 0))
                .0
                .push(v.id);
        }
        for e in &self.edges {
            let (v0, _) = idx.he_vertex[&e[0]];
            per_root.get_mut(&comp.find(v0)).unwrap().1 += 1;
        }
        for w in &walks {
            let vid = match (&w.isolated_vertex, w.steps.first()) {
                (Some(v), _) => *v,
                (None, Some(s)) => s.arrival_vertex,
                _ => continue,
            };
            per_root.get_mut(&comp.find(vid_to_idx[&vid])).unwrap().2 += 1;
        }
        let mut out = Vec::new();
        for (_, (vertex_ids, edge_count, boundary_count)) in per_root {
            let chi = vertex_ids.len() as i64 - edge_count;
            let two_g = 2 - chi - boundary_count as i64;
            if two_g < 0 || two_g % 2 != 0 {
                return Err(TapeGraphError::Inconsistent(format!(
                    "component with chi={chi}, b={boundary_count} gives 2g={two_g}"
                )));
            }
            out.push(ComponentStats {
                vertex_ids,
                euler_char: chi,
                boundary_count,
                genus: two_g / 2,
            });
        }
        Ok(out)
    }

    /// The spine criterion: oriented, and every boundary walk has a
    /// breakpoint.
    pub fn spine_check(&self) -> Result<SpineVerdict, TapeGraphError> {
        if !self.is_oriented() {
            return Ok(SpineVerdict::NotOriented);
        }
        for w in self.boundary_components()? {
            if !w.has_breakpoint() {
                return Ok(SpineVerdict::BreakpointFree(w));
            }
        }
        Ok(SpineVerdict::Spine)
    }

    /// All wedges, in vertex order then position order.
    pub fn wedges(&self) -> Result<Vec<WedgeInfo>, TapeGraphError> {
        self.validate()?;
        let mut out = Vec::new();
        for v in &self.vertices {
            let d = v.halfedges.len();
            for position in 0..=d {
                out.push(WedgeInfo {
                    wedge: WedgeIndex {
                        vertex: v.id,
                        position,
                    },
                    barrier: position == 0 || position == d,
                });
            }
        }
        Ok(out)
    }

    /// Canonical byte string: equal iff the graphs are isomorphic as tape
    /// graphs (preserving half-edge orders and flips).
    ///
    /// Per component, a breadth-first relabeling from each candidate root
    /// vertex is rigid because half-edge orders are total; the signature is
    /// the minimum encoding over roots, and components are sorted.
    pub fn canonical_signature(&self) -> Result<Vec<u8>, TapeGraphError> {
        let idx = self.index()?;
        let n = self.vertices.len();
        let mut comp = UnionFind::new(n);
        for e in &self.edges {
            comp.union(idx.he_vertex[&e[0]].0, idx.he_vertex[&e[1]].0);
        }
        let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for vi in 0..n {
            by_comp.entry(comp.find(vi)).or_default().push(vi);
        }
        let mut comp_sigs: Vec<Vec<u8>> = Vec::new();
        for (_, members) in by_comp {
            let mut best: Option<Vec<u8>> = None;
            for &root in &members {
                let enc = self.encode_from(root, &idx);
                if best.as_ref().is_none_or(|b| enc < *b) {
                    best = Some(enc);
                }
            }
            comp_sigs.push(best.unwrap());
        }
        comp_sigs.sort();
        let mut out = Vec::new();
        for (i, s) in comp_sigs.iter().enumerate() {
            if i > 0 {
                out.push(0xFF);
            }
            out.extend_from_slice(s);
        }
        Ok(out)
    }

    fn encode_from(&self, root: usize, idx: &GraphIndex) -> Vec<u8> {
        let n = self.vertices.len();
        let mut number = vec![usize::MAX; n];
        let mut order = Vec::new();
        number[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let vi = order[head];
            head += 1;
            for &h in &self.vertices[vi].halfedges {
                let (ei, end) = idx.he_edge[&h];
                let partner = self.edges[ei][1 - end];
                let (pvi, _) = idx.he_vertex[&partner];
                if number[pvi] == usize::MAX {
                    number[pvi] = order.len();
                    order.push(pvi);
                }
            }
        }
        let mut out = Vec::new();
        for &vi in &order {
            let v = &self.vertices[vi];
            push_u32(&mut out, v.halfedges.len() as u32);
            for &h in &v.halfedges {
                let (ei, end) = idx.he_edge[&h];
                let partner = self.edges[ei][1 - end];
                let (pvi, ppos) = idx.he_vertex[&partner];
                push_u32(&mut out, number[pvi] as u32);
                push_u32(&mut out, ppos as u32);
                out.push(u8::from(self.flips[ei]));
            }
        }
        out
    }

    /// Graphviz DOT with vertices as records of ordered ports.
    /// Breakpoint-free boundary components are listed in a comment block.
    pub fn to_dot(&self) -> Result<String, TapeGraphError> {
        let idx = self.index()?;
        let mut s = String::new();
        writeln!(s, "graph tape {{").unwrap();
        writeln!(s, "  node [shape=record];").unwrap();
        for v in &self.vertices {
            let ports: Vec<String> = v
                .halfedges
                .iter()
                .enumerate()
                .map(|(i, h)| format!("<p{i}> {h}"))
                .collect();
            writeln!(
                s,
                "  v{} [label=\"v{} | {}\"];",
                v.id,
                v.id,
                ports.join(" | ")
            )
            .unwrap();
        }
        for (ei, e) in self.edges.iter().enumerate() {
            let (v0, p0) = idx.he_vertex[&e[0]];
            let (v1, p1) = idx.he_vertex[&e[1]];
            let style = if self.flips[ei] {
                " [style=dashed]"
            } else {
                ""
            };
            writeln!(
                s,
                "  v{}:p{} -- v{}:p{}{};",
                self.vertices[v0].id, p0, self.vertices[v1].id, p1, style
            )
            .unwrap();
        }
        let mut flagged = Vec::new();
        for (wi, w) in self.boundary_components()?.iter().enumerate() {
            if !w.has_breakpoint() {
                let sides: Vec<String> = w
                    .steps
                    .iter()
                    .map(|st| format!("side({})", st.departed_half_edge))
                    .collect();
                flagged.push(format!("component {wi}: {}", sides.join(" -> ")));
            }
        }
        if !flagged.is_empty() {
            writeln!(s, "  /* breakpoint-free boundary components:").unwrap();
            for f in &flagged {
                writeln!(s, "   * {f}").unwrap();
            }
            writeln!(s, "   */").unwrap();
        }
        writeln!(s, "}}").unwrap();
        Ok(s)
    }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

#[derive(Serialize, Deserialize)]
struct TapeGraphRepr {
    vertices: Vec<VertexData>,
    edges: Vec<[u64; 2]>,
    flips: Vec<bool>,
}

impl Serialize for TapeGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TapeGraphRepr {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            flips: self.flips.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TapeGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = TapeGraphRepr::deserialize(deserializer)?;
        Ok(TapeGraph::new(r.vertices, r.edges, r.flips))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
