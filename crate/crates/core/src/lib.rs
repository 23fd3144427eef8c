//! Combinatorial engine for quadrangulated occupied surfaces: tape-graph
//! spines, suture calculus with mod-2 suture elements, group-ring
//! coefficients, and symbolic Heegaard diagrams with periodic-domain and
//! admissibility analysis.

pub mod algebra;
pub mod basis;
pub mod corpus;
pub mod feasibility;
pub mod fixtures;
pub mod group_ring;
pub mod heegaard;
pub mod rng;
pub mod surface;
pub mod suture;
pub mod tape_graph;
