//! Built-in example surfaces and suture systems.
//!
//! The corpus covers the standard small cases: the square, the vacuum, the
//! disc with six vertices, the annulus, and the once-punctured torus with
//! one vertex pair (whose block-assembled Heegaard diagram is inadmissible
//! before the finger-move isotopy).

use crate::surface::{QuadSurface, Slot};
use crate::suture::{LoopNode, SquareSutures, SutureSystem, VacuumLoopSide, VacuumSutures};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub surface: QuadSurface,
    pub sutures: BTreeMap<&'static str, SutureSystem>,
}

pub fn fixture_names() -> Vec<&'static str> {
    vec!["square", "vacuum", "disc6", "annulus", "punctured-torus"]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    match name {
        "square" => Some(square()),
        "vacuum" => Some(vacuum()),
        "disc6" => Some(disc6()),
        "annulus" => Some(annulus()),
        "punctured-torus" => Some(punctured_torus()),
        _ => None,
    }
}

/// A single occupied square.
pub fn square() -> Fixture {
    let surface = QuadSurface::disjoint_squares(1);
    let mut sutures = BTreeMap::new();
    sutures.insert(
        "gamma-plus",
        crate::suture::basic(&surface, &[true]).unwrap(),
    );
    sutures.insert(
        "gamma-minus",
        crate::suture::basic(&surface, &[false]).unwrap(),
    );
    Fixture {
        name: "square",
        surface,
        sutures,
    }
}

/// The vacuum: a disc with one vertex pair and no squares.
pub fn vacuum() -> Fixture {
    let surface = QuadSurface::vacuum();
    let mut sutures = BTreeMap::new();
    sutures.insert("gamma-empty", crate::suture::vacuum_sutures(&surface));
    // one closed loop on the negative side enclosing a positive region
    sutures.insert(
        "gamma-loop-plus",
        SutureSystem::new(
            vec![],
            vec![VacuumSutures {
                loops: vec![(VacuumLoopSide::Minus, LoopNode::leaf())],
            }],
        ),
    );
    // mirror image: loop on the positive side enclosing a negative region
    sutures.insert(
        "gamma-loop-minus",
        SutureSystem::new(
            vec![],
            vec![VacuumSutures {
                loops: vec![(VacuumLoopSide::Plus, LoopNode::leaf())],
            }],
        ),
    );
    Fixture {
        name: "vacuum",
        surface,
        sutures,
    }
}

/// The disc with six vertices: two squares glued along one side.
///
/// Square 0 is glued along its side 3 to side 2 of square 1; the shared
/// side is the single internal edge.
pub fn disc6() -> Fixture {
    let surface = QuadSurface::new(2, &[(Slot::new(0, 3), Slot::new(1, 2))], 0).unwrap();
    let mut sutures = BTreeMap::new();
    sutures.insert(
        "gamma-mp",
        crate::suture::basic(&surface, &[false, true]).unwrap(),
    );
    sutures.insert(
        "gamma-pm",
        crate::suture::basic(&surface, &[true, false]).unwrap(),
    );
    sutures.insert(
        "gamma-pp",
        crate::suture::basic(&surface, &[true, true]).unwrap(),
    );
    sutures.insert(
        "gamma-mm",
        crate::suture::basic(&surface, &[false, false]).unwrap(),
    );
    // The mixed system crossing the internal edge three times; bypass
    // surgery on it along the internal edge produces gamma-pm (up) and
    // gamma-mp (down).
    sutures.insert("gamma-mixed", disc6_mixed());
    Fixture {
        name: "disc6",
        surface,
        sutures,
    }
}

/// The three-crossing suture system on the disc with six vertices.
pub fn disc6_mixed() -> SutureSystem {
    SutureSystem::new(
        vec![
            SquareSutures {
                crossings: [1, 1, 1, 3],
                matching: vec![((0, 0), (3, 2)), ((1, 0), (3, 1)), ((2, 0), (3, 0))],
                loops: vec![],
            },
            SquareSutures {
                crossings: [1, 1, 3, 1],
                matching: vec![((0, 0), (2, 1)), ((1, 0), (2, 0)), ((3, 0), (2, 2))],
                loops: vec![],
            },
        ],
        vec![],
    )
}

/// The annulus with one vertex pair on each boundary circle, as two squares
/// glued along two internal edges.
pub fn annulus() -> Fixture {
    let surface = QuadSurface::new(
        2,
        &[
            (Slot::new(0, 0), Slot::new(1, 3)),
            (Slot::new(0, 2), Slot::new(1, 1)),
        ],
        0,
    )
    .unwrap();
    let mut sutures = BTreeMap::new();
    sutures.insert(
        "gamma-pp",
        crate::suture::basic(&surface, &[true, true]).unwrap(),
    );
    sutures.insert(
        "gamma-mp",
        crate::suture::basic(&surface, &[false, true]).unwrap(),
    );
    // A core circle together with a strand joining the two boundary
    // circles: the strand crosses internal edge 0 once; the core crosses
    // both once, so edge 0 carries three crossings and edge 1 one.
    sutures.insert(
        "core-and-strand",
        SutureSystem::new(
            vec![
                SquareSutures {
                    crossings: [3, 1, 1, 1],
                    matching: vec![((0, 2), (1, 0)), ((0, 1), (2, 0)), ((0, 0), (3, 0))],
                    loops: vec![],
                },
                SquareSutures {
                    crossings: [1, 1, 1, 3],
                    matching: vec![((3, 0), (2, 0)), ((3, 1), (1, 0)), ((3, 2), (0, 0))],
                    loops: vec![],
                },
            ],
            vec![],
        ),
    );
    Fixture {
        name: "annulus",
        surface,
        sutures,
    }
}

/// The once-punctured torus with one vertex pair, quadrangulated by two
/// squares; its positive spine is two interleaved loops at one vertex.
pub fn punctured_torus() -> Fixture {
    let surface = QuadSurface::new(
        2,
        &[
            (Slot::new(0, 1), Slot::new(1, 2)),
            (Slot::new(0, 3), Slot::new(1, 0)),
            (Slot::new(0, 0), Slot::new(1, 1)),
        ],
        0,
    )
    .unwrap();
    let mut sutures = BTreeMap::new();
    sutures.insert(
        "gamma-pp",
        crate::suture::basic(&surface, &[true, true]).unwrap(),
    );
    sutures.insert(
        "gamma-mp",
        crate::suture::basic(&surface, &[false, true]).unwrap(),
    );
    Fixture {
        name: "punctured-torus",
        surface,
        sutures,
    }
}
