//! Randomized corpora of surfaces and suture systems for property tests
//! and seeded CLI commands.

use crate::rng::SplitMix64;
use crate::surface::{QuadSurface, Slot};
use crate::suture::{AttachingArc, LoopNode, SquareSutures, SutureSystem, VacuumSutures};

/// A random valid quadrangulated surface: disjoint squares (and possibly
/// vacua) joined by random standard gluings.
pub fn random_surface(rng: &mut SplitMix64, max_squares: usize) -> QuadSurface {
    let squares = 1 + rng.below(max_squares);
    let vacua = if rng.chance(1, 5) { 1 } else { 0 };
    let mut qs = QuadSurface::new(squares, &[], vacua).expect("no gluings");
    let attempts = rng.below(3 * squares + 1);
    for _ in 0..attempts {
        let boundary = qs.boundary_slots();
        if boundary.len() < 2 {
            break;
        }
        let a = boundary[rng.below(boundary.len())];
        let b = boundary[rng.below(boundary.len())];
        if let Ok(next) = qs.standard_glue(a, b) {
            qs = next;
        }
    }
    debug_assert!(qs.validate().is_ok());
    qs
}

/// A random spine: the positive spine of a random surface.
pub fn random_spine(rng: &mut SplitMix64, max_squares: usize) -> crate::tape_graph::TapeGraph {
    let qs = random_surface(rng, max_squares);
    qs.spine(true).expect("random surfaces are valid").0
}

/// A uniform non-crossing perfect matching on `n` cyclic points (`n` even).
fn random_noncrossing_matching(rng: &mut SplitMix64, n: usize) -> Vec<(usize, usize)> {
    fn fill(rng: &mut SplitMix64, points: &[usize], out: &mut Vec<(usize, usize)>) {
        if points.is_empty() {
            return;
        }
        // match points[0] across an odd gap so both sides stay even
        let k = points.len();
        let choices = k / 2;
        let pick = 1 + 2 * rng.below(choices);
        out.push((points[0], points[pick]));
        let inside: Vec<usize> = points[1..pick].to_vec();
        let outside: Vec<usize> = points[pick + 1..].to_vec();
        fill(rng, &inside, out);
        fill(rng, &outside, out);
    }
    let pts: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    fill(rng, &pts, &mut out);
    out
}

/// A random valid suture system on the surface: odd crossing counts on
/// internal edges, single crossings on boundary edges, random non-crossing
/// matchings, and occasional loops.
pub fn random_sutures(
    rng: &mut SplitMix64,
    qs: &QuadSurface,
    max_extra: usize,
    with_loops: bool,
) -> SutureSystem {
    let mut counts: Vec<[usize; 4]> = vec![[1; 4]; qs.square_count()];
    for (a, b) in qs.gluing_pairs() {
        let c = 1 + 2 * rng.below(max_extra + 1);
        counts[a.square][a.side] = c;
        counts[b.square][b.side] = c;
    }
    let mut squares = Vec::new();
    for c in counts.iter() {
        let layout_offsets = {
            let mut offs = [0usize; 4];
            let mut acc = 0;
            for (i, n) in c.iter().enumerate() {
                offs[i] = acc;
                acc += n;
            }
            (offs, acc)
        };
        let (offs, total) = layout_offsets;
        let side_of = |g: usize| -> (usize, usize) {
            for s in (0..4).rev() {
                if g >= offs[s] {
                    return (s, g - offs[s]);
                }
            }
            unreachable!()
        };
        let matching = random_noncrossing_matching(rng, total)
            .into_iter()
            .map(|(a, b)| (side_of(a), side_of(b)))
            .collect();
        let mut loops = Vec::new();
        if with_loops && rng.chance(1, 6) {
            let mut node = LoopNode::leaf();
            if rng.chance(1, 3) {
                node.children.push(LoopNode::leaf());
            }
            loops.push((rng.below(total), node));
        }
        squares.push(SquareSutures {
            crossings: *c,
            matching,
            loops,
        });
    }
    let vacua = vec![VacuumSutures::default(); qs.vacuum_count()];
    SutureSystem::new(squares, vacua)
}

/// A random attaching arc on an internal edge with at least 3 crossings.
pub fn random_arc(
    rng: &mut SplitMix64,
    qs: &QuadSurface,
    system: &SutureSystem,
) -> Option<AttachingArc> {
    let eligible: Vec<(Slot, usize)> = qs
        .gluing_pairs()
        .into_iter()
        .map(|(a, _)| (a, system.squares[a.square].crossings[a.side]))
        .filter(|(_, c)| *c >= 3)
        .collect();
    if eligible.is_empty() {
        return None;
    }
    let (slot, count) = eligible[rng.below(eligible.len())];
    Some(AttachingArc {
        slot,
        middle: 1 + rng.below(count - 2),
    })
}
