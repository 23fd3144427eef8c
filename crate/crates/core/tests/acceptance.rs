//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use tsqft_core::basis::Gf2Vector;
use tsqft_core::corpus::{random_arc, random_surface, random_sutures};
use tsqft_core::fixtures;
use tsqft_core::group_ring::{GroupRingElement, HomologyLattice, RingMap};
use tsqft_core::heegaard::{is_direct_summand_injection, sfh, Admissibility, HeegaardDiagram};
use tsqft_core::rng::SplitMix64;
use tsqft_core::surface::QuadSurface;
use tsqft_core::suture::{self, BypassDirection, ReductionStrategy, SutureSystem};
use tsqft_core::tape_graph::{SpineVerdict, TapeGraph, VertexData};

const MEMO: usize = 1 << 20;

fn element(qs: &QuadSurface, sys: &SutureSystem) -> Gf2Vector {
    suture::suture_element_mod2(qs, sys, ReductionStrategy::Deterministic, MEMO).unwrap()
}

fn corpus_surfaces() -> Vec<QuadSurface> {
    let mut out: Vec<QuadSurface> = fixtures::fixture_names()
        .iter()
        .map(|n| fixtures::fixture(n).unwrap().surface)
        .collect();
    let mut rng = SplitMix64::new(0xACCE97);
    for _ in 0..20 {
        out.push(random_surface(&mut rng, 5));
    }
    out
}

#[test]
fn criterion_01_index_formula() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(101);
    for i in 0..220 {
        let qs = random_surface(&mut rng, 6);
        let st = qs.stats().unwrap();
        assert_eq!(
            st.index,
            st.vertex_pairs - st.euler_char,
            "surface {i}: I != N - chi"
        );
        assert_eq!(st.index as usize, qs.square_count());
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "took {dt:?}");
    println!("acceptance 01 PASS: index I = N - chi on 220 random surfaces ({dt:?})");
}

#[test]
fn criterion_02_spine_round_trips() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(202);
    for i in 0..220 {
        let qs = random_surface(&mut rng, 5);
        let (spine, _) = qs.spine(true).unwrap();
        let rebuilt = QuadSurface::reconstruct(&spine).unwrap();
        let (spine2, _) = rebuilt.spine(true).unwrap();
        assert_eq!(
            spine.canonical_signature().unwrap(),
            spine2.canonical_signature().unwrap(),
            "graph {i}: spine of reconstruction differs"
        );
    }
    for name in ["square", "disc6", "annulus", "punctured-torus"] {
        let f = fixtures::fixture(name).unwrap();
        let st = f.surface.stats().unwrap();
        let (spine, _) = f.surface.spine(true).unwrap();
        let rebuilt = QuadSurface::reconstruct(&spine).unwrap();
        let st2 = rebuilt.stats().unwrap();
        assert_eq!(
            (
                st.euler_char,
                st.vertex_pairs,
                st.index,
                st.boundary_components
            ),
            (
                st2.euler_char,
                st2.vertex_pairs,
                st2.index,
                st2.boundary_components
            ),
            "{name}: statistics not preserved"
        );
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "took {dt:?}");
    println!(
        "acceptance 02 PASS: spine round trips on 220 random spines and the fixtures ({dt:?})"
    );
}

#[test]
fn criterion_03_non_spine_rejection() {
    let graph = TapeGraph::oriented(
        vec![
            VertexData {
                id: 0,
                halfedges: vec![10, 20],
            },
            VertexData {
                id: 1,
                halfedges: vec![21, 11],
            },
        ],
        vec![[10, 11], [20, 21]],
    );
    match graph.spine_check().unwrap() {
        SpineVerdict::BreakpointFree(walk) => {
            assert_eq!(walk.breakpoint_count(), 0);
            assert!(!walk.is_empty());
        }
        other => panic!("expected a breakpoint-free witness, got {other:?}"),
    }
    assert!(QuadSurface::reconstruct(&graph).is_err());
    println!("acceptance 03 PASS: two-vertex two-edge tape graph rejected with witness");
}

#[test]
fn criterion_04_heegaard_stats() {
    for qs in corpus_surfaces() {
        let st = qs.stats().unwrap();
        let d = HeegaardDiagram::synth(&qs).unwrap();
        let hs = d.stats().unwrap();
        assert_eq!(hs.genus, 1 - st.euler_char);
        assert_eq!(hs.boundary_components, 2 * st.vertex_pairs);
        assert_eq!(hs.euler_char, -2 * st.index);
        for i in 0..d.curve_count() {
            for j in 0..d.curve_count() {
                let want = if i == j { 2 } else { 0 };
                assert_eq!(d.alpha_beta_intersections(i, j), want);
            }
        }
    }
    println!(
        "acceptance 04 PASS: genus(S) = 1 - chi, 2N boundary circles, |a_i . b_j| = 2 delta_ij"
    );
}

#[test]
fn criterion_05_periodic_domains() {
    let start = Instant::now();
    for qs in corpus_surfaces() {
        let d = HeegaardDiagram::synth(&qs).unwrap();
        let basis = d.periodic_basis().unwrap();
        assert_eq!(basis.len(), qs.stats().unwrap().h1_rank);
        for dom in &basis {
            assert!(d.is_periodic(dom));
        }
    }
    let pt = fixtures::punctured_torus().surface;
    let d = HeegaardDiagram::synth(&pt).unwrap();
    match d.is_admissible_raw().unwrap() {
        Admissibility::Inadmissible(w) => {
            assert!(!w.is_zero());
            assert!(w.is_one_signed());
            assert!(d.is_periodic(&w));
        }
        Admissibility::Admissible => panic!("punctured torus must be inadmissible"),
    }
    for dom in d.periodic_basis().unwrap() {
        assert!(
            dom.is_one_signed(),
            "every loop has all vertices on one side"
        );
    }
    let d6 = HeegaardDiagram::synth(&fixtures::disc6().surface).unwrap();
    assert!(d6.is_admissible_raw().unwrap().is_admissible());
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "took {dt:?}");
    println!("acceptance 05 PASS: domain bases match h1, punctured torus inadmissible with one-signed witness, disc6 admissible ({dt:?})");
}

#[test]
fn criterion_06_admissibility_after_isotopy() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(606);
    for i in 0..110 {
        let qs = random_surface(&mut rng, 6);
        let d = HeegaardDiagram::synth(&qs).unwrap();
        d.check_disjoint_wedge()
            .unwrap_or_else(|e| panic!("surface {i}: {e}"));
        let cert = d.admissibility_certificate().unwrap();
        assert_eq!(cert.sides.len(), 2 * d.curve_count(), "surface {i}");
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "took {dt:?}");
    println!("acceptance 06 PASS: disjoint-wedge and certificates on 110 random spines ({dt:?})");
}

#[test]
fn criterion_07_sfh_computation() {
    for qs in corpus_surfaces() {
        let result = sfh(&qs).unwrap();
        let index = qs.stats().unwrap().index as u64;
        assert_eq!(result.module.rank(), 1u64 << index);
        let mut total = 0;
        for e in -(index as i64)..=(index as i64) {
            let r = result.module.graded_rank(e);
            if (e - index as i64) % 2 != 0 || e.abs() > index as i64 {
                assert_eq!(r, 0);
            } else {
                let k = ((index as i64 + e) / 2) as u64;
                assert_eq!(r, tsqft_core::algebra::binomial(index, k));
            }
            total += r;
        }
        assert_eq!(total, result.module.rank());
        let (terminal_spine, _) = result.terminal_surface.spine(true).unwrap();
        assert!(terminal_spine
            .vertices()
            .iter()
            .all(|v| v.halfedges.len() <= 1));
        for step in &result.trace {
            assert!(is_direct_summand_injection(
                step.iota.matrix(),
                step.iota.source().rank()
            ));
        }
    }
    let d6 = sfh(&fixtures::disc6().surface).unwrap();
    assert_eq!(d6.module.rank(), 4);
    assert_eq!(d6.module.graded_rank(0), 2);
    println!("acceptance 07 PASS: sfh rank 2^I with binomial graded ranks; disc6 rank 4 with 0-graded rank 2; traces terminate with direct-summand injections");
}

#[test]
fn criterion_08_mod2_suture_elements() {
    let start = Instant::now();
    let d6 = fixtures::disc6();
    assert_eq!(
        element(&d6.surface, &d6.sutures["gamma-mp"]).to_string(),
        "|01>"
    );
    assert_eq!(
        element(&d6.surface, &d6.sutures["gamma-pm"]).to_string(),
        "|10>"
    );
    assert_eq!(
        element(&d6.surface, &d6.sutures["gamma-mixed"]).to_string(),
        "|01> + |10>"
    );
    // bypass triples sum to zero
    let mut rng = SplitMix64::new(808);
    let mut triples = 0;
    while triples < 110 {
        let qs = random_surface(&mut rng, 3);
        let sys = random_sutures(&mut rng, &qs, 1, false);
        let Some(arc) = random_arc(&mut rng, &qs, &sys) else {
            continue;
        };
        let up = suture::bypass(&qs, &sys, &arc, BypassDirection::Up).unwrap();
        let down = suture::bypass(&qs, &sys, &arc, BypassDirection::Down).unwrap();
        let sum = element(&qs, &sys)
            .add(&element(&qs, &up))
            .add(&element(&qs, &down));
        assert!(sum.is_zero(), "triple sum nonzero");
        triples += 1;
    }
    // reduction-order independence across 5 randomized strategies
    for i in 0..20 {
        let qs = random_surface(&mut rng, 3);
        let sys = random_sutures(&mut rng, &qs, 1, false);
        let det = element(&qs, &sys);
        for seed in 0..5 {
            let rnd = suture::suture_element_mod2(&qs, &sys, ReductionStrategy::Seeded(seed), MEMO)
                .unwrap();
            assert_eq!(det, rnd, "system {i} seed {seed}");
        }
    }
    // trivial and confining systems map to zero
    let vac = fixtures::vacuum();
    for name in ["gamma-loop-plus", "gamma-loop-minus"] {
        let sys = &vac.sutures[name];
        assert!(suture::is_trivial(&vac.surface, sys).unwrap());
        assert!(suture::is_confining(&vac.surface, sys).unwrap());
        assert!(element(&vac.surface, sys).is_zero());
    }
    let mut zeros = 0;
    for _ in 0..200 {
        let qs = random_surface(&mut rng, 3);
        let sys = random_sutures(&mut rng, &qs, 1, true);
        if suture::is_trivial(&qs, &sys).unwrap() || suture::is_confining(&qs, &sys).unwrap() {
            assert!(element(&qs, &sys).is_zero());
            zeros += 1;
        }
    }
    assert!(zeros > 0, "corpus produced no trivial or confining systems");
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "took {dt:?}");
    println!("acceptance 08 PASS: disc6 elements |01>, |10>, |01>+|10>; 110 triples sum to zero; 5-strategy independence; {zeros} trivial/confining systems map to 0 ({dt:?})");
}

#[test]
fn criterion_09_euler_class_suite() {
    let sq = fixtures::square();
    assert_eq!(
        suture::euler_class(&sq.surface, &sq.sutures["gamma-plus"]).unwrap(),
        1
    );
    assert_eq!(
        suture::euler_class(&sq.surface, &sq.sutures["gamma-minus"]).unwrap(),
        -1
    );
    let vac = fixtures::vacuum();
    assert_eq!(
        suture::euler_class(&vac.surface, &vac.sutures["gamma-empty"]).unwrap(),
        0
    );
    assert_eq!(
        suture::euler_class(&vac.surface, &vac.sutures["gamma-loop-plus"]).unwrap(),
        2
    );
    assert_eq!(
        suture::euler_class(&vac.surface, &vac.sutures["gamma-loop-minus"]).unwrap(),
        -2
    );
    // bypass preserves euler class
    let mut rng = SplitMix64::new(909);
    let mut surgeries = 0;
    while surgeries < 110 {
        let qs = random_surface(&mut rng, 4);
        let sys = random_sutures(&mut rng, &qs, 2, true);
        let Some(arc) = random_arc(&mut rng, &qs, &sys) else {
            continue;
        };
        let e0 = suture::euler_class(&qs, &sys).unwrap();
        for dir in [BypassDirection::Up, BypassDirection::Down] {
            let out = suture::bypass(&qs, &sys, &arc, dir).unwrap();
            assert_eq!(suture::euler_class(&qs, &out).unwrap(), e0);
            surgeries += 1;
        }
    }
    // bounds and parity for nontrivial systems
    let mut checked = 0;
    for _ in 0..150 {
        let qs = random_surface(&mut rng, 4);
        let sys = random_sutures(&mut rng, &qs, 2, false);
        if suture::is_trivial(&qs, &sys).unwrap() {
            continue;
        }
        let e = suture::euler_class(&qs, &sys).unwrap();
        let index = qs.stats().unwrap().index;
        assert!(e.abs() <= index);
        assert_eq!(e.rem_euclid(2), index.rem_euclid(2));
        checked += 1;
    }
    assert!(checked >= 100);
    println!("acceptance 09 PASS: e(basic) = +-1, e(vacuum) = 0, e(loop) = +-2; {surgeries} surgeries preserve e; |e| <= I and parity on {checked} systems");
}

#[test]
fn criterion_10_group_ring_suite() {
    let start = Instant::now();
    let lattice = HomologyLattice::new(vec!["q1", "q2", "q3"]).unwrap();
    let mut rng = SplitMix64::new(1010);
    let random_elem = |rng: &mut SplitMix64| -> GroupRingElement {
        let terms = rng.below(4);
        let mut out = GroupRingElement::zero(&lattice);
        for _ in 0..terms {
            let exp = vec![rng.int_in(-2, 2), rng.int_in(-2, 2), rng.int_in(-2, 2)];
            let coef = rng.int_in(-3, 3);
            out = out
                .add(&GroupRingElement::monomial(&lattice, exp, coef))
                .unwrap();
        }
        out
    };
    let target = HomologyLattice::new(vec!["t1", "t2"]).unwrap();
    let further = HomologyLattice::new(vec!["u1"]).unwrap();
    let mut cases = 0;
    for _ in 0..350 {
        let a = random_elem(&mut rng);
        let b = random_elem(&mut rng);
        let c = random_elem(&mut rng);
        // ring axioms
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc, "associativity");
        let distr = a.mul(&b.add(&c).unwrap()).unwrap();
        let spread = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(distr, spread, "distributivity");
        let one = GroupRingElement::one(&lattice);
        assert_eq!(a.mul(&one).unwrap(), a, "unit");
        cases += 3;
        // unit detection: a unit iff an explicit +-monomial inverse exists
        if a.is_unit() {
            let inv = a.unit_inverse().unwrap();
            assert_eq!(a.mul(&inv).unwrap(), one);
            assert_eq!(a.term_count(), 1);
        } else {
            assert!(a.unit_inverse().is_none());
        }
        // mod-2 reduction is a ring map sending units to 1
        assert_eq!(
            a.mul(&b).unwrap().reduce_mod2(),
            a.reduce_mod2() * b.reduce_mod2()
        );
        assert_eq!(
            a.add(&b).unwrap().reduce_mod2(),
            (a.reduce_mod2() + b.reduce_mod2()) % 2
        );
        if a.is_unit() {
            assert_eq!(a.reduce_mod2(), 1);
        }
        cases += 3;
        // pushforward functorial on composed matrices
        let m1: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..3).map(|_| rng.int_in(-1, 1)).collect())
            .collect();
        let m2: Vec<Vec<i64>> = (0..1)
            .map(|_| (0..2).map(|_| rng.int_in(-1, 1)).collect())
            .collect();
        let f = RingMap::new(lattice.clone(), target.clone(), m1).unwrap();
        let g = RingMap::new(target.clone(), further.clone(), m2).unwrap();
        let gf = g.compose(&f).unwrap();
        assert_eq!(
            gf.apply(&a).unwrap(),
            g.apply(&f.apply(&a).unwrap()).unwrap(),
            "functoriality"
        );
        // pushforward is a ring homomorphism and preserves units
        assert_eq!(
            f.apply(&a.mul(&b).unwrap()).unwrap(),
            f.apply(&a).unwrap().mul(&f.apply(&b).unwrap()).unwrap()
        );
        if a.is_unit() {
            assert!(f.apply(&a).unwrap().is_unit());
        }
        cases += 3;
        // unit-orbit equality is an equivalence relation
        assert!(a.unit_orbit_eq(&a).unwrap());
        let u = GroupRingElement::monomial(&lattice, vec![1, 0, -1], -1);
        let ua = a.mul(&u).unwrap();
        assert!(ua.unit_orbit_eq(&a).unwrap());
        assert!(a.unit_orbit_eq(&ua).unwrap());
        cases += 3;
    }
    assert!(cases >= 1000, "only {cases} checks");
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "took {dt:?}");
    println!("acceptance 10 PASS: ring axioms, unit structure, mod-2 reduction, pushforward functoriality over {cases} checks ({dt:?})");
}
