mod common;

use std::sync::Arc;

use common::{binomial, module_dim, qq};
use hhadic::torcomp::{complete, gm_duality_check, gm_duality_sides, local_cohomology, route_agreement, torsion_submodule};
use hhadic::{CompletedModule, FPModule, Ideal, PrecisionLevel, Ring, RingMap};

fn ideal(r: &Arc<Ring>, g: &[&str]) -> Ideal {
    Ideal::from_strs(r, g).unwrap()
}

fn cyclic(r: &Arc<Ring>, g: &[&str]) -> FPModule {
    let gens: Vec<_> = g.iter().map(|s| r.parse(s).unwrap()).collect();
    FPModule::cyclic(r, &gens).unwrap()
}

/// Count of monomials `x^{-a} y^{-b}` with `a, b >= 1` of degree `-d`.
fn inverse_monomials(nvars: usize, d: i64) -> usize {
    if d < nvars as i64 {
        return 0;
    }
    binomial((d - 1) as usize, nvars - 1)
}

#[test]
fn torsion_examples() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let m = cyclic(&r, &["x^2"]);
    let t = torsion_submodule(&m, &a).unwrap();
    assert_eq!(t.j, 2);
    assert_eq!(t.module.hilbert(-1, 4).unwrap(), m.hilbert(-1, 4).unwrap());
    assert!(torsion_submodule(&FPModule::ring_module(&r), &a).unwrap().module.is_zero());

    let r2 = qq(&["x", "y"]);
    let t = torsion_submodule(&cyclic(&r2, &["x^2*y"]), &ideal(&r2, &["x"])).unwrap();
    assert_eq!(t.j, 2);
    assert_eq!(t.generators, vec![vec![r2.var(1)]]);
    // (y)/(x^2 y) is A/(x^2) generated in degree 1.
    let oracle = cyclic(&r2, &["x^2"]).shift(-1);
    for d in -1..=10 {
        assert_eq!(t.module.graded_dim(d).unwrap(), module_dim(&oracle, d), "degree {d}");
    }
}

#[test]
fn torsion_is_idempotent_and_vanishes_on_domains() {
    let r = qq(&["x", "y"]);
    let a = ideal(&r, &["x", "y"]);
    let m = FPModule::from_strs(&r, vec![0, 0], &[&["x^2", "0"], &["x*y", "y^2"], &["0", "x^3"]]).unwrap();
    let t1 = torsion_submodule(&m, &a).unwrap().module;
    let t2 = torsion_submodule(&t1, &a).unwrap().module;
    assert_eq!(t1.hilbert(-2, 8).unwrap(), t2.hilbert(-2, 8).unwrap());
    for g in [&["x"][..], &["x", "y"], &["x+y"]] {
        assert!(torsion_submodule(&FPModule::ring_module(&r), &ideal(&r, g)).unwrap().module.is_zero());
    }
}

#[test]
fn completion_examples() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let c = complete(&FPModule::ring_module(&r), &a, 4).unwrap();
    assert_eq!(c.hilbert(0, 4).unwrap(), vec![1, 1, 1, 1, 0]);
    let m = cyclic(&r, &["x^2"]).direct_sum(&FPModule::ring_module(&r)).unwrap();
    assert_eq!(complete(&m, &a, 5).unwrap().hilbert(0, 5).unwrap(), vec![2, 2, 1, 1, 1, 0]);
    assert!(PrecisionLevel::new(17).is_err());
    let cm = CompletedModule::new(m.clone(), a.clone()).unwrap();
    assert_eq!(cm.truncation(PrecisionLevel::new(5).unwrap()).unwrap().hilbert(0, 5).unwrap(), vec![2, 2, 1, 1, 1, 0]);
}

/// `0 -> (x) -> A -> A/(x) -> 0` with `(x) = A(-1)`: additive wherever `a^N` has not reached.
#[test]
fn completion_of_the_line_sequence_is_additive() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let sub = FPModule::free(&r, vec![1]);
    let mid = FPModule::ring_module(&r);
    let quo = cyclic(&r, &["x"]);
    for n in 1..=8 {
        let (cs, cm, cq) = (complete(&sub, &a, n).unwrap(), complete(&mid, &a, n).unwrap(), complete(&quo, &a, n).unwrap());
        for d in 0..n as i64 {
            assert_eq!(cs.graded_dim(d).unwrap() + cq.graded_dim(d).unwrap(), cm.graded_dim(d).unwrap(), "N = {n}, d = {d}");
        }
    }
}

#[test]
fn completion_is_idempotent_and_matches_base_change() {
    let r = qq(&["x", "y"]);
    let a = ideal(&r, &["x", "y^2"]);
    let m = FPModule::from_strs(&r, vec![0, 1], &[&["y^2", "x"], &["0", "x*y"]]).unwrap();
    for n in 1..=4u32 {
        let once = complete(&m, &a, n).unwrap();
        let twice = complete(&once, &a, n).unwrap();
        assert_eq!(once.hilbert(-1, 12).unwrap(), twice.hilbert(-1, 12).unwrap());
        // Base change of the presentation to A/a^n.
        let gens: Vec<_> = a.power(n).unwrap().nonzero_generators();
        let q = r.quotient(&gens).unwrap();
        let phi = RingMap::from_strs(&r, &q, &["x", "y"]).unwrap();
        let bc = m.change_ring(&phi).unwrap();
        assert_eq!(once.hilbert(-1, 12).unwrap(), bc.hilbert(-1, 12).unwrap(), "N = {n}");
        // Compatible with the canonical surjection to the next-lower precision.
        if n > 1 {
            let lower = complete(&once, &a, n - 1).unwrap();
            assert_eq!(lower.hilbert(-1, 12).unwrap(), complete(&m, &a, n - 1).unwrap().hilbert(-1, 12).unwrap());
        }
    }
}

#[test]
fn local_cohomology_of_the_line() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let am = FPModule::ring_module(&r);
    let h1 = local_cohomology(&am, &a, 1, (-10, 10), 12).unwrap();
    assert!(h1.all_stable());
    for d in -10..=10 {
        assert_eq!(h1.dim(d), Some(inverse_monomials(1, -d)), "degree {d}");
    }
    let h0 = local_cohomology(&am, &a, 0, (-10, 10), 12).unwrap();
    assert!(h0.all_stable() && h0.dims.iter().all(|&v| v == 0));
}

#[test]
fn local_cohomology_of_the_plane() {
    let r = qq(&["x", "y"]);
    let a = ideal(&r, &["x", "y"]);
    let am = FPModule::ring_module(&r);
    let h2 = local_cohomology(&am, &a, 2, (-10, 10), 12).unwrap();
    assert!(h2.all_stable());
    for d in -10..=10 {
        assert_eq!(h2.dim(d), Some(inverse_monomials(2, -d)), "degree {d}");
    }
    for i in [0, 1, 3] {
        let h = local_cohomology(&am, &a, i, (-10, 10), 12).unwrap();
        assert!(h.all_stable() && h.dims.iter().all(|&v| v == 0), "H^{i}");
    }
}

#[test]
fn local_cohomology_flags_short_towers() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let h1 = local_cohomology(&FPModule::ring_module(&r), &a, 1, (-10, 0), 4).unwrap();
    assert!(!h1.all_stable());
    assert!(h1.unstable_degrees().contains(&-10));
    assert!(local_cohomology(&FPModule::ring_module(&r), &a, 1, (-1, 0), 13).is_err());
    // Over a finite-length module the tower dies out, but only later stages can show it.
    let t = cyclic(&r, &["x^2"]);
    let h1 = local_cohomology(&t, &a, 1, (-10, 10), 4).unwrap();
    // Classes of stages 2..4 die one step later, and below that stage 4 has not arrived yet.
    assert_eq!(h1.unstable_degrees(), (-10..=-1).collect::<Vec<_>>());
    for d in 0..=10 {
        assert_eq!(h1.dim(d), Some(0));
    }
    let h0 = local_cohomology(&t, &a, 0, (-10, 10), 4).unwrap();
    assert!(h0.all_stable());
    assert_eq!(h0.dims.iter().sum::<usize>(), 2);
}

#[test]
fn duality_refuses_short_stages() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let k = cyclic(&r, &["x"]);
    let rep = gm_duality_check(&k, &FPModule::ring_module(&r), &a, 1, (-6, 6), Some(3)).unwrap();
    assert_eq!(rep.verdict, hhadic::Verdict::Inconclusive);
}

#[test]
fn route_agreement_examples() {
    let r = qq(&["x", "y"]);
    let a = ideal(&r, &["x", "y"]);
    let mods = [
        FPModule::ring_module(&r),
        cyclic(&r, &["x^2", "x*y"]),
        FPModule::from_strs(&r, vec![0, 1], &[&["y", "0"], &["x^2", "y"]]).unwrap(),
    ];
    for m in &mods {
        for c in route_agreement(m, &a, 3, (-2, 6)).unwrap() {
            assert!(c.agrees(), "{c:?}");
        }
    }
    // y^2-torsion needs two extra stages: e_2 is a cycle at stage 2 and maps to y e_2 at stage 1.
    let m = FPModule::from_strs(&r, vec![1], &[&["y^2"]]).unwrap();
    let cells = route_agreement(&m, &ideal(&r, &["x^2", "y"]), 1, (-2, 5)).unwrap();
    assert!(cells.iter().all(|c| c.agrees()));
    assert_eq!(cells.iter().filter_map(|c| c.lim1_witness).max(), Some(3));
}

#[test]
fn duality_on_the_line() {
    let r = qq(&["x"]);
    let a = ideal(&r, &["x"]);
    let am = FPModule::ring_module(&r);
    let k = cyclic(&r, &["x"]);
    let rep = gm_duality_check(&k, &am, &a, 3, (-6, 6), None).unwrap();
    assert!(rep.passed(), "{}", rep.to_markdown());
    let sides = gm_duality_sides(&k, &am, &a, 1, (-6, 6), None).unwrap();
    for side in [&sides.left, &sides.right] {
        assert!(side[0].dims.iter().all(|&v| v == 0));
        assert_eq!(side[1].dims.iter().sum::<usize>(), 1);
        assert_eq!(side[1].dim(-1), Some(1));
    }

    // Both sides are truncations of Q[[x]] concentrated in Ext^0.
    let sides = gm_duality_sides(&am, &am, &a, 2, (-6, 6), None).unwrap();
    for side in [&sides.left, &sides.right] {
        let expect: Vec<usize> = (-6..=6).map(|d| usize::from(d >= 0)).collect();
        assert_eq!(side[0].dims, expect);
        assert!(side[1].dims.iter().chain(&side[2].dims).all(|&v| v == 0));
    }

    let t = cyclic(&r, &["x^2"]);
    let sides = gm_duality_sides(&t, &t, &a, 2, (-6, 6), None).unwrap();
    for side in [&sides.left, &sides.right] {
        assert_eq!(side[0].dims.iter().sum::<usize>(), 2);
        assert!(side[0].stable.iter().all(|&s| s));
    }
}
