mod common;

use std::sync::Arc;

use common::{homology_dim, qq};
use hhadic::homalg::hom_complex;
use hhadic::koszul::{base_change_check, koszul, koszul_power, telescope_inclusion, telescope_stage, tower};
use hhadic::{FPModule, Polynomial, Ring, RingMap};

fn seq(r: &Arc<Ring>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|g| r.parse(g).unwrap()).collect()
}

#[test]
fn koszul_examples() {
    let r = qq(&["x"]);
    let k = koszul(&r, &[r.var(0)]).unwrap();
    assert_eq!(k.complex().homology(0).unwrap().module.hilbert(0, 3).unwrap(), vec![1, 0, 0, 0]);
    assert!(k.complex().homology(1).unwrap().module.is_zero());

    let r2 = qq(&["x", "y"]);
    let k = koszul(&r2, &[r2.var(0), r2.var(1)]).unwrap();
    let c = k.complex();
    assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (1, 2, 1));
    assert_eq!(c.twists(1), &[1, 1]);
    assert_eq!(c.twists(2), &[2]);
    assert_eq!(c.homology(0).unwrap().module.hilbert(0, 3).unwrap(), vec![1, 0, 0, 0]);
    assert!(c.homology(1).unwrap().module.is_zero());
    assert!(c.homology(2).unwrap().module.is_zero());

    let q = r2.quotient_by_strs(&["x*y"]).unwrap();
    let k = koszul(&q, &[q.var(0)]).unwrap();
    let h1 = k.complex().homology(1).unwrap();
    assert_eq!(h1.cycles, vec![vec![q.var(1)]]);
    for d in 0..=10 {
        assert_eq!(h1.module.graded_dim(d).unwrap(), homology_dim(k.complex(), 1, d));
    }
}

#[test]
fn regular_sequences_have_no_higher_homology() {
    let r = qq(&["x", "y", "z"]);
    let cases: [&[&str]; 5] = [&["x"], &["x", "y"], &["x", "y", "z"], &["x^2", "y^3", "z"], &["x+y", "x-y", "z^2"]];
    for s in cases {
        let k = koszul(&r, &seq(&r, s)).unwrap();
        for i in 1..=s.len() as i64 {
            assert!(k.complex().homology(i).unwrap().module.is_zero(), "{s:?} H_{i}");
        }
    }
    let k = koszul(&r, &seq(&r, &["x*y", "x*z"])).unwrap();
    assert!(!k.complex().homology(1).unwrap().module.is_zero());
}

#[test]
fn telescope_stages_validate_and_compute_truncations() {
    let r = qq(&["x"]);
    let a = FPModule::ring_module(&r);
    for j in 1..=5 {
        let t = telescope_stage(&r, &[r.var(0)], j).unwrap();
        assert!(t.complex().validate());
        let h = hom_complex(t.complex(), &a).unwrap();
        let h0 = h.cohomology(0).unwrap().module;
        let dims = h0.hilbert(-2, 8).unwrap();
        assert_eq!(dims.iter().sum::<usize>(), j as usize, "stage {j}");
        let expect: Vec<usize> = (-2..=8).map(|d| usize::from((0..j as i64).contains(&d))).collect();
        assert_eq!(dims, expect);
    }
}

/// For several elements the stage-j quotient is `A/(a_1^j, .., a_c^j)`, cofinal with `A/a^j`.
#[test]
fn multi_element_telescope_quotients() {
    let r = qq(&["x", "y"]);
    let a = FPModule::ring_module(&r);
    for j in 1..=3u32 {
        let t = telescope_stage(&r, &[r.var(0), r.var(1)], j).unwrap();
        assert!(t.complex().validate());
        let h0 = hom_complex(t.complex(), &a).unwrap().cohomology(0).unwrap().module;
        let oracle = FPModule::cyclic(&r, &seq(&r, &[&format!("x^{j}"), &format!("y^{j}")])).unwrap();
        assert_eq!(h0.hilbert(-2, 8).unwrap(), oracle.hilbert(-2, 8).unwrap(), "stage {j}");
    }
}

#[test]
fn stage_maps_are_chain_maps() {
    let r = qq(&["x", "y"]);
    for (j1, j2) in [(1, 1), (1, 2), (2, 4)] {
        let f = telescope_inclusion(&r, &[r.var(0), r.var(1)], j1, j2).unwrap();
        assert!(f.check().is_ok());
    }
    assert!(telescope_inclusion(&r, &[r.var(0)], 3, 2).is_err());
}

#[test]
fn base_change_examples() {
    let a = qq(&["x"]);
    let b = qq(&["x", "y"]).quotient_by_strs(&["x*y"]).unwrap();
    let phi = RingMap::from_strs(&a, &b, &["x"]).unwrap();
    assert!(base_change_check(&phi, &[a.var(0)], 2).unwrap().passed());

    let sq = RingMap::from_strs(&a, &a, &["x^2"]).unwrap();
    assert!(base_change_check(&sq, &[a.var(0)], 2).unwrap().passed());
    let kb = koszul(&a, &seq(&a, &["x^2"])).unwrap();
    assert_eq!(kb.complex().d(1).unwrap().entry(0, 0), &a.parse("x^2").unwrap());

    let c = qq(&["x", "y"]);
    let psi = RingMap::from_strs(&c, &c, &["x+y", "y"]).unwrap();
    assert!(base_change_check(&psi, &[c.var(0)], 3).unwrap().passed());
    assert!(base_change_check(&psi, &[c.var(0), c.var(1)], 3).unwrap().passed());
}

#[test]
fn tower_transitions() {
    let r = qq(&["x"]);
    let t = tower(&r, &[r.var(0)], 3).unwrap();
    assert_eq!(t.height(), 3);
    for (j2, j1) in [(2, 1), (3, 1), (3, 2), (3, 3)] {
        let f = t.transition(j2, j1).unwrap();
        assert!(f.check().is_ok());
        assert_eq!(f.component(0).entry(0, 0), &r.one());
        assert_eq!(f.component(1).entry(0, 0), &r.pow(&r.var(0), j2 - j1));
    }
    assert!(t.check_functoriality().unwrap());

    let r2 = qq(&["x", "y"]);
    let t = tower(&r2, &[r2.var(0), r2.var(1)], 2).unwrap();
    let f = t.transition(2, 1).unwrap();
    let m = f.component(1);
    assert_eq!(m.entry(0, 0), &r2.var(0));
    assert_eq!(m.entry(1, 1), &r2.var(1));
    assert!(m.entry(0, 1).is_zero() && m.entry(1, 0).is_zero());
    assert_eq!(f.component(2).entry(0, 0), &r2.parse("x*y").unwrap());
    assert!(t.check_functoriality().unwrap());
    assert!(tower(&r2, &[r2.var(0)], 13).is_err());
}

#[test]
fn koszul_powers_track_their_sequence() {
    let r = qq(&["x", "y"]);
    let k = koszul_power(&r, &seq(&r, &["x", "x+y"]), 3).unwrap();
    assert_eq!(k.sequence()[0], r.parse("x^3").unwrap());
    assert_eq!(k.complex().twists(2), &[6]);
}
