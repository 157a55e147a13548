//! Property bodies shared by the seeded suites. Inputs are drawn from a flat pool of small
//! integers and built into homogeneous data deterministically, so every failure replays
//! from the seed.

use std::sync::Arc;

use super::{exponents, homology_dim, qq};
use hhadic::groebner::syzygies;
use hhadic::homalg::{hom_complex, tensor_complex};
use hhadic::koszul::{base_change_check, koszul, telescope_stage};
use hhadic::torcomp::{complete, route_agreement};
use hhadic::{ChainComplex, FPModule, GroebnerBasis, Ideal, Matrix, Monomial, Polynomial, Ring, RingMap};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use proptest::test_runner::{TestCaseError, TestRunner};

pub fn config(seed: u64) -> ProptestConfig {
    ProptestConfig { cases: 256, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..ProptestConfig::default() }
}

pub fn pool() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 96)
}

struct Draw<'a> {
    pool: &'a [i64],
    at: usize,
}

impl<'a> Draw<'a> {
    fn new(pool: &'a [i64]) -> Draw<'a> {
        Draw { pool, at: 0 }
    }

    fn next(&mut self) -> i64 {
        let v = self.pool[self.at % self.pool.len()];
        self.at += 1;
        v
    }

    /// Uniform-ish pick in `0..n`.
    fn pick(&mut self, n: usize) -> usize {
        (self.next() + 3) as usize % n
    }

    fn poly(&mut self, r: &Ring, d: i64) -> Polynomial {
        if d < 0 {
            return r.zero();
        }
        let n = r.nvars();
        let mut terms = Vec::new();
        for e in exponents(n, d) {
            let c = self.next();
            if c != 0 {
                terms.push((Monomial::from_exponents(&e), r.field().from_i64(c)));
            }
        }
        r.reduce(&Polynomial::from_terms(r.order(), terms))
    }

    fn nonzero(&mut self, r: &Ring, d: i64) -> Polynomial {
        let p = self.poly(r, d);
        if p.is_zero() {
            r.pow(&r.var(self.pick(r.nvars())), d as u32)
        } else {
            p
        }
    }

    fn sequence(&mut self, r: &Ring, max_len: usize) -> Vec<Polynomial> {
        let len = 1 + self.pick(max_len);
        (0..len)
            .map(|_| {
                let d = 1 + self.pick(2) as i64;
                self.nonzero(r, d)
            })
            .collect()
    }

    /// Column of weighted degree `d` over generators with the given twists.
    fn column(&mut self, r: &Ring, twists: &[i64], d: i64) -> Vec<Polynomial> {
        twists.iter().map(|&t| self.poly(r, d - t)).collect()
    }

    fn module(&mut self, r: &Arc<Ring>) -> FPModule {
        let rank = 1 + self.pick(2);
        let twists: Vec<i64> = (0..rank).map(|_| self.pick(2) as i64).collect();
        let top = *twists.iter().max().unwrap();
        let nrel = self.pick(3);
        let rels = (0..nrel)
            .map(|_| {
                let d = top + 1 + self.pick(2) as i64;
                self.column(r, &twists, d)
            })
            .collect();
        FPModule::new(r, twists, rels).unwrap()
    }
}

fn rings() -> Vec<Arc<Ring>> {
    let plane = qq(&["x", "y"]);
    vec![qq(&["x"]), plane.clone(), plane.quotient_by_strs(&["x*y"]).unwrap()]
}

fn ideals(r: &Arc<Ring>) -> Vec<Ideal> {
    let x = r.var(0);
    let mut out = vec![Ideal::new(r, vec![x.clone()]).unwrap()];
    if r.nvars() > 1 {
        let y = r.var(1);
        out.push(Ideal::new(r, vec![x.clone(), y.clone()]).unwrap());
        out.push(Ideal::new(r, vec![r.pow(&x, 2), y]).unwrap());
    }
    out
}

fn zero_vector(v: &[Polynomial]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

pub fn differentials_square_to_zero(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let rs = rings();
    let r = &rs[g.pick(rs.len())];
    let seq = g.sequence(r, 3);
    let m = g.module(r);
    let k = koszul(r, &seq).unwrap();
    let j = 1 + g.pick(2) as u32;
    let complexes: Vec<ChainComplex> = vec![
        k.complex().clone(),
        telescope_stage(r, &seq, j).unwrap().complex().clone(),
        tensor_complex(k.complex(), &m).unwrap(),
        hom_complex(k.complex(), &m).unwrap(),
    ];
    for c in &complexes {
        prop_assert!(c.validate());
    }
    Ok(())
}

pub fn normal_forms_are_idempotent_and_sound(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let r = qq(&["x", "y"]);
    let gens = g.sequence(&r, 3);
    let gb = GroebnerBasis::of_ideal(&r, &gens);
    let f = (0..=3).fold(r.zero(), |acc, d| r.add(&acc, &g.poly(&r, d)));
    let nf = gb.reduce_polynomial(&f);
    prop_assert_eq!(gb.reduce_polynomial(&nf), nf.clone());
    prop_assert!(gb.contains(&[r.sub(&f, &nf)]).unwrap());
    // No standard monomial of nf is a leading monomial multiple.
    for (mono, _) in nf.terms() {
        for lead in gb.elements().iter().filter_map(|e| e[0].leading_monomial()) {
            prop_assert!(!lead.divides(mono));
        }
    }
    let combo = gens.iter().fold(r.zero(), |acc, s| {
        let d = g.pick(3) as i64;
        let h = g.poly(&r, d);
        r.add(&acc, &r.mul(&h, s))
    });
    prop_assert!(gb.reduce_polynomial(&combo).is_zero());
    prop_assert_eq!(gb.reduce_polynomial(&r.add(&f, &combo)), nf);
    Ok(())
}

pub fn syzygies_multiply_to_zero(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let r = qq(&["x", "y"]);
    let rank = 1 + g.pick(2);
    let tgt: Vec<i64> = (0..rank).map(|_| g.pick(2) as i64).collect();
    let ncols = 2 + g.pick(2);
    let src: Vec<i64> = (0..ncols).map(|_| 1 + g.pick(3) as i64).collect();
    let cols: Vec<Vec<Polynomial>> = src.iter().map(|&d| g.column(&r, &tgt, d)).collect();
    let m = Matrix::from_columns(rank, cols.clone()).unwrap();
    let syz = syzygies(&r, &cols, &tgt, &src).unwrap();
    for s in &syz {
        prop_assert!(!zero_vector(s));
        prop_assert!(zero_vector(&m.apply(&r, s)));
    }
    Ok(())
}

pub fn base_change_is_entrywise(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let src = qq(&["x", "y"]);
    let targets = [qq(&["x", "y"]), qq(&["x", "y", "z"]), qq(&["x", "y"]).quotient_by_strs(&["x*y"]).unwrap()];
    let tgt = &targets[g.pick(targets.len())];
    let images: Vec<Polynomial> = (0..2)
        .map(|_| {
            let d = 1 + g.pick(2) as i64;
            g.nonzero(tgt, d)
        })
        .collect();
    let phi = RingMap::new(&src, tgt, images).unwrap();
    let seq = g.sequence(&src, 2);
    let j = 1 + g.pick(3) as u32;
    let bc = base_change_check(&phi, &seq, j).unwrap();
    prop_assert!(bc.passed(), "{bc:?}");
    Ok(())
}

pub fn telescope_and_truncation_routes_agree(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let rs = rings();
    let r = &rs[g.pick(2)];
    let m = g.module(r);
    let ids = ideals(r);
    let a = &ids[g.pick(ids.len())];
    let j = 1 + g.pick(2) as u32;
    for c in route_agreement(&m, a, j, (-2, 5)).unwrap() {
        prop_assert!(c.agrees(), "{c:?}");
    }
    Ok(())
}

pub fn completion_is_additive_on_short_exact_sequences(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let rs = rings();
    let r = &rs[g.pick(2)];
    let m = g.module(r);
    // 0 -> Av -> M -> M/Av -> 0 with Av presented as A(-e) modulo the annihilator of v.
    let lo = *m.twists().iter().min().unwrap();
    let e = lo + g.pick(3) as i64;
    let v = g.column(r, m.twists(), e);
    let sub = FPModule::new(r, vec![e], m.preimage_of_zero(std::slice::from_ref(&v), &[e]).unwrap()).unwrap();
    let quo = m.quotient(&[v]).unwrap();
    for d in lo - 1..=lo + 6 {
        prop_assert_eq!(sub.graded_dim(d).unwrap() + quo.graded_dim(d).unwrap(), m.graded_dim(d).unwrap());
    }
    let ids = ideals(r);
    let a = &ids[g.pick(ids.len())];
    for n in 1..=4u32 {
        let (cs, cm, cq) = (complete(&sub, a, n).unwrap(), complete(&m, a, n).unwrap(), complete(&quo, a, n).unwrap());
        // a^N M vanishes below degree lo + N, on all three modules.
        for d in lo..lo + n as i64 {
            prop_assert_eq!(cs.graded_dim(d).unwrap() + cq.graded_dim(d).unwrap(), cm.graded_dim(d).unwrap(), "N = {}, d = {}", n, d);
        }
    }
    Ok(())
}

pub fn homology_matches_dense_linear_algebra(p: &[i64]) -> Result<(), TestCaseError> {
    let mut g = Draw::new(p);
    let rs = [qq(&["x"]), qq(&["x", "y"])];
    let r = &rs[g.pick(2)];
    let seq = g.sequence(r, 2);
    let m = g.module(r);
    let k = koszul(r, &seq).unwrap();
    let c = if g.pick(2) == 0 { tensor_complex(k.complex(), &m).unwrap() } else { hom_complex(k.complex(), &m).unwrap() };
    for i in c.lo()..=c.hi() {
        let h = c.homology(i).unwrap().module;
        for d in -10..=10 {
            prop_assert_eq!(h.graded_dim(d).unwrap(), homology_dim(&c, i, d), "H_{} in degree {}", i, d);
        }
    }
    Ok(())
}

pub type Property = fn(&[i64]) -> Result<(), TestCaseError>;

/// Name, seed and body of every suite.
pub const SUITES: [(&str, u64, Property); 7] = [
    ("differentials_square_to_zero", 0x5eed_0001, differentials_square_to_zero),
    ("normal_forms_are_idempotent_and_sound", 0x5eed_0002, normal_forms_are_idempotent_and_sound),
    ("syzygies_multiply_to_zero", 0x5eed_0003, syzygies_multiply_to_zero),
    ("base_change_is_entrywise", 0x5eed_0004, base_change_is_entrywise),
    ("telescope_and_truncation_routes_agree", 0x5eed_0005, telescope_and_truncation_routes_agree),
    ("completion_is_additive_on_short_exact_sequences", 0x5eed_0006, completion_is_additive_on_short_exact_sequences),
    ("homology_matches_dense_linear_algebra", 0x5eed_0007, homology_matches_dense_linear_algebra),
];

/// Runs one suite with its pinned seed and case count.
pub fn run_suite(seed: u64, prop: Property) -> Result<(), String> {
    let mut runner = TestRunner::new(config(seed));
    runner.run(&pool(), |p| prop(&p)).map_err(|e| e.to_string())
}
