//! Koszul cohomology of the diagonal sequence on `M / I^L M`, by linear algebra on
//! monomial bases of the enveloping ring. No Gröbner bases are involved.

use std::collections::HashMap;

use super::EnvelopingRing;
use crate::error::{Error, Result};
use crate::homalg::{column_degree, ColumnDegree, FPModule};
use crate::koszul::subsets;
use crate::linalg::{Echelon, SparseVec};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::Ideal;
use crate::scalar::Scalar;

/// Monomial basis of `F_D` for a graded free module, indexed by `(monomial, generator)`.
struct Basis {
    terms: Vec<(Monomial, usize)>,
    index: HashMap<(Monomial, usize), usize>,
}

impl Basis {
    fn new(nvars: usize, twists: &[i64], deg: i64) -> Basis {
        let mut terms = Vec::new();
        for (k, &t) in twists.iter().enumerate() {
            if deg - t >= 0 {
                for m in monomials_of_degree(nvars, (deg - t) as u32) {
                    terms.push((m, k));
                }
            }
        }
        let index = terms.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        Basis { terms, index }
    }

    fn len(&self) -> usize {
        self.terms.len()
    }
}

/// `m * col` in coordinates of `basis`, shifted by `offset`.
fn coords(basis: &Basis, offset: usize, m: &Monomial, col: &[Polynomial], sign: &Scalar, out: &mut Vec<(usize, Scalar)>) {
    for (k, p) in col.iter().enumerate() {
        for (mono, c) in p.terms() {
            let key = (mono.mul(m), k);
            let i = basis.index[&key];
            out.push((offset + i, c.mul(sign)));
        }
    }
}

fn canonical(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, a)) if *j == i => *a = a.add(&c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Spanning vectors of `(R + I^L F)_D`, where `R` are the relations of `m`.
fn relation_span(m: &FPModule, ipow: &[Polynomial], basis: &Basis, nvars: usize, deg: i64, offset: usize, out: &mut Vec<SparseVec>) {
    let field = m.ring().field();
    let one = field.one();
    let rank = m.rank();
    let mut gens: Vec<(Vec<Polynomial>, i64)> = Vec::new();
    for (c, d) in m.relations().iter().zip(m.relation_degrees()) {
        gens.push((c.clone(), d));
    }
    for g in ipow {
        let gd = g.degree().unwrap_or(0) as i64;
        for k in 0..rank {
            let mut col = vec![m.ring().zero(); rank];
            col[k] = g.clone();
            gens.push((col, gd + m.twists()[k]));
        }
    }
    for (col, d) in gens {
        if deg - d < 0 {
            continue;
        }
        for mono in monomials_of_degree(nvars, (deg - d) as u32) {
            let mut v = Vec::new();
            coords(basis, offset, &mono, &col, &one, &mut v);
            let v = canonical(v);
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
}

/// Koszul cochain terms `V_n = ⊕_{|S|=n} F_{d+n}` with their relation spans.
struct Term {
    subsets: Vec<Vec<usize>>,
    basis: Basis,
    relations: Vec<SparseVec>,
}

impl Term {
    fn dim(&self) -> usize {
        self.subsets.len() * self.basis.len()
    }
}

/// `dim H^i` of `Hom(K(s), M / I^L M)` in internal degree `d`, where `I^L` is given by generators.
pub fn truncated_dim(env: &EnvelopingRing, m: &FPModule, ipow: &[Polynomial], i: usize, d: i64) -> Result<usize> {
    let n = env.nvars();
    if i > n {
        return Ok(0);
    }
    let nv = env.env().nvars();
    let build = |k: usize| -> Option<Term> {
        if k > n {
            return None;
        }
        let subsets = subsets(n, k);
        let basis = Basis::new(nv, m.twists(), d + k as i64);
        let mut relations = Vec::new();
        for b in 0..subsets.len() {
            relation_span(m, ipow, &basis, nv, d + k as i64, b * basis.len(), &mut relations);
        }
        Some(Term { subsets, basis, relations })
    };
    let cur = build(i).unwrap();
    let next = build(i + 1);
    let prev = if i == 0 { None } else { build(i - 1) };
    let field = env.env().field();
    let s = env.diagonal();

    // images of the basis of `src` under the Koszul coboundary, in coordinates of `tgt`
    let images = |src: &Term, tgt: &Term| -> Vec<SparseVec> {
        let tindex: HashMap<&Vec<usize>, usize> = tgt.subsets.iter().enumerate().map(|(b, t)| (t, b)).collect();
        let mut out = Vec::with_capacity(src.dim());
        for sset in &src.subsets {
            for (mono, k) in &src.basis.terms {
                let mut v = Vec::new();
                for (r, sp) in s.iter().enumerate() {
                    if sset.contains(&r) {
                        continue;
                    }
                    let mut t = sset.clone();
                    t.push(r);
                    t.sort_unstable();
                    let pos = t.iter().position(|&x| x == r).unwrap();
                    let sign = if pos % 2 == 0 { field.one() } else { field.one().neg() };
                    let b = tindex[&t];
                    for (sm, sc) in sp.terms() {
                        let key = (mono.mul(sm), *k);
                        let idx = tgt.basis.index[&key];
                        v.push((b * tgt.basis.len() + idx, sc.mul(&sign)));
                    }
                }
                out.push(canonical(v));
            }
        }
        out
    };

    let rank_with = |base: &[SparseVec], extra: &[SparseVec]| -> (usize, usize) {
        let mut e = Echelon::new();
        for v in base {
            e.insert(v);
        }
        let r0 = e.rank();
        for v in extra {
            e.insert(v);
        }
        (r0, e.rank())
    };

    // rank of D_i modulo S_{i+1}
    let out_rank = match &next {
        Some(nx) => {
            let (s0, s1) = rank_with(&nx.relations, &images(&cur, nx));
            s1 - s0
        }
        None => 0,
    };
    // rank of [S_i | D V_{i-1}]
    let in_rank = match &prev {
        Some(pv) => rank_with(&cur.relations, &images(pv, &cur)).1,
        None => rank_with(&cur.relations, &[]).1,
    };
    Ok(cur.dim() - out_rank - in_rank)
}

/// Generators of `I^L` for `I = a⊗A + A⊗a`.
pub fn truncation_ideal(env: &EnvelopingRing, a: &Ideal, l: u32) -> Result<Vec<Polynomial>> {
    let i = env.extended_ideal(a)?;
    Ok(i.power(l)?.generators().to_vec())
}

/// Degree-`d` dims of the truncated Koszul cohomology for each `d` in `degrees`.
pub fn truncated_dims(env: &EnvelopingRing, m: &FPModule, a: &Ideal, i: usize, l: u32, degrees: &[i64]) -> Result<Vec<usize>> {
    for c in m.relations() {
        if column_degree(c, m.twists()) == ColumnDegree::Mixed {
            return Err(Error::NotHomogeneous("bimodule presentation".into()));
        }
    }
    let ipow = truncation_ideal(env, a, l)?;
    if ipow.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous("the ideal a".into()));
    }
    use rayon::prelude::*;
    degrees.par_iter().map(|&d| truncated_dim(env, m, &ipow, i, d)).collect()
}
