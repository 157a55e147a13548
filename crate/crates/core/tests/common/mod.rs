//! Brute-force oracles: dense linear algebra over ambient monomial bases, no Gröbner bases.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use hhadic::homalg::{ChainComplex, FPModule, Matrix};
use hhadic::{Field, Monomial, Polynomial, Ring, Scalar};

pub mod props;

pub fn qq(vars: &[&str]) -> Arc<Ring> {
    Ring::polynomial(Field::Rationals, vars).unwrap()
}

pub fn fp(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::polynomial(Field::prime(p).unwrap(), vars).unwrap()
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn exponents(n: usize, d: i64) -> Vec<Vec<u32>> {
    if d < 0 {
        return Vec::new();
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in exponents(n - 1, d - a) {
            rest.insert(0, a as u32);
            out.push(rest);
        }
    }
    out
}

pub fn monomials(n: usize, d: i64) -> Vec<Monomial> {
    exponents(n, d).iter().map(|e| Monomial::from_exponents(e)).collect()
}

/// Row-reduction rank of dense rows.
#[allow(clippy::needless_range_loop)]
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let Some(width) = rows.first().map(|r| r.len()) else { return 0 };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..width {
                    let v = rows[r][c].sub(&f.mul(&pivot[c]));
                    rows[r][c] = v;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Monomial basis of a twisted free module in degree `d`.
pub struct AmbientBasis {
    pub index: HashMap<(Monomial, usize), usize>,
    pub len: usize,
}

impl AmbientBasis {
    pub fn new(nvars: usize, twists: &[i64], d: i64) -> AmbientBasis {
        let mut index = HashMap::new();
        for (k, t) in twists.iter().enumerate() {
            for m in monomials(nvars, d - t) {
                let n = index.len();
                index.insert((m, k), n);
            }
        }
        let len = index.len();
        AmbientBasis { index, len }
    }

    /// Dense coordinates of `m * col`.
    pub fn row(&self, field: Field, m: &Monomial, col: &[Polynomial]) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.len];
        for (k, p) in col.iter().enumerate() {
            for (mono, c) in p.terms() {
                let i = self.index[&(mono.mul(m), k)];
                v[i] = v[i].add(c);
            }
        }
        v
    }
}

/// Spanning rows of `(R + J F)_d`: monomial multiples of the relation columns and of the
/// quotient-ideal generators of the ring times each basis vector.
pub fn relation_rows(m: &FPModule, d: i64) -> Vec<Vec<Scalar>> {
    let ring = m.ring();
    let n = ring.nvars();
    let field = ring.field();
    let basis = AmbientBasis::new(n, m.twists(), d);
    let mut gens: Vec<Vec<Polynomial>> = m.relations().to_vec();
    for q in ring.quotient_ideal() {
        for k in 0..m.rank() {
            let mut col = vec![Polynomial::zero(ring.order()); m.rank()];
            col[k] = q.clone();
            gens.push(col);
        }
    }
    let mut rows = Vec::new();
    for col in &gens {
        let deg = col_degree(col, m.twists());
        let Some(deg) = deg else { continue };
        for mono in monomials(n, d - deg) {
            rows.push(basis.row(field, &mono, col));
        }
    }
    rows
}

/// Degree of a homogeneous column, `None` for zero.
pub fn col_degree(col: &[Polynomial], twists: &[i64]) -> Option<i64> {
    col.iter().zip(twists).find(|(p, _)| !p.is_zero()).map(|(p, t)| p.degree().unwrap() as i64 + t)
}

/// `dim M_d` by `dim F_d - rank (R + JF)_d`.
pub fn module_dim(m: &FPModule, d: i64) -> usize {
    let basis = AmbientBasis::new(m.ring().nvars(), m.twists(), d);
    basis.len - dense_rank(relation_rows(m, d))
}

/// Images of every ambient basis vector of `src` in degree `d` under `mat`, in the ambient basis of `tgt`.
fn map_rows(mat: &Matrix, src: &FPModule, tgt: &FPModule, d: i64) -> Vec<Vec<Scalar>> {
    let ring = src.ring();
    let n = ring.nvars();
    let field = ring.field();
    let tb = AmbientBasis::new(n, tgt.twists(), d);
    let mut rows = Vec::new();
    for (k, t) in src.twists().iter().enumerate() {
        for mono in monomials(n, d - t) {
            rows.push(tb.row(field, &mono, mat.column(k)));
        }
    }
    rows
}

/// `dim H_i(C)_d` by rank–nullity on ambient bases modulo relation spans.
pub fn homology_dim(c: &ChainComplex, i: i64, d: i64) -> usize {
    let Some(ci) = c.term(i) else { return 0 };
    let n = c.ring().nvars();
    let dim_f = AmbientBasis::new(n, ci.twists(), d).len;
    let (rel_prev, img) = match (c.term(i - 1), c.d(i)) {
        (Some(prev), Some(m)) => (relation_rows(prev, d), map_rows(m, ci, prev, d)),
        _ => (Vec::new(), Vec::new()),
    };
    let r_prev = dense_rank(rel_prev.clone());
    let mut both = rel_prev;
    both.extend(img);
    let kernel = dim_f - (dense_rank(both) - r_prev);
    let mut bound = relation_rows(ci, d);
    if let (Some(next), Some(m)) = (c.term(i + 1), c.d(i + 1)) {
        bound.extend(map_rows(m, next, ci, d));
    }
    kernel - dense_rank(bound)
}

/// Hilbert function of a module by the oracle.
pub fn hilbert(m: &FPModule, lo: i64, hi: i64) -> Vec<usize> {
    (lo..=hi).map(|d| module_dim(m, d)).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}
