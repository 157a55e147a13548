//! Degree-by-degree linear algebra on graded complexes.
//!
//! Each term's degree-`d` piece has the standard terms of its relation Gröbner basis as
//! a `k`-basis; differentials and chain maps become sparse matrices over the field.

use std::collections::HashMap;

use super::complex::{ChainComplex, ChainMap};
use super::module::{FPModule, Matrix};
use crate::error::{Error, Result};
use crate::groebner::{ModTerm, Vector};
use crate::linalg::{kernel, Echelon, Insert, SparseVec};
use crate::scalar::Scalar;

/// The degree-`d` piece of a graded module with its standard-term basis.
pub struct Piece<'a> {
    module: &'a FPModule,
    basis: Vec<ModTerm>,
    index: HashMap<ModTerm, usize>,
}

impl<'a> Piece<'a> {
    pub fn new(module: &'a FPModule, d: i64) -> Result<Piece<'a>> {
        if !module.is_homogeneous() {
            return Err(Error::NotHomogeneous("strand needs graded terms".into()));
        }
        let basis = module.groebner().standard_terms(module.twists(), d);
        let index = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        Ok(Piece { module, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModTerm] {
        &self.basis
    }

    /// Coordinates of a homogeneous ambient vector of this degree.
    pub fn coords(&self, v: &Vector) -> SparseVec {
        let r = self.module.groebner().reduce_vector(v);
        let mut out: SparseVec = r
            .terms()
            .iter()
            .map(|(t, c)| {
                let i = *self.index.get(t).expect("normal form of a homogeneous vector stays in degree");
                (i, c.clone())
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// The ambient vector with the given coordinates.
    pub fn vector(&self, c: &SparseVec) -> Vector {
        let ord = self.module.groebner().order().clone();
        Vector::from_terms(c.iter().map(|(i, a)| (self.basis[*i], a.clone())).collect(), &ord)
    }
}

/// Images of the basis of `src` under the matrix `m` (columns indexed by generators of
/// the source module), in coordinates of `tgt`.
pub fn map_columns(m: &Matrix, src: &Piece<'_>, tgt: &Piece<'_>) -> Vec<SparseVec> {
    let ord = tgt.module.groebner().order().clone();
    let cols: Vec<Vector> = m.columns().iter().map(|c| Vector::from_column(c, 0, &ord)).collect();
    let one = tgt.module.ring().field().one();
    src.basis.iter().map(|t| tgt.coords(&cols[t.pos as usize].mul_term(&t.mono, &one))).collect()
}

/// Applies `m` to an ambient vector of `src`'s module, returning coordinates in `tgt`.
fn map_vector(m: &Matrix, v: &Vector, tgt: &Piece<'_>) -> SparseVec {
    let ord = tgt.module.groebner().order().clone();
    let mut acc = Vector::zero();
    for (t, c) in v.terms() {
        let col = Vector::from_column(m.column(t.pos as usize), 0, &ord);
        acc = acc.add(&col.mul_term(&t.mono, c), &ord);
    }
    tgt.coords(&acc)
}

/// Homology of a complex in one index and one internal degree.
pub struct StrandHomology {
    pub dim: usize,
    /// Basis of the cycles, in coordinates of the degree piece of `C_i`.
    pub cycles: Vec<SparseVec>,
}

fn zero_piece_dim(c: &ChainComplex, i: i64, d: i64) -> Result<Option<Piece<'_>>> {
    c.term(i).map(|t| Piece::new(t, d)).transpose()
}

pub fn strand_homology(c: &ChainComplex, i: i64, d: i64) -> Result<StrandHomology> {
    let field = c.ring().field();
    let Some(pi) = zero_piece_dim(c, i, d)? else {
        return Ok(StrandHomology { dim: 0, cycles: Vec::new() });
    };
    let cycles: Vec<SparseVec> = match (c.d(i), zero_piece_dim(c, i - 1, d)?) {
        (Some(m), Some(prev)) => kernel(&map_columns(m, &pi, &prev), field),
        _ => (0..pi.dim()).map(|k| vec![(k, field.one())]).collect(),
    };
    let bdim = match (c.d(i + 1), zero_piece_dim(c, i + 1, d)?) {
        (Some(m), Some(next)) => crate::linalg::rank(&map_columns(m, &next, &pi)),
        _ => 0,
    };
    Ok(StrandHomology { dim: cycles.len() - bdim, cycles })
}

/// `dim H_i(C)_d`.
pub fn homology_dim(c: &ChainComplex, i: i64, d: i64) -> Result<usize> {
    Ok(strand_homology(c, i, d)?.dim)
}

/// `dim_k C_{i,d}` summed with signs is the Euler characteristic of the strand.
pub fn term_dim(c: &ChainComplex, i: i64, d: i64) -> Result<usize> {
    Ok(zero_piece_dim(c, i, d)?.map_or(0, |p| p.dim()))
}

/// The map induced on `H_i` in degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl InducedMap {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }
}

pub fn induced_map(f: &ChainMap, i: i64, d: i64) -> Result<InducedMap> {
    let (src, tgt) = (f.source(), f.target());
    let hs = strand_homology(src, i, d)?;
    let ht = strand_homology(tgt, i, d)?;
    let rank = match (src.term(i), tgt.term(i)) {
        (Some(s), Some(t)) if !hs.cycles.is_empty() => {
            let ps = Piece::new(s, d)?;
            let pt = Piece::new(t, d)?;
            let mut ech = Echelon::new();
            if let (Some(m), Some(next)) = (tgt.d(i + 1), zero_piece_dim(tgt, i + 1, d)?) {
                for col in map_columns(m, &next, &pt) {
                    ech.insert(&col);
                }
            }
            let fi = f.component(i);
            let mut r = 0;
            for z in &hs.cycles {
                let v = ps.vector(z);
                if ech.insert(&map_vector(&fi, &v, &pt)) == Insert::Independent {
                    r += 1;
                }
            }
            r
        }
        _ => 0,
    };
    Ok(InducedMap { source_dim: hs.dim, target_dim: ht.dim, rank })
}

/// Coordinates helper for tests and oracles: a scalar-valued dense matrix of `m` on degree `d`.
pub fn dense_strand_matrix(m: &Matrix, src: &FPModule, tgt: &FPModule, d: i64) -> Result<Vec<Vec<Scalar>>> {
    let ps = Piece::new(src, d)?;
    let pt = Piece::new(tgt, d)?;
    let field = src.ring().field();
    let cols = map_columns(m, &ps, &pt);
    let mut dense = vec![vec![field.zero(); ps.dim()]; pt.dim()];
    for (j, c) in cols.iter().enumerate() {
        for (i, a) in c {
            dense[*i][j] = a.clone();
        }
    }
    Ok(dense)
}
