//! Kernels of module maps modulo a submodule, via an elimination order on `F_tgt ⊕ F_src`.

use std::sync::Arc;

use super::vector::{ModuleOrder, Vector};
use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Generators of `{ v in A^s : m v in im(rel) }` as columns of length `s`.
///
/// `m` and `rel` are given as columns of length `t`. `tgt_twists` and `src_twists` are
/// only used to weight the order; for homogeneous input they make every intermediate
/// vector homogeneous.
pub fn kernel_mod(
    ring: &Arc<Ring>,
    m: &[Vec<Polynomial>],
    rel: &[Vec<Polynomial>],
    tgt_twists: &[i64],
    src_twists: &[i64],
) -> Result<Vec<Vec<Polynomial>>> {
    let t = tgt_twists.len();
    let s = m.len();
    if src_twists.len() != s {
        return Err(Error::RankMismatch { expected: s, got: src_twists.len() });
    }
    for col in m.iter().chain(rel) {
        if col.len() != t {
            return Err(Error::RankMismatch { expected: t, got: col.len() });
        }
    }
    if s == 0 {
        return Ok(Vec::new());
    }
    let mut weights: Vec<i64> = tgt_twists.to_vec();
    weights.extend_from_slice(src_twists);
    let ord = ModuleOrder::new(ring.order(), weights).with_elimination(t as u32);
    let zero = ring.zero();
    let mut gens: Vec<Vector> = Vec::with_capacity(s + rel.len());
    for (j, col) in m.iter().enumerate() {
        let mut full = col.clone();
        full.extend((0..s).map(|k| if k == j { ring.one() } else { zero.clone() }));
        gens.push(Vector::from_column(&full, 0, &ord));
    }
    for col in rel {
        gens.push(Vector::from_column(col, 0, &ord));
    }
    let gb = GroebnerBasis::from_vectors(ring, gens, ord);
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    for v in gb.vectors() {
        let lt = v.lead_term().unwrap();
        if (lt.pos as usize) < t {
            continue;
        }
        let col: Vec<Polynomial> = v.to_column(t as u32, s, ring.order()).iter().map(|p| ring.reduce(p)).collect();
        if col.iter().all(Polynomial::is_zero) || out.contains(&col) {
            continue;
        }
        out.push(col);
    }
    Ok(out)
}

/// Generators of the kernel of `m: A^s -> A^t`, as columns.
pub fn syzygies(ring: &Arc<Ring>, m: &[Vec<Polynomial>], tgt_twists: &[i64], src_twists: &[i64]) -> Result<Vec<Vec<Polynomial>>> {
    kernel_mod(ring, m, &[], tgt_twists, src_twists)
}
