//! The torsion functor, adic completion at finite precision, local cohomology through
//! Koszul towers, and the duality, cofinality and p-adic checks built on them.

mod cofinality;
mod duality;
mod padic;

pub use cofinality::cofinality_check;
pub use duality::{gm_duality_check, gm_duality_sides, DualitySides, DEFAULT_GM_CAP};
pub use padic::padic_check;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::homalg::strand::{induced_map, Piece};
use crate::homalg::{hom_complex, hom_map, ChainComplex, FPModule, Matrix};
use crate::koszul::{koszul_transition, subsets, telescope_inclusion, telescope_stage};
use crate::poly::Polynomial;
use crate::report::Cell;
use crate::ring::Ideal;

pub const MAX_PRECISION: u32 = 16;
pub const MAX_TORSION_POWER: u32 = 16;

/// Precision `N` of a truncation `M / a^N M`, with `1 <= N <= 16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrecisionLevel(u32);

impl PrecisionLevel {
    pub fn new(n: u32) -> Result<PrecisionLevel> {
        if n == 0 || n > MAX_PRECISION {
            return Err(Error::Limit(format!("precision must be in 1..={MAX_PRECISION}, got {n}")));
        }
        Ok(PrecisionLevel(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// `Â ⊗_A M` for finitely generated `M`, queried one precision at a time.
#[derive(Clone, Debug)]
pub struct CompletedModule {
    base: FPModule,
    ideal: Ideal,
}

impl CompletedModule {
    pub fn new(base: FPModule, ideal: Ideal) -> Result<CompletedModule> {
        if **base.ring() != **ideal.ring() {
            return Err(Error::RingMismatch("module and ideal over different rings".into()));
        }
        Ok(CompletedModule { base, ideal })
    }

    pub fn base(&self) -> &FPModule {
        &self.base
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn truncation(&self, n: PrecisionLevel) -> Result<FPModule> {
        complete(&self.base, &self.ideal, n.get())
    }

    pub fn graded_dim(&self, n: PrecisionLevel, d: i64) -> Result<usize> {
        self.truncation(n)?.graded_dim(d)
    }
}

/// `M / a^N M`.
pub fn complete(m: &FPModule, a: &Ideal, n: u32) -> Result<FPModule> {
    PrecisionLevel::new(n)?;
    if **m.ring() != **a.ring() {
        return Err(Error::RingMismatch("module and ideal over different rings".into()));
    }
    let pw = a.power(n)?;
    let r = m.rank();
    let mut extra = Vec::with_capacity(pw.generators().len() * r);
    for g in pw.generators() {
        for k in 0..r {
            let mut col = vec![m.ring().zero(); r];
            col[k] = g.clone();
            extra.push(col);
        }
    }
    m.quotient(&extra)
}

/// `Γ_a(M) = Ann_M(a^j)` at the first `j` with `Ann_M(a^j) = Ann_M(a^{j+1})`.
#[derive(Clone, Debug)]
pub struct Torsion {
    pub module: FPModule,
    /// Generators of the submodule, as vectors in the ambient free module of `M`.
    pub generators: Vec<Vec<Polynomial>>,
    pub j: u32,
}

/// `0 -> M -> ⊕_g M(-deg g)` with `e_k -> (g e_k)_g`; its `H_0` is `Ann_M(gens)`.
fn annihilator(m: &FPModule, gens: &[Polynomial]) -> Result<(FPModule, Vec<Vec<Polynomial>>)> {
    let ring = m.ring();
    if gens.is_empty() {
        return Ok((m.clone(), Matrix::identity(ring, m.rank()).into_columns()));
    }
    let shifts: Vec<i64> = gens.iter().map(|g| -(g.degree().unwrap_or(0) as i64)).collect();
    let tgt = m.blocks(&shifts);
    let r = m.rank();
    let mut d = Matrix::zero(ring, r * gens.len(), r);
    for (t, g) in gens.iter().enumerate() {
        for k in 0..r {
            d.set(t * r + k, k, g.clone());
        }
    }
    let c = ChainComplex::from_parts(ring, -1, vec![tgt, m.clone()], vec![d])?;
    let h = c.homology(0)?;
    Ok((h.module, h.cycles))
}

pub fn torsion_submodule(m: &FPModule, a: &Ideal) -> Result<Torsion> {
    if **m.ring() != **a.ring() {
        return Err(Error::RingMismatch("module and ideal over different rings".into()));
    }
    let mut prev = annihilator(m, &a.power(1)?.nonzero_generators())?;
    for j in 1..MAX_TORSION_POWER {
        let next = annihilator(m, &a.power(j + 1)?.nonzero_generators())?;
        let mut span = prev.1.clone();
        span.extend(m.relations().iter().cloned());
        let gb = GroebnerBasis::with_order(m.ring(), &span, m.module_order())?;
        let mut same = true;
        for v in &next.1 {
            if !gb.contains(v)? {
                same = false;
                break;
            }
        }
        if same {
            return Ok(Torsion { module: prev.0, generators: prev.1, j });
        }
        prev = next;
    }
    Err(Error::NotStabilized(format!("annihilators of a^j still growing at j = {MAX_TORSION_POWER}")))
}

/// Per-degree values of a (co)limit read off a finite tower, with stability flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizedResult {
    pub degrees: Vec<i64>,
    pub dims: Vec<usize>,
    pub stable: Vec<bool>,
    pub height: u32,
}

impl StabilizedResult {
    pub fn all_stable(&self) -> bool {
        self.stable.iter().all(|&s| s)
    }

    pub fn dim(&self, d: i64) -> Option<usize> {
        self.degrees.iter().position(|&e| e == d).map(|k| self.dims[k])
    }

    pub fn is_stable(&self, d: i64) -> Option<bool> {
        self.degrees.iter().position(|&e| e == d).map(|k| self.stable[k])
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.dims.iter().zip(&self.stable).map(|(&v, &s)| if s { Cell::stable(v) } else { Cell::unstable(v) }).collect()
    }

    pub fn unstable_degrees(&self) -> Vec<i64> {
        self.degrees.iter().zip(&self.stable).filter(|(_, s)| !**s).map(|(d, _)| *d).collect()
    }
}

fn check_window(window: (i64, i64)) -> Result<Vec<i64>> {
    if window.0 > window.1 {
        return Err(Error::InvalidArgument(format!("empty degree window {}..{}", window.0, window.1)));
    }
    Ok((window.0..=window.1).collect())
}

fn sequence(a: &Ideal) -> Result<Vec<Polynomial>> {
    let seq = a.nonzero_generators();
    if seq.is_empty() {
        return Err(Error::InvalidArgument("the ideal needs a nonzero generator".into()));
    }
    if !a.is_homogeneous() {
        return Err(Error::NotHomogeneous("the ideal a".into()));
    }
    Ok(seq)
}

/// Whether every summand `M_{d + j·deg S}` of `Hom(K(a^j), M)^i_d` that any later stage
/// would see is already nonzero at stage `j`. A summand that only later stages fill makes a
/// comparison between finite stages vacuous.
fn in_reach(m: &FPModule, shifts: &[i64], d: i64, j: u32) -> Result<bool> {
    let top = m.twists().iter().copied().max().unwrap_or(0);
    for &s in shifts.iter().filter(|&&s| s > 0) {
        if m.graded_dim(d + j as i64 * s)? > 0 {
            continue;
        }
        // Past the top generator degree a zero piece stays zero.
        let mut e = d + j as i64 * s;
        while e < top {
            e += s;
            if m.graded_dim(e)? > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `H^i_a(M)` on a degree window, read from stages `J-2..=J` of `Hom(K(a^j), M)`.
///
/// A degree is stable when both transitions induce isomorphisms there and no summand of the
/// cochains is still waiting to be filled by a later stage.
pub fn local_cohomology(m: &FPModule, a: &Ideal, i: i64, window: (i64, i64), height: u32) -> Result<StabilizedResult> {
    if !(3..=crate::koszul::MAX_TOWER).contains(&height) {
        return Err(Error::Limit(format!("tower height must be in 3..={}", crate::koszul::MAX_TOWER)));
    }
    if **m.ring() != **a.ring() {
        return Err(Error::RingMismatch("module and ideal over different rings".into()));
    }
    let degrees = check_window(window)?;
    let seq = sequence(a)?;
    let ring = m.ring();
    let f = hom_map(&koszul_transition(ring, &seq, height, height - 1)?, m)?;
    let g = hom_map(&koszul_transition(ring, &seq, height - 1, height - 2)?, m)?;
    let shifts: Vec<i64> = match usize::try_from(i) {
        Ok(i) if i <= seq.len() => {
            subsets(seq.len(), i).iter().map(|s| s.iter().map(|&t| seq[t].degree().unwrap_or(0) as i64).sum()).collect()
        }
        _ => Vec::new(),
    };
    let cells: Vec<(usize, bool)> = degrees
        .par_iter()
        .map(|&d| {
            let im = induced_map(&f, -i, d)?;
            let stable = im.is_iso() && induced_map(&g, -i, d)?.is_iso() && in_reach(m, &shifts, d, height - 2)?;
            Ok((im.target_dim, stable))
        })
        .collect::<Result<_>>()?;
    Ok(StabilizedResult { degrees, dims: cells.iter().map(|c| c.0).collect(), stable: cells.iter().map(|c| c.1).collect(), height })
}

/// One degree of the comparison between `H^0 Hom(Tel_j, M)` and `M / (a_1^j..a_c^j) M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteCell {
    pub degree: i64,
    pub telescope: usize,
    pub truncation: usize,
    /// Least stage `j' > j` whose `H^{-1}` maps to zero in stage `j`, if one exists up to the precision cap.
    pub lim1_witness: Option<u32>,
}

impl RouteCell {
    pub fn agrees(&self) -> bool {
        self.telescope == self.truncation && self.lim1_witness.is_some()
    }
}

/// The telescope-Hom description of derived completion against direct truncation of `M`.
pub fn route_agreement(m: &FPModule, a: &Ideal, j: u32, window: (i64, i64)) -> Result<Vec<RouteCell>> {
    if j == 0 || j >= MAX_PRECISION {
        return Err(Error::Limit(format!("telescope stage must be in 1..{MAX_PRECISION}")));
    }
    let degrees = check_window(window)?;
    let seq = sequence(a)?;
    let ring = m.ring();
    let hom = hom_complex(telescope_stage(ring, &seq, j)?.complex(), m)?;
    let mut extra = Vec::new();
    for s in &seq {
        let p = ring.pow(s, j);
        for k in 0..m.rank() {
            let mut col = vec![ring.zero(); m.rank()];
            col[k] = p.clone();
            extra.push(col);
        }
    }
    let trunc = m.quotient(&extra)?;
    let dims = degrees
        .par_iter()
        .map(|&d| Ok((crate::homalg::strand::homology_dim(&hom, 0, d)?, Piece::new(&trunc, d)?.dim())))
        .collect::<Result<Vec<_>>>()?;
    // Deeper stages until every degree has a witness; the witness set only grows with j'.
    let mut witness: Vec<Option<u32>> = vec![None; degrees.len()];
    for w in j + 1..=MAX_PRECISION {
        let pending: Vec<usize> = (0..degrees.len()).filter(|&k| witness[k].is_none()).collect();
        if pending.is_empty() {
            break;
        }
        let incl = hom_map(&telescope_inclusion(ring, &seq, j, w)?, m)?;
        let zero = pending.par_iter().map(|&k| induced_map(&incl, 1, degrees[k]).map(|im| im.is_zero())).collect::<Result<Vec<_>>>()?;
        for (&k, z) in pending.iter().zip(zero) {
            if z {
                witness[k] = Some(w);
            }
        }
    }
    Ok(degrees
        .iter()
        .zip(dims)
        .zip(witness)
        .map(|((&degree, (telescope, truncation)), lim1_witness)| RouteCell { degree, telescope, truncation, lim1_witness })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::scalar::Field;
    use std::sync::Arc;

    fn qq(vars: &[&str]) -> Arc<Ring> {
        Ring::polynomial(Field::Rationals, vars).unwrap()
    }

    #[test]
    fn torsion_examples() {
        let r = qq(&["x"]);
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let m = FPModule::from_strs(&r, vec![0], &[&["x^2"]]).unwrap();
        let t = torsion_submodule(&m, &a).unwrap();
        assert_eq!(t.j, 2);
        assert_eq!(t.module.hilbert(0, 3).unwrap(), vec![1, 1, 0, 0]);
        let t = torsion_submodule(&FPModule::ring_module(&r), &a).unwrap();
        assert_eq!(t.j, 1);
        assert!(t.module.is_zero());

        let r2 = qq(&["x", "y"]);
        let a2 = Ideal::from_strs(&r2, &["x"]).unwrap();
        let m2 = FPModule::from_strs(&r2, vec![0], &[&["x^2*y"]]).unwrap();
        let t = torsion_submodule(&m2, &a2).unwrap();
        assert_eq!(t.j, 2);
        assert_eq!(t.generators, vec![vec![r2.parse("y").unwrap()]]);
        // (y)/(x^2 y): one class y x^a in each degree 1 + a for a = 0, 1
        assert_eq!(t.module.hilbert(0, 4).unwrap(), vec![0, 1, 2, 2, 2]);
    }

    #[test]
    fn completion_examples() {
        let r = qq(&["x"]);
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let c = complete(&FPModule::ring_module(&r), &a, 4).unwrap();
        assert_eq!(c.hilbert(0, 4).unwrap(), vec![1, 1, 1, 1, 0]);
        let m = FPModule::from_strs(&r, vec![0], &[&["x^2"]]).unwrap().direct_sum(&FPModule::ring_module(&r)).unwrap();
        assert_eq!(complete(&m, &a, 5).unwrap().hilbert(0, 5).unwrap(), vec![2, 2, 1, 1, 1, 0]);
        assert!(complete(&m, &a, 17).is_err());
    }

    #[test]
    fn local_cohomology_of_line() {
        let r = qq(&["x"]);
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let a_mod = FPModule::ring_module(&r);
        let h1 = local_cohomology(&a_mod, &a, 1, (-10, 10), 12).unwrap();
        assert!(h1.all_stable());
        for d in -10..=10 {
            assert_eq!(h1.dim(d).unwrap(), usize::from(d < 0), "d={d}");
        }
        let h0 = local_cohomology(&a_mod, &a, 0, (-10, 10), 12).unwrap();
        assert!(h0.dims.iter().all(|&v| v == 0));
    }

    #[test]
    fn route_agreement_on_free_and_torsion() {
        let r = qq(&["x"]);
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let m = FPModule::from_strs(&r, vec![0, 1], &[&["x^2", "0"]]).unwrap();
        for c in route_agreement(&m, &a, 4, (-3, 6)).unwrap() {
            assert!(c.agrees(), "{c:?}");
        }
    }
}
