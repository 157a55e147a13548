//! Both sides of `RHom(RΓ_a M, N) ≅ RHom(M, LΛ_a N)`, degree by degree.
//!
//! The left side is the limit over `j` of `Hom(K^∨(a^j) ⊗ F, N)`, the right side the limit
//! of `Hom(Tel_j ⊗ F, N)`, where `F` resolves `M`. Each cell is read from the top three
//! stages and accepted when both stage maps are isomorphisms there.

use rayon::prelude::*;

use super::{check_window, sequence, StabilizedResult, MAX_PRECISION};
use crate::error::{Error, Result};
use crate::homalg::strand::induced_map;
use crate::homalg::{free_resolution, hom_map, identity_map, tensor_map, ChainMap, FPModule};
use crate::koszul::{koszul_transition, telescope_inclusion};
use crate::report::{anchors, DimTable, Verdict, VerificationReport};
use crate::ring::Ideal;

/// Stage heights go up to the precision cap; junk from a finite stage `j` sits near degree
/// `j - c` minus the generator spread of the resolution.
pub const DEFAULT_GM_CAP: u32 = MAX_PRECISION;

pub struct DualitySides {
    pub left: Vec<StabilizedResult>,
    pub right: Vec<StabilizedResult>,
    /// The height `default_height` asks for on this input.
    pub reach: u32,
}

/// `upper` compares stages `J-1, J` and `lower` stages `J-2, J-1`; the value is read at `J`.
fn cells(upper: &ChainMap, lower: &ChainMap, i: i64, degrees: &[i64], height: u32) -> Result<StabilizedResult> {
    let out: Vec<(usize, bool)> = degrees
        .par_iter()
        .map(|&d| {
            let im = induced_map(upper, -i, d)?;
            let stable = im.is_iso() && induced_map(lower, -i, d)?.is_iso();
            Ok((im.source_dim, stable))
        })
        .collect::<Result<_>>()?;
    Ok(StabilizedResult {
        degrees: degrees.to_vec(),
        dims: out.iter().map(|c| c.0).collect(),
        stable: out.iter().map(|c| c.1).collect(),
        height,
    })
}

/// Default stage height: `hi + c + 2 + spread`, clamped to `3..=16`, where `spread` is how far
/// the generators of the resolution climb above those of `M`.
pub fn default_height(window: (i64, i64), c: usize, spread: i64) -> u32 {
    (window.1 + c as i64 + 2 + spread.max(0)).clamp(3, DEFAULT_GM_CAP as i64) as u32
}

pub fn gm_duality_sides(
    m: &FPModule,
    n: &FPModule,
    a: &Ideal,
    i_max: u32,
    window: (i64, i64),
    height: Option<u32>,
) -> Result<DualitySides> {
    if **m.ring() != **n.ring() || **m.ring() != **a.ring() {
        return Err(Error::RingMismatch("modules and ideal over different rings".into()));
    }
    if i_max > 6 {
        return Err(Error::Limit("cohomological index is limited to 6".into()));
    }
    let degrees = check_window(window)?;
    let seq = sequence(a)?;
    let c = seq.len();
    let ring = m.ring();
    let f = free_resolution(m, i_max as usize + 1 + c)?;
    let lowest = m.twists().iter().copied().min().unwrap_or(0);
    let spread = (f.lo()..=f.hi()).flat_map(|i| f.twists(i).iter().copied()).max().unwrap_or(lowest) - lowest;
    let reach = default_height(window, c, spread);
    let height = height.unwrap_or(reach);
    if !(3..=DEFAULT_GM_CAP).contains(&height) {
        return Err(Error::Limit(format!("stage height must be in 3..={DEFAULT_GM_CAP}")));
    }
    let id_f = identity_map(&f);
    let ring_mod = FPModule::ring_module(ring);

    let left_map = |j: u32| -> Result<ChainMap> {
        let dual_tr = hom_map(&koszul_transition(ring, &seq, j, j - 1)?, &ring_mod)?;
        hom_map(&tensor_map(&dual_tr, &id_f)?, n)
    };
    let right_map = |j: u32| -> Result<ChainMap> {
        let tel = telescope_inclusion(ring, &seq, j - 1, j)?;
        hom_map(&tensor_map(&tel, &id_f)?, n)
    };
    let (lu, ll) = (left_map(height)?, left_map(height - 1)?);
    let (ru, rl) = (right_map(height)?, right_map(height - 1)?);

    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..=i_max as i64 {
        left.push(cells(&lu, &ll, i, &degrees, height)?);
        right.push(cells(&ru, &rl, i, &degrees, height)?);
    }
    Ok(DualitySides { left, right, reach })
}

pub fn gm_duality_check(
    m: &FPModule,
    n: &FPModule,
    a: &Ideal,
    i_max: u32,
    window: (i64, i64),
    height: Option<u32>,
) -> Result<VerificationReport> {
    let sides = gm_duality_sides(m, n, a, i_max, window, height)?;
    let ring = m.ring();
    let mut rep = VerificationReport::new("gm-duality", anchors::GM_DUALITY)
        .input("ring", ring.to_string())
        .input("M", m.to_string())
        .input("N", n.to_string())
        .input("a", a.format().join(", "))
        .input("i_max", i_max)
        .input("window", format!("{}..{}", window.0, window.1))
        .input("height", sides.left.first().map_or(0, |s| s.height));
    for (i, (l, r)) in sides.left.iter().zip(&sides.right).enumerate() {
        let mut t = DimTable::new(&format!("Ext^{i}"), "degree", l.degrees.clone());
        t.push("RHom(RΓ_a M, N)", l.cells());
        t.push("RHom(M, LΛ_a N)", r.cells());
        for (k, d) in l.degrees.iter().enumerate() {
            match (l.stable[k], r.stable[k]) {
                (true, true) if l.dims[k] != r.dims[k] => {
                    rep.flag(format!("Ext^{i} degree {d}: {} vs {}", l.dims[k], r.dims[k]));
                    rep.downgrade(Verdict::Fail);
                }
                (true, true) => {}
                _ => {
                    rep.flag(format!("Ext^{i} degree {d}: unstable"));
                    rep.downgrade(Verdict::Inconclusive);
                }
            }
        }
        rep.tables.push(t);
    }
    let height = sides.left.first().map_or(0, |s| s.height);
    if height < sides.reach {
        rep.flag(format!("stage height {height} is below the reach estimate {}", sides.reach));
        rep.downgrade(Verdict::Inconclusive);
    }
    Ok(rep)
}
