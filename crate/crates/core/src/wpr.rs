//! Pro-zero certificates for Koszul homology towers on powers of a sequence.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::homalg::{boundary_basis, Homology};
use crate::koszul::{koszul_power, koszul_transition, MAX_SEQUENCE, MAX_TOWER};
use crate::poly::Polynomial;
use crate::report::{anchors, Cell, DimTable, Verdict, VerificationReport};
use crate::ring::Ring;

/// Witnesses are searched up to `J + WITNESS_SLACK`.
pub const WITNESS_SLACK: u32 = 4;

/// One `(i, j)` cell: the least `j' >= j` whose transition kills `H_i(K(a^j'))` in `H_i(K(a^j))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub i: usize,
    pub j: u32,
    pub witness: Option<u32>,
    /// Component `i` of the witnessing transition, rows of formatted entries.
    pub map: Vec<Vec<String>>,
    /// Generators of `H_i(K(a^{j'}))` that were checked, as formatted columns.
    pub classes: Vec<Vec<String>>,
    /// Classes of `H_i(K(a^{J_max}))` with nonzero image, when no witness exists.
    pub failing: Vec<Vec<String>>,
}

impl WitnessEntry {
    pub fn offset(&self) -> Option<u32> {
        self.witness.map(|w| w - self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProZeroCertificate {
    pub ring: String,
    pub sequence: Vec<String>,
    pub height: u32,
    pub max_witness: u32,
    pub entries: Vec<WitnessEntry>,
}

impl ProZeroCertificate {
    pub fn certified(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }

    pub fn entry(&self, i: usize, j: u32) -> Option<&WitnessEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }

    pub fn max_offset(&self) -> Option<u32> {
        self.entries.iter().filter_map(|e| e.offset()).max()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Homology of every stage and boundary bases of the targets, computed once.
struct TowerCache {
    ring: Arc<Ring>,
    seq: Vec<Polynomial>,
    homology: HashMap<(usize, u32), Homology>,
    boundaries: HashMap<(usize, u32), GroebnerBasis>,
}

impl TowerCache {
    fn build(ring: &Arc<Ring>, seq: &[Polynomial], height: u32, max: u32) -> Result<TowerCache> {
        let c = seq.len();
        let cells: Vec<(usize, u32)> = (1..=c).flat_map(|i| (1..=max).map(move |j| (i, j))).collect();
        let computed: Vec<((usize, u32), Homology, Option<GroebnerBasis>)> = cells
            .par_iter()
            .map(|&(i, j)| {
                let k = koszul_power(ring, seq, j)?;
                let h = k.complex().homology(i as i64)?;
                let b = if j <= height { Some(boundary_basis(k.complex(), i as i64)?) } else { None };
                Ok(((i, j), h, b))
            })
            .collect::<Result<_>>()?;
        let mut homology = HashMap::new();
        let mut boundaries = HashMap::new();
        for (key, h, b) in computed {
            homology.insert(key, h);
            if let Some(b) = b {
                boundaries.insert(key, b);
            }
        }
        Ok(TowerCache { ring: ring.clone(), seq: seq.to_vec(), homology, boundaries })
    }

    /// Classes of `H_i` at stage `j2` whose image at stage `j1` is nonzero.
    fn surviving(&self, i: usize, j2: u32, j1: u32) -> Result<Vec<Vec<Polynomial>>> {
        let h = &self.homology[&(i, j2)];
        if h.module.is_zero() {
            return Ok(Vec::new());
        }
        let f = koszul_transition(&self.ring, &self.seq, j2, j1)?.component(i as i64);
        let gb = &self.boundaries[&(i, j1)];
        let mut out = Vec::new();
        for z in &h.cycles {
            if !gb.contains(&f.apply(&self.ring, z))? {
                out.push(z.clone());
            }
        }
        Ok(out)
    }
}

fn format_cols(ring: &Ring, cols: &[Vec<Polynomial>]) -> Vec<Vec<String>> {
    cols.iter().map(|c| c.iter().map(|p| ring.format(p)).collect()).collect()
}

pub fn wpr_certify(ring: &Arc<Ring>, seq: &[Polynomial], height: u32) -> Result<ProZeroCertificate> {
    if height == 0 || height > MAX_TOWER {
        return Err(Error::Limit(format!("tower height must be in 1..={MAX_TOWER}")));
    }
    if seq.is_empty() || seq.len() > MAX_SEQUENCE {
        return Err(Error::InvalidArgument(format!("sequences need 1..={MAX_SEQUENCE} elements")));
    }
    let max = height + WITNESS_SLACK;
    let cache = TowerCache::build(ring, seq, height, max)?;
    let cells: Vec<(usize, u32)> = (1..=seq.len()).flat_map(|i| (1..=height).map(move |j| (i, j))).collect();
    let entries = cells
        .par_iter()
        .map(|&(i, j)| {
            for w in j..=max {
                if cache.surviving(i, w, j)?.is_empty() {
                    let f = koszul_transition(ring, seq, w, j)?.component(i as i64);
                    let rows = (0..f.nrows()).map(|r| (0..f.ncols()).map(|c| ring.format(f.entry(r, c))).collect()).collect();
                    return Ok(WitnessEntry {
                        i,
                        j,
                        witness: Some(w),
                        map: rows,
                        classes: format_cols(ring, &cache.homology[&(i, w)].cycles),
                        failing: Vec::new(),
                    });
                }
            }
            Ok(WitnessEntry {
                i,
                j,
                witness: None,
                map: Vec::new(),
                classes: format_cols(ring, &cache.homology[&(i, max)].cycles),
                failing: format_cols(ring, &cache.surviving(i, max, j)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProZeroCertificate {
        ring: ring.to_string(),
        sequence: seq.iter().map(|p| ring.format(p)).collect(),
        height,
        max_witness: max,
        entries,
    })
}

/// Recomputes every witness from scratch with `ChainMap::induces_zero`.
pub fn reverify(ring: &Arc<Ring>, seq: &[Polynomial], cert: &ProZeroCertificate) -> Result<bool> {
    let ok = cert
        .entries
        .par_iter()
        .filter_map(|e| e.witness.map(|w| (e.i, e.j, w)))
        .map(|(i, j, w)| koszul_transition(ring, seq, w, j)?.induces_zero(i as i64))
        .collect::<Result<Vec<bool>>>()?;
    Ok(ok.into_iter().all(|b| b))
}

/// Samples certified cells and checks that deeper stages also witness them.
pub fn check_monotonicity(ring: &Arc<Ring>, seq: &[Polynomial], cert: &ProZeroCertificate, seed: u64, samples: usize) -> Result<bool> {
    let certified: Vec<&WitnessEntry> = cert.entries.iter().filter(|e| e.witness.is_some()).collect();
    if certified.is_empty() {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let e = certified[rng.gen_range(0..certified.len())];
        let w = e.witness.unwrap();
        let deeper = rng.gen_range(w..=cert.max_witness);
        if !koszul_transition(ring, seq, deeper, e.j)?.induces_zero(e.i as i64)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certificate, re-verification and sampled monotonicity as a report. Offsets are tabulated
/// per homological index; `expected_offset` pins every offset when given.
pub fn wpr_report(
    ring: &Arc<Ring>,
    seq: &[Polynomial],
    height: u32,
    seed: u64,
    expected_offset: Option<u32>,
) -> Result<(VerificationReport, ProZeroCertificate)> {
    let cert = wpr_certify(ring, seq, height)?;
    let mut rep = VerificationReport::new("wpr", anchors::WPR)
        .input("ring", ring.to_string())
        .input("sequence", cert.sequence.join(", "))
        .input("J", height);
    rep.seed = Some(seed);
    let columns: Vec<i64> = (1..=height as i64).collect();
    for i in 1..=seq.len() {
        let mut t = DimTable::new(&format!("witness offset on H_{i}"), "j", columns.clone());
        let cells = (1..=height)
            .map(|j| match cert.entry(i, j).and_then(|e| e.offset()) {
                Some(o) => Cell::stable(o as usize),
                None => Cell::missing(),
            })
            .collect();
        t.push("j' - j", cells);
        rep.tables.push(t);
    }
    if !cert.certified() {
        rep.flag(format!("not certified within j' <= {}", cert.max_witness));
        rep.downgrade(Verdict::Inconclusive);
    }
    if let Some(o) = expected_offset {
        for e in &cert.entries {
            if e.witness.is_some() && e.offset() != Some(o) {
                rep.flag(format!("H_{} at j = {}: offset {:?}, expected {o}", e.i, e.j, e.offset()));
                rep.downgrade(Verdict::Fail);
            }
        }
    }
    if !reverify(ring, seq, &cert)? {
        rep.flag("a witness failed re-verification");
        rep.downgrade(Verdict::Fail);
    }
    if !check_monotonicity(ring, seq, &cert, seed, 8)? {
        rep.flag("monotonicity sample failed");
        rep.downgrade(Verdict::Fail);
    }
    Ok((rep, cert))
}
