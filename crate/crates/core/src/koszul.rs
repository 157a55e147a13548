//! Koszul complexes, their towers on powers of a sequence, and telescope stages.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::{hom_complex, tensor, tensor_map, ChainComplex, ChainMap, FPModule, Matrix};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingMap};

pub const MAX_SEQUENCE: usize = 6;
pub const MAX_TOWER: u32 = 12;

/// Degree of a sequence element; zero for constants and for zero.
fn elem_degree(p: &Polynomial) -> i64 {
    p.degree().unwrap_or(0) as i64
}

/// All `i`-subsets of `0..c`, in lexicographic order.
pub fn subsets(c: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, c: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for s in start..c {
            cur.push(s);
            rec(s + 1, c, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, c, i, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex `K(a_1..a_c)` in homological degrees `0..=c`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    seq: Vec<Polynomial>,
    complex: ChainComplex,
}

impl KoszulComplex {
    pub fn sequence(&self) -> &[Polynomial] {
        &self.seq
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn into_complex(self) -> ChainComplex {
        self.complex
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }
}

fn check_sequence(ring: &Ring, seq: &[Polynomial]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::InvalidArgument("the sequence must be nonempty".into()));
    }
    if seq.len() > MAX_SEQUENCE {
        return Err(Error::Limit(format!("sequences are limited to {MAX_SEQUENCE} elements")));
    }
    for a in seq {
        ring.check(a)?;
    }
    Ok(())
}

/// `e_S -> Σ_t (-1)^t a_{S_t} e_{S \ S_t}`, with `deg e_S = Σ_{s in S} deg a_s`.
pub fn koszul(ring: &Arc<Ring>, seq: &[Polynomial]) -> Result<KoszulComplex> {
    check_sequence(ring, seq)?;
    let seq: Vec<Polynomial> = seq.iter().map(|a| ring.reduce(a)).collect();
    let c = seq.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=c).map(|i| subsets(c, i)).collect();
    let twists: Vec<Vec<i64>> = bases.iter().map(|b| b.iter().map(|s| s.iter().map(|&t| elem_degree(&seq[t])).sum()).collect()).collect();
    let mut diffs = Vec::new();
    for i in 1..=c {
        let tgt_index: BTreeMap<&Vec<usize>, usize> = bases[i - 1].iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut m = Matrix::zero(ring, bases[i - 1].len(), bases[i].len());
        for (col, s) in bases[i].iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                rest.remove(t);
                let row = tgt_index[&rest];
                let a = &seq[s[t]];
                m.set(row, col, if t % 2 == 0 { a.clone() } else { a.neg() });
            }
        }
        diffs.push(m);
    }
    let complex = ChainComplex::free(ring, 0, twists, diffs)?;
    Ok(KoszulComplex { seq, complex })
}

/// `K(a_1^j..a_c^j)`.
pub fn koszul_power(ring: &Arc<Ring>, seq: &[Polynomial], j: u32) -> Result<KoszulComplex> {
    let pw: Vec<Polynomial> = seq.iter().map(|a| ring.pow(a, j)).collect();
    koszul(ring, &pw)
}

/// The dual Koszul complex `Hom(K(a^j), A)` in cohomological degrees `0..=c`.
pub fn dual_koszul(ring: &Arc<Ring>, seq: &[Polynomial], j: u32) -> Result<ChainComplex> {
    let k = koszul_power(ring, seq, j)?;
    hom_complex(k.complex(), &FPModule::ring_module(ring))
}

/// The transition `K(a^{j2}) -> K(a^{j1})` for `j2 >= j1`: `e_S -> Π_{s in S} a_s^{j2-j1} e_S`.
pub fn koszul_transition(ring: &Arc<Ring>, seq: &[Polynomial], j2: u32, j1: u32) -> Result<ChainMap> {
    if j2 < j1 {
        return Err(Error::InvalidArgument("transitions go from higher to lower powers".into()));
    }
    let src = koszul_power(ring, seq, j2)?;
    let tgt = koszul_power(ring, seq, j1)?;
    let c = seq.len();
    let e = j2 - j1;
    let powers: Vec<Polynomial> = seq.iter().map(|a| ring.pow(a, e)).collect();
    let mut maps = BTreeMap::new();
    for i in 0..=c {
        let entries = subsets(c, i).iter().map(|s| s.iter().fold(ring.one(), |acc, &t| ring.mul(&acc, &powers[t]))).collect();
        maps.insert(i as i64, Matrix::diagonal(ring, entries));
    }
    ChainMap::new(src.complex, tgt.complex, maps)
}

/// Koszul complexes on `a^1..a^J` with their transition maps.
#[derive(Clone, Debug)]
pub struct KoszulTower {
    ring: Arc<Ring>,
    seq: Vec<Polynomial>,
    stages: Vec<KoszulComplex>,
}

impl KoszulTower {
    pub fn height(&self) -> u32 {
        self.stages.len() as u32
    }

    /// `K(a^j)`, for `1 <= j <= J`.
    pub fn stage(&self, j: u32) -> &KoszulComplex {
        &self.stages[(j - 1) as usize]
    }

    pub fn transition(&self, j2: u32, j1: u32) -> Result<ChainMap> {
        koszul_transition(&self.ring, &self.seq, j2, j1)
    }

    /// `trans(j3 -> j1) = trans(j2 -> j1) ∘ trans(j3 -> j2)` for every `j1 <= j2 <= j3 <= J`.
    pub fn check_functoriality(&self) -> Result<bool> {
        let jj = self.height();
        for j3 in 1..=jj {
            for j2 in 1..=j3 {
                for j1 in 1..=j2 {
                    let direct = self.transition(j3, j1)?;
                    let composed = self.transition(j3, j2)?.then(&self.transition(j2, j1)?)?;
                    if !direct.equals(&composed) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn tower(ring: &Arc<Ring>, seq: &[Polynomial], height: u32) -> Result<KoszulTower> {
    if height == 0 || height > MAX_TOWER {
        return Err(Error::Limit(format!("tower height must be in 1..={MAX_TOWER}")));
    }
    check_sequence(ring, seq)?;
    let stages = (1..=height).map(|j| koszul_power(ring, seq, j)).collect::<Result<Vec<_>>>()?;
    Ok(KoszulTower { ring: ring.clone(), seq: seq.to_vec(), stages })
}

/// Stage `j` of the telescope on one element `a`, in homological degrees `0` and `-1`.
///
/// Generators `δ_0..δ_j` in degree 0 and `δ'_0..δ'_j` in degree `-1`, with
/// `d δ_0 = δ'_0` and `d δ_i = δ'_{i-1} - a δ'_i`. Internal degrees:
/// `δ'_i` sits in `-i·deg a`, `δ_0` in 0, `δ_i` in `-(i-1)·deg a`.
pub fn telescope_single(ring: &Arc<Ring>, a: &Polynomial, j: u32) -> Result<ChainComplex> {
    if j == 0 {
        return Err(Error::InvalidArgument("telescope stages start at 1".into()));
    }
    let e = elem_degree(a);
    let n = j as usize + 1;
    let tw_prime: Vec<i64> = (0..n as i64).map(|i| -i * e).collect();
    let tw: Vec<i64> = (0..n as i64).map(|i| if i == 0 { 0 } else { -(i - 1) * e }).collect();
    let mut d = Matrix::zero(ring, n, n);
    d.set(0, 0, ring.one());
    for i in 1..n {
        d.set(i - 1, i, ring.one());
        d.set(i, i, ring.reduce(&a.neg()));
    }
    ChainComplex::free(ring, -1, vec![tw_prime, tw], vec![d])
}

/// Inclusion of stage `j1` into stage `j2` of a one-element telescope.
pub fn telescope_single_inclusion(ring: &Arc<Ring>, a: &Polynomial, j1: u32, j2: u32) -> Result<ChainMap> {
    let src = telescope_single(ring, a, j1)?;
    let tgt = telescope_single(ring, a, j2)?;
    let mut maps = BTreeMap::new();
    for i in [-1i64, 0] {
        let mut m = Matrix::zero(ring, j2 as usize + 1, j1 as usize + 1);
        for k in 0..=j1 as usize {
            m.set(k, k, ring.one());
        }
        maps.insert(i, m);
    }
    ChainMap::new(src, tgt, maps)
}

/// Stage `j` of `Tel(A; a_1..a_c)`, the tensor product of one-element stages.
#[derive(Clone, Debug)]
pub struct TelescopeStage {
    seq: Vec<Polynomial>,
    j: u32,
    complex: ChainComplex,
}

impl TelescopeStage {
    pub fn stage(&self) -> u32 {
        self.j
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.seq
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }
}

pub fn telescope_stage(ring: &Arc<Ring>, seq: &[Polynomial], j: u32) -> Result<TelescopeStage> {
    check_sequence(ring, seq)?;
    let mut acc = telescope_single(ring, &seq[0], j)?;
    for a in &seq[1..] {
        acc = tensor(&acc, &telescope_single(ring, a, j)?)?;
    }
    Ok(TelescopeStage { seq: seq.to_vec(), j, complex: acc })
}

/// The stage map `Tel_{j1} -> Tel_{j2}` for `j1 <= j2`.
pub fn telescope_inclusion(ring: &Arc<Ring>, seq: &[Polynomial], j1: u32, j2: u32) -> Result<ChainMap> {
    check_sequence(ring, seq)?;
    if j1 > j2 {
        return Err(Error::InvalidArgument("stage maps go from lower to higher stages".into()));
    }
    let mut acc = telescope_single_inclusion(ring, &seq[0], j1, j2)?;
    for a in &seq[1..] {
        acc = tensor_map(&acc, &telescope_single_inclusion(ring, a, j1, j2)?)?;
    }
    Ok(acc)
}

/// Outcome of a base-change comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    pub koszul: bool,
    pub telescope: bool,
}

impl BaseChange {
    pub fn passed(&self) -> bool {
        self.koszul && self.telescope
    }
}

fn pushed_equal(phi: &RingMap, a: &ChainComplex, b: &ChainComplex) -> Result<bool> {
    if a.lo() != b.lo() || a.hi() != b.hi() {
        return Ok(false);
    }
    for i in a.lo() + 1..=a.hi() {
        let (da, db) = (a.d(i).unwrap(), b.d(i).unwrap());
        if da.nrows() != db.nrows() || da.ncols() != db.ncols() {
            return Ok(false);
        }
        for (ca, cb) in da.columns().iter().zip(db.columns()) {
            for (x, y) in ca.iter().zip(cb) {
                if phi.apply(x)? != *y {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Compares `K(A; a) ⊗_A B` with `K(B; φ(a))`, and the same for telescope stage `j`,
/// entrywise after normal form.
pub fn base_change_check(phi: &RingMap, seq: &[Polynomial], j: u32) -> Result<BaseChange> {
    let (ra, rb) = (phi.source(), phi.target());
    let pushed: Vec<Polynomial> = seq.iter().map(|a| phi.apply(a)).collect::<Result<_>>()?;
    let ka = koszul(ra, seq)?;
    let kb = koszul(rb, &pushed)?;
    let ta = telescope_stage(ra, seq, j)?;
    let tb = telescope_stage(rb, &pushed, j)?;
    Ok(BaseChange { koszul: pushed_equal(phi, ka.complex(), kb.complex())?, telescope: pushed_equal(phi, ta.complex(), tb.complex())? })
}
