//! Hochschild cohomology of polynomial rings with bimodule coefficients, through the
//! Koszul resolution of the diagonal, and its completed counterpart at finite precision.

pub mod truncated;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::{hom_complex, ChainComplex, FPModule, Matrix};
use crate::koszul::{koszul, subsets, KoszulComplex};
use crate::poly::Polynomial;
use crate::report::{anchors, Cell, DimTable, Verdict, VerificationReport};
use crate::ring::{Ideal, Ring, RingMap};
use crate::scalar::Field;
use crate::torcomp::{complete, MAX_PRECISION};

pub const MAX_BASE_VARS: usize = 3;
pub const DEFAULT_GUARD: u32 = 2;

/// A bimodule is a module over the enveloping ring.
pub type Bimodule = FPModule;

/// `A^e = A ⊗_k A` for a polynomial ring `A`, with its two embeddings and the
/// multiplication map onto `A`.
#[derive(Clone, Debug)]
pub struct EnvelopingRing {
    base: Arc<Ring>,
    env: Arc<Ring>,
    left: RingMap,
    right: RingMap,
    mu: RingMap,
    diagonal: Vec<Polynomial>,
    resolution: KoszulComplex,
}

/// Name of the right-hand copy of a variable: a leading `x` becomes `y`, otherwise `_r` is appended.
fn right_name(v: &str) -> String {
    match v.strip_prefix('x') {
        Some(rest) => format!("y{rest}"),
        None => format!("{v}_r"),
    }
}

impl EnvelopingRing {
    pub fn new(base: &Arc<Ring>) -> Result<EnvelopingRing> {
        if !base.is_polynomial_ring() {
            return Err(Error::InvalidArgument("the enveloping ring needs a polynomial ring without relations".into()));
        }
        let n = base.nvars();
        if n == 0 || n > MAX_BASE_VARS {
            return Err(Error::Limit(format!("enveloping rings need 1..={MAX_BASE_VARS} base variables")));
        }
        let mut names: Vec<String> = base.var_names().to_vec();
        names.extend(base.var_names().iter().map(|v| right_name(v)));
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let env = Ring::with_order(base.field(), &refs, base.order())?;
        let left = RingMap::new(base, &env, (0..n).map(|i| env.var(i)).collect())?;
        let right = RingMap::new(base, &env, (0..n).map(|i| env.var(n + i)).collect())?;
        let mu = RingMap::new(&env, base, (0..2 * n).map(|i| base.var(i % n)).collect())?;
        let diagonal: Vec<Polynomial> = (0..n).map(|i| env.sub(&env.var(i), &env.var(n + i))).collect();
        let resolution = koszul(&env, &diagonal)?;
        for i in 1..=n as i64 {
            if !resolution.complex().homology(i)?.module.is_zero() {
                return Err(Error::InvalidArgument(format!("diagonal sequence has Koszul homology in degree {i}")));
            }
        }
        Ok(EnvelopingRing { base: base.clone(), env, left, right, mu, diagonal, resolution })
    }

    /// `k[x]` or `k[x1..xn]` and its enveloping ring.
    pub fn standard(field: Field, n: usize) -> Result<EnvelopingRing> {
        if n == 0 || n > MAX_BASE_VARS {
            return Err(Error::Limit(format!("enveloping rings need 1..={MAX_BASE_VARS} base variables")));
        }
        let names: Vec<String> = if n == 1 { vec!["x".into()] } else { (1..=n).map(|i| format!("x{i}")).collect() };
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        EnvelopingRing::new(&Ring::polynomial(field, &refs)?)
    }

    pub fn base(&self) -> &Arc<Ring> {
        &self.base
    }

    pub fn env(&self) -> &Arc<Ring> {
        &self.env
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn left(&self) -> &RingMap {
        &self.left
    }

    pub fn right(&self) -> &RingMap {
        &self.right
    }

    pub fn mu(&self) -> &RingMap {
        &self.mu
    }

    /// `s_i = x_i - y_i`.
    pub fn diagonal(&self) -> &[Polynomial] {
        &self.diagonal
    }

    /// The Koszul complex on the diagonal sequence, a free resolution of `A` over `A^e`.
    pub fn resolution(&self) -> &KoszulComplex {
        &self.resolution
    }

    /// `A` as a bimodule: `A^e / (s_1..s_n)`.
    pub fn diagonal_bimodule(&self) -> Bimodule {
        FPModule::cyclic(&self.env, &self.diagonal).expect("diagonal generators live in the enveloping ring")
    }

    pub fn free_bimodule(&self) -> Bimodule {
        FPModule::ring_module(&self.env)
    }

    fn push(&self, phi: &RingMap, a: &Ideal) -> Result<Ideal> {
        if **a.ring() != *self.base {
            return Err(Error::RingMismatch("ideal is not over the base ring".into()));
        }
        let gens = a.generators().iter().map(|g| phi.apply(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.env, gens)
    }

    /// `a ⊗ A`.
    pub fn left_ideal(&self, a: &Ideal) -> Result<Ideal> {
        self.push(&self.left, a)
    }

    /// `A ⊗ a`.
    pub fn right_ideal(&self, a: &Ideal) -> Result<Ideal> {
        self.push(&self.right, a)
    }

    /// `I = a⊗A + A⊗a`.
    pub fn extended_ideal(&self, a: &Ideal) -> Result<Ideal> {
        self.left_ideal(a)?.sum(&self.right_ideal(a)?)
    }

    fn check_bimodule(&self, m: &Bimodule) -> Result<()> {
        if **m.ring() != *self.env {
            return Err(Error::RingMismatch("bimodule is not over the enveloping ring".into()));
        }
        if !m.is_homogeneous() {
            return Err(Error::NotHomogeneous("bimodule presentation".into()));
        }
        Ok(())
    }
}

/// Restricts a module killed by every `s_i` to the base ring along `μ`.
fn descend(e: &EnvelopingRing, h: &FPModule) -> Result<FPModule> {
    if h.rank() == 0 {
        return Ok(FPModule::zero(&e.base));
    }
    for s in &e.diagonal {
        for k in 0..h.rank() {
            let mut col = vec![e.env.zero(); h.rank()];
            col[k] = s.clone();
            if !h.is_zero_element(&col)? {
                return Err(Error::InvalidArgument("the diagonal does not act by zero".into()));
            }
        }
    }
    Ok(h.change_ring(&e.mu)?.prune())
}

/// `Ext^i_{A^e}(A, M)` as an `A`-module.
pub fn hochschild_cohomology(e: &EnvelopingRing, m: &Bimodule, i: usize) -> Result<FPModule> {
    e.check_bimodule(m)?;
    if i > e.nvars() {
        return Ok(FPModule::zero(&e.base));
    }
    let c = hom_complex(e.resolution.complex(), m)?;
    let h = c.cohomology(i as i64)?.module;
    descend(e, &h)
}

/// `HH^0` as the elements killed by every `s_i`, and `HH^1` as derivations modulo inner
/// ones: `v ∈ M^n` with `s_i v_j = s_j v_i`, modulo `(s_1 m, …, s_n m)`.
pub fn hh01_direct(e: &EnvelopingRing, m: &Bimodule) -> Result<(FPModule, FPModule)> {
    e.check_bimodule(m)?;
    let ring = &e.env;
    let n = e.nvars();
    let r = m.rank();
    let s = &e.diagonal;
    // inner: M -> M^n
    let mut inner = Matrix::zero(ring, n * r, r);
    for (t, st) in s.iter().enumerate() {
        for k in 0..r {
            inner.set(t * r + k, k, st.clone());
        }
    }
    // derivation constraint: M^n -> M^{pairs}, (v) -> (s_i v_j - s_j v_i)_{i<j}
    let pairs = subsets(n, 2);
    let mut constraint = Matrix::zero(ring, pairs.len() * r, n * r);
    for (p, ij) in pairs.iter().enumerate() {
        let (i, j) = (ij[0], ij[1]);
        for k in 0..r {
            constraint.set(p * r + k, j * r + k, s[i].clone());
            constraint.set(p * r + k, i * r + k, s[j].neg());
        }
    }
    let one = m.blocks(&vec![-1; n]);
    let two = m.blocks(&vec![-2; pairs.len()]);
    let mut terms = vec![m.clone(), one, two];
    let mut diffs = vec![inner, constraint];
    if pairs.is_empty() {
        terms.pop();
        diffs.pop();
    }
    terms.reverse();
    diffs.reverse();
    let lo = -(terms.len() as i64 - 1);
    let c = ChainComplex::new(ring, lo, terms, diffs)?;
    let h0 = descend(e, &c.cohomology(0)?.module)?;
    let h1 = descend(e, &c.cohomology(1)?.module)?;
    Ok((h0, h1))
}

/// Lowest internal degree of `Hom(K_i, M)`: minimal generator degree of `M` minus `i`.
pub fn base_degree(m: &Bimodule, i: usize) -> i64 {
    m.twists().iter().copied().min().unwrap_or(0) - i as i64
}

/// Completed side of the main theorem: per level `ℓ < N`, the dimension in internal degree
/// `base_degree + ℓ` of Koszul cohomology on `M / I^{N+g} M`, flagged stable when the
/// guard `g + 1` gives the same value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedTable {
    pub degrees: Vec<i64>,
    pub guard: Vec<usize>,
    pub deeper: Vec<usize>,
}

impl CompletedTable {
    pub fn cells(&self) -> Vec<Cell> {
        self.guard.iter().zip(&self.deeper).map(|(&a, &b)| if a == b { Cell::stable(a) } else { Cell::unstable(a) }).collect()
    }

    pub fn is_stable(&self) -> bool {
        self.guard == self.deeper
    }
}

pub fn completed_hochschild(e: &EnvelopingRing, a: &Ideal, m: &Bimodule, i: usize, n: u32, guard: u32) -> Result<CompletedTable> {
    e.check_bimodule(m)?;
    if n == 0 || n + guard + 1 > MAX_PRECISION + 1 || n + guard > MAX_PRECISION {
        return Err(Error::Limit(format!("precision plus guard must be at most {MAX_PRECISION}")));
    }
    if !a.is_homogeneous() {
        return Err(Error::NotHomogeneous("the ideal a".into()));
    }
    let delta = base_degree(m, i);
    let degrees: Vec<i64> = (0..n as i64).map(|l| delta + l).collect();
    let first = truncated::truncated_dims(e, m, a, i, n + guard, &degrees)?;
    let second = truncated::truncated_dims(e, m, a, i, n + guard + 1, &degrees)?;
    Ok(CompletedTable { degrees, guard: first, deeper: second })
}

pub fn main_theorem_check(e: &EnvelopingRing, a: &Ideal, m: &Bimodule, i: usize, n: u32) -> Result<VerificationReport> {
    main_theorem_check_with_guard(e, a, m, i, n, DEFAULT_GUARD)
}

pub fn main_theorem_check_with_guard(
    e: &EnvelopingRing,
    a: &Ideal,
    m: &Bimodule,
    i: usize,
    n: u32,
    guard: u32,
) -> Result<VerificationReport> {
    let (left, right) = rayon::join(
        || -> Result<Vec<usize>> {
            let h = hochschild_cohomology(e, m, i)?;
            let delta = base_degree(m, i);
            if h.rank() == 0 {
                return Ok(vec![0; n as usize]);
            }
            let ha = Ideal::new(h.ring(), a.generators().to_vec())?;
            let c = complete(&h, &ha, n)?;
            (0..n as i64).map(|l| c.graded_dim(delta + l)).collect()
        },
        || completed_hochschild(e, a, m, i, n, guard),
    );
    let (left, right) = (left?, right?);
    let mut rep = VerificationReport::new("main-theorem", anchors::MAIN_THEOREM)
        .input("ring", e.base.to_string())
        .input("a", a.format().join(", "))
        .input("M", m.to_string())
        .input("i", i)
        .input("N", n)
        .input("guard", guard);
    let mut t = DimTable::new(&format!("Ext^{i} by internal degree"), "degree", right.degrees.clone());
    t.push("completion of Ext over A^e", left.iter().map(|&v| Cell::stable(v)).collect());
    t.push("Ext over completed A^e", right.cells());
    for (k, d) in right.degrees.iter().enumerate() {
        if right.guard[k] != right.deeper[k] {
            rep.flag(format!("degree {d}: guard {} gives {}, guard {} gives {}", guard, right.guard[k], guard + 1, right.deeper[k]));
            rep.downgrade(Verdict::Inconclusive);
        } else if right.guard[k] != left[k] {
            rep.flag(format!("degree {d}: {} vs {}", left[k], right.guard[k]));
            rep.downgrade(Verdict::Fail);
        }
    }
    rep.note(format!("level ℓ is internal degree {} + ℓ", base_degree(m, i)));
    rep.tables.push(t);
    Ok(rep)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Completed `HH^i` of `k[x_1..x_n]` with coefficients in itself against `∧^i` of a free
/// module of rank `n` over the power series ring, level by level.
pub fn hkr_check(field: Field, nvars: usize, i: usize, n: u32) -> Result<VerificationReport> {
    if n == 0 || n > 8 {
        return Err(Error::Limit("HKR precision must be in 1..=8".into()));
    }
    let e = EnvelopingRing::standard(field, nvars)?;
    let a = Ideal::new(e.base(), (0..nvars).map(|k| e.base().var(k)).collect())?;
    let m = e.diagonal_bimodule();
    let got = completed_hochschild(&e, &a, &m, i, n, DEFAULT_GUARD)?;
    let expected: Vec<usize> = (0..n as usize).map(|l| binomial(nvars, i) * binomial(l + nvars - 1, nvars - 1)).collect();
    let mut rep = VerificationReport::new("hkr", anchors::HKR).input("field", field).input("n", nvars).input("i", i).input("N", n);
    let levels: Vec<i64> = (0..n as i64).collect();
    let mut t = DimTable::new(&format!("completed HH^{i}"), "level", levels);
    t.push("computed", got.cells());
    t.push("rank C(n,i) free module", expected.iter().map(|&v| Cell::stable(v)).collect());
    for (l, &want) in expected.iter().enumerate().take(n as usize) {
        if got.guard[l] != got.deeper[l] {
            rep.flag(format!("level {l}: guard-unstable"));
            rep.downgrade(Verdict::Inconclusive);
        } else if got.guard[l] != want {
            rep.flag(format!("level {l}: {} vs {want}", got.guard[l]));
            rep.downgrade(Verdict::Fail);
        }
    }
    rep.note(format!("rank {}", binomial(nvars, i)));
    rep.tables.push(t);
    Ok(rep)
}
