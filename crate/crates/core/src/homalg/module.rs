use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{kernel_mod, GroebnerBasis, ModTerm, ModuleOrder, Vector};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingMap};

/// `⊕ A(-t_k)`: generator `k` sits in degree `twists[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: Arc<Ring>,
    twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: &Arc<Ring>, twists: Vec<i64>) -> FreeModule {
        FreeModule { ring: ring.clone(), twists }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }
}

/// A matrix of polynomials stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<Vec<Polynomial>>,
}

impl Matrix {
    pub fn from_columns(rows: usize, cols: Vec<Vec<Polynomial>>) -> Result<Matrix> {
        for c in &cols {
            if c.len() != rows {
                return Err(Error::RankMismatch { expected: rows, got: c.len() });
            }
        }
        Ok(Matrix { rows, cols })
    }

    pub fn from_rows(ring: &Ring, ncols: usize, rows: Vec<Vec<Polynomial>>) -> Result<Matrix> {
        let nrows = rows.len();
        let mut cols = vec![vec![ring.zero(); nrows]; ncols];
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::RankMismatch { expected: ncols, got: r.len() });
            }
            for (j, e) in r.into_iter().enumerate() {
                cols[j][i] = e;
            }
        }
        Ok(Matrix { rows: nrows, cols })
    }

    pub fn zero(ring: &Ring, rows: usize, ncols: usize) -> Matrix {
        Matrix { rows, cols: vec![vec![ring.zero(); rows]; ncols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.cols[i][i] = ring.one();
        }
        m
    }

    /// `diag(entries)`.
    pub fn diagonal(ring: &Ring, entries: Vec<Polynomial>) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zero(ring, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.cols[i][i] = e;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Vec<Polynomial>> {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.cols[j][i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(Polynomial::is_zero))
    }

    pub fn transpose(&self, ring: &Ring) -> Matrix {
        let mut t = Matrix::zero(ring, self.ncols(), self.rows);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, e) in c.iter().enumerate() {
                t.cols[i][j] = e.clone();
            }
        }
        t
    }

    /// `self * v` with entries reduced in `ring`.
    pub fn apply(&self, ring: &Ring, v: &[Polynomial]) -> Vec<Polynomial> {
        debug_assert_eq!(v.len(), self.ncols());
        let mut out = vec![ring.zero(); self.rows];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, e) in self.cols[j].iter().enumerate() {
                if !e.is_zero() {
                    out[i] = out[i].add(&e.mul(c));
                }
            }
        }
        out.iter().map(|p| ring.reduce(p)).collect()
    }

    pub fn mul(&self, ring: &Ring, other: &Matrix) -> Result<Matrix> {
        if self.ncols() != other.rows {
            return Err(Error::RankMismatch { expected: self.ncols(), got: other.rows });
        }
        Ok(Matrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(ring, c)).collect() })
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|c| c.iter().map(&f).collect()).collect() }
    }

    pub fn scale(&self, ring: &Ring, p: &Polynomial) -> Matrix {
        self.map_entries(|e| ring.mul(e, p))
    }

    pub fn add(&self, ring: &Ring, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::RankMismatch { expected: self.rows * self.ncols(), got: other.rows * other.ncols() });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()).collect(),
        })
    }

    /// Kronecker product `self ⊗ I_n`: block `(i, j)` is `self[i, j] * I_n`.
    pub fn kron_identity(&self, ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, self.rows * n, self.ncols() * n);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, e) in c.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for l in 0..n {
                    m.cols[j * n + l][i * n + l] = e.clone();
                }
            }
        }
        m
    }
}

/// A map between free modules given by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FreeModule,
    target: FreeModule,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: FreeModule, target: FreeModule, matrix: Matrix) -> Result<ModuleMap> {
        if *source.ring != *target.ring {
            return Err(Error::RingMismatch("source and target rings differ".into()));
        }
        if matrix.ncols() != source.rank() || matrix.nrows() != target.rank() {
            return Err(Error::RankMismatch { expected: source.rank() * target.rank(), got: matrix.ncols() * matrix.nrows() });
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Every entry `(i, j)` homogeneous of degree `twist_src(j) - twist_tgt(i)`.
    pub fn is_homogeneous(&self) -> bool {
        self.matrix.cols.iter().enumerate().all(|(j, c)| {
            c.iter().enumerate().all(|(i, e)| {
                let want = self.source.twists[j] - self.target.twists[i];
                e.terms().iter().all(|(m, _)| m.degree() as i64 == want)
            })
        })
    }
}

/// Degree of a column against generator twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnDegree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

pub fn column_degree(col: &[Polynomial], twists: &[i64]) -> ColumnDegree {
    let mut deg = None;
    for (i, p) in col.iter().enumerate() {
        for (m, _) in p.terms() {
            let d = m.degree() as i64 + twists[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return ColumnDegree::Mixed,
                _ => {}
            }
        }
    }
    match deg {
        None => ColumnDegree::Zero,
        Some(d) => ColumnDegree::Homogeneous(d),
    }
}

/// Largest `deg + twist` over the terms of a column; `0` for the zero column.
pub fn weighted_degree(col: &[Polynomial], twists: &[i64]) -> i64 {
    col.iter().enumerate().flat_map(|(i, p)| p.terms().iter().map(move |(m, _)| m.degree() as i64 + twists[i])).max().unwrap_or(0)
}

/// `coker(A^r -> ⊕ A(-t_k))`, generators in degrees `twists`, relations as columns.
/// The quotient ideal of the ring is an implicit relation on every generator.
#[derive(Clone, Debug)]
pub struct FPModule {
    ring: Arc<Ring>,
    twists: Vec<i64>,
    relations: Vec<Vec<Polynomial>>,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &FPModule) -> bool {
        *self.ring == *other.ring && self.twists == other.twists && self.relations == other.relations
    }
}

impl FPModule {
    pub fn new(ring: &Arc<Ring>, twists: Vec<i64>, relations: Vec<Vec<Polynomial>>) -> Result<FPModule> {
        for r in &relations {
            if r.len() != twists.len() {
                return Err(Error::RankMismatch { expected: twists.len(), got: r.len() });
            }
            for p in r {
                ring.check(p)?;
            }
        }
        let relations = relations
            .into_iter()
            .map(|c| c.iter().map(|p| ring.reduce(p)).collect::<Vec<_>>())
            .filter(|c: &Vec<Polynomial>| !c.iter().all(Polynomial::is_zero))
            .collect();
        Ok(FPModule { ring: ring.clone(), twists, relations, gb: OnceLock::new() })
    }

    pub fn free(ring: &Arc<Ring>, twists: Vec<i64>) -> FPModule {
        FPModule { ring: ring.clone(), twists, relations: Vec::new(), gb: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<Ring>) -> FPModule {
        FPModule::free(ring, Vec::new())
    }

    /// The ring itself as a module.
    pub fn ring_module(ring: &Arc<Ring>) -> FPModule {
        FPModule::free(ring, vec![0])
    }

    /// `A / I` for an ideal given by generators, one generator in degree 0.
    pub fn cyclic(ring: &Arc<Ring>, ideal: &[Polynomial]) -> Result<FPModule> {
        FPModule::new(ring, vec![0], ideal.iter().map(|g| vec![g.clone()]).collect())
    }

    /// Parses relation columns written in the polynomial grammar.
    pub fn from_strs(ring: &Arc<Ring>, twists: Vec<i64>, relations: &[&[&str]]) -> Result<FPModule> {
        let cols = relations.iter().map(|c| c.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        FPModule::new(ring, twists, cols)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty() && self.ring.is_polynomial_ring()
    }

    /// No explicit relations (the ring's quotient ideal may still act).
    pub fn has_no_relations(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn ambient(&self) -> FreeModule {
        FreeModule::new(&self.ring, self.twists.clone())
    }

    /// Degrees of the relation columns (their weighted leading degrees).
    pub fn relation_degrees(&self) -> Vec<i64> {
        self.relations.iter().map(|c| weighted_degree(c, &self.twists)).collect()
    }

    pub fn presentation(&self) -> ModuleMap {
        let src = FreeModule::new(&self.ring, self.relation_degrees());
        let m = Matrix { rows: self.rank(), cols: self.relations.clone() };
        ModuleMap::new(src, self.ambient(), m).expect("consistent presentation")
    }

    pub fn module_order(&self) -> ModuleOrder {
        ModuleOrder::new(self.ring.order(), self.twists.clone())
    }

    /// Gröbner basis of the relation submodule, weighted by the generator degrees.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let ord = self.module_order();
            let vecs = self.relations.iter().map(|c| Vector::from_column(c, 0, &ord)).collect();
            GroebnerBasis::from_vectors(&self.ring, vecs, ord)
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|c| column_degree(c, &self.twists) != ColumnDegree::Mixed) && self.ring.is_graded()
    }

    fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::NotHomogeneous("graded dimensions need a homogeneous presentation".into()))
        }
    }

    /// `dim_k M_d`.
    pub fn graded_dim(&self, d: i64) -> Result<usize> {
        self.require_homogeneous()?;
        Ok(self.groebner().standard_terms(&self.twists, d).len())
    }

    /// `dim_k M_d` for `d` in `lo..=hi`.
    pub fn hilbert(&self, lo: i64, hi: i64) -> Result<Vec<usize>> {
        (lo..=hi).map(|d| self.graded_dim(d)).collect()
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.groebner().normal_form(v)
    }

    /// Whether the element given by a column is zero in the module.
    pub fn is_zero_element(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(Polynomial::is_zero))
    }

    pub fn is_zero(&self) -> bool {
        let gb = self.groebner();
        (0..self.rank()).all(|k| !gb.is_standard(&ModTerm { mono: Monomial::one(), pos: k as u32 }))
    }

    /// `M(s)`: every generator degree lowered by `s`, so `M(s)_d = M_{d+s}`.
    pub fn shift(&self, s: i64) -> FPModule {
        FPModule {
            ring: self.ring.clone(),
            twists: self.twists.iter().map(|t| t - s).collect(),
            relations: self.relations.clone(),
            gb: OnceLock::new(),
        }
    }

    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch("direct sum over different rings".into()));
        }
        let (r1, r2) = (self.rank(), other.rank());
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        let z = self.ring.zero();
        let mut rels = Vec::new();
        for c in &self.relations {
            let mut col = c.clone();
            col.extend(std::iter::repeat_n(z.clone(), r2));
            rels.push(col);
        }
        for c in &other.relations {
            let mut col = vec![z.clone(); r1];
            col.extend(c.iter().cloned());
            rels.push(col);
        }
        FPModule::new(&self.ring, twists, rels)
    }

    /// `⊕_k M` with block `k` generators raised by `shifts[k]` in degree.
    pub fn blocks(&self, shifts: &[i64]) -> FPModule {
        let r = self.rank();
        let n = shifts.len();
        let mut twists = Vec::with_capacity(r * n);
        for s in shifts {
            twists.extend(self.twists.iter().map(|t| t + s));
        }
        let z = self.ring.zero();
        let mut rels = Vec::with_capacity(self.relations.len() * n);
        for k in 0..n {
            for c in &self.relations {
                let mut col = vec![z.clone(); r * n];
                for (i, e) in c.iter().enumerate() {
                    col[k * r + i] = e.clone();
                }
                rels.push(col);
            }
        }
        FPModule { ring: self.ring.clone(), twists, relations: rels, gb: OnceLock::new() }
    }

    /// Adds relation columns.
    pub fn quotient(&self, extra: &[Vec<Polynomial>]) -> Result<FPModule> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        FPModule::new(&self.ring, self.twists.clone(), rels)
    }

    /// `M ⊗_A B` along a ring map: entries of the presentation pushed forward.
    pub fn change_ring(&self, phi: &RingMap) -> Result<FPModule> {
        if **phi.source() != *self.ring {
            return Err(Error::RingMismatch("ring map source differs from module ring".into()));
        }
        let rels = self.relations.iter().map(|c| c.iter().map(|p| phi.apply(p)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        FPModule::new(phi.target(), self.twists.clone(), rels)
    }

    /// A presentation with unit pivots eliminated; also returns the indices of the
    /// generators that were kept.
    pub fn pruned(&self) -> (FPModule, Vec<usize>) {
        let (twists, rels, kept) = prune_presentation(&self.ring, self.twists.clone(), self.relations.clone());
        (FPModule { ring: self.ring.clone(), twists, relations: rels, gb: OnceLock::new() }, kept)
    }

    pub fn prune(&self) -> FPModule {
        self.pruned().0
    }

    /// Annihilator-style kernel: `{ v in A^s : m v = 0 in M }` for `m` given as columns of length `rank`.
    pub fn preimage_of_zero(&self, m: &[Vec<Polynomial>], src_twists: &[i64]) -> Result<Vec<Vec<Polynomial>>> {
        kernel_mod(&self.ring, m, &self.relations, &self.twists, src_twists)
    }

    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw: Vec<String> = self.twists.iter().map(|t| t.to_string()).collect();
        write!(f, "coker over {} with generators in degrees [{}]", self.ring, tw.join(","))?;
        for c in &self.relations {
            let s: Vec<String> = c.iter().map(|p| self.ring.format(p)).collect();
            write!(f, " ({})", s.join(","))?;
        }
        Ok(())
    }
}

/// Eliminates generators killed by a relation with a unit entry. Returns new twists,
/// relations and the kept generator indices.
pub(crate) fn prune_presentation(
    ring: &Ring,
    mut twists: Vec<i64>,
    mut rels: Vec<Vec<Polynomial>>,
) -> (Vec<i64>, Vec<Vec<Polynomial>>, Vec<usize>) {
    let mut kept: Vec<usize> = (0..twists.len()).collect();
    loop {
        rels.retain(|c| !c.iter().all(Polynomial::is_zero));
        let pivot = rels.iter().enumerate().find_map(|(c, col)| col.iter().position(|p| p.as_constant().is_some()).map(|r| (c, r)));
        let Some((c, r)) = pivot else { break };
        let piv = rels.swap_remove(c);
        let a = piv[r].as_constant().unwrap().clone();
        for col in rels.iter_mut() {
            if col[r].is_zero() {
                continue;
            }
            let factor = col[r].scale(&a.inv());
            for (i, e) in col.iter_mut().enumerate() {
                if !piv[i].is_zero() {
                    *e = ring.sub(e, &ring.mul(&factor, &piv[i]));
                }
            }
            debug_assert!(col[r].is_zero());
        }
        for col in rels.iter_mut() {
            col.remove(r);
        }
        twists.remove(r);
        kept.remove(r);
    }
    (twists, rels, kept)
}
