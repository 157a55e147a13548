use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::{column_degree, prune_presentation, weighted_degree, ColumnDegree, FPModule, Matrix};
use crate::error::{Error, Result};
use crate::groebner::{kernel_mod, GroebnerBasis, ModuleOrder, Vector};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A bounded complex with homological indexing: `d_i : C_i -> C_{i-1}`.
///
/// Terms are finitely presented; a free complex has no explicit relations. A
/// cohomological degree `n` is homological index `-n`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Arc<Ring>,
    lo: i64,
    terms: Vec<FPModule>,
    /// `diffs[k] = d_{lo + k + 1}`.
    diffs: Vec<Matrix>,
}

/// Homology as a module, with cycle representatives in the ambient free module of `C_i`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: FPModule,
    pub cycles: Vec<Vec<Polynomial>>,
}

impl ChainComplex {
    /// Builds and validates a complex; fails unless `d∘d` vanishes and each `d` is well defined.
    pub fn new(ring: &Arc<Ring>, lo: i64, terms: Vec<FPModule>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        let c = ChainComplex::from_parts(ring, lo, terms, diffs)?;
        c.check()?;
        Ok(c)
    }

    /// A free complex from generator degrees; `twists[k]` is the term at index `lo + k`.
    pub fn free(ring: &Arc<Ring>, lo: i64, twists: Vec<Vec<i64>>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        let terms = twists.into_iter().map(|t| FPModule::free(ring, t)).collect();
        ChainComplex::new(ring, lo, terms, diffs)
    }

    /// Shape checks only.
    pub(crate) fn from_parts(ring: &Arc<Ring>, lo: i64, terms: Vec<FPModule>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::NotAComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for t in &terms {
            if **t.ring() != **ring {
                return Err(Error::RingMismatch("complex term over another ring".into()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.nrows() != terms[k].rank() || d.ncols() != terms[k + 1].rank() {
                return Err(Error::NotAComplex(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.nrows(),
                    d.ncols(),
                    terms[k].rank(),
                    terms[k + 1].rank()
                )));
            }
        }
        Ok(ChainComplex { ring: ring.clone(), lo, terms, diffs })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest index carrying a term.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: i64) -> Option<&FPModule> {
        if i < self.lo {
            return None;
        }
        self.terms.get((i - self.lo) as usize)
    }

    /// Generator count of `C_i`, zero outside the range.
    pub fn rank(&self, i: i64) -> usize {
        self.term(i).map_or(0, FPModule::rank)
    }

    pub fn twists(&self, i: i64) -> &[i64] {
        self.term(i).map_or(&[], |t| t.twists())
    }

    /// `d_i : C_i -> C_{i-1}`, if both terms exist.
    pub fn d(&self, i: i64) -> Option<&Matrix> {
        if i <= self.lo {
            return None;
        }
        self.diffs.get((i - self.lo - 1) as usize)
    }

    pub fn terms(&self) -> &[FPModule] {
        &self.terms
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(FPModule::has_no_relations)
    }

    /// Cohomological view: `H^n = H_{-n}`.
    pub fn cohomology(&self, n: i64) -> Result<Homology> {
        self.homology(-n)
    }

    /// Whether every `d∘d` reduces to zero and every `d` respects the relations.
    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }

    pub fn check(&self) -> Result<()> {
        for i in self.lo + 1..=self.hi() {
            let d = self.d(i).unwrap();
            let tgt = self.term(i - 1).unwrap();
            let src = self.term(i).unwrap();
            for rel in src.relations() {
                let img = d.apply(&self.ring, rel);
                if !tgt.is_zero_element(&img)? {
                    return Err(Error::NotAComplex(format!("d_{i} does not respect the relations of C_{i}")));
                }
            }
            if let Some(d2) = self.d(i + 1) {
                let prod = d.mul(&self.ring, d2)?;
                for col in prod.columns() {
                    if !tgt.is_zero_element(col)? {
                        return Err(Error::NotAComplex(format!("d_{i} ∘ d_{} is not zero", i + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ker d_i / im d_{i+1}` as a pruned finitely presented module.
    pub fn homology(&self, i: i64) -> Result<Homology> {
        let Some(ci) = self.term(i) else {
            return Ok(Homology { module: FPModule::zero(&self.ring), cycles: Vec::new() });
        };
        let tw = ci.twists().to_vec();
        let r = ci.rank();
        // cycles: preimage of the relations of C_{i-1}
        let cycles: Vec<Vec<Polynomial>> = match (self.d(i), self.term(i - 1)) {
            (Some(d), Some(prev)) => kernel_mod(&self.ring, d.columns(), prev.relations(), prev.twists(), &tw)?,
            _ => Matrix::identity(&self.ring, r).into_columns(),
        };
        if cycles.is_empty() {
            return Ok(Homology { module: FPModule::zero(&self.ring), cycles });
        }
        let zdeg: Vec<i64> = cycles
            .iter()
            .map(|c| match column_degree(c, &tw) {
                ColumnDegree::Homogeneous(d) => d,
                _ => weighted_degree(c, &tw),
            })
            .collect();
        let mut rel_src: Vec<Vec<Polynomial>> = self.d(i + 1).map_or(Vec::new(), |d| d.columns().to_vec());
        rel_src.extend(ci.relations().iter().cloned());
        let rels = kernel_mod(&self.ring, &cycles, &rel_src, &tw, &zdeg)?;
        let (twists, rels, kept) = prune_presentation(&self.ring, zdeg, rels);
        let cycles = kept.into_iter().map(|k| cycles[k].clone()).collect();
        Ok(Homology { module: FPModule::new(&self.ring, twists, rels)?, cycles })
    }

    /// The same complex with every index moved by `s` (`C'_{i+s} = C_i`).
    pub fn reindex(&self, s: i64) -> ChainComplex {
        ChainComplex { lo: self.lo + s, ..self.clone() }
    }

    /// Restriction of the gradings: all generator degrees raised by `s`.
    pub fn twist(&self, s: i64) -> ChainComplex {
        ChainComplex { terms: self.terms.iter().map(|t| t.shift(-s)).collect(), ..self.clone() }
    }

    fn require_free(&self, what: &str) -> Result<()> {
        if self.is_free() {
            Ok(())
        } else {
            Err(Error::NotFree(format!("{what} needs a complex of free modules")))
        }
    }
}

/// `Hom_A(C, M)`: the term at index `-n` is `⊕_{k in C_n} M(t_k)`, with differential `d^T ⊗ 1`.
pub fn hom_complex(c: &ChainComplex, m: &FPModule) -> Result<ChainComplex> {
    c.require_free("hom_complex")?;
    if **m.ring() != **c.ring() {
        return Err(Error::RingMismatch("module and complex over different rings".into()));
    }
    let r = m.rank();
    let (lo, hi) = (c.lo(), c.hi());
    let mut terms = Vec::new();
    for k in 0..c.len() as i64 {
        let n = hi - k;
        let shifts: Vec<i64> = c.twists(n).iter().map(|t| -t).collect();
        terms.push(m.blocks(&shifts));
    }
    let mut diffs = Vec::new();
    for k in 0..c.len().saturating_sub(1) as i64 {
        let n = hi - k;
        let d = c.d(n).unwrap();
        diffs.push(d.transpose(c.ring()).kron_identity(c.ring(), r));
    }
    let _ = lo;
    ChainComplex::from_parts(c.ring(), -hi, terms, diffs)
}

/// `C ⊗_A M`: the term at index `i` is `⊕_{k in C_i} M(-t_k)`, with differential `d ⊗ 1`.
pub fn tensor_complex(c: &ChainComplex, m: &FPModule) -> Result<ChainComplex> {
    c.require_free("tensor_complex")?;
    if **m.ring() != **c.ring() {
        return Err(Error::RingMismatch("module and complex over different rings".into()));
    }
    let r = m.rank();
    let terms = (c.lo()..=c.hi()).map(|i| m.blocks(c.twists(i))).collect();
    let diffs = c.diffs.iter().map(|d| d.kron_identity(c.ring(), r)).collect();
    ChainComplex::from_parts(c.ring(), c.lo(), terms, diffs)
}

/// Basis layout of `(C ⊗ D)_n`: blocks `(p, q = n - p)` in increasing `p`.
struct TensorLayout {
    /// `(p, offset)` for every block present in degree `n`.
    blocks: BTreeMap<i64, BTreeMap<i64, usize>>,
    sizes: BTreeMap<i64, usize>,
}

impl TensorLayout {
    fn new(c: &ChainComplex, d: &ChainComplex) -> TensorLayout {
        let mut blocks: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
        let mut sizes = BTreeMap::new();
        for n in c.lo() + d.lo()..=c.hi() + d.hi() {
            let mut off = 0usize;
            let mut b = BTreeMap::new();
            for p in c.lo()..=c.hi() {
                let q = n - p;
                if q < d.lo() || q > d.hi() {
                    continue;
                }
                b.insert(p, off);
                off += c.rank(p) * d.rank(q);
            }
            blocks.insert(n, b);
            sizes.insert(n, off);
        }
        TensorLayout { blocks, sizes }
    }

    fn index(&self, d: &ChainComplex, n: i64, p: i64, k: usize, l: usize) -> usize {
        self.blocks[&n][&p] + k * d.rank(n - p) + l
    }
}

/// Tensor product of free complexes with the sign `d(c ⊗ e) = dc ⊗ e + (-1)^p c ⊗ de`.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    c.require_free("tensor")?;
    d.require_free("tensor")?;
    let ring = c.ring();
    let lay = TensorLayout::new(c, d);
    let (lo, hi) = (c.lo() + d.lo(), c.hi() + d.hi());
    let mut terms = Vec::new();
    for n in lo..=hi {
        let mut tw = Vec::with_capacity(lay.sizes[&n]);
        for &p in lay.blocks[&n].keys() {
            for tk in c.twists(p) {
                for ul in d.twists(n - p) {
                    tw.push(tk + ul);
                }
            }
        }
        terms.push(FPModule::free(ring, tw));
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let mut m = Matrix::zero(ring, lay.sizes[&(n - 1)], lay.sizes[&n]);
        for &p in lay.blocks[&n].keys() {
            let q = n - p;
            let sign_neg = p.rem_euclid(2) == 1;
            for k in 0..c.rank(p) {
                for l in 0..d.rank(q) {
                    let col = lay.index(d, n, p, k, l);
                    if let Some(dc) = c.d(p) {
                        for (k2, e) in dc.column(k).iter().enumerate() {
                            if !e.is_zero() {
                                m.set(lay.index(d, n - 1, p - 1, k2, l), col, e.clone());
                            }
                        }
                    }
                    if let Some(dd) = d.d(q) {
                        for (l2, e) in dd.column(l).iter().enumerate() {
                            if !e.is_zero() {
                                let v = if sign_neg { e.neg() } else { e.clone() };
                                m.set(lay.index(d, n - 1, p, k, l2), col, v);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::from_parts(ring, lo, terms, diffs)
}

/// A degree-zero chain map `f_i : C_i -> D_i`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Validates shapes, well-definedness and commutation with the differentials.
    pub fn new(source: ChainComplex, target: ChainComplex, maps: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        let f = ChainMap::from_parts(source, target, maps)?;
        f.check()?;
        Ok(f)
    }

    pub(crate) fn from_parts(source: ChainComplex, target: ChainComplex, maps: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        for (&i, m) in &maps {
            if m.ncols() != source.rank(i) || m.nrows() != target.rank(i) {
                return Err(Error::IllFormedMap(format!("component {i} has the wrong shape")));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `f_i`, or the zero matrix when absent.
    pub fn component(&self, i: i64) -> Matrix {
        self.maps.get(&i).cloned().unwrap_or_else(|| Matrix::zero(self.source.ring(), self.target.rank(i), self.source.rank(i)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.maps
    }

    pub fn check(&self) -> Result<()> {
        let ring = self.source.ring();
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for i in lo..=hi {
            let f = self.component(i);
            if let Some(t) = self.target.term(i) {
                if let Some(s) = self.source.term(i) {
                    for rel in s.relations() {
                        if !t.is_zero_element(&f.apply(ring, rel))? {
                            return Err(Error::IllFormedMap(format!("f_{i} does not respect relations")));
                        }
                    }
                }
            }
            let (Some(tgt), true) = (self.target.term(i - 1), self.source.rank(i) > 0) else {
                continue;
            };
            let lhs = match self.target.d(i) {
                Some(d) => d.mul(ring, &f)?,
                None => Matrix::zero(ring, tgt.rank(), self.source.rank(i)),
            };
            let rhs = match self.source.d(i) {
                Some(d) => self.component(i - 1).mul(ring, d)?,
                None => Matrix::zero(ring, tgt.rank(), self.source.rank(i)),
            };
            let diff = lhs.add(ring, &rhs.map_entries(|p| p.neg()))?;
            for col in diff.columns() {
                if !tgt.is_zero_element(col)? {
                    return Err(Error::IllFormedMap(format!("f does not commute with d at index {i}")));
                }
            }
        }
        Ok(())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        let ring = self.source.ring();
        let mut maps = BTreeMap::new();
        for (&i, f) in &self.maps {
            if let Some(gi) = g.maps.get(&i) {
                maps.insert(i, gi.mul(ring, f)?);
            }
        }
        ChainMap::from_parts(self.source.clone(), g.target.clone(), maps)
    }

    /// Whether the induced map on `H_i` is zero: every cycle of the source maps into
    /// the boundaries plus relations of the target.
    pub fn induces_zero(&self, i: i64) -> Result<bool> {
        let h = self.source.homology(i)?;
        let Some(t) = self.target.term(i) else { return Ok(true) };
        let gb = boundary_basis(&self.target, i)?;
        let f = self.component(i);
        let _ = t;
        for z in &h.cycles {
            let img = f.apply(self.source.ring(), z);
            if !gb.contains(&img)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Entrywise equality of components after normal form.
    pub fn equals(&self, other: &ChainMap) -> bool {
        let lo = self.source.lo().min(other.source.lo());
        let hi = self.source.hi().max(other.source.hi());
        (lo..=hi).all(|i| self.component(i) == other.component(i))
    }
}

/// Gröbner basis of `im d_{i+1} + relations of C_i` inside the ambient free module of `C_i`.
pub fn boundary_basis(c: &ChainComplex, i: i64) -> Result<GroebnerBasis> {
    let t = c.term(i).ok_or_else(|| Error::InvalidArgument(format!("no term at index {i}")))?;
    let ord = ModuleOrder::new(c.ring().order(), t.twists().to_vec());
    let mut vecs: Vec<Vector> = t.relations().iter().map(|r| Vector::from_column(r, 0, &ord)).collect();
    if let Some(d) = c.d(i + 1) {
        vecs.extend(d.columns().iter().map(|col| Vector::from_column(col, 0, &ord)));
    }
    Ok(GroebnerBasis::from_vectors(c.ring(), vecs, ord))
}

/// `Hom(f, M) : Hom(D, M) -> Hom(C, M)` for `f : C -> D`.
pub fn hom_map(f: &ChainMap, m: &FPModule) -> Result<ChainMap> {
    let src = hom_complex(f.target(), m)?;
    let tgt = hom_complex(f.source(), m)?;
    let ring = f.source().ring();
    let mut maps = BTreeMap::new();
    for (&n, mat) in &f.maps {
        maps.insert(-n, mat.transpose(ring).kron_identity(ring, m.rank()));
    }
    ChainMap::from_parts(src, tgt, maps)
}

/// `f ⊗ g` between tensor products of free complexes.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let src = tensor(f.source(), g.source())?;
    let tgt = tensor(f.target(), g.target())?;
    let ring = f.source().ring();
    let ls = TensorLayout::new(f.source(), g.source());
    let lt = TensorLayout::new(f.target(), g.target());
    let mut maps = BTreeMap::new();
    for n in src.lo()..=src.hi() {
        if tgt.term(n).is_none() {
            continue;
        }
        let mut m = Matrix::zero(ring, tgt.rank(n), src.rank(n));
        for &p in ls.blocks[&n].keys() {
            let q = n - p;
            let (fp, gq) = (f.component(p), g.component(q));
            if fp.nrows() == 0 || gq.nrows() == 0 || !lt.blocks[&n].contains_key(&p) {
                continue;
            }
            for k in 0..f.source().rank(p) {
                for l in 0..g.source().rank(q) {
                    let col = ls.index(g.source(), n, p, k, l);
                    for (k2, a) in fp.column(k).iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (l2, b) in gq.column(l).iter().enumerate() {
                            if b.is_zero() {
                                continue;
                            }
                            let row = lt.index(g.target(), n, p, k2, l2);
                            let v = ring.add(m.entry(row, col), &ring.mul(a, b));
                            m.set(row, col, v);
                        }
                    }
                }
            }
        }
        maps.insert(n, m);
    }
    ChainMap::from_parts(src, tgt, maps)
}

/// Identity chain map.
pub fn identity_map(c: &ChainComplex) -> ChainMap {
    let maps = (c.lo()..=c.hi()).map(|i| (i, Matrix::identity(c.ring(), c.rank(i)))).collect();
    ChainMap { source: c.clone(), target: c.clone(), maps }
}

/// A free resolution `F_len -> ... -> F_0 -> M` by iterated syzygies, indices `0..=len`.
pub fn free_resolution(m: &FPModule, len: usize) -> Result<ChainComplex> {
    let ring = m.ring();
    let mut twists = vec![m.twists().to_vec()];
    let mut diffs: Vec<Matrix> = Vec::new();
    let mut cols: Vec<Vec<Polynomial>> = m.relations().to_vec();
    let mut tgt_tw = m.twists().to_vec();
    for _ in 0..len {
        if cols.is_empty() {
            break;
        }
        let src_tw: Vec<i64> = cols.iter().map(|c| weighted_degree(c, &tgt_tw)).collect();
        diffs.push(Matrix::from_columns(tgt_tw.len(), cols.clone())?);
        twists.push(src_tw.clone());
        cols = crate::groebner::syzygies(ring, &cols, &tgt_tw, &src_tw)?;
        tgt_tw = src_tw;
    }
    let terms = twists.into_iter().map(|t| FPModule::free(ring, t)).collect();
    ChainComplex::from_parts(ring, 0, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn qq(vars: &[&str]) -> Arc<Ring> {
        Ring::polynomial(Field::Rationals, vars).unwrap()
    }

    fn two_term(r: &Arc<Ring>, a: &str, deg: i64) -> ChainComplex {
        let d = Matrix::from_rows(r, 1, vec![vec![r.parse(a).unwrap()]]).unwrap();
        ChainComplex::free(r, 0, vec![vec![0], vec![deg]], vec![d]).unwrap()
    }

    #[test]
    fn regular_element_homology() {
        let r = qq(&["x"]);
        let c = two_term(&r, "x", 1);
        assert_eq!(c.homology(0).unwrap().module.hilbert(0, 3).unwrap(), vec![1, 0, 0, 0]);
        assert!(c.homology(1).unwrap().module.is_zero());
        assert!(c.homology(5).unwrap().module.is_zero());
    }

    #[test]
    fn zero_divisor_homology() {
        let r = qq(&["x", "y"]).quotient_by_strs(&["x*y"]).unwrap();
        let c = two_term(&r, "x", 1);
        let h1 = c.homology(1).unwrap();
        // Ann(x) = (y), generated in degree 1 + 1
        assert_eq!(h1.module.hilbert(0, 4).unwrap(), vec![0, 0, 1, 1, 1]);
    }

    #[test]
    fn bad_complex_rejected() {
        let r = qq(&["x"]);
        let x = r.var(0);
        let d = Matrix::diagonal(&r, vec![x.clone()]);
        let bad = ChainComplex::free(&r, 0, vec![vec![0], vec![1], vec![2]], vec![d.clone(), d]);
        assert!(matches!(bad, Err(Error::NotAComplex(_))));
    }

    #[test]
    fn hom_into_residue_field_kills_differentials() {
        let r = qq(&["x"]);
        let c = two_term(&r, "x", 1);
        let k = FPModule::cyclic(&r, &[r.var(0)]).unwrap();
        let h = hom_complex(&c, &k).unwrap();
        assert!(h.validate());
        assert_eq!((h.lo(), h.hi()), (-1, 0));
        assert_eq!(h.cohomology(0).unwrap().module.hilbert(-2, 2).unwrap(), vec![0, 0, 1, 0, 0]);
        assert_eq!(h.cohomology(1).unwrap().module.hilbert(-2, 2).unwrap(), vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn tensor_signs_square_to_zero() {
        let r = qq(&["x", "y"]);
        let kx = two_term(&r, "x", 1);
        let ky = two_term(&r, "y", 1);
        let k = tensor(&kx, &ky).unwrap();
        assert!(k.validate());
        assert_eq!((0..3).map(|i| k.rank(i)).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(k.homology(1).unwrap().module.is_zero());
        assert_eq!(k.homology(0).unwrap().module.hilbert(0, 2).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn resolution_of_residue_field() {
        let r = qq(&["x", "y"]);
        let k = FPModule::cyclic(&r, &[r.var(0), r.var(1)]).unwrap();
        let f = free_resolution(&k, 4).unwrap();
        assert!(f.validate());
        assert_eq!((0..=f.hi()).map(|i| f.rank(i)).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(f.twists(2), &[2]);
    }
}
