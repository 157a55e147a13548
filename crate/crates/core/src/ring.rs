//! Polynomial rings, their quotients, ideals and ring maps.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::buchberger::{buchberger, reduce, LeadIndex};
use crate::groebner::vector::{ModuleOrder, Vector};
use crate::groebner::GroebnerBasis;
use crate::monomial::{MonomialOrder, MAX_VARS};
use crate::parse::{format_polynomial, parse_polynomial};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

/// `k[x_1..x_m] / J` with the standard grading. `J` is stored as a reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    quotient: Vec<Polynomial>,
    quotient_vecs: Vec<Vector>,
    quotient_index: LeadIndex,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order && self.quotient == other.quotient
    }
}

impl Eq for Ring {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Ring {
    pub fn polynomial(field: Field, vars: &[&str]) -> Result<Arc<Ring>> {
        Ring::with_order(field, vars, MonomialOrder::GrevLex)
    }

    pub fn with_order(field: Field, vars: &[&str], order: MonomialOrder) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Ring::build(field, vars, order, Vec::new())
    }

    fn build(field: Field, vars: Vec<String>, order: MonomialOrder, quotient: Vec<Polynomial>) -> Result<Arc<Ring>> {
        if vars.is_empty() {
            return Err(Error::InvalidArgument("a ring needs at least one variable".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::Limit(format!("{} variables exceeds the maximum of {MAX_VARS}", vars.len())));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable {v:?}")));
            }
        }
        let ord = ModuleOrder::top(order, 1);
        let gens: Vec<Vector> = quotient.iter().map(|p| Vector::from_column(std::slice::from_ref(p), 0, &ord)).collect();
        let quotient_vecs = buchberger(gens, &ord, true);
        let quotient: Vec<Polynomial> = quotient_vecs.iter().map(|v| v.to_column(0, 1, order).pop().unwrap()).collect();
        let quotient_index = LeadIndex::build(&quotient_vecs);
        Ok(Arc::new(Ring { field, vars, order, quotient, quotient_vecs, quotient_index }))
    }

    /// The quotient of this ring's ambient polynomial ring by `J + (gens)`.
    pub fn quotient(&self, gens: &[Polynomial]) -> Result<Arc<Ring>> {
        for g in gens {
            self.check(g)?;
        }
        let mut all = self.quotient.clone();
        all.extend(gens.iter().cloned());
        Ring::build(self.field, self.vars.clone(), self.order, all)
    }

    /// Parses the quotient generators in this ring's variables.
    pub fn quotient_by_strs(&self, gens: &[&str]) -> Result<Arc<Ring>> {
        let polys = gens.iter().map(|s| self.parse(s)).collect::<Result<Vec<_>>>()?;
        self.quotient(&polys)
    }

    /// The polynomial ring this ring is a quotient of.
    pub fn ambient(&self) -> Arc<Ring> {
        Arc::new(Ring { quotient: Vec::new(), quotient_vecs: Vec::new(), quotient_index: LeadIndex::default(), ..self.clone() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }

    /// Reduced Gröbner basis of the quotient ideal `J`.
    pub fn quotient_ideal(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.order)
    }

    pub fn one(&self) -> Polynomial {
        self.reduce(&Polynomial::one(self.order, self.field))
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.reduce(&Polynomial::constant(self.order, self.field.from_i64(c)))
    }

    pub fn scalar(&self, c: i64) -> Scalar {
        self.field.from_i64(c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.reduce(&Polynomial::var(self.order, self.field, i))
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        let p = parse_polynomial(src, &self.vars, self.field, self.order)?;
        Ok(self.reduce(&p))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.vars)
    }

    /// Normal form modulo the quotient ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.quotient.is_empty() || p.is_zero() {
            return p.clone();
        }
        let ord = ModuleOrder::top(self.order, 1);
        let v = Vector::from_column(std::slice::from_ref(p), 0, &ord);
        let r = reduce(&v, &self.quotient_vecs, &self.quotient_index, &ord);
        r.to_column(0, 1, self.order).pop().unwrap()
    }

    /// Verifies that `p` is a canonical element of this ring.
    pub fn check(&self, p: &Polynomial) -> Result<()> {
        if p.order() != self.order {
            return Err(Error::RingMismatch("monomial order differs".into()));
        }
        if let Some(f) = p.field() {
            if f != self.field {
                return Err(Error::RingMismatch(format!("coefficients in {f}, ring over {}", self.field)));
            }
        }
        if p.support_len() > self.nvars() {
            return Err(Error::RingMismatch(format!("polynomial uses {} variables, ring has {}", p.support_len(), self.nvars())));
        }
        Ok(())
    }

    /// Checked arithmetic; results are reduced modulo the quotient ideal.
    pub fn arith(&self, f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        Ok(match op {
            ArithOp::Add => self.reduce(&f.add(g)),
            ArithOp::Sub => self.reduce(&f.sub(g)),
            ArithOp::Mul => self.mul(f, g),
        })
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&f.add(g))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&f.sub(g))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&f.mul(g))
    }

    pub fn pow(&self, f: &Polynomial, n: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Whether the quotient ideal is generated by homogeneous polynomials.
    pub fn is_graded(&self) -> bool {
        // a reduced GB under a graded order of a homogeneous ideal is homogeneous
        self.quotient.iter().all(|p| p.is_homogeneous())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if !self.quotient.is_empty() {
            let q: Vec<String> = self.quotient.iter().map(|p| self.format(p)).collect();
            write!(f, "/({})", q.join(","))?;
        }
        Ok(())
    }
}

/// A finitely generated ideal.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            ring.check(g)?;
        }
        let generators = generators.iter().map(|g| ring.reduce(g)).collect();
        Ok(Ideal { ring: ring.clone(), generators })
    }

    pub fn from_strs(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
        let g = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Nonzero generators only.
    pub fn nonzero_generators(&self) -> Vec<Polynomial> {
        self.generators.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// All `n`-fold products of generators, deduplicated after normal form.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        if n == 0 {
            return Err(Error::InvalidArgument("ideal power needs n >= 1".into()));
        }
        let gens = self.nonzero_generators();
        let mut out: Vec<Polynomial> = Vec::new();
        // multisets of size n drawn from gens, as nondecreasing index sequences
        let mut idx = vec![0usize; n as usize];
        if gens.is_empty() {
            return Ideal::new(&self.ring, Vec::new());
        }
        loop {
            let mut p = self.ring.one();
            for &i in &idx {
                p = self.ring.mul(&p, &gens[i]);
            }
            let p = p.monic();
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
            // advance
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return Ideal::new(&self.ring, out);
                }
                k -= 1;
                if idx[k] + 1 < gens.len() {
                    let v = idx[k] + 1;
                    for slot in idx[k..].iter_mut() {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch("ideals live in different rings".into()));
        }
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch("ideals live in different rings".into()));
        }
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = self.ring.mul(a, b);
                if !p.is_zero() && !g.contains(&p) {
                    g.push(p);
                }
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn groebner(&self) -> GroebnerBasis {
        GroebnerBasis::of_ideal(&self.ring, &self.generators)
    }

    /// Whether each generator of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Ideal) -> bool {
        let gb = other.groebner();
        self.generators.iter().all(|g| gb.reduce_polynomial(g).is_zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Homogeneous with every generator of positive degree.
    pub fn is_positively_graded(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero() || g.homogeneous_degree().is_some_and(|d| d > 0))
    }

    pub fn format(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.format(g)).collect()
    }
}

/// The normal form of `f` in `A / (a^n + J)`: the precision-`n` representative.
pub fn truncate(f: &Polynomial, a: &Ideal, n: u32) -> Result<Polynomial> {
    a.ring.check(f)?;
    let gb = a.power(n)?.groebner();
    Ok(gb.reduce_polynomial(f))
}

/// A ring map given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &Arc<Ring>, target: &Arc<Ring>, images: Vec<Polynomial>) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::IllFormedMap(format!("{} images for {} variables", images.len(), source.nvars())));
        }
        if source.field() != target.field() {
            return Err(Error::IllFormedMap("coefficient fields differ".into()));
        }
        for p in &images {
            target.check(p).map_err(|e| Error::IllFormedMap(format!("image outside target ring: {e}")))?;
        }
        let map = RingMap { source: source.clone(), target: target.clone(), images: images.iter().map(|p| target.reduce(p)).collect() };
        for q in source.quotient_ideal() {
            if !map.apply_raw(q).is_zero() {
                return Err(Error::IllFormedMap(format!("relation {} does not map to zero", source.format(q))));
            }
        }
        Ok(map)
    }

    pub fn from_strs(source: &Arc<Ring>, target: &Arc<Ring>, images: &[&str]) -> Result<RingMap> {
        let imgs = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>().map_err(|e| Error::IllFormedMap(e.to_string()))?;
        RingMap::new(source, target, imgs)
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    fn apply_raw(&self, f: &Polynomial) -> Polynomial {
        let p = f.substitute(&self.images, self.target.order(), self.target.field());
        self.target.reduce(&p)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.source.check(f)?;
        Ok(self.apply_raw(f))
    }
}
