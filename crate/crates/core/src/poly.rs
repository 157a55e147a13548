//! Sparse multivariate polynomials in canonical (strictly descending) term order.

use std::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    order: MonomialOrder,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(order: MonomialOrder) -> Polynomial {
        Polynomial { order, terms: Vec::new() }
    }

    pub fn constant(order: MonomialOrder, c: Scalar) -> Polynomial {
        Polynomial::term(order, Monomial::one(), c)
    }

    pub fn one(order: MonomialOrder, field: Field) -> Polynomial {
        Polynomial::constant(order, field.one())
    }

    pub fn term(order: MonomialOrder, m: Monomial, c: Scalar) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { order, terms }
    }

    pub fn var(order: MonomialOrder, field: Field, i: usize) -> Polynomial {
        Polynomial::term(order, Monomial::var(i, 1), field.one())
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(order: MonomialOrder, mut terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { order, terms: out }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient field, if the polynomial is nonzero.
    pub fn field(&self) -> Option<Field> {
        self.terms.first().map(|t| t.1.field())
    }

    /// The constant term value if the polynomial is a nonzero constant.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    /// Maximum total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common total degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.support_len()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { order: self.order, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.order);
        }
        Polynomial { order: self.order, terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect() }
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.order);
        }
        Polynomial { order: self.order, terms: self.terms.iter().map(|(a, b)| (a.mul(m), b.mul(c))).collect() }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, None)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// `self + c*m*other`, with `None` meaning `other` itself.
    pub fn add_scaled(&self, other: &Polynomial, factor: Option<(&Monomial, &Scalar)>) -> Polynomial {
        assert_eq!(self.order, other.order, "monomial order mismatch");
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let scaled = |t: &(Monomial, Scalar)| match factor {
            Some((m, c)) => (t.0.mul(m), t.1.mul(c)),
            None => t.clone(),
        };
        let mut b = other.terms.iter().map(scaled).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let c = x.1.add(&y.1);
                        if !c.is_zero() {
                            out.push((x.0, c));
                        }
                    }
                },
            }
        }
        Polynomial { order: ord, terms: out }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.order, other.order, "monomial order mismatch");
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(self.order);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(large, Some((m, c)));
        }
        acc
    }

    pub fn pow(&self, n: u32, field: Field) -> Polynomial {
        let mut acc = Polynomial::one(self.order, field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides every coefficient by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Re-sorts the terms for another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        Polynomial::from_terms(order, self.terms.clone())
    }

    /// Evaluates the polynomial at `images` (one polynomial per variable).
    pub fn substitute(&self, images: &[Polynomial], order: MonomialOrder, field: Field) -> Polynomial {
        let mut acc = Polynomial::zero(order);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(order, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&img.pow(e, field));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Renames variables: variable `i` becomes variable `map[i]`.
    pub fn rename_vars(&self, map: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; crate::monomial::MAX_VARS];
                for (i, &j) in map.iter().enumerate() {
                    e[j] += m.exponent(i);
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(self.order, terms)
    }
}
