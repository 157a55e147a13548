use std::cmp::Ordering;
use std::sync::Arc;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A monomial times a basis vector of a free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModTerm {
    pub mono: Monomial,
    pub pos: u32,
}

impl ModTerm {
    pub fn divides(&self, other: &ModTerm) -> bool {
        self.pos == other.pos && self.mono.divides(&other.mono)
    }
}

/// Term order on a free module.
///
/// Comparison runs: elimination block (positions below `elim` dominate), then the
/// twisted degree `deg(mono) + weight[pos]` for graded monomial orders, then the
/// monomial order, then position with lower index greater.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub weights: Arc<[i64]>,
    pub elim: Option<u32>,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder, weights: Vec<i64>) -> ModuleOrder {
        ModuleOrder { mono, weights: weights.into(), elim: None }
    }

    /// Plain term-over-position order with zero weights.
    pub fn top(mono: MonomialOrder, rank: usize) -> ModuleOrder {
        ModuleOrder::new(mono, vec![0; rank])
    }

    pub fn with_elimination(mut self, split: u32) -> ModuleOrder {
        self.elim = Some(split);
        self
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weighted_degree(&self, t: &ModTerm) -> i64 {
        t.mono.degree() as i64 + self.weights[t.pos as usize]
    }

    pub fn cmp(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        if let Some(s) = self.elim {
            let (ba, bb) = (a.pos < s, b.pos < s);
            if ba != bb {
                return if ba { Ordering::Greater } else { Ordering::Less };
            }
        }
        if self.mono.is_graded() {
            let o = self.weighted_degree(a).cmp(&self.weighted_degree(b));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.mono.cmp(&a.mono, &b.mono).then_with(|| b.pos.cmp(&a.pos))
    }
}

/// Sparse module element, terms strictly descending under a [`ModuleOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    pub(crate) terms: Vec<(ModTerm, Scalar)>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<(ModTerm, Scalar)>, ord: &ModuleOrder) -> Vector {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(ModTerm, Scalar)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = lc.add(&c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Vector { terms: out }
    }

    /// Reads a column of polynomials; `offset` shifts every position.
    pub fn from_column(col: &[Polynomial], offset: u32, ord: &ModuleOrder) -> Vector {
        let terms = col
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |(m, c)| (ModTerm { mono: *m, pos: i as u32 + offset }, c.clone())))
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Writes positions `lo..lo+len` back out as a column.
    pub fn to_column(&self, lo: u32, len: usize, order: MonomialOrder) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); len];
        for (t, c) in &self.terms {
            if t.pos >= lo && ((t.pos - lo) as usize) < len {
                buckets[(t.pos - lo) as usize].push((t.mono, c.clone()));
            }
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(order, b)).collect()
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

    pub fn terms(&self) -> &[(ModTerm, Scalar)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&(ModTerm, Scalar)> {
        self.terms.first()
    }

    pub fn lead_term(&self) -> Option<ModTerm> {
        self.terms.first().map(|t| t.0)
    }

    pub fn monic(mut self) -> Vector {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv();
                for (_, a) in self.terms.iter_mut() {
                    *a = a.mul(&inv);
                }
            }
        }
        self
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, a)| (*t, a.mul(c))).collect() }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &Vector, m: &Monomial, c: &Scalar, ord: &ModuleOrder) -> Vector {
        merge_scaled(&self.terms, &other.terms, m, c, ord)
    }

    pub fn add(&self, other: &Vector, ord: &ModuleOrder) -> Vector {
        let one = match other.terms.first() {
            Some((_, c)) => c.field().one(),
            None => return self.clone(),
        };
        self.add_scaled(other, &Monomial::one(), &one, ord)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, a)| (ModTerm { mono: t.mono.mul(m), pos: t.pos }, a.mul(c))).collect() }
    }

    /// Highest position present, plus one.
    pub fn max_pos(&self) -> u32 {
        self.terms.iter().map(|(t, _)| t.pos + 1).max().unwrap_or(0)
    }
}

pub(crate) fn merge_scaled(a: &[(ModTerm, Scalar)], b: &[(ModTerm, Scalar)], m: &Monomial, c: &Scalar, ord: &ModuleOrder) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shift = |t: &ModTerm| ModTerm { mono: t.mono.mul(m), pos: t.pos };
    let mut bj: Option<ModTerm> = b.first().map(|t| shift(&t.0));
    while i < a.len() || j < b.len() {
        match (a.get(i), bj) {
            (Some(x), Some(yt)) => match ord.cmp(&x.0, &yt) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((yt, b[j].1.mul(c)));
                    j += 1;
                    bj = b.get(j).map(|t| shift(&t.0));
                }
                Ordering::Equal => {
                    let s = x.1.add(&b[j].1.mul(c));
                    if !s.is_zero() {
                        out.push((x.0, s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| shift(&t.0));
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(yt)) => {
                out.push((yt, b[j].1.mul(c)));
                j += 1;
                bj = b.get(j).map(|t| shift(&t.0));
            }
            (None, None) => unreachable!(),
        }
    }
    Vector { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn top_order_breaks_ties_by_position() {
        let ord = ModuleOrder::top(MonomialOrder::GrevLex, 3);
        let a = ModTerm { mono: Monomial::var(0, 1), pos: 0 };
        let b = ModTerm { mono: Monomial::var(0, 1), pos: 2 };
        assert_eq!(ord.cmp(&a, &b), Ordering::Greater);
        let c = ModTerm { mono: Monomial::var(0, 2), pos: 2 };
        assert_eq!(ord.cmp(&a, &c), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let ord = ModuleOrder::top(MonomialOrder::GrevLex, 3).with_elimination(1);
        let a = ModTerm { mono: Monomial::one(), pos: 0 };
        let b = ModTerm { mono: Monomial::var(0, 9), pos: 1 };
        assert_eq!(ord.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn cancellation() {
        let ord = ModuleOrder::top(MonomialOrder::GrevLex, 2);
        let f = Field::Rationals;
        let x = Polynomial::var(MonomialOrder::GrevLex, f, 0);
        let v = Vector::from_column(&[x.clone(), x], 0, &ord);
        let w = v.add_scaled(&v, &Monomial::one(), &f.from_i64(-1), &ord);
        assert!(w.is_zero());
    }
}
