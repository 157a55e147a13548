use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Maximum number of ring variables. Enveloping rings of three-variable algebras need six.
pub const MAX_VARS: usize = 8;

/// An exponent vector. Unused trailing slots are always zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(i: usize, e: u32) -> Monomial {
        let mut m = Monomial::default();
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps) {
            debug_assert!(*a >= b);
            *a -= b;
        }
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a = (*a).max(b);
        }
        m
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let mut m = *self;
        for e in m.exps.iter_mut() {
            *e = u16::try_from(*e as u32 * n).expect("exponent overflow");
        }
        m
    }
}

/// Monomial order on the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // reverse lex: smaller exponent in the last differing variable wins
                for i in (0..MAX_VARS).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn is_graded(self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

/// All monomials of total degree `d` in `n` variables, in lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(&cur[..n]));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = [0u32; MAX_VARS];
    rec(n, 0, d, &mut cur, &mut out);
    out
}
