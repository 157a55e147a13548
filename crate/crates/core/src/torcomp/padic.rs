//! The p-adic integers in exact integer arithmetic: `Z/p^N ⊗ Z/p^N` and Hochschild
//! cohomology of the completed enveloping ring, one precision at a time.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::PrecisionLevel;
use crate::error::{Error, Result};
use crate::report::{anchors, Cell, DimTable, Verdict, VerificationReport};
use crate::scalar::is_prime;

/// Elementwise checks are run when `p^N` is at most this.
const ELEMENTWISE_LIMIT: u64 = 1 << 20;

/// `log_p q` for `q` a power of `p`.
fn log_p(q: &BigUint, p: u64) -> Option<usize> {
    let p = BigUint::from(p);
    let mut q = q.clone();
    let mut k = 0;
    while q > BigUint::one() {
        let (d, r) = q.div_rem(&p);
        if !r.is_zero() {
            return None;
        }
        q = d;
        k += 1;
    }
    Some(k)
}

/// Order of `coker(Z^2 -> Z)` for the 1×2 presentation `[q q]` of `Z/q ⊗ Z/q`.
fn tensor_order(q: &BigUint) -> BigUint {
    q.gcd(q)
}

/// `a ↦ a·(1⊗1)` from `Z/q` to `Z/g`: bijective iff every residue is hit exactly once.
fn collapse_is_bijective(q: u64, g: u64) -> bool {
    if q != g {
        return false;
    }
    let mut seen = vec![false; g as usize];
    for a in 0..q {
        let img = (a % g) as usize;
        if seen[img] {
            return false;
        }
        seen[img] = true;
    }
    seen.iter().all(|&s| s)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

pub fn padic_check(p: u64, n: u32) -> Result<VerificationReport> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::InvalidField(format!("p must be prime and below 2^31, got {p}")));
    }
    PrecisionLevel::new(n)?;
    let levels: Vec<i64> = (1..=n as i64).collect();
    let mut tensor_row = Vec::new();
    let mut hh_rows: Vec<Vec<Cell>> = vec![Vec::new(); 3];
    let mut rep = VerificationReport::new("padic", anchors::PADIC).input("p", p).input("N", n);
    for k in 1..=n {
        let q = BigUint::from(p).pow(k);
        let g = tensor_order(&q);
        let len = log_p(&g, p);
        tensor_row.push(len.map_or(Cell::missing(), Cell::stable));
        if len != Some(k as usize) {
            rep.flag(format!("precision {k}: tensor square has order {g}"));
            rep.downgrade(Verdict::Fail);
        }
        if let (Some(qs), Some(gs)) = (u64::try_from(&q).ok(), u64::try_from(&g).ok()) {
            if qs <= ELEMENTWISE_LIMIT && !collapse_is_bijective(qs, gs) {
                rep.flag(format!("precision {k}: a ↦ a(1⊗1) is not bijective"));
                rep.downgrade(Verdict::Fail);
            }
        }
        // Completed enveloping ring is Z/p^k with no variables: the diagonal Koszul complex
        // has C(0, i) generators in index i and no differentials.
        for (i, row) in hh_rows.iter_mut().enumerate() {
            let len = k as usize * binomial(0, i);
            row.push(Cell::stable(len));
            let expected = if i == 0 { k as usize } else { 0 };
            if len != expected {
                rep.downgrade(Verdict::Fail);
            }
        }
    }
    let mut t = DimTable::new("lengths over Z_p", "precision", levels);
    t.push("Z/p^k ⊗ Z/p^k", tensor_row);
    for (i, row) in hh_rows.into_iter().enumerate() {
        t.push(format!("HH^{i}"), row);
    }
    rep.tables.push(t);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let r = padic_check(2, 4).unwrap();
        assert!(r.passed());
        let t = &r.tables[0];
        assert_eq!(t.values("HH^0").unwrap().last().unwrap(), &Some(4));
        assert_eq!(t.values("HH^1").unwrap().last().unwrap(), &Some(0));
        assert!(padic_check(3, 1).unwrap().passed());
        assert!(padic_check(5, 6).unwrap().passed());
        assert!(padic_check(4, 2).is_err());
    }
}
