//! Ideal containments in the enveloping ring for `I = a⊗A + A⊗a`.

use crate::error::Result;
use crate::hochschild::EnvelopingRing;
use crate::report::{anchors, Cell, DimTable, Verdict, VerificationReport};
use crate::ring::Ideal;

/// `a^0 = (1)`.
fn power_or_unit(a: &Ideal, k: u32) -> Result<Ideal> {
    if k == 0 {
        Ideal::new(a.ring(), vec![a.ring().one()])
    } else {
        a.power(k)
    }
}

/// Every generator of `sub` reduces to zero modulo a Gröbner basis of `sup`; returns the
/// number of generators that do not.
fn failures(sub: &Ideal, sup: &Ideal) -> usize {
    let gb = sup.groebner();
    sub.generators().iter().filter(|g| !gb.reduce_polynomial(g).is_zero()).count()
}

pub fn cofinality_check(a: &Ideal, n: u32) -> Result<VerificationReport> {
    let e = EnvelopingRing::new(a.ring())?;
    let ring = e.env();
    let i = e.extended_ideal(a)?;

    let mut mixed = Ideal::new(ring, Vec::new())?;
    for k in 0..=n {
        let l = e.left_ideal(&power_or_unit(a, k)?)?;
        let r = e.right_ideal(&power_or_unit(a, n - k)?)?;
        mixed = mixed.sum(&l.product(&r)?)?;
    }
    let i_n = i.power(n)?;
    let i_2n = i.power(2 * n)?;
    let outer = e.left_ideal(&a.power(2 * n)?)?.sum(&e.right_ideal(&a.power(2 * n)?)?)?;
    let inner = e.left_ideal(&a.power(n)?)?.sum(&e.right_ideal(&a.power(n)?)?)?;

    let checks = [
        ("I^n ⊆ Σ a^i⊗a^(n-i)", &i_n, &mixed),
        ("Σ a^i⊗a^(n-i) ⊆ I^n", &mixed, &i_n),
        ("a^2n⊗A + A⊗a^2n ⊆ I^2n", &outer, &i_2n),
        ("I^2n ⊆ a^n⊗A + A⊗a^n", &i_2n, &inner),
    ];
    let mut rep = VerificationReport::new("cofinality", anchors::COFINALITY)
        .input("ring", a.ring().to_string())
        .input("a", a.format().join(", "))
        .input("n", n);
    let mut t = DimTable::new("generators outside the larger ideal", "n", vec![n as i64]);
    for (label, sub, sup) in checks {
        let bad = failures(sub, sup);
        if bad > 0 {
            rep.flag(format!("{label}: {bad} of {} generators do not reduce to 0", sub.generators().len()));
            rep.downgrade(Verdict::Fail);
        }
        t.push(label, vec![Cell::stable(bad)]);
    }
    rep.tables.push(t);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::scalar::Field;

    #[test]
    fn sandwich_holds_for_small_cases() {
        let r = Ring::polynomial(Field::Rationals, &["x"]).unwrap();
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        for n in 1..=3 {
            assert!(cofinality_check(&a, n).unwrap().passed());
        }
        let r2 = Ring::polynomial(Field::Rationals, &["x", "z"]).unwrap();
        let a2 = Ideal::from_strs(&r2, &["x", "z"]).unwrap();
        assert!(cofinality_check(&a2, 1).unwrap().passed());
    }
}
