//! Fixtures shared by the criterion benches.

use std::sync::Arc;

use hhadic::{Bimodule, EnvelopingRing, FPModule, Field, Ideal, Polynomial, Ring};

pub fn polynomial_ring(vars: &[&str]) -> Arc<Ring> {
    Ring::polynomial(Field::Rationals, vars).expect("valid variable names")
}

/// Four quadrics in four variables with a nontrivial Gröbner basis under grevlex.
pub fn quadrics() -> (Arc<Ring>, Vec<Vec<Polynomial>>) {
    let r = polynomial_ring(&["x", "y", "z", "w"]);
    let gens = ["x^2+y*z", "y^2+x*w", "z^2+x*y", "w^2+y*z-x*z"].iter().map(|s| vec![r.parse(s).expect("parses")]).collect();
    (r, gens)
}

/// The ring as a module over itself, with the maximal homogeneous ideal.
pub fn maximal(vars: &[&str]) -> (FPModule, Ideal) {
    let r = polynomial_ring(vars);
    let a = Ideal::from_strs(&r, vars).expect("variables generate an ideal");
    (FPModule::ring_module(&r), a)
}

/// Enveloping ring of Q[x] with its maximal ideal and the bimodule A^e/((x-y)^2).
pub fn line_bimodule() -> (EnvelopingRing, Ideal, Bimodule) {
    let e = EnvelopingRing::standard(Field::Rationals, 1).expect("one variable");
    let a = Ideal::from_strs(e.base(), &["x"]).expect("x is in the base");
    let rel = e.env().parse("x^2-2*x*y+y^2").expect("parses");
    let m = FPModule::cyclic(e.env(), &[rel]).expect("cyclic module");
    (e, a, m)
}
