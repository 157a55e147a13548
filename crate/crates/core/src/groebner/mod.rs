//! Gröbner bases of ideals and of submodules of free modules.

pub(crate) mod buchberger;
pub mod syzygy;
pub mod vector;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::monomials_of_degree;
use crate::poly::Polynomial;
use crate::ring::Ring;

use buchberger::{buchberger, reduce, LeadIndex};
pub use syzygy::{kernel_mod, syzygies};
pub use vector::{ModTerm, ModuleOrder, Vector};

/// A reduced Gröbner basis of a submodule of `A^rank`, with the quotient ideal of `A` folded in.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: ModuleOrder,
    elements: Vec<Vector>,
    index: LeadIndex,
}

impl GroebnerBasis {
    /// Basis under the term-over-position order with zero weights.
    pub fn compute(ring: &Arc<Ring>, generators: &[Vec<Polynomial>], rank: usize) -> Result<GroebnerBasis> {
        GroebnerBasis::with_order(ring, generators, ModuleOrder::top(ring.order(), rank))
    }

    pub fn with_order(ring: &Arc<Ring>, generators: &[Vec<Polynomial>], order: ModuleOrder) -> Result<GroebnerBasis> {
        let rank = order.rank();
        for g in generators {
            if g.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.len() });
            }
            for p in g {
                ring.check(p)?;
            }
        }
        let vecs = generators.iter().map(|g| Vector::from_column(g, 0, &order)).collect();
        Ok(GroebnerBasis::from_vectors(ring, vecs, order))
    }

    pub fn of_ideal(ring: &Arc<Ring>, generators: &[Polynomial]) -> GroebnerBasis {
        let order = ModuleOrder::top(ring.order(), 1);
        let vecs = generators.iter().map(|g| Vector::from_column(std::slice::from_ref(g), 0, &order)).collect();
        GroebnerBasis::from_vectors(ring, vecs, order)
    }

    /// Runs Buchberger on already-built vectors, adding `J * e_k` for every position.
    pub(crate) fn from_vectors(ring: &Arc<Ring>, mut vecs: Vec<Vector>, order: ModuleOrder) -> GroebnerBasis {
        let rank = order.rank();
        for k in 0..rank {
            for q in ring.quotient_ideal() {
                let mut col = vec![Polynomial::zero(ring.order()); rank];
                col[k] = q.clone();
                vecs.push(Vector::from_column(&col, 0, &order));
            }
        }
        let elements = buchberger(vecs, &order, rank == 1);
        let index = LeadIndex::build(&elements);
        GroebnerBasis { ring: ring.clone(), order, elements, index }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.elements.iter().map(|v| v.to_column(0, self.rank(), self.ring.order())).collect()
    }

    pub fn leading_terms(&self) -> Vec<ModTerm> {
        self.elements.iter().filter_map(|v| v.lead_term()).collect()
    }

    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        reduce(v, &self.elements, &self.index, &self.order)
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: v.len() });
        }
        for p in v {
            self.ring.check(p)?;
        }
        let r = self.reduce_vector(&Vector::from_column(v, 0, &self.order));
        Ok(r.to_column(0, self.rank(), self.ring.order()))
    }

    /// Normal form of a polynomial against a rank-one basis.
    pub fn reduce_polynomial(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(self.rank(), 1, "reduce_polynomial needs an ideal basis");
        let r = self.reduce_vector(&Vector::from_column(std::slice::from_ref(f), 0, &self.order));
        r.to_column(0, 1, self.ring.order()).pop().unwrap()
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(Polynomial::is_zero))
    }

    pub fn is_standard(&self, t: &ModTerm) -> bool {
        self.index.is_standard(t)
    }

    /// Standard terms `m * e_k` with `deg m + twists[k] == d`, in descending order.
    pub fn standard_terms(&self, twists: &[i64], d: i64) -> Vec<ModTerm> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for (k, &t) in twists.iter().enumerate() {
            let e = d - t;
            if e < 0 {
                continue;
            }
            for mono in monomials_of_degree(n, e as u32) {
                let term = ModTerm { mono, pos: k as u32 };
                if self.is_standard(&term) {
                    out.push(term);
                }
            }
        }
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }

    /// Elements printed in the polynomial grammar, one list per element.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.elements().iter().map(|col| col.iter().map(|p| self.ring.format(p)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::scalar::Field;

    fn qq(vars: &[&str]) -> Arc<Ring> {
        Ring::polynomial(Field::Rationals, vars).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> GroebnerBasis {
        let g: Vec<Polynomial> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        GroebnerBasis::of_ideal(r, &g)
    }

    #[test]
    fn univariate_gcd() {
        let r = qq(&["x"]);
        assert_eq!(ideal(&r, &["x^2-1", "x^3-1"]).to_strings(), vec![vec!["x-1"]]);
    }

    #[test]
    fn already_reduced() {
        let r = qq(&["x", "y"]);
        assert_eq!(ideal(&r, &["x", "y"]).to_strings(), vec![vec!["x"], vec!["y"]]);
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = Ring::with_order(Field::Rationals, &["z", "y", "x"], MonomialOrder::Lex).unwrap();
        let gb = ideal(&r, &["y-x^2", "z-x^3"]);
        let target = r.parse("y^3-z^2").unwrap();
        assert!(gb.reduce_polynomial(&target).is_zero());
        // reduced: leading monomials pairwise non-dividing
        let lts = gb.leading_terms();
        for (i, a) in lts.iter().enumerate() {
            for (j, b) in lts.iter().enumerate() {
                assert!(i == j || !a.divides(b));
            }
        }
    }

    #[test]
    fn normal_forms() {
        let r = qq(&["x", "y"]);
        let gx = ideal(&r, &["x"]);
        assert!(gx.reduce_polynomial(&r.parse("x^2").unwrap()).is_zero());
        assert_eq!(r.format(&gx.reduce_polynomial(&r.parse("x^2+y").unwrap())), "y");
        let g = ideal(&r, &["x*y-1"]);
        assert_eq!(r.format(&g.reduce_polynomial(&r.parse("x*y").unwrap())), "1");
        assert!(matches!(g.normal_form(&[r.var(0), r.var(1)]), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn module_basis_with_quotient() {
        let r = qq(&["x", "y"]).quotient_by_strs(&["x*y"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &[vec![r.var(0), r.var(1)]], 2).unwrap();
        // y*(x, y) = (0, y^2) lies in the submodule
        assert!(gb.contains(&[r.zero(), r.parse("y^2").unwrap()]).unwrap());
        assert!(!gb.contains(&[r.zero(), r.var(1)]).unwrap());
    }

    #[test]
    fn deterministic() {
        let r = qq(&["x", "y", "z"]);
        let a = ideal(&r, &["x^2-y*z", "y^2-x*z", "z^2-x*y"]).to_strings();
        let b = ideal(&r, &["z^2-x*y", "x^2-y*z", "y^2-x*z"]).to_strings();
        assert_eq!(a, b);
    }
}
