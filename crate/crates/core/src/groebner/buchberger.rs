//! Buchberger's algorithm on sparse module vectors with the Gebauer–Möller pair update.

use std::collections::HashMap;

use super::vector::{merge_scaled, ModTerm, ModuleOrder, Vector};
use crate::monomial::Monomial;

/// Basis elements grouped by leading position for reducer lookup.
#[derive(Clone, Debug, Default)]
pub(crate) struct LeadIndex {
    by_pos: HashMap<u32, Vec<(Monomial, usize)>>,
}

impl LeadIndex {
    pub fn build(basis: &[Vector]) -> LeadIndex {
        let mut idx = LeadIndex::default();
        for (i, v) in basis.iter().enumerate() {
            idx.push(v, i);
        }
        idx
    }

    pub fn push(&mut self, v: &Vector, i: usize) {
        if let Some(t) = v.lead_term() {
            self.by_pos.entry(t.pos).or_default().push((t.mono, i));
        }
    }

    pub fn find(&self, t: &ModTerm) -> Option<usize> {
        self.by_pos.get(&t.pos)?.iter().find(|(m, _)| m.divides(&t.mono)).map(|&(_, i)| i)
    }

    /// Whether the term is a standard term (no leading term divides it).
    pub fn is_standard(&self, t: &ModTerm) -> bool {
        self.find(t).is_none()
    }
}

/// Full reduction of `v` modulo a basis with monic leading terms.
pub(crate) fn reduce(v: &Vector, basis: &[Vector], idx: &LeadIndex, ord: &ModuleOrder) -> Vector {
    let mut rest = v.terms.clone();
    let mut start = 0usize;
    let mut done = Vec::new();
    while start < rest.len() {
        let (t, c) = &rest[start];
        match idx.find(t) {
            Some(k) => {
                let g = &basis[k];
                let (gt, gc) = g.lead().expect("nonzero basis element");
                let q = gt.mono.quotient_of(&t.mono);
                let factor = c.div(gc).neg();
                // the leading terms cancel; merge the tails
                let merged = merge_scaled(&rest[start + 1..], &g.terms[1..], &q, &factor, ord);
                rest = merged.terms;
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    Vector { terms: done }
}

/// Reduces only until the leading term is standard.
pub(crate) fn top_reduce(v: &Vector, basis: &[Vector], idx: &LeadIndex, ord: &ModuleOrder) -> Vector {
    let mut cur = v.clone();
    while let Some((t, c)) = cur.lead() {
        let Some(k) = idx.find(t) else { break };
        let g = &basis[k];
        let (gt, gc) = g.lead().unwrap();
        let q = gt.mono.quotient_of(&t.mono);
        let factor = c.div(gc).neg();
        cur = merge_scaled(&cur.terms[1..], &g.terms[1..], &q, &factor, ord);
    }
    cur
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ModTerm,
}

fn lcm_term(a: &ModTerm, b: &ModTerm) -> ModTerm {
    debug_assert_eq!(a.pos, b.pos);
    ModTerm { mono: a.mono.lcm(&b.mono), pos: a.pos }
}

struct State<'o> {
    ord: &'o ModuleOrder,
    product_criterion: bool,
    basis: Vec<Vector>,
    active: Vec<bool>,
    index: LeadIndex,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn lt(&self, i: usize) -> ModTerm {
        self.basis[i].lead_term().unwrap()
    }

    fn insert(&mut self, h: Vector) {
        let hn = self.basis.len();
        let ht = h.lead_term().unwrap();

        let mut cands: Vec<(usize, ModTerm)> =
            (0..hn).filter(|&i| self.active[i] && self.lt(i).pos == ht.pos).map(|i| (i, lcm_term(&ht, &self.lt(i)))).collect();
        let mut kept: Vec<(usize, ModTerm, bool)> = Vec::new();
        while !cands.is_empty() {
            let (i1, l1) = cands.remove(0);
            let coprime = self.product_criterion && ht.mono.gcd_is_one(&self.lt(i1).mono);
            let dominated = cands.iter().any(|(_, l2)| l2.divides(&l1)) || kept.iter().any(|(_, l2, _)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((i1, l1, coprime));
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !ht.divides(&p.lcm) {
                return true;
            }
            let li = lcm_term(&basis[p.i].lead_term().unwrap(), &ht);
            let lj = lcm_term(&basis[p.j].lead_term().unwrap(), &ht);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept.into_iter().filter(|(_, _, coprime)| !coprime).map(|(i, lcm, _)| Pair { i, j: hn, lcm }));
        let ord = self.ord;
        self.pairs.sort_by(|a, b| ord.cmp(&b.lcm, &a.lcm).then_with(|| b.i.cmp(&a.i)).then_with(|| b.j.cmp(&a.j)));

        for i in 0..hn {
            if self.active[i] && ht.divides(&self.lt(i)) {
                self.active[i] = false;
            }
        }
        self.index.push(&h, hn);
        self.basis.push(h);
        self.active.push(true);
    }

    fn s_vector(&self, p: &Pair) -> Vector {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let (ft, fc) = f.lead().unwrap();
        let (gt, gc) = g.lead().unwrap();
        let qf = ft.mono.quotient_of(&p.lcm.mono);
        let qg = gt.mono.quotient_of(&p.lcm.mono);
        let a = f.mul_term(&qf, &gc.clone());
        a.add_scaled(g, &qg, &fc.neg(), self.ord)
    }
}

/// Computes the reduced Gröbner basis of the submodule generated by `gens`.
///
/// The product criterion is only sound for ideals, so callers pass `product_criterion`
/// only when every element lives in a single position.
pub(crate) fn buchberger(gens: Vec<Vector>, ord: &ModuleOrder, product_criterion: bool) -> Vec<Vector> {
    let mut gens: Vec<Vector> = gens.into_iter().filter(|v| !v.is_zero()).collect();
    gens.sort_by(|a, b| ord.cmp(&a.lead_term().unwrap(), &b.lead_term().unwrap()));
    let mut st = State { ord, product_criterion, basis: Vec::new(), active: Vec::new(), index: LeadIndex::default(), pairs: Vec::new() };
    for v in gens {
        let h = reduce(&v, &st.basis, &st.index, ord);
        if !h.is_zero() {
            st.insert(h.monic());
        }
    }
    while let Some(p) = st.pairs.pop() {
        let s = st.s_vector(&p);
        let h = top_reduce(&s, &st.basis, &st.index, ord);
        if !h.is_zero() {
            let h = reduce(&h, &st.basis, &st.index, ord);
            st.insert(h.monic());
        }
    }
    interreduce(st.basis.into_iter().zip(st.active).filter_map(|(v, a)| a.then_some(v)).collect(), ord)
}

/// Turns a basis with pairwise non-dividing leading terms into the reduced one.
pub(crate) fn interreduce(mut basis: Vec<Vector>, ord: &ModuleOrder) -> Vec<Vector> {
    basis.sort_by(|a, b| ord.cmp(&b.lead_term().unwrap(), &a.lead_term().unwrap()));
    // tail terms sit below their own leading term, so reducing against the whole
    // basis never uses an element on itself
    let idx = LeadIndex::build(&basis);
    let mut out = Vec::with_capacity(basis.len());
    for v in &basis {
        let (lt, lc) = v.lead().unwrap().clone();
        let tail = Vector { terms: v.terms[1..].to_vec() };
        let mut r = reduce(&tail, &basis, &idx, ord);
        r.terms.insert(0, (lt, lc));
        out.push(r.monic());
    }
    out
}
