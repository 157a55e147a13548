//! Sparse exact linear algebra over a [`Field`]: echelon bases with optional tracking of
//! the combinations that produced each row.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::{Field, Scalar};

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

/// An echelon basis of a subspace, filled one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
    inserted: usize,
    track: Option<Field>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// An echelon basis that records, for every row, the combination of inserted vectors it equals.
    pub fn tracking(field: Field) -> Echelon {
        Echelon { track: Some(field), ..Echelon::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_inner(&self, v: &SparseVec, combo: Option<SparseVec>) -> (SparseVec, Option<SparseVec>) {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut combo: Option<BTreeMap<usize, Scalar>> = combo.map(|c| c.into_iter().collect());
        let mut cursor = 0usize;
        while let Some((&c, val)) = work.range(cursor..).next() {
            let Some(&r) = self.pivots.get(&c) else {
                // the leading entry is free; stop at top reduction
                break;
            };
            let val = val.clone();
            for (col, a) in &self.rows[r] {
                axpy(&mut work, *col, &val, a);
            }
            if let (Some(cb), Some(rc)) = (combo.as_mut(), self.combos.get(r)) {
                for (col, a) in rc {
                    axpy(cb, *col, &val, a);
                }
            }
            cursor = c + 1;
        }
        (work.into_iter().collect(), combo.map(|c| c.into_iter().collect()))
    }

    /// Top-reduces `v`; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_inner(v, None).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`. A dependent vector yields, when tracking, the combination of
    /// inserted vectors (including `v` itself) that sums to zero.
    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let combo = self.track.map(|f| vec![(id, f.one())]);
        if v.is_empty() {
            return Insert::Dependent(combo);
        }
        let (r, combo) = self.reduce_inner(v, combo);
        if r.is_empty() {
            return Insert::Dependent(combo);
        }
        let inv = r[0].1.inv();
        let row: SparseVec = r.into_iter().map(|(i, c)| (i, c.mul(&inv))).collect();
        let combo = combo.map(|c| c.into_iter().map(|(i, a)| (i, a.mul(&inv))).collect());
        self.pivots.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        if let Some(c) = combo {
            self.combos.push(c);
        }
        Insert::Independent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    Independent,
    /// With tracking: coefficients `c_k` over inserted ids with `Σ c_k v_k = 0`.
    Dependent(Option<SparseVec>),
}

fn axpy(work: &mut BTreeMap<usize, Scalar>, col: usize, val: &Scalar, a: &Scalar) {
    // work[col] -= val * a
    let delta = val.mul(a);
    match work.get_mut(&col) {
        Some(x) => {
            let s = x.sub(&delta);
            if s.is_zero() {
                work.remove(&col);
            } else {
                *x = s;
            }
        }
        None => {
            work.insert(col, delta.neg());
        }
    }
}

/// Rank of the span of `vs`.
pub fn rank(vs: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// A basis of `{ c : Σ c_k vs[k] = 0 }`, as sparse vectors indexed by `k`.
pub fn kernel(vs: &[SparseVec], field: Field) -> Vec<SparseVec> {
    let mut e = Echelon::tracking(field);
    let mut out = Vec::new();
    for v in vs {
        match e.insert(v) {
            Insert::Independent => {}
            Insert::Dependent(Some(c)) => out.push(c),
            Insert::Dependent(None) => unreachable!("tracking echelon"),
        }
    }
    out
}

/// Applies a sparse-column matrix to a sparse vector.
pub fn apply(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (j, c) in v {
        for (i, a) in &cols[*j] {
            let d = a.mul(c);
            match acc.get_mut(i) {
                Some(x) => {
                    let s = x.add(&d);
                    if s.is_zero() {
                        acc.remove(i);
                    } else {
                        *x = s;
                    }
                }
                None => {
                    acc.insert(*i, d);
                }
            }
        }
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().filter(|(_, c)| *c != 0).map(|&(i, c)| (i, Field::Rationals.from_i64(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1)]), v(&[])];
        assert_eq!(rank(&vs), 2);
        let ker = kernel(&vs, Field::Rationals);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(apply(&vs, k).is_empty());
        }
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 1), (2, 1)]));
        e.insert(&v(&[(1, 1), (2, -1)]));
        assert!(e.contains(&v(&[(0, 1), (1, 1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn prime_field() {
        let f = Field::prime(3).unwrap();
        let a: SparseVec = vec![(0, f.from_i64(1)), (1, f.from_i64(1))];
        let b: SparseVec = vec![(0, f.from_i64(2)), (1, f.from_i64(2))];
        assert_eq!(rank(&[a, b]), 1);
    }
}
