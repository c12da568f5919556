//! Sparse exact linear algebra over Q.
//!
//! Everything is built on an incrementally maintained echelon basis: vectors
//! are inserted one at a time and reduced against the rows collected so far,
//! scanning columns in increasing order and always pivoting on the first
//! nonzero entry. Optionally each row remembers how it was combined from the
//! inserted vectors, which yields kernels and solution vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Scalar;

/// Sorted `(column, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
struct Row {
    entries: SparseVec,
    combo: SparseVec,
}

/// Row-echelon basis of a subspace of `Q^ncols`.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Row>,
    pivot_row: Vec<Option<usize>>,
    track: bool,
    inserted: usize,
}

/// Outcome of inserting a vector.
#[derive(Clone, Debug, PartialEq)]
pub enum Insert {
    /// The vector was independent; it is now represented by a new pivot.
    Independent,
    /// The vector was dependent. With tracking enabled this carries a linear
    /// relation among the inserted vectors (coefficient of the new one is 1).
    Dependent(Option<SparseVec>),
}

impl Echelon {
    pub fn new(ncols: usize, track: bool) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            track,
            inserted: 0,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (dependent ones included).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.entries[0].0)
    }

    fn reduce_dense(&self, v: &[(usize, Scalar)], combo: Option<&mut BTreeMap<usize, Scalar>>) -> SparseVec {
        let Some(&(first, _)) = v.first() else {
            return Vec::new();
        };
        let mut dense: Vec<Scalar> = vec![Scalar::zero(); self.ncols];
        for (c, x) in v {
            assert!(*c < self.ncols, "column {c} out of range {}", self.ncols);
            dense[*c] = x.clone();
        }
        let mut combo = combo;
        for c in first..self.ncols {
            if dense[c].is_zero() {
                continue;
            }
            let Some(r) = self.pivot_row[c] else { continue };
            let row = &self.rows[r];
            let f = dense[c].clone();
            for (k, x) in &row.entries {
                dense[*k] -= &f * x;
            }
            if let Some(combo) = combo.as_deref_mut() {
                for (k, x) in &row.combo {
                    let slot = combo.entry(*k).or_insert_with(Scalar::zero);
                    *slot += &f * x;
                }
            }
        }
        dense.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Canonical representative of `v` modulo the span: the unique vector in
    /// `v + span` that vanishes on every pivot column.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.reduce_dense(v, None)
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        if self.track {
            let mut used = BTreeMap::new();
            let residual = self.reduce_dense(v, Some(&mut used));
            // v = residual + sum used[k] * original_k
            if residual.is_empty() {
                let mut rel: SparseVec = used
                    .into_iter()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, -x))
                    .collect();
                rel.push((id, Scalar::one()));
                return Insert::Dependent(Some(rel));
            }
            let inv = Scalar::one() / &residual[0].1;
            let mut combo: SparseVec = used
                .into_iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, -x * &inv))
                .collect();
            combo.push((id, inv.clone()));
            self.push_row(residual, inv, combo);
            Insert::Independent
        } else {
            let residual = self.reduce_dense(v, None);
            if residual.is_empty() {
                return Insert::Dependent(None);
            }
            let inv = Scalar::one() / &residual[0].1;
            self.push_row(residual, inv, Vec::new());
            Insert::Independent
        }
    }

    fn push_row(&mut self, residual: SparseVec, inv: Scalar, combo: SparseVec) {
        let entries: SparseVec = residual.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        let pivot = entries[0].0;
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(Row { entries, combo });
    }

    /// Expresses `target` as a combination of the inserted vectors, if it lies
    /// in their span. Requires tracking.
    pub fn solve(&self, target: &[(usize, Scalar)]) -> Option<SparseVec> {
        assert!(self.track, "solve needs an echelon built with tracking");
        let mut used = BTreeMap::new();
        let residual = self.reduce_dense(target, Some(&mut used));
        if !residual.is_empty() {
            return None;
        }
        Some(used.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }
}

/// Rank of a list of vectors in `Q^ncols`.
pub fn rank(ncols: usize, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(ncols, false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// A basis of the kernel of the linear map sending the `j`-th standard basis
/// vector to `columns[j]`. Each kernel vector is a sparse vector over the
/// column indices `0..columns.len()`.
pub fn kernel(ncols: usize, columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols, true);
    let mut out = Vec::new();
    for c in columns {
        if let Insert::Dependent(Some(rel)) = e.insert(c) {
            out.push(rel);
        }
    }
    out
}

/// Dense helper: converts a sparse vector to a dense one of length `n`.
pub fn to_dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

/// Sparse linear combination `sum coeffs[k] * vectors[k]`.
pub fn combine(coeffs: &[(usize, Scalar)], vectors: &[SparseVec]) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in coeffs {
        for (i, x) in &vectors[*k] {
            *acc.entry(*i).or_insert_with(Scalar::zero) += c * x;
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, q(x))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 3), (2, 1)])];
        assert_eq!(rank(3, &vs), 2);
        let mut e = Echelon::new(3, false);
        for x in &vs {
            e.insert(x);
        }
        assert!(e.contains(&v(&[(0, 2), (1, 5), (2, 1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn kernel_relations_hold() {
        let cols = vec![
            v(&[(0, 1), (1, 2)]),
            v(&[(1, 1), (2, 1)]),
            v(&[(0, 1), (1, 3), (2, 1)]),
            v(&[]),
        ];
        let ker = kernel(3, &cols);
        assert_eq!(ker.len(), 2);
        for rel in &ker {
            assert!(combine(rel, &cols).is_empty());
        }
    }

    #[test]
    fn solve_returns_combination() {
        let vs = vec![v(&[(0, 2)]), v(&[(0, 1), (1, 1)]), v(&[(1, 3), (2, 1)])];
        let mut e = Echelon::new(3, true);
        for x in &vs {
            e.insert(x);
        }
        let target = v(&[(0, 5), (1, 7), (2, 2)]);
        let coeffs = e.solve(&target).unwrap();
        assert_eq!(combine(&coeffs, &vs), target);
        assert!(Echelon::new(3, true).solve(&v(&[(1, 1)])).is_none());
    }

    #[test]
    fn reduce_is_canonical() {
        let mut a = Echelon::new(3, false);
        a.insert(&v(&[(0, 1), (1, 1)]));
        let mut b = Echelon::new(3, false);
        b.insert(&v(&[(0, 3), (1, 3)]));
        let x = v(&[(0, 4), (2, 1)]);
        assert_eq!(a.reduce(&x), b.reduce(&x));
        assert_eq!(a.reduce(&x), v(&[(1, -4), (2, 1)]));
    }
}
