//! Sparse vectors and row-echelon reduction over F_p.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::params::Params;

/// Sparse vector: strictly increasing columns, nonzero values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, u32)>,
}

impl SparseVec {
    pub fn from_sorted(entries: Vec<(usize, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[u32], p: u32) -> Self {
        let entries = v.iter().enumerate().filter(|(_, &c)| c % p != 0).map(|(k, &c)| (k, c % p)).collect();
        SparseVec { entries }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, 1)] }
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, u32)> {
        self.entries.first().copied()
    }

    pub fn get(&self, col: usize) -> u32 {
        self.entries.binary_search_by_key(&col, |e| e.0).map(|k| self.entries[k].1).unwrap_or(0)
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for &(k, c) in &self.entries {
            v[k] = c;
        }
        v
    }

    pub fn scale(&self, c: u32, pr: &Params) -> SparseVec {
        if c % pr.p() == 0 {
            return SparseVec::default();
        }
        SparseVec { entries: self.entries.iter().map(|&(k, v)| (k, pr.mul(v, c))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: u32, other: &SparseVec, pr: &Params) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let a = self.entries.get(i);
            let b = other.entries.get(j);
            match (a, b) {
                (Some(&(ka, va)), Some(&(kb, vb))) if ka == kb => {
                    let s = pr.add(va, pr.mul(c, vb));
                    if s != 0 {
                        out.push((ka, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ka, va)), Some(&(kb, _))) if ka < kb => {
                    out.push((ka, va));
                    i += 1;
                }
                (Some(&(ka, va)), None) => {
                    out.push((ka, va));
                    i += 1;
                }
                (_, Some(&(kb, vb))) => {
                    let s = pr.mul(c, vb);
                    if s != 0 {
                        out.push((kb, s));
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    /// Keeps only the columns accepted by `keep`.
    pub fn project(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec { entries: self.entries.iter().copied().filter(|&(k, _)| keep(k)).collect() }
    }
}

/// Incremental semi-echelon basis: every row has leading coefficient 1 and a
/// distinct leading column. [`EchelonBuilder::finish`] produces the reduced
/// row-echelon form.
#[derive(Debug, Clone)]
pub struct EchelonBuilder {
    params: Params,
    ncols: usize,
    rows: Vec<SparseVec>,
    row_at: Vec<u32>,
    dense: Vec<u32>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

const NONE: u32 = u32::MAX;

impl EchelonBuilder {
    pub fn new(params: Params, ncols: usize) -> Self {
        EchelonBuilder {
            params,
            ncols,
            rows: Vec::new(),
            row_at: vec![NONE; ncols],
            dense: vec![0; ncols],
            queued: vec![false; ncols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Remainder of `v` after elimination against the current rows; its
    /// columns avoid every leading column.
    pub fn reduce(&mut self, v: &SparseVec) -> SparseVec {
        let pr = self.params;
        for &(k, c) in v.entries() {
            self.dense[k] = c;
            self.queued[k] = true;
            self.heap.push(Reverse(k));
        }
        let mut residual = Vec::new();
        while let Some(Reverse(col)) = self.heap.pop() {
            self.queued[col] = false;
            let val = std::mem::take(&mut self.dense[col]);
            if val == 0 {
                continue;
            }
            let r = self.row_at[col];
            if r == NONE {
                residual.push((col, val));
                continue;
            }
            let neg = pr.neg(val);
            for &(k, rv) in self.rows[r as usize].entries().iter().skip(1) {
                let slot = &mut self.dense[k];
                *slot = pr.add(*slot, pr.mul(neg, rv));
                if !self.queued[k] {
                    self.queued[k] = true;
                    self.heap.push(Reverse(k));
                }
            }
        }
        SparseVec::from_sorted(residual)
    }

    /// Adds `v` to the span; returns the normalized new row when the dimension grows.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let res = self.reduce(v);
        let (lead, c) = res.leading()?;
        let row = res.scale(self.params.inv(c), &self.params);
        self.row_at[lead] = self.rows.len() as u32;
        self.rows.push(row.clone());
        Some(row)
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Reduced row-echelon rows sorted by pivot column.
    pub fn finish(mut self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&r| Reverse(self.rows[r].entries()[0].0));
        // Back-substitution from the rightmost pivot: rows with larger pivots
        // are already fully reduced when they are used.
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let (lead, _) = row.leading().expect("rows are nonzero");
            let tail = SparseVec::from_sorted(row.entries()[1..].to_vec());
            self.row_at[lead] = NONE;
            let reduced_tail = self.reduce(&tail);
            let mut entries = Vec::with_capacity(reduced_tail.len() + 1);
            entries.push((lead, 1));
            entries.extend_from_slice(reduced_tail.entries());
            self.rows[r] = SparseVec::from_sorted(entries);
            self.row_at[lead] = r as u32;
        }
        let mut rows = self.rows;
        rows.sort_unstable_by_key(|row| row.entries()[0].0);
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr() -> Params {
        Params::new(5, 1).unwrap()
    }

    #[test]
    fn rref_is_canonical() {
        let params = pr();
        let a = SparseVec::from_dense(&[1, 2, 0, 3], 5);
        let b = SparseVec::from_dense(&[0, 1, 1, 0], 5);
        let c = a.axpy(2, &b, &params);

        let mut e1 = EchelonBuilder::new(params, 4);
        e1.insert(&a);
        e1.insert(&b);
        assert!(e1.insert(&c).is_none());

        let mut e2 = EchelonBuilder::new(params, 4);
        e2.insert(&c);
        e2.insert(&b.scale(3, &params));
        assert_eq!(e1.finish(), e2.finish());
    }

    #[test]
    fn finish_eliminates_above_pivots() {
        let params = pr();
        let mut e = EchelonBuilder::new(params, 3);
        e.insert(&SparseVec::from_dense(&[1, 1, 1], 5));
        e.insert(&SparseVec::from_dense(&[0, 1, 2], 5));
        let rows = e.finish();
        assert_eq!(rows[0], SparseVec::from_dense(&[1, 0, 4], 5));
        assert_eq!(rows[1], SparseVec::from_dense(&[0, 1, 2], 5));
    }

    #[test]
    fn axpy_cancels() {
        let params = pr();
        let a = SparseVec::from_dense(&[1, 2, 0, 3], 5);
        assert!(a.axpy(4, &a, &params).is_zero());
    }
}
