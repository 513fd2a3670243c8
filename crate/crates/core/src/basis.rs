//! Coordinates of `W(n)` in the monomial basis and the structure constants
//! of the bracket on basis vectors.
//!
//! Basis vector `k = dir * p^n + idx(a)` is `x^a ∂_{dir+1}`, matching
//! [`crate::witt::monomial_basis`].

use smallvec::SmallVec;

use crate::linalg::SparseVec;
use crate::params::Params;
use crate::poly::MultiIndex;
use crate::witt::WittElement;

#[derive(Debug, Clone)]
pub struct WittBasis {
    params: Params,
    poly_dim: usize,
    /// digits[m * n + i] = exponent of x_{i+1} in monomial m
    digits: Vec<u8>,
    /// place value of x_{i+1} in the packed monomial index
    place: Vec<usize>,
    /// standard degree of every basis vector
    degree: Vec<i32>,
}

impl WittBasis {
    pub fn new(params: Params) -> Self {
        let n = params.n();
        let poly_dim = params.poly_dim();
        let mut digits = Vec::with_capacity(poly_dim * n);
        for m in MultiIndex::all(&params) {
            digits.extend_from_slice(m.exponents());
        }
        let p = params.p() as usize;
        let place = (0..n).map(|i| p.pow((n - 1 - i) as u32)).collect();
        let degree = (0..params.witt_dim())
            .map(|k| {
                let m = k % poly_dim;
                digits[m * n..(m + 1) * n].iter().map(|&e| e as i32).sum::<i32>() - 1
            })
            .collect();
        WittBasis { params, poly_dim, digits, place, degree }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn len(&self) -> usize {
        self.params.witt_dim()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, exp: &MultiIndex, dir: usize) -> usize {
        dir * self.poly_dim + exp.index(self.params.p())
    }

    /// `(dir, monomial index)` of basis vector `k`.
    #[inline]
    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.poly_dim, k % self.poly_dim)
    }

    #[inline]
    pub fn exponents(&self, mono: usize) -> &[u8] {
        let n = self.params.n();
        &self.digits[mono * n..(mono + 1) * n]
    }

    #[inline]
    pub fn degree(&self, k: usize) -> i32 {
        self.degree[k]
    }

    pub fn element(&self, k: usize) -> WittElement {
        let (dir, m) = self.split(k);
        WittElement::monomial(self.params, MultiIndex::from_raw(self.exponents(m)), dir, 1)
    }

    /// `x^(a+b-e_drop)` as a monomial index, or `None` if it vanishes.
    #[inline]
    fn shifted_product(&self, a: usize, b: usize, drop: usize) -> Option<usize> {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        let top = self.params.p() as u32 - 1;
        for i in 0..ea.len() {
            let s = ea[i] as u32 + eb[i] as u32 - u32::from(i == drop);
            if s > top {
                return None;
            }
        }
        Some(a + b - self.place[drop])
    }

    /// `[x^a ∂_i, x^b ∂_j] = b_i x^(a+b-e_i) ∂_j - a_j x^(a+b-e_j) ∂_i`.
    pub fn bracket_basis(&self, k1: usize, k2: usize) -> SmallVec<[(usize, u32); 2]> {
        let pr = &self.params;
        let (i, a) = self.split(k1);
        let (j, b) = self.split(k2);
        let bi = self.exponents(b)[i] as u32;
        let aj = self.exponents(a)[j] as u32;
        let mut out: SmallVec<[(usize, u32); 2]> = SmallVec::new();
        if bi > 0 {
            if let Some(m) = self.shifted_product(a, b, i) {
                out.push((j * self.poly_dim + m, bi % pr.p()));
            }
        }
        if aj > 0 {
            if let Some(m) = self.shifted_product(a, b, j) {
                let col = i * self.poly_dim + m;
                let c = pr.neg(aj % pr.p());
                match out.first_mut() {
                    Some(first) if first.0 == col => {
                        first.1 = pr.add(first.1, c);
                        if first.1 == 0 {
                            out.clear();
                        }
                    }
                    _ => out.push((col, c)),
                }
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vectors(&self, u: &SparseVec, v: &SparseVec, acc: &mut Accumulator) -> SparseVec {
        let pr = self.params;
        for &(k1, c1) in u.entries() {
            for &(k2, c2) in v.entries() {
                let c = pr.mul(c1, c2);
                for (col, s) in self.bracket_basis(k1, k2) {
                    acc.add(col, pr.mul(c, s), &pr);
                }
            }
        }
        acc.drain()
    }

    pub fn to_sparse(&self, d: &WittElement) -> SparseVec {
        let entries = d.terms().map(|(dir, m, c)| (self.index_of(m, dir), c)).collect();
        SparseVec::from_sorted(entries)
    }

    pub fn to_element(&self, v: &SparseVec) -> WittElement {
        let mut out = WittElement::zero(self.params);
        for &(k, c) in v.entries() {
            out.axpy(c, &self.element(k));
        }
        out
    }
}

/// Dense scratch accumulator that remembers which slots were touched.
#[derive(Debug, Clone)]
pub struct Accumulator {
    values: Vec<u32>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator { values: vec![0; len], touched: Vec::new() }
    }

    #[inline]
    pub fn add(&mut self, col: usize, c: u32, pr: &Params) {
        if c == 0 {
            return;
        }
        let slot = &mut self.values[col];
        if *slot == 0 {
            self.touched.push(col);
        }
        *slot = pr.add(*slot, c);
    }

    pub fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &col in &self.touched {
            let c = std::mem::take(&mut self.values[col]);
            if c != 0 {
                entries.push((col, c));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::monomial_basis;

    #[test]
    fn structure_constants_match_element_bracket() {
        for (p, n) in [(5u32, 1usize), (5, 2), (3, 2)] {
            let params = Params::new(p, n).unwrap();
            let wb = WittBasis::new(params);
            let basis = monomial_basis(params);
            let mut acc = Accumulator::new(wb.len());
            for (k1, e1) in basis.iter().enumerate() {
                for (k2, e2) in basis.iter().enumerate() {
                    let direct = wb.to_sparse(&e1.bracket(e2).unwrap());
                    let fast = SparseVec::from_sorted(wb.bracket_basis(k1, k2).to_vec());
                    assert_eq!(direct, fast, "[{e1}, {e2}]");
                    let via = wb.bracket_vectors(&wb.to_sparse(e1), &wb.to_sparse(e2), &mut acc);
                    assert_eq!(via, direct);
                }
            }
        }
    }

    #[test]
    fn degrees() {
        let params = Params::new(5, 2).unwrap();
        let wb = WittBasis::new(params);
        assert_eq!(wb.degree(0), -1);
        assert_eq!(wb.degree(24), 7);
        assert_eq!(wb.degree(25), -1);
    }
}
