//! F_p-linear subspaces of `W(n)` in canonical reduced row-echelon form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::{Accumulator, WittBasis};
use crate::error::{Result, WittError};
use crate::linalg::{EchelonBuilder, SparseVec};
use crate::params::Params;
use crate::witt::WittElement;

/// A subspace of `W(n)`. Rows are the reduced row-echelon basis over the
/// monomial coordinates, so equal subspaces have identical rows.
#[derive(Clone)]
pub struct Subspace {
    basis: WittBasis,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.params() == other.params() && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("params", &self.params())
            .field("dim", &self.dim())
            .field("pivots", &self.pivots)
            .finish()
    }
}

impl Subspace {
    pub fn zero(params: Params) -> Self {
        Self::from_rows(WittBasis::new(params), Vec::new())
    }

    /// All of `W(n)`.
    pub fn full(params: Params) -> Self {
        let basis = WittBasis::new(params);
        let rows = (0..basis.len()).map(SparseVec::unit).collect();
        Self::from_rows(basis, rows)
    }

    fn from_rows(basis: WittBasis, rows: Vec<SparseVec>) -> Self {
        let pivots = rows.iter().map(|r| r.entries()[0].0).collect();
        Subspace { basis, rows, pivots }
    }

    pub(crate) fn from_builder(basis: WittBasis, builder: EchelonBuilder) -> Self {
        Self::from_rows(basis, builder.finish())
    }

    /// Span of arbitrary coordinate vectors.
    pub fn from_vectors<'a>(params: Params, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let basis = WittBasis::new(params);
        let mut builder = EchelonBuilder::new(params, basis.len());
        for v in vectors {
            builder.insert(v);
        }
        Self::from_builder(basis, builder)
    }

    /// Span of the basis vectors `x^a ∂_i` with the given coordinate indices.
    pub fn from_basis_indices(params: Params, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx.into_iter().map(SparseVec::unit).collect();
        Self::from_rows(WittBasis::new(params), rows)
    }

    /// Canonical form of the linear span of `elements`.
    pub fn span(params: Params, elements: &[WittElement]) -> Result<Self> {
        let basis = WittBasis::new(params);
        let mut builder = EchelonBuilder::new(params, basis.len());
        for e in elements {
            params.ensure_same(&e.params())?;
            builder.insert(&basis.to_sparse(e));
        }
        Ok(Self::from_builder(basis, builder))
    }

    pub fn params(&self) -> Params {
        self.basis.params()
    }

    pub fn witt_basis(&self) -> &WittBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Echelon basis as Witt elements.
    pub fn basis_elements(&self) -> Vec<WittElement> {
        self.rows.iter().map(|r| self.basis.to_element(r)).collect()
    }

    pub(crate) fn builder(&self) -> EchelonBuilder {
        let mut b = EchelonBuilder::new(self.params(), self.basis.len());
        for r in &self.rows {
            b.insert(r);
        }
        b
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        // Rows are fully reduced, so one subtraction per pivot column in the
        // support of `v` suffices.
        let pr = self.params();
        let mut out = v.clone();
        for &(col, c) in v.entries() {
            if let Ok(r) = self.pivots.binary_search(&col) {
                out = out.axpy(pr.neg(c), &self.rows[r], &pr);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains(&self, d: &WittElement) -> Result<bool> {
        self.params().ensure_same(&d.params())?;
        Ok(self.contains_vector(&self.basis.to_sparse(d)))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.params().ensure_same(&other.params())?;
        Ok(other.rows.iter().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.params().ensure_same(&other.params())?;
        let mut b = self.builder();
        for r in &other.rows {
            b.insert(r);
        }
        Ok(Self::from_builder(self.basis.clone(), b))
    }

    pub fn with_elements(&self, extra: &[WittElement]) -> Result<Subspace> {
        let mut b = self.builder();
        for e in extra {
            self.params().ensure_same(&e.params())?;
            b.insert(&self.basis.to_sparse(e));
        }
        Ok(Self::from_builder(self.basis.clone(), b))
    }

    /// `span{[s, t] : s, t basis vectors of self, other}`.
    pub fn bracket_space(&self, other: &Subspace) -> Result<Subspace> {
        self.params().ensure_same(&other.params())?;
        let pr = self.params();
        let mut builder = EchelonBuilder::new(pr, self.basis.len());
        let mut acc = Accumulator::new(self.basis.len());
        let same = std::ptr::eq(self, other) || self == other;
        for (a, s) in self.rows.iter().enumerate() {
            let start = if same { a + 1 } else { 0 };
            for t in &other.rows[start..] {
                let b = self.basis.bracket_vectors(s, t, &mut acc);
                if !b.is_zero() {
                    builder.insert(&b);
                }
            }
        }
        Ok(Self::from_builder(self.basis.clone(), builder))
    }

    pub fn is_subalgebra(&self) -> bool {
        let mut acc = Accumulator::new(self.basis.len());
        for (a, s) in self.rows.iter().enumerate() {
            for t in &self.rows[a + 1..] {
                let b = self.basis.bracket_vectors(s, t, &mut acc);
                if !self.contains_vector(&b) {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn require_subalgebra(&self) -> Result<()> {
        if self.is_subalgebra() {
            Ok(())
        } else {
            Err(WittError::NotASubalgebra)
        }
    }

    pub fn is_abelian(&self) -> bool {
        let mut acc = Accumulator::new(self.basis.len());
        self.rows
            .iter()
            .enumerate()
            .all(|(a, s)| self.rows[a + 1..].iter().all(|t| self.basis.bracket_vectors(s, t, &mut acc).is_zero()))
    }

    /// Smallest Lie subalgebra containing `self`.
    pub fn subalgebra_closure(&self) -> Subspace {
        closure_from(self.basis.clone(), self.builder(), self.rows.clone())
    }

    /// Smallest restricted subalgebra containing `self`: alternates Lie
    /// closure with adjoining `p`-th powers of basis vectors.
    pub fn restricted_closure(&self) -> Subspace {
        let mut current = self.subalgebra_closure();
        loop {
            let powers: Vec<WittElement> = current.basis_elements().iter().map(WittElement::p_power).collect();
            let grown = current.with_elements(&powers).expect("same params");
            if grown.dim() == current.dim() {
                return current;
            }
            current = grown.subalgebra_closure();
        }
    }

    /// Rank of the projection onto the coordinates accepted by `keep`.
    pub fn projection_rank(&self, keep: impl Fn(usize) -> bool) -> usize {
        let mut b = EchelonBuilder::new(self.params(), self.basis.len());
        for r in &self.rows {
            b.insert(&r.project(&keep));
        }
        b.dim()
    }

    /// `dim(S ∩ W(n)_{>= i})` in the standard grading.
    pub fn dim_degree_at_least(&self, i: i32) -> usize {
        self.dim() - self.projection_rank(|k| self.basis.degree(k) < i)
    }

    /// `dim(S ∩ W(n)_i)` in the standard grading.
    pub fn dim_homogeneous(&self, i: i32) -> usize {
        self.dim() - self.projection_rank(|k| self.basis.degree(k) != i)
    }

    /// Whether `S = ⊕ (S ∩ W(n)_i)`.
    pub fn is_standard_graded(&self) -> bool {
        let pr = self.params();
        (-1..=pr.top_degree()).map(|i| self.dim_homogeneous(i)).sum::<usize>() == self.dim()
    }

    pub fn to_json(&self) -> SubspaceJson {
        let p = self.params();
        SubspaceJson {
            p: p.p(),
            n: p.n(),
            dim: self.dim(),
            rows: self.rows.iter().map(|r| r.to_dense(self.basis.len())).collect(),
        }
    }

    pub fn from_json(json: &SubspaceJson) -> Result<Subspace> {
        let params = Params::new(json.p, json.n)?;
        let len = params.witt_dim();
        let mut vecs = Vec::with_capacity(json.rows.len());
        for row in &json.rows {
            if row.len() != len {
                return Err(WittError::Malformed(format!("row of length {} (expected {len})", row.len())));
            }
            vecs.push(SparseVec::from_dense(row, params.p()));
        }
        let s = Self::from_vectors(params, &vecs);
        if s.dim() != json.dim {
            return Err(WittError::Malformed(format!("declared dim {} but rows span {}", json.dim, s.dim())));
        }
        Ok(s)
    }
}

/// Semi-naive fixpoint: each new basis vector is bracketed once with every
/// vector found before it.
fn closure_from(basis: WittBasis, mut builder: EchelonBuilder, seeds: Vec<SparseVec>) -> Subspace {
    let mut gens = seeds;
    let mut acc = Accumulator::new(basis.len());
    let mut k = 0;
    while k < gens.len() {
        let g = gens[k].clone();
        for h in 0..k {
            let b = basis.bracket_vectors(&g, &gens[h], &mut acc);
            if b.is_zero() {
                continue;
            }
            if let Some(row) = builder.insert(&b) {
                gens.push(row);
            }
        }
        k += 1;
    }
    Subspace::from_builder(basis, builder)
}

/// Wire form of a [`Subspace`]; rows are dense and in echelon order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub p: u32,
    pub n: usize,
    pub dim: usize,
    pub rows: Vec<Vec<u32>>,
}
