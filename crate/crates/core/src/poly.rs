//! The truncated polynomial ring `A(n) = F_p[x_1..x_n] / (x_1^p, .., x_n^p)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Result, WittError};
use crate::params::Params;

/// Exponent vector `(a_1, .., a_n)` with every entry in `[0, p-1]`.
///
/// The derived ordering is lexicographic in the exponents, which is also the
/// numeric order of [`MultiIndex::index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(SmallVec<[u8; 8]>);

impl MultiIndex {
    pub fn new(params: &Params, exps: &[u32]) -> Result<Self> {
        if exps.len() != params.n() {
            return Err(WittError::Malformed(format!(
                "exponent vector has length {}, expected {}",
                exps.len(),
                params.n()
            )));
        }
        if let Some(&bad) = exps.iter().find(|&&e| e >= params.p()) {
            return Err(WittError::Malformed(format!("exponent {bad} is not below p = {}", params.p())));
        }
        Ok(MultiIndex(exps.iter().map(|&e| e as u8).collect()))
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    /// The exponent vector of `x_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub(crate) fn from_raw(exps: &[u8]) -> Self {
        MultiIndex(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Total degree `|a|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `a + b`, or `None` when some exponent reaches `p` (the product vanishes).
    pub fn checked_add(&self, other: &Self, p: u32) -> Option<Self> {
        let mut out = self.0.clone();
        for (o, &b) in out.iter_mut().zip(other.0.iter()) {
            let s = *o as u32 + b as u32;
            if s >= p {
                return None;
            }
            *o = s as u8;
        }
        Some(MultiIndex(out))
    }

    /// `a - e_i`, or `None` if `a_i = 0`.
    pub fn lower(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[i] -= 1;
        Some(MultiIndex(out))
    }

    /// Position in `0..p^n`, reading the exponents as base-`p` digits with
    /// `a_1` most significant.
    pub fn index(&self, p: u32) -> usize {
        self.0.iter().fold(0usize, |acc, &e| acc * p as usize + e as usize)
    }

    pub fn from_index(params: &Params, mut idx: usize) -> Self {
        let p = params.p() as usize;
        let mut exps: SmallVec<[u8; 8]> = SmallVec::from_elem(0, params.n());
        for slot in exps.iter_mut().rev() {
            *slot = (idx % p) as u8;
            idx /= p;
        }
        MultiIndex(exps)
    }

    /// All exponent vectors in increasing order.
    pub fn all(params: &Params) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..params.poly_dim()).map(move |k| MultiIndex::from_index(params, k))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Element of `A(n)`, stored sparsely with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    params: Params,
    terms: BTreeMap<MultiIndex, u32>,
}

impl TruncPoly {
    pub fn zero(params: Params) -> Self {
        TruncPoly { params, terms: BTreeMap::new() }
    }

    pub fn constant(params: Params, c: i64) -> Self {
        Self::monomial(params, MultiIndex::zero(params.n()), c)
    }

    pub fn one(params: Params) -> Self {
        Self::constant(params, 1)
    }

    /// The variable `x_i` (0-based `i`).
    pub fn var(params: Params, i: usize) -> Self {
        Self::monomial(params, MultiIndex::unit(params.n(), i), 1)
    }

    pub fn monomial(params: Params, exp: MultiIndex, c: i64) -> Self {
        let mut out = Self::zero(params);
        out.add_term(exp, params.reduce(c));
        out
    }

    pub fn from_terms<I>(params: Params, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, i64)>,
    {
        let mut out = Self::zero(params);
        for (exp, c) in terms {
            out.add_term(exp, params.reduce(c));
        }
        out
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> u32 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&MultiIndex::zero(self.params.n()))
    }

    /// Coefficient of `x_i` in the linear part.
    pub fn linear_coefficient(&self, i: usize) -> u32 {
        self.coefficient(&MultiIndex::unit(self.params.n(), i))
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).min()
    }

    pub(crate) fn add_term(&mut self, exp: MultiIndex, c: u32) {
        if c == 0 {
            return;
        }
        let pr = self.params;
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = pr.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`; both operands must share parameters.
    pub(crate) fn axpy(&mut self, c: u32, other: &TruncPoly) {
        debug_assert_eq!(self.params, other.params);
        if c == 0 {
            return;
        }
        for (m, &v) in &other.terms {
            self.add_term(m.clone(), self.params.mul(c, v));
        }
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.params.ensure_same(&other.params)?;
        let mut out = self.clone();
        out.axpy(1, other);
        Ok(out)
    }

    pub fn sub(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.params.ensure_same(&other.params)?;
        let mut out = self.clone();
        out.axpy(self.params.p() - 1, other);
        Ok(out)
    }

    pub fn neg(&self) -> TruncPoly {
        self.scale(self.params.p() - 1)
    }

    pub fn scale(&self, c: u32) -> TruncPoly {
        let c = c % self.params.p();
        if c == 0 {
            return Self::zero(self.params);
        }
        let terms = self.terms.iter().map(|(m, &v)| (m.clone(), self.params.mul(c, v))).collect();
        TruncPoly { params: self.params, terms }
    }

    /// Product in `A(n)`; terms with an exponent reaching `p` vanish.
    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.params.ensure_same(&other.params)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &TruncPoly) -> TruncPoly {
        let pr = self.params;
        let mut out = Self::zero(pr);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some(m) = a.checked_add(b, pr.p()) {
                    out.add_term(m, pr.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> TruncPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.params);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Partial derivative `∂_i` (0-based `i`): `∂_i x^a = a_i x^(a - e_i)`.
    pub fn derivative(&self, i: usize) -> TruncPoly {
        let pr = self.params;
        let mut out = Self::zero(pr);
        for (m, &c) in &self.terms {
            if let Some(low) = m.lower(i) {
                out.add_term(low, pr.mul(c, m.get(i) as u32 % pr.p()));
            }
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: u32) -> TruncPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, &c)| (m.clone(), c)).collect();
        TruncPoly { params: self.params, terms }
    }

    /// Drops every term of degree below `d`.
    pub fn truncate_below(&self, d: u32) -> TruncPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() >= d).map(|(m, &c)| (m.clone(), c)).collect();
        TruncPoly { params: self.params, terms }
    }

    /// Dense coefficient vector indexed by [`MultiIndex::index`].
    pub fn to_dense(&self) -> Vec<u32> {
        let mut v = vec![0; self.params.poly_dim()];
        for (m, &c) in &self.terms {
            v[m.index(self.params.p())] = c;
        }
        v
    }

    pub fn from_dense(params: Params, coeffs: &[u32]) -> TruncPoly {
        let mut out = Self::zero(params);
        for (k, &c) in coeffs.iter().enumerate() {
            if c % params.p() != 0 {
                out.terms.insert(MultiIndex::from_index(&params, k), c % params.p());
            }
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| PolyTermJson { exp: m.exponents().iter().map(|&e| e as u32).collect(), coef: c })
                .collect(),
        }
    }

    pub fn from_json(params: Params, json: &PolyJson) -> Result<TruncPoly> {
        let mut out = Self::zero(params);
        for t in &json.terms {
            if t.coef == 0 || t.coef >= params.p() {
                return Err(WittError::Malformed(format!("coefficient {} not in [1, p-1]", t.coef)));
            }
            let m = MultiIndex::new(&params, &t.exp)?;
            if out.terms.insert(m, t.coef).is_some() {
                return Err(WittError::Malformed("repeated exponent vector".into()));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (c, m.is_zero()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{m}")?,
                _ => write!(f, "{c}·{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exp: Vec<u32>,
    pub coef: u32,
}

/// Wire form of a [`TruncPoly`]; parameters travel with the enclosing object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<PolyTermJson>,
}
