//! Elements of `W(n) = ⊕ A(n) ∂_i`, the Lie algebra of derivations of `A(n)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::matrix::FpMatrix;
use crate::params::Params;
use crate::poly::{MultiIndex, TruncPoly};

/// A derivation `Σ f_i ∂_i`; `coeffs[i]` is the coefficient of `∂_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittElement {
    params: Params,
    coeffs: Vec<TruncPoly>,
}

impl WittElement {
    pub fn new(params: Params, coeffs: Vec<TruncPoly>) -> Result<Self> {
        if coeffs.len() != params.n() {
            return Err(WittError::Malformed(format!(
                "expected {} coefficients, got {}",
                params.n(),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            params.ensure_same(&c.params())?;
        }
        Ok(WittElement { params, coeffs })
    }

    pub fn zero(params: Params) -> Self {
        WittElement { params, coeffs: vec![TruncPoly::zero(params); params.n()] }
    }

    /// `∂_i` with 0-based `i`.
    pub fn partial(params: Params, i: usize) -> Self {
        Self::monomial(params, MultiIndex::zero(params.n()), i, 1)
    }

    /// `c · x^a ∂_dir` with 0-based `dir`.
    pub fn monomial(params: Params, exp: MultiIndex, dir: usize, c: i64) -> Self {
        let mut out = Self::zero(params);
        out.coeffs[dir] = TruncPoly::monomial(params, exp, c);
        out
    }

    /// `f ∂_dir`.
    pub fn from_coefficient(f: TruncPoly, dir: usize) -> Self {
        let params = f.params();
        let mut out = Self::zero(params);
        out.coeffs[dir] = f;
        out
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn coeff(&self, i: usize) -> &TruncPoly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[TruncPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TruncPoly::is_zero)
    }

    /// Terms `(dir, exponent, coefficient)` in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &MultiIndex, u32)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, f)| f.terms().map(move |(m, c)| (i, m, c)))
    }

    pub(crate) fn axpy(&mut self, c: u32, other: &WittElement) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.axpy(c, b);
        }
    }

    pub fn add(&self, other: &WittElement) -> Result<WittElement> {
        self.params.ensure_same(&other.params)?;
        let mut out = self.clone();
        out.axpy(1, other);
        Ok(out)
    }

    pub fn sub(&self, other: &WittElement) -> Result<WittElement> {
        self.params.ensure_same(&other.params)?;
        let mut out = self.clone();
        out.axpy(self.params.p() - 1, other);
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> WittElement {
        WittElement { params: self.params, coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn neg(&self) -> WittElement {
        self.scale(self.params.p() - 1)
    }

    /// `D(f) = Σ D_i ∂_i(f)`, the natural action on `A(n)`.
    pub fn apply(&self, f: &TruncPoly) -> Result<TruncPoly> {
        self.params.ensure_same(&f.params())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &TruncPoly) -> TruncPoly {
        let mut out = TruncPoly::zero(self.params);
        for (i, di) in self.coeffs.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            let df = f.derivative(i);
            if !df.is_zero() {
                out.axpy(1, &di.mul_unchecked(&df));
            }
        }
        out
    }

    /// `[D, E]`, whose `∂_j` coefficient is `D(E_j) - E(D_j)`.
    pub fn bracket(&self, other: &WittElement) -> Result<WittElement> {
        self.params.ensure_same(&other.params)?;
        Ok(self.bracket_unchecked(other))
    }

    pub(crate) fn bracket_unchecked(&self, other: &WittElement) -> WittElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(dj, ej)| {
                let mut c = self.apply_unchecked(ej);
                c.axpy(self.params.p() - 1, &other.apply_unchecked(dj));
                c
            })
            .collect();
        WittElement { params: self.params, coeffs }
    }

    /// The restricted `p`-th power: the derivation acting as the `p`-fold
    /// composite `D ∘ .. ∘ D`, read off from its values on `x_1, .., x_n`.
    pub fn p_power(&self) -> WittElement {
        let coeffs = (0..self.params.n())
            .map(|i| {
                let mut f = TruncPoly::var(self.params, i);
                for _ in 0..self.params.p() {
                    if f.is_zero() {
                        break;
                    }
                    f = self.apply_unchecked(&f);
                }
                f
            })
            .collect();
        WittElement { params: self.params, coeffs }
    }

    /// Decomposition into standard-degree components; degree of `x^a ∂_i` is `|a| - 1`.
    pub fn standard_components(&self) -> BTreeMap<i32, WittElement> {
        let mut out: BTreeMap<i32, WittElement> = BTreeMap::new();
        for (dir, m, c) in self.terms() {
            let deg = m.degree() as i32 - 1;
            out.entry(deg)
                .or_insert_with(|| WittElement::zero(self.params))
                .coeffs[dir]
                .add_term(m.clone(), c);
        }
        out
    }

    /// Lowest standard degree present, `None` for zero.
    pub fn min_degree(&self) -> Option<i32> {
        self.terms().map(|(_, m, _)| m.degree() as i32 - 1).min()
    }

    /// Matrix of the natural action on `A(n)` in the monomial basis; column
    /// `k` holds the coordinates of `D(x^{a_k})`.
    pub fn natural_rep_matrix(&self) -> FpMatrix {
        let pr = self.params;
        let dim = pr.poly_dim();
        let mut m = FpMatrix::zeros(pr, dim, dim);
        for (k, a) in MultiIndex::all(&pr).enumerate() {
            let image = self.apply_unchecked(&TruncPoly::monomial(pr, a, 1));
            for (b, c) in image.terms() {
                m[(b.index(pr.p()), k)] = c;
            }
        }
        m
    }

    /// Dense coordinates in the basis order of [`monomial_basis`].
    pub fn to_vector(&self) -> Vec<u32> {
        let pd = self.params.poly_dim();
        let mut v = vec![0; self.params.witt_dim()];
        for (dir, m, c) in self.terms() {
            v[dir * pd + m.index(self.params.p())] = c;
        }
        v
    }

    pub fn from_vector(params: Params, v: &[u32]) -> Result<Self> {
        if v.len() != params.witt_dim() {
            return Err(WittError::Malformed(format!(
                "coordinate vector has length {}, expected {}",
                v.len(),
                params.witt_dim()
            )));
        }
        let pd = params.poly_dim();
        let coeffs = (0..params.n()).map(|i| TruncPoly::from_dense(params, &v[i * pd..(i + 1) * pd])).collect();
        Ok(WittElement { params, coeffs })
    }

    pub fn to_json(&self) -> WittJson {
        WittJson {
            p: self.params.p(),
            n: self.params.n(),
            terms: self
                .terms()
                .map(|(dir, m, c)| WittTermJson {
                    exp: m.exponents().iter().map(|&e| e as u32).collect(),
                    dir: dir + 1,
                    coef: c,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &WittJson) -> Result<Self> {
        let params = Params::new(json.p, json.n)?;
        let mut out = Self::zero(params);
        let mut prev: Option<(usize, MultiIndex)> = None;
        for t in &json.terms {
            if t.dir == 0 || t.dir > params.n() {
                return Err(WittError::Malformed(format!("direction {} not in [1, {}]", t.dir, params.n())));
            }
            if t.coef == 0 || t.coef >= params.p() {
                return Err(WittError::Malformed(format!("coefficient {} not in [1, p-1]", t.coef)));
            }
            let m = MultiIndex::new(&params, &t.exp)?;
            let key = (t.dir - 1, m.clone());
            if prev.as_ref().is_some_and(|p| *p >= key) {
                return Err(WittError::Malformed("terms are not strictly sorted".into()));
            }
            prev = Some(key);
            out.coeffs[t.dir - 1].add_term(m, t.coef);
        }
        Ok(out)
    }
}

/// The `n p^n` elements `x^a ∂_i`, ordered lexicographically by `(i, a)`.
pub fn monomial_basis(params: Params) -> Vec<WittElement> {
    (0..params.n())
        .flat_map(|i| MultiIndex::all(&params).map(move |a| WittElement::monomial(params, a, i, 1)))
        .collect()
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (dir, m, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}·")?;
            }
            if m.is_zero() {
                write!(f, "∂{}", dir + 1)?;
            } else {
                write!(f, "{m}·∂{}", dir + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittTermJson {
    pub exp: Vec<u32>,
    /// 1-based direction.
    pub dir: usize,
    pub coef: u32,
}

/// Interchange form of a [`WittElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittJson {
    pub p: u32,
    pub n: usize,
    pub terms: Vec<WittTermJson>,
}
