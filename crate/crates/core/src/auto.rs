//! Automorphisms of `W(n)` realized through `Aut(A(n))`.
//!
//! An automorphism `ψ` of `A(n)` is fixed by the images `ψ̃_i = ψ(x_i)`, which
//! lie in the augmentation ideal. It acts on `W(n)` by `Ψ_ψ(D) = ψ ∘ D ∘ ψ^{-1}`.
//! Composition is composition of algebra maps: `compose(ψ, φ) = ψ ∘ φ`, so the
//! image of `x_i` is `ψ(φ̃_i)` and the linear part of `ψ ∘ φ` is `M_ψ · M_φ`,
//! where column `j` of `M_ψ` holds the linear coefficients of `ψ̃_j`.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::matrix::FpMatrix;
use crate::params::Params;
use crate::poly::{MultiIndex, PolyJson, TruncPoly};
use crate::subspace::Subspace;
use crate::witt::{monomial_basis, WittElement};

type PolyMatrix = Vec<Vec<TruncPoly>>;

#[derive(Debug, Clone)]
pub struct PolyAutomorphism {
    params: Params,
    images: Vec<TruncPoly>,
    /// `jacobian[i][j] = ∂_i ψ̃_j`.
    jacobian: PolyMatrix,
    inv_jacobian: OnceLock<PolyMatrix>,
    powers: OnceLock<Vec<Vec<TruncPoly>>>,
}

impl PartialEq for PolyAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.images == other.images
    }
}

impl Eq for PolyAutomorphism {}

/// `f(g_1, .., g_n)`, with `powers[k][e] = g_k^e`.
fn substitute(f: &TruncPoly, powers: &[Vec<TruncPoly>]) -> TruncPoly {
    let pr = f.params();
    let mut out = TruncPoly::zero(pr);
    for (m, c) in f.terms() {
        let mut term = TruncPoly::constant(pr, c as i64);
        for (k, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul_unchecked(&powers[k][e as usize]);
                if term.is_zero() {
                    break;
                }
            }
        }
        out.axpy(1, &term);
    }
    out
}

fn power_table(images: &[TruncPoly]) -> Vec<Vec<TruncPoly>> {
    images
        .iter()
        .map(|g| {
            let pr = g.params();
            let mut row = vec![TruncPoly::one(pr)];
            for e in 1..pr.p() as usize {
                let next = row[e - 1].mul_unchecked(g);
                row.push(next);
            }
            row
        })
        .collect()
}

fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix, pr: Params) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = TruncPoly::zero(pr);
                    for k in 0..n {
                        acc.axpy(1, &a[i][k].mul_unchecked(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn constant_matrix(m: &FpMatrix, pr: Params) -> PolyMatrix {
    let (rows, cols) = m.shape();
    (0..rows).map(|i| (0..cols).map(|j| TruncPoly::constant(pr, m[(i, j)] as i64)).collect()).collect()
}

impl PolyAutomorphism {
    /// Validates that every image has zero constant term and that the
    /// linear part is invertible.
    pub fn new(params: Params, images: Vec<TruncPoly>) -> Result<Self> {
        if images.len() != params.n() {
            return Err(WittError::InvalidAutomorphism(format!(
                "expected {} images, got {}",
                params.n(),
                images.len()
            )));
        }
        for (i, g) in images.iter().enumerate() {
            params.ensure_same(&g.params())?;
            if g.constant_term() != 0 {
                return Err(WittError::InvalidAutomorphism(format!("image of x{} has a constant term", i + 1)));
            }
        }
        let out = Self::new_unchecked(params, images);
        if out.linear_part().inverse().is_none() {
            return Err(WittError::InvalidAutomorphism("linear part is singular".into()));
        }
        Ok(out)
    }

    fn new_unchecked(params: Params, images: Vec<TruncPoly>) -> Self {
        let n = params.n();
        let jacobian = (0..n).map(|i| (0..n).map(|j| images[j].derivative(i)).collect()).collect();
        PolyAutomorphism { params, images, jacobian, inv_jacobian: OnceLock::new(), powers: OnceLock::new() }
    }

    pub fn identity(params: Params) -> Self {
        Self::new_unchecked(params, (0..params.n()).map(|i| TruncPoly::var(params, i)).collect())
    }

    /// `x_j ↦ Σ_i m[i][j] x_i`.
    pub fn linear(params: Params, m: &FpMatrix) -> Result<Self> {
        let n = params.n();
        if m.shape() != (n, n) {
            return Err(WittError::InvalidAutomorphism(format!("linear part must be {n}x{n}")));
        }
        let images = (0..n)
            .map(|j| {
                let mut g = TruncPoly::zero(params);
                for i in 0..n {
                    g.axpy(m[(i, j)], &TruncPoly::var(params, i));
                }
                g
            })
            .collect();
        Self::new(params, images)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn images(&self) -> &[TruncPoly] {
        &self.images
    }

    pub fn jacobian(&self) -> &[Vec<TruncPoly>] {
        &self.jacobian
    }

    /// Constant part of the Jacobian: entry `(i, j)` is the coefficient of `x_i` in `ψ̃_j`.
    pub fn linear_part(&self) -> FpMatrix {
        let n = self.params.n();
        let mut m = FpMatrix::zeros(self.params, n, n);
        for j in 0..n {
            for i in 0..n {
                m[(i, j)] = self.images[j].linear_coefficient(i);
            }
        }
        m
    }

    pub fn is_linear(&self) -> bool {
        self.images.iter().all(|g| g.terms().all(|(m, _)| m.degree() == 1))
    }

    /// Linear part is the identity.
    pub fn is_unipotent(&self) -> bool {
        self.linear_part() == FpMatrix::identity(self.params, self.params.n())
    }

    fn powers(&self) -> &[Vec<TruncPoly>] {
        self.powers.get_or_init(|| power_table(&self.images))
    }

    /// `f(ψ̃_1, .., ψ̃_n)`.
    pub fn apply_to_poly(&self, f: &TruncPoly) -> Result<TruncPoly> {
        self.params.ensure_same(&f.params())?;
        Ok(substitute(f, self.powers()))
    }

    /// `ψ ∘ φ`.
    pub fn compose(&self, other: &PolyAutomorphism) -> Result<PolyAutomorphism> {
        self.params.ensure_same(&other.params)?;
        let images = other.images.iter().map(|g| substitute(g, self.powers())).collect();
        Ok(Self::new_unchecked(self.params, images))
    }

    /// Solves `ψ̃_j(φ̃) = x_j` for `φ̃`. Writing `ψ̃ = x·M + h` with `h` of
    /// order at least two, iterate `φ̃ ← (x − h(φ̃))·M^{-1}`; each pass fixes
    /// one more degree, so `n(p−1)` passes reach the fixed point.
    pub fn invert(&self) -> Result<PolyAutomorphism> {
        let pr = self.params;
        let n = pr.n();
        let m_inv = self
            .linear_part()
            .inverse()
            .ok_or_else(|| WittError::InvalidAutomorphism("linear part is singular".into()))?;
        let higher: Vec<TruncPoly> = self.images.iter().map(|g| g.truncate_below(2)).collect();
        let xs: Vec<TruncPoly> = (0..n).map(|i| TruncPoly::var(pr, i)).collect();
        let step = |phi: &[TruncPoly]| -> Vec<TruncPoly> {
            let pw = power_table(phi);
            let rhs: Vec<TruncPoly> = (0..n)
                .map(|j| {
                    let mut r = xs[j].clone();
                    r.axpy(pr.p() - 1, &substitute(&higher[j], &pw));
                    r
                })
                .collect();
            (0..n)
                .map(|i| {
                    let mut acc = TruncPoly::zero(pr);
                    for (j, r) in rhs.iter().enumerate() {
                        acc.axpy(m_inv[(j, i)], r);
                    }
                    acc
                })
                .collect()
        };
        let mut phi = step(&xs.iter().map(|_| TruncPoly::zero(pr)).collect::<Vec<_>>());
        let max_steps = n * (pr.p() as usize - 1) + 1;
        for _ in 0..max_steps {
            let next = step(&phi);
            if next == phi {
                return Ok(Self::new_unchecked(pr, phi));
            }
            phi = next;
        }
        Err(WittError::InvalidAutomorphism("inverse iteration did not converge".into()))
    }

    /// `J(ψ)^{-1}` over `A(n)` by the Neumann series around the constant part.
    pub fn inverse_jacobian(&self) -> &[Vec<TruncPoly>] {
        self.inv_jacobian.get_or_init(|| {
            let pr = self.params;
            let n = pr.n();
            let j0 = self.linear_part();
            let j0_inv = constant_matrix(&j0.inverse().expect("validated"), pr);
            // J = J0 (I + K) with K = J0^{-1} (J - J0) nilpotent
            let nil: PolyMatrix = (0..n)
                .map(|i| (0..n).map(|j| self.jacobian[i][j].truncate_below(1)).collect())
                .collect();
            let k = poly_matmul(&j0_inv, &nil, pr);
            let neg_k: PolyMatrix = k.iter().map(|row| row.iter().map(TruncPoly::neg).collect()).collect();
            let mut sum: PolyMatrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { TruncPoly::one(pr) } else { TruncPoly::zero(pr) }).collect())
                .collect();
            let mut term = sum.clone();
            loop {
                term = poly_matmul(&term, &neg_k, pr);
                if term.iter().all(|row| row.iter().all(TruncPoly::is_zero)) {
                    break;
                }
                for i in 0..n {
                    for j in 0..n {
                        sum[i][j].axpy(1, &term[i][j]);
                    }
                }
            }
            poly_matmul(&sum, &j0_inv, pr)
        })
    }

    /// `Ψ_ψ(∂_i) = Σ_j (J^{-1})_{ij} ∂_j`.
    pub fn induced_partial(&self, i: usize) -> WittElement {
        WittElement::new(self.params, self.inverse_jacobian()[i].clone()).expect("consistent params")
    }

    /// `Ψ_ψ(D)` via `Ψ_ψ(f ∂_i) = ψ(f) Ψ_ψ(∂_i)`.
    pub fn induced(&self, d: &WittElement) -> Result<WittElement> {
        self.params.ensure_same(&d.params())?;
        let pr = self.params;
        let n = pr.n();
        let inv_j = self.inverse_jacobian();
        let mut coeffs = vec![TruncPoly::zero(pr); n];
        for i in 0..n {
            let f = d.coeff(i);
            if f.is_zero() {
                continue;
            }
            let g = substitute(f, self.powers());
            for (j, c) in coeffs.iter_mut().enumerate() {
                c.axpy(1, &g.mul_unchecked(&inv_j[i][j]));
            }
        }
        WittElement::new(pr, coeffs)
    }

    /// `Ψ_ψ(D)` by operator conjugation: the `∂_j` coefficient is `ψ(D(φ̃_j))`, `φ = ψ^{-1}`.
    pub fn induced_direct(&self, d: &WittElement) -> Result<WittElement> {
        self.params.ensure_same(&d.params())?;
        let inv = self.invert()?;
        let coeffs = inv.images.iter().map(|g| substitute(&d.apply_unchecked(g), self.powers())).collect();
        WittElement::new(self.params, coeffs)
    }

    /// `Ψ_ψ(S)`.
    pub fn induced_subspace(&self, s: &Subspace) -> Result<Subspace> {
        self.params.ensure_same(&s.params())?;
        let images = s.basis_elements().iter().map(|d| self.induced(d)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.params, &images)
    }

    /// `ψ = u ∘ g0` with `g0` the linear truncation and `u` unipotent.
    pub fn decompose(&self) -> Result<(PolyAutomorphism, PolyAutomorphism)> {
        let g0 = Self::linear(self.params, &self.linear_part())?;
        let u = self.compose(&g0.invert()?)?;
        Ok((g0, u))
    }

    /// For each homogeneous sample `D` of degree `i`, `Ψ_u(D) − D ∈ W(n)_{>=i+1}`.
    pub fn verify_grading_shift(&self, samples: &[WittElement]) -> Result<bool> {
        if !self.is_unipotent() {
            return Err(WittError::NotUnipotent);
        }
        for d in samples {
            let comps = d.standard_components();
            if comps.len() > 1 {
                return Err(WittError::Precondition("grading-shift samples must be homogeneous".into()));
            }
            let Some((&deg, _)) = comps.iter().next() else { continue };
            let diff = self.induced(d)?.sub(d)?;
            if diff.min_degree().is_some_and(|m| m <= deg) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// [`verify_grading_shift`](Self::verify_grading_shift) on the full monomial basis.
    pub fn verify_grading_shift_basis(&self) -> Result<bool> {
        self.verify_grading_shift(&monomial_basis(self.params))
    }

    /// Matrix of `ψ` on `A(n)`; column `k` holds `ψ(x^{a_k})`.
    pub fn natural_rep_matrix(&self) -> FpMatrix {
        let pr = self.params;
        let dim = pr.poly_dim();
        let mut m = FpMatrix::zeros(pr, dim, dim);
        for (k, a) in MultiIndex::all(&pr).enumerate() {
            let image = substitute(&TruncPoly::monomial(pr, a, 1), self.powers());
            for (b, c) in image.terms() {
                m[(b.index(pr.p()), k)] = c;
            }
        }
        m
    }

    pub fn to_json(&self) -> AutomorphismJson {
        AutomorphismJson {
            p: self.params.p(),
            n: self.params.n(),
            images: self.images.iter().map(TruncPoly::to_json).collect(),
        }
    }

    pub fn from_json(json: &AutomorphismJson) -> Result<Self> {
        let params = Params::new(json.p, json.n)?;
        let images = json.images.iter().map(|g| TruncPoly::from_json(params, g)).collect::<Result<Vec<_>>>()?;
        Self::new(params, images)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub p: u32,
    pub n: usize,
    pub images: Vec<PolyJson>,
}

const MAX_EXTRA_TERMS: usize = 3;

fn random_higher_terms(params: Params, rng: &mut ChaCha8Rng) -> TruncPoly {
    let mut g = TruncPoly::zero(params);
    let count = rng.gen_range(0..=MAX_EXTRA_TERMS);
    for _ in 0..count {
        let exps: Vec<u32> = (0..params.n()).map(|_| rng.gen_range(0..params.p())).collect();
        if exps.iter().sum::<u32>() < 2 {
            continue;
        }
        let m = MultiIndex::new(&params, &exps).expect("in range");
        g.axpy(1, &TruncPoly::monomial(params, m, rng.gen_range(1..params.p()) as i64));
    }
    g
}

/// Deterministic in `seed`: the linear part is uniform over `GL_n(F_p)` (by
/// rejection), each image gets up to three random terms of degree at least two.
pub fn random_automorphism(params: Params, seed: u64) -> PolyAutomorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n();
    let m = loop {
        let mut m = FpMatrix::zeros(params, n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = rng.gen_range(0..params.p());
            }
        }
        if m.inverse().is_some() {
            break m;
        }
    };
    let lin = PolyAutomorphism::linear(params, &m).expect("invertible");
    let images = lin.images.iter().map(|g| g.add(&random_higher_terms(params, &mut rng)).expect("same params")).collect();
    PolyAutomorphism::new(params, images).expect("invertible linear part")
}

/// A random element of the unipotent subgroup `U`.
pub fn random_unipotent(params: Params, seed: u64) -> PolyAutomorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = (0..params.n())
        .map(|i| TruncPoly::var(params, i).add(&random_higher_terms(params, &mut rng)).expect("same params"))
        .collect();
    PolyAutomorphism::new(params, images).expect("identity linear part")
}
