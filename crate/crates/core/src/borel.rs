//! The standard tori `t_r`, the standard completely solvable subalgebras
//! `b_0, .., b_n`, and the solvable but not completely solvable `B_1` in `W(2)`.
//!
//! For `1 <= q <= n-1` the variables split as `u = (x_1, .., x_{n-q})` and
//! `w = (x_{n-q+1}, .., x_n)`, and a basis monomial `u^a w^b ∂_i` is
//! described by an [`IndexTriple`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::basis::WittBasis;
use crate::error::{check_range, Result, WittError};
use crate::params::Params;
use crate::poly::{MultiIndex, TruncPoly};
use crate::subspace::Subspace;
use crate::witt::WittElement;

/// `(a, b, i)`: exponents of `u`, exponents of `w`, and a 1-based direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexTriple {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub i: usize,
}

impl IndexTriple {
    fn a_degree(&self) -> u32 {
        self.a.iter().map(|&e| e as u32).sum()
    }

    fn b_degree(&self) -> u32 {
        self.b.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self) -> Vec<u8> {
        self.a.iter().chain(&self.b).copied().collect()
    }
}

/// How many leading `w` exponents may be nonzero in `Λ_2` when `a = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lambda2Cutoff {
    /// For direction `i`, the `w` exponents before the `w`-position
    /// `i - (n - q)` of `x_i`; agrees with `b_n` when all variables are `w`.
    #[default]
    Shifted,
    /// The first `i - q - 1` exponents of `w`, as the index is printed.
    Literal,
}

impl Lambda2Cutoff {
    fn free_positions(self, n: usize, q: usize, i: usize) -> usize {
        let v = match self {
            Lambda2Cutoff::Shifted => i as i64 - (n - q) as i64 - 1,
            Lambda2Cutoff::Literal => i as i64 - q as i64 - 1,
        };
        v.clamp(0, q as i64) as usize
    }
}

fn check_q(params: &Params, q: usize) -> Result<()> {
    if params.n() < 2 {
        return Err(WittError::OutOfRange { what: "q", value: q as i64, lo: 1, hi: params.n() as i64 - 1 });
    }
    check_range("q", q, 1, params.n() - 1)
}

fn all_triples(params: &Params, q: usize) -> impl Iterator<Item = IndexTriple> + '_ {
    let m = params.n() - q;
    (1..=params.n()).flat_map(move |i| {
        MultiIndex::all(params).map(move |e| {
            let ex = e.exponents();
            IndexTriple { a: ex[..m].to_vec(), b: ex[m..].to_vec(), i }
        })
    })
}

fn lambda1_condition(t: &IndexTriple) -> bool {
    let da = t.a_degree();
    da > 1 || (da == 1 && t.a[..t.i - 1].iter().map(|&e| e as u32).sum::<u32>() == 1)
}

/// `(Λ_1, Λ_2)` for `1 <= q <= n-1`.
pub fn enumerate_lambda(
    params: &Params,
    q: usize,
    cutoff: Lambda2Cutoff,
) -> Result<(BTreeSet<IndexTriple>, BTreeSet<IndexTriple>)> {
    check_q(params, q)?;
    let (n, m) = (params.n(), params.n() - q);
    let mut l1 = BTreeSet::new();
    let mut l2 = BTreeSet::new();
    for t in all_triples(params, q) {
        if t.i <= m {
            if lambda1_condition(&t) {
                l1.insert(t);
            }
        } else {
            let free = cutoff.free_positions(n, q, t.i);
            if t.a_degree() > 0 || t.b[free..].iter().all(|&e| e == 0) {
                l2.insert(t);
            }
        }
    }
    Ok((l1, l2))
}

/// `(Γ_1, Γ_2)` for `1 <= q <= n-1`.
pub fn enumerate_gamma(params: &Params, q: usize) -> Result<(BTreeSet<IndexTriple>, BTreeSet<IndexTriple>)> {
    check_q(params, q)?;
    let m = params.n() - q;
    let mut g1 = BTreeSet::new();
    let mut g2 = BTreeSet::new();
    for t in all_triples(params, q) {
        if t.i <= m {
            if t.b_degree() > 0 && lambda1_condition(&t) {
                g1.insert(t);
            }
        } else if t.a_degree() > 0 {
            g2.insert(t);
        }
    }
    Ok((g1, g2))
}

fn triple_index(wb: &WittBasis, t: &IndexTriple) -> usize {
    let exps: Vec<u32> = t.exponent().iter().map(|&e| e as u32).collect();
    let m = MultiIndex::new(&wb.params(), &exps).expect("valid triple");
    wb.index_of(&m, t.i - 1)
}

fn diagonal_indices(wb: &WittBasis, dirs: impl Iterator<Item = usize>) -> Vec<usize> {
    let n = wb.params().n();
    dirs.map(|i| wb.index_of(&MultiIndex::unit(n, i), i)).collect()
}

/// `t_r = span{z_i ∂_i}` with `z_i = x_i` for `i <= n-r` and `z_i = 1 + x_i` after.
pub fn standard_torus(params: Params, r: usize) -> Result<Subspace> {
    check_range("r", r, 0, params.n())?;
    let n = params.n();
    let gens: Vec<WittElement> = (0..n)
        .map(|i| {
            let mut z = TruncPoly::var(params, i);
            if i >= n - r {
                z = z.add(&TruncPoly::one(params)).expect("same params");
            }
            WittElement::from_coefficient(z, i)
        })
        .collect();
    Subspace::span(params, &gens)
}

fn b0_indices(wb: &WittBasis, vars: std::ops::Range<usize>) -> Vec<usize> {
    // upper triangular x_i ∂_j (i <= j) plus every monomial of degree >= 1,
    // all restricted to the variables and directions in `vars`
    let params = wb.params();
    let n = params.n();
    let mut out = Vec::new();
    for m in MultiIndex::all(&params) {
        let ex = m.exponents();
        if ex.iter().enumerate().any(|(k, &e)| e > 0 && !vars.contains(&k)) {
            continue;
        }
        let deg = m.degree();
        for j in vars.clone() {
            let keep = deg >= 2 || (deg == 1 && (0..n).any(|i| ex[i] == 1 && i <= j));
            if keep {
                out.push(wb.index_of(&m, j));
            }
        }
    }
    out
}

fn cn_indices(wb: &WittBasis, vars: std::ops::Range<usize>) -> Vec<usize> {
    // x^a ∂_i with a supported on the variables of `vars` strictly before i
    let params = wb.params();
    let mut out = Vec::new();
    for m in MultiIndex::all(&params) {
        let ex = m.exponents();
        for i in vars.clone() {
            if ex.iter().enumerate().all(|(k, &e)| e == 0 || (vars.contains(&k) && k < i)) {
                out.push(wb.index_of(&m, i));
            }
        }
    }
    out
}

/// `b_0 = b ⊕ W(n)_{>=1}`, `b` the upper triangular part of `W(n)_0 ≅ gl(n)`.
pub fn build_b0(params: Params) -> Subspace {
    let wb = WittBasis::new(params);
    Subspace::from_basis_indices(params, b0_indices(&wb, 0..params.n()))
}

/// `C_n = span{x^a ∂_i : a = (a_1, .., a_{i-1}, 0, .., 0)}`.
pub fn build_cn(params: Params) -> Subspace {
    let wb = WittBasis::new(params);
    Subspace::from_basis_indices(params, cn_indices(&wb, 0..params.n()))
}

/// `b_n = t_0 ⊕ C_n`.
pub fn build_bn(params: Params) -> Subspace {
    let wb = WittBasis::new(params);
    let mut idx = cn_indices(&wb, 0..params.n());
    idx.extend(diagonal_indices(&wb, 0..params.n()));
    Subspace::from_basis_indices(params, idx)
}

/// `C_q = span{u^a w^b ∂_i : (a, b, i) ∈ Λ_1 ∪ Λ_2}`.
pub fn build_cq(params: Params, q: usize, cutoff: Lambda2Cutoff) -> Result<Subspace> {
    let (l1, l2) = enumerate_lambda(&params, q, cutoff)?;
    let wb = WittBasis::new(params);
    Ok(Subspace::from_basis_indices(params, l1.iter().chain(&l2).map(|t| triple_index(&wb, t))))
}

/// `b_q = t_0 ⊕ C_q` for `1 <= q <= n-1`.
pub fn build_bq(params: Params, q: usize) -> Result<Subspace> {
    build_bq_with(params, q, Lambda2Cutoff::Shifted)
}

pub fn build_bq_with(params: Params, q: usize, cutoff: Lambda2Cutoff) -> Result<Subspace> {
    let (l1, l2) = enumerate_lambda(&params, q, cutoff)?;
    let wb = WittBasis::new(params);
    let mut idx: Vec<usize> = l1.iter().chain(&l2).map(|t| triple_index(&wb, t)).collect();
    idx.extend(diagonal_indices(&wb, 0..params.n()));
    Ok(Subspace::from_basis_indices(params, idx))
}

/// `Q_q = span{u^a w^b ∂_i : (a, b, i) ∈ Γ_1 ∪ Γ_2}`.
pub fn build_qq(params: Params, q: usize) -> Result<Subspace> {
    let (g1, g2) = enumerate_gamma(&params, q)?;
    let wb = WittBasis::new(params);
    Ok(Subspace::from_basis_indices(params, g1.iter().chain(&g2).map(|t| triple_index(&wb, t))))
}

/// The second presentation `b_0(u) ⊕ Q_q ⊕ b_q(w)`, where `b_0(u)` and the
/// `b_n`-type algebra `b_q(w)` live on the `u` and `w` variables alone.
pub fn build_bq_split(params: Params, q: usize) -> Result<Subspace> {
    check_q(&params, q)?;
    let n = params.n();
    let m = n - q;
    let wb = WittBasis::new(params);
    let mut idx = b0_indices(&wb, 0..m);
    idx.extend(cn_indices(&wb, m..n));
    idx.extend(diagonal_indices(&wb, m..n));
    let (g1, g2) = enumerate_gamma(&params, q)?;
    idx.extend(g1.iter().chain(&g2).map(|t| triple_index(&wb, t)));
    Ok(Subspace::from_basis_indices(params, idx))
}

/// `b_r` for `0 <= r <= n`.
pub fn build_br(params: Params, r: usize) -> Result<Subspace> {
    check_range("r", r, 0, params.n())?;
    Ok(match r {
        0 => build_b0(params),
        r if r == params.n() => build_bn(params),
        q => build_bq(params, q)?,
    })
}

/// The derived algebra `b_r^[1]`: `n ⊕ W(n)_{>=1}` for `r = 0`, else `C_r`.
pub fn build_br_derived(params: Params, r: usize) -> Result<Subspace> {
    check_range("r", r, 0, params.n())?;
    Ok(match r {
        0 => {
            let wb = WittBasis::new(params);
            let n = params.n();
            let idx = b0_indices(&wb, 0..n).into_iter().filter(|&k| {
                let (dir, mono) = wb.split(k);
                // drop the diagonal x_i ∂_i
                !(wb.degree(k) == 0 && wb.exponents(mono)[dir] == 1)
            });
            Subspace::from_basis_indices(params, idx)
        }
        r if r == params.n() => build_cn(params),
        q => build_cq(params, q, Lambda2Cutoff::Shifted)?,
    })
}

/// `B_1 ⊆ W(2)`: span of `∂_1, x_1∂_1, x_1^k ∂_2, x_1^k x_2 ∂_2` (`0 <= k <= p-1`).
pub fn build_b1_example(p: u32) -> Result<Subspace> {
    let params = Params::for_classification(p, 2)?;
    let wb = WittBasis::new(params);
    let at = |a1: u32, a2: u32, dir: usize| wb.index_of(&MultiIndex::new(&params, &[a1, a2]).unwrap(), dir);
    let mut idx = vec![at(0, 0, 0), at(1, 0, 0)];
    for k in 0..p {
        idx.push(at(k, 0, 1));
        idx.push(at(k, 1, 1));
    }
    Ok(Subspace::from_basis_indices(params, idx))
}

/// Human-readable name of the construction behind `build_br(params, r)`.
pub fn construction_name(params: &Params, r: usize) -> String {
    match r {
        0 => "b_0 = upper triangular gl(n) part + W(n)_{>=1}".to_string(),
        r if r == params.n() => "b_n = t_0 + C_n".to_string(),
        q => format!("b_{q} = t_0 + C_{q} (index sets Lambda_1, Lambda_2)"),
    }
}
