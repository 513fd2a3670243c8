//! Monomial maximality probes for completely solvable subalgebras.
//!
//! Every basis monomial `m` outside `S` is adjoined, the generated subalgebra
//! is closed, and the probe passes when the closure is no longer completely
//! solvable. Only monomials are probed, so a passing report is a certificate
//! for the monomial probes and not a maximality proof over the algebraic
//! closure of F_p.

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::WittBasis;
use crate::borel::standard_torus;
use crate::error::{Result, WittError};
use crate::linalg::SparseVec;
use crate::params::Params;
use crate::poly::MultiIndex;
use crate::series::{derived_lower_central, is_completely_solvable};
use crate::subspace::Subspace;
use crate::witt::WittElement;

pub const PROBE_HEADER: &str =
    "monomial probes only: each basis monomial outside S is adjoined and the closure tested; not a proof over the algebraic closure";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    pub basis_index: usize,
    pub closure_dim: usize,
    /// Dimensions of the lower central series of the closure's derived algebra.
    pub lower_central_dims: Vec<usize>,
    /// Dimension of the stabilized term; nonzero for a passing probe.
    pub stabilized_dim: usize,
    /// Basis of the stabilized term (truncated to a handful of elements).
    pub stabilized_sample: Vec<String>,
    /// An sl(2)-type triple of the closure, when one of the standard shapes occurs.
    pub triple: Option<[String; 3]>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub header: String,
    pub p: u32,
    pub n: usize,
    pub base_dim: usize,
    pub probes: Vec<ProbeResult>,
    pub all_pass: bool,
}

const SAMPLE_LEN: usize = 4;

/// Probes every basis monomial outside `s`.
pub fn maximality_probe(s: &Subspace) -> Result<ProbeReport> {
    let params = s.params();
    if !is_completely_solvable(s)? {
        return Err(WittError::Precondition("probe target must be completely solvable".into()));
    }
    if !s.contains_subspace(&standard_torus(params, 0)?)? {
        return Err(WittError::Precondition("probe target must contain t_0".into()));
    }
    let wb = s.witt_basis();
    let outside: Vec<usize> = (0..wb.len()).filter(|&k| !s.contains_vector(&SparseVec::unit(k))).collect();
    let probes = outside.par_iter().map(|&k| probe_one(s, k)).collect::<Result<Vec<_>>>()?;
    let all_pass = probes.iter().all(|r| r.pass);
    Ok(ProbeReport {
        header: PROBE_HEADER.to_string(),
        p: params.p(),
        n: params.n(),
        base_dim: s.dim(),
        probes,
        all_pass,
    })
}

/// Probe with a single basis monomial `k`.
pub fn probe_one(s: &Subspace, k: usize) -> Result<ProbeResult> {
    let wb = s.witt_basis();
    let m = wb.element(k);
    let closure = s.with_elements(&[m.clone()])?.subalgebra_closure();
    let lc = derived_lower_central(&closure)?;
    let last = lc.last();
    let stabilized_dim = if lc.vanishes() { 0 } else { last.dim() };
    let stabilized_sample = if stabilized_dim == 0 {
        Vec::new()
    } else {
        last.basis_elements().iter().take(SAMPLE_LEN).map(ToString::to_string).collect()
    };
    Ok(ProbeResult {
        probe: m.to_string(),
        basis_index: k,
        closure_dim: closure.dim(),
        lower_central_dims: lc.dims(),
        stabilized_dim,
        stabilized_sample,
        triple: find_triple(&closure).map(|t| t.map(|e| e.to_string())),
        pass: stabilized_dim > 0,
    })
}

/// Looks for `∂_l, x_l∂_l, x_l^2∂_l` or `x_s∂_l, x_l∂_s, x_l∂_l - x_s∂_s` in `s`.
pub fn find_triple(s: &Subspace) -> Option<[WittElement; 3]> {
    let params = s.params();
    let n = params.n();
    let mono = |exps: &[u32], dir: usize| {
        WittElement::monomial(params, MultiIndex::new(&params, exps).expect("small exponents"), dir, 1)
    };
    let has = |d: &WittElement| s.contains(d).unwrap_or(false);
    for l in 0..n {
        let mut e = vec![0u32; n];
        let d = WittElement::partial(params, l);
        e[l] = 1;
        let h = mono(&e, l);
        e[l] = 2;
        let f = mono(&e, l);
        if has(&d) && has(&h) && has(&f) {
            return Some([d, h, f]);
        }
    }
    for l in 0..n {
        for t in 0..n {
            if l == t {
                continue;
            }
            let mut e = vec![0u32; n];
            e[t] = 1;
            let x_s_dl = mono(&e, l);
            let x_s_ds = mono(&e, t);
            e[t] = 0;
            e[l] = 1;
            let x_l_ds = mono(&e, t);
            let x_l_dl = mono(&e, l);
            let h = x_l_dl.sub(&x_s_ds).expect("same params");
            if has(&x_s_dl) && has(&x_l_ds) && has(&h) {
                return Some([x_s_dl, x_l_ds, h]);
            }
        }
    }
    None
}

/// Index of the basis monomial `x^exps ∂_dir`.
pub fn monomial_index(params: Params, exps: &[u32], dir: usize) -> Result<usize> {
    let wb = WittBasis::new(params);
    Ok(wb.index_of(&MultiIndex::new(&params, exps)?, dir))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::{build_b0, build_b1_example, build_bn};

    #[test]
    fn bn_probe_with_off_diagonal() {
        let params = Params::new(5, 2).unwrap();
        let bn = build_bn(params);
        // x_2 ∂_1
        let k = monomial_index(params, &[0, 1], 0).unwrap();
        let r = probe_one(&bn, k).unwrap();
        assert!(r.pass);
        let t = r.triple.unwrap();
        assert_eq!(t[0], "x2·∂1");
        assert_eq!(t[1], "x1·∂2");
    }

    #[test]
    fn bn_probe_with_square() {
        let params = Params::new(5, 2).unwrap();
        let bn = build_bn(params);
        let k = monomial_index(params, &[2, 0], 0).unwrap();
        let r = probe_one(&bn, k).unwrap();
        assert!(r.pass);
        assert_eq!(r.triple.unwrap()[0], "∂1");
    }

    #[test]
    fn b0_probe_with_partial() {
        let params = Params::new(5, 2).unwrap();
        let b0 = build_b0(params);
        let k = monomial_index(params, &[0, 0], 0).unwrap();
        let r = probe_one(&b0, k).unwrap();
        assert!(r.pass);
        let closure = b0.with_elements(&[WittElement::partial(params, 0)]).unwrap().subalgebra_closure();
        let lc = derived_lower_central(&closure).unwrap();
        for term in &lc.terms {
            assert!(term.contains(&WittElement::partial(params, 0)).unwrap());
        }
    }

    #[test]
    fn preconditions() {
        let b1 = build_b1_example(5).unwrap();
        assert!(matches!(maximality_probe(&b1), Err(WittError::Precondition(_))));
        let params = Params::new(5, 2).unwrap();
        let cn = crate::borel::build_cn(params);
        assert!(matches!(maximality_probe(&cn), Err(WittError::Precondition(_))));
    }

    #[test]
    fn full_probe_n1() {
        let params = Params::new(5, 1).unwrap();
        for s in [build_b0(params), build_bn(params)] {
            let rep = maximality_probe(&s).unwrap();
            assert!(rep.all_pass);
            assert_eq!(rep.probes.len(), 5 - s.dim());
        }
    }
}
