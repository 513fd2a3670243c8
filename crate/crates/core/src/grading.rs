//! Gradings of `W(n)` attached to the standard tori `t_r`.
//!
//! For `0 <= r <= n` set `z_i = x_i` for `i <= n - r` and `z_i = 1 + x_i`
//! otherwise. The elements `Z^a ∂_i` form a basis of `W(n)` and `Z^a ∂_i` is
//! given degree `|a| - 1`. For `r = 0` this is the standard grading.

use std::collections::BTreeMap;

use crate::error::{check_range, Result};
use crate::params::Params;
use crate::poly::{MultiIndex, TruncPoly};
use crate::witt::WittElement;

/// Coordinate change for the torus `t_r`, with both directions of the basis
/// change precomputed.
#[derive(Debug, Clone)]
pub struct TorusCoords {
    params: Params,
    r: usize,
    /// `Z^a` expanded in x-monomials, indexed by `a.index(p)`.
    z_in_x: Vec<TruncPoly>,
    /// `x^a` expanded in z-monomials, indexed by `a.index(p)`.
    x_in_z: Vec<TruncPoly>,
}

impl TorusCoords {
    pub fn new(params: Params, r: usize) -> Result<Self> {
        check_range("r", r, 0, params.n())?;
        let n = params.n();
        let shifted = |i: usize| i >= n - r;
        let expand = |a: &MultiIndex, sign: i64| {
            let mut acc = TruncPoly::one(params);
            for i in 0..n {
                let e = a.get(i) as u64;
                if e == 0 {
                    continue;
                }
                let mut factor = TruncPoly::var(params, i);
                if shifted(i) {
                    factor = factor.add(&TruncPoly::constant(params, sign)).expect("same params");
                }
                // distinct variables with exponents below p: no truncation occurs
                acc = acc.mul_unchecked(&factor.pow(e));
            }
            acc
        };
        let z_in_x = MultiIndex::all(&params).map(|a| expand(&a, 1)).collect();
        let x_in_z = MultiIndex::all(&params).map(|a| expand(&a, -1)).collect();
        Ok(TorusCoords { params, r, z_in_x, x_in_z })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `Z^a ∂_dir` written in x-coordinates.
    pub fn z_monomial(&self, a: &MultiIndex, dir: usize) -> WittElement {
        WittElement::from_coefficient(self.z_in_x[a.index(self.params.p())].clone(), dir)
    }

    /// Rewrites a polynomial in x as a polynomial in z (exponents index z-monomials).
    pub fn to_z(&self, f: &TruncPoly) -> TruncPoly {
        let mut out = TruncPoly::zero(self.params);
        for (m, c) in f.terms() {
            out.axpy(c, &self.x_in_z[m.index(self.params.p())]);
        }
        out
    }

    /// Inverse of [`TorusCoords::to_z`].
    pub fn from_z(&self, f: &TruncPoly) -> TruncPoly {
        let mut out = TruncPoly::zero(self.params);
        for (m, c) in f.terms() {
            out.axpy(c, &self.z_in_x[m.index(self.params.p())]);
        }
        out
    }

    /// Components of `D` in the `t_r` grading, each written back in x-coordinates.
    pub fn components(&self, d: &WittElement) -> Result<BTreeMap<i32, WittElement>> {
        self.params.ensure_same(&d.params())?;
        let mut by_degree: BTreeMap<i32, Vec<TruncPoly>> = BTreeMap::new();
        for (dir, f) in d.coeffs().iter().enumerate() {
            for (m, c) in self.to_z(f).terms() {
                let deg = m.degree() as i32 - 1;
                let slot = by_degree
                    .entry(deg)
                    .or_insert_with(|| vec![TruncPoly::zero(self.params); self.params.n()]);
                slot[dir].add_term(m.clone(), c);
            }
        }
        by_degree
            .into_iter()
            .map(|(deg, zs)| {
                let coeffs = zs.iter().map(|z| self.from_z(z)).collect();
                Ok((deg, WittElement::new(self.params, coeffs)?))
            })
            .collect()
    }
}

/// Decomposition of `D` in the `t_r` grading.
pub fn tr_components(d: &WittElement, tc: &TorusCoords) -> Result<BTreeMap<i32, WittElement>> {
    tc.components(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::monomial_basis;

    #[test]
    fn r0_matches_standard_grading() {
        let params = Params::new(5, 2).unwrap();
        let tc = TorusCoords::new(params, 0).unwrap();
        let mut d = WittElement::zero(params);
        for (k, b) in monomial_basis(params).iter().enumerate() {
            d = d.add(&b.scale((k % 5) as u32)).unwrap();
            assert_eq!(tc.components(b).unwrap(), b.standard_components());
        }
        assert_eq!(tc.components(&d).unwrap(), d.standard_components());
    }

    #[test]
    fn shifted_coordinate_has_degree_zero() {
        let params = Params::new(5, 1).unwrap();
        let tc = TorusCoords::new(params, 1).unwrap();
        let z1d1 = WittElement::partial(params, 0)
            .add(&WittElement::monomial(params, MultiIndex::unit(1, 0), 0, 1))
            .unwrap();
        let comps = tc.components(&z1d1).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&0], z1d1);
        assert!(tc.components(&WittElement::zero(params)).unwrap().is_empty());
    }

    #[test]
    fn coordinate_change_roundtrip() {
        let params = Params::new(7, 2).unwrap();
        for r in 0..=2 {
            let tc = TorusCoords::new(params, r).unwrap();
            for a in MultiIndex::all(&params) {
                let f = TruncPoly::monomial(params, a, 1);
                assert_eq!(tc.from_z(&tc.to_z(&f)), f);
            }
        }
        assert!(TorusCoords::new(params, 3).is_err());
    }

    #[test]
    fn components_sum_back() {
        let params = Params::new(5, 2).unwrap();
        let tc = TorusCoords::new(params, 1).unwrap();
        for b in monomial_basis(params) {
            let mut sum = WittElement::zero(params);
            for c in tc.components(&b).unwrap().values() {
                sum = sum.add(c).unwrap();
            }
            assert_eq!(sum, b);
        }
    }
}
