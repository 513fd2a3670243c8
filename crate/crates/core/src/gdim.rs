//! Graded dimensions as Laurent polynomials in `t` over the integers, and the
//! closed formulas for the standard completely solvable subalgebras.
//!
//! Throughout, `Q = 1 + t + .. + t^{p-1}` is the graded dimension of `A(1)`
//! and `(1 − Q^r)/(1 − Q)` is evaluated as `Σ_{k<r} Q^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::auto::PolyAutomorphism;
use crate::error::{check_range, Result, WittError};
use crate::linalg::SparseVec;
use crate::params::Params;
use crate::subspace::Subspace;

/// Finite Laurent polynomial with integer coefficients and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `c · t^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c.into());
        out
    }

    /// `t^{-1}`.
    pub fn t_inv() -> Self {
        Self::monomial(-1, 1)
    }

    pub fn from_coeffs<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        Self::from_coeffs(self.coeffs.iter().map(|(&e, v)| (e, v * &c)))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at an integer `t`; negative exponents need `t = ±1`.
    pub fn eval(&self, t: i64) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (&e, c) in &self.coeffs {
            if e < 0 {
                if t.abs() != 1 {
                    return Err(WittError::Precondition(format!("cannot evaluate t^{e} at t = {t}")));
                }
                acc += c * BigInt::from(t).pow(e.unsigned_abs() as u32);
            } else {
                acc += c * BigInt::from(t).pow(e as u32);
            }
        }
        Ok(acc)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&e, c)| (e - 1, c * e)))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let map = v
            .get("coeffs")
            .and_then(serde_json::Value::as_object)
            .ok_or_else(|| WittError::Malformed("expected {\"coeffs\": {..}}".into()))?;
        let mut out = Self::zero();
        for (k, c) in map {
            let e: i64 = k.parse().map_err(|_| WittError::Malformed(format!("bad exponent {k:?}")))?;
            let c: BigInt = match c {
                serde_json::Value::Number(x) => x
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| WittError::Malformed(format!("non-integer coefficient {x}")))?,
                serde_json::Value::String(s) => {
                    s.parse().map_err(|_| WittError::Malformed(format!("bad coefficient {s:?}")))?
                }
                other => return Err(WittError::Malformed(format!("bad coefficient {other}"))),
            };
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

struct CoeffMap<'a>(&'a BTreeMap<i64, BigInt>);

impl Serialize for CoeffMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.0 {
            match c.to_i64() {
                Some(v) => m.serialize_entry(&e.to_string(), &v)?,
                None => m.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        m.end()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPoly", 1)?;
        st.serialize_field("coeffs", &CoeffMap(&self.coeffs))?;
        st.end()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&var)?,
                (false, false) => write!(f, "{mag}·{var}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// `Q = Σ_{i<p} t^i`.
pub fn q_poly(p: u32) -> Result<LaurentPoly> {
    if p < 2 {
        return Err(WittError::InvalidParams(format!("Q needs p >= 2, got {p}")));
    }
    Ok(LaurentPoly::from_coeffs((0..p as i64).map(|i| (i, 1))))
}

/// `(1 − Q^r)/(1 − Q) = Σ_{k<r} Q^k`.
pub fn geometric_q(q: &LaurentPoly, r: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut pw = LaurentPoly::one();
    for _ in 0..r {
        acc = &acc + &pw;
        pw = &pw * q;
    }
    acc
}

/// `Σ_i dim(S ∩ W(n)_i) t^i` for standard graded `S`.
pub fn gdim_graded(s: &Subspace) -> Result<LaurentPoly> {
    let pr = s.params();
    let g = LaurentPoly::from_coeffs((-1..=pr.top_degree()).map(|i| (i as i64, s.dim_homogeneous(i) as i64)));
    let total = g.eval(1)?;
    if total != BigInt::from(s.dim()) {
        return Err(WittError::NotGraded { graded: total.to_usize().unwrap_or(usize::MAX), dim: s.dim() });
    }
    Ok(g)
}

/// `Σ_i (dim S_(i) − dim S_(i+1)) t^i` with `S_(i) = S ∩ W(n)_{>=i}`.
pub fn gdim_filtered(s: &Subspace) -> LaurentPoly {
    let pr = s.params();
    let dims: Vec<usize> = (-1..=pr.top_degree() + 1).map(|i| s.dim_degree_at_least(i)).collect();
    LaurentPoly::from_coeffs((0..dims.len() - 1).map(|k| (k as i64 - 1, (dims[k] - dims[k + 1]) as i64)))
}

/// `S ∩ W(n)_{>=i}` for standard graded `S`.
fn graded_tail(s: &Subspace, i: i32) -> Subspace {
    let wb = s.witt_basis();
    let rows: Vec<SparseVec> = s.rows().iter().map(|r| r.project(|k| wb.degree(k) >= i)).collect();
    Subspace::from_vectors(s.params(), &rows)
}

/// Graded dimension of `g·b` for the transported filtration `C_(i) = g·(b ∩ W(n)_{>=i})`.
pub fn gdim_transported(g: &PolyAutomorphism, b: &Subspace) -> Result<LaurentPoly> {
    if !b.is_standard_graded() {
        let graded = (-1..=b.params().top_degree()).map(|i| b.dim_homogeneous(i)).sum();
        return Err(WittError::NotGraded { graded, dim: b.dim() });
    }
    let pr = b.params();
    let mut dims = Vec::new();
    for i in -1..=pr.top_degree() + 1 {
        dims.push(g.induced_subspace(&graded_tail(b, i))?.dim());
    }
    Ok(LaurentPoly::from_coeffs((0..dims.len() - 1).map(|k| (k as i64 - 1, (dims[k] - dims[k + 1]) as i64))))
}

fn check_rn(n: usize, r: usize) -> Result<()> {
    check_range("r", r, 0, n)
}

fn tri(k: i64) -> i64 {
    k * (k + 1) / 2
}

fn br_formula(p: u32, n: usize, r: usize, middle: i64) -> Result<LaurentPoly> {
    check_rn(n, r)?;
    let q = q_poly(p)?;
    let t_inv = LaurentPoly::t_inv();
    let one = LaurentPoly::one();
    let (ni, ri) = (n as i64, r as i64);
    let qr = q.pow(r as u32);
    let head = (&q.pow((n - r) as u32) - &one) * &qr * &t_inv;
    Ok(head.scale(ni) + geometric_q(&q, r) * &t_inv - (&qr - &one).scale(middle) + LaurentPoly::constant(ri)
        - LaurentPoly::constant(tri(ni - ri - 1)))
}

/// `n(Q^{n−r} − 1)Q^r t^{-1} + (1 − Q^r)/(1 − Q) t^{-1} − ((n−r)(n+r+1)/2)(Q^r − 1) + r − (n−r)(n−r−1)/2`,
/// as printed.
pub fn gdim_formula_br(p: u32, n: usize, r: usize) -> Result<LaurentPoly> {
    let (ni, ri) = (n as i64, r as i64);
    br_formula(p, n, r, (ni - ri) * (ni + ri + 1) / 2)
}

/// The same shape with middle coefficient `(n−r)(n−r+1)/2`, which is what
/// `t_0 ⊕ C_r` enumerates to. Agrees with [`gdim_formula_br`] at `r = 0, n`.
pub fn gdim_formula_br_corrected(p: u32, n: usize, r: usize) -> Result<LaurentPoly> {
    let (ni, ri) = (n as i64, r as i64);
    br_formula(p, n, r, tri(ni - ri))
}

fn at_one(g: &LaurentPoly) -> i64 {
    g.eval(1).expect("t = 1").to_i64().expect("fits")
}

/// `n(p^{n−r} − 1)p^r + (1 − p^r)/(1 − p) − ((n−r)(n+r+1)/2)(p^r − 1) + r − (n−r)(n−r−1)/2`.
pub fn dim_formula_br(p: u32, n: usize, r: usize) -> Result<i64> {
    check_rn(n, r)?;
    let (p, ni, ri) = (p as i64, n as i64, r as i64);
    let pr = p.pow(r as u32);
    Ok(ni * (p.pow((n - r) as u32) - 1) * pr + (pr - 1) / (p - 1) - (ni - ri) * (ni + ri + 1) / 2 * (pr - 1) + ri
        - tri(ni - ri - 1))
}

pub fn dim_formula_br_corrected(p: u32, n: usize, r: usize) -> Result<i64> {
    Ok(at_one(&gdim_formula_br_corrected(p, n, r)?))
}

fn check_qi(n: usize, q: usize, i: usize) -> Result<()> {
    if n < 2 {
        return Err(WittError::OutOfRange { what: "q", value: q as i64, lo: 1, hi: n as i64 - 1 });
    }
    check_range("q", q, 1, n - 1)?;
    check_range("i", i, 1, n)
}

fn ri_formula(p: u32, n: usize, q: usize, i: usize, low_coeff: i64) -> Result<LaurentPoly> {
    check_qi(n, q, i)?;
    let qq = q_poly(p)?;
    let one = LaurentPoly::one();
    let u_part = &qq.pow((n - q) as u32) - &one;
    let w_pow = qq.pow(q as u32);
    if i <= n - q {
        Ok(&u_part * &(&w_pow - &one) * LaurentPoly::t_inv() - (&w_pow - &one).scale(low_coeff))
    } else {
        Ok(&u_part * &w_pow * LaurentPoly::t_inv())
    }
}

/// Graded dimension of `R_i = Q_q ∩ A(n)∂_i` as printed: the `i <= n−q`
/// branch carries `(n − i + 1)(Q^q − 1)`.
pub fn gdim_ri_formula(p: u32, n: usize, q: usize, i: usize) -> Result<LaurentPoly> {
    ri_formula(p, n, q, i, n as i64 - i as i64 + 1)
}

/// As [`gdim_ri_formula`] with `(n − q − i + 1)`, the number of linear
/// `u`-monomials `x_k` with `i <= k <= n−q` that `Γ_1` excludes.
pub fn gdim_ri_formula_corrected(p: u32, n: usize, q: usize, i: usize) -> Result<LaurentPoly> {
    ri_formula(p, n, q, i, n as i64 - q as i64 - i as i64 + 1)
}

/// `nQ^n t^{-1} − nQ^q t^{-1} − ((n−q)(n−q−1)/2)Q^q + (1 + t^{-1})(1 − Q^q)/(1 − Q)`.
pub fn gdim_formula_homogeneous_borel(p: u32, n: usize, q: usize) -> Result<LaurentPoly> {
    check_range("q", q, 0, n)?;
    let qq = q_poly(p)?;
    let t_inv = LaurentPoly::t_inv();
    let (ni, qi) = (n as i64, q as i64);
    let qpow = qq.pow(q as u32);
    Ok((qq.pow(n as u32) * &t_inv).scale(ni) - (&qpow * &t_inv).scale(ni) - qpow.scale(tri(ni - qi - 1))
        + (LaurentPoly::one() + &t_inv) * geometric_q(&qq, q))
}

/// Graded dimension of the full Witt algebra, `n Q^n t^{-1}`.
pub fn gdim_witt(params: Params) -> LaurentPoly {
    let q = q_poly(params.p()).expect("odd prime");
    (q.pow(params.n() as u32) * LaurentPoly::t_inv()).scale(params.n() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::{build_b1_example, build_bn, build_bq_split, build_br, build_qq, standard_torus};
    use crate::witt::WittElement;

    fn pr(p: u32, n: usize) -> Params {
        Params::new(p, n).unwrap()
    }

    #[test]
    fn q_values() {
        let q = q_poly(5).unwrap();
        assert_eq!(q.eval(1).unwrap(), BigInt::from(5));
        assert_eq!(q.eval(0).unwrap(), BigInt::from(1));
        assert_eq!(q.derivative().eval(0).unwrap(), BigInt::from(1));
        assert_eq!(q_poly(2).unwrap(), LaurentPoly::from_coeffs([(0, 1), (1, 1)]));
        assert!(q_poly(1).is_err());
    }

    #[test]
    fn geometric_sum_identity() {
        let q = q_poly(7).unwrap();
        for r in 0..4 {
            let lhs = (LaurentPoly::one() - &q) * geometric_q(&q, r);
            assert_eq!(lhs, LaurentPoly::one() - q.pow(r as u32));
        }
    }

    #[test]
    fn rendering_and_json() {
        let g = LaurentPoly::from_coeffs([(-1, 2), (0, -3), (2, 1)]);
        assert_eq!(g.to_string(), "2·t^-1 - 3 + t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"coeffs":{"-1":2,"0":-3,"2":1}}"#);
        assert_eq!(LaurentPoly::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), g);
        assert!(LaurentPoly::from_json(&serde_json::json!({"coeffs": {"x": 1}})).is_err());
    }

    #[test]
    fn witt_and_torus() {
        for (p, n) in [(5u32, 1usize), (5, 2), (7, 2)] {
            let params = pr(p, n);
            assert_eq!(gdim_graded(&Subspace::full(params)).unwrap(), gdim_witt(params));
            assert_eq!(gdim_graded(&standard_torus(params, 0).unwrap()).unwrap(), LaurentPoly::constant(n as i64));
        }
    }

    #[test]
    fn non_graded_rejected() {
        let params = pr(5, 2);
        let t2 = standard_torus(params, 2).unwrap();
        assert!(matches!(gdim_graded(&t2), Err(WittError::NotGraded { .. })));
        // the filtration still has a graded dimension
        assert_eq!(gdim_filtered(&t2), LaurentPoly::from_coeffs([(-1, 2)]));
    }

    #[test]
    fn bn_closed_form() {
        let params = pr(5, 2);
        let q = q_poly(5).unwrap();
        let expect = geometric_q(&q, 2) * LaurentPoly::t_inv() + LaurentPoly::constant(2);
        assert_eq!(gdim_graded(&build_bn(params)).unwrap(), expect);
    }

    #[test]
    fn formula_endpoints() {
        for (p, n) in [(5u32, 1usize), (5, 2), (7, 3)] {
            let q = q_poly(p).unwrap();
            let ni = n as i64;
            let b0 = (q.pow(n as u32) * LaurentPoly::t_inv()).scale(ni)
                - LaurentPoly::t_inv().scale(ni)
                - LaurentPoly::constant(ni * (ni - 1) / 2);
            assert_eq!(gdim_formula_br(p, n, 0).unwrap(), b0);
            let bn = geometric_q(&q, n) * LaurentPoly::t_inv() + LaurentPoly::constant(ni);
            assert_eq!(gdim_formula_br(p, n, n).unwrap(), bn);
            for r in 0..=n {
                assert_eq!(
                    BigInt::from(dim_formula_br(p, n, r).unwrap()),
                    gdim_formula_br(p, n, r).unwrap().eval(1).unwrap()
                );
            }
        }
        assert_eq!(dim_formula_br(5, 2, 0).unwrap(), 47);
        assert_eq!(dim_formula_br(5, 2, 2).unwrap(), 8);
        assert!(gdim_formula_br(5, 2, 3).is_err());
    }

    #[test]
    fn printed_and_corrected_middle_values() {
        assert_eq!(dim_formula_br(5, 2, 1).unwrap(), 34);
        assert_eq!(dim_formula_br_corrected(5, 2, 1).unwrap(), 38);
        assert_eq!(build_br(pr(5, 2), 1).unwrap().dim(), 38);
    }

    #[test]
    fn corrected_matches_enumeration() {
        for (p, n) in [(5u32, 1usize), (5, 2), (7, 2), (5, 3)] {
            for r in 0..=n {
                let b = build_br(pr(p, n), r).unwrap();
                let g = gdim_graded(&b).unwrap();
                assert_eq!(g, gdim_formula_br_corrected(p, n, r).unwrap(), "(p,n,r)=({p},{n},{r})");
                assert_eq!(g.coefficient(-1), BigInt::from(r));
                // degree zero is the upper triangular part of gl(n)
                assert_eq!(g.coefficient(0), BigInt::from(n * (n + 1) / 2));
            }
        }
    }

    fn r_i_enumerated(params: Params, q: usize, i: usize) -> LaurentPoly {
        let qq = build_qq(params, q).unwrap();
        let wb = qq.witt_basis();
        let part = Subspace::from_basis_indices(
            params,
            (0..wb.len()).filter(|&k| wb.split(k).0 == i - 1 && qq.contains_vector(&SparseVec::unit(k))),
        );
        gdim_graded(&part).unwrap()
    }

    #[test]
    fn r_i_formulas() {
        for (p, n) in [(5u32, 2usize), (5, 3)] {
            let params = pr(p, n);
            for q in 1..n {
                for i in 1..=n {
                    let e = r_i_enumerated(params, q, i);
                    assert_eq!(e, gdim_ri_formula_corrected(p, n, q, i).unwrap());
                    if i > n - q {
                        assert_eq!(e, gdim_ri_formula(p, n, q, i).unwrap());
                        let pi = p as i64;
                        let at1 = (pi.pow((n - q) as u32) - 1) * pi.pow(q as u32);
                        assert_eq!(e.eval(1).unwrap(), BigInt::from(at1));
                    }
                }
            }
        }
        // the printed i <= n−q branch overcounts the excluded linear monomials by q
        assert_ne!(gdim_ri_formula(5, 2, 1, 1).unwrap(), r_i_enumerated(pr(5, 2), 1, 1));
    }

    #[test]
    fn r_i_sum_reproduces_br() {
        for (p, n) in [(5u32, 2usize), (7, 3)] {
            let qq = q_poly(p).unwrap();
            let t_inv = LaurentPoly::t_inv();
            for q in 1..n {
                let m = n - q;
                let mi = m as i64;
                let u_part = (qq.pow(m as u32) * &t_inv).scale(mi) - t_inv.scale(mi) - LaurentPoly::constant(tri(mi - 1));
                let w_part = geometric_q(&qq, q) * &t_inv + LaurentPoly::constant(q as i64);
                let mut total = u_part + w_part;
                for i in 1..=n {
                    total = total + gdim_ri_formula_corrected(p, n, q, i).unwrap();
                }
                assert_eq!(total, gdim_formula_br_corrected(p, n, q).unwrap());
                if p == 5 {
                    assert_eq!(gdim_graded(&build_bq_split(pr(p, n), q).unwrap()).unwrap(), total);
                }
            }
        }
    }

    #[test]
    fn homogeneous_borel_values() {
        let at = |p, n, q| gdim_formula_homogeneous_borel(p, n, q).unwrap().eval(1).unwrap();
        assert_eq!(at(5, 2, 0), BigInt::from(47));
        assert_eq!(at(5, 2, 2), BigInt::from(12));
        assert_eq!(at(5, 2, 1), BigInt::from(42));
        for (p, n) in [(5u32, 3usize), (7, 2)] {
            let ni = n as i64;
            let expect = ni * (p as i64).pow(n as u32) - ni - ni * (ni - 1) / 2;
            assert_eq!(at(p, n, 0), BigInt::from(expect));
        }
        assert!(gdim_formula_homogeneous_borel(5, 2, 3).is_err());
    }

    #[test]
    fn b1_filtered() {
        let b1 = build_b1_example(5).unwrap();
        let g = gdim_filtered(&b1);
        assert_eq!(g.coefficient(-1), BigInt::from(2));
        assert_eq!(g, gdim_graded(&b1).unwrap());
    }

    #[test]
    fn filtered_equals_graded_on_graded() {
        let params = pr(5, 2);
        for r in 0..=2 {
            let b = build_br(params, r).unwrap();
            assert_eq!(gdim_filtered(&b), gdim_graded(&b).unwrap());
        }
        let _ = WittElement::zero(params);
    }

    #[test]
    fn transported_filtration_agrees() {
        let params = pr(5, 2);
        for r in 0..=2 {
            let b = build_br(params, r).unwrap();
            for seed in 0..3 {
                let g = crate::auto::random_automorphism(params, seed);
                let image = g.induced_subspace(&b).unwrap();
                assert_eq!(gdim_transported(&g, &b).unwrap(), gdim_filtered(&image));
                assert_eq!(gdim_filtered(&image), gdim_graded(&b).unwrap());
            }
        }
    }
}
