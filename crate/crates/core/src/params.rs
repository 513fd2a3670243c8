use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};

/// Characteristic and number of variables of `A(n)` and `W(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    p: u32,
    n: usize,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Params {
    /// Accepts any odd prime `p` and `n >= 1`. Dense coordinate vectors have
    /// length `n * p^n`, so very large combinations are refused.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(WittError::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        if n == 0 {
            return Err(WittError::InvalidParams("n must be at least 1".into()));
        }
        let size = (p as u64).checked_pow(n as u32).and_then(|m| m.checked_mul(n as u64));
        match size {
            Some(s) if s <= 1 << 24 => Ok(Params { p, n }),
            _ => Err(WittError::InvalidParams(format!("W({n}) over F_{p} is too large"))),
        }
    }

    /// Like [`Params::new`] but additionally requires `p > 3`, the range in
    /// which the subalgebra classification holds.
    pub fn for_classification(p: u32, n: usize) -> Result<Self> {
        if p <= 3 {
            return Err(WittError::InvalidParams(format!("classification needs p > 3, got {p}")));
        }
        Self::new(p, n)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^n`, the dimension of `A(n)`.
    pub fn poly_dim(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    /// `n * p^n`, the dimension of `W(n)`.
    pub fn witt_dim(&self) -> usize {
        self.n * self.poly_dim()
    }

    /// Top degree `s = n(p-1) - 1` of the standard grading.
    pub fn top_degree(&self) -> i32 {
        (self.n as i32) * (self.p as i32 - 1) - 1
    }

    pub fn max_exponent(&self) -> u8 {
        (self.p - 1) as u8
    }

    pub(crate) fn ensure_same(&self, other: &Params) -> Result<()> {
        if self != other {
            return Err(WittError::ParamsMismatch { left: *self, right: *other });
        }
        Ok(())
    }

    // Scalar arithmetic in F_p on canonical representatives in [0, p).

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero scalar.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, (self.p - 2) as u64)
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n={})", self.p, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(Params::new(4, 2).is_err());
        assert!(Params::new(2, 2).is_err());
        assert!(Params::new(5, 0).is_err());
        assert!(Params::for_classification(3, 2).is_err());
        assert!(Params::new(3, 2).is_ok());
    }

    #[test]
    fn derived_sizes() {
        let pr = Params::new(5, 2).unwrap();
        assert_eq!(pr.poly_dim(), 25);
        assert_eq!(pr.witt_dim(), 50);
        assert_eq!(pr.top_degree(), 7);
    }

    #[test]
    fn field_ops() {
        let pr = Params::new(7, 1).unwrap();
        for a in 1..7 {
            assert_eq!(pr.mul(a, pr.inv(a)), 1);
            assert_eq!(pr.pow(a, 7), a);
        }
        assert_eq!(pr.reduce(-1), 6);
        assert_eq!(pr.sub(2, 5), 4);
    }
}
