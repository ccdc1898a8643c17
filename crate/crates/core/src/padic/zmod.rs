//! Residue arithmetic in `Z / p^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The ring `Z / p^N`, used as the working precision for every p-adic computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMod {
    p: u64,
    prec: u32,
    p_big: BigInt,
    modulus: BigInt,
}

impl ZMod {
    pub fn new(p: u64, prec: u32) -> Self {
        let p_big = BigInt::from(p);
        let modulus = num_traits::pow(p_big.clone(), prec as usize);
        ZMod {
            p,
            prec,
            p_big,
            modulus,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_big(&self) -> &BigInt {
        &self.p_big
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= self.modulus {
            s - &self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s.is_negative() {
            s + &self.modulus
        } else {
            s
        }
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &self.modulus - a
        }
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &self.modulus
    }

    /// Inverse of a unit; `None` when `p | a`.
    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        let a = self.reduce(a);
        let g = a.extended_gcd(&self.modulus);
        if !g.gcd.is_one() {
            return None;
        }
        Some(g.x.mod_floor(&self.modulus))
    }

    /// Valuation of a residue; `None` for zero mod `p^N`.
    pub fn val(&self, a: &BigInt) -> Option<u32> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        Some(val_p(&a, self.p).unwrap())
    }

    /// Exact division by `p^k` of a residue known to be divisible by it; the
    /// result is meaningful only modulo `p^(N-k)`.
    pub fn div_p_pow(&self, a: &BigInt, k: u32) -> BigInt {
        let d = num_traits::pow(self.p_big.clone(), k as usize);
        let a = self.reduce(a);
        debug_assert!((&a % &d).is_zero());
        a / d
    }

    pub fn from_i64(&self, a: i64) -> BigInt {
        self.reduce(&BigInt::from(a))
    }

    /// Symmetric representative in `(-p^N/2, p^N/2]`.
    pub fn centered(&self, a: &BigInt) -> BigInt {
        let r = self.reduce(a);
        let half = &self.modulus >> 1;
        if r > half {
            r - &self.modulus
        } else {
            r
        }
    }

    /// Same ring at a different precision.
    pub fn with_prec(&self, prec: u32) -> ZMod {
        ZMod::new(self.p, prec)
    }
}

/// `p`-adic valuation of an exact integer, `None` for zero.
pub fn val_p(a: &BigInt, p: u64) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut a = a.abs();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        a = q;
        v += 1;
    }
}

pub fn val_p_i64(a: i64, p: u64) -> Option<u32> {
    val_p(&BigInt::from(a), p)
}

pub fn pow_big(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_valuation() {
        let z = ZMod::new(3, 5);
        let a = BigInt::from(7);
        let ai = z.inv(&a).unwrap();
        assert_eq!(z.mul(&a, &ai), BigInt::one());
        assert!(z.inv(&BigInt::from(6)).is_none());
        assert_eq!(z.val(&BigInt::from(54)), Some(3));
        assert_eq!(z.val(&BigInt::from(243)), None);
        assert_eq!(val_p_i64(-24, 2), Some(3));
        assert_eq!(z.centered(&BigInt::from(242)), BigInt::from(-1));
    }
}
