//! Polynomials over `Z_p` at a common absolute precision.

use super::intpoly::{self, IntPoly};
use super::linalg;
use super::number::PAdicNumber;
use super::zmod::{val_p, ZMod};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficients are residues modulo `p^prec`; `exact` marks polynomials that
/// came from integer data, whose coefficients are known without error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicPolynomial {
    ring: ZMod,
    coeffs: Vec<BigInt>,
    exact: Option<IntPoly>,
}

impl PAdicPolynomial {
    pub fn from_integer_poly(p: u64, f: &[BigInt], prec: u32) -> Self {
        let ring = ZMod::new(p, prec);
        let mut exact = f.to_vec();
        intpoly::trim(&mut exact);
        let coeffs = exact.iter().map(|c| ring.reduce(c)).collect();
        PAdicPolynomial {
            ring,
            coeffs,
            exact: Some(exact),
        }
    }

    /// Approximate polynomial from residues modulo `p^prec`.
    pub fn from_residues(ring: &ZMod, coeffs: Vec<BigInt>) -> Self {
        PAdicPolynomial {
            coeffs: coeffs.iter().map(|c| ring.reduce(c)).collect(),
            ring: ring.clone(),
            exact: None,
        }
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn precision(&self) -> u32 {
        self.ring.prec()
    }

    pub fn ring(&self) -> &ZMod {
        &self.ring
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn exact(&self) -> Option<&IntPoly> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Coefficient `i` as a p-adic number.
    pub fn coeff(&self, i: usize) -> PAdicNumber {
        if let Some(e) = &self.exact {
            let c = e.get(i).cloned().unwrap_or_default();
            if c.is_zero() {
                return PAdicNumber::exact_zero(self.p());
            }
            return PAdicNumber::from_integer(self.p(), &c, self.precision() as i64);
        }
        let c = self.coeffs.get(i).cloned().unwrap_or_default();
        PAdicNumber::from_integer(self.p(), &c, self.precision() as i64)
    }

    /// Degree: the index of the last coefficient that is nonzero at working precision.
    pub fn degree(&self) -> Option<usize> {
        if let Some(e) = &self.exact {
            return intpoly::degree(e);
        }
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        match self.degree() {
            Some(d) => self.coeffs[d].is_one(),
            None => false,
        }
    }

    /// Valuation of coefficient `i`: `Ok(None)` for an exact zero, error when
    /// the coefficient is zero only to working precision.
    pub fn coeff_val(&self, i: usize) -> Result<Option<u32>> {
        if let Some(e) = &self.exact {
            return Ok(e.get(i).and_then(|c| val_p(c, self.p())));
        }
        match self.coeffs.get(i) {
            None => Ok(None),
            Some(c) => match self.ring.val(c) {
                Some(v) => Ok(Some(v)),
                None => Err(Error::UncertainZero(format!("coefficient {}", i))),
            },
        }
    }

    /// Same polynomial at another precision; approximations can only be lowered.
    pub fn with_precision(&self, prec: u32) -> Result<Self> {
        match &self.exact {
            Some(e) => Ok(Self::from_integer_poly(self.p(), e, prec)),
            None => {
                if prec > self.precision() {
                    return Err(Error::PrecisionExhausted(format!(
                        "approximate polynomial known to {} digits, {} requested",
                        self.precision(),
                        prec
                    )));
                }
                Ok(Self::from_residues(&ZMod::new(self.p(), prec), self.coeffs.clone()))
            }
        }
    }
}

/// `ord_p(disc(f))` for a monic squarefree polynomial.
pub fn poly_disc_exponent(f: &PAdicPolynomial) -> Result<u32> {
    if !f.is_monic() {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    if let Some(e) = f.exact() {
        let d = intpoly::discriminant(e);
        return val_p(&d, f.p()).ok_or(Error::NotSquarefree);
    }
    disc_valuation_mod(f.ring(), f.residues())
}

/// Valuation of the discriminant of a monic polynomial known modulo `p^N`.
pub fn disc_valuation_mod(ring: &ZMod, f: &[BigInt]) -> Result<u32> {
    let n = f.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if n <= 1 {
        return Ok(0);
    }
    let df: Vec<BigInt> = (1..=n)
        .map(|i| ring.mul(&f[i], &BigInt::from(i as u64)))
        .collect();
    let m = n - 1;
    let size = n + m;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..m {
        for j in 0..=n {
            s[i][i + j] = f[n - j].clone();
        }
    }
    for i in 0..n {
        for j in 0..=m {
            s[m + i][i + j] = df[m - j].clone();
        }
    }
    linalg::det_valuation(ring, s)?.ok_or_else(|| {
        Error::PrecisionExhausted(format!(
            "discriminant is zero modulo {}^{}",
            ring.p(),
            ring.prec()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    #[test]
    fn disc_exponent_examples() {
        let lin = PAdicPolynomial::from_integer_poly(7, &from_i64(&[-3, 1]), 20);
        assert_eq!(poly_disc_exponent(&lin).unwrap(), 0);
        let f = PAdicPolynomial::from_integer_poly(2, &from_i64(&[2, 2, 0, 0, 1]), 20);
        assert_eq!(poly_disc_exponent(&f).unwrap(), 4);
        let g = PAdicPolynomial::from_integer_poly(2, &from_i64(&[-2, 0, 1]), 20);
        assert_eq!(poly_disc_exponent(&g).unwrap(), 3);
    }

    #[test]
    fn approximate_disc_matches_exact() {
        let f = from_i64(&[2, 2, 0, 0, 1]);
        let ring = ZMod::new(2, 30);
        let approx = PAdicPolynomial::from_residues(&ring, f.clone());
        assert_eq!(poly_disc_exponent(&approx).unwrap(), 4);
    }
}
