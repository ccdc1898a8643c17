//! Elements of `Q_p` at bounded absolute precision.

use super::zmod::{pow_big, val_p};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// `p^val * unit + O(p^prec)`, or an exact zero.
///
/// The unit is stored modulo `p^(prec - val)`. A value whose known digits are
/// all zero is `ZeroAtPrecision`, which is distinct from the exact zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicNumber {
    p: u64,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    ExactZero,
    ZeroAtPrecision { prec: i64 },
    Value { val: i64, prec: i64, unit: BigInt },
}

impl PAdicNumber {
    pub fn exact_zero(p: u64) -> Self {
        PAdicNumber {
            p,
            repr: Repr::ExactZero,
        }
    }

    /// The integer `x` known modulo `p^prec`.
    pub fn from_integer(p: u64, x: &BigInt, prec: i64) -> Self {
        Self::from_parts(p, x, 0, prec)
    }

    /// `p^shift * x + O(p^prec)`.
    pub fn from_parts(p: u64, x: &BigInt, shift: i64, prec: i64) -> Self {
        if x.is_zero() {
            return PAdicNumber {
                p,
                repr: Repr::ZeroAtPrecision { prec },
            };
        }
        let v = val_p(x, p).unwrap() as i64 + shift;
        if v >= prec {
            return PAdicNumber {
                p,
                repr: Repr::ZeroAtPrecision { prec },
            };
        }
        let u = x / pow_big(p, (v - shift) as u32);
        let m = pow_big(p, (prec - v) as u32);
        PAdicNumber {
            p,
            repr: Repr::Value {
                val: v,
                prec,
                unit: u.mod_floor(&m),
            },
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    /// Absolute precision; `None` for the exact zero.
    pub fn precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::ZeroAtPrecision { prec } | Repr::Value { prec, .. } => Some(*prec),
        }
    }

    /// Valuation, with `None` standing for the exact zero. A zero known only to
    /// finite precision has no certain valuation and raises.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match &self.repr {
            Repr::ExactZero => Ok(None),
            Repr::ZeroAtPrecision { prec } => Err(Error::UncertainZero(format!(
                "value is O({}^{})",
                self.p, prec
            ))),
            Repr::Value { val, .. } => Ok(Some(*val)),
        }
    }

    /// Lower bound on the valuation that never raises.
    pub fn valuation_lower_bound(&self) -> i64 {
        match &self.repr {
            Repr::ExactZero => i64::MAX,
            Repr::ZeroAtPrecision { prec } => *prec,
            Repr::Value { val, .. } => *val,
        }
    }

    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Value { unit, .. } => Some(unit),
            _ => None,
        }
    }

    /// Representative `p^val * unit` as a rational `(numerator, p-power denominator exponent)`.
    fn lift(&self) -> (BigInt, i64) {
        match &self.repr {
            Repr::Value { val, unit, .. } => (unit.clone(), *val),
            _ => (BigInt::zero(), 0),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let prec = match (self.precision(), other.precision()) {
            (None, None) => return Self::exact_zero(self.p),
            (None, Some(_)) => return other.clone(),
            (Some(_), None) => return self.clone(),
            (Some(a), Some(b)) => a.min(b),
        };
        let (ua, va) = self.lift();
        let (ub, vb) = other.lift();
        let base = va.min(vb).min(prec);
        let sa = if ua.is_zero() {
            BigInt::zero()
        } else {
            ua * pow_big(self.p, (va - base) as u32)
        };
        let sb = if ub.is_zero() {
            BigInt::zero()
        } else {
            ub * pow_big(self.p, (vb - base) as u32)
        };
        Self::from_parts(self.p, &(sa + sb), base, prec)
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Value { val, prec, unit } => {
                Self::from_parts(self.p, &(-unit.clone()), *val, *prec)
            }
            _ => self.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with the standard precision rule
    /// `prec = min(va + prec_b, vb + prec_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::exact_zero(self.p);
        }
        let va = self.valuation_lower_bound();
        let vb = other.valuation_lower_bound();
        let pa = self.precision().unwrap();
        let pb = other.precision().unwrap();
        let prec = (va + pb).min(vb + pa);
        let (ua, _) = self.lift();
        let (ub, _) = other.lift();
        Self::from_parts(self.p, &(ua * ub), va + vb, prec)
    }

    /// Quotient by a value of certain valuation.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let vb = other
            .valuation()?
            .ok_or_else(|| Error::InvalidInput("division by exact zero".into()))?;
        let pb = other.precision().unwrap();
        let ub = other.unit().unwrap();
        let (ua, va_raw) = self.lift();
        let va = self.valuation_lower_bound().min(i64::MAX / 4);
        let rel = match self.precision() {
            None => return Ok(Self::exact_zero(self.p)),
            Some(pa) => (pa - va).min(pb - vb),
        };
        let prec = va - vb + rel;
        if ua.is_zero() {
            return Ok(PAdicNumber {
                p: self.p,
                repr: Repr::ZeroAtPrecision {
                    prec: self.precision().unwrap() - vb,
                },
            });
        }
        let m = pow_big(self.p, rel.max(1) as u32);
        let inv = ub.extended_gcd(&m).x.mod_floor(&m);
        Ok(Self::from_parts(self.p, &(ua * inv), va_raw - vb, prec))
    }

    /// Residue modulo `p^k` of an integral value.
    pub fn residue(&self, k: u32) -> Result<BigInt> {
        let m = pow_big(self.p, k);
        match &self.repr {
            Repr::ExactZero => Ok(BigInt::zero()),
            Repr::ZeroAtPrecision { prec } => {
                if *prec >= k as i64 {
                    Ok(BigInt::zero())
                } else {
                    Err(Error::PrecisionExhausted(format!("need {} digits", k)))
                }
            }
            Repr::Value { val, prec, unit } => {
                if *prec < k as i64 {
                    return Err(Error::PrecisionExhausted(format!("need {} digits", k)));
                }
                if *val < 0 {
                    return Err(Error::InvalidInput("value is not integral".into()));
                }
                Ok((unit * pow_big(self.p, *val as u32)).mod_floor(&m))
            }
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Value { val: 0, unit, .. } if unit.is_one())
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::ExactZero => write!(f, "0"),
            Repr::ZeroAtPrecision { prec } => write!(f, "O({}^{})", self.p, prec),
            Repr::Value { val, prec, unit } => {
                write!(f, "{}*{}^{} + O({}^{})", unit, self.p, val, self.p, prec)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn num(p: u64, x: i64, prec: i64) -> PAdicNumber {
        PAdicNumber::from_integer(p, &BigInt::from(x), prec)
    }

    #[test]
    fn exact_zero_and_uncertain_zero_differ() {
        let z = PAdicNumber::exact_zero(5);
        let y = num(5, 25, 2);
        assert_eq!(z.valuation(), Ok(None));
        assert!(matches!(y.valuation(), Err(Error::UncertainZero(_))));
    }

    #[test]
    fn division_precision() {
        let a = num(3, 18, 10);
        let b = num(3, 3, 10);
        let q = a.div(&b).unwrap();
        assert_eq!(q.valuation().unwrap(), Some(1));
        assert_eq!(q.residue(5).unwrap(), BigInt::from(6));
    }

    proptest! {
        #[test]
        fn valuation_rules(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                           x in -5000i64..5000, y in -5000i64..5000) {
            prop_assume!(x != 0 && y != 0);
            let prec = 40;
            let a = num(p, x, prec);
            let b = num(p, y, prec);
            let va = a.valuation().unwrap().unwrap();
            let vb = b.valuation().unwrap().unwrap();
            prop_assert_eq!(a.mul(&b).valuation().unwrap().unwrap(), va + vb);
            let s = a.add(&b);
            if x + y != 0 {
                let vs = s.valuation().unwrap().unwrap();
                prop_assert!(vs >= va.min(vb));
                if va != vb {
                    prop_assert_eq!(vs, va.min(vb));
                }
            }
        }

        #[test]
        fn unit_part_is_coprime(p in prop::sample::select(vec![2u64, 3, 5]), x in 1i64..100000) {
            let a = num(p, x, 30);
            let u = a.unit().unwrap();
            prop_assert!(!(u % BigInt::from(p)).is_zero());
        }
    }
}
