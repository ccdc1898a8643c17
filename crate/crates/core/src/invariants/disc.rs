//! Square classes in `Q_p^× / Q_p^{×2}`.

use crate::error::{Error, Result};
use crate::padic::ff::powp;
use crate::padic::intpoly;
use crate::padic::zmod::val_p;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// A class in `Q_p^× / Q_p^{×2}`: parity of the valuation and the class of
/// the unit part (`0`/`1` for square/non-square when `p` is odd, the residue
/// mod 8 when `p = 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscClass {
    p: u64,
    odd: bool,
    unit: u8,
}

fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| powp(a, (p - 1) / 2, p) == p - 1).expect("odd prime")
}

impl DiscClass {
    pub fn of(x: &BigInt, p: u64) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::InvalidInput("zero has no square class".into()));
        }
        let v = val_p(x, p).unwrap();
        let u = x / BigInt::from(p).pow(v);
        let unit = if p == 2 {
            u.mod_floor(&BigInt::from(8)).to_u8().unwrap()
        } else {
            let r = u.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            u8::from(powp(r, (p - 1) / 2, p) != 1)
        };
        Ok(DiscClass { p, odd: v % 2 == 1, unit })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_square(&self) -> bool {
        !self.odd && self.unit == if self.p == 2 { 1 } else { 0 }
    }

    /// Whether `Q_p(√x)` is unramified (and nontrivial).
    pub fn is_unramified_nonsquare(&self) -> bool {
        !self.odd && self.unit == if self.p == 2 { 5 } else { 1 }
    }

    /// Discriminant exponent of `Q_p(√x)`; zero for the trivial class.
    pub fn quadratic_c(&self) -> u32 {
        match (self.p, self.odd, self.unit) {
            (2, true, _) => 3,
            (2, false, 3 | 7) => 2,
            (_, true, _) => 1,
            _ => 0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let odd = self.odd ^ other.odd;
        let unit = if self.p == 2 {
            (self.unit as u32 * other.unit as u32 % 8) as u8
        } else {
            self.unit ^ other.unit
        };
        DiscClass { p: self.p, odd, unit }
    }

    /// An integer in this class; used to write down `x² - D`.
    pub fn representative(&self) -> BigInt {
        let p = BigInt::from(self.p);
        let u = if self.p == 2 {
            BigInt::from(match self.unit {
                1 => 1,
                5 => 5,
                7 => -1,
                _ => -5,
            })
        } else if self.unit == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(smallest_nonresidue(self.p))
        };
        if self.odd {
            u * p
        } else {
            u
        }
    }

    pub fn parse(s: &str, p: u64) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown square class code {s:?} for p = {p}"));
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) if p == 2 => (true, r),
            _ => (false, s),
        };
        let (star, rest) = match rest.strip_suffix('*') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let odd = match rest {
            "" if star => false,
            "1" if !star => false,
            r if r == p.to_string() => true,
            _ => return Err(bad()),
        };
        let unit = if p == 2 {
            match (neg, star) {
                (false, false) => 1,
                (false, true) => 5,
                (true, false) => 7,
                (true, true) => 3,
            }
        } else {
            u8::from(star)
        };
        Ok(DiscClass { p, odd, unit })
    }
}

impl fmt::Display for DiscClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sign, star) = if self.p == 2 {
            match self.unit {
                1 => ("", false),
                5 => ("", true),
                7 => ("-", false),
                _ => ("-", true),
            }
        } else {
            ("", self.unit == 1)
        };
        let body = if self.odd { self.p.to_string() } else if star { String::new() } else { "1".into() };
        write!(f, "{sign}{body}{}", if star { "*" } else { "" })
    }
}

/// Square class of the discriminant of `Q_p[x]/g`. The polynomial and field
/// discriminants differ by the square of the index, so the former suffices.
pub fn disc_class(g: &[BigInt], p: u64) -> Result<DiscClass> {
    let d = intpoly::discriminant(g);
    if d.is_zero() {
        return Err(Error::NotSquarefree);
    }
    DiscClass::of(&d, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    #[test]
    fn codes_roundtrip() {
        for p in [2u64, 3, 5, 7] {
            let codes: Vec<String> = (1..200)
                .flat_map(|x| [BigInt::from(x), BigInt::from(-x)])
                .map(|x| DiscClass::of(&x, p).unwrap().to_string())
                .collect();
            let mut distinct = codes.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), if p == 2 { 8 } else { 4 });
            for c in &distinct {
                let k = DiscClass::parse(c, p).unwrap();
                assert_eq!(&k.to_string(), c);
                assert_eq!(DiscClass::of(&k.representative(), p).unwrap(), k);
            }
        }
    }

    #[test]
    fn multiplication_matches_integers() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in [-30i64, -12, -7, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14, 21, 22] {
                for b in [-15i64, -5, -1, 2, 3, 7, 11, 13, 22, 33] {
                    let ka = DiscClass::of(&BigInt::from(a), p).unwrap();
                    let kb = DiscClass::of(&BigInt::from(b), p).unwrap();
                    let kab = DiscClass::of(&BigInt::from(a * b), p).unwrap();
                    assert_eq!(ka.mul(&kb), kab, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn quadratic_exponents_match_degree_p_table() {
        use crate::enumerate::degree_p_ramified;
        for k in degree_p_ramified(2) {
            let class = disc_class(&k.poly, 2).unwrap();
            assert_eq!(class.quadratic_c(), k.c);
        }
        assert_eq!(DiscClass::parse("*", 2).unwrap().quadratic_c(), 0);
        assert_eq!(DiscClass::parse("7*", 7).unwrap().quadratic_c(), 1);
    }

    #[test]
    fn discriminant_classes() {
        assert_eq!(disc_class(&from_i64(&[-4, 0, 2, 0, 1]), 2).unwrap().to_string(), "-1");
        assert_eq!(disc_class(&from_i64(&[3, 0, 0, 0, 1]), 3).unwrap().to_string(), "3");
        assert_eq!(disc_class(&from_i64(&[1, 1, 0, 0, 1]), 2).unwrap().to_string(), "*");
        assert_eq!(disc_class(&from_i64(&[4, 0, 8, 0, 1]), 2).unwrap().to_string(), "1");
        assert_eq!(disc_class(&from_i64(&[5, 0, -1, 0, 1]), 2).unwrap().to_string(), "*");
        assert_eq!(disc_class(&from_i64(&[4, 4, 2, 0, 1]), 2).unwrap().to_string(), "-1");
        assert_eq!(disc_class(&from_i64(&[-5, 0, 0, 0, 1]), 2).unwrap().to_string(), "-*");
        assert_eq!(disc_class(&from_i64(&[2, 2, 0, 0, 1]), 2).unwrap().to_string(), "*");
        // x³ - 3x + 1 has discriminant 81
        assert!(disc_class(&from_i64(&[1, -3, 0, 1]), 5).unwrap().is_square());
    }
}
