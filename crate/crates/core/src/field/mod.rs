//! p-adic fields presented as towers `Q_p ⊂ U ⊂ K`: `U` unramified of degree
//! `f` generated by a root of `h`, and `K = U(π)` with `π` a root of an
//! Eisenstein polynomial `φ` over `O_U`.

pub mod order;
pub mod panayi;
pub mod ring;
pub mod tower;
pub mod unramified;

use crate::error::{Error, Result};
use crate::padic::intpoly::{self, IntPoly};
use crate::padic::zmod::{val_p, ZMod};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use ring::{KElem, KRing, UElem};

/// Largest working precision (in `p`-digits) before a computation gives up.
pub const MAX_PREC: u32 = 1200;

#[derive(Clone, Debug)]
pub struct LocalField {
    p: u64,
    e: usize,
    f: usize,
    h: IntPoly,
    /// `φ_0..φ_{e-1}` with integer coordinates in the basis `1, α, …`.
    phi: Vec<Vec<BigInt>>,
    /// `None` when `φ` is exact, otherwise the number of correct `p`-digits.
    phi_prec: Option<u32>,
    /// The generator `θ` of `K/Q_p` in tower coordinates.
    theta: Vec<BigInt>,
    /// Minimal polynomial of `θ` over `Q_p` (an integer polynomial).
    poly: IntPoly,
    c: u32,
}

impl LocalField {
    /// Field from an exact tower. The generator is `π + kα` for the least
    /// `k ≥ 0` whose characteristic polynomial is squarefree.
    pub fn from_tower(p: u64, h: &[BigInt], phi: &[Vec<BigInt>]) -> Result<Self> {
        Self::from_tower_with_shift(p, h, phi, None)
    }

    pub fn from_tower_with_shift(
        p: u64,
        h: &[BigInt],
        phi: &[Vec<BigInt>],
        shift: Option<i64>,
    ) -> Result<Self> {
        let f = h.len() - 1;
        let e = phi.len();
        let mut field = LocalField {
            p,
            e,
            f,
            h: h.to_vec(),
            phi: phi.to_vec(),
            phi_prec: None,
            theta: Vec::new(),
            poly: Vec::new(),
            c: 0,
        };
        field.c = field.compute_c()?;
        let ring = field.exact_ring();
        let ks: Vec<i64> = match shift {
            Some(k) => vec![k],
            None => (0..64).collect(),
        };
        for k in ks {
            let theta = if e == 1 {
                ring.from_u(&ring.u_add(
                    &ring.u_alpha(),
                    &ring.u_from_int(&BigInt::from(k)),
                ))
            } else {
                let ka = ring.from_u(&ring.u_mul(&ring.u_alpha(), &ring.u_from_int(&BigInt::from(k))));
                ring.add(&ring.pi(), &ka)
            };
            let cp = exact_charpoly(&ring, &theta);
            if f * e == 1 || !intpoly::discriminant(&cp).is_zero() {
                field.theta = theta.iter().map(|x| ring.zm.centered(x)).collect();
                field.poly = cp;
                return Ok(field);
            }
        }
        Err(Error::RootShiftCap(64))
    }

    /// Field from a tower known to finite precision plus the generator's
    /// coordinates and minimal polynomial (used for fields recovered from an
    /// arbitrary defining polynomial).
    pub fn from_parts(
        p: u64,
        h: IntPoly,
        phi: Vec<Vec<BigInt>>,
        phi_prec: u32,
        theta: Vec<BigInt>,
        poly: IntPoly,
    ) -> Result<Self> {
        let f = h.len() - 1;
        let e = phi.len();
        let mut field = LocalField {
            p,
            e,
            f,
            h,
            phi,
            phi_prec: Some(phi_prec),
            theta,
            poly,
            c: 0,
        };
        field.c = field.compute_c()?;
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e * self.f
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn f(&self) -> usize {
        self.f
    }

    /// Discriminant exponent of `K/Q_p`.
    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn unramified_poly(&self) -> &IntPoly {
        &self.h
    }

    pub fn eisenstein(&self) -> &[Vec<BigInt>] {
        &self.phi
    }

    pub fn theta(&self) -> &[BigInt] {
        &self.theta
    }

    pub fn is_exact(&self) -> bool {
        self.phi_prec.is_none()
    }

    /// `f · v_K(φ'(π))`, read off the coefficient valuations.
    fn compute_c(&self) -> Result<u32> {
        let e = self.e;
        if e == 1 {
            return Ok(0);
        }
        let mut best = u32::MAX;
        for j in 1..=e {
            let vj = if j == e {
                Some(0)
            } else {
                self.phi[j].iter().filter_map(|x| val_p(x, self.p)).min()
            };
            if let Some(v) = vj {
                let v = v + val_p(&BigInt::from(j), self.p).unwrap();
                let w = e as u32 * v + j as u32 - 1;
                if let Some(pp) = self.phi_prec {
                    if v >= pp {
                        continue;
                    }
                }
                best = best.min(w);
            }
        }
        Ok(best * self.f as u32)
    }

    /// Default working precision in `p`-digits for yes/no decisions.
    pub fn default_prec(&self) -> u32 {
        let n = self.degree() as u32;
        let vn = val_p(&BigInt::from(n), self.p).unwrap();
        (self.c + 2 * n * vn + 2 * n).max(8)
    }

    pub fn ring(&self, prec: u32) -> Result<KRing> {
        let prec = match self.phi_prec {
            Some(pp) if prec > pp => {
                return Err(Error::PrecisionExhausted(format!(
                    "field known to {} digits, {} requested",
                    pp, prec
                )))
            }
            _ => prec,
        };
        let zm = ZMod::new(self.p, prec);
        KRing::new(zm, &self.h, &self.phi)
    }

    fn exact_ring(&self) -> KRing {
        // large enough that centered residues recover exact integers
        KRing::new(ZMod::new(self.p, 400), &self.h, &self.phi).expect("valid tower")
    }

    pub fn theta_in(&self, ring: &KRing) -> KElem {
        self.theta.iter().map(|x| ring.zm.reduce(x)).collect()
    }

    /// Precision cap for escalation.
    pub fn max_prec(&self) -> u32 {
        self.phi_prec.unwrap_or(MAX_PREC)
    }

    /// Run `op` at increasing precision until it stops reporting precision exhaustion.
    pub fn with_escalation<T>(&self, start: u32, mut op: impl FnMut(&KRing) -> Result<T>) -> Result<T> {
        let cap = self.max_prec();
        let mut prec = start.min(cap);
        loop {
            let ring = self.ring(prec)?;
            match op(&ring) {
                Err(Error::PrecisionExhausted(msg)) => {
                    if prec >= cap {
                        return Err(Error::PrecisionExhausted(msg));
                    }
                    prec = (prec * 2).min(cap);
                }
                other => return other,
            }
        }
    }

    /// Number of roots in `K` of a squarefree integer polynomial.
    pub fn count_roots(&self, g: &[BigInt]) -> Result<usize> {
        let dv = {
            let d = intpoly::discriminant(g);
            if d.is_zero() {
                return Err(Error::NotSquarefree);
            }
            val_p(&d, self.p).unwrap()
        };
        let start = self.default_prec().max(dv + 4);
        self.with_escalation(start, |ring| {
            let gk: Vec<KElem> = g.iter().map(|c| ring.from_int(c)).collect();
            panayi::count_roots(ring, &gk, ring.pi_prec())
        })
    }

    /// Number of roots of a polynomial with coefficients in `O_U` (as integer
    /// coordinate vectors in the same `α`-basis as this field's base).
    pub fn count_roots_over_base(&self, g: &[UElem]) -> Result<usize> {
        let start = self.default_prec() * 2;
        self.with_escalation(start, |ring| {
            let gk: Vec<KElem> = g
                .iter()
                .map(|c| ring.from_u(&c.iter().map(|x| ring.zm.reduce(x)).collect::<Vec<_>>()))
                .collect();
            panayi::count_roots(ring, &gk, ring.pi_prec())
        })
    }

    /// Number of automorphisms of `K/Q_p`.
    pub fn automorphism_count(&self) -> Result<usize> {
        self.count_roots(&self.poly.clone())
    }
}

/// Characteristic polynomial over `Z` of multiplication by `x` on the basis
/// `π^j α^i`; `ring` must carry enough precision for centered lifting.
pub fn exact_charpoly(ring: &KRing, x: &[BigInt]) -> IntPoly {
    let n = ring.degree();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for col in 0..n {
        let mut b = ring.zero();
        b[col] = BigInt::one();
        let img = ring.mul(x, &b);
        for row in 0..n {
            m[row][col] = ring.zm.centered(&img[row]);
        }
    }
    intpoly::charpoly(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn eisenstein_quartic_over_q2() {
        // x^4 + 2x + 2
        let k = LocalField::from_tower(2, &ints(&[0, 1]), &[ints(&[2]), ints(&[2]), ints(&[0]), ints(&[0])]).unwrap();
        assert_eq!(k.poly(), &from_i64(&[2, 2, 0, 0, 1]));
        assert_eq!(k.c(), 4);
        assert_eq!(k.automorphism_count().unwrap(), 1);
    }

    #[test]
    fn tame_sextic_norm() {
        // U = Q_5(α), α^2 - α + 2; π^3 = 5α  ->  x^6 - 5x^3 + 50
        let h = ints(&[2, -1, 1]);
        let phi = vec![ints(&[0, -5]), ints(&[0, 0]), ints(&[0, 0])];
        let k = LocalField::from_tower(5, &h, &phi).unwrap();
        assert_eq!(k.poly(), &from_i64(&[50, 0, 0, -5, 0, 0, 1]));
        assert_eq!(k.c(), 4);
    }

    #[test]
    fn roots_of_unity_in_q5() {
        let k = LocalField::from_tower(5, &ints(&[-2, 1]), &[ints(&[-5])]).unwrap();
        assert_eq!(k.degree(), 1);
        assert_eq!(k.count_roots(&from_i64(&[1, 0, 1])).unwrap(), 2);
        assert_eq!(k.count_roots(&from_i64(&[-1, 0, 0, 0, 1])).unwrap(), 4);
        assert_eq!(k.count_roots(&from_i64(&[-2, 0, 1])).unwrap(), 0);
    }
}
