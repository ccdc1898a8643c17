//! Isomorphism testing, automorphism counts, subfields and splitting of
//! global polynomials, all reduced to counting roots with Panayi's method.

mod split;

pub use split::{analyze_factor, blocks, split_algebra, IdentificationResult, MatchedFactor, UnmatchedFactor};

use crate::error::{Error, Result};
use crate::field::panayi;
use crate::field::ring::{KElem, KRing, UElem};
use crate::field::LocalField;
use crate::padic::intpoly::IntPoly;

/// Number of roots of `g` in `K`.
pub fn panayi_root_count(g: &IntPoly, k: &LocalField) -> Result<usize> {
    k.count_roots(g)
}

/// `K ≅ L` over `Q_p`.
pub fn is_isomorphic(k: &LocalField, l: &LocalField) -> Result<bool> {
    if k.p() != l.p() || k.degree() != l.degree() || k.e() != l.e() || k.c() != l.c() {
        return Ok(false);
    }
    Ok(l.count_roots(k.poly())? > 0)
}

pub fn automorphism_count(k: &LocalField) -> Result<usize> {
    k.automorphism_count()
}

/// Counts roots in a fixed field of polynomials over its unramified base,
/// optionally twisted by a power of Frobenius; keeps its working ring.
pub struct BaseRootCounter<'a> {
    field: &'a LocalField,
    prec: u32,
    ring: KRing,
    /// `σ^i(α)` for `i = 0..f`
    frob: Vec<UElem>,
}

impl<'a> BaseRootCounter<'a> {
    pub fn new(field: &'a LocalField) -> Result<Self> {
        let prec = field.default_prec().min(field.max_prec());
        let ring = field.ring(prec)?;
        let frob = frobenius_powers(&ring);
        Ok(BaseRootCounter { field, prec, ring, frob })
    }

    pub fn field(&self) -> &LocalField {
        self.field
    }

    /// Roots of `Σ g_j y^j` after applying `σ^twist` to its coefficients;
    /// coefficients are integer coordinates in the `α`-basis.
    pub fn count(&mut self, g: &[UElem], twist: usize) -> Result<usize> {
        loop {
            let ring = &self.ring;
            let img = &self.frob[twist % ring.f];
            let gk: Vec<KElem> = g
                .iter()
                .map(|c| {
                    let c: UElem = c.iter().map(|x| ring.zm.reduce(x)).collect();
                    ring.from_u(&ring.u_apply(&c, img))
                })
                .collect();
            match panayi::count_roots(ring, &gk, ring.pi_prec()) {
                Err(Error::PrecisionExhausted(msg)) => {
                    if self.prec >= self.field.max_prec() {
                        return Err(Error::PrecisionExhausted(msg));
                    }
                    self.prec = (self.prec * 2).min(self.field.max_prec());
                    self.ring = self.field.ring(self.prec)?;
                    self.frob = frobenius_powers(&self.ring);
                }
                other => return other,
            }
        }
    }

    /// Total over all Frobenius twists.
    pub fn count_all_twists(&mut self, g: &[UElem]) -> Result<usize> {
        let mut total = 0;
        for i in 0..self.ring.f {
            total += self.count(g, i)?;
        }
        Ok(total)
    }
}

fn frobenius_powers(ring: &KRing) -> Vec<UElem> {
    let sigma = ring.frobenius_alpha();
    let mut out = vec![ring.u_alpha()];
    for _ in 1..ring.f {
        let prev = out.last().unwrap();
        out.push(ring.u_apply(prev, &sigma));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::tower::field_from_poly;
    use crate::padic::intpoly::from_i64;

    fn field(c: &[i64], p: u64) -> LocalField {
        field_from_poly(&from_i64(c), p).unwrap()
    }

    #[test]
    fn automorphisms_from_tables() {
        assert_eq!(automorphism_count(&field(&[2, 2, 0, 0, 1], 2)).unwrap(), 1);
        assert_eq!(automorphism_count(&field(&[1, 1, 0, 0, 1], 2)).unwrap(), 4);
        assert_eq!(automorphism_count(&field(&[-2, 0, 1], 2)).unwrap(), 2);
        assert_eq!(automorphism_count(&field(&[3, 0, 0, 1], 3)).unwrap(), 1);
    }

    #[test]
    fn isomorphism_of_presentations() {
        // Q_2(√3) = Q_2(√12), Q_5(5^{1/2}) ≠ Q_5((2·5)^{1/2})
        assert!(is_isomorphic(&field(&[-3, 0, 1], 2), &field(&[-12, 0, 1], 2)).unwrap());
        assert!(!is_isomorphic(&field(&[-3, 0, 1], 2), &field(&[-7, 0, 1], 2)).unwrap());
        assert!(!is_isomorphic(&field(&[-5, 0, 1], 5), &field(&[-10, 0, 1], 5)).unwrap());
        assert!(is_isomorphic(&field(&[-5, 0, 1], 5), &field(&[-20, 0, 1], 5)).unwrap());
    }
}
