//! Mass counts for totally ramified extensions of the unramified base
//! `U_f`, stratified by the exponent `d = v_K(φ'(π))` of the different.
//!
//! For Eisenstein `φ = x^e + a_{e-1}x^{e-1} + … + a_0` with the `a_j`
//! Haar-random in `pO_U`, `d = min_j (e·v(j a_j) + j - 1)` (with `a_e = 1`),
//! and `Σ 1/|Aut_U(K)|` over the classes with exponent `d` equals
//! `q^{d-e+1}` times the probability of that exponent.

use crate::error::{Error, Result};
use crate::padic::zmod::val_p_i64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// Shape of the Eisenstein coefficients in a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLayout {
    pub e: usize,
    pub d: u32,
    /// least allowed valuation of `a_j`, `j = 0..e`
    pub min_val: Vec<u32>,
    /// `a_j` matters only modulo `p^{prec_j}`
    pub prec: Vec<u32>,
    /// index whose valuation must equal `min_val` exactly (always includes 0)
    pub exact: Vec<usize>,
}

fn vp(j: usize, p: u64) -> u32 {
    val_p_i64(j as i64, p).unwrap()
}

/// Largest possible `d` for degree `e`.
pub fn max_exponent(p: u64, e: usize) -> u32 {
    e as u32 * vp(e, p) + e as u32 - 1
}

/// The coefficient layout of stratum `d`, or `None` if no Eisenstein
/// polynomial of degree `e` has that exponent.
pub fn stratum_layout(p: u64, e: usize, d: u32) -> Option<StratumLayout> {
    let eu = e as u32;
    let dmax = max_exponent(p, e);
    if d < eu - 1 || d > dmax {
        return None;
    }
    let jstar = (d % eu) as usize + 1;
    let mut exact = vec![0];
    if jstar == e {
        if d != dmax {
            return None;
        }
    } else {
        let base = (d + 1 - jstar as u32) / eu;
        if base < vp(jstar, p) + 1 || d >= dmax {
            return None;
        }
        exact.push(jstar);
    }
    let mut min_val = vec![1u32; e];
    for j in 1..e {
        // least m >= 1 with e(v_p(j) + m) + j - 1 >= d
        let mut m = 1;
        while eu * (vp(j, p) + m) + j as u32 - 1 < d {
            m += 1;
        }
        min_val[j] = m;
    }
    let prec = (0..e).map(|j| (2 * d - j as u32) / eu + 1).collect();
    Some(StratumLayout { e, d, min_val, prec, exact })
}

/// All admissible exponents `d` in increasing order.
pub fn stratum_exponents(p: u64, e: usize) -> Vec<u32> {
    (e as u32 - 1..=max_exponent(p, e)).filter(|&d| stratum_layout(p, e, d).is_some()).collect()
}

fn q_pow(q: &BigInt, k: i64) -> BigRational {
    let base = BigRational::from_integer(q.clone());
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

/// `Σ 1/|Aut_U(K)|` over `U`-classes of totally ramified degree-`e`
/// extensions of `U_f` with exponent `d`.
pub fn stratum_mass(p: u64, e: usize, f: usize, d: u32) -> BigRational {
    let Some(layout) = stratum_layout(p, e, d) else {
        return BigRational::zero();
    };
    let q = num_traits::pow(BigInt::from(p), f);
    let mut prob = BigRational::one();
    for j in 1..e {
        let m = layout.min_val[j] as i64;
        prob *= q_pow(&q, -(m - 1));
        if layout.exact.contains(&j) {
            prob *= BigRational::one() - q_pow(&q, -1);
        }
    }
    q_pow(&q, d as i64 - e as i64 + 1) * prob
}

/// Compare found weight against the prediction for the stratum whose
/// discriminant exponent over `Q_p` is `c = f·d`. A `Q_p`-class `K`
/// contributes `f/|Aut_{Q_p}(K)|`.
pub fn mass_check(p: u64, e: usize, f: usize, c: u32, found: &BigRational) -> Result<bool> {
    if c % f as u32 != 0 {
        return Ok(found.is_zero());
    }
    let expected = stratum_mass(p, e, f, c / f as u32);
    match found.cmp(&expected) {
        Ordering::Less => Ok(false),
        Ordering::Equal => Ok(true),
        Ordering::Greater => Err(Error::MassOvershoot {
            e: e as u32,
            f: f as u32,
            c,
            found: found.to_string(),
            expected: expected.to_string(),
        }),
    }
}

/// Number of `Q_p`-classes of tame extensions with the given `e`, `f`:
/// orbits of multiplication by `p` on `Z/gcd(e, p^f - 1)`.
pub fn tame_class_count(p: u64, e: usize, f: usize) -> usize {
    use num_integer::Integer;
    let q1 = (p as u128).pow(f as u32) - 1;
    let g = (e as u128).gcd(&q1) as u64;
    super::tame::p_orbits(p, g).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn quadratics_over_q2() {
        assert_eq!(stratum_exponents(2, 2), vec![2, 3]);
        // c = 2: two fields with two automorphisms; c = 3: four such fields
        assert_eq!(stratum_mass(2, 2, 1, 2), r(1, 1));
        assert_eq!(stratum_mass(2, 2, 1, 3), r(2, 1));
    }

    #[test]
    fn cubics_over_q3() {
        assert_eq!(stratum_exponents(3, 3), vec![3, 4, 5]);
        assert_eq!(stratum_mass(3, 3, 1, 3), r(2, 1));
        assert_eq!(stratum_mass(3, 3, 1, 4), r(2, 1));
        assert_eq!(stratum_mass(3, 3, 1, 5), r(3, 1));
    }

    #[test]
    fn tame_total_is_one() {
        for (p, e, f) in [(3u64, 2usize, 1usize), (5, 3, 2), (2, 3, 1), (7, 6, 1)] {
            let ds = stratum_exponents(p, e);
            assert_eq!(ds, vec![e as u32 - 1]);
            assert_eq!(stratum_mass(p, e, f, ds[0]), r(1, 1));
        }
    }

    #[test]
    fn serre_total() {
        // Σ_d q^{-(d-e+1)} mass_d = 1 (probabilities sum to one)
        for (p, e, f) in [(2u64, 4usize, 1usize), (2, 2, 2), (3, 3, 2), (2, 8, 1), (3, 9, 1), (2, 6, 1)] {
            let q = BigInt::from(p).pow(f as u32);
            let total: BigRational = stratum_exponents(p, e)
                .into_iter()
                .map(|d| stratum_mass(p, e, f, d) * q_pow(&q, -(d as i64 - e as i64 + 1)))
                .sum();
            assert_eq!(total, r(1, 1), "p={p} e={e} f={f}");
        }
    }

    #[test]
    fn overshoot_is_an_error() {
        assert!(mass_check(2, 2, 1, 2, &r(1, 1)).unwrap());
        assert!(!mass_check(2, 2, 1, 2, &r(1, 2)).unwrap());
        assert!(mass_check(2, 2, 1, 2, &r(3, 2)).is_err());
    }
}
