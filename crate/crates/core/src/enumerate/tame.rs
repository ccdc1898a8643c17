//! Tamely ramified extensions: `x^e - α^r p` over the unramified base, one
//! per orbit of multiplication by `p` on `Z/gcd(e, p^f - 1)`.

use crate::error::{Error, Result};
use crate::field::unramified::defining_poly;
use crate::field::LocalField;
use crate::padic::intpoly::{self, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Largest root shift tried before giving up.
pub const ROOT_SHIFT_CAP: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameSpec {
    pub p: u64,
    pub e: usize,
    pub f: usize,
    /// exponent of `α` in `x^e - α^r p`
    pub r: u64,
    /// root shift: the generator is `π - kα`
    pub k: u64,
}

/// Orbits of `x ↦ p x` on `Z/m`, each sorted, listed by smallest element.
pub fn p_orbits(p: u64, m: u64) -> Vec<Vec<u64>> {
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for start in 0..m {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            orbit.push(x);
            x = x * p % m;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

fn orbit_len(p: u64, m: u64, r: u64) -> usize {
    let mut x = r * p % m;
    let mut len = 1;
    while x != r {
        x = x * p % m;
        len += 1;
    }
    len
}

/// `α^r` reduced modulo `h`, exactly.
fn alpha_pow(h: &[BigInt], r: u64) -> Vec<BigInt> {
    let f = h.len() - 1;
    let mut acc: IntPoly = vec![BigInt::from(1)];
    for _ in 0..r {
        let mut next = vec![BigInt::zero()];
        next.extend(acc);
        acc = intpoly::rem_monic(&next, h);
    }
    acc.resize(f, BigInt::zero());
    acc
}

/// The field cut out by `(x + kα)^e - α^r p`.
pub fn tame_field(spec: &TameSpec) -> Result<LocalField> {
    let h = defining_poly(spec.p, spec.f);
    let mut phi = vec![vec![BigInt::zero(); spec.f]; spec.e];
    phi[0] = alpha_pow(&h, spec.r).iter().map(|c| -c * BigInt::from(spec.p)).collect();
    LocalField::from_tower_with_shift(spec.p, &h, &phi, Some(-(spec.k as i64)))
}

/// One field per isomorphism class of extensions of `Q_p` with the given
/// tame ramification index and residue degree.
pub fn tame_fields(p: u64, e: usize, f: usize) -> Result<Vec<(LocalField, TameSpec)>> {
    if e as u64 % p == 0 {
        return Err(Error::InvalidInput(format!("e = {e} is divisible by p = {p}")));
    }
    let q1 = (p as u128).pow(f as u32) - 1;
    let q1 = u64::try_from(q1).map_err(|_| Error::Unsupported("residue field too large".into()))?;
    let g = (e as u64).gcd(&q1);
    let mut out = Vec::new();
    for orbit in p_orbits(p, g) {
        let full = (0..q1).find(|r| orbit.binary_search(&(r % g)).is_ok() && orbit_len(p, q1, *r) == f);
        let found = match full {
            Some(r) => {
                let spec = TameSpec { p, e, f, r, k: 0 };
                (tame_field(&spec)?, spec)
            }
            None => {
                let r = orbit[0];
                let mut hit = None;
                for k in 1..=ROOT_SHIFT_CAP as u64 {
                    let spec = TameSpec { p, e, f, r, k };
                    match tame_field(&spec) {
                        Ok(field) => {
                            hit = Some((field, spec));
                            break;
                        }
                        Err(Error::RootShiftCap(_)) => continue,
                        Err(err) => return Err(err),
                    }
                }
                hit.ok_or(Error::RootShiftCap(ROOT_SHIFT_CAP as u32))?
            }
        };
        out.push(found);
    }
    Ok(out)
}

/// Defining polynomials with their recipe parameters.
pub fn tame_extensions(p: u64, e: usize, f: usize) -> Result<Vec<(IntPoly, TameSpec)>> {
    Ok(tame_fields(p, e, f)?.into_iter().map(|(k, s)| (k.poly().clone(), s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    #[test]
    fn sextics_over_q5() {
        let out = tame_extensions(5, 3, 2).unwrap();
        let polys: Vec<_> = out.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(polys.len(), 2);
        assert!(polys.contains(&from_i64(&[50, 0, 0, -5, 0, 0, 1])));
        assert!(polys.contains(&from_i64(&[200, 0, 0, 25, 0, 0, 1])));
    }

    #[test]
    fn root_shift_example() {
        let out = tame_extensions(5, 6, 2).unwrap();
        let (g, spec) = out.iter().find(|(_, s)| s.r == 0).unwrap();
        assert_eq!(spec.k, 1);
        assert_eq!(
            g,
            &from_i64(&[44, -138, 357, 1140, 1005, 702, 571, 366, 195, 80, 27, 6, 1])
        );
    }

    #[test]
    fn orbit_counts() {
        // number of classes = number of orbits on Z/gcd(e, p^f - 1)
        assert_eq!(tame_extensions(5, 6, 2).unwrap().len(), 4);
        assert_eq!(tame_extensions(3, 2, 1).unwrap().len(), 2);
        assert_eq!(tame_extensions(7, 3, 1).unwrap().len(), 3);
        assert_eq!(tame_extensions(2, 3, 1).unwrap().len(), 1);
    }
}
