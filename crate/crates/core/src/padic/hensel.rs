//! Hensel lifting of coprime factorizations modulo `p`.

use super::fpx::{self, Fpx};
use super::poly::PAdicPolynomial;
use super::zmod::ZMod;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Polynomial arithmetic over `Z / p^N`.
pub mod zpoly {
    use super::*;

    pub fn trim(f: &mut Vec<BigInt>) {
        while f.last().map_or(false, |c| c.is_zero()) {
            f.pop();
        }
    }

    pub fn reduce(r: &ZMod, f: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = f.iter().map(|c| r.reduce(c)).collect();
        trim(&mut v);
        v
    }

    pub fn add(r: &ZMod, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
        let n = f.len().max(g.len());
        let z = BigInt::zero();
        let mut v: Vec<BigInt> = (0..n)
            .map(|i| r.add(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn sub(r: &ZMod, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
        let n = f.len().max(g.len());
        let z = BigInt::zero();
        let mut v: Vec<BigInt> = (0..n)
            .map(|i| r.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn mul(r: &ZMod, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigInt::zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        for c in v.iter_mut() {
            *c = r.reduce(c);
        }
        trim(&mut v);
        v
    }

    pub fn scale(r: &ZMod, f: &[BigInt], s: &BigInt) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = f.iter().map(|c| r.mul(c, s)).collect();
        trim(&mut v);
        v
    }

    /// Division by a monic polynomial.
    pub fn divrem_monic(r: &ZMod, f: &[BigInt], g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut rem = reduce(r, f);
        let dg = g.len() - 1;
        if rem.len() <= dg {
            return (Vec::new(), rem);
        }
        let mut q = vec![BigInt::zero(); rem.len() - dg];
        while rem.len() > dg {
            let d = rem.len() - 1;
            let c = rem[d].clone();
            if !c.is_zero() {
                for i in 0..=dg {
                    let t = r.mul(&c, &g[i]);
                    rem[d - dg + i] = r.sub(&rem[d - dg + i], &t);
                }
            }
            q[d - dg] = c;
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut q);
        (q, rem)
    }

    pub fn to_fp(f: &[BigInt], p: u64) -> Fpx {
        let pb = BigInt::from(p);
        let mut v: Fpx = f
            .iter()
            .map(|c| {
                let m = ((c % &pb) + &pb) % &pb;
                m.to_u64().unwrap()
            })
            .collect();
        fpx::trim(&mut v);
        v
    }

    pub fn from_fp(f: &[u64]) -> Vec<BigInt> {
        f.iter().map(|&c| BigInt::from(c)).collect()
    }
}

/// Lift `F ≡ A·B (mod p)` with `A` monic and `gcd(Ā, B̄) = 1` to a factorization
/// modulo `p^N` with `A` monic of the same degree.
pub fn lift_pair(
    ring: &ZMod,
    f: &[BigInt],
    a0: &[BigInt],
    b0: &[BigInt],
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let p = ring.p();
    let abar = zpoly::to_fp(a0, p);
    let bbar = zpoly::to_fp(b0, p);
    let (g, _s, t) = fpx::xgcd(&abar, &bbar, p);
    if g.len() != 1 {
        return Err(Error::InseparableReduction);
    }
    // t·B̄ ≡ 1 (mod Ā)
    let mut a = zpoly::reduce(ring, a0);
    let mut b = zpoly::reduce(ring, b0);
    let mut pk = BigInt::from(p);
    for _ in 1..ring.prec() {
        let err = zpoly::sub(ring, f, &zpoly::mul(ring, &a, &b));
        if err.is_empty() {
            break;
        }
        let e: Vec<BigInt> = err.iter().map(|c| c / &pk).collect();
        let ebar = zpoly::to_fp(&e, p);
        let da = fpx::rem(&fpx::mul(&t, &ebar, p), &abar, p);
        let (db, r) = fpx::divrem(&fpx::sub(&ebar, &fpx::mul(&bbar, &da, p), p), &abar, p);
        debug_assert!(r.is_empty());
        a = zpoly::add(ring, &a, &zpoly::scale(ring, &zpoly::from_fp(&da), &pk));
        b = zpoly::add(ring, &b, &zpoly::scale(ring, &zpoly::from_fp(&db), &pk));
        pk *= p;
    }
    Ok((a, b))
}

/// Split a monic polynomial into pairwise-coprime monic factors, one for each
/// irreducible factor of its reduction modulo `p`.
pub fn hensel_split(f: &PAdicPolynomial) -> Result<Vec<PAdicPolynomial>> {
    if !f.is_monic() {
        return Err(Error::InvalidInput("hensel_split needs a monic polynomial".into()));
    }
    let ring = f.ring().clone();
    let p = ring.p();
    let fbar = zpoly::to_fp(f.residues(), p);
    let parts = fpx::factor(&fbar, p);
    if parts.len() == 1 && f.degree() != Some(parts[0].0.len() - 1) {
        return Err(Error::InseparableReduction);
    }
    let mut rest: Vec<BigInt> = f.residues().to_vec();
    let mut out = Vec::new();
    for (i, (psi, m)) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            out.push(PAdicPolynomial::from_residues(&ring, rest.clone()));
            break;
        }
        let mut gbar = vec![1u64];
        for _ in 0..*m {
            gbar = fpx::mul(&gbar, psi, p);
        }
        let restbar = zpoly::to_fp(&rest, p);
        let hbar = fpx::divrem(&restbar, &gbar, p).0;
        let (a, b) = lift_pair(&ring, &rest, &zpoly::from_fp(&gbar), &zpoly::from_fp(&hbar))?;
        out.push(PAdicPolynomial::from_residues(&ring, a));
        rest = b;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::{from_i64, mul};

    fn product(ring: &ZMod, fs: &[PAdicPolynomial]) -> Vec<BigInt> {
        fs.iter()
            .fold(vec![BigInt::from(1)], |acc, g| zpoly::mul(ring, &acc, g.residues()))
    }

    #[test]
    fn distinct_roots_split_linear() {
        let f = from_i64(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let pf = PAdicPolynomial::from_integer_poly(5, &f, 20);
        let parts = hensel_split(&pf).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|g| g.degree() == Some(1)));
        assert_eq!(product(pf.ring(), &parts), zpoly::reduce(pf.ring(), &f));
    }

    #[test]
    fn quadratic_blocks() {
        for p in [3i64, 5, 7] {
            let f = mul(&from_i64(&[-1, 0, 1]), &from_i64(&[-p, 0, 1]));
            let pf = PAdicPolynomial::from_integer_poly(p as u64, &f, 25);
            let parts = hensel_split(&pf).unwrap();
            let degs: Vec<usize> = parts.iter().map(|g| g.degree().unwrap()).collect();
            assert!(degs.contains(&2));
            assert_eq!(degs.iter().sum::<usize>(), 4);
            assert_eq!(product(pf.ring(), &parts), zpoly::reduce(pf.ring(), &f));
        }
    }

    #[test]
    fn eisenstein_is_inseparable() {
        let pf = PAdicPolynomial::from_integer_poly(2, &from_i64(&[2, 2, 0, 0, 1]), 10);
        assert_eq!(hensel_split(&pf), Err(Error::InseparableReduction));
    }
}
