//! Recovering the tower presentation `U = Q_p(α)`, `K = U(π)` of a field
//! given by an arbitrary irreducible integer polynomial.

use super::order::{FpAlgebra, Order};
use super::unramified::defining_poly;
use super::LocalField;
use crate::error::{Error, Result};
use crate::padic::ff::{fp_poly, FiniteField};
use crate::padic::intpoly::{self, IntPoly};
use crate::padic::linalg::{det_valuation, fp_inverse, inverse_unit, vec_mat};
use crate::padic::zmod::{val_p, ZMod};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// `O/p^N O` through structure constants.
struct ZpAlgebra {
    zm: ZMod,
    n: usize,
    t: Vec<Vec<Vec<BigInt>>>,
    one: Vec<BigInt>,
}

impl ZpAlgebra {
    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for i in 0..self.n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if b[j].is_zero() {
                    continue;
                }
                let s = &a[i] * &b[j];
                for (o, c) in out.iter_mut().zip(&self.t[i][j]) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out.iter().map(|x| self.zm.reduce(x)).collect()
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.zm.add(x, y)).collect()
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.zm.sub(x, y)).collect()
    }

    fn scale(&self, a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| self.zm.mul(x, s)).collect()
    }

    fn is_zero(&self, a: &[BigInt]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    fn eval(&self, h: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.n];
        for c in h.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.scale(&self.one, &self.zm.reduce(c)));
        }
        acc
    }

    fn pow(&self, a: &[BigInt], k: usize) -> Vec<BigInt> {
        (0..k).fold(self.one.clone(), |acc, _| self.mul(&acc, a))
    }

    fn mod_p(&self, a: &[BigInt]) -> Vec<u64> {
        let pb = BigInt::from(self.zm.p());
        a.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect()
    }
}

/// The residue field `O/R` realised as `F_p[β]/m`, with the linear algebra
/// needed to reduce elements into it.
struct Residue {
    field: FiniteField,
    beta: Vec<BigInt>,
    /// inverse of the matrix whose rows are `β^0..β^{f-1}` followed by a basis of `R/pO`
    reducer: Vec<Vec<u64>>,
    f: usize,
}

impl Residue {
    fn find(alg: &ZpAlgebra, falg: &FpAlgebra, rad: &[Vec<u64>], f: usize) -> Result<Self> {
        let n = alg.n;
        let p = alg.zm.p();
        let one_p = alg.mod_p(&alg.one);
        let mut candidates: Vec<Vec<u64>> = Vec::new();
        for i in 0..n {
            let mut v = vec![0u64; n];
            v[i] = 1;
            candidates.push(v);
        }
        for i in 0..n {
            for j in i + 1..n {
                for c in 1..p.min(4) {
                    let mut v = vec![0u64; n];
                    v[i] = 1;
                    v[j] = c;
                    candidates.push(v);
                }
            }
        }
        for beta in candidates {
            let mut pows = vec![one_p.clone()];
            for _ in 0..f {
                let next = falg.mul(pows.last().unwrap(), &beta);
                pows.push(next);
            }
            let mut rows: Vec<Vec<u64>> = pows[..f].to_vec();
            rows.extend(rad.iter().cloned());
            let Some(reducer) = fp_inverse(&rows, p) else {
                continue;
            };
            let c = fp_vec_mat(&pows[f], &reducer, p);
            let mut m: Vec<u64> = c[..f].iter().map(|x| (p - x) % p).collect();
            m.push(1);
            if !fp_poly::is_irreducible(&m, p) {
                return Err(Error::InvalidInput(
                    "polynomial is reducible over Q_p (residue algebra is not a field)".into(),
                ));
            }
            return Ok(Residue {
                field: FiniteField::new(p, m),
                beta: beta.iter().map(|&x| BigInt::from(x)).collect(),
                reducer,
                f,
            });
        }
        Err(Error::InvalidInput("no residue field generator found; polynomial reducible?".into()))
    }

    fn reduce(&self, alg: &ZpAlgebra, a: &[BigInt]) -> Vec<u64> {
        let c = fp_vec_mat(&alg.mod_p(a), &self.reducer, alg.zm.p());
        c[..self.f].to_vec()
    }

    fn lift(&self, alg: &ZpAlgebra, r: &[u64]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); alg.n];
        let mut pw = alg.one.clone();
        for (k, &c) in r.iter().enumerate() {
            if k > 0 {
                pw = alg.mul(&pw, &self.beta);
            }
            if c != 0 {
                acc = alg.add(&acc, &alg.scale(&pw, &BigInt::from(c)));
            }
        }
        acc
    }

    /// Inverse of a unit of `O` modulo `p^N`.
    fn inverse(&self, alg: &ZpAlgebra, u: &[BigInt]) -> Result<Vec<BigInt>> {
        let ru = self.reduce(alg, u);
        let inv = self.field.inv(&ru)?;
        let mut y = self.lift(alg, &inv);
        let two = alg.scale(&alg.one, &BigInt::from(2));
        for _ in 0..64 {
            let uy = alg.mul(u, &y);
            if alg.is_zero(&alg.sub(&uy, &alg.one)) {
                return Ok(y);
            }
            y = alg.mul(&y, &alg.sub(&two, &uy));
        }
        Err(Error::PrecisionExhausted("unit inversion did not converge".into()))
    }
}

fn fp_vec_mat(v: &[u64], m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; m[0].len()];
    for (vi, row) in v.iter().zip(m) {
        if *vi == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o = (*o + vi * x) % p;
        }
    }
    out
}

/// Working precision used when converting a polynomial to a tower.
pub fn tower_precision(n: usize, c: u32, p: u64) -> u32 {
    let vn = val_p(&BigInt::from(n), p).unwrap();
    2 * (c + 2 * n as u32 * vn + 2 * n as u32) + 32
}

/// Tower presentation of `Q_p[x]/g` for a monic integer `g` irreducible over `Q_p`.
pub fn field_from_poly(g: &[BigInt], p: u64) -> Result<LocalField> {
    let o = Order::maximal(g, p)?;
    let c = o.disc_exponent();
    let prec = tower_precision(o.degree(), c, p);
    field_from_order(&o, prec)
}

pub fn field_from_order(o: &Order, prec: u32) -> Result<LocalField> {
    let p = o.p();
    let n = o.degree();
    let zm = ZMod::new(p, prec);
    let t_exact = o.structure_constants();
    let t: Vec<Vec<Vec<BigInt>>> = t_exact
        .iter()
        .map(|r| r.iter().map(|c| c.iter().map(|x| zm.reduce(x)).collect()).collect())
        .collect();
    let one: Vec<BigInt> = o.one_coords().iter().map(|x| zm.reduce(x)).collect();
    let alg = ZpAlgebra { zm: zm.clone(), n, t, one };
    let falg = FpAlgebra::new(&t_exact, p);
    let rad = o.radical_mod_p();
    let f = n - rad.len();
    if f == 0 || n % f != 0 {
        return Err(Error::InvalidInput("polynomial is reducible over Q_p".into()));
    }
    let e = n / f;
    let residue = Residue::find(&alg, &falg, &rad, f)?;

    // α: a root of the canonical unramified polynomial, lifted by Newton
    let h = defining_poly(p, f);
    let hbar: Vec<Vec<u64>> = h
        .iter()
        .map(|c| vec![c.mod_floor(&BigInt::from(p)).to_u64().unwrap()])
        .collect();
    let roots = residue.field.poly_roots(&hbar);
    let r0 = roots.first().ok_or_else(|| Error::InvalidInput("residue field too small".into()))?;
    let mut alpha = residue.lift(&alg, r0);
    let dh = intpoly::derivative(&h);
    let mut converged = false;
    for _ in 0..64 {
        let hv = alg.eval(&h, &alpha);
        if alg.is_zero(&hv) {
            converged = true;
            break;
        }
        let d = residue.inverse(&alg, &alg.eval(&dh, &alpha))?;
        alpha = alg.sub(&alpha, &alg.mul(&hv, &d));
    }
    if !converged {
        return Err(Error::PrecisionExhausted("Newton lift of α did not converge".into()));
    }

    // π: an element of the radical of valuation one
    let pi = if e == 1 {
        alg.scale(&alg.one, &BigInt::from(p))
    } else {
        let mut found = None;
        let mut cands: Vec<Vec<u64>> = rad.clone();
        for i in 0..rad.len() {
            for j in i + 1..rad.len() {
                cands.push(rad[i].iter().zip(&rad[j]).map(|(a, b)| (a + b) % p).collect());
            }
        }
        for k in cands {
            let x: Vec<BigInt> = k.iter().map(|&v| BigInt::from(v)).collect();
            let mat: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let mut b = vec![BigInt::zero(); n];
                    b[i] = BigInt::from(1);
                    alg.mul(&x, &b)
                })
                .collect();
            if det_valuation(&zm, mat)? == Some(f as u32) {
                found = Some(x);
                break;
            }
        }
        found.ok_or_else(|| Error::PrecisionExhausted("no uniformizer found".into()))?
    };

    // basis α^i π^j, index j·f + i
    let mut alpha_pows = vec![alg.one.clone()];
    for _ in 1..f {
        alpha_pows.push(alg.mul(alpha_pows.last().unwrap(), &alpha));
    }
    let mut w = Vec::with_capacity(n);
    let mut pij = alg.one.clone();
    for _ in 0..e {
        for ai in &alpha_pows {
            w.push(alg.mul(&pij, ai));
        }
        pij = alg.mul(&pij, &pi);
    }
    let winv = inverse_unit(&zm, &w)?;
    let pe = vec_mat(&zm, &alg.pow(&pi, e), &winv);
    let phi: Vec<Vec<BigInt>> = (0..e)
        .map(|j| (0..f).map(|i| zm.neg(&pe[j * f + i])).collect())
        .collect();
    let x: Vec<BigInt> = o.power_coords(1).iter().map(|v| zm.reduce(v)).collect();
    let theta = vec_mat(&zm, &x, &winv);
    let field = LocalField::from_parts(p, h, phi, prec, theta, o.poly().clone())?;
    if field.c() != o.disc_exponent() {
        return Err(Error::PrecisionExhausted(format!(
            "tower discriminant {} disagrees with order discriminant {}",
            field.c(),
            o.disc_exponent()
        )));
    }
    Ok(field)
}

/// Basic invariants `(c, e, f)` of `Q_p[x]/g` for irreducible `g`.
pub fn basic_invariants_of(g: &IntPoly, p: u64) -> Result<(u32, usize, usize)> {
    let o = Order::maximal(g, p)?;
    let rad = o.radical_mod_p();
    let n = o.degree();
    let f = n - rad.len();
    Ok((o.disc_exponent(), n / f, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    fn check(g: &[i64], p: u64, cef: (u32, usize, usize)) -> LocalField {
        let g = from_i64(g);
        let k = field_from_poly(&g, p).unwrap();
        assert_eq!((k.c(), k.e(), k.f()), cef);
        assert_eq!(basic_invariants_of(&g, p).unwrap(), cef);
        // θ satisfies g in the recovered tower
        let ring = k.ring(40).unwrap();
        let th = k.theta_in(&ring);
        let gk: Vec<_> = g.iter().map(|c| ring.from_int(c)).collect();
        assert!(ring.is_zero(&ring.eval(&gk, &th)));
        k
    }

    #[test]
    fn table_fields() {
        check(&[1, 1, 0, 0, 1], 2, (0, 1, 4));
        check(&[4, 0, 8, 0, 1], 2, (4, 2, 2));
        check(&[5, 0, -1, 0, 1], 2, (4, 2, 2));
        check(&[-4, 0, 2, 0, 1], 2, (6, 2, 2));
        check(&[2, 2, 0, 0, 1], 2, (4, 4, 1));
        check(&[3, 0, 0, 0, 1], 3, (3, 4, 1));
        check(&[28, 0, 0, 0, 10, 0, 0, 0, 1], 2, (22, 4, 2));
        check(&[3, 0, 9, 0, 0, 0, 0, 0, 0, 1], 3, (19, 9, 1));
    }

    #[test]
    fn reducible_is_rejected() {
        assert!(field_from_poly(&from_i64(&[-1, 0, 1]), 5).is_err());
    }

    #[test]
    fn automorphisms_of_recovered_fields() {
        // x^4 - x^2 + 5 over Q_2 is cyclic: 4 automorphisms
        let k = check(&[5, 0, -1, 0, 1], 2, (4, 2, 2));
        assert_eq!(k.automorphism_count().unwrap(), 4);
        let k = check(&[4, 0, 8, 0, 1], 2, (4, 2, 2));
        assert_eq!(k.automorphism_count().unwrap(), 4);
        let k = check(&[-5, 0, 0, 0, 1], 2, (4, 2, 2));
        assert_eq!(k.automorphism_count().unwrap(), 2);
    }
}
