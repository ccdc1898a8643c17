//! Arithmetic in `O_K / p^M` for a tower `K = U(π)`, with `U = Q_p(α)`,
//! `h(α) = 0` unramified of degree `f` and `φ(π) = 0` Eisenstein over `O_U`
//! of degree `e`.
//!
//! Elements are flat vectors of `e·f` residues; coordinate `j·f + i` is the
//! coefficient of `π^j α^i`.

use crate::error::{Error, Result};
use crate::padic::ff::{FfElem, FiniteField};
use crate::padic::zmod::ZMod;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub type UElem = Vec<BigInt>;
pub type KElem = Vec<BigInt>;

#[derive(Clone, Debug)]
pub struct KRing {
    pub zm: ZMod,
    pub f: usize,
    pub e: usize,
    /// `h` residues, monic, length `f + 1`.
    pub h: Vec<BigInt>,
    /// `α^(f+k)` reduced, for `k = 0..f-1`.
    alpha_pows: Vec<UElem>,
    /// `φ` coefficients `φ_0..φ_{e-1}` in `O_U` (monic part omitted).
    pub phi: Vec<UElem>,
    /// `p / π` as an element.
    p_over_pi: KElem,
    pub residue_field: FiniteField,
}

impl KRing {
    pub fn new(zm: ZMod, h: &[BigInt], phi: &[UElem]) -> Result<Self> {
        let f = h.len() - 1;
        let e = phi.len();
        let h: Vec<BigInt> = h.iter().map(|c| zm.reduce(c)).collect();
        if !h[f].is_one() {
            return Err(Error::InvalidInput("unramified polynomial must be monic".into()));
        }
        let p = zm.p();
        let residue_field = FiniteField::new(
            p,
            h.iter()
                .map(|c| (c % BigInt::from(p)).to_u64().unwrap())
                .collect(),
        );
        let mut ring = KRing {
            zm,
            f,
            e,
            h,
            alpha_pows: Vec::new(),
            phi: Vec::new(),
            p_over_pi: Vec::new(),
            residue_field,
        };
        // α^f = -Σ h_i α^i
        let mut cur: UElem = ring.h[..f].iter().map(|c| ring.zm.neg(c)).collect();
        for _ in 0..f {
            ring.alpha_pows.push(cur.clone());
            // multiply by α
            let top = cur[f - 1].clone();
            let mut next = vec![BigInt::zero(); f];
            for i in (1..f).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..f {
                let t = ring.zm.mul(&top, &ring.alpha_pows[0][i]);
                next[i] = ring.zm.add(&next[i], &t);
            }
            cur = next;
        }
        ring.phi = phi
            .iter()
            .map(|c| c.iter().map(|x| ring.zm.reduce(x)).collect())
            .collect();
        // Eisenstein check
        for (j, c) in ring.phi.iter().enumerate() {
            let v = ring.u_val(c);
            let ok = if j == 0 { v == Some(1) } else { v.map_or(true, |v| v >= 1) };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "coefficient {} violates the Eisenstein condition",
                    j
                )));
            }
        }
        // p/π = -(π^{e-1} + φ_{e-1} π^{e-2} + ... + φ_1) * (φ_0/p)^{-1}
        let u0: UElem = ring.phi[0].iter().map(|c| ring.zm.div_p_pow(c, 1)).collect();
        let u0inv = ring.u_inv(&u0)?;
        let mut s = ring.zero();
        for j in 1..e {
            ring.set_coeff(&mut s, j - 1, &ring.phi[j]);
        }
        let one = ring.u_one();
        ring.set_coeff(&mut s, e - 1, &one);
        let s = ring.mul_u(&s, &u0inv);
        ring.p_over_pi = ring.neg(&s);
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.zm.p()
    }

    pub fn degree(&self) -> usize {
        self.e * self.f
    }

    /// Working precision in `π`-units.
    pub fn pi_prec(&self) -> i64 {
        (self.e as i64) * (self.zm.prec() as i64)
    }

    // ---- O_U ----

    pub fn u_zero(&self) -> UElem {
        vec![BigInt::zero(); self.f]
    }

    pub fn u_one(&self) -> UElem {
        let mut v = self.u_zero();
        v[0] = BigInt::one();
        v
    }

    pub fn u_from_int(&self, a: &BigInt) -> UElem {
        let mut v = self.u_zero();
        v[0] = self.zm.reduce(a);
        v
    }

    pub fn u_alpha(&self) -> UElem {
        if self.f == 1 {
            return vec![self.zm.neg(&self.h[0])];
        }
        let mut v = self.u_zero();
        v[1] = BigInt::one();
        v
    }

    pub fn u_add(&self, a: &[BigInt], b: &[BigInt]) -> UElem {
        a.iter().zip(b).map(|(x, y)| self.zm.add(x, y)).collect()
    }

    pub fn u_sub(&self, a: &[BigInt], b: &[BigInt]) -> UElem {
        a.iter().zip(b).map(|(x, y)| self.zm.sub(x, y)).collect()
    }

    pub fn u_neg(&self, a: &[BigInt]) -> UElem {
        a.iter().map(|x| self.zm.neg(x)).collect()
    }

    pub fn u_mul(&self, a: &[BigInt], b: &[BigInt]) -> UElem {
        let f = self.f;
        if f == 1 {
            return vec![self.zm.mul(&a[0], &b[0])];
        }
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let mut out: UElem = prod[..f].to_vec();
        for k in f..2 * f - 1 {
            if prod[k].is_zero() {
                continue;
            }
            let row = &self.alpha_pows[k - f];
            for i in 0..f {
                out[i] += &prod[k] * &row[i];
            }
        }
        out.iter().map(|x| self.zm.reduce(x)).collect()
    }

    pub fn u_is_zero(&self, a: &[BigInt]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Valuation in `O_U`; `None` if zero to working precision.
    pub fn u_val(&self, a: &[BigInt]) -> Option<u32> {
        a.iter().filter_map(|x| self.zm.val(x)).min()
    }

    pub fn u_residue(&self, a: &[BigInt]) -> FfElem {
        let p = BigInt::from(self.p());
        a.iter().map(|x| (x % &p).to_u64().unwrap()).collect()
    }

    pub fn u_from_residue(&self, r: &[u64]) -> UElem {
        r.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Inverse of a unit of `O_U` by Newton iteration from the residue inverse.
    pub fn u_inv(&self, a: &[BigInt]) -> Result<UElem> {
        let r = self.u_residue(a);
        let rinv = self
            .residue_field
            .inv(&r)
            .map_err(|_| Error::InvalidInput("not a unit".into()))?;
        let mut y = self.u_from_residue(&rinv);
        let two = self.u_from_int(&BigInt::from(2));
        let mut good = 1u32;
        while good < self.zm.prec() {
            let ay = self.u_mul(a, &y);
            y = self.u_mul(&y, &self.u_sub(&two, &ay));
            good *= 2;
        }
        Ok(y)
    }

    // ---- O_K ----

    pub fn zero(&self) -> KElem {
        vec![BigInt::zero(); self.e * self.f]
    }

    pub fn one(&self) -> KElem {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    pub fn pi(&self) -> KElem {
        let mut v = self.zero();
        if self.e == 1 {
            // uniformizer of an unramified field is p
            v[0] = self.zm.reduce(&BigInt::from(self.p()));
        } else {
            v[self.f] = BigInt::one();
        }
        v
    }

    pub fn from_u(&self, u: &[BigInt]) -> KElem {
        let mut v = self.zero();
        self.set_coeff(&mut v, 0, u);
        v
    }

    pub fn from_int(&self, a: &BigInt) -> KElem {
        self.from_u(&self.u_from_int(a))
    }

    pub fn coeff(&self, x: &[BigInt], j: usize) -> UElem {
        x[j * self.f..(j + 1) * self.f].to_vec()
    }

    pub fn set_coeff(&self, x: &mut [BigInt], j: usize, u: &[BigInt]) {
        x[j * self.f..(j + 1) * self.f].clone_from_slice(u);
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> KElem {
        a.iter().zip(b).map(|(x, y)| self.zm.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> KElem {
        a.iter().zip(b).map(|(x, y)| self.zm.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[BigInt]) -> KElem {
        a.iter().map(|x| self.zm.neg(x)).collect()
    }

    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    pub fn mul_u(&self, a: &[BigInt], u: &[BigInt]) -> KElem {
        let mut out = self.zero();
        for j in 0..self.e {
            let c = self.coeff(a, j);
            if self.u_is_zero(&c) {
                continue;
            }
            let prod = self.u_mul(&c, u);
            self.set_coeff(&mut out, j, &prod);
        }
        out
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> KElem {
        let (e, f) = (self.e, self.f);
        if e == 1 {
            return self.u_mul(a, b);
        }
        let mut acc: Vec<UElem> = vec![self.u_zero(); 2 * e - 1];
        for i in 0..e {
            let ai = &a[i * f..(i + 1) * f];
            if ai.iter().all(|x| x.is_zero()) {
                continue;
            }
            for j in 0..e {
                let bj = &b[j * f..(j + 1) * f];
                if bj.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let prod = self.u_mul(ai, bj);
                acc[i + j] = self.u_add(&acc[i + j], &prod);
            }
        }
        // π^e = -Σ φ_j π^j
        for k in (e..2 * e - 1).rev() {
            let c = std::mem::replace(&mut acc[k], self.u_zero());
            if self.u_is_zero(&c) {
                continue;
            }
            for j in 0..e {
                let t = self.u_mul(&c, &self.phi[j]);
                acc[k - e + j] = self.u_sub(&acc[k - e + j], &t);
            }
        }
        let mut out = Vec::with_capacity(e * f);
        for u in acc.into_iter().take(e) {
            out.extend(u);
        }
        out
    }

    pub fn mul_pi(&self, a: &[BigInt]) -> KElem {
        let (e, f) = (self.e, self.f);
        if e == 1 {
            return a.iter().map(|x| self.zm.mul(x, &BigInt::from(self.p()))).collect();
        }
        let top = self.coeff(a, e - 1);
        let mut out = self.zero();
        for j in (1..e).rev() {
            out[j * f..(j + 1) * f].clone_from_slice(&a[(j - 1) * f..j * f]);
        }
        if !self.u_is_zero(&top) {
            for j in 0..e {
                let t = self.u_mul(&top, &self.phi[j]);
                let cur = self.coeff(&out, j);
                self.set_coeff(&mut out, j, &self.u_sub(&cur, &t));
            }
        }
        out
    }

    /// Exact division by `π` of an element of positive valuation. The result
    /// loses one `π`-digit of precision.
    pub fn div_pi(&self, a: &[BigInt]) -> KElem {
        let (e, f) = (self.e, self.f);
        let c0 = self.coeff(a, 0);
        let c0p: UElem = c0.iter().map(|x| self.zm.div_p_pow(x, 1)).collect();
        if e == 1 {
            return c0p;
        }
        let mut out = self.zero();
        for j in 1..e {
            out[(j - 1) * f..j * f].clone_from_slice(&a[j * f..(j + 1) * f]);
        }
        let t = self.mul_u(&self.p_over_pi, &c0p);
        self.add(&out, &t)
    }

    /// `v_K`, normalized with `v_K(π) = 1`; `None` if zero to working precision.
    pub fn val(&self, a: &[BigInt]) -> Option<i64> {
        let mut best: Option<i64> = None;
        for j in 0..self.e {
            if let Some(v) = self.u_val(&a[j * self.f..(j + 1) * self.f]) {
                let w = self.e as i64 * v as i64 + j as i64;
                best = Some(best.map_or(w, |b: i64| b.min(w)));
            }
        }
        best
    }

    pub fn residue(&self, a: &[BigInt]) -> FfElem {
        self.u_residue(&a[..self.f])
    }

    pub fn pow(&self, a: &[BigInt], mut k: u64) -> KElem {
        let mut r = self.one();
        let mut b = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        r
    }

    /// Evaluate a polynomial with coefficients in `O_K` by Horner's rule.
    pub fn eval(&self, g: &[KElem], x: &[BigInt]) -> KElem {
        g.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// `O_U` element of `α` mapped under `α ↦ image`.
    pub fn u_apply(&self, u: &[BigInt], image: &[BigInt]) -> UElem {
        let mut acc = self.u_zero();
        for c in u.iter().rev() {
            acc = self.u_mul(&acc, image);
            acc[0] = self.zm.add(&acc[0], c);
        }
        acc
    }

    /// The Frobenius lift `σ(α)`: the root of `h` congruent to `α^p`.
    pub fn frobenius_alpha(&self) -> UElem {
        let a = self.u_alpha();
        let mut x = self.u_one();
        for _ in 0..self.p() {
            x = self.u_mul(&x, &a);
        }
        let dh: Vec<BigInt> = (1..self.h.len())
            .map(|i| self.zm.mul(&self.h[i], &BigInt::from(i)))
            .collect();
        let mut good = 1;
        while good < self.zm.prec() {
            let hx = self.u_poly_eval(&self.h, &x);
            let dhx = self.u_poly_eval(&dh, &x);
            let step = self.u_mul(&hx, &self.u_inv(&dhx).expect("h is separable mod p"));
            x = self.u_sub(&x, &step);
            good *= 2;
        }
        x
    }

    fn u_poly_eval(&self, g: &[BigInt], x: &[BigInt]) -> UElem {
        let mut acc = self.u_zero();
        for c in g.iter().rev() {
            acc = self.u_mul(&acc, x);
            acc[0] = self.zm.add(&acc[0], c);
        }
        acc
    }
}
