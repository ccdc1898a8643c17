//! Finite fields `F_{p^f} = F_p[a]/(m(a))` and polynomials over them.

use crate::error::{Error, Result};

pub type FfElem = Vec<u64>;

/// Multiplicative arithmetic in `F_p`, `p` prime.
#[inline]
fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powp(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a, p);
        }
        a = mulp(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invp(a: u64, p: u64) -> u64 {
    powp(a, p - 2, p)
}

/// Prime factors of `n` by trial division.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

/// An element tagged with its field, the public face of `F_{p^f}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldElement {
    pub field: FiniteField,
    pub value: FfElem,
}

impl FiniteField {
    /// `modulus` must be monic and irreducible over `F_p` (ascending coefficients).
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        assert_eq!(*modulus.last().unwrap(), 1, "modulus must be monic");
        FiniteField { p, modulus }
    }

    pub fn prime_field(p: u64) -> Self {
        FiniteField::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FfElem {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> FfElem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn from_int(&self, a: u64) -> FfElem {
        let mut v = self.zero();
        v[0] = a % self.p;
        v
    }

    /// The class of the generator `a`.
    pub fn gen(&self) -> FfElem {
        let mut v = self.zero();
        if self.degree() == 1 {
            v[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            v[1] = 1;
        }
        v
    }

    /// Element with coefficient vector given by the base-`p` digits of `idx`.
    pub fn from_index(&self, mut idx: u128) -> FfElem {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = (idx % self.p as u128) as u64;
            idx /= self.p as u128;
        }
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FfElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FfElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> FfElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FfElem {
        let d = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulp(x, y, p)) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                let t = mulp(c, self.modulus[i], p);
                prod[k - d + i] = (prod[k - d + i] + p - t) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(d);
        prod
    }

    pub fn scale(&self, a: &[u64], s: u64) -> FfElem {
        a.iter().map(|&x| mulp(x, s, self.p)).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> FfElem {
        let mut r = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: &[u64]) -> Result<FfElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Exact multiplicative order.
    pub fn element_order(&self, a: &[u64]) -> Result<u128> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let n = self.order() - 1;
        let mut ord = n;
        for q in prime_factors(n) {
            while ord % q == 0 && self.pow(a, ord / q) == self.one() {
                ord /= q;
            }
        }
        Ok(ord)
    }

    pub fn frobenius(&self, a: &[u64]) -> FfElem {
        self.pow(a, self.p as u128)
    }

    pub fn element(&self, value: FfElem) -> FiniteFieldElement {
        FiniteFieldElement {
            field: self.clone(),
            value,
        }
    }

    // ---- polynomials over the field, ascending coefficient vectors ----

    pub fn poly_trim(&self, f: &mut Vec<FfElem>) {
        while f.last().map_or(false, |c| self.is_zero(c)) {
            f.pop();
        }
    }

    pub fn poly_mul(&self, f: &[FfElem], g: &[FfElem]) -> Vec<FfElem> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut r = vec![self.zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if self.is_zero(a) {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                r[i + j] = self.add(&r[i + j], &self.mul(a, b));
            }
        }
        self.poly_trim(&mut r);
        r
    }

    pub fn poly_add(&self, f: &[FfElem], g: &[FfElem]) -> Vec<FfElem> {
        let n = f.len().max(g.len());
        let z = self.zero();
        let mut r: Vec<FfElem> = (0..n)
            .map(|i| self.add(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(&mut r);
        r
    }

    pub fn poly_sub(&self, f: &[FfElem], g: &[FfElem]) -> Vec<FfElem> {
        let n = f.len().max(g.len());
        let z = self.zero();
        let mut r: Vec<FfElem> = (0..n)
            .map(|i| self.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(&mut r);
        r
    }

    /// `(quotient, remainder)`; `g` nonzero.
    pub fn poly_divrem(&self, f: &[FfElem], g: &[FfElem]) -> (Vec<FfElem>, Vec<FfElem>) {
        let mut r = f.to_vec();
        self.poly_trim(&mut r);
        let dg = g.len() - 1;
        let lead_inv = self.inv(&g[dg]).expect("nonzero divisor");
        if r.len() <= dg {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - dg];
        while r.len() > dg {
            let d = r.len() - 1;
            let c = self.mul(&r[d], &lead_inv);
            for i in 0..=dg {
                let t = self.mul(&c, &g[i]);
                r[d - dg + i] = self.sub(&r[d - dg + i], &t);
            }
            q[d - dg] = c;
            r.pop();
            self.poly_trim(&mut r);
        }
        self.poly_trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(&self, f: &[FfElem], g: &[FfElem]) -> Vec<FfElem> {
        self.poly_divrem(f, g).1
    }

    pub fn poly_monic(&self, f: &[FfElem]) -> Vec<FfElem> {
        if f.is_empty() {
            return Vec::new();
        }
        let inv = self.inv(f.last().unwrap()).unwrap();
        f.iter().map(|c| self.mul(c, &inv)).collect()
    }

    pub fn poly_gcd(&self, f: &[FfElem], g: &[FfElem]) -> Vec<FfElem> {
        let mut a = f.to_vec();
        let mut b = g.to_vec();
        self.poly_trim(&mut a);
        self.poly_trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_derivative(&self, f: &[FfElem]) -> Vec<FfElem> {
        let mut r: Vec<FfElem> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale(c, (i as u64) % self.p))
            .collect();
        self.poly_trim(&mut r);
        r
    }

    /// `base^e mod m`.
    pub fn poly_powmod(&self, base: &[FfElem], mut e: u128, m: &[FfElem]) -> Vec<FfElem> {
        let mut r = vec![self.one()];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    pub fn poly_eval(&self, f: &[FfElem], x: &[u64]) -> FfElem {
        f.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Distinct roots in the field of a nonzero polynomial, in a deterministic order.
    pub fn poly_roots(&self, f: &[FfElem]) -> Vec<FfElem> {
        let mut f = f.to_vec();
        self.poly_trim(&mut f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let f = self.poly_monic(&f);
        let x = vec![self.zero(), self.one()];
        let xq = self.poly_powmod(&x, self.order(), &f);
        let g = self.poly_gcd(&f, &self.poly_sub(&xq, &x));
        let mut roots = Vec::new();
        self.split_linear(&g, &mut roots);
        roots.sort();
        roots
    }

    fn split_linear(&self, g: &[FfElem], out: &mut Vec<FfElem>) {
        let deg = g.len().saturating_sub(1);
        if deg == 0 {
            return;
        }
        if deg == 1 {
            let r = self.neg(&self.mul(&g[0], &self.inv(&g[1]).unwrap()));
            out.push(r);
            return;
        }
        let q = self.order();
        let mut idx: u128 = 1;
        loop {
            let delta = self.from_index(idx);
            idx += 1;
            let h = if self.p == 2 {
                // absolute trace of delta*x
                let k = q.trailing_zeros();
                let mut t = self.poly_rem(&[self.zero(), delta.clone()], g);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = self.poly_rem(&self.poly_mul(&t, &t), g);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                let lin = vec![delta.clone(), self.one()];
                let w = self.poly_powmod(&lin, (q - 1) / 2, g);
                self.poly_sub(&w, &[self.one()])
            };
            let d = self.poly_gcd(g, &h);
            let dd = d.len().saturating_sub(1);
            if dd > 0 && dd < deg {
                let (other, _) = self.poly_divrem(g, &d);
                let other = self.poly_monic(&other);
                self.split_linear(&d, out);
                self.split_linear(&other, out);
                return;
            }
            if idx > 100_000 {
                panic!("equal-degree splitting failed");
            }
        }
    }

    /// Minimal polynomial over `F_p` of an element, as `u64` coefficients.
    pub fn min_poly(&self, a: &[u64]) -> Vec<u64> {
        let mut conj = vec![a.to_vec()];
        loop {
            let next = self.frobenius(conj.last().unwrap());
            if next == conj[0] {
                break;
            }
            conj.push(next);
        }
        let mut poly: Vec<FfElem> = vec![self.one()];
        for c in &conj {
            poly = self.poly_mul(&poly, &[self.neg(c), self.one()]);
        }
        poly.iter().map(|c| c[0]).collect()
    }
}

impl FiniteFieldElement {
    pub fn order(&self) -> Result<u128> {
        self.field.element_order(&self.value)
    }
}

/// Multiplicative order of an element (the `ff_element_order` operation).
pub fn ff_element_order(a: &FiniteFieldElement) -> Result<u128> {
    a.order()
}

/// Polynomials over `F_p` with `u64` coefficients.
pub mod fp_poly {
    use super::*;

    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let ff = FiniteField::prime_field(p);
        let g: Vec<FfElem> = f.iter().map(|&c| vec![c % p]).collect();
        let g = ff.poly_monic(&g);
        let x = vec![ff.zero(), ff.one()];
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = ff.poly_powmod(&xp, p as u128, &g);
            let d = ff.poly_gcd(&g, &ff.poly_sub(&xp, &x));
            if d.len() > 1 {
                return false;
            }
        }
        true
    }

    /// `f` irreducible with a root of multiplicative order `p^n - 1`.
    pub fn is_primitive(f: &[u64], p: u64) -> bool {
        if !is_irreducible(f, p) {
            return false;
        }
        let n = f.len() - 1;
        if f[0] % p == 0 {
            return false;
        }
        let field = FiniteField::new(p, f.to_vec());
        let ord = field.element_order(&field.gen()).unwrap();
        ord == (p as u128).pow(n as u32) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let f4 = FiniteField::new(2, vec![1, 1, 1]);
        assert_eq!(f4.element_order(&f4.gen()).unwrap(), 3);
        assert_eq!(f4.element_order(&f4.one()).unwrap(), 1);
        // x^2 - x + 2 over F_5
        let f25 = FiniteField::new(5, vec![2, 4, 1]);
        assert_eq!(f25.element_order(&f25.gen()).unwrap(), 24);
        assert_eq!(f25.element_order(&f25.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn order_matches_exhaustive_powers() {
        let f25 = FiniteField::new(5, vec![2, 4, 1]);
        for idx in 1..25u128 {
            let a = f25.from_index(idx);
            let mut k = 1u128;
            let mut acc = a.clone();
            while acc != f25.one() {
                acc = f25.mul(&acc, &a);
                k += 1;
            }
            assert_eq!(f25.element_order(&a).unwrap(), k);
        }
    }

    #[test]
    fn roots_over_extension() {
        for (p, m) in [(2u64, vec![1u64, 1, 0, 1]), (3, vec![2, 2, 1]), (5, vec![2, 4, 1])] {
            let k = FiniteField::new(p, m);
            // product of (x - a) over a few elements
            let pts: Vec<FfElem> = (0..3u128).map(|i| k.from_index(i * 2 + 1)).collect();
            let mut poly = vec![k.one()];
            for a in &pts {
                poly = k.poly_mul(&poly, &[k.neg(a), k.one()]);
            }
            // times an irreducible quadratic-free factor: x^2 - gen (may or may not split)
            let roots = k.poly_roots(&poly);
            let mut expect = pts.clone();
            expect.sort();
            expect.dedup();
            assert_eq!(roots, expect);
            for r in &roots {
                assert!(k.is_zero(&k.poly_eval(&poly, r)));
            }
        }
    }

    #[test]
    fn primitive_polys() {
        assert!(fp_poly::is_primitive(&[1, 1, 1], 2));
        assert!(fp_poly::is_primitive(&[2, 4, 1], 5));
        assert!(!fp_poly::is_primitive(&[1, 0, 1, 0, 1], 2));
        assert!(!fp_poly::is_primitive(&[1, 1, 1, 1, 1], 2)); // x^4+x^3+x^2+x+1 has order 5
    }
}
