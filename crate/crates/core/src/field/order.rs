//! p-maximal orders of `Q_p[x]/g` by the Round 2 (Pohst–Zassenhaus)
//! iteration, with exact integer lattice arithmetic.
//!
//! An order `O` is stored through the integer lattice `D·O ⊂ Z^n` (power
//! basis coordinates), where `D = p^δ` bounds every denominator allowed by
//! the discriminant. Lattices are kept in upper-triangular Hermite form.

use crate::error::{Error, Result};
use crate::padic::intpoly::{self, IntPoly};
use crate::padic::linalg::fp_left_kernel;
use crate::padic::zmod::{pow_big, val_p};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Hermite form of the lattice spanned by `gens` together with `modulus·Z^n`.
pub(crate) fn hnf(gens: &[Vec<BigInt>], n: usize, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| x.mod_floor(modulus)).collect())
        .filter(|g: &Vec<BigInt>| g.iter().any(|x| !x.is_zero()))
        .collect();
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for col in 0..n {
        let mut pivot = vec![BigInt::zero(); n];
        pivot[col] = modulus.clone();
        let mut rest = Vec::with_capacity(rows.len());
        for mut r in rows.drain(..) {
            if r[col].is_zero() {
                rest.push(r);
                continue;
            }
            let eg = pivot[col].extended_gcd(&r[col]);
            let (a, b) = (&pivot[col] / &eg.gcd, &r[col] / &eg.gcd);
            let new_pivot: Vec<BigInt> = (0..n).map(|j| &eg.x * &pivot[j] + &eg.y * &r[j]).collect();
            for j in 0..n {
                r[j] = (&a * &r[j] - &b * &pivot[j]).mod_floor(modulus);
            }
            pivot = new_pivot.iter().map(|x| x.mod_floor(modulus)).collect();
            if pivot[col].is_zero() {
                pivot[col] = modulus.clone();
            }
            if r.iter().any(|x| !x.is_zero()) {
                rest.push(r);
            }
        }
        // pivot[col] divides the modulus, so it is ± a power of p
        if pivot[col].is_negative() {
            for x in pivot.iter_mut() {
                *x = -&*x;
            }
        }
        // the multiple of the pivot that reaches the modulus is still in the lattice
        let m = modulus / &pivot[col];
        let wrap: Vec<BigInt> = pivot.iter().map(|x| (x * &m).mod_floor(modulus)).collect();
        if wrap.iter().any(|x| !x.is_zero()) {
            rest.push(wrap);
        }
        rows = rest;
        out.push(pivot);
    }
    // reduce above the diagonal
    for j in (0..n).rev() {
        for i in 0..j {
            let q = out[i][j].div_floor(&out[j][j]);
            if !q.is_zero() {
                for k in j..n {
                    let t = &q * &out[j][k];
                    out[i][k] -= t;
                }
            }
        }
    }
    out
}

/// Integer coordinates `c` with `c·H = x`, or `None` when `x` is not in the lattice.
pub(crate) fn coords(h: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut r = x.to_vec();
    let mut c = vec![BigInt::zero(); n];
    for j in 0..n {
        let (q, rem) = r[j].div_rem(&h[j][j]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for k in j..n {
                let t = &q * &h[j][k];
                r[k] -= t;
            }
        }
        c[j] = q;
    }
    Some(c)
}

fn reduce_p(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect()
}

/// A `Z_p`-order in `Q_p[x]/g`.
#[derive(Clone, Debug)]
pub struct Order {
    p: u64,
    g: IntPoly,
    n: usize,
    delta: u32,
    d: BigInt,
    /// Rows are `D·b_i` in power-basis coordinates.
    basis: Vec<Vec<BigInt>>,
}

impl Order {
    /// The equation order `Z_p[x]/g`.
    pub fn equation_order(g: &[BigInt], p: u64) -> Result<Self> {
        let n = intpoly::degree(g).ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
        if !intpoly::is_monic(g) || n == 0 {
            return Err(Error::InvalidInput("expected a monic polynomial of positive degree".into()));
        }
        let disc = intpoly::discriminant(g);
        if disc.is_zero() {
            return Err(Error::NotSquarefree);
        }
        let delta = val_p(&disc, p).unwrap() / 2;
        let d = pow_big(p, delta);
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d.clone() } else { BigInt::zero() }).collect())
            .collect();
        Ok(Order { p, g: g.to_vec(), n, delta, d, basis })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn poly(&self) -> &IntPoly {
        &self.g
    }

    /// `ord_p [O : Z_p[x]/g]`.
    pub fn index_valuation(&self) -> u32 {
        let s: u32 = self.basis.iter().enumerate().map(|(i, r)| val_p(&r[i], self.p).unwrap()).sum();
        self.n as u32 * self.delta - s
    }

    /// Discriminant exponent of the order.
    pub fn disc_exponent(&self) -> u32 {
        val_p(&intpoly::discriminant(&self.g), self.p).unwrap() - 2 * self.index_valuation()
    }

    /// Product of two scaled elements `D·a`, `D·b`, returned scaled.
    pub(crate) fn mul_scaled(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let prod = intpoly::rem_monic(&intpoly::mul(a, b), &self.g);
        let mut out = vec![BigInt::zero(); self.n];
        for (o, c) in out.iter_mut().zip(prod) {
            let (q, r) = c.div_rem(&self.d);
            debug_assert!(r.is_zero(), "product left the allowed denominators");
            *o = q;
        }
        out
    }

    /// Coordinates of a scaled element in this order's basis.
    pub(crate) fn coords_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        coords(&self.basis, x)
    }

    /// Structure constants `b_i b_j = Σ_k T[i][j][k] b_k`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<BigInt>>> {
        let n = self.n;
        let mut t = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = self.mul_scaled(&self.basis[i], &self.basis[j]);
                let c = self.coords_of(&prod).expect("an order is closed under products");
                t[i][j] = c.clone();
                t[j][i] = c;
            }
        }
        t
    }

    /// Coordinates (mod p) of `b_i^p`.
    fn frobenius_matrix(&self, t: &[Vec<Vec<BigInt>>]) -> Vec<Vec<u64>> {
        let alg = FpAlgebra::new(t, self.p);
        (0..self.n)
            .map(|i| {
                let mut e = vec![0u64; self.n];
                e[i] = 1;
                alg.pow(&e, self.p)
            })
            .collect()
    }

    /// The `p`-radical as a subspace of `O/pO` (basis vectors mod p).
    pub(crate) fn radical_mod_p(&self) -> Vec<Vec<u64>> {
        let t = self.structure_constants();
        let fr = self.frobenius_matrix(&t);
        let n = self.n;
        let p = self.p;
        // Frob^j with p^j >= n
        let mut m = fr.clone();
        let mut pj = p as usize;
        while pj < n {
            m = mat_mul_fp(&m, &fr, p);
            pj *= p as usize;
        }
        fp_left_kernel(&m, n, p)
    }

    /// Scaled generators of the radical lattice.
    fn radical_lattice(&self) -> Vec<Vec<BigInt>> {
        let kernel = self.radical_mod_p();
        let mut gens: Vec<Vec<BigInt>> = kernel.iter().map(|k| self.combine(k)).collect();
        let pb = BigInt::from(self.p);
        gens.extend(self.basis.iter().map(|r| r.iter().map(|x| x * &pb).collect()));
        hnf(&gens, self.n, &(&self.d * &pb))
    }

    /// `Σ k_i D·b_i` for small integer coefficients.
    pub(crate) fn combine(&self, k: &[u64]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        for (ki, row) in k.iter().zip(&self.basis) {
            if *ki != 0 {
                for (o, x) in v.iter_mut().zip(row) {
                    *o += x * BigInt::from(*ki);
                }
            }
        }
        v
    }

    /// One Round 2 step: the multiplier ring of the radical.
    fn enlarge(&self) -> Result<Option<Order>> {
        let rad = self.radical_lattice();
        let n = self.n;
        let p = self.p;
        // matrix of x ↦ (x γ_k mod pI) over the basis of O
        let rows: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| {
                let mut row = Vec::with_capacity(n * n);
                for gamma in &rad {
                    let prod = self.mul_scaled(b, gamma);
                    let c = coords(&rad, &prod).expect("the radical is an ideal");
                    row.extend(reduce_p(&c, p));
                }
                row
            })
            .collect();
        let kernel = fp_left_kernel(&rows, n * n, p);
        let pb = BigInt::from(p);
        let mut gens = Vec::with_capacity(kernel.len() + n);
        for k in &kernel {
            let v = self.combine(k);
            let mut w = Vec::with_capacity(n);
            for x in v {
                let (q, r) = x.div_rem(&pb);
                if !r.is_zero() {
                    return Err(Error::PrecisionExhausted("denominator bound too small".into()));
                }
                w.push(q);
            }
            gens.push(w);
        }
        gens.extend(self.basis.iter().cloned());
        let new_basis = hnf(&gens, n, &self.d);
        let new = Order { basis: new_basis, ..self.clone() };
        if new.index_valuation() > self.index_valuation() {
            Ok(Some(new))
        } else {
            Ok(None)
        }
    }

    /// Iterate to the p-maximal order.
    pub fn maximal(g: &[BigInt], p: u64) -> Result<Self> {
        let mut o = Order::equation_order(g, p)?;
        while let Some(next) = o.enlarge()? {
            o = next;
        }
        Ok(o)
    }
}

pub(crate) fn mat_mul_fp(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + aik * bk[j]) % p;
            }
        }
    }
    out
}

/// `O/pO` as an `F_p`-algebra given by structure constants.
pub(crate) struct FpAlgebra {
    p: u64,
    n: usize,
    t: Vec<Vec<Vec<u64>>>,
}

impl FpAlgebra {
    pub fn new(t: &[Vec<Vec<BigInt>>], p: u64) -> Self {
        let t: Vec<Vec<Vec<u64>>> = t.iter().map(|r| r.iter().map(|c| reduce_p(c, p)).collect()).collect();
        FpAlgebra { p, n: t.len(), t }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if b[j] == 0 {
                    continue;
                }
                let s = a[i] * b[j] % self.p;
                for (o, c) in out.iter_mut().zip(&self.t[i][j]) {
                    *o = (*o + s * c) % self.p;
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut k: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc: Option<Vec<u64>> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(x) => self.mul(&x, &base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc.expect("positive exponent")
    }
}

impl Order {
    /// Exact integer coordinates of `1` in this basis.
    pub(crate) fn one_coords(&self) -> Vec<BigInt> {
        let mut one = vec![BigInt::zero(); self.n];
        one[0] = self.d.clone();
        self.coords_of(&one).expect("1 lies in every order")
    }

    /// Exact integer coordinates of `x^k` (the generator's powers).
    pub(crate) fn power_coords(&self, k: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        let r = intpoly::rem_monic(&v, &self.g);
        let mut x = vec![BigInt::zero(); self.n];
        for (i, c) in r.into_iter().enumerate() {
            x[i] = c * &self.d;
        }
        self.coords_of(&x).expect("x lies in every order")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    #[test]
    fn hnf_basics() {
        let m = BigInt::from(8);
        let h = hnf(&[from_i64(&[2, 2]), from_i64(&[0, 4])], 2, &m);
        assert_eq!(h, vec![from_i64(&[2, 2]), from_i64(&[0, 4])]);
        assert_eq!(coords(&h, &from_i64(&[2, 6])), Some(from_i64(&[1, 1])));
        assert_eq!(coords(&h, &from_i64(&[1, 0])), None);
    }

    #[test]
    fn index_of_nonmaximal_orders() {
        // x^2 - 12 at p = 2: Z_2[√12] has index 2 in Z_2[√3]
        let o = Order::maximal(&from_i64(&[-12, 0, 1]), 2).unwrap();
        assert_eq!(o.index_valuation(), 1);
        assert_eq!(o.disc_exponent(), 2);
        // x^2 + 3 at p = 2: index 1, disc 0 (Q_2(√-3) unramified)
        let o = Order::maximal(&from_i64(&[3, 0, 1]), 2).unwrap();
        assert_eq!(o.disc_exponent(), 0);
        // Eisenstein polynomials are already maximal
        let o = Order::maximal(&from_i64(&[2, 2, 0, 0, 1]), 2).unwrap();
        assert_eq!(o.index_valuation(), 0);
        assert_eq!(o.disc_exponent(), 4);
    }

    #[test]
    fn table_polynomials() {
        // x^8 + 10x^4 + 28 over Q_2 has c = 22
        let o = Order::maximal(&from_i64(&[28, 0, 0, 0, 10, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(o.disc_exponent(), 22);
        // x^4 + 2x^2 - 4: c = 6
        let o = Order::maximal(&from_i64(&[-4, 0, 2, 0, 1]), 2).unwrap();
        assert_eq!(o.disc_exponent(), 6);
        // x^4 + 8x^2 + 4: c = 4
        let o = Order::maximal(&from_i64(&[4, 0, 8, 0, 1]), 2).unwrap();
        assert_eq!(o.disc_exponent(), 4);
    }
}
