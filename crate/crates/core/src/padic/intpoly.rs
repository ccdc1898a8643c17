//! Exact polynomials over `Z`, coefficients in ascending order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Write;

pub type IntPoly = Vec<BigInt>;

pub fn from_i64(c: &[i64]) -> IntPoly {
    let mut v: IntPoly = c.iter().map(|&x| BigInt::from(x)).collect();
    trim(&mut v);
    v
}

pub fn trim(f: &mut IntPoly) {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn is_monic(f: &[BigInt]) -> bool {
    degree(f).map_or(false, |d| f[d].is_one())
}

pub fn add(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    let n = f.len().max(g.len());
    let mut r = vec![BigInt::zero(); n];
    for (i, c) in f.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in g.iter().enumerate() {
        r[i] += c;
    }
    trim(&mut r);
    r
}

pub fn sub(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    let n = f.len().max(g.len());
    let mut r = vec![BigInt::zero(); n];
    for (i, c) in f.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in g.iter().enumerate() {
        r[i] -= c;
    }
    trim(&mut r);
    r
}

pub fn mul(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            r[i + j] += a * b;
        }
    }
    trim(&mut r);
    r
}

pub fn scale(f: &[BigInt], s: &BigInt) -> IntPoly {
    let mut r: IntPoly = f.iter().map(|c| c * s).collect();
    trim(&mut r);
    r
}

pub fn derivative(f: &[BigInt]) -> IntPoly {
    let mut r: IntPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut r);
    r
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `f(x + a)`.
pub fn shift(f: &[BigInt], a: &BigInt) -> IntPoly {
    let mut r: IntPoly = f.to_vec();
    let n = r.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &r[j + 1] * a;
            r[j] += t;
        }
    }
    trim(&mut r);
    r
}

/// Remainder of `f` modulo a monic `g`.
pub fn rem_monic(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    let dg = degree(g).expect("nonzero modulus");
    let mut r = f.to_vec();
    trim(&mut r);
    while r.len() > dg {
        let d = r.len() - 1;
        let c = r[d].clone();
        if !c.is_zero() {
            for i in 0..=dg {
                let t = &c * &g[i];
                r[d - dg + i] -= t;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Resultant by the Sylvester determinant.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = match (degree(f), degree(g)) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return num_traits::pow(f[0].clone(), n);
    }
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            s[i][i + j] = f[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s[n + i][i + j] = g[n - j].clone();
        }
    }
    det(&s)
}

/// Discriminant of a monic polynomial: `(-1)^(n(n-1)/2) Res(f, f')`.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = degree(f).unwrap_or(0);
    if n <= 1 {
        return BigInt::one();
    }
    let r = resultant(f, &derivative(f));
    let lead = f[n].clone();
    let r = r / lead;
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Characteristic polynomial of an integer matrix by the division-free
/// Berkowitz algorithm; returned monic, ascending.
pub fn charpoly(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    // v holds the coefficients of the char poly of the leading r x r block, descending.
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // Toeplitz column for step r
        let a_rr = m[r][r].clone();
        let row: Vec<BigInt> = (0..r).map(|j| m[r][j].clone()).collect();
        let col: Vec<BigInt> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut t = vec![BigInt::one(), -a_rr];
        let mut cur = col.clone();
        for _ in 0..r {
            let s: BigInt = row.iter().zip(cur.iter()).map(|(a, b)| a * b).sum();
            t.push(-s);
            let mut next = vec![BigInt::zero(); r];
            for i in 0..r {
                for j in 0..r {
                    next[i] += &m[i][j] * &cur[j];
                }
            }
            cur = next;
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i + j < r + 2 {
                    nv[i + j] += ti * vj;
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

pub fn to_string(f: &[BigInt]) -> String {
    let d = match degree(f) {
        Some(d) => d,
        None => return "0".to_string(),
    };
    let mut s = String::new();
    for i in (0..=d).rev() {
        let c = &f[i];
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let show_coeff = !a.is_one() || i == 0;
        if show_coeff {
            write!(s, "{}", a).unwrap();
        }
        match i {
            0 => {}
            1 => s.push('x'),
            _ => write!(s, "x^{}", i).unwrap(),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_of_small_polys() {
        assert_eq!(discriminant(&from_i64(&[-2, 0, 1])), BigInt::from(8));
        // x^3 + x + 1: -4 - 27 = -31
        assert_eq!(discriminant(&from_i64(&[1, 1, 0, 1])), BigInt::from(-31));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^2 - x + 2
        let m = vec![
            vec![BigInt::from(0), BigInt::from(-2)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        assert_eq!(charpoly(&m), from_i64(&[2, -1, 1]));
    }

    #[test]
    fn shift_and_display() {
        let f = from_i64(&[0, 0, 1]);
        assert_eq!(shift(&f, &BigInt::from(1)), from_i64(&[1, 2, 1]));
        assert_eq!(to_string(&from_i64(&[2, -1, 1])), "x^2 - x + 2");
    }
}
