//! Matrices over `Z / p^N`.

use super::zmod::ZMod;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Valuation of a determinant by elimination with minimal-valuation pivots.
/// `Ok(None)` means the determinant vanishes modulo `p^N`.
pub fn det_valuation(ring: &ZMod, mut a: Vec<Vec<BigInt>>) -> Result<Option<u32>> {
    let n = a.len();
    let mut total = 0u32;
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = ring.reduce(x);
        }
    }
    for k in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Some(v) = ring.val(&a[i][j]) {
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, pi, pj) = match best {
            Some(b) => b,
            None => return Ok(None),
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        total += v;
        if total >= ring.prec() {
            return Ok(None);
        }
        // pivot = p^v * u
        let u = ring.div_p_pow(&a[k][k], v);
        let uinv = ring.inv(&u).ok_or_else(|| Error::UncertainZero("pivot".into()))?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            // a[i][k] has valuation >= v
            let factor = ring.mul(&ring.div_p_pow(&a[i][k], v), &uinv);
            for j in k..n {
                let t = ring.mul(&factor, &a[k][j]);
                a[i][j] = ring.sub(&a[i][j], &t);
            }
        }
    }
    Ok(Some(total))
}

/// Basis of the left kernel `{x : x·A = 0}` of a matrix over `F_p`.
pub fn fp_left_kernel(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    // eliminate on [A | I]; rows whose A-part vanishes give the kernel
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(|x| x % p).collect();
            r.resize(ncols, 0);
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..n).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = super::ff::invp(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..ncols + n {
                    m[i][j] = (m[i][j] + (p - f) * m[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    m[rank..].iter().map(|r| r[ncols..].to_vec()).collect()
}

/// Inverse of an invertible matrix over `F_p`.
pub fn fp_inverse(a: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(|x| x % p).collect();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| m[i][col] != 0)?;
        m.swap(col, piv);
        let inv = super::ff::invp(m[col][col], p);
        for x in m[col].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != col && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..2 * n {
                    m[i][j] = (m[i][j] + (p - f) * m[col][j]) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a matrix over `Z/p^N` whose determinant is a unit.
pub fn inverse_unit(ring: &ZMod, a: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigInt> = row.iter().map(|x| ring.reduce(x)).collect();
            r.extend((0..n).map(|j| BigInt::from(u8::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| ring.val(&m[i][col]) == Some(0))
            .ok_or_else(|| Error::InvalidInput("matrix is not invertible over Z_p".into()))?;
        m.swap(col, piv);
        let inv = ring.inv(&m[col][col]).unwrap();
        for x in m[col].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..2 * n {
                    let t = ring.mul(&f, &m[col][j]);
                    m[i][j] = ring.sub(&m[i][j], &t);
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix over `Z/p^N`.
pub fn vec_mat(ring: &ZMod, v: &[BigInt], a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut out = vec![BigInt::zero(); ncols];
    for (vi, row) in v.iter().zip(a) {
        if vi.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += vi * x;
        }
    }
    out.iter().map(|x| ring.reduce(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_valuation_diagonal() {
        let ring = ZMod::new(3, 10);
        let m = vec![
            vec![BigInt::from(9), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(6)],
        ];
        assert_eq!(det_valuation(&ring, m).unwrap(), Some(3));
        let z = vec![vec![BigInt::from(0)]];
        assert_eq!(det_valuation(&ring, z).unwrap(), None);
    }

    #[test]
    fn kernel_and_inverse() {
        // rows (1,2),(2,4),(0,1) over F_5: kernel spanned by (3,1,0) up to scaling
        let a = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = fp_left_kernel(&a, 2, 5);
        assert_eq!(k.len(), 1);
        let x = &k[0];
        for c in 0..2 {
            let s: u64 = (0..3).map(|i| x[i] * a[i][c]).sum();
            assert_eq!(s % 5, 0);
        }
        let ring = ZMod::new(3, 6);
        let m = vec![
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        let inv = inverse_unit(&ring, &m).unwrap();
        let e0 = vec_mat(&ring, &vec_mat(&ring, &[BigInt::from(1), BigInt::from(0)], &m), &inv);
        assert_eq!(e0, vec![BigInt::from(1), BigInt::from(0)]);
    }
}
