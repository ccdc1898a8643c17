//! Canonical defining polynomials for unramified extensions.

use crate::padic::ff::fp_poly;
use crate::padic::intpoly::IntPoly;
use num_bigint::BigInt;

/// First polynomial `x^f - a_{f-1}x^{f-1} + a_{f-2}x^{f-2} - …` (`0 ≤ a_i < p`,
/// compared from `a_{f-1}` down) whose roots are primitive in `F_{p^f}`.
/// For `p = 2` all signs are taken positive, which is the same residue
/// polynomial with smaller-looking integer coefficients.
pub fn defining_poly(p: u64, f: usize) -> IntPoly {
    assert!(f >= 1);
    let total = (p as u128).pow(f as u32);
    for idx in 0..total {
        let mut a = vec![0u64; f];
        let mut r = idx;
        for ai in a.iter_mut() {
            *ai = (r % p as u128) as u64;
            r /= p as u128;
        }
        // residue polynomial with the alternating signs applied
        let mut res: Vec<u64> = (0..f)
            .map(|i| if (f - i) % 2 == 1 { (p - a[i]) % p } else { a[i] })
            .collect();
        res.push(1);
        if fp_poly::is_primitive(&res, p) {
            let mut out: IntPoly = (0..f)
                .map(|i| {
                    let v = BigInt::from(a[i]);
                    if p != 2 && (f - i) % 2 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            out.push(BigInt::from(1));
            return out;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::from_i64;

    #[test]
    fn small_cases() {
        assert_eq!(defining_poly(5, 1), from_i64(&[-2, 1]));
        assert_eq!(defining_poly(5, 2), from_i64(&[2, -1, 1]));
        assert_eq!(defining_poly(2, 2), from_i64(&[1, 1, 1]));
        assert_eq!(defining_poly(2, 4), from_i64(&[1, 1, 0, 0, 1]));
        assert_eq!(defining_poly(3, 1), from_i64(&[-2, 1]));
    }

    #[test]
    fn matches_brute_force_order() {
        // independent check: walk the same order and test primitivity by
        // enumerating powers of x modulo the residue polynomial
        for &(p, f) in &[(3u64, 2usize), (3, 3), (7, 2), (2, 3)] {
            let got = defining_poly(p, f);
            let res: Vec<u64> = got
                .iter()
                .map(|c| {
                    let m = (c % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
                    m.to_string().parse().unwrap()
                })
                .collect();
            let q = p.pow(f as u32);
            let mut seen = std::collections::HashSet::new();
            let mut cur = vec![1u64];
            for _ in 0..q - 1 {
                seen.insert(cur.clone());
                cur = crate::padic::fpx::rem(&crate::padic::fpx::mul(&cur, &[0, 1], p), &res, p);
            }
            assert_eq!(seen.len() as u64, q - 1, "p={p} f={f}");
        }
    }
}
