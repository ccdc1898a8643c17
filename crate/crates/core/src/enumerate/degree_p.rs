//! Ramified extensions of degree `p`: the six ramified quadratics of `Q_2`
//! and, for odd `p`, three parametrised families of Eisenstein polynomials.

use crate::padic::ff::powp;
use crate::padic::intpoly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreePSpec {
    /// `x^2 - D` over `Q_2`
    Quadratic { d: i64 },
    /// `x^p + a p x^λ + p`
    Family1 { a: u64, lambda: u64 },
    /// `x^p - p x^{p-1} + p(1 + a p)`
    Family2 { a: u64 },
    /// `x^p + p(1 + a p)`
    Family3 { a: u64 },
}

#[derive(Clone, Debug)]
pub struct DegreePField {
    pub poly: IntPoly,
    pub c: u32,
    pub galois: String,
    pub inertia: String,
    pub spec: DegreePSpec,
}

/// Name for the group `C_p ⋊ C_d` (faithful action).
pub fn cp_cd_label(p: u64, d: u64) -> String {
    match (p, d) {
        (_, 1) => format!("C{p}"),
        (3, 2) => "S3".to_string(),
        (_, 2) => format!("D{p}"),
        (5, 4) => "F5".to_string(),
        _ => format!("C{p}.C{d}"),
    }
}

fn mult_order(a: u64, p: u64) -> u64 {
    (1..p).find(|&k| powp(a, k, p) == 1).expect("a is a unit")
}

pub fn degree_p_ramified(p: u64) -> Vec<DegreePField> {
    if p == 2 {
        return [-4i64, 12, 8, -8, 24, -24]
            .iter()
            .map(|&d| DegreePField {
                poly: vec![BigInt::from(-d), BigInt::from(0), BigInt::from(1)],
                c: crate::padic::zmod::val_p_i64(d, 2).unwrap(),
                galois: "C2".into(),
                inertia: "C2".into(),
                spec: DegreePSpec::Quadratic { d },
            })
            .collect();
    }
    let n = p as usize;
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for lambda in 1..p {
        for a in 1..p {
            if lambda == p - 1 && a == p - 1 {
                continue;
            }
            let mut poly = vec![BigInt::from(0); n + 1];
            poly[n] = BigInt::from(1);
            poly[lambda as usize] = BigInt::from(a) * &pb;
            poly[0] = pb.clone();
            let c = (p + lambda - 1) as u32;
            let g = (p - 1).gcd(&(c as u64));
            let d1 = (p - 1) / g;
            let m = mult_order(a * lambda % p, p);
            let d2 = (p - 1) / ((p - 1) / m).gcd(&g);
            out.push(DegreePField {
                poly,
                c,
                galois: cp_cd_label(p, d2),
                inertia: cp_cd_label(p, d1),
                spec: DegreePSpec::Family1 { a, lambda },
            });
        }
    }
    for a in 0..p {
        let mut poly = vec![BigInt::from(0); n + 1];
        poly[n] = BigInt::from(1);
        poly[n - 1] = -pb.clone();
        poly[0] = &pb * (1 + a * p);
        out.push(DegreePField {
            poly,
            c: (2 * p - 2) as u32,
            galois: cp_cd_label(p, 1),
            inertia: cp_cd_label(p, 1),
            spec: DegreePSpec::Family2 { a },
        });
    }
    for a in 0..p {
        let mut poly = vec![BigInt::from(0); n + 1];
        poly[n] = BigInt::from(1);
        poly[0] = &pb * (1 + a * p);
        out.push(DegreePField {
            poly,
            c: (2 * p - 1) as u32,
            galois: cp_cd_label(p, p - 1),
            inertia: cp_cd_label(p, p - 1),
            spec: DegreePSpec::Family3 { a },
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::tower::basic_invariants_of;

    #[test]
    fn counts() {
        assert_eq!(degree_p_ramified(2).len(), 6);
        for p in [3u64, 5, 7] {
            assert_eq!(degree_p_ramified(p).len() as u64, p * p);
        }
    }

    #[test]
    fn quadratic_exponents() {
        let mut cs: Vec<u32> = degree_p_ramified(2).iter().map(|k| k.c).collect();
        cs.sort_unstable();
        assert_eq!(cs, vec![2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn stated_exponents_agree_with_maximal_order() {
        for p in [2u64, 3, 5] {
            for k in degree_p_ramified(p) {
                let (c, e, f) = basic_invariants_of(&k.poly, p).unwrap();
                assert_eq!((c, e, f), (k.c, p as usize, 1), "{:?}", k.spec);
            }
        }
    }

    #[test]
    fn family_three_labels() {
        let fields = degree_p_ramified(5);
        let f3 = fields.iter().find(|k| matches!(k.spec, DegreePSpec::Family3 { .. })).unwrap();
        assert_eq!((f3.c, f3.galois.as_str()), (9, "F5"));
        let f2 = fields.iter().find(|k| matches!(k.spec, DegreePSpec::Family2 { .. })).unwrap();
        assert_eq!((f2.c, f2.galois.as_str()), (8, "C5"));
    }
}
