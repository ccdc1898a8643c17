//! Isomorphism testing on random Eisenstein polynomials. Each case builds
//! f, a second polynomial g for the same field (scale the root by a unit
//! and shift it by a multiple of p), and an unrelated h.

use localfields::field::tower::field_from_poly;
use localfields::identify::is_isomorphic;
use num_bigint::BigInt;
use proptest::prelude::*;

fn eisenstein(p: u64, n: usize) -> impl Strategy<Value = Vec<BigInt>> {
    let p = p as i64;
    (
        (1..p * p).prop_filter("unit", move |u| u % p != 0),
        prop::collection::vec(0..p * p, n - 1),
    )
        .prop_map(move |(u, rest)| {
            let mut f = vec![BigInt::from(p * u)];
            f.extend(rest.into_iter().map(|k| BigInt::from(p * k)));
            f.push(BigInt::from(1));
            f
        })
}

/// u^n f(x/u), whose roots are u times those of f.
fn scale(f: &[BigInt], u: i64) -> Vec<BigInt> {
    let n = f.len() - 1;
    f.iter().enumerate().map(|(i, a)| a * BigInt::from(u).pow((n - i) as u32)).collect()
}

/// f(x + s)
fn shift(f: &[BigInt], s: i64) -> Vec<BigInt> {
    let mut g = vec![BigInt::from(0); f.len()];
    for a in f.iter().rev() {
        // g = g*(x+s) + a
        for i in (0..g.len()).rev() {
            let lower = if i > 0 { g[i - 1].clone() } else { BigInt::from(0) };
            g[i] = &g[i] * s + lower;
        }
        g[0] += a;
    }
    g
}

fn check(p: u64, f: Vec<BigInt>, h: Vec<BigInt>, u: i64, s: i64) -> Result<(), TestCaseError> {
    let g = shift(&scale(&f, u), p as i64 * s);
    let (kf, kg, kh) = (field_from_poly(&f, p).unwrap(), field_from_poly(&g, p).unwrap(), field_from_poly(&h, p).unwrap());
    let iso = |a, b| is_isomorphic(a, b).unwrap();
    prop_assert!(iso(&kf, &kf));
    prop_assert!(iso(&kf, &kg) && iso(&kg, &kf));
    let fh = iso(&kf, &kh);
    prop_assert_eq!(fh, iso(&kh, &kf));
    // f ~ g, so h relates to both or to neither
    prop_assert_eq!(fh, iso(&kg, &kh));
    prop_assert_eq!(fh, iso(&kh, &kg));
    if fh {
        prop_assert_eq!(kf.c(), kh.c());
    }
    Ok(())
}

macro_rules! axioms {
    ($name:ident, $p:expr, $n:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn $name(f in eisenstein($p, $n), h in eisenstein($p, $n),
                     u in (1i64..$p as i64).prop_map(|u| u + $p as i64), s in -3i64..4) {
                check($p, f, h, u, s)?;
            }
        }
    };
}

axioms!(quartics_over_q2, 2, 4);
axioms!(cubics_over_q3, 3, 3);
axioms!(quintics_over_q5, 5, 5);
