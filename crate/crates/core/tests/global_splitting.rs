use localfields::catalog::Catalog;
use localfields::field::tower::field_from_poly;
use localfields::identify::{is_isomorphic, split_algebra, IdentificationResult};
use localfields::padic::intpoly::{from_i64, IntPoly};
use num_rational::BigRational;

fn g_minus() -> IntPoly {
    from_i64(&[8, -100, 468, -1090, 1526, -1341, 684, -108, -90, 55, -8, 0, -2, 1])
}

fn g_plus() -> IntPoly {
    from_i64(&[-16, -176, 192, -128, 20, 396, 24, -168, -9, 37, -7, -3, -1, 1])
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn split(p: u64, f: &IntPoly) -> IdentificationResult {
    split_algebra(f, &mut Catalog::new(p, false)).unwrap()
}

fn same_field(p: u64, a: &IntPoly, b: &[i64]) -> bool {
    let ka = field_from_poly(a, p).unwrap();
    let kb = field_from_poly(&from_i64(b), p).unwrap();
    is_isomorphic(&ka, &kb).unwrap()
}

#[test]
fn thirteen_at_two_is_one_four_eight() {
    let r = split(2, &g_minus());
    assert_eq!(r.shape(), vec![8, 4, 1]);
    let quartic = &r.matched.iter().find(|m| m.entry.n == 4).unwrap().entry;
    assert_eq!((quartic.c, quartic.e, quartic.f), (6, 2, 2));
    assert_eq!(quartic.d.to_string(), "-1");
    assert_eq!(quartic.slopes.slopes, vec![q(3, 1), q(2, 1)]);
    assert!(same_field(2, &quartic.poly, &[-4, 0, 2, 0, 1]));

    let octic = r.unmatched[0].entry.as_ref().unwrap();
    assert!(r.unmatched[0].irreducible);
    assert_eq!((octic.c, octic.e, octic.f), (22, 4, 2));
    assert_eq!(octic.slopes.slopes, vec![q(4, 1), q(3, 1), q(2, 1)]);
    assert!(same_field(2, &octic.poly, &[28, 0, 0, 0, 10, 0, 0, 0, 1]));
}

#[test]
fn thirteen_at_three_is_four_nine() {
    let mut cat = Catalog::new(3, false);
    let r = split_algebra(&g_minus(), &mut cat).unwrap();
    assert!(cat.get(9).is_none());
    assert_eq!(r.shape(), vec![9, 4]);
    let nonic = r.unmatched[0].entry.as_ref().unwrap();
    assert_eq!((nonic.c, nonic.e, nonic.f), (19, 9, 1));
    assert_eq!(nonic.slopes.slopes, vec![q(19, 8), q(19, 8)]);
}

#[test]
fn other_thirteen_has_a_rational_root_at_three() {
    let r = split(3, &g_plus());
    assert_eq!(r.shape(), vec![12, 1]);
    assert!(r.unmatched[0].irreducible);
}
