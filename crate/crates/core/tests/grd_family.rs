use localfields::catalog::Catalogs;
use localfields::grd::grd_bounds;
use localfields::padic::intpoly::{from_i64, IntPoly};
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn f0() -> IntPoly {
    from_i64(&[
        989184, -3311040, -3177984, -3388480, -1743616, -1015056, -377088, -144096, -43776, -9060, -2016, -132, 16, 1,
    ])
}

fn g_minus() -> IntPoly {
    from_i64(&[8, -100, 468, -1090, 1526, -1341, 684, -108, -90, 55, -8, 0, -2, 1])
}

fn g_plus() -> IntPoly {
    from_i64(&[-16, -176, 192, -128, 20, 396, 24, -168, -9, 37, -7, -3, -1, 1])
}

#[test]
fn family_member_at_zero() {
    let mut cats = Catalogs::new(false);
    let g = grd_bounds(&f0(), &mut cats, None, true).unwrap();
    assert!(g.unfactored.is_none());
    assert!(g.contains(&[(2, q(11, 4)), (3, q(7, 6))]));
}

#[test]
fn family_members_at_seven_halves() {
    let mut cats = Catalogs::new(false);
    let g = grd_bounds(&g_plus(), &mut cats, None, true).unwrap();
    assert!(g.prime(2).unwrap().beta.contains(&q(3, 1)));
    assert!(g.prime(3).unwrap().beta.contains(&q(53, 24)));
    let g = grd_bounds(&g_minus(), &mut cats, None, true).unwrap();
    assert!(g.prime(2).unwrap().beta.contains(&q(3, 1)));
    assert!(g.prime(3).unwrap().beta.contains(&q(53, 24)));
}
