//! Newton polygons of p-adic polynomials.

use super::poly::PAdicPolynomial;
use crate::error::{Error, Result};
use num_rational::Rational64;

/// One edge of the lower convex hull of `(i, ord_p(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// Hull slope `Δv/Δi`; the roots on this edge have valuation `-slope`.
    pub slope: Rational64,
    pub length: usize,
}

impl Segment {
    pub fn root_valuation(&self) -> Rational64 {
        -self.slope
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Multiplicity of `x` as a factor (roots that are exactly zero).
    pub zero_roots: usize,
    /// Edges left to right, hull slopes strictly increasing.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.zero_roots + self.segments.iter().map(|s| s.length).sum::<usize>()
    }

    /// `(root valuation, multiplicity)` pairs, largest valuation first.
    pub fn root_valuations(&self) -> Vec<(Rational64, usize)> {
        self.segments
            .iter()
            .map(|s| (s.root_valuation(), s.length))
            .collect()
    }
}

/// Lower convex hull of the given points, which must have distinct increasing x.
pub fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // remove middle point if it lies on or above segment from (x1,y1) to pt
            let cross = (y2 - y1) * (pt.0 - x1) - (pt.1 - y1) * (x2 - x1);
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

fn segments_from_hull(hull: &[(i64, i64)]) -> Vec<Segment> {
    hull.windows(2)
        .map(|w| Segment {
            slope: Rational64::new(w[1].1 - w[0].1, w[1].0 - w[0].0),
            length: (w[1].0 - w[0].0) as usize,
        })
        .collect()
}

/// Newton polygon of a nonzero polynomial.
pub fn newton_polygon(f: &PAdicPolynomial) -> Result<NewtonPolygon> {
    let d = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let prec = f.precision() as i64;
    let mut known: Vec<(i64, i64)> = Vec::new();
    let mut uncertain: Vec<i64> = Vec::new();
    for i in 0..=d {
        match f.coeff_val(i) {
            Ok(Some(v)) => known.push((i as i64, v as i64)),
            Ok(None) => {}
            Err(_) => uncertain.push(i as i64),
        }
    }
    // Leading run of exact zeros gives the x-power factor.
    let first = known[0].0;
    let zero_roots = if f.is_exact() {
        first as usize
    } else {
        // for approximations a vanishing constant term is uncertain, not a root
        0
    };
    let pts: Vec<(i64, i64)> = known
        .iter()
        .copied()
        .filter(|&(i, _)| i >= zero_roots as i64)
        .collect();
    let hull = lower_hull(&pts);
    for &i in &uncertain {
        if i < hull[0].0 {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient {} is zero to working precision",
                i
            )));
        }
        // height of hull at i
        for w in hull.windows(2) {
            if w[0].0 <= i && i <= w[1].0 {
                let num = w[0].1 * (w[1].0 - w[0].0) + (w[1].1 - w[0].1) * (i - w[0].0);
                let den = w[1].0 - w[0].0;
                if prec * den <= num {
                    return Err(Error::PrecisionExhausted(format!(
                        "coefficient {} could lie below the hull",
                        i
                    )));
                }
            }
        }
    }
    Ok(NewtonPolygon {
        zero_roots,
        segments: segments_from_hull(&hull),
    })
}

/// Newton polygon straight from exact valuations (`None` marks a zero coefficient).
pub fn newton_polygon_from_vals(vals: &[Option<i64>]) -> NewtonPolygon {
    let zero_roots = vals.iter().position(|v| v.is_some()).unwrap_or(0);
    let pts: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as i64, v)))
        .collect();
    NewtonPolygon {
        zero_roots,
        segments: segments_from_hull(&lower_hull(&pts)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::{from_i64, mul};
    use proptest::prelude::*;

    fn np(p: u64, c: &[i64]) -> NewtonPolygon {
        newton_polygon(&PAdicPolynomial::from_integer_poly(p, &from_i64(c), 30)).unwrap()
    }

    #[test]
    fn eisenstein_single_segment() {
        let g = np(3, &[3, 0, 9, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g.segments.len(), 1);
        assert_eq!(g.segments[0].length, 9);
        assert_eq!(g.segments[0].root_valuation(), Rational64::new(1, 9));
        let e = np(2, &[2, 2, 0, 0, 1]);
        assert_eq!(e.segments, vec![Segment { slope: Rational64::new(-1, 4), length: 4 }]);
    }

    #[test]
    fn x_factor_then_slope_one() {
        for p in [2i64, 3, 5] {
            let g = np(p as u64, &[0, -p, 1]);
            assert_eq!(g.zero_roots, 1);
            assert_eq!(g.segments.len(), 1);
            assert_eq!(g.segments[0].root_valuation(), Rational64::from_integer(1));
            assert_eq!(g.segments[0].length, 1);
        }
    }

    fn multiset(n: &NewtonPolygon) -> Vec<Rational64> {
        let mut v = Vec::new();
        for (val, m) in n.root_valuations() {
            for _ in 0..m {
                v.push(val);
            }
        }
        v.sort();
        v
    }

    proptest! {
        #[test]
        fn product_merges_slopes(a in prop::collection::vec(-40i64..40, 2..5),
                                 b in prop::collection::vec(-40i64..40, 2..5)) {
            let mut a = a; a.push(1);
            let mut b = b; b.push(1);
            prop_assume!(a[0] != 0 && b[0] != 0);
            let fa = from_i64(&a);
            let fb = from_i64(&b);
            let p = 3;
            let na = newton_polygon(&PAdicPolynomial::from_integer_poly(p, &fa, 60)).unwrap();
            let nb = newton_polygon(&PAdicPolynomial::from_integer_poly(p, &fb, 60)).unwrap();
            let nab = newton_polygon(&PAdicPolynomial::from_integer_poly(p, &mul(&fa, &fb), 60)).unwrap();
            let mut expect = multiset(&na);
            expect.extend(multiset(&nb));
            expect.sort();
            prop_assert_eq!(multiset(&nab), expect);
        }
    }
}
