//! Bounds on Galois mean slopes of `p`-adic algebras, and on the Galois
//! root discriminant `∏ p^{β_p}` of a global polynomial.
//!
//! Each factor field of `Q_p[x]/F` contributes its slope multiplicities
//! `m_i(s)` and tame degree `t_i`. The compositum has `t = lcm(t_i)` and
//! multiplicities between `max_i m_i(s)` and `Σ_i m_i(s)`.

use crate::catalog::{Catalogs, LocalFieldEntry};
use crate::error::{Error, Result};
use crate::field::order::Order;
use crate::field::tower::field_from_poly;
use crate::identify::split_algebra;
use crate::invariants::slopes::{merge_max, merge_sum};
use crate::invariants::gms;
use crate::padic::intpoly::{self, IntPoly};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TameDegree {
    Exact(u64),
    /// `[t, ∞)`
    AtLeast(u64),
}

impl TameDegree {
    pub fn lower(&self) -> u64 {
        match *self {
            TameDegree::Exact(t) | TameDegree::AtLeast(t) => t,
        }
    }
}

impl fmt::Display for TameDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TameDegree::Exact(t) => write!(f, "{t}"),
            TameDegree::AtLeast(t) => write!(f, ">={t}"),
        }
    }
}

/// `t = lcm(t_i)`, open as soon as one `t_i` is.
pub fn algebra_tame_degree(ts: &[TameDegree]) -> TameDegree {
    let l = ts.iter().fold(1u64, |acc, t| acc.lcm(&t.lower()));
    if ts.iter().any(|t| matches!(t, TameDegree::AtLeast(_))) {
        TameDegree::AtLeast(l)
    } else {
        TameDegree::Exact(l)
    }
}

#[derive(Clone, Debug)]
pub struct FactorProfile {
    pub degree: usize,
    /// Largest first.
    pub slopes: Vec<BigRational>,
    /// The slopes are all of them, not only the visible ones.
    pub exact: bool,
    pub t: TameDegree,
    /// The factor embeds in another factor, so its closure adds nothing.
    pub contained: bool,
}

impl FactorProfile {
    pub fn of_entry(e: &LocalFieldEntry) -> Self {
        let t = if e.e as u64 % e.p != 0 {
            // tame closures have cyclic inertia of order e
            TameDegree::Exact(e.e as u64)
        } else {
            match e.galois.as_ref().and_then(|g| g.t) {
                Some(t) => TameDegree::Exact(t),
                None => TameDegree::AtLeast(e.slopes.t_vis),
            }
        };
        FactorProfile { degree: e.n, slopes: e.slopes.slopes.clone(), exact: e.slopes.exact, t, contained: false }
    }

    fn is_wild(&self) -> bool {
        !self.slopes.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraSlopeProfile {
    pub p: u64,
    pub factors: Vec<FactorProfile>,
    /// Part of the algebra could not be resolved into fields.
    pub unresolved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaBounds {
    pub lo: BigRational,
    /// `None` when nothing bounds `β` from above.
    pub hi: Option<BigRational>,
    /// `hi` is a supremum that is not attained.
    pub hi_open: bool,
}

impl BetaBounds {
    pub fn exact(b: BigRational) -> Self {
        BetaBounds { lo: b.clone(), hi: Some(b), hi_open: false }
    }

    pub fn is_exact(&self) -> bool {
        !self.hi_open && self.hi.as_ref() == Some(&self.lo)
    }

    pub fn contains(&self, beta: &BigRational) -> bool {
        &self.lo <= beta
            && match &self.hi {
                None => true,
                Some(h) if self.hi_open => beta < h,
                Some(h) => beta <= h,
            }
    }
}

impl fmt::Display for BetaBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            return write!(f, "{}", self.lo);
        }
        match &self.hi {
            None => write!(f, "[{}, ∞)", self.lo),
            Some(h) if self.hi_open => write!(f, "[{}, {})", self.lo, h),
            Some(h) => write!(f, "[{}, {}]", self.lo, h),
        }
    }
}

fn vp_factorial(n: usize, p: u64) -> usize {
    let (mut v, mut q) = (0, p as usize);
    while q <= n {
        v += n / q;
        q *= p as usize;
    }
    v
}

/// `gms` with the tame term at its supremum `1`.
fn gms_open(slopes: &[BigRational], p: u64) -> BigRational {
    let m = slopes.len() as u32;
    gms(slopes, 1, p) + BigRational::new(BigInt::one(), BigInt::from(p).pow(m))
}

/// `β_lo` from the largest multiplicity of each slope among the factors,
/// `β_hi` from their sum. A factor known only through its visible slopes may
/// hide further slopes; they are allowed up to its largest slope, as often
/// as the `p`-part of `n!` permits.
pub fn beta_bounds(profile: &AlgebraSlopeProfile) -> BetaBounds {
    let p = profile.p;
    let t = algebra_tame_degree(&profile.factors.iter().map(|f| f.t).collect::<Vec<_>>());
    let mut max = Vec::new();
    let mut sum = Vec::new();
    for f in &profile.factors {
        max = merge_max(&max, &f.slopes);
        if f.contained || !f.is_wild() {
            continue;
        }
        let mut s = f.slopes.clone();
        if !f.exact {
            let cap = vp_factorial(f.degree, p);
            while s.len() < cap {
                s.push(f.slopes[0].clone());
            }
        }
        sum = merge_sum(&sum, &s);
    }
    let lo = gms(&max, t.lower(), p);
    if profile.unresolved {
        return BetaBounds { lo, hi: None, hi_open: false };
    }
    match t {
        TameDegree::Exact(t) => BetaBounds { lo, hi: Some(gms(&sum, t, p)), hi_open: false },
        TameDegree::AtLeast(_) => BetaBounds { lo, hi: Some(gms_open(&sum, p)), hi_open: true },
    }
}

/// Bounds at one prime.
#[derive(Clone, Debug)]
pub struct PrimeBounds {
    pub p: u64,
    /// Discriminant exponent of `Q_p[x]/F`.
    pub c: u32,
    pub shape: Vec<usize>,
    pub beta: BetaBounds,
    /// Some factor was set aside because it embeds in another.
    pub used_containment: bool,
    /// Why the bounds are wider than the data would otherwise give.
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct GrdBounds {
    /// Ramified primes only.
    pub primes: Vec<PrimeBounds>,
    /// Part of `disc F` left unfactored; its primes are not covered.
    pub unfactored: Option<BigInt>,
}

impl GrdBounds {
    pub fn prime(&self, p: u64) -> Option<&PrimeBounds> {
        self.primes.iter().find(|b| b.p == p)
    }

    pub fn lo_exponents(&self) -> Vec<(u64, BigRational)> {
        self.primes.iter().map(|b| (b.p, b.beta.lo.clone())).collect()
    }

    pub fn hi_exponents(&self) -> Option<Vec<(u64, BigRational)>> {
        self.primes.iter().map(|b| b.beta.hi.clone().map(|h| (b.p, h))).collect()
    }

    pub fn hi_open(&self) -> bool {
        self.primes.iter().any(|b| b.beta.hi_open)
    }

    /// Whether `∏ p^{β_p}` lies in the product interval, prime by prime.
    pub fn contains(&self, exponents: &[(u64, BigRational)]) -> bool {
        let zero = BigRational::zero();
        self.primes.iter().all(|b| {
            let beta = exponents.iter().find(|(p, _)| *p == b.p).map_or(&zero, |(_, e)| e);
            b.beta.contains(beta)
        }) && exponents.iter().all(|(p, e)| e.is_zero() || self.prime(*p).is_some())
    }
}

impl fmt::Display for GrdBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo_exponents();
        if self.primes.iter().all(|b| b.beta.is_exact()) {
            return write!(f, "{} ≈ {}", power_product(&lo), power_product_decimal(&lo, 4));
        }
        write!(f, "[{} ≈ {}", power_product(&lo), power_product_decimal(&lo, 4))?;
        match self.hi_exponents() {
            Some(hi) => {
                let close = if self.hi_open() { ")" } else { "]" };
                write!(f, ", {} ≈ {}{close}", power_product(&hi), power_product_decimal(&hi, 4))
            }
            None => write!(f, ", ∞)"),
        }
    }
}

/// `2^{11/4}·3^{7/6}`
pub fn power_product(exps: &[(u64, BigRational)]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(p, e)| if e.is_integer() { format!("{p}^{}", e.numer()) } else { format!("{p}^{{{e}}}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

/// `∏ p^{a/b}` rounded to `places` decimals: with `L = lcm(b)`, the `L`-th
/// power of `2·10^places·∏ p^{a/b}` is an integer, so an integer `L`-th root
/// gives the digits exactly.
pub fn power_product_decimal(exps: &[(u64, BigRational)], places: u32) -> String {
    let l = exps.iter().fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
    let l32 = l.to_u32().expect("small denominators");
    let mut x = (BigUint::from(2u32) * BigUint::from(10u32).pow(places)).pow(l32);
    for (p, e) in exps {
        assert!(!e.is_negative());
        let k = (e * BigRational::from_integer(l.clone())).to_integer().to_u32().expect("small exponent");
        x *= BigUint::from(*p).pow(k);
    }
    let twice = x.nth_root(l32);
    let scaled = (twice + 1u32) / 2u32;
    let unit = BigUint::from(10u32).pow(places);
    let (int, frac) = scaled.div_rem(&unit);
    if places == 0 {
        int.to_string()
    } else {
        format!("{int}.{:0>width$}", frac.to_string(), width = places as usize)
    }
}

fn ramified_candidates(disc: &BigInt) -> (Vec<u64>, Option<BigInt>) {
    let (map, rest) = num_prime::nt_funcs::factors(disc.magnitude().clone(), None);
    let mut primes = Vec::new();
    let mut unfactored = BigUint::one();
    for (q, _) in map {
        match q.to_u64() {
            Some(q) => primes.push(q),
            None => unfactored *= q,
        }
    }
    for r in rest.unwrap_or_default() {
        unfactored *= r;
    }
    let unfactored = (!unfactored.is_one()).then(|| BigInt::from_biguint(Sign::Plus, unfactored));
    (primes, unfactored)
}

/// `β_p` bounds for `Q_p[x]/F`; never fails, widening instead.
pub fn prime_bounds(f: &[BigInt], p: u64, catalogs: &mut Catalogs, containment: bool) -> PrimeBounds {
    let n = f.len() - 1;
    let mut out = PrimeBounds {
        p,
        c: 0,
        shape: Vec::new(),
        beta: BetaBounds { lo: BigRational::zero(), hi: None, hi_open: false },
        used_containment: false,
        note: None,
    };
    match Order::maximal(f, p) {
        Ok(o) => out.c = o.disc_exponent(),
        Err(e) => {
            out.note = Some(format!("no maximal order: {e}"));
            return out;
        }
    }
    let floor = BigRational::new(BigInt::from(out.c), BigInt::from(n));
    if out.c == 0 {
        out.beta = BetaBounds::exact(BigRational::zero());
        return out;
    }
    let catalog = catalogs.get_mut(p);
    let split = match split_algebra(f, catalog) {
        Ok(s) => s,
        Err(e) => {
            out.beta.lo = floor;
            out.note = Some(format!("not split: {e}"));
            return out;
        }
    };
    out.shape = split.shape();
    // copies of one field have one closure
    let mut polys: Vec<IntPoly> = Vec::new();
    let mut factors: Vec<FactorProfile> = Vec::new();
    let mut unresolved = false;
    for m in &split.matched {
        polys.push(m.entry.poly.clone());
        factors.push(FactorProfile::of_entry(&m.entry));
    }
    for u in &split.unmatched {
        match &u.entry {
            Some(e) => {
                polys.push(e.poly.clone());
                factors.push(FactorProfile::of_entry(e));
            }
            None => unresolved = true,
        }
    }
    if unresolved {
        out.note = Some("part of the algebra is beyond the loaded tables".into());
    }
    if containment {
        for b in 0..factors.len() {
            if !factors[b].is_wild() {
                continue;
            }
            let Ok(kb) = field_from_poly(&polys[b], p) else { continue };
            for a in 0..factors.len() {
                let (da, db) = (factors[a].degree, factors[b].degree);
                if a == b || !factors[a].is_wild() || da >= db || db % da != 0 || factors[a].contained {
                    continue;
                }
                if kb.count_roots(&polys[a]).map_or(false, |r| r > 0) {
                    factors[a].contained = true;
                    out.used_containment = true;
                }
            }
        }
    }
    let beta = beta_bounds(&AlgebraSlopeProfile { p, factors, unresolved });
    debug_assert!(beta.lo >= floor || unresolved, "β_lo {} below c/n {}", beta.lo, floor);
    out.beta = beta;
    out
}

/// GRD bounds over the primes dividing `disc F`, or over `primes` when given.
pub fn grd_bounds(f: &[BigInt], catalogs: &mut Catalogs, primes: Option<&[u64]>, containment: bool) -> Result<GrdBounds> {
    if !intpoly::is_monic(f) || f.len() < 2 {
        return Err(Error::InvalidInput("polynomial must be monic of positive degree".into()));
    }
    let disc = intpoly::discriminant(f);
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let (candidates, unfactored) = match primes {
        Some(ps) => (ps.to_vec(), None),
        None => ramified_candidates(&disc),
    };
    let primes = candidates
        .into_iter()
        .map(|p| prime_bounds(f, p, catalogs, containment))
        .filter(|b| b.c > 0 || b.note.is_some())
        .collect();
    Ok(GrdBounds { primes, unfactored })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn wild(degree: usize, slopes: &[BigRational], t: TameDegree, exact: bool) -> FactorProfile {
        FactorProfile { degree, slopes: slopes.to_vec(), exact, t, contained: false }
    }

    #[test]
    fn tame_degrees() {
        use TameDegree::*;
        assert_eq!(algebra_tame_degree(&[Exact(1), Exact(1)]), Exact(1));
        assert_eq!(algebra_tame_degree(&[Exact(3), Exact(2)]), Exact(6));
        assert_eq!(algebra_tame_degree(&[Exact(3), AtLeast(4)]), AtLeast(12));
        assert_eq!(algebra_tame_degree(&[]), Exact(1));
    }

    #[test]
    fn one_wild_factor_is_exact() {
        let prof = AlgebraSlopeProfile {
            p: 2,
            factors: vec![
                wild(4, &[q(4, 3), q(4, 3)], TameDegree::Exact(3), true),
                wild(1, &[], TameDegree::Exact(1), true),
            ],
            unresolved: false,
        };
        let b = beta_bounds(&prof);
        assert!(b.is_exact());
        assert_eq!(b.lo, q(7, 6));
    }

    #[test]
    fn two_degree_p_fields() {
        // K_{p,1} × K_{p,2}, both with c = 2p - 1: true slopes are
        // (2p-1)/(p-1) and p/(p-1), the latter invisible in either factor
        for p in [3u64, 5, 7] {
            let s = q(2 * p as i64 - 1, p as i64 - 1);
            let f = wild(p as usize, &[s.clone()], TameDegree::Exact(p - 1), true);
            let b = beta_bounds(&AlgebraSlopeProfile { p, factors: vec![f.clone(), f], unresolved: false });
            let truth = gms(&[s, q(p as i64, p as i64 - 1)], p - 1, p);
            assert!(b.lo < truth && truth < b.hi.clone().unwrap(), "p={p}");
        }
    }

    #[test]
    fn octic_and_quartic_at_two() {
        let octic = wild(8, &[q(4, 1), q(3, 1), q(2, 1)], TameDegree::Exact(1), true);
        let mut quartic = wild(4, &[q(3, 1), q(2, 1)], TameDegree::Exact(1), true);
        let mk = |fs: Vec<FactorProfile>| AlgebraSlopeProfile { p: 2, factors: fs, unresolved: false };
        let b = beta_bounds(&mk(vec![octic.clone(), quartic.clone()]));
        assert!(b.contains(&q(3, 1)));
        assert!(!b.is_exact());
        quartic.contained = true;
        let b = beta_bounds(&mk(vec![octic, quartic]));
        assert!(b.is_exact());
        assert_eq!(b.lo, q(3, 1));
    }

    #[test]
    fn visible_only_factor_widens_upward() {
        let nonic = wild(9, &[q(19, 8), q(19, 8)], TameDegree::AtLeast(8), false);
        let b = beta_bounds(&AlgebraSlopeProfile { p: 3, factors: vec![nonic], unresolved: false });
        assert_eq!(b.lo, q(53, 24));
        assert!(b.hi_open);
        assert!(b.contains(&q(53, 24)));
        assert!(b.hi.unwrap() <= q(19, 8));
    }

    #[test]
    fn decimals() {
        let e = [(2, q(11, 4)), (3, q(7, 6))];
        assert_eq!(power_product(&e), "2^{11/4}·3^{7/6}");
        assert_eq!(power_product_decimal(&e, 4), "24.2367");
        assert_eq!(power_product_decimal(&[(2, q(3, 1)), (3, q(53, 24))], 4), "90.5175");
        assert_eq!(power_product_decimal(&[(2, q(1, 2))], 6), "1.414214");
        assert_eq!(power_product_decimal(&[], 2), "1.00");
    }

    #[test]
    fn squarefree_discriminant_gives_one_half() {
        // x^2 - 3 at 3, and x^3 - x - 1 (disc -23) at 23
        let mut cats = Catalogs::new(false);
        let g = grd_bounds(&intpoly::from_i64(&[-3, 0, 1]), &mut cats, None, true).unwrap();
        let b3 = g.prime(3).unwrap();
        assert!(b3.beta.is_exact());
        assert_eq!(b3.beta.lo, q(1, 2));
        let g = grd_bounds(&intpoly::from_i64(&[-1, -1, 0, 1]), &mut cats, None, true).unwrap();
        assert_eq!(g.primes.len(), 1);
        assert_eq!(g.prime(23).unwrap().beta, BetaBounds::exact(q(1, 2)));
    }
}
