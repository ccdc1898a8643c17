//! Splitting `Q_p[x]/F` into factor fields and naming each one.
//!
//! `F` is first cut into blocks by Hensel lifting its factorization modulo
//! `p`. A block may still be reducible; its factors are then found degree
//! by degree from root counts: the roots of a block in a field `L` of degree
//! `d` come from factors of degree at most `d` embedding in `L`, so once
//! the smaller factors are known, what remains is `|Aut(L)|` times the
//! number of factors isomorphic to `L`.

use crate::catalog::{Catalog, Hints, LocalFieldEntry};
use crate::error::{Error, Result};
use crate::field::tower::field_from_poly;
use crate::field::LocalField;
use crate::padic::hensel::hensel_split;
use crate::padic::intpoly::{self, IntPoly};
use crate::padic::poly::PAdicPolynomial;
use crate::padic::zmod::{val_p, ZMod};
use num_bigint::BigInt;
use num_traits::Zero;

/// A factor field found in a table.
#[derive(Clone, Debug)]
pub struct MatchedFactor {
    pub entry: LocalFieldEntry,
    pub multiplicity: usize,
}

/// A factor of a degree with no table at hand.
#[derive(Clone, Debug)]
pub struct UnmatchedFactor {
    pub degree: usize,
    /// Invariants computed directly, when the factor could be isolated.
    pub entry: Option<LocalFieldEntry>,
    /// `false` when the remaining degree could not be resolved into
    /// irreducible factors.
    pub irreducible: bool,
}

#[derive(Clone, Debug)]
pub struct IdentificationResult {
    pub p: u64,
    pub matched: Vec<MatchedFactor>,
    pub unmatched: Vec<UnmatchedFactor>,
}

impl IdentificationResult {
    pub fn degree(&self) -> usize {
        self.matched.iter().map(|m| m.entry.n * m.multiplicity).sum::<usize>()
            + self.unmatched.iter().map(|u| u.degree).sum::<usize>()
    }

    /// Degrees of the factor fields, largest first.
    pub fn shape(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .matched
            .iter()
            .flat_map(|m| std::iter::repeat(m.entry.n).take(m.multiplicity))
            .chain(self.unmatched.iter().map(|u| u.degree))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Every factor that has invariants, matched or computed.
    pub fn factor_entries(&self) -> Vec<&LocalFieldEntry> {
        self.matched
            .iter()
            .flat_map(|m| std::iter::repeat(&m.entry).take(m.multiplicity))
            .chain(self.unmatched.iter().filter_map(|u| u.entry.as_ref()))
            .collect()
    }
}

/// Precision for block coefficients: far beyond the Krasner radius of any
/// factor, which is bounded through `v_p(disc F)`.
fn block_precision(disc_val: u32, n: usize) -> u32 {
    4 * disc_val + 8 * n as u32 + 40
}

/// Blocks of `F` from its factorization modulo `p`, as integer polynomials.
pub fn blocks(f: &[BigInt], p: u64) -> Result<Vec<IntPoly>> {
    let d = intpoly::discriminant(f);
    if d.is_zero() {
        return Err(Error::InvalidInput("polynomial has a repeated factor".into()));
    }
    if !intpoly::is_monic(f) {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    let n = f.len() - 1;
    let prec = block_precision(val_p(&d, p).unwrap(), n);
    let pf = PAdicPolynomial::from_integer_poly(p, f, prec);
    match hensel_split(&pf) {
        Ok(parts) => Ok(parts.into_iter().map(|b| b.residues().to_vec()).collect()),
        Err(Error::InseparableReduction) => Ok(vec![pf.residues().to_vec()]),
        Err(e) => Err(e),
    }
}

/// Newton-refine a simple root of `b` in `Z_p` known modulo `p^k` and
/// divide it out modulo `p^prec`.
fn deflate_linear(b: &[BigInt], root: &BigInt, ring: &ZMod) -> Result<IntPoly> {
    let db = intpoly::derivative(b);
    let mut x = root.clone();
    for _ in 0..ring.prec().max(8) {
        let fx = ring.reduce(&intpoly::eval(b, &x));
        if fx.is_zero() {
            break;
        }
        let dx = ring.reduce(&intpoly::eval(&db, &x));
        let v = ring.val(&dx).ok_or_else(|| Error::PrecisionExhausted("derivative vanishes at root".into()))?;
        let num = ring.div_p_pow(&fx, v);
        let den = ring.div_p_pow(&dx, v);
        let inv = ring.inv(&den).expect("unit");
        x = ring.sub(&x, &ring.mul(&num, &inv));
    }
    // synthetic division
    let n = b.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut acc = BigInt::zero();
    for i in (1..=n).rev() {
        acc = ring.add(&ring.mul(&acc, &x), &b[i]);
        q[i - 1] = acc.clone();
    }
    Ok(q)
}

/// Roots of `b` in `Q_p`, each known to enough precision for deflation.
fn rational_roots(b: &[BigInt], qp: &LocalField) -> Result<Vec<BigInt>> {
    use crate::field::panayi::find_roots;
    let dv = val_p(&intpoly::discriminant(b), qp.p()).unwrap();
    let start = qp.default_prec().max(2 * dv + 8);
    qp.with_escalation(start, |ring| {
        let gk: Vec<_> = b.iter().map(|c| ring.from_int(c)).collect();
        let roots = find_roots(ring, &gk, ring.pi_prec())?;
        Ok(roots.into_iter().map(|r| ring.coeff(&r.approx, 0)[0].clone()).collect())
    })
}

/// Resolve one block into factor fields.
fn split_block(block: &[BigInt], catalog: &mut Catalog, out: &mut IdentificationResult, prec: u32) -> Result<()> {
    let p = catalog.p();
    let m = block.len() - 1;
    // (degree, index, multiplicity)
    let mut found: Vec<(usize, usize, usize)> = Vec::new();
    let mut remaining = m;
    let mut d = 1;
    while remaining > 0 {
        if 2 * d > remaining {
            // only one factor is left
            d = remaining;
        }
        match catalog.ensure(d) {
            Err(Error::MissingTable { .. }) => break,
            Err(e) => return Err(e),
            Ok(_) => {}
        }
        let table = catalog.get(d).unwrap();
        let mut hits = Vec::new();
        for (i, (entry, l)) in table.entries.iter().zip(&table.fields).enumerate() {
            let mut roots = l.count_roots(block)?;
            for &(d2, i2, k) in &found {
                let small = &catalog.get(d2).unwrap().entries[i2];
                roots -= k * l.count_roots(&small.poly)?;
            }
            if roots > 0 {
                hits.push((i, roots / entry.aut));
                remaining -= d * roots / entry.aut;
            }
        }
        for (i, k) in hits {
            found.push((d, i, k));
        }
        if d == remaining || remaining == 0 {
            break;
        }
        d += 1;
    }
    for &(d, i, k) in &found {
        let entry = catalog.get(d).unwrap().entries[i].clone();
        match out.matched.iter_mut().find(|mf| mf.entry == entry) {
            Some(mf) => mf.multiplicity += k,
            None => out.matched.push(MatchedFactor { entry, multiplicity: k }),
        }
    }
    if remaining == 0 {
        return Ok(());
    }
    // everything below degree d is accounted for
    let irreducible = 2 * d > remaining || d >= remaining;
    let mut entry = None;
    if irreducible {
        let only_linear = found.iter().all(|&(d, _, _)| d == 1);
        if only_linear {
            let ring = ZMod::new(p, prec);
            let mut rest = block.to_vec();
            catalog.ensure(1)?;
            let qp = catalog.get(1).unwrap().fields[0].clone();
            for r in rational_roots(block, &qp)? {
                rest = deflate_linear(&rest, &r, &ring)?;
            }
            entry = analyze_factor(&rest, catalog).ok();
        }
    }
    out.unmatched.push(UnmatchedFactor { degree: remaining, entry, irreducible });
    Ok(())
}

/// Invariants of an irreducible factor of a degree beyond the tables.
pub fn analyze_factor(g: &[BigInt], catalog: &mut Catalog) -> Result<LocalFieldEntry> {
    let n = g.len() - 1;
    catalog.ensure_divisors(n)?;
    let field = field_from_poly(g, catalog.p())?;
    let aut = field.automorphism_count()?;
    catalog.analyze(&field, aut, &Hints::default())
}

/// Factor fields of `Q_p[x]/F`.
pub fn split_algebra(f: &[BigInt], catalog: &mut Catalog) -> Result<IdentificationResult> {
    let p = catalog.p();
    let d = intpoly::discriminant(f);
    if d.is_zero() {
        return Err(Error::InvalidInput("polynomial has a repeated factor".into()));
    }
    let prec = block_precision(val_p(&d, p).unwrap(), f.len() - 1);
    let mut out = IdentificationResult { p, matched: Vec::new(), unmatched: Vec::new() };
    for b in blocks(f, p)? {
        split_block(&b, catalog, &mut out, prec)?;
    }
    debug_assert_eq!(out.degree(), f.len() - 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::intpoly::{from_i64, mul};

    #[test]
    fn products_of_table_fields() {
        let mut cat = Catalog::new(2, false);
        // Q_2(i) × Q_2(√3) × Q_2 × Q_2
        let f = mul(&mul(&from_i64(&[1, 0, 1]), &from_i64(&[-3, 0, 1])), &from_i64(&[-1, 0, 1]));
        let r = split_algebra(&f, &mut cat).unwrap();
        assert_eq!(r.shape(), vec![2, 2, 1, 1]);
        assert!(r.unmatched.is_empty());
        let f = mul(&from_i64(&[2, 2, 0, 0, 1]), &from_i64(&[5, 0, -1, 0, 1]));
        let r = split_algebra(&f, &mut cat).unwrap();
        assert_eq!(r.shape(), vec![4, 4]);
        assert!(r.matched.iter().any(|m| m.entry.c == 4 && m.entry.e == 4));
    }

    #[test]
    fn eisenstein_is_one_block() {
        let mut cat = Catalog::new(3, false);
        let r = split_algebra(&from_i64(&[3, 0, 0, 0, 1]), &mut cat).unwrap();
        assert_eq!(r.shape(), vec![4]);
        assert_eq!(r.matched[0].entry.d.to_string(), "3");
    }

    #[test]
    fn factor_beyond_tables_after_linear_factors() {
        // (x - 1)(x^9 + 9x^2 + 3) over Q_3, without a nonic table
        let mut cat = Catalog::new(3, false);
        let f = mul(&from_i64(&[-1, 1]), &from_i64(&[3, 0, 9, 0, 0, 0, 0, 0, 0, 1]));
        let r = split_algebra(&f, &mut cat).unwrap();
        assert_eq!(r.shape(), vec![9, 1]);
        let u = &r.unmatched[0];
        assert!(u.irreducible);
        let e = u.entry.as_ref().unwrap();
        assert_eq!((e.c, e.e, e.f), (19, 9, 1));
    }
}
