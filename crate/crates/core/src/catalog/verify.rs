//! Independent re-check of a stored table: every invariant recomputed from
//! its polynomial, classes pairwise distinct, and each stratum's mass equal
//! to the formula.

use super::store::TableFile;
use super::{Catalog, Hints};
use crate::enumerate::{degree_p_ramified, stratum_exponents, stratum_mass, tame_fields};
use crate::error::Result;
use crate::field::tower::field_from_poly;
use crate::field::LocalField;
use crate::identify::is_isomorphic;
use crate::padic::intpoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

fn hints_for(field: &LocalField) -> Result<Hints> {
    let (p, e, f) = (field.p(), field.e(), field.f());
    let mut hints = Hints::default();
    if e > 1 && e as u64 % p != 0 {
        for (t, spec) in tame_fields(p, e, f)? {
            if is_isomorphic(field, &t)? {
                hints.tame_r = Some(spec.r);
                break;
            }
        }
    } else if e as u64 == p && f == 1 {
        for k in degree_p_ramified(p) {
            if is_isomorphic(field, &field_from_poly(&k.poly, p)?)? {
                hints.degree_p = Some((k.galois, k.inertia));
                break;
            }
        }
    }
    Ok(hints)
}

/// Problems found in `file`; empty when the table checks out. `catalog`
/// supplies (or generates) the tables of the divisor degrees.
pub fn verify(file: &TableFile, catalog: &mut Catalog) -> Result<Vec<String>> {
    let (p, n) = (file.p, file.n);
    let mut problems = Vec::new();
    catalog.ensure_divisors(n)?;
    if n > 1 {
        catalog.ensure(1)?;
    }
    let mut fields = Vec::with_capacity(file.entries.len());
    for (i, stored) in file.entries.iter().enumerate() {
        let name = format!("entry {} ({})", i + 1, intpoly::to_string(&stored.poly));
        let field = field_from_poly(&stored.poly, p)?;
        let aut = field.automorphism_count()?;
        let fresh = catalog.analyze(&field, aut, &hints_for(&field)?)?;
        if &fresh != stored {
            problems.push(format!("{name}: stored invariants differ from recomputed ones"));
        }
        fields.push(field);
    }
    for w in file.entries.windows(2) {
        if super::entry_order(&w[0], &w[1]) != std::cmp::Ordering::Less {
            problems.push(format!("entries {} and {} out of order", intpoly::to_string(&w[0].poly), intpoly::to_string(&w[1].poly)));
        }
    }
    // pairwise distinct within each stratum
    let mut strata: BTreeMap<(usize, usize, u32), Vec<usize>> = BTreeMap::new();
    for (i, k) in fields.iter().enumerate() {
        strata.entry((k.e(), k.f(), k.c())).or_default().push(i);
    }
    for members in strata.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if fields[j].count_roots(fields[i].poly())? > 0 {
                    problems.push(format!("entries {} and {} are isomorphic", i + 1, j + 1));
                }
            }
        }
    }
    // masses, stratum by stratum, over every stratum that must be present
    for f in (1..=n).filter(|f| n % f == 0) {
        let e = n / f;
        let ds: Vec<u32> = if e as u64 % p == 0 { stratum_exponents(p, e) } else { vec![e as u32 - 1] };
        for d in ds {
            let c = f as u32 * d;
            let expected = stratum_mass(p, e, f, d);
            let mut found = BigRational::zero();
            let mut count = 0;
            for &i in strata.get(&(e, f, c)).map(Vec::as_slice).unwrap_or(&[]) {
                found += BigRational::new(BigInt::from(f), BigInt::from(file.entries[i].aut));
                count += 1;
            }
            if found != expected {
                problems.push(format!("stratum e={e} f={f} c={c}: mass {found} of {count} fields, expected {expected}"));
            }
            match file.certificate.iter().find(|s| (s.e, s.f, s.c) == (e, f, c)) {
                Some(s) if s.expected_mass == expected && s.found_mass == found && s.fields == count => {}
                Some(_) => problems.push(format!("certificate line for e={e} f={f} c={c} disagrees with the entries")),
                None => problems.push(format!("no certificate line for e={e} f={f} c={c}")),
            }
        }
    }
    let total: usize = strata.values().map(Vec::len).sum();
    if total != file.entries.len() {
        problems.push("entries outside every stratum".into());
    }
    Ok(problems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_tables_verify_and_tampering_is_caught() {
        for (p, n) in [(3u64, 3usize), (2, 4), (5, 4)] {
            let mut cat = Catalog::new(p, false);
            let file = TableFile::from_table(cat.ensure(n).unwrap(), false);
            assert_eq!(verify(&file, &mut cat).unwrap(), Vec::<String>::new(), "K({p},{n})");
        }
        let mut cat = Catalog::new(2, false);
        let mut file = TableFile::from_table(cat.ensure(4).unwrap(), false);
        file.entries[3].aut += 1;
        let removed = file.entries.remove(10);
        let problems = verify(&file, &mut cat).unwrap();
        assert!(problems.iter().any(|m| m.contains("differ")));
        assert!(problems.iter().any(|m| m.contains(&format!("c={}", removed.c)) && m.contains("mass")));
    }
}
