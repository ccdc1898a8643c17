//! Assembling `K(p, n)`: every `(e, f)` with `e·f = n`, each stratum
//! certified against the mass formula.

use super::degree_p::{degree_p_ramified, DegreePSpec};
use super::mass::stratum_mass;
use super::tame::{tame_fields, TameSpec};
use super::mass::stratum_exponents;
use super::wild::{wild_stratum, StratumCertificate, StratumField};
use crate::field::ring::UElem;
use crate::error::{Error, Result};
use crate::field::tower::field_from_poly;
use crate::field::unramified::defining_poly;
use crate::field::LocalField;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Unramified,
    Tame(TameSpec),
    DegreeP(DegreePSpec),
    Wild { e: usize, f: usize, d: u32 },
}

#[derive(Clone, Debug)]
pub struct GeneratedField {
    pub field: LocalField,
    pub origin: Origin,
    pub automorphisms: usize,
}

#[derive(Clone, Debug)]
pub struct FieldTable {
    pub p: u64,
    pub n: usize,
    pub fields: Vec<GeneratedField>,
    pub certificate: Vec<StratumCertificate>,
}

impl FieldTable {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    /// Every stratum balances.
    pub fn is_certified(&self) -> bool {
        self.certificate.iter().all(|c| c.expected_mass == c.found_mass)
    }
}

/// Degree pairs whose generation is slow enough to require opting in.
pub fn is_long(p: u64, n: usize) -> bool {
    matches!((p, n), (2, 8) | (3, 9))
}

fn certify(
    p: u64,
    e: usize,
    f: usize,
    fields: &[GeneratedField],
) -> Vec<StratumCertificate> {
    let mut by_c: BTreeMap<u32, (usize, BigRational)> = BTreeMap::new();
    for g in fields {
        let entry = by_c.entry(g.field.c()).or_insert((0, BigRational::zero()));
        entry.0 += 1;
        entry.1 += BigRational::new(BigInt::from(f), BigInt::from(g.automorphisms));
    }
    by_c.into_iter()
        .map(|(c, (count, found))| StratumCertificate {
            e,
            f,
            c,
            fields: count,
            expected_mass: stratum_mass(p, e, f, c / f as u32),
            found_mass: found,
            candidates_tried: count as u64,
        })
        .collect()
}

/// Finished wild strata kept between runs, so a long generation can resume.
pub trait StratumCache {
    /// Representatives `(Eisenstein coefficients, |Aut|)` and certificate
    /// of stratum `(e, f, d)`, if already computed.
    fn load(&mut self, e: usize, f: usize, d: u32) -> Result<Option<(Vec<(Vec<UElem>, usize)>, StratumCertificate)>>;
    fn store(&mut self, e: usize, f: usize, d: u32, fields: &[StratumField], cert: &StratumCertificate) -> Result<()>;
}

struct NoCache;

impl StratumCache for NoCache {
    fn load(&mut self, _: usize, _: usize, _: u32) -> Result<Option<(Vec<(Vec<UElem>, usize)>, StratumCertificate)>> {
        Ok(None)
    }

    fn store(&mut self, _: usize, _: usize, _: u32, _: &[StratumField], _: &StratumCertificate) -> Result<()> {
        Ok(())
    }
}

/// Generate `K(p, n)`.
pub fn generate(p: u64, n: usize, allow_long: bool) -> Result<FieldTable> {
    generate_with(p, n, allow_long, &mut NoCache)
}

/// Generate `K(p, n)`, reusing and recording wild strata through `cache`.
pub fn generate_with(p: u64, n: usize, allow_long: bool, cache: &mut dyn StratumCache) -> Result<FieldTable> {
    if n == 0 || n > 9 {
        return Err(Error::Unsupported(format!("degree {n} is outside 1..=9")));
    }
    if is_long(p, n) && !allow_long {
        return Err(Error::Unsupported(format!(
            "K({p},{n}) is a long computation; enable it explicitly"
        )));
    }
    let mut fields = Vec::new();
    let mut certificate = Vec::new();
    for f in (1..=n).rev().filter(|f| n % f == 0) {
        let e = n / f;
        let mut group = Vec::new();
        if e == 1 {
            let h = defining_poly(p, f);
            let field = LocalField::from_tower(p, &h, &[vec![-BigInt::from(p)]
                .into_iter()
                .chain(std::iter::repeat(BigInt::zero()).take(f - 1))
                .collect()])?;
            let automorphisms = field.automorphism_count()?;
            group.push(GeneratedField { field, origin: Origin::Unramified, automorphisms });
        } else if e as u64 % p != 0 {
            for (field, spec) in tame_fields(p, e, f)? {
                let automorphisms = field.automorphism_count()?;
                group.push(GeneratedField { field, origin: Origin::Tame(spec), automorphisms });
            }
        } else if e as u64 == p && f == 1 {
            for k in degree_p_ramified(p) {
                let field = field_from_poly(&k.poly, p)?;
                let automorphisms = field.automorphism_count()?;
                group.push(GeneratedField { field, origin: Origin::DegreeP(k.spec), automorphisms });
            }
        } else {
            for d in stratum_exponents(p, e) {
                let (strat, cert) = match cache.load(e, f, d)? {
                    Some((reps, cert)) => {
                        let h = defining_poly(p, f);
                        let strat = reps
                            .into_iter()
                            .map(|(phi, automorphisms)| {
                                Ok(StratumField { field: LocalField::from_tower(p, &h, &phi)?, automorphisms, phi })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        (strat, cert)
                    }
                    None => {
                        let (strat, cert) = wild_stratum(p, e, f, d)?;
                        cache.store(e, f, d, &strat, &cert)?;
                        (strat, cert)
                    }
                };
                for s in strat {
                    group.push(GeneratedField {
                        field: s.field,
                        origin: Origin::Wild { e, f, d },
                        automorphisms: 0,
                    });
                }
                certificate.push(cert);
            }
            // automorphisms over Q_p of wild fields
            for g in group.iter_mut() {
                g.automorphisms = g.field.automorphism_count()?;
            }
            fields.extend(group);
            continue;
        }
        certificate.extend(certify(p, e, f, &group));
        fields.extend(group);
    }
    Ok(FieldTable { p, n, fields, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        for (p, n, count) in [(2u64, 2usize, 7usize), (3, 2, 3), (3, 3, 10), (5, 3, 2), (7, 3, 4), (2, 3, 2), (5, 4, 7)] {
            let t = generate(p, n, false).unwrap();
            assert_eq!(t.len(), count, "K({p},{n})");
            assert!(t.is_certified(), "K({p},{n}) certificate");
        }
    }
}
