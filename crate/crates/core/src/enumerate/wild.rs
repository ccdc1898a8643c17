//! Wildly ramified strata: Eisenstein polynomials over the unramified base
//! searched in a fixed order until the mass formula certifies completeness.

use super::mass::{stratum_exponents, stratum_layout, stratum_mass, StratumLayout};
use crate::error::{Error, Result};
use crate::field::ring::UElem;
use crate::field::unramified::defining_poly;
use crate::field::LocalField;
use crate::identify::BaseRootCounter;
use crate::padic::intpoly::IntPoly;
use crate::padic::zmod::pow_big;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A digit group: the `p^level` part of coefficient `a_j`, an element of `F_q`.
#[derive(Clone, Debug)]
struct Group {
    j: usize,
    level: u32,
    nonzero: bool,
}

/// Candidates of one stratum in canonical order: an odometer over digit
/// groups sorted by `(level, j)`, the first group turning fastest, so that
/// the low-order digits that decide the isomorphism class vary first.
pub struct Candidates {
    p: u64,
    f: usize,
    e: usize,
    q: u64,
    groups: Vec<Group>,
    state: Vec<u64>,
    done: bool,
}

impl Candidates {
    pub fn new(p: u64, f: usize, layout: &StratumLayout) -> Self {
        let mut groups = Vec::new();
        let top = *layout.prec.iter().max().unwrap();
        for level in 1..top {
            for j in 0..layout.e {
                if level >= layout.min_val[j] && level < layout.prec[j] {
                    let nonzero = layout.exact.contains(&j) && level == layout.min_val[j];
                    groups.push(Group { j, level, nonzero });
                }
            }
        }
        let state = groups.iter().map(|g| u64::from(g.nonzero)).collect();
        Candidates {
            p,
            f,
            e: layout.e,
            q: p.pow(f as u32),
            groups,
            state,
            done: false,
        }
    }

    /// Number of candidates in the stratum.
    pub fn size(&self) -> u128 {
        self.groups
            .iter()
            .map(|g| (self.q - u64::from(g.nonzero)) as u128)
            .product()
    }

    fn current(&self) -> Vec<UElem> {
        let mut a = vec![vec![BigInt::zero(); self.f]; self.e];
        for (g, &v) in self.groups.iter().zip(&self.state) {
            let scale = pow_big(self.p, g.level);
            let mut v = v;
            for i in 0..self.f {
                let digit = v % self.p;
                v /= self.p;
                if digit != 0 {
                    a[g.j][i] += &scale * BigInt::from(digit);
                }
            }
        }
        a
    }

    fn advance(&mut self) {
        for (g, s) in self.groups.iter().zip(self.state.iter_mut()) {
            *s += 1;
            if *s < self.q {
                return;
            }
            *s = u64::from(g.nonzero);
        }
        self.done = true;
    }
}

impl Iterator for Candidates {
    /// `φ_0..φ_{e-1}` with integer coordinates.
    type Item = Vec<UElem>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// One representative field of a stratum with its automorphism count.
#[derive(Clone, Debug)]
pub struct StratumField {
    pub field: LocalField,
    pub automorphisms: usize,
    /// Non-leading Eisenstein coefficients over `U_f` defining `field`.
    pub phi: Vec<UElem>,
}

/// Certificate for one `(e, f, c)` stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumCertificate {
    pub e: usize,
    pub f: usize,
    pub c: u32,
    pub fields: usize,
    pub expected_mass: BigRational,
    pub found_mass: BigRational,
    pub candidates_tried: u64,
}

fn full_poly(phi: &[UElem], f: usize) -> Vec<UElem> {
    let mut g = phi.to_vec();
    let mut one = vec![BigInt::zero(); f];
    one[0] = BigInt::one();
    g.push(one);
    g
}

/// All fields in stratum `d` of totally ramified degree-`e` extensions of
/// `U_f`, as `Q_p`-isomorphism classes, certified by the mass formula.
pub fn wild_stratum(p: u64, e: usize, f: usize, d: u32) -> Result<(Vec<StratumField>, StratumCertificate)> {
    let layout = stratum_layout(p, e, d)
        .ok_or_else(|| Error::InvalidInput(format!("no Eisenstein polynomials of degree {e} with exponent {d}")))?;
    let expected = stratum_mass(p, e, f, d);
    let h = defining_poly(p, f);
    let fu = BigRational::from_integer(BigInt::from(f));
    let mut found = BigRational::zero();
    let mut reps: Vec<StratumField> = Vec::new();
    let mut tried = 0u64;
    for phi in Candidates::new(p, f, &layout) {
        if found == expected {
            break;
        }
        tried += 1;
        let g = full_poly(&phi, f);
        let mut known = false;
        for rep in &reps {
            let mut counter = BaseRootCounter::new(&rep.field)?;
            for i in 0..f {
                if counter.count(&g, i)? > 0 {
                    known = true;
                    break;
                }
            }
            if known {
                break;
            }
        }
        if known {
            continue;
        }
        let field = LocalField::from_tower(p, &h, &phi)?;
        let auts = BaseRootCounter::new(&field)?.count_all_twists(&g)?;
        found += &fu / BigRational::from_integer(BigInt::from(auts));
        if found > expected {
            return Err(Error::MassOvershoot {
                e: e as u32,
                f: f as u32,
                c: f as u32 * d,
                found: found.to_string(),
                expected: expected.to_string(),
            });
        }
        reps.push(StratumField { field, automorphisms: auts, phi });
    }
    if found != expected {
        return Err(Error::StratumIncomplete {
            e: e as u32,
            f: f as u32,
            c: f as u32 * d,
            found: found.to_string(),
            expected: expected.to_string(),
        });
    }
    let cert = StratumCertificate {
        e,
        f,
        c: f as u32 * d,
        fields: reps.len(),
        expected_mass: expected,
        found_mass: found,
        candidates_tried: tried,
    };
    Ok((reps, cert))
}

/// Every stratum of a wild `(e, f)` pair.
pub fn wild_fields(p: u64, e: usize, f: usize) -> Result<Vec<(Vec<StratumField>, StratumCertificate)>> {
    if e as u64 % p != 0 {
        return Err(Error::InvalidInput(format!("e = {e} is prime to p = {p}")));
    }
    stratum_exponents(p, e).into_iter().map(|d| wild_stratum(p, e, f, d)).collect()
}

/// Defining polynomials of all extensions of degree `n = e·f` with the given
/// wild ramification index.
pub fn wild_enumerate(p: u64, n: usize, e: usize, f: usize) -> Result<Vec<IntPoly>> {
    if e * f != n {
        return Err(Error::InvalidInput(format!("e·f = {} differs from n = {n}", e * f)));
    }
    Ok(wild_fields(p, e, f)?
        .into_iter()
        .flat_map(|(fields, _)| fields.into_iter().map(|s| s.field.poly().clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_q2() {
        let strata = wild_fields(2, 2, 1).unwrap();
        let counts: Vec<usize> = strata.iter().map(|(f, _)| f.len()).collect();
        assert_eq!(counts, vec![2, 4]);
    }

    #[test]
    fn cubics_over_q3() {
        let strata = wild_fields(3, 3, 1).unwrap();
        let total: usize = strata.iter().map(|(f, _)| f.len()).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn candidate_space_is_complete() {
        let layout = stratum_layout(2, 2, 3).unwrap();
        // a_0 ∈ 2·(unit) mod 2^4, a_1 ∈ 4Z_2 mod 2^3
        let c = Candidates::new(2, 1, &layout);
        assert_eq!(c.size(), 4 * 2);
        assert_eq!(c.count(), 8);
    }
}
