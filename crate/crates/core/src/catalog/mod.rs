//! Tables `K(p, n)` with every invariant filled in: discriminant class,
//! automorphisms, subfields, slope content, Galois data and mean slope.

pub mod render;
pub mod store;
pub mod verify;

use crate::enumerate::{degree_p_ramified, generate, generate_with, Origin, StratumCertificate};
use crate::error::{Error, Result};
use crate::field::LocalField;
use crate::invariants::galois::{galois_group, GaloisData, GaloisInput};
use crate::invariants::slopes::{
    chain_steps, gms, is_weakly_increasing, merge_max, visible_slopes, visible_tame_degree, SlopeContent,
};
use crate::invariants::{disc_class, DiscClass};
use crate::padic::intpoly::{self, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubfieldRef {
    Quadratic(DiscClass),
    Unramified(usize),
    Poly(IntPoly),
}

impl fmt::Display for SubfieldRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubfieldRef::Quadratic(d) => write!(f, "{d}"),
            SubfieldRef::Unramified(d) => write!(f, "U_{d}"),
            SubfieldRef::Poly(g) => write!(f, "{}", intpoly::to_string(g)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gms {
    Exact(BigRational),
    /// Lower bound from the visible slopes and tame degree.
    AtLeast(BigRational),
}

impl Gms {
    pub fn value(&self) -> &BigRational {
        match self {
            Gms::Exact(b) | Gms::AtLeast(b) => b,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Gms::Exact(_))
    }
}

impl fmt::Display for Gms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gms::Exact(b) => write!(f, "{b}"),
            Gms::AtLeast(b) => write!(f, ">={b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldEntry {
    pub p: u64,
    pub n: usize,
    pub poly: IntPoly,
    pub c: u32,
    pub e: usize,
    pub f: usize,
    pub d: DiscClass,
    pub aut: usize,
    pub galois: Option<GaloisData>,
    pub slopes: SlopeContent,
    pub gms: Gms,
    pub subfields: Vec<SubfieldRef>,
}

impl LocalFieldEntry {
    /// Root discriminant exponent `c/n`.
    pub fn root_disc(&self) -> BigRational {
        BigRational::new(BigInt::from(self.c), BigInt::from(self.n))
    }

    /// `|I/I_w|`, certified or visible.
    pub fn tame_degree(&self) -> (u64, bool) {
        match self.galois.as_ref().and_then(|g| g.t) {
            Some(t) => (t, true),
            None => (self.slopes.t_vis, false),
        }
    }
}

/// Sort key: discriminant exponent, ramification index, then the
/// polynomial read from the top coefficient down, smaller absolute values
/// first and positive before negative.
pub fn entry_order(a: &LocalFieldEntry, b: &LocalFieldEntry) -> std::cmp::Ordering {
    let key = |g: &IntPoly| -> Vec<(BigInt, bool)> { g.iter().rev().map(|x| (x.abs(), x.is_negative())).collect() };
    (a.c, a.e, key(&a.poly)).cmp(&(b.c, b.e, key(&b.poly)))
}

/// One table with the fields needed for further root counting.
#[derive(Clone, Debug)]
pub struct Table {
    pub p: u64,
    pub n: usize,
    pub entries: Vec<LocalFieldEntry>,
    pub fields: Vec<LocalField>,
    pub certificate: Vec<StratumCertificate>,
}

impl Table {
    pub fn is_certified(&self) -> bool {
        self.certificate.iter().all(|c| c.expected_mass == c.found_mass)
    }

    pub fn find(&self, field: &LocalField) -> Result<Option<usize>> {
        for (i, l) in self.fields.iter().enumerate() {
            if crate::identify::is_isomorphic(field, l)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// What the enumeration knows about a field beyond its polynomial.
#[derive(Clone, Debug, Default)]
pub struct Hints {
    pub tame_r: Option<u64>,
    pub degree_p: Option<(String, String)>,
}

impl Hints {
    pub fn from_origin(p: u64, origin: &Origin) -> Self {
        match origin {
            Origin::Tame(spec) => Hints { tame_r: Some(spec.r), degree_p: None },
            Origin::DegreeP(spec) => {
                let k = degree_p_ramified(p).into_iter().find(|k| &k.spec == spec);
                Hints { tame_r: None, degree_p: k.map(|k| (k.galois, k.inertia)) }
            }
            _ => Hints::default(),
        }
    }
}

/// A subfield class of a field: which table entry, and how many distinct
/// subfields of the field are isomorphic to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldHit {
    pub degree: usize,
    pub index: usize,
    pub count: usize,
}

fn proper_divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|d| n % d == 0).collect()
}

/// Catalogs for several primes, created on first use.
#[derive(Debug, Default)]
pub struct Catalogs {
    allow_long: bool,
    by_prime: BTreeMap<u64, Catalog>,
}

impl Catalogs {
    pub fn new(allow_long: bool) -> Self {
        Catalogs { allow_long, by_prime: BTreeMap::new() }
    }

    pub fn insert(&mut self, catalog: Catalog) {
        self.by_prime.insert(catalog.p, catalog);
    }

    pub fn get_mut(&mut self, p: u64) -> &mut Catalog {
        let allow_long = self.allow_long;
        self.by_prime.entry(p).or_insert_with(|| Catalog::new(p, allow_long))
    }
}

/// Tables for one prime, built on demand together with the tables of all
/// divisor degrees.
#[derive(Debug)]
pub struct Catalog {
    p: u64,
    allow_long: bool,
    tables: BTreeMap<usize, Table>,
    checkpoints: Option<std::path::PathBuf>,
}

impl Catalog {
    pub fn new(p: u64, allow_long: bool) -> Self {
        Catalog { p, allow_long, tables: BTreeMap::new(), checkpoints: None }
    }

    /// Record finished wild strata of long tables under `dir`, and resume
    /// from them.
    pub fn with_checkpoints(mut self, dir: impl Into<std::path::PathBuf>) -> Self {
        self.checkpoints = Some(dir.into());
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn get(&self, n: usize) -> Option<&Table> {
        self.tables.get(&n)
    }

    pub fn insert(&mut self, table: Table) {
        self.tables.insert(table.n, table);
    }

    pub fn can_generate(&self, n: usize) -> bool {
        (1..=9).contains(&n) && (self.allow_long || !crate::enumerate::table::is_long(self.p, n))
    }

    /// The table of degree `n`, generating it (and its divisors) if needed.
    pub fn ensure(&mut self, n: usize) -> Result<&Table> {
        if !self.tables.contains_key(&n) {
            if !self.can_generate(n) {
                return Err(Error::MissingTable { p: self.p, n: n as u32 });
            }
            self.ensure_divisors(n)?;
            let table = self.build(n)?;
            self.tables.insert(n, table);
        }
        Ok(&self.tables[&n])
    }

    pub fn ensure_divisors(&mut self, n: usize) -> Result<()> {
        for d in proper_divisors(n) {
            self.ensure(d)?;
        }
        Ok(())
    }

    fn build(&self, n: usize) -> Result<Table> {
        let mut checkpoint = match &self.checkpoints {
            Some(dir) if crate::enumerate::table::is_long(self.p, n) => {
                Some(store::Checkpoint::open(dir.join(format!("K{}_{n}.checkpoint", self.p)))?)
            }
            _ => None,
        };
        let generated = match checkpoint.as_mut() {
            Some(ck) => generate_with(self.p, n, self.allow_long, ck)?,
            None => generate(self.p, n, self.allow_long)?,
        };
        let mut rows = Vec::with_capacity(generated.fields.len());
        for g in generated.fields {
            let hints = Hints::from_origin(self.p, &g.origin);
            let entry = self.analyze(&g.field, g.automorphisms, &hints)?;
            rows.push((entry, g.field));
        }
        rows.sort_by(|a, b| entry_order(&a.0, &b.0));
        let (entries, fields) = rows.into_iter().unzip();
        if let Some(ck) = checkpoint {
            ck.finish()?;
        }
        Ok(Table { p: self.p, n, entries, fields, certificate: generated.certificate })
    }

    /// Subfield classes of `field`, from the tables of its proper divisor
    /// degrees (which must be present).
    pub fn subfields(&self, field: &LocalField) -> Result<Vec<SubfieldHit>> {
        let n = field.degree();
        let mut out = Vec::new();
        for d in proper_divisors(n) {
            let table = self.get(d).ok_or(Error::MissingTable { p: self.p, n: d as u32 })?;
            for (i, (entry, l)) in table.entries.iter().zip(&table.fields).enumerate() {
                // a subfield's residue degree and ramification divide ours,
                // and its discriminant exponent, scaled, is a lower bound
                if field.e() % entry.e != 0 || field.f() % entry.f != 0 || (n / d) as u32 * entry.c > field.c() {
                    continue;
                }
                let roots = field.count_roots(l.poly())?;
                if roots > 0 {
                    out.push(SubfieldHit { degree: d, index: i, count: roots / entry.aut });
                }
            }
        }
        Ok(out)
    }

    fn hit(&self, h: &SubfieldHit) -> &LocalFieldEntry {
        &self.tables[&h.degree].entries[h.index]
    }

    pub fn subfield_refs(&self, hits: &[SubfieldHit]) -> Vec<SubfieldRef> {
        hits.iter()
            .map(|h| {
                let s = self.hit(h);
                if h.degree == 2 {
                    SubfieldRef::Quadratic(s.d)
                } else if s.e == 1 {
                    SubfieldRef::Unramified(h.degree)
                } else {
                    SubfieldRef::Poly(s.poly.clone())
                }
            })
            .collect()
    }

    /// `(degree, c)` along each maximal nested chain of distinguished
    /// subfields. Distinguished subfields of coprime degrees need not be
    /// nested (a ramified quadratic beside an unramified cubic), so there may
    /// be several.
    pub fn distinguished_chains(&self, field: &LocalField, hits: &[SubfieldHit]) -> Result<Vec<Vec<(u64, u32)>>> {
        let mut nodes: Vec<&SubfieldHit> = Vec::new();
        for d in proper_divisors(field.degree()) {
            let at: Vec<&SubfieldHit> = hits.iter().filter(|h| h.degree == d).collect();
            if let Some(min) = at.iter().map(|h| self.hit(h).c).min() {
                let tied: Vec<&&SubfieldHit> = at.iter().filter(|h| self.hit(h).c == min).collect();
                if tied.len() == 1 && tied[0].count == 1 {
                    nodes.push(tied[0]);
                }
            }
        }
        // below[j]: nodes contained in node j
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (j, b) in nodes.iter().enumerate() {
            let lb = &self.tables[&b.degree].fields[b.index];
            for (i, a) in nodes.iter().enumerate() {
                if a.degree > 1 && b.degree % a.degree == 0 && a.degree < b.degree && lb.count_roots(&self.hit(a).poly)? > 0 {
                    below[j].push(i);
                }
            }
        }
        // every node lies in the field; grow chains downward from the top
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(chain) = stack.pop() {
            let candidates: Vec<usize> = match chain.last() {
                None => (0..nodes.len()).filter(|&i| nodes[i].degree > 1).collect(),
                Some(&top) => below[top].clone(),
            };
            if candidates.is_empty() {
                chains.push(chain);
            } else {
                for i in candidates {
                    let mut c = chain.clone();
                    c.push(i);
                    stack.push(c);
                }
            }
        }
        let is_sub = |a: &Vec<usize>, b: &Vec<usize>| a.len() < b.len() && a.iter().all(|x| b.contains(x));
        let maximal: Vec<&Vec<usize>> =
            chains.iter().filter(|a| !chains.iter().any(|b| is_sub(a, b))).collect();
        let mut out: Vec<Vec<(u64, u32)>> = maximal
            .into_iter()
            .map(|c| {
                let mut v = vec![(1u64, 0u32)];
                v.extend(c.iter().rev().map(|&i| (nodes[i].degree as u64, self.hit(nodes[i]).c)));
                if field.degree() > 1 {
                    v.push((field.degree() as u64, field.c()));
                }
                v
            })
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Full analysis of a field whose divisor tables are loaded.
    pub fn analyze(&self, field: &LocalField, aut: usize, hints: &Hints) -> Result<LocalFieldEntry> {
        let p = self.p;
        let (n, e, f, c) = (field.degree(), field.e(), field.f(), field.c());
        let d = disc_class(field.poly(), p)?;
        let hits = self.subfields(field)?;
        // a chain step mixing slopes shows up as a decrease; such chains
        // say nothing, but at least one must survive
        let chains = self.distinguished_chains(field, &hits)?;
        let increasing: Vec<&Vec<(u64, u32)>> =
            chains.iter().filter(|c| is_weakly_increasing(&chain_steps(c))).collect();
        if increasing.is_empty() {
            return Err(Error::Inconsistent(format!(
                "no distinguished chain {chains:?} of {} has weakly increasing slopes",
                intpoly::to_string(field.poly())
            )));
        }
        let mut slopes = Vec::new();
        for chain in increasing {
            slopes = merge_max(&slopes, &visible_slopes(chain, p));
        }
        for h in &hits {
            slopes = merge_max(&slopes, &self.hit(h).slopes.slopes);
        }
        let quadratic: Vec<DiscClass> = hits.iter().filter(|h| h.degree == 2).map(|h| self.hit(h).d).collect();
        let cubic_auts: Vec<usize> = hits
            .iter()
            .filter(|h| h.degree == 3)
            .flat_map(|h| std::iter::repeat(self.hit(h).aut).take(h.count))
            .collect();
        let mut wild_slopes = None;
        if p == 2 && n == 4 && e > 1 && !d.is_square() && aut == 2 && quadratic.len() == 1 {
            let closure = d4_closure_chain(c, quadratic[0], d);
            if !is_weakly_increasing(&chain_steps(&closure)) {
                return Err(Error::Inconsistent(format!("closure chain {closure:?} has decreasing slopes")));
            }
            slopes = merge_max(&slopes, &visible_slopes(&closure, 2));
            wild_slopes = Some(slopes.len());
        }
        let t_vis = visible_tame_degree(e as u64, &slopes, p);
        let galois = galois_group(&GaloisInput {
            p,
            e,
            f,
            d,
            aut,
            quadratic: &quadratic,
            cubic_auts: &cubic_auts,
            tame_r: hints.tame_r,
            degree_p: hints.degree_p.as_ref().map(|(g, i)| (g.as_str(), i.as_str())),
            wild_slopes,
            t_vis,
        });
        let exact = if e as u64 % p != 0 {
            slopes.is_empty()
        } else if let Some(io) = galois.as_ref().and_then(|g| g.inertia_order()) {
            slopes.len() as u32 == vp(io, p)
        } else if matches!(galois.as_ref().map(|g| g.group.as_str()), Some("T10" | "T13")) {
            // no normal subgroup of order 3: wild inertia is C3^2 and its
            // single slope is doubled
            let distinct = SlopeContent { slopes: slopes.clone(), t_vis, f: f as u32, exact: false }.grouped();
            if distinct.len() == 1 && slopes.len() == 1 {
                slopes.push(slopes[0].clone());
            }
            distinct.len() == 1
        } else if aut == n {
            slopes.len() as u32 == vp(e as u64, p)
        } else {
            false
        };
        let t = galois.as_ref().and_then(|g| g.t);
        let gms_value = match (exact, t) {
            (true, Some(t)) => Gms::Exact(gms(&slopes, t, p)),
            _ => Gms::AtLeast(gms(&slopes, t.unwrap_or(t_vis).max(t_vis), p)),
        };
        Ok(LocalFieldEntry {
            p,
            n,
            poly: field.poly().clone(),
            c,
            e,
            f,
            d,
            aut,
            galois,
            slopes: SlopeContent { slopes, t_vis, f: f as u32, exact },
            gms: gms_value,
            subfields: self.subfield_refs(&hits),
        })
    }
}

fn vp(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Distinguished chain of the octic normal closure of a 2-adic `D_4`
/// quartic `K` with quadratic subfield `Q_2(√a)` and discriminant class `d`.
///
/// With `ρ` the 2-dimensional representation, `c(K) = c(a) + c(ρ)`; the
/// other quartics are the conjugate of `K`, the twin (`c(d) + c(ρ)`, also
/// with a conjugate) and the biquadratic field (`c(a) + c(d) + c(ad)`), and
/// the closure has `c(a) + c(d) + c(ad) + 2c(ρ)`.
pub fn d4_closure_chain(c_k: u32, a: DiscClass, d: DiscClass) -> Vec<(u64, u32)> {
    let ad = a.mul(&d);
    let (ca, cd, cad) = (a.quadratic_c(), d.quadratic_c(), ad.quadratic_c());
    let rho = c_k - ca;
    let biquadratic = ca + cd + cad;
    let mut chain = vec![(1, 0)];
    let quads = [ca, cd, cad];
    let qmin = *quads.iter().min().unwrap();
    if quads.iter().filter(|&&x| x == qmin).count() == 1 {
        chain.push((2, qmin));
    }
    if biquadratic < c_k.min(cd + rho) {
        chain.push((4, biquadratic));
    }
    chain.push((8, biquadratic + 2 * rho));
    chain
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn d4_closures() {
        let k = |s: &str| DiscClass::parse(s, 2).unwrap();
        // x^4 + 2x^2 + 4x + 4 and x^4 - 5: slopes 2, 2
        assert_eq!(visible_slopes(&d4_closure_chain(4, k("*"), k("-1")), 2), vec![q(2, 1), q(2, 1)]);
        assert_eq!(visible_slopes(&d4_closure_chain(4, k("*"), k("-*")), 2), vec![q(2, 1), q(2, 1)]);
        // x^4 + 2x^2 - 4: slopes 3, 2
        assert_eq!(visible_slopes(&d4_closure_chain(6, k("*"), k("-1")), 2), vec![q(3, 1), q(2, 1)]);
    }

    #[test]
    fn quartics_over_q2() {
        let mut cat = Catalog::new(2, false);
        let t = cat.ensure(4).unwrap();
        assert_eq!(t.entries.len(), 59);
        for entry in &t.entries {
            assert!(entry.gms.value() >= &entry.root_disc(), "{entry:?}");
            if let Some(g) = &entry.galois {
                if entry.slopes.exact {
                    let io = g.inertia_order().unwrap();
                    assert_eq!(entry.slopes.slopes.len() as u32, vp(io, 2), "{entry:?}");
                }
            }
        }
        let low: Vec<_> = t.entries.iter().filter(|e| e.c <= 4).collect();
        assert_eq!(low.len(), 6);
        for e in low {
            eprintln!(
                "{} {} {} {} {} {:?} {:?} {:?} {}",
                e.c,
                e.e,
                e.f,
                e.d,
                intpoly::to_string(&e.poly),
                e.galois,
                e.slopes.slopes,
                e.subfields.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                e.gms
            );
        }
    }
}
