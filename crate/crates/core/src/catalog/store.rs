//! Text storage of tables: one tab-separated file per `(p, n)`.
//!
//! ```text
//! PADICDB 1	p=2	n=4	allow_long=0	entries=59
//! cert	e=4	f=1	c=4	fields=1	expected=1/2	found=1/2	tried=1
//! columns	p	n	poly	c	e	f	d	aut	G	I	t	order	slopes	t_vis	exact	gms	subs
//! 2	4	1,1,0,0,1	0	1	4	*	4	C4	<e>	1	4	[]	1	1	0/1	[*]
//! ```
//!
//! Polynomials are ascending coefficient lists, rationals are always `a/b`,
//! absent values are `?`, and lists are bracketed.

use super::{Gms, LocalFieldEntry, SubfieldRef, Table};
use crate::enumerate::{StratumCache, StratumCertificate, StratumField};
use crate::error::{Error, Result};
use crate::field::ring::UElem;
use crate::field::tower::field_from_poly;
use crate::invariants::{DiscClass, GaloisData, SlopeContent};
use crate::padic::intpoly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const HEADER: &str = "PADICDB 1";
pub const STORE_ENV: &str = "PADICDB_DIR";
const COLUMNS: [&str; 17] = [
    "p", "n", "poly", "c", "e", "f", "d", "aut", "G", "I", "t", "order", "slopes", "t_vis", "exact", "gms", "subs",
];

fn q(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_q(s: &str) -> Result<BigRational> {
    let (a, b) = s.split_once('/').ok_or_else(|| Error::Parse(format!("expected a/b, got {s:?}")))?;
    let a: BigInt = a.parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let b: BigInt = b.parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if b == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(a, b))
}

fn poly_key(g: &[BigInt]) -> String {
    g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Parse `"c0,c1,...,cn"`, ascending.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let g: Vec<BigInt> = s
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {c:?} in {s:?}"))))
        .collect::<Result<_>>()?;
    if g.len() < 2 {
        return Err(Error::Parse(format!("polynomial {s:?} has no positive degree")));
    }
    Ok(g)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "?".into(), |v| v.to_string())
}

fn parse_opt<T: std::str::FromStr>(s: &str) -> Result<Option<T>> {
    if s == "?" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::Parse(format!("bad value {s:?}")))
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn bracketed<'a>(s: &'a str, sep: char) -> Result<Vec<&'a str>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))?;
    Ok(if inner.is_empty() { Vec::new() } else { inner.split(sep).collect() })
}

fn subfield_key(s: &SubfieldRef) -> String {
    match s {
        SubfieldRef::Poly(g) => poly_key(g),
        other => other.to_string(),
    }
}

fn parse_subfield(s: &str, p: u64) -> Result<SubfieldRef> {
    if let Some(d) = s.strip_prefix("U_") {
        return Ok(SubfieldRef::Unramified(num(d, "unramified degree")?));
    }
    if s.contains(',') {
        return Ok(SubfieldRef::Poly(parse_poly(s)?));
    }
    Ok(SubfieldRef::Quadratic(DiscClass::parse(s, p)?))
}

pub fn serialize_entry(e: &LocalFieldEntry) -> String {
    let g = e.galois.as_ref();
    let slopes: Vec<String> = e.slopes.slopes.iter().map(q).collect();
    let subs: Vec<String> = e.subfields.iter().map(subfield_key).collect();
    let gms = match &e.gms {
        Gms::Exact(b) => q(b),
        Gms::AtLeast(b) => format!(">={}", q(b)),
    };
    [
        e.p.to_string(),
        e.n.to_string(),
        poly_key(&e.poly),
        e.c.to_string(),
        e.e.to_string(),
        e.f.to_string(),
        e.d.to_string(),
        e.aut.to_string(),
        g.map_or_else(|| "?".into(), |g| g.group.clone()),
        opt(&g.and_then(|g| g.inertia.clone())),
        opt(&g.and_then(|g| g.t)),
        opt(&g.and_then(|g| g.order)),
        format!("[{}]", slopes.join(",")),
        e.slopes.t_vis.to_string(),
        u8::from(e.slopes.exact).to_string(),
        gms,
        format!("[{}]", subs.join(";")),
    ]
    .join("\t")
}

pub fn parse_entry(line: &str) -> Result<LocalFieldEntry> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != COLUMNS.len() {
        return Err(Error::Parse(format!("expected {} columns, found {}", COLUMNS.len(), cols.len())));
    }
    let p: u64 = num(cols[0], "p")?;
    let f: usize = num(cols[5], "f")?;
    let galois = match cols[8] {
        "?" => None,
        group => Some(GaloisData {
            group: group.to_string(),
            inertia: parse_opt(cols[9])?,
            t: parse_opt(cols[10])?,
            order: parse_opt(cols[11])?,
        }),
    };
    let slopes = bracketed(cols[12], ',')?.into_iter().map(parse_q).collect::<Result<Vec<_>>>()?;
    let exact = match cols[14] {
        "1" => true,
        "0" => false,
        s => return Err(Error::Parse(format!("bad exactness flag {s:?}"))),
    };
    let gms = match cols[15].strip_prefix(">=") {
        Some(b) => Gms::AtLeast(parse_q(b)?),
        None => Gms::Exact(parse_q(cols[15])?),
    };
    let subfields = bracketed(cols[16], ';')?.into_iter().map(|s| parse_subfield(s, p)).collect::<Result<_>>()?;
    Ok(LocalFieldEntry {
        p,
        n: num(cols[1], "n")?,
        poly: parse_poly(cols[2])?,
        c: num(cols[3], "c")?,
        e: num(cols[4], "e")?,
        f,
        d: DiscClass::parse(cols[6], p)?,
        aut: num(cols[7], "aut")?,
        galois,
        slopes: SlopeContent { slopes, t_vis: num(cols[13], "t_vis")?, f: f as u32, exact },
        gms,
        subfields,
    })
}

fn key_value<'a>(col: &'a str, key: &str) -> Result<&'a str> {
    col.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected {key}=..., got {col:?}")))
}

fn serialize_cert(c: &StratumCertificate) -> String {
    format!(
        "cert\te={}\tf={}\tc={}\tfields={}\texpected={}\tfound={}\ttried={}",
        c.e,
        c.f,
        c.c,
        c.fields,
        q(&c.expected_mass),
        q(&c.found_mass),
        c.candidates_tried
    )
}

fn parse_cert(line: &str) -> Result<StratumCertificate> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 8 {
        return Err(Error::Parse(format!("malformed certificate line {line:?}")));
    }
    Ok(StratumCertificate {
        e: num(key_value(cols[1], "e")?, "e")?,
        f: num(key_value(cols[2], "f")?, "f")?,
        c: num(key_value(cols[3], "c")?, "c")?,
        fields: num(key_value(cols[4], "fields")?, "fields")?,
        expected_mass: parse_q(key_value(cols[5], "expected")?)?,
        found_mass: parse_q(key_value(cols[6], "found")?)?,
        candidates_tried: num(key_value(cols[7], "tried")?, "tried")?,
    })
}

/// A table as stored: entries and certificate, without the field towers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub p: u64,
    pub n: usize,
    pub allow_long: bool,
    pub certificate: Vec<StratumCertificate>,
    pub entries: Vec<LocalFieldEntry>,
}

impl TableFile {
    pub fn from_table(t: &Table, allow_long: bool) -> Self {
        TableFile {
            p: t.p,
            n: t.n,
            allow_long,
            certificate: t.certificate.clone(),
            entries: t.entries.clone(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.iter().all(|c| c.expected_mass == c.found_mass)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{HEADER}\tp={}\tn={}\tallow_long={}\tentries={}\n",
            self.p,
            self.n,
            u8::from(self.allow_long),
            self.entries.len()
        );
        for c in &self.certificate {
            s += &serialize_cert(c);
            s.push('\n');
        }
        s += "columns\t";
        s += &COLUMNS.join("\t");
        s.push('\n');
        for e in &self.entries {
            s += &serialize_entry(e);
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap_or("").split('\t').collect();
        if header.first() != Some(&HEADER) || header.len() != 5 {
            return Err(Error::Parse(format!("missing {HEADER:?} header")));
        }
        let p = num(key_value(header[1], "p")?, "p")?;
        let n = num(key_value(header[2], "n")?, "n")?;
        let allow_long = key_value(header[3], "allow_long")? == "1";
        let count: usize = num(key_value(header[4], "entries")?, "entry count")?;
        let mut certificate = Vec::new();
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            let at = |e: Error| Error::Parse(format!("line {}: {e}", i + 2));
            if line.starts_with("cert\t") {
                certificate.push(parse_cert(line).map_err(at)?);
            } else if line.starts_with("columns\t") || line.is_empty() {
                continue;
            } else {
                let e = parse_entry(line).map_err(at)?;
                if e.p != p || e.n != n {
                    return Err(at(Error::Parse(format!("entry for K({},{}) in a K({p},{n}) file", e.p, e.n))));
                }
                entries.push(e);
            }
        }
        if entries.len() != count {
            return Err(Error::Parse(format!("header announces {count} entries, found {}", entries.len())));
        }
        Ok(TableFile { p, n, allow_long, certificate, entries })
    }

    /// Rebuild the field towers so the table can serve lookups.
    pub fn into_table(self) -> Result<Table> {
        let fields = self.entries.iter().map(|e| field_from_poly(&e.poly, self.p)).collect::<Result<_>>()?;
        Ok(Table { p: self.p, n: self.n, entries: self.entries, fields, certificate: self.certificate })
    }
}

/// A directory of table files.
#[derive(Clone, Debug)]
pub struct Store {
    dir: PathBuf,
}

impl Store {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Store { dir: dir.into() }
    }

    /// `$PADICDB_DIR`, or `./padicdb`.
    pub fn from_env() -> Self {
        Store::new(std::env::var_os(STORE_ENV).map_or_else(|| PathBuf::from("padicdb"), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, p: u64, n: usize) -> PathBuf {
        self.dir.join(format!("K{p}_{n}.tsv"))
    }

    /// Write through a temporary file and rename, so readers never see a
    /// partial table.
    pub fn save(&self, t: &TableFile) -> Result<PathBuf> {
        let path = self.path(t.p, t.n);
        write_atomic(&path, &t.to_text())?;
        Ok(path)
    }

    pub fn load(&self, p: u64, n: usize) -> Result<Option<TableFile>> {
        let path = self.path(p, n);
        match fs::read_to_string(&path) {
            Ok(text) => {
                let t = TableFile::parse(&text)?;
                if t.p != p || t.n != n {
                    return Err(Error::Parse(format!("{} holds K({},{})", path.display(), t.p, t.n)));
                }
                Ok(Some(t))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

type Stratum = (Vec<(Vec<UElem>, usize)>, StratumCertificate);

/// Progress file of a long generation: each finished wild stratum with its
/// representatives, rewritten atomically after every stratum.
#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    strata: BTreeMap<(usize, usize, u32), Stratum>,
}

impl Checkpoint {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut strata = BTreeMap::new();
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let mut current: Option<Stratum> = None;
        let flush = |cur: Option<Stratum>, strata: &mut BTreeMap<_, _>| {
            if let Some((reps, cert)) = cur {
                strata.insert((cert.e, cert.f, cert.c / cert.f as u32), (reps, cert));
            }
        };
        for line in text.lines() {
            if line.starts_with("cert\t") {
                flush(current.take(), &mut strata);
                current = Some((Vec::new(), parse_cert(line)?));
            } else if let Some(rest) = line.strip_prefix("rep\t") {
                let (aut, phi) = rest.split_once('\t').ok_or_else(|| Error::Parse(format!("bad checkpoint line {line:?}")))?;
                let phi = phi
                    .split(';')
                    .map(|u| u.split(',').map(|c| num::<BigInt>(c, "coefficient")).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                match current.as_mut() {
                    Some((reps, _)) => reps.push((phi, num(aut, "automorphism count")?)),
                    None => return Err(Error::Parse("checkpoint representative before its stratum".into())),
                }
            }
        }
        flush(current, &mut strata);
        Ok(Checkpoint { path, strata })
    }

    pub fn strata(&self) -> usize {
        self.strata.len()
    }

    fn write(&self) -> Result<()> {
        let mut s = String::new();
        for (reps, cert) in self.strata.values() {
            s += &serialize_cert(cert);
            s.push('\n');
            for (phi, aut) in reps {
                let coeffs: Vec<String> = phi.iter().map(|u| poly_key(u)).collect();
                s += &format!("rep\t{aut}\t{}\n", coeffs.join(";"));
            }
        }
        write_atomic(&self.path, &s)
    }

    /// Drop the progress file once the table itself is saved.
    pub fn finish(self) -> Result<()> {
        match fs::remove_file(&self.path) {
            Err(e) if e.kind() != std::io::ErrorKind::NotFound => Err(e.into()),
            _ => Ok(()),
        }
    }
}

impl StratumCache for Checkpoint {
    fn load(&mut self, e: usize, f: usize, d: u32) -> Result<Option<Stratum>> {
        Ok(self.strata.get(&(e, f, d)).cloned())
    }

    fn store(&mut self, e: usize, f: usize, d: u32, fields: &[StratumField], cert: &StratumCertificate) -> Result<()> {
        let reps = fields.iter().map(|s| (s.phi.clone(), s.automorphisms)).collect();
        self.strata.insert((e, f, d), (reps, cert.clone()));
        self.write()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    #[test]
    fn quartics_over_q2_round_trip() {
        let mut cat = Catalog::new(2, false);
        let table = cat.ensure(4).unwrap();
        let file = TableFile::from_table(table, false);
        let text = file.to_text();
        assert_eq!(TableFile::parse(&text).unwrap(), file);
        let first = text.lines().find(|l| l.starts_with("2\t4\t")).unwrap();
        assert_eq!(first, "2\t4\t1,1,0,0,1\t0\t1\t4\t*\t4\tC4\t<e>\t1\t4\t[]\t1\t1\t0/1\t[*]");
    }

    #[test]
    fn absent_galois_data() {
        let line = "3\t9\t3,0,9,0,0,0,0,0,0,1\t19\t9\t1\t3\t1\t?\t?\t?\t?\t[19/8,19/8]\t8\t0\t>=53/24\t[]";
        let e = parse_entry(line).unwrap();
        assert!(e.galois.is_none());
        assert_eq!(e.gms.to_string(), ">=53/24");
        assert_eq!(serialize_entry(&e), line);
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_entry("2\t4").is_err());
        assert!(parse_poly("1,x,1").is_err());
        assert!(parse_q("3").is_err());
        assert!(TableFile::parse("PADICDB 2\tp=2\tn=4\tallow_long=0\tentries=0\n").is_err());
    }

    #[test]
    fn checkpoints_resume_generation() {
        use crate::enumerate::{generate, generate_with};
        let path = std::env::temp_dir().join(format!("padicdb-ckpt-{}.txt", std::process::id()));
        let mut ck = Checkpoint::open(&path).unwrap();
        let first = generate_with(2, 4, false, &mut ck).unwrap();
        let strata = ck.strata();
        assert!(strata > 0);
        let mut again = Checkpoint::open(&path).unwrap();
        assert_eq!(again.strata(), strata);
        let second = generate_with(2, 4, false, &mut again).unwrap();
        let plain = generate(2, 4, false).unwrap();
        let polys = |t: &crate::enumerate::FieldTable| t.fields.iter().map(|g| g.field.poly().clone()).collect::<Vec<_>>();
        assert_eq!(polys(&first), polys(&plain));
        assert_eq!(polys(&second), polys(&plain));
        assert_eq!(second.certificate, plain.certificate);
        again.finish().unwrap();
        assert!(!path.exists());
    }

    #[test]
    fn store_writes_atomically() {
        let dir = std::env::temp_dir().join(format!("padicdb-store-{}", std::process::id()));
        let store = Store::new(&dir);
        let mut cat = Catalog::new(3, false);
        let file = TableFile::from_table(cat.ensure(2).unwrap(), false);
        let path = store.save(&file).unwrap();
        assert_eq!(store.load(3, 2).unwrap().unwrap(), file);
        assert!(store.load(3, 4).unwrap().is_none());
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        assert!(path.ends_with("K3_2.tsv"));
        let table = store.load(3, 2).unwrap().unwrap().into_table().unwrap();
        assert_eq!(table.fields.len(), 3);
        fs::remove_dir_all(&dir).unwrap();
    }
}
