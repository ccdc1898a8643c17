use clap::{Args, Parser, Subcommand};
use localfields::catalog::render::{align, cells, HEADER};
use localfields::catalog::store::{parse_poly, Store, TableFile};
use localfields::catalog::verify::verify;
use localfields::catalog::{Catalog, Catalogs, LocalFieldEntry};
use localfields::grd::{grd_bounds, power_product, power_product_decimal};
use localfields::identify::split_algebra;
use localfields::Error;
use std::path::PathBuf;
use std::process::ExitCode;

/// Tables of p-adic fields: generation, lookup, identification and Galois
/// root discriminant bounds.
#[derive(Parser)]
#[command(name = "padicdb", version)]
struct Cli {
    /// Table directory (default: $PADICDB_DIR, else ./padicdb).
    #[arg(long, global = true)]
    store: Option<PathBuf>,
    /// Permit the long computations K(2,8) and K(3,9).
    #[arg(long, global = true)]
    allow_long: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pn {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generate K(p, n) and write its table file.
    Gen {
        #[command(flatten)]
        pn: Pn,
        /// Output directory, overriding the store.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the entries of a stored table.
    List {
        #[command(flatten)]
        pn: Pn,
        /// Comma-separated conditions such as c=4,e=2,G=D4.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Split Q_p[x]/F into fields and look each one up.
    Identify {
        #[arg(long)]
        p: u64,
        /// Ascending coefficients "c0,c1,...,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Bounds on the Galois root discriminant of F.
    Grd {
        /// Ascending coefficients "c0,c1,...,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Primes to examine instead of those dividing disc F.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Do not discard factors that embed in other factors.
        #[arg(long)]
        no_containment: bool,
    },
    /// Recompute every invariant and certificate of a stored table.
    Verify {
        #[command(flatten)]
        pn: Pn,
    },
}

mod code {
    pub const FAILED: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const MISSING_TABLE: u8 = 4;
    pub const PRECISION: u8 = 5;
    pub const CERTIFICATE: u8 = 6;
    pub const IO: u8 = 7;
    pub const UNSUPPORTED: u8 = 8;
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) | Error::NotSquarefree => code::PARSE,
        Error::MissingTable { .. } => code::MISSING_TABLE,
        Error::PrecisionExhausted(_) | Error::UncertainZero(_) | Error::RootShiftCap(_) => code::PRECISION,
        Error::StratumIncomplete { .. } | Error::MassOvershoot { .. } | Error::Inconsistent(_) => code::CERTIFICATE,
        Error::Io(_) => code::IO,
        Error::Unsupported(_) => code::UNSUPPORTED,
        _ => code::FAILED,
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_prime(p: u64) -> Result<(), Error> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// A catalog holding every table of `p` present in the store.
fn stored_catalog(store: &Store, p: u64, allow_long: bool) -> Result<Catalog, Error> {
    let mut cat = Catalog::new(p, allow_long).with_checkpoints(store.dir());
    for n in 1..=9 {
        if let Some(file) = store.load(p, n)? {
            cat.insert(file.into_table()?);
        }
    }
    Ok(cat)
}

fn load(store: &Store, p: u64, n: usize) -> Result<TableFile, Error> {
    store.load(p, n)?.ok_or(Error::MissingTable { p, n: n as u32 })
}

fn matches(e: &LocalFieldEntry, filter: &[(String, String)]) -> Result<bool, Error> {
    for (k, v) in filter {
        let actual = match k.as_str() {
            "c" => e.c.to_string(),
            "e" => e.e.to_string(),
            "f" => e.f.to_string(),
            "d" => e.d.to_string(),
            "aut" => e.aut.to_string(),
            "G" => e.galois.as_ref().map_or("?".into(), |g| g.group.clone()),
            "I" => e.galois.as_ref().and_then(|g| g.inertia.clone()).unwrap_or_else(|| "?".into()),
            "gms" | "GMS" => e.gms.to_string(),
            _ => return Err(Error::Parse(format!("unknown filter key {k:?}"))),
        };
        if &actual != v {
            return Ok(false);
        }
    }
    Ok(true)
}

fn parse_filter(s: &str) -> Result<Vec<(String, String)>, Error> {
    s.split(',')
        .filter(|c| !c.is_empty())
        .map(|c| {
            c.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("filter condition {c:?} is not key=value")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, Error> {
    let store = cli.store.clone().map_or_else(Store::from_env, Store::new);
    match cli.command {
        Command::Gen { pn, out } => {
            check_prime(pn.p)?;
            let store = out.map_or(store, Store::new);
            let mut cat = Catalog::new(pn.p, cli.allow_long).with_checkpoints(store.dir());
            let table = cat.ensure(pn.n)?;
            let file = TableFile::from_table(table, cli.allow_long);
            let path = store.save(&file)?;
            println!("K({},{}): {} fields -> {}", pn.p, pn.n, file.entries.len(), path.display());
            for c in &file.certificate {
                println!(
                    "  e={} f={} c={}: {} fields, mass {} of {}",
                    c.e, c.f, c.c, c.fields, c.found_mass, c.expected_mass
                );
            }
            Ok(if file.is_certified() { 0 } else { code::CERTIFICATE })
        }
        Command::List { pn, filter } => {
            let file = load(&store, pn.p, pn.n)?;
            let filter = parse_filter(filter.as_deref().unwrap_or(""))?;
            let mut rows = Vec::new();
            for e in &file.entries {
                if matches(e, &filter)? {
                    rows.push(cells(e));
                }
            }
            print!("{}", align(&HEADER, &rows));
            println!("{} of {} entries", rows.len(), file.entries.len());
            Ok(0)
        }
        Command::Identify { p, poly } => {
            check_prime(p)?;
            let f = parse_poly(&poly)?;
            let mut cat = stored_catalog(&store, p, cli.allow_long)?;
            let r = split_algebra(&f, &mut cat)?;
            let mut header = vec!["n", "mult", "from"];
            header.extend(HEADER);
            let mut rows = Vec::new();
            for m in &r.matched {
                let mut row = vec![m.entry.n.to_string(), m.multiplicity.to_string(), "table".into()];
                row.extend(cells(&m.entry));
                rows.push(row);
            }
            for u in &r.unmatched {
                let mut row = vec![u.degree.to_string(), "1".into()];
                match &u.entry {
                    Some(e) => {
                        row.push("computed".into());
                        row.extend(cells(e));
                    }
                    None => {
                        row.push(if u.irreducible { "unanalyzed" } else { "unsplit" }.into());
                        row.extend(std::iter::repeat("?".to_string()).take(HEADER.len()));
                    }
                }
                rows.push(row);
            }
            println!("p = {p}, factor degrees {:?}", r.shape());
            print!("{}", align(&header, &rows));
            Ok(0)
        }
        Command::Grd { poly, primes, no_containment } => {
            let f = parse_poly(&poly)?;
            if let Some(ps) = &primes {
                ps.iter().try_for_each(|&p| check_prime(p))?;
            }
            let mut cats = Catalogs::new(cli.allow_long);
            for p in primes.clone().unwrap_or_default() {
                cats.insert(stored_catalog(&store, p, cli.allow_long)?);
            }
            let g = grd_bounds(&f, &mut cats, primes.as_deref(), !no_containment)?;
            let rows: Vec<Vec<String>> = g
                .primes
                .iter()
                .map(|b| {
                    let lo = [(b.p, b.beta.lo.clone())];
                    let hi = match &b.beta.hi {
                        Some(h) => power_product_decimal(&[(b.p, h.clone())], 4),
                        None => "∞".into(),
                    };
                    let mut notes = Vec::new();
                    if b.used_containment {
                        notes.push("containment used".to_string());
                    }
                    if let Some(n) = &b.note {
                        notes.push(n.clone());
                    }
                    vec![
                        b.p.to_string(),
                        b.c.to_string(),
                        format!("{:?}", b.shape),
                        b.beta.to_string(),
                        format!("{} .. {hi}", power_product_decimal(&lo, 4)),
                        notes.join("; "),
                    ]
                })
                .collect();
            print!("{}", align(&["p", "c", "factors", "beta", "p^beta", "notes"], &rows));
            println!("GRD {g}");
            let lo = g.lo_exponents();
            println!("lower {} = {}", power_product(&lo), power_product_decimal(&lo, 4));
            if let Some(u) = &g.unfactored {
                println!("unfactored part of disc F: {u}");
            }
            Ok(0)
        }
        Command::Verify { pn } => {
            let file = load(&store, pn.p, pn.n)?;
            let mut cat = stored_catalog(&store, pn.p, cli.allow_long)?;
            let problems = verify(&file, &mut cat)?;
            for m in &problems {
                println!("FAIL {m}");
            }
            println!(
                "K({},{}): {} entries, {} problem(s)",
                pn.p,
                pn.n,
                file.entries.len(),
                problems.len()
            );
            Ok(if problems.is_empty() { 0 } else { code::FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("padicdb: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
