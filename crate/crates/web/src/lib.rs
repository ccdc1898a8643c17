//! wasm-bindgen entry points for the static demo page in `www/`. Each
//! returns plain text; errors come back as `Err` strings so the page can
//! show them as-is.

use localfields::catalog::render::{align, cells, HEADER};
use localfields::catalog::store::parse_poly;
use localfields::catalog::{Catalog, Catalogs};
use localfields::grd::{grd_bounds, power_product, power_product_decimal};
use localfields::identify::split_algebra;
use localfields::invariants::gms;
use num_rational::BigRational;
use wasm_bindgen::prelude::*;

fn text(e: localfields::Error) -> String {
    e.to_string()
}

/// Split Q_p[x]/F and describe each factor field.
#[wasm_bindgen]
pub fn identify(p: u32, poly: &str) -> Result<String, String> {
    let f = parse_poly(poly).map_err(text)?;
    let r = split_algebra(&f, &mut Catalog::new(p as u64, false)).map_err(text)?;
    let mut rows = Vec::new();
    for m in &r.matched {
        let mut row = vec![m.multiplicity.to_string()];
        row.extend(cells(&m.entry));
        rows.push(row);
    }
    for u in &r.unmatched {
        let mut row = vec!["1".to_string()];
        match &u.entry {
            Some(e) => row.extend(cells(e)),
            None => {
                row.extend(std::iter::repeat("?".to_string()).take(HEADER.len()));
                row[5] = format!("(degree {} unresolved)", u.degree);
            }
        }
        rows.push(row);
    }
    let mut header = vec!["mult"];
    header.extend(HEADER);
    Ok(format!("factor degrees {:?}\n{}", r.shape(), align(&header, &rows)))
}

/// Bounds on the Galois root discriminant of F.
#[wasm_bindgen]
pub fn grd(poly: &str) -> Result<String, String> {
    let f = parse_poly(poly).map_err(text)?;
    let g = grd_bounds(&f, &mut Catalogs::new(false), None, true).map_err(text)?;
    let mut out = String::new();
    for b in &g.primes {
        out += &format!("p = {}: beta {}\n", b.p, b.beta);
    }
    let lo = g.lo_exponents();
    out += &format!("GRD {g}\nlower {} = {}\n", power_product(&lo), power_product_decimal(&lo, 4));
    if let Some(u) = &g.unfactored {
        out += &format!("unfactored part of disc F: {u}\n");
    }
    Ok(out)
}

/// Galois mean slope from wild slopes ("4/3, 4/3"), tame degree and p.
#[wasm_bindgen]
pub fn galois_mean_slope(slopes: &str, t: u32, p: u32) -> Result<String, String> {
    let s = slopes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigRational>().map_err(|_| format!("bad slope {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if t == 0 || p < 2 {
        return Err("need t >= 1 and a prime p".into());
    }
    Ok(gms(&s, t as u64, p as u64).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operations() {
        assert_eq!(galois_mean_slope("19/8, 19/8", 8, 3).unwrap(), "53/24");
        assert!(galois_mean_slope("x", 1, 2).is_err());
        let out = identify(3, "-6,0,1,0,1").unwrap();
        assert!(out.starts_with("factor degrees [2, 2]"), "{out}");
        assert!(grd("-5,0,1").unwrap().contains("GRD 5^{1/2}"));
        assert!(identify(3, "1,x").is_err());
    }
}
