//! Plain-text rows in the layout of the printed tables.

use super::LocalFieldEntry;
use crate::padic::intpoly;

pub const HEADER: [&str; 10] = ["c", "e", "f", "d", "Polynomial", "G", "I", "Slopes", "GMS", "Subs"];

/// Slopes smallest first, as printed.
pub fn slopes_cell(e: &LocalFieldEntry) -> String {
    let mut s: Vec<String> = e.slopes.slopes.iter().rev().map(|q| q.to_string()).collect();
    if !e.slopes.exact && !s.is_empty() {
        s.push("…".into());
    }
    format!("[{}]", s.join(", "))
}

pub fn cells(e: &LocalFieldEntry) -> Vec<String> {
    let g = e.galois.as_ref();
    vec![
        e.c.to_string(),
        e.e.to_string(),
        e.f.to_string(),
        e.d.to_string(),
        intpoly::to_string(&e.poly),
        g.map_or("?".into(), |g| g.group.clone()),
        g.and_then(|g| g.inertia.clone()).unwrap_or_else(|| "?".into()),
        slopes_cell(e),
        e.gms.to_string(),
        e.subfields.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
    ]
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
pub fn align(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            s += c;
            if i + 1 < cols {
                s += &" ".repeat(width[i] - c.chars().count() + 2);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}
