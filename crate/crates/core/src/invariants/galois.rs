//! Galois group of the normal closure, its inertia subgroup and the tame
//! degree `t = |I/I_w|`, from data already computed for the field: the
//! discriminant class, `|Aut(K)|`, the subfield lattice and slopes.

use super::disc::DiscClass;
use crate::enumerate::cp_cd_label;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisData {
    /// Group label; an unresolved case lists its candidates joined by `/`.
    pub group: String,
    pub inertia: Option<String>,
    /// `|I/I_w|` when determined.
    pub t: Option<u64>,
    pub order: Option<u64>,
}

impl GaloisData {
    fn known(group: &str, inertia: &str, t: u64, order: u64) -> Self {
        GaloisData { group: group.into(), inertia: Some(inertia.into()), t: Some(t), order: Some(order) }
    }

    pub fn is_ambiguous(&self) -> bool {
        self.group.contains('/')
    }

    /// `|I|`, when the inertia group is named.
    pub fn inertia_order(&self) -> Option<u64> {
        self.inertia.as_deref().and_then(label_order)
    }
}

/// Order of a group given by one of the labels used in the tables.
pub fn label_order(label: &str) -> Option<u64> {
    match label {
        "<e>" | "C1" => return Some(1),
        "V4" => return Some(4),
        "D4" => return Some(8),
        "A4" => return Some(12),
        "S4" => return Some(24),
        "S3" => return Some(6),
        "F5" => return Some(20),
        _ => {}
    }
    if let Some((a, b)) = label.split_once('.') {
        return Some(label_order(a)? * label_order(b)?);
    }
    if let Some(k) = label.strip_prefix('C') {
        return k.parse().ok();
    }
    if let Some(k) = label.strip_prefix('D') {
        return k.parse::<u64>().ok().map(|k| 2 * k);
    }
    if let Some(k) = label.strip_prefix('T') {
        let k: usize = k.parse().ok()?;
        return SEXTICS.iter().find(|r| r.t == k).map(|r| r.order);
    }
    None
}

/// A transitive subgroup of `S_6` (solvable ones only) with the invariants
/// of the corresponding sextic field: the field has `quadratic` quadratic
/// subfields and `cubic` cubic subfields, each with `cubic_aut`
/// automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SexticRow {
    pub t: usize,
    pub order: u64,
    pub even: bool,
    pub aut: usize,
    pub quadratic: usize,
    pub cubic: usize,
    pub cubic_aut: usize,
}

const fn row(t: usize, order: u64, even: bool, aut: usize, quadratic: usize, cubic: usize, cubic_aut: usize) -> SexticRow {
    SexticRow { t, order, even, aut, quadratic, cubic, cubic_aut }
}

pub const SEXTICS: [SexticRow; 12] = [
    row(1, 6, false, 6, 1, 1, 3),
    row(2, 6, false, 6, 1, 3, 1),
    row(3, 12, false, 2, 1, 1, 1),
    row(4, 12, true, 2, 0, 1, 3),
    row(5, 18, false, 3, 1, 0, 0),
    row(6, 24, false, 2, 0, 1, 3),
    row(7, 24, true, 2, 0, 1, 1),
    row(8, 24, false, 2, 0, 1, 1),
    row(9, 36, false, 1, 1, 0, 0),
    row(10, 36, true, 1, 1, 0, 0),
    row(11, 48, false, 2, 0, 1, 1),
    row(13, 72, false, 1, 1, 0, 0),
];

/// Rows compatible with the parity, `|Aut|` and subfield data of a sextic.
pub fn sextic_candidates(even: bool, aut: usize, quadratic: usize, cubic_auts: &[usize]) -> Vec<SexticRow> {
    SEXTICS
        .iter()
        .filter(|r| r.even == even && r.aut == aut && r.quadratic == quadratic && r.cubic == cubic_auts.len())
        .filter(|r| cubic_auts.iter().all(|&a| a == r.cubic_aut))
        .copied()
        .collect()
}

/// Residue degree `m` of the normal closure of `U_f(π)`, `π^e = α^r p`:
/// the least multiple of `f` with `μ_e ⊂ U_m` and `α^{r(p-1)}` an `e`-th
/// power there.
pub fn tame_closure_degree(p: u64, e: u64, f: u64, r: u64) -> u64 {
    let mut m = f;
    loop {
        let q = (p as u128).pow(m as u32) - 1;
        let qf = (p as u128).pow(f as u32) - 1;
        if q % e as u128 == 0 && (r as u128 * (p as u128 - 1) * (q / qf)) % e as u128 == 0 {
            return m;
        }
        m += f;
    }
}

fn prime_to_p(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

/// Everything the decision procedure looks at.
#[derive(Clone, Debug)]
pub struct GaloisInput<'a> {
    pub p: u64,
    pub e: usize,
    pub f: usize,
    pub d: DiscClass,
    pub aut: usize,
    /// Quadratic subfields by square class.
    pub quadratic: &'a [DiscClass],
    /// `|Aut|` of every cubic subfield, one entry per subfield.
    pub cubic_auts: &'a [usize],
    /// `r` of the tame recipe, for tamely ramified fields.
    pub tame_r: Option<u64>,
    /// Group and inertia labels of a ramified degree-`p` field.
    pub degree_p: Option<(&'a str, &'a str)>,
    /// Wild slope count, when certified by the closure computation.
    pub wild_slopes: Option<usize>,
    /// Visible tame degree.
    pub t_vis: u64,
}

fn low_degree_label(n: usize, even: bool, aut: usize) -> Option<&'static str> {
    Some(match (n, even, aut) {
        (2, _, _) => "C2",
        (3, true, _) => "C3",
        (3, false, _) => "S3",
        (4, false, 4) => "C4",
        (4, true, 4) => "V4",
        (4, false, 2) => "D4",
        (4, true, 1) => "A4",
        (4, false, 1) => "S4",
        (5, true, 5) => "C5",
        (5, true, 1) => "D5",
        (5, false, 1) => "F5",
        _ => return None,
    })
}

fn sextic_label(input: &GaloisInput, even: bool) -> Option<(String, u64)> {
    let mut cands = sextic_candidates(even, input.aut, input.quadratic.len(), input.cubic_auts);
    if cands.len() > 1 && input.t_vis % 4 == 0 {
        // |I/I_w| = 4 rules out S3 × S3, whose tame quotient has order 2
        cands.retain(|r| r.t != 9);
    }
    match cands.as_slice() {
        [] => None,
        [r] => Some((format!("T{}", r.t), r.order)),
        rs => Some((rs.iter().map(|r| format!("T{}", r.t)).collect::<Vec<_>>().join("/"), 0)),
    }
}

/// Inertia of a Galois field of degree `n` with ramification index `e`.
fn galois_field_inertia(group: &str, e: usize) -> String {
    match (group, e) {
        (_, 1) => "<e>".into(),
        ("V4", 4) => "V4".into(),
        ("T2", 6) => "S3".into(),
        _ => format!("C{e}"),
    }
}

pub fn galois_group(input: &GaloisInput) -> Option<GaloisData> {
    let (p, e, f) = (input.p, input.e, input.f);
    let n = e * f;
    let even = input.d.is_square();
    if n == 1 {
        return Some(GaloisData::known("C1", "<e>", 1, 1));
    }
    if e == 1 {
        return Some(GaloisData::known(&format!("C{n}"), "<e>", 1, n as u64));
    }
    if let Some((g, i)) = input.degree_p {
        let order = label_order(g)?;
        let io = label_order(i)?;
        return Some(GaloisData::known(g, i, io / p, order));
    }
    if e as u64 % p != 0 {
        // tame: the closure is U_m(π) with cyclic inertia of order e
        let r = input.tame_r?;
        let m = tame_closure_degree(p, e as u64, f as u64, r);
        let order = e as u64 * m;
        let inertia = format!("C{e}");
        let group = match n {
            2..=5 => low_degree_label(n, even, input.aut)?.to_string(),
            6 => sextic_label(input, even)?.0,
            7 => cp_cd_label(7, m),
            _ if m == 1 => format!("C{e}"),
            _ => format!("C{e}.C{m}"),
        };
        return Some(GaloisData { group, inertia: Some(inertia), t: Some(e as u64), order: Some(order) });
    }
    // wildly ramified
    match n {
        4 => {
            let g = low_degree_label(4, even, input.aut)?;
            let (inertia, t) = match g {
                "C4" | "V4" => (galois_field_inertia(g, e), 1),
                "A4" => ("V4".into(), 1),
                "S4" => ("A4".into(), 3),
                _ => {
                    let m = input.wild_slopes?;
                    let label = match m {
                        1 => "C2",
                        3 => "D4",
                        _ => {
                            // the fixed field of I is the unramified quadratic;
                            // it is Q_2(√d), the quadratic subfield of K, or the third one
                            let unram_a = input.quadratic.iter().any(|a| a.is_unramified_nonsquare());
                            if unram_a || input.d.is_unramified_nonsquare() {
                                "V4"
                            } else {
                                "C4"
                            }
                        }
                    };
                    (label.into(), 1)
                }
            };
            Some(GaloisData::known(g, &inertia, t, label_order(g)?))
        }
        6 => {
            let (group, order) = sextic_label(input, even)?;
            let mut data = GaloisData { group, inertia: None, t: None, order: (order > 0).then_some(order) };
            match data.group.as_str() {
                "T1" | "T2" => {
                    let i = galois_field_inertia(&data.group, e);
                    data.t = Some(prime_to_p(e as u64, p));
                    data.inertia = Some(i);
                }
                // C3^2.D4: the tame quotient of inertia is cyclic of order 4
                "T13" => data.t = Some(4),
                "T10" if input.t_vis % 4 == 0 => data.t = Some(4),
                _ => {}
            }
            Some(data)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ff::powp;
    use std::collections::{BTreeSet, HashSet};

    fn mult_order(a: u64, n: u64) -> u64 {
        (1..=n).find(|&k| powp(a % n, k, n) == 1).unwrap()
    }

    type Perm = [u8; 6];

    fn compose(a: &Perm, b: &Perm) -> Perm {
        // apply b, then a
        let mut out = [0u8; 6];
        for i in 0..6 {
            out[i] = a[b[i] as usize];
        }
        out
    }

    fn inverse(a: &Perm) -> Perm {
        let mut out = [0u8; 6];
        for i in 0..6 {
            out[a[i] as usize] = i as u8;
        }
        out
    }

    fn from_cycles(cycles: &[&[u8]]) -> Perm {
        let mut out = [0, 1, 2, 3, 4, 5];
        for c in cycles {
            for i in 0..c.len() {
                out[c[i] as usize] = c[(i + 1) % c.len()];
            }
        }
        out
    }

    fn generate(gens: &[Perm]) -> Vec<Perm> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = [0, 1, 2, 3, 4, 5];
        let mut stack = vec![id];
        seen.insert(id);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = compose(g, &x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn is_even(a: &Perm) -> bool {
        let mut seen = [false; 6];
        let mut transpositions = 0;
        for i in 0..6 {
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = a[j] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    fn block_systems(g: &[Perm], size: usize) -> Vec<BTreeSet<BTreeSet<u8>>> {
        let mut out = Vec::new();
        let others: Vec<u8> = (1..6).collect();
        let mut subsets: Vec<Vec<u8>> = vec![vec![]];
        for &x in &others {
            let more: Vec<Vec<u8>> = subsets.iter().map(|s| [s.clone(), vec![x]].concat()).collect();
            subsets.extend(more);
        }
        for s in subsets.into_iter().filter(|s| s.len() == size - 1) {
            let block: BTreeSet<u8> = std::iter::once(0).chain(s).collect();
            let images: BTreeSet<BTreeSet<u8>> =
                g.iter().map(|a| block.iter().map(|&i| a[i as usize]).collect()).collect();
            let disjoint = images.iter().all(|x| images.iter().all(|y| x == y || x.is_disjoint(y)));
            if disjoint && !out.contains(&images) {
                out.push(images);
            }
        }
        out
    }

    /// Recompute a row from generators.
    fn row_of(t: usize, gens: &[&[&[u8]]]) -> SexticRow {
        let gens: Vec<Perm> = gens.iter().map(|c| from_cycles(c)).collect();
        let g = generate(&gens);
        let h: Vec<Perm> = g.iter().filter(|a| a[0] == 0).copied().collect();
        let hs: HashSet<Perm> = h.iter().copied().collect();
        let normalizer = g
            .iter()
            .filter(|x| h.iter().all(|y| hs.contains(&compose(&compose(x, y), &inverse(x)))))
            .count();
        let cubics = block_systems(&g, 2);
        let quadratics = block_systems(&g, 3);
        let cubic_aut = cubics
            .first()
            .map(|blocks| {
                let blocks: Vec<&BTreeSet<u8>> = blocks.iter().collect();
                let image: HashSet<Vec<usize>> = g
                    .iter()
                    .map(|a| {
                        blocks
                            .iter()
                            .map(|b| {
                                let img: BTreeSet<u8> = b.iter().map(|&i| a[i as usize]).collect();
                                blocks.iter().position(|c| **c == img).unwrap()
                            })
                            .collect()
                    })
                    .collect();
                if image.len() == 3 {
                    3
                } else {
                    1
                }
            })
            .unwrap_or(0);
        SexticRow {
            t,
            order: g.len() as u64,
            even: g.iter().all(is_even),
            aut: normalizer / h.len(),
            quadratic: quadratics.len(),
            cubic: cubics.len(),
            cubic_aut,
        }
    }

    #[test]
    fn sextic_table_matches_permutation_groups() {
        let groups: Vec<(usize, Vec<&[&[u8]]>)> = vec![
            (1, vec![&[&[0, 1, 2, 3, 4, 5]]]),
            (2, vec![&[&[0, 1, 2], &[3, 4, 5]], &[&[0, 3], &[1, 5], &[2, 4]]]),
            (3, vec![&[&[0, 1, 2, 3, 4, 5]], &[&[0, 5], &[1, 4], &[2, 3]]]),
            (4, vec![&[&[0, 4, 5], &[1, 3, 2]], &[&[0, 1, 2], &[3, 5, 4]]]),
            (5, vec![&[&[0, 1, 2]], &[&[3, 4, 5]], &[&[0, 4], &[1, 5], &[2, 3]]]),
            (6, vec![&[&[0, 4, 5], &[1, 3, 2]], &[&[0, 1, 2], &[3, 5, 4]], &[&[2, 4]]]),
            (7, vec![&[&[0, 2, 4, 1], &[3, 5]], &[&[0, 3], &[4, 5]]]),
            (8, vec![&[&[1, 4, 5, 3]], &[&[0, 4], &[1, 5], &[2, 3]]]),
            (9, vec![&[&[0, 1, 2]], &[&[3, 4, 5]], &[&[1, 2], &[3, 5]], &[&[0, 4], &[1, 5], &[2, 3]]]),
            (10, vec![&[&[0, 1, 2]], &[&[3, 4, 5]], &[&[0, 5, 2, 3], &[1, 4]]]),
            (11, vec![&[&[1, 4, 5, 3]], &[&[0, 4], &[1, 5], &[2, 3]], &[&[1, 4], &[3, 5]]]),
            (13, vec![&[&[0, 1, 2]], &[&[0, 4, 1, 3], &[2, 5]], &[&[0, 3], &[1, 4], &[2, 5]]]),
        ];
        for (t, gens) in groups {
            let computed = row_of(t, &gens);
            let stored = SEXTICS.iter().find(|r| r.t == t).unwrap();
            assert_eq!(&computed, stored, "T{t}");
        }
    }

    #[test]
    fn low_degree_table_is_injective() {
        let keys: Vec<(usize, bool, usize)> = vec![
            (4, false, 4),
            (4, true, 4),
            (4, false, 2),
            (4, true, 1),
            (4, false, 1),
            (5, true, 5),
            (5, true, 1),
            (5, false, 1),
        ];
        let labels: HashSet<&str> = keys.iter().map(|&(n, ev, a)| low_degree_label(n, ev, a).unwrap()).collect();
        assert_eq!(labels.len(), keys.len());
    }

    #[test]
    fn sextic_ambiguities() {
        assert_eq!(sextic_candidates(false, 2, 0, &[1]).len(), 2);
        assert_eq!(sextic_candidates(false, 1, 1, &[]).len(), 2);
        assert_eq!(sextic_candidates(true, 2, 0, &[3])[0].t, 4);
        assert_eq!(sextic_candidates(true, 2, 0, &[1])[0].t, 7);
        assert_eq!(sextic_candidates(false, 6, 1, &[1, 1, 1])[0].t, 2);
    }

    #[test]
    fn tame_closures() {
        // x^4 + 3 over Q_3: D4
        assert_eq!(tame_closure_degree(3, 4, 1, 1), 2);
        // degree 7 tame: order of p mod 7
        for p in [2u64, 3, 5, 11, 13, 29] {
            assert_eq!(tame_closure_degree(p, 7, 1, 0), mult_order(p, 7));
        }
        assert_eq!(label_order("C7.C3"), Some(21));
        assert_eq!(label_order("T13"), Some(72));
        assert_eq!(label_order("D5"), Some(10));
    }
}
