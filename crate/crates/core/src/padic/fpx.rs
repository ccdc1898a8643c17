//! Dense polynomials over the prime field `F_p` (ascending `u64` coefficients)
//! and their factorization.

use super::ff::{invp, powp};

pub type Fpx = Vec<u64>;

pub fn trim(f: &mut Fpx) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn reduce(f: &[i64], p: u64) -> Fpx {
    let mut r: Fpx = f
        .iter()
        .map(|&c| c.rem_euclid(p as i64) as u64)
        .collect();
    trim(&mut r);
    r
}

pub fn add(f: &[u64], g: &[u64], p: u64) -> Fpx {
    let n = f.len().max(g.len());
    let mut r: Fpx = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn sub(f: &[u64], g: &[u64], p: u64) -> Fpx {
    let n = f.len().max(g.len());
    let mut r: Fpx = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + p - g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn mul(f: &[u64], g: &[u64], p: u64) -> Fpx {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            r[i + j] = ((r[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
        }
    }
    trim(&mut r);
    r
}

pub fn scale(f: &[u64], s: u64, p: u64) -> Fpx {
    let mut r: Fpx = f
        .iter()
        .map(|&c| ((c as u128 * s as u128) % p as u128) as u64)
        .collect();
    trim(&mut r);
    r
}

pub fn divrem(f: &[u64], g: &[u64], p: u64) -> (Fpx, Fpx) {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let li = invp(g[dg], p);
    let mut q = vec![0u64; r.len() - dg];
    while r.len() > dg {
        let d = r.len() - 1;
        let c = ((r[d] as u128 * li as u128) % p as u128) as u64;
        if c != 0 {
            for i in 0..=dg {
                let t = ((c as u128 * g[i] as u128) % p as u128) as u64;
                r[d - dg + i] = (r[d - dg + i] + p - t) % p;
            }
        }
        q[d - dg] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &[u64], g: &[u64], p: u64) -> Fpx {
    divrem(f, g, p).1
}

pub fn monic(f: &[u64], p: u64) -> Fpx {
    match f.last() {
        None => Vec::new(),
        Some(&l) => scale(f, invp(l, p), p),
    }
}

pub fn gcd(f: &[u64], g: &[u64], p: u64) -> Fpx {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s f + t h = g` monic.
pub fn xgcd(f: &[u64], h: &[u64], p: u64) -> (Fpx, Fpx, Fpx) {
    let (mut r0, mut r1) = (f.to_vec(), h.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = invp(*r0.last().unwrap(), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(f: &[u64], p: u64) -> Fpx {
    let mut r: Fpx = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| ((c as u128 * (i as u128 % p as u128)) % p as u128) as u64)
        .collect();
    trim(&mut r);
    r
}

pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Fpx {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Factorization into monic irreducibles with multiplicities, sorted.
pub fn factor(f: &[u64], p: u64) -> Vec<(Fpx, usize)> {
    let f = monic(f, p);
    let mut out: Vec<(Fpx, usize)> = Vec::new();
    squarefree_parts(&f, p, 1, &mut out);
    let mut merged: Vec<(Fpx, usize)> = Vec::new();
    for (g, m) in out {
        if let Some(x) = merged.iter_mut().find(|x| x.0 == g) {
            x.1 += m;
        } else {
            merged.push((g, m));
        }
    }
    merged.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    merged
}

fn squarefree_parts(f: &[u64], p: u64, mult: usize, out: &mut Vec<(Fpx, usize)>) {
    if f.len() <= 1 {
        return;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f = g(x^p), g(x)^p since coefficients are in F_p
        let g: Fpx = f.iter().step_by(p as usize).copied().collect();
        squarefree_parts(&g, p, mult * p as usize, out);
        return;
    }
    let c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut c = c;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        for g in ddf_edf(&z, p) {
            out.push((g, i * mult));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let g: Fpx = c.iter().step_by(p as usize).copied().collect();
        squarefree_parts(&g, p, mult * p as usize, out);
    }
}

fn ddf_edf(f: &[u64], p: u64) -> Vec<Fpx> {
    let mut res = Vec::new();
    let mut f = monic(f, p);
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1;
    while f.len() > 1 {
        if 2 * d > f.len() - 1 {
            res.push(f.clone());
            break;
        }
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            edf(&g, d, p, &mut res);
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
        d += 1;
    }
    res
}

fn edf(f: &[u64], d: usize, p: u64, out: &mut Vec<Fpx>) {
    let n = f.len() - 1;
    if n == d {
        out.push(monic(f, p));
        return;
    }
    let mut seed: u64 = 1;
    loop {
        // deterministic trial polynomials
        let mut a: Fpx = Vec::with_capacity(n);
        let mut s = seed;
        for _ in 0..n {
            a.push(s % p);
            s = s / p + seed.wrapping_mul(2654435761) % 1000003;
        }
        seed += 1;
        trim(&mut a);
        if a.len() <= 1 {
            continue;
        }
        let cand = if p == 2 {
            let mut t = rem(&a, f, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            sub(&powmod(&a, e, f, p), &[1], p)
        };
        let g = gcd(f, &cand, p);
        if g.len() > 1 && g.len() < f.len() {
            let other = divrem(f, &g, p).0;
            edf(&g, d, p, out);
            edf(&other, d, p, out);
            return;
        }
    }
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter()
        .rev()
        .fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
}

pub fn pow_scalar(a: u64, e: u64, p: u64) -> u64 {
    powp(a, e, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(fs: &[(Fpx, usize)], p: u64) -> Fpx {
        let mut r = vec![1u64];
        for (g, m) in fs {
            for _ in 0..*m {
                r = mul(&r, g, p);
            }
        }
        r
    }

    #[test]
    fn factor_roundtrip() {
        let cases: Vec<(Vec<i64>, u64)> = vec![
            (vec![0, 0, 1, 1, 1, 0, 1], 2),
            (vec![1, 0, 0, 0, 1], 2),
            (vec![2, 0, 1, 0, 0, 0, 0, 0, 0, 1], 3),
            (vec![1, 0, 2, 0, 1], 5),
            (vec![4, 4, 1, 0, 1, 1], 7),
        ];
        for (c, p) in cases {
            let f = reduce(&c, p);
            let fs = factor(&f, p);
            assert_eq!(expand(&fs, p), monic(&f, p));
            for (g, _) in &fs {
                assert!(super::super::ff::fp_poly::is_irreducible(g, p));
            }
        }
    }
}
