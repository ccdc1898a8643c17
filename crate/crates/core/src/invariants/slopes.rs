//! Wild slope content and the Galois mean slope.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Wild slopes of the Galois closure, each repeated by its multiplicity,
/// largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeContent {
    pub slopes: Vec<BigRational>,
    /// Tame degree read off from the field and its slope denominators; a
    /// lower bound for `|I/I_w|` unless `exact`.
    pub t_vis: u64,
    pub f: u32,
    /// Slopes account for all of the wild inertia group.
    pub exact: bool,
}

impl SlopeContent {
    pub fn unramified(f: u32) -> Self {
        SlopeContent { slopes: Vec::new(), t_vis: 1, f, exact: true }
    }

    /// Distinct slopes with multiplicities, largest first.
    pub fn grouped(&self) -> Vec<(BigRational, usize)> {
        group(&self.slopes)
    }
}

fn group(slopes: &[BigRational]) -> Vec<(BigRational, usize)> {
    let mut out: Vec<(BigRational, usize)> = Vec::new();
    for s in slopes {
        match out.last_mut() {
            Some((t, m)) if t == s => *m += 1,
            _ => out.push((s.clone(), 1)),
        }
    }
    out
}

fn ungroup(mut g: Vec<(BigRational, usize)>) -> Vec<BigRational> {
    g.sort_by(|a, b| b.0.cmp(&a.0));
    g.into_iter().flat_map(|(s, m)| std::iter::repeat(s).take(m)).collect()
}

/// Slope multiset where each slope has the larger of its two multiplicities.
pub fn merge_max(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut g = group(a);
    for (s, m) in group(b) {
        match g.iter_mut().find(|(t, _)| *t == s) {
            Some((_, k)) => *k = (*k).max(m),
            None => g.push((s, m)),
        }
    }
    ungroup(g)
}

/// Slope multiset where multiplicities add.
pub fn merge_sum(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = a.iter().chain(b).cloned().collect();
    v.sort_by(|x, y| y.cmp(x));
    v
}

/// `s_i = (c_i - c_{i-1}) / (n_i - n_{i-1})` along a chain of
/// `(degree, discriminant exponent)` pairs starting at `(1, 0)`.
pub fn chain_steps(chain: &[(u64, u32)]) -> Vec<BigRational> {
    chain
        .windows(2)
        .map(|w| {
            BigRational::new(
                BigInt::from(w[1].1 as i64 - w[0].1 as i64),
                BigInt::from(w[1].0 as i64 - w[0].0 as i64),
            )
        })
        .collect()
}

pub fn is_weakly_increasing(steps: &[BigRational]) -> bool {
    steps.windows(2).all(|w| w[0] <= w[1])
}

fn ceil_log(p: u64, ratio: u64) -> usize {
    let mut m = 0;
    let mut q = 1u64;
    while q < ratio {
        q *= p;
        m += 1;
    }
    m
}

/// Wild slopes visible from a chain: a maximal run of equal steps from
/// degree `n_j` to `n_i` forces `|Q^s| ≥ n_i / n_j`, a power of `p`.
pub fn visible_slopes(chain: &[(u64, u32)], p: u64) -> Vec<BigRational> {
    let steps = chain_steps(chain);
    let mut out = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        let mut j = i;
        while j + 1 < steps.len() && steps[j + 1] == steps[i] {
            j += 1;
        }
        if steps[i] > BigRational::one() {
            let ratio = chain[j + 1].0 / chain[i].0;
            out.extend(std::iter::repeat(steps[i].clone()).take(ceil_log(p, ratio)));
        }
        i = j + 1;
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn prime_to_p(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

/// `lcm` of the tame part of `e` and the prime-to-`p` parts of the slope
/// denominators.
pub fn visible_tame_degree(e: u64, slopes: &[BigRational], p: u64) -> u64 {
    slopes.iter().fold(prime_to_p(e, p), |t, s| {
        t.lcm(&prime_to_p(s.denom().to_u64().expect("small denominator"), p))
    })
}

/// Galois mean slope `Σ (p-1)/p^i · s_i + (t-1)/(t p^m)` with slopes taken
/// largest first.
pub fn gms(slopes: &[BigRational], t: u64, p: u64) -> BigRational {
    let mut sorted = slopes.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let pb = BigInt::from(p);
    let mut pi = BigInt::one();
    let mut beta = BigRational::zero();
    for s in &sorted {
        pi *= &pb;
        beta += BigRational::new(&pb - 1, pi.clone()) * s;
    }
    beta + BigRational::new(BigInt::from(t) - 1, BigInt::from(t) * pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn galois_mean_slopes() {
        assert_eq!(gms(&[q(4, 3), q(4, 3)], 3, 2), q(7, 6));
        assert_eq!(gms(&[q(2, 1), q(2, 1)], 1, 2), q(3, 2));
        assert_eq!(gms(&[q(2, 1), q(3, 1), q(4, 1)], 1, 2), q(3, 1));
        assert_eq!(gms(&[q(19, 8), q(19, 8)], 8, 3), q(53, 24));
        assert_eq!(gms(&[], 1, 5), q(0, 1));
        assert_eq!(gms(&[], 4, 3), q(3, 4));
        assert_eq!(gms(&[q(2, 1)], 1, 2), q(1, 1));
    }

    #[test]
    fn chains() {
        // x^9 + 9x^2 + 3 over Q_3: no cubic subfield
        assert_eq!(visible_slopes(&[(1, 0), (9, 19)], 3), vec![q(19, 8), q(19, 8)]);
        // x^4 + 2x + 2 over Q_2
        assert_eq!(visible_slopes(&[(1, 0), (4, 4)], 2), vec![q(4, 3), q(4, 3)]);
        // unramified quadratic below a quartic with c = 4
        assert_eq!(visible_slopes(&[(1, 0), (2, 0), (4, 4)], 2), vec![q(2, 1)]);
        assert_eq!(visible_slopes(&[(1, 0), (2, 0), (4, 6), (8, 22)], 2), vec![q(4, 1), q(3, 1)]);
        // tame steps contribute nothing
        assert!(visible_slopes(&[(1, 0), (4, 3)], 3).is_empty());
        assert!(is_weakly_increasing(&chain_steps(&[(1, 0), (2, 0), (4, 6), (8, 22)])));
        assert_eq!(visible_tame_degree(4, &[q(4, 3)], 2), 3);
        assert_eq!(visible_tame_degree(9, &[q(19, 8)], 3), 8);
        assert_eq!(visible_tame_degree(4, &[], 3), 4);
    }

    #[test]
    fn merges() {
        let a = vec![q(3, 1), q(2, 1)];
        let b = vec![q(4, 1), q(3, 1), q(2, 1)];
        assert_eq!(merge_max(&a, &b), b);
        assert_eq!(merge_sum(&a, &[q(4, 1)]), b);
        assert_eq!(merge_max(&[q(2, 1), q(2, 1)], &[q(2, 1)]).len(), 2);
    }
}
