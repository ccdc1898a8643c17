//! Root finding in a p-adic field by successive residue-root substitutions.
//!
//! At each level the polynomial is normalized to content 1, reduced to the
//! residue field, and every residue root `r` is either certified by a simple
//! root of the reduction (Hensel) or refined through `g(r + π x)`.

use super::ring::{KElem, KRing};
use crate::error::{Error, Result};

/// A root located to `π`-adic precision `prec`: the true root is `≡ approx (mod π^prec)`.
#[derive(Clone, Debug)]
pub struct RootApprox {
    pub approx: KElem,
    pub prec: i64,
}

fn shift_and_scale(ring: &KRing, g: &[KElem], r: &KElem) -> Vec<KElem> {
    // Taylor shift by r (an O_U constant embedded in O_K)
    let ru = ring.coeff(r, 0);
    let mut c: Vec<KElem> = g.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = ring.mul_u(&c[j + 1], &ru);
            c[j] = ring.add(&c[j], &t);
        }
    }
    // x -> π x
    let mut pk = ring.one();
    for (i, ci) in c.iter_mut().enumerate() {
        if i > 0 {
            pk = ring.mul_pi(&pk);
            *ci = ring.mul(ci, &pk);
        }
    }
    c
}

struct Search<'a> {
    ring: &'a KRing,
    collect: bool,
    roots: Vec<RootApprox>,
    count: usize,
}

impl<'a> Search<'a> {
    fn run(&mut self, mut g: Vec<KElem>, mut prec: i64, base: KElem, scale: KElem, depth: i64) -> Result<()> {
        let ring = self.ring;
        if depth > ring.pi_prec() {
            return Err(Error::PrecisionExhausted("root search depth cap".into()));
        }
        let m = g
            .iter()
            .filter_map(|c| ring.val(c))
            .filter(|&v| v < prec)
            .min()
            .ok_or_else(|| Error::PrecisionExhausted("all coefficients vanish at working precision".into()))?;
        for _ in 0..m {
            for c in g.iter_mut() {
                *c = ring.div_pi(c);
            }
        }
        prec -= m;
        if prec < 1 {
            return Err(Error::PrecisionExhausted("residue polynomial undetermined".into()));
        }
        let k = &ring.residue_field;
        let mut gbar: Vec<Vec<u64>> = g.iter().map(|c| ring.residue(c)).collect();
        k.poly_trim(&mut gbar);
        if gbar.len() <= 1 {
            return Ok(());
        }
        for r in k.poly_roots(&gbar) {
            // multiplicity of r
            let lin = vec![k.neg(&r), k.one()];
            let mut q = gbar.clone();
            let mut mult = 0;
            loop {
                let (qq, rem) = k.poly_divrem(&q, &lin);
                if !rem.is_empty() {
                    break;
                }
                mult += 1;
                q = qq;
            }
            let lift = ring.from_u(&ring.u_from_residue(&r));
            let new_base = ring.add(&base, &ring.mul(&scale, &lift));
            if mult == 1 {
                self.count += 1;
                if self.collect {
                    self.roots.push(RootApprox {
                        approx: new_base,
                        prec: depth + 1,
                    });
                }
                continue;
            }
            let g2 = shift_and_scale(ring, &g, &lift);
            let new_scale = ring.mul_pi(&scale);
            self.run(g2, prec, new_base, new_scale, depth + 1)?;
        }
        Ok(())
    }
}

/// Number of roots in `K` of a squarefree polynomial over `O_K` whose
/// coefficients are known to `π`-adic precision `prec`.
pub fn count_roots(ring: &KRing, g: &[KElem], prec: i64) -> Result<usize> {
    let mut s = Search {
        ring,
        collect: false,
        roots: Vec::new(),
        count: 0,
    };
    s.run(g.to_vec(), prec, ring.zero(), ring.one(), 0)?;
    Ok(s.count)
}

/// Roots with their certified precision.
pub fn find_roots(ring: &KRing, g: &[KElem], prec: i64) -> Result<Vec<RootApprox>> {
    let mut s = Search {
        ring,
        collect: true,
        roots: Vec::new(),
        count: 0,
    };
    s.run(g.to_vec(), prec, ring.zero(), ring.one(), 0)?;
    Ok(s.roots)
}
