//! Closed-form presentations for `D = αP + βQ`.
//!
//! With `P = ∞` and `Q = 0`, `S_d` is spanned by `t^c u^d` for
//! `−dβ ≤ c ≤ dα`, so monomials are lattice vectors `(d, c)` with slope in
//! `[−β, α]`. The minimal generators are the seed of least denominator in
//! that interval together with the best lower approximations of `α` above it
//! and the best upper approximations of `−β` below it. Any two generators
//! that are not neighbours satisfy one binomial relation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratapprox::{
    best_lower_approximations, best_upper_approximations, minimal_denominator_in_interval, Fraction,
    LatticeVec2,
};

/// `fᵢfⱼ = f_h^a f_{h+1}^b`; `b = 0` is the single-power form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoPointRelation {
    pub i: i64,
    pub j: i64,
    pub h: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPointPresentation {
    /// `s`: generators are indexed `−s..=r`, stored from `−s` upward.
    pub offset: usize,
    pub generators: Vec<LatticeVec2>,
    pub relations: Vec<TwoPointRelation>,
}

impl TwoPointPresentation {
    pub fn r(&self) -> i64 {
        self.generators.len() as i64 - 1 - self.offset as i64
    }

    pub fn s(&self) -> i64 {
        self.offset as i64
    }

    pub fn get(&self, i: i64) -> Option<&LatticeVec2> {
        usize::try_from(i + self.offset as i64).ok().and_then(|k| self.generators.get(k))
    }

    pub fn generator_degrees(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.generators.iter().map(|g| g.d as u64).collect();
        v.sort_unstable();
        v
    }

    pub fn relation_degrees(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .relations
            .iter()
            .map(|r| (self.get(r.i).unwrap().d + self.get(r.j).unwrap().d) as u64)
            .collect();
        v.sort_unstable();
        v
    }

    /// Exponents of the relations `f_{i−1}f_{i+1} = fᵢ^a` along the lower chain.
    pub fn quadratic_gap_exponents(&self) -> Vec<i64> {
        (1..self.r())
            .filter_map(|i| self.relations.iter().find(|x| x.i == i - 1 && x.j == i + 1))
            .map(|x| x.a)
            .collect()
    }
}

pub fn two_point_presentation(alpha: &Fraction, beta: &Fraction) -> Result<TwoPointPresentation> {
    let lo = -beta;
    if &lo > alpha {
        return Err(Error::TrivialRing);
    }
    let seed = minimal_denominator_in_interval(&lo, alpha)?;
    let up = best_lower_approximations(alpha, &seed)?;
    let down = best_upper_approximations(&lo, &seed)?;
    let mut generators: Vec<LatticeVec2> = down.entries[1..]
        .iter()
        .rev()
        .map(LatticeVec2::try_from)
        .collect::<Result<_>>()?;
    let offset = generators.len();
    for f in &up.entries {
        generators.push(LatticeVec2::try_from(f)?);
    }

    let n = generators.len();
    let mut relations = Vec::with_capacity(n.saturating_sub(1) * n.saturating_sub(2) / 2);
    for i in 0..n {
        for j in i + 2..n {
            let w = generators[i] + generators[j];
            // last h in (i, j) with v_h at or below w
            let (mut lo, mut hi) = (i + 1, j - 1);
            while lo < hi {
                let mid = (lo + hi + 1) / 2;
                if generators[mid].cross(&w) >= 0 {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            let h = lo;
            let (a, b) = (w.cross(&generators[h + 1]), generators[h].cross(&w));
            let off = offset as i64;
            relations.push(TwoPointRelation {
                i: i as i64 - off,
                j: j as i64 - off,
                h: h as i64 - off,
                a,
                b,
            });
        }
    }
    Ok(TwoPointPresentation { offset, generators, relations })
}

/// Checks that every relation balances exactly, that the index constraints
/// hold, and that the counts are `r + s + 1` generators and `C(r+s, 2)` relations.
pub fn verify_presentation(p: &TwoPointPresentation) -> bool {
    let n = p.generators.len() as i64;
    if n != p.r() + p.s() + 1 || p.relations.len() as i64 != (n - 1) * (n - 2) / 2 {
        return false;
    }
    let unimodular = p.generators.windows(2).all(|w| w[0].cross(&w[1]) == 1);
    let balanced = p.relations.iter().all(|rel| {
        let (Some(vi), Some(vj), Some(vh)) = (p.get(rel.i), p.get(rel.j), p.get(rel.h)) else {
            return false;
        };
        let next = p.get(rel.h + 1).copied().unwrap_or(LatticeVec2::new(0, 0));
        if rel.b > 0 && p.get(rel.h + 1).is_none() {
            return false;
        }
        let order_ok = rel.i < rel.h && rel.j >= rel.i + 2 && rel.a >= 1 && rel.b >= 0;
        let gap_ok = if rel.b == 0 { rel.h < rel.j } else { rel.h + 1 < rel.j };
        order_ok
            && gap_ok
            && vi.d + vj.d == rel.a * vh.d + rel.b * next.d
            && vi.c + vj.c == rel.a * vh.c + rel.b * next.c
    });
    let mut pairs: Vec<(i64, i64)> = p.relations.iter().map(|r| (r.i, r.j)).collect();
    pairs.sort_unstable();
    pairs.dedup();
    unimodular && balanced && pairs.len() == p.relations.len()
}

/// `{"offset": s, "generators": [[d, c], …], "relations": [{i, j, h, a, b}, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPointJson {
    pub offset: usize,
    pub generators: Vec<[i64; 2]>,
    pub relations: Vec<TwoPointRelation>,
}

impl From<&TwoPointPresentation> for TwoPointJson {
    fn from(p: &TwoPointPresentation) -> Self {
        TwoPointJson {
            offset: p.offset,
            generators: p.generators.iter().map(|g| [g.d, g.c]).collect(),
            relations: p.relations.clone(),
        }
    }
}
