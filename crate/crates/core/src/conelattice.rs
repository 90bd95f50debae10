//! Monomials `u^d t₁^{c₁}⋯tₙ^{cₙ}` of the canonical ring and the cone they fill.
//!
//! A monomial lies in `S_d` when `Σcᵢ = 0` and `cᵢ ≥ −dαᵢ`. Writing
//! `eᵢ = cᵢ + ⌊dαᵢ⌋ ≥ 0` turns the monomials of degree `d` into the
//! compositions of `r = deg⌊dD⌋` into `n` parts, which is how everything
//! here is enumerated.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::divisor::{floor_divisor, ray_lattice_index, DenominatorData, QDivisor};
use crate::error::{Error, Result};
use crate::ratapprox::Fraction;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedMonomial {
    pub d: u64,
    pub c: Vec<i64>,
}

impl GradedMonomial {
    pub fn unit(n: usize) -> Self {
        GradedMonomial { d: 0, c: vec![0; n] }
    }

    /// Builds a monomial after checking it lies in the cone of `div`.
    pub fn checked(div: &QDivisor, d: u64, c: Vec<i64>) -> Result<Self> {
        let m = GradedMonomial { d, c };
        if !m.in_cone(div) {
            return Err(Error::InvalidArgument(format!("{m:?} is not a section of {div:?}")));
        }
        Ok(m)
    }

    pub fn in_cone(&self, div: &QDivisor) -> bool {
        let div = div.with_ghost();
        self.c.len() == div.n()
            && self.c.iter().sum::<i64>() == 0
            && self
                .c
                .iter()
                .zip(floor_divisor(&div, self.d))
                .all(|(&c, b)| c + b >= 0)
    }

    pub fn add(&self, other: &GradedMonomial) -> GradedMonomial {
        GradedMonomial {
            d: self.d + other.d,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    /// Vanishing orders `cᵢ + ⌊dαᵢ⌋` of the section at each point.
    pub fn orders(&self, div: &QDivisor) -> Vec<i64> {
        let b = floor_divisor(&div.with_ghost(), self.d);
        self.c.iter().zip(b).map(|(c, b)| c + b).collect()
    }
}

/// Calls `f` on every vector `e` with `0 ≤ eᵢ ≤ upper[i]` and `Σe = total`.
pub(crate) fn for_each_composition(total: i64, upper: &[i64], f: &mut impl FnMut(&[i64])) {
    fn go(i: usize, left: i64, upper: &[i64], tail_cap: &[i64], e: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if i == upper.len() {
            if left == 0 {
                f(e);
            }
            return;
        }
        let lo = (left - tail_cap[i + 1]).max(0);
        let hi = left.min(upper[i]);
        for x in lo..=hi {
            e.push(x);
            go(i + 1, left - x, upper, tail_cap, e, f);
            e.pop();
        }
    }
    if total < 0 || upper.is_empty() {
        return;
    }
    let mut tail_cap = vec![0i64; upper.len() + 1];
    for i in (0..upper.len()).rev() {
        tail_cap[i] = tail_cap[i + 1].saturating_add(upper[i].max(0));
    }
    go(0, total, upper, &tail_cap, &mut Vec::with_capacity(upper.len()), f);
}

fn monomial_from_orders(d: u64, e: &[i64], b: &[i64]) -> GradedMonomial {
    GradedMonomial { d, c: e.iter().zip(b).map(|(e, b)| e - b).collect() }
}

/// Every monomial of degree `d`, sorted by exponent vector.
///
/// One-point divisors are given their ghost partner, so the vectors then
/// have length 2.
pub fn monomial_spanning_set(div: &QDivisor, d: u64) -> Vec<GradedMonomial> {
    let div = div.with_ghost();
    let b = floor_divisor(&div, d);
    let r: i64 = b.iter().sum();
    let mut out = Vec::new();
    for_each_composition(r, &vec![r.max(0); div.n()], &mut |e| out.push(monomial_from_orders(d, e, &b)));
    out.sort();
    out
}

/// The basis of `S_d` pinned at `cᵢ = −⌊dαᵢ⌋` for every point after the
/// first two, ordered by increasing exponent at the first point.
pub fn monomial_basis(div: &QDivisor, d: u64) -> Vec<GradedMonomial> {
    let div = div.with_ghost();
    let b = floor_divisor(&div, d);
    let r: i64 = b.iter().sum();
    (0..=r)
        .map(|a| {
            let mut e = vec![0; div.n()];
            e[0] = a;
            e[1] = r - a;
            monomial_from_orders(d, &e, &b)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeModel {
    pub divisor: QDivisor,
    pub rays: Vec<GradedMonomial>,
    pub cube_points: Vec<GradedMonomial>,
    pub epsilon: Vec<Fraction>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

pub fn build_cone_model(div: &QDivisor) -> Result<ConeModel> {
    let deg = div.degree();
    if !deg.is_positive() {
        return Err(Error::Unsupported(format!("cone model needs deg D > 0 (deg D = {deg})")));
    }
    let div = div.with_ghost();
    let n = div.n();
    let data = DenominatorData::of(&div);
    let ell: Vec<i64> = data.ell_i.iter().map(small).collect::<Result<_>>()?;
    let pq = div.pq();
    let (dp, dq) = deg.to_i64_pair()?;

    let rays = (0..n)
        .map(|i| {
            let li = ell[i] as i128;
            let mut c: Vec<i64> = (0..n)
                .map(|j| if j == i { 0 } else { (-(pq[j].0 as i128) * li / pq[j].1 as i128) as i64 })
                .collect();
            c[i] = -c.iter().sum::<i64>();
            GradedMonomial { d: ell[i] as u64, c }
        })
        .collect();

    let total: i64 = ell.iter().sum();
    let mut cube_points = Vec::new();
    for d in 1..total.max(1) as u64 {
        let b = floor_divisor(&div, d);
        let r: i64 = b.iter().sum();
        if r < 0 {
            continue;
        }
        // aᵢ < 1  ⇔  Q·(eᵢqᵢ + remᵢ) < qᵢℓᵢP
        let upper: Vec<i64> = (0..n)
            .map(|i| {
                let (p, q) = (pq[i].0 as i128, pq[i].1 as i128);
                let rem = (d as i128 * p).rem_euclid(q);
                let num = q * ell[i] as i128 * dp as i128 - dq as i128 * rem - 1;
                if num < 0 {
                    -1
                } else {
                    (num / (dq as i128 * q)) as i64
                }
            })
            .collect();
        if upper.iter().any(|&u| u < 0) {
            continue;
        }
        for_each_composition(r, &upper, &mut |e| cube_points.push(monomial_from_orders(d, e, &b)));
    }
    cube_points.sort();

    let epsilon = epsilon_of(&div);
    Ok(ConeModel { divisor: div, rays, cube_points, epsilon })
}

fn epsilon_of(div: &QDivisor) -> Vec<Fraction> {
    let deg = div.degree();
    let mut v = vec![&Fraction::one() / &deg];
    v.extend(div.alphas().iter().map(|a| &(-a) / &deg));
    v
}

/// Rays first, then the cube points.
pub fn semigroup_generators(model: &ConeModel) -> Vec<GradedMonomial> {
    let mut g = model.rays.clone();
    g.extend(model.cube_points.iter().cloned());
    g
}

/// `ε = (1, −α₁, …, −αₙ)/deg D`, over the ghost-augmented divisor.
pub fn epsilon_vector(model: &ConeModel) -> Vec<Fraction> {
    model.epsilon.clone()
}

/// Coordinates of `m` in the ray basis: `aᵢ = (cᵢ + dαᵢ)/(ℓᵢ·deg D)`.
pub fn barycentric(model: &ConeModel, m: &GradedMonomial) -> Vec<Fraction> {
    let deg = model.divisor.degree();
    model
        .divisor
        .alphas()
        .iter()
        .zip(&m.c)
        .zip(&model.rays)
        .map(|((a, &c), ray)| {
            let num = &Fraction::from_int(c) + &(a * &Fraction::from_int(m.d));
            &num / &(&deg * &Fraction::from_int(ray.d))
        })
        .collect()
}

/// `1 + |cube points|`, which should equal [`ray_lattice_index`].
pub fn cube_count_check(model: &ConeModel) -> Result<(BigInt, BigInt)> {
    Ok((BigInt::from(model.cube_points.len() + 1), ray_lattice_index(&model.divisor)?))
}
