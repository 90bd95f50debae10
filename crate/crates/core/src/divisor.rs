//! Q-divisors on the projective line and their numerical invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::ratapprox::{lcm_all, Fraction};

/// A point of P¹ with an exact rational coordinate, or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PointP1 {
    Infinity,
    Finite(Fraction),
}

impl PointP1 {
    pub fn finite(x: i64) -> Self {
        PointP1::Finite(Fraction::from_int(x))
    }
}

impl fmt::Display for PointP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointP1::Infinity => f.write_str("inf"),
            PointP1::Finite(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for PointP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PointP1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(PointP1::Infinity),
            t => Ok(PointP1::Finite(t.parse()?)),
        }
    }
}

impl Serialize for PointP1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PointP1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `D = Σ αᵢ Pᵢ` with pairwise distinct points.
///
/// Coefficients are kept as exact fractions; the lattice computations also
/// need them as machine-word pairs `(pᵢ, qᵢ)`, so construction rejects
/// numerators or denominators outside `i64`.
#[derive(Clone, PartialEq, Eq)]
pub struct QDivisor {
    points: Vec<PointP1>,
    alphas: Vec<Fraction>,
    pq: Vec<(i64, i64)>,
}

impl fmt::Debug for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .alphas
            .iter()
            .zip(&self.points)
            .map(|(a, p)| format!("{a}·[{p}]"))
            .collect();
        write!(f, "QDivisor({})", terms.join(" + "))
    }
}

/// Default positions `inf, 0, 1, -1, 2, -2, …` used when only coefficients are given.
pub fn default_points(n: usize) -> Vec<PointP1> {
    let mut pts = vec![PointP1::Infinity];
    let mut k = 0i64;
    while pts.len() < n {
        pts.push(PointP1::finite(k));
        k = if k > 0 { -k } else { -k + 1 };
    }
    pts.truncate(n);
    pts
}

impl QDivisor {
    pub fn new(points: Vec<PointP1>, alphas: Vec<Fraction>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidArgument("a divisor needs at least one point".into()));
        }
        if points.len() != alphas.len() {
            return Err(Error::InvalidArgument(format!(
                "{} points but {} coefficients",
                points.len(),
                alphas.len()
            )));
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::PointCollision(j, i));
                }
            }
        }
        let pq = alphas.iter().map(Fraction::to_i64_pair).collect::<Result<Vec<_>>>()?;
        Ok(QDivisor { points, alphas, pq })
    }

    /// Coefficients at the default points `inf, 0, 1, -1, …`.
    pub fn from_alphas(alphas: Vec<Fraction>) -> Result<Self> {
        let pts = default_points(alphas.len());
        QDivisor::new(pts, alphas)
    }

    /// Parses comma-separated coefficients such as `"-1/2,1/3,1/5"`.
    pub fn parse_alphas(csv: &str) -> Result<Self> {
        let alphas = parse_csv(csv)?;
        QDivisor::from_alphas(alphas)
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn points(&self) -> &[PointP1] {
        &self.points
    }

    pub fn alphas(&self) -> &[Fraction] {
        &self.alphas
    }

    /// `(pᵢ, qᵢ)` with `αᵢ = pᵢ/qᵢ` in lowest terms, `qᵢ > 0`.
    pub fn pq(&self) -> &[(i64, i64)] {
        &self.pq
    }

    pub fn degree(&self) -> Fraction {
        self.alphas.iter().fold(Fraction::zero(), |acc, a| &acc + a)
    }

    /// The same divisor with the points re-placed (coefficients unchanged).
    pub fn with_points(&self, points: Vec<PointP1>) -> Result<Self> {
        QDivisor::new(points, self.alphas.clone())
    }

    /// Monomial models need two points; a one-point divisor gets a ghost
    /// point of multiplicity zero (at 0, or at ∞ when the point is finite).
    pub fn with_ghost(&self) -> QDivisor {
        if self.n() >= 2 {
            return self.clone();
        }
        let ghost = match self.points[0] {
            PointP1::Infinity => PointP1::finite(0),
            PointP1::Finite(_) => PointP1::Infinity,
        };
        let mut points = self.points.clone();
        points.push(ghost);
        let mut alphas = self.alphas.clone();
        alphas.push(Fraction::zero());
        let mut pq = self.pq.clone();
        pq.push((0, 1));
        QDivisor { points, alphas, pq }
    }
}

pub fn parse_csv<T: FromStr<Err = Error>>(csv: &str) -> Result<Vec<T>> {
    csv.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse())
        .collect()
}

pub(crate) fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

/// `bᵢ = ⌊d·αᵢ⌋`.
pub fn floor_divisor(div: &QDivisor, d: u64) -> Vec<i64> {
    floors_from_pq(div.pq(), d)
}

pub(crate) fn floors_from_pq(pq: &[(i64, i64)], d: u64) -> Vec<i64> {
    pq.iter()
        .map(|&(p, q)| floor_div(d as i128 * p as i128, q as i128) as i64)
        .collect()
}

/// `dim S_d = max(deg ⌊dD⌋ + 1, 0)`.
pub fn graded_dim(div: &QDivisor, d: u64) -> usize {
    let r: i64 = floor_divisor(div, d).iter().sum();
    (r + 1).max(0) as usize
}

/// `ℓ = lcm qⱼ`, `ℓᵢ = lcm_{j≠i} qⱼ` and `deg D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorData {
    pub ell: BigInt,
    pub ell_i: Vec<BigInt>,
    pub deg_d: Fraction,
}

impl DenominatorData {
    pub fn of(div: &QDivisor) -> Self {
        let qs: Vec<&BigInt> = div.alphas().iter().map(Fraction::denom).collect();
        let ell = lcm_all(qs.iter().copied());
        let ell_i = (0..qs.len())
            .map(|i| lcm_all(qs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| *q)))
            .collect();
        DenominatorData { ell, ell_i, deg_d: div.degree() }
    }

    pub fn sum_ell_i(&self) -> BigInt {
        self.ell_i.iter().fold(BigInt::zero(), |a, b| a + b)
    }
}

/// Strict upper bounds on the degrees of minimal generators and relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    pub gen_bound: u64,
    pub rel_bound: u64,
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(x.to_string()))
}

/// `gen_bound = Σℓᵢ`, `rel_bound = max{ℓ + Σℓᵢ, 2Σℓᵢ}`; defined for `deg D > 0`.
pub fn degree_bounds(div: &QDivisor) -> Result<DegreeBounds> {
    if !div.degree().is_positive() {
        return Err(Error::Unsupported(format!(
            "degree bounds need deg D > 0 (deg D = {})",
            div.degree()
        )));
    }
    let data = DenominatorData::of(&div.with_ghost());
    let s = data.sum_ell_i();
    let rel = (&data.ell + &s).max(&s * 2);
    Ok(DegreeBounds { gen_bound: to_u64(&s)?, rel_bound: to_u64(&rel)? })
}

/// `ℓ₁⋯ℓₙ·(deg D)^{n−1}`: the index of the ray lattice in the cone's lattice.
pub fn ray_lattice_index(div: &QDivisor) -> Result<BigInt> {
    let div = div.with_ghost();
    let data = DenominatorData::of(&div);
    let prod = data.ell_i.iter().fold(BigInt::one(), |a, b| a * b);
    let mut v = Fraction::from_int(prod);
    for _ in 1..div.n() {
        v = &v * &data.deg_d;
    }
    if !v.is_integer() {
        return Err(Error::Internal(format!("lattice index {v} is not integral")));
    }
    Ok(v.numer().clone())
}

/// `n − 1 + ℓ₁⋯ℓₙ (deg D)^{n−1}`, rounded up.
pub fn semigroup_count_bound(div: &QDivisor) -> Result<u64> {
    if !div.degree().is_positive() {
        return Err(Error::Unsupported("count bound needs deg D > 0".into()));
    }
    let div = div.with_ghost();
    let data = DenominatorData::of(&div);
    let prod = data.ell_i.iter().fold(BigInt::one(), |a, b| a * b);
    let mut v = Fraction::from_int(prod);
    for _ in 1..div.n() {
        v = &v * &data.deg_d;
    }
    let total = v.ceil() + BigInt::from(div.n() as u64 - 1);
    to_u64(&total)
}

/// Input document: `{"points": [...], "alphas": [...], "char": 0 | p}`.
///
/// `ext` is optional and selects the extension degree of a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub points: Vec<String>,
    pub alphas: Vec<String>,
    #[serde(rename = "char", default)]
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext: Option<u32>,
}

impl DivisorJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_divisor(&self) -> Result<(QDivisor, FieldSpec)> {
        let points = self
            .points
            .iter()
            .map(|s| s.parse::<PointP1>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Schema(e.to_string()))?;
        let alphas = self
            .alphas
            .iter()
            .map(|s| s.parse::<Fraction>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Schema(e.to_string()))?;
        let field = FieldSpec::new(self.characteristic, self.ext.unwrap_or(1))?;
        Ok((QDivisor::new(points, alphas)?, field))
    }

    pub fn from_divisor(div: &QDivisor, field: FieldSpec) -> Self {
        DivisorJson {
            points: div.points().iter().map(ToString::to_string).collect(),
            alphas: div.alphas().iter().map(ToString::to_string).collect(),
            characteristic: field.characteristic(),
            ext: (field.extension() > 1).then_some(field.extension()),
        }
    }
}

/// `(p, q)` pairs from fractions; used by tests and samplers.
pub fn fractions(pairs: &[(i64, i64)]) -> Vec<Fraction> {
    pairs.iter().map(|&(p, q)| Fraction::new(p, q).expect("nonzero denominator")).collect()
}
