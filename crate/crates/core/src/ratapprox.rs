//! Exact rationals and chains of best one-sided rational approximations.
//!
//! A fraction `c/d <= x` is a *best lower approximation* of `x` when no
//! fraction with a smaller denominator lies in `[c/d, x]`; best upper
//! approximations are the mirror image. Consecutive members of such a chain
//! form unimodular pairs of lattice vectors `(d, c)`, which is what makes them
//! the generators of two-point canonical rings.
//!
//! Chains are walked with a Stern–Brocot descent: each step asks for the
//! fraction of least denominator in a half-open interval.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction(BigRational);

impl Fraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Fraction(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Fraction(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }

    pub fn one() -> Self {
        Fraction(BigRational::one())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Fraction(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Fraction(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Fraction(self.0.recip()))
    }

    /// Numerator and denominator as machine integers.
    pub fn to_i64_pair(&self) -> Result<(i64, i64)> {
        match (self.numer().to_i64(), self.denom().to_i64()) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::Overflow(self.to_string())),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::BadFraction(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Fraction::new(n, d)
            }
            None => Ok(Fraction::from_int(t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Fraction {
            type Output = Fraction;
            fn $m(self, rhs: Fraction) -> Fraction {
                Fraction((self.0).$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Fraction> for &'a Fraction {
            type Output = Fraction;
            fn $m(self, rhs: &'a Fraction) -> Fraction {
                Fraction((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-self.0)
    }
}

impl<'a> Neg for &'a Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-&self.0)
    }
}

/// A lattice vector `(d, c)` standing for the monomial `t^c u^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVec2 {
    pub d: i64,
    pub c: i64,
}

impl LatticeVec2 {
    pub fn new(d: i64, c: i64) -> Self {
        LatticeVec2 { d, c }
    }

    /// Oriented area `self ∧ other = d·c' − c·d'`; equals 1 for a positively
    /// oriented basis of `Z^2`.
    pub fn cross(&self, other: &LatticeVec2) -> i64 {
        self.d * other.c - self.c * other.d
    }

    pub fn slope(&self) -> Result<Fraction> {
        Fraction::new(self.c, self.d)
    }
}

impl Add for LatticeVec2 {
    type Output = LatticeVec2;
    fn add(self, o: LatticeVec2) -> LatticeVec2 {
        LatticeVec2::new(self.d + o.d, self.c + o.c)
    }
}

impl TryFrom<&Fraction> for LatticeVec2 {
    type Error = Error;
    fn try_from(f: &Fraction) -> Result<Self> {
        let (c, d) = f.to_i64_pair()?;
        Ok(LatticeVec2 { d, c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

/// A chain of best approximations, increasing for `Lower` and decreasing for
/// `Upper`, whose consecutive members are unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxSequence {
    pub entries: Vec<Fraction>,
    pub direction: Direction,
}

impl ApproxSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks strict monotonicity and `c₂d₁ − c₁d₂ = ±1` on every consecutive pair.
    pub fn is_unimodular(&self) -> bool {
        let want = match self.direction {
            Direction::Lower => BigInt::one(),
            Direction::Upper => -BigInt::one(),
        };
        self.entries.windows(2).all(|w| {
            let (c1, d1) = (w[0].numer(), w[0].denom());
            let (c2, d2) = (w[1].numer(), w[1].denom());
            c2 * d1 - c1 * d2 == want
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tie {
    Smallest,
    Largest,
    NearZero,
}

struct Endpoint<'a> {
    value: &'a BigRational,
    closed: bool,
}

fn ceil_int(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

fn floor_int(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// The fraction of least denominator in the interval from `lo` to `hi`
/// (`hi = None` is +∞). Among integers the choice follows `tie`; a
/// non-integral minimiser is always unique.
fn least_denominator(lo: Endpoint<'_>, hi: Option<Endpoint<'_>>, tie: Tie) -> BigRational {
    let first_int = if lo.value.is_integer() && lo.closed {
        lo.value.to_integer()
    } else {
        floor_int(lo.value) + 1
    };
    let last_int = hi.as_ref().map(|h| {
        if h.value.is_integer() && h.closed {
            h.value.to_integer()
        } else {
            ceil_int(h.value) - 1
        }
    });
    let has_int = match &last_int {
        None => true,
        Some(l) => &first_int <= l,
    };
    if has_int {
        let pick = match (tie, last_int) {
            (Tie::Smallest, _) | (_, None) => first_int,
            (Tie::Largest, Some(l)) => l,
            (Tie::NearZero, Some(l)) => {
                if first_int.is_positive() {
                    first_int
                } else if l.is_negative() {
                    l
                } else {
                    BigInt::zero()
                }
            }
        };
        return BigRational::from_integer(pick);
    }
    // No integer inside: the interval sits in (fl, fl + 1). Writing
    // x = fl + 1/y, the denominator of x is the numerator of y, and the
    // Stern–Brocot simplest y minimises both.
    let hi = hi.expect("bounded when no integer is inside");
    let fl = BigRational::from_integer(floor_int(lo.value));
    let y_lo = (hi.value - &fl).recip();
    let lo_gap = lo.value - &fl;
    let y_hi = if lo_gap.is_zero() { None } else { Some(lo_gap.recip()) };
    let y = least_denominator(
        Endpoint { value: &y_lo, closed: hi.closed },
        y_hi.as_ref().map(|v| Endpoint { value: v, closed: lo.closed }),
        Tie::Smallest,
    );
    fl + y.recip()
}

/// A rational in `[lo, hi]` of minimal denominator; among integers the one of
/// smallest absolute value, ties broken toward the positive one.
pub fn minimal_denominator_in_interval(lo: &Fraction, hi: &Fraction) -> Result<Fraction> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(Fraction(least_denominator(
        Endpoint { value: &lo.0, closed: true },
        Some(Endpoint { value: &hi.0, closed: true }),
        Tie::NearZero,
    )))
}

/// All best lower approximations of `alpha` from `start` up to `alpha` itself.
pub fn best_lower_approximations(alpha: &Fraction, start: &Fraction) -> Result<ApproxSequence> {
    if start > alpha {
        return Err(Error::InvalidArgument(format!(
            "start {start} exceeds target {alpha}"
        )));
    }
    let check = least_denominator(
        Endpoint { value: &start.0, closed: true },
        Some(Endpoint { value: &alpha.0, closed: true }),
        Tie::Smallest,
    );
    if check.denom() != start.denom() {
        return Err(Error::InvalidArgument(format!(
            "{start} is not a best lower approximation of {alpha}"
        )));
    }
    let mut entries = vec![start.clone()];
    let mut cur = start.0.clone();
    while cur < alpha.0 {
        cur = least_denominator(
            Endpoint { value: &cur, closed: false },
            Some(Endpoint { value: &alpha.0, closed: true }),
            Tie::Smallest,
        );
        entries.push(Fraction(cur.clone()));
    }
    Ok(ApproxSequence { entries, direction: Direction::Lower })
}

/// All best upper approximations of `beta` from `start` down to `beta`.
pub fn best_upper_approximations(beta: &Fraction, start: &Fraction) -> Result<ApproxSequence> {
    if start < beta {
        return Err(Error::InvalidArgument(format!(
            "start {start} is below target {beta}"
        )));
    }
    let check = least_denominator(
        Endpoint { value: &beta.0, closed: true },
        Some(Endpoint { value: &start.0, closed: true }),
        Tie::Largest,
    );
    if check.denom() != start.denom() {
        return Err(Error::InvalidArgument(format!(
            "{start} is not a best upper approximation of {beta}"
        )));
    }
    let mut entries = vec![start.clone()];
    let mut cur = start.0.clone();
    while cur > beta.0 {
        cur = least_denominator(
            Endpoint { value: &beta.0, closed: true },
            Some(Endpoint { value: &cur, closed: false }),
            Tie::Largest,
        );
        entries.push(Fraction(cur.clone()));
    }
    Ok(ApproxSequence { entries, direction: Direction::Upper })
}

/// Partial quotients `[q₀, q₁, …]` with `alpha = 1/(q₀ − 1/(q₁ − 1/(…)))` and
/// `qᵢ ≥ 2` for `i ≥ 1`.
pub fn minus_continued_fraction(alpha: &Fraction) -> Result<Vec<BigInt>> {
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "minus continued fraction needs a positive value, got {alpha}"
        )));
    }
    let mut x = alpha.0.recip();
    let mut out = Vec::new();
    loop {
        let q = ceil_int(&x);
        let rest = BigRational::from_integer(q.clone()) - &x;
        out.push(q);
        if rest.is_zero() {
            return Ok(out);
        }
        x = rest.recip();
    }
}

/// Evaluates `1/(q₀ − 1/(q₁ − …))`.
pub fn evaluate_minus_continued_fraction(quotients: &[BigInt]) -> Result<Fraction> {
    let (last, init) = quotients
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty expansion".into()))?;
    let mut acc = BigRational::from_integer(last.clone());
    for q in init.iter().rev() {
        if acc.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        acc = BigRational::from_integer(q.clone()) - acc.recip();
    }
    if acc.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Fraction(acc.recip()))
}

/// `lcm` of a list of positive integers; 1 for the empty list.
pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn fs(xs: &[&str]) -> Vec<Fraction> {
        xs.iter().map(|s| f(s)).collect()
    }

    /// Brute force straight from the definition: `c/d ≤ α` is best when no
    /// fraction with smaller denominator lies in `[c/d, α]`.
    fn brute_lower(alpha: &Fraction, start: &Fraction) -> Vec<Fraction> {
        let q = alpha.denom().to_i64().unwrap();
        let lo = start.floor().to_i64().unwrap() - 1;
        let hi = alpha.ceil().to_i64().unwrap() + 1;
        let mut out = Vec::new();
        for d in 1..=q {
            for c in lo * d..=hi * d {
                let x = Fraction::new(c, d).unwrap();
                if x.denom().to_i64() != Some(d) || &x < start || &x > alpha {
                    continue;
                }
                let beaten = (1..d).any(|d2| {
                    let need = (&x * &Fraction::from_int(d2)).ceil();
                    Fraction::new(need, d2).unwrap() <= *alpha
                });
                if !beaten {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn lower_chain_examples() {
        let s = best_lower_approximations(&f("13/5"), &f("0")).unwrap();
        assert_eq!(s.entries, fs(&["0", "1", "2", "5/2", "13/5"]));
        assert!(s.is_unimodular());
        let s = best_lower_approximations(&f("3"), &f("0")).unwrap();
        assert_eq!(s.entries, fs(&["0", "1", "2", "3"]));
        let s = best_lower_approximations(&f("7/10"), &f("0")).unwrap();
        assert_eq!(s.entries, brute_lower(&f("7/10"), &f("0")));
        assert_eq!(s.entries, fs(&["0", "1/2", "2/3", "7/10"]));
    }

    #[test]
    fn upper_chain_examples() {
        let s = best_upper_approximations(&f("1/4"), &f("1")).unwrap();
        assert_eq!(s.entries, fs(&["1", "1/2", "1/3", "1/4"]));
        assert!(s.is_unimodular());
        let s = best_upper_approximations(&f("2"), &f("2")).unwrap();
        assert_eq!(s.entries, fs(&["2"]));
        let up = best_upper_approximations(&f("-7/10"), &f("0")).unwrap();
        let low = best_lower_approximations(&f("7/10"), &f("0")).unwrap();
        let neg: Vec<Fraction> = low.entries.iter().map(|x| -x).collect();
        assert_eq!(up.entries, neg);
    }

    #[test]
    fn chain_rejects_bad_start() {
        assert!(best_lower_approximations(&f("1/2"), &f("1")).is_err());
        assert!(best_upper_approximations(&f("1/2"), &f("0")).is_err());
        // 2/3 has a smaller denominator and lies in [3/5, 7/10]
        assert!(best_lower_approximations(&f("7/10"), &f("3/5")).is_err());
    }

    #[test]
    fn least_denominator_examples() {
        assert_eq!(minimal_denominator_in_interval(&f("1/4"), &f("13/5")).unwrap(), f("1"));
        assert_eq!(minimal_denominator_in_interval(&f("-1/2"), &f("1/2")).unwrap(), f("0"));
        assert_eq!(minimal_denominator_in_interval(&f("5/7"), &f("5/7")).unwrap(), f("5/7"));
        assert_eq!(minimal_denominator_in_interval(&f("-13/5"), &f("-1/4")).unwrap(), f("-1"));
        assert_eq!(minimal_denominator_in_interval(&f("-5/2"), &f("5/2")).unwrap(), f("0"));
        assert_eq!(minimal_denominator_in_interval(&f("1/4"), &f("1/3")).unwrap(), f("1/3"));
        assert!(minimal_denominator_in_interval(&f("1"), &f("0")).is_err());
    }

    #[test]
    fn minus_cf_examples() {
        let q = minus_continued_fraction(&f("13/5")).unwrap();
        assert_eq!(q, vec![1, 2, 3, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(evaluate_minus_continued_fraction(&q).unwrap(), f("13/5"));
        let q = minus_continued_fraction(&f("2")).unwrap();
        assert_eq!(q, vec![BigInt::from(1), BigInt::from(2)]);
        let q = minus_continued_fraction(&f("5/2")).unwrap();
        assert_eq!(evaluate_minus_continued_fraction(&q).unwrap(), f("5/2"));
        assert!(minus_continued_fraction(&f("0")).is_err());
        assert!(minus_continued_fraction(&f("-1/3")).is_err());
    }

    #[test]
    fn fraction_text_form() {
        assert_eq!(f("6/4").to_string(), "3/2");
        assert_eq!(f("-4/2").to_string(), "-2");
        assert_eq!(f("3/-6").to_string(), "-1/2");
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("x".parse::<Fraction>().is_err());
    }
}
