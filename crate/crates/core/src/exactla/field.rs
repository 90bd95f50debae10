use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratapprox::Fraction;

/// Exact field arithmetic. Elements are plain values; the field object
/// carries whatever context (modulus, tables) the operations need.
pub trait Field: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero; callers check pivots first.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn from_fraction(&self, x: &Fraction) -> Result<Self::Elem>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn spec(&self) -> FieldSpec;
    fn render(&self, a: &Self::Elem) -> String;

    /// Coefficients `(c₀, c₁)` of a nonzero multiple of `t − a`.
    fn linear_factor(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        (self.neg(a), self.one())
    }

    /// `v ← c·(v − (v[p]/row[p])·row)` for some nonzero constant `c`.
    fn eliminate(&self, v: &mut [Self::Elem], row: &[Self::Elem], p: usize) {
        let s = self.div(&v[p], &row[p]);
        for (x, y) in v.iter_mut().zip(row) {
            if !self.is_zero(y) {
                *x = self.sub(x, &self.mul(&s, y));
            }
        }
    }

    /// Rescales a vector by a nonzero constant into a canonical small form.
    fn normalize(&self, row: &mut [Self::Elem]) {
        if let Some(lead) = row.iter().find(|x| !self.is_zero(x)) {
            let s = self.inv(lead);
            for x in row.iter_mut() {
                *x = self.mul(x, &s);
            }
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Ground field descriptor: characteristic 0 (the rationals) or `GF(p^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
    extension: u32,
}

pub const MAX_PRIME: u64 = 1 << 61;
const MAX_EXT_ORDER: u64 = 1 << 16;

impl FieldSpec {
    pub fn new(characteristic: u64, extension: u32) -> Result<Self> {
        if characteristic == 0 {
            if extension != 1 {
                return Err(Error::InvalidArgument("the rationals have no extension degree".into()));
            }
        } else {
            if characteristic >= MAX_PRIME || !is_prime(characteristic) {
                return Err(Error::NotPrime(characteristic));
            }
            if extension == 0 {
                return Err(Error::InvalidArgument("extension degree must be positive".into()));
            }
            if extension > 1 {
                let q = characteristic.checked_pow(extension).unwrap_or(u64::MAX);
                if q > MAX_EXT_ORDER {
                    return Err(Error::Unsupported(format!(
                        "GF({characteristic}^{extension}) exceeds 2^16 elements"
                    )));
                }
            }
        }
        Ok(FieldSpec { characteristic, extension })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0, extension: 1 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        FieldSpec::new(p, 1)
    }

    /// The smallest `GF(p^k)` with at least `min_size` elements.
    pub fn with_room(p: u64, min_size: u64) -> Result<Self> {
        if p == 0 {
            return Ok(FieldSpec::rationals());
        }
        let mut k = 1u32;
        while p.saturating_pow(k) < min_size {
            k += 1;
        }
        FieldSpec::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn extension(&self) -> u32 {
        self.extension
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        (self.characteristic > 0).then(|| self.characteristic.pow(self.extension))
    }

    pub fn build(&self) -> AnyField {
        match (self.characteristic, self.extension) {
            (0, _) => AnyField::Q(Rationals),
            (p, 1) => AnyField::P(PrimeField { p }),
            (p, k) => AnyField::E(ExtField::new(p, k)),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.characteristic, self.extension) {
            (0, _) => f.write_str("QQ"),
            (p, 1) => write!(f, "GF({p})"),
            (p, k) => write!(f, "GF({p}^{k})"),
        }
    }
}

pub enum AnyField {
    Q(Rationals),
    P(PrimeField),
    E(ExtField),
}

/// Runs a generic expression against whichever concrete field a spec names.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec.build() {
            $crate::exactla::AnyField::Q($f) => $body,
            $crate::exactla::AnyField::P($f) => $body,
            $crate::exactla::AnyField::E($f) => $body,
        }
    };
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    // integer operands skip the gcd normalization inside `Ratio`
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() + b.numer());
        }
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() - b.numer());
        }
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }
    fn from_fraction(&self, x: &Fraction) -> Result<BigRational> {
        Ok(x.as_ratio().clone())
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let num: i64 = rng.gen_range(-100..=100);
        let den: i64 = rng.gen_range(1..=100);
        BigRational::new(num.into(), den.into())
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn render(&self, a: &BigRational) -> String {
        Fraction::from_ratio(a.clone()).to_string()
    }

    /// `q·t − p` for `a = p/q`, so that sections stay integral.
    fn linear_factor(&self, a: &BigRational) -> (BigRational, BigRational) {
        (BigRational::from_integer(-a.numer()), BigRational::from_integer(a.denom().clone()))
    }

    /// Fraction-free on primitive integer rows: `v ← row[p]·v − v[p]·row`,
    /// then the content is removed.
    fn eliminate(&self, v: &mut [BigRational], row: &[BigRational], p: usize) {
        if !(v.iter().all(|x| x.is_integer()) && row.iter().all(|x| x.is_integer())) {
            let s = &v[p] / &row[p];
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &s * y;
                }
            }
            self.normalize(v);
            return;
        }
        let a = row[p].numer().clone();
        let b = v[p].numer().clone();
        for (x, y) in v.iter_mut().zip(row) {
            let mut n = x.numer() * &a;
            if !y.is_zero() {
                n -= &b * y.numer();
            }
            *x = BigRational::from_integer(n);
        }
        self.normalize(v);
    }

    /// Clears denominators and strips the content, leaving a primitive
    /// integer vector with positive leading entry.
    fn normalize(&self, row: &mut [BigRational]) {
        if row.iter().all(|x| x.is_integer()) {
            // start from the smallest entry and reduce the others modulo the
            // running gcd first: the binary gcd is slow on lopsided operands
            let Some(small) = row.iter().filter(|x| !x.is_zero()).min_by_key(|x| x.numer().bits()) else {
                return;
            };
            let mut content = small.numer().abs();
            for x in row.iter().filter(|x| !x.is_zero()) {
                if content.is_one() {
                    break;
                }
                content = content.gcd(&(x.numer() % &content));
            }
            if content.is_zero() {
                return;
            }
            let neg = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
            let content = if neg { -content } else { content };
            if !content.is_one() {
                for x in row.iter_mut() {
                    *x = BigRational::from_integer(x.numer() / &content);
                }
            }
            return;
        }
        let mut den = BigInt::one();
        let mut content = BigInt::zero();
        for x in row.iter() {
            if !x.is_zero() {
                den = den.lcm(x.denom());
                content = content.gcd(x.numer());
            }
        }
        if content.is_zero() {
            return;
        }
        let sign_neg = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let mut scale = BigRational::new(den, content);
        if sign_neg {
            scale = -scale;
        }
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &scale;
            }
        }
    }
}

/// `GF(p)` for primes below 2^61, residues in `[0, p)`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        x.mod_floor(&m).to_u64().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn from_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_fraction(&self, x: &Fraction) -> Result<u64> {
        let den = self.reduce_big(x.denom());
        if den == 0 {
            return Err(Error::InvalidArgument(format!("{x} is undefined modulo {}", self.p)));
        }
        Ok(self.mul(&self.reduce_big(x.numer()), &self.inv(&den)))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p, extension: 1 }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `GF(p^k)` with `k ≥ 2` and at most 2^16 elements.
///
/// An element is the integer whose base-`p` digits are its coefficients in
/// `F_p[x]/(m)`; multiplication goes through discrete log tables for a
/// primitive modulus `m`.
#[derive(Clone, Debug)]
pub struct ExtField {
    p: u32,
    k: u32,
    q: u32,
    exp: std::sync::Arc<Vec<u32>>,
    log: std::sync::Arc<Vec<u32>>,
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Self {
        let p = p as u32;
        let q = p.pow(k);
        // search monic degree-k polynomials for one with x primitive
        for tail in 0..q {
            let modulus: Vec<u32> = digits(tail, p, k as usize);
            if modulus[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = power_tables(p, k, &modulus) {
                return ExtField { p, k, q, exp: exp.into(), log: log.into() };
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    fn digit_op(&self, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
}

fn digits(mut x: u32, p: u32, k: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

/// Powers of `x` modulo `x^k + m_{k-1}x^{k-1} + … + m_0`; `None` if `x` is not primitive.
fn power_tables(p: u32, k: u32, m: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let q = p.pow(k);
    let k = k as usize;
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![u32::MAX; q as usize];
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    for i in 0..q - 1 {
        let code = cur.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        if log[code as usize] != u32::MAX {
            return None;
        }
        log[code as usize] = i;
        exp.push(code);
        // multiply by x
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            cur[j] = (cur[j] + p * p - top * m[j] % p) % p;
        }
    }
    let code = cur.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    (code == 1).then_some((exp, log))
}

impl Field for ExtField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p;
        self.digit_op(*a, *b, |x, y| (x + y) % p)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p;
        self.digit_op(*a, *b, |x, y| (x + p - y) % p)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let e = (self.log[*a as usize] + self.log[*b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }
    fn neg(&self, a: &u32) -> u32 {
        self.sub(&0, a)
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let l = self.log[*a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }
    fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }
    fn from_fraction(&self, x: &Fraction) -> Result<u32> {
        let base = PrimeField { p: self.p as u64 };
        Ok(base.from_fraction(x)? as u32)
    }
    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.q)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p as u64, extension: self.k }
    }
    fn render(&self, a: &u32) -> String {
        if *a < self.p {
            a.to_string()
        } else {
            format!("g^{}", self.log[*a as usize])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1 << 61).is_err());
    }

    fn check_axioms<F: Field>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.add(&f.sub(&a, &b), &b), a);
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
            }
        }
    }

    #[test]
    fn field_axioms() {
        check_axioms(&Rationals, 1);
        check_axioms(&PrimeField::new(7).unwrap(), 2);
        check_axioms(&PrimeField::new((1 << 61) - 1).unwrap(), 3);
        check_axioms(&ExtField::new(2, 3), 4);
        check_axioms(&ExtField::new(3, 2), 5);
        check_axioms(&ExtField::new(2, 16), 6);
    }

    #[test]
    fn extension_has_all_elements() {
        let f = ExtField::new(2, 4);
        let mut seen: Vec<u32> = f.exp.to_vec();
        seen.sort();
        assert_eq!(seen, (1..16).collect::<Vec<_>>());
        // char 2: 1 + 1 = 0
        assert_eq!(f.add(&1, &1), 0);
    }

    #[test]
    fn fractions_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let half: Fraction = "1/2".parse().unwrap();
        assert_eq!(f.from_fraction(&half).unwrap(), 4);
        assert!(f.from_fraction(&"1/7".parse().unwrap()).is_err());
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn room() {
        assert_eq!(FieldSpec::with_room(2, 12).unwrap(), FieldSpec::new(2, 4).unwrap());
        assert_eq!(FieldSpec::with_room(7, 12).unwrap(), FieldSpec::new(7, 2).unwrap());
        assert_eq!(FieldSpec::with_room(13, 12).unwrap(), FieldSpec::prime(13).unwrap());
    }

    #[test]
    fn rational_normalize() {
        let mut row: Vec<BigRational> = vec![
            BigRational::zero(),
            BigRational::new((-2).into(), 3.into()),
            BigRational::new(4.into(), 9.into()),
        ];
        Rationals.normalize(&mut row);
        assert_eq!(row[1], BigRational::from_integer(3.into()));
        assert_eq!(row[2], BigRational::from_integer((-2).into()));
    }
}
