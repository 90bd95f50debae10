//! Runs the generator (and optionally Gröbner) computation over many point
//! configurations and compares the answers.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divisor::{PointP1, QDivisor};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec};
use crate::ratapprox::Fraction;

use super::{render_points, run_engine, ConfigJson, EngineOptions, LeadingTerm, Realization};

/// `⌈(2n − 2)/deg D⌉`: from this degree on, new generators can be chosen
/// independently of the points.
pub fn xgen_threshold(div: &QDivisor) -> Result<u64> {
    let deg = div.degree();
    if !deg.is_positive() {
        return Err(Error::Unsupported("xgen_threshold needs deg D > 0".into()));
    }
    let n = div.n() as i64;
    let t = (Fraction::from_int(2 * n - 2) / deg).ceil();
    t.to_u64().ok_or_else(|| Error::Overflow("xgen threshold".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfigPoints {
    Explicit(Vec<PointP1>),
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub field: FieldSpec,
    pub points: ConfigPoints,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub gen_up_to: Option<u64>,
    /// Also compare leading terms through this degree.
    pub groebner: Option<u64>,
    /// Record minimal relation degrees (reported, not compared).
    pub relations: Option<u64>,
}

/// What must agree across configurations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub generator_degrees: Vec<u64>,
    pub leading_terms: Option<Vec<LeadingTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigOutcome {
    pub index: usize,
    pub config: ConfigJson,
    pub signature: Option<Signature>,
    pub relation_degrees: Option<Vec<u64>>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub alphas: Vec<Fraction>,
    pub xgen_threshold: Option<u64>,
    pub outcomes: Vec<ConfigOutcome>,
    pub reference: Option<Signature>,
    pub disagreeing: Vec<usize>,
    pub stable: bool,
    pub relations_agree: Option<bool>,
}

/// `n` distinct points of the field, one of them possibly `∞`, drawn from a
/// seeded generator. `None` if the field is too small.
pub fn random_points<F: Field>(field: &F, n: usize, seed: u64) -> Option<Vec<Option<F::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inf_at = rng.gen_range(0..=n);
    let mut out: Vec<Option<F::Elem>> = Vec::with_capacity(n);
    for i in 0..n {
        if i == inf_at {
            out.push(None);
            continue;
        }
        let mut tries = 0;
        loop {
            let x = Some(field.random(&mut rng));
            if !out.contains(&x) {
                out.push(x);
                break;
            }
            tries += 1;
            if tries > 10_000 {
                return None;
            }
        }
    }
    Some(out)
}

/// `per_field` seeded configurations for each characteristic (0 for the
/// rationals). Finite fields are enlarged to `GF(p^k)` until they have room
/// for `2n + 2` points.
pub fn scan_configs(n: usize, chars: &[u64], per_field: usize, seed: u64) -> Result<Vec<ScanConfig>> {
    let mut out = Vec::new();
    for &p in chars {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::with_room(p, 2 * n as u64 + 2)? };
        for i in 0..per_field {
            let s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add((p << 20) ^ i as u64);
            out.push(ScanConfig { field, points: ConfigPoints::Seeded(s) });
        }
    }
    Ok(out)
}

fn run_config(div: &QDivisor, cfg: &ScanConfig, index: usize, opts: ScanOptions) -> ConfigOutcome {
    let eopts = EngineOptions {
        gen_up_to: opts.gen_up_to,
        truncation: opts.groebner.max(opts.relations),
        relations: opts.relations.is_some(),
        groebner: opts.groebner.is_some(),
    };
    let skipped = |config: ConfigJson, why: String| ConfigOutcome {
        index,
        config,
        signature: None,
        relation_degrees: None,
        skipped: Some(why),
    };
    crate::with_field!(cfg.field, |f| {
        let (real, seed) = match &cfg.points {
            ConfigPoints::Explicit(pts) => {
                let placed = div.with_points(pts.clone()).and_then(|d| Realization::new(&d, f.clone()));
                (placed, None)
            }
            ConfigPoints::Seeded(s) => {
                let n = div.with_ghost().n();
                let placed = random_points(&f, n, *s)
                    .ok_or_else(|| Error::TooLarge(format!("{} has no room for {n} points", cfg.field)))
                    .and_then(|pts| Realization::with_points(div, f.clone(), pts));
                (placed, Some(*s))
            }
        };
        let config = ConfigJson {
            field: cfg.field.to_string(),
            points: real.as_ref().map(render_points).unwrap_or_default(),
            seed,
        };
        let real = match real {
            Ok(r) => r,
            Err(e) => return skipped(config, e.to_string()),
        };
        match run_engine(&real, eopts, seed) {
            Ok(rep) => ConfigOutcome {
                index,
                signature: Some(Signature {
                    generator_degrees: rep.generator_degrees(),
                    leading_terms: rep.groebner.as_ref().map(|g| g.leading_terms.clone()),
                }),
                relation_degrees: opts.relations.map(|_| rep.relation_degrees()),
                config: rep.config,
                skipped: None,
            },
            Err(e) => skipped(config, e.to_string()),
        }
    })
}

/// Runs every configuration (in parallel) and compares each signature with
/// the most common one.
pub fn stability_scan(div: &QDivisor, configs: &[ScanConfig], opts: ScanOptions) -> ScanReport {
    let outcomes: Vec<ConfigOutcome> =
        configs.par_iter().enumerate().map(|(i, c)| run_config(div, c, i, opts)).collect();

    let mut counts: HashMap<&Signature, (usize, usize)> = HashMap::new();
    for o in &outcomes {
        if let Some(s) = &o.signature {
            let e = counts.entry(s).or_insert((0, o.index));
            e.0 += 1;
        }
    }
    // most common, ties broken by first appearance
    let reference = counts
        .iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .map(|(s, _)| (*s).clone());
    let disagreeing: Vec<usize> = outcomes
        .iter()
        .filter(|o| o.signature.is_some() && o.signature != reference)
        .map(|o| o.index)
        .collect();
    let relations_agree = opts.relations.map(|_| {
        let mut seen = outcomes.iter().filter_map(|o| o.relation_degrees.as_ref());
        match seen.next() {
            Some(first) => seen.all(|r| r == first),
            None => true,
        }
    });
    ScanReport {
        alphas: div.alphas().to_vec(),
        xgen_threshold: xgen_threshold(div).ok(),
        stable: disagreeing.is_empty(),
        outcomes,
        reference,
        disagreeing,
        relations_agree,
    }
}

/// Coefficients `[ab, −(a+b), 1]` of the chord through `v(a), v(b)` on the
/// conic `v(t) = (1 : t : t²)`.
fn chord(a: &Fraction, b: &Fraction) -> [Fraction; 3] {
    [a * b, -(a + b), Fraction::one()]
}

fn det3(m: [&[Fraction; 3]; 3]) -> Fraction {
    let minor = |i: usize, j: usize, k: usize, l: usize| &(&m[1][i] * &m[2][j]) - &(&m[1][k] * &m[2][l]);
    &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0))) + &(&m[0][2] * &minor(0, 1, 1, 0))
}

/// Given five finite points, the sixth making the chords `v(p₁)v(p₂)`,
/// `v(p₃)v(p₄)`, `v(p₅)v(p₆)` concurrent. The determinant is affine in `p₆`.
pub fn concurrent_sixth_point(p: &[Fraction; 5]) -> Option<Fraction> {
    let r1 = chord(&p[0], &p[1]);
    let r2 = chord(&p[2], &p[3]);
    let c0 = det3([&r1, &r2, &[Fraction::zero(), -p[4].clone(), Fraction::one()]]);
    let c1 = det3([&r1, &r2, &[p[4].clone(), Fraction::from_int(-1), Fraction::zero()]]);
    if c1.is_zero() {
        return None;
    }
    let x = -(&c0 / &c1);
    (!p.contains(&x)).then_some(x)
}

pub fn chords_are_concurrent(p: &[Fraction; 6]) -> bool {
    det3([&chord(&p[0], &p[1]), &chord(&p[2], &p[3]), &chord(&p[4], &p[5])]).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::fractions;
    use crate::exactla::Rationals;

    #[test]
    fn thresholds() {
        let d = QDivisor::from_alphas(fractions(&[(-1, 2), (1, 3), (1, 5)])).unwrap();
        assert_eq!(xgen_threshold(&d).unwrap(), 120);
        let d = QDivisor::from_alphas(fractions(&[(-1, 2), (-1, 2), (1, 3), (1, 3), (1, 5), (1, 5)])).unwrap();
        assert_eq!(xgen_threshold(&d).unwrap(), 150);
        let d = QDivisor::from_alphas(fractions(&[(13, 5)])).unwrap();
        assert_eq!(xgen_threshold(&d).unwrap(), 0);
        let d = QDivisor::from_alphas(fractions(&[(-1, 2)])).unwrap();
        assert!(xgen_threshold(&d).is_err());
    }

    #[test]
    fn seeded_points_are_reproducible() {
        let a = random_points(&Rationals, 5, 11).unwrap();
        assert_eq!(a, random_points(&Rationals, 5, 11).unwrap());
        assert_eq!(a.iter().filter(|p| p.is_none()).count() <= 1, true);
    }

    #[test]
    fn concurrency_solver() {
        let p = fractions(&[(0, 1), (1, 1), (2, 1), (3, 1), (5, 1)]);
        let p: [Fraction; 5] = p.try_into().unwrap();
        let x = concurrent_sixth_point(&p).unwrap();
        let mut all = p.to_vec();
        all.push(x);
        assert!(chords_are_concurrent(&all.clone().try_into().unwrap()));
        all[5] = &all[5] + &Fraction::one();
        assert!(!chords_are_concurrent(&all.try_into().unwrap()));
    }
}
