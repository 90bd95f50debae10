//! Checks shared by the acceptance harness and the property tests. Each one
//! recomputes its answer independently of the library code under test.

#![allow(dead_code)]

use canring::conelattice::monomial_basis;
use canring::divisor::{graded_dim, QDivisor};
use canring::exactla::Field;
use canring::presentation::{
    brute_force_oracle, monomials_of_degree, run_engine, EngineOptions, LeadingTerm, Realization, Report,
};
use canring::ratapprox::{best_lower_approximations, best_upper_approximations, Fraction};
use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use std::sync::atomic::{AtomicUsize, Ordering};

pub fn fr(s: &str) -> Fraction {
    s.parse().unwrap()
}

pub fn div(pairs: &[(i64, i64)]) -> QDivisor {
    QDivisor::from_alphas(pairs.iter().map(|&(p, q)| Fraction::new(p, q).unwrap()).collect()).unwrap()
}

pub fn render(div: &QDivisor) -> String {
    div.alphas().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

/// A random fraction `p/q` with `1 ≤ q ≤ max_den` and `|p/q| ≤ bound`.
pub fn random_fraction(rng: &mut impl Rng, max_den: i64, bound: i64) -> Fraction {
    let q = rng.gen_range(1..=max_den);
    Fraction::new(rng.gen_range(-bound * q..=bound * q), q).unwrap()
}

/// Record-setting values of `⌊qα⌋/q` (or `⌈qα⌉/q`) as `q` grows.
pub fn approx_chain_oracle(alpha: &Fraction, lower: bool) -> Vec<Fraction> {
    let den: i64 = alpha.denom().try_into().unwrap();
    let mut out: Vec<Fraction> = Vec::new();
    for q in 1..=den {
        let qa = alpha * &Fraction::from_int(q);
        let c = if lower { qa.floor() } else { qa.ceil() };
        let x = Fraction::new(c, q).unwrap();
        let better = match out.last() {
            None => true,
            Some(prev) => (lower && &x > prev) || (!lower && &x < prev),
        };
        if better {
            out.push(x);
        }
    }
    out
}

/// Both approximation chains match the record oracle and are unimodular.
pub fn check_approximations(alpha: &Fraction) -> Result<(), String> {
    let lo = best_lower_approximations(alpha, &Fraction::from_int(alpha.floor())).map_err(|e| e.to_string())?;
    let hi = best_upper_approximations(alpha, &Fraction::from_int(alpha.ceil())).map_err(|e| e.to_string())?;
    for (chain, lower) in [(&lo.entries, true), (&hi.entries, false)] {
        let want = approx_chain_oracle(alpha, lower);
        if chain != &want {
            return Err(format!("{alpha}: chain {chain:?}, oracle {want:?}"));
        }
        for w in chain.windows(2) {
            let det: BigInt = w[1].numer() * w[0].denom() - w[0].numer() * w[1].denom();
            let sign = if lower { BigInt::one() } else { -BigInt::one() };
            if det != sign {
                return Err(format!("{alpha}: {} and {} have determinant {det}", w[0], w[1]));
            }
        }
    }
    if !lo.is_unimodular() || !hi.is_unimodular() {
        return Err(format!("{alpha}: is_unimodular disagrees"));
    }
    Ok(())
}

/// The monomial basis of `S_d` is a set of distinct cone points of size `dim S_d`.
pub fn check_basis_cardinality(div: &QDivisor, d: u64) -> Result<(), String> {
    let basis = monomial_basis(div, d);
    let want = graded_dim(div, d);
    if basis.len() != want {
        return Err(format!("{} d={d}: basis {} vs dim {want}", render(div), basis.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for m in &basis {
        if m.d != d || !m.in_cone(div) || !seen.insert(m.c.clone()) {
            return Err(format!("{} d={d}: bad basis element {m:?}", render(div)));
        }
    }
    Ok(())
}

/// Standard monomials with respect to the leading terms count `dim S_d` in
/// every degree through the truncation.
pub fn check_hilbert(div: &QDivisor, report: &Report) -> Result<(), String> {
    let Some(g) = &report.groebner else { return Ok(()) };
    check_hilbert_terms(div, &report.generator_degrees(), &g.leading_terms, g.truncation)
}

pub static HILBERT_CHECKS: AtomicUsize = AtomicUsize::new(0);

pub fn check_hilbert_terms(div: &QDivisor, degs: &[u64], lts: &[LeadingTerm], truncation: u64) -> Result<(), String> {
    HILBERT_CHECKS.fetch_add(1, Ordering::Relaxed);
    for d in 0..=truncation {
        let standard = monomials_of_degree(degs, d)
            .into_iter()
            .filter(|m| !lts.iter().any(|lt| divides(&lt.exponents, m)))
            .count();
        let dim = graded_dim(div, d);
        if standard != dim {
            return Err(format!("{} d={d}: {standard} standard monomials, dim {dim}", render(div)));
        }
    }
    Ok(())
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Engine and brute-force oracle give the same generator and relation degrees.
pub fn check_oracle<F: Field>(real: &Realization<F>, gen_up_to: u64, rel_up_to: u64) -> Result<(), String> {
    let opts = EngineOptions {
        gen_up_to: Some(gen_up_to),
        truncation: Some(rel_up_to),
        relations: true,
        groebner: true,
    };
    let rep = run_engine(real, opts, None).map_err(|e| e.to_string())?;
    let oracle = brute_force_oracle(real, gen_up_to, rel_up_to).map_err(|e| e.to_string())?;
    let name = render(&real.divisor);
    if rep.generator_degrees() != oracle.generator_degrees {
        return Err(format!("{name}: generators {:?} vs {:?}", rep.generator_degrees(), oracle.generator_degrees));
    }
    if rep.relation_degrees() != oracle.relation_degrees {
        return Err(format!("{name}: relations {:?} vs {:?}", rep.relation_degrees(), oracle.relation_degrees));
    }
    check_hilbert(&real.divisor, &rep)
}

/// Whether the oracle can handle the instance within its size limits.
pub fn oracle_sized(div: &QDivisor, top: u64, max_dim: usize) -> bool {
    (0..=top).all(|d| graded_dim(div, d) <= max_dim)
}

