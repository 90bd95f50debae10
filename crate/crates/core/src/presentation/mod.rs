//! Presentations of `S_D` for any number of points, over a concrete field.

mod generators;
mod groebner;
mod oracle;
mod scan;
mod sections;

pub use generators::{degree_plan, generators_in_degree, minimal_generators, DegreePlan, GeneratorRecord};
pub use groebner::{
    evaluate_monomial, relation_vanishes, revlex_cmp, Analysis, Exps, RelationEngine, RelationPoly,
};
pub use oracle::{brute_force_oracle, monomials_of_degree, OracleOutcome, ORACLE_MAX_DIM, ORACLE_MAX_MONOMIALS};
pub use scan::{
    chords_are_concurrent, concurrent_sixth_point, random_points, scan_configs, stability_scan, xgen_threshold, ConfigOutcome, ConfigPoints, ScanConfig,
    ScanOptions, ScanReport, Signature,
};
pub use sections::{section_space, Poly, Realization, SectionSpace};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::conelattice::GradedMonomial;
use crate::divisor::{degree_bounds, DegreeBounds, DenominatorData, QDivisor};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec};

/// Default `(generator, relation)` degree limits.
///
/// `deg D > 0` uses the strict bounds; `deg D = 0` gives a polynomial ring on
/// one generator in degree `ℓ`; negative degree gives the trivial ring.
pub fn default_limits(div: &QDivisor) -> Result<DegreeBounds> {
    let deg = div.degree();
    if deg.is_negative() {
        return Ok(DegreeBounds { gen_bound: 0, rel_bound: 0 });
    }
    if deg.is_zero() {
        let ell = DenominatorData::of(div).ell.to_u64().ok_or_else(|| Error::Overflow("lcm".into()))?;
        return Ok(DegreeBounds { gen_bound: ell + 1, rel_bound: 2 * ell + 1 });
    }
    degree_bounds(div)
}

/// Relation polynomials of `I` up to degree `up_to`: a basis of `I_d`
/// modulo `(R₊I)_d` in each degree.
pub fn relation_ideal<F: Field>(
    real: &Realization<F>,
    gens: &[GeneratorRecord<F>],
    up_to: u64,
) -> Result<Vec<RelationPoly<F>>> {
    let mut eng = RelationEngine::new(real, gens);
    eng.run(up_to, true, true)?;
    Ok(eng.relations)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub degree: u64,
    pub exponents: Exps,
}

/// `in(I)` up to the truncation degree, under revlex with the generators
/// ordered by degree and then by decreasing vanishing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerReport {
    pub order: String,
    pub truncation: u64,
    pub leading_terms: Vec<LeadingTerm>,
}

pub fn groebner_leading_terms<F: Field>(
    real: &Realization<F>,
    gens: &[GeneratorRecord<F>],
    up_to: u64,
) -> Result<GroebnerReport> {
    let mut eng = RelationEngine::new(real, gens);
    eng.run(up_to, false, false)?;
    Ok(groebner_report(&eng.analysis))
}

fn groebner_report(a: &Analysis) -> GroebnerReport {
    GroebnerReport {
        order: "revlex".into(),
        truncation: a.truncation,
        leading_terms: a
            .leading_terms
            .iter()
            .map(|(d, e)| LeadingTerm { degree: *d, exponents: e.clone() })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub field: String,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub degree: u64,
    pub monomial: GradedMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub degree: u64,
    pub support_size: usize,
    pub terms: Vec<(Exps, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerJson {
    pub truncation: u64,
    pub leading_terms: Vec<LeadingTerm>,
}

/// The engine's answer for one divisor and one placement of its points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: ConfigJson,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<RelationJson>,
    pub groebner: Option<GroebnerJson>,
    pub stable: Option<bool>,
}

impl Report {
    pub fn generator_degrees(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn relation_degrees(&self) -> Vec<u64> {
        self.relations.iter().map(|r| r.degree).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Generators are sought in degrees below this (default: the generator bound).
    pub gen_up_to: Option<u64>,
    /// Relations and leading terms are computed through this degree
    /// (default: the relation bound).
    pub truncation: Option<u64>,
    pub relations: bool,
    pub groebner: bool,
}

pub fn render_points<F: Field>(real: &Realization<F>) -> Vec<String> {
    real.points
        .iter()
        .map(|p| p.as_ref().map_or_else(|| "inf".to_string(), |x| real.field.render(x)))
        .collect()
}

/// Runs the engine on an already placed divisor.
pub fn run_engine<F: Field>(real: &Realization<F>, opts: EngineOptions, seed: Option<u64>) -> Result<Report> {
    let limits = default_limits(&real.divisor)?;
    let gen_up_to = opts.gen_up_to.unwrap_or(limits.gen_bound);
    let truncation = opts.truncation.unwrap_or(limits.rel_bound);
    let config = ConfigJson { field: real.field.spec().to_string(), points: render_points(real), seed };
    let gens = minimal_generators(real, gen_up_to);
    let generators = gens
        .iter()
        .map(|g| GeneratorJson { degree: g.degree, monomial: g.monomial.clone() })
        .collect();
    let mut relations = Vec::new();
    let mut groebner = None;
    if opts.relations || opts.groebner {
        let mut eng = RelationEngine::new(real, &gens);
        eng.run(truncation, opts.relations, opts.relations)?;
        for rel in &eng.relations {
            if !relation_vanishes(real, &gens, rel) {
                return Err(Error::Internal(format!("relation of degree {} does not vanish", rel.degree)));
            }
            relations.push(RelationJson {
                degree: rel.degree,
                support_size: rel.support_size(),
                terms: rel.terms.iter().map(|(m, c)| (m.clone(), real.field.render(c))).collect(),
            });
        }
        if opts.groebner {
            let g = groebner_report(&eng.analysis);
            groebner = Some(GroebnerJson { truncation: g.truncation, leading_terms: g.leading_terms });
        }
    }
    Ok(Report { config, generators, relations, groebner, stable: None })
}

/// Places the divisor's own points in the named field and runs the engine.
pub fn compute_report(div: &QDivisor, field: FieldSpec, opts: EngineOptions) -> Result<Report> {
    crate::with_field!(field, |f| {
        let real = Realization::new(div, f)?;
        run_engine(&real, opts, None)
    })
}
