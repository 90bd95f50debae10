//! Initial ideal and minimal relations of `I = ker(k[x₁..x_N] → S)`.
//!
//! Degree by degree, the monomials `x_k·s` with `s` standard in degree
//! `d − deg x_k` are taken in increasing revlex order; a monomial is standard
//! when its image is independent of the images of the smaller ones, and
//! otherwise lies in `in(I)`. Non-standard monomials all of whose divisors
//! `m/x_j` are standard are the minimal leading terms.
//!
//! Minimal relations in degree `d` are counted as the first Koszul homology
//! of `x₁..x_N` on `S`, which is only needed where a new leading term appears.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::exactla::{Echelon, ExactMatrix, Field};

use super::generators::GeneratorRecord;
use super::sections::{Poly, Realization};

/// Exponent vector over the generators.
pub type Exps = Vec<u32>;

/// Revlex on monomials of equal degree: at the first index where the
/// exponents differ, the larger exponent gives the smaller monomial.
pub fn revlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    b.cmp(a)
}

/// A weighted-homogeneous polynomial in the generator variables.
#[derive(Clone, Debug)]
pub struct RelationPoly<F: Field> {
    pub degree: u64,
    pub terms: Vec<(Exps, F::Elem)>,
}

impl<F: Field> RelationPoly<F> {
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// The revlex-largest monomial in the support.
    pub fn leading(&self) -> Option<&Exps> {
        self.terms.iter().map(|(m, _)| m).max_by(|a, b| revlex_cmp(a, b))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Analysis {
    pub truncation: u64,
    /// Minimal generators of `in(I)` in degrees `≤ truncation`, with their degrees.
    pub leading_terms: Vec<(u64, Exps)>,
    /// Degrees of the minimal relations, one entry per relation.
    pub relation_degrees: Vec<u64>,
    /// `(d, #standard monomials, dim S_d)` for every degree examined.
    pub hilbert: Vec<(u64, usize, usize)>,
}

pub struct RelationEngine<'a, F: Field> {
    real: &'a Realization<F>,
    gens: &'a [GeneratorRecord<F>],
    degs: Vec<u64>,
    /// Standard monomials per degree and their images, in revlex order.
    standard: Vec<Vec<(Exps, Poly<F>)>>,
    standard_set: Vec<HashSet<Exps>>,
    pub analysis: Analysis,
    pub relations: Vec<RelationPoly<F>>,
}

impl<'a, F: Field> RelationEngine<'a, F> {
    pub fn new(real: &'a Realization<F>, gens: &'a [GeneratorRecord<F>]) -> Self {
        let n = gens.len();
        let unit = vec![0u32; n];
        let one = vec![real.field.one()];
        RelationEngine {
            real,
            gens,
            degs: gens.iter().map(|g| g.degree).collect(),
            standard: vec![vec![(unit.clone(), one)]],
            standard_set: vec![HashSet::from([unit])],
            analysis: Analysis::default(),
            relations: Vec::new(),
        }
    }

    fn image(&self, k: usize, s: &Poly<F>, e: u64) -> Poly<F> {
        self.real.mul_sections(&self.gens[k].section, self.degs[k], s, e)
    }

    /// Runs degrees `1..=truncation`; `with_relations` adds the minimal
    /// relation count, `with_polys` also extracts representatives.
    pub fn run(&mut self, truncation: u64, with_relations: bool, with_polys: bool) -> Result<()> {
        self.analysis.truncation = truncation;
        for d in 1..=truncation {
            let lt = self.macaulay_step(d)?;
            if with_relations && lt > 0 {
                self.koszul_step(d, with_polys)?;
            }
        }
        Ok(())
    }

    fn macaulay_step(&mut self, d: u64) -> Result<usize> {
        let n = self.gens.len();
        let dim = self.real.dim(d);
        let mut cands: HashMap<Exps, (usize, usize)> = HashMap::new();
        for k in 0..n {
            if self.degs[k] > d {
                continue;
            }
            let e = (d - self.degs[k]) as usize;
            for (si, (s, _)) in self.standard[e].iter().enumerate() {
                let mut m = s.clone();
                m[k] += 1;
                cands.entry(m).or_insert((k, si));
            }
        }
        let mut order: Vec<(Exps, (usize, usize))> = cands.into_iter().collect();
        order.sort_by(|a, b| revlex_cmp(&a.0, &b.0));

        let mut span = Echelon::new(self.real.field.clone(), dim);
        let mut std_here = Vec::new();
        let mut non_standard = Vec::new();
        for (m, (k, si)) in order {
            if span.is_full() {
                non_standard.push(m);
                continue;
            }
            let e = d - self.degs[k];
            let img = self.image(k, &self.standard[e as usize][si].1, e);
            if span.insert(img.clone()) {
                std_here.push((m, img));
            } else {
                non_standard.push(m);
            }
        }
        self.analysis.hilbert.push((d, std_here.len(), dim));
        if std_here.len() != dim {
            return Err(Error::GeneratorsIncomplete { degree: d as usize, expected: dim, found: std_here.len() });
        }
        let set: HashSet<Exps> = std_here.iter().map(|(m, _)| m.clone()).collect();
        self.standard.push(std_here);
        self.standard_set.push(set);

        let mut count = 0;
        for m in non_standard {
            let minimal = (0..n).filter(|&j| m[j] > 0).all(|j| {
                let mut q = m.clone();
                q[j] -= 1;
                self.standard_set[(d - self.degs[j]) as usize].contains(&q)
            });
            if minimal {
                self.analysis.leading_terms.push((d, m));
                count += 1;
            }
        }
        Ok(count)
    }

    fn koszul_step(&mut self, d: u64, with_polys: bool) -> Result<()> {
        let f = self.real.field.clone();
        let n = self.gens.len();
        let mut offset = vec![usize::MAX; n];
        let mut width = 0usize;
        for k in 0..n {
            if self.degs[k] <= d {
                let w = self.real.dim(d - self.degs[k]);
                if w > 0 {
                    offset[k] = width;
                    width += w;
                }
            }
        }
        let dim = self.real.dim(d);
        let cycles = width - dim;
        if cycles == 0 {
            return Ok(());
        }
        let mut boundaries = Echelon::new(f.clone(), width);
        'pairs: for j in 0..n {
            for k in j + 1..n {
                if offset[j] == usize::MAX || offset[k] == usize::MAX || self.degs[j] + self.degs[k] > d {
                    continue;
                }
                let e = d - self.degs[j] - self.degs[k];
                let re = self.real.r(e);
                for i in 0..=re {
                    let mut a = vec![f.zero(); (re + 1) as usize];
                    a[i as usize] = f.one();
                    let mut row = vec![f.zero(); width];
                    let gj_a = self.image(j, &a, e);
                    let gk_a = self.image(k, &a, e);
                    for (x, v) in gj_a.into_iter().enumerate() {
                        row[offset[k] + x] = v;
                    }
                    for (x, v) in gk_a.into_iter().enumerate() {
                        row[offset[j] + x] = f.neg(&v);
                    }
                    boundaries.insert(row);
                    if boundaries.rank() == cycles {
                        break 'pairs;
                    }
                }
            }
        }
        let homology = cycles - boundaries.rank();
        self.analysis.relation_degrees.extend(std::iter::repeat(d).take(homology));
        if homology == 0 || !with_polys {
            return Ok(());
        }

        // ∂₁ as a matrix whose rows are the images g_k·t^i
        let mut rows = Vec::with_capacity(width);
        let mut owner = Vec::with_capacity(width);
        for k in 0..n {
            if offset[k] == usize::MAX {
                continue;
            }
            let e = d - self.degs[k];
            let re = self.real.r(e);
            for i in 0..=re {
                let mut a = vec![f.zero(); (re + 1) as usize];
                a[i as usize] = f.one();
                rows.push(self.image(k, &a, e));
                owner.push(k);
            }
        }
        let d1 = ExactMatrix::new(f.clone(), dim, rows)?;
        let kernel = d1.transpose().kernel_basis();
        let mut found = 0;
        for z in kernel {
            if found == homology {
                break;
            }
            if !boundaries.insert(z.clone()) {
                continue;
            }
            found += 1;
            self.relations.push(self.lift_cycle(d, &z, &offset)?);
        }
        if found != homology {
            return Err(Error::Internal(format!("degree {d}: {found} of {homology} cycles lifted")));
        }
        Ok(())
    }

    /// `Σ_k x_k·lift(z_k)`, where `lift` writes `z_k ∈ S_{d−d_k}` in standard monomials.
    fn lift_cycle(&self, d: u64, z: &[F::Elem], offset: &[usize]) -> Result<RelationPoly<F>> {
        let f = &self.real.field;
        let mut acc: HashMap<Exps, F::Elem> = HashMap::new();
        for (k, &off) in offset.iter().enumerate() {
            if off == usize::MAX {
                continue;
            }
            let e = (d - self.degs[k]) as usize;
            let w = self.real.dim(e as u64);
            let part = &z[off..off + w];
            if part.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let basis: Vec<Poly<F>> = self.standard[e].iter().map(|(_, img)| img.clone()).collect();
            let m = ExactMatrix::new(f.clone(), w, basis)?.transpose();
            let coeffs = m
                .solve(part)
                .ok_or_else(|| Error::Internal(format!("degree {e}: standard monomials do not span")))?;
            for ((s, _), c) in self.standard[e].iter().zip(coeffs) {
                if f.is_zero(&c) {
                    continue;
                }
                let mut mono = s.clone();
                mono[k] += 1;
                let slot = acc.entry(mono).or_insert_with(|| f.zero());
                *slot = f.add(slot, &c);
            }
        }
        let mut terms: Vec<(Exps, F::Elem)> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| revlex_cmp(&b.0, &a.0));
        Ok(RelationPoly { degree: d, terms })
    }
}

/// `φ(m)` for a monomial in the generators, by repeated multiplication.
pub fn evaluate_monomial<F: Field>(real: &Realization<F>, gens: &[GeneratorRecord<F>], m: &[u32]) -> (u64, Poly<F>) {
    let mut acc = vec![real.field.one()];
    let mut deg = 0;
    for (k, &e) in m.iter().enumerate() {
        for _ in 0..e {
            acc = real.mul_sections(&acc, deg, &gens[k].section, gens[k].degree);
            deg += gens[k].degree;
        }
    }
    (deg, acc)
}

/// Substitutes the generators into `rel`; true when the result is zero.
pub fn relation_vanishes<F: Field>(real: &Realization<F>, gens: &[GeneratorRecord<F>], rel: &RelationPoly<F>) -> bool {
    let f = &real.field;
    let mut total = vec![f.zero(); real.dim(rel.degree)];
    for (m, c) in &rel.terms {
        let (deg, img) = evaluate_monomial(real, gens, m);
        if deg != rel.degree {
            return false;
        }
        for (t, x) in total.iter_mut().zip(img) {
            *t = f.add(t, &f.mul(c, &x));
        }
    }
    total.iter().all(|x| f.is_zero(x))
}
