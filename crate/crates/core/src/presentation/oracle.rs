//! Independent recomputation of generator and minimal-relation degrees by
//! plain linear algebra: products of basis sections, a lexicographic
//! candidate order, full evaluation matrices and `I_d / (R₊I)_d`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::conelattice::monomial_basis;
use crate::error::{Error, Result};
use crate::exactla::{quotient_complement, Echelon, ExactMatrix, Field};

use super::sections::{Poly, Realization};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub generator_degrees: Vec<u64>,
    pub relation_degrees: Vec<u64>,
}

pub const ORACLE_MAX_DIM: usize = 40;
pub const ORACLE_MAX_MONOMIALS: usize = 4000;

/// Monomials of weighted degree `d` in variables of the given degrees.
pub fn monomials_of_degree(degs: &[u64], d: u64) -> Vec<Vec<u32>> {
    fn go(k: usize, left: u64, degs: &[u64], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == degs.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        loop {
            cur.push(e);
            go(k + 1, left - e as u64 * degs[k], degs, cur, out);
            cur.pop();
            if (e as u64 + 1) * degs[k] > left {
                break;
            }
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(0, d, degs, &mut Vec::with_capacity(degs.len()), &mut out);
    out.sort();
    out
}

pub fn brute_force_oracle<F: Field>(real: &Realization<F>, gen_up_to: u64, rel_up_to: u64) -> Result<OracleOutcome> {
    let f = &real.field;
    if real.divisor.degree().is_negative() {
        return Ok(OracleOutcome::default());
    }
    let top = gen_up_to.max(rel_up_to);
    for d in 0..=top {
        if real.dim(d) > ORACLE_MAX_DIM {
            return Err(Error::TooLarge(format!("dim S_{d} = {}", real.dim(d))));
        }
    }

    let basis: Vec<Vec<Poly<F>>> = (0..=top)
        .map(|d| monomial_basis(&real.divisor, d).iter().map(|m| real.monomial_section(m)).collect())
        .collect();
    let mut gens: Vec<(u64, Poly<F>)> = Vec::new();
    for d in 1..gen_up_to {
        let dim = real.dim(d);
        if dim == 0 {
            continue;
        }
        let mut products = Vec::new();
        for c in 1..=d / 2 {
            for x in &basis[c as usize] {
                for y in &basis[(d - c) as usize] {
                    products.push(real.mul_sections(x, c, y, d - c));
                }
            }
        }
        let sub = ExactMatrix::new(f.clone(), dim, products)?;
        // lexicographic on exponent vectors: the basis comes sorted by c₁
        for i in quotient_complement(&sub, &basis[d as usize])? {
            gens.push((d, basis[d as usize][i].clone()));
        }
    }

    let degs: Vec<u64> = gens.iter().map(|g| g.0).collect();
    let mut kernels: Vec<Vec<Vec<u32>>> = vec![Vec::new(); rel_up_to as usize + 1];
    let mut kernel_vecs: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); rel_up_to as usize + 1];
    let mut relation_degrees = Vec::new();
    for d in 1..=rel_up_to {
        let monos = monomials_of_degree(&degs, d);
        if monos.len() > ORACLE_MAX_MONOMIALS {
            return Err(Error::TooLarge(format!("{} monomials in degree {d}", monos.len())));
        }
        let dim = real.dim(d);
        let images: Vec<Poly<F>> = monos
            .iter()
            .map(|m| {
                let mut acc = vec![f.one()];
                let mut deg = 0;
                for (k, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        acc = real.mul_sections(&acc, deg, &gens[k].1, gens[k].0);
                        deg += gens[k].0;
                    }
                }
                acc
            })
            .collect();
        let eval = ExactMatrix::new(f.clone(), dim, images)?;
        let kernel = eval.transpose().kernel_basis();
        let rank = eval.rank();
        if rank != dim {
            return Err(Error::GeneratorsIncomplete { degree: d as usize, expected: dim, found: rank });
        }
        let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut lower = Echelon::new(f.clone(), monos.len());
        'shifts: for (k, &dk) in degs.iter().enumerate() {
            if dk > d {
                continue;
            }
            let e = (d - dk) as usize;
            for v in &kernel_vecs[e] {
                let mut row = vec![f.zero(); monos.len()];
                for (m, c) in kernels[e].iter().zip(v) {
                    if !f.is_zero(c) {
                        let mut mm = m.clone();
                        mm[k] += 1;
                        row[index[&mm]] = c.clone();
                    }
                }
                lower.insert(row);
                if lower.rank() == kernel.len() {
                    break 'shifts;
                }
            }
        }
        let fresh = kernel.len() - lower.rank();
        relation_degrees.extend(std::iter::repeat(d).take(fresh));
        kernels[d as usize] = monos.clone();
        kernel_vecs[d as usize] = kernel;
    }
    Ok(OracleOutcome { generator_degrees: degs, relation_degrees })
}
