//! Minimal generators, one degree at a time.
//!
//! For `1 ≤ c ≤ d/2` with `S_c, S_{d−c} ≠ 0`, the product `S_c·S_{d−c}` is
//! the space `V_A` of sections of `S_d` vanishing on
//! `A = {i : ⌊cαᵢ⌋ + ⌊(d−c)αᵢ⌋ < ⌊dαᵢ⌋}`. The family of such sets is first
//! shrunk combinatorially (drop empty `V_A`, keep minimal sets, merge `A, B`
//! into `A ∩ B` whenever `|A ∪ B| ≤ r + 1`), which fixes a marked point `Pⱼ`.
//! New generators are then picked greedily among the monomials
//! `tⱼ^a t_k^{r−a}` in decreasing order of `a`.

use serde::{Deserialize, Serialize};

use crate::conelattice::GradedMonomial;
use crate::exactla::{Echelon, Field};

use super::sections::{Poly, Realization};

#[derive(Clone, Debug)]
pub struct GeneratorRecord<F: Field> {
    pub degree: u64,
    pub monomial: GradedMonomial,
    pub section: Poly<F>,
    pub marked_point: usize,
    pub order_at_marked_point: i64,
}

/// The combinatorial part of one degree: which `V_A` are pregenerated and
/// where the candidates vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePlan {
    pub degree: u64,
    pub r: i64,
    pub family: Vec<Vec<usize>>,
    pub marked: usize,
    pub partner: usize,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn minimal_sets(mut fam: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    fam.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    fam.dedup();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in fam {
        if !out.iter().any(|b| is_subset(b, &a)) {
            out.push(a);
        }
    }
    out.sort();
    out
}

fn union_len(a: &[usize], b: &[usize]) -> usize {
    a.len() + b.iter().filter(|x| !a.contains(x)).count()
}

pub fn degree_plan<F: Field>(real: &Realization<F>, d: u64) -> Option<DegreePlan> {
    let bd = real.floors(d);
    let r: i64 = bd.iter().sum();
    if r < 0 {
        return None;
    }
    let n = real.n();
    let mut fam = Vec::new();
    for c in 1..=d / 2 {
        if real.r(c) < 0 || real.r(d - c) < 0 {
            continue;
        }
        let (bc, be) = (real.floors(c), real.floors(d - c));
        let a: Vec<usize> = (0..n).filter(|&i| bc[i] + be[i] < bd[i]).collect();
        if (a.len() as i64) <= r {
            fam.push(a);
        }
    }
    let mut fam = minimal_sets(fam);
    'merge: loop {
        for x in 0..fam.len() {
            for y in x + 1..fam.len() {
                if union_len(&fam[x], &fam[y]) as i64 <= r + 1 {
                    let inter: Vec<usize> = fam[x].iter().copied().filter(|i| fam[y].contains(i)).collect();
                    fam.remove(y);
                    fam[x] = inter;
                    fam = minimal_sets(fam);
                    continue 'merge;
                }
            }
        }
        break;
    }
    let marked = match fam.as_slice() {
        [a] if !a.is_empty() => a[0],
        [a, b] => {
            let (a, b) = if b.len() as i64 == r { (a, b) } else { (b, a) };
            if b.len() as i64 == r {
                a.iter().copied().find(|i| !b.contains(i)).unwrap_or(0)
            } else {
                0
            }
        }
        _ => 0,
    };
    let partner = if marked == 0 { 1 } else { 0 };
    Some(DegreePlan { degree: d, r, family: fam, marked, partner })
}

/// New generators in degree `d`, in decreasing order of vanishing at the marked point.
pub fn generators_in_degree<F: Field>(real: &Realization<F>, d: u64) -> Vec<GeneratorRecord<F>> {
    let Some(plan) = degree_plan(real, d) else {
        return Vec::new();
    };
    let r = plan.r;
    let mut span = Echelon::new(real.field.clone(), (r + 1) as usize);
    for a in &plan.family {
        for v in real.vanishing_basis(a, r) {
            span.insert(v);
            if span.is_full() {
                return Vec::new();
            }
        }
    }
    let b = real.floors(d);
    let mut out = Vec::new();
    for a in (0..=r).rev() {
        if span.is_full() {
            break;
        }
        let mut e = vec![0i64; real.n()];
        e[plan.marked] = a;
        e[plan.partner] = r - a;
        let section = real.orders_poly(&e, r);
        if span.insert(section.clone()) {
            let c = e.iter().zip(&b).map(|(e, b)| e - b).collect();
            out.push(GeneratorRecord {
                degree: d,
                monomial: GradedMonomial { d, c },
                section,
                marked_point: plan.marked,
                order_at_marked_point: a,
            });
        }
    }
    out
}

/// All minimal generators of degree below `up_to`, by degree and then by
/// decreasing order of vanishing at the marked point.
pub fn minimal_generators<F: Field>(real: &Realization<F>, up_to: u64) -> Vec<GeneratorRecord<F>> {
    (1..up_to).flat_map(|d| generators_in_degree(real, d)).collect()
}
