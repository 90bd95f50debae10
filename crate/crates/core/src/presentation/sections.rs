//! Concrete sections over a field.
//!
//! With `bᵢ = ⌊dαᵢ⌋` and `r = Σbᵢ`, an element of `S_d` is written
//! `F(t) / ∏_{Pᵢ finite} (t − pᵢ)^{bᵢ}` with `deg F ≤ r`, and is stored as the
//! coefficient vector of `F` (length `r + 1`). Its vanishing order at a finite
//! `Pᵢ` is `ord_{pᵢ}F`, and at infinity it is `r − deg F`. A monomial with
//! orders `eᵢ = cᵢ + bᵢ` is `F = ∏_{finite} (t − pᵢ)^{eᵢ}`, each factor taken up
//! to a constant (over Q it is the integral `q·t − p`).
//!
//! The product of sections of degrees `c` and `e` has coordinates
//! `F·G·∏(t − pᵢ)` over the finite points where `⌊(c+e)αᵢ⌋` exceeds
//! `⌊cαᵢ⌋ + ⌊eαᵢ⌋`.

use crate::conelattice::{monomial_basis, GradedMonomial};
use crate::divisor::{floors_from_pq, PointP1, QDivisor};
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Field};

pub type Poly<F> = Vec<<F as Field>::Elem>;

/// A divisor whose points have been placed in a concrete field.
#[derive(Clone, Debug)]
pub struct Realization<F: Field> {
    pub field: F,
    pub divisor: QDivisor,
    /// `None` is the point at infinity.
    pub points: Vec<Option<F::Elem>>,
}

impl<F: Field> Realization<F> {
    /// Places the divisor's own points (ghost-augmented when `n = 1`).
    pub fn new(div: &QDivisor, field: F) -> Result<Self> {
        let div = div.with_ghost();
        let points = div
            .points()
            .iter()
            .map(|p| match p {
                PointP1::Infinity => Ok(None),
                PointP1::Finite(x) => field.from_fraction(x).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        Realization::with_points(&div, field, points)
    }

    /// Uses explicitly given field points for the (ghost-augmented) divisor.
    pub fn with_points(div: &QDivisor, field: F, points: Vec<Option<F::Elem>>) -> Result<Self> {
        let div = div.with_ghost();
        if points.len() != div.n() {
            return Err(Error::InvalidArgument(format!(
                "{} points for a divisor on {}",
                points.len(),
                div.n()
            )));
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::PointCollision(j, i));
                }
            }
        }
        Ok(Realization { field, divisor: div, points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn floors(&self, d: u64) -> Vec<i64> {
        floors_from_pq(self.divisor.pq(), d)
    }

    /// `r = deg⌊dD⌋`; `S_d = 0` when negative.
    pub fn r(&self, d: u64) -> i64 {
        self.floors(d).iter().sum()
    }

    pub fn dim(&self, d: u64) -> usize {
        (self.r(d) + 1).max(0) as usize
    }

    pub fn mul_poly(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        let f = &self.field;
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !f.is_zero(y) {
                    out[i + j] = f.add(&out[i + j], &f.mul(x, y));
                }
            }
        }
        out
    }

    /// A multiple of `t − pᵢ`, or `1` at infinity.
    fn linear(&self, i: usize) -> Poly<F> {
        match &self.points[i] {
            Some(p) => {
                let (c0, c1) = self.field.linear_factor(p);
                vec![c0, c1]
            }
            None => vec![self.field.one()],
        }
    }

    /// `∏_{finite i} (t − pᵢ)^{eᵢ}` padded to length `r + 1`.
    pub fn orders_poly(&self, e: &[i64], r: i64) -> Poly<F> {
        let f = &self.field;
        let mut acc = vec![f.one()];
        for (i, &k) in e.iter().enumerate() {
            if self.points[i].is_none() {
                continue;
            }
            let lin = self.linear(i);
            for _ in 0..k {
                acc = self.mul_poly(&acc, &lin);
            }
        }
        pad(f, acc, r)
    }

    /// Coordinates of a monomial section.
    pub fn monomial_section(&self, m: &GradedMonomial) -> Poly<F> {
        let b = self.floors(m.d);
        let r: i64 = b.iter().sum();
        let e: Vec<i64> = m.c.iter().zip(&b).map(|(c, b)| c + b).collect();
        self.orders_poly(&e, r)
    }

    /// The sections of `V_A ⊆ S_d` vanishing at every point of `A`, as a
    /// basis `∏_{i∈A finite}(t − pᵢ)·t^m`, `0 ≤ m ≤ r − |A|`.
    pub fn vanishing_basis(&self, a: &[usize], r: i64) -> Vec<Poly<F>> {
        let f = &self.field;
        let mut base = vec![f.one()];
        for &i in a {
            if self.points[i].is_some() {
                base = self.mul_poly(&base, &self.linear(i));
            }
        }
        (0..=r - a.len() as i64)
            .map(|m| {
                let mut v = vec![f.zero(); m as usize];
                v.extend(base.iter().cloned());
                pad(f, v, r)
            })
            .collect()
    }

    /// Product of `x ∈ S_c` and `y ∈ S_e` in the coordinates of `S_{c+e}`.
    pub fn mul_sections(&self, x: &[F::Elem], c: u64, y: &[F::Elem], e: u64) -> Poly<F> {
        let (bc, be, bd) = (self.floors(c), self.floors(e), self.floors(c + e));
        let rd: i64 = bd.iter().sum();
        let mut acc = self.mul_poly(x, y);
        for i in 0..self.n() {
            if bd[i] - bc[i] - be[i] == 1 && self.points[i].is_some() {
                acc = self.mul_poly(&acc, &self.linear(i));
            }
        }
        pad(&self.field, acc, rd)
    }

    /// Vanishing order at point `i` of a nonzero section of degree `d`.
    pub fn order_at(&self, s: &[F::Elem], i: usize) -> Option<i64> {
        let f = &self.field;
        let deg = s.iter().rposition(|x| !f.is_zero(x))?;
        match &self.points[i] {
            None => Some(s.len() as i64 - 1 - deg as i64),
            Some(p) => {
                // synthetic division by (t − p)
                let mut cur: Vec<F::Elem> = s[..=deg].to_vec();
                let mut k = 0;
                loop {
                    let mut q = vec![f.zero(); cur.len() - 1];
                    let mut acc = f.zero();
                    for j in (0..cur.len()).rev() {
                        acc = f.add(&f.mul(&acc, p), &cur[j]);
                        if j > 0 {
                            q[j - 1] = acc.clone();
                        }
                    }
                    if !f.is_zero(&acc) || q.is_empty() {
                        return Some(k);
                    }
                    cur = q;
                    k += 1;
                }
            }
        }
    }
}

fn pad<F: Field>(f: &F, mut v: Vec<F::Elem>, r: i64) -> Vec<F::Elem> {
    let len = (r + 1).max(0) as usize;
    debug_assert!(v.iter().skip(len).all(|x| f.is_zero(x)), "section exceeds its degree bound");
    v.resize(len, f.zero());
    v
}

/// `S_d` with its monomial basis written out in coordinates.
#[derive(Clone, Debug)]
pub struct SectionSpace<F: Field> {
    pub degree: u64,
    pub r: i64,
    pub basis_monomials: Vec<GradedMonomial>,
    pub coeff_matrix: ExactMatrix<F>,
}

impl<F: Field> SectionSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis_monomials.len()
    }

    pub fn rank(&self) -> usize {
        self.coeff_matrix.rank()
    }
}

pub fn section_space<F: Field>(real: &Realization<F>, d: u64) -> SectionSpace<F> {
    let basis = monomial_basis(&real.divisor, d);
    let r = real.r(d);
    let rows = basis.iter().map(|m| real.monomial_section(m)).collect();
    let width = (r + 1).max(0) as usize;
    let coeff_matrix = ExactMatrix::new(real.field.clone(), width, rows).expect("rows have the section width");
    SectionSpace { degree: d, r, basis_monomials: basis, coeff_matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::fractions;
    use crate::exactla::{PrimeField, Rationals};

    fn div(pairs: &[(i64, i64)]) -> QDivisor {
        QDivisor::from_alphas(fractions(pairs)).unwrap()
    }

    #[test]
    fn spaces() {
        let real = Realization::new(&div(&[(-1, 2), (1, 3), (1, 5)]), Rationals).unwrap();
        let s = section_space(&real, 30);
        assert_eq!((s.coeff_matrix.n_rows(), s.coeff_matrix.n_cols()), (2, 2));
        assert_eq!(s.rank(), 2);
        assert_eq!(section_space(&real, 5).dim(), 0);
        let real = Realization::new(&div(&[(2, 1), (0, 1), (0, 1)]), Rationals).unwrap();
        let s = section_space(&real, 1);
        assert_eq!(s.rank(), 3);
    }

    #[test]
    fn collisions_after_reduction() {
        let pts = vec![PointP1::finite(0), PointP1::finite(7)];
        let d = QDivisor::new(pts, fractions(&[(1, 2), (1, 2)])).unwrap();
        assert!(Realization::new(&d, Rationals).is_ok());
        assert_eq!(Realization::new(&d, PrimeField::new(7).unwrap()).unwrap_err(), Error::PointCollision(0, 1));
    }

    #[test]
    fn orders_and_products() {
        let d = div(&[(1, 2), (1, 3), (2, 5)]);
        let real = Realization::new(&d, Rationals).unwrap();
        for c in 1..8u64 {
            for e in 1..8u64 {
                for m1 in crate::conelattice::monomial_spanning_set(&d, c) {
                    for m2 in crate::conelattice::monomial_spanning_set(&d, e) {
                        let x = real.monomial_section(&m1);
                        let y = real.monomial_section(&m2);
                        let prod = real.mul_sections(&x, c, &y, e);
                        assert_eq!(prod, real.monomial_section(&m1.add(&m2)));
                        let orders = m1.orders(&d);
                        for (i, &o) in orders.iter().enumerate() {
                            assert_eq!(real.order_at(&x, i), Some(o));
                        }
                    }
                }
            }
        }
    }
}
