use crate::error::{Error, Result};

use super::field::Field;

/// Dense matrix over an exact field.
#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(ExactMatrix { field, cols, rows })
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        ExactMatrix::new(field, cols, rows).expect("ragged literal")
    }

    pub fn identity(field: F, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        ExactMatrix { field, cols: n, rows }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        ExactMatrix { field: self.field.clone(), cols: self.rows.len(), rows }
    }

    /// Reduced row echelon form and its pivot columns, ascending.
    pub fn row_reduce(&self) -> (ExactMatrix<F>, Vec<usize>) {
        let f = &self.field;
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]);
            for x in m[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !f.is_zero(&row[c]) {
                    let s = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        if !f.is_zero(y) {
                            *x = f.sub(x, &f.mul(&s, y));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        let out = ExactMatrix { field: f.clone(), cols: self.cols, rows: m };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field.clone(), self.cols);
        self.rows.iter().filter(|r| e.insert((*r).clone())).count()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (rref, pivots) = self.row_reduce();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(&rref.rows[i][free]);
                }
                v
            })
            .collect()
    }
}

impl<F: Field> ExactMatrix<F> {
    /// Some `x` with `M x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut r = r.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let aug = ExactMatrix { field: f.clone(), cols: self.cols + 1, rows };
        let (rref, pivots) = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rref.rows[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Greedily picks, in order, the candidates that extend `subspace` until the
/// span is the whole ambient space.
pub fn quotient_complement<F: Field>(
    subspace: &ExactMatrix<F>,
    candidates: &[Vec<F::Elem>],
) -> Result<Vec<usize>> {
    let mut e = Echelon::new(subspace.field.clone(), subspace.cols);
    for r in &subspace.rows {
        e.insert(r.clone());
    }
    let mut picked = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if e.rank() == subspace.cols {
            break;
        }
        if e.insert(c.clone()) {
            picked.push(i);
        }
    }
    if e.rank() < subspace.cols {
        return Err(Error::IncompleteSpan { missing: subspace.cols - e.rank() });
    }
    Ok(picked)
}

/// Incrementally built row echelon basis: every stored row vanishes at the
/// pivots of the rows stored before it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` modulo the span. The remainder is only determined up to a
    /// nonzero scalar.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        f.normalize(v);
        for (p, row) in &self.rows {
            if !f.is_zero(&v[*p]) {
                f.eliminate(v, row, *p);
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank went up.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        match v.iter().position(|x| !self.field.is_zero(x)) {
            None => false,
            Some(p) => {
                self.field.normalize(&mut v);
                self.rows.push((p, v));
                true
            }
        }
    }
}
