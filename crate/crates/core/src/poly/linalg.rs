//! Dense exact linear algebra over a number field.

use std::sync::Arc;

use super::field::{FieldElement, NumberField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<NumberField>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &Arc<NumberField>, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    if self.get(row, j).is_zero() {
                        continue;
                    }
                    let v = f.sub(self.get(r, j), &f.mul(&factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Unique solution of `A x = b`, or `None` when the system is inconsistent
/// or underdetermined.
pub fn solve_unique(a: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Matrix::zeros(&a.field, a.rows, n + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, bi.clone());
    }
    let pivots = aug.echelon();
    if pivots.contains(&n) || pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| aug.get(i, n).clone()).collect())
}

/// Incremental linear-dependence detector over a fixed coordinate space.
///
/// Vectors are pushed one at a time; `push` returns the coefficients of a
/// dependency `v = Σ c_i v_i` on the previously accepted vectors, or accepts
/// the vector as new.
pub struct DependencyTracker {
    field: Arc<NumberField>,
    /// Reduced rows with pivot column and combination of original vectors.
    rows: Vec<(usize, Vec<FieldElement>, Vec<FieldElement>)>,
    accepted: usize,
}

impl DependencyTracker {
    pub fn new(field: &Arc<NumberField>) -> Self {
        DependencyTracker {
            field: field.clone(),
            rows: Vec::new(),
            accepted: 0,
        }
    }

    /// `Ok(())` when the vector is independent (and is recorded), otherwise
    /// `Err(coeffs)` with `v = Σ coeffs[i] * v_i` over accepted vectors.
    pub fn push(&mut self, v: Vec<FieldElement>) -> std::result::Result<(), Vec<FieldElement>> {
        let f = self.field.clone();
        let mut v = v;
        // combination expressing current v in terms of originals: starts as e_new
        let mut combo = vec![f.zero(); self.accepted + 1];
        combo[self.accepted] = f.one();
        for (pivot, row, row_combo) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            for (x, y) in combo.iter_mut().zip(row_combo) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // 0 = combo · originals, with combo[new] = 1
                combo.pop();
                Err(combo.iter().map(|c| f.neg(c)).collect())
            }
            Some(p) => {
                let inv = f.inv(&v[p]).expect("nonzero");
                let v: Vec<_> = v.iter().map(|x| f.mul(x, &inv)).collect();
                let combo: Vec<_> = combo.iter().map(|x| f.mul(x, &inv)).collect();
                for (_, _, rc) in self.rows.iter_mut() {
                    rc.push(f.zero());
                }
                self.rows.push((p, v, combo));
                self.accepted += 1;
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_dependencies() {
        let k = NumberField::rationals();
        let e = |n: i64| k.from_int(n);
        let m = Matrix::from_rows(&k, vec![vec![e(1), e(2)], vec![e(2), e(4)]]);
        assert_eq!(m.rank(), 1);
        assert!(!m.is_invertible());

        let mut t = DependencyTracker::new(&k);
        assert!(t.push(vec![e(1), e(0), e(1)]).is_ok());
        assert!(t.push(vec![e(0), e(1), e(1)]).is_ok());
        let dep = t.push(vec![e(2), e(3), e(5)]).unwrap_err();
        assert_eq!(dep, vec![e(2), e(3)]);
    }
}
