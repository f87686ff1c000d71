//! Dense exact matrices over form spaces and linear operators between them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::form::KForm;
use crate::exterior::monomial::Monomial;
use crate::exterior::scalar::{rational_to_f64, Rational, Scalar};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows * cols).map(|_| S::zero()).collect(),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| x.clone() * factor.clone())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prev = out.get(r, c).clone();
                    out.set(r, c, prev + a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = acc + a.clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect())
    }

    /// Solve the square system `self * x = b` by Gauss-Jordan elimination
    /// with pivoting. Exact over the rationals.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::ShapeMismatch(
                "solve requires a square system".into(),
            ));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<S>> = (0..n)
            .map(|r| {
                let mut row: Vec<S> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.push(b[r].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !aug[r][col].is_zero())
                .max_by(|&a, &b| {
                    aug[a][col]
                        .pivot_weight()
                        .partial_cmp(&aug[b][col].pivot_weight())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .ok_or(Error::SingularSystem)?;
            aug.swap(col, pivot);
            let pv = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x = x.clone() / pv.clone();
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in 0..=n {
                        let delta = factor.clone() * aug[col][c].clone();
                        aug[r][c] = aug[r][c].clone() - delta;
                    }
                }
            }
        }
        Ok(aug.into_iter().map(|row| row[self.cols].clone()).collect())
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let unit: Vec<S> = (0..n)
                .map(|i| if i == j { S::one() } else { S::zero() })
                .collect();
            let col = self.solve(&unit)?;
            for i in 0..n {
                out.set(i, j, col[i].clone());
            }
        }
        Ok(out)
    }

    /// Least-squares solution of `self * x ≈ b` via the normal equations.
    /// Returns `(x, squared residual norm)`. The normal matrix must be
    /// invertible (full column rank).
    pub fn least_squares(&self, b: &[S]) -> Result<(Vec<S>, S)> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "least squares: {} rows, rhs of length {}",
                self.rows,
                b.len()
            )));
        }
        let at = self.transpose();
        let normal = at.mul(self)?;
        let rhs = at.mul_vec(b)?;
        let x = normal.solve(&rhs)?;
        let fitted = self.mul_vec(&x)?;
        let mut residual = S::zero();
        for (bi, fi) in b.iter().zip(&fitted) {
            let d = bi.clone() - fi.clone();
            residual = residual + d.clone() * d;
        }
        Ok((x, residual))
    }
}

impl Matrix<Rational> {
    /// Exact rank via fraction-free (Bareiss) elimination over the integers,
    /// after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    let den = self.get(r, c).denom();
                    lcm = lcm_bigint(&lcm, den);
                }
                (0..self.cols)
                    .map(|c| {
                        let x = self.get(r, c);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let pivot = m[rank][col].clone();
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &pivot * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form with the list of pivot columns. Exact.
    pub fn reduced_row_echelon(&self) -> (Matrix<Rational>, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, pr);
            let pv = m[row][col].clone();
            for x in m[row].iter_mut() {
                *x = x.clone() / pv.clone();
            }
            for r in 0..self.rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..self.cols {
                        let delta = f.clone() * m[row][c].clone();
                        m[r][c] = m[r][c].clone() - delta;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let rref = Matrix::from_rows(m).expect("rows stay rectangular");
        (rref, pivot_cols)
    }

    /// Basis of the exact null space (column vectors with `self * v = 0`).
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let (rref, pivot_cols) = self.reduced_row_echelon();
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        free_cols
            .into_iter()
            .map(|fc| {
                let mut v: Vec<Rational> = (0..self.cols).map(|_| Rational::zero()).collect();
                v[fc] = Rational::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -rref.get(r, fc).clone();
                }
                v
            })
            .collect()
    }

    pub fn to_float(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(rational_to_f64).collect(),
        }
    }
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / gcd_bigint(a.clone(), b.clone())
}

fn gcd_bigint(mut a: BigInt, mut b: BigInt) -> BigInt {
    a = a.abs();
    b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// A linear map between form spaces, stored as its matrix in the canonical
/// (lexicographic) monomial bases.
#[derive(Debug, Clone)]
pub struct FormOperator<S: Scalar> {
    n: u8,
    source_degree: u8,
    target_degree: u8,
    matrix: Matrix<S>,
    source_basis: Vec<Monomial>,
    target_basis: Vec<Monomial>,
    target_index: BTreeMap<Monomial, usize>,
}

impl<S: Scalar> FormOperator<S> {
    /// Tabulate a linear map on the canonical basis. The map is spot-checked
    /// for linearity on one combination of basis monomials.
    pub fn from_map<F>(n: u8, source_degree: u8, target_degree: u8, f: F) -> Result<Self>
    where
        F: Fn(&KForm<S>) -> Result<KForm<S>>,
    {
        let source_basis = Monomial::basis(n, source_degree);
        let target_basis = Monomial::basis(n, target_degree);
        let target_index: BTreeMap<Monomial, usize> = target_basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut matrix = Matrix::zeros(target_basis.len(), source_basis.len());
        let mut images = Vec::with_capacity(source_basis.len());
        for (j, mono) in source_basis.iter().enumerate() {
            let input = KForm::basis_element(n, mono.indices())?;
            let image = f(&input)?;
            if image.dimension() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: image.dimension(),
                });
            }
            if !image.is_zero() && image.degree() != target_degree {
                return Err(Error::DegreeMismatch {
                    expected: target_degree,
                    found: image.degree(),
                });
            }
            for (m, c) in image.iter() {
                let row = *target_index
                    .get(m)
                    .ok_or_else(|| Error::ShapeMismatch("image outside target basis".into()))?;
                matrix.set(row, j, c.clone());
            }
            images.push(image);
        }
        if source_basis.len() >= 2 {
            let a = KForm::basis_element(n, source_basis[0].indices())?;
            let b = KForm::basis_element(n, source_basis[source_basis.len() - 1].indices())?;
            let two = S::from_int(2);
            let combo = a.add(&b.scale(&two))?;
            let expected = images[0].add(&images[images.len() - 1].scale(&two))?;
            if f(&combo)? != expected {
                return Err(Error::NonlinearMap);
            }
        }
        Ok(Self {
            n,
            source_degree,
            target_degree,
            matrix,
            source_basis,
            target_basis,
            target_index,
        })
    }

    pub fn identity(n: u8, degree: u8) -> Self {
        let basis = Monomial::basis(n, degree);
        let target_index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Self {
            n,
            source_degree: degree,
            target_degree: degree,
            matrix: Matrix::identity(basis.len()),
            source_basis: basis.clone(),
            target_basis: basis,
            target_index,
        }
    }

    /// Wrap a matrix already expressed in the canonical bases.
    pub fn from_matrix(
        n: u8,
        source_degree: u8,
        target_degree: u8,
        matrix: Matrix<S>,
    ) -> Result<Self> {
        let source_basis = Monomial::basis(n, source_degree);
        let target_basis = Monomial::basis(n, target_degree);
        if matrix.rows() != target_basis.len() || matrix.cols() != source_basis.len() {
            return Err(Error::ShapeMismatch(format!(
                "operator matrix {}x{} does not match bases {}x{}",
                matrix.rows(),
                matrix.cols(),
                target_basis.len(),
                source_basis.len()
            )));
        }
        let target_index = target_basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Ok(Self {
            n,
            source_degree,
            target_degree,
            matrix,
            source_basis,
            target_basis,
            target_index,
        })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn source_degree(&self) -> u8 {
        self.source_degree
    }

    pub fn target_degree(&self) -> u8 {
        self.target_degree
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn apply(&self, a: &KForm<S>) -> Result<KForm<S>> {
        if a.dimension() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.dimension(),
            });
        }
        if a.degree() != self.source_degree {
            return Err(Error::DegreeMismatch {
                expected: self.source_degree,
                found: a.degree(),
            });
        }
        let v = self.to_coordinates(a);
        let w = self.matrix.mul_vec(&v)?;
        self.form_from_target_coordinates(&w)
    }

    /// Coordinates of a form in the source basis.
    pub fn to_coordinates(&self, a: &KForm<S>) -> Vec<S> {
        self.source_basis.iter().map(|m| a.term(m)).collect()
    }

    pub fn form_from_target_coordinates(&self, w: &[S]) -> Result<KForm<S>> {
        KForm::from_components(
            self.n,
            self.target_degree,
            self.target_basis
                .iter()
                .zip(w)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.indices().to_vec(), c.clone())),
        )
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.target_degree != self.source_degree || inner.n != self.n {
            return Err(Error::ShapeMismatch(
                "operator composition degree mismatch".into(),
            ));
        }
        Ok(Self {
            n: self.n,
            source_degree: inner.source_degree,
            target_degree: self.target_degree,
            matrix: self.matrix.mul(&inner.matrix)?,
            source_basis: inner.source_basis.clone(),
            target_basis: self.target_basis.clone(),
            target_index: self.target_index.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source_degree != other.source_degree
            || self.target_degree != other.target_degree
            || self.n != other.n
        {
            return Err(Error::ShapeMismatch("operator sum shape mismatch".into()));
        }
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            matrix: self.matrix.scale(factor),
            ..self.clone()
        }
    }

    /// `self + c * id` on a square operator.
    pub fn add_scaled_identity(&self, c: &S) -> Result<Self> {
        if self.source_degree != self.target_degree {
            return Err(Error::ShapeMismatch(
                "identity shift requires equal degrees".into(),
            ));
        }
        let id = Matrix::identity(self.matrix.rows());
        Ok(Self {
            matrix: self.matrix.add(&id.scale(c))?,
            ..self.clone()
        })
    }

    /// Verify `∏ (self - r·id) = 0` over the given roots.
    pub fn annihilating_check(&self, roots: &[S]) -> Result<bool> {
        if self.source_degree != self.target_degree {
            return Err(Error::ShapeMismatch(
                "annihilating check requires a square operator".into(),
            ));
        }
        let mut product = Matrix::identity(self.matrix.rows());
        for r in roots {
            let shifted = self.add_scaled_identity(&-r.clone())?;
            product = product.mul(&shifted.matrix)?;
        }
        Ok(product.is_zero())
    }
}

impl FormOperator<Rational> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn to_float(&self) -> FormOperator<f64> {
        FormOperator {
            n: self.n,
            source_degree: self.source_degree,
            target_degree: self.target_degree,
            matrix: self.matrix.to_float(),
            source_basis: self.source_basis.clone(),
            target_basis: self.target_basis.clone(),
            target_index: self.target_index.clone(),
        }
    }
}
