//! Dense exact matrices.
//!
//! Characteristic polynomials are computed with Berkowitz's division-free
//! recurrence, so they are valid in every characteristic. Coefficients follow
//! the convention
//!
//! ```text
//! det(t I - A) = t^n - c_1 t^(n-1) + c_2 t^(n-2) - ... + (-1)^n c_n
//! ```
//!
//! so that `c_1` is the trace, `c_n` the determinant and `c_s` the `s`-th
//! elementary symmetric function of the eigenvalues.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::UniPoly;
use crate::tuple::MatTuple;

/// A dense `rows x cols` matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// The coefficients `c_1, ..., c_n` of a characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCoeffs {
    field: Field,
    coeffs: Vec<Elem>,
}

impl CharCoeffs {
    /// `c_s` for `1 <= s <= n`.
    pub fn get(&self, s: usize) -> Result<&Elem> {
        if s == 0 || s > self.coeffs.len() {
            return Err(Error::IndexOutOfRange { index: s, max: self.coeffs.len() });
        }
        Ok(&self.coeffs[s - 1])
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<Elem> {
        self.coeffs
    }

    /// `det(t I - A)` as a polynomial in `t`.
    pub fn to_poly(&self) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len();
        let mut out = vec![f.zero(); n + 1];
        out[n] = f.one();
        for (idx, c) in self.coeffs.iter().enumerate() {
            let s = idx + 1;
            out[n - s] = if s % 2 == 0 { c.clone() } else { f.neg(c) };
        }
        UniPoly::from_raw(f, out)
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(field: &Field, entries: &[Elem]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Matrix unit `e_{i,j}` (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.data[i * n + j] = field.one();
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let data = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data: Vec<Elem> = rows.into_iter().flatten().collect();
        if data.iter().any(|e| !field.contains(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data })
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|row| row.iter().map(|v| field.from_i64(*v)).collect()).collect();
        Self::from_rows(field, rows).expect("well-formed integer rows")
    }

    pub(crate) fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    /// The scalar `c` if the matrix equals `c I`.
    pub fn as_scalar(&self) -> Option<Elem> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { self.field.zero() } else { self.get(0, 0).clone() };
        (*self == Self::scalar(&self.field, self.rows, &c)).then_some(c)
    }

    fn check_same(&self, other: &Self, rows: usize, cols: usize) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if other.rows != rows || other.cols != cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, self.rows, self.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Self::from_vec(&self.field, self.rows, self.cols, data))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, self.rows, self.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(Self::from_vec(&self.field, self.rows, self.cols, data))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other, self.cols, other.cols)?;
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Elem {
        (0..self.rows).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    /// Characteristic coefficients by Berkowitz's algorithm.
    ///
    /// The leading `t x t` block grows one row and column at a time; with
    /// the new column `C`, row `R` and corner `a`, the coefficient vector is
    /// multiplied by the lower-triangular Toeplitz matrix whose first column
    /// is `(1, -a, -R C, -R M C, ..., -R M^(t-1) C)`.
    pub fn charpoly(&self) -> CharCoeffs {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        // coefficients of det(tI - A) from the top degree down
        let mut p = vec![f.one()];
        for t in 0..n {
            let mut col = Vec::with_capacity(t + 2);
            col.push(f.one());
            col.push(f.neg(self.get(t, t)));
            // v = M^k C, starting with C
            let mut v: Vec<Elem> = (0..t).map(|i| self.get(i, t).clone()).collect();
            for k in 0..t {
                let rc = (0..t).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(self.get(t, j), &v[j])));
                col.push(f.neg(&rc));
                if k + 1 < t {
                    v = (0..t)
                        .map(|i| (0..t).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(self.get(i, j), &v[j]))))
                        .collect();
                }
            }
            let mut next = vec![f.zero(); t + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    *slot = f.add(slot, &f.mul(&col[i - j], pj));
                }
            }
            p = next;
        }
        let coeffs = p
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(s, v)| if s % 2 == 0 { v } else { f.neg(&v) })
            .collect();
        CharCoeffs { field: f.clone(), coeffs }
    }

    /// The `s`-th characteristic coefficient, `1 <= s <= n`.
    pub fn cs(&self, s: usize) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("c_s of a non-square matrix".into()));
        }
        if s == 0 || s > self.rows {
            return Err(Error::IndexOutOfRange { index: s, max: self.rows });
        }
        Ok(self.charpoly().coeffs.swap_remove(s - 1))
    }

    pub fn det(&self) -> Elem {
        if self.rows == 0 {
            return self.field.one();
        }
        self.charpoly().coeffs.pop().unwrap()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(src) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else { continue };
            if src != r {
                for j in 0..a.cols {
                    a.data.swap(src * a.cols + j, r * a.cols + j);
                }
            }
            let inv = f.inv(a.get(r, c)).unwrap();
            for j in c..a.cols {
                let v = f.mul(a.get(r, j), &inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || f.is_zero(a.get(i, c)) {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{v : M v = 0}`.
    ///
    /// There is one basis vector per free column `j` of the reduced echelon
    /// form; it has a 1 at position `j`, zeros at every other free position,
    /// and is supported on positions `<= j`. Read as rows, the basis is in
    /// reduced echelon form with respect to the *last* nonzero coordinate,
    /// which makes it unique for the subspace.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for j in 0..self.cols {
            if pivots.get(next_pivot) == Some(&j) {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[j] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                if pc < j {
                    v[pc] = f.neg(r.get(row, j));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(f, n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && !self.field.is_zero(&self.det())
    }

    /// `g A g^-1` for a precomputed inverse.
    pub(crate) fn conjugated_by(&self, g: &Matrix, g_inv: &Matrix) -> Matrix {
        &(g * self) * g_inv
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let (r1, c1) = (self.rows, self.cols);
        Self::from_fn(&self.field, r1 + other.rows, c1 + other.cols, |i, j| {
            if i < r1 && j < c1 {
                self.get(i, j).clone()
            } else if i >= r1 && j >= c1 {
                other.get(i - r1, j - c1).clone()
            } else {
                self.field.zero()
            }
        })
    }

    pub fn random<R: rand::Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        Self::from_fn(field, n, n, |_, _| field.random(rng))
    }

    pub fn random_invertible<R: rand::Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let g = Self::random(field, n, rng);
            if g.is_invertible() {
                return g;
            }
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix addition")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix multiplication")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Basis of `{g : g x_i = y_i g for all i}`, each element an `n x n` matrix.
///
/// The unknown `g` is flattened row-major; every `(i, r, c)` contributes the
/// equation `sum_k g[r,k] x_i[k,c] - sum_k y_i[r,k] g[k,c] = 0`.
pub fn intertwiner_space(x: &MatTuple, y: &MatTuple) -> Result<Vec<Matrix>> {
    if x.n() != y.n() || x.m() != y.m() {
        return Err(Error::ShapeMismatch(format!(
            "tuples of shape (n={}, m={}) and (n={}, m={})",
            x.n(),
            x.m(),
            y.n(),
            y.m()
        )));
    }
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    let f = x.field();
    let n = x.n();
    let n2 = n * n;
    let mut system = Matrix::zeros(f, x.m() * n2, n2);
    for (i, (xi, yi)) in x.mats().iter().zip(y.mats()).enumerate() {
        for r in 0..n {
            for c in 0..n {
                let row = i * n2 + r * n + c;
                for k in 0..n {
                    let col = r * n + k;
                    let v = f.add(system.get(row, col), xi.get(k, c));
                    system.set(row, col, v);
                    let col = k * n + c;
                    let v = f.sub(system.get(row, col), yi.get(r, k));
                    system.set(row, col, v);
                }
            }
        }
    }
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_vec(f, n, n, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Elem {
        Elem::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn unit_products() {
        let f = Field::rationals();
        let e12 = Matrix::unit(&f, 2, 0, 1);
        let e21 = Matrix::unit(&f, 2, 1, 0);
        assert_eq!(&e12 * &e21, Matrix::unit(&f, 2, 0, 0));
        let a = Matrix::from_i64(&f, &[&[1, 2], &[3, 4]]);
        assert_eq!(&Matrix::identity(&f, 2) * &a, a);
    }

    #[test]
    fn shape_and_field_errors() {
        let q = Field::rationals();
        let f7 = Field::prime(7).unwrap();
        let a = Matrix::identity(&q, 2);
        assert!(matches!(a.checked_add(&Matrix::identity(&q, 3)), Err(Error::ShapeMismatch(_))));
        assert_eq!(a.checked_mul(&Matrix::identity(&f7, 2)), Err(Error::FieldMismatch));
        assert!(Matrix::from_rows(&f7, vec![vec![Elem::Residue(9)]]).is_err());
    }

    #[test]
    fn charpoly_examples() {
        let f = Field::rationals();
        let a = Matrix::diag(&f, &[q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(a.charpoly().into_vec(), vec![q(6, 1), q(11, 1), q(6, 1)]);
        assert_eq!(Matrix::zeros(&f, 3, 3).charpoly().into_vec(), vec![q(0, 1); 3]);
        let d = Matrix::diag(&f, &[q(1, 1), q(2, 1)]);
        assert_eq!(d.cs(1).unwrap(), q(3, 1));
        assert_eq!(d.cs(2).unwrap(), q(2, 1));
        assert_eq!(d.cs(3), Err(Error::IndexOutOfRange { index: 3, max: 2 }));
        assert_eq!(d.cs(0), Err(Error::IndexOutOfRange { index: 0, max: 2 }));
        let e12 = Matrix::unit(&f, 2, 0, 1);
        assert_eq!(e12.cs(1).unwrap(), q(0, 1));
        assert_eq!(e12.cs(2).unwrap(), q(0, 1));
        // [[1,2],[3,4]]: trace 5, det -2
        let b = Matrix::from_i64(&f, &[&[1, 2], &[3, 4]]);
        assert_eq!(b.charpoly().into_vec(), vec![q(5, 1), q(-2, 1)]);
        assert_eq!(b.charpoly().to_poly(), UniPoly::from_i64(&f, &[-2, -5, 1]));
    }

    #[test]
    fn second_coefficient_is_sum_of_principal_minors() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = Matrix::random(&f, 3, &mut rng);
            let mut minors = f.zero();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let m = f.sub(&f.mul(a.get(i, i), a.get(j, j)), &f.mul(a.get(i, j), a.get(j, i)));
                minors = f.add(&minors, &m);
            }
            assert_eq!(a.cs(2).unwrap(), minors);
        }
    }

    #[test]
    fn charpoly_of_direct_sum_is_product() {
        let f = Field::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = Matrix::random(&f, 2, &mut rng);
            let b = Matrix::random(&f, 2, &mut rng);
            let prod = a.charpoly().to_poly().mul(&b.charpoly().to_poly());
            assert_eq!(a.direct_sum(&b).charpoly().to_poly(), prod);
        }
    }

    #[test]
    fn nullspace_examples() {
        let f = Field::rationals();
        assert!(Matrix::identity(&f, 3).nullspace().is_empty());
        assert_eq!(Matrix::zeros(&f, 2, 2).nullspace().len(), 2);
        let m = Matrix::from_i64(&f, &[&[1, 2, 3], &[2, 4, 6]]);
        let basis = m.nullspace();
        assert_eq!(basis, vec![vec![q(-2, 1), q(1, 1), q(0, 1)], vec![q(-3, 1), q(0, 1), q(1, 1)]]);
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = Matrix::random_invertible(&f, 3, &mut rng);
            let inv = g.inverse().unwrap();
            assert_eq!(&g * &inv, Matrix::identity(&f, 3));
        }
        assert!(Matrix::unit(&f, 2, 0, 1).inverse().is_none());
    }

    #[test]
    fn intertwiners_of_unit_pair() {
        let f = Field::rationals();
        let x = MatTuple::new(vec![Matrix::unit(&f, 2, 0, 1), Matrix::unit(&f, 2, 1, 0)]).unwrap();
        let y = MatTuple::new(vec![
            Matrix::unit(&f, 2, 0, 1).scale(&q(2, 1)),
            Matrix::unit(&f, 2, 1, 0).scale(&q(1, 2)),
        ])
        .unwrap();
        let basis = intertwiner_space(&x, &y).unwrap();
        assert_eq!(basis.len(), 1);
        let g = &basis[0];
        let scale = g.get(0, 0).clone();
        assert_eq!(
            g.scale(&f.inv(&scale).unwrap()),
            Matrix::diag(&f, &[q(1, 1), q(1, 2)])
        );
        assert_eq!(intertwiner_space(&x, &x).unwrap().len(), 1);
    }
}
