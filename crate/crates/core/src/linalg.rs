//! Small dense matrices: real row-major storage, cyclic Jacobi for symmetric
//! eigenproblems, exact characteristic polynomials of integer matrices, and
//! power iteration.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::IntPoly;
use crate::tolerance;
use crate::{Error, Result};

/// Dense real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1.0; n])
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// `e_ij` in an `n × n` matrix algebra (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = 1.0;
        m
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

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)] * self[(i, j)];
                }
            }
        }
        libm::sqrt(s)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(l, j)];
                }
            }
        }
        out
    }
}

/// Dense integer matrix, row-major. Entries here are small graph counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn to_f64(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] as f64)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn sum(&self) -> i64 {
        self.data.iter().sum()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                for j in 0..rhs.cols {
                    out[(i, j)] += self[(i, l)] * rhs[(l, j)];
                }
            }
        }
        out
    }
}

/// `det(tI - A)` by Faddeev–LeVerrier over big integers.
///
/// Every division in the recursion is exact for integer `A`, which is
/// asserted rather than assumed.
pub fn char_poly(a: &IntMatrix) -> IntPoly {
    assert_eq!(a.rows, a.cols, "characteristic polynomial of a non-square matrix");
    let n = a.rows;
    let big_a: Vec<BigInt> = a.data.iter().map(|&x| BigInt::from(x)).collect();
    let matmul = |m: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let x = &big_a[i * n + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += x * &m[l * n + j];
                }
            }
        }
        out
    };

    // coeffs[i] is the coefficient of t^i
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = vec![BigInt::zero(); n * n];
    for step in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(&m);
        for i in 0..n {
            next[i * n + i] += &coeffs[n - step + 1];
        }
        m = next;
        let am = matmul(&m);
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let (q, r) = num_integer::Integer::div_rem(&-trace, &BigInt::from(step));
        assert!(r.is_zero(), "inexact Faddeev–LeVerrier division");
        coeffs[n - step] = q;
    }
    IntPoly::from_coeffs(coeffs)
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` is a unit eigenvector for `values[i]`.
    pub vectors: Matrix,
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations until the off-diagonal norm falls below
/// `JACOBI_OFF_DIAGONAL · ‖A‖_F`.
pub fn jacobi_eigen(a: &Matrix) -> Result<SymmetricEigen> {
    assert!(a.is_square(), "Jacobi on a non-square matrix");
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let target = tolerance::JACOBI_OFF_DIAGONAL * a.frobenius();
    let mut sweeps = 0;
    while m.off_diagonal() > target {
        if sweeps == tolerance::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { what: "Jacobi", iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors, sweeps })
}

fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = m.rows;
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Dominant eigenpair of a matrix with a simple, strictly dominant,
/// positive eigenvalue. Stops when the relative change of the normalized
/// iterate drops below `tol`.
pub fn power_iteration(a: &Matrix, start: &[f64], tol: f64, max_iter: usize) -> Result<(f64, Vec<f64>)> {
    let mut x: Vec<f64> = start.to_vec();
    let nx = norm(&x);
    x.iter_mut().for_each(|e| *e /= nx);
    for _ in 0..max_iter {
        let mut y = a.mul_vec(&x);
        let ny = norm(&y);
        y.iter_mut().for_each(|e| *e /= ny);
        let step = libm::sqrt(x.iter().zip(&y).map(|(p, q)| (p - q) * (p - q)).sum());
        x = y;
        if step <= tol {
            let lambda = dot(&x, &a.mul_vec(&x));
            return Ok((lambda, x));
        }
    }
    Err(Error::NoConvergence { what: "power iteration", iterations: max_iter })
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = Matrix::identity(n);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[(i, col)].abs().total_cmp(&m[(j, col)].abs())).unwrap();
        if m[(pivot, col)] == 0.0 {
            return Err(Error::Singular);
        }
        for j in 0..n {
            m.data.swap(col * n + j, pivot * n + j);
            inv.data.swap(col * n + j, pivot * n + j);
        }
        let p = m[(col, col)];
        for j in 0..n {
            m[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for i in (0..n).filter(|&i| i != col) {
            let f = m[(i, col)];
            if f != 0.0 {
                for j in 0..n {
                    m[(i, j)] -= f * m[(col, j)];
                    inv[(i, j)] -= f * inv[(col, j)];
                }
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_of_singular_fails() {
        let a = Matrix::from_fn(2, 2, |_, _| 1.0);
        assert!(matches!(inverse(&a), Err(Error::Singular)));
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(entries in proptest::collection::vec(-1.0f64..1.0, 16)) {
            // diagonally dominant, hence invertible
            let a = Matrix::from_fn(4, 4, |i, j| entries[4 * i + j] + if i == j { 5.0 } else { 0.0 });
            let b = inverse(&a).unwrap();
            prop_assert!((&(&a * &b) - &Matrix::identity(4)).max_abs() < 1e-12);
            prop_assert!((&(&b * &a) - &Matrix::identity(4)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn char_poly_small() {
        // [[2,1],[1,2]] -> t² - 4t + 3
        let a = IntMatrix::from_rows(&[&[2, 1], &[1, 2]]);
        assert_eq!(char_poly(&a), IntPoly::from_i64(&[3, -4, 1]));
        let z = IntMatrix::zeros(3, 3);
        assert_eq!(char_poly(&z), IntPoly::from_i64(&[0, 0, 0, 1]));
    }

    #[test]
    fn char_poly_of_path_is_chebyshev() {
        // adjacency of the path on m vertices has characteristic polynomial R_m
        for m in 1..12 {
            let mut a = IntMatrix::zeros(m, m);
            for i in 0..m - 1 {
                a[(i, i + 1)] = 1;
                a[(i + 1, i)] = 1;
            }
            assert_eq!(char_poly(&a), crate::polynomials::cheb_r(m));
        }
    }

    #[test]
    fn jacobi_two_by_two() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let e = jacobi_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!((e.values[1] - 3.0).abs() < 1e-12);
        let v = e.vectors.column(1);
        assert!((v[0].abs() - v[1].abs()).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_finds_dominant_pair() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let (l, v) = power_iteration(&a, &[1.0, 0.3], 1e-13, 10_000).unwrap();
        assert!((l - 3.0).abs() < 1e-10);
        assert!((v[0] - v[1]).abs() < 1e-10);
    }

    #[test]
    fn power_iteration_reports_failure() {
        // rotation by 90 degrees has no dominant real eigenvalue
        let a = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => -1.0,
            (1, 0) => 1.0,
            _ => 0.0,
        });
        assert!(matches!(power_iteration(&a, &[1.0, 0.0], 1e-12, 50), Err(Error::NoConvergence { .. })));
    }

    fn symmetric(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-5.0f64..5.0, n * n).prop_map(move |d| {
            let m = Matrix { rows: n, cols: n, data: d };
            (&m + &m.transpose()).scale(0.5)
        })
    }

    proptest! {
        #[test]
        fn jacobi_reconstructs(a in (1usize..9).prop_flat_map(symmetric)) {
            let n = a.rows();
            let e = jacobi_eigen(&a).unwrap();
            let vt = e.vectors.transpose();
            let rebuilt = &(&e.vectors * &Matrix::diag(&e.values)) * &vt;
            prop_assert!((&rebuilt - &a).max_abs() < 1e-8 * (1.0 + a.frobenius()));
            prop_assert!((&(&vt * &e.vectors) - &Matrix::identity(n)).max_abs() < 1e-10);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!((e.values.iter().sum::<f64>() - a.trace()).abs() < 1e-8 * (1.0 + a.frobenius()));
        }

        #[test]
        fn char_poly_matches_trace_and_det_2x2(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
            let m = IntMatrix::from_rows(&[&[a, b], &[c, d]]);
            prop_assert_eq!(char_poly(&m), IntPoly::from_i64(&[a * d - b * c, -(a + d), 1]));
        }
    }
}
