//! Small dense complex matrices.
//!
//! Everything in this crate lives at desk scale (a few dozen rows at most), so
//! the routines here favour determinism over speed: the spectral norm comes
//! from cyclic Jacobi sweeps on the Hermitian matrix `M* M`, and ranks come
//! from Gaussian elimination with full pivoting.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

/// Off-diagonal threshold at which Jacobi sweeps stop.
pub const JACOBI_THRESHOLD: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// A dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
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

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Largest entry modulus; zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Keeps the diagonal, zeroes everything else.
    pub fn diagonal_part(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            if i == j {
                self[(i, j)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].norm() <= tol))
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    /// Eigenvalues of a Hermitian matrix in descending order.
    ///
    /// Only the upper triangle is trusted; the matrix is symmetrised first.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert!(self.is_square(), "eigenvalues need a square matrix");
        let n = self.rows;
        let mut a = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(self[(i, i)].re, 0.0)
            } else if i < j {
                self[(i, j)]
            } else {
                self[(j, i)].conj()
            }
        });
        for _ in 0..MAX_SWEEPS {
            if a.off_diagonal_norm() < JACOBI_THRESHOLD {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    a.jacobi_rotate(p, q);
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        eig.sort_by(|x, y| y.total_cmp(x));
        eig
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    // One complex Jacobi step annihilating entry (p, q). The unitary is
    // G = diag(1, e^{-i arg a_pq}) * R, with R the real rotation that
    // diagonalises the phase-corrected 2x2 block; A <- G* A G.
    fn jacobi_rotate(&mut self, p: usize, q: usize) {
        let apq = self[(p, q)];
        let b = apq.norm();
        if b < f64::MIN_POSITIVE {
            return;
        }
        let phase = apq / b;
        let app = self[(p, p)].re;
        let aqq = self[(q, q)].re;
        let theta = (aqq - app) / (2.0 * b);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let t = if theta == 0.0 { 1.0 } else { t };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let e = phase.conj();
        let g = [
            [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
            [-e * s, e * c],
        ];
        let n = self.rows;
        for k in 0..n {
            let akp = self[(k, p)];
            let akq = self[(k, q)];
            self[(k, p)] = akp * g[0][0] + akq * g[1][0];
            self[(k, q)] = akp * g[0][1] + akq * g[1][1];
        }
        for k in 0..n {
            let apk = self[(p, k)];
            let aqk = self[(q, k)];
            self[(p, k)] = g[0][0].conj() * apk + g[1][0].conj() * aqk;
            self[(q, k)] = g[0][1].conj() * apk + g[1][1].conj() * aqk;
        }
        self[(p, q)] = Complex64::new(0.0, 0.0);
        self[(q, p)] = Complex64::new(0.0, 0.0);
        self[(p, p)] = Complex64::new(self[(p, p)].re, 0.0);
        self[(q, q)] = Complex64::new(self[(q, q)].re, 0.0);
    }

    /// Operator norm on l2: square root of the top eigenvalue of `M* M`.
    pub fn spectral_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let gram = &self.adjoint() * self;
        let top = gram.hermitian_eigenvalues()[0];
        top.max(0.0).sqrt()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Rank of a family of vectors, by Gaussian elimination with full pivoting.
///
/// A pivot is accepted when its modulus exceeds `tol` times the largest entry
/// of the original family (or `tol` itself when that entry is below one).
pub fn rank(vectors: &[Vec<Complex64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let width = vectors[0].len();
    let mut rows: Vec<Vec<Complex64>> = vectors.to_vec();
    assert!(rows.iter().all(|r| r.len() == width), "ragged vector family");
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let cutoff = tol * scale;

    let mut rank = 0;
    let mut col_used = vec![false; width];
    while rank < rows.len() {
        let mut best = (0.0, 0, 0);
        for (i, row) in rows.iter().enumerate().skip(rank) {
            for (j, z) in row.iter().enumerate() {
                if !col_used[j] && z.norm() > best.0 {
                    best = (z.norm(), i, j);
                }
            }
        }
        let (mag, pi, pj) = best;
        if mag <= cutoff {
            break;
        }
        rows.swap(rank, pi);
        col_used[pj] = true;
        let pivot = rows[rank][pj];
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[pj] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for (z, p) in row.iter_mut().zip(&pivot_row) {
                *z -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the null space of the linear map whose matrix has the given rows.
pub fn nullity(rows: &[Vec<Complex64>], width: usize, tol: f64) -> usize {
    width - rank(rows, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_norm() {
        assert!((CMatrix::identity(5).spectral_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_all_ones() {
        // ones(3,3) = 3 * (u u^T) with u = (1,1,1)/sqrt(3), so the norm is 3
        let m = CMatrix::from_fn(3, 3, |_, _| c(1.0, 0.0));
        assert!((m.spectral_norm() - 3.0).abs() < 1e-12);
        let rows: Vec<Vec<Complex64>> = (0..3).map(|i| (0..3).map(|j| m[(i, j)]).collect()).collect();
        assert_eq!(rank(&rows, 1e-12), 1);
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_y() {
        let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => c(0.0, 0.0),
        });
        let eig = m.hermitian_eigenvalues();
        assert!((eig[0] - 1.0).abs() < 1e-13);
        assert!((eig[1] + 1.0).abs() < 1e-13);
    }

    #[test]
    fn complex_hermitian_eigenvalues_match_characteristic_polynomial() {
        // [[2, 1-i], [1+i, 3]]: trace 5, det 6 - 2 = 4, eigenvalues 4 and 1
        let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(2.0, 0.0),
            (0, 1) => c(1.0, -1.0),
            (1, 0) => c(1.0, 1.0),
            _ => c(3.0, 0.0),
        });
        let eig = m.hermitian_eigenvalues();
        assert!((eig[0] - 4.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nilpotent_shift_norm() {
        // ones at (0,1),(1,2): singular values 1, 1, 0
        let m = CMatrix::from_fn(3, 3, |i, j| if j == i + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!((m.spectral_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_detects_dependence() {
        let v = vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(-1.0, 0.0)],
        ];
        assert_eq!(rank(&v, 1e-12), 1);
        assert_eq!(nullity(&v, 2, 1e-12), 1);
    }

    #[test]
    fn empty_matrix_norm_is_zero() {
        assert_eq!(CMatrix::zeros(0, 0).spectral_norm(), 0.0);
    }
}
