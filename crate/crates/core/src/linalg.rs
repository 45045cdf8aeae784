//! Dense complex vectors and matrices with the algebraic predicates the
//! operator constructions are tested against.
//!
//! Everything is `Complex<f64>`, row-major, and immutable after construction.
//! Shape violations are programming errors and panic; fallible user input is
//! validated before it reaches this layer.

use num_complex::Complex64;

/// Absolute tolerance for algebraic predicates.
///
/// `IDENTITY` (1e-12) is the default for exact operator identities at double
/// precision; `QUADRATURE` (1e-9) for comparisons against numerical
/// integration oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
}

impl Tolerance {
    pub const IDENTITY: Tolerance = Tolerance { abs_tol: 1e-12 };
    pub const QUADRATURE: Tolerance = Tolerance { abs_tol: 1e-9 };

    pub fn new(abs_tol: f64) -> Tolerance {
        assert!(abs_tol >= 0.0, "tolerance must be non-negative");
        Tolerance { abs_tol }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::IDENTITY
    }
}

/// `e^{i theta}` on the unit circle.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// `e^{i theta} - 1` without cancellation in the real part.
///
/// Computed as `2 sin(theta/2) (-sin(theta/2) + i cos(theta/2))`. The naive
/// `cis(theta) - 1` loses the real part to rounding for |theta| below ~1e-7,
/// which is exactly the regime the shift-to-zero limits probe.
#[inline]
pub fn cis_minus_one(theta: f64) -> Complex64 {
    let h = 0.5 * theta;
    let sh = h.sin();
    Complex64::new(-2.0 * sh * sh, 2.0 * sh * h.cos())
}

/// Dense complex vector indexed 0..dim.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<Complex64>,
}

impl Vector {
    pub fn new(data: Vec<Complex64>) -> Vector {
        assert!(!data.is_empty(), "vector dimension must be at least 1");
        Vector { data }
    }

    pub fn zeros(dim: usize) -> Vector {
        Vector::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Vector {
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        let mut v = Vector::zeros(dim);
        v.data[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Hermitian inner product, conjugate-linear in `self`.
    pub fn dot(&self, other: &Vector) -> Complex64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "dimension mismatch in inner product"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Vector {
        Vector::new(self.data.iter().map(|c| factor * c).collect())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

/// Largest entrywise absolute difference between two vectors.
pub fn max_abs_diff_vec(a: &Vector, b: &Vector) -> f64 {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch in max_abs_diff_vec");
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, f: F) -> Matrix
    where
        F: Fn(usize, usize) -> Complex64,
    {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diag(entries: &[f64]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
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

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Standard matrix product. Panics on inner-dimension mismatch.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matmul: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(
            self.cols,
            v.dim(),
            "shape mismatch in matrix-vector product"
        );
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += self[(i, j)] * v[j];
            }
        }
        Vector::new(out)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, factor: Complex64) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| factor * self[(i, j)])
    }

    /// Accumulate `coeff * |ket><bra|` into `self`.
    ///
    /// For real `coeff` the accumulation preserves exact entrywise hermiticity,
    /// since `(i, j)` and `(j, i)` are built from the same products.
    pub fn accumulate_dyad(&mut self, coeff: Complex64, ket: &Vector, bra: &Vector) {
        assert_eq!(self.rows, ket.dim(), "shape mismatch in accumulate_dyad");
        assert_eq!(self.cols, bra.dim(), "shape mismatch in accumulate_dyad");
        for i in 0..self.rows {
            let a = coeff * ket[i];
            for j in 0..self.cols {
                self[(i, j)] += a * bra[j].conj();
            }
        }
    }

    pub fn set_column(&mut self, j: usize, v: &Vector) {
        assert_eq!(self.rows, v.dim(), "shape mismatch in set_column");
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn column(&self, j: usize) -> Vector {
        assert!(j < self.cols, "column index out of range");
        Vector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// True iff the largest entry of `A†A - I` is within `tol`.
    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        assert!(self.is_square(), "is_unitary requires a square matrix");
        let gram = self.adjoint().matmul(self);
        max_abs_diff(&gram, &Matrix::identity(self.rows)) <= tol.abs_tol
    }

    /// True iff the largest entry of `A - A†` is within `tol`.
    pub fn is_hermitian(&self, tol: Tolerance) -> bool {
        assert!(self.is_square(), "is_hermitian requires a square matrix");
        max_abs_diff(self, &self.adjoint()) <= tol.abs_tol
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

/// `AB - BA`. Panics unless both operands are square with the same dimension.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    assert!(
        a.is_square() && b.is_square(),
        "commutator requires square matrices"
    );
    assert_eq!(a.rows(), b.rows(), "shape mismatch in commutator");
    a.matmul(b).sub(&b.matmul(a))
}

/// Largest entrywise absolute difference; the metric used by every
/// acceptance check.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!(
        (a.rows(), a.cols()),
        (b.rows(), b.cols()),
        "shape mismatch in max_abs_diff"
    );
    let mut worst = 0.0_f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}
