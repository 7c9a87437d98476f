//! Small dense matrices for the dispersion blocks.
//!
//! Everything in this crate is a real symmetric matrix of dimension 2, 3 or
//! 12 (plus the complex pre-symmetrization forms), so the storage is a plain
//! row-major `Vec<f64>` with no sparsity machinery.

use std::fmt;

/// Dense row-major real matrix of small fixed dimension.
#[derive(Clone, PartialEq)]
pub struct SmallMat {
    dim: usize,
    data: Vec<f64>,
}

impl SmallMat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.set(i, j, v);
        self.set(j, i, v);
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] += v;
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    let v = self.get(i, j);
                    s += v * v;
                }
            }
        }
        s.sqrt()
    }

    /// Largest absolute deviation from symmetry, `max |a_ij - a_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                d = d.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        d
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| x.iter().enumerate().map(|(j, xj)| self.get(i, j) * xj).sum())
            .collect()
    }

    /// `<x, A x>`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(ax, xi)| ax * xi).sum()
    }

    pub fn matmul(&self, other: &SmallMat) -> SmallMat {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = SmallMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SmallMat {
        let n = self.dim;
        let mut out = SmallMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Determinant via Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let at = |a: &[f64], i: usize, j: usize| a[i * n + j];
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in (col + 1)..n {
                if at(&a, r, col).abs() > at(&a, piv, col).abs() {
                    piv = r;
                }
            }
            if at(&a, piv, col) == 0.0 {
                return 0.0;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            let p = at(&a, col, col);
            det *= p;
            for r in (col + 1)..n {
                let f = at(&a, r, col) / p;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= f * at(&a, col, j);
                }
            }
        }
        det
    }

    /// Leading principal submatrix of order `m`.
    pub fn leading(&self, m: usize) -> SmallMat {
        assert!(m <= self.dim);
        let mut out = SmallMat::zeros(m);
        for i in 0..m {
            for j in 0..m {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Leading principal minors `M_1 .. M_dim`.
    pub fn leading_minors(&self) -> Vec<f64> {
        (1..=self.dim).map(|m| self.leading(m).det()).collect()
    }
}

impl fmt::Debug for SmallMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SmallMat {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{:>13.6e} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Minimal complex scalar for the pre-symmetrization dispersion matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    /// `i * v` for real `v`.
    pub fn imag(v: f64) -> Self {
        Self { re: 0.0, im: v }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }
}

impl std::ops::Add for C64 {
    type Output = C64;
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
}

impl std::ops::Sub for C64 {
    type Output = C64;
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
}

impl std::ops::Mul for C64 {
    type Output = C64;
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// Dense row-major complex matrix, stored as separate real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMat {
    pub re: SmallMat,
    pub im: SmallMat,
}

impl ComplexMat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            re: SmallMat::zeros(dim),
            im: SmallMat::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        C64::new(self.re.get(i, j), self.im.get(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.re.set(i, j, v.re);
        self.im.set(i, j, v.im);
    }

    pub fn frobenius(&self) -> f64 {
        self.re.frobenius().hypot(self.im.frobenius())
    }

    pub fn matmul(&self, other: &ComplexMat) -> ComplexMat {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let mut out = ComplexMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::ZERO;
                for k in 0..n {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Largest absolute deviation from Hermitian symmetry, `max |a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                d = d.max((self.get(i, j) - self.get(j, i).conj()).abs());
            }
        }
        d
    }

    /// Determinant via complex Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let n = self.dim();
        let mut a: Vec<C64> = (0..n * n).map(|k| self.get(k / n, k % n)).collect();
        let mut det = C64::real(1.0);
        for col in 0..n {
            let mut piv = col;
            for r in (col + 1)..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col].abs() == 0.0 {
                return C64::ZERO;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = C64::new(-det.re, -det.im);
            }
            let p = a[col * n + col];
            det = det * p;
            let pinv = {
                let d = p.re * p.re + p.im * p.im;
                C64::new(p.re / d, -p.im / d)
            };
            for r in (col + 1)..n {
                let f = a[r * n + col] * pinv;
                if f.abs() == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = a[r * n + j] - f * a[col * n + j];
                }
            }
        }
        det
    }
}
