//! Dense complex matrices and the handful of factorizations the rest of the
//! crate needs: Hermitian eigendecomposition (cyclic Jacobi), singular values
//! (one-sided Jacobi), LU solves and the matrix exponential.
//!
//! Matrices are small (at most a few thousand rows) and mostly sparse in
//! practice, so products skip zero entries of the left operand.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{czero, lit, Cplx, Real};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cplx<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diag(diag: &[Cplx<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        let d: Vec<_> = diag.iter().map(|&x| Complex::new(x, T::zero())).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from row-major data.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Cplx<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
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

    pub fn as_slice(&self) -> &[Cplx<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Cplx<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diagonal(&self) -> Vec<Cplx<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn map(&self, f: impl Fn(Cplx<T>) -> Cplx<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        self.map(|z| z * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Cplx<T> {
        self.diagonal().into_iter().fold(czero(), |acc, z| acc + z)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        let mut best = T::zero();
        for j in 0..self.cols {
            let s = (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, j)].norm());
            if s > best {
                best = s;
            }
        }
        best
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.max_abs_diff(&self.dagger()) <= tol
    }

    pub fn is_skew_hermitian(&self, tol: T) -> bool {
        self.is_square() && (self + &self.dagger()).max_abs() <= tol
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|z| !z.is_zero()).count()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        let n = rhs.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs` with row index `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// `self·rhs + rhs·self`.
    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) + &rhs.matmul(self)
    }

    /// Symmetric permutation `P A Pᵀ` restricted to `idx`: entry `(a, b)` is `A[idx[a], idx[b]]`.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |a, b| self[(idx[a], idx[b])])
    }

    /// Spectral (operator 2-) norm.
    pub fn spectral_norm(&self) -> T {
        singular_values(self)
            .first()
            .copied()
            .unwrap_or_else(T::zero)
    }
}

impl<T: Real> Index<(usize, usize)> for Matrix<T> {
    type Output = Cplx<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Cplx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|z| -z)
    }
}

/// Rotation `V = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]` that diagonalizes the
/// Hermitian 2×2 block `[[app, apq], [apq*, aqq]]` via `V† A V`.
struct Rotation<T: Real> {
    c: T,
    s: T,
    phase: Cplx<T>,
}

impl<T: Real> Rotation<T> {
    fn new(app: T, aqq: T, apq: Cplx<T>) -> Self {
        let mag = apq.norm();
        let phase = apq / mag;
        let zeta = (aqq - app) / (lit::<T>(2.0) * mag);
        let t = if zeta >= T::zero() {
            T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
        } else {
            -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
        };
        let c = T::one() / (T::one() + t * t).sqrt();
        Self {
            c,
            s: t * c,
            phase: phase.conj(),
        }
    }

    /// Entries `(vpp, vpq, vqp, vqq)`.
    fn entries(&self) -> (Cplx<T>, Cplx<T>, Cplx<T>, Cplx<T>) {
        let c = Complex::new(self.c, T::zero());
        let s = Complex::new(self.s, T::zero());
        (c, s, -s * self.phase, c * self.phase)
    }
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: Matrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V f(Λ) V†` for a function of the eigenvalues.
    pub fn reconstruct(&self, f: impl Fn(T) -> Cplx<T>) -> Matrix<T> {
        let n = self.values.len();
        let fv: Vec<_> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = czero();
                for k in 0..n {
                    acc += v[(i, k)] * fv[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

/// Cyclic Jacobi diagonalization. Only the Hermitian part of `a` is used.
pub fn eigh<T: Real>(a: &Matrix<T>) -> Result<HermitianEigen<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.rows;
    let half = lit::<T>(0.5);
    let mut m = Matrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * half);
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();
    let eps = T::epsilon();

    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= eps * lit(0.01) * scale || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.norm() <= eps * lit(1e-3) * scale || apq.is_zero() {
                    continue;
                }
                let rot = Rotation::new(m[(p, p)].re, m[(q, q)].re, apq);
                let (vpp, vpq, vqp, vqq) = rot.entries();
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * vpp + mkq * vqp;
                    m[(k, q)] = mkp * vpq + mkq * vqq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = vpp.conj() * mpk + vqp.conj() * mqk;
                    m[(q, k)] = vpq.conj() * mpk + vqq.conj() * mqk;
                }
                m[(p, q)] = czero();
                m[(q, p)] = czero();
                m[(p, p)].im = T::zero();
                m[(q, q)].im = T::zero();
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * vpp + vkq * vqp;
                    v[(k, q)] = vkp * vpq + vkq * vqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .re
            .partial_cmp(&m[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Singular values in descending order (one-sided Jacobi on the columns).
pub fn singular_values<T: Real>(a: &Matrix<T>) -> Vec<T> {
    // Work on the orientation with fewer columns.
    let mut w = if a.cols <= a.rows { a.clone() } else { a.dagger() };
    let (rows, cols) = (w.rows, w.cols);
    let eps = T::epsilon();

    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = czero::<T>();
                for k in 0..rows {
                    let x = w[(k, p)];
                    let y = w[(k, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                if gamma.is_zero() || gamma.norm() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::new(alpha, beta, gamma);
                let (vpp, vpq, vqp, vqq) = rot.entries();
                for k in 0..rows {
                    let x = w[(k, p)];
                    let y = w[(k, q)];
                    w[(k, p)] = x * vpp + y * vqp;
                    w[(k, q)] = x * vpq + y * vqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<T> = (0..cols)
        .map(|j| (0..rows).fold(T::zero(), |acc, k| acc + w[(k, j)].norm_sqr()).sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Solves `a · x = b` by LU with partial pivoting.
pub fn solve<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if b.rows != n {
        return Err(Error::DimMismatch {
            expected: n,
            found: b.rows,
        });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let nrhs = b.cols;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                lu[(i, col)]
                    .norm()
                    .partial_cmp(&lu[(j, col)].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if lu[(pivot, col)].is_zero() {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                lu.data.swap(pivot * n + j, col * n + j);
            }
            for j in 0..nrhs {
                x.data.swap(pivot * nrhs + j, col * nrhs + j);
            }
        }
        let d = lu[(col, col)];
        for i in (col + 1)..n {
            let f = lu[(i, col)] / d;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let t = lu[(col, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..nrhs {
                let t = x[(col, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for col in (0..n).rev() {
        let d = lu[(col, col)];
        for j in 0..nrhs {
            let mut acc = x[(col, j)];
            for k in (col + 1)..n {
                acc -= lu[(col, k)] * x[(k, j)];
            }
            x[(col, j)] = acc / d;
        }
    }
    Ok(x)
}

/// Groups indices into connected components of the nonzero pattern of `a`
/// (edge `i–j` whenever `a[i,j]` or `a[j,i]` is nonzero).
fn coupled_blocks<T: Real>(a: &Matrix<T>) -> Vec<Vec<usize>> {
    let n = a.rows;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !a[(i, j)].is_zero() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Matrix exponential.
///
/// The matrix is split into decoupled diagonal blocks first. Hermitian and
/// skew-Hermitian blocks go through the eigendecomposition; anything else uses
/// degree-13 Padé approximation with scaling and squaring.
pub fn expm<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.rows;
    let mut out = Matrix::zeros(n, n);
    for block in coupled_blocks(a) {
        let sub = a.submatrix(&block);
        let e = expm_block(&sub)?;
        for (bi, &i) in block.iter().enumerate() {
            for (bj, &j) in block.iter().enumerate() {
                out[(i, j)] = e[(bi, bj)];
            }
        }
    }
    Ok(out)
}

fn expm_block<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if a.rows == 1 {
        return Ok(Matrix::from_diag(&[a[(0, 0)].exp()]));
    }
    let tol = a.max_abs() * T::epsilon() * lit(16.0);
    if a.is_skew_hermitian(tol) {
        // a = −i·h with h Hermitian
        let h = a.scale(Complex::new(T::zero(), T::one()));
        let eig = eigh(&h)?;
        return Ok(eig.reconstruct(|x| Complex::new(T::zero(), -x).exp()));
    }
    if a.is_hermitian(tol) {
        let eig = eigh(a)?;
        return Ok(eig.reconstruct(|x| Complex::new(x.exp(), T::zero())));
    }
    expm_pade(a)
}

fn expm_pade<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA13: f64 = 5.371920351148152;
    let n = a.rows;
    let norm = a.one_norm();
    let mut s = 0i32;
    if norm > lit(THETA13) {
        s = (norm / lit(THETA13)).log2().ceil().to_i32().unwrap_or(0).max(0);
    }
    let a = a.scale(Complex::new(lit::<T>(0.5).powi(s), T::zero()));
    let b = |k: usize| Complex::new(lit::<T>(B[k]), T::zero());
    let id = Matrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);

    let inner_u = &(&a6.scale(b(13)) + &a4.scale(b(11))) + &a2.scale(b(9));
    let u_poly = &(&(&a6.matmul(&inner_u) + &a6.scale(b(7))) + &a4.scale(b(5)))
        + &(&a2.scale(b(3)) + &id.scale(b(1)));
    let u = a.matmul(&u_poly);

    let inner_v = &(&a6.scale(b(12)) + &a4.scale(b(10))) + &a2.scale(b(8));
    let v = &(&(&a6.matmul(&inner_v) + &a6.scale(b(6))) + &a4.scale(b(4)))
        + &(&a2.scale(b(2)) + &id.scale(b(0)));

    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    Ok(r)
}

/// Random Hermitian matrix with entries of order one: `(X + X†)/2` with
/// `X` uniform in the unit square.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let x = Matrix::from_fn(n, n, |_, _| {
        Complex::new(
            lit::<T>(rng.gen_range(-1.0..1.0)),
            lit::<T>(rng.gen_range(-1.0..1.0)),
        )
    });
    let half = Complex::new(lit::<T>(0.5), T::zero());
    (&x + &x.dagger()).scale(half)
}

/// Schmidt coefficients of a bipartite amplitude vector reshaped to
/// `rows × cols` (row-major), in descending order.
pub fn schmidt_coefficients<T: Real>(amps: &[Cplx<T>], rows: usize, cols: usize) -> Result<Vec<T>> {
    let m = Matrix::from_rows(rows, cols, amps.to_vec())?;
    Ok(singular_values(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Cplx<f64> {
        cplx(re, im)
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 17] {
            let h: Matrix<f64> = random_hermitian(&mut rng, n);
            let e = eigh(&h).unwrap();
            let back = e.reconstruct(|x| c(x, 0.0));
            assert!(back.max_abs_diff(&h) < 1e-12, "n={n}");
            let vv = e.vectors.dagger().matmul(&e.vectors);
            assert!(vv.max_abs_diff(&Matrix::identity(n)) < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigh_pauli_y() {
        let y = Matrix::from_rows(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let e = eigh(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_values_of_rank_one_are_exact() {
        let u = [c(0.6, 0.0), c(0.0, 0.8)];
        let v = [c(0.5, 0.5), c(0.5, -0.5)];
        let m = Matrix::from_fn(2, 2, |i, j| u[i] * v[j]);
        let sv = singular_values(&m);
        assert!((sv[0] - 1.0).abs() < 1e-15);
        assert!(sv[1] < 1e-15);
    }

    #[test]
    fn singular_values_match_eigenvalues_of_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::<f64>::from_fn(4, 6, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let sv = singular_values(&m);
        let g = eigh(&m.matmul(&m.dagger())).unwrap();
        let mut ev: Vec<f64> = g.values.iter().map(|x| x.sqrt()).collect();
        ev.reverse();
        for (a, b) in sv.iter().zip(&ev) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn solve_recovers_known_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = Matrix::<f64>::from_fn(5, 5, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let x = Matrix::<f64>::from_fn(5, 2, |i, j| c(i as f64, j as f64 - 1.0));
        let b = a.matmul(&x);
        let got = solve(&a, &b).unwrap();
        assert!(got.max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = Matrix::<f64>::zeros(2, 2);
        assert_eq!(solve(&a, &Matrix::identity(2)), Err(Error::Singular));
    }

    #[test]
    fn pade_matches_eigen_route_on_normal_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h: Matrix<f64> = random_hermitian(&mut rng, 6);
        let s = h.scale(c(0.0, -3.0));
        let via_eig = expm(&s).unwrap();
        let via_pade = expm_pade(&s).unwrap();
        assert!(via_eig.max_abs_diff(&via_pade) < 1e-12);
    }

    #[test]
    fn pade_nilpotent_is_exact_series() {
        // exp([[0,1],[0,0]]) = [[1,1],[0,1]]
        let n = Matrix::from_rows(2, 2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        let e = expm(&n).unwrap();
        let want = Matrix::from_rows(2, 2, vec![c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]).unwrap();
        assert!(e.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn pade_large_norm_uses_squaring() {
        // upper triangular [[a, 1],[0, b]]: exp = [[e^a, (e^a−e^b)/(a−b)],[0, e^b]]
        let (a, b) = (3.0_f64, -7.0_f64);
        let m = Matrix::from_rows(2, 2, vec![c(a, 0.), c(1., 0.), c(0., 0.), c(b, 0.)]).unwrap();
        let e = expm(&m).unwrap();
        let off = (a.exp() - b.exp()) / (a - b);
        assert!((e[(0, 0)].re - a.exp()).abs() < 1e-12 * a.exp());
        assert!((e[(0, 1)].re - off).abs() < 1e-12 * off);
        assert!((e[(1, 1)].re - b.exp()).abs() < 1e-15);
    }

    #[test]
    fn expm_rejects_non_finite() {
        let mut m = Matrix::<f64>::identity(2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert_eq!(expm(&m), Err(Error::NonFinite));
    }

    #[test]
    fn blocks_split_on_pattern() {
        let mut m = Matrix::<f64>::zeros(4, 4);
        m[(0, 3)] = c(1.0, 0.0);
        m[(1, 2)] = c(0.0, 1.0);
        let mut b = coupled_blocks(&m);
        b.sort();
        assert_eq!(b, vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn single_precision_eigh() {
        let h = Matrix::<f32>::from_rows(
            2,
            2,
            vec![cplx(2.0, 0.0), cplx(1.0, 0.0), cplx(1.0, 0.0), cplx(2.0, 0.0)],
        )
        .unwrap();
        let e = eigh(&h).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-6);
        assert!((e.values[1] - 3.0).abs() < 1e-6);
    }
}
