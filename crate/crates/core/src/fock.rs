//! Single-mode Fock spaces, ladder operators and the state/operator carriers
//! used throughout the crate.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{czero, lit, Cplx, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Boson => f.write_str("boson"),
            Statistics::Fermion => f.write_str("fermion"),
        }
    }
}

/// One mode's statistics together with its basis truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockSpace {
    kind: Statistics,
    dim: usize,
}

impl FockSpace {
    /// Fermions ignore `cutoff` and get the two-level space; bosons keep
    /// `|0⟩ … |cutoff⟩`.
    pub fn new(kind: Statistics, cutoff: usize) -> Result<Self> {
        match kind {
            Statistics::Fermion => Ok(Self { kind, dim: 2 }),
            Statistics::Boson if cutoff == 0 => Err(Error::ZeroCutoff),
            Statistics::Boson => Ok(Self {
                kind,
                dim: cutoff + 1,
            }),
        }
    }

    pub fn fermion() -> Self {
        Self {
            kind: Statistics::Fermion,
            dim: 2,
        }
    }

    pub fn boson(cutoff: usize) -> Result<Self> {
        Self::new(Statistics::Boson, cutoff)
    }

    pub fn kind(&self) -> Statistics {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest occupation number kept.
    pub fn cutoff(&self) -> usize {
        self.dim - 1
    }

    pub fn is_fermion(&self) -> bool {
        self.kind == Statistics::Fermion
    }
}

/// Smallest bosonic cutoff whose Boltzmann tail `e^{−βω(N+1)}` drops below `tail`.
pub fn tail_rule_cutoff(beta_omega: f64, tail: f64) -> usize {
    let needed = -tail.ln() / beta_omega;
    // N + 1 > needed
    (needed.floor() as usize).max(1)
}

/// Space a ket or operator lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Space {
    Mode(FockSpace),
    /// `H ⊗ H̃` built from one mode.
    Doubled(FockSpace),
    /// Auxiliary register (cloning-machine states) of the given dimension.
    Ancilla(usize),
    /// Ordered tensor product of factors.
    Product(Vec<Space>),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Mode(m) => m.dim(),
            Space::Doubled(m) => m.dim() * m.dim(),
            Space::Ancilla(d) => *d,
            Space::Product(fs) => fs.iter().map(Space::dim).product(),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Mode(m) => write!(f, "{}[{}]", m.kind(), m.dim()),
            Space::Doubled(m) => write!(f, "{}[{}]⊗~", m.kind(), m.dim()),
            Space::Ancilla(d) => write!(f, "ancilla[{d}]"),
            Space::Product(fs) => {
                f.write_str("(")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ⊗ ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn check_space(expected: &Space, found: &Space) -> Result<()> {
    if expected != found {
        return Err(Error::SpaceMismatch {
            expected: expected.clone(),
            found: found.clone(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T: Real> {
    space: Space,
    amps: Vec<Cplx<T>>,
}

impl<T: Real> Ket<T> {
    pub fn new(space: Space, amps: Vec<Cplx<T>>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::DimMismatch {
                expected: space.dim(),
                found: amps.len(),
            });
        }
        if amps.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        Ok(Self { space, amps })
    }

    pub fn zero(space: Space) -> Self {
        let n = space.dim();
        Self {
            space,
            amps: vec![czero(); n],
        }
    }

    /// Unit vector `|index⟩`.
    pub fn basis(space: Space, index: usize) -> Result<Self> {
        let n = space.dim();
        if index >= n {
            return Err(Error::IndexOutOfRange {
                n: index,
                m: 0,
                dim: n,
            });
        }
        let mut k = Self::zero(space);
        k.amps[index] = Complex::new(T::one(), T::zero());
        Ok(k)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Cplx<T>] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Cplx<T> {
        self.amps[i]
    }

    pub fn into_amps(self) -> Vec<Cplx<T>> {
        self.amps
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Cplx<T>> {
        check_space(&self.space, &other.space)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(czero(), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self {
            space: self.space.clone(),
            amps: self.amps.iter().map(|z| z * c).collect(),
        }
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(Complex::new(T::one() / n, T::zero()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_space(&self.space, &other.space)?;
        Ok(Self {
            space: self.space.clone(),
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        Ok(self.sub(other)?.norm())
    }

    /// Kronecker product; the result lives on `Product([self.space, other.space])`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self {
            space: Space::Product(vec![self.space.clone(), other.space.clone()]),
            amps,
        }
    }

    /// Same amplitudes relabelled onto another space of equal dimension.
    pub fn relabel(self, space: Space) -> Result<Self> {
        Self::new(space, self.amps)
    }

    /// `|self⟩⟨self|` as an operator on the same space.
    pub fn projector(&self) -> LinOp<T> {
        let n = self.dim();
        LinOp {
            space: self.space.clone(),
            mat: Matrix::from_fn(n, n, |i, j| self.amps[i] * self.amps[j].conj()),
        }
    }
}

/// `Σ coeffs[i]·kets[i]`.
pub fn scale_add<T: Real>(kets: &[&Ket<T>], coeffs: &[Cplx<T>]) -> Result<Ket<T>> {
    let first = kets
        .first()
        .ok_or_else(|| Error::InvalidParameter("scale_add needs at least one ket".into()))?;
    if kets.len() != coeffs.len() {
        return Err(Error::DimMismatch {
            expected: kets.len(),
            found: coeffs.len(),
        });
    }
    let mut out = Ket::zero(first.space.clone());
    for (k, &c) in kets.iter().zip(coeffs) {
        check_space(&out.space, &k.space)?;
        for (o, a) in out.amps.iter_mut().zip(&k.amps) {
            *o += c * a;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinOp<T: Real> {
    space: Space,
    mat: Matrix<T>,
}

impl<T: Real> LinOp<T> {
    pub fn new(space: Space, mat: Matrix<T>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        if mat.rows() != space.dim() {
            return Err(Error::DimMismatch {
                expected: space.dim(),
                found: mat.rows(),
            });
        }
        Ok(Self { space, mat })
    }

    pub fn identity(space: Space) -> Self {
        let n = space.dim();
        Self {
            space,
            mat: Matrix::identity(n),
        }
    }

    pub fn zero(space: Space) -> Self {
        let n = space.dim();
        Self {
            space,
            mat: Matrix::zeros(n, n),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, k: &Ket<T>) -> Result<Ket<T>> {
        check_space(&self.space, &k.space)?;
        Ok(Ket {
            space: self.space.clone(),
            amps: self.mat.mul_vec(&k.amps),
        })
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        check_space(&self.space, &rhs.space)?;
        Ok(Self {
            space: self.space.clone(),
            mat: self.mat.matmul(&rhs.mat),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_space(&self.space, &rhs.space)?;
        Ok(Self {
            space: self.space.clone(),
            mat: &self.mat + &rhs.mat,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        check_space(&self.space, &rhs.space)?;
        Ok(Self {
            space: self.space.clone(),
            mat: &self.mat - &rhs.mat,
        })
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self {
            space: self.space.clone(),
            mat: self.mat.scale(c),
        }
    }

    pub fn dagger(&self) -> Self {
        Self {
            space: self.space.clone(),
            mat: self.mat.dagger(),
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        check_space(&self.space, &rhs.space)?;
        Ok(Self {
            space: self.space.clone(),
            mat: self.mat.commutator(&rhs.mat),
        })
    }

    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        check_space(&self.space, &rhs.space)?;
        Ok(Self {
            space: self.space.clone(),
            mat: self.mat.anticommutator(&rhs.mat),
        })
    }

    pub fn trace(&self) -> Cplx<T> {
        self.mat.trace()
    }

    /// Largest entrywise deviation between two operators on the same space.
    pub fn distance(&self, rhs: &Self) -> Result<T> {
        check_space(&self.space, &rhs.space)?;
        Ok(self.mat.max_abs_diff(&rhs.mat))
    }

    /// `⟨k|self|k⟩`.
    pub fn expectation(&self, k: &Ket<T>) -> Result<Cplx<T>> {
        k.inner(&self.apply(k)?)
    }

    /// Matrix block seen through the given basis kets, arranged the way
    /// `U (|b₀⟩, |b₁⟩, …)ᵀ = M (|b₀⟩, |b₁⟩, …)ᵀ` is written: row `i` holds
    /// the expansion of `U|bᵢ⟩`, i.e. `M[i][j] = ⟨bⱼ|U|bᵢ⟩`.
    pub fn action_on(&self, basis: &[usize]) -> Matrix<T> {
        Matrix::from_fn(basis.len(), basis.len(), |i, j| self.mat[(basis[j], basis[i])])
    }
}

/// Ladder lowering operator: `a|n⟩ = √n |n−1⟩`.
pub fn annihilator<T: Real>(space: &FockSpace) -> LinOp<T> {
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    for k in 1..n {
        m[(k - 1, k)] = Complex::new(lit::<T>(k as f64).sqrt(), T::zero());
    }
    LinOp {
        space: Space::Mode(*space),
        mat: m,
    }
}

/// Conjugate transpose of [`annihilator`]; the top state is mapped to zero.
pub fn creator<T: Real>(space: &FockSpace) -> LinOp<T> {
    annihilator(space).dagger()
}

pub fn number_op<T: Real>(space: &FockSpace) -> LinOp<T> {
    let diag: Vec<T> = (0..space.dim()).map(|k| lit(k as f64)).collect();
    LinOp {
        space: Space::Mode(*space),
        mat: Matrix::from_real_diag(&diag),
    }
}

/// Fermion parity `(−1)^n`, diagonal in the Fock basis.
pub fn parity_op<T: Real>(space: &FockSpace) -> LinOp<T> {
    let diag: Vec<T> = (0..space.dim())
        .map(|k| if k % 2 == 0 { T::one() } else { -T::one() })
        .collect();
    LinOp {
        space: Space::Mode(*space),
        mat: Matrix::from_real_diag(&diag),
    }
}

pub fn mode_basis<T: Real>(space: &FockSpace, n: usize) -> Result<Ket<T>> {
    Ket::basis(Space::Mode(*space), n)
}

/// `exp(op)`; skew-Hermitian input yields a unitary.
pub fn matrix_exp<T: Real>(op: &LinOp<T>) -> Result<LinOp<T>> {
    Ok(LinOp {
        space: op.space.clone(),
        mat: linalg::expm(&op.mat)?,
    })
}

/// Diagonal Hamiltonian with its spectrum in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T: Real> {
    op: LinOp<T>,
    spectrum: Vec<T>,
}

impl<T: Real> Hamiltonian<T> {
    /// `H = ω a†a`, spectrum `n·ω`.
    pub fn oscillator(space: &FockSpace, omega: T) -> Self {
        let spectrum: Vec<T> = (0..space.dim()).map(|k| omega * lit(k as f64)).collect();
        Self {
            op: LinOp {
                space: Space::Mode(*space),
                mat: Matrix::from_real_diag(&spectrum),
            },
            spectrum,
        }
    }

    /// Arbitrary diagonal Hamiltonian on a mode.
    pub fn diagonal(space: &FockSpace, spectrum: Vec<T>) -> Result<Self> {
        if spectrum.len() != space.dim() {
            return Err(Error::DimMismatch {
                expected: space.dim(),
                found: spectrum.len(),
            });
        }
        if spectrum.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            op: LinOp {
                space: Space::Mode(*space),
                mat: Matrix::from_real_diag(&spectrum),
            },
            spectrum,
        })
    }

    pub fn op(&self) -> &LinOp<T> {
        &self.op
    }

    pub fn spectrum(&self) -> &[T] {
        &self.spectrum
    }

    pub fn mode(&self) -> FockSpace {
        match self.op.space {
            Space::Mode(m) => m,
            _ => unreachable!("hamiltonians are built on a single mode"),
        }
    }

    pub fn ground_energy(&self) -> T {
        self.spectrum
            .iter()
            .copied()
            .fold(T::infinity(), |a, b| if b < a { b } else { a })
    }
}
