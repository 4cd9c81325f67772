//! The Liouville space `H ⊗ H̃`: basis indexing, lifting of physical and
//! tilde operators, numeric tilde conjugation and the partial trace over the
//! tilde factor.
//!
//! Basis kets are ordered `flat(n, m) = n·d + m` for `|n, m̃⟩`, so operators
//! acting on the physical slot are `A ⊗ I` in Kronecker order.
//!
//! For fermions the tilde mode must anticommute with the physical one. The
//! fermion-odd part of a tilde operator carries the parity `P = (−1)^{a†a}` of
//! the physical slot; the even part does not. Equivalently the tilde map is
//! conjugation by the antiunitary `J = F·S·K` (complex conjugation `K`, slot
//! swap `S`, and the fermionic swap sign `F = (−1)^{n·m}`), so `(AB)~ = ÃB̃`
//! holds for every product, not only even ones.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{parity_op, FockSpace, Ket, LinOp, Space, Statistics};
use crate::linalg::{self, Matrix};
use crate::scalar::{czero, Cplx, Real};

/// Whether tilde operators carry the parity string on the physical slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KleinConvention {
    enabled: bool,
}

impl KleinConvention {
    pub fn for_statistics(kind: Statistics) -> Self {
        Self {
            enabled: kind == Statistics::Fermion,
        }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }
}

/// How a physical ket is copied into the tilde factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeCopy {
    /// Same amplitudes.
    Linear,
    /// Complex-conjugated amplitudes (antilinear tilde map).
    Conjugate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubledSpace {
    mode: FockSpace,
}

impl DoubledSpace {
    pub fn new(mode: FockSpace) -> Self {
        Self { mode }
    }

    pub fn mode(&self) -> FockSpace {
        self.mode
    }

    pub fn kind(&self) -> Statistics {
        self.mode.kind()
    }

    pub fn mode_dim(&self) -> usize {
        self.mode.dim()
    }

    pub fn dim(&self) -> usize {
        self.mode.dim() * self.mode.dim()
    }

    pub fn space(&self) -> Space {
        Space::Doubled(self.mode)
    }

    pub fn mode_space(&self) -> Space {
        Space::Mode(self.mode)
    }

    pub fn klein(&self) -> KleinConvention {
        KleinConvention::for_statistics(self.kind())
    }

    pub fn flat(&self, n: usize, m: usize) -> usize {
        n * self.mode.dim() + m
    }

    pub fn unflat(&self, i: usize) -> (usize, usize) {
        (i / self.mode.dim(), i % self.mode.dim())
    }

    fn check_mode(&self, op: &LinOp<impl Real>) -> Result<()> {
        if op.space() != &self.mode_space() {
            return Err(Error::SpaceMismatch {
                expected: self.mode_space(),
                found: op.space().clone(),
            });
        }
        Ok(())
    }

    fn check_doubled(&self, space: &Space) -> Result<()> {
        if space != &self.space() {
            return Err(Error::SpaceMismatch {
                expected: self.space(),
                found: space.clone(),
            });
        }
        Ok(())
    }

    /// `|n, m̃⟩`.
    pub fn basis_ket<T: Real>(&self, n: usize, m: usize) -> Result<Ket<T>> {
        let d = self.mode.dim();
        if n >= d || m >= d {
            return Err(Error::IndexOutOfRange { n, m, dim: d });
        }
        Ket::basis(self.space(), self.flat(n, m))
    }

    /// `op ⊗ I`.
    pub fn lift_physical<T: Real>(&self, op: &LinOp<T>) -> Result<LinOp<T>> {
        self.check_mode(op)?;
        let id = Matrix::identity(self.mode.dim());
        LinOp::new(self.space(), op.matrix().kron(&id))
    }

    /// Tilde partner of a physical operator, acting on the second slot.
    ///
    /// Bosons: `I ⊗ op*`. Fermions: `I ⊗ (op_even)* + P ⊗ (op_odd)*`, which
    /// for a ladder operator is `P ⊗ op*`.
    pub fn lift_tilde<T: Real>(&self, op: &LinOp<T>, klein: KleinConvention) -> Result<LinOp<T>> {
        self.check_mode(op)?;
        if klein != self.klein() {
            return Err(Error::StatisticsMismatch(format!(
                "Klein factor {} for {} space",
                if klein.enabled() { "enabled" } else { "disabled" },
                self.kind()
            )));
        }
        let d = self.mode.dim();
        let id = Matrix::identity(d);
        let m = op.matrix();
        if !klein.enabled() {
            return LinOp::new(self.space(), id.kron(&m.conj()));
        }
        let parity = |k: usize| k % 2;
        let even = Matrix::from_fn(d, d, |i, j| {
            if parity(i) == parity(j) {
                m[(i, j)].conj()
            } else {
                czero()
            }
        });
        let odd = Matrix::from_fn(d, d, |i, j| {
            if parity(i) != parity(j) {
                m[(i, j)].conj()
            } else {
                czero()
            }
        });
        let p = parity_op::<T>(&self.mode).into_matrix();
        LinOp::new(self.space(), &id.kron(&even) + &p.kron(&odd))
    }

    /// Tilde conjugation of an operator already on `H ⊗ H̃`: `X ↦ J X J⁻¹`.
    /// Sends `A ⊗ I` to the tilde lift of `A` and back; applying it twice
    /// is the identity for both statistics.
    pub fn tilde_conjugate<T: Real>(&self, op: &LinOp<T>) -> Result<LinOp<T>> {
        self.check_doubled(op.space())?;
        let n = self.dim();
        let m = op.matrix();
        let swap = |i: usize| {
            let (a, b) = self.unflat(i);
            self.flat(b, a)
        };
        let sign = |i: usize| {
            let (a, b) = self.unflat(i);
            if self.mode.is_fermion() && a % 2 == 1 && b % 2 == 1 {
                -T::one()
            } else {
                T::one()
            }
        };
        let out = Matrix::from_fn(n, n, |i, j| {
            let z = m[(swap(i), swap(j))];
            if z.is_zero() {
                z
            } else {
                z.conj() * (sign(i) * sign(j))
            }
        });
        LinOp::new(self.space(), out)
    }

    /// Copies a physical ket into the tilde factor.
    pub fn tilde_map_ket<T: Real>(&self, k: &Ket<T>, copy: TildeCopy) -> Result<Ket<T>> {
        if k.space() != &self.mode_space() {
            return Err(Error::SpaceMismatch {
                expected: self.mode_space(),
                found: k.space().clone(),
            });
        }
        let amps = match copy {
            TildeCopy::Linear => k.amps().to_vec(),
            TildeCopy::Conjugate => k.amps().iter().map(|z| z.conj()).collect(),
        };
        Ket::new(self.mode_space(), amps)
    }

    /// `|phys⟩ ⊗ |tilde⟩` with `amps[flat(n, m)] = phys[n]·tilde[m]`.
    pub fn tensor<T: Real>(&self, phys: &Ket<T>, tilde: &Ket<T>) -> Result<Ket<T>> {
        for k in [phys, tilde] {
            if k.dim() != self.mode.dim() {
                return Err(Error::DimMismatch {
                    expected: self.mode.dim(),
                    found: k.dim(),
                });
            }
        }
        phys.tensor(tilde).relabel(self.space())
    }

    /// `ρ[n, n'] = Σ_m ρ₂[(n, m), (n', m)]`.
    pub fn partial_trace_tilde<T: Real>(&self, rho2: &LinOp<T>) -> Result<LinOp<T>> {
        self.check_doubled(rho2.space())?;
        let d = self.mode.dim();
        let m = rho2.matrix();
        let out = Matrix::from_fn(d, d, |n, np| {
            (0..d).fold(czero(), |acc, k| acc + m[(self.flat(n, k), self.flat(np, k))])
        });
        LinOp::new(self.mode_space(), out)
    }

    /// Reduced state of a pure doubled ket, `Tr_~ |ψ⟩⟨ψ|`, without forming
    /// the projector.
    pub fn reduced_of_ket<T: Real>(&self, k: &Ket<T>) -> Result<LinOp<T>> {
        self.check_doubled(k.space())?;
        let d = self.mode.dim();
        let a = k.amps();
        let out = Matrix::from_fn(d, d, |n, np| {
            (0..d).fold(czero(), |acc, m| {
                acc + a[self.flat(n, m)] * a[self.flat(np, m)].conj()
            })
        });
        LinOp::new(self.mode_space(), out)
    }

    /// Schmidt coefficients across the physical/tilde cut, descending.
    pub fn schmidt_coefficients<T: Real>(&self, k: &Ket<T>) -> Result<Vec<T>> {
        self.check_doubled(k.space())?;
        let d = self.mode.dim();
        linalg::schmidt_coefficients(k.amps(), d, d)
    }

    /// `⟨ψ|(op ⊗ I)|ψ⟩` evaluated by contracting the tilde index directly.
    pub fn physical_expectation<T: Real>(&self, k: &Ket<T>, op: &LinOp<T>) -> Result<Cplx<T>> {
        self.check_mode(op)?;
        self.check_doubled(k.space())?;
        let d = self.mode.dim();
        let a = k.amps();
        let m = op.matrix();
        let mut acc = czero::<T>();
        for n in 0..d {
            for np in 0..d {
                let x = m[(n, np)];
                if x.is_zero() {
                    continue;
                }
                let mut s = czero::<T>();
                for t in 0..d {
                    s += a[self.flat(n, t)].conj() * a[self.flat(np, t)];
                }
                acc += x * s;
            }
        }
        Ok(acc)
    }

    /// Operator assembled from a physical and a tilde factor: `A_phys · B̃`
    /// where `B̃` is the tilde lift of `tilde_of`.
    pub fn mixed_product<T: Real>(&self, phys: &LinOp<T>, tilde_of: &LinOp<T>) -> Result<LinOp<T>> {
        let a = self.lift_physical(phys)?;
        let b = self.lift_tilde(tilde_of, self.klein())?;
        a.compose(&b)
    }
}

pub fn doubled(space: FockSpace) -> DoubledSpace {
    DoubledSpace::new(space)
}
