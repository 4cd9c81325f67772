//! Thermal vacua on the doubled space.
//!
//! The vacuum is built two ways: as the Boltzmann-weighted series
//! `Z^{−1/2} Σ e^{−βE_n/2}|n, ñ⟩`, and as `e^{−iḠ}|0, 0̃⟩` with the two-mode
//! generator `Ḡ = iθ(X − X†)`, `X = a†b̃†`. For bosons `X† = ãb` so this is the
//! familiar `iθ(a†b̃† − a b̃)`; for fermions the tilde mode anticommutes with the
//! physical one and `X† = b̃ a`, which keeps `Ḡ` Hermitian.

use num_complex::Complex;

use crate::doubled::DoubledSpace;
use crate::error::{Error, Result};
use crate::fock::{annihilator, creator, matrix_exp, number_op, Hamiltonian, Ket, LinOp, Statistics};
use crate::scalar::{czero, lit, Cplx, Real};

/// Inverse temperature, frequency, and the derived mixing angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams<T: Real> {
    beta: T,
    omega: T,
    kind: Statistics,
    theta: T,
    u: T,
    v: T,
}

impl<T: Real> ThermalParams<T> {
    /// `tan θ = e^{−βω/2}` for fermions, `tanh θ = e^{−βω/2}` for bosons.
    /// `beta = +∞` is accepted as the zero-temperature limit.
    pub fn new(beta: T, omega: T, kind: Statistics) -> Result<Self> {
        if !(beta > T::zero()) {
            return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
        }
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        let x = (-(beta * omega) / lit(2.0)).exp();
        Ok(Self::from_boltzmann_root(beta, omega, kind, x))
    }

    /// Fermionic `β → 0` limit: `θ = π/4`.
    pub fn infinite_temperature(omega: T) -> Result<Self> {
        if !(omega > T::zero()) {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        Ok(Self::from_boltzmann_root(T::zero(), omega, Statistics::Fermion, T::one()))
    }

    fn from_boltzmann_root(beta: T, omega: T, kind: Statistics, x: T) -> Self {
        let (theta, u, v) = match kind {
            Statistics::Fermion => {
                let t = x.atan();
                (t, t.cos(), t.sin())
            }
            Statistics::Boson => {
                let t = x.atanh();
                (t, t.cosh(), t.sinh())
            }
        };
        Self {
            beta,
            omega,
            kind,
            theta,
            u,
            v,
        }
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn beta_omega(&self) -> T {
        if self.beta.is_infinite() {
            T::infinity()
        } else {
            self.beta * self.omega
        }
    }

    pub fn kind(&self) -> Statistics {
        self.kind
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn u(&self) -> T {
        self.u
    }

    pub fn v(&self) -> T {
        self.v
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.beta.is_infinite()
    }
}

pub fn mixing_angle<T: Real>(beta: T, omega: T, kind: Statistics) -> Result<ThermalParams<T>> {
    ThermalParams::new(beta, omega, kind)
}

fn check_kind<T: Real>(ds: &DoubledSpace, params: &ThermalParams<T>) -> Result<()> {
    if ds.kind() != params.kind() {
        return Err(Error::StatisticsMismatch(format!(
            "{} parameters on a {} space",
            params.kind(),
            ds.kind()
        )));
    }
    Ok(())
}

/// Matrix of `Ḡ` on the doubled space.
#[derive(Debug, Clone)]
pub struct BogoliubovGenerator<T: Real> {
    op: LinOp<T>,
    theta: T,
    ds: DoubledSpace,
}

impl<T: Real> BogoliubovGenerator<T> {
    pub fn op(&self) -> &LinOp<T> {
        &self.op
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn space(&self) -> DoubledSpace {
        self.ds
    }

    /// `e^{−iḠ}`.
    pub fn unitary(&self) -> Result<LinOp<T>> {
        matrix_exp(&self.op.scale(Complex::new(T::zero(), -T::one())))
    }

    /// `e^{+iḠ}`.
    pub fn inverse_unitary(&self) -> Result<LinOp<T>> {
        matrix_exp(&self.op.scale(Complex::new(T::zero(), T::one())))
    }

    /// Both exponentials, for repeated conjugations. `Ḡ` is Hermitian, so
    /// the inverse is the adjoint of `e^{−iḠ}`.
    pub fn transform(&self) -> Result<ThermalTransform<T>> {
        let forward = self.unitary()?;
        Ok(ThermalTransform {
            backward: forward.dagger(),
            forward,
            ds: self.ds,
        })
    }
}

/// `Ḡ = iθ(X − X†)` with `X = a† b̃†` built from the lifted ladder operators.
pub fn bogoliubov_generator<T: Real>(
    ds: &DoubledSpace,
    params: &ThermalParams<T>,
) -> Result<BogoliubovGenerator<T>> {
    check_kind(ds, params)?;
    let mode = ds.mode();
    let ad = creator::<T>(&mode);
    let x = ds.mixed_product(&ad, &ad)?;
    let g = x
        .sub(&x.dagger())?
        .scale(Complex::new(T::zero(), params.theta()));
    Ok(BogoliubovGenerator {
        op: g,
        theta: params.theta(),
        ds: *ds,
    })
}

/// `e^{−iḠ}` and its inverse, for mapping operators to their thermal
/// counterparts `Ā_β = e^{−iḠ} A e^{iḠ}`.
#[derive(Debug, Clone)]
pub struct ThermalTransform<T: Real> {
    forward: LinOp<T>,
    backward: LinOp<T>,
    ds: DoubledSpace,
}

impl<T: Real> ThermalTransform<T> {
    pub fn forward(&self) -> &LinOp<T> {
        &self.forward
    }

    pub fn backward(&self) -> &LinOp<T> {
        &self.backward
    }

    /// `e^{−iḠ} op e^{iḠ}` as a matrix.
    pub fn conjugate(&self, op: &LinOp<T>) -> Result<LinOp<T>> {
        self.forward.compose(op)?.compose(&self.backward)
    }

    /// `e^{−iḠ} op e^{iḠ} |k⟩` using matrix-vector products only.
    pub fn apply(&self, op: &LinOp<T>, k: &Ket<T>) -> Result<Ket<T>> {
        let back = self.backward.apply(k)?;
        self.forward.apply(&op.apply(&back)?)
    }

    /// `e^{−iḠ}|0, 0̃⟩`.
    pub fn vacuum(&self) -> Result<Ket<T>> {
        self.forward.apply(&self.ds.basis_ket(0, 0)?)
    }
}

/// Thermofield vacuum with its parameters and partition function.
#[derive(Debug, Clone)]
pub struct ThermalState<T: Real> {
    ket: Ket<T>,
    params: ThermalParams<T>,
    z: T,
    ds: DoubledSpace,
}

impl<T: Real> ThermalState<T> {
    pub fn ket(&self) -> &Ket<T> {
        &self.ket
    }

    pub fn params(&self) -> &ThermalParams<T> {
        &self.params
    }

    pub fn partition_function(&self) -> T {
        self.z
    }

    pub fn space(&self) -> DoubledSpace {
        self.ds
    }

    /// Norm distance between two constructions of the vacuum.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.ket.distance(&other.ket)
    }
}

/// `Z^{−1/2} Σ_n e^{−βE_n/2} |n, ñ⟩` over the truncated basis.
pub fn thermal_vacuum_series<T: Real>(
    ds: &DoubledSpace,
    params: &ThermalParams<T>,
    h: &Hamiltonian<T>,
) -> Result<ThermalState<T>> {
    check_kind(ds, params)?;
    if h.mode() != ds.mode() {
        return Err(Error::SpaceMismatch {
            expected: ds.mode_space(),
            found: h.op().space().clone(),
        });
    }
    let beta = params.beta();
    let e0 = h.ground_energy();
    // weights relative to the ground state so large βE underflow to zero
    let weights: Vec<T> = h
        .spectrum()
        .iter()
        .map(|&e| {
            if params.is_zero_temperature() {
                if e == e0 {
                    T::one()
                } else {
                    T::zero()
                }
            } else {
                (-beta * (e - e0)).exp()
            }
        })
        .collect();
    let total = weights.iter().fold(T::zero(), |a, &b| a + b);
    let z = if params.is_zero_temperature() {
        total
    } else {
        total * (-beta * e0).exp()
    };
    let norm = total.sqrt();
    let mut amps = vec![czero(); ds.dim()];
    for (n, &w) in weights.iter().enumerate() {
        amps[ds.flat(n, n)] = Complex::new(w.sqrt() / norm, T::zero());
    }
    Ok(ThermalState {
        ket: Ket::new(ds.space(), amps)?,
        params: *params,
        z,
        ds: *ds,
    })
}

/// `e^{−iḠ}|0, 0̃⟩`, with `Z` read back from the `|0, 0̃⟩` amplitude.
pub fn thermal_vacuum_unitary<T: Real>(
    ds: &DoubledSpace,
    params: &ThermalParams<T>,
) -> Result<ThermalState<T>> {
    check_kind(ds, params)?;
    if params.is_zero_temperature() {
        return Ok(ThermalState {
            ket: ds.basis_ket(0, 0)?,
            params: *params,
            z: T::one(),
            ds: *ds,
        });
    }
    let gen = bogoliubov_generator(ds, params)?;
    let ket = gen.unitary()?.apply(&ds.basis_ket(0, 0)?)?;
    let z = T::one() / ket.amp(0).norm_sqr();
    Ok(ThermalState {
        ket,
        params: *params,
        z,
        ds: *ds,
    })
}

/// `e^{−iḠ} op e^{iḠ}`.
pub fn thermal_op<T: Real>(
    ds: &DoubledSpace,
    op: &LinOp<T>,
    gen: &BogoliubovGenerator<T>,
) -> Result<LinOp<T>> {
    if gen.space() != *ds {
        return Err(Error::SpaceMismatch {
            expected: ds.space(),
            found: gen.op().space().clone(),
        });
    }
    gen.transform()?.conjugate(op)
}

/// Which factor of the doubled space an excitation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Physical,
    Tilde,
}

/// `ā_β†|0(β)⟩` or `b̄_β†|0(β)⟩`.
pub fn excitation<T: Real>(
    ds: &DoubledSpace,
    gen: &BogoliubovGenerator<T>,
    which: Slot,
) -> Result<Ket<T>> {
    let tr = gen.transform()?;
    let vacuum = tr.vacuum()?;
    let ad = creator::<T>(&ds.mode());
    let raise = match which {
        Slot::Physical => ds.lift_physical(&ad)?,
        Slot::Tilde => ds.lift_tilde(&ad, ds.klein())?,
    };
    tr.apply(&raise, &vacuum)
}

/// `H̄ = ω(a†a − b̃†b̃)`.
pub fn hbar_op<T: Real>(ds: &DoubledSpace, omega: T) -> Result<LinOp<T>> {
    let a = annihilator::<T>(&ds.mode());
    let phys = ds.lift_physical(&number_op(&ds.mode()))?;
    let bt = ds.lift_tilde(&a, ds.klein())?;
    let tilde_n = bt.dagger().compose(&bt)?;
    Ok(phys.sub(&tilde_n)?.scale(Complex::new(omega, T::zero())))
}

/// `⟨0(β)|(op ⊗ I)|0(β)⟩` for an operator on the physical mode.
pub fn expectation<T: Real>(state: &ThermalState<T>, op: &LinOp<T>) -> Result<Cplx<T>> {
    state.ds.physical_expectation(&state.ket, op)
}

/// Fermi–Dirac `e^{−βω}/(1 + e^{−βω})` or Bose–Einstein `1/(e^{βω} − 1)`.
pub fn mean_occupation<T: Real>(beta: T, omega: T, kind: Statistics) -> T {
    let x = beta * omega;
    match kind {
        Statistics::Fermion => T::one() / (x.exp() + T::one()),
        Statistics::Boson => T::one() / x.exp_m1(),
    }
}
