//! Thermofield dynamics for a single oscillator mode.
//!
//! Fock spaces for bosons and fermions, the doubled space `H ⊗ H̃` with its
//! tilde conjugation, the Bogoliubov thermal vacuum, entropy of reduced
//! states, no-cloning demonstrations for the doubling map, and a small
//! operator-expression language.
//!
//! Everything numeric is generic over [`scalar::Real`]. The aliases below
//! fix the scalar to `f64`; the `…32` variants use `f32`.
//!
//! ```
//! use tfd_core::{doubled::doubled, thermal, FockSpace, Statistics, ThermalParams};
//!
//! let ds = doubled(FockSpace::fermion());
//! let p = ThermalParams::new(1.0, 1.0, Statistics::Fermion).unwrap();
//! let vacuum = thermal::thermal_vacuum_unitary(&ds, &p).unwrap();
//! let n = vacuum.ket().amp(ds.flat(1, 1)).norm_sqr();
//! assert!((n - 1.0 / (1.0f64.exp() + 1.0)).abs() < 1e-15);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod doubled;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod noclone;
pub mod opexpr;
pub mod scalar;
pub mod thermal;

pub use doubled::{DoubledSpace, KleinConvention, TildeCopy};
pub use error::{Error, Result};
pub use fock::{FockSpace, Space, Statistics};

pub type Complex = scalar::Cplx<f64>;
pub type Matrix = linalg::Matrix<f64>;
pub type Ket = fock::Ket<f64>;
pub type LinOp = fock::LinOp<f64>;
pub type Hamiltonian = fock::Hamiltonian<f64>;
pub type ThermalParams = thermal::ThermalParams<f64>;
pub type ThermalState = thermal::ThermalState<f64>;
pub type BogoliubovGenerator = thermal::BogoliubovGenerator<f64>;
pub type DensityMatrix = entropy::DensityMatrix<f64>;
pub type CloneSpec = noclone::CloneSpec<f64>;
pub type ThermalCloneSpec = noclone::ThermalCloneSpec<f64>;
pub type CloneReport = noclone::CloneReport<f64>;
pub type Expr = opexpr::Expr<f64>;

pub type Complex32 = scalar::Cplx<f32>;
pub type Matrix32 = linalg::Matrix<f32>;
pub type Ket32 = fock::Ket<f32>;
pub type LinOp32 = fock::LinOp<f32>;
pub type Hamiltonian32 = fock::Hamiltonian<f32>;
pub type ThermalParams32 = thermal::ThermalParams<f32>;
pub type ThermalState32 = thermal::ThermalState<f32>;
pub type DensityMatrix32 = entropy::DensityMatrix<f32>;
pub type Expr32 = opexpr::Expr<f32>;
