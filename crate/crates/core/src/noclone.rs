//! No-cloning demonstrations: the generic cloning machine, the doubling map
//! `D_TFD` and the thermofield cloning map `C_TFD`.

use num_complex::Complex;

use crate::doubled::{DoubledSpace, TildeCopy};
use crate::error::{Error, Result};
use crate::fock::{mode_basis, scale_add, FockSpace, Ket, Space, Statistics};
use crate::linalg;
use crate::scalar::{czero, lit, tolerance, Cplx, Real};
use crate::thermal::{bogoliubov_generator, excitation, thermal_vacuum_unitary, Slot, ThermalParams};

/// Default threshold for membership in a scan's zero locus.
pub const ZERO_TOL: f64 = 1e-10;

/// Ancilla dimension used for the cloning machine states `|A₀⟩, |A_n⟩, |A_m⟩`.
pub const ANCILLA_DIM: usize = 3;

fn check_normalized<T: Real>(a: Cplx<T>, b: Cplx<T>) -> Result<()> {
    let n = a.norm_sqr() + b.norm_sqr();
    if !n.is_finite() {
        return Err(Error::NonFinite);
    }
    if (n - T::one()).abs() > tolerance::<T>(1e-12) {
        return Err(Error::NotNormalized(crate::scalar::to_f64(n.sqrt())));
    }
    Ok(())
}

/// `z|n⟩ + w|m⟩` together with the choice of tilde copy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloneSpec<T: Real> {
    z: Cplx<T>,
    w: Cplx<T>,
    n: usize,
    m: usize,
    copy: TildeCopy,
}

impl<T: Real> CloneSpec<T> {
    pub fn new(z: Cplx<T>, w: Cplx<T>, n: usize, m: usize, copy: TildeCopy) -> Result<Self> {
        if n == m {
            return Err(Error::InvalidParameter(format!("basis indices must differ, got n = m = {n}")));
        }
        check_normalized(z, w)?;
        Ok(Self { z, w, n, m, copy })
    }

    /// `cos φ |0⟩ + e^{iχ} sin φ |1⟩`.
    pub fn angles(phi: T, chi: T, copy: TildeCopy) -> Result<Self> {
        Self::new(
            Complex::new(phi.cos(), T::zero()),
            Complex::from_polar(phi.sin(), chi),
            0,
            1,
            copy,
        )
    }

    pub fn z(&self) -> Cplx<T> {
        self.z
    }

    pub fn w(&self) -> Cplx<T> {
        self.w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn copy(&self) -> TildeCopy {
        self.copy
    }

    /// `|z| = 1` or `|w| = 1`.
    pub fn is_corner(&self) -> bool {
        is_corner(self.z, self.w)
    }

}

fn is_corner<T: Real>(a: Cplx<T>, b: Cplx<T>) -> bool {
    let tol = tolerance::<T>(1e-12);
    (a.norm() - T::one()).abs() < tol || (b.norm() - T::one()).abs() < tol
}

/// `u|0(β)⟩ + v|1(β)⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalCloneSpec<T: Real> {
    u: Cplx<T>,
    v: Cplx<T>,
    params: ThermalParams<T>,
    copy: TildeCopy,
}

impl<T: Real> ThermalCloneSpec<T> {
    pub fn new(u: Cplx<T>, v: Cplx<T>, params: ThermalParams<T>) -> Result<Self> {
        check_normalized(u, v)?;
        Ok(Self {
            u,
            v,
            params,
            copy: TildeCopy::Linear,
        })
    }

    /// Uses `u*, v*` in the second copy.
    pub fn conjugated(mut self) -> Self {
        self.copy = TildeCopy::Conjugate;
        self
    }

    pub fn u(&self) -> Cplx<T> {
        self.u
    }

    pub fn v(&self) -> Cplx<T> {
        self.v
    }

    pub fn params(&self) -> &ThermalParams<T> {
        &self.params
    }

    pub fn copy(&self) -> TildeCopy {
        self.copy
    }

    pub fn is_corner(&self) -> bool {
        is_corner(self.u, self.v)
    }
}

/// How the basis action is extended to superpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Extension {
    #[default]
    Linear,
    /// Conjugate-linear: `z|n⟩ + w|m⟩ ↦ z*·f(|n⟩) + w*·f(|m⟩)`.
    Antilinear,
}

impl Extension {
    fn apply<T: Real>(self, c: Cplx<T>) -> Cplx<T> {
        match self {
            Extension::Linear => c,
            Extension::Antilinear => c.conj(),
        }
    }
}

/// Whether the cloning machine ends in the same ancilla state on both branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MachineStates {
    Equal,
    Distinct,
}

fn check_index(ds: &DoubledSpace, spec_n: usize, spec_m: usize) -> Result<()> {
    let dim = ds.mode_dim();
    for n in [spec_n, spec_m] {
        if n >= dim {
            return Err(Error::IndexOutOfRange { n, m: n, dim });
        }
    }
    Ok(())
}

/// `D_TFD(|n⟩) = |n, ñ⟩`.
pub fn d_tfd_basis<T: Real>(ds: &DoubledSpace, n: usize) -> Result<Ket<T>> {
    ds.basis_ket(n, n)
}

fn superposition<T: Real>(mode: &FockSpace, n: usize, m: usize, a: Cplx<T>, b: Cplx<T>) -> Result<Ket<T>> {
    let kn = mode_basis(mode, n)?;
    let km = mode_basis(mode, m)?;
    scale_add(&[&kn, &km], &[a, b])
}

/// `(z|n⟩ + w|m⟩) ⊗ (z'|ñ⟩ + w'|m̃⟩)` with the tilde coefficients copied or conjugated.
pub fn d_tfd_clone<T: Real>(ds: &DoubledSpace, spec: &CloneSpec<T>) -> Result<Ket<T>> {
    check_index(ds, spec.n, spec.m)?;
    let psi = superposition(&ds.mode(), spec.n, spec.m, spec.z, spec.w)?;
    let copy = ds.tilde_map_ket(&psi, spec.copy)?;
    ds.tensor(&psi, &copy)
}

/// `z|n, ñ⟩ + w|m, m̃⟩`.
pub fn d_tfd_linear<T: Real>(ds: &DoubledSpace, spec: &CloneSpec<T>) -> Result<Ket<T>> {
    d_tfd_extended(ds, spec, Extension::Linear)
}

/// `z*|n, ñ⟩ + w*|m, m̃⟩`.
pub fn d_tfd_antilinear<T: Real>(ds: &DoubledSpace, spec: &CloneSpec<T>) -> Result<Ket<T>> {
    d_tfd_extended(ds, spec, Extension::Antilinear)
}

fn d_tfd_extended<T: Real>(ds: &DoubledSpace, spec: &CloneSpec<T>, ext: Extension) -> Result<Ket<T>> {
    check_index(ds, spec.n, spec.m)?;
    let kn = d_tfd_basis(ds, spec.n)?;
    let km = d_tfd_basis(ds, spec.m)?;
    scale_add(&[&kn, &km], &[ext.apply(spec.z), ext.apply(spec.w)])
}

/// `‖a − b‖`, or `min_α ‖a − e^{iα} b‖` when `up_to_phase`.
fn residual<T: Real>(a: &Ket<T>, b: &Ket<T>, up_to_phase: bool) -> Result<T> {
    if !up_to_phase {
        return a.distance(b);
    }
    let overlap = b.inner(a)?;
    let phase = if overlap.norm() > T::zero() {
        overlap / overlap.norm()
    } else {
        Complex::new(T::one(), T::zero())
    };
    a.distance(&b.scale(phase))
}

/// `‖D_TFD,linear − D_TFD,clone‖`; compared up to global phase at the corners.
pub fn cloning_residual<T: Real>(ds: &DoubledSpace, spec: &CloneSpec<T>) -> Result<T> {
    cloning_residual_with(ds, spec, Extension::Linear)
}

pub fn cloning_residual_with<T: Real>(ds: &DoubledSpace, spec: &CloneSpec<T>, ext: Extension) -> Result<T> {
    let target = d_tfd_extended(ds, spec, ext)?;
    let clone = d_tfd_clone(ds, spec)?;
    residual(&target, &clone, spec.is_corner())
}

/// Space of the cloning machine: ancilla ⊗ H ⊗ H.
pub fn machine_space(mode: &FockSpace) -> Space {
    Space::Product(vec![
        Space::Ancilla(ANCILLA_DIM),
        Space::Mode(*mode),
        Space::Mode(*mode),
    ])
}

/// `z|A_n⟩|n, n⟩ + w|A_m⟩|m, m⟩`, with `|A_n⟩ = e₁` and `|A_m⟩ = e₁` or `e₂`.
pub fn generic_machine_output<T: Real>(
    mode: &FockSpace,
    spec: &CloneSpec<T>,
    states: MachineStates,
) -> Result<Ket<T>> {
    let d = mode.dim();
    for k in [spec.n, spec.m] {
        if k >= d {
            return Err(Error::IndexOutOfRange { n: k, m: k, dim: d });
        }
    }
    let a_m = match states {
        MachineStates::Equal => 1,
        MachineStates::Distinct => 2,
    };
    let mut amps = vec![czero(); ANCILLA_DIM * d * d];
    let at = |a: usize, i: usize, j: usize| (a * d + i) * d + j;
    amps[at(1, spec.n, spec.n)] += spec.z;
    amps[at(a_m, spec.m, spec.m)] += spec.w;
    Ket::new(machine_space(mode), amps)
}

/// Distance from the machine output to the nearest `|A⟩ ⊗ ψ ⊗ ψ`, with the
/// ancilla state `|A⟩` free.
pub fn generic_machine_residual<T: Real>(
    mode: &FockSpace,
    spec: &CloneSpec<T>,
    states: MachineStates,
) -> Result<T> {
    let out = generic_machine_output(mode, spec, states)?;
    let psi = superposition(mode, spec.n, spec.m, spec.z, spec.w)?;
    let pp = psi.tensor(&psi);
    let d2 = pp.dim();
    // c = (I ⊗ ⟨ψψ|) out
    let c: Vec<Cplx<T>> = (0..ANCILLA_DIM)
        .map(|a| {
            pp.amps()
                .iter()
                .zip(&out.amps()[a * d2..(a + 1) * d2])
                .fold(czero(), |acc, (p, o)| acc + p.conj() * o)
        })
        .collect();
    let cn = c.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt();
    let ancilla: Vec<Cplx<T>> = if cn > T::zero() {
        c.iter().map(|x| x / cn).collect()
    } else {
        let mut e = vec![czero(); ANCILLA_DIM];
        e[0] = Complex::new(T::one(), T::zero());
        e
    };
    let a = Ket::new(Space::Ancilla(ANCILLA_DIM), ancilla)?;
    let best = a.tensor(&pp).relabel(out.space().clone())?;
    out.distance(&best)
}

/// `(H ⊗ H̃) ⊗ (H ⊗ H̃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fourfold {
    ds: DoubledSpace,
}

impl Fourfold {
    pub fn new(ds: DoubledSpace) -> Self {
        Self { ds }
    }

    /// Fermionic fourfold space, dimension 16.
    pub fn fermion() -> Self {
        Self::new(DoubledSpace::new(FockSpace::fermion()))
    }

    pub fn doubled(&self) -> DoubledSpace {
        self.ds
    }

    pub fn dim(&self) -> usize {
        self.ds.dim() * self.ds.dim()
    }

    pub fn space(&self) -> Space {
        Space::Product(vec![self.ds.space(), self.ds.space()])
    }

    /// `(|0(β)⟩, |1(β)⟩)`.
    pub fn thermal_pair<T: Real>(&self, params: &ThermalParams<T>) -> Result<(Ket<T>, Ket<T>)> {
        let vacuum = thermal_vacuum_unitary(&self.ds, params)?.ket().clone();
        let one = if params.is_zero_temperature() {
            self.ds.basis_ket(1, 0)?
        } else {
            let gen = bogoliubov_generator(&self.ds, params)?;
            excitation(&self.ds, &gen, Slot::Physical)?
        };
        Ok((vacuum, one))
    }

    fn check(&self, params: &ThermalParams<impl Real>) -> Result<()> {
        if params.kind() != self.ds.kind() {
            return Err(Error::StatisticsMismatch(format!(
                "parameters are {}, space is {}",
                params.kind(),
                self.ds.kind()
            )));
        }
        Ok(())
    }
}

/// `(u|0(β)⟩ + v|1(β)⟩) ⊗ (u'|0(β)⟩ + v'|1(β)⟩)`.
pub fn c_tfd_clone<T: Real>(ff: &Fourfold, spec: &ThermalCloneSpec<T>) -> Result<Ket<T>> {
    ff.check(&spec.params)?;
    let (k0, k1) = ff.thermal_pair(&spec.params)?;
    let first = scale_add(&[&k0, &k1], &[spec.u, spec.v])?;
    let (u2, v2) = match spec.copy {
        TildeCopy::Linear => (spec.u, spec.v),
        TildeCopy::Conjugate => (spec.u.conj(), spec.v.conj()),
    };
    let second = scale_add(&[&k0, &k1], &[u2, v2])?;
    first.tensor(&second).relabel(ff.space())
}

/// `u|0(β)⟩|0(β)⟩ + v|1(β)⟩|1(β)⟩`.
pub fn c_tfd_linear<T: Real>(ff: &Fourfold, spec: &ThermalCloneSpec<T>) -> Result<Ket<T>> {
    c_tfd_extended(ff, spec, Extension::Linear)
}

fn c_tfd_extended<T: Real>(ff: &Fourfold, spec: &ThermalCloneSpec<T>, ext: Extension) -> Result<Ket<T>> {
    ff.check(&spec.params)?;
    let (k0, k1) = ff.thermal_pair(&spec.params)?;
    let k00 = k0.tensor(&k0).relabel(ff.space())?;
    let k11 = k1.tensor(&k1).relabel(ff.space())?;
    scale_add(&[&k00, &k11], &[ext.apply(spec.u), ext.apply(spec.v)])
}

/// `‖C_TFD,linear − C_TFD,clone‖`; compared up to global phase at the corners.
pub fn c_tfd_residual<T: Real>(ff: &Fourfold, spec: &ThermalCloneSpec<T>) -> Result<T> {
    c_tfd_residual_with(ff, spec, Extension::Linear)
}

pub fn c_tfd_residual_with<T: Real>(ff: &Fourfold, spec: &ThermalCloneSpec<T>, ext: Extension) -> Result<T> {
    let target = c_tfd_extended(ff, spec, ext)?;
    let clone = c_tfd_clone(ff, spec)?;
    residual(&target, &clone, spec.is_corner())
}

/// Which cloning map a scan probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CloneMap {
    DTfd,
    CTfd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions<T: Real> {
    pub resolution: usize,
    pub map: CloneMap,
    pub branch: TildeCopy,
    pub extension: Extension,
    /// Number of relative phases `χ = 2πk/phases` per interior `φ`.
    pub phases: usize,
    pub tol: T,
    /// Thermal parameters for `C_TFD`; fermionic `βω = 1` when absent.
    pub params: Option<ThermalParams<T>>,
}

impl<T: Real> ScanOptions<T> {
    pub fn new(resolution: usize, map: CloneMap, branch: TildeCopy) -> Self {
        Self {
            resolution,
            map,
            branch,
            extension: Extension::Linear,
            phases: 1,
            tol: lit(ZERO_TOL),
            params: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloneEntry<T: Real> {
    pub phi: T,
    pub chi: T,
    pub z: Cplx<T>,
    pub w: Cplx<T>,
    pub residual: T,
}

impl<T: Real> CloneEntry<T> {
    pub fn is_corner(&self) -> bool {
        is_corner(self.z, self.w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloneReport<T: Real> {
    pub grid: Vec<CloneEntry<T>>,
    pub zero_locus: Vec<CloneEntry<T>>,
    /// Smallest residual outside the zero locus.
    pub min_nonzero: Option<CloneEntry<T>>,
    pub max: Option<CloneEntry<T>>,
    pub tol: T,
}

impl<T: Real> CloneReport<T> {
    /// The zero locus holds only the corners `|z| = 1` or `|w| = 1`.
    pub fn locus_is_trivial(&self) -> bool {
        self.zero_locus.iter().all(CloneEntry::is_corner)
    }

    /// Both corners are present in the zero locus and nothing else is.
    pub fn locus_is_exactly_corners(&self) -> bool {
        let z_corner = self.zero_locus.iter().any(|e| (e.z.norm() - T::one()).abs() < tolerance::<T>(1e-12));
        let w_corner = self.zero_locus.iter().any(|e| (e.w.norm() - T::one()).abs() < tolerance::<T>(1e-12));
        self.locus_is_trivial() && z_corner && w_corner
    }
}

/// Sweeps `z = cos φ`, `w = e^{iχ} sin φ` over `φ ∈ [0, π/2]`.
pub fn scan<T: Real>(resolution: usize, map: CloneMap, branch: TildeCopy) -> Result<CloneReport<T>> {
    scan_with(&ScanOptions::new(resolution, map, branch))
}

pub fn scan_with<T: Real>(opts: &ScanOptions<T>) -> Result<CloneReport<T>> {
    if opts.resolution < 3 {
        return Err(Error::InvalidParameter(format!(
            "scan resolution must be at least 3, got {}",
            opts.resolution
        )));
    }
    if opts.phases == 0 {
        return Err(Error::InvalidParameter("at least one phase is required".into()));
    }
    let ds = DoubledSpace::new(FockSpace::fermion());
    let ff = Fourfold::new(ds);
    let params = match opts.params {
        Some(p) => p,
        None => ThermalParams::new(T::one(), T::one(), Statistics::Fermion)?,
    };
    let step = T::FRAC_PI_2() / lit((opts.resolution - 1) as f64);
    let mut grid = Vec::new();
    for i in 0..opts.resolution {
        let phi = if i == opts.resolution - 1 {
            T::FRAC_PI_2()
        } else {
            step * lit(i as f64)
        };
        let edge = i == 0 || i == opts.resolution - 1;
        let phases = if edge { 1 } else { opts.phases };
        for k in 0..phases {
            let chi = T::TAU() * lit(k as f64) / lit(phases as f64);
            let spec = CloneSpec::angles(phi, chi, opts.branch)?;
            let residual = match opts.map {
                CloneMap::DTfd => cloning_residual_with(&ds, &spec, opts.extension)?,
                CloneMap::CTfd => {
                    let mut ts = ThermalCloneSpec::new(spec.z, spec.w, params)?;
                    ts.copy = opts.branch;
                    c_tfd_residual_with(&ff, &ts, opts.extension)?
                }
            };
            grid.push(CloneEntry {
                phi,
                chi,
                z: spec.z,
                w: spec.w,
                residual,
            });
        }
    }
    let zero_locus: Vec<_> = grid.iter().copied().filter(|e| e.residual < opts.tol).collect();
    let pick = |better: fn(T, T) -> bool, only_nonzero: bool| {
        grid.iter()
            .copied()
            .filter(|e| !only_nonzero || e.residual >= opts.tol)
            .fold(None, |best: Option<CloneEntry<T>>, e| match best {
                Some(b) if !better(e.residual, b.residual) => Some(b),
                _ => Some(e),
            })
    };
    Ok(CloneReport {
        min_nonzero: pick(|a, b| a < b, true),
        max: pick(|a, b| a > b, false),
        zero_locus,
        tol: opts.tol,
        grid,
    })
}

/// Schmidt coefficients of a fourfold ket across the cut between the two copies.
pub fn fourfold_schmidt<T: Real>(ff: &Fourfold, k: &Ket<T>) -> Result<Vec<T>> {
    if k.space() != &ff.space() {
        return Err(Error::SpaceMismatch {
            expected: ff.space(),
            found: k.space().clone(),
        });
    }
    let d = ff.doubled().dim();
    linalg::schmidt_coefficients(k.amps(), d, d)
}

/// Schmidt coefficients of a machine output across the ancilla cut.
pub fn machine_schmidt<T: Real>(mode: &FockSpace, k: &Ket<T>) -> Result<Vec<T>> {
    let d = mode.dim();
    linalg::schmidt_coefficients(k.amps(), ANCILLA_DIM, d * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn ds() -> DoubledSpace {
        DoubledSpace::new(FockSpace::fermion())
    }

    fn equal(copy: TildeCopy) -> CloneSpec<f64> {
        CloneSpec::new(cplx(FRAC_1_SQRT_2, 0.), cplx(FRAC_1_SQRT_2, 0.), 0, 1, copy).unwrap()
    }

    fn fermi(beta_omega: f64) -> ThermalParams<f64> {
        ThermalParams::new(beta_omega, 1.0, Statistics::Fermion).unwrap()
    }

    // ‖(z − z²)|nn⟩ + (w − w²)|mm⟩ − zw(|nm⟩ + |mn⟩)‖ for real z, w
    fn oracle(z: f64, w: f64) -> f64 {
        ((z - z * z).powi(2) + (w - w * w).powi(2) + 2.0 * (z * w).powi(2)).sqrt()
    }

    #[test]
    fn spec_validation() {
        assert!(CloneSpec::<f64>::new(cplx(1.0, 0.), cplx(0.0, 0.), 1, 1, TildeCopy::Linear).is_err());
        assert!(matches!(
            CloneSpec::<f64>::new(cplx(1.0, 0.), cplx(1.0, 0.), 0, 1, TildeCopy::Linear),
            Err(Error::NotNormalized(_))
        ));
        assert!(ThermalCloneSpec::new(cplx(0.5, 0.), cplx(0.5, 0.), fermi(1.0)).is_err());
    }

    #[test]
    fn basis_doubling() {
        let d = ds();
        assert_eq!(d_tfd_basis::<f64>(&d, 0).unwrap(), d.basis_ket(0, 0).unwrap());
        assert_eq!(d_tfd_basis::<f64>(&d, 1).unwrap(), d.basis_ket(1, 1).unwrap());
        assert!(d_tfd_basis::<f64>(&d, 2).is_err());
    }

    #[test]
    fn clone_and_linear_examples() {
        let d = ds();
        let corner = CloneSpec::<f64>::new(cplx(1.0, 0.), cplx(0.0, 0.), 0, 1, TildeCopy::Linear).unwrap();
        assert_eq!(d_tfd_clone(&d, &corner).unwrap(), d.basis_ket(0, 0).unwrap());
        assert_eq!(d_tfd_linear(&d, &corner).unwrap(), d.basis_ket(0, 0).unwrap());

        let c = d_tfd_clone(&d, &equal(TildeCopy::Linear)).unwrap();
        for a in c.amps() {
            assert!((a - cplx(0.5, 0.)).norm() < 1e-15);
        }
        assert!(d.schmidt_coefficients(&c).unwrap()[1] < 1e-12);

        let l = d_tfd_linear(&d, &equal(TildeCopy::Linear)).unwrap();
        let want = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, b) in l.amps().iter().zip(want) {
            assert!((a - cplx(b, 0.)).norm() < 1e-15);
        }
        assert!((l.norm() - 1.0).abs() < 1e-15);
        assert!(d.schmidt_coefficients(&l).unwrap()[1] > 1e-6);
    }

    #[test]
    fn residual_examples() {
        let d = ds();
        let expected = (2.0 - 2f64.sqrt()).sqrt();
        let r = cloning_residual(&d, &equal(TildeCopy::Linear)).unwrap();
        assert!((r - expected).abs() < 1e-12);
        assert!((r - 0.765367).abs() < 1e-6);
        let corner = CloneSpec::<f64>::new(cplx(1.0, 0.), cplx(0.0, 0.), 0, 1, TildeCopy::Linear).unwrap();
        assert!(cloning_residual(&d, &corner).unwrap() < 1e-15);
        let phased = CloneSpec::<f64>::new(cplx(0.0, 1.0), cplx(0.0, 0.), 0, 1, TildeCopy::Conjugate).unwrap();
        assert!(cloning_residual(&d, &phased).unwrap() < 1e-15);
        // away from the corners the phase is not quotiented
        let s = CloneSpec::<f64>::new(cplx(0.0, 0.6), cplx(0.0, 0.8), 0, 1, TildeCopy::Linear).unwrap();
        let raw = d_tfd_linear(&d, &s).unwrap().distance(&d_tfd_clone(&d, &s).unwrap()).unwrap();
        assert_eq!(cloning_residual(&d, &s).unwrap(), raw);
    }

    #[test]
    fn residual_matches_real_oracle_and_is_symmetric() {
        let d = ds();
        for k in 1..50 {
            let phi = FRAC_PI_2 * k as f64 / 50.0;
            let (z, w) = (phi.cos(), phi.sin());
            let s = CloneSpec::new(cplx(z, 0.), cplx(w, 0.), 0, 1, TildeCopy::Linear).unwrap();
            let t = CloneSpec::new(cplx(w, 0.), cplx(z, 0.), 0, 1, TildeCopy::Linear).unwrap();
            let r: f64 = cloning_residual(&d, &s).unwrap();
            assert!((r - oracle(z, w)).abs() < 1e-14);
            assert!((r - cloning_residual::<f64>(&d, &t).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn generic_machine() {
        let mode = FockSpace::fermion();
        let s = equal(TildeCopy::Linear);
        let r = generic_machine_residual(&mode, &s, MachineStates::Equal).unwrap();
        assert!((r - (2.0 - 2f64.sqrt()).sqrt()).abs() < 1e-12);
        // distinct states: ‖c‖ = sqrt(|z|⁶ + |w|⁶) = 1/2, residual sqrt(2 − 1) = 1
        let r = generic_machine_residual(&mode, &s, MachineStates::Distinct).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let corner = CloneSpec::<f64>::new(cplx(1.0, 0.), cplx(0.0, 0.), 0, 1, TildeCopy::Linear).unwrap();
        for st in [MachineStates::Equal, MachineStates::Distinct] {
            assert!(generic_machine_residual(&mode, &corner, st).unwrap() < 1e-15);
        }
        let out = generic_machine_output(&mode, &s, MachineStates::Distinct).unwrap();
        let sc = machine_schmidt(&mode, &out).unwrap();
        assert!((sc[0] - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((sc[1] - FRAC_1_SQRT_2).abs() < 1e-12);
        let out = generic_machine_output(&mode, &s, MachineStates::Equal).unwrap();
        assert!(machine_schmidt(&mode, &out).unwrap()[1] < 1e-12);
    }

    #[test]
    fn thermal_pair_is_orthonormal() {
        let ff = Fourfold::fermion();
        assert_eq!(ff.dim(), 16);
        for bw in [0.5, 1.0, 2.0] {
            let (k0, k1) = ff.thermal_pair(&fermi(bw)).unwrap();
            assert!(k0.inner(&k1).unwrap().norm() < 1e-15);
            assert!((k0.norm() - 1.0).abs() < 1e-14);
            assert!((k1.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn c_tfd_examples() {
        let ff = Fourfold::fermion();
        let corner = ThermalCloneSpec::<f64>::new(cplx(1.0, 0.), cplx(0.0, 0.), fermi(1.0)).unwrap();
        assert!(c_tfd_residual(&ff, &corner).unwrap() < 1e-14);
        let h = cplx(FRAC_1_SQRT_2, 0.);
        let mut prev: Option<f64> = None;
        for bw in [0.5, 1.0, 2.0] {
            let s = ThermalCloneSpec::new(h, h, fermi(bw)).unwrap();
            let r: f64 = c_tfd_residual(&ff, &s).unwrap();
            assert!((r - 0.765367).abs() < 1e-6);
            if let Some(p) = prev {
                assert!((r - p).abs() < 1e-10);
            }
            prev = Some(r);
            let c = c_tfd_clone(&ff, &s).unwrap();
            assert!(fourfold_schmidt(&ff, &c).unwrap()[1] < 1e-12);
            let l = c_tfd_linear(&ff, &s).unwrap();
            assert!(fourfold_schmidt(&ff, &l).unwrap()[1] > 1e-6);
        }
        let wrong = ThermalParams::new(1.0, 1.0, Statistics::Boson).unwrap();
        let s = ThermalCloneSpec::new(h, h, wrong).unwrap();
        assert!(matches!(c_tfd_residual(&ff, &s), Err(Error::StatisticsMismatch(_))));
    }

    #[test]
    fn c_tfd_agrees_with_d_tfd() {
        let ff = Fourfold::fermion();
        let d = ds();
        for k in 0..=20 {
            let phi = FRAC_PI_2 * k as f64 / 20.0;
            let spec = CloneSpec::angles(phi, 0.7, TildeCopy::Linear).unwrap();
            let ts = ThermalCloneSpec::new(spec.z(), spec.w(), fermi(1.0)).unwrap();
            let a = c_tfd_residual(&ff, &ts).unwrap();
            let b = cloning_residual(&d, &spec).unwrap();
            assert!((a - b).abs() < 1e-10, "phi {phi}: {a} vs {b}");
        }
    }

    #[test]
    fn bosonic_c_tfd() {
        let ff = Fourfold::new(DoubledSpace::new(FockSpace::boson(4).unwrap()));
        let p = ThermalParams::new(1.0, 1.0, Statistics::Boson).unwrap();
        let h = cplx(FRAC_1_SQRT_2, 0.);
        let r = c_tfd_residual(&ff, &ThermalCloneSpec::new(h, h, p).unwrap()).unwrap();
        assert!((r - (2.0 - 2f64.sqrt()).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn scan_zero_locus() {
        for map in [CloneMap::DTfd, CloneMap::CTfd] {
            for branch in [TildeCopy::Linear, TildeCopy::Conjugate] {
                let mut opts = ScanOptions::<f64>::new(101, map, branch);
                opts.phases = 4;
                let rep = scan_with(&opts).unwrap();
                assert!(rep.locus_is_exactly_corners(), "{map:?} {branch:?}");
                assert_eq!(rep.zero_locus.len(), 2);
                assert!(rep.min_nonzero.unwrap().residual > 1e-3);
            }
        }
        let rep = scan::<f64>(101, CloneMap::DTfd, TildeCopy::Linear).unwrap();
        assert_eq!(rep.grid.len(), 101);
        let max = rep.max.unwrap();
        assert!((max.phi - FRAC_PI_4).abs() < 1e-12);
        assert!((max.residual - 0.765367).abs() < 1e-6);
        assert!(scan::<f64>(2, CloneMap::DTfd, TildeCopy::Linear).is_err());
    }

    #[test]
    fn antilinear_extension_also_fails() {
        let mut opts = ScanOptions::<f64>::new(101, CloneMap::DTfd, TildeCopy::Conjugate);
        opts.extension = Extension::Antilinear;
        opts.phases = 4;
        let rep = scan_with(&opts).unwrap();
        assert!(rep.locus_is_exactly_corners());
        assert!(rep.min_nonzero.unwrap().residual > 1e-3);
        let d = ds();
        let s = equal(TildeCopy::Linear);
        assert_eq!(d_tfd_antilinear(&d, &s).unwrap(), d_tfd_linear(&d, &s).unwrap());
    }

    #[test]
    fn min_nonzero_shrinks_with_refinement() {
        let coarse = scan::<f64>(11, CloneMap::DTfd, TildeCopy::Linear).unwrap();
        let fine = scan::<f64>(101, CloneMap::DTfd, TildeCopy::Linear).unwrap();
        let (a, b) = (coarse.min_nonzero.unwrap(), fine.min_nonzero.unwrap());
        assert!(b.residual < a.residual);
        assert!(b.phi < 0.02 || b.phi > FRAC_PI_2 - 0.02);
    }
}
