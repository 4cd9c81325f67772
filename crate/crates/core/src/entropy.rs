//! Density matrices and von Neumann entropy (in nats).

use num_complex::Complex;

use crate::doubled::DoubledSpace;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, Hamiltonian, Ket, LinOp, Space};
use crate::linalg::{eigh, Matrix};
use crate::scalar::{lit, to_f64, tolerance, Real};
use crate::thermal::ThermalState;

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    op: LinOp<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(op: LinOp<T>) -> Result<Self> {
        let tol = tolerance::<T>(1e-12);
        let m = op.matrix();
        if !m.is_hermitian(tol) {
            return Err(Error::NotDensityMatrix("not Hermitian".into()));
        }
        let tr = op.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::NotDensityMatrix(format!("trace {}", to_f64(tr.re))));
        }
        let rho = Self { op };
        if let Some(&low) = rho.eigenvalues()?.first() {
            if low < -tol {
                return Err(Error::NegativeEigenvalue(to_f64(low)));
            }
        }
        Ok(rho)
    }

    pub fn op(&self) -> &LinOp<T> {
        &self.op
    }

    pub fn space(&self) -> &Space {
        self.op.space()
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(eigh(self.op.matrix())?.values)
    }

    /// `Tr(ρ A)`.
    pub fn mean(&self, a: &LinOp<T>) -> Result<Complex<T>> {
        Ok(self.op.compose(a)?.trace())
    }

    /// Largest entrywise deviation from another density matrix.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.op.distance(&other.op)
    }
}

/// `e^{−βH}/Z`, diagonal in the Fock basis. `beta = +∞` gives the ground projector.
pub fn gibbs_density<T: Real>(
    space: &FockSpace,
    beta: T,
    h: &Hamiltonian<T>,
) -> Result<DensityMatrix<T>> {
    if h.mode() != *space {
        return Err(Error::SpaceMismatch {
            expected: Space::Mode(*space),
            found: h.op().space().clone(),
        });
    }
    if beta < T::zero() || beta.is_nan() {
        return Err(Error::InvalidParameter(format!("beta must be nonnegative, got {beta}")));
    }
    let e0 = h.ground_energy();
    let w: Vec<T> = h
        .spectrum()
        .iter()
        .map(|&e| {
            if beta.is_infinite() {
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
    let total = w.iter().fold(T::zero(), |a, &b| a + b);
    let diag: Vec<T> = w.iter().map(|&x| x / total).collect();
    DensityMatrix::new(LinOp::new(Space::Mode(*space), Matrix::from_real_diag(&diag))?)
}

/// Truncated partition function `Σ e^{−βE_n}`.
pub fn partition_function<T: Real>(beta: T, h: &Hamiltonian<T>) -> T {
    if beta.is_infinite() {
        let e0 = h.ground_energy();
        let degeneracy = h.spectrum().iter().filter(|&&e| e == e0).count();
        return lit(degeneracy as f64);
    }
    h.spectrum()
        .iter()
        .fold(T::zero(), |acc, &e| acc + (-beta * e).exp())
}

/// `|ψ⟩⟨ψ|` for a unit-norm ket.
pub fn pure_density<T: Real>(k: &Ket<T>) -> Result<DensityMatrix<T>> {
    let n = k.norm();
    if (n - T::one()).abs() > tolerance::<T>(1e-10) {
        return Err(Error::NotNormalized(to_f64(n)));
    }
    DensityMatrix::new(k.projector())
}

/// `−Σ λ ln λ`, with eigenvalues in `[−1e−12, 0]` clamped to zero.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let clip = tolerance::<T>(1e-12);
    let mut s = T::zero();
    for lam in rho.eigenvalues()? {
        if lam < -clip {
            return Err(Error::NegativeEigenvalue(to_f64(lam)));
        }
        if lam > T::zero() {
            s -= lam * lam.ln();
        }
    }
    Ok(if s < T::zero() { T::zero() } else { s })
}

/// `βω e^{−βω}/(1 + e^{−βω}) + ln(1 + e^{−βω})`.
pub fn entropy_closed_form_fermion<T: Real>(beta: T, omega: T) -> T {
    let x = beta * omega;
    if x.is_infinite() {
        return T::zero();
    }
    let q = (-x).exp();
    x * q / (T::one() + q) + q.ln_1p()
}

/// `|S(ρ) − (β Tr(ρH) + ln Z)|`.
pub fn entropy_identity_check<T: Real>(
    rho: &DensityMatrix<T>,
    beta: T,
    h: &Hamiltonian<T>,
    z: T,
) -> Result<T> {
    let s = von_neumann_entropy(rho)?;
    if beta.is_infinite() {
        // ground state: S = 0, ln Z = 0 and β⟨H⟩ → 0 for E₀ = 0
        return Ok((s - z.ln()).abs());
    }
    let energy = rho.mean(h.op())?.re;
    Ok((s - (beta * energy + z.ln())).abs())
}

/// Spectral norm of `ρ(I − ρ)`; zero exactly for pure states.
pub fn purity_defect<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let m = rho.op.matrix();
    let id = Matrix::identity(m.rows());
    let prod = m.matmul(&(&id - m));
    let eig = eigh(&prod)?;
    Ok(eig
        .values
        .iter()
        .fold(T::zero(), |a, &b| if b.abs() > a { b.abs() } else { a }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPoint<T: Real> {
    pub t_over_omega: T,
    pub s: T,
}

/// Fermionic Gibbs-state entropy at each `T/ω` in `grid`, computed from the
/// spectrum of the density matrix.
pub fn entropy_curve<T: Real>(grid: &[T]) -> Result<Vec<EntropyPoint<T>>> {
    let mode = FockSpace::fermion();
    let h = Hamiltonian::oscillator(&mode, T::one());
    grid.iter()
        .map(|&t| {
            if !(t > T::zero()) {
                return Err(Error::InvalidParameter(format!("T/ω must be positive, got {t}")));
            }
            let rho = gibbs_density(&mode, T::one() / t, &h)?;
            Ok(EntropyPoint {
                t_over_omega: t,
                s: von_neumann_entropy(&rho)?,
            })
        })
        .collect()
}

/// `count` log-spaced points from `start` to `stop` inclusive.
pub fn log_grid<T: Real>(start: T, stop: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let (a, b) = (start.ln(), stop.ln());
            let step = (b - a) / lit((count - 1) as f64);
            (0..count)
                .map(|i| {
                    if i == 0 {
                        start
                    } else if i == count - 1 {
                        stop
                    } else {
                        (a + step * lit(i as f64)).exp()
                    }
                })
                .collect()
        }
    }
}

/// 200 log-spaced temperatures over `T/ω ∈ [1e−2, 1e3]`.
pub fn default_entropy_grid<T: Real>() -> Vec<T> {
    log_grid(lit(1e-2), lit(1e3), 200)
}

/// Physical reduced state of a thermofield vacuum.
pub fn reduced_state_of_vacuum<T: Real>(ts: &ThermalState<T>) -> Result<DensityMatrix<T>> {
    let ds: DoubledSpace = ts.space();
    DensityMatrix::new(ds.partial_trace_tilde(&ts.ket().projector())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doubled::doubled;
    use crate::fock::{mode_basis, scale_add, Statistics};
    use crate::scalar::cplx;
    use crate::thermal::{thermal_vacuum_series, thermal_vacuum_unitary, ThermalParams};

    fn fermion_h() -> (FockSpace, Hamiltonian<f64>) {
        let m = FockSpace::fermion();
        (m, Hamiltonian::oscillator(&m, 1.0))
    }

    fn sis_state(theta: f64) -> Ket<f64> {
        let m = FockSpace::fermion();
        let k0 = mode_basis(&m, 0).unwrap();
        let k1 = mode_basis(&m, 1).unwrap();
        scale_add(&[&k0, &k1], &[cplx(theta.cos(), 0.), cplx(theta.sin(), 0.)]).unwrap()
    }

    #[test]
    fn gibbs_examples() {
        let (m, h) = fermion_h();
        let rho = gibbs_density(&m, 1.0, &h).unwrap();
        let z = 1.0 + (-1.0f64).exp();
        assert!((rho.op().matrix()[(0, 0)].re - 1.0 / z).abs() < 1e-15);
        assert!((rho.op().matrix()[(1, 1)].re - (-1.0f64).exp() / z).abs() < 1e-15);
        let cold = gibbs_density(&m, f64::INFINITY, &h).unwrap();
        assert_eq!(cold.op(), &mode_basis::<f64>(&m, 0).unwrap().projector());
        let hot = gibbs_density(&m, 0.0, &h).unwrap();
        assert_eq!(hot.op().matrix().diagonal(), vec![cplx(0.5, 0.), cplx(0.5, 0.)]);
    }

    #[test]
    fn pure_density_examples() {
        let theta = 0.4;
        let rho = pure_density(&sis_state(theta)).unwrap();
        let m = rho.op().matrix();
        assert!((m[(0, 0)].re - theta.cos().powi(2)).abs() < 1e-15);
        assert!((m[(0, 1)].re - 0.5 * (2.0 * theta).sin()).abs() < 1e-15);
        assert!((m[(1, 0)].re - 0.5 * (2.0 * theta).sin()).abs() < 1e-15);
        assert!((m[(1, 1)].re - theta.sin().powi(2)).abs() < 1e-15);
        assert!(m.matmul(m).max_abs_diff(m) < 1e-15);
        let g = pure_density(&mode_basis::<f64>(&FockSpace::fermion(), 0).unwrap()).unwrap();
        assert_eq!(g.op().matrix().diagonal(), vec![cplx(1.0, 0.), cplx(0.0, 0.)]);
        let unnormalized = sis_state(theta).scale(cplx(2.0, 0.0));
        assert!(matches!(pure_density(&unnormalized), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn density_validation() {
        let m = FockSpace::fermion();
        let bad = LinOp::new(Space::Mode(m), Matrix::from_real_diag(&[1.5, -0.5])).unwrap();
        assert!(matches!(DensityMatrix::new(bad), Err(Error::NegativeEigenvalue(_))));
        let bad = LinOp::new(Space::Mode(m), Matrix::from_real_diag(&[0.5, 0.6])).unwrap();
        assert!(matches!(DensityMatrix::new(bad), Err(Error::NotDensityMatrix(_))));
    }

    #[test]
    fn entropy_examples() {
        let (m, h) = fermion_h();
        let pure = pure_density(&sis_state(0.7)).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap() < 1e-12);
        let hot = gibbs_density(&m, 1e-9, &h).unwrap();
        assert!((von_neumann_entropy(&hot).unwrap() - std::f64::consts::LN_2).abs() < 1e-9);
        let rho = gibbs_density(&m, 1.0, &h).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - 0.582203).abs() < 1e-6);
    }

    #[test]
    fn closed_form_values() {
        // spectral-entropy oracle: -Σ p ln p with p = (1, e^{-x})/(1+e^{-x})
        let oracle = |x: f64| {
            let z = 1.0 + (-x).exp();
            let p = [1.0 / z, (-x).exp() / z];
            -p.iter().filter(|&&v| v > 0.0).map(|v| v * v.ln()).sum::<f64>()
        };
        for x in [1.0, 0.5, 3.0, 0.01] {
            assert!((entropy_closed_form_fermion(x, 1.0) - oracle(x)).abs() < 1e-14);
        }
        assert!((entropy_closed_form_fermion(1.0f64, 1.0) - 0.582203).abs() < 1e-6);
        assert!((entropy_closed_form_fermion(0.5f64, 1.0) - 0.662847).abs() < 1e-6);
        assert!(entropy_closed_form_fermion(800.0, 1.0) < 1e-300);
        assert_eq!(entropy_closed_form_fermion(f64::INFINITY, 1.0), 0.0);
    }

    #[test]
    fn identity_residuals() {
        let (m, h) = fermion_h();
        let rho = gibbs_density(&m, 1.0, &h).unwrap();
        let z = partition_function(1.0, &h);
        assert!(entropy_identity_check(&rho, 1.0, &h, z).unwrap() < 1e-12);

        let b = FockSpace::boson(40).unwrap();
        let hb = Hamiltonian::oscillator(&b, 1.0);
        let rho = gibbs_density(&b, 1.0, &hb).unwrap();
        let z = partition_function(1.0, &hb);
        assert!(entropy_identity_check(&rho, 1.0, &hb, z).unwrap() < 1e-8);

        let cold = gibbs_density(&m, f64::INFINITY, &h).unwrap();
        let z = partition_function(f64::INFINITY, &h);
        assert_eq!(entropy_identity_check(&cold, f64::INFINITY, &h, z).unwrap(), 0.0);
    }

    #[test]
    fn purity_defect_examples() {
        let pure = pure_density(&sis_state(1.1)).unwrap();
        assert!(purity_defect(&pure).unwrap() < 1e-12);
        let half = DensityMatrix::new(
            LinOp::new(Space::Mode(FockSpace::fermion()), Matrix::from_real_diag(&[0.5, 0.5])).unwrap(),
        )
        .unwrap();
        assert!((purity_defect::<f64>(&half).unwrap() - 0.25).abs() < 1e-15);
        let (m, h) = fermion_h();
        assert!(purity_defect(&gibbs_density(&m, 3.0, &h).unwrap()).unwrap() > 0.0);
    }

    #[test]
    fn curve_limits() {
        let pts = entropy_curve(&[1e-2f64, 1.0, 1e3]).unwrap();
        assert!(pts[0].s < 1e-40);
        assert!((pts[1].s - 0.582203).abs() < 1e-6);
        assert!((pts[2].s - std::f64::consts::LN_2).abs() < 1e-4);
        assert!(entropy_curve(&[0.0f64]).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let g: Vec<f64> = default_entropy_grid();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[199], 1e3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn reduced_state_examples() {
        let ds = doubled(FockSpace::fermion());
        let p = ThermalParams::new(1.0, 1.0, Statistics::Fermion).unwrap();
        let vac = thermal_vacuum_unitary(&ds, &p).unwrap();
        let rho = reduced_state_of_vacuum(&vac).unwrap();
        let m = rho.op().matrix();
        // cos²θ = 1/(1+e^{-βω})
        assert!((m[(0, 0)].re - 1.0 / (1.0 + (-1.0f64).exp())).abs() < 1e-15);
        assert!((m[(1, 1)].re - p.theta().sin().powi(2)).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-14);

        let b = doubled(FockSpace::boson(40).unwrap());
        let pb = ThermalParams::new(1.0, 1.0, Statistics::Boson).unwrap();
        let vac = thermal_vacuum_series(&b, &pb, &Hamiltonian::oscillator(&b.mode(), 1.0)).unwrap();
        let rho = reduced_state_of_vacuum(&vac).unwrap();
        let x = (-1.0f64).exp();
        for n in 0..=40 {
            let want = (1.0 - x) * (-(n as f64)).exp();
            assert!((rho.op().matrix()[(n, n)].re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn infinite_temperature_vacuum_is_maximally_entangled() {
        let ds = doubled(FockSpace::fermion());
        let p = ThermalParams::<f64>::infinite_temperature(1.0).unwrap();
        let rho = reduced_state_of_vacuum(&thermal_vacuum_unitary(&ds, &p).unwrap()).unwrap();
        let m = rho.op().matrix();
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15 && (m[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
        assert!((von_neumann_entropy(&rho).unwrap() - 2f64.ln()).abs() < 1e-15);
    }
}
