use tfd_core::doubled::doubled;
use tfd_core::entropy::{gibbs_density, von_neumann_entropy};
use tfd_core::fock::Hamiltonian;
use tfd_core::noclone::{cloning_residual, CloneSpec};
use tfd_core::opexpr::{evaluate, parse_str, EvalContext};
use tfd_core::thermal::{mean_occupation, thermal_vacuum_series, thermal_vacuum_unitary};
use tfd_core::{Complex32, FockSpace, Statistics, ThermalParams32, TildeCopy};

#[test]
fn fermion_vacuum_in_f32() {
    let ds = doubled(FockSpace::fermion());
    let p = ThermalParams32::new(1.0, 1.0, Statistics::Fermion).unwrap();
    let u = thermal_vacuum_unitary(&ds, &p).unwrap();
    let s = thermal_vacuum_series(&ds, &p, &Hamiltonian::oscillator(&ds.mode(), 1.0)).unwrap();
    assert!(u.distance(&s).unwrap() < 1e-6);
    let n = u.ket().amp(ds.flat(1, 1)).norm_sqr();
    assert!((n - mean_occupation(1.0f32, 1.0, Statistics::Fermion)).abs() < 1e-6);
}

#[test]
fn entropy_in_f32() {
    let mode = FockSpace::fermion();
    let rho = gibbs_density(&mode, 1.0f32, &Hamiltonian::oscillator(&mode, 1.0)).unwrap();
    assert!((von_neumann_entropy(&rho).unwrap() - 0.582203).abs() < 1e-6);
}

#[test]
fn cloning_and_expressions_in_f32() {
    let ds = doubled(FockSpace::fermion());
    let h = std::f32::consts::FRAC_1_SQRT_2;
    let s = CloneSpec::<f32>::new(Complex32::new(h, 0.0), Complex32::new(h, 0.0), 0, 1, TildeCopy::Linear).unwrap();
    assert!((cloning_residual(&ds, &s).unwrap() - 0.765367).abs() < 1e-6);
    let e = parse_str::<f32>("a† ~(b)† - ~(b) a").unwrap();
    let g = evaluate(&e, &EvalContext::new(ds)).unwrap();
    assert!(g.dagger().add(&g).unwrap().matrix().max_abs() < 1e-7);
}
