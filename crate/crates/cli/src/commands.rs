//! Subcommand runners. Each returns the rendered report and any property violations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use tfd_core::doubled::doubled;
use tfd_core::entropy::{entropy_curve, gibbs_density};
use tfd_core::fock::{number_op, Hamiltonian, LinOp};
use tfd_core::linalg::random_hermitian;
use tfd_core::noclone::{scan_with, CloneEntry, CloneMap, ScanOptions, ZERO_TOL};
use tfd_core::opexpr::{evaluate, format, parse_str, sexpr, tilde_rewrite_annotated, EvalContext, Expr};
use tfd_core::thermal::{expectation, mean_occupation, thermal_vacuum_series, thermal_vacuum_unitary};
use tfd_core::{DoubledSpace, FockSpace, Space, Statistics, ThermalParams, ThermalState, TildeCopy};

use crate::config::{CliError, Format, RunConfig, ScanConfig, Task};
use crate::output::{json_complex, json_complexes, json_number, render_json, Table};

/// Default bound on `|closed form − vacuum expectation|` for `occupation`.
pub const OCCUPATION_TOL: f64 = 1e-9;
/// Default bound on the series/unitary distance, per statistics.
pub const VACUUM_TOL_FERMION: f64 = 1e-10;
pub const VACUUM_TOL_BOSON: f64 = 1e-8;
/// Bound on thermal-vacuum versus Gibbs averages, per statistics.
pub const EQUIVALENCE_TOL_FERMION: f64 = 1e-9;
pub const EQUIVALENCE_TOL_BOSON: f64 = 1e-7;
/// Random observables drawn for the equivalence block.
pub const OBSERVABLES: usize = 50;
/// Slack allowed for monotonicity of the entropy curve.
pub const MONOTONE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub violations: Vec<String>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.task {
        Task::EntropyCurve => cmd_entropy_curve(cfg),
        Task::Occupation => cmd_occupation(cfg),
        Task::Vacuum => cmd_vacuum(cfg),
        Task::NocloneScan(scan) => cmd_noclone_scan(cfg, scan),
        Task::Eval { expr, omit_matrix } => cmd_eval(cfg, expr, *omit_matrix),
    }
}

fn stat_name(kind: Statistics) -> &'static str {
    match kind {
        Statistics::Fermion => "fermion",
        Statistics::Boson => "boson",
    }
}

/// Thermal parameters at `beta_omega`; fermionic `βω = 0` is the infinite-temperature limit.
fn params_at(cfg: &RunConfig, beta_omega: f64) -> Result<ThermalParams, CliError> {
    let p = if beta_omega == 0.0 && cfg.statistics == Statistics::Fermion {
        ThermalParams::infinite_temperature(cfg.omega)?
    } else {
        ThermalParams::new(beta_omega / cfg.omega, cfg.omega, cfg.statistics)?
    };
    Ok(p)
}

fn space_at(cfg: &RunConfig, beta_omega: f64) -> Result<DoubledSpace, CliError> {
    let mode = match cfg.statistics {
        Statistics::Fermion => FockSpace::fermion(),
        Statistics::Boson => FockSpace::boson(cfg.boson_cutoff(beta_omega))?,
    };
    Ok(doubled(mode))
}

fn cutoff_field(ds: &DoubledSpace) -> Value {
    if ds.mode().is_fermion() {
        Value::Null
    } else {
        json!(ds.mode().cutoff())
    }
}

/// Unitary vacuum for fermions, exact truncated series for bosons.
fn reference_vacuum(ds: &DoubledSpace, p: &ThermalParams, omega: f64) -> Result<ThermalState, CliError> {
    let v = if ds.mode().is_fermion() {
        thermal_vacuum_unitary(ds, p)?
    } else {
        thermal_vacuum_series(ds, p, &Hamiltonian::oscillator(&ds.mode(), omega))?
    };
    Ok(v)
}

pub fn cmd_entropy_curve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let curve = entropy_curve(&cfg.points)?;
    let mut violations = Vec::new();
    for pair in curve.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if b.t_over_omega > a.t_over_omega && b.s < a.s - MONOTONE_TOL {
            violations.push(format!("entropy decreases between T/ω = {} and {}", a.t_over_omega, b.t_over_omega));
        }
    }
    let text = match cfg.format {
        Format::Csv => {
            let mut t = Table::new(&["t_over_omega", "entropy_nats"]);
            for p in &curve {
                t.push(&[p.t_over_omega, p.s])?;
            }
            t.into_string()
        }
        Format::Json => {
            let rows = curve
                .iter()
                .map(|p| Ok(json!({"t_over_omega": json_number(p.t_over_omega)?, "entropy_nats": json_number(p.s)?})))
                .collect::<Result<Vec<_>, CliError>>()?;
            render_json(&json!({"statistics": "fermion", "rows": rows}))
        }
    };
    Ok(Outcome { text, violations })
}

struct OccupationRow {
    beta_omega: f64,
    closed: f64,
    via: f64,
    cutoff: Value,
}

pub fn cmd_occupation(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let tol = cfg.tol.unwrap_or(OCCUPATION_TOL);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for &bw in &cfg.points {
        let p = params_at(cfg, bw)?;
        let ds = space_at(cfg, bw)?;
        let vac = reference_vacuum(&ds, &p, cfg.omega)?;
        let n = expectation(&vac, &number_op(&ds.mode()))?;
        let closed = mean_occupation(p.beta(), cfg.omega, cfg.statistics);
        let diff = (closed - n.re).abs();
        if !(diff < tol) || !(n.im.abs() < tol) {
            violations.push(format!("βω = {bw}: |closed form − expectation| = {diff:e}"));
        }
        rows.push(OccupationRow {
            beta_omega: bw,
            closed,
            via: n.re,
            cutoff: cutoff_field(&ds),
        });
    }
    let text = match cfg.format {
        Format::Csv => {
            let mut t = Table::new(&["beta_omega", "mean_occupation", "via_expectation", "abs_diff"]);
            for r in &rows {
                t.push(&[r.beta_omega, r.closed, r.via, (r.closed - r.via).abs()])?;
            }
            t.into_string()
        }
        Format::Json => {
            let rows = rows
                .iter()
                .map(|r| {
                    Ok(json!({
                        "beta_omega": json_number(r.beta_omega)?,
                        "mean_occupation": json_number(r.closed)?,
                        "via_expectation": json_number(r.via)?,
                        "abs_diff": json_number((r.closed - r.via).abs())?,
                        "cutoff": r.cutoff,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            render_json(&json!({"statistics": stat_name(cfg.statistics), "rows": rows}))
        }
    };
    Ok(Outcome { text, violations })
}

/// Largest `|⟨0(β)|A|0(β)⟩ − Tr(ρA)|` over seeded random Hermitian `A`.
pub fn equivalence_gap(vac: &ThermalState, omega: f64, seed: u64) -> Result<f64, CliError> {
    let ds = vac.space();
    let mode = ds.mode();
    let rho = gibbs_density(&mode, vac.params().beta(), &Hamiltonian::oscillator(&mode, omega))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..OBSERVABLES {
        let a = LinOp::new(Space::Mode(mode), random_hermitian(&mut rng, mode.dim()))?;
        let gap = (expectation(vac, &a)? - rho.mean(&a)?).norm();
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn closed_partition_function(p: &ThermalParams) -> f64 {
    let x = (-p.beta_omega()).exp();
    match p.kind() {
        Statistics::Fermion => 1.0 + x,
        Statistics::Boson => 1.0 / (1.0 - x),
    }
}

pub fn cmd_vacuum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fermion = cfg.statistics == Statistics::Fermion;
    let tol = cfg
        .tol
        .unwrap_or(if fermion { VACUUM_TOL_FERMION } else { VACUUM_TOL_BOSON });
    let eq_tol = if fermion { EQUIVALENCE_TOL_FERMION } else { EQUIVALENCE_TOL_BOSON };
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    for &bw in &cfg.points {
        let p = params_at(cfg, bw)?;
        let ds = space_at(cfg, bw)?;
        let series = thermal_vacuum_series(&ds, &p, &Hamiltonian::oscillator(&ds.mode(), cfg.omega))?;
        let unitary = thermal_vacuum_unitary(&ds, &p)?;
        let distance = series.distance(&unitary)?;
        if !(distance < tol) {
            violations.push(format!("βω = {bw}: ‖series − unitary‖ = {distance:e}"));
        }
        let gap = equivalence_gap(&reference_vacuum(&ds, &p, cfg.omega)?, cfg.omega, cfg.seed)?;
        if !(gap < eq_tol) {
            violations.push(format!("βω = {bw}: thermal average gap {gap:e}"));
        }
        entries.push(json!({
            "beta_omega": json_number(bw)?,
            "cutoff": cutoff_field(&ds),
            "theta": json_number(p.theta())?,
            "u": json_number(p.u())?,
            "v": json_number(p.v())?,
            "z_series": json_number(series.partition_function())?,
            "z_unitary": json_number(unitary.partition_function())?,
            "z_closed_form": json_number(closed_partition_function(&p))?,
            "distance": json_number(distance)?,
            "series_amplitudes": json_complexes(series.ket().amps())?,
            "unitary_amplitudes": json_complexes(unitary.ket().amps())?,
            "statistical_equivalence": {
                "observables": OBSERVABLES,
                "max_abs_diff": json_number(gap)?,
                "tol": json_number(eq_tol)?,
            },
        }));
    }
    let report = json!({
        "statistics": stat_name(cfg.statistics),
        "omega": json_number(cfg.omega)?,
        "seed": cfg.seed.to_string(),
        "tol": json_number(tol)?,
        "entries": entries,
    });
    Ok(Outcome {
        text: render_json(&report),
        violations,
    })
}

fn entry_json(e: &CloneEntry<f64>) -> Result<Value, CliError> {
    Ok(json!({
        "phi": json_number(e.phi)?,
        "chi": json_number(e.chi)?,
        "z": json_complex(e.z)?,
        "w": json_complex(e.w)?,
        "residual": json_number(e.residual)?,
    }))
}

fn optional_entry(e: &Option<CloneEntry<f64>>) -> Result<Value, CliError> {
    e.as_ref().map_or(Ok(Value::Null), entry_json)
}

pub fn cmd_noclone_scan(cfg: &RunConfig, scan: &ScanConfig) -> Result<Outcome, CliError> {
    let mut opts = ScanOptions::new(scan.resolution, scan.map, scan.branch);
    opts.extension = scan.extension;
    opts.phases = scan.phases;
    opts.tol = cfg.tol.unwrap_or(ZERO_TOL);
    if scan.map == CloneMap::CTfd {
        opts.params = Some(params_at(cfg, cfg.points[0])?);
    }
    let report = scan_with(&opts)?;
    let mut violations = Vec::new();
    if !report.locus_is_exactly_corners() {
        let extra: Vec<String> = report
            .zero_locus
            .iter()
            .filter(|e| !e.is_corner())
            .map(|e| format!("(φ = {}, χ = {})", e.phi, e.chi))
            .collect();
        violations.push(format!("zero locus is not exactly the corners; off-corner zeros: {extra:?}"));
    }
    let text = match cfg.format {
        Format::Csv => {
            let mut t = Table::new(&["phi", "chi", "z_re", "z_im", "w_re", "w_im", "residual"]);
            for e in &report.grid {
                t.push(&[e.phi, e.chi, e.z.re, e.z.im, e.w.re, e.w.im, e.residual])?;
            }
            t.into_string()
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("map".into(), json!(match scan.map {
                CloneMap::DTfd => "d_tfd",
                CloneMap::CTfd => "c_tfd",
            }));
            m.insert("branch".into(), json!(match scan.branch {
                TildeCopy::Linear => "real",
                TildeCopy::Conjugate => "conjugate",
            }));
            m.insert("extension".into(), json!(format!("{:?}", scan.extension).to_lowercase()));
            m.insert("resolution".into(), json!(scan.resolution));
            m.insert("phases".into(), json!(scan.phases));
            m.insert("tol".into(), json_number(report.tol)?);
            m.insert("beta_omega".into(), match scan.map {
                CloneMap::CTfd => json_number(cfg.points[0])?,
                CloneMap::DTfd => Value::Null,
            });
            m.insert("grid".into(), Value::Array(report.grid.iter().map(entry_json).collect::<Result<_, _>>()?));
            m.insert("zero_locus".into(), Value::Array(report.zero_locus.iter().map(entry_json).collect::<Result<_, _>>()?));
            m.insert("min_nonzero".into(), optional_entry(&report.min_nonzero)?);
            m.insert("max".into(), optional_entry(&report.max)?);
            m.insert("locus_is_exactly_corners".into(), json!(report.locus_is_exactly_corners()));
            render_json(&Value::Object(m))
        }
    };
    Ok(Outcome { text, violations })
}

fn ast_json(e: &Expr<f64>) -> Value {
    json!({"sexpr": sexpr(e), "text": format(e)})
}

pub fn cmd_eval(cfg: &RunConfig, text: &str, omit_matrix: bool) -> Result<Outcome, CliError> {
    let expr = parse_str::<f64>(text)?;
    let rewritten = tilde_rewrite_annotated(&expr);
    let bw = cfg.points[0];
    let ds = space_at(cfg, bw)?;
    let op = evaluate(&expr, &EvalContext::new(ds))?;
    let p = params_at(cfg, bw)?;
    let vac = reference_vacuum(&ds, &p, cfg.omega)?;
    let value = op.expectation(vac.ket())?;
    let image = op.apply(&ds.basis_ket(0, 0)?)?;
    let mut rw = ast_json(&rewritten.expr);
    rw["collapsed_double_tildes"] = json!(rewritten.collapsed);
    let mut report = json!({
        "input": text,
        "parsed": ast_json(&expr),
        "rewritten": rw,
        "statistics": stat_name(cfg.statistics),
        "beta_omega": json_number(bw)?,
        "cutoff": cutoff_field(&ds),
        "dim": ds.dim(),
        "expectation": json_complex(value)?,
        "ground_image": json_complexes(image.amps())?,
    });
    if !omit_matrix {
        let m = op.matrix();
        let rows = (0..m.rows()).map(|i| json_complexes(m.row(i))).collect::<Result<Vec<_>, _>>()?;
        report["matrix"] = Value::Array(rows);
    }
    Ok(Outcome {
        text: render_json(&report),
        violations: Vec::new(),
    })
}
