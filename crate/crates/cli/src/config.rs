//! Argument parsing and validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tfd_core::entropy::{default_entropy_grid, log_grid};
use tfd_core::fock::tail_rule_cutoff;
use tfd_core::noclone::{CloneMap, Extension};
use tfd_core::{Statistics, TildeCopy};

/// Boltzmann tail that fixes the smallest admissible bosonic cutoff.
pub const TAIL: f64 = 1e-12;
/// Largest bosonic cutoff for commands that build dense doubled-space operators.
pub const MAX_DENSE_CUTOFF: usize = 40;
/// Largest bosonic cutoff for the diagonal series vacuum.
pub const MAX_SERIES_CUTOFF: usize = 2000;
/// βω values used by `occupation` when no grid is given.
pub const DEFAULT_OCCUPATION_POINTS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Parse { offset: usize, message: String },
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Parse { .. } => 2,
            CliError::Property(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Parse { offset, message } => write!(f, "parse error at byte {offset}: {message}"),
            CliError::Property(m) => write!(f, "property violation: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tfd_core::Error> for CliError {
    fn from(e: tfd_core::Error) -> Self {
        match e {
            tfd_core::Error::Syntax { offset, message } => CliError::Parse { offset, message },
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tfdlab", version, about = "Thermofield vacua, entropy curves and cloning scans for one mode")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Fermion,
    Boson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    #[value(name = "d_tfd")]
    DTfd,
    #[value(name = "c_tfd")]
    CTfd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Real,
    Conjugate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtensionArg {
    Linear,
    Antilinear,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Statistics of the oscillator mode.
    #[arg(long, global = true, value_enum, default_value_t = Stat::Fermion)]
    pub stat: Stat,
    /// βω value or comma-separated list.
    #[arg(long = "beta-omega", global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub beta_omega: Vec<f64>,
    /// Grid `start:stop:count:log|lin`; T/ω for entropy-curve, βω elsewhere.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Mode frequency ω.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub omega: f64,
    /// Bosonic Fock cutoff.
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override for the command's property check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Entanglement entropy of the fermionic thermal vacuum over T/ω.
    EntropyCurve,
    /// Closed-form occupation against ⟨0(β)|a†a|0(β)⟩.
    Occupation,
    /// Series and unitary thermal vacua with their distance.
    Vacuum,
    /// Cloning residual over the (φ, χ) grid.
    NocloneScan {
        #[arg(long, value_enum, default_value_t = MapArg::DTfd)]
        map: MapArg,
        #[arg(long, value_enum, default_value_t = BranchArg::Real)]
        branch: BranchArg,
        #[arg(long, value_enum, default_value_t = ExtensionArg::Linear)]
        extension: ExtensionArg,
        /// Number of φ samples on [0, π/2].
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        /// Relative phases χ per interior φ.
        #[arg(long, default_value_t = 1)]
        phases: usize,
    },
    /// Parse, rewrite and evaluate an operator expression.
    Eval {
        expr: String,
        /// Leave the evaluated matrix out of the report.
        #[arg(long)]
        omit_matrix: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub map: CloneMap,
    pub branch: TildeCopy,
    pub extension: Extension,
    pub resolution: usize,
    pub phases: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    EntropyCurve,
    Occupation,
    Vacuum,
    NocloneScan(ScanConfig),
    Eval { expr: String, omit_matrix: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub statistics: Statistics,
    /// T/ω for `entropy-curve`, βω for every other command.
    pub points: Vec<f64>,
    pub omega: f64,
    /// Explicit bosonic cutoff; each command picks its default otherwise.
    pub cutoff: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub seed: u64,
}

fn config_err<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Config(msg.into()))
}

/// Parses `start:stop:count:log|lin`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count, kind] = parts[..] else {
        return config_err(format!("grid `{text}` is not start:stop:count:log|lin"));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Config(format!("grid bound `{s}` is not a finite number")))
    };
    let (start, stop) = (num(start)?, num(stop)?);
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("grid count `{count}` is not a positive integer")))?;
    if count == 0 {
        return config_err("grid must have at least one point");
    }
    match kind.trim() {
        "log" => {
            if !(start > 0.0 && stop > 0.0) {
                return config_err("log grid bounds must be positive");
            }
            Ok(log_grid(start, stop, count))
        }
        "lin" => Ok((0..count)
            .map(|i| {
                if i + 1 == count && count > 1 {
                    stop
                } else if count == 1 {
                    start
                } else {
                    start + (stop - start) * i as f64 / (count - 1) as f64
                }
            })
            .collect()),
        other => config_err(format!("grid spacing `{other}` is not log or lin")),
    }
}

/// Smallest cutoff allowed at `beta_omega` under the tail rule.
pub fn required_cutoff(beta_omega: f64) -> usize {
    tail_rule_cutoff(beta_omega, TAIL)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let c = cli.common;
        let statistics = match c.stat {
            Stat::Fermion => Statistics::Fermion,
            Stat::Boson => Statistics::Boson,
        };
        let task = match cli.command {
            Command::EntropyCurve => Task::EntropyCurve,
            Command::Occupation => Task::Occupation,
            Command::Vacuum => Task::Vacuum,
            Command::NocloneScan {
                map,
                branch,
                extension,
                resolution,
                phases,
            } => Task::NocloneScan(ScanConfig {
                map: match map {
                    MapArg::DTfd => CloneMap::DTfd,
                    MapArg::CTfd => CloneMap::CTfd,
                },
                branch: match branch {
                    BranchArg::Real => TildeCopy::Linear,
                    BranchArg::Conjugate => TildeCopy::Conjugate,
                },
                extension: match extension {
                    ExtensionArg::Linear => Extension::Linear,
                    ExtensionArg::Antilinear => Extension::Antilinear,
                },
                resolution,
                phases,
            }),
            Command::Eval { expr, omit_matrix } => Task::Eval { expr, omit_matrix },
        };
        if !c.beta_omega.is_empty() && c.grid.is_some() {
            return config_err("give either --beta-omega or --grid, not both");
        }
        let explicit = match &c.grid {
            Some(g) => Some(parse_grid(g)?),
            None if !c.beta_omega.is_empty() => Some(c.beta_omega.clone()),
            None => None,
        };
        let points = match (&task, explicit) {
            (Task::EntropyCurve, _) if !c.beta_omega.is_empty() => {
                return config_err("entropy-curve takes a T/ω grid via --grid");
            }
            (_, Some(p)) => p,
            (Task::EntropyCurve, None) => default_entropy_grid(),
            (Task::Occupation, None) => DEFAULT_OCCUPATION_POINTS.to_vec(),
            (_, None) => vec![1.0],
        };
        let format = c.format.unwrap_or(match task {
            Task::EntropyCurve | Task::Occupation => Format::Csv,
            _ => Format::Json,
        });
        let cfg = RunConfig {
            task,
            statistics,
            points,
            omega: c.omega,
            cutoff: c.cutoff,
            format,
            out: c.out,
            tol: c.tol,
            seed: c.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.points.is_empty() {
            return config_err("grid is empty");
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return config_err(format!("omega must be positive and finite, got {}", self.omega));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return config_err(format!("tolerance must be positive and finite, got {t}"));
            }
        }
        let fermion = self.statistics == Statistics::Fermion;
        if fermion && self.cutoff.is_some() {
            return config_err("--cutoff applies to bosons only");
        }
        if self.cutoff == Some(0) {
            return config_err("bosonic cutoff must be at least 1");
        }
        for &x in &self.points {
            let ok = match self.task {
                Task::EntropyCurve => x > 0.0 && x.is_finite(),
                _ if fermion => x >= 0.0 && x.is_finite(),
                _ => x > 0.0 && x.is_finite(),
            };
            if !ok {
                return config_err(format!("grid value {x} is out of range for this command"));
            }
        }
        match &self.task {
            Task::EntropyCurve if !fermion => config_err("entropy-curve needs --stat fermion"),
            Task::Vacuum | Task::Eval { .. } if self.format == Format::Csv => {
                config_err("this command writes JSON only")
            }
            Task::Eval { .. } if self.points.len() != 1 => config_err("eval takes a single βω value"),
            Task::NocloneScan(s) => {
                if s.resolution < 3 {
                    return config_err("scan resolution must be at least 3");
                }
                if s.phases == 0 {
                    return config_err("scan needs at least one phase");
                }
                if !fermion {
                    return config_err("noclone-scan works on the fermionic mode");
                }
                if self.points.len() != 1 {
                    return config_err("noclone-scan takes a single βω value");
                }
                Ok(())
            }
            _ => self.check_cutoffs(),
        }
    }

    fn check_cutoffs(&self) -> Result<(), CliError> {
        if self.statistics == Statistics::Fermion {
            return Ok(());
        }
        let limit = match self.task {
            Task::Occupation => MAX_SERIES_CUTOFF,
            _ => MAX_DENSE_CUTOFF,
        };
        for &bw in &self.points {
            let need = required_cutoff(bw);
            if let Some(c) = self.cutoff {
                if c < need {
                    return config_err(format!("cutoff {c} is below the tail-rule minimum {need} at βω = {bw}"));
                }
            }
            let used = self.boson_cutoff(bw);
            if used > limit {
                return config_err(format!(
                    "βω = {bw} needs cutoff {used}, above this command's limit {limit}"
                ));
            }
        }
        Ok(())
    }

    /// Cutoff used at `beta_omega`: explicit value, else the command default.
    pub fn boson_cutoff(&self, beta_omega: f64) -> usize {
        if let Some(c) = self.cutoff {
            return c;
        }
        match self.task {
            // tighter tail keeps the truncated mean within 1e-10 of Bose–Einstein
            Task::Occupation => tail_rule_cutoff(beta_omega, TAIL * beta_omega.min(1.0)),
            _ => MAX_DENSE_CUTOFF.max(required_cutoff(beta_omega)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, CliError> {
        let mut full = vec!["tfdlab"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full).map_err(|e| CliError::Config(e.to_string()))?)
    }

    #[test]
    fn grids_parse() {
        assert_eq!(parse_grid("0:1:3:lin").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_grid("0.01:1000:200:log").unwrap();
        assert_eq!((g.len(), g[0], g[199]), (200, 0.01, 1000.0));
        assert_eq!(parse_grid("2:5:1:lin").unwrap(), vec![2.0]);
        for bad in ["1:2:3", "0:1:3:log", "1:2:0:lin", "1:2:3:cubic", "a:2:3:lin", "1:inf:3:lin"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn defaults_per_command() {
        let c = cfg(&["entropy-curve"]).unwrap();
        assert_eq!((c.points.len(), c.format), (200, Format::Csv));
        let c = cfg(&["occupation", "--stat", "boson"]).unwrap();
        assert_eq!(c.points, DEFAULT_OCCUPATION_POINTS.to_vec());
        let c = cfg(&["vacuum"]).unwrap();
        assert_eq!((c.points.clone(), c.format), (vec![1.0], Format::Json));
        let c = cfg(&["occupation", "--beta-omega", "0,1,2"]).unwrap();
        assert_eq!(c.points, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn bad_configs_are_rejected() {
        let cases: &[&[&str]] = &[
            &["entropy-curve", "--stat", "boson"],
            &["entropy-curve", "--beta-omega", "1"],
            &["occupation", "--beta-omega", "1", "--grid", "1:2:2:lin"],
            &["occupation", "--stat", "boson", "--beta-omega", "0"],
            &["occupation", "--beta-omega", "-1"],
            &["occupation", "--cutoff", "5"],
            &["occupation", "--stat", "boson", "--cutoff", "10", "--beta-omega", "1"],
            &["vacuum", "--stat", "boson", "--beta-omega", "0.1"],
            &["vacuum", "--format", "csv"],
            &["eval", "a", "--beta-omega", "1,2"],
            &["noclone-scan", "--resolution", "2"],
            &["noclone-scan", "--stat", "boson"],
            &["occupation", "--tol", "0"],
            &["occupation", "--omega", "-1"],
        ];
        for args in cases {
            assert!(matches!(cfg(args), Err(CliError::Config(_))), "{args:?}");
        }
    }

    #[test]
    fn boson_cutoffs_respect_the_tail_rule() {
        let c = cfg(&["occupation", "--stat", "boson"]).unwrap();
        for &bw in &c.points {
            assert!(c.boson_cutoff(bw) >= required_cutoff(bw));
        }
        let c = cfg(&["vacuum", "--stat", "boson", "--beta-omega", "2"]).unwrap();
        assert_eq!(c.boson_cutoff(2.0), MAX_DENSE_CUTOFF);
        let c = cfg(&["vacuum", "--stat", "boson", "--beta-omega", "2", "--cutoff", "20"]).unwrap();
        assert_eq!(c.boson_cutoff(2.0), 20);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config(String::new()).exit_code(), 2);
        assert_eq!(CliError::Parse { offset: 0, message: String::new() }.exit_code(), 2);
        assert_eq!(CliError::Property(String::new()).exit_code(), 3);
    }
}
