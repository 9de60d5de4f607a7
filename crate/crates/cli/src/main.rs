//! `jacobi-flow`: integrate, predict and verify the sorting flow from the
//! command line.
//!
//! Exit codes: 0 success, 1 invalid arguments or input, 2 failed verification.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use jacobi_flow::flow::{integrate_dense, integrate_with, IntegratorConfig, Method, Validation};
use jacobi_flow::io::{parse_input, write_summary, write_trajectory_csv, InputMatrix, MatrixInputDocument, Summary};
use jacobi_flow::jacobi::{embed, DenseSymmetric, OffDiagonal};
use jacobi_flow::spectral::{
    eigenvalues_offdiag, eigenvalues_symmetric, enumerate_equilibria, predict_limit, spectrum_zero_diag,
    SpectralTolerances, Spectrum,
};
use jacobi_flow::verify::{verify_identities, verify_trajectory, ToleranceProfile, VerificationReport};
use jacobi_flow::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "jacobi-flow", version, about = "Isospectral sorting flow on zero-diagonal Jacobi matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the flow and write the trajectory and a summary.
    Evolve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        integ: IntegratorArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        strict: StrictArg,
    },
    /// Predict the limit from the spectrum without integrating.
    Predict {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: SummaryArg,
    },
    /// Integrate and check every claimed property; exit 2 on failure.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        integ: IntegratorArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        strict: StrictArg,
        /// Tolerance profile.
        #[arg(long, value_enum, default_value_t = Profile::Strict)]
        profile: Profile,
        /// Also run 100 seeded random trials of the algebraic identities.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Eigenvalues of the input matrix.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: SummaryArg,
    },
    /// Enumerate the isospectral equilibria.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "offdiag", "spectrum"])))]
    Equilibria {
        /// JSON input document.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Off-diagonal entries, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        offdiag: Option<Vec<f64>>,
        /// Eigenvalues, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        spectrum: Option<Vec<f64>>,
        /// List every sign pattern, not just positive entries.
        #[arg(long)]
        include_signs: bool,
        #[command(flatten)]
        out: SummaryArg,
    },
    /// Experimental: integrate from a general symmetric matrix.
    EvolveSym {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        integ: IntegratorArgs,
        #[command(flatten)]
        out: SummaryArg,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// JSON input document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Off-diagonal entries, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    offdiag: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    FixedRk4,
    AdaptiveRk45,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Profile {
    /// Limit within 1e-6 (1 + ||a0||).
    Strict,
    /// As `strict`, and the run must end on the equilibrium stop.
    Converged,
    /// Limit within 0.01 at the horizon.
    TwoDecimals,
}

#[derive(Debug, Args)]
struct IntegratorArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::AdaptiveRk45)]
    method: MethodArg,
    /// Fixed step, or the first adaptive trial step.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    /// Equilibrium stop threshold [default: 1e-10 (1 + ||H0||_F^2)].
    #[arg(long)]
    eq_eps: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Minimum time between trajectory rows [default: t_max / 9998].
    #[arg(long)]
    record_stride: Option<f64>,
}

impl IntegratorArgs {
    fn config(&self) -> IntegratorConfig<f64> {
        IntegratorConfig {
            method: match self.method {
                MethodArg::FixedRk4 => Method::FixedRk4,
                MethodArg::AdaptiveRk45 => Method::AdaptiveRk45,
            },
            dt: self.dt,
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            t_max: self.t_max,
            eq_eps: self.eq_eps,
            record_stride: self.record_stride,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Trajectory CSV path.
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[command(flatten)]
    summary: SummaryArg,
}

#[derive(Debug, Args)]
struct SummaryArg {
    /// Summary JSON path [default: standard output].
    #[arg(long)]
    out_summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StrictArg {
    /// Require nonzero entries and distinct eigenvalues. With `false`,
    /// prediction checks are skipped.
    #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
    strict: bool,
}

impl StrictArg {
    fn validation(&self) -> Validation {
        if self.strict {
            Validation::Strict
        } else {
            Validation::Relaxed
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load(input: &InputArgs) -> Result<MatrixInputDocument> {
    match (&input.input, &input.offdiag) {
        (Some(path), None) => {
            let bytes = std::fs::read(path)
                .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
            parse_input(&bytes).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
                Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
                other => other,
            })
        }
        (None, Some(entries)) => Ok(MatrixInputDocument {
            label: None,
            matrix: InputMatrix::OffDiagonal(OffDiagonal::new(entries.clone())?),
        }),
        _ => Err(Error::InvalidArgument("give exactly one of --input and --offdiag".into())),
    }
}

fn load_offdiag(input: &InputArgs, command: &str) -> Result<(Option<String>, OffDiagonal<f64>)> {
    let doc = load(input)?;
    match doc.matrix {
        InputMatrix::OffDiagonal(a) => Ok((doc.label, a)),
        InputMatrix::Symmetric(_) => Err(Error::Validation(format!(
            "`{command}` needs an off-diagonal document; use `evolve-sym` for general symmetric input"
        ))),
    }
}

fn dense_rows(h: &DenseSymmetric<f64>) -> Vec<Vec<f64>> {
    (0..h.dim()).map(|i| (0..h.dim()).map(|j| *h.get(i, j)).collect()).collect()
}

fn base_summary(command: &str, label: Option<String>, a: &OffDiagonal<f64>) -> Summary {
    Summary { label, input_offdiag: Some(a.entries().to_vec()), ..Summary::new(command, a.dim()) }
}

fn emit(summary: &Summary, out: &SummaryArg) -> Result<()> {
    match &out.out_summary {
        Some(path) => write_summary(summary, BufWriter::new(File::create(path)?)),
        None => write_summary(summary, io::stdout().lock()),
    }
}

fn predicted(a: &OffDiagonal<f64>, spec: &Spectrum<f64>) -> Option<Vec<f64>> {
    predict_limit(a, spec, &SpectralTolerances::for_offdiag(a)).ok().map(OffDiagonal::into_entries)
}

/// Returns whether the command succeeded in the verification sense.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Evolve { input, integ, out, strict } => {
            let (label, a) = load_offdiag(&input, "evolve")?;
            let cfg = integ.config();
            let traj = integrate_with(&a, &cfg, strict.validation())?;
            if let Some(path) = &out.out_csv {
                write_trajectory_csv(&traj, BufWriter::new(File::create(path)?))?;
            }
            let summary = Summary {
                status: Some(traj.status),
                final_time: Some(traj.final_time()),
                final_offdiag: Some(traj.final_state().entries().to_vec()),
                spectrum: Some(traj.initial_spectrum.values().to_vec()),
                predicted_limit: if strict.strict { predicted(&a, &traj.initial_spectrum) } else { None },
                config: Some(cfg),
                ..base_summary("evolve", label, &a)
            };
            emit(&summary, &out.summary)?;
            Ok(true)
        }
        Command::Predict { input, out } => {
            let (label, a) = load_offdiag(&input, "predict")?;
            let tols = SpectralTolerances::for_offdiag(&a);
            let spec = spectrum_zero_diag(&a, &tols)?;
            let limit = predict_limit(&a, &spec, &tols)?;
            let summary = Summary {
                spectrum: Some(spec.values().to_vec()),
                predicted_limit: Some(limit.into_entries()),
                ..base_summary("predict", label, &a)
            };
            emit(&summary, &out)?;
            Ok(true)
        }
        Command::Verify { input, integ, out, strict, profile, seed } => {
            let (label, a) = load_offdiag(&input, "verify")?;
            let cfg = integ.config();
            let profile = match profile {
                Profile::Strict => ToleranceProfile::default(),
                Profile::Converged => ToleranceProfile::converged(),
                Profile::TwoDecimals => ToleranceProfile::two_decimals(),
            };
            let traj = integrate_with(&a, &cfg, strict.validation())?;
            let mut report = verify_trajectory(&traj, &profile);
            if let Some(seed) = seed {
                let ids = verify_identities(a.dim(), 100, seed)?;
                let mut checks = report.checks;
                checks.extend(ids.checks);
                report = VerificationReport::new(checks, report.status, Some(seed));
            }
            if let Some(path) = &out.out_csv {
                write_trajectory_csv(&traj, BufWriter::new(File::create(path)?))?;
            }
            let summary = Summary {
                final_time: Some(traj.final_time()),
                final_offdiag: Some(traj.final_state().entries().to_vec()),
                spectrum: Some(traj.initial_spectrum.values().to_vec()),
                predicted_limit: if strict.strict { predicted(&a, &traj.initial_spectrum) } else { None },
                config: Some(cfg),
                ..base_summary("verify", label, &a)
            }
            .with_report(&report);
            emit(&summary, &out.summary)?;
            for c in report.failures() {
                eprintln!("check failed: {} (measured {:e}, threshold {:e})", c.name, c.measured, c.threshold);
            }
            Ok(report.overall)
        }
        Command::Spectrum { input, out } => {
            let doc = load(&input)?;
            let summary = match &doc.matrix {
                InputMatrix::OffDiagonal(a) => {
                    let tols = SpectralTolerances::for_offdiag(a);
                    let spec = eigenvalues_offdiag(a, tols.eig_tol)?;
                    Summary { spectrum: Some(spec.values().to_vec()), ..base_summary("spectrum", doc.label, a) }
                }
                InputMatrix::Symmetric(h) => {
                    let spec = eigenvalues_symmetric(h, 8.0 * f64::EPSILON * (1.0 + h.frobenius_norm()))?;
                    Summary {
                        label: doc.label,
                        input_symmetric: Some(dense_rows(h)),
                        spectrum: Some(spec.values().to_vec()),
                        ..Summary::new("spectrum", h.dim())
                    }
                }
            };
            emit(&summary, &out)?;
            Ok(true)
        }
        Command::Equilibria { input, offdiag, spectrum, include_signs, out } => {
            let (spec, mut summary) = match spectrum {
                Some(values) => {
                    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
                        return Err(Error::Validation("--spectrum needs finite values".into()));
                    }
                    let spec = Spectrum::from_unsorted(values);
                    let n = spec.len();
                    (spec, Summary::new("equilibria", n))
                }
                None => {
                    let (label, a) = load_offdiag(&InputArgs { input, offdiag }, "equilibria")?;
                    let spec = spectrum_zero_diag(&a, &SpectralTolerances::for_offdiag(&a))?;
                    (spec, base_summary("equilibria", label, &a))
                }
            };
            let scale = spec.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let set = enumerate_equilibria(&spec, include_signs, &SpectralTolerances::for_scale(scale))?;
            summary.spectrum = Some(spec.values().to_vec());
            summary.equilibria = Some(set.points.into_iter().map(OffDiagonal::into_entries).collect());
            summary.count_formula = Some(set.count_formula);
            summary.count_with_signs = Some(set.count_with_signs);
            emit(&summary, &out)?;
            Ok(true)
        }
        Command::EvolveSym { input, integ, out } => {
            let doc = load(&input)?;
            let h0 = match &doc.matrix {
                InputMatrix::Symmetric(h) => h.clone(),
                InputMatrix::OffDiagonal(a) => embed(a),
            };
            let cfg = integ.config();
            let traj = integrate_dense(&h0, &cfg)?;
            let summary = Summary {
                experimental: Some(
                    "general symmetric input: only isospectrality and Lyapunov monotonicity are established; \
                     the block structure is reported, not guaranteed"
                        .into(),
                ),
                label: doc.label,
                input_symmetric: Some(dense_rows(&h0)),
                status: Some(traj.status),
                final_time: traj.times.last().copied(),
                final_symmetric: Some(dense_rows(traj.final_state())),
                block_sizes: Some(traj.block_sizes.clone()),
                spectrum: Some(traj.initial_spectrum.values().to_vec()),
                config: Some(cfg),
                ..Summary::new("evolve-sym", h0.dim())
            };
            emit(&summary, &out)?;
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn strict_flag_forms() {
        let parse = |args: &[&str]| Cli::try_parse_from(args);
        for (args, expected) in [
            (vec!["jf", "evolve", "--offdiag", "1,2"], true),
            (vec!["jf", "evolve", "--offdiag", "1,2", "--strict"], true),
            (vec!["jf", "evolve", "--offdiag", "1,2", "--strict=false"], false),
        ] {
            match parse(&args).unwrap().command {
                Command::Evolve { strict, .. } => assert_eq!(strict.strict, expected),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn negative_entries_parse() {
        match Cli::try_parse_from(["jf", "predict", "--offdiag", "-5,-6,-2"]).unwrap().command {
            Command::Predict { input, .. } => assert_eq!(input.offdiag, Some(vec![-5.0, -6.0, -2.0])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn input_sources_are_exclusive() {
        assert!(Cli::try_parse_from(["jf", "predict"]).is_err());
        assert!(Cli::try_parse_from(["jf", "predict", "--offdiag", "1", "--input", "x.json"]).is_err());
        assert!(Cli::try_parse_from(["jf", "equilibria", "--spectrum", "-1,1", "--offdiag", "1"]).is_err());
        assert!(Cli::try_parse_from(["jf", "predict", "--offdiag", "1", "--bogus"]).is_err());
    }
}
