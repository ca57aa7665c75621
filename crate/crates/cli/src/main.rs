//! `isingdrive`: command-line studies of two Ising-coupled, tilted-drive qubits.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration or arguments,
//! 3 numerical failure.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use isingdrive::config::OutputFormat;
use isingdrive::study::{self, GateSource};
use isingdrive::{Error, NamedGate, RunConfig};

use output::{sig12, write_csv, write_json};

#[derive(Parser, Debug)]
#[command(version, about = "Gate studies for two Ising-coupled qubits with tilted drives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; falls back to `output.path` in the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Apply the rotary echo regardless of the configuration.
    #[arg(long)]
    echo: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Overlap of the rotating-wave gates with the exactly propagated gate (CSV).
    Overlap(Common),
    /// Local invariants and entangling power along the sweep (CSV plus a window sidecar).
    Invariants(Common),
    /// Process matrix and fidelity to a target gate up to local rotations (JSON).
    Tomography {
        #[command(flatten)]
        common: Common,
        /// cnot, cphase, iswap, swap or identity.
        #[arg(long, default_value = "cphase")]
        target: NamedGate,
        /// Gate time in ns; defaults to `gate_time_ns`, then to the sweep end.
        #[arg(long)]
        time_ns: Option<f64>,
        /// Use the numerically propagated gate instead of the analytic one.
        #[arg(long)]
        numeric: bool,
    },
    /// Validity margins of the rotating-wave approximations (JSON).
    Regime(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Overlap(c) | Command::Invariants(c) | Command::Regime(c) => c,
            Command::Tomography { common, .. } => common,
        }
    }
}

fn load(common: &Common) -> Result<(RunConfig, PathBuf)> {
    let text = std::fs::read_to_string(&common.config).map_err(|e| Error::Config {
        field: "<file>".into(),
        reason: format!("{}: {e}", common.config.display()),
    })?;
    let mut cfg = RunConfig::from_json_str(&text)?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    cfg.echo |= common.echo;
    let out = common
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().and_then(|o| o.path.as_ref()).map(PathBuf::from))
        .ok_or_else(|| Error::Config { field: "output.path".into(), reason: "no --out given and none configured".into() })?;
    Ok((cfg, out))
}

fn wants_json(cfg: &RunConfig) -> bool {
    cfg.output.as_ref().and_then(|o| o.format) == Some(OutputFormat::Json)
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("windows.json")
}

fn run(cli: Cli) -> Result<()> {
    let (mut cfg, out) = load(cli.command.common())?;
    match cli.command {
        Command::Overlap(_) => {
            let rows = study::overlap_study(&cfg)?;
            if wants_json(&cfg) {
                return write_json(&out, &rows);
            }
            write_csv(
                &out,
                ["t_ns", "F_one_rwa", "F_two_rwa"],
                rows.iter().map(|r| [sig12(r.t_ns), sig12(r.f_one_rwa), sig12(r.f_two_rwa)]),
            )
        }
        Command::Invariants(_) => {
            let (rows, sidecar) = study::invariants_study(&cfg)?;
            if wants_json(&cfg) {
                write_json(&out, &rows)?;
            } else {
                write_csv(
                    &out,
                    ["t_ns", "ReG1", "ImG1", "G2", "ep", "is_pe", "ep_envelope"],
                    rows.iter().map(|r| {
                        [
                            sig12(r.t_ns),
                            sig12(r.re_g1),
                            sig12(r.im_g1),
                            sig12(r.g2),
                            sig12(r.ep),
                            r.is_pe.to_string(),
                            sig12(r.ep_envelope),
                        ]
                    }),
                )?;
            }
            write_json(&sidecar_path(&out), &sidecar)
        }
        Command::Tomography { target, time_ns, numeric, .. } => {
            if let Some(t) = time_ns {
                cfg.gate_time_ns = Some(t);
                cfg.validate()?;
            }
            let source = if numeric { GateSource::Numeric } else { GateSource::Analytic };
            let report = study::tomography_study(&cfg, target, source)?;
            write_json(&out, &report)
        }
        Command::Regime(_) => {
            let report = study::regime_study(&cfg)?;
            write_json(&out, &report)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Config { .. }) => 2,
        Some(_) => 3,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        let config = anyhow::Error::from(Error::Config { field: "sweep".into(), reason: "bad".into() });
        assert_eq!(exit_code(&config), 2);
        let numeric = anyhow::Error::from(Error::NumericalFailure("drift".into())).context("overlap study");
        assert_eq!(exit_code(&numeric), 3);
        assert_eq!(exit_code(&anyhow::anyhow!("disk full")), 1);
    }

    #[test]
    fn sidecar_sits_next_to_output() {
        assert_eq!(sidecar_path(Path::new("out/inv.csv")), PathBuf::from("out/inv.windows.json"));
    }
}
