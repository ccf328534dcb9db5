use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hilbnef::commands::{replay, CliError, Outcome};
use hilbnef::rational_arg;
use hilbnef::scan::scan;
use hilbnef::{run, Command, PresetName, Request, SurfaceConfig};

/// Gieseker walls and nef divisors on Hilbert schemes of points.
///
/// Results go to stdout as JSON (CSV for `scan`); a short summary goes to stderr.
/// Exit status: 0 certified, 2 inconclusive, 1 input or precondition error.
/// HILBNEF_WORKERS sets the number of enumeration threads.
#[derive(Parser)]
#[command(name = "hilbnef", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SurfaceArgs {
    /// TOML surface description.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<PresetName>,
    /// Degree parameter of the preset.
    #[arg(long)]
    d: Option<i64>,
    /// Branch degree of a cyclic cover.
    #[arg(long)]
    e: Option<i64>,
    /// χ(O_X), required for cyclic covers.
    #[arg(long = "chi-o")]
    chi_o: Option<i64>,
}

#[derive(Args, Clone)]
struct SliceArgs {
    /// Antieffective twist D as comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    twist: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gieseker wall of X^[n].
    Wall {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long)]
        n: i64,
    },
    /// Nef divisor from the Gieseker wall, its dual curve and extremality.
    Nef {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long)]
        n: i64,
    },
    /// Critical divisors of the slice.
    Critdiv {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        slice: SliceArgs,
        /// Needed for dp1, whose polarization depends on n.
        #[arg(long)]
        n: Option<i64>,
    },
    /// All rank-one critical walls as CSV, optionally plotted as SVG.
    Scan {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long)]
        n: i64,
        /// Write the SVG plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// β-range of the plot, as `lo,hi` with `p/q` entries.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Verify the degree-one del Pezzo results for X^[n].
    Dp1 {
        #[arg(long)]
        n: i64,
        /// Alternative nef ray N with N·(-K) = 2, N² = 0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        nef_ray: Option<Vec<i64>>,
    },
    /// Re-run the input echoed in a result document.
    Replay { document: PathBuf },
}

fn surface_config(a: &SurfaceArgs) -> Result<SurfaceConfig, CliError> {
    if let Some(path) = &a.config {
        if a.d.is_some() || a.e.is_some() || a.chi_o.is_some() {
            return Err(CliError::Usage("--d, --e and --chi-o do not combine with --config".into()));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok(SurfaceConfig::from_toml(&text)?);
    }
    let need = |v: Option<i64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this preset")))
    };
    match a.preset {
        Some(PresetName::P3Hypersurface) => Ok(SurfaceConfig::p3_hypersurface(need(a.d, "d")?)),
        Some(PresetName::CyclicCover) => Ok(SurfaceConfig::cyclic_cover(
            need(a.d, "d")?,
            need(a.e, "e")?,
            need(a.chi_o, "chi-o")?,
        )),
        Some(PresetName::Dp1) => Ok(SurfaceConfig::dp1()),
        Some(PresetName::Custom) => Err(CliError::Usage("custom surfaces need --config".into())),
        None => Err(CliError::Usage("give --preset or --config".into())),
    }
}

fn request(command: Command, s: &SurfaceArgs, t: &SliceArgs, n: Option<i64>) -> Result<Request, CliError> {
    let mut req = Request::new(command, surface_config(s)?, n);
    req.twist = t.twist.clone();
    Ok(req)
}

fn emit(outcome: Outcome) -> ExitCode {
    print!("{}", outcome.json());
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.verdict.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Wall { surface, slice, n } => request(Command::Wall, surface, slice, Some(*n)).and_then(|r| run(&r)),
        Cmd::Nef { surface, slice, n } => request(Command::Nef, surface, slice, Some(*n)).and_then(|r| run(&r)),
        Cmd::Critdiv { surface, slice, n } => request(Command::Critdiv, surface, slice, *n).and_then(|r| run(&r)),
        Cmd::Dp1 { n, nef_ray } => {
            let mut req = Request::new(Command::Dp1, SurfaceConfig::dp1(), Some(*n));
            req.nef_ray = nef_ray.clone();
            run(&req)
        }
        Cmd::Replay { document } => std::fs::read_to_string(document)
            .map_err(|e| CliError::Usage(format!("{}: {e}", document.display())))
            .and_then(|text| replay(&text)),
        Cmd::Scan { surface, slice, n, svg, window } => {
            let res = request(Command::Wall, surface, slice, Some(*n)).and_then(|r| {
                let window = match window {
                    Some(w) => match w.split_once(',') {
                        Some((lo, hi)) => Some((rational_arg(lo)?, rational_arg(hi)?)),
                        None => {
                            return Err(CliError::Usage(format!("--window expects lo,hi, got {w}")))
                        }
                    },
                    None => None,
                };
                let sc = scan(&r)?;
                if let Some(path) = svg {
                    std::fs::write(path, sc.svg(window))
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                }
                Ok(sc)
            });
            return match res {
                Ok(sc) => {
                    print!("{}", sc.csv());
                    eprintln!("n = {}: {} critical wall(s)", sc.n, sc.critical_count());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match result {
        Ok(outcome) => emit(outcome),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
