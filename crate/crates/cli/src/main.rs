use clap::{Parser, Subcommand};
use ilat::config::RunConfig;
use ilat::error::CliError;
use ilat::model::build_model;
use ilat::run::{self, Figure, FitRequest, FitRequestKind, Overrides, ReduceRequest, Reduction};
use infolattice::plan::Axis;
use infolattice::SubsystemIndex;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ilat",
    version,
    about = "Information lattices of two-dimensional quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the information lattice of a configured model.
    Compute {
        config: PathBuf,
        /// Disorder seed, replacing the configured one.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; defaults to the config, then ILAT_THREADS.
        #[arg(long)]
        threads: Option<usize>,
        /// Output directory, replacing the configured one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a lattice file to multiscale, quasi-1D or per-scale information.
    Reduce {
        lattice: PathBuf,
        /// Comma-separated reductions: multiscale, quasi1d, per-scale.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "multiscale,quasi1d,per-scale"
        )]
        kind: Vec<String>,
        /// Rectangle `nx,ny,lx,ly`; defaults to the lattice region.
        #[arg(long)]
        region: Option<String>,
        #[arg(long, default_value = "x")]
        axis: String,
        /// Also split the multiscale information into bulk and edge parts.
        #[arg(long)]
        bulk_zeta: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Fit a per-scale profile or the propagation direction of a multiscale file.
    Fit {
        input: PathBuf,
        /// decay-length, power-law, alpha or direction.
        #[arg(long)]
        kind: String,
        /// Inclusive scale window `min,max`.
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        floor: Option<f64>,
        /// Sites along the axis, for the default power-law window.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value = "fit.tsv")]
        out: PathBuf,
    },
    /// Compare the configured backend against an independent one.
    Oracle {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Maximum allowed |delta|, replacing the configured tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Write `x y weight` plot data.
    ExportPlot {
        /// Lattice file; not needed for the sites figure.
        lattice: Option<PathBuf>,
        /// lattice, multiscale, quasi1d, per-scale or sites.
        #[arg(long, default_value = "lattice")]
        figure: String,
        #[arg(long, default_value = "x")]
        axis: String,
        /// Model config, for the sites figure.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_axis(s: &str) -> Result<Axis, CliError> {
    Axis::parse(s).ok_or_else(|| CliError::Config(format!("--axis: unknown axis `{s}`")))
}

fn parse_ints(s: &str, n: usize, flag: &str) -> Result<Vec<i64>, CliError> {
    let v: Option<Vec<i64>> = s.split(',').map(|t| t.trim().parse().ok()).collect();
    match v {
        Some(v) if v.len() == n => Ok(v),
        _ => Err(CliError::Config(format!(
            "{flag}: expected {n} comma-separated integers, got `{s}`"
        ))),
    }
}

fn load(config: &Path, o: &Overrides) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(config)?;
    o.apply(&mut cfg)?;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            config,
            seed,
            threads,
            out,
        } => {
            let cfg = load(&config, &Overrides { seed, threads, out })?;
            let outcome = run::compute(&cfg)?;
            print!("{}", run::compute_summary(&outcome));
        }
        Command::Reduce {
            lattice,
            kind,
            region,
            axis,
            bulk_zeta,
            out,
        } => {
            let kinds = kind
                .iter()
                .map(|k| {
                    Reduction::parse(k)
                        .ok_or_else(|| CliError::Config(format!("--kind: unknown reduction `{k}`")))
                })
                .collect::<Result<_, _>>()?;
            let region = match region {
                Some(r) => {
                    let v = parse_ints(&r, 4, "--region")?;
                    Some(SubsystemIndex::new(v[0], v[1], v[2], v[3]))
                }
                None => None,
            };
            let req = ReduceRequest {
                lattice,
                kinds,
                region,
                axis: parse_axis(&axis)?,
                bulk_zeta,
                out,
            };
            print!("{}", run::reduce(&req)?);
        }
        Command::Fit {
            input,
            kind,
            window,
            floor,
            length,
            out,
        } => {
            let kind = FitRequestKind::parse(&kind)
                .ok_or_else(|| CliError::Config(format!("--kind: unknown fit `{kind}`")))?;
            let window = match window {
                Some(w) => {
                    let v = parse_ints(&w, 2, "--window")?;
                    Some((v[0], v[1]))
                }
                None => None,
            };
            let req = FitRequest {
                input,
                kind,
                window,
                floor,
                length,
                out,
            };
            println!("{}", run::fit(&req)?);
        }
        Command::Oracle {
            config,
            seed,
            threads,
            tolerance,
        } => {
            let mut cfg = load(
                &config,
                &Overrides {
                    seed,
                    threads,
                    out: None,
                },
            )?;
            if let Some(t) = tolerance {
                cfg.compute.oracle_tolerance = t;
            }
            println!("{}", run::oracle(&cfg)?);
        }
        Command::ExportPlot {
            lattice,
            figure,
            axis,
            config,
            out,
        } => {
            let fig = Figure::parse(&figure)
                .ok_or_else(|| CliError::Config(format!("--figure: unknown figure `{figure}`")))?;
            let text = match (fig, lattice, config) {
                (Figure::Sites, _, Some(c)) => {
                    run::export_sites(&build_model(&RunConfig::load(&c)?)?)
                }
                (Figure::Sites, _, None) => {
                    return Err(CliError::Config("the sites figure needs --config".into()))
                }
                (_, Some(l), _) => {
                    run::export_plot(&run::load_lattice(&l)?, fig, parse_axis(&axis)?)?
                }
                (_, None, _) => {
                    return Err(CliError::Config(format!(
                        "the {figure} figure needs a lattice file"
                    )))
                }
            };
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| CliError::io(&p, e))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
