//! `qinv` - run and validate qualitative-inversion experiments.
//!
//! Exit codes: 0 success, 1 config validation error, 2 runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qinv::config::parse_config;
use qinv::demo::{run_demo, DemoName};
use qinv::error::Error;
use qinv::runner::{resolve_out_dir, run_experiment, RunOverrides};

#[derive(Parser)]
#[command(
    name = "qinv",
    version,
    about = "Qualitative inversion experiment runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config end to end.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        /// Output directory (overrides the config and QINV_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for the grid sweep (results are identical for any
        /// count).
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Noise seed override.
        #[arg(long)]
        seed: Option<u64>,
        /// Also export the analyzed data matrix (noise included) as a CSV
        /// with this file name in the output directory.
        #[arg(long, value_name = "FILE")]
        export_data: Option<String>,
    },
    /// Parse and validate a config, reporting every problem found.
    Validate { config: PathBuf },
    /// Run a built-in demo (fig2 | fig3 | fig6 | table1).
    Demo {
        name: String,
        /// Output directory (defaults to QINV_OUT_DIR or qinv_out, plus the
        /// demo name).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Noise seed override.
        #[arg(long)]
        seed: Option<u64>,
    },
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            threads,
            seed,
            export_data,
        } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {}", config.display(), e);
                    return ExitCode::from(EXIT_RUNTIME);
                }
            };
            let parsed = match parse_config(&text) {
                Ok(c) => c,
                Err(errors) => {
                    for e in &errors {
                        eprintln!("{}", e);
                    }
                    return ExitCode::from(EXIT_VALIDATION);
                }
            };
            let overrides = RunOverrides {
                out_dir: out,
                threads: Some(threads),
                seed,
                export_data,
            };
            match run_experiment(&parsed, &overrides) {
                Ok(manifest) => {
                    let dir = resolve_out_dir(&parsed, &overrides);
                    println!(
                        "{}: wrote {} files to {}",
                        manifest.name,
                        manifest.outputs.len() + 1,
                        dir.display()
                    );
                    for (name, _) in &manifest.outputs {
                        println!("  {}", name);
                    }
                    println!("  manifest.txt");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    ExitCode::from(EXIT_RUNTIME)
                }
            }
        }
        Command::Validate { config } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {}", config.display(), e);
                    return ExitCode::from(EXIT_RUNTIME);
                }
            };
            match parse_config(&text) {
                Ok(parsed) => {
                    println!(
                        "{}: valid ({} indicators, {} grid)",
                        parsed.name,
                        parsed.indicators.len(),
                        if parsed.grid.dimension() == 1 {
                            format!("{}-point", parsed.grid.x.2)
                        } else {
                            format!(
                                "{}x{}",
                                parsed.grid.x.2,
                                parsed.grid.y.map(|y| y.2).unwrap_or(0)
                            )
                        }
                    );
                    ExitCode::SUCCESS
                }
                Err(errors) => {
                    for e in &errors {
                        eprintln!("{}", e);
                    }
                    ExitCode::from(EXIT_VALIDATION)
                }
            }
        }
        Command::Demo {
            name,
            out,
            threads,
            seed,
        } => {
            let demo = match DemoName::parse(&name) {
                Some(d) => d,
                None => {
                    eprintln!(
                        "error: unknown demo '{}' (fig2 | fig3 | fig6 | table1)",
                        name
                    );
                    return ExitCode::from(EXIT_VALIDATION);
                }
            };
            let out_dir = out.unwrap_or_else(|| {
                let base = std::env::var_os("QINV_OUT_DIR")
                    .map(PathBuf::from)
                    .unwrap_or_else(|| PathBuf::from("qinv_out"));
                base.join(&name)
            });
            match run_demo(demo, &out_dir, Some(threads), seed) {
                Ok(outputs) => {
                    println!(
                        "{}: wrote {} files to {}",
                        name,
                        outputs.len(),
                        out_dir.display()
                    );
                    for (file, _) in &outputs {
                        println!("  {}", file);
                    }
                    ExitCode::SUCCESS
                }
                Err(Error::Config(errors)) => {
                    for e in &errors {
                        eprintln!("{}", e);
                    }
                    ExitCode::from(EXIT_VALIDATION)
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    ExitCode::from(EXIT_RUNTIME)
                }
            }
        }
    }
}
