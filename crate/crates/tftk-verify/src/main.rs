//! `verify` command-line interface.
//!
//! Grammar: `verify <experiment> --dim N --trials T --p 1.5,2 --s 1
//! --a 2 --b 2 --channels 4 --seed S --out PATH --format json`.
//! Exit codes: 0 when every asserted inequality passes, 1 on an assertion
//! failure, 2 on configuration or I/O errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;
use tftk_verify::{
    emit_report, run_experiment, to_json, ExperimentConfig, ExperimentName, Report, ReportFormat,
    RunError,
};

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Seeded numerical experiments for the time-frequency toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    /// Experiment: schatten-bound, lemma31, kn-roundtrip, kn-magnitude,
    /// norm-equivalence, counterexample, embedding, frame-suite,
    /// wilson-suite, or monotonicity.
    experiment: String,

    /// Ambient dimension N (<= 64; kernel-grid experiments require <= 32).
    #[arg(long)]
    dim: Option<usize>,

    /// Number of randomized trials.
    #[arg(long)]
    trials: Option<usize>,

    /// Comma-separated exponent grid, e.g. --p 1,1.5,2.
    #[arg(long = "p", value_delimiter = ',')]
    p: Option<Vec<f64>>,

    /// Polynomial weight parameter.
    #[arg(long)]
    s: Option<f64>,

    /// Lattice time step.
    #[arg(long)]
    a: Option<usize>,

    /// Lattice frequency step.
    #[arg(long)]
    b: Option<usize>,

    /// Wilson channel count M.
    #[arg(long)]
    channels: Option<usize>,

    /// Seed for the counter-based generator.
    #[arg(long)]
    seed: Option<u64>,

    /// Write the report here; without it the JSON report goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() {
    std::process::exit(cli_main(std::env::args_os()));
}

fn cli_main<I>(argv: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };

    let name: ExperimentName = match cli.experiment.parse() {
        Ok(name) => name,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let format: ReportFormat = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };

    let mut cfg = ExperimentConfig::defaults_for(name);
    if let Some(dim) = cli.dim {
        cfg.dim = dim;
    }
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
    }
    if let Some(p) = cli.p {
        cfg.p_grid = p;
    }
    if let Some(s) = cli.s {
        cfg.s = s;
    }
    if let Some(a) = cli.a {
        cfg.lattice_a = a;
    }
    if let Some(b) = cli.b {
        cfg.lattice_b = b;
    }
    if let Some(channels) = cli.channels {
        cfg.channels = channels;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }

    let report = match run_experiment(&cfg) {
        Ok(report) => report,
        Err(RunError::Config(e)) => {
            eprintln!("{e}");
            return 2;
        }
        Err(e @ RunError::Numeric { .. }) => {
            eprintln!("{e}");
            return 1;
        }
    };

    match &cli.out {
        Some(path) => {
            if let Err(e) = emit_report(&report, format, path) {
                eprintln!("i/o error writing {}: {e}", path.display());
                return 2;
            }
            print_summary(&report);
        }
        None => match format {
            ReportFormat::Json => println!("{}", to_json(&report)),
            ReportFormat::Csv => print!("{}", tftk_verify::to_csv(&report)),
        },
    }

    if report.aggregate.pass {
        0
    } else {
        eprintln!(
            "FAIL {}: max violation {:e} exceeds tolerance {:e}",
            report.experiment, report.aggregate.max_violation, report.tolerance
        );
        1
    }
}

fn print_summary(report: &Report) {
    println!(
        "{}: {} ({} records, max violation {:e}, tolerance {:e})",
        report.experiment,
        if report.aggregate.pass { "pass" } else { "FAIL" },
        report.trials.len(),
        report.aggregate.max_violation,
        report.tolerance
    );
}
