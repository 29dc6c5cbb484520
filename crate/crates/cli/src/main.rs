//! Command-line front end: run named fixtures, config-driven evolutions,
//! and family-angle sweeps; emit tables, CSV, or JSON.

mod config;
mod output;

use bloch_metrics::{
    run_evolution_with_trajectory, run_fixture_with_trajectory, sweep_alpha, sweep_argmin_travel,
    travel_time, Error, Fixture, PropagationConfig, Trajectory,
};
use clap::{Parser, Subcommand, ValueEnum};
use config::{EndTime, RunConfig, SweepConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "blochmetrics",
    version,
    about = "Bloch-sphere evolution metrics: path length, efficiencies, curvature, volumes, complexity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named canonical evolution (fig4-AB, fig4-BC, fig4-CA,
    /// fig5-AB-opt, fig5-AB-sub, fig5-CD-opt, fig5-CD-sub)
    Fixture {
        name: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Trajectory samples per evolution
        #[arg(long)]
        samples: Option<usize>,
        /// Write the sampled trajectory as CSV to this path
        #[arg(long, value_name = "PATH")]
        dump_trajectory: Option<PathBuf>,
    },
    /// Run the evolution described by a key = value config file
    Run {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_name = "PATH")]
        dump_trajectory: Option<PathBuf>,
    },
    /// Sweep the family mixing angle over a grid from a config file
    Sweep {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        samples: Option<usize>,
        /// Write the sweep CSV to this path instead of standard output
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Usage and configuration problems exit 2; numerical failures exit 3.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidConfig(_)
        | Error::UnknownFixture(_)
        | Error::DegeneratePair
        | Error::ZeroNorm => 2,
        _ => 3,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {}: {}", err.name(), err);
    ExitCode::from(exit_code_for(&err))
}

fn read_config(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents)
        .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
}

fn propagation_config(samples: Option<usize>) -> PropagationConfig {
    match samples {
        Some(n) => PropagationConfig::default().with_samples(n),
        None => PropagationConfig::default(),
    }
}

fn emit_report(
    title: &str,
    format: Format,
    report: &bloch_metrics::MetricReport,
    traj: &Trajectory,
    dump: Option<&Path>,
) -> Result<(), Error> {
    match format {
        Format::Table => print!("{}", output::render_table(title, report)),
        Format::Csv => print!("{}", output::render_csv(report)),
        Format::Json => print!("{}", output::render_json(title, report)),
    }
    if let Some(path) = dump {
        write_file(path, &output::render_trajectory_csv(traj))?;
    }
    Ok(())
}

fn cmd_fixture(
    name: &str,
    format: Format,
    samples: Option<usize>,
    dump: Option<&Path>,
) -> Result<(), Error> {
    let fixture = Fixture::parse(name)?;
    let cfg = propagation_config(samples);
    let (report, traj) = run_fixture_with_trajectory(fixture, &cfg)?;
    emit_report(fixture.name(), format, &report, &traj, dump)
}

fn cmd_run(
    path: &Path,
    format: Format,
    samples: Option<usize>,
    dump: Option<&Path>,
) -> Result<(), Error> {
    let run = RunConfig::parse(&read_config(path)?)?;
    let cfg = propagation_config(samples.or(run.samples));
    let t_end = match run.t_end {
        EndTime::Explicit(t) => t,
        EndTime::Auto => {
            let target = run.target.as_ref().expect("validated");
            travel_time(&run.hamiltonian, &run.initial_state, target, &cfg)?
        }
    };
    let (report, traj) =
        run_evolution_with_trajectory(&run.hamiltonian, &run.initial_state, t_end, &cfg)?;
    emit_report(&path.display().to_string(), format, &report, &traj, dump)
}

fn cmd_sweep(
    path: &Path,
    format: Format,
    samples: Option<usize>,
    out: Option<&Path>,
) -> Result<(), Error> {
    let sweep = SweepConfig::parse(&read_config(path)?)?;
    let cfg = propagation_config(samples.or(sweep.samples));
    let points = sweep_alpha(sweep.a_hat, sweep.b_hat, sweep.energy, &sweep.alphas, &cfg)?;
    let best = sweep_argmin_travel(&points).expect("nonempty grid");

    let mut csv = String::from(output::SWEEP_CSV_HEADER);
    csv.push('\n');
    for p in &points {
        csv.push_str(&output::sweep_csv_row(p.alpha, &p.report));
        csv.push('\n');
    }
    let summary = format!(
        "argmin: alpha = {}, travel_time = {}",
        output::fmt_sig12(points[best].alpha),
        output::fmt_sig12(points[best].report.travel_time),
    );

    match out {
        Some(file) => {
            write_file(file, &csv)?;
            println!("{summary}");
        }
        None => match format {
            Format::Csv => {
                print!("{csv}");
                println!("# {summary}");
            }
            Format::Table => {
                println!(
                    "{:<14} {:<16} {:<16} {:<16} {:<16} {:<16}",
                    "alpha", "travel_time", "eta_ge", "kappa2", "c", "l_c"
                );
                for p in &points {
                    println!(
                        "{:<14} {:<16} {:<16} {:<16} {:<16} {:<16}",
                        output::fmt_sig12(p.alpha),
                        output::fmt_sig12(p.report.travel_time),
                        output::fmt_sig12(p.report.eta_ge),
                        output::fmt_sig12(p.report.kappa2),
                        output::fmt_sig12(p.report.c),
                        output::fmt_sig12(p.report.l_c),
                    );
                }
                println!("{summary}");
            }
            Format::Json => {
                let rows: Vec<String> = points
                    .iter()
                    .map(|p| {
                        let mut fields = vec![("alpha", p.alpha)];
                        fields.extend(output::report_fields(&p.report));
                        let body: Vec<String> = fields
                            .iter()
                            .map(|(n, v)| format!("    \"{}\": {}", n, output::fmt_sig12(*v)))
                            .collect();
                        format!("  {{\n{}\n  }}", body.join(",\n"))
                    })
                    .collect();
                println!("[\n{}\n]", rows.join(",\n"));
                println!("# {summary}");
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fixture {
            name,
            format,
            samples,
            dump_trajectory,
        } => cmd_fixture(name, *format, *samples, dump_trajectory.as_deref()),
        Command::Run {
            config,
            format,
            samples,
            dump_trajectory,
        } => cmd_run(config, *format, *samples, dump_trajectory.as_deref()),
        Command::Sweep {
            config,
            format,
            samples,
            out,
        } => cmd_sweep(config, *format, *samples, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => fail(err),
    }
}
