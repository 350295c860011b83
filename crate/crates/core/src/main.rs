use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dual_stokes::stokes::{builtin_suite, integrate_over_cube, load_scenarios, run_suite, write_csv};
use dual_stokes::{lambda_dim, selftest, CubeDomain, DiffForm, Error, Mode, Refinement, SingularCube, Theta};

#[derive(Parser)]
#[command(name = "dual-stokes", version, about = "Type-theta calculus over the dual numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Stokes identity on a scenario file, or on the builtin suite.
    Verify {
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a CSV summary, one row per scenario.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Override every scenario's mode.
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Integrate a k-form over a single cube.
    Integrate {
        /// JSON object from index keys to expressions, e.g. '{"1,2":"x1"}'.
        #[arg(long)]
        form: String,
        /// JSON list of component expressions in x1..xk.
        #[arg(long)]
        cube: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        theta: u8,
        #[arg(long, default_value_t = 0.0)]
        r: f64,
        #[arg(long, default_value_t = Mode::Enclosure)]
        mode: Mode,
        #[arg(long, default_value_t = 8)]
        n0: usize,
        #[arg(long, default_value_t = 3)]
        max_doublings: u32,
        #[arg(long, default_value_t = 0.25)]
        tol: f64,
    },
    /// Run randomized invariant checks and the builtin suite.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Print the dimension of the space of alternating k-tensors on dual n-space.
    Dim { n: usize, k: usize },
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::NotConverged(_) => 3,
        _ => 2,
    })
}

fn write_json(path: Option<&PathBuf>, value: &impl serde::Serialize) -> Result<(), Error> {
    let mut out: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn verify(
    scenario: Option<PathBuf>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    mode: Option<Mode>,
) -> Result<ExitCode, Error> {
    let mut scenarios = match &scenario {
        Some(p) => load_scenarios(p)?,
        None => builtin_suite(),
    };
    if let Some(m) = mode {
        scenarios.iter_mut().for_each(|s| s.mode = m);
    }
    let suite = run_suite(&scenarios)?;
    for r in &suite.reports {
        eprintln!(
            "{:<28} {:<18} N={:<4} diff=({:+.2e}, {:+.2e}) tol=({:.1e}, {:.1e})",
            r.name,
            serde_json::to_value(r.status).map_err(io::Error::from)?.as_str().unwrap_or("?"),
            r.refinement_n,
            r.diff_re,
            r.diff_ze,
            r.tol_re,
            r.tol_ze
        );
    }
    write_json(out.as_ref(), &suite)?;
    if let Some(p) = csv {
        write_csv(BufWriter::new(File::create(p)?), &suite.reports)?;
    }
    Ok(ExitCode::from(suite.summary.exit_code as u8))
}

#[allow(clippy::too_many_arguments)]
fn integrate(
    form: &str,
    cube: &str,
    k: usize,
    theta: u8,
    r: f64,
    mode: Mode,
    n0: usize,
    max_doublings: u32,
    tol: f64,
) -> Result<ExitCode, Error> {
    let bad = |what: &str, e: serde_json::Error| Error::Config(format!("{what}: {e}"));
    let form: BTreeMap<String, String> = serde_json::from_str(form).map_err(|e| bad("--form", e))?;
    let cube: Vec<String> = serde_json::from_str(cube).map_err(|e| bad("--cube", e))?;
    let theta = Theta::try_from(theta).map_err(Error::Config)?;
    let c = SingularCube::parse(CubeDomain::new(theta, r, k)?, &cube)?;
    let w = DiffForm::parse(cube.len(), k, form.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
    let refinement = Refinement { n0, max_doublings, tol_re: tol, tol_ze: tol };
    let e = integrate_over_cube(&w, &c, &refinement, mode)?;
    write_json(None, &e)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { scenario, out, csv, mode } => verify(scenario, out, csv, mode),
        Command::Integrate { form, cube, k, theta, r, mode, n0, max_doublings, tol } => {
            integrate(&form, &cube, k, theta, r, mode, n0, max_doublings, tol)
        }
        Command::Selftest { seed, cases } => {
            let checks = selftest::run(seed, cases);
            for c in &checks {
                let verdict = if c.passed() { "ok" } else { "FAIL" };
                eprintln!("{verdict:<4} {:<30} {} cases", c.name, c.cases);
                if let Some(msg) = &c.first_failure {
                    eprintln!("     {msg}");
                }
            }
            Ok(if checks.iter().all(|c| c.passed()) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Dim { n, k } => {
            println!("{}", lambda_dim(n, k));
            Ok(ExitCode::SUCCESS)
        }
    };
    result.unwrap_or_else(|e| fail(&e))
}
