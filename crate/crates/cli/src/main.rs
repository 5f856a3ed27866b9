use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gamma1lab::qed::{Kind, Route};
use gamma1lab_cli::suites::{self, Suite, DEFAULT_TOL};
use gamma1lab_cli::{render, ReportDocument};

#[derive(Parser)]
#[command(
    name = "gamma1lab",
    version,
    about = "Verification reports for ln Gamma_1, zeta and QED effective Lagrangians"
)]
struct Cli {
    /// Report tolerance; kernels always target at most 1e-12.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Print one JSON document instead of the table.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the data table to this CSV file.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print L0, C, L1, A and zeta constants by every route.
    Constants,
    /// Run an identity suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Tabulate the one-loop Lagrangian over a log-spaced field grid.
    Lagrangian {
        #[arg(long, value_enum, default_value_t = KindArg::Spinor)]
        kind: KindArg,
        #[arg(long, default_value_t = 1.0)]
        b_min: f64,
        #[arg(long, default_value_t = 1e4)]
        b_max: f64,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_values_t = [RouteArg::Proper, RouteArg::Closed, RouteArg::StrongZeta, RouteArg::StrongRitus, RouteArg::StrongGamma1]
        )]
        routes: Vec<RouteArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Zeta,
    Gamma,
    Raabe,
    Qed,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Spinor,
    Scalar,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Proper,
    Closed,
    StrongZeta,
    StrongRitus,
    StrongGamma1,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Zeta => Suite::Zeta,
            SuiteArg::Gamma => Suite::Gamma,
            SuiteArg::Raabe => Suite::Raabe,
            SuiteArg::Qed => Suite::Qed,
            SuiteArg::All => Suite::All,
        }
    }
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Spinor => Kind::Spinor,
            KindArg::Scalar => Kind::Scalar,
        }
    }
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Proper => Route::ProperTime,
            RouteArg::Closed => Route::ClosedForm,
            RouteArg::StrongZeta => Route::StrongZeta,
            RouteArg::StrongRitus => Route::StrongRitus,
            RouteArg::StrongGamma1 => Route::StrongGamma1,
        }
    }
}

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return usage_error(format!("--tol must be a positive number, got {}", cli.tol));
    }
    let ctx = match suites::context_for(cli.tol) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };

    let doc = match cli.command {
        Command::Constants => suites::constants_document(&ctx, cli.tol),
        Command::Verify { suite } => suites::verify_document(suite.into(), &ctx, cli.tol),
        Command::Lagrangian {
            kind,
            b_min,
            b_max,
            points,
            routes,
        } => {
            let grid = match suites::log_grid(b_min, b_max, points) {
                Ok(g) => g,
                Err(e) => return usage_error(e),
            };
            let mut chosen: Vec<Route> = Vec::new();
            for r in routes.into_iter().map(Route::from) {
                if !chosen.contains(&r) {
                    chosen.push(r);
                }
            }
            suites::lagrangian_document(kind.into(), &grid, &chosen, &ctx)
        }
    };
    let doc = match doc {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(FAILURE);
        }
    };
    if let Err(e) = emit(&doc, cli.json, cli.csv.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(FAILURE);
    }
    if doc.all_pass() {
        ExitCode::SUCCESS
    } else {
        for r in doc.failures() {
            eprintln!("FAIL: {}", r.name());
        }
        ExitCode::from(FAILURE)
    }
}

fn emit(
    doc: &ReportDocument,
    json: bool,
    csv: Option<&PathBuf>,
) -> Result<(), Box<dyn std::error::Error>> {
    let text = if json {
        render::json(doc)? + "\n"
    } else {
        render::table(doc)
    };
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = csv {
        render::write_csv(doc, File::create(path)?)?;
    }
    Ok(())
}
