mod args;
mod output;

use std::process::ExitCode;

use clap::Parser;
use reskrylov::experiments::{
    estimate_rate, grid_independence_ratio, run_convergence, ConvergenceRecord, Method,
    ProblemSetup,
};
use reskrylov::verify::{run_suite, Suite};
use reskrylov::{linalg, Error, SolverConfig};

use args::{Cli, Command, MethodArg, SchrodingerArgs, SolverArg, SuiteArg, VerifyArgs, WaveArgs};
use output::{emit, Document, Fit, GridRatio, Row, RunManifest, Summary};

/// Fits and grid ratios start here, past the pre-asymptotic range.
const TAIL_START: usize = 10;

enum Failure {
    Usage(String),
    Solver(String),
    Property(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Property(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::OutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::UnsupportedSolver { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn check(cond: bool, msg: &str) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::Usage(msg.to_string()))
    }
}

fn dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Runs every job (setup, method) in parallel and returns the curves in job
/// order.
fn run_jobs(
    jobs: &[(ProblemSetup, Method)],
    ns: &[usize],
) -> Result<Vec<Vec<ConvergenceRecord>>, Failure> {
    let results = linalg::map_range(jobs.len(), |i| run_convergence(&jobs[i].0, ns, jobs[i].1));
    Ok(results.into_iter().collect::<reskrylov::Result<_>>()?)
}

fn fits(
    jobs: &[(ProblemSetup, Method)],
    curves: &[Vec<ConvergenceRecord>],
    n_max: usize,
) -> Vec<Fit> {
    jobs.iter()
        .zip(curves)
        .map(|((setup, method), curve)| Fit {
            method: method.to_string(),
            size: setup.size,
            q: setup.q,
            window: (TAIL_START, n_max),
            slope: estimate_rate(curve, (TAIL_START, n_max))
                .ok()
                .map(|r| r.slope),
        })
        .collect()
}

fn schrodinger(a: SchrodingerArgs) -> Result<(), Failure> {
    check(a.n_max >= 1, "--n-max must be at least 1")?;
    check(!a.q.is_empty(), "at least one --q is required")?;
    let qs = dedup(a.q);
    let methods = match a.method {
        MethodArg::Krylov => vec![Method::ResolventKrylov],
        MethodArg::Euler => vec![Method::ImplicitEuler],
        MethodArg::Both => vec![Method::ResolventKrylov, Method::ImplicitEuler],
    };
    let ns: Vec<usize> = (1..=a.n_max).collect();
    let mut jobs = Vec::new();
    for &m in &methods {
        for &q in &qs {
            let mut s = ProblemSetup::schrodinger(a.grid_size, q);
            s.tau = a.tau;
            s.gamma = a.gamma;
            jobs.push((s, m));
        }
    }
    let curves = run_jobs(&jobs, &ns)?;

    let mut manifest = RunManifest::new("schrodinger");
    manifest.problem = Some("schrodinger".into());
    manifest.sizes = vec![a.grid_size];
    manifest.tau = Some(a.tau);
    manifest.gamma = Some(a.gamma);
    manifest.q = qs;
    manifest.n = ns;
    manifest.methods = methods.iter().map(ToString::to_string).collect();
    manifest.solver = Some("direct".into());
    let doc = Document {
        manifest,
        summary: Summary {
            rates: fits(&jobs, &curves, a.n_max),
            grid_independence: Vec::new(),
        },
        records: None,
    };
    let rows = curves.iter().flatten().map(Row::from).collect();
    emit(doc, rows, a.out.format, a.out.output.as_deref())?;
    Ok(())
}

fn wave_fd(a: WaveArgs) -> Result<(), Failure> {
    check(a.n_max >= 1, "--n-max must be at least 1")?;
    check(!a.q.is_empty(), "at least one --q is required")?;
    check(!a.grid.is_empty(), "at least one --grid is required")?;
    check(
        a.cg_tol > 0.0 && a.cg_max_iter > 0,
        "--cg-tol and --cg-max-iter must be positive",
    )?;
    let qs = dedup(a.q);
    let grids = dedup(a.grid);
    let solver = match a.solver {
        SolverArg::Dst => SolverConfig::default(),
        SolverArg::Cg => SolverConfig::cg(a.cg_tol, a.cg_max_iter),
    };
    let ns: Vec<usize> = (1..=a.n_max).collect();
    let mut jobs = Vec::new();
    for &q in &qs {
        for &d in &grids {
            let mut s = ProblemSetup::wave_fd(d, q);
            s.tau = a.tau;
            s.gamma = a.gamma;
            s.solver = solver;
            jobs.push((s, Method::ResolventKrylov));
        }
    }
    let curves = run_jobs(&jobs, &ns)?;

    let mut ratios = Vec::new();
    if grids.len() >= 2 && a.n_max >= TAIL_START {
        for (i, &q) in qs.iter().enumerate() {
            let tails: Vec<Vec<ConvergenceRecord>> = curves[i * grids.len()..(i + 1) * grids.len()]
                .iter()
                .map(|c| c.iter().filter(|r| r.n >= TAIL_START).copied().collect())
                .collect();
            let ratio = grid_independence_ratio(&tails);
            eprintln!("grid independence q={q} grids {grids:?} n>={TAIL_START}: ratio {ratio:.4}");
            ratios.push(GridRatio {
                q,
                sizes: grids.clone(),
                n_min: TAIL_START,
                ratio,
            });
        }
    }

    let mut manifest = RunManifest::new("wave-fd");
    manifest.problem = Some("wave_fd".into());
    manifest.sizes = grids;
    manifest.tau = Some(a.tau);
    manifest.gamma = Some(a.gamma);
    manifest.q = qs;
    manifest.n = ns;
    manifest.methods = vec![Method::ResolventKrylov.to_string()];
    manifest.solver = Some(solver.method.name().into());
    if a.solver == SolverArg::Cg {
        manifest.cg_tolerance = Some(a.cg_tol);
        manifest.cg_max_iterations = Some(a.cg_max_iter);
    }
    let doc = Document {
        manifest,
        summary: Summary {
            rates: fits(&jobs, &curves, a.n_max),
            grid_independence: ratios,
        },
        records: None,
    };
    let rows = curves.iter().flatten().map(Row::from).collect();
    emit(doc, rows, a.out.format, a.out.output.as_deref())?;
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let suite = match a.suite {
        SuiteArg::Exactness => Suite::Exactness,
        SuiteArg::Phi => Suite::Phi,
        SuiteArg::Smoothing => Suite::Smoothing,
        SuiteArg::Dissipativity => Suite::Dissipativity,
        SuiteArg::All => Suite::All,
    };
    let reports = run_suite(suite, a.seed)?;
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "{} of {} properties passed (suite {suite}, seed {})",
        reports.len() - failed,
        reports.len(),
        a.seed
    );
    if failed > 0 {
        return Err(Failure::Property(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Schrodinger(a) => schrodinger(a),
        Command::WaveFd(a) => wave_fd(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Solver(m) => eprintln!("solver failure: {m}"),
                Failure::Property(k) => eprintln!("{k} properties failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
