//! `dqa`: dual quaternion solvers and the Laplacian benchmark from the shell.
//!
//! Exit codes: 0 ok, 2 bad input or configuration, 3 infeasible calibration,
//! 4 numerically singular.

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dqa::bench::{run_bench, to_csv, BenchConfig, REFERENCE_ROWS};
use dqa::eigen::{Backend, RqiConfig};
use dqa::handeye::{
    axxb_solve_with_tol, axyb_solve_with_tol, diagonalize, dq_to_pose, Pose, PoseRecord, CONSISTENCY_TOL,
};
use dqa::solve::{solve_dq_adjoint, solve_dq_baseline, Method, SolveReport};
use dqa::{DQMatrix, DQVector, DualComplex, DualQuaternion, Error};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "dqa", version, about = "Dual quaternion linear algebra through the dual complex adjoint")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Diagonalize one dual quaternion as q λ q*.
    Diagonalize {
        /// Eight coefficients `w x y z wε xε yε zε`, or a JSON array; read from stdin when absent.
        #[arg(allow_negative_numbers = true)]
        values: Vec<String>,
    },
    /// Hand-eye calibration from a JSON pose file.
    Handeye {
        #[arg(value_enum)]
        mode: HandeyeMode,
        /// JSON array of `{"R", "t"}` or `{"dq"}` records, taken as pairs `(a_k, b_k)`.
        poses: PathBuf,
        /// Relative consistency tolerance.
        #[arg(long, default_value_t = CONSISTENCY_TOL)]
        tol: f64,
    },
    /// Laplacian RQI benchmark; CSV on stdout.
    Bench(BenchArgs),
    /// Solve `Q x = y` for a dual quaternion matrix.
    Solve {
        /// JSON matrix: rows of `[w, x, y, z, wε, xε, yε, zε]` entries.
        matrix: PathBuf,
        /// JSON vector of 8-real entries.
        rhs: PathBuf,
        #[arg(long, value_enum, default_value_t = BackendArg::Adjoint)]
        backend: BackendArg,
        /// Factorization on the adjoint route.
        #[arg(long, value_enum, default_value_t = MethodArg::Lu)]
        method: MethodArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HandeyeMode {
    Axxb,
    Axyb,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum BackendArg {
    Baseline,
    Adjoint,
    Both,
}

impl BackendArg {
    fn backends(self) -> Vec<Backend> {
        match self {
            BackendArg::Baseline => vec![Backend::Baseline],
            BackendArg::Adjoint => vec![Backend::Adjoint],
            BackendArg::Both => vec![Backend::Baseline, Backend::Adjoint],
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Lu,
    Cholesky,
}

#[derive(Args)]
struct BenchArgs {
    /// Vertex count; without it every reference setting runs.
    #[arg(long)]
    n: Option<usize>,
    /// Sparsities for `--n`, comma separated.
    #[arg(long, value_delimiter = ',')]
    s: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-7)]
    delta: f64,
    #[arg(long, default_value_t = 50)]
    kmax: usize,
    #[arg(long, default_value_t = 20)]
    power_iters: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Both)]
    backend: BackendArg,
}

enum CliError {
    Input(String),
    Solver(Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Solver(e) => match e {
                Error::C2Degenerate { .. }
                | Error::RealAxis
                | Error::Inconsistent { .. }
                | Error::InvariantMismatch { .. }
                | Error::Underdetermined { .. }
                | Error::DegenerateStart => 3,
                Error::UndefinedDivision
                | Error::Singular
                | Error::NegativeSqrt
                | Error::SingularPivot { .. }
                | Error::NotPositiveDefinite { .. } => 4,
                _ => 2,
            },
        }
    }

    fn reason(&self) -> &'static str {
        match self {
            CliError::Input(_) => "invalid-input",
            CliError::Solver(e) => e.reason(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Solver(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Diagonalize { values } => cmd_diagonalize(&values, cli.json),
        Cmd::Handeye { mode, poses, tol } => cmd_handeye(mode, &poses, tol, cli.json),
        Cmd::Bench(args) => cmd_bench(&args, cli.json),
        Cmd::Solve {
            matrix,
            rhs,
            backend,
            method,
        } => cmd_solve(&matrix, &rhs, backend, method, cli.json),
    };
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                eprintln!("{}", json!({ "error": e.reason(), "message": e.to_string() }));
            } else {
                eprintln!("error[{}]: {e}", e.reason());
            }
            ExitCode::from(e.code())
        }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("report serializes");
    s.push('\n');
    s
}

fn complex_pair(z: DualComplex) -> [[f64; 2]; 2] {
    [[z.st.re, z.st.im], [z.du.re, z.du.im]]
}

fn parse_dq(text: &str) -> CliResult<DualQuaternion> {
    let text = text.trim();
    if text.starts_with('[') || text.starts_with('{') {
        let rec: PoseRecord = if text.starts_with('[') {
            PoseRecord::Dq { dq: parse_json(text, "dual quaternion")? }
        } else {
            parse_json(text, "dual quaternion")?
        };
        return Ok(rec.to_dq()?);
    }
    let nums: Vec<f64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| CliError::Input(format!("not a number: {s:?}"))))
        .collect::<CliResult<_>>()?;
    let arr: [f64; 8] = nums
        .try_into()
        .map_err(|v: Vec<f64>| CliError::Input(format!("expected 8 coefficients, got {}", v.len())))?;
    if arr.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Input("coefficients must be finite".into()));
    }
    Ok(DualQuaternion::from_array(arr))
}

fn cmd_diagonalize(values: &[String], json: bool) -> CliResult<String> {
    let text = if values.is_empty() {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        values.join(" ")
    };
    let a = parse_dq(&text)?;
    let d = diagonalize(a);
    let residual = (d.reconstruct() - a).mag2();
    if json {
        return Ok(to_json(&json!({
            "input": a.to_array(),
            "q": d.q.to_array(),
            "lambda": complex_pair(d.lambda),
            "residual": residual,
        })));
    }
    Ok(format!("q      = {}\nlambda = {}\nresidual ‖qλq* - a‖ = {residual:.3e}\n", d.q, d.lambda))
}

fn load_pairs(path: &Path) -> CliResult<Vec<(DualQuaternion, DualQuaternion)>> {
    let recs: Vec<PoseRecord> = parse_json(&read_file(path)?, "pose file")?;
    if !recs.len().is_multiple_of(2) {
        return Err(CliError::Input(format!("pose file holds {} records; expected (a, b) pairs", recs.len())));
    }
    let dqs = recs.iter().map(PoseRecord::to_dq).collect::<dqa::Result<Vec<_>>>()?;
    Ok(dqs.chunks(2).map(|p| (p[0], p[1])).collect())
}

/// `a q = q b` needs `a` and `b` to share the eigenvalue `λ`, up to conjugation:
/// the same rotation angle and the same translation along the screw axis.
fn check_similar(pairs: &[(DualQuaternion, DualQuaternion)], tol: f64) -> CliResult<()> {
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let (la, lb) = (diagonalize(a).lambda, diagonalize(b).lambda);
        let lb_bar = DualComplex::new(lb.st.conj(), lb.du.conj());
        let gap = |x: DualComplex, y: DualComplex| (x.st - y.st).norm().max((x.du - y.du).norm());
        let limit = tol * a.mag2().max(b.mag2()).max(1.0);
        if gap(la, lb).min(gap(la, lb_bar)) > limit {
            return Err(Error::InvariantMismatch {
                detail: format!("pair {k}: eigenvalues {la} and {lb}"),
            }
            .into());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Solution {
    dq: [f64; 8],
    pose: Option<Pose>,
}

impl Solution {
    fn of(q: DualQuaternion) -> Self {
        Self {
            dq: q.to_array(),
            pose: dq_to_pose(q).ok(),
        }
    }
}

fn fmt_solution(name: &str, q: DualQuaternion) -> String {
    let mut s = format!("{name} = {q}\n");
    if let Ok(p) = dq_to_pose(q) {
        for (i, row) in p.rotation.iter().enumerate() {
            let t = if i == 1 { format!("   t = {:>9.5}", p.translation[i]) } else { format!("       {:>9.5}", p.translation[i]) };
            s.push_str(&format!("  [{:>9.5} {:>9.5} {:>9.5}]{t}\n", row[0], row[1], row[2]));
        }
    }
    s
}

fn fmt_residuals(res: &[f64]) -> String {
    res.iter().enumerate().map(|(k, r)| format!("residual pair {k}: {r:.3e}\n")).collect()
}

fn cmd_handeye(mode: HandeyeMode, path: &Path, tol: f64, json: bool) -> CliResult<String> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Input(format!("tolerance must be positive, got {tol}")));
    }
    let pairs = load_pairs(path)?;
    if pairs.len() < 2 {
        return Err(Error::Underdetermined {
            pairs: pairs.len(),
            needed: 2,
        }
        .into());
    }
    match mode {
        HandeyeMode::Axxb => {
            check_similar(&pairs, tol)?;
            let (a, b) = pairs[0];
            let (c, d) = pairs[1];
            let sol = axxb_solve_with_tol(a, b, c, d, tol)?;
            let q = sol.q_plus;
            let residuals: Vec<f64> = pairs.iter().map(|&(a, b)| (a * q - q * b).mag2()).collect();
            let scale = pairs.iter().fold(1.0f64, |m, &(a, b)| m.max(a.mag2()).max(b.mag2()));
            let worst = residuals.iter().cloned().fold(0.0, f64::max);
            if !(worst <= tol * scale) {
                return Err(Error::Inconsistent { residual: worst }.into());
            }
            if json {
                return Ok(to_json(&json!({
                    "mode": "axxb",
                    "solutions": [Solution::of(sol.q_plus), Solution::of(sol.q_minus)],
                    "residuals": residuals,
                })));
            }
            Ok(format!(
                "{}{}{}",
                fmt_solution("q+", sol.q_plus),
                fmt_solution("q-", sol.q_minus),
                fmt_residuals(&residuals)
            ))
        }
        HandeyeMode::Axyb => {
            let sol = axyb_solve_with_tol(&pairs, tol)?;
            if json {
                return Ok(to_json(&json!({
                    "mode": "axyb",
                    "q": Solution::of(sol.q),
                    "p": Solution::of(sol.p),
                    "residuals": sol.residuals,
                })));
            }
            Ok(format!(
                "{}{}{}",
                fmt_solution("q", sol.q),
                fmt_solution("p", sol.p),
                fmt_residuals(&sol.residuals)
            ))
        }
    }
}

fn cmd_bench(args: &BenchArgs, json: bool) -> CliResult<String> {
    let sizes = match args.n {
        Some(n) if args.s.is_empty() => return Err(CliError::Input(format!("--n {n} needs at least one --s value"))),
        Some(n) => args.s.iter().map(|&s| (n, s)).collect(),
        None if !args.s.is_empty() => return Err(CliError::Input("--s needs --n".into())),
        None => REFERENCE_ROWS.to_vec(),
    };
    let config = BenchConfig {
        sizes,
        trials: args.trials,
        seed: args.seed,
        backends: args.backend.backends(),
        rqi: RqiConfig {
            k_max: args.kmax,
            delta: args.delta,
            power_iters: args.power_iters,
            seed: args.seed,
        },
    };
    let rows = run_bench(&config)?;
    Ok(if json { to_json(&rows) } else { to_csv(&rows) })
}

#[derive(Serialize)]
struct BackendReport<'a> {
    backend: &'static str,
    #[serde(flatten)]
    report: &'a SolveReport,
}

fn cmd_solve(matrix: &Path, rhs: &Path, backend: BackendArg, method: MethodArg, json: bool) -> CliResult<String> {
    let q: DQMatrix = parse_json(&read_file(matrix)?, "matrix file")?;
    let y: DQVector = parse_json(&read_file(rhs)?, "rhs file")?;
    if backend == BackendArg::Baseline && method == MethodArg::Cholesky {
        return Err(CliError::Input("the baseline route factors with LU only".into()));
    }
    let method = match method {
        MethodArg::Lu => Method::Lu,
        MethodArg::Cholesky => Method::Cholesky,
    };
    let mut reports = Vec::new();
    for b in backend.backends() {
        let r = match b {
            Backend::Baseline => solve_dq_baseline(&q, &y)?,
            Backend::Adjoint => solve_dq_adjoint(&q, &y, method)?,
        };
        reports.push((b, r));
    }
    let agreement = match reports.as_slice() {
        [(_, a), (_, b)] => Some(a.solution.max_abs_diff(&b.solution)),
        _ => None,
    };
    let solution = &reports.last().expect("one backend ran").1.solution;
    if json {
        let rs: Vec<BackendReport> = reports
            .iter()
            .map(|(b, r)| BackendReport {
                backend: b.name(),
                report: r,
            })
            .collect();
        return Ok(to_json(&json!({ "solution": solution, "reports": rs, "agreement": agreement })));
    }
    let mut s = String::new();
    for (i, x) in solution.iter().enumerate() {
        s.push_str(&format!("x[{i}] = {x}\n"));
    }
    for (b, r) in &reports {
        s.push_str(&format!(
            "{}: residual {:.3e}, {} flops, {} factorization(s), {:.3e} s\n",
            b.name(),
            r.residual.unwrap_or(f64::NAN),
            r.flops.total(),
            r.factorizations,
            r.wall_time
        ));
    }
    if let Some(d) = agreement {
        s.push_str(&format!("max difference between backends: {d:.3e}\n"));
    }
    Ok(s)
}
