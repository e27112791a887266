//! Batch command-line surface.
//!
//! Every subcommand writes exact decimal integers or reduced fractions; no
//! floating point reaches any output format. Exit statuses: 0 success,
//! 1 verification failure, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{format_poly, BiSeries, Rat, Var};
use crate::combinatorics::{four_binomial, row_len, row_sum_closed, t_closed, triangle_closed, Triangle};
use crate::gf::{self, CheckReport, GfContext};
use crate::trees::{self, figure_tree, TernaryTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Range of `n` used by the binomial-identity checks.
pub const BINOMIAL_CHECK_NMAX: u64 = 200;
/// Largest `n` at which powers `t^l`, `l <= 4`, of the reversion are checked.
pub const LAGRANGE_POWER_NMAX: usize = 12;
pub const DEFAULT_ORACLE_NMAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print T(n,k) for n = 0..nmax (default 6).
    Triangle,
    /// Print the triangle as "index value" lines, row-major (default nmax 6).
    Bfile,
    /// Print the tau-expansion of Xi (default orders t=3, U=3).
    Xi,
    /// Print the even part Xi and odd part d of the two factors (default orders t=4, U=3).
    Factors,
    /// Run every identity check (default orders t=24, U=12, x=20, u=10).
    Verify {
        /// Perturb the named check; it must then fail.
        #[arg(long, hide = true)]
        inject: Option<String>,
    },
    /// Compare the brute-force triangle with the closed form (default nmax 6).
    Oracle,
    /// Render a tree given in preorder "N..." serialization as Graphviz DOT.
    Dot {
        /// `N` = node followed by its left, middle and right slots, `.` = empty.
        /// Defaults to the 17-node example tree.
        tree: Option<String>,
    },
}

#[derive(Debug, Clone, Parser)]
#[command(name = "ternary-gf", version, about = "Ternary trees by nodes and middle edges, in exact arithmetic")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Largest node count.
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// Truncation order in t (or tau).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub order_t: Option<u32>,
    /// Truncation order in U (and in u for the x-side checks).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub order_u: Option<u32>,
    /// Truncation order in x.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub order_x: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to PATH instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn order_t(&self, default: usize) -> usize {
        self.order_t.map_or(default, |v| v as usize)
    }

    fn order_u(&self, default: usize) -> usize {
        self.order_u.map_or(default, |v| v as usize)
    }

    fn order_x(&self, default: usize) -> usize {
        self.order_x.map_or(default, |v| v as usize)
    }
}

/// Result of a subcommand: exit status and the text to emit.
struct Outcome {
    status: i32,
    body: String,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { status: EXIT_OK, body }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return status;
        }
    };
    run(&cfg, out, err)
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match &cfg.command {
        Command::Triangle => Ok(run_triangle(cfg)),
        Command::Bfile => Ok(run_bfile(cfg)),
        Command::Xi => run_xi(cfg),
        Command::Factors => Ok(run_factors(cfg)),
        Command::Verify { inject } => Ok(run_verify(cfg, inject.as_deref())),
        Command::Oracle => run_oracle(cfg),
        Command::Dot { tree } => run_dot(tree.as_deref()),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => out.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.status
}

fn triangle_json(tri: &Triangle) -> Value {
    let entries: Vec<Value> = tri
        .entries()
        .map(|(n, k, v)| json!({"n": n, "k": k, "value": v.to_string()}))
        .collect();
    json!({"nmax": tri.nmax(), "entries": entries})
}

fn run_triangle(cfg: &RunConfig) -> Outcome {
    let tri = triangle_closed(cfg.nmax.unwrap_or(6));
    let body = match cfg.format {
        Format::Text => tri.to_string(),
        Format::Csv => tri.entries().map(|(n, k, v)| format!("{n},{k},{v}\n")).collect(),
        Format::Json => format!("{:#}\n", triangle_json(&tri)),
    };
    Outcome::ok(body)
}

pub const BFILE_HEADER: &str = "# T(n,k) = number of ternary trees with n nodes and k middle edges.\n\
# Index runs from 0 over rows n = 0,1,2,... with k ascending; row 0 is k = 0, row n >= 1 is k = 0..n-1.\n";

fn run_bfile(cfg: &RunConfig) -> Outcome {
    let tri = triangle_closed(cfg.nmax.unwrap_or(6));
    let body = match cfg.format {
        Format::Json => {
            let lines: Vec<Value> = tri
                .entries()
                .enumerate()
                .map(|(idx, (n, k, v))| json!({"index": idx, "n": n, "k": k, "value": v.to_string()}))
                .collect();
            format!("{:#}\n", json!({"entries": lines}))
        }
        Format::Csv => tri
            .entries()
            .enumerate()
            .map(|(idx, (_, _, v))| format!("{idx},{v}\n"))
            .collect(),
        Format::Text => {
            let mut s = String::from(BFILE_HEADER);
            for (idx, (_, _, v)) in tri.entries().enumerate() {
                writeln!(s, "{idx} {v}").unwrap();
            }
            s
        }
    };
    Outcome::ok(body)
}

fn rat_strings(row: &[Rat]) -> Vec<String> {
    row.iter().map(ToString::to_string).collect()
}

/// Drops trailing zero coefficients, keeping at least one entry.
fn trim(row: &[Rat]) -> &[Rat] {
    let len = row.iter().rposition(|c| !c.is_zero()).map_or(1, |p| p + 1);
    &row[..len]
}

fn run_xi(cfg: &RunConfig) -> Result<Outcome, String> {
    let (nt, nu) = (cfg.order_t(3), cfg.order_u(3));
    let ctx = GfContext::new(nt, nu);
    let xt = gf::xi_in_tau(ctx.xi_series(), nt).map_err(|e| e.to_string())?;
    let body = match cfg.format {
        Format::Text => {
            let mut s = format!("# Xi in tau = t/u with u = 1 + U, coefficients of U^0..U^{nu}\n");
            for n in 0..=nt {
                writeln!(s, "[tau^{n}] {}", format_poly(xt.row(n), Var::Shifted)).unwrap();
            }
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for n in 0..=nt {
                for (j, c) in xt.row(n).iter().enumerate() {
                    writeln!(s, "{n},{j},{c}").unwrap();
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = (0..=nt)
                .map(|n| {
                    json!({
                        "n": n,
                        "coeffs": rat_strings(trim(xt.row(n))),
                        "u_degree": xt.row_degrees()[n],
                    })
                })
                .collect();
            format!("{:#}\n", json!({"grid": format!("({nt},{nu})"), "rows": rows}))
        }
    };
    Ok(Outcome::ok(body))
}

fn run_factors(cfg: &RunConfig) -> Outcome {
    let (nt, nu) = (cfg.order_t(4), cfg.order_u(3));
    let ctx = GfContext::new(nt, nu);
    let check = ctx.factorization_check();
    let (xi, d) = (ctx.xi_series(), ctx.d());
    let body = match cfg.format {
        Format::Text => {
            let mut s = format!(
                "# F- = Xi - sqrt(t) d, F+ = Xi + sqrt(t) d, u = 1 + U, grid ({nt},{nu})\n\
                 # F- * F+ = 1/(1-t): {}\n",
                if check.passed { "pass" } else { "FAIL" }
            );
            for i in 0..=nt {
                writeln!(s, "[t^{i}] Xi: {}", format_poly(xi.row(i), Var::Shifted)).unwrap();
                writeln!(s, "[t^{i}] d: {}", format_poly(d.row(i), Var::Shifted)).unwrap();
            }
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for (name, series) in [("xi", xi), ("d", d)] {
                for i in 0..=nt {
                    for (j, c) in series.row(i).iter().enumerate() {
                        writeln!(s, "{name},{i},{j},{c}").unwrap();
                    }
                }
            }
            s
        }
        Format::Json => {
            let rows = |b: &BiSeries| (0..=nt).map(|i| rat_strings(b.row(i))).collect::<Vec<_>>();
            format!(
                "{:#}\n",
                json!({
                    "grid": format!("({nt},{nu})"),
                    "xi": rows(xi),
                    "d": rows(d),
                    "factorization": if check.passed { "pass" } else { "fail" },
                })
            )
        }
    };
    Outcome {
        status: if check.passed { EXIT_OK } else { EXIT_FAILED },
        body,
    }
}

fn integer_report(name: &str, grid: (usize, usize), first: Option<(usize, usize, BigInt)>) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        grid,
        passed: first.is_none(),
        first_offending: first.map(|(i, j, v)| (i, j, Rat::from_integer(v))),
    }
}

fn bump(series: &BiSeries) -> BiSeries {
    let mut s = series.clone();
    let (i, j) = (s.ord1().min(1), 0);
    let v = s.at(i, j) + Rat::one();
    s.set(i, j, v);
    s
}

fn oracle_check(nmax: usize, perturb: bool) -> CheckReport {
    let grid = (nmax, row_len(nmax) - 1);
    let oracle = match trees::triangle_oracle(nmax) {
        Ok(t) => t,
        Err(_) => return integer_report("oracle", grid, Some((nmax, 0, BigInt::zero()))),
    };
    let mut closed = triangle_closed(nmax);
    if perturb {
        let mut rows = closed.rows().to_vec();
        rows[nmax][0] += 1;
        closed = Triangle::from_rows(rows);
    }
    let first = oracle.diff(&closed).into_iter().next().map(|(n, k, a, b)| (n, k, a - b));
    integer_report("oracle", grid, first)
}

fn four_binomial_check(perturb: bool) -> CheckReport {
    let first = (1..=BINOMIAL_CHECK_NMAX)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .find_map(|(n, k)| {
            let mut diff = four_binomial(n, k) - t_closed(n, k);
            if perturb && (n, k) == (4, 1) {
                diff += 1;
            }
            (!diff.is_zero()).then_some((n as usize, k as usize, diff))
        });
    let n = BINOMIAL_CHECK_NMAX as usize;
    integer_report("four_binomial", (n, n), first)
}

fn row_sum_check(perturb: bool) -> CheckReport {
    let first = (1..=BINOMIAL_CHECK_NMAX).find_map(|n| {
        let sum: BigInt = (0..n).map(|k| t_closed(n, k)).sum();
        let mut diff = sum - row_sum_closed(n);
        if perturb && n == 5 {
            diff += 1;
        }
        (!diff.is_zero()).then_some((n as usize, 0, diff))
    });
    integer_report("row_sums", (BINOMIAL_CHECK_NMAX as usize, 0), first)
}

/// Every identity check at the configured orders, in a fixed order.
pub fn verification_reports(cfg: &RunConfig, inject: Option<&str>) -> Vec<CheckReport> {
    let (nt, nu) = (cfg.order_t(gf::DEFAULT_ORDER_T), cfg.order_u(gf::DEFAULT_ORDER_SHIFTED));
    let (nx, nux) = (cfg.order_x(gf::DEFAULT_ORDER_X), cfg.order_u(gf::DEFAULT_ORDER_U));
    let oracle_nmax = cfg.nmax.unwrap_or(DEFAULT_ORACLE_NMAX);
    let hit = |name: &str| inject == Some(name);

    let ctx = GfContext::new(nt, nu);
    let ctx = &ctx;
    let tasks: Vec<Box<dyn Fn() -> CheckReport + Sync + '_>> = vec![
        Box::new(move || {
            if hit("cubic_residual") {
                ctx.cubic_residual_check_with(&bump(ctx.r1()))
            } else {
                ctx.cubic_residual_check()
            }
        }),
        Box::new(move || {
            if hit("vieta_product") {
                ctx.vieta_product_check_with(&-ctx.inv_root_product())
            } else {
                ctx.vieta_product_check()
            }
        }),
        Box::new(move || {
            let (m, p) = ctx.factor_pair();
            if hit("factorization") {
                ctx.factorization_check_with(&m, &m)
            } else {
                ctx.factorization_check_with(&m, &p)
            }
        }),
        Box::new(move || {
            let xt = gf::xi_in_tau(ctx.xi_series(), nt).expect("tau order equals t order");
            gf::xi_golden_check(&if hit("xi_golden") { bump(&xt) } else { xt })
        }),
        Box::new(move || {
            let r1 = gf::r1_tu(nx, nux);
            gf::compose_g_check_with(&if hit("compose_g") { bump(&r1) } else { r1 }, nx, nux)
        }),
        Box::new(move || {
            let mut rep = gf::inverse_pair_check(nx, nux);
            if hit("inverse_pair") {
                rep = CheckReport::from_residual("inverse_pair", &bump(&BiSeries::zero((Var::X, Var::U), nx, nux)));
            }
            rep
        }),
        Box::new(move || {
            let mut rep = gf::closed_form_check(nx, nux);
            if hit("closed_form") {
                rep = CheckReport::from_residual("closed_form", &bump(&BiSeries::zero((Var::X, Var::U), nx, nux)));
            }
            rep
        }),
        Box::new(move || {
            let mut rep = gf::lagrange_check(nx, nux, 1);
            if rep.passed {
                let small = nx.min(LAGRANGE_POWER_NMAX);
                rep = gf::lagrange_check(small, nux, 4);
                rep.grid = (nx, nux);
            }
            if hit("lagrange") {
                rep = CheckReport::from_residual("lagrange", &bump(&BiSeries::zero((Var::X, Var::U), nx, nux)));
            }
            rep
        }),
        Box::new(move || oracle_check(oracle_nmax, hit("oracle"))),
        Box::new(move || four_binomial_check(hit("four_binomial"))),
        Box::new(move || row_sum_check(hit("row_sums"))),
    ];
    std::thread::scope(|scope| {
        let handles: Vec<_> = tasks.iter().map(|task| scope.spawn(task)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification check panicked"))
            .collect()
    })
}

pub const CHECK_NAMES: [&str; 11] = [
    "cubic_residual",
    "vieta_product",
    "factorization",
    "xi_golden",
    "compose_g",
    "inverse_pair",
    "closed_form",
    "lagrange",
    "oracle",
    "four_binomial",
    "row_sums",
];

fn report_json(r: &CheckReport) -> Value {
    json!({
        "name": r.name,
        "grid": r.grid_string(),
        "status": if r.passed { "pass" } else { "fail" },
        "first_offending": r.first_offending.as_ref().map(|(i, j, v)| json!({"i": i, "j": j, "residual": v.to_string()})),
    })
}

fn run_verify(cfg: &RunConfig, inject: Option<&str>) -> Outcome {
    let reports = verification_reports(cfg, inject);
    let all = reports.iter().all(|r| r.passed);
    let body = match cfg.format {
        Format::Json => {
            let checks: Vec<Value> = reports.iter().map(report_json).collect();
            format!("{:#}\n", json!({"passed": all, "checks": checks}))
        }
        Format::Csv => {
            let mut s = String::new();
            for r in &reports {
                let (i, j, v) = match &r.first_offending {
                    Some((i, j, v)) => (i.to_string(), j.to_string(), v.to_string()),
                    None => Default::default(),
                };
                let status = if r.passed { "pass" } else { "fail" };
                writeln!(s, "{},\"{}\",{status},{i},{j},{v}", r.name, r.grid_string()).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.passed { "pass" } else { "FAIL" };
                write!(s, "{status:<5} {:<15} {}", r.name, r.grid_string()).unwrap();
                if let Some((i, j, v)) = &r.first_offending {
                    write!(s, "  first offending coefficient ({i},{j}): residual {v}").unwrap();
                }
                s.push('\n');
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            writeln!(s, "{passed}/{} checks passed", reports.len()).unwrap();
            s
        }
    };
    Outcome {
        status: if all { EXIT_OK } else { EXIT_FAILED },
        body,
    }
}

fn run_oracle(cfg: &RunConfig) -> Result<Outcome, String> {
    let nmax = cfg.nmax.unwrap_or(6);
    let oracle = trees::triangle_oracle(nmax).map_err(|e| e.to_string())?;
    let closed = triangle_closed(nmax);
    let diff = oracle.diff(&closed);
    let body = match cfg.format {
        Format::Json => {
            let d: Vec<Value> = diff
                .iter()
                .map(|(n, k, a, b)| json!({"n": n, "k": k, "oracle": a.to_string(), "closed": b.to_string()}))
                .collect();
            format!(
                "{:#}\n",
                json!({"nmax": nmax, "identical": diff.is_empty(), "entries": oracle.entries().count(), "diff": d})
            )
        }
        Format::Csv => diff.iter().map(|(n, k, a, b)| format!("{n},{k},{a},{b}\n")).collect(),
        Format::Text => {
            let mut s = String::new();
            if diff.is_empty() {
                writeln!(
                    s,
                    "identical: {} entries for n = 0..{nmax}",
                    oracle.entries().count()
                )
                .unwrap();
            } else {
                writeln!(s, "n k oracle closed").unwrap();
                for (n, k, a, b) in &diff {
                    writeln!(s, "{n} {k} {a} {b}").unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome {
        status: if diff.is_empty() { EXIT_OK } else { EXIT_FAILED },
        body,
    })
}

fn run_dot(text: Option<&str>) -> Result<Outcome, String> {
    let tree = match text {
        Some(s) => TernaryTree::parse(s).map_err(|e| e.to_string())?,
        None => figure_tree(),
    };
    Ok(Outcome::ok(trees::to_dot(&tree)))
}

/// Parses a reduced fraction `p/q` or integer `p` as printed by this tool.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (p.parse().ok()?, q.parse().ok()?);
            (!q.is_zero()).then(|| Rat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// `(5 + 4U)/8`-style rendering of a `U`-polynomial over a common
/// denominator.
pub fn common_denominator_poly(coeffs: &[Rat]) -> String {
    let coeffs = trim(coeffs);
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let scaled: Vec<Rat> = coeffs
        .iter()
        .map(|c| Rat::from_integer((c * Rat::from_integer(den.clone())).to_integer()))
        .collect();
    let body = format_poly(&scaled, Var::Shifted).replace('*', "");
    if den.is_one() {
        body
    } else if scaled.iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("({body})/{den}")
    } else {
        format!("{body}/{den}")
    }
}
