//! Acceptance gate: one line per criterion, exit status 1 if any fails.
//!
//! Every comparison is exact; the only tolerances are the wall-clock
//! limits listed next to each criterion.

mod common;

use std::fmt::Debug;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use ternary_gf::algebra::{rat, Rat};
use ternary_gf::cli;
use ternary_gf::combinatorics::{four_binomial, lagrange_tpow_coeff, row_len, row_sum_closed, t_closed};
use ternary_gf::gf::{self, GfContext};
use ternary_gf::trees;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

const KNOWN_TABLE: [&[u64]; 7] = [
    &[1],
    &[1],
    &[2, 1],
    &[5, 6, 1],
    &[14, 28, 12, 1],
    &[42, 120, 90, 20, 1],
    &[132, 495, 550, 220, 30, 1],
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_output(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ternary-gf").chain(args.iter().copied());
    let code = cli::run_with(argv, &mut out, &mut err);
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    String::from_utf8(out).map_err(|e| e.to_string())
}

/// 1. `triangle --nmax 6` reproduces the displayed table.
fn table_reproduction() -> Outcome {
    let text = cli_output(&["triangle", "--nmax", "6", "--format", "text"])?;
    let rows: Vec<Vec<u64>> = text
        .lines()
        .filter_map(|l| l.split_once('|'))
        .filter(|(n, _)| n.trim().parse::<usize>().is_ok())
        .map(|(_, vals)| vals.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect();
    let want: Vec<Vec<u64>> = KNOWN_TABLE.iter().map(|r| r.to_vec()).collect();
    ensure(rows == want, || format!("text table {rows:?} != {want:?}"))?;

    let csv = cli_output(&["triangle", "--nmax", "6", "--format", "csv"])?;
    let mut count = 0;
    for line in csv.lines() {
        let f: Vec<u64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let expected = KNOWN_TABLE[f[0] as usize][f[1] as usize];
        ensure(f[2] == expected, || format!("csv line {line} != {expected}"))?;
        count += 1;
    }
    ensure(count == 22, || format!("{count} csv entries"))?;
    ensure(csv.lines().any(|l| l == "4,1,28") && csv.lines().any(|l| l == "6,2,550"), || {
        "T(4,1)=28 or T(6,2)=550 missing".into()
    })?;
    Ok(format!("{count} entries exact"))
}

/// 2. Exhaustive enumeration for n <= 8 against the closed form.
fn oracle_equivalence() -> Outcome {
    let tri = trees::triangle_oracle(8).map_err(|e| e.to_string())?;
    let totals: Vec<BigInt> = tri.rows().iter().map(|r| r.iter().sum()).collect();
    let expected_totals = [1u64, 1, 3, 12, 55, 273, 1428, 7752, 43263];
    for (n, want) in expected_totals.iter().enumerate() {
        ensure(totals[n] == BigInt::from(*want), || format!("row {n} total {} != {want}", totals[n]))?;
    }
    for n in 0..=8 {
        for k in 0..row_len(n) {
            let closed = t_closed(n as u64, k as u64);
            ensure(tri.get(n, k) == closed, || format!("T({n},{k}): oracle {} != closed {closed}", tri.get(n, k)))?;
        }
    }
    let sum: BigInt = totals.iter().sum();
    Ok(format!("{sum} trees enumerated"))
}

/// 3. solve_g, compose_g_check and extract_r1_series agree with t_closed
///    for n <= 20 at (Nx, Nu) = (20, 10).
fn functional_equation() -> Outcome {
    let (nx, nu) = (20, 10);
    let g = gf::solve_g(nx, nu);
    for n in 0..=nx {
        for k in 0..=nu {
            let closed = Rat::from_integer(t_closed(n as u64, k as u64));
            ensure(*g.at(n, k) == closed, || format!("G[{n},{k}] = {} != {closed}", g.at(n, k)))?;
        }
    }
    let rep = gf::compose_g_check(nx, nu);
    ensure(rep.passed, || format!("compose_g failed at {:?}", rep.first_offending))?;
    for n in 1..=nx {
        let row = gf::extract_r1_series(n, nu);
        for (k, c) in row.iter().enumerate() {
            let closed = Rat::from_integer(t_closed(n as u64, k as u64));
            ensure(*c == closed, || format!("[x^{n} u^{k}] r1 = {c} != {closed}"))?;
        }
    }
    Ok("G, r1 o t, and [x^n]r1 equal T(n,k) on (20,10)".into())
}

/// 4. Cubic residual and Vieta product at (24, 12).
fn cubic_and_vieta() -> Outcome {
    let ctx = GfContext::new(24, 12);
    let cubic = ctx.cubic_residual_check();
    ensure(cubic.passed, || format!("cubic residual at {:?}", cubic.first_offending))?;
    let vieta = ctx.vieta_product_check();
    ensure(vieta.passed, || format!("vieta product at {:?}", vieta.first_offending))?;
    Ok(format!("both residuals vanish on {}", cubic.grid_string()))
}

/// 5. F- * F+ = 1/(1-t) with zero odd part at (24, 12).
fn factorization() -> Outcome {
    let ctx = GfContext::new(24, 12);
    let (m, p) = ctx.factor_pair();
    let prod = &m * &p;
    ensure(prod.odd().is_zero(), || "odd part of F- * F+ is nonzero".into())?;
    ensure(prod.even() == ctx.r1(), || "even part of F- * F+ differs from 1/(1-t)".into())?;
    let rep = ctx.factorization_check();
    ensure(rep.passed, || format!("factorization_check at {:?}", rep.first_offending))?;
    Ok(format!("exact on {}", rep.grid_string()))
}

/// 6. The first four tau-coefficients of Xi.
fn xi_golden_values() -> Outcome {
    let ctx = GfContext::new(6, 6);
    let xt = gf::xi_in_tau(ctx.xi_series(), 6).map_err(|e| e.to_string())?;
    let golden: [(i64, &[i64]); 4] = [(1, &[1]), (8, &[5, 4]), (128, &[71, 136, 64]), (1024, &[541, 1596, 1568, 512])];
    for (n, (den, nums)) in golden.iter().enumerate() {
        for j in 0..=6 {
            let want = nums.get(j).map_or_else(|| rat(0, 1), |&c| rat(c, *den));
            ensure(*xt.at(n, j) == want, || format!("[tau^{n} U^{j}] = {} != {want}", xt.at(n, j)))?;
        }
    }
    let rendered: Vec<String> = (0..4).map(|n| cli::common_denominator_poly(xt.row(n))).collect();
    Ok(rendered.join(", "))
}

/// 7. Reversion coefficients against (l/n) C(n,k) C(2n-l-1, n-l-k).
fn lagrange_inversion() -> Outcome {
    let t = gf::revert_t(20, 10);
    for n in 1..=20usize {
        for k in 0..=10usize {
            let want = lagrange_tpow_coeff(n as u64, k as u64, 1);
            ensure(*t.at(n, k) == want, || format!("[x^{n} u^{k}] t = {} != {want}", t.at(n, k)))?;
        }
    }
    let small = t.truncate(12, 10).map_err(|e| e.to_string())?;
    let mut power = small.one_like();
    for l in 1..=4u64 {
        power = &power * &small;
        for n in 1..=12usize {
            for k in 0..=10usize {
                let want = lagrange_tpow_coeff(n as u64, k as u64, l);
                ensure(*power.at(n, k) == want, || {
                    format!("[x^{n} u^{k}] t^{l} = {} != {want}", power.at(n, k))
                })?;
            }
        }
        ensure(power.row(0).iter().all(Zero::is_zero), || format!("t^{l} has an x^0 term"))?;
    }
    Ok("l = 1 for n <= 20; l <= 4 for n <= 12".into())
}

/// 8. Three-term form and row sums for 1 <= n <= 200.
fn binomial_identities() -> Outcome {
    for n in 1..=200u64 {
        let mut sum = BigInt::zero();
        for k in 0..=n {
            let closed = t_closed(n, k);
            let four = four_binomial(n, k);
            ensure(four == closed, || format!("four_binomial({n},{k}) = {four} != {closed}"))?;
            sum += closed;
        }
        let rs = row_sum_closed(n);
        ensure(sum == rs, || format!("row {n}: sum {sum} != {rs}"))?;
    }
    Ok("n = 1..200".into())
}

fn run_property<S>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let mut runner = TestRunner::new(Config {
        cases: 100,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

/// 9. Algebra kernel property suites, 100 cases each at orders <= (12, 6).
fn algebra_properties() -> Outcome {
    use common::*;
    run_property("BiSeries ring axioms", triple(), bi_ring_axioms)?;
    run_property("HalfSeries ring axioms", half_triple(), half_ring_axioms)?;
    run_property("embedding", triple(), half_embedding)?;
    run_property("div inverse", (triple(), nonzero_rat()), div_inverse)?;
    run_property("sqrt square", (triple(), positive_rat()), sqrt_square)?;
    run_property("composition morphism", compose_inputs(), composition_morphism)?;
    run_property("truncation coherence", coherence_inputs(), truncation_coherence)?;
    Ok("7 suites x 100 cases".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 table reproduction", Duration::from_secs(1), table_reproduction),
        ("AC2 oracle equivalence n<=8", Duration::from_secs(30), oracle_equivalence),
        ("AC3 functional equation (20,10)", Duration::from_secs(30), functional_equation),
        ("AC4 cubic and Vieta (24,12)", Duration::from_secs(30), cubic_and_vieta),
        ("AC5 factorization (24,12)", Duration::from_secs(30), factorization),
        ("AC6 Xi golden values", Duration::from_secs(5), xi_golden_values),
        ("AC7 Lagrange inversion", Duration::from_secs(30), lagrange_inversion),
        ("AC8 binomial identities n<=200", Duration::from_secs(10), binomial_identities),
        ("AC9 algebra kernel properties", Duration::from_secs(60), algebra_properties),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
