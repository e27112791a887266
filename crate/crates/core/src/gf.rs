//! Generating-function identities for ternary trees counted by nodes (`x`)
//! and middle edges (`u`).
//!
//! The tree generating function `G(x,u)` satisfies
//! `G = 1 + x G^2 (1 - u + u G)`. After `x = t (1-t)^2 / (1 - t + u t)` the
//! cubic has the root `r1 = 1/(1-t)`; the other two roots have reciprocals
//! `t/2 -+ sqrt(t) c` which live in [`HalfSeries`]. Every check here is an
//! exact comparison on a truncation grid.
//!
//! Whenever a division by `u` is needed the `(t, U)` grid with `u = 1 + U`
//! is used, so `u` is a unit.

use num_traits::{One, Zero};

use crate::algebra::{rat, rat_int, BiSeries, HalfSeries, Rat, Var};
use crate::combinatorics::{lagrange_tpow_coeff, t_closed};
use crate::error::Result;

pub const DEFAULT_ORDER_T: usize = 24;
pub const DEFAULT_ORDER_SHIFTED: usize = 12;
pub const DEFAULT_ORDER_X: usize = 20;
pub const DEFAULT_ORDER_U: usize = 10;

const TU: (Var, Var) = (Var::T, Var::Shifted);

/// Outcome of one exact identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub grid: (usize, usize),
    pub passed: bool,
    /// First coefficient (row-major) where the two sides differ, with the
    /// value of the residual there.
    pub first_offending: Option<(usize, usize, Rat)>,
}

impl CheckReport {
    /// Passes iff `residual` vanishes on its whole grid.
    pub fn from_residual(name: &str, residual: &BiSeries) -> Self {
        let first_offending = residual.first_nonzero().map(|(i, j, c)| (i, j, c.clone()));
        CheckReport {
            name: name.to_string(),
            grid: residual.grid(),
            passed: first_offending.is_none(),
            first_offending,
        }
    }

    pub fn grid_string(&self) -> String {
        format!("({},{})", self.grid.0, self.grid.1)
    }
}

/// The standard series on a `(t, U)` grid.
#[derive(Debug, Clone)]
pub struct GfContext {
    nt: usize,
    nu: usize,
    x: BiSeries,
    phi: BiSeries,
    r1: BiSeries,
    s_squared: BiSeries,
    c: BiSeries,
    xi: BiSeries,
    d: BiSeries,
}

impl GfContext {
    pub fn new(nt: usize, nu: usize) -> Self {
        let one = BiSeries::one(TU, nt, nu);
        let t = BiSeries::v1(TU, nt, nu);
        let u = &one + &BiSeries::v2(TU, nt, nu);
        let one_minus_t = &one - &t;
        let den = &one_minus_t + &(&u * &t);
        let two_minus_t = &BiSeries::constant(TU, nt, nu, rat_int(2)) - &t;

        let unit = "divisor has constant term 1";
        let x = (&t * &one_minus_t.pow(2)).checked_div(&den).expect(unit);
        let phi = den.checked_div(&one_minus_t.pow(2)).expect(unit);
        let r1 = one.checked_div(&one_minus_t).expect(unit);

        // t(1-t) + u(2-t)^2 = 4 - 3t + U(2-t)^2
        let radicand = &(&t * &one_minus_t) + &(&u * &two_minus_t.pow(2));
        let s_squared = (&t * &radicand).checked_div(&den.scale(&rat_int(4))).expect(unit);

        let half = rat(1, 2);
        let c = radicand
            .checked_div(&den)
            .expect(unit)
            .sqrt()
            .expect("radicand/(1-t+ut) has constant term 4")
            .scale(&half);
        assert!(c.at(0, 0).is_one(), "c(0,0) must be 1");

        let xi = radicand
            .checked_div(&u.scale(&rat_int(4)))
            .expect(unit)
            .sqrt()
            .expect("radicand/(4u) has constant term 1")
            .checked_div(&one_minus_t)
            .expect(unit);
        assert!(xi.at(0, 0).is_one(), "Xi(0,0) must be 1");

        let d = den
            .checked_div(&u)
            .expect(unit)
            .sqrt()
            .expect("(1-t+ut)/u has constant term 1")
            .checked_div(&one_minus_t.scale(&rat_int(2)))
            .expect(unit);

        GfContext {
            nt,
            nu,
            x,
            phi,
            r1,
            s_squared,
            c,
            xi,
            d,
        }
    }

    pub fn with_defaults() -> Self {
        Self::new(DEFAULT_ORDER_T, DEFAULT_ORDER_SHIFTED)
    }

    pub fn grid(&self) -> (usize, usize) {
        (self.nt, self.nu)
    }

    fn one(&self) -> BiSeries {
        BiSeries::one(TU, self.nt, self.nu)
    }

    fn t(&self) -> BiSeries {
        BiSeries::v1(TU, self.nt, self.nu)
    }

    fn u(&self) -> BiSeries {
        &self.one() + &BiSeries::v2(TU, self.nt, self.nu)
    }

    /// `x = t (1-t)^2 / (1 - t + u t)` with `u = 1 + U`.
    pub fn subst_x(&self) -> &BiSeries {
        &self.x
    }

    /// `(1 - t + t u) / (1 - t)^2`, so that `t = x phi(t)`.
    pub fn phi(&self) -> &BiSeries {
        &self.phi
    }

    /// `1 / (1 - t)`.
    pub fn r1(&self) -> &BiSeries {
        &self.r1
    }

    /// Square of the radical term `S` in `1/r2 = t/2 - S`, `1/r3 = t/2 + S`.
    pub fn s_squared(&self) -> &BiSeries {
        &self.s_squared
    }

    /// Odd cofactor with `S = sqrt(t) c`.
    pub fn c(&self) -> &BiSeries {
        &self.c
    }

    /// `(1/r2, 1/r3) = (t/2 - sqrt(t) c, t/2 + sqrt(t) c)`.
    pub fn inv_roots(&self) -> (HalfSeries, HalfSeries) {
        let half_t = self.t().scale(&rat(1, 2));
        let minus = HalfSeries::new(half_t.clone(), -&self.c).expect("same grid");
        let plus = HalfSeries::new(half_t, self.c.clone()).expect("same grid");
        (minus, plus)
    }

    /// The unit series `Xi` with `S = sqrt(u x) Xi`.
    pub fn xi_series(&self) -> &BiSeries {
        &self.xi
    }

    /// Odd part of the factors: `t / (2 sqrt(u x)) = sqrt(t) d`.
    pub fn d(&self) -> &BiSeries {
        &self.d
    }

    /// `(F-, F+) = (Xi - sqrt(t) d, Xi + sqrt(t) d)`, whose product is `r1`.
    pub fn factor_pair(&self) -> (HalfSeries, HalfSeries) {
        let minus = HalfSeries::new(self.xi.clone(), -&self.d).expect("same grid");
        let plus = HalfSeries::new(self.xi.clone(), self.d.clone()).expect("same grid");
        (minus, plus)
    }

    /// `-u t (1-t) / (1 - t + u t)`, the reciprocal of `r2 r3`.
    pub fn inv_root_product(&self) -> BiSeries {
        let one = self.one();
        let t = self.t();
        let u = self.u();
        let den = &(&one - &t) + &(&u * &t);
        let num = -(&(&u * &t) * &(&one - &t));
        num.checked_div(&den).expect("unit divisor")
    }

    /// `r - 1 - x r^2 (1 - u + u r)` for a candidate root `r`.
    pub fn cubic_residual(&self, r: &BiSeries) -> BiSeries {
        let one = self.one();
        let u = self.u();
        let inner = &(&one - &u) + &(&u * r);
        let rhs = &one + &(&(&self.x * &(r * r)) * &inner);
        r - &rhs
    }

    pub fn cubic_residual_check(&self) -> CheckReport {
        self.cubic_residual_check_with(&self.r1)
    }

    pub fn cubic_residual_check_with(&self, r: &BiSeries) -> CheckReport {
        CheckReport::from_residual("cubic_residual", &self.cubic_residual(r))
    }

    pub fn vieta_product_check(&self) -> CheckReport {
        self.vieta_product_check_with(&self.inv_root_product())
    }

    /// Compares `(1/r2)(1/r3)` against `expected` (must also show a zero
    /// odd part).
    pub fn vieta_product_check_with(&self, expected: &BiSeries) -> CheckReport {
        let (a, b) = self.inv_roots();
        let prod = &a * &b;
        let even = CheckReport::from_residual("vieta_product", &(prod.even() - expected));
        if !even.passed {
            return even;
        }
        CheckReport::from_residual("vieta_product", prod.odd())
    }

    pub fn factorization_check(&self) -> CheckReport {
        let (m, p) = self.factor_pair();
        self.factorization_check_with(&m, &p)
    }

    /// Passes iff `f1 * f2 = (1/(1-t), 0)` on the grid.
    pub fn factorization_check_with(&self, f1: &HalfSeries, f2: &HalfSeries) -> CheckReport {
        let prod = f1 * f2;
        let even = CheckReport::from_residual("factorization", &(prod.even() - &self.r1));
        if !even.passed {
            return even;
        }
        CheckReport::from_residual("factorization", prod.odd())
    }
}

/// Re-expands a `(t, U)` series in `tau = t / u`, i.e. substitutes
/// `t = tau (1 + U)`, keeping `tau^0..tau^ntau`. Needs `xi.ord1() >= ntau`.
pub fn xi_in_tau(xi: &BiSeries, ntau: usize) -> Result<BiSeries> {
    let vars = (Var::Tau, xi.vars().1);
    let nu = xi.ord2();
    let inner = &BiSeries::v1(vars, ntau, nu) * &(&BiSeries::one(vars, ntau, nu) + &BiSeries::v2(vars, ntau, nu));
    xi.compose_v1(&inner)
}

/// The first four `tau`-coefficients of `Xi` as polynomials in `U`.
pub fn xi_golden() -> Vec<Vec<Rat>> {
    let row = |d: i64, cs: &[i64]| cs.iter().map(|&c| rat(c, d)).collect::<Vec<_>>();
    vec![
        row(1, &[1]),
        row(8, &[5, 4]),
        row(128, &[71, 136, 64]),
        row(1024, &[541, 1596, 1568, 512]),
    ]
}

/// Compares the leading `tau`-coefficients of `Xi` with [`xi_golden`] on
/// whatever part of the golden block fits in the grid.
pub fn xi_golden_check(xi_tau: &BiSeries) -> CheckReport {
    let golden = xi_golden();
    let residual = BiSeries::from_fn(xi_tau.vars(), xi_tau.ord1(), xi_tau.ord2(), |i, j| {
        let want = golden
            .get(i)
            .map(|r| r.get(j).cloned().unwrap_or_else(Rat::zero));
        match want {
            Some(w) => xi_tau.at(i, j) - w,
            None => Rat::zero(),
        }
    });
    CheckReport::from_residual("xi_golden", &residual)
}

/// Runs `step` exactly `n + 1` times from `start`; the last step must not
/// change anything on the grid.
fn fixed_point(start: BiSeries, n: usize, step: impl Fn(&BiSeries) -> BiSeries) -> BiSeries {
    let mut cur = start;
    for k in 0..=n {
        let next = step(&cur);
        if k == n {
            assert_eq!(next, cur, "fixed-point iteration failed to stabilize after {n} steps");
        }
        cur = next;
    }
    cur
}

/// Tree generating function `G(x, u)` from `G = 1 + x G^2 (1 - u + u G)`.
pub fn solve_g(nx: usize, nu: usize) -> BiSeries {
    let vars = (Var::X, Var::U);
    let one = BiSeries::one(vars, nx, nu);
    let x = BiSeries::v1(vars, nx, nu);
    let u = BiSeries::v2(vars, nx, nu);
    let one_minus_u = &one - &u;
    fixed_point(one.clone(), nx, |g| {
        let inner = &one_minus_u + &(&u * g);
        &one + &(&(&x * &(g * g)) * &inner)
    })
}

/// Series reversion of `x = t (1-t)^2 / (1 - t + u t)`: the solution of
/// `t = x (1 - t + t u) / (1 - t)^2` with `t = x + O(x^2)`.
pub fn revert_t(nx: usize, nu: usize) -> BiSeries {
    let vars = (Var::X, Var::U);
    let one = BiSeries::one(vars, nx, nu);
    let x = BiSeries::v1(vars, nx, nu);
    let u = BiSeries::v2(vars, nx, nu);
    fixed_point(BiSeries::zero(vars, nx, nu), nx, |t| {
        let num = &(&one - t) + &(t * &u);
        let den = (&one - t).pow(2);
        &x * &num.checked_div(&den).expect("1 - t is a unit")
    })
}

/// `x = t (1-t)^2 / (1 - t + u t)` on a `(t, u)` grid.
pub fn x_series_tu(nt: usize, nu: usize) -> BiSeries {
    let vars = (Var::T, Var::U);
    let one = BiSeries::one(vars, nt, nu);
    let t = BiSeries::v1(vars, nt, nu);
    let u = BiSeries::v2(vars, nt, nu);
    let den = &(&one - &t) + &(&u * &t);
    (&t * &(&one - &t).pow(2)).checked_div(&den).expect("unit divisor")
}

/// `1 / (1 - t)` on a `(t, u)` grid.
pub fn r1_tu(nt: usize, nu: usize) -> BiSeries {
    let vars = (Var::T, Var::U);
    let one = BiSeries::one(vars, nt, nu);
    one.checked_div(&(&one - &BiSeries::v1(vars, nt, nu))).expect("unit divisor")
}

/// `[x^n] r1` as a polynomial in `u` (coefficients of `u^0..u^nu`),
/// computed as `[t^n] (1 - 3t + 2t^2 - 2t^2 u)(1 - t + tu)^(n-1) / (1-t)^(2n+2)`.
pub fn extract_r1_series(n: usize, nu: usize) -> Vec<Rat> {
    assert!(n >= 1, "extract_r1_series requires n >= 1");
    let vars = (Var::T, Var::U);
    let one = BiSeries::one(vars, n, nu);
    let t = BiSeries::v1(vars, n, nu);
    let u = BiSeries::v2(vars, n, nu);
    let t2 = t.pow(2);
    let poly = &(&(&one - &t.scale(&rat_int(3))) + &t2.scale(&rat_int(2))) - &(&t2 * &u).scale(&rat_int(2));
    let base = &(&one - &t) + &(&t * &u);
    let num = &poly * &base.pow(n as u32 - 1);
    let den = (&one - &t).pow(2 * n as u32 + 2);
    let q = num.checked_div(&den).expect("unit divisor");
    q.row(n).to_vec()
}

/// `compose(1/(1-t), revert_t) = solve_g` on the `(x, u)` grid.
pub fn compose_g_check(nx: usize, nu: usize) -> CheckReport {
    compose_g_check_with(&r1_tu(nx, nu), nx, nu)
}

pub fn compose_g_check_with(r: &BiSeries, nx: usize, nu: usize) -> CheckReport {
    let t = revert_t(nx, nu);
    let composed = r.compose_v1(&t).expect("reversion has zero constant term and enough order");
    CheckReport::from_residual("compose_g", &(&composed - &solve_g(nx, nu)))
}

/// `compose(x(t,u), revert_t) = x`: the substitution and the reversion are
/// mutually inverse.
pub fn inverse_pair_check(nx: usize, nu: usize) -> CheckReport {
    let t = revert_t(nx, nu);
    let composed = x_series_tu(nx, nu).compose_v1(&t).expect("zero constant term");
    let x = BiSeries::v1((Var::X, Var::U), nx, nu);
    CheckReport::from_residual("inverse_pair", &(&composed - &x))
}

/// `[x^n u^k] t^l` from powers of the reversion against the closed form,
/// for `1 <= l <= lmax`.
pub fn lagrange_check(nx: usize, nu: usize, lmax: u32) -> CheckReport {
    let t = revert_t(nx, nu);
    let mut power = t.one_like();
    let mut residual = BiSeries::zero((Var::X, Var::U), nx, nu);
    for l in 1..=lmax {
        power = &power * &t;
        let diff = BiSeries::from_fn(power.vars(), nx, nu, |n, k| {
            if n == 0 {
                power.at(0, k).clone()
            } else {
                power.at(n, k) - lagrange_tpow_coeff(n as u64, k as u64, l as u64)
            }
        });
        if !diff.is_zero() {
            residual = diff;
            break;
        }
    }
    CheckReport::from_residual("lagrange", &residual)
}

/// `solve_g` and `extract_r1_series` against the closed form.
pub fn closed_form_check(nx: usize, nu: usize) -> CheckReport {
    let g = solve_g(nx, nu);
    let residual = BiSeries::from_fn(g.vars(), nx, nu, |n, k| {
        let closed = Rat::from_integer(t_closed(n as u64, k as u64));
        let from_g = g.at(n, k) - &closed;
        if !from_g.is_zero() || n == 0 {
            return from_g;
        }
        &extract_r1_series(n, nu)[k] - closed
    });
    CheckReport::from_residual("closed_form", &residual)
}
