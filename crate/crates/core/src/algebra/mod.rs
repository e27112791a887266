//! Exact scalars, truncated bivariate power series, and the ring obtained by
//! adjoining the square root of the first series variable.
//!
//! Every coefficient is a reduced rational. Nothing in this module rounds.

mod half;
mod series;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

pub use half::HalfSeries;
pub use series::BiSeries;

/// Exact rational scalar, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact square root of a rational, if it has one. Only positive inputs
/// are accepted; zero has no unit root and is rejected like a non-square.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if !q.is_positive() {
        return None;
    }
    let n = exact_isqrt(q.numer())?;
    let d = exact_isqrt(q.denom())?;
    Some(Rat::new(n, d))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Formal variable names used by the series in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// x, the node-counting variable.
    X,
    /// u, the middle-edge variable.
    U,
    /// t, the uniformizing variable of the substitution.
    T,
    /// U = u - 1.
    Shifted,
    /// τ = t / u.
    Tau,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::U => "u",
            Var::T => "t",
            Var::Shifted => "U",
            Var::Tau => "tau",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Renders a polynomial in one variable with exact rational coefficients,
/// e.g. `5/8 + 1/2*U`. The zero polynomial renders as `0`.
pub fn format_poly(coeffs: &[Rat], var: Var) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let monomial = match j {
            0 => None,
            1 => Some(var.name().to_string()),
            _ => Some(format!("{}^{}", var.name(), j)),
        };
        match monomial {
            None => out.push_str(&mag.to_string()),
            Some(m) if mag.is_one() => out.push_str(&m),
            Some(m) => out.push_str(&format!("{mag}*{m}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
