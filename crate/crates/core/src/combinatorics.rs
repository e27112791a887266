//! Big-integer binomials and the closed-form counts for ternary trees by
//! nodes and middle edges.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rat;

/// Binomial coefficient `C(n, k)`, zero when `k` lies outside `[0, n]`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) here, so acc * (n - i) is divisible by i + 1
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Same as [`binomial`] but allows a negative top, which yields zero.
fn binom_i(n: i64, k: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        binomial(n as u64, k)
    }
}

/// Number of ternary trees with `n` nodes and `k` middle edges:
/// `C(n,k) C(2n, n-1-k) / n` for `n >= 1`.
pub fn t_closed(n: u64, k: u64) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let prod = binomial(n, k_i) * binomial(2 * n, n_i - 1 - k_i);
    let (q, r) = prod.div_rem(&BigInt::from(n));
    assert!(r.is_zero(), "t_closed({n},{k}): {n} does not divide the binomial product");
    q
}

/// The unsimplified three-term form of `[x^n u^k] r1` obtained by direct
/// coefficient extraction; agrees with [`t_closed`] for `n >= 1`.
pub fn four_binomial(n: u64, k: u64) -> BigInt {
    assert!(n >= 1, "four_binomial requires n >= 1");
    let (n, k) = (n as i64, k as i64);
    let a = binom_i(n - 1, k);
    let b = binom_i(n - 1, k - 1);
    let c1 = binom_i(2 * n + 1, n - k);
    let c2 = binom_i(2 * n, n - k - 1);
    &a * c1 - 2 * &a * &c2 - 2 * b * c2
}

/// Total number of ternary trees with `n >= 1` nodes, `C(3n, n-1) / n`.
pub fn row_sum_closed(n: u64) -> BigInt {
    assert!(n >= 1, "row_sum_closed requires n >= 1");
    let prod = binomial(3 * n, n as i64 - 1);
    let (q, r) = prod.div_rem(&BigInt::from(n));
    assert!(r.is_zero());
    q
}

/// Fuss-Catalan form of the same count, `C(3n, n) / (2n + 1)`.
pub fn ternary_count(n: u64) -> BigInt {
    let prod = binomial(3 * n, n as i64);
    let (q, r) = prod.div_rem(&BigInt::from(2 * n + 1));
    assert!(r.is_zero());
    q
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n as i64) / (n + 1)
}

/// `[x^n u^k] t^l` where `t = x (1 - t + tu) / (1 - t)^2`:
/// `(l/n) C(n,k) C(2n-l-1, n-l-k)`.
pub fn lagrange_tpow_coeff(n: u64, k: u64, l: u64) -> Rat {
    assert!(n >= 1 && l >= 1, "lagrange_tpow_coeff requires n, l >= 1");
    let (n_i, k_i, l_i) = (n as i64, k as i64, l as i64);
    let num = BigInt::from(l) * binomial(n, k_i) * binom_i(2 * n_i - l_i - 1, n_i - l_i - k_i);
    Rat::new(num, BigInt::from(n))
}

/// Integer table `T(n, k)` for `0 <= n <= nmax`; row 0 is `[1]` and row
/// `n >= 1` holds `k = 0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<BigInt>>,
}

/// Width of row `n`.
pub fn row_len(n: usize) -> usize {
    n.max(1)
}

impl Triangle {
    pub fn from_fn(nmax: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let rows = (0..=nmax).map(|n| (0..row_len(n)).map(|k| f(n, k)).collect()).collect();
        Triangle { rows }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        for (n, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), row_len(n), "row {n} has the wrong width");
        }
        Triangle { rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// Entry `(n, k)`, zero outside the stored range.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `(n, k, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, r)| r.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }

    /// Entries where `self` and `other` disagree, as `(n, k, mine, theirs)`.
    pub fn diff(&self, other: &Triangle) -> Vec<(usize, usize, BigInt, BigInt)> {
        let nmax = self.nmax().max(other.nmax());
        let mut out = Vec::new();
        for n in 0..=nmax {
            for k in 0..row_len(n) {
                let (a, b) = (self.get(n, k), other.get(n, k));
                if a != b {
                    out.push((n, k, a, b));
                }
            }
        }
        out
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = row_len(self.nmax());
        let width = self
            .entries()
            .map(|(_, _, v)| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.to_string().len());
        write!(f, "{:>4} |", "n\\k")?;
        for k in 0..cols {
            write!(f, " {k:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat(6 + cols * (width + 1)))?;
        for (n, row) in self.rows.iter().enumerate() {
            write!(f, "{n:>4} |")?;
            for v in row {
                write!(f, " {:>width$}", v.to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn triangle_closed(nmax: usize) -> Triangle {
    Triangle::from_fn(nmax, |n, k| t_closed(n as u64, k as u64))
}
