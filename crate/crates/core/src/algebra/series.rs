use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{format_poly, rat_sqrt, Rat, Var};
use crate::error::{Error, Result};

/// Dense truncated power series in two named variables.
///
/// The retained grid is rectangular: `v1^i v2^j` with `i <= ord1` and
/// `j <= ord2`. Every operation is exact on that grid, so truncating an
/// input to a smaller grid and then operating gives the same coefficients
/// as operating first and truncating afterwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSeries {
    vars: (Var, Var),
    ord1: usize,
    ord2: usize,
    coeff: Vec<Rat>,
}

impl BiSeries {
    pub fn zero(vars: (Var, Var), ord1: usize, ord2: usize) -> Self {
        BiSeries {
            vars,
            ord1,
            ord2,
            coeff: vec![Rat::zero(); (ord1 + 1) * (ord2 + 1)],
        }
    }

    pub fn constant(vars: (Var, Var), ord1: usize, ord2: usize, c: Rat) -> Self {
        let mut s = Self::zero(vars, ord1, ord2);
        s.coeff[0] = c;
        s
    }

    pub fn one(vars: (Var, Var), ord1: usize, ord2: usize) -> Self {
        Self::constant(vars, ord1, ord2, Rat::one())
    }

    /// The series consisting of the single term `c * v1^i * v2^j` (zero if
    /// the term falls outside the grid).
    pub fn monomial(vars: (Var, Var), ord1: usize, ord2: usize, i: usize, j: usize, c: Rat) -> Self {
        let mut s = Self::zero(vars, ord1, ord2);
        if i <= ord1 && j <= ord2 {
            let k = s.idx(i, j);
            s.coeff[k] = c;
        }
        s
    }

    /// The first variable as a series.
    pub fn v1(vars: (Var, Var), ord1: usize, ord2: usize) -> Self {
        Self::monomial(vars, ord1, ord2, 1, 0, Rat::one())
    }

    /// The second variable as a series.
    pub fn v2(vars: (Var, Var), ord1: usize, ord2: usize) -> Self {
        Self::monomial(vars, ord1, ord2, 0, 1, Rat::one())
    }

    /// Builds a series from a sparse list of `(i, j, c)` terms; terms
    /// outside the grid are dropped.
    pub fn from_terms(vars: (Var, Var), ord1: usize, ord2: usize, terms: &[(usize, usize, Rat)]) -> Self {
        let mut s = Self::zero(vars, ord1, ord2);
        for (i, j, c) in terms {
            if *i <= ord1 && *j <= ord2 {
                let k = s.idx(*i, *j);
                s.coeff[k] += c;
            }
        }
        s
    }

    pub fn from_fn(vars: (Var, Var), ord1: usize, ord2: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut coeff = Vec::with_capacity((ord1 + 1) * (ord2 + 1));
        for i in 0..=ord1 {
            for j in 0..=ord2 {
                coeff.push(f(i, j));
            }
        }
        BiSeries { vars, ord1, ord2, coeff }
    }

    /// Same series with a zero-valued grid, useful as a shape template.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.vars, self.ord1, self.ord2)
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.vars, self.ord1, self.ord2)
    }

    pub fn vars(&self) -> (Var, Var) {
        self.vars
    }

    pub fn ord1(&self) -> usize {
        self.ord1
    }

    pub fn ord2(&self) -> usize {
        self.ord2
    }

    pub fn grid(&self) -> (usize, usize) {
        (self.ord1, self.ord2)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.ord2 + 1) + j
    }

    /// Exact coefficient of `v1^i v2^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Result<&Rat> {
        if i > self.ord1 || j > self.ord2 {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                ord1: self.ord1,
                ord2: self.ord2,
            });
        }
        Ok(&self.coeff[self.idx(i, j)])
    }

    /// Coefficient lookup that panics outside the grid.
    pub fn at(&self, i: usize, j: usize) -> &Rat {
        assert!(i <= self.ord1 && j <= self.ord2, "index ({i},{j}) outside grid ({},{})", self.ord1, self.ord2);
        &self.coeff[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Rat) {
        assert!(i <= self.ord1 && j <= self.ord2, "index ({i},{j}) outside grid ({},{})", self.ord1, self.ord2);
        let k = self.idx(i, j);
        self.coeff[k] = c;
    }

    /// Coefficients of `v1^i` as a polynomial in the second variable.
    pub fn row(&self, i: usize) -> &[Rat] {
        let start = self.idx(i, 0);
        &self.coeff[start..start + self.ord2 + 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(Zero::is_zero)
    }

    /// First nonzero coefficient in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Rat)> {
        self.coeff
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / (self.ord2 + 1), k % (self.ord2 + 1), c))
    }

    /// Relabels the variables without touching coefficients.
    pub fn with_vars(mut self, vars: (Var, Var)) -> Self {
        self.vars = vars;
        self
    }

    /// Restricts to a smaller grid.
    pub fn truncate(&self, ord1: usize, ord2: usize) -> Result<Self> {
        if ord1 > self.ord1 || ord2 > self.ord2 {
            return Err(Error::InsufficientOrder(format!(
                "cannot truncate ({},{}) to ({ord1},{ord2})",
                self.ord1, self.ord2
            )));
        }
        Ok(Self::from_fn(self.vars, ord1, ord2, |i, j| self.at(i, j).clone()))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.grid() != other.grid() {
            return Err(Error::ShapeMismatch(self.shape_string(), other.shape_string()));
        }
        Ok(())
    }

    pub(crate) fn shape_string(&self) -> String {
        format!("{},{}; {},{}", self.vars.0, self.vars.1, self.ord1, self.ord2)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeff = self.coeff.iter().zip(&other.coeff).map(|(a, b)| a + b).collect();
        Ok(BiSeries { coeff, ..self.zero_shell() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeff = self.coeff.iter().zip(&other.coeff).map(|(a, b)| a - b).collect();
        Ok(BiSeries { coeff, ..self.zero_shell() })
    }

    fn zero_shell(&self) -> Self {
        BiSeries {
            vars: self.vars,
            ord1: self.ord1,
            ord2: self.ord2,
            coeff: Vec::new(),
        }
    }

    /// Common-denominator form: integer grid `n` and `d > 0` with
    /// `self = n / d`.
    fn integer_grid(&self) -> (Vec<BigInt>, BigInt) {
        let d = self
            .coeff
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let n = self
            .coeff
            .iter()
            .map(|c| {
                if c.is_zero() {
                    BigInt::zero()
                } else {
                    c.numer() * (&d / c.denom())
                }
            })
            .collect();
        (n, d)
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let (na, da) = self.integer_grid();
        let (nb, db) = other.integer_grid();
        let w = self.ord2 + 1;
        let nz_b: Vec<(usize, usize, &BigInt)> = nb
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / w, k % w, c))
            .collect();
        let mut acc = vec![BigInt::zero(); na.len()];
        for (ka, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i1, j1) = (ka / w, ka % w);
            for &(i2, j2, b) in &nz_b {
                let (i, j) = (i1 + i2, j1 + j2);
                if i <= self.ord1 && j <= self.ord2 {
                    acc[i * w + j] += a * b;
                }
            }
        }
        let den = da * db;
        let coeff = acc.into_iter().map(|n| Rat::new(n, den.clone())).collect();
        Ok(BiSeries { coeff, ..self.zero_shell() })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BiSeries {
            coeff: self.coeff.iter().map(|a| a * c).collect(),
            ..self.zero_shell()
        }
    }

    /// Multiplication by `v1^k`, discarding overflow.
    pub fn shift_v1(&self, k: usize) -> Self {
        Self::from_fn(self.vars, self.ord1, self.ord2, |i, j| {
            if i >= k {
                self.at(i - k, j).clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient `self / b`; `b` must have a nonzero constant term.
    pub fn checked_div(&self, b: &Self) -> Result<Self> {
        self.check_shape(b)?;
        let b00 = b.at(0, 0);
        if b00.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let inv = b00.recip();
        let b_terms: Vec<(usize, usize, &Rat)> = (0..=b.ord1)
            .flat_map(|i| (0..=b.ord2).map(move |j| (i, j)))
            .filter(|&(i, j)| (i, j) != (0, 0))
            .map(|(i, j)| (i, j, b.at(i, j)))
            .filter(|(_, _, c)| !c.is_zero())
            .collect();
        let mut q = self.zero_like();
        for i in 0..=self.ord1 {
            for j in 0..=self.ord2 {
                let mut r = self.at(i, j).clone();
                for &(p, s, c) in &b_terms {
                    if p <= i && s <= j {
                        r -= c * q.at(i - p, j - s);
                    }
                }
                q.set(i, j, r * &inv);
            }
        }
        Ok(q)
    }

    /// Principal square root: the unique `s` with `s * s = self` on the
    /// grid and positive constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let a00 = self.at(0, 0);
        let s00 = rat_sqrt(a00).ok_or_else(|| Error::NonSquareConstant(a00.to_string()))?;
        let inv_two_s00 = (&s00 + &s00).recip();
        let mut s = self.zero_like();
        s.set(0, 0, s00);
        // Every product s[p]s[q] contributing to s[i][j] other than the two
        // s00 terms has both indices at strictly lower total degree.
        for deg in 1..=(self.ord1 + self.ord2) {
            for i in deg.saturating_sub(self.ord2)..=deg.min(self.ord1) {
                let j = deg - i;
                let mut r = self.at(i, j).clone();
                for p in 0..=i {
                    for q in 0..=j {
                        if (p, q) == (0, 0) || (p, q) == (i, j) {
                            continue;
                        }
                        let a = s.at(p, q);
                        if a.is_zero() {
                            continue;
                        }
                        r -= a * s.at(i - p, j - q);
                    }
                }
                s.set(i, j, r * &inv_two_s00);
            }
        }
        Ok(s)
    }

    /// Substitutes `inner` for the first variable.
    ///
    /// `inner` lives in `(w, v2)` and must have zero constant term; the
    /// result lives on `inner`'s grid. An error is returned when `self` is
    /// truncated too early in `v1` for the result to be exact, i.e. when
    /// `inner^(ord1 + 1)` does not vanish on the output grid.
    pub fn compose_v1(&self, inner: &Self) -> Result<Self> {
        if inner.vars.1 != self.vars.1 {
            return Err(Error::VariableMismatch {
                expected: self.vars.1,
                found: inner.vars.1,
            });
        }
        if !inner.at(0, 0).is_zero() {
            return Err(Error::NonZeroInnerConstant(inner.at(0, 0).to_string()));
        }
        if self.ord2 < inner.ord2 {
            return Err(Error::InsufficientOrder(format!(
                "outer series has {}-order {} < {}",
                self.vars.1, self.ord2, inner.ord2
            )));
        }
        let mut out = inner.zero_like();
        let mut power = inner.one_like();
        for p in 0..=self.ord1 {
            if power.is_zero() {
                return Ok(out);
            }
            let coef = Self::from_fn(inner.vars, inner.ord1, inner.ord2, |i, j| {
                if i == 0 {
                    self.at(p, j).clone()
                } else {
                    Rat::zero()
                }
            });
            out = &out + &(&coef * &power);
            power = &power * inner;
        }
        if power.is_zero() {
            Ok(out)
        } else {
            Err(Error::InsufficientOrder(format!(
                "outer series truncated at {}^{} but the substituted series still contributes beyond it",
                self.vars.0, self.ord1
            )))
        }
    }

    /// Degree in the second variable of each row, `None` for zero rows.
    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..=self.ord1)
            .map(|i| self.row(i).iter().rposition(|c| !c.is_zero()))
            .collect()
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BiSeries[{}]", self.shape_string())?;
        for i in 0..=self.ord1 {
            writeln!(f, "  {}^{}: {}", self.vars.0, i, format_poly(self.row(i), self.vars.1))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&BiSeries> for &BiSeries {
            type Output = BiSeries;

            fn $method(self, rhs: &BiSeries) -> BiSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $tr<BiSeries> for BiSeries {
            type Output = BiSeries;

            fn $method(self, rhs: BiSeries) -> BiSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &BiSeries {
    type Output = BiSeries;

    fn neg(self) -> BiSeries {
        BiSeries {
            coeff: self.coeff.iter().map(|c| -c).collect(),
            ..self.zero_shell()
        }
    }
}

impl Neg for BiSeries {
    type Output = BiSeries;

    fn neg(self) -> BiSeries {
        -&self
    }
}
