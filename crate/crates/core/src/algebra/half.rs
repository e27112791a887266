use std::ops::{Add, Mul, Neg, Sub};

use super::{BiSeries, Rat};
use crate::error::{Error, Result};

/// `even + sqrt(v1) * odd`, where `v1` is the first variable of the shared
/// grid. Products fold `sqrt(v1)^2` back into a shift by `v1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSeries {
    even: BiSeries,
    odd: BiSeries,
}

impl HalfSeries {
    pub fn new(even: BiSeries, odd: BiSeries) -> Result<Self> {
        if even.vars() != odd.vars() || even.grid() != odd.grid() {
            return Err(Error::ShapeMismatch(even.shape_string(), odd.shape_string()));
        }
        Ok(HalfSeries { even, odd })
    }

    pub fn embed(even: BiSeries) -> Self {
        let odd = even.zero_like();
        HalfSeries { even, odd }
    }

    /// `sqrt(v1)` itself.
    pub fn sqrt_v1(template: &BiSeries) -> Self {
        HalfSeries {
            even: template.zero_like(),
            odd: template.one_like(),
        }
    }

    pub fn even(&self) -> &BiSeries {
        &self.even
    }

    pub fn odd(&self) -> &BiSeries {
        &self.odd
    }

    pub fn into_parts(self) -> (BiSeries, BiSeries) {
        (self.even, self.odd)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(HalfSeries {
            even: self.even.checked_add(&other.even)?,
            odd: self.odd.checked_add(&other.odd)?,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(HalfSeries {
            even: self.even.checked_sub(&other.even)?,
            odd: self.odd.checked_sub(&other.odd)?,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let aa = self.even.checked_mul(&other.even)?;
        let bb = self.odd.checked_mul(&other.odd)?;
        let ab = self.even.checked_mul(&other.odd)?;
        let ba = self.odd.checked_mul(&other.even)?;
        Ok(HalfSeries {
            even: aa.checked_add(&bb.shift_v1(1))?,
            odd: ab.checked_add(&ba)?,
        })
    }

    /// `even - sqrt(v1) * odd`.
    pub fn conjugate(&self) -> Self {
        HalfSeries {
            even: self.even.clone(),
            odd: -&self.odd,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        HalfSeries {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&HalfSeries> for &HalfSeries {
            type Output = HalfSeries;

            fn $method(self, rhs: &HalfSeries) -> HalfSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &HalfSeries {
    type Output = HalfSeries;

    fn neg(self) -> HalfSeries {
        HalfSeries {
            even: -&self.even,
            odd: -&self.odd,
        }
    }
}
