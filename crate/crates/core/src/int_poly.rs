//! Polynomials in `t` with nonnegative arbitrary-precision integer
//! coefficients. Used for Poincaré polynomials (coefficient `k` is
//! `h^{2k}`) and for Kostka–Foulkes polynomials.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::poly::big_json;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigUint>,
}

/// Poincaré polynomial of a Springer fiber in `t`, with `t^k` standing for
/// cohomological degree `2k`.
pub type PoincarePoly = IntPoly;

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::monomial(0)
    }

    /// `t^power`.
    pub fn monomial(power: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); power + 1];
        coeffs[power] = BigUint::one();
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigUint {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `t = 1`.
    pub fn sum(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `t^power`.
    pub fn shifted(&self, power: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigUint::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Coefficients joined by `sep`, lowest power first.
    pub fn join(&self, sep: &str) -> String {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(big_json).collect())
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigUint::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

/// Renders as `1+2t+t^2`, lowest power first.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (power, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{c}t")?,
                (_, true) => write!(f, "t^{power}")?,
                (_, false) => write!(f, "{c}t^{power}")?,
            }
        }
        Ok(())
    }
}
