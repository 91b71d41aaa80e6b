//! Exact univariate polynomials over the rationals.
//!
//! Coefficients are [`BigRational`], which is always kept in lowest terms
//! with a positive denominator, so structural equality is mathematical
//! equality. The one nontrivial operation is [`RationalPoly::discrete_sum`],
//! the indefinite sum `x ↦ Σ_{i=a}^{x-1} p(i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    /// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalPoly::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        RationalPoly::constant(BigRational::from_integer(c.into()))
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RationalPoly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// Builds `(Σ numerators[i] x^i) / denominator`.
    pub fn from_scaled_ints(numerators: &[i64], denominator: i64) -> Self {
        let d = BigInt::from(denominator);
        RationalPoly::from_coeffs(
            numerators
                .iter()
                .map(|&c| BigRational::new(c.into(), d.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.eval(&BigRational::from_integer(n.into()))
    }

    /// `p(x + shift)`.
    pub fn shift(&self, shift: i64) -> RationalPoly {
        let step = RationalPoly::from_coeffs(vec![
            BigRational::from_integer(shift.into()),
            BigRational::one(),
        ]);
        self.coeffs
            .iter()
            .rev()
            .fold(RationalPoly::zero(), |acc, c| &(&acc * &step) + &RationalPoly::constant(c.clone()))
    }

    /// Forward difference `p(x+1) - p(x)`.
    pub fn forward_difference(&self) -> RationalPoly {
        &self.shift(1) - self
    }

    /// The unique polynomial `P` with `P(a) = 0` and `P(x+1) - P(x) = p(x)`,
    /// so that `P(x) = Σ_{i=a}^{x-1} p(i)` for every integer `x ≥ a`.
    ///
    /// Works in the Newton basis `C(x-a, j)`: with `b_j = Δ^j p(a)` we have
    /// `p = Σ b_j C(x-a, j)` and, by the hockey-stick identity,
    /// `P = Σ b_j C(x-a, j+1)`.
    pub fn discrete_sum(&self, a: i64) -> RationalPoly {
        let Some(deg) = self.degree() else {
            return RationalPoly::zero();
        };
        // Difference table from the samples p(a), …, p(a + deg).
        let mut row: Vec<BigRational> = (0..=deg as i64).map(|i| self.eval_int(a + i)).collect();
        let mut newton = Vec::with_capacity(deg + 1);
        while !row.is_empty() {
            newton.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }

        let mut out = RationalPoly::zero();
        // basis = C(x-a, j+1), built incrementally.
        let mut basis = RationalPoly::one();
        for (j, b) in newton.iter().enumerate() {
            let factor = RationalPoly::from_coeffs(vec![
                BigRational::from_integer(BigInt::from(-(a + j as i64))),
                BigRational::one(),
            ])
            .scale(&BigRational::new(BigInt::one(), BigInt::from(j + 1)));
            basis = &basis * &factor;
            out = &out + &basis.scale(b);
        }
        out
    }

    pub fn one() -> Self {
        RationalPoly::from_int(1)
    }

    /// Least common multiple of the coefficient denominators (1 for zero).
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer numerators after clearing the common denominator, ascending.
    pub fn scaled_numerators(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.common_denominator();
        let nums = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (nums, d)
    }

    /// LaTeX rendering in the common-denominator style
    /// `\frac{1}{2}\left(x^{2}-x-2\right)`.
    pub fn to_latex(&self) -> String {
        let (nums, d) = self.scaled_numerators();
        let body = render_terms(&nums, |p| match p {
            1 => "x".to_string(),
            _ => format!("x^{{{p}}}"),
        });
        if d.is_one() {
            body
        } else {
            format!("\\frac{{1}}{{{d}}}\\left({body}\\right)")
        }
    }

    /// JSON form: `[[numerator, denominator], …]` ascending by power.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::Array(vec![big_json(c.numer()), big_json(c.denom())]))
                .collect(),
        )
    }
}

/// Exact JSON number for an arbitrary-size integer.
pub(crate) fn big_json(n: &impl ToString) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal is a valid JSON number"))
}

/// Renders `Σ nums[i] x^i` highest power first, e.g. `x^2-x-2`.
fn render_terms(nums: &[BigInt], var: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (power, c) in nums.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if power == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var(power));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Common-denominator display, `(x^2-x-2)/2`, or `x-1` when integral.
impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (nums, d) = self.scaled_numerators();
        let body = render_terms(&nums, |p| match p {
            1 => "x".to_string(),
            _ => format!("x^{p}"),
        });
        if d.is_one() {
            f.write_str(&body)
        } else {
            write!(f, "({body})/{d}")
        }
    }
}

impl<'a> Add<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        self + &(-rhs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}
