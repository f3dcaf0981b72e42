//! Dense integer polynomials and the tower of exact divided differences
//! over the geometric sum, the engine behind the binomial identities.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactInt;

/// Dense polynomial with exact integer coefficients, constant term first.
/// The trailing coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactInt) -> Self {
        IntPolynomial { coeffs: vec![c] }.normalized()
    }

    pub fn from_coeffs(coeffs: Vec<ExactInt>) -> Self {
        IntPolynomial { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactInt) -> ExactInt {
        let mut acc = ExactInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Value at 1, which is also the coefficient sum.
    pub fn eval_one(&self) -> ExactInt {
        self.coeffs.iter().cloned().sum()
    }

    pub fn sub_constant(&self, c: &ExactInt) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(-c.clone());
        } else {
            coeffs[0] -= c;
        }
        IntPolynomial { coeffs }.normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![ExactInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPolynomial { coeffs }.normalized()
    }

    /// Synthetic division by (X - 1). Errors if a remainder appears;
    /// callers in this crate divide polynomials that are divisible by
    /// construction, so a remainder means a bug upstream.
    pub fn div_exact_by_x_minus_one(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![ExactInt::zero(); n.saturating_sub(1)];
        let mut carry = ExactInt::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + &carry;
            quotient[i - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] + carry;
        if !remainder.is_zero() {
            return Err(Error::NonExactDivision {
                remainder: remainder.to_string(),
            });
        }
        Ok(IntPolynomial { coeffs: quotient }.normalized())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// The geometric sum X^{r-2} + … + X + 1, defined for r >= 2.
pub fn geometric_sum_poly(r: u64) -> Result<IntPolynomial> {
    if r < 2 {
        return Err(Error::Range(format!("geometric sum needs r >= 2, got {r}")));
    }
    Ok(IntPolynomial::from_coeffs(vec![
        ExactInt::one();
        (r - 1) as usize
    ]))
}

/// Level-`i` member of the divided-difference tower over the geometric sum:
/// level 1 is the sum itself, and each further level divides out (X - 1)
/// after dropping the value at 1. Every division is checked to be exact.
///
/// Valid for 1 <= i <= r-1.
pub fn tower_poly(i: u64, r: u64) -> Result<IntPolynomial> {
    if i < 1 || r < i + 1 {
        return Err(Error::Range(format!(
            "tower polynomial needs 1 <= i <= r-1, got i={i}, r={r}"
        )));
    }
    let mut p = geometric_sum_poly(r)?;
    for _ in 1..i {
        p = p.sub_constant(&p.eval_one()).div_exact_by_x_minus_one()?;
    }
    Ok(p)
}
