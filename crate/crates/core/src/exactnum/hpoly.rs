//! Dense polynomials in H = h³ over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::Rational;

/// A polynomial in H with rational coefficients, stored dense from degree
/// zero with no trailing zero coefficients.
///
/// Series coefficients of the pipeline live here: a solution strand's n-th
/// step carries exactly the monomial c·Hⁿ, and products accumulate into
/// general polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HPoly {
    coeffs: Vec<Rational>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        HPoly::constant(Rational::from_integer(1.into()))
    }

    pub fn constant(c: Rational) -> Self {
        HPoly::from_coeffs(vec![c])
    }

    /// The monomial c·H^deg.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        if c.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        HPoly { coeffs }
    }

    /// Builds from raw coefficients (degree 0 first), trimming trailing
    /// zeros to restore the canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of H^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by H^deg.
    pub fn shift(&self, deg: usize) -> Self {
        if self.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg];
        coeffs.extend(self.coeffs.iter().cloned());
        HPoly { coeffs }
    }

    /// Evaluates at a rational value of H.
    pub fn eval(&self, h_cubed: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * h_cubed + c;
        }
        acc
    }

    /// When the polynomial is a single monomial c·Hⁿ, returns (n, c).
    pub fn single_monomial(&self) -> Option<(usize, Rational)> {
        let deg = self.degree()?;
        if self.coeffs[..deg].iter().all(Zero::is_zero) {
            Some((deg, self.coeffs[deg].clone()))
        } else {
            None
        }
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        HPoly::from_coeffs(coeffs)
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        HPoly::from_coeffs(coeffs)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        if self.is_zero() || rhs.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*H", c)?,
                _ => write!(f, "{}*H^{}", c, i)?,
            }
        }
        Ok(())
    }
}
