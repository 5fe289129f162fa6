//! Structured functions t^e·R(s) on the two coordinate charts.
//!
//! Every coefficient appearing in the variational equations is a power of
//! the chart variable times a rational function of the combination
//! s = h³x³ (chart X, around x = 0) or s = h³/w³ (chart W, around w = 0).
//! The cube of the coupling constant stays symbolic; writing H = h³, the
//! two charts are glued by w = 1/x, under which s is invariant and the
//! variable power flips sign. Closure under the ring operations and under
//! d/dt keeps the whole pipeline inside this class.

use std::fmt;

use num_traits::Zero;

use crate::exactnum::{int, Rational};

use super::ratfun::{Poly, RatFun};

/// Which local coordinate the function is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// Variable w, s = h³/w³; the plane-curve chart.
    W,
    /// Variable x = 1/w, s = h³x³; the chart centred at the former infinity.
    X,
}

impl Chart {
    pub fn variable(self) -> &'static str {
        match self {
            Chart::W => "w",
            Chart::X => "x",
        }
    }

    pub fn other(self) -> Chart {
        match self {
            Chart::W => Chart::X,
            Chart::X => Chart::W,
        }
    }
}

/// A function of the form t^e·R(s) on a fixed chart.
#[derive(Debug, Clone)]
pub struct Structured {
    chart: Chart,
    e: i64,
    r: RatFun,
}

impl Structured {
    pub fn new(chart: Chart, e: i64, r: RatFun) -> Self {
        Structured { chart, e, r }
    }

    pub fn zero(chart: Chart) -> Self {
        Structured::new(chart, 0, RatFun::zero())
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn ratfun(&self) -> &RatFun {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Structured::new(self.chart, self.e, self.r.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn mul(&self, rhs: &Structured) -> Self {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in product");
        Structured::new(self.chart, self.e + rhs.e, &self.r * &rhs.r)
    }

    /// Sum of two functions with the same variable power.
    ///
    /// Mixed powers leave the representable class, so they are rejected
    /// rather than silently mangled; the callers only ever combine terms
    /// of equal exponent (a', a² and b all sit at e−1 = −2).
    pub fn add(&self, rhs: &Structured) -> Self {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in sum");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.e, rhs.e,
            "sum of structured functions with different variable powers"
        );
        Structured::new(self.chart, self.e, &self.r + &rhs.r)
    }

    pub fn sub(&self, rhs: &Structured) -> Self {
        self.add(&rhs.neg())
    }

    /// d/dt on the chart's own variable.
    ///
    /// With s = h³t³ one has t·ds/dt = 3s; with s = h³/t³ the sign flips.
    /// Either way the derivative stays in the class, one power down.
    pub fn derivative(&self) -> Self {
        let s_rprime = &RatFun::from_poly(Poly::var()) * &self.r.derivative();
        let chain = match self.chart {
            Chart::X => s_rprime.scale(&int(3)),
            Chart::W => s_rprime.scale(&int(-3)),
        };
        let er = self.r.scale(&int(self.e));
        Structured::new(self.chart, self.e - 1, &er + &chain)
    }

    /// The same function written on the other chart via w = 1/x.
    ///
    /// s is invariant under the swap, so only the variable power flips.
    pub fn swap_chart(&self) -> Self {
        Structured::new(self.chart.other(), -self.e, self.r.clone())
    }

    /// Exact evaluation at a rational point of the chart variable, for a
    /// fixed rational value of h³. `None` on poles and at t = 0 with e < 0.
    pub fn eval(&self, t: &Rational, h_cubed: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return Some(int(0));
        }
        if t.is_zero() {
            return if self.e >= 0 {
                let s0 = match self.chart {
                    Chart::X => int(0),
                    Chart::W => return None,
                };
                let v = self.r.eval(&s0)?;
                Some(if self.e == 0 { v } else { int(0) })
            } else {
                None
            };
        }
        let t3 = t * t * t;
        let s = match self.chart {
            Chart::X => h_cubed * &t3,
            Chart::W => h_cubed / &t3,
        };
        let v = self.r.eval(&s)?;
        let mut power = int(1);
        let (base, n) = if self.e >= 0 {
            (t.clone(), self.e)
        } else {
            (int(1) / t, -self.e)
        };
        for _ in 0..n {
            power = power * &base;
        }
        Some(v * power)
    }

    /// f64 evaluation with h³ fixed, for the numeric cross-checks.
    pub fn eval_f64(&self, t: f64, h_cubed: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let s = match self.chart {
            Chart::X => h_cubed * t.powi(3),
            Chart::W => h_cubed / t.powi(3),
        };
        let horner = |p: &Poly| -> f64 {
            let mut acc = 0.0;
            for c in p.coeffs().iter().rev() {
                acc = acc * s + rational_to_f64(c);
            }
            acc
        };
        let num = horner(self.r.num());
        let den = horner(self.r.den());
        num / den * t.powi(self.e as i32)
    }
}

fn rational_to_f64(c: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Equality of structured functions as functions: zero compares equal to
/// zero regardless of the stored power.
impl PartialEq for Structured {
    fn eq(&self, other: &Self) -> bool {
        if self.chart != other.chart {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.e == other.e && self.r == other.r
    }
}

impl fmt::Display for Structured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.chart.variable();
        match self.e {
            0 => write!(f, "{}", self.r)?,
            1 => write!(f, "{} * [{}]", var, self.r)?,
            e => write!(f, "{}^{} * [{}]", var, e, self.r)?,
        }
        match self.chart {
            Chart::W => write!(f, "  (s = h^3/w^3)"),
            Chart::X => write!(f, "  (s = h^3 x^3)"),
        }
    }
}
