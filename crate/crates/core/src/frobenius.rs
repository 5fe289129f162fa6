//! Exact Frobenius series for ζ'' = r(x)ζ at the regular singular point
//! x = 0.
//!
//! Because r expands in powers of s = h³x³, the recurrence only couples
//! coefficients three steps apart: a solution starting at exponent ρ lives
//! on the lattice ρ + 3ℕ. [`StrandSeries`] makes that lattice structure a
//! first-class invariant: a series is a finite set of strands, each a base
//! exponent with coefficients in ℚ[H] ⊕ ℚ[H]·d, pairwise distinct modulo
//! 3. An integer exponent difference that is not a multiple of 3 (such as
//! the 4 between 5/2 and −3/2) therefore causes no resonance, which is why
//! the second-level fundamental pair is log-free.
//!
//! Every series carries a truncation order: all exponents strictly below
//! it are exact, everything above is unknown. Products and sums propagate
//! truncation pessimistically, so the residue extractor can refuse to
//! answer rather than return an inexact coefficient.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, rational_sqrt, HPoly, ParamCoeff, Rational};
use crate::variational::NormalFormEquation;

/// Default safety cap on recurrence steps; callers that auto-size their
/// truncation fail explicitly past it instead of grinding unboundedly.
pub const DEFAULT_STEP_CAP: usize = 200;

/// One exponent lattice ρ + 3ℕ with its coefficients.
#[derive(Debug, Clone, PartialEq)]
struct Strand {
    base: Rational,
    coeffs: Vec<ParamCoeff>,
}

impl Strand {
    fn exponent(&self, n: usize) -> Rational {
        &self.base + int(3 * n as i64)
    }
}

/// A finite sum of strands, exact below its truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct StrandSeries {
    strands: Vec<Strand>,
    truncation: Rational,
}

/// Residue class of an exponent modulo the step lattice 3ℤ.
fn lattice_class(e: &Rational) -> Rational {
    e - int(3) * (e / int(3)).floor()
}

impl StrandSeries {
    /// The zero series, known exactly below `truncation`.
    pub fn zero(truncation: Rational) -> Self {
        StrandSeries {
            strands: Vec::new(),
            truncation,
        }
    }

    /// A single strand x^base·(c₀ + c₁x³ + …), exact through its last
    /// stored coefficient.
    pub fn from_coeffs(base: Rational, coeffs: Vec<ParamCoeff>) -> Self {
        let truncation = &base + int(3 * coeffs.len() as i64);
        let mut s = StrandSeries {
            strands: vec![Strand { base, coeffs }],
            truncation,
        };
        s.normalize();
        s
    }

    /// A single term c·x^e, exact below `truncation`.
    pub fn monomial(exponent: Rational, coeff: ParamCoeff, truncation: Rational) -> Self {
        let mut s = StrandSeries {
            strands: vec![Strand {
                base: exponent,
                coeffs: vec![coeff],
            }],
            truncation,
        };
        s.normalize();
        s
    }

    pub fn truncation(&self) -> &Rational {
        &self.truncation
    }

    /// True when no nonzero coefficient is stored (zero up to truncation).
    pub fn is_null(&self) -> bool {
        self.strands.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<&Rational> {
        self.strands.iter().map(|s| &s.base).min()
    }

    /// Iterates (base, coefficients) over the strands.
    pub fn strands(&self) -> impl Iterator<Item = (&Rational, &[ParamCoeff])> {
        self.strands.iter().map(|s| (&s.base, s.coeffs.as_slice()))
    }

    /// The exact coefficient of x^e.
    ///
    /// # Errors
    ///
    /// `InsufficientTruncation` when e is at or past the truncation order,
    /// where stored data would be incomplete.
    pub fn coeff_at(&self, e: &Rational) -> Result<ParamCoeff> {
        if *e >= self.truncation {
            return Err(Error::InsufficientTruncation {
                truncation: self.truncation.clone(),
            });
        }
        for s in &self.strands {
            let step = (e - &s.base) / int(3);
            if step.is_integer() && !step.is_negative() {
                let n = step.to_integer().to_usize().expect("step fits usize");
                return Ok(s.coeffs.get(n).cloned().unwrap_or_else(ParamCoeff::zero));
            }
        }
        Ok(ParamCoeff::zero())
    }

    /// The coefficient of x^{−1}, the obstruction a logarithm leaves
    /// behind under integration.
    pub fn residue(&self) -> Result<ParamCoeff> {
        self.coeff_at(&int(-1))
    }

    pub fn add(&self, rhs: &StrandSeries) -> StrandSeries {
        let truncation = self.truncation.clone().min(rhs.truncation.clone());
        let mut strands = self.strands.clone();
        strands.extend(rhs.strands.iter().cloned());
        let mut out = StrandSeries {
            strands,
            truncation,
        };
        out.normalize();
        out
    }

    pub fn sub(&self, rhs: &StrandSeries) -> StrandSeries {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> StrandSeries {
        self.scale_coeff(&ParamCoeff::from_rational(int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> StrandSeries {
        self.scale_coeff(&ParamCoeff::from_rational(c.clone()))
    }

    /// Multiplies every coefficient by c (panics if that escapes the
    /// linear-in-d ring, as coefficient products do).
    pub fn scale_coeff(&self, c: &ParamCoeff) -> StrandSeries {
        let strands = self
            .strands
            .iter()
            .map(|s| Strand {
                base: s.base.clone(),
                coeffs: s.coeffs.iter().map(|a| a * c).collect(),
            })
            .collect();
        let mut out = StrandSeries {
            strands,
            truncation: self.truncation.clone(),
        };
        out.normalize();
        out
    }

    /// Multiplies by x^alpha.
    pub fn shift(&self, alpha: &Rational) -> StrandSeries {
        StrandSeries {
            strands: self
                .strands
                .iter()
                .map(|s| Strand {
                    base: &s.base + alpha,
                    coeffs: s.coeffs.clone(),
                })
                .collect(),
            truncation: &self.truncation + alpha,
        }
    }

    /// Product, with truncation propagated from both factors: the unknown
    /// tail of either factor pollutes exponents from its truncation plus
    /// the other factor's lowest exponent onward.
    pub fn mul(&self, rhs: &StrandSeries) -> StrandSeries {
        let mut truncation = &self.truncation + &rhs.truncation;
        if let Some(b) = rhs.min_exponent() {
            truncation = truncation.min(&self.truncation + b);
        }
        if let Some(b) = self.min_exponent() {
            truncation = truncation.min(&rhs.truncation + b);
        }
        let mut strands: Vec<Strand> = Vec::new();
        for s in &self.strands {
            for t in &rhs.strands {
                let mut coeffs =
                    vec![ParamCoeff::zero(); s.coeffs.len() + t.coeffs.len() - 1];
                for (i, a) in s.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in t.coeffs.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        coeffs[i + j] = &coeffs[i + j] + &(a * b);
                    }
                }
                strands.push(Strand {
                    base: &s.base + &t.base,
                    coeffs,
                });
            }
        }
        let mut out = StrandSeries {
            strands,
            truncation,
        };
        out.normalize();
        out
    }

    /// Termwise d/dx.
    pub fn derivative(&self) -> StrandSeries {
        let strands = self
            .strands
            .iter()
            .map(|s| Strand {
                base: &s.base - int(1),
                coeffs: s
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c.scale(&s.exponent(n)))
                    .collect(),
            })
            .collect();
        let mut out = StrandSeries {
            strands,
            truncation: &self.truncation - int(1),
        };
        out.normalize();
        out
    }

    /// Some(c) when every stored coefficient vanishes except possibly at
    /// exponent 0; the constant-series check behind Wronskian handling.
    pub fn constant_value(&self) -> Option<ParamCoeff> {
        let mut value = ParamCoeff::zero();
        for s in &self.strands {
            for (n, c) in s.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if s.exponent(n).is_zero() {
                    value = &value + c;
                } else {
                    return None;
                }
            }
        }
        Some(value)
    }

    /// Floating-point value at x > 0 for concrete h³ and d.
    pub fn eval_f64(&self, x: f64, h_cubed: &Rational, d: &Rational) -> f64 {
        let mut acc = 0.0;
        for s in &self.strands {
            for (n, c) in s.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = s.exponent(n).to_f64().unwrap_or(f64::NAN);
                let v = c.eval(h_cubed, d).to_f64().unwrap_or(f64::NAN);
                acc += v * x.powf(e);
            }
        }
        acc
    }

    /// Exact value at rational x ≠ 0 when every exponent is an integer;
    /// `None` otherwise (fractional powers leave ℚ).
    pub fn eval_exact(&self, x: &Rational, h_cubed: &Rational, d: &Rational) -> Option<Rational> {
        let mut acc = int(0);
        for s in &self.strands {
            for (n, c) in s.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = s.exponent(n);
                if !e.is_integer() {
                    return None;
                }
                let mut power = int(1);
                let (base, reps) = if e.is_negative() {
                    (int(1) / x, -e.to_integer().to_i64()?)
                } else {
                    (x.clone(), e.to_integer().to_i64()?)
                };
                for _ in 0..reps {
                    power = power * &base;
                }
                acc = acc + c.eval(h_cubed, d) * power;
            }
        }
        Some(acc)
    }

    /// Restores the invariants: drops data at or past the truncation,
    /// merges strands sharing a residue class mod 3, trims zero fringes,
    /// sorts by base.
    fn normalize(&mut self) {
        for s in &mut self.strands {
            // keep n with base + 3n < truncation
            let cap = (&self.truncation - &s.base) / int(3);
            let keep = if cap.is_positive() {
                cap.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
            } else {
                0
            };
            s.coeffs.truncate(keep);
            while s.coeffs.last().is_some_and(ParamCoeff::is_zero) {
                s.coeffs.pop();
            }
            while s.coeffs.first().is_some_and(ParamCoeff::is_zero) {
                s.coeffs.remove(0);
                s.base = &s.base + int(3);
            }
        }
        self.strands.retain(|s| !s.coeffs.is_empty());
        self.strands
            .sort_by(|a, b| lattice_class(&a.base).cmp(&lattice_class(&b.base)).then(a.base.cmp(&b.base)));
        let mut merged: Vec<Strand> = Vec::with_capacity(self.strands.len());
        for s in std::mem::take(&mut self.strands) {
            match merged.last_mut() {
                Some(prev) if lattice_class(&prev.base) == lattice_class(&s.base) => {
                    let offset = ((&s.base - &prev.base) / int(3))
                        .to_integer()
                        .to_usize()
                        .expect("sorted by base within class");
                    if prev.coeffs.len() < offset + s.coeffs.len() {
                        prev.coeffs.resize(offset + s.coeffs.len(), ParamCoeff::zero());
                    }
                    for (n, c) in s.coeffs.iter().enumerate() {
                        prev.coeffs[offset + n] = &prev.coeffs[offset + n] + c;
                    }
                }
                _ => merged.push(s),
            }
        }
        for s in &mut merged {
            while s.coeffs.last().is_some_and(ParamCoeff::is_zero) {
                s.coeffs.pop();
            }
            while s.coeffs.first().is_some_and(ParamCoeff::is_zero) {
                s.coeffs.remove(0);
                s.base = &s.base + int(3);
            }
        }
        merged.retain(|s| !s.coeffs.is_empty());
        merged.sort_by(|a, b| a.base.cmp(&b.base));
        self.strands = merged;
    }
}

impl fmt::Display for StrandSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strands.is_empty() {
            return write!(f, "0 + O(x^({}))", self.truncation);
        }
        let mut first_strand = true;
        for s in &self.strands {
            if !first_strand {
                write!(f, " + ")?;
            }
            first_strand = false;
            write!(f, "x^({}) * (", s.base)?;
            let mut first = true;
            for (n, c) in s.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if n == 0 {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "({})*x^{}", c, 3 * n)?;
                }
            }
            write!(f, ")")?;
        }
        write!(f, " + O(x^({}))", self.truncation)
    }
}

/// A fundamental pair of Frobenius solutions at x = 0.
#[derive(Debug, Clone)]
pub struct FrobeniusPair {
    /// The solution at the larger exponent ρ₁ (never resonant).
    pub first: StrandSeries,
    /// The solution at ρ₂, or the partial series up to the resonant step
    /// when `log_flag` is set.
    pub second: StrandSeries,
    /// (ρ₁, ρ₂) with ρ₁ ≥ ρ₂.
    pub exponents: (Rational, Rational),
    /// The exact constant W = first·second' − second·first'; zero and
    /// meaningless when `log_flag` is set.
    pub wronskian: ParamCoeff,
    /// True when the ρ₂ recurrence hit a nonzero obstruction, so the
    /// second solution needs a logarithm.
    pub log_flag: bool,
}

impl FrobeniusPair {
    pub fn is_normalized(&self) -> bool {
        !self.log_flag && self.wronskian == ParamCoeff::one()
    }
}

/// The two indicial roots of ζ'' = rζ at x = 0, larger first.
///
/// c₀ may vanish (then x = 0 is an ordinary point and the roots are
/// (1, 0), as for r ≡ 0 or the τ = ±2/3 family); what is rejected is a
/// pole of order other than 2, which the structured form cannot mean.
///
/// # Errors
///
/// - `InvalidParams` when r ≠ 0 sits on a variable power other than −2.
/// - `NonRationalExponents` when 1 + 4c₀ is not a rational square.
pub fn indicial_roots(nf: &NormalFormEquation) -> Result<(Rational, Rational)> {
    let c0 = leading_coefficient(nf)?;
    let disc = int(1) + int(4) * &c0;
    let root = if disc.is_negative() {
        None
    } else {
        rational_sqrt(&disc)
    };
    let root = root.ok_or(Error::NonRationalExponents { discriminant: disc })?;
    Ok(((int(1) + &root) / int(2), (int(1) - &root) / int(2)))
}

/// c₀ after validating that r is an honest x⁻²-weighted series.
fn leading_coefficient(nf: &NormalFormEquation) -> Result<Rational> {
    if nf.r.is_zero() {
        return Ok(int(0));
    }
    if nf.r.exponent() != -2 {
        return Err(Error::InvalidParams(format!(
            "r sits on variable power {}, not the double pole -2",
            nf.r.exponent()
        )));
    }
    nf.c0()
}

enum Recurrence {
    Complete(Vec<ParamCoeff>),
    Resonant {
        step: usize,
        obstruction: ParamCoeff,
        partial: Vec<ParamCoeff>,
    },
}

fn run_recurrence(
    nf: &NormalFormEquation,
    rho: &Rational,
    order: usize,
    cap: usize,
) -> Result<Recurrence> {
    if order == 0 {
        return Err(Error::InvalidParams("series order must be positive".into()));
    }
    if order > cap {
        return Err(Error::TruncationCap {
            needed: order,
            cap,
        });
    }
    let c0 = leading_coefficient(nf)?;
    let r_coeffs = nf.r_taylor(order)?;
    if rho * (rho - int(1)) != c0 {
        return Err(Error::InvalidParams(format!(
            "{} is not an indicial root: rho(rho-1) = {} but c0 = {}",
            rho,
            rho * (rho - int(1)),
            c0
        )));
    }
    let mut a = vec![ParamCoeff::one()];
    for n in 1..=order {
        let e = rho + int(3 * n as i64);
        let denom = &e * (&e - int(1)) - &c0;
        let mut rhs = ParamCoeff::zero();
        for m in 1..=n {
            if r_coeffs[m].is_zero() {
                continue;
            }
            let r_m = ParamCoeff::from_a(HPoly::monomial(m, r_coeffs[m].clone()));
            rhs = &rhs + &(&r_m * &a[n - m]);
        }
        if denom.is_zero() {
            if rhs.is_zero() {
                // the resonant coefficient is free; the standard choice 0
                // keeps the solution a pure power series
                a.push(ParamCoeff::zero());
                continue;
            }
            return Ok(Recurrence::Resonant {
                step: n,
                obstruction: rhs,
                partial: a,
            });
        }
        a.push(rhs.scale(&(int(1) / denom)));
    }
    Ok(Recurrence::Complete(a))
}

/// The Frobenius solution x^ρ(1 + a₃x³ + a₆x⁶ + …) through `order` steps,
/// coefficients exact in ℚ[H].
///
/// # Errors
///
/// - `LogRequired` when the recurrence hits a resonance with nonzero
///   obstruction (only possible from the smaller root, at a step where
///   ρ + 3n reaches the larger root).
/// - `TruncationCap` past the step cap; `InvalidParams` for a ρ that is
///   not an indicial root or a zero order.
pub fn frobenius_series(
    nf: &NormalFormEquation,
    rho: &Rational,
    order: usize,
) -> Result<StrandSeries> {
    frobenius_series_capped(nf, rho, order, DEFAULT_STEP_CAP)
}

/// [`frobenius_series`] with an explicit step cap.
pub fn frobenius_series_capped(
    nf: &NormalFormEquation,
    rho: &Rational,
    order: usize,
    cap: usize,
) -> Result<StrandSeries> {
    match run_recurrence(nf, rho, order, cap)? {
        Recurrence::Complete(coeffs) => Ok(StrandSeries::from_coeffs(rho.clone(), coeffs)),
        Recurrence::Resonant {
            step, obstruction, ..
        } => Err(Error::LogRequired {
            step,
            obstruction: obstruction.to_string(),
        }),
    }
}

/// Both Frobenius solutions with their exact Wronskian constant.
///
/// When the second recurrence hits a nonzero obstruction the pair comes
/// back with `log_flag` set and the second series truncated just below
/// the resonant exponent; downstream consumers refuse such pairs.
pub fn solve_pair(nf: &NormalFormEquation, order: usize) -> Result<FrobeniusPair> {
    solve_pair_capped(nf, order, DEFAULT_STEP_CAP)
}

/// [`solve_pair`] with an explicit step cap.
pub fn solve_pair_capped(
    nf: &NormalFormEquation,
    order: usize,
    cap: usize,
) -> Result<FrobeniusPair> {
    let (rho1, rho2) = indicial_roots(nf)?;
    let first = match run_recurrence(nf, &rho1, order, cap)? {
        Recurrence::Complete(coeffs) => StrandSeries::from_coeffs(rho1.clone(), coeffs),
        Recurrence::Resonant { step, obstruction, .. } => {
            return Err(Error::LogRequired {
                step,
                obstruction: obstruction.to_string(),
            })
        }
    };
    match run_recurrence(nf, &rho2, order, cap)? {
        Recurrence::Complete(coeffs) => {
            let second = StrandSeries::from_coeffs(rho2.clone(), coeffs);
            let wronskian = wronskian_constant(&first, &second)?;
            Ok(FrobeniusPair {
                first,
                second,
                exponents: (rho1, rho2),
                wronskian,
                log_flag: false,
            })
        }
        Recurrence::Resonant { step, partial, .. } => {
            let mut second = StrandSeries::from_coeffs(rho2.clone(), partial);
            // the stored coefficients stop being a solution at the
            // resonant exponent, so the truncation is pulled back to it
            second.truncation = &rho2 + int(3 * step as i64);
            second.normalize();
            Ok(FrobeniusPair {
                first,
                second,
                exponents: (rho1, rho2),
                wronskian: ParamCoeff::zero(),
                log_flag: true,
            })
        }
    }
}

/// W(f, g) = f·g' − g·f' as an exact constant.
///
/// # Errors
///
/// `InvalidParams` when the series Wronskian fails to be constant up to
/// truncation (impossible for genuine solutions of the same equation).
pub fn wronskian_constant(f: &StrandSeries, g: &StrandSeries) -> Result<ParamCoeff> {
    let w = f.mul(&g.derivative()).sub(&g.mul(&f.derivative()));
    w.constant_value().ok_or_else(|| {
        Error::InvalidParams(format!("Wronskian is not constant: {}", w))
    })
}

/// Rescales the second solution so that W = 1 exactly; idempotent.
///
/// # Errors
///
/// `InvalidParams` when the pair is logarithmic, when the exponent
/// difference lies in 3ℤ (the strands collide, so the pair is not a
/// clean two-strand system), or when the Wronskian is not a nonzero
/// rational constant.
pub fn normalize_wronskian(pair: &FrobeniusPair) -> Result<FrobeniusPair> {
    if pair.log_flag {
        return Err(Error::InvalidParams(
            "logarithmic pair cannot be Wronskian-normalized".into(),
        ));
    }
    let diff = &pair.exponents.0 - &pair.exponents.1;
    if (&diff / int(3)).is_integer() {
        return Err(Error::InvalidParams(format!(
            "exponent difference {} lies in 3Z; the strands collide",
            diff
        )));
    }
    let w = &pair.wronskian;
    let w0 = if w.is_d_free() && w.a.degree().unwrap_or(0) == 0 {
        w.a.coeff(0)
    } else {
        return Err(Error::InvalidParams(format!(
            "Wronskian {} is not a rational constant",
            w
        )));
    };
    if w0.is_zero() {
        return Err(Error::InvalidParams(
            "Wronskian vanishes; the pair is dependent".into(),
        ));
    }
    let second = pair.second.scale(&(int(1) / &w0));
    let wronskian = wronskian_constant(&pair.first, &second)?;
    debug_assert_eq!(wronskian, ParamCoeff::one());
    Ok(FrobeniusPair {
        first: pair.first.clone(),
        second,
        exponents: pair.exponents.clone(),
        wronskian,
        log_flag: false,
    })
}

/// r itself on the strand lattice: x^{−2}·Σ R_m H^m x^{3m}, for plug-back
/// checks and right-hand-side assembly.
pub fn r_series(nf: &NormalFormEquation, order: usize) -> Result<StrandSeries> {
    let coeffs = nf
        .r_taylor(order)?
        .into_iter()
        .enumerate()
        .map(|(m, c)| ParamCoeff::from_a(HPoly::monomial(m, c)))
        .collect();
    Ok(StrandSeries::from_coeffs(int(-2), coeffs))
}

/// ζ'' − rζ for a candidate solution; exact solutions leave a series
/// with no stored coefficients (zero up to its truncation).
pub fn plugback_residual(nf: &NormalFormEquation, zeta: &StrandSeries) -> Result<StrandSeries> {
    let order = ((&zeta.truncation - zeta.min_exponent().unwrap_or(&int(0))) / int(3))
        .ceil()
        .to_integer()
        .to_usize()
        .unwrap_or(1)
        .max(1);
    let r = r_series(nf, order)?;
    Ok(zeta.derivative().derivative().sub(&r.mul(zeta)))
}
