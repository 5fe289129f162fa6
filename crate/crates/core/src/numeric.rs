//! Floating-point oracle for the exact pipeline.
//!
//! Everything else in the crate computes exactly; this module is where
//! floats enter, and the point is independence. An adaptive Runge-Kutta
//! integrator solves ζ'' = r(x)ζ and the full Hamiltonian flow directly
//! from the differential equations, with no knowledge of the Frobenius
//! recurrence, so agreement between a [`StrandSeries`] and the
//! integrated solution checks the series against the equation itself
//! rather than against shared code.
//!
//! Integrations run in extended precision ([`BigF`], 128 significand
//! bits by default, never below 80) so that the reported deviations
//! measure integration error, not roundoff. Everything here is
//! deterministic: no randomness, no threads, and identical inputs
//! produce bitwise-identical reports.

use dashu_float::{round::mode::HalfEven, FBig};
use dashu_int::IBig;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::frobenius::{FrobeniusPair, StrandSeries};
use crate::model::{hamiltonian, vector_field, PhaseState, PotentialParams, Scalar};
use crate::variational::{Chart, NormalFormEquation, Structured};

/// Working precision of [`BigF`] values created without an explicit bit
/// count. Twice what the oracle needs, and cheap at these sizes.
pub const BIG_DEFAULT_BITS: usize = 128;

/// The smallest extended precision the integrator accepts.
pub const BIG_MIN_BITS: usize = 80;

type Wide = FBig<HalfEven, 2>;

/// Field operations the integrator needs beyond [`Scalar`].
///
/// `f64` implements this for cheap smoke paths; [`BigF`] is the type the
/// oracle actually runs on. `sqrt` is only ever called on non-negative
/// values.
pub trait Real: Scalar + PartialOrd {
    /// Lifts an exact rational, carrying at least `bits` significand
    /// bits when the type has adjustable precision. Fixed-width types
    /// treat the request as advisory.
    fn from_rational_bits(q: &Rational, bits: usize) -> Self;

    /// Exact image of a finite float.
    fn from_f64(x: f64) -> Self;

    /// Nearest float; used for step control and reporting only.
    fn to_f64(&self) -> f64;

    fn div(&self, rhs: &Self) -> Self;

    fn sqrt(&self) -> Self;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Real for f64 {
    fn from_rational_bits(q: &Rational, _bits: usize) -> Self {
        <f64 as Scalar>::from_rational(q)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
}

/// Extended-precision binary float: round-to-nearest-even significand
/// of at least [`BIG_MIN_BITS`] bits.
///
/// Precision rides along with the values: dashu propagates the larger
/// operand precision through arithmetic, so seeding a run at `bits`
/// keeps the whole computation there.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct BigF(Wide);

impl BigF {
    /// Exact image of a finite float at the given working precision.
    pub fn lift_f64(x: f64, bits: usize) -> Self {
        let w = Wide::try_from(x).expect("lift_f64 requires a finite float");
        BigF(w.with_precision(bits.max(1)).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
}

fn ibig(n: &BigInt) -> IBig {
    IBig::from_str_radix(&n.to_str_radix(16), 16).expect("radix-16 integer round-trip")
}

impl Scalar for BigF {
    fn zero() -> Self {
        BigF(Wide::ZERO.with_precision(BIG_DEFAULT_BITS).value())
    }

    fn from_rational(q: &Rational) -> Self {
        <BigF as Real>::from_rational_bits(q, BIG_DEFAULT_BITS)
    }

    fn add(&self, rhs: &Self) -> Self {
        BigF(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        BigF(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        BigF(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        BigF(-self.0.clone())
    }
}

impl Real for BigF {
    fn from_rational_bits(q: &Rational, bits: usize) -> Self {
        let bits = bits.max(1);
        let num = Wide::from(ibig(q.numer())).with_precision(bits).value();
        let den = Wide::from(ibig(q.denom())).with_precision(bits).value();
        BigF(num / den)
    }

    fn from_f64(x: f64) -> Self {
        BigF::lift_f64(x, BIG_DEFAULT_BITS)
    }

    fn to_f64(&self) -> f64 {
        BigF::to_f64(self)
    }

    fn div(&self, rhs: &Self) -> Self {
        BigF(&self.0 / &rhs.0)
    }

    fn sqrt(&self) -> Self {
        BigF(self.0.sqrt())
    }
}

/// Controls for the adaptive integrator.
#[derive(Debug, Clone)]
pub struct IntegrationConfig {
    /// Per-step relative tolerance, in (0, 1e-6].
    pub rel_tol: f64,
    /// Per-step absolute tolerance, in (0, 1e-6].
    pub abs_tol: f64,
    /// Budget of attempted steps before giving up.
    pub max_steps: usize,
    /// Significand bits for precision-adjustable scalars, at least 80.
    pub precision_bits: usize,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-12,
            max_steps: 200_000,
            precision_bits: BIG_DEFAULT_BITS,
        }
    }
}

impl IntegrationConfig {
    /// Rejects configurations the controller cannot honor. Tolerances
    /// above 1e-6 would let the step controller outrun the validation
    /// bounds this module exists to certify, so they are out of range
    /// rather than merely inadvisable.
    pub fn validate(&self) -> Result<()> {
        for (name, tol) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
            if !(tol > 0.0 && tol <= 1e-6) {
                return Err(Error::InvalidParams(format!(
                    "{name} = {tol:e} is outside (0, 1e-6]"
                )));
            }
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParams(
                "max_steps = 0 leaves no step budget".into(),
            ));
        }
        if self.precision_bits < BIG_MIN_BITS {
            return Err(Error::InvalidParams(format!(
                "precision_bits = {} is below the {BIG_MIN_BITS}-bit floor",
                self.precision_bits
            )));
        }
        Ok(())
    }
}

/// Dormand-Prince 5(4) tableau, exact. Row `DP_A[5]` doubles as the
/// fifth-order weights; the first-same-as-last evaluation supplies the
/// seventh stage.
const DP_C: [(i64, i64); 6] = [(1, 5), (3, 10), (4, 5), (8, 9), (1, 1), (1, 1)];
const DP_A: [&[(i64, i64)]; 6] = [
    &[(1, 5)],
    &[(3, 40), (9, 40)],
    &[(44, 45), (-56, 15), (32, 9)],
    &[(19372, 6561), (-25360, 2187), (64448, 6561), (-212, 729)],
    &[(9017, 3168), (-355, 33), (46732, 5247), (49, 176), (-5103, 18656)],
    &[(35, 384), (0, 1), (500, 1113), (125, 192), (-2187, 6784), (11, 84)],
];
const DP_B4: [(i64, i64); 7] = [
    (5179, 57600),
    (0, 1),
    (7571, 16695),
    (393, 640),
    (-92097, 339200),
    (187, 2100),
    (1, 40),
];

fn lift_ratio<T: Real>(pair: (i64, i64), bits: usize) -> T {
    T::from_rational_bits(&crate::exactnum::rat(pair.0, pair.1), bits)
}

/// Every accepted step of an integration: times, states, and the step
/// counts that produced them.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
    pub accepted: usize,
    pub rejected: usize,
}

impl<T> Trajectory<T> {
    pub fn final_time(&self) -> &T {
        self.times.last().expect("trajectory holds the initial point")
    }

    pub fn final_state(&self) -> &[T] {
        self.states.last().expect("trajectory holds the initial point")
    }
}

/// Integrates y' = field(t, y) from `t0` to `t_end` with the embedded
/// Dormand-Prince 5(4) pair, propagating the fifth-order solution.
///
/// The error estimate is scaled per component by
/// `abs_tol + rel_tol·max(|y_i|, |y_new_i|)` and steps are chosen so the
/// RMS of the scaled estimate stays at or below one.
///
/// # Errors
///
/// [`Error::StepsExhausted`] when the attempt budget runs out, and
/// [`Error::StepUnderflow`] with the location when the controller drives
/// the step under float resolution, the signature of a singularity or a
/// finite-time blowup inside the span.
pub fn integrate<T, F>(
    field: &F,
    t0: T,
    y0: Vec<T>,
    t_end: T,
    config: &IntegrationConfig,
) -> Result<Trajectory<T>>
where
    T: Real,
    F: Fn(&T, &[T]) -> Vec<T>,
{
    config.validate()?;
    let bits = config.precision_bits;
    let dim = y0.len();
    if dim == 0 {
        return Err(Error::InvalidParams("empty state vector".into()));
    }

    let c: Vec<T> = DP_C.iter().map(|&p| lift_ratio(p, bits)).collect();
    let a: Vec<Vec<T>> = DP_A
        .iter()
        .map(|row| row.iter().map(|&p| lift_ratio(p, bits)).collect())
        .collect();
    let b4: Vec<T> = DP_B4.iter().map(|&p| lift_ratio(p, bits)).collect();
    // b5 is DP_A[5] padded with the zero weight of the FSAL stage.
    let mut err_w: Vec<T> = Vec::with_capacity(7);
    for j in 0..7 {
        let b5j = if j < 6 { a[5][j].clone() } else { T::zero() };
        err_w.push(b5j.sub(&b4[j]));
    }

    let mut times = vec![t0.clone()];
    let mut states = vec![y0.clone()];
    let span = t_end.sub(&t0);
    if span == T::zero() {
        return Ok(Trajectory { times, states, accepted: 0, rejected: 0 });
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = field(&t, &y);
    if k1.len() != dim {
        return Err(Error::InvalidParams(
            "field dimension does not match the state".into(),
        ));
    }
    let mut h = span.mul(&T::from_f64(2f64.powi(-8)));
    let (mut accepted, mut rejected) = (0usize, 0usize);

    loop {
        if accepted + rejected >= config.max_steps {
            return Err(Error::StepsExhausted { max_steps: config.max_steps });
        }

        // Clamp the final step onto the endpoint exactly.
        let remaining = t_end.sub(&t);
        let last = h.abs() >= remaining.abs();
        if last {
            h = remaining;
        }
        let t_f = t.to_f64();
        if h.to_f64().abs() < f64::EPSILON * t_f.abs().max(1.0) {
            return Err(Error::StepUnderflow { location: t_f });
        }

        let mut ks: Vec<Vec<T>> = Vec::with_capacity(7);
        ks.push(k1.clone());
        let mut y_new = Vec::new();
        for s in 0..6 {
            let mut ys = Vec::with_capacity(dim);
            for i in 0..dim {
                let mut acc = T::zero();
                for (j, aij) in a[s].iter().enumerate() {
                    acc = acc.add(&aij.mul(&ks[j][i]));
                }
                ys.push(y[i].add(&h.mul(&acc)));
            }
            let ts = if s == 5 {
                if last { t_end.clone() } else { t.add(&h) }
            } else {
                t.add(&h.mul(&c[s]))
            };
            let k = field(&ts, &ys);
            ks.push(k);
            if s == 5 {
                y_new = ys;
            }
        }

        let mut sum_sq = 0.0;
        for i in 0..dim {
            let mut err = T::zero();
            for j in 0..7 {
                err = err.add(&err_w[j].mul(&ks[j][i]));
            }
            let err = h.mul(&err).abs().to_f64();
            let scale = config.abs_tol
                + config.rel_tol * y[i].abs().to_f64().max(y_new[i].abs().to_f64());
            sum_sq += (err / scale).powi(2);
        }
        let err_norm = (sum_sq / dim as f64).sqrt();

        if err_norm <= 1.0 {
            accepted += 1;
            t = if last { t_end.clone() } else { t.add(&h) };
            y = y_new;
            k1 = ks.pop().expect("seven stages");
            times.push(t.clone());
            states.push(y.clone());
            if last {
                return Ok(Trajectory { times, states, accepted, rejected });
            }
        } else {
            rejected += 1;
        }

        let mut factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        if err_norm > 1.0 {
            factor = factor.min(1.0);
        }
        h = h.mul(&T::from_f64(factor));
    }
}

/// Integrates the Hamiltonian flow in extended precision and reports
/// the largest relative energy drift max |H(t) − H(0)| / |H(0)| over
/// the sampled trajectory. This is the crate's end-to-end check that
/// the numeric lane solves the true equations of motion.
pub fn flow_energy_drift(
    params: &PotentialParams,
    initial: &PhaseState<f64>,
    t_end: f64,
    config: &IntegrationConfig,
) -> Result<f64> {
    config.validate()?;
    let bits = config.precision_bits;
    let lift = |x: f64| BigF::lift_f64(x, bits);
    let y0 = vec![
        lift(initial.r),
        lift(initial.p_r),
        lift(initial.z),
        lift(initial.p_z),
    ];
    let field = |_t: &BigF, y: &[BigF]| {
        let state = PhaseState::new(y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone());
        let dot = vector_field(&state, params);
        vec![dot.r, dot.p_r, dot.z, dot.p_z]
    };
    let trajectory = integrate(&field, lift(0.0), y0, lift(t_end), config)?;

    let energy = |y: &[BigF]| {
        let state = PhaseState::new(y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone());
        hamiltonian(&state, params)
    };
    let h0 = energy(&trajectory.states[0]);
    if h0 == BigF::zero() {
        return Err(Error::InvalidParams(
            "zero initial energy admits no relative drift".into(),
        ));
    }
    let mut worst: f64 = 0.0;
    for state in &trajectory.states[1..] {
        let drift = energy(state).sub(&h0).div(&h0).abs().to_f64();
        worst = worst.max(drift);
    }
    Ok(worst)
}

/// x^(m) for integer m, with division for negative powers.
fn int_pow<T: Real>(x: &T, m: i64) -> T {
    if m >= 0 {
        x.pow_u(m as u32)
    } else {
        T::from_int(1).div(&x.pow_u((-m) as u32))
    }
}

/// q-th root of a positive value: Newton iteration on y^q = x from a
/// float seed. Six quadratic doublings carry a 53-bit seed past 3000
/// bits, far beyond any working precision used here.
fn nth_root<T: Real>(x: &T, q: u32) -> T {
    let mut y = T::from_f64(x.to_f64().powf(1.0 / q as f64));
    let qt = T::from_int(q as i64);
    let qm1 = T::from_int(q as i64 - 1);
    for _ in 0..6 {
        y = qm1.mul(&y).add(&x.div(&y.pow_u(q - 1))).div(&qt);
    }
    y
}

/// x^e for rational e and positive x.
fn pow_rational<T: Real>(x: &T, e: &Rational) -> T {
    let m = e
        .numer()
        .to_i64()
        .expect("series exponents fit in machine integers");
    let q = e
        .denom()
        .to_u32()
        .expect("series exponents fit in machine integers");
    if q == 1 {
        return int_pow(x, m);
    }
    let root = if q == 2 { x.sqrt() } else { nth_root(x, q) };
    int_pow(&root, m)
}

/// A structured function t^e·R(s) with its coefficients lifted into T,
/// so the integrator's field closures do not convert rationals on every
/// evaluation.
struct LiftedStructured<T> {
    chart: Chart,
    e: i64,
    num: Vec<T>,
    den: Vec<T>,
    h_cubed: T,
}

impl<T: Real> LiftedStructured<T> {
    fn new(f: &Structured, h_cubed: &Rational, bits: usize) -> Self {
        let lift = |c: &Rational| T::from_rational_bits(c, bits);
        LiftedStructured {
            chart: f.chart(),
            e: f.exponent(),
            num: f.ratfun().num().coeffs().iter().map(lift).collect(),
            den: f.ratfun().den().coeffs().iter().map(lift).collect(),
            h_cubed: lift(h_cubed),
        }
    }

    fn eval(&self, t: &T) -> T {
        let t3 = t.pow_u(3);
        let s = match self.chart {
            Chart::X => self.h_cubed.mul(&t3),
            Chart::W => self.h_cubed.div(&t3),
        };
        let horner = |cs: &[T]| {
            let mut acc = T::zero();
            for c in cs.iter().rev() {
                acc = acc.mul(&s).add(c);
            }
            acc
        };
        horner(&self.num).div(&horner(&self.den)).mul(&int_pow(t, self.e))
    }
}

/// Evaluates a strand series at a positive point, with h³ and d fixed.
/// Exact coefficients are lifted at `bits` significand bits.
pub fn eval_series<T: Real>(
    series: &StrandSeries,
    x: &T,
    h_cubed: &Rational,
    d: &Rational,
    bits: usize,
) -> T {
    let x3 = x.pow_u(3);
    let mut acc = T::zero();
    for (base, coeffs) in series.strands() {
        let mut power = pow_rational(x, base);
        for c in coeffs {
            if !c.is_zero() {
                let value = T::from_rational_bits(&c.eval(h_cubed, d), bits);
                acc = acc.add(&value.mul(&power));
            }
            power = power.mul(&x3);
        }
    }
    acc
}

/// Outcome of cross-checking a fundamental pair against direct
/// integration of its equation.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// max |ode − series| / |series| over the window, first solution.
    pub first_max_rel_dev: f64,
    /// Likewise for the second solution.
    pub second_max_rel_dev: f64,
    /// max |W − 1| with W computed from the integrated states.
    pub wronskian_max_dev: f64,
    /// Number of comparison points, over both integration passes.
    pub samples: usize,
}

/// Cross-checks a normalized pair against direct integration of
/// ζ'' = r(x)ζ and reports the worst relative deviation from each
/// series plus the worst Wronskian defect.
///
/// Each solution is carried along its stable direction: the pair is
/// seeded from the series at the low edge and integrated up for the
/// first (larger-exponent) solution and the Wronskian, while the second
/// solution is seeded at the high edge and integrated back down. Driven
/// the other way, a solution dominated by the other exponent amplifies
/// every injected error by (hi/lo)^(ρ₁−ρ₂), which measures the
/// integrator rather than the series.
///
/// The window must satisfy 0 < lo < hi and keep clear of the finite
/// singularity x = (−1/h³)^(1/3) that exists when h³ < 0. Logarithmic
/// pairs have no power-series continuation to check, and solution
/// series never carry the source parameter d; both are rejected.
pub fn validate_pair(
    nf: &NormalFormEquation,
    pair: &FrobeniusPair,
    h_cubed: &Rational,
    window: (f64, f64),
    config: &IntegrationConfig,
) -> Result<ValidationReport> {
    config.validate()?;
    if nf.chart() != Chart::X {
        return Err(Error::InvalidParams(
            "validation windows are chart-X intervals; transform the operator first".into(),
        ));
    }
    if pair.log_flag {
        return Err(Error::InvalidParams(
            "the pair carries a logarithm and has no power-series continuation".into(),
        ));
    }
    for series in [&pair.first, &pair.second] {
        if series.strands().any(|(_, cs)| cs.iter().any(|c| !c.is_d_free())) {
            return Err(Error::InvalidParams(
                "solution series must be free of the source parameter d".into(),
            ));
        }
    }
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
        return Err(Error::InvalidParams(format!(
            "window ({lo}, {hi}) is not an increasing interval of positive x"
        )));
    }
    if h_cubed.is_negative() {
        let h3 = h_cubed.to_f64().unwrap_or(f64::NAN);
        let xs = (-1.0 / h3).cbrt();
        if lo <= xs && xs <= hi {
            return Err(Error::InvalidParams(format!(
                "window ({lo}, {hi}) touches the singularity near x = {xs:.6}"
            )));
        }
    }

    let bits = config.precision_bits;
    let d0 = int(0);
    let x_lo = BigF::lift_f64(lo, bits);
    let x_hi = BigF::lift_f64(hi, bits);
    let first_prime = pair.first.derivative();
    let second_prime = pair.second.derivative();
    let seed = |series: &StrandSeries, prime: &StrandSeries, x: &BigF| {
        vec![
            eval_series(series, x, h_cubed, &d0, bits),
            eval_series(prime, x, h_cubed, &d0, bits),
        ]
    };

    let r = LiftedStructured::<BigF>::new(&nf.r, h_cubed, bits);
    let pair_field = |x: &BigF, y: &[BigF]| {
        let rx = r.eval(x);
        vec![y[1].clone(), rx.mul(&y[0]), y[3].clone(), rx.mul(&y[2])]
    };
    let mut y0 = seed(&pair.first, &first_prime, &x_lo);
    y0.extend(seed(&pair.second, &second_prime, &x_lo));
    let upward = integrate(&pair_field, x_lo.clone(), y0, x_hi.clone(), config)?;

    let single_field = |x: &BigF, y: &[BigF]| {
        let rx = r.eval(x);
        vec![y[1].clone(), rx.mul(&y[0])]
    };
    let y1 = seed(&pair.second, &second_prime, &x_hi);
    let downward = integrate(&single_field, x_hi, y1, x_lo, config)?;

    let dev = |ode: &BigF, series: &BigF| {
        let denom = series.abs().to_f64().max(f64::MIN_POSITIVE);
        ode.sub(series).abs().to_f64() / denom
    };
    let one = BigF::from_int(1);
    let mut report = ValidationReport {
        first_max_rel_dev: 0.0,
        second_max_rel_dev: 0.0,
        wronskian_max_dev: 0.0,
        samples: upward.times.len() + downward.times.len(),
    };
    for (x, y) in upward.times.iter().zip(&upward.states) {
        let s1 = eval_series(&pair.first, x, h_cubed, &d0, bits);
        report.first_max_rel_dev = report.first_max_rel_dev.max(dev(&y[0], &s1));
        let w = y[0].mul(&y[3]).sub(&y[2].mul(&y[1]));
        report.wronskian_max_dev = report.wronskian_max_dev.max(w.sub(&one).abs().to_f64());
    }
    for (x, y) in downward.times.iter().zip(&downward.states) {
        let s2 = eval_series(&pair.second, x, h_cubed, &d0, bits);
        report.second_max_rel_dev = report.second_max_rel_dev.max(dev(&y[0], &s2));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ParamCoeff};
    use crate::frobenius::{normalize_wronskian, solve_pair};
    use crate::variational::{normal_form, ve1_infinity_xi11, ve1_infinity_xi12};

    fn nf_xi12() -> NormalFormEquation {
        normal_form(&ve1_infinity_xi12()).unwrap()
    }

    fn nf_xi11(tau: Rational) -> NormalFormEquation {
        normal_form(&ve1_infinity_xi11(&(&tau * &tau))).unwrap()
    }

    fn normalized_pair(nf: &NormalFormEquation, order: usize) -> FrobeniusPair {
        normalize_wronskian(&solve_pair(nf, order).unwrap()).unwrap()
    }

    #[test]
    fn config_rejects_out_of_range_settings() {
        let ok = IntegrationConfig::default();
        assert!(ok.validate().is_ok());
        let cases: [(&str, IntegrationConfig); 5] = [
            ("zero rel_tol", IntegrationConfig { rel_tol: 0.0, ..ok.clone() }),
            ("loose abs_tol", IntegrationConfig { abs_tol: 1e-5, ..ok.clone() }),
            ("negative abs_tol", IntegrationConfig { abs_tol: -1e-12, ..ok.clone() }),
            ("no steps", IntegrationConfig { max_steps: 0, ..ok.clone() }),
            ("narrow floats", IntegrationConfig { precision_bits: 64, ..ok.clone() }),
        ];
        for (what, config) in cases {
            assert!(
                matches!(config.validate(), Err(Error::InvalidParams(_))),
                "{what} should be rejected"
            );
        }
    }

    fn harmonic<T: Real>(bound: f64) {
        // y'' = -y from (1, 0): after a full period the state returns to
        // (1, 0) exactly, so the endpoint error is pure integration error.
        let field = |_t: &T, y: &[T]| vec![y[1].clone(), y[0].neg()];
        let config = IntegrationConfig::default();
        let two_pi = T::from_f64(2.0 * std::f64::consts::PI);
        let y0 = vec![T::from_int(1), T::zero()];
        let out = integrate(&field, T::zero(), y0, two_pi, &config).unwrap();
        let end = out.final_state();
        assert!(
            (end[0].to_f64() - 1.0).abs() <= bound,
            "cos endpoint off by {:e}",
            (end[0].to_f64() - 1.0).abs()
        );
        assert!(
            end[1].to_f64().abs() <= bound,
            "sin endpoint off by {:e}",
            end[1].to_f64().abs()
        );
    }

    #[test]
    fn harmonic_oscillator_returns_home() {
        harmonic::<BigF>(1e-10);
    }

    #[test]
    fn harmonic_oscillator_in_plain_f64() {
        // Roundoff at 53 bits costs a digit or two over ~1500 steps.
        harmonic::<f64>(1e-9);
    }

    #[test]
    fn hamiltonian_flow_conserves_energy() {
        let params = PotentialParams::new(int(1), int(1), int(1), int(1), int(1));
        let initial = PhaseState::new(0.1, 0.0, 0.2, 0.0);
        let config = IntegrationConfig::default();
        let drift = flow_energy_drift(&params, &initial, 10.0, &config).unwrap();
        assert!(drift <= 1e-8, "relative energy drift {drift:e} exceeds 1e-8");
    }

    #[test]
    fn zeta12_pair_matches_direct_integration() {
        let nf = nf_xi12();
        let pair = normalized_pair(&nf, 12);
        let config = IntegrationConfig::default();
        let report = validate_pair(&nf, &pair, &int(1), (0.01, 0.1), &config).unwrap();
        assert!(report.samples > 2);
        assert!(
            report.first_max_rel_dev <= 1e-10,
            "first solution deviates by {:e}",
            report.first_max_rel_dev
        );
        assert!(
            report.second_max_rel_dev <= 1e-10,
            "second solution deviates by {:e}",
            report.second_max_rel_dev
        );
        assert!(
            report.wronskian_max_dev <= 1e-10,
            "Wronskian drifts by {:e}",
            report.wronskian_max_dev
        );
    }

    #[test]
    fn zeta11_pair_at_tau_minus_fourteen_thirds() {
        let nf = nf_xi11(rat(-14, 3));
        let pair = normalized_pair(&nf, 12);
        assert_eq!(pair.exponents, (int(4), int(-3)));
        let config = IntegrationConfig::default();
        let report = validate_pair(&nf, &pair, &int(1), (0.01, 0.1), &config).unwrap();
        assert!(report.first_max_rel_dev <= 1e-10);
        assert!(report.second_max_rel_dev <= 1e-10);
        assert!(report.wronskian_max_dev <= 1e-10);
    }

    #[test]
    fn corrupted_coefficient_trips_the_detector() {
        // Perturb the second solution's coefficient at ρ₂ + 3 by 1e-3. The
        // series is then no solution at all, and the deviation against the
        // honest integration must clear the detector threshold; the window
        // edge turns a 1e-3 fault at that slot into a signal of a few 1e-6.
        let nf = nf_xi11(rat(-14, 3));
        let clean = normalized_pair(&nf, 12);
        let slot = &clean.exponents.1 + int(3);
        let bump = StrandSeries::monomial(
            slot,
            ParamCoeff::from_rational(rat(-1, 1000)),
            clean.second.truncation().clone(),
        );
        let corrupted = FrobeniusPair {
            second: clean.second.add(&bump),
            ..clean.clone()
        };
        let config = IntegrationConfig::default();
        let honest = validate_pair(&nf, &clean, &int(1), (0.01, 0.1), &config).unwrap();
        let tripped = validate_pair(&nf, &corrupted, &int(1), (0.01, 0.1), &config).unwrap();
        assert!(honest.second_max_rel_dev <= 1e-10);
        assert!(
            tripped.second_max_rel_dev > 1e-6,
            "corruption produced only {:e}",
            tripped.second_max_rel_dev
        );
    }

    #[test]
    fn tightening_tolerances_does_not_worsen_deviations() {
        let nf = nf_xi12();
        let pair = normalized_pair(&nf, 12);
        let loose = IntegrationConfig { rel_tol: 1e-8, abs_tol: 1e-8, ..Default::default() };
        let tight = IntegrationConfig { rel_tol: 5e-9, abs_tol: 5e-9, ..Default::default() };
        let at = |config: &IntegrationConfig| {
            validate_pair(&nf, &pair, &int(1), (0.01, 0.1), config).unwrap()
        };
        let (l, t) = (at(&loose), at(&tight));
        // Halving tolerances may redistribute steps, so allow a factor of
        // two of noise, but never an order of magnitude.
        for (name, loose_dev, tight_dev) in [
            ("first", l.first_max_rel_dev, t.first_max_rel_dev),
            ("second", l.second_max_rel_dev, t.second_max_rel_dev),
            ("wronskian", l.wronskian_max_dev, t.wronskian_max_dev),
        ] {
            assert!(
                tight_dev <= 2.0 * loose_dev + 1e-15,
                "{name}: tight {tight_dev:e} vs loose {loose_dev:e}"
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let nf = nf_xi12();
        let pair = normalized_pair(&nf, 10);
        let config = IntegrationConfig::default();
        let a = validate_pair(&nf, &pair, &int(1), (0.01, 0.1), &config).unwrap();
        let b = validate_pair(&nf, &pair, &int(1), (0.01, 0.1), &config).unwrap();
        assert_eq!(a, b, "identical runs must agree bitwise");
    }

    #[test]
    fn step_budget_exhaustion_is_reported() {
        let field = |_t: &f64, y: &[f64]| vec![y[1], -y[0]];
        let config = IntegrationConfig { max_steps: 5, ..Default::default() };
        let out = integrate(&field, 0.0, vec![1.0, 0.0], 1000.0, &config);
        assert_eq!(out.unwrap_err(), Error::StepsExhausted { max_steps: 5 });
    }

    #[test]
    fn step_underflow_is_located_near_the_blowup() {
        // y' = y² from y(0) = 1 blows up at t = 1; the controller must
        // collapse the step there and report where it gave up.
        let field = |_t: &f64, y: &[f64]| vec![y[0] * y[0]];
        let config = IntegrationConfig::default();
        let out = integrate(&field, 0.0, vec![1.0], 2.0, &config);
        match out.unwrap_err() {
            Error::StepUnderflow { location } => {
                assert!(
                    (0.9..=1.0001).contains(&location),
                    "underflow located at {location}, expected near 1"
                );
            }
            other => panic!("expected StepUnderflow, got {other:?}"),
        }
    }

    #[test]
    fn rational_powers_evaluate_exactly() {
        let x = BigF::from_int(4);
        assert_eq!(pow_rational(&x, &rat(5, 2)).to_f64(), 32.0);
        assert_eq!(pow_rational(&x, &rat(-3, 2)).to_f64(), 0.125);
        let cube = pow_rational(&BigF::from_int(27), &rat(1, 3));
        assert!((cube.to_f64() - 3.0).abs() < 1e-15);
        let back = pow_rational(&cube, &int(3));
        assert!((back.to_f64() - 27.0).abs() < 1e-13);
        assert_eq!(pow_rational(&BigF::from_int(7), &int(0)).to_f64(), 1.0);
    }

    #[test]
    fn bad_windows_and_bad_pairs_are_rejected() {
        let nf = nf_xi12();
        let pair = normalized_pair(&nf, 6);
        let config = IntegrationConfig::default();
        let run = |h: Rational, window| validate_pair(&nf, &pair, &h, window, &config);

        for window in [(0.1, 0.01), (0.0, 0.1), (-0.2, 0.1)] {
            assert!(matches!(run(int(1), window), Err(Error::InvalidParams(_))));
        }
        // h³ = -1000 puts the turning point at x = 0.1, inside the window.
        assert!(matches!(
            run(int(-1000), (0.05, 0.15)),
            Err(Error::InvalidParams(_))
        ));
        // ... but a window clear of it is fine.
        assert!(run(int(-1000), (0.01, 0.05)).is_ok());

        let with_d = FrobeniusPair {
            first: pair.first.add(&StrandSeries::monomial(
                &pair.exponents.0 + int(3),
                ParamCoeff::d_times(crate::exactnum::HPoly::constant(int(1))),
                pair.first.truncation().clone(),
            )),
            ..pair.clone()
        };
        assert!(matches!(
            validate_pair(&nf, &with_d, &int(1), (0.01, 0.1), &config),
            Err(Error::InvalidParams(_))
        ));
    }
}
