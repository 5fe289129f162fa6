//! Variational equations along the invariant plane r = p_r = 0.
//!
//! On the zero-energy curve ẇ² = −8C(w⁴ + h³w) of the reduced motion
//! w = z², the normal variational equations for the two transverse
//! directions become Fuchsian second-order operators
//!
//! ```text
//! ξ'' + a(w) ξ' + b(w) ξ = 0,
//! a(w) = (4w³ + h³) / (2w(w³ + h³)),
//! b₁(w) = −(A/4C) · w/(w³ + h³),       (the ξ₁₁ level)
//! b₂(w) = −(15/4) · w/(w³ + h³),       (the ξ₁₂ level)
//! ```
//!
//! with regular singular points at w = 0, the three cube roots of −h³,
//! and w = ∞. Everything here is exact: coefficients are [`Structured`]
//! functions t^e·R(s) of s = h³/w³ or s = h³x³ with R ∈ ℚ(s), so chart
//! changes, normal forms and Legendre reductions are rational identities.
//!
//! A normalization seam runs through this family and is handled
//! explicitly (see [`coefficient_seam_note`]): the plane-chart coefficient
//! −(A/4C) and the infinity-chart coefficient −(9τ²−4)/16, with
//! τ² = (2A+4C)/(9C), disagree by a factor of 2 under the honest
//! substitution w = 1/x, because 9τ²−4 = 2A/C. The infinity-chart
//! normalization is the one consistent with the indicial exponents
//! ½ ± ¾τ and with the Legendre parameter p = (−1±τ)/2, so the series
//! and residue pipeline is built on the direct constructors
//! [`ve1_infinity_xi11`] / [`ve1_infinity_xi12`], while [`build_ve1`] and
//! [`transform_to_infinity`] stay faithful to the plane-chart formulas
//! and to the involution w = 1/x respectively.

mod ratfun;
mod structured;

pub use ratfun::{Poly, RatFun};
pub use structured::{Chart, Structured};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{
    classify_tau, int, rat, ExactScalar, HPoly, ParamCoeff, Rational, ResonanceClass,
};
use crate::legendre::LegendreParams;
use crate::model::PotentialParams;

/// A second-order operator ξ'' + a ξ' + b ξ with structured coefficients.
///
/// Construction verifies the Fuchsian shape this module works in: a has
/// variable power −1 with at most a simple pole in (1+s), b has power −2
/// with at most a double pole, and neither grows at the opposite chart's
/// origin. Within that shape all five singular points are regular.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianOperator {
    label: String,
    a: Structured,
    b: Structured,
}

impl FuchsianOperator {
    pub fn new(label: impl Into<String>, a: Structured, b: Structured) -> Result<Self> {
        let label = label.into();
        if !a.is_zero() && !b.is_zero() && a.chart() != b.chart() {
            return Err(Error::InvalidParams(format!(
                "operator {}: coefficient charts disagree",
                label
            )));
        }
        validate_coefficient(&label, "a", &a, -1, 1)?;
        validate_coefficient(&label, "b", &b, -2, 2)?;
        Ok(FuchsianOperator { label, a, b })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn a(&self) -> &Structured {
        &self.a
    }

    pub fn b(&self) -> &Structured {
        &self.b
    }

    pub fn chart(&self) -> Chart {
        if self.a.is_zero() {
            self.b.chart()
        } else {
            self.a.chart()
        }
    }

    /// All five singular points with their indicial exponent pairs.
    ///
    /// The pair at [`SingularPoint::Infinity`] is expressed in the local
    /// variable 1/t, i.e. it is the origin pair of the w = 1/x image.
    pub fn singularities(&self) -> Result<Vec<SingularityData>> {
        let (alpha0, beta0) = self.origin_data();
        let (alpha1, beta1) = self.cube_root_data();
        let swapped = transform_to_infinity(self)?;
        let (alpha_inf, beta_inf) = swapped.origin_data();
        let mut out = Vec::with_capacity(5);
        out.push(SingularityData {
            point: SingularPoint::Origin,
            exponents: indicial_pair(&alpha0, &beta0),
        });
        for j in 0..3 {
            out.push(SingularityData {
                point: SingularPoint::CubeRoot(j),
                exponents: indicial_pair(&alpha1, &beta1),
            });
        }
        out.push(SingularityData {
            point: SingularPoint::Infinity,
            exponents: indicial_pair(&alpha_inf, &beta_inf),
        });
        Ok(out)
    }

    /// Laurent data (a₋₁, b₋₂) at t = 0 of this operator's chart.
    fn origin_data(&self) -> (Rational, Rational) {
        (origin_value(&self.a), origin_value(&self.b))
    }

    /// Laurent data at each root of s = −1; identical for all three
    /// because the validated variable powers cancel the root exactly.
    fn cube_root_data(&self) -> (Rational, Rational) {
        let sign = match self.chart() {
            Chart::W => int(1),
            Chart::X => int(-1),
        };
        let alpha = if self.a.is_zero() {
            int(0)
        } else {
            let r = self.a.ratfun();
            if pole_order_at_minus_one(r) == 1 {
                let cleared = r * &RatFun::from_poly(one_plus_s());
                sign * cleared.eval(&int(-1)).expect("simple pole cleared") / int(3)
            } else {
                int(0)
            }
        };
        let beta = if self.b.is_zero() {
            int(0)
        } else {
            let r = self.b.ratfun();
            if pole_order_at_minus_one(r) == 2 {
                let sq = &RatFun::from_poly(one_plus_s()) * &RatFun::from_poly(one_plus_s());
                let cleared = r * &sq;
                cleared.eval(&int(-1)).expect("double pole cleared") / int(9)
            } else {
                int(0)
            }
        };
        (alpha, beta)
    }
}

/// One singular point of a [`FuchsianOperator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularPoint {
    /// t = 0 on the operator's chart.
    Origin,
    /// The three simple roots of s = −1, i.e. w³ = −h³ (equivalently
    /// h³x³ = −1). Index 0 is the real root, 1 and 2 the conjugate pair.
    CubeRoot(u8),
    /// t = ∞ on the operator's chart.
    Infinity,
}

impl SingularPoint {
    pub fn describe(&self, chart: Chart) -> String {
        match (self, chart) {
            (SingularPoint::Origin, c) => format!("{} = 0", c.variable()),
            (SingularPoint::Infinity, c) => format!("{} = infinity", c.variable()),
            (SingularPoint::CubeRoot(0), Chart::W) => "w = -h".into(),
            (SingularPoint::CubeRoot(1), Chart::W) => "w = h(1 + i*sqrt(3))/2".into(),
            (SingularPoint::CubeRoot(2), Chart::W) => "w = h(1 - i*sqrt(3))/2".into(),
            (SingularPoint::CubeRoot(0), Chart::X) => "x = -1/h".into(),
            (SingularPoint::CubeRoot(1), Chart::X) => "x = (1 + i*sqrt(3))/(2h)".into(),
            (SingularPoint::CubeRoot(2), Chart::X) => "x = (1 - i*sqrt(3))/(2h)".into(),
            (SingularPoint::CubeRoot(_), _) => unreachable!("only three cube roots"),
        }
    }
}

/// A singular point together with its indicial exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityData {
    pub point: SingularPoint,
    pub exponents: (ExactScalar, ExactScalar),
}

fn one_plus_s() -> Poly {
    Poly::from_ints(&[1, 1])
}

/// Order of the pole of R at s = −1 (0 when analytic there).
fn pole_order_at_minus_one(r: &RatFun) -> usize {
    let mut den = r.den().clone();
    let lin = one_plus_s();
    let mut order = 0;
    while den.eval(&int(-1)).is_zero() {
        let (q, rem) = den.divrem(&lin);
        debug_assert!(rem.is_zero());
        den = q;
        order += 1;
    }
    order
}

/// Laurent coefficient of t^{−1} (for a) or t^{−2} (for b) at the chart
/// origin; the validated powers make this the value of R at s = 0 on
/// chart X and the s → ∞ limit of R on chart W.
fn origin_value(f: &Structured) -> Rational {
    if f.is_zero() {
        return int(0);
    }
    match f.chart() {
        Chart::X => f.ratfun().eval(&int(0)).expect("denominator is (1+s)^k"),
        Chart::W => match f.ratfun().infinity_degree() {
            Some(0) => f.ratfun().leading_ratio().unwrap(),
            _ => int(0),
        },
    }
}

fn validate_coefficient(
    label: &str,
    role: &str,
    f: &Structured,
    expected_e: i64,
    max_pole: usize,
) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    if f.exponent() != expected_e {
        return Err(Error::InvalidParams(format!(
            "operator {}: coefficient {} has variable power {}, expected {}",
            label,
            role,
            f.exponent(),
            expected_e
        )));
    }
    let den = f.ratfun().den();
    let k = den.degree().unwrap_or(0);
    let mut pow = Poly::one();
    for _ in 0..k {
        pow = &pow * &one_plus_s();
    }
    if *den != pow {
        return Err(Error::InvalidParams(format!(
            "operator {}: coefficient {} denominator {} is not a power of (1+s)",
            label, role, den
        )));
    }
    if k > max_pole {
        return Err(Error::InvalidParams(format!(
            "operator {}: coefficient {} has pole order {} in (1+s), limit {}",
            label, role, k, max_pole
        )));
    }
    if f.ratfun().infinity_degree().unwrap_or(-1) > 0 {
        return Err(Error::InvalidParams(format!(
            "operator {}: coefficient {} grows at the opposite chart origin",
            label, role
        )));
    }
    Ok(())
}

/// Roots of ρ(ρ−1) + αρ + β = 0, larger root first when real.
fn indicial_pair(alpha: &Rational, beta: &Rational) -> (ExactScalar, ExactScalar) {
    let one_minus = int(1) - alpha;
    let half = ExactScalar::from_rational(&one_minus / int(2));
    let disc = &one_minus * &one_minus - int(4) * beta;
    let root = ExactScalar::sqrt(disc).scale(&rat(1, 2));
    (&half + &root, &half - &root)
}

/// The first variational pair on the plane chart, exactly as the reduced
/// system produces it: shared a(w) and the two levels b₁ (ξ₁₁, carrying
/// A/4C) and b₂ (ξ₁₂, carrying 15/4).
///
/// # Errors
///
/// `OutOfScope` when C = 0 (no invariant manifold of the required form)
/// or h = 0 (the manifold degenerates to the homogeneous cone).
pub fn build_ve1(params: &PotentialParams) -> Result<(FuchsianOperator, FuchsianOperator)> {
    if params.c.is_zero() {
        return Err(Error::OutOfScope(
            "C = 0: the variational equations require the Cz^6 term".into(),
        ));
    }
    if params.h.is_zero() {
        return Err(Error::OutOfScope(
            "h = 0: the invariant manifold degenerates".into(),
        ));
    }
    let a = Structured::new(
        Chart::W,
        -1,
        RatFun::new(Poly::from_ints(&[4, 1]), Poly::from_ints(&[2, 2])),
    );
    let lambda = &params.a / (int(4) * &params.c);
    let b1 = Structured::new(
        Chart::W,
        -2,
        RatFun::new(Poly::constant(-lambda), one_plus_s()),
    );
    let b2 = Structured::new(
        Chart::W,
        -2,
        RatFun::new(Poly::constant(rat(-15, 4)), one_plus_s()),
    );
    Ok((
        FuchsianOperator::new("xi11", a.clone(), b1)?,
        FuchsianOperator::new("xi12", a, b2)?,
    ))
}

fn a_infinity() -> Structured {
    Structured::new(
        Chart::X,
        -1,
        RatFun::new(Poly::from_ints(&[0, 3]), Poly::from_ints(&[2, 2])),
    )
}

fn b_infinity(c0: Rational) -> Structured {
    Structured::new(Chart::X, -2, RatFun::new(Poly::constant(-c0), one_plus_s()))
}

/// The ξ₁₁ operator on the infinity chart, normalized so that the
/// indicial exponents at x = 0 are ½ ± ¾τ:
///
/// ```text
/// a(x) = 3h³x² / (2(h³x³+1)),   b(x) = −((9τ²−4)/16) / (x²(h³x³+1)).
/// ```
pub fn ve1_infinity_xi11(tau_squared: &Rational) -> FuchsianOperator {
    let c0 = (int(9) * tau_squared - int(4)) / int(16);
    FuchsianOperator::new("xi11", a_infinity(), b_infinity(c0))
        .expect("fixed shape is Fuchsian")
}

/// The ξ₁₂ operator on the infinity chart:
///
/// ```text
/// a(x) = 3h³x² / (2(h³x³+1)),   b(x) = −(15/4) / (x²(h³x³+1)),
/// ```
///
/// with indicial exponents 5/2 and −3/2 at x = 0.
pub fn ve1_infinity_xi12() -> FuchsianOperator {
    FuchsianOperator::new("xi12", a_infinity(), b_infinity(rat(15, 4)))
        .expect("fixed shape is Fuchsian")
}

/// The substitution w = 1/x applied honestly to the whole operator:
///
/// ```text
/// ã(x) = 2/x − a(1/x)/x²,   b̃(x) = b(1/x)/x⁴.
/// ```
///
/// In structured form (s is invariant, powers flip) this is R_a ↦ 2 − R_a
/// and R_b ↦ R_b, so applying it twice is the identity.
pub fn transform_to_infinity(op: &FuchsianOperator) -> Result<FuchsianOperator> {
    let chart = op.chart().other();
    let two = RatFun::constant(int(2));
    let a_r = if op.a.is_zero() {
        two
    } else {
        &two - op.a.ratfun()
    };
    let a = Structured::new(chart, -1, a_r);
    let b = if op.b.is_zero() {
        Structured::zero(chart)
    } else {
        let swapped = op.b.swap_chart();
        Structured::new(chart, swapped.exponent() - 4, swapped.ratfun().clone())
    };
    FuchsianOperator::new(op.label.clone(), a, b)
}

/// The multiplier g = t^μ (1+s)^ν with ξ = g·ζ relating an operator to
/// its normal form. Constants are immaterial for a gauge and dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFactor {
    pub var_exp: Rational,
    pub one_plus_s_exp: Rational,
}

impl GaugeFactor {
    /// g'/g as a structured function on the given chart.
    pub fn log_derivative(&self, chart: Chart) -> Structured {
        let sign = match chart {
            Chart::X => int(3),
            Chart::W => int(-3),
        };
        let s_term = RatFun::new(
            Poly::from_coeffs(vec![int(0), sign * &self.one_plus_s_exp]),
            one_plus_s(),
        );
        let r = &RatFun::constant(self.var_exp.clone()) + &s_term;
        Structured::new(chart, -1, r)
    }
}

impl std::fmt::Display for GaugeFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "t^({}) * (1+s)^({})", self.var_exp, self.one_plus_s_exp)
    }
}

/// The reduced equation ζ'' = r ζ with its gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormEquation {
    pub r: Structured,
    pub gauge: GaugeFactor,
}

impl NormalFormEquation {
    pub fn chart(&self) -> Chart {
        self.r.chart()
    }

    /// The indicial constant c₀ = lim t² r(t) at the chart-X origin; the
    /// exponents there solve ρ(ρ−1) = c₀.
    pub fn c0(&self) -> Result<Rational> {
        if self.chart() != Chart::X {
            return Err(Error::InvalidParams(
                "c0 is read at the chart-X origin; transform the operator first".into(),
            ));
        }
        Ok(origin_value(&self.r))
    }

    /// Taylor coefficients R_m of R(s) at s = 0, so that on chart X
    /// r(x) = Σ R_m h^{3m} x^{3m−2}. These drive the Frobenius recurrence.
    pub fn r_taylor(&self, depth: usize) -> Result<Vec<Rational>> {
        if self.chart() != Chart::X {
            return Err(Error::InvalidParams(
                "series data is read on chart X; transform the operator first".into(),
            ));
        }
        self.r
            .ratfun()
            .taylor(depth)
            .ok_or_else(|| Error::InvalidParams("r has a pole at s = 0".into()))
    }

    /// The numerator N(s) in the canonical presentation
    /// r = N(s) / (16 t² (1+s)²); in chart X this reads
    /// r = N(h³x³) / (16x²(h³x³+1)²).
    pub fn canonical_numerator(&self) -> Result<Poly> {
        let sq = &one_plus_s() * &one_plus_s();
        let cleared = self.r.ratfun() * &RatFun::from_poly(sq.scale(&int(16)));
        if cleared.den().degree() != Some(0) {
            return Err(Error::InvalidParams(format!(
                "r does not reduce over 16 t^2 (1+s)^2: residual denominator {}",
                cleared.den()
            )));
        }
        let c = cleared.den().coeff(0);
        Ok(cleared.num().scale(&(int(1) / c)))
    }
}

/// Reduction to normal form: r = ½a' + ¼a² − b, reached by the gauge
/// ξ = g·ζ with g'/g = −a/2. The gauge is returned in closed form and
/// re-verified against that defining identity before returning.
pub fn normal_form(op: &FuchsianOperator) -> Result<NormalFormEquation> {
    let chart = op.chart();
    let da = op.a.derivative();
    let a_sq = op.a.mul(&op.a);
    let r = da
        .scale(&rat(1, 2))
        .add(&a_sq.scale(&rat(1, 4)))
        .sub(&op.b);
    let r = if r.is_zero() {
        Structured::new(chart, -2, RatFun::zero())
    } else {
        r
    };
    let gauge = extract_gauge(op)?;
    let expected = op.a.scale(&rat(-1, 2));
    let got = gauge.log_derivative(chart);
    let matches = if expected.is_zero() {
        got.is_zero() || got.ratfun().is_zero()
    } else {
        got == expected
    };
    if !matches {
        return Err(Error::InvalidParams(format!(
            "gauge verification failed: g'/g = {} but -a/2 = {}",
            got, expected
        )));
    }
    Ok(NormalFormEquation { r, gauge })
}

/// Solves exp(−½∫a) = t^μ(1+s)^ν for (μ, ν), which exists exactly when
/// R_a − R_a(0) is a rational multiple of s/(1+s). Every operator in this
/// family is of that shape.
fn extract_gauge(op: &FuchsianOperator) -> Result<GaugeFactor> {
    if op.a.is_zero() {
        return Ok(GaugeFactor {
            var_exp: int(0),
            one_plus_s_exp: int(0),
        });
    }
    let r_a = op.a.ratfun();
    let at_zero = r_a
        .eval(&int(0))
        .ok_or_else(|| Error::InvalidParams("a has an essential part at s = 0".into()))?;
    let hat = r_a - &RatFun::constant(at_zero.clone());
    let template = RatFun::new(Poly::var(), one_plus_s());
    let c = if hat.is_zero() {
        int(0)
    } else {
        // s/(1+s) equals 1/2 at s = 1
        let v = hat.eval(&int(1)).ok_or_else(|| {
            Error::InvalidParams("a is singular at s = 1".into())
        })?;
        v * int(2)
    };
    if hat != template.scale(&c) {
        return Err(Error::InvalidParams(
            "a' integrates outside the t^mu (1+s)^nu gauge family".into(),
        ));
    }
    let nu_sign = match op.chart() {
        Chart::X => int(-1),
        Chart::W => int(1),
    };
    Ok(GaugeFactor {
        var_exp: -at_zero / int(2),
        one_plus_s_exp: nu_sign * c / int(6),
    })
}

/// One sign branch of the Legendre reduction.
#[derive(Debug, Clone)]
pub struct LegendreBranch {
    /// The sign in p = (−1 ± τ)/2.
    pub sign: i8,
    pub p: ExactScalar,
    /// `None` when the branch violates the side condition p + q ∈
    /// {−1, −2, ...} under which the solvability rules are stated; the
    /// note records the rejection. This happens exactly at the resonant
    /// values |τ| ∈ {4/3, 10/3, 16/3, ...}, which the residue pipeline
    /// handles instead.
    pub params: Option<LegendreParams>,
    pub note: Option<String>,
}

/// Result of rewriting the ξ₁₁ equation in the Legendre variable
/// z² = 1 + w³/h³.
#[derive(Debug, Clone)]
pub struct LegendreReduction {
    /// Always 1/6; see [`q_convention_note`].
    pub q: Rational,
    pub resonance: ResonanceClass,
    /// The two branches, sign +1 first.
    pub branches: Vec<LegendreBranch>,
    pub notes: Vec<String>,
}

/// Carries ξ₁₁ to the associated Legendre equation: degree parameter
/// p = (−1 ± τ)/2 (both branches), order parameter q = 1/6, so that
/// p(p+1) = (τ²−1)/4 = (2A−5C)/(36C).
///
/// # Errors
///
/// `OutOfScope` when C = 0 or h = 0.
pub fn reduce_to_legendre(params: &PotentialParams) -> Result<LegendreReduction> {
    if params.h.is_zero() {
        return Err(Error::OutOfScope(
            "h = 0: the invariant manifold degenerates".into(),
        ));
    }
    let resonance = classify_tau(&params.a, &params.c)?;
    let tau = ExactScalar::sqrt(resonance.tau_squared.clone());
    let q = rat(1, 6);
    let q_scalar = ExactScalar::from_rational(q.clone());
    let minus_one = ExactScalar::from_int(-1);
    let mut branches = Vec::with_capacity(2);
    for sign in [1i8, -1] {
        let signed_tau = if sign == 1 { tau.clone() } else { -&tau };
        let p = (&minus_one + &signed_tau).scale(&rat(1, 2));
        let (params, note) = match LegendreParams::new(p.clone(), q_scalar.clone()) {
            Ok(lp) => (Some(lp), None),
            Err(e) => (None, Some(e.to_string())),
        };
        branches.push(LegendreBranch {
            sign,
            p,
            params,
            note,
        });
    }
    Ok(LegendreReduction {
        q,
        resonance,
        branches,
        notes: vec![q_convention_note()],
    })
}

/// The quadratic source terms feeding the second variational levels,
/// with the common prefactor x^{−3/2}(h³x³+1)^{−3/4} split off (exponents
/// available from [`source_prefactor_exponents`]):
///
/// the first level drives ξ₂₁ with −(9τ²−4)/2·ζ₁₁ζ₁₂ − (3/8)d·ζ₁₁²,
/// the second drives ξ₂₂ with −(9τ²−4)/2·ζ₁₁² − (15/2)·ζ₁₂²,
/// where d = D/C stays symbolic in the [`ParamCoeff`] ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceTerm {
    pub label: &'static str,
    /// Coefficient of ζ₁₁ζ₁₂.
    pub zeta11_zeta12: ParamCoeff,
    /// Coefficient of ζ₁₁².
    pub zeta11_sq: ParamCoeff,
    /// Coefficient of ζ₁₂².
    pub zeta12_sq: ParamCoeff,
}

/// Builds the two source terms for a given τ².
pub fn build_sources(tau_squared: &Rational) -> (SourceTerm, SourceTerm) {
    let lambda = (int(9) * tau_squared - int(4)) / int(2);
    let k1 = SourceTerm {
        label: "K2_1",
        zeta11_zeta12: ParamCoeff::from_rational(-lambda.clone()),
        zeta11_sq: ParamCoeff::d_times(HPoly::constant(rat(-3, 8))),
        zeta12_sq: ParamCoeff::zero(),
    };
    let k2 = SourceTerm {
        label: "K2_2",
        zeta11_zeta12: ParamCoeff::zero(),
        zeta11_sq: ParamCoeff::from_rational(-lambda),
        zeta12_sq: ParamCoeff::from_rational(rat(-15, 2)),
    };
    (k1, k2)
}

/// Exponents (μ, ν) of the shared source prefactor x^μ (h³x³+1)^ν.
pub fn source_prefactor_exponents() -> (Rational, Rational) {
    (rat(-3, 2), rat(-3, 4))
}

/// Why q = 1/6 rather than q² = 1/6.
pub fn q_convention_note() -> String {
    "convention: the Legendre order parameter is q = 1/6, not q^2 = 1/6; \
     with q = 1/6 the exponents (1 +/- q)/2 at z = +/-1, the identity \
     p(p+1) = (2A-5C)/(36C) and the solvable window p = +/-(k - 1/6) are \
     mutually consistent"
        .into()
}

/// The factor-2 seam between the two printed normalizations of the ξ₁₁
/// coefficient.
pub fn coefficient_seam_note() -> String {
    "normalization seam: the plane-chart coefficient -(A/4C) w/(w^3+h^3) \
     and the infinity-chart coefficient -((9 tau^2 - 4)/16)/(x^2 (h^3 x^3 + 1)) \
     differ by a factor of 2 under w = 1/x, since 9 tau^2 - 4 = 2A/C; series \
     and residue work uses the infinity-chart normalization, which is the one \
     consistent with the indicial exponents 1/2 +/- 3 tau/4 and with \
     p = (-1 +/- tau)/2"
        .into()
}

/// The sign convention for the second-level homogeneous part.
pub fn second_level_sign_note() -> String {
    "sign convention: the homogeneous part of the second variational pair \
     carries -(15/4) w/(w^3+h^3) on both levels, matching the first pair; a \
     +15/4 variant on the second level would not share a fundamental system \
     with it"
        .into()
}

/// All convention notes, for the warnings channel of reports.
pub fn convention_notes() -> Vec<String> {
    vec![
        q_convention_note(),
        coefficient_seam_note(),
        second_level_sign_note(),
    ]
}
