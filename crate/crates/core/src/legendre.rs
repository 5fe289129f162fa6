//! Solvability analysis of the associated Legendre equation.
//!
//! The equation in question,
//!
//! ```text
//! (1 - x²) y'' - 2x y' + (p(p+1) - q²/(1 - x²)) y = 0,
//! ```
//!
//! has regular singular points at ±1 and ∞. Its local exponents are
//! (1 ± q)/2 at the finite points and {−p−1, p} at infinity, and the local
//! monodromy around each point is generated by an upper-triangular matrix
//! whose diagonal carries the corresponding root-of-unity exponents.
//!
//! Whether the identity component of the differential Galois group is
//! solvable reduces to arithmetic on p and q: irrational values rule it
//! out immediately, and rational values are screened against the finitely
//! many solvable exponent patterns of Kimura's classification. Membership
//! in each pattern is decided in closed form (congruences on numerators
//! and denominators), never by enumeration, and never with floats.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactnum::{rat, ExactScalar, OffDiagonal, Rational, TriangularMonodromy};

/// The exponent parameters (p, q) of the associated Legendre equation.
///
/// Values may be rational or quadratic surds (the surd case arises when
/// the potential coefficients make τ irrational). The side condition
/// p + q ∉ {−1, −2, −3, …} is enforced at construction; it keeps the
/// hypergeometric solution formulas non-degenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendreParams {
    p: ExactScalar,
    q: ExactScalar,
}

impl LegendreParams {
    pub fn new(p: ExactScalar, q: ExactScalar) -> Result<Self> {
        if let Some(sum) = sum_if_compatible(&p, &q) {
            if let Some(s) = sum.as_rational() {
                if s.is_integer() && s.is_negative() {
                    return Err(Error::InvalidParams(format!(
                        "p + q = {} is a negative integer, violating the side \
                         condition p + q != -1, -2, -3, ...",
                        s
                    )));
                }
            }
        }
        Ok(LegendreParams { p, q })
    }

    pub fn from_rationals(p: Rational, q: Rational) -> Result<Self> {
        LegendreParams::new(ExactScalar::from_rational(p), ExactScalar::from_rational(q))
    }

    pub fn p(&self) -> &ExactScalar {
        &self.p
    }

    pub fn q(&self) -> &ExactScalar {
        &self.q
    }
}

/// p + q when the two scalars live in a common extension; `None` when they
/// carry distinct surds, in which case the sum is certainly irrational and
/// the side condition cannot trigger.
fn sum_if_compatible(p: &ExactScalar, q: &ExactScalar) -> Option<ExactScalar> {
    if p.is_rational() || q.is_rational() || p.radicand() == q.radicand() {
        Some(p + q)
    } else {
        None
    }
}

/// Local exponents at the three singular points.
///
/// The pairs at ±1 are the roots of ρ² − ρ + (1 − q²)/4 = 0 and sum to 1;
/// the pair at ∞ solves λ² + λ − p(p+1) = 0 and sums to −1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentData {
    pub at_plus_one: (ExactScalar, ExactScalar),
    pub at_minus_one: (ExactScalar, ExactScalar),
    pub at_infinity: (ExactScalar, ExactScalar),
}

pub fn exponents(params: &LegendreParams) -> ExponentData {
    let one = ExactScalar::from_int(1);
    let half = rat(1, 2);
    let finite = (
        (&one + params.q()).scale(&half),
        (&one - params.q()).scale(&half),
    );
    ExponentData {
        at_plus_one: finite.clone(),
        at_minus_one: finite,
        at_infinity: (-&(params.p() + &one), params.p().clone()),
    }
}

/// The four generators of the local monodromy, with diagonal exponent
/// pairs (1+q, −(1+q)), (1−q, −(1−q)), (−2(1+p), 2(1+p)), (2p, −2p).
///
/// The off-diagonal entries are unknown complex constants; each generator
/// gets a fresh symbol α₁…α₄ with no nonzero constraint.
pub fn monodromy_generators(params: &LegendreParams) -> Vec<TriangularMonodromy> {
    let one = ExactScalar::from_int(1);
    let one_plus_q = &one + params.q();
    let one_minus_q = &one - params.q();
    let one_plus_p = &one + params.p();
    [
        one_plus_q,
        one_minus_q,
        one_plus_p.scale(&rat(-2, 1)),
        params.p().scale(&rat(2, 1)),
    ]
    .into_iter()
    .enumerate()
    .map(|(j, e)| TriangularMonodromy::from_exponent(e, OffDiagonal::symbol(&format!("alpha_{}", j + 1))))
    .collect()
}

/// Identifiers for the non-solvability rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// p or q irrational: the local exponents generate a group with
    /// non-solvable identity component outright.
    NonRational,
    /// None of 2p+1, 2(q−p)+1, 2(p+q)+1 is an odd integer.
    ThLegI,
    /// The exponents avoid the half-integer pattern
    /// p = ½(−1 ± (½+m)), q = ±(½+l).
    ThLegII,
    /// The exponents avoid p = ½(−1 ± (⅓+m)) with m odd, q = ±(⅔+l).
    ThLegIII,
    /// The exponents avoid p = ½(−1 ± (2/5+m)) with m even, q = ±(2/5+l).
    ThLegIV,
    /// The exponents avoid p = ½(−1 ± (1/5+m)) with m odd, q = ±(4/5+l).
    ThLegV,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::NonRational => "NonRational",
            Rule::ThLegI => "ThLeg-i",
            Rule::ThLegII => "ThLeg-ii",
            Rule::ThLegIII => "ThLeg-iii",
            Rule::ThLegIV => "ThLeg-iv",
            Rule::ThLegV => "ThLeg-v",
        };
        f.write_str(name)
    }
}

/// One rule's outcome together with the arithmetic that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleEvidence {
    pub rule: Rule,
    pub held: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    NonSolvable,
    PossiblySolvable,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::NonSolvable => f.write_str("NonSolvable"),
            Conclusion::PossiblySolvable => f.write_str("PossiblySolvable"),
        }
    }
}

/// The verdict plus the per-rule evidence trace.
///
/// `NonSolvable` means every applicable rule held: the exponent data
/// matches no solvable pattern. `PossiblySolvable` only records a failure
/// to prove non-solvability; it never asserts solvability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvabilityVerdict {
    pub conclusion: Conclusion,
    /// The rules that held (all of ThLeg i-v for a rational NonSolvable
    /// verdict, or NonRational alone).
    pub fired_rules: Vec<Rule>,
    pub evidence: Vec<RuleEvidence>,
}

pub fn solvability_verdict(params: &LegendreParams) -> SolvabilityVerdict {
    let (p, q) = match (params.p().as_rational(), params.q().as_rational()) {
        (Some(p), Some(q)) => (p, q),
        _ => {
            let witness = format!(
                "p = {}, q = {}: an irrational exponent parameter already rules out solvability",
                params.p(),
                params.q()
            );
            return SolvabilityVerdict {
                conclusion: Conclusion::NonSolvable,
                fired_rules: vec![Rule::NonRational],
                evidence: vec![RuleEvidence {
                    rule: Rule::NonRational,
                    held: true,
                    witness,
                }],
            };
        }
    };
    let evidence = vec![
        rule_i(p, q),
        rule_ii(p, q),
        rule_iii(p, q),
        rule_iv(p, q),
        rule_v(p, q),
    ];
    let fired_rules: Vec<Rule> = evidence.iter().filter(|e| e.held).map(|e| e.rule).collect();
    let conclusion = if fired_rules.len() == evidence.len() {
        Conclusion::NonSolvable
    } else {
        Conclusion::PossiblySolvable
    };
    SolvabilityVerdict {
        conclusion,
        fired_rules,
        evidence,
    }
}

fn rule_i(p: &Rational, q: &Rational) -> RuleEvidence {
    let two = rat(2, 1);
    let one = rat(1, 1);
    let values = [
        ("2p+1", &two * p + &one),
        ("2(q-p)+1", &two * (q - p) + &one),
        ("2(p+q)+1", &two * (p + q) + &one),
    ];
    let offender = values.iter().find(|(_, v)| is_odd_integer(v));
    match offender {
        None => RuleEvidence {
            rule: Rule::ThLegI,
            held: true,
            witness: format!(
                "2p+1 = {}, 2(q-p)+1 = {}, 2(p+q)+1 = {}: none is an odd integer",
                values[0].1, values[1].1, values[2].1
            ),
        },
        Some((label, v)) => RuleEvidence {
            rule: Rule::ThLegI,
            held: false,
            witness: format!("{} = {} is an odd integer", label, v),
        },
    }
}

/// Shared engine for rules (ii)-(v). Each solvable pattern constrains q to
/// a coset ±(y + ℤ) and p through 2p+1 = ±(x + m) with a parity condition
/// on m; the rule holds when the pattern does not match.
struct Pattern {
    rule: Rule,
    /// The q coset offset y, as (numer, denom).
    q_offset: (i64, i64),
    /// The p offset x in 2p+1 = ±(x + m).
    p_offset: (i64, i64),
    /// Required parity of m: None = any integer, Some(1) = odd, Some(0) = even.
    m_parity: Option<u8>,
}

fn match_pattern(pat: &Pattern, p: &Rational, q: &Rational) -> RuleEvidence {
    let y = rat(pat.q_offset.0, pat.q_offset.1);
    let x = rat(pat.p_offset.0, pat.p_offset.1);
    let q_matches = coset_member(q, &y);
    // 2p+1 = x + m  or  2p+1 = -(x + m), i.e. m = (2p+1) - x or -(2p+1) - x.
    let two_p_plus_one = rat(2, 1) * p + rat(1, 1);
    let p_matches = [&two_p_plus_one - &x, -&two_p_plus_one - &x]
        .iter()
        .any(|m| has_parity(m, pat.m_parity));
    let parity_name = match pat.m_parity {
        None => "integer",
        Some(1) => "odd integer",
        _ => "even integer",
    };
    let (held, witness) = match (q_matches, p_matches) {
        (true, true) => (
            false,
            format!(
                "q = {} lies in ±({} + Z) and 2p+1 = {} is ±({} + m) with m {}: solvable pattern",
                q, y, two_p_plus_one, x, parity_name
            ),
        ),
        (false, _) => (true, format!("q = {} is not of the form ±({} + l)", q, y)),
        (true, false) => (
            true,
            format!(
                "q = {} matches ±({} + l) but 2p+1 = {} is not ±({} + m) for any {} m",
                q, y, two_p_plus_one, x, parity_name
            ),
        ),
    };
    RuleEvidence {
        rule: pat.rule,
        held,
        witness,
    }
}

fn rule_ii(p: &Rational, q: &Rational) -> RuleEvidence {
    match_pattern(
        &Pattern {
            rule: Rule::ThLegII,
            q_offset: (1, 2),
            p_offset: (1, 2),
            m_parity: None,
        },
        p,
        q,
    )
}

fn rule_iii(p: &Rational, q: &Rational) -> RuleEvidence {
    match_pattern(
        &Pattern {
            rule: Rule::ThLegIII,
            q_offset: (2, 3),
            p_offset: (1, 3),
            m_parity: Some(1),
        },
        p,
        q,
    )
}

fn rule_iv(p: &Rational, q: &Rational) -> RuleEvidence {
    match_pattern(
        &Pattern {
            rule: Rule::ThLegIV,
            q_offset: (2, 5),
            p_offset: (2, 5),
            m_parity: Some(0),
        },
        p,
        q,
    )
}

fn rule_v(p: &Rational, q: &Rational) -> RuleEvidence {
    match_pattern(
        &Pattern {
            rule: Rule::ThLegV,
            q_offset: (4, 5),
            p_offset: (1, 5),
            m_parity: Some(1),
        },
        p,
        q,
    )
}

/// Whether q ∈ (y + ℤ) ∪ (−y + ℤ).
fn coset_member(q: &Rational, y: &Rational) -> bool {
    (q - y).is_integer() || (q + y).is_integer()
}

fn has_parity(m: &Rational, parity: Option<u8>) -> bool {
    if !m.is_integer() {
        return false;
    }
    match parity {
        None => true,
        Some(1) => m.numer().is_odd(),
        _ => m.numer().is_even(),
    }
}

fn is_odd_integer(x: &Rational) -> bool {
    x.is_integer() && x.numer().is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use rand::{Rng, SeedableRng};

    fn params(p: (i64, i64), q: (i64, i64)) -> LegendreParams {
        LegendreParams::from_rationals(rat(p.0, p.1), rat(q.0, q.1)).unwrap()
    }

    #[test]
    fn exponent_examples() {
        let e = exponents(&params((1, 1), (0, 1)));
        assert_eq!(e.at_plus_one.0.as_rational(), Some(&rat(1, 2)));
        assert_eq!(e.at_minus_one.1.as_rational(), Some(&rat(1, 2)));
        assert_eq!(e.at_infinity.0.as_rational(), Some(&int(-2)));
        assert_eq!(e.at_infinity.1.as_rational(), Some(&int(1)));

        let e = exponents(&params((-1, 6), (1, 6)));
        assert_eq!(e.at_plus_one.0.as_rational(), Some(&rat(7, 12)));
        assert_eq!(e.at_plus_one.1.as_rational(), Some(&rat(5, 12)));
        assert_eq!(e.at_infinity.0.as_rational(), Some(&rat(-5, 6)));
        assert_eq!(e.at_infinity.1.as_rational(), Some(&rat(-1, 6)));

        let e = exponents(&params((0, 1), (0, 1)));
        assert_eq!(e.at_infinity.0.as_rational(), Some(&int(-1)));
        assert_eq!(e.at_infinity.1.as_rational(), Some(&int(0)));
    }

    #[test]
    fn exponent_pairs_sum_to_indicial_traces() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1e9);
        let mut checked = 0;
        while checked < 1000 {
            let p = rat(rng.gen_range(-40..40), rng.gen_range(1..15));
            let q = rat(rng.gen_range(-40..40), rng.gen_range(1..15));
            let Ok(params) = LegendreParams::from_rationals(p, q) else {
                continue;
            };
            let e = exponents(&params);
            for pair in [&e.at_plus_one, &e.at_minus_one] {
                assert_eq!((&pair.0 + &pair.1).as_rational(), Some(&int(1)));
            }
            assert_eq!(
                (&e.at_infinity.0 + &e.at_infinity.1).as_rational(),
                Some(&int(-1))
            );
            checked += 1;
        }
    }

    #[test]
    fn exponents_are_indicial_roots() {
        // ρ² − ρ + (1−q²)/4 vanishes at the finite exponents and
        // λ² + λ − p(p+1) at the infinite ones.
        let p = ExactScalar::from_rational(rat(-1, 6));
        let q = ExactScalar::sqrt(rat(4, 3));
        let lp = LegendreParams::new(p.clone(), q.clone()).unwrap();
        let e = exponents(&lp);
        let quarter = rat(1, 4);
        let const_term =
            (&ExactScalar::from_int(1) - &(&q * &q)).scale(&quarter);
        for rho in [&e.at_plus_one.0, &e.at_plus_one.1] {
            let residual = &(&(rho * rho) - rho) + &const_term;
            assert_eq!(residual, ExactScalar::from_int(0));
        }
        let p_shift = &(&p * &p) + &p;
        for lam in [&e.at_infinity.0, &e.at_infinity.1] {
            let residual = &(&(lam * lam) + lam) - &p_shift;
            assert_eq!(residual, ExactScalar::from_int(0));
        }
    }

    #[test]
    fn monodromy_diagonals_match_exponent_data() {
        let gens = monodromy_generators(&params((0, 1), (0, 1)));
        assert_eq!(gens.len(), 4);
        // (e^{πi}, e^{-πi}): both entries normalize to exponent 1.
        assert_eq!(gens[0].diagonal().0.exponent().as_rational(), Some(&int(1)));
        assert_eq!(gens[0].diagonal().1.exponent().as_rational(), Some(&int(1)));
        // e^{±2πi} = 1 and e^{0} = 1.
        assert!(gens[2].diagonal().0.is_one() && gens[2].diagonal().1.is_one());
        assert!(gens[3].diagonal().0.is_one() && gens[3].diagonal().1.is_one());

        let gens = monodromy_generators(&params((-1, 6), (1, 6)));
        assert_eq!(
            gens[0].diagonal().0.exponent().as_rational(),
            Some(&rat(7, 6))
        );
        // 2p = -1/3 normalizes to 5/3, the same root of unity as e^{-πi/3}.
        assert_eq!(
            gens[3].diagonal().0.exponent().as_rational(),
            Some(&rat(5, 3))
        );
    }

    #[test]
    fn surd_exponents_stay_symbolic() {
        let lp = LegendreParams::new(
            ExactScalar::from_rational(rat(1, 4)),
            ExactScalar::sqrt(int(2)),
        )
        .unwrap();
        let gens = monodromy_generators(&lp);
        let first = gens[0].diagonal().0.exponent();
        assert!(first.as_rational().is_none());
        assert_eq!(first.base(), &int(1));
        assert_eq!(first.radicand(), &int(2));
    }

    #[test]
    fn generators_have_unit_determinant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let p = rat(rng.gen_range(-30..30), rng.gen_range(1..10));
            let q = rat(rng.gen_range(-30..30), rng.gen_range(1..10));
            let Ok(params) = LegendreParams::from_rationals(p, q) else {
                continue;
            };
            for g in monodromy_generators(&params) {
                assert!(g.diagonal().0.mul(&g.diagonal().1).is_one());
            }
        }
    }

    #[test]
    fn side_condition_rejects_negative_integer_sums() {
        assert!(matches!(
            LegendreParams::from_rationals(int(-2), int(0)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            LegendreParams::from_rationals(rat(-1, 2), rat(-1, 2)),
            Err(Error::InvalidParams(_))
        ));
        // Sum zero or positive integers are fine, as are non-integer sums.
        assert!(LegendreParams::from_rationals(int(0), int(0)).is_ok());
        assert!(LegendreParams::from_rationals(rat(-13, 6), rat(1, 6)).is_err());
        assert!(LegendreParams::from_rationals(rat(7, 6), rat(1, 6)).is_ok());
    }

    #[test]
    fn verdict_examples() {
        // All five rules hold.
        let v = solvability_verdict(&params((1, 4), (1, 6)));
        assert_eq!(v.conclusion, Conclusion::NonSolvable);
        assert_eq!(v.fired_rules.len(), 5);
        let wi = &v.evidence[0].witness;
        assert!(wi.contains("3/2") && wi.contains("5/6") && wi.contains("11/6"));

        // 2(p+q)+1 = 3 breaks rule (i).
        let v = solvability_verdict(&params((5, 6), (1, 6)));
        assert_eq!(v.conclusion, Conclusion::PossiblySolvable);
        assert!(!v.fired_rules.contains(&Rule::ThLegI));
        assert!(v.evidence[0].witness.contains("3 is an odd integer"));

        // q = 0: not solvable for p outside the integers.
        let v = solvability_verdict(&params((1, 3), (0, 1)));
        assert_eq!(v.conclusion, Conclusion::NonSolvable);
        let v = solvability_verdict(&params((2, 1), (0, 1)));
        assert_eq!(v.conclusion, Conclusion::PossiblySolvable);
    }

    #[test]
    fn irrational_parameters_are_never_solvable() {
        let lp = LegendreParams::new(
            ExactScalar::sqrt(int(2)),
            ExactScalar::from_rational(rat(1, 6)),
        )
        .unwrap();
        let v = solvability_verdict(&lp);
        assert_eq!(v.conclusion, Conclusion::NonSolvable);
        assert_eq!(v.fired_rules, vec![Rule::NonRational]);
    }

    /// Bounded enumeration over the pattern integers; an independent check
    /// of the closed-form congruence logic in `match_pattern`.
    fn pattern_match_by_enumeration(
        p: &Rational,
        q: &Rational,
        x: &Rational,
        y: &Rational,
        parity: Option<u8>,
    ) -> bool {
        let q_hit = (-60..60).any(|l| {
            let l = int(l);
            *q == &l + y || *q == -(&l + y)
        });
        if !q_hit {
            return false;
        }
        (-60..60).any(|m| {
            let ok = match parity {
                None => true,
                Some(1) => m % 2 != 0,
                _ => m % 2 == 0,
            };
            if !ok {
                return false;
            }
            let target = &int(m) + x;
            let tp = rat(2, 1) * p + rat(1, 1);
            tp == target || tp == -target
        })
    }

    #[test]
    fn closed_forms_agree_with_enumeration() {
        let cases: [(fn(&Rational, &Rational) -> RuleEvidence, (i64, i64), (i64, i64), Option<u8>);
            4] = [
            (rule_ii, (1, 2), (1, 2), None),
            (rule_iii, (1, 3), (2, 3), Some(1)),
            (rule_iv, (2, 5), (2, 5), Some(0)),
            (rule_v, (1, 5), (4, 5), Some(1)),
        ];
        for num in -25..25 {
            for den in 1..=10 {
                let p = rat(num, den);
                let q = rat(num + 3, den);
                for (rule_fn, x, y, parity) in &cases {
                    let ev = rule_fn(&p, &q);
                    let enumerated = pattern_match_by_enumeration(
                        &p,
                        &q,
                        &rat(x.0, x.1),
                        &rat(y.0, y.1),
                        *parity,
                    );
                    assert_eq!(
                        ev.held,
                        !enumerated,
                        "closed form disagrees with enumeration at p={}, q={}: {}",
                        p,
                        q,
                        ev.witness
                    );
                }
            }
        }
    }

    #[test]
    fn verdict_symmetries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xa11);
        let mut checked = 0;
        while checked < 400 {
            let p = rat(rng.gen_range(-30..30), rng.gen_range(1..12));
            let q = rat(rng.gen_range(-30..30), rng.gen_range(1..12));
            let (Ok(base), Ok(qneg), Ok(pref)) = (
                LegendreParams::from_rationals(p.clone(), q.clone()),
                LegendreParams::from_rationals(p.clone(), -q.clone()),
                LegendreParams::from_rationals(-rat(1, 1) - p, q),
            ) else {
                continue;
            };
            let v0 = solvability_verdict(&base);
            for v in [solvability_verdict(&qneg), solvability_verdict(&pref)] {
                assert_eq!(v0.conclusion, v.conclusion);
                assert_eq!(v0.fired_rules, v.fired_rules);
            }
            checked += 1;
        }
    }

    #[test]
    fn q_one_sixth_solvability_window() {
        // With q = 1/6 the Kimura patterns (ii)-(v) never match, so the
        // verdict is decided by rule (i) alone: PossiblySolvable exactly
        // when p ∈ Z, p ∈ Z - 1/6, or p ∈ Z + 1/6.
        for six_p in -40i64..40 {
            let p = rat(six_p, 6);
            let Ok(lp) = LegendreParams::from_rationals(p.clone(), rat(1, 6)) else {
                continue;
            };
            let v = solvability_verdict(&lp);
            let expected = matches!(six_p.rem_euclid(6), 0 | 1 | 5);
            assert_eq!(
                v.conclusion == Conclusion::PossiblySolvable,
                expected,
                "p = {}",
                p
            );
        }
    }
}
