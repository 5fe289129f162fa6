//! The logarithm detector for the second variational equation.
//!
//! Variation of parameters solves the forced second-level system through
//! ∫X⁻¹f₂, where X is the fundamental matrix of the first-level pair and
//! f₂ = (0, K̃₂⁽¹⁾, 0, K̃₂⁽²⁾) carries the quadratic sources. A component
//! of X⁻¹f₂ with a nonzero residue (coefficient of x⁻¹) integrates to a
//! logarithm, which makes the local monodromy non-diagonalizable and the
//! Hamiltonian meromorphically non-integrable.
//!
//! Everything here is exact: solutions come from [`crate::frobenius`] on
//! the 3-step exponent lattice, sources from [`crate::variational`], and
//! residues land in ℚ[H] ⊕ ℚ[H]·d with H = h³ and d = D/C. Whether a
//! residue vanishes is decided by rational arithmetic, never by floats.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, Family, HPoly, ParamCoeff, Rational};
use crate::frobenius::{
    indicial_roots, normalize_wronskian, solve_pair_capped, FrobeniusPair, StrandSeries,
    DEFAULT_STEP_CAP,
};
use crate::variational::{
    build_sources, normal_form, source_prefactor_exponents, ve1_infinity_xi11, ve1_infinity_xi12,
    SourceTerm,
};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One row of the inverse fundamental matrix, paired with the source it
/// multiplies. For a 2×2 block [[ζ⁽¹⁾, ζ⁽²⁾], [ζ⁽¹⁾′, ζ⁽²⁾′]] with unit
/// Wronskian the inverse is [[ζ⁽²⁾′, −ζ⁽²⁾], [−ζ⁽¹⁾′, ζ⁽¹⁾]], and the
/// forcing vector (0, K̃₂⁽¹⁾, 0, K̃₂⁽²⁾) only meets the second column of
/// each block, so the sign pattern is (−, +, −, +). The bottom-right
/// entry is ζ₁₂⁽¹⁾: it is forced by X·X⁻¹ = I, and the variant with
/// ζ₁₂⁽²⁾ there fails that identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InverseRow {
    /// −ζ₁₁⁽²⁾ · K̃₂⁽¹⁾
    MinusZeta11SecondK1,
    /// +ζ₁₁⁽¹⁾ · K̃₂⁽¹⁾
    PlusZeta11FirstK1,
    /// −ζ₁₂⁽²⁾ · K̃₂⁽²⁾
    MinusZeta12SecondK2,
    /// +ζ₁₂⁽¹⁾ · K̃₂⁽²⁾
    PlusZeta12FirstK2,
}

impl InverseRow {
    pub const ALL: [InverseRow; 4] = [
        InverseRow::MinusZeta11SecondK1,
        InverseRow::PlusZeta11FirstK1,
        InverseRow::MinusZeta12SecondK2,
        InverseRow::PlusZeta12FirstK2,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            InverseRow::MinusZeta11SecondK1 => "-z11^(2)*K1",
            InverseRow::PlusZeta11FirstK1 => "+z11^(1)*K1",
            InverseRow::MinusZeta12SecondK2 => "-z12^(2)*K2",
            InverseRow::PlusZeta12FirstK2 => "+z12^(1)*K2",
        }
    }

    /// True for the rows multiplying K̃₂⁽¹⁾.
    fn first_source(&self) -> bool {
        matches!(
            self,
            InverseRow::MinusZeta11SecondK1 | InverseRow::PlusZeta11FirstK1
        )
    }
}

impl fmt::Display for InverseRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One candidate component of X⁻¹f₂: a row choice plus the pair
/// (ζ₁₁⁽ⁱ⁾, ζ₁₂⁽ʲ⁾) of first-level solutions fed to the bilinear source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSelector {
    pub row: InverseRow,
    /// (i, j) with i, j ∈ {1, 2}; superscript 1 is the larger-exponent
    /// solution.
    pub args: (u8, u8),
}

impl ComponentSelector {
    /// Every row × argument combination, the exhaustive candidate list.
    pub fn all() -> Vec<ComponentSelector> {
        let mut out = Vec::with_capacity(16);
        for row in InverseRow::ALL {
            for i in [1u8, 2] {
                for j in [1u8, 2] {
                    out.push(ComponentSelector { row, args: (i, j) });
                }
            }
        }
        out
    }
}

impl fmt::Display for ComponentSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(z11^({}), z12^({}))",
            self.row, self.args.0, self.args.1
        )
    }
}

/// The four row functionals of X⁻¹ applied to (0, K̃₂⁽¹⁾, 0, K̃₂⁽²⁾).
pub struct InverseRows {
    // second-column entries of each block inverse, already divided by
    // the block Wronskian
    sol11: [StrandSeries; 2],
    sol12: [StrandSeries; 2],
}

/// The Wronskian of a log-free pair as a nonzero rational.
fn rational_wronskian(pair: &FrobeniusPair) -> Result<Rational> {
    if pair.log_flag {
        return Err(Error::InvalidParams(
            "logarithmic pair has no fundamental-matrix inverse here".into(),
        ));
    }
    let w = &pair.wronskian;
    let ok = w.is_d_free() && w.a.degree().unwrap_or(0) == 0;
    let value = if ok { w.a.coeff(0) } else { int(0) };
    if value.is_zero() {
        return Err(Error::InvalidParams(format!(
            "Wronskian {} is not a nonzero rational constant",
            w
        )));
    }
    Ok(value)
}

impl InverseRows {
    /// Rows for Wronskian-normalized pairs (W = 1).
    ///
    /// # Errors
    ///
    /// `NotNormalized` when either pair has W ≠ 1 or a log flag.
    pub fn new(pair11: &FrobeniusPair, pair12: &FrobeniusPair) -> Result<Self> {
        for (pair, name) in [(pair11, "xi11"), (pair12, "xi12")] {
            if !pair.is_normalized() {
                return Err(Error::NotNormalized {
                    wronskian: format!("{} pair has W = {}", name, pair.wronskian),
                });
            }
        }
        Self::with_general_wronskian(pair11, pair12)
    }

    /// Rows for pairs in any scaling: divides each block by its own
    /// Wronskian constant, so residue zero/nonzero status is unchanged
    /// under rescaling either solution.
    pub fn with_general_wronskian(
        pair11: &FrobeniusPair,
        pair12: &FrobeniusPair,
    ) -> Result<Self> {
        let w11 = rational_wronskian(pair11)?;
        let w12 = rational_wronskian(pair12)?;
        Ok(InverseRows {
            sol11: [
                pair11.first.scale(&(int(1) / &w11)),
                pair11.second.scale(&(int(1) / &w11)),
            ],
            sol12: [
                pair12.first.scale(&(int(1) / &w12)),
                pair12.second.scale(&(int(1) / &w12)),
            ],
        })
    }

    /// The four component series of X⁻¹f₂ for concrete sources.
    pub fn apply(&self, k1: &StrandSeries, k2: &StrandSeries) -> [StrandSeries; 4] {
        [
            self.sol11[1].mul(k1).neg(),
            self.sol11[0].mul(k1),
            self.sol12[1].mul(k2).neg(),
            self.sol12[0].mul(k2),
        ]
    }
}

/// The shared source prefactor x^{−3/2}(1 + Hx³)^{−3/4} through `order`
/// lattice steps, by the generalized binomial series.
pub fn source_prefactor(order: usize) -> StrandSeries {
    let (mu, nu) = source_prefactor_exponents();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(ParamCoeff::one());
    let mut c = int(1);
    for m in 0..order {
        c = c * (&nu - int(m as i64)) / int(m as i64 + 1);
        coeffs.push(ParamCoeff::from_a(HPoly::monomial(m + 1, c.clone())));
    }
    StrandSeries::from_coeffs(mu, coeffs)
}

/// All series data for one (k, family) branch, solved to one common
/// order that puts every component's truncation past the residue.
struct BranchSeries {
    family: Family,
    tau: Rational,
    pair11: FrobeniusPair,
    pair12: FrobeniusPair,
    sources: (SourceTerm, SourceTerm),
    prefactor: StrandSeries,
}

/// Lowest exponent a source term can produce from solutions at the given
/// exponents; `None` when every quadratic coefficient vanishes.
fn source_min_exponent(
    term: &SourceTerm,
    rho11: &Rational,
    rho12: &Rational,
) -> Option<Rational> {
    let mut min: Option<Rational> = None;
    let mut push = |e: Rational| {
        min = Some(match min.take() {
            None => e,
            Some(m) => m.min(e),
        })
    };
    if !term.zeta11_zeta12.is_zero() {
        push(rho11 + rho12);
    }
    if !term.zeta11_sq.is_zero() {
        push(rho11 + rho11);
    }
    if !term.zeta12_sq.is_zero() {
        push(rho12 + rho12);
    }
    min
}

/// Smallest series order that pushes every component's truncation past
/// the residue exponent −1.
fn required_order(
    e11: &(Rational, Rational),
    e12: &(Rational, Rational),
    sources: &(SourceTerm, SourceTerm),
) -> usize {
    let pick = |pair: &(Rational, Rational), idx: u8| {
        if idx == 1 {
            pair.0.clone()
        } else {
            pair.1.clone()
        }
    };
    let mut worst: Option<Rational> = None;
    for row in InverseRow::ALL {
        let row_exp = match row {
            InverseRow::MinusZeta11SecondK1 => e11.1.clone(),
            InverseRow::PlusZeta11FirstK1 => e11.0.clone(),
            InverseRow::MinusZeta12SecondK2 => e12.1.clone(),
            InverseRow::PlusZeta12FirstK2 => e12.0.clone(),
        };
        let term = if row.first_source() {
            &sources.0
        } else {
            &sources.1
        };
        for i in [1u8, 2] {
            for j in [1u8, 2] {
                if let Some(src) = source_min_exponent(term, &pick(e11, i), &pick(e12, j)) {
                    let total = &row_exp + src;
                    worst = Some(match worst.take() {
                        None => total,
                        Some(w) => w.min(total),
                    });
                }
            }
        }
    }
    // a product of factors solved to order n has truncation
    // Σ(bases) − 3/2 + 3(n+1); it clears −1 when n > −(Σ − 3/2 + 4)/3
    let sum = match worst {
        Some(w) => w - Rational::new(3.into(), 2.into()),
        None => return 1,
    };
    let bound = -(sum + int(4)) / int(3);
    let needed = bound.floor().to_integer().to_i64().unwrap_or(0) + 1;
    needed.max(1) as usize
}

impl BranchSeries {
    fn build(k: i64, family: Family, cap: usize) -> Result<BranchSeries> {
        let tau = family.tau(k);
        let tau_squared = &tau * &tau;
        let nf11 = normal_form(&ve1_infinity_xi11(&tau_squared))?;
        let nf12 = normal_form(&ve1_infinity_xi12())?;
        let e11 = indicial_roots(&nf11)?;
        let e12 = indicial_roots(&nf12)?;
        let sources = build_sources(&tau_squared);
        let order = required_order(&e11, &e12, &sources);
        if order > cap {
            return Err(Error::TruncationCap { needed: order, cap });
        }
        let pair11 = normalize_wronskian(&solve_pair_capped(&nf11, order, cap)?)?;
        let pair12 = normalize_wronskian(&solve_pair_capped(&nf12, order, cap)?)?;
        Ok(BranchSeries {
            family,
            tau,
            pair11,
            pair12,
            sources,
            prefactor: source_prefactor(order),
        })
    }

    fn solution(pair: &FrobeniusPair, idx: u8) -> &StrandSeries {
        if idx == 1 {
            &pair.first
        } else {
            &pair.second
        }
    }

    /// K̃₂ for one source term and argument pair, prefactor included.
    /// Terms with zero coefficient are skipped rather than folded in as
    /// empty series, so they cannot drag the truncation down.
    fn source_series(&self, term: &SourceTerm, i: u8, j: u8) -> StrandSeries {
        let z11 = Self::solution(&self.pair11, i);
        let z12 = Self::solution(&self.pair12, j);
        let mut acc: Option<StrandSeries> = None;
        let mut fold = |s: StrandSeries| {
            acc = Some(match acc.take() {
                None => s,
                Some(a) => a.add(&s),
            })
        };
        if !term.zeta11_zeta12.is_zero() {
            fold(z11.mul(z12).scale_coeff(&term.zeta11_zeta12));
        }
        if !term.zeta11_sq.is_zero() {
            fold(z11.mul(z11).scale_coeff(&term.zeta11_sq));
        }
        if !term.zeta12_sq.is_zero() {
            fold(z12.mul(z12).scale_coeff(&term.zeta12_sq));
        }
        let bare = acc.unwrap_or_else(|| StrandSeries::zero(self.prefactor.truncation().clone()));
        self.prefactor.mul(&bare)
    }

    /// All sixteen component residues through the given rows.
    fn residues_with(&self, rows: &InverseRows) -> Result<Vec<(ComponentSelector, ParamCoeff)>> {
        let mut out = Vec::with_capacity(16);
        for i in [1u8, 2] {
            for j in [1u8, 2] {
                let k1 = self.source_series(&self.sources.0, i, j);
                let k2 = self.source_series(&self.sources.1, i, j);
                let components = rows.apply(&k1, &k2);
                for (row, series) in InverseRow::ALL.iter().zip(components.iter()) {
                    out.push((
                        ComponentSelector {
                            row: *row,
                            args: (i, j),
                        },
                        series.residue()?,
                    ));
                }
            }
        }
        out.sort_by_key(|(sel, _)| (sel.row, sel.args));
        Ok(out)
    }

    fn residues(&self) -> Result<Vec<(ComponentSelector, ParamCoeff)>> {
        let rows = InverseRows::new(&self.pair11, &self.pair12)?;
        self.residues_with(&rows)
    }
}

/// Residues of every candidate component for one (k, family) branch.
#[derive(Debug, Clone)]
pub struct BranchReport {
    pub family: Family,
    pub tau: Rational,
    pub per_component: Vec<(ComponentSelector, ParamCoeff)>,
    /// Some residue has a nonzero d-free part: a logarithm appears for
    /// every D.
    pub any_nonzero_without_d: bool,
    /// Every d-free part vanishes but some d-part does not: a logarithm
    /// appears exactly when D ≠ 0.
    pub nonzero_requires_d: bool,
}

fn aggregate(residues: &[(ComponentSelector, ParamCoeff)]) -> (bool, bool) {
    let any_a = residues.iter().any(|(_, r)| !r.a.is_zero());
    let any_b = residues.iter().any(|(_, r)| !r.b.is_zero());
    (any_a, !any_a && any_b)
}

/// Both family branches at one k with the aggregated verdict booleans.
#[derive(Debug, Clone)]
pub struct ResidueReport {
    pub k: i64,
    /// The −2k+4/3 branch first, then 2k+2/3.
    pub branches: Vec<BranchReport>,
    pub any_nonzero_without_d: bool,
    pub nonzero_requires_d: bool,
}

impl ResidueReport {
    /// The residue of one component in one branch, when present.
    pub fn residue(&self, family: Family, selector: &ComponentSelector) -> Option<&ParamCoeff> {
        self.branches
            .iter()
            .find(|b| b.family == family)
            .and_then(|b| {
                b.per_component
                    .iter()
                    .find(|(s, _)| s == selector)
                    .map(|(_, r)| r)
            })
    }
}

/// Residues for one branch with the default step cap.
pub fn branch_report(k: i64, family: Family) -> Result<BranchReport> {
    branch_report_capped(k, family, DEFAULT_STEP_CAP)
}

/// [`branch_report`] with an explicit step cap.
pub fn branch_report_capped(k: i64, family: Family, cap: usize) -> Result<BranchReport> {
    let data = BranchSeries::build(k, family, cap)?;
    let per_component = data.residues()?;
    let (any_a, requires_d) = aggregate(&per_component);
    Ok(BranchReport {
        family: data.family,
        tau: data.tau,
        per_component,
        any_nonzero_without_d: any_a,
        nonzero_requires_d: requires_d,
    })
}

/// The exact residue of one component at τ = family.tau(k).
///
/// # Errors
///
/// `TruncationCap` when |k| needs more series steps than the cap allows.
pub fn residue_of(selector: &ComponentSelector, k: i64, family: Family) -> Result<ParamCoeff> {
    residue_of_capped(selector, k, family, DEFAULT_STEP_CAP)
}

/// [`residue_of`] with an explicit step cap.
pub fn residue_of_capped(
    selector: &ComponentSelector,
    k: i64,
    family: Family,
    cap: usize,
) -> Result<ParamCoeff> {
    let report = branch_report_capped(k, family, cap)?;
    report
        .per_component
        .into_iter()
        .find(|(s, _)| s == selector)
        .map(|(_, r)| r)
        .ok_or_else(|| Error::InvalidParams(format!("unknown component {}", selector)))
}

/// Evaluates every component over both family branches at this k.
pub fn residue_table(k: i64) -> Result<ResidueReport> {
    residue_table_capped(k, DEFAULT_STEP_CAP)
}

/// [`residue_table`] with an explicit step cap.
pub fn residue_table_capped(k: i64, cap: usize) -> Result<ResidueReport> {
    let branches = vec![
        branch_report_capped(k, Family::FourThirds, cap)?,
        branch_report_capped(k, Family::TwoThirds, cap)?,
    ];
    let any_a = branches.iter().any(|b| b.any_nonzero_without_d);
    let any_b = branches
        .iter()
        .flat_map(|b| b.per_component.iter())
        .any(|(_, r)| !r.b.is_zero());
    Ok(ResidueReport {
        k,
        branches,
        any_nonzero_without_d: any_a,
        nonzero_requires_d: !any_a && any_b,
    })
}

/// Sequential k-sweep, always available.
pub fn residue_sweep_seq(ks: &[i64]) -> Result<Vec<ResidueReport>> {
    residue_sweep_seq_capped(ks, DEFAULT_STEP_CAP)
}

/// [`residue_sweep_seq`] with an explicit step cap.
pub fn residue_sweep_seq_capped(ks: &[i64], cap: usize) -> Result<Vec<ResidueReport>> {
    ks.iter().map(|&k| residue_table_capped(k, cap)).collect()
}

/// Data-parallel k-sweep over the rayon pool.
#[cfg(feature = "parallel")]
pub fn residue_sweep_par(ks: &[i64]) -> Result<Vec<ResidueReport>> {
    residue_sweep_par_capped(ks, DEFAULT_STEP_CAP)
}

/// [`residue_sweep_par`] with an explicit step cap.
#[cfg(feature = "parallel")]
pub fn residue_sweep_par_capped(ks: &[i64], cap: usize) -> Result<Vec<ResidueReport>> {
    ks.par_iter().map(|&k| residue_table_capped(k, cap)).collect()
}

/// The k-sweep entry point: parallel when the `parallel` feature is on.
pub fn residue_sweep(ks: &[i64]) -> Result<Vec<ResidueReport>> {
    residue_sweep_capped(ks, DEFAULT_STEP_CAP)
}

/// [`residue_sweep`] with an explicit step cap.
pub fn residue_sweep_capped(ks: &[i64], cap: usize) -> Result<Vec<ResidueReport>> {
    #[cfg(feature = "parallel")]
    {
        residue_sweep_par_capped(ks, cap)
    }
    #[cfg(not(feature = "parallel"))]
    {
        residue_sweep_seq_capped(ks, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::frobenius::{solve_pair, wronskian_constant};

    fn h_mono(deg: usize, num: i64, den: i64) -> ParamCoeff {
        ParamCoeff::from_a(HPoly::monomial(deg, rat(num, den)))
    }

    fn d_mono(deg: usize, num: i64, den: i64) -> ParamCoeff {
        ParamCoeff::d_times(HPoly::monomial(deg, rat(num, den)))
    }

    fn sel(row: InverseRow, i: u8, j: u8) -> ComponentSelector {
        ComponentSelector { row, args: (i, j) }
    }

    /// Asserts a branch report consists of exactly the given nonzero
    /// residues, everything else zero.
    fn assert_table(report: &BranchReport, nonzero: &[(ComponentSelector, ParamCoeff)]) {
        assert_eq!(report.per_component.len(), 16);
        for (selector, residue) in &report.per_component {
            match nonzero.iter().find(|(s, _)| s == selector) {
                Some((_, expect)) => {
                    assert_eq!(residue, expect, "component {}", selector)
                }
                None => assert!(residue.is_zero(), "component {} = {}", selector, residue),
            }
        }
    }

    #[test]
    fn prefactor_expands_binomially() {
        let p = source_prefactor(3);
        assert_eq!(p.min_exponent(), Some(&rat(-3, 2)));
        assert_eq!(p.coeff_at(&rat(-3, 2)).unwrap(), ParamCoeff::one());
        assert_eq!(p.coeff_at(&rat(3, 2)).unwrap(), h_mono(1, -3, 4));
        assert_eq!(p.coeff_at(&rat(9, 2)).unwrap(), h_mono(2, 21, 32));
        assert_eq!(p.coeff_at(&rat(15, 2)).unwrap(), h_mono(3, -77, 128));
    }

    #[test]
    fn inverse_rows_satisfy_the_defining_identity() {
        // X·X⁻¹ = I as exact series, for both a half-integer and an
        // integer exponent pair
        let taus = [rat(10, 3), rat(22, 3)];
        let nf12 = normal_form(&ve1_infinity_xi12()).unwrap();
        let mut pairs = vec![normalize_wronskian(&solve_pair(&nf12, 6).unwrap()).unwrap()];
        for tau in taus {
            let nf = normal_form(&ve1_infinity_xi11(&(&tau * &tau))).unwrap();
            pairs.push(normalize_wronskian(&solve_pair(&nf, 6).unwrap()).unwrap());
        }
        for pair in &pairs {
            let (f, g) = (&pair.first, &pair.second);
            let (df, dg) = (f.derivative(), g.derivative());
            // [[g', -g], [-f', f]] · [[f, g], [f', g']]
            let diag0 = dg.mul(f).sub(&g.mul(&df));
            let diag1 = f.mul(&dg).sub(&df.mul(g));
            let off0 = dg.mul(g).sub(&g.mul(&dg));
            let off1 = f.mul(&dg).sub(&dg.mul(f));
            assert_eq!(diag0.constant_value(), Some(ParamCoeff::one()));
            assert_eq!(diag1.constant_value(), Some(ParamCoeff::one()));
            assert!(off0.is_null());
            assert!(off1.is_null());
        }
    }

    #[test]
    fn rows_refuse_unnormalized_pairs() {
        let nf12 = normal_form(&ve1_infinity_xi12()).unwrap();
        let raw12 = solve_pair(&nf12, 4).unwrap();
        let nf11 = normal_form(&ve1_infinity_xi11(&rat(100, 9))).unwrap();
        let norm11 = normalize_wronskian(&solve_pair(&nf11, 4).unwrap()).unwrap();
        match InverseRows::new(&norm11, &raw12) {
            Err(Error::NotNormalized { wronskian }) => {
                assert!(wronskian.contains("-4"), "message: {}", wronskian)
            }
            other => panic!("expected NotNormalized, got {:?}", other.err()),
        }
    }

    #[test]
    fn zero_forcing_gives_zero_components() {
        let nf12 = normal_form(&ve1_infinity_xi12()).unwrap();
        let pair12 = normalize_wronskian(&solve_pair(&nf12, 4).unwrap()).unwrap();
        let nf11 = normal_form(&ve1_infinity_xi11(&rat(100, 9))).unwrap();
        let pair11 = normalize_wronskian(&solve_pair(&nf11, 4).unwrap()).unwrap();
        let rows = InverseRows::new(&pair11, &pair12).unwrap();
        let zero = StrandSeries::zero(int(30));
        let live = source_prefactor(4);
        let applied = rows.apply(&zero, &live);
        assert!(applied[0].is_null());
        assert!(applied[1].is_null());
        assert!(!applied[2].is_null());
        assert!(!applied[3].is_null());
    }

    #[test]
    fn residues_at_tau_22_3() {
        // k = −3 in −2k+4/3
        let report = branch_report(-3, Family::FourThirds).unwrap();
        assert_eq!(report.tau, rat(22, 3));
        let v = h_mono(4, -1245, 61952);
        assert_table(
            &report,
            &[
                (sel(InverseRow::MinusZeta11SecondK1, 2, 2), v.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 1), v.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 2), v),
            ],
        );
        assert!(report.any_nonzero_without_d);
        assert!(!report.nonzero_requires_d);
    }

    #[test]
    fn residues_at_tau_16_3_from_either_presentation() {
        // τ = −16/3 arises at k = −3 in 2k+2/3, τ = +16/3 at k = −2 in
        // −2k+4/3; the residue tables agree
        let minus = branch_report(-3, Family::TwoThirds).unwrap();
        let plus = branch_report(-2, Family::FourThirds).unwrap();
        assert_eq!(minus.tau, rat(-16, 3));
        assert_eq!(plus.tau, rat(16, 3));
        assert_eq!(minus.per_component, plus.per_component);
        let d_val = d_mono(1, -237, 56320);
        let a_val = h_mono(3, -3339, 51200);
        assert_table(
            &minus,
            &[
                (sel(InverseRow::PlusZeta11FirstK1, 2, 1), d_val.clone()),
                (sel(InverseRow::PlusZeta11FirstK1, 2, 2), d_val),
                (sel(InverseRow::MinusZeta11SecondK1, 2, 2), a_val.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 1), a_val.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 2), a_val),
            ],
        );
        assert!(minus.any_nonzero_without_d);
        assert!(!minus.nonzero_requires_d);
    }

    #[test]
    fn residues_at_tau_10_3() {
        let minus = branch_report(-2, Family::TwoThirds).unwrap();
        let plus = branch_report(-1, Family::FourThirds).unwrap();
        assert_eq!(minus.tau, rat(-10, 3));
        assert_eq!(plus.tau, rat(10, 3));
        assert_eq!(minus.per_component, plus.per_component);
        let v = h_mono(2, -9, 50);
        assert_table(
            &plus,
            &[
                (sel(InverseRow::MinusZeta11SecondK1, 2, 2), v.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 1), v.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 2), v),
            ],
        );
    }

    #[test]
    fn residues_at_tau_4_3() {
        let minus = branch_report(-1, Family::TwoThirds).unwrap();
        let plus = branch_report(0, Family::FourThirds).unwrap();
        assert_eq!(minus.tau, rat(-4, 3));
        assert_eq!(plus.tau, rat(4, 3));
        assert_eq!(minus.per_component, plus.per_component);
        let d_val = d_mono(0, -3, 32);
        let a_val = h_mono(1, -3, 16);
        assert_table(
            &plus,
            &[
                (sel(InverseRow::PlusZeta11FirstK1, 2, 1), d_val.clone()),
                (sel(InverseRow::PlusZeta11FirstK1, 2, 2), d_val),
                (sel(InverseRow::MinusZeta11SecondK1, 2, 2), a_val.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 1), a_val.clone()),
                (sel(InverseRow::MinusZeta12SecondK2, 2, 2), a_val),
            ],
        );
        assert!(plus.any_nonzero_without_d);
        assert!(!plus.nonzero_requires_d);
    }

    #[test]
    fn every_residue_vanishes_for_k_past_zero() {
        // τ ∈ {2/3, −2/3, 8/3} and every branch at k ∈ {2, 3, 4}: the
        // full table is zero
        let cases = [
            (0, Family::TwoThirds),
            (1, Family::FourThirds),
            (1, Family::TwoThirds),
            (2, Family::FourThirds),
            (2, Family::TwoThirds),
            (3, Family::FourThirds),
            (3, Family::TwoThirds),
            (4, Family::FourThirds),
            (4, Family::TwoThirds),
        ];
        for (k, family) in cases {
            let report = branch_report(k, family).unwrap();
            assert_table(&report, &[]);
            assert!(!report.any_nonzero_without_d, "k={} {}", k, family);
            assert!(!report.nonzero_requires_d, "k={} {}", k, family);
        }
    }

    #[test]
    fn table_reports_aggregate_both_branches() {
        let table = residue_table(0).unwrap();
        assert_eq!(table.branches.len(), 2);
        assert_eq!(table.branches[0].family, Family::FourThirds);
        assert_eq!(table.branches[0].tau, rat(4, 3));
        assert_eq!(table.branches[1].tau, rat(2, 3));
        // the 4/3 branch carries the nonzero residues, so the aggregate
        // sees unconditional obstructions
        assert!(table.any_nonzero_without_d);
        assert!(!table.nonzero_requires_d);
        let r = table
            .residue(
                Family::FourThirds,
                &sel(InverseRow::PlusZeta11FirstK1, 2, 1),
            )
            .unwrap();
        assert_eq!(r, &d_mono(0, -3, 32));

        // at k = 1 both branches are blank: no unconditional obstruction
        // and no d-conditional one either
        let table = residue_table(1).unwrap();
        assert!(!table.any_nonzero_without_d);
        assert!(!table.nonzero_requires_d);
    }

    #[test]
    fn sweep_matches_pointwise_tables() {
        let ks = [-3i64, -1, 0, 1, 2];
        let seq = residue_sweep_seq(&ks).unwrap();
        for (k, report) in ks.iter().zip(seq.iter()) {
            let single = residue_table(*k).unwrap();
            assert_eq!(report.k, *k);
            assert_eq!(
                report.any_nonzero_without_d,
                single.any_nonzero_without_d
            );
            for (b, sb) in report.branches.iter().zip(single.branches.iter()) {
                assert_eq!(b.per_component, sb.per_component);
            }
        }
        #[cfg(feature = "parallel")]
        {
            let par = residue_sweep_par(&ks).unwrap();
            for (s, p) in seq.iter().zip(par.iter()) {
                assert_eq!(s.k, p.k);
                for (b, pb) in s.branches.iter().zip(p.branches.iter()) {
                    assert_eq!(b.per_component, pb.per_component);
                }
            }
        }
    }

    #[test]
    fn residue_zero_status_survives_rescaling() {
        // the alternate normalization scales the second xi12 solution by
        // −144 instead of W-normalizing; statuses must not move
        for (k, family) in [(0, Family::FourThirds), (-3, Family::TwoThirds)] {
            let data = BranchSeries::build(k, family, DEFAULT_STEP_CAP).unwrap();
            let baseline = data.residues().unwrap();

            let mut scaled = BranchSeries::build(k, family, DEFAULT_STEP_CAP).unwrap();
            scaled.pair12.second = scaled.pair12.second.scale(&int(-144));
            scaled.pair12.wronskian =
                wronskian_constant(&scaled.pair12.first, &scaled.pair12.second).unwrap();
            let rows =
                InverseRows::with_general_wronskian(&scaled.pair11, &scaled.pair12).unwrap();
            let rescaled = scaled.residues_with(&rows).unwrap();

            for ((sel_a, a), (sel_b, b)) in baseline.iter().zip(rescaled.iter()) {
                assert_eq!(sel_a, sel_b);
                assert_eq!(a.is_zero(), b.is_zero(), "component {}", sel_a);
                assert_eq!(a.a.is_zero(), b.a.is_zero(), "component {}", sel_a);
                assert_eq!(a.b.is_zero(), b.b.is_zero(), "component {}", sel_a);
            }
        }
    }

    #[test]
    fn residues_are_single_h_monomials() {
        for k in -3..=4 {
            for family in [Family::FourThirds, Family::TwoThirds] {
                let report = branch_report(k, family).unwrap();
                for (selector, residue) in &report.per_component {
                    let monomials = |p: &HPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
                    assert!(
                        monomials(&residue.a) <= 1 && monomials(&residue.b) <= 1,
                        "component {} at k={} {}: {}",
                        selector,
                        k,
                        family,
                        residue
                    );
                    // a- and d-parts never co-occur in the observed range
                    assert!(
                        residue.a.is_zero() || residue.b.is_zero(),
                        "component {} mixes parts: {}",
                        selector,
                        residue
                    );
                }
            }
        }
    }

    #[test]
    fn truncation_cap_is_enforced() {
        match residue_table_capped(-3, 3) {
            Err(Error::TruncationCap { needed, cap }) => {
                assert_eq!(cap, 3);
                assert!(needed > 3, "needed = {}", needed);
            }
            other => panic!("expected TruncationCap, got {:?}", other.err()),
        }
    }

    #[test]
    fn selector_enumeration_and_labels() {
        let all = ComponentSelector::all();
        assert_eq!(all.len(), 16);
        let labels: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        assert!(labels.contains(&"-z11^(2)*K1(z11^(2), z12^(2))".to_string()));
        assert!(labels.contains(&"+z12^(1)*K2(z11^(1), z12^(1))".to_string()));
        // all distinct
        let mut unique = labels.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), 16);
    }
}
