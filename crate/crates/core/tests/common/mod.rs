//! Brute-force residue oracle on a flat Laurent representation.
//!
//! Everything the strand-series pipeline computes is recomputed here
//! from scratch: dense polynomials in H, d-linear coefficients, Laurent
//! series stored as a dense vector over the half-integer exponent grid,
//! a generalized-binomial prefactor and a three-term recurrence driven
//! directly by the cleared normal-form equation. The only shared types
//! are the rational numbers, so agreement with the crate is a genuine
//! cross-check rather than the same code run twice.

use num_traits::{Signed, ToPrimitive, Zero};
use sextic_core::exactnum::{int, rat, ParamCoeff, Rational};

/// Dense polynomial in H, lowest degree first, trailing zeros trimmed
/// away so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(deg: usize, c: Rational) -> Poly {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Poly::from_coeffs(v)
    }

    fn from_coeffs(mut v: Vec<Rational>) -> Poly {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut v = vec![Rational::zero(); self.0.len().max(o.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Poly::from_coeffs(v)
    }

    fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

/// A series coefficient a(H) + b(H)·d, linear in the symbol d.
#[derive(Clone, Debug, PartialEq)]
pub struct Co {
    pub a: Poly,
    pub b: Poly,
}

impl Co {
    pub fn zero() -> Co {
        Co {
            a: Poly::zero(),
            b: Poly::zero(),
        }
    }

    fn d_times(c: Rational) -> Co {
        Co {
            a: Poly::zero(),
            b: Poly::constant(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Co) -> Co {
        Co {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
        }
    }

    fn scale(&self, c: &Rational) -> Co {
        Co {
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }

    fn mul(&self, o: &Co) -> Co {
        assert!(
            self.b.is_zero() || o.b.is_zero(),
            "product would leave the d-linear ring"
        );
        Co {
            a: self.a.mul(&o.a),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
        }
    }
}

/// Truncated Laurent series over the half-integer exponent grid.
///
/// Slot s holds the coefficient of x^((min2 + s)/2); exponents are kept
/// doubled so the grid is plain integers. `trunc2` is the doubled
/// exponent of the first unknown coefficient, and products/sums track it
/// pessimistically, so reading past the known range is impossible by
/// construction.
#[derive(Clone, Debug)]
pub struct Flat {
    min2: i64,
    trunc2: i64,
    co: Vec<Co>,
}

impl Flat {
    fn new(min2: i64, trunc2: i64) -> Flat {
        assert!(trunc2 > min2, "empty series window");
        Flat {
            min2,
            trunc2,
            co: vec![Co::zero(); (trunc2 - min2) as usize],
        }
    }

    fn set(&mut self, e2: i64, c: Co) {
        assert!(e2 >= self.min2 && e2 < self.trunc2);
        self.co[(e2 - self.min2) as usize] = c;
    }

    fn accumulate(&mut self, e2: i64, c: &Co) {
        let s = (e2 - self.min2) as usize;
        self.co[s] = self.co[s].add(c);
    }

    fn add(&self, o: &Flat) -> Flat {
        let min2 = self.min2.min(o.min2);
        let trunc2 = self.trunc2.min(o.trunc2);
        let mut out = Flat::new(min2, trunc2);
        for (f, _) in [(self, 0), (o, 1)] {
            for (s, c) in f.co.iter().enumerate() {
                let e2 = f.min2 + s as i64;
                if e2 < trunc2 && !c.is_zero() {
                    out.accumulate(e2, c);
                }
            }
        }
        out
    }

    fn mul(&self, o: &Flat) -> Flat {
        let min2 = self.min2 + o.min2;
        let trunc2 = (self.trunc2 + o.min2).min(o.trunc2 + self.min2);
        let mut out = Flat::new(min2, trunc2);
        for (s, a) in self.co.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in o.co.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e2 = self.min2 + s as i64 + o.min2 + t as i64;
                if e2 < trunc2 {
                    out.accumulate(e2, &a.mul(b));
                }
            }
        }
        out
    }

    fn scale(&self, c: &Rational) -> Flat {
        Flat {
            min2: self.min2,
            trunc2: self.trunc2,
            co: self.co.iter().map(|x| x.scale(c)).collect(),
        }
    }

    fn scale_co(&self, c: &Co) -> Flat {
        Flat {
            min2: self.min2,
            trunc2: self.trunc2,
            co: self.co.iter().map(|x| x.mul(c)).collect(),
        }
    }

    fn neg(&self) -> Flat {
        self.scale(&int(-1))
    }

    fn derivative(&self) -> Flat {
        let mut out = Flat::new(self.min2 - 2, self.trunc2 - 2);
        for (s, c) in self.co.iter().enumerate() {
            let e2 = self.min2 + s as i64;
            out.set(e2 - 2, c.scale(&rat(e2, 2)));
        }
        out
    }

    /// Coefficient of x^(-1), the logarithm obstruction.
    pub fn residue(&self) -> Co {
        assert!(
            self.trunc2 > -2,
            "series truncated at x^({}/2), before the residue slot",
            self.trunc2
        );
        if -2 < self.min2 {
            Co::zero()
        } else {
            self.co[(-2 - self.min2) as usize].clone()
        }
    }
}

fn doubled(e: &Rational) -> i64 {
    let two = e + e;
    assert!(two.is_integer(), "exponent {} is off the half-integer grid", e);
    two.to_integer().to_i64().expect("exponent fits in i64")
}

/// alpha·(alpha-1)···(alpha-m+1) / m!
fn binom(alpha: &Rational, m: usize) -> Rational {
    let mut c = int(1);
    for i in 0..m {
        c = c * (alpha - int(i as i64)) / int(i as i64 + 1);
    }
    c
}

/// x^(-3/2)·(1 + Hx³)^(-3/4) by the generalized binomial series.
fn prefactor(order: usize) -> Flat {
    let mut f = Flat::new(-3, -3 + 6 * (order as i64 + 1));
    for m in 0..=order {
        f.set(
            -3 + 6 * m as i64,
            Co {
                a: Poly::monomial(m, binom(&rat(-3, 4), m)),
                b: Poly::zero(),
            },
        );
    }
    f
}

/// One solution ζ = x^ρ Σ a_m (Hx³)^m of ζ'' = r ζ with
///
///   r = (n₀ + n₁·Hx³ + n₂·H²x⁶) / (16x²(1 + Hx³)²),
///   n₀ = 16c, n₁ = n₀ + 24, n₂ = -3,
///
/// which is the normal form of ξ'' + aξ' + bξ = 0 for
/// a = (3/2)Hx²/(1 + Hx³), b = -c/(x²(1 + Hx³)) under the gauge
/// ζ = ξ·exp(½∫a), via r = a'/2 + a²/4 - b. Clearing denominators and
/// matching x^(ρ+3m), with s_m = (ρ+3m)(ρ+3m-1):
///
///   (16·s_m - n₀)·a_m = (n₁ - 32·s_{m-1})·H·a_{m-1}
///                       + (n₂ - 16·s_{m-2})·H²·a_{m-2}.
fn solve(c: &Rational, rho: &Rational, order: usize) -> Flat {
    let n0 = int(16) * c;
    let n1 = &n0 + int(24);
    let n2 = int(-3);
    let s = |m: usize| {
        let e = rho + int(3 * m as i64);
        &e * (&e - int(1))
    };
    assert_eq!(int(16) * s(0), n0, "rho {} is not an indicial root", rho);
    let mut a = vec![int(1)];
    for m in 1..=order {
        let div = int(16) * s(m) - &n0;
        assert!(!div.is_zero(), "resonant root pair at rho {}", rho);
        let mut rhs = (&n1 - int(32) * s(m - 1)) * &a[m - 1];
        if m >= 2 {
            rhs = rhs + (&n2 - int(16) * s(m - 2)) * &a[m - 2];
        }
        a.push(rhs / div);
    }
    let base2 = doubled(rho);
    let mut f = Flat::new(base2, base2 + 6 * (order as i64 + 1));
    for (m, q) in a.into_iter().enumerate() {
        f.set(base2 + 6 * m as i64, Co {
            a: Poly::monomial(m, q),
            b: Poly::zero(),
        });
    }
    f
}

/// The constant Wronskian f·g' - g·f' of two solutions, checked to be a
/// d-free nonzero rational on the whole known range.
fn constant_wronskian(f: &Flat, g: &Flat) -> Rational {
    let w = f.mul(&g.derivative()).add(&g.mul(&f.derivative()).neg());
    let mut value = Rational::zero();
    for (s, c) in w.co.iter().enumerate() {
        let e2 = w.min2 + s as i64;
        if c.is_zero() {
            continue;
        }
        assert_eq!(e2, 0, "Wronskian has a term at x^({}/2)", e2);
        assert!(c.b.is_zero(), "Wronskian carries d");
        assert_eq!(c.a.coeffs().len(), 1, "Wronskian depends on H");
        value = c.a.coeffs()[0].clone();
    }
    assert!(!value.is_zero(), "degenerate solution pair");
    value
}

/// Both solutions at the given indicial constant, larger exponent
/// first, with the second scaled by 1/W so the pair has Wronskian 1.
fn normalized_pair(c: &Rational, rho_hi: &Rational, rho_lo: &Rational, order: usize) -> (Flat, Flat) {
    let hi = solve(c, rho_hi, order);
    let lo = solve(c, rho_lo, order);
    let w = constant_wronskian(&hi, &lo);
    let lo = lo.scale(&(int(1) / w));
    (hi, lo)
}

/// All sixteen component residues of X⁻¹f₂ at one τ, keyed by
/// (row, i, j) with rows in the order
///
///   0: -ζ₁₁⁽²⁾·K̃₂⁽¹⁾   1: +ζ₁₁⁽¹⁾·K̃₂⁽¹⁾   2: -ζ₁₂⁽²⁾·K̃₂⁽²⁾   3: +ζ₁₂⁽¹⁾·K̃₂⁽²⁾
///
/// and sources, for arguments (ζ₁₁⁽ⁱ⁾, ζ₁₂⁽ʲ⁾),
///
///   K̃₂⁽¹⁾ = pf·(-(9τ²-4)/2·ζ₁₁⁽ⁱ⁾ζ₁₂⁽ʲ⁾ - (3/8)d·(ζ₁₁⁽ⁱ⁾)²)
///   K̃₂⁽²⁾ = pf·(-(9τ²-4)/2·(ζ₁₁⁽ⁱ⁾)² - (15/2)·(ζ₁₂⁽ʲ⁾)²)
///
/// with pf = x^(-3/2)(1 + Hx³)^(-3/4).
pub fn residues(tau: &Rational, order: usize) -> Vec<((usize, u8, u8), Co)> {
    let tau_sq = tau * tau;
    let c11 = (int(9) * &tau_sq - int(4)) / int(16);
    let t_abs = tau.abs();
    let rho_hi = rat(1, 2) + rat(3, 4) * &t_abs;
    let rho_lo = rat(1, 2) - rat(3, 4) * &t_abs;
    let z11 = normalized_pair(&c11, &rho_hi, &rho_lo, order);
    let z12 = normalized_pair(&rat(15, 4), &rat(5, 2), &rat(-3, 2), order);
    let pf = prefactor(order);
    let lam = (int(9) * &tau_sq - int(4)) / int(2);

    let mut out = Vec::with_capacity(16);
    for (i, zi) in [(1u8, &z11.0), (2, &z11.1)] {
        for (j, zj) in [(1u8, &z12.0), (2, &z12.1)] {
            let zi_sq = zi.mul(zi);
            let k1 = pf.mul(
                &zi.mul(zj)
                    .scale(&-lam.clone())
                    .add(&zi_sq.scale_co(&Co::d_times(rat(-3, 8)))),
            );
            let k2 = pf.mul(&zi_sq.scale(&-lam.clone()).add(&zj.mul(zj).scale(&rat(-15, 2))));
            let rows = [
                z11.1.mul(&k1).neg(),
                z11.0.mul(&k1),
                z12.1.mul(&k2).neg(),
                z12.0.mul(&k2),
            ];
            for (r, series) in rows.iter().enumerate() {
                out.push(((r, i, j), series.residue()));
            }
        }
    }
    out
}

/// Exact equality between an oracle coefficient and a crate one.
pub fn matches(co: &Co, pc: &ParamCoeff) -> bool {
    co.a.coeffs() == pc.a.coeffs() && co.b.coeffs() == pc.b.coeffs()
}

/// A few sanity pins so a broken oracle cannot silently agree: the
/// ξ₁₂ indicial data and the leading Wronskians are forced by hand.
pub fn self_check() {
    let z12 = (
        solve(&rat(15, 4), &rat(5, 2), 3),
        solve(&rat(15, 4), &rat(-3, 2), 3),
    );
    assert_eq!(constant_wronskian(&z12.0, &z12.1), int(-4));
    let r = residues(&rat(4, 3), 10);
    assert_eq!(r.len(), 16);
}
