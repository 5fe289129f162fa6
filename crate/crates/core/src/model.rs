//! The Hamiltonian family and its invariant manifold.
//!
//! The potential is the sixth-order homogeneous family
//!
//! ```text
//! V(r, z) = r⁶ + A r²z⁴ + D r³z³ + B r⁴z² + C z⁶,
//! ```
//!
//! and the plane r = p_r = 0 is invariant for every parameter choice.
//! On it, z obeys z̈ = −6Cz⁵; multiplying by ż and integrating once gives
//! the energy-level curve ż² = −2C(z⁶ + h³), written here with the Ch³
//! convention for the integration constant. In the variable w = z² the
//! same curve reads ẇ² = −8C(w⁴ + h³w), and these two relations are the
//! residuals monitored along numeric orbits.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Scalar arithmetic shared by the exact and floating evaluation paths.
///
/// The Hamiltonian, its vector field, and the manifold residuals are each
/// written once, generically; symbolic identities run them over
/// `Rational` while the numeric oracle runs the same source over floats.
/// This is what keeps the two paths from drifting apart.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn pow_u(&self, n: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::from_integer(0.into())
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }
}

/// Coefficients of the potential, plus the manifold constant h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub h: Rational,
}

impl PotentialParams {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, h: Rational) -> Self {
        PotentialParams { a, b, c, d, h }
    }

    /// The ratio d = D/C entering the second variational sources.
    pub fn d_ratio(&self) -> Result<Rational> {
        use num_traits::Zero;
        if self.c.is_zero() {
            return Err(Error::OutOfScope(
                "C = 0: the ratio D/C is undefined".into(),
            ));
        }
        Ok(&self.d / &self.c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState<T> {
    pub r: T,
    pub p_r: T,
    pub z: T,
    pub p_z: T,
}

impl<T> PhaseState<T> {
    pub fn new(r: T, p_r: T, z: T, p_z: T) -> Self {
        PhaseState { r, p_r, z, p_z }
    }
}

fn lift<T: Scalar>(params: &PotentialParams) -> [T; 5] {
    [
        T::from_rational(&params.a),
        T::from_rational(&params.b),
        T::from_rational(&params.c),
        T::from_rational(&params.d),
        T::from_rational(&params.h),
    ]
}

/// H = ½(p_r² + p_z²) + r⁶ + A r²z⁴ + D r³z³ + B r⁴z² + C z⁶.
pub fn hamiltonian<T: Scalar>(state: &PhaseState<T>, params: &PotentialParams) -> T {
    let [a, b, c, d, _] = lift::<T>(params);
    let half = T::from_rational(&Rational::new(1.into(), 2.into()));
    let kinetic = half.mul(&state.p_r.pow_u(2).add(&state.p_z.pow_u(2)));
    let r = &state.r;
    let z = &state.z;
    kinetic
        .add(&r.pow_u(6))
        .add(&a.mul(&r.pow_u(2)).mul(&z.pow_u(4)))
        .add(&d.mul(&r.pow_u(3)).mul(&z.pow_u(3)))
        .add(&b.mul(&r.pow_u(4)).mul(&z.pow_u(2)))
        .add(&c.mul(&z.pow_u(6)))
}

/// The Hamiltonian vector field (ṙ, ṗ_r, ż, ṗ_z).
pub fn vector_field<T: Scalar>(state: &PhaseState<T>, params: &PotentialParams) -> PhaseState<T> {
    let [a, b, c, d, _] = lift::<T>(params);
    let r = &state.r;
    let z = &state.z;
    let two = T::from_int(2);
    let three = T::from_int(3);
    let four = T::from_int(4);
    let six = T::from_int(6);
    // −∂V/∂r = −(2A r z⁴ + 4B r³ z² + 3D r² z³ + 6 r⁵)
    let dv_dr = two
        .mul(&a)
        .mul(r)
        .mul(&z.pow_u(4))
        .add(&four.mul(&b).mul(&r.pow_u(3)).mul(&z.pow_u(2)))
        .add(&three.mul(&d).mul(&r.pow_u(2)).mul(&z.pow_u(3)))
        .add(&six.mul(&r.pow_u(5)));
    // −∂V/∂z = −(4A r² z³ + 2B r⁴ z + 6C z⁵ + 3D r³ z²)
    let dv_dz = four
        .mul(&a)
        .mul(&r.pow_u(2))
        .mul(&z.pow_u(3))
        .add(&two.mul(&b).mul(&r.pow_u(4)).mul(z))
        .add(&six.mul(&c).mul(&z.pow_u(5)))
        .add(&three.mul(&d).mul(&r.pow_u(3)).mul(&z.pow_u(2)));
    PhaseState {
        r: state.p_r.clone(),
        p_r: dv_dr.neg(),
        z: state.p_z.clone(),
        p_z: dv_dz.neg(),
    }
}

/// One point of an orbit in the manifold variable w = z², with its first
/// two time derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSample<T> {
    pub w: T,
    pub w_dot: T,
    pub w_ddot: T,
}

/// Converts an on-plane phase point to the w = z² variables.
///
/// Uses ẇ = 2 z p_z and ẅ = 2 p_z² − 12 C z⁶ (the second from the plane
/// restriction z̈ = −6Cz⁵ of the vector field).
pub fn manifold_sample<T: Scalar>(
    state: &PhaseState<T>,
    params: &PotentialParams,
) -> Result<ManifoldSample<T>> {
    if state.r != T::zero() || state.p_r != T::zero() {
        return Err(Error::InvalidParams(
            "manifold samples require r = p_r = 0 exactly".into(),
        ));
    }
    let c = T::from_rational(&params.c);
    let two = T::from_int(2);
    let twelve = T::from_int(12);
    let z = &state.z;
    let p_z = &state.p_z;
    Ok(ManifoldSample {
        w: z.pow_u(2),
        w_dot: two.mul(z).mul(p_z),
        w_ddot: two
            .mul(&p_z.pow_u(2))
            .sub(&twelve.mul(&c).mul(&z.pow_u(6))),
    })
}

/// Maximum defects of the two manifold relations along a trajectory:
/// max |ẇ² + 8C(w⁴ + h³w)| and max |ẅ + 4C(4w³ + h³)|.
pub fn manifold_residuals<T: Scalar + PartialOrd>(
    samples: &[ManifoldSample<T>],
    params: &PotentialParams,
) -> Result<(T, T)> {
    use num_traits::Zero;
    if params.c.is_zero() {
        return Err(Error::OutOfScope(
            "C = 0: no invariant-manifold energy relation of this form".into(),
        ));
    }
    let c = T::from_rational(&params.c);
    let h_cubed = T::from_rational(&params.h).pow_u(3);
    let four = T::from_int(4);
    let eight = T::from_int(8);
    let mut worst_first = T::zero();
    let mut worst_second = T::zero();
    for s in samples {
        let first = s
            .w_dot
            .pow_u(2)
            .add(&eight.mul(&c).mul(&s.w.pow_u(4).add(&h_cubed.mul(&s.w))));
        let second = s
            .w_ddot
            .add(&four.mul(&c).mul(&four.mul(&s.w.pow_u(3)).add(&h_cubed)));
        for (value, worst) in [(first, &mut worst_first), (second, &mut worst_second)] {
            let mag = abs(value);
            if mag > *worst {
                *worst = mag;
            }
        }
    }
    Ok((worst_first, worst_second))
}

fn abs<T: Scalar + PartialOrd>(x: T) -> T {
    if x < T::zero() {
        x.neg()
    } else {
        x
    }
}
