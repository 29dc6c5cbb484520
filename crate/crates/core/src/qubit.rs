//! Pure qubit states and exact conversions between the amplitude,
//! Bloch-vector, and spherical-angle representations.

use crate::error::{Error, Result};
use crate::linalg::{BlochVector, Vec3};
use num_complex::Complex64;

/// Azimuth is pure gauge when `sin(theta)` drops below this; it is then
/// canonicalized to zero.
pub const POLE_GAUGE_EPS: f64 = 1e-12;

/// Overlap threshold below which two states are no longer considered
/// physically equal.
pub const PHYSICAL_EQ_EPS: f64 = 1e-10;

/// Normalized two-component state `c0 |0> + c1 |1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    c0: Complex64,
    c1: Complex64,
}

/// Canonical Bloch-sphere angles: polar `theta` in `[0, pi]`, azimuth `phi`
/// in `[0, 2pi)`, with `phi = 0` at the poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalAngles {
    pub theta: f64,
    pub phi: f64,
}

impl PureState {
    /// Builds a state from raw amplitudes, rescaling to unit norm.
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let n = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if n < 1e-150 {
            return Err(Error::ZeroNorm);
        }
        Ok(PureState {
            c0: c0 / n,
            c1: c1 / n,
        })
    }

    pub fn from_reals(c0re: f64, c0im: f64, c1re: f64, c1im: f64) -> Result<Self> {
        Self::new(Complex64::new(c0re, c0im), Complex64::new(c1re, c1im))
    }

    /// Basis state |0>, the north pole.
    pub fn basis_zero() -> Self {
        PureState {
            c0: Complex64::new(1.0, 0.0),
            c1: Complex64::ZERO,
        }
    }

    /// Basis state |1>, the south pole.
    pub fn basis_one() -> Self {
        PureState {
            c0: Complex64::ZERO,
            c1: Complex64::new(1.0, 0.0),
        }
    }

    /// `cos(theta/2) |0> + e^{i phi} sin(theta/2) |1>`.
    pub fn from_angles(angles: SphericalAngles) -> Self {
        let half = 0.5 * angles.theta;
        PureState {
            c0: Complex64::new(half.cos(), 0.0),
            c1: Complex64::from_polar(half.sin(), angles.phi),
        }
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.c0, self.c1]
    }

    pub fn norm(&self) -> f64 {
        (self.c0.norm_sqr() + self.c1.norm_sqr()).sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    /// `|<self|other>|`, the fidelity amplitude.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm()
    }

    /// Equality up to a global phase: `|<a|b>| >= 1 - 1e-10`.
    pub fn physically_equal(&self, other: &PureState) -> bool {
        self.overlap(other) >= 1.0 - PHYSICAL_EQ_EPS
    }

    /// Canonical spherical angles of the state.
    ///
    /// `theta = 2 atan2(|c1|, |c0|)`; `phi = arg(c1) - arg(c0)` via the
    /// two-argument arctangent, reduced to `[0, 2pi)` and canonicalized to
    /// zero at the poles.
    pub fn angles(&self) -> SphericalAngles {
        let theta = 2.0 * self.c1.norm().atan2(self.c0.norm());
        let phi = if theta.sin().abs() < POLE_GAUGE_EPS {
            0.0
        } else {
            wrap_to_2pi(self.c1.arg() - self.c0.arg())
        };
        SphericalAngles { theta, phi }
    }

    /// Bloch vector `<sigma>` of the state.
    pub fn bloch(&self) -> BlochVector {
        let cross = self.c0.conj() * self.c1;
        Vec3::new(
            2.0 * cross.re,
            2.0 * cross.im,
            self.c0.norm_sqr() - self.c1.norm_sqr(),
        )
    }

    pub(crate) fn from_amplitudes_unchecked(c0: Complex64, c1: Complex64) -> Self {
        PureState { c0, c1 }
    }

    pub(crate) fn renormalized(&self) -> Self {
        let n = self.norm();
        PureState {
            c0: self.c0 / n,
            c1: self.c1 / n,
        }
    }
}

impl SphericalAngles {
    /// Validates `theta` in `[0, pi]`, reduces `phi` to `[0, 2pi)` and
    /// canonicalizes the azimuth at the poles.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidConfig(format!(
                "polar angle {theta} outside [0, pi]"
            )));
        }
        let phi = if theta.sin().abs() < POLE_GAUGE_EPS {
            0.0
        } else {
            wrap_to_2pi(phi)
        };
        Ok(SphericalAngles { theta, phi })
    }

    /// Canonical angles of a Bloch vector (which is normalized first).
    pub fn from_bloch(v: BlochVector) -> Result<Self> {
        let u = v.normalized().ok_or(Error::ZeroField)?;
        let theta = u.z.clamp(-1.0, 1.0).acos();
        if theta.sin().abs() < POLE_GAUGE_EPS {
            return Ok(SphericalAngles { theta, phi: 0.0 });
        }
        Ok(SphericalAngles {
            theta,
            phi: wrap_to_2pi(u.y.atan2(u.x)),
        })
    }

    pub fn to_bloch(self) -> BlochVector {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        Vec3::new(st * self.phi.cos(), st * self.phi.sin(), ct)
    }
}

/// Reduces an angle to `[0, 2pi)`.
pub fn wrap_to_2pi(phi: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let r = phi.rem_euclid(tau);
    if r >= tau {
        0.0
    } else {
        r
    }
}

/// Fubini-Study geodesic distance `s0 = 2 arccos(|<a|b>|)` in `[0, pi]`.
///
/// Orthogonal states sit at distance `pi`; the value equals the angle
/// between the corresponding Bloch vectors.
pub fn fs_geodesic_distance(a: &PureState, b: &PureState) -> f64 {
    2.0 * a.overlap(b).clamp(0.0, 1.0).acos()
}
