//! Curvature coefficient of a quantum evolution: the squared magnitude of
//! the second covariant derivative of the parallel-transported state along
//! its arc length.
//!
//! Three routes are provided: the closed Bloch-vector formula for
//! stationary fields, its generalization with field-rate terms for
//! time-varying fields, and an expectation-value evaluation used as a
//! cross-check oracle.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{BlochVector, Mat2};
use crate::propagate::{integrate_between, propagate_stationary};
use crate::qubit::PureState;
use crate::trajectory::Trajectory;
use num_complex::Complex64;

/// Relative floor on the denominator `|h|^2 - (a.h)^2` below which the
/// state counts as an eigenstate and curvature is undefined.
const EIGENSTATE_REL_EPS: f64 = 1e-14;

/// Curvature sample at one instant; values are clamped at zero against
/// rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub t: f64,
    pub kappa2: f64,
}

/// Curvature coefficient `4 (a.h)^2 / (|h|^2 - (a.h)^2)` for a stationary
/// field; constant along the whole evolution because `a.h` is conserved.
pub fn curvature_stationary(a: BlochVector, h: &FieldSpec) -> Result<f64> {
    let hv = h.stationary_field().ok_or(Error::NonStationaryField)?;
    let h2 = hv.norm_squared();
    let ah = a.dot(hv);
    let den = h2 - ah * ah;
    if den < EIGENSTATE_REL_EPS * h2 || den <= 0.0 {
        return Err(Error::EigenstateSingularity);
    }
    Ok((4.0 * ah * ah / den).max(0.0))
}

/// Curvature coefficient for a possibly time-varying field.
///
/// Evaluates the three-term closed form: the stationary term, the
/// field-rate term with numerator `[h^2 hdot^2 - (h.hdot)^2] -
/// |(a.hdot) h - (a.h) hdot|^2`, and the cross term
/// `4 (a.h) [a.(h x hdot)] / den^2`. With a zero rate both extra terms
/// vanish identically and the stationary value is returned bit-for-bit.
pub fn curvature_timevarying(a: BlochVector, h: &FieldSpec, t: f64) -> Result<f64> {
    let hv = h.field_at(t);
    let hdot = h.rate_at(t).ok_or(Error::MissingFieldRate)?;
    let h2 = hv.norm_squared();
    let ah = a.dot(hv);
    let den = h2 - ah * ah;
    if den < EIGENSTATE_REL_EPS * h2 || den <= 0.0 {
        return Err(Error::EigenstateSingularity);
    }
    let term1 = 4.0 * ah * ah / den;
    let w = hv * a.dot(hdot) - hdot * ah;
    let num2 = (h2 * hdot.norm_squared() - hv.dot(hdot).powi(2)) - w.norm_squared();
    let term2 = num2 / den.powi(3);
    let term3 = 4.0 * ah * a.dot(hv.cross(hdot)) / (den * den);
    Ok((term1 + term2 + term3).max(0.0))
}

/// Normalized deviation operator `(H - <H>) / DeltaE` at one instant.
fn delta_h_op(h: &FieldSpec, psi: &PureState, t: f64) -> Result<Mat2> {
    let hv = h.field_at(t);
    let a = psi.bloch();
    let de = (hv.norm_squared() - a.dot(hv).powi(2)).max(0.0).sqrt();
    if de < 1e-12 * hv.norm() || de == 0.0 {
        return Err(Error::EigenstateSingularity);
    }
    // h0 cancels in H - <H>
    let m = Mat2::from_pauli(-a.dot(hv), hv);
    Ok(m.scale(Complex64::new(1.0 / de, 0.0)))
}

/// State at time `t` consistent with the trajectory: exact rotor
/// propagation when the field is stationary, otherwise a short fine-step
/// integration from the nearest grid sample.
fn state_at(h: &FieldSpec, traj: &Trajectory, t: f64) -> Result<PureState> {
    if h.is_stationary() {
        return propagate_stationary(h, traj.initial_state(), t - traj.times()[0]);
    }
    let times = traj.times();
    let idx = match times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
        Ok(i) => return Ok(traj.states()[i]),
        Err(i) => i.saturating_sub(1).min(times.len() - 1),
    };
    let hn = h.field_at(t).norm().max(h.h0().abs()).max(1e-12);
    let psi = integrate_between(
        h,
        traj.states()[idx].amplitudes(),
        times[idx],
        t,
        1e-3 / hn,
        1,
    );
    Ok(PureState::from_amplitudes_unchecked(psi[0], psi[1]).renormalized())
}

/// Expectation-value evaluation of the curvature coefficient:
///
/// `<Dh^4> - <Dh^2>^2 + [<Dh'^2> - <Dh'>^2] + i <[Dh^2, Dh']>`
///
/// with `Dh = (H - <H>)/DeltaE` and `Dh' = d/dt(Dh) / v(t)`, where
/// `v = DeltaE` is the arc-length speed of the parallel-transported state.
/// The derivative is taken by central differences with step `1e-5 / |h|`;
/// it vanishes identically for stationary fields. The commutator term is
/// real up to a residue below 1e-9.
pub fn curvature_oracle(h: &FieldSpec, traj: &Trajectory, t: f64) -> Result<f64> {
    let psi = state_at(h, traj, t)?;
    let a = psi.bloch();
    let hv = h.field_at(t);
    let de = (hv.norm_squared() - a.dot(hv).powi(2)).max(0.0).sqrt();
    if de < 1e-12 * hv.norm() || de == 0.0 {
        return Err(Error::EigenstateSingularity);
    }
    let dh = delta_h_op(h, &psi, t)?;

    let dh_prime = if h.is_stationary() {
        Mat2::zero()
    } else {
        let delta = 1e-5 / hv.norm();
        let fwd = integrate_between(h, psi.amplitudes(), t, t + delta, delta / 16.0, 1);
        let bwd = integrate_between(h, psi.amplitudes(), t, t - delta, delta / 16.0, 1);
        let psi_p = PureState::from_amplitudes_unchecked(fwd[0], fwd[1]).renormalized();
        let psi_m = PureState::from_amplitudes_unchecked(bwd[0], bwd[1]).renormalized();
        let dh_p = delta_h_op(h, &psi_p, t + delta)?;
        let dh_m = delta_h_op(h, &psi_m, t - delta)?;
        (dh_p - dh_m).scale(Complex64::new(1.0 / (2.0 * delta * de), 0.0))
    };

    let psi_amp = psi.amplitudes();
    let dh2 = dh * dh;
    let e_dh2 = dh2.expectation(psi_amp);
    let e_dh4 = (dh2 * dh2).expectation(psi_amp);
    let e_dhp2 = (dh_prime * dh_prime).expectation(psi_amp);
    let e_dhp = dh_prime.expectation(psi_amp);
    let comm = dh2.commutator(&dh_prime).expectation(psi_amp);

    let total = e_dh4 - e_dh2 * e_dh2 + (e_dhp2 - e_dhp * e_dhp) + Complex64::new(0.0, 1.0) * comm;
    debug_assert!(total.im.abs() < 1e-9, "imaginary residue {}", total.im);
    Ok(total.re.max(0.0))
}

/// Curvature sampled along a trajectory via the Bloch-vector formulas.
pub fn curvature_along(h: &FieldSpec, traj: &Trajectory) -> Result<Vec<CurvatureSample>> {
    traj.times()
        .iter()
        .zip(traj.bloch())
        .map(|(&t, &a)| {
            let kappa2 = if h.is_stationary() {
                curvature_stationary(a, h)?
            } else {
                curvature_timevarying(a, h, t)?
            };
            Ok(CurvatureSample { t, kappa2 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vec3;
    use crate::propagate::{propagate_stationary_grid, time_grid, PropagationConfig};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::SQRT_2;

    #[test]
    fn stationary_examples() {
        let h = FieldSpec::traceless(Vec3::Z);
        // perpendicular: geodesic, zero curvature
        assert_relative_eq!(curvature_stationary(Vec3::X, &h).unwrap(), 0.0);
        // theta = pi/4 cone
        let a = Vec3::new(0.0, -1.0 / SQRT_2, 1.0 / SQRT_2);
        assert_relative_eq!(curvature_stationary(a, &h).unwrap(), 4.0, epsilon = 1e-12);
        // a.hhat = cos(pi/3) -> 4/3, independent of field strength
        let cosang = (std::f64::consts::PI / 3.0).cos();
        let sinang = (std::f64::consts::PI / 3.0).sin();
        let a = Vec3::new(sinang, 0.0, cosang);
        let h5 = FieldSpec::traceless(Vec3::Z * 5.0);
        assert_relative_eq!(
            curvature_stationary(a, &h5).unwrap(),
            4.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn eigenstate_is_singular() {
        let h = FieldSpec::traceless(Vec3::Z);
        assert!(matches!(
            curvature_stationary(Vec3::Z, &h),
            Err(Error::EigenstateSingularity)
        ));
    }

    #[test]
    fn timevarying_reduces_to_stationary_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h_of = |v: Vec3| FieldSpec::stationary(0.0, v);
        for _ in 0..1000 {
            let hv = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let a = random_unit(&mut rng);
            let h = h_of(hv);
            let den = hv.norm_squared() - a.dot(hv).powi(2);
            if den < 1e-6 * hv.norm_squared() {
                continue;
            }
            let k_st = curvature_stationary(a, &h).unwrap();
            let k_tv = curvature_timevarying(a, &h, 0.3).unwrap();
            assert_eq!(k_st, k_tv);
        }
    }

    #[test]
    fn rotating_field_curvature_at_pole() {
        // h = E (cos wt, sin wt, 0), a = z: kappa^2 = w^2 / E^2 at t = 0
        let e = 1.3;
        let w = 0.77;
        let h = FieldSpec::time_varying_with_rate(
            0.0,
            move |t| Vec3::new(e * (w * t).cos(), e * (w * t).sin(), 0.0),
            move |t| Vec3::new(-e * w * (w * t).sin(), e * w * (w * t).cos(), 0.0),
        );
        let k = curvature_timevarying(Vec3::Z, &h, 0.0).unwrap();
        assert_relative_eq!(k, (w / e) * (w / e), epsilon = 1e-12);

        // expectation oracle agrees
        let grid = time_grid(0.0, 0.5, 257);
        let cfg = PropagationConfig::default();
        let traj =
            crate::propagate::propagate_numeric(&h, &PureState::basis_zero(), &grid, &cfg).unwrap();
        let k_oracle = curvature_oracle(&h, &traj, 0.0).unwrap();
        assert_relative_eq!(k_oracle, (w / e) * (w / e), epsilon = 1e-7);
    }

    #[test]
    fn parallel_rate_changes_nothing() {
        let hv = Vec3::new(0.3, -0.4, 0.8);
        let h = FieldSpec::time_varying_with_rate(
            0.0,
            move |t| hv * (1.0 + 0.1 * t),
            move |_| hv * 0.1,
        );
        let a = random_unit(&mut ChaCha8Rng::seed_from_u64(3));
        let k_tv = curvature_timevarying(a, &h, 0.0).unwrap();
        let k_st = curvature_stationary(a, &FieldSpec::traceless(hv)).unwrap();
        assert_relative_eq!(k_tv, k_st, epsilon = 1e-12);
    }

    fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
        loop {
            let v = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                return v / n;
            }
        }
    }

    #[test]
    fn oracle_matches_stationary_formula_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut tested = 0;
        while tested < 200 {
            let a = random_unit(&mut rng);
            let hv = random_unit(&mut rng) * rng.random_range(0.3..2.0);
            let den = hv.norm_squared() - a.dot(hv).powi(2);
            if den < 1e-4 * hv.norm_squared() {
                continue;
            }
            let h = FieldSpec::traceless(hv);
            let angles = crate::qubit::SphericalAngles::from_bloch(a).unwrap();
            let psi = PureState::from_angles(angles);
            let grid = time_grid(0.0, 0.4 / hv.norm(), 33);
            let traj = propagate_stationary_grid(&h, &psi, &grid).unwrap();
            let k_st = curvature_stationary(a, &h).unwrap();
            let t_probe = grid[7];
            let k_or = curvature_oracle(&h, &traj, t_probe).unwrap();
            assert!(
                (k_or - k_st).abs() / (1.0 + k_st) < 1e-8,
                "oracle {k_or} vs formula {k_st}"
            );
            tested += 1;
        }
    }

    #[test]
    fn oracle_matches_timevarying_formula() {
        // random smooth field: the full three-term expression vs expectations
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let cfg = PropagationConfig::default();
        let mut tested = 0;
        while tested < 20 {
            let c0 = random_unit(&mut rng) * rng.random_range(0.5..1.5);
            let c1 = random_unit(&mut rng) * rng.random_range(0.2..0.8);
            let w = rng.random_range(0.3..1.5);
            let field = move |t: f64| c0 + c1 * (w * t).sin();
            let rate = move |t: f64| c1 * (w * (w * t).cos());
            let h = FieldSpec::time_varying_with_rate(0.0, field, rate);
            let psi0 = PureState::from_angles(
                crate::qubit::SphericalAngles::from_bloch(random_unit(&mut rng)).unwrap(),
            );
            let grid = time_grid(0.0, 0.8, 801);
            let traj = crate::propagate::propagate_numeric(&h, &psi0, &grid, &cfg).unwrap();
            let t_probe = 0.4;
            let idx = 400;
            let a = traj.bloch()[idx];
            let hv = h.field_at(t_probe);
            let den = hv.norm_squared() - a.dot(hv).powi(2);
            if den < 1e-3 * hv.norm_squared() {
                continue;
            }
            let k_formula = curvature_timevarying(a, &h, t_probe).unwrap();
            let k_oracle = curvature_oracle(&h, &traj, t_probe).unwrap();
            assert!(
                (k_formula - k_oracle).abs() / (1.0 + k_formula) < 1e-5,
                "formula {k_formula} vs oracle {k_oracle}"
            );
            tested += 1;
        }
    }

    #[test]
    fn curvature_conserved_along_stationary_trajectory() {
        let h = FieldSpec::traceless(Vec3::new(0.2, 0.9, -0.4));
        let psi = PureState::from_angles(crate::qubit::SphericalAngles::new(1.0, 0.3).unwrap());
        let grid = time_grid(0.0, 2.0, 257);
        let traj = propagate_stationary_grid(&h, &psi, &grid).unwrap();
        let samples = curvature_along(&h, &traj).unwrap();
        let k0 = samples[0].kappa2;
        for s in &samples {
            assert!((s.kappa2 - k0).abs() < 1e-9);
        }
    }
}
