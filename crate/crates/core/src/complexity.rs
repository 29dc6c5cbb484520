//! Accessed and accessible parametric volumes of an evolution, the
//! complexity `C = (V_max - V_bar) / V_max`, and the complexity length
//! scale `L_C = s / sqrt(1 - C)`.
//!
//! Volumes are measured on the unwrapped angle track with the
//! Fubini-Study area weight `|sin theta| / 4`, degenerating to the line
//! measures `d(theta)/2` and `sin(theta) d(phi)/2` for meridian and
//! parallel trajectories and to zero for a motionless state. Working in
//! unwrapped coordinates makes a pole crossing an ordinary interior point
//! of the theta integral instead of a piecewise split.
//!
//! The accessed region at time `t` is the swept union
//! `[min theta, max theta] x [min phi, max phi]` over `[t_A, t]`, which
//! reduces to the anchored rectangle `[theta_A, theta(t)] x [phi_A,
//! phi(t)]` for monotone tracks and keeps `V(t) <= V_max` when a track
//! backtracks.

use crate::error::{Error, Result};
use crate::quad::integrate_with_error;
use crate::trajectory::AngleTrack;
use std::f64::consts::PI;

/// Total parametric volume of `[0, pi] x [0, 2pi)` in the area measure;
/// reported for context only, it does not enter the complexity.
pub const V_TOT: f64 = PI;

/// Default angular tolerance for shape classification.
pub const SHAPE_EPS: f64 = 1e-9;

/// Degenerate-measure classification of an angle track.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackShape {
    /// Both angles vary: two-dimensional area measure.
    Area2D,
    /// Only theta varies: line measure `d(theta) / 2`.
    MeridianLine,
    /// Only phi varies: line measure `sin(theta) d(phi) / 2`.
    ParallelLine,
    /// Neither varies: the state never moves.
    Point,
}

impl TrackShape {
    pub fn label(self) -> &'static str {
        match self {
            TrackShape::Area2D => "area2d",
            TrackShape::MeridianLine => "meridian-line",
            TrackShape::ParallelLine => "parallel-line",
            TrackShape::Point => "point",
        }
    }
}

/// Classifies the track by which unwrapped angle ranges exceed `eps`.
pub fn classify_shape(track: &AngleTrack, eps: f64) -> TrackShape {
    let (tl, th) = track.theta_range();
    let (pl, ph) = track.phi_range();
    let theta_moves = th - tl >= eps;
    let phi_moves = ph - pl >= eps;
    match (theta_moves, phi_moves) {
        (false, false) => TrackShape::Point,
        (true, false) => TrackShape::MeridianLine,
        (false, true) => TrackShape::ParallelLine,
        (true, true) => TrackShape::Area2D,
    }
}

/// `integral of |sin u| du` from 0 to `x`.
fn abs_sin_antiderivative(x: f64) -> f64 {
    let k = (x / PI).floor();
    2.0 * k + 1.0 - (x - k * PI).cos()
}

/// `integral of |sin u| du` over `[a, b]`, `a <= b`.
fn abs_sin_integral(a: f64, b: f64) -> f64 {
    abs_sin_antiderivative(b) - abs_sin_antiderivative(a)
}

fn shape_volume(
    shape: TrackShape,
    theta_lo: f64,
    theta_hi: f64,
    phi_lo: f64,
    phi_hi: f64,
    sin_level: f64,
) -> f64 {
    match shape {
        TrackShape::Point => 0.0,
        TrackShape::MeridianLine => 0.5 * (theta_hi - theta_lo),
        TrackShape::ParallelLine => 0.5 * sin_level * (phi_hi - phi_lo),
        TrackShape::Area2D => 0.25 * abs_sin_integral(theta_lo, theta_hi) * (phi_hi - phi_lo),
    }
}

/// For a parallel track the line measure carries the constant
/// `sin(theta)`; the midpoint of the (tiny) unwrapped theta range is a
/// symmetric, deterministic choice.
fn parallel_sin_level(track: &AngleTrack) -> f64 {
    let (tl, th) = track.theta_range();
    (0.5 * (tl + th)).sin().abs()
}

/// Cumulative accessed volume at every sample of the track.
pub fn volume_profile(track: &AngleTrack) -> Vec<f64> {
    profile_with_shape(track, classify_shape(track, SHAPE_EPS))
}

fn profile_with_shape(track: &AngleTrack, shape: TrackShape) -> Vec<f64> {
    let theta = track.theta();
    let phi = track.phi();
    let sin_level = parallel_sin_level(track);
    let mut out = Vec::with_capacity(theta.len());
    let (mut tl, mut th) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut pl, mut ph) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..theta.len() {
        tl = tl.min(theta[k]);
        th = th.max(theta[k]);
        pl = pl.min(phi[k]);
        ph = ph.max(phi[k]);
        out.push(shape_volume(shape, tl, th, pl, ph, sin_level));
    }
    out
}

/// Accessed volume at time `t`: the measure of the parametric region
/// swept between the start of the track and `t` (linearly interpolated
/// between samples).
pub fn instantaneous_volume(track: &AngleTrack, t: f64) -> f64 {
    let times = track.times();
    let profile = volume_profile(track);
    if times.is_empty() {
        return 0.0;
    }
    if t <= times[0] {
        return 0.0;
    }
    if t >= times[times.len() - 1] {
        return profile[profile.len() - 1];
    }
    let i = match times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
        Ok(i) => return profile[i],
        Err(i) => i - 1,
    };
    let u = (t - times[i]) / (times[i + 1] - times[i]);
    profile[i] + u * (profile[i + 1] - profile[i])
}

/// Volumes of one evolution with the shape that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeReport {
    /// Time-averaged accessed volume.
    pub v_bar: f64,
    /// Volume of the bounding accessible region.
    pub v_max: f64,
    pub shape: TrackShape,
    /// Unwrapped polar extrema `(min, max)`.
    pub theta_range: (f64, f64),
    /// Unwrapped azimuth extrema `(min, max)`.
    pub phi_range: (f64, f64),
    /// Quadrature error estimate of the time average.
    pub quadrature_error: f64,
}

/// Time-averaged accessed volume over the whole track.
pub fn accessed_volume(track: &AngleTrack) -> Result<f64> {
    Ok(volume_report(track)?.v_bar)
}

/// Measure of the bounding box `[theta_min, theta_max] x [phi_min,
/// phi_max]` of the unwrapped track, in the shape-appropriate measure.
pub fn accessible_volume(track: &AngleTrack) -> f64 {
    let shape = classify_shape(track, SHAPE_EPS);
    let (tl, th) = track.theta_range();
    let (pl, ph) = track.phi_range();
    shape_volume(shape, tl, th, pl, ph, parallel_sin_level(track))
}

/// Accessed and accessible volumes of the track.
pub fn volume_report(track: &AngleTrack) -> Result<VolumeReport> {
    if track.duration() <= 0.0 {
        return Err(Error::ZeroDuration);
    }
    let shape = classify_shape(track, SHAPE_EPS);
    let profile = profile_with_shape(track, shape);
    let quad = integrate_with_error(track.times(), &profile);
    let v_bar = quad.value / track.duration();
    let v_max = accessible_volume(track);
    Ok(VolumeReport {
        v_bar,
        v_max,
        shape,
        theta_range: track.theta_range(),
        phi_range: track.phi_range(),
        quadrature_error: quad.error_estimate / track.duration(),
    })
}

/// Complexity `C = (V_max - V_bar) / V_max` in `[0, 1]`; small when the
/// evolution exploits most of its accessible region.
pub fn complexity(v_bar: f64, v_max: f64) -> Result<f64> {
    if v_max <= 1e-15 {
        return Err(Error::PointTrajectory);
    }
    Ok(((v_max - v_bar) / v_max).clamp(0.0, 1.0))
}

/// Complexity length scale `L_C = s / sqrt(1 - C) >= s`.
pub fn complexity_length_scale(s: f64, c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) || s < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "length scale needs s >= 0 and c in [0, 1]; got s = {s}, c = {c}"
        )));
    }
    if c >= 1.0 - 1e-12 {
        return Err(Error::MaximalComplexity { c });
    }
    Ok(s / (1.0 - c).sqrt())
}

/// Complexity quantities of one evolution of traversed length `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityReport {
    pub c: f64,
    pub l_c: f64,
    pub s: f64,
    pub volume: VolumeReport,
}

pub fn complexity_report(track: &AngleTrack, s: f64) -> Result<ComplexityReport> {
    let volume = volume_report(track)?;
    let c = complexity(volume.v_bar, volume.v_max)?;
    let l_c = complexity_length_scale(s, c)?;
    Ok(ComplexityReport { c, l_c, s, volume })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::linalg::Vec3;
    use crate::propagate::{propagate_stationary_grid, time_grid};
    use crate::qubit::{PureState, SphericalAngles};
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn track(h: &FieldSpec, psi0: &PureState, t_end: f64, samples: usize) -> AngleTrack {
        let grid = time_grid(0.0, t_end, samples);
        propagate_stationary_grid(h, psi0, &grid)
            .unwrap()
            .angles()
            .clone()
    }

    fn plus_state() -> PureState {
        PureState::new(c64(1.0 / SQRT_2, 0.0), c64(1.0 / SQRT_2, 0.0)).unwrap()
    }

    #[test]
    fn abs_sin_integral_handles_pole_spans() {
        assert_relative_eq!(abs_sin_integral(0.0, PI), 2.0, epsilon = 1e-14);
        assert_relative_eq!(abs_sin_integral(0.0, 2.0 * PI), 4.0, epsilon = 1e-14);
        assert_relative_eq!(
            abs_sin_integral(3.0 * PI / 4.0, 5.0 * PI / 4.0),
            2.0 - SQRT_2,
            epsilon = 1e-14
        );
        // span across the north pole: 2 * (1 - cos(pi/2)) = 2
        assert_relative_eq!(
            abs_sin_integral(-FRAC_PI_2, FRAC_PI_2),
            2.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn shapes_of_canonical_evolutions() {
        let equator = track(
            &FieldSpec::traceless(Vec3::Z),
            &plus_state(),
            FRAC_PI_4,
            257,
        );
        assert_eq!(
            classify_shape(&equator, SHAPE_EPS),
            TrackShape::ParallelLine
        );

        let b = PureState::new(c64(1.0 / SQRT_2, 0.0), c64(0.0, 1.0 / SQRT_2)).unwrap();
        let meridian = track(&FieldSpec::traceless(Vec3::X), &b, FRAC_PI_4, 257);
        assert_eq!(
            classify_shape(&meridian, SHAPE_EPS),
            TrackShape::MeridianLine
        );

        let still = track(
            &FieldSpec::traceless(Vec3::Z),
            &PureState::basis_zero(),
            1.0,
            257,
        );
        assert_eq!(classify_shape(&still, SHAPE_EPS), TrackShape::Point);
    }

    #[test]
    fn equator_instantaneous_volume_ramps_linearly() {
        // V(t) = E t for the equatorial evolution under E sigma_z
        let tr = track(
            &FieldSpec::traceless(Vec3::Z),
            &plus_state(),
            FRAC_PI_4,
            513,
        );
        for frac in [0.25, 0.5, 0.9] {
            let t = FRAC_PI_4 * frac;
            assert_relative_eq!(instantaneous_volume(&tr, t), t, epsilon = 1e-9);
        }
        assert_relative_eq!(instantaneous_volume(&tr, 0.0), 0.0);
    }

    #[test]
    fn optimal_fixture_volumes() {
        // all three quarter-turn evolutions: V_bar = pi/8, V_max = pi/4
        let cases: Vec<AngleTrack> = vec![
            track(
                &FieldSpec::traceless(Vec3::Z),
                &plus_state(),
                FRAC_PI_4,
                2049,
            ),
            track(
                &FieldSpec::traceless(Vec3::X),
                &PureState::new(c64(1.0 / SQRT_2, 0.0), c64(0.0, 1.0 / SQRT_2)).unwrap(),
                FRAC_PI_4,
                2049,
            ),
            track(
                &FieldSpec::traceless(Vec3::Y),
                &PureState::basis_zero(),
                FRAC_PI_4,
                2049,
            ),
        ];
        for tr in &cases {
            let rep = volume_report(tr).unwrap();
            assert_relative_eq!(rep.v_bar, PI / 8.0, epsilon = 1e-5);
            assert_relative_eq!(rep.v_max, PI / 4.0, epsilon = 1e-9);
            assert_relative_eq!(
                complexity(rep.v_bar, rep.v_max).unwrap(),
                0.5,
                epsilon = 1e-4
            );
        }
    }

    #[test]
    fn suboptimal_parallel_volumes() {
        let a = PureState::from_angles(SphericalAngles::new(FRAC_PI_4, 3.0 * FRAC_PI_2).unwrap());
        let tr = track(&FieldSpec::traceless(Vec3::Z), &a, FRAC_PI_2, 2049);
        let rep = volume_report(&tr).unwrap();
        assert_relative_eq!(rep.v_bar, PI / (4.0 * SQRT_2), epsilon = 1e-5);
        assert_relative_eq!(rep.v_max, SQRT_2 * PI / 4.0, epsilon = 1e-9);
        assert_relative_eq!(
            complexity(rep.v_bar, rep.v_max).unwrap(),
            0.5,
            epsilon = 1e-4
        );
    }

    #[test]
    fn complexity_examples() {
        assert_relative_eq!(complexity(PI / 8.0, PI / 4.0).unwrap(), 0.5);
        assert_relative_eq!(
            complexity(PI / (4.0 * SQRT_2), SQRT_2 * PI / 4.0).unwrap(),
            0.5,
            epsilon = 1e-14
        );
        assert_relative_eq!(complexity(0.7, 0.7).unwrap(), 0.0);
        assert!(matches!(complexity(0.0, 0.0), Err(Error::PointTrajectory)));
    }

    #[test]
    fn length_scale_examples() {
        assert_relative_eq!(
            complexity_length_scale(FRAC_PI_2, 0.5).unwrap(),
            PI / SQRT_2,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            complexity_length_scale(PI / SQRT_2, 0.5).unwrap(),
            PI,
            epsilon = 1e-14
        );
        assert_relative_eq!(complexity_length_scale(1.7, 0.0).unwrap(), 1.7);
        assert!(matches!(
            complexity_length_scale(1.0, 1.0),
            Err(Error::MaximalComplexity { .. })
        ));
    }

    #[test]
    fn uniform_precession_complexity_is_half_for_any_duration() {
        // V(t) ramps linearly, so the average is half the max for every T
        for t_end in [PI / 8.0, FRAC_PI_4, FRAC_PI_2] {
            let tr = track(&FieldSpec::traceless(Vec3::Z), &plus_state(), t_end, 2049);
            let rep = volume_report(&tr).unwrap();
            let c = complexity(rep.v_bar, rep.v_max).unwrap();
            assert_relative_eq!(c, 0.5, epsilon = 1e-4);
        }
    }

    #[test]
    fn extending_duration_grows_both_volumes() {
        let short = track(
            &FieldSpec::traceless(Vec3::Z),
            &plus_state(),
            FRAC_PI_4,
            1025,
        );
        let long = track(
            &FieldSpec::traceless(Vec3::Z),
            &plus_state(),
            FRAC_PI_2,
            1025,
        );
        let rs = volume_report(&short).unwrap();
        let rl = volume_report(&long).unwrap();
        assert!(rl.v_bar > rs.v_bar);
        assert!(rl.v_max > rs.v_max);
    }

    #[test]
    fn backtracking_track_keeps_accessed_below_accessible() {
        // sweep out and back along the equator: the union saturates
        let n = 401;
        let times: Vec<f64> = (0..n).map(|i| i as f64 * 0.01).collect();
        let states: Vec<PureState> = (0..n)
            .map(|i| {
                let x = i as f64 / (n - 1) as f64;
                let phi = 1.2 * (PI * x).sin();
                PureState::from_angles(
                    SphericalAngles::new(FRAC_PI_2, crate::qubit::wrap_to_2pi(phi)).unwrap(),
                )
            })
            .collect();
        let traj = crate::trajectory::Trajectory::from_samples(times, states).unwrap();
        let rep = volume_report(traj.angles()).unwrap();
        assert!(rep.v_bar <= rep.v_max + 1e-9);
        let profile = volume_profile(traj.angles());
        let vmax = rep.v_max;
        for v in profile {
            assert!(v <= vmax + 1e-12);
        }
    }

    #[test]
    fn point_track_reports_zero_volumes() {
        let tr = track(
            &FieldSpec::traceless(Vec3::Z),
            &PureState::basis_zero(),
            1.0,
            257,
        );
        let rep = volume_report(&tr).unwrap();
        assert_eq!(rep.shape, TrackShape::Point);
        assert_eq!(rep.v_bar, 0.0);
        assert_eq!(rep.v_max, 0.0);
        assert!(matches!(
            complexity_report(&tr, 0.0),
            Err(Error::PointTrajectory)
        ));
    }
}
