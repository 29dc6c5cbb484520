//! Sampled evolutions and continuous (unwrapped) spherical-angle tracks.
//!
//! Canonical angles live on `[0, pi] x [0, 2pi)`, which makes meridian
//! trajectories through a pole look discontinuous: the polar angle
//! reflects and the azimuth jumps by pi. The unwrapped track instead lets
//! `theta` run past `pi` (or below `0`) while the azimuth stays put, under
//! the identification `(theta, phi) ~ (2pi - theta, phi + pi)` and
//! `(theta, phi) ~ (-theta, phi + pi)`.

use crate::error::{Error, Result};
use crate::linalg::BlochVector;
use crate::qubit::{wrap_to_2pi, PureState, SphericalAngles, POLE_GAUGE_EPS};
use std::f64::consts::PI;

/// `|sin theta|` below which a sample is treated as sitting on a pole for
/// event bookkeeping.
pub const POLE_ZONE_EPS: f64 = 1e-6;

/// Smallest angle swing that counts as a genuine direction reversal.
const TURNING_EPS: f64 = 1e-9;

/// Largest allowed Bloch-vector angle between consecutive samples.
const MAX_SAMPLE_SUBTEND: f64 = PI / 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// The unwrapped polar angle crossed a multiple of pi.
    PoleCrossing,
    /// The unwrapped polar angle reversed direction.
    ThetaTurning,
    /// The unwrapped azimuth reversed direction.
    PhiTurning,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackEvent {
    pub time: f64,
    pub kind: EventKind,
}

/// Continuous angle samples `(theta_u(t), phi_u(t))` for one trajectory,
/// plus pole-crossing and turning-point events.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTrack {
    times: Vec<f64>,
    theta_u: Vec<f64>,
    phi_u: Vec<f64>,
    events: Vec<TrackEvent>,
}

impl AngleTrack {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta_u
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi_u
    }

    pub fn events(&self) -> &[TrackEvent] {
        &self.events
    }

    pub fn pole_crossings(&self) -> impl Iterator<Item = &TrackEvent> {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::PoleCrossing)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn duration(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            self.times[self.times.len() - 1] - self.times[0]
        }
    }

    /// `(min, max)` of the unwrapped polar samples.
    pub fn theta_range(&self) -> (f64, f64) {
        min_max(&self.theta_u)
    }

    /// `(min, max)` of the unwrapped azimuth samples.
    pub fn phi_range(&self) -> (f64, f64) {
        min_max(&self.phi_u)
    }

    /// Maps the unwrapped sample `i` back to canonical angles.
    pub fn canonical_at(&self, i: usize) -> SphericalAngles {
        canonical_from_unwrapped(self.theta_u[i], self.phi_u[i])
    }
}

/// Canonical angles corresponding to an unwrapped pair.
pub fn canonical_from_unwrapped(theta_u: f64, phi_u: f64) -> SphericalAngles {
    let r = theta_u.rem_euclid(2.0 * PI);
    let (theta, phi) = if r <= PI {
        (r, phi_u)
    } else {
        (2.0 * PI - r, phi_u + PI)
    };
    let phi = if theta.sin().abs() < POLE_GAUGE_EPS {
        0.0
    } else {
        wrap_to_2pi(phi)
    };
    SphericalAngles { theta, phi }
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in xs {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (lo, hi)
}

/// Nearest lift `x + 2 pi k` to `target`.
fn lift_nearest(x: f64, target: f64) -> f64 {
    x + 2.0 * PI * ((target - x) / (2.0 * PI)).round()
}

/// A qubit evolution sampled on a monotone time grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<PureState>,
    bloch: Vec<BlochVector>,
    angles: AngleTrack,
}

impl Trajectory {
    /// Assembles a trajectory from state samples, deriving Bloch vectors
    /// and the unwrapped angle track.
    pub fn from_samples(times: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if times.is_empty() || times.len() != states.len() {
            return Err(Error::InvalidConfig(
                "trajectory needs matching, nonempty time and state samples".into(),
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(
                "trajectory times must be strictly increasing".into(),
            ));
        }
        for s in &states {
            if (s.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidConfig(
                    "trajectory state not normalized".into(),
                ));
            }
        }
        let bloch: Vec<BlochVector> = states.iter().map(|s| s.bloch()).collect();
        let angles = build_angle_track(&times, &states, &bloch)?;
        Ok(Trajectory {
            times,
            states,
            bloch,
            angles,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn bloch(&self) -> &[BlochVector] {
        &self.bloch
    }

    pub fn angles(&self) -> &AngleTrack {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.times[self.times.len() - 1] - self.times[0]
    }

    pub fn initial_state(&self) -> &PureState {
        &self.states[0]
    }

    pub fn final_state(&self) -> &PureState {
        &self.states[self.states.len() - 1]
    }
}

/// Unwraps canonical angle samples into a continuous track.
///
/// Every output sample is an exact lift of the state's canonical angles:
/// either `(theta + 2 pi k, phi + 2 pi l)` or the pole-flipped branch
/// `(-theta + 2 pi k, phi + pi + 2 pi l)`. The branch is chosen per sample
/// to minimize the jump from the previous sample, which keeps the azimuth
/// flat across a pole crossing and lets the polar angle run past the pole.
pub(crate) fn build_angle_track(
    times: &[f64],
    states: &[PureState],
    bloch: &[BlochVector],
) -> Result<AngleTrack> {
    let n = times.len();
    let canon: Vec<SphericalAngles> = states.iter().map(|s| s.angles()).collect();

    for w in bloch.windows(2) {
        if w[0].angle_to(w[1]) >= MAX_SAMPLE_SUBTEND {
            return Err(Error::GridTooCoarse(format!(
                "consecutive Bloch samples subtend {:.3} rad (max {:.3})",
                w[0].angle_to(w[1]),
                MAX_SAMPLE_SUBTEND
            )));
        }
    }

    let mut theta_u = Vec::with_capacity(n);
    let mut phi_u = Vec::with_capacity(n);

    // The azimuth is gauge at a pole; start from the first sample where it
    // is meaningful so paths launched from a pole stay flat in phi.
    let first_reliable = canon.iter().position(|a| a.theta.sin().abs() >= 1e-9);
    theta_u.push(canon[0].theta);
    phi_u.push(canon[first_reliable.unwrap_or(0)].phi);

    for k in 1..n {
        let th_c = canon[k].theta;
        let ph_c = canon[k].phi;
        let th_prev = theta_u[k - 1];
        let ph_prev = phi_u[k - 1];

        if th_c.sin().abs() < POLE_GAUGE_EPS {
            // Gauge pole sample: keep phi, continue theta along its trend.
            let guess = if k >= 2 {
                2.0 * theta_u[k - 1] - theta_u[k - 2]
            } else {
                th_prev
            };
            let plain = lift_nearest(th_c, guess);
            let flipped = lift_nearest(-th_c, guess);
            theta_u.push(if (plain - guess).abs() <= (flipped - guess).abs() {
                plain
            } else {
                flipped
            });
            phi_u.push(ph_prev);
            continue;
        }

        // Plain branch and pole-flipped branch are both exact lifts.
        let ta = lift_nearest(th_c, th_prev);
        let pa = lift_nearest(ph_c, ph_prev);
        let tb = lift_nearest(-th_c, th_prev);
        let pb = lift_nearest(ph_c + PI, ph_prev);
        let weight = th_c.sin().abs().max(th_prev.sin().abs());
        let cost_a = (ta - th_prev).abs() + weight * (pa - ph_prev).abs();
        let cost_b = (tb - th_prev).abs() + weight * (pb - ph_prev).abs();
        if cost_a <= cost_b {
            theta_u.push(ta);
            phi_u.push(pa);
        } else {
            theta_u.push(tb);
            phi_u.push(pb);
        }
    }

    // Jump contract on the physical displacement: azimuth motion subtends
    // an arc weighted by sin(theta), so fast phi swings during a close
    // pole pass are legitimate while an under-sampled equator is not.
    for k in 1..n {
        let dth = (theta_u[k] - theta_u[k - 1]).abs();
        let dph = (phi_u[k] - phi_u[k - 1]).abs();
        let weight = theta_u[k].sin().abs().max(theta_u[k - 1].sin().abs());
        if dth >= PI / 2.0 || weight * dph >= PI / 2.0 {
            return Err(Error::GridTooCoarse(format!(
                "unwrapped jump (dtheta {dth:.3}, dphi {dph:.3} at sin(theta) {weight:.3}) \
                 at sample {k} exceeds pi/2"
            )));
        }
    }

    let mut events = detect_pole_crossings(times, &theta_u);
    events.extend(detect_turnings(times, &theta_u, EventKind::ThetaTurning));
    events.extend(detect_turnings(times, &phi_u, EventKind::PhiTurning));
    events.sort_by(|a, b| a.time.partial_cmp(&b.time).unwrap());

    Ok(AngleTrack {
        times: times.to_vec(),
        theta_u,
        phi_u,
        events,
    })
}

/// Transversal crossings of `theta_u` through multiples of pi.
///
/// Samples within `TURNING_EPS` of the pole value are skipped so that a
/// trajectory parked on a pole does not emit jitter crossings; a genuine
/// crossing is detected between the clear samples on either side.
fn detect_pole_crossings(times: &[f64], theta_u: &[f64]) -> Vec<TrackEvent> {
    let mut events = Vec::new();
    let (lo, hi) = min_max(theta_u);
    let m_lo = (lo / PI).floor() as i64;
    let m_hi = (hi / PI).ceil() as i64;
    for m in m_lo..=m_hi {
        let p = m as f64 * PI;
        if p < lo || p > hi {
            continue;
        }
        let mut last_clear: Option<(usize, f64)> = None;
        for (k, &th) in theta_u.iter().enumerate() {
            let d = th - p;
            if d.abs() <= TURNING_EPS {
                continue;
            }
            if let Some((kp, dp)) = last_clear {
                if dp.signum() != d.signum() {
                    let t = times[kp] + (times[k] - times[kp]) * (-dp) / (d - dp);
                    events.push(TrackEvent {
                        time: t,
                        kind: EventKind::PoleCrossing,
                    });
                }
            }
            last_clear = Some((k, d));
        }
    }
    events
}

/// Direction reversals of an unwrapped angle series.
fn detect_turnings(times: &[f64], series: &[f64], kind: EventKind) -> Vec<TrackEvent> {
    let mut events = Vec::new();
    for k in 1..series.len().saturating_sub(1) {
        let d1 = series[k] - series[k - 1];
        let d2 = series[k + 1] - series[k];
        if d1 * d2 < 0.0 && d1.abs().max(d2.abs()) > TURNING_EPS {
            events.push(TrackEvent {
                time: times[k],
                kind,
            });
        }
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn state(theta: f64, phi: f64) -> PureState {
        PureState::from_angles(SphericalAngles::new(theta, wrap_to_2pi(phi)).unwrap())
    }

    fn track_of(samples: &[(f64, f64, f64)]) -> AngleTrack {
        let times: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let states: Vec<PureState> = samples.iter().map(|s| state(s.1, s.2)).collect();
        Trajectory::from_samples(times, states)
            .unwrap()
            .angles()
            .clone()
    }

    #[test]
    fn equator_unwraps_flat_theta() {
        let n = 100;
        let samples: Vec<(f64, f64, f64)> = (0..n)
            .map(|i| (i as f64, PI / 2.0, 0.07 * i as f64))
            .collect();
        let track = track_of(&samples);
        let (tlo, thi) = track.theta_range();
        assert_relative_eq!(tlo, PI / 2.0, epsilon = 1e-12);
        assert_relative_eq!(thi, PI / 2.0, epsilon = 1e-12);
        // phi unwraps monotonically past 2 pi
        assert_relative_eq!(track.phi()[n - 1], 0.07 * (n - 1) as f64, epsilon = 1e-9);
        assert_eq!(track.pole_crossings().count(), 0);
    }

    #[test]
    fn meridian_through_south_pole_keeps_phi() {
        // theta grows linearly through pi while the physical azimuth flips
        let n = 201;
        let samples: Vec<(f64, f64, f64)> = (0..n)
            .map(|i| {
                let th = 3.0 * PI / 4.0 + (i as f64 / (n - 1) as f64) * (PI / 2.0);
                if th <= PI {
                    (i as f64, th, PI / 2.0)
                } else {
                    (i as f64, 2.0 * PI - th, 3.0 * PI / 2.0)
                }
            })
            .collect();
        let track = track_of(&samples);
        let (tlo, thi) = track.theta_range();
        assert_relative_eq!(tlo, 3.0 * PI / 4.0, epsilon = 1e-9);
        assert_relative_eq!(thi, 5.0 * PI / 4.0, epsilon = 1e-9);
        let (plo, phi_hi) = track.phi_range();
        assert_relative_eq!(plo, PI / 2.0, epsilon = 1e-9);
        assert_relative_eq!(phi_hi, PI / 2.0, epsilon = 1e-9);
        assert_eq!(track.pole_crossings().count(), 1);
    }

    #[test]
    fn wrap_back_reproduces_canonical_angles() {
        let n = 301;
        let samples: Vec<(f64, f64, f64)> = (0..n)
            .map(|i| {
                let th = 0.3 + 0.8 * (i as f64 / (n - 1) as f64);
                let ph = 0.4 + 2.0 * (i as f64 / (n - 1) as f64);
                (i as f64, th, ph)
            })
            .collect();
        let times: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let states: Vec<PureState> = samples.iter().map(|s| state(s.1, s.2)).collect();
        let traj = Trajectory::from_samples(times, states.clone()).unwrap();
        let track = traj.angles();
        for (i, s) in states.iter().enumerate() {
            let canon = s.angles();
            let back = track.canonical_at(i);
            assert_relative_eq!(back.theta, canon.theta, epsilon = 1e-9);
            assert_relative_eq!(back.phi, canon.phi, epsilon = 1e-9);
        }
    }

    #[test]
    fn pole_start_backfills_azimuth() {
        let samples: Vec<(f64, f64, f64)> =
            (0..50).map(|i| (i as f64, 0.02 * i as f64, 1.1)).collect();
        let track = track_of(&samples);
        // the k = 0 sample is at the north pole; its azimuth comes from the path
        assert_relative_eq!(track.phi()[0], 1.1, epsilon = 1e-12);
        assert_relative_eq!(track.theta()[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn coarse_grid_rejected() {
        let samples = [(0.0, PI / 2.0, 0.0), (1.0, PI / 2.0, 2.0)];
        let times: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let states: Vec<PureState> = samples.iter().map(|s| state(s.1, s.2)).collect();
        match Trajectory::from_samples(times, states) {
            Err(Error::GridTooCoarse(_)) => {}
            other => panic!("expected GridTooCoarse, got {other:?}"),
        }
    }

    #[test]
    fn turning_point_recorded() {
        let n = 101;
        let samples: Vec<(f64, f64, f64)> = (0..n)
            .map(|i| {
                let x = i as f64 / (n - 1) as f64;
                (i as f64, 0.8 + 0.4 * (PI * x).sin(), 0.3)
            })
            .collect();
        let track = track_of(&samples);
        assert!(track
            .events()
            .iter()
            .any(|e| e.kind == EventKind::ThetaTurning));
        assert_eq!(track.pole_crossings().count(), 0);
    }

    #[test]
    fn unnormalized_sample_rejected() {
        let bad = PureState::from_amplitudes_unchecked(
            Complex64::new(1.0, 0.0),
            Complex64::new(1e-4, 0.0),
        );
        let res = Trajectory::from_samples(vec![0.0, 1.0], vec![PureState::basis_zero(), bad]);
        assert!(matches!(res, Err(Error::InvalidConfig(_))));
    }
}
