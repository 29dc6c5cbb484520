//! Trajectory generation: exact rotor propagation for stationary fields, a
//! fixed-step fourth-order integrator for time-varying ones, travel-time
//! root finding, and angle unwrapping.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::qubit::PureState;
use crate::trajectory::{AngleTrack, Trajectory};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Coarse samples per precession period when bracketing the travel time.
/// The fidelity along a precession is a sinusoid in t, so this density
/// cannot skip the first maximum.
const TRAVEL_BRACKET_POINTS: usize = 720;

/// Tolerance on the conserved axis projection when checking reachability.
const REACHABILITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    /// Number of grid samples per trajectory.
    pub samples: usize,
    /// Fixed integrator step for time-varying fields, units of 1/field.
    pub integrator_step: f64,
    /// Fidelity tolerance for travel-time targeting.
    pub fidelity_tol: f64,
    /// Renormalize the state every this many integrator steps.
    pub renormalize_every: usize,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        PropagationConfig {
            samples: 4096,
            integrator_step: 1e-3,
            fidelity_tol: 1e-10,
            renormalize_every: 1,
        }
    }
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 3 {
            return Err(Error::InvalidConfig("samples must be at least 3".into()));
        }
        if self.integrator_step <= 0.0 || self.integrator_step.is_nan() {
            return Err(Error::InvalidConfig(
                "integrator_step must be positive".into(),
            ));
        }
        if !(self.fidelity_tol > 0.0 && self.fidelity_tol <= 1e-4) {
            return Err(Error::InvalidConfig(
                "fidelity_tol must lie in (0, 1e-4]".into(),
            ));
        }
        if self.renormalize_every == 0 {
            return Err(Error::InvalidConfig(
                "renormalize_every must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }
}

/// Uniform grid of `samples` points over `[t0, t1]`.
pub fn time_grid(t0: f64, t1: f64, samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![t0];
    }
    (0..samples)
        .map(|i| t0 + (t1 - t0) * i as f64 / (samples - 1) as f64)
        .collect()
}

/// Exact propagation under a stationary field via the closed rotor
/// identity `exp(-i h.sigma t) = cos(|h| t) 1 - i sin(|h| t) (hhat.sigma)`.
/// The `h0` part contributes only a global phase. A zero field evolves the
/// state by that phase alone.
pub fn propagate_stationary(h: &FieldSpec, psi0: &PureState, t: f64) -> Result<PureState> {
    let hvec = h.stationary_field().ok_or(Error::NonStationaryField)?;
    let phase = Complex64::from_polar(1.0, -h.h0() * t);
    let hn = hvec.norm();
    let [c0, c1] = psi0.amplitudes();
    if hn == 0.0 {
        return Ok(PureState::from_amplitudes_unchecked(phase * c0, phase * c1).renormalized());
    }
    let u = hvec / hn;
    let (s, c) = (hn * t).sin_cos();
    let cos = Complex64::new(c, 0.0);
    let mis = Complex64::new(0.0, -s);
    // (cos 1 - i sin u.sigma) acting on (c0, c1)
    let a0 = cos * c0 + mis * (u.z * c0 + Complex64::new(u.x, -u.y) * c1);
    let a1 = cos * c1 + mis * (Complex64::new(u.x, u.y) * c0 - u.z * c1);
    Ok(PureState::from_amplitudes_unchecked(phase * a0, phase * a1).renormalized())
}

/// Rotor-propagated trajectory of a stationary field on a time grid.
pub fn propagate_stationary_grid(
    h: &FieldSpec,
    psi0: &PureState,
    t_grid: &[f64],
) -> Result<Trajectory> {
    if t_grid.is_empty() {
        return Err(Error::InvalidConfig("empty time grid".into()));
    }
    let t0 = t_grid[0];
    let states = t_grid
        .iter()
        .map(|&t| propagate_stationary(h, psi0, t - t0))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_samples(t_grid.to_vec(), states)
}

fn schrodinger_rhs(h: &FieldSpec, t: f64, psi: [Complex64; 2]) -> [Complex64; 2] {
    let hv = h.field_at(t);
    let h0 = h.h0();
    let mi = Complex64::new(0.0, -1.0);
    let hpsi0 = Complex64::new(h0 + hv.z, 0.0) * psi[0] + Complex64::new(hv.x, -hv.y) * psi[1];
    let hpsi1 = Complex64::new(hv.x, hv.y) * psi[0] + Complex64::new(h0 - hv.z, 0.0) * psi[1];
    [mi * hpsi0, mi * hpsi1]
}

fn rk4_step(h: &FieldSpec, t: f64, dt: f64, psi: [Complex64; 2]) -> [Complex64; 2] {
    let k1 = schrodinger_rhs(h, t, psi);
    let k2 = schrodinger_rhs(
        h,
        t + 0.5 * dt,
        [psi[0] + 0.5 * dt * k1[0], psi[1] + 0.5 * dt * k1[1]],
    );
    let k3 = schrodinger_rhs(
        h,
        t + 0.5 * dt,
        [psi[0] + 0.5 * dt * k2[0], psi[1] + 0.5 * dt * k2[1]],
    );
    let k4 = schrodinger_rhs(h, t + dt, [psi[0] + dt * k3[0], psi[1] + dt * k3[1]]);
    [
        psi[0] + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        psi[1] + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

pub(crate) fn integrate_between(
    h: &FieldSpec,
    mut psi: [Complex64; 2],
    t0: f64,
    t1: f64,
    max_step: f64,
    renorm_every: usize,
) -> [Complex64; 2] {
    let span = t1 - t0;
    if span == 0.0 {
        return psi;
    }
    let nsub = (span.abs() / max_step).ceil().max(1.0) as usize;
    let dt = span / nsub as f64;
    for i in 0..nsub {
        psi = rk4_step(h, t0 + i as f64 * dt, dt, psi);
        if (i + 1) % renorm_every == 0 {
            let n = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
            psi = [psi[0] / n, psi[1] / n];
        }
    }
    psi
}

/// Fixed-step fourth-order integration of `i d/dt psi = H(t) psi` across a
/// monotone time grid. Grid intervals wider than the configured step are
/// subdivided evenly; local error is O(step^5).
pub fn propagate_numeric(
    h: &FieldSpec,
    psi0: &PureState,
    t_grid: &[f64],
    cfg: &PropagationConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    if t_grid.is_empty() {
        return Err(Error::InvalidConfig("empty time grid".into()));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig(
            "time grid must be strictly increasing".into(),
        ));
    }
    let hmax = h.max_field_norm(t_grid).max(h.h0().abs());
    if cfg.integrator_step * hmax >= 0.5 {
        return Err(Error::StepTooCoarse {
            step: cfg.integrator_step,
            max_field: hmax,
        });
    }

    let mut states = Vec::with_capacity(t_grid.len());
    let mut psi = psi0.amplitudes();
    states.push(*psi0);
    for w in t_grid.windows(2) {
        psi = integrate_between(
            h,
            psi,
            w[0],
            w[1],
            cfg.integrator_step,
            cfg.renormalize_every,
        );
        let n = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
        psi = [psi[0] / n, psi[1] / n];
        states.push(PureState::from_amplitudes_unchecked(psi[0], psi[1]));
    }
    Trajectory::from_samples(t_grid.to_vec(), states)
}

/// Recomputes the unwrapped angle track of a trajectory.
pub fn unwrap_angles(traj: &Trajectory) -> Result<AngleTrack> {
    crate::trajectory::build_angle_track(traj.times(), traj.states(), traj.bloch())
}

/// Fidelity amplitude and its time derivative under a stationary field.
fn fidelity_and_slope(
    h: &FieldSpec,
    psi0: &PureState,
    target: &PureState,
    t: f64,
) -> Result<(f64, f64)> {
    let psi = propagate_stationary(h, psi0, t)?;
    let overlap = target.inner(&psi);
    // d/dt |<T|psi>|^2 = 2 Re(conj(u) u'), u' = -i <T|H|psi>
    let hv = h.stationary_field().expect("stationary");
    let [p0, p1] = psi.amplitudes();
    let [t0a, t1a] = target.amplitudes();
    let hpsi0 = Complex64::new(h.h0() + hv.z, 0.0) * p0 + Complex64::new(hv.x, -hv.y) * p1;
    let hpsi1 = Complex64::new(hv.x, hv.y) * p0 + Complex64::new(h.h0() - hv.z, 0.0) * p1;
    let u_dot = Complex64::new(0.0, -1.0) * (t0a.conj() * hpsi0 + t1a.conj() * hpsi1);
    Ok((overlap.norm(), 2.0 * (overlap.conj() * u_dot).re))
}

/// Smallest positive time at which a stationary evolution reaches the
/// target state, to relative accuracy better than 1e-9.
///
/// The target must sit on the precession cone of the initial state
/// (`a.hhat == b.hhat`). The first fidelity maximum is bracketed on a
/// coarse grid over one precession period `pi / |h|` and then refined by
/// bisection on the fidelity slope. A target that coincides with the
/// initial state yields the full precession period.
pub fn travel_time(
    h: &FieldSpec,
    psi0: &PureState,
    target: &PureState,
    cfg: &PropagationConfig,
) -> Result<f64> {
    cfg.validate()?;
    let hvec = h.stationary_field().ok_or(Error::NonStationaryField)?;
    let hn = hvec.norm();
    if hn == 0.0 {
        return Err(Error::ZeroField);
    }
    let axis = hvec / hn;
    let gap = (psi0.bloch().dot(axis) - target.bloch().dot(axis)).abs();
    if gap > REACHABILITY_EPS {
        return Err(Error::Unreachable { gap });
    }

    let period = PI / hn;
    if psi0.overlap(target) >= 1.0 - cfg.fidelity_tol {
        return Ok(period);
    }

    let ts: Vec<f64> = (0..=TRAVEL_BRACKET_POINTS)
        .map(|k| period * k as f64 / TRAVEL_BRACKET_POINTS as f64)
        .collect();
    let fs: Vec<f64> = ts
        .iter()
        .map(|&t| fidelity_and_slope(h, psi0, target, t).map(|(f, _)| f))
        .collect::<Result<Vec<_>>>()?;

    let mut best = 0usize;
    for k in 1..fs.len() {
        if fs[k] > fs[best] {
            best = k;
        }
    }
    if fs[best] < 1.0 - cfg.fidelity_tol.sqrt() {
        return Err(Error::NeverReached {
            best_fidelity: fs[best],
        });
    }

    let lo0 = if best == 0 { 0.0 } else { ts[best - 1] };
    let hi0 = if best == fs.len() - 1 {
        period
    } else {
        ts[best + 1]
    };
    let (mut lo, mut hi) = (lo0, hi0);
    let slope_at = |t: f64| fidelity_and_slope(h, psi0, target, t).map(|(_, g)| g);
    let mut g_lo = slope_at(lo)?;
    for _ in 0..200 {
        if (hi - lo) <= 1e-13 * period {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let g_mid = slope_at(mid)?;
        if g_lo > 0.0 && g_mid <= 0.0 || g_lo <= 0.0 && g_mid > 0.0 {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest per-sample norm deviation from one, a propagation diagnostic.
pub fn max_norm_drift(traj: &Trajectory) -> f64 {
    traj.states()
        .iter()
        .map(|s| (s.norm() - 1.0).abs())
        .fold(0.0, f64::max)
}
