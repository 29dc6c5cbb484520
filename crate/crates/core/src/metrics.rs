//! Length and efficiency functionals of a trajectory.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{BlochVector, Mat2, Vec3};
use crate::quad::{integrate_with_error, Quadrature};
use crate::qubit::{fs_geodesic_distance, PureState};
use crate::trajectory::Trajectory;
use num_complex::Complex64;

/// Energy uncertainty `sqrt(|h|^2 - (a.h)^2)` of the state with Bloch
/// vector `a` under the field at time `t`; independent of `h0`.
pub fn energy_uncertainty(h: &FieldSpec, a: BlochVector, t: f64) -> f64 {
    let hv = h.field_at(t);
    (hv.norm_squared() - a.dot(hv).powi(2)).max(0.0).sqrt()
}

/// Spectral norm `max |eig(H)| = |h0| + |h(t)|`.
pub fn spectral_norm(h: &FieldSpec, t: f64) -> f64 {
    h.h0().abs() + h.field_at(t).norm()
}

/// Instantaneous speed efficiency `DeltaE / (|h0| + |h|)` in `[0, 1]`:
/// the fraction of the available spectral norm converted into motion.
pub fn speed_efficiency(h: &FieldSpec, a: BlochVector, t: f64) -> Result<f64> {
    let denom = spectral_norm(h, t);
    if denom == 0.0 {
        return Err(Error::ZeroHamiltonian);
    }
    Ok((energy_uncertainty(h, a, t) / denom).clamp(0.0, 1.0))
}

/// Traversed path length with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLength {
    /// `s = integral of 2 DeltaE(t) dt`, in radians.
    pub s: f64,
    pub error_estimate: f64,
}

/// Path length `s = integral 2 DeltaE(t) dt` along the trajectory, by
/// composite Simpson quadrature on the sample grid.
pub fn path_length(traj: &Trajectory, h: &FieldSpec) -> Result<PathLength> {
    let values: Vec<f64> = traj
        .times()
        .iter()
        .zip(traj.bloch())
        .map(|(&t, &a)| 2.0 * energy_uncertainty(h, a, t))
        .collect();
    let Quadrature {
        value,
        error_estimate,
    } = integrate_with_error(traj.times(), &values);
    if value.abs() > 1e-12 && error_estimate > 1e-6 * value.abs() {
        return Err(Error::GridTooCoarse(format!(
            "path-length quadrature error {error_estimate:.3e} exceeds 1e-6 relative"
        )));
    }
    Ok(PathLength {
        s: value,
        error_estimate,
    })
}

/// Geodesic efficiency `s0 / s`: shortest geodesic distance between the
/// endpoints over the traversed length. One for great-circle evolutions;
/// defined as one when both lengths vanish.
pub fn geodesic_efficiency(
    a: &PureState,
    b: &PureState,
    traj: &Trajectory,
    h: &FieldSpec,
) -> Result<f64> {
    let s0 = fs_geodesic_distance(a, b);
    let s = path_length(traj, h)?.s;
    if s < 1e-12 {
        if s0 < 1e-12 {
            return Ok(1.0);
        }
        return Err(Error::DegenerateEvolution);
    }
    Ok(s0 / s)
}

/// Pointwise speed-efficiency samples with summary statistics, plus the
/// geodesic lengths of the evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyProfile {
    pub s0: f64,
    pub s: f64,
    pub s_error_estimate: f64,
    pub eta_ge: f64,
    pub eta_se_samples: Vec<f64>,
    pub eta_se_min: f64,
    pub eta_se_max: f64,
    pub eta_se_mean: f64,
}

/// Assembles the efficiency profile of a trajectory under its field.
pub fn efficiency_profile(traj: &Trajectory, h: &FieldSpec) -> Result<EfficiencyProfile> {
    let s0 = fs_geodesic_distance(traj.initial_state(), traj.final_state());
    let PathLength { s, error_estimate } = path_length(traj, h)?;
    let eta_ge = if s < 1e-12 {
        if s0 < 1e-12 {
            1.0
        } else {
            return Err(Error::DegenerateEvolution);
        }
    } else {
        s0 / s
    };
    let eta_se_samples: Vec<f64> = traj
        .times()
        .iter()
        .zip(traj.bloch())
        .map(|(&t, &a)| speed_efficiency(h, a, t))
        .collect::<Result<Vec<_>>>()?;
    let eta_se_min = eta_se_samples.iter().copied().fold(f64::INFINITY, f64::min);
    let eta_se_max = eta_se_samples
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let eta_se_mean = eta_se_samples.iter().sum::<f64>() / eta_se_samples.len() as f64;
    Ok(EfficiencyProfile {
        s0,
        s,
        s_error_estimate: error_estimate,
        eta_ge,
        eta_se_samples,
        eta_se_min,
        eta_se_max,
        eta_se_mean,
    })
}

/// Three-point derivative on a possibly nonuniform grid.
fn derivative_samples(times: &[f64], values: &[[Complex64; 2]]) -> Vec<[Complex64; 2]> {
    let n = times.len();
    let mut out = vec![[Complex64::ZERO; 2]; n];
    let combine = |c0: f64,
                   v0: &[Complex64; 2],
                   c1: f64,
                   v1: &[Complex64; 2],
                   c2: f64,
                   v2: &[Complex64; 2]| {
        [
            c0 * v0[0] + c1 * v1[0] + c2 * v2[0],
            c0 * v0[1] + c1 * v1[1] + c2 * v2[1],
        ]
    };
    for k in 0..n {
        let (i, j, l) = if k == 0 {
            (0, 1, 2)
        } else if k == n - 1 {
            (n - 3, n - 2, n - 1)
        } else {
            (k - 1, k, k + 1)
        };
        let (x0, x1, x2) = (times[i], times[j], times[l]);
        let x = times[k];
        // derivative of the quadratic through the three samples
        let c0 = (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
        let c1 = (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
        let c2 = (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
        out[k] = combine(c0, &values[i], c1, &values[j], c2, &values[l]);
    }
    out
}

fn inner(a: &[Complex64; 2], b: &[Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Reconstructs the traceless field that regenerates a given projective
/// path at unit speed efficiency.
///
/// The path is first parallel-transported by accumulating the phase
/// `exp(-integral <psi|dpsi/dt> dt)`; the generator is then
/// `H = i |dm><m| - i |m><dm|`, whose Pauli decomposition yields a sampled
/// field with `h0 = 0`. Fails with `GridTooCoarse` when the transported
/// samples violate `<m|dm/dt> = 0` beyond 1e-6.
pub fn unit_efficiency_hamiltonian(path: &Trajectory) -> Result<FieldSpec> {
    let n = path.len();
    if n < 3 {
        return Err(Error::GridTooCoarse(
            "unit-efficiency reconstruction needs at least three samples".into(),
        ));
    }
    let times = path.times();
    let psi: Vec<[Complex64; 2]> = path.states().iter().map(|s| s.amplitudes()).collect();
    let psi_dot = derivative_samples(times, &psi);

    // parallel-transport phase: m(t) = exp(-int <psi|psi_dot>) psi(t)
    let gamma: Vec<Complex64> = psi.iter().zip(&psi_dot).map(|(p, d)| inner(p, d)).collect();
    let mut phase_integral = Complex64::ZERO;
    let mut m = Vec::with_capacity(n);
    m.push(psi[0]);
    for k in 1..n {
        let dt = times[k] - times[k - 1];
        phase_integral += 0.5 * dt * (gamma[k - 1] + gamma[k]);
        let f = (-phase_integral).exp();
        m.push([f * psi[k][0], f * psi[k][1]]);
    }

    let m_dot = derivative_samples(times, &m);
    let mut residual: f64 = 0.0;
    for k in 1..n - 1 {
        residual = residual.max(inner(&m[k], &m_dot[k]).norm());
    }
    if residual > 1e-6 {
        return Err(Error::GridTooCoarse(format!(
            "parallel-transport residual {residual:.3e} exceeds 1e-6"
        )));
    }

    let mut field = Vec::with_capacity(n);
    for k in 0..n {
        // H = i |m_dot><m| - i |m><m_dot|
        let mut hmat = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                let a = m_dot[k][r] * m[k][c].conj();
                let b = m[k][r] * m_dot[k][c].conj();
                hmat.m[r][c] = Complex64::new(0.0, 1.0) * (a - b);
            }
        }
        let (_, hv) = hmat.pauli_components();
        field.push(hv);
    }
    FieldSpec::from_samples(0.0, times.to_vec(), field)
}

/// Transverse field component `h - (h.a) a` seen by the state.
pub fn transverse_field(h: &FieldSpec, a: BlochVector, t: f64) -> Vec3 {
    let hv = h.field_at(t);
    hv - a * hv.dot(a)
}
