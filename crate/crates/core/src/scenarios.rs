//! Canonical evolutions and the one-parameter Hamiltonian family.
//!
//! Seven named fixtures cover three quarter-turn evolutions between
//! cardinal states (fig4-AB, fig4-BC, fig4-CA) and two pairs of
//! optimal/sub-optimal evolutions between tilted states (fig5-*). Each
//! fixture runs the full pipeline: travel-time solve, propagation, angle
//! unwrapping, efficiency and curvature metrics, volumes, complexity and
//! its length scale.

use crate::complexity::{complexity, complexity_length_scale, volume_report, TrackShape};
use crate::curvature::{curvature_stationary, curvature_timevarying};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{BlochVector, Vec3};
use crate::metrics::efficiency_profile;
use crate::propagate::{
    propagate_numeric, propagate_stationary_grid, time_grid, travel_time, PropagationConfig,
};
use crate::qubit::{PureState, SphericalAngles};
use num_complex::Complex64;

/// Source/target pair with the family parameters `alpha` and `energy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub a_hat: BlochVector,
    pub b_hat: BlochVector,
    /// Rotation-axis mixing angle in `[0, pi]`; `pi/2` is time optimal.
    pub alpha: f64,
    /// Field strength `E > 0` in units of inverse time.
    pub energy: f64,
}

/// Stationary field `E n(alpha) . sigma` with
/// `n(alpha) = cos(alpha) (a+b)/|a+b| + sin(alpha) (a x b)/|a x b|`.
///
/// The axis keeps `a.n == b.n`, so the target stays reachable for every
/// `alpha`.
pub fn family_hamiltonian(spec: &FamilySpec) -> Result<FieldSpec> {
    if !(0.0..=std::f64::consts::PI).contains(&spec.alpha) {
        return Err(Error::InvalidConfig(format!(
            "alpha {} outside [0, pi]",
            spec.alpha
        )));
    }
    if spec.energy <= 0.0 || spec.energy.is_nan() {
        return Err(Error::InvalidConfig(
            "family energy must be positive".into(),
        ));
    }
    let sum = spec.a_hat + spec.b_hat;
    let cross = spec.a_hat.cross(spec.b_hat);
    if cross.norm() <= 1e-12 || sum.norm() <= 1e-12 {
        return Err(Error::DegeneratePair);
    }
    let n = sum.normalized().unwrap() * spec.alpha.cos()
        + cross.normalized().unwrap() * spec.alpha.sin();
    Ok(FieldSpec::traceless(n * spec.energy))
}

/// The named canonical evolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    Fig4AB,
    Fig4BC,
    Fig4CA,
    Fig5ABOpt,
    Fig5ABSub,
    Fig5CDOpt,
    Fig5CDSub,
}

impl Fixture {
    pub const ALL: [Fixture; 7] = [
        Fixture::Fig4AB,
        Fixture::Fig4BC,
        Fixture::Fig4CA,
        Fixture::Fig5ABOpt,
        Fixture::Fig5ABSub,
        Fixture::Fig5CDOpt,
        Fixture::Fig5CDSub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Fig4AB => "fig4-AB",
            Fixture::Fig4BC => "fig4-BC",
            Fixture::Fig4CA => "fig4-CA",
            Fixture::Fig5ABOpt => "fig5-AB-opt",
            Fixture::Fig5ABSub => "fig5-AB-sub",
            Fixture::Fig5CDOpt => "fig5-CD-opt",
            Fixture::Fig5CDSub => "fig5-CD-sub",
        }
    }

    pub fn parse(name: &str) -> Result<Fixture> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownFixture(name.to_string()))
    }

    /// Initial state, hard-coded amplitudes.
    pub fn initial_state(self) -> PureState {
        match self {
            Fixture::Fig4AB => half(1.0, 0.0, 1.0, 0.0),
            Fixture::Fig4BC => half(1.0, 0.0, 0.0, 1.0),
            Fixture::Fig4CA => PureState::basis_zero(),
            Fixture::Fig5ABOpt | Fixture::Fig5ABSub => tilted(OUTER, -INNER),
            Fixture::Fig5CDOpt | Fixture::Fig5CDSub => tilted(INNER, OUTER),
        }
    }

    /// Target state, hard-coded amplitudes.
    pub fn target_state(self) -> PureState {
        match self {
            Fixture::Fig4AB => half(1.0, 0.0, 0.0, 1.0),
            Fixture::Fig4BC => PureState::basis_zero(),
            Fixture::Fig4CA => half(1.0, 0.0, 1.0, 0.0),
            Fixture::Fig5ABOpt | Fixture::Fig5ABSub => tilted(OUTER, INNER),
            Fixture::Fig5CDOpt | Fixture::Fig5CDSub => tilted(INNER, -OUTER),
        }
    }

    /// Driving field at strength `energy`.
    pub fn hamiltonian(self, energy: f64) -> FieldSpec {
        let axis = match self {
            Fixture::Fig4AB => Vec3::Z,
            Fixture::Fig4BC => Vec3::X,
            Fixture::Fig4CA => Vec3::Y,
            Fixture::Fig5ABOpt | Fixture::Fig5CDOpt => -Vec3::X,
            Fixture::Fig5ABSub => Vec3::Z,
            Fixture::Fig5CDSub => -Vec3::Z,
        };
        FieldSpec::traceless(axis * energy)
    }
}

const OUTER: f64 = 0.9238795325112867; // sqrt(2 + sqrt 2) / 2
const INNER: f64 = 0.3826834323650898; // sqrt(2 - sqrt 2) / 2

fn half(a_re: f64, a_im: f64, b_re: f64, b_im: f64) -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new(
        Complex64::new(a_re * s, a_im * s),
        Complex64::new(b_re * s, b_im * s),
    )
    .expect("nonzero")
}

fn tilted(c0: f64, c1_im: f64) -> PureState {
    PureState::new(Complex64::new(c0, 0.0), Complex64::new(0.0, c1_im)).expect("nonzero")
}

/// Full metric bundle for one evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    /// Geodesic distance between the endpoints.
    pub s0: f64,
    /// Traversed path length.
    pub s: f64,
    /// Evolution duration.
    pub travel_time: f64,
    pub eta_ge: f64,
    pub eta_se_min: f64,
    pub eta_se_max: f64,
    pub eta_se_mean: f64,
    /// Curvature coefficient at the initial time (constant for stationary
    /// fields).
    pub kappa2: f64,
    pub v_bar: f64,
    pub v_max: f64,
    pub c: f64,
    pub l_c: f64,
    /// Largest quadrature error estimate across the integrals.
    pub quadrature_error: f64,
    pub shape: TrackShape,
}

/// Runs the full metric pipeline on one evolution of duration `t_end`.
pub fn run_evolution(
    h: &FieldSpec,
    psi0: &PureState,
    t_end: f64,
    cfg: &PropagationConfig,
) -> Result<MetricReport> {
    run_evolution_with_trajectory(h, psi0, t_end, cfg).map(|(report, _)| report)
}

/// Same pipeline, also handing back the sampled trajectory.
pub fn run_evolution_with_trajectory(
    h: &FieldSpec,
    psi0: &PureState,
    t_end: f64,
    cfg: &PropagationConfig,
) -> Result<(MetricReport, crate::trajectory::Trajectory)> {
    cfg.validate()?;
    if t_end <= 0.0 || t_end.is_nan() {
        return Err(Error::ZeroDuration);
    }
    let grid = time_grid(0.0, t_end, cfg.samples);
    let traj = if h.is_stationary() {
        propagate_stationary_grid(h, psi0, &grid)?
    } else {
        propagate_numeric(h, psi0, &grid, cfg)?
    };

    let eff = efficiency_profile(&traj, h)?;
    let kappa2 = if h.is_stationary() {
        curvature_stationary(traj.bloch()[0], h)?
    } else {
        curvature_timevarying(traj.bloch()[0], h, grid[0])?
    };
    let volume = volume_report(traj.angles())?;
    let c = complexity(volume.v_bar, volume.v_max)?;
    let l_c = complexity_length_scale(eff.s, c)?;

    let report = MetricReport {
        s0: eff.s0,
        s: eff.s,
        travel_time: t_end,
        eta_ge: eff.eta_ge,
        eta_se_min: eff.eta_se_min,
        eta_se_max: eff.eta_se_max,
        eta_se_mean: eff.eta_se_mean,
        kappa2,
        v_bar: volume.v_bar,
        v_max: volume.v_max,
        c,
        l_c,
        quadrature_error: eff.s_error_estimate.max(volume.quadrature_error),
        shape: volume.shape,
    };
    Ok((report, traj))
}

/// Runs a named fixture at unit energy: solves the travel time to the
/// fixture target, then assembles the full report.
pub fn run_fixture(fixture: Fixture, cfg: &PropagationConfig) -> Result<MetricReport> {
    run_fixture_with_trajectory(fixture, cfg).map(|(report, _)| report)
}

/// Fixture pipeline that also hands back the sampled trajectory.
pub fn run_fixture_with_trajectory(
    fixture: Fixture,
    cfg: &PropagationConfig,
) -> Result<(MetricReport, crate::trajectory::Trajectory)> {
    let h = fixture.hamiltonian(1.0);
    let psi0 = fixture.initial_state();
    let target = fixture.target_state();
    let t = travel_time(&h, &psi0, &target, cfg)?;
    run_evolution_with_trajectory(&h, &psi0, t, cfg)
}

pub fn run_fixture_by_name(name: &str, cfg: &PropagationConfig) -> Result<MetricReport> {
    run_fixture(Fixture::parse(name)?, cfg)
}

/// One sweep entry: the family angle and its metric report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub alpha: f64,
    pub report: MetricReport,
}

/// Sweeps the family angle over `alphas`, solving the travel time and the
/// full metric suite for each entry. Points evaluate independently;
/// results follow the input order.
pub fn sweep_alpha(
    a_hat: BlochVector,
    b_hat: BlochVector,
    energy: f64,
    alphas: &[f64],
    cfg: &PropagationConfig,
) -> Result<Vec<SweepPoint>> {
    let psi0 = PureState::from_angles(SphericalAngles::from_bloch(a_hat)?);
    let target = PureState::from_angles(SphericalAngles::from_bloch(b_hat)?);
    alphas
        .iter()
        .map(|&alpha| {
            let h = family_hamiltonian(&FamilySpec {
                a_hat,
                b_hat,
                alpha,
                energy,
            })?;
            let t = travel_time(&h, &psi0, &target, cfg)?;
            let report = run_evolution(&h, &psi0, t, cfg)?;
            Ok(SweepPoint { alpha, report })
        })
        .collect()
}

/// Index of the sweep point with the smallest travel time.
pub fn sweep_argmin_travel(points: &[SweepPoint]) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            a.report
                .travel_time
                .partial_cmp(&b.report.travel_time)
                .unwrap()
        })
        .map(|(i, _)| i)
}
