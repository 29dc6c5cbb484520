//! Geometric quality metrics for two-level Hamiltonian evolutions on the
//! Bloch sphere.
//!
//! The library simulates evolutions `i d/dt |psi> = H(t) |psi>` with
//! `H(t) = h0 1 + h(t) . sigma` (hbar = 1, energies in inverse time) and
//! computes, per evolution: the Fubini-Study geodesic distance `s0`
//! between the endpoints, the traversed path length `s`, the geodesic
//! efficiency `s0/s`, the pointwise speed efficiency, the curvature
//! coefficient of the trajectory, the accessed and accessible parametric
//! volumes on the sphere, the complexity `C = (V_max - V_bar)/V_max`, and
//! the complexity length scale `L_C = s / sqrt(1 - C)`.
//!
//! Stationary fields propagate through the closed rotor identity;
//! time-varying fields use a fixed-step fourth-order integrator. All types
//! are immutable values and all operations are pure functions, safe to
//! call concurrently.
//!
//! ```
//! use bloch_metrics::{run_evolution, FieldSpec, PropagationConfig, PureState, Vec3};
//!
//! let h = FieldSpec::traceless(Vec3::Z); // E sigma_z with E = 1
//! let psi0 = PureState::from_reals(1.0, 0.0, 1.0, 0.0)?; // (|0> + |1>)/sqrt(2)
//! let report = run_evolution(&h, &psi0, std::f64::consts::FRAC_PI_4,
//!                            &PropagationConfig::default())?;
//! assert!((report.eta_ge - 1.0).abs() < 1e-9);
//! assert!((report.c - 0.5).abs() < 1e-4);
//! # Ok::<(), bloch_metrics::Error>(())
//! ```

pub mod complexity;
pub mod curvature;
pub mod error;
pub mod field;
pub mod linalg;
pub mod metrics;
pub mod propagate;
pub mod quad;
pub mod qubit;
pub mod scenarios;
pub mod trajectory;

pub use complexity::{
    accessed_volume, accessible_volume, classify_shape, complexity, complexity_length_scale,
    complexity_report, instantaneous_volume, volume_profile, volume_report, ComplexityReport,
    TrackShape, VolumeReport, SHAPE_EPS, V_TOT,
};
pub use curvature::{
    curvature_along, curvature_oracle, curvature_stationary, curvature_timevarying, CurvatureSample,
};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use linalg::{BlochVector, Mat2, Vec3};
pub use metrics::{
    efficiency_profile, energy_uncertainty, geodesic_efficiency, path_length, spectral_norm,
    speed_efficiency, transverse_field, unit_efficiency_hamiltonian, EfficiencyProfile, PathLength,
};
pub use propagate::{
    max_norm_drift, propagate_numeric, propagate_stationary, propagate_stationary_grid, time_grid,
    travel_time, unwrap_angles, PropagationConfig,
};
pub use qubit::{fs_geodesic_distance, PureState, SphericalAngles};
pub use scenarios::{
    family_hamiltonian, run_evolution, run_evolution_with_trajectory, run_fixture,
    run_fixture_by_name, run_fixture_with_trajectory, sweep_alpha, sweep_argmin_travel, FamilySpec,
    Fixture, MetricReport, SweepPoint,
};
pub use trajectory::{AngleTrack, EventKind, TrackEvent, Trajectory};
