//! Cross-module consistency checks on the canonical fixtures and the
//! Hamiltonian family.

use bloch_metrics::{
    propagate_stationary, run_fixture, sweep_alpha, travel_time, Fixture, PropagationConfig, Vec3,
};
use std::f64::consts::PI;

#[test]
fn optimal_fixtures_share_complexity_at_equal_geodesic_distance() {
    // evolutions between endpoint pairs at the same geodesic separation
    // under their optimal fields agree on every reported metric
    let cfg = PropagationConfig::default().with_samples(1025);
    let reports: Vec<_> = [
        Fixture::Fig4AB,
        Fixture::Fig4BC,
        Fixture::Fig4CA,
        Fixture::Fig5ABOpt,
        Fixture::Fig5CDOpt,
    ]
    .into_iter()
    .map(|f| (f, run_fixture(f, &cfg).unwrap()))
    .collect();
    let s0_ref = reports[0].1.s0;
    let c_ref = reports[0].1.c;
    let lc_ref = reports[0].1.l_c;
    for (f, r) in &reports {
        assert!((r.s0 - s0_ref).abs() < 1e-9, "{}: s0 {}", f.name(), r.s0);
        assert!((r.c - c_ref).abs() < 1e-6, "{}: c {}", f.name(), r.c);
        assert!((r.l_c - lc_ref).abs() < 1e-6, "{}: l_c {}", f.name(), r.l_c);
    }
}

#[test]
fn suboptimal_fixtures_share_complexity_at_equal_lengths() {
    // same s0 and same traversed s between the two sub-optimal runs
    let cfg = PropagationConfig::default().with_samples(1025);
    let ab = run_fixture(Fixture::Fig5ABSub, &cfg).unwrap();
    let cd = run_fixture(Fixture::Fig5CDSub, &cfg).unwrap();
    assert!((ab.s0 - cd.s0).abs() < 1e-9);
    assert!((ab.s - cd.s).abs() < 1e-9);
    assert!((ab.c - cd.c).abs() < 1e-6, "c {} vs {}", ab.c, cd.c);
    assert!((ab.l_c - cd.l_c).abs() < 1e-6);
    assert!((ab.kappa2 - cd.kappa2).abs() < 1e-9);
}

#[test]
fn family_reaches_target_for_every_alpha() {
    let cfg = PropagationConfig::default();
    let a = Vec3::new(0.6, 0.0, 0.8);
    let b = Vec3::new(0.0, -0.6, 0.8);
    let psi0 = bloch_metrics::PureState::from_angles(
        bloch_metrics::SphericalAngles::from_bloch(a).unwrap(),
    );
    let target = bloch_metrics::PureState::from_angles(
        bloch_metrics::SphericalAngles::from_bloch(b).unwrap(),
    );
    for k in 0..=24 {
        let alpha = PI * k as f64 / 24.0;
        let h = bloch_metrics::family_hamiltonian(&bloch_metrics::FamilySpec {
            a_hat: a,
            b_hat: b,
            alpha,
            energy: 1.3,
        })
        .unwrap();
        let t = travel_time(&h, &psi0, &target, &cfg).unwrap();
        let reached = propagate_stationary(&h, &psi0, t).unwrap();
        let fidelity = reached.overlap(&target);
        assert!(fidelity >= 1.0 - 1e-9, "alpha {alpha}: fidelity {fidelity}");
        // one precession period bounds the answer
        assert!(t <= PI / 1.3 + 1e-12);
    }
}

#[test]
fn north_pole_crossing_mirrors_south_pole_treatment() {
    // the tilted-pair optimal evolution dips below theta = 0; the unwrap
    // lets theta run negative while holding the azimuth
    let cfg = PropagationConfig::default();
    let fixture = Fixture::Fig5ABOpt;
    let h = fixture.hamiltonian(1.0);
    let psi0 = fixture.initial_state();
    let t_end = travel_time(&h, &psi0, &fixture.target_state(), &cfg).unwrap();
    let traj = bloch_metrics::propagate_stationary_grid(
        &h,
        &psi0,
        &bloch_metrics::time_grid(0.0, t_end, cfg.samples),
    )
    .unwrap();
    let track = traj.angles();
    let (lo, hi) = track.theta_range();
    assert!((lo + PI / 4.0).abs() < 1e-6, "theta_min {lo}");
    assert!((hi - PI / 4.0).abs() < 1e-6, "theta_max {hi}");
    let crossings: Vec<f64> = track.pole_crossings().map(|e| e.time).collect();
    assert_eq!(crossings.len(), 1);
    assert!((crossings[0] - PI / 8.0).abs() < 1e-6);
    // azimuth stays flat at 3pi/2 in the unwrapped chart
    let (plo, phi) = track.phi_range();
    assert!((plo - 3.0 * PI / 2.0).abs() < 1e-9);
    assert!((phi - 3.0 * PI / 2.0).abs() < 1e-9);
}

#[test]
fn unwrapped_track_wraps_back_to_canonical_angles_across_pole() {
    let cfg = PropagationConfig::default().with_samples(2048);
    let fixture = Fixture::Fig5CDOpt;
    let h = fixture.hamiltonian(1.0);
    let psi0 = fixture.initial_state();
    let t_end = travel_time(&h, &psi0, &fixture.target_state(), &cfg).unwrap();
    let traj = bloch_metrics::propagate_stationary_grid(
        &h,
        &psi0,
        &bloch_metrics::time_grid(0.0, t_end, cfg.samples),
    )
    .unwrap();
    let track = traj.angles();
    for (i, state) in traj.states().iter().enumerate() {
        let canon = state.angles();
        let back = track.canonical_at(i);
        assert!((back.theta - canon.theta).abs() < 1e-9, "sample {i}");
        // azimuth is gauge at the poles themselves
        if canon.theta.sin().abs() > 1e-9 {
            let dphi = (back.phi - canon.phi).abs();
            let dphi = dphi.min((dphi - 2.0 * PI).abs());
            assert!(dphi < 1e-9, "sample {i}: phi {} vs {}", back.phi, canon.phi);
        }
    }
}

#[test]
fn sweep_reports_travel_time_bounded_below_by_optimum() {
    let cfg = PropagationConfig::default().with_samples(257);
    let alphas: Vec<f64> = (0..=16).map(|k| PI * k as f64 / 16.0).collect();
    let points = sweep_alpha(Vec3::X, Vec3::Z, 1.0, &alphas, &cfg).unwrap();
    let t_opt = points
        .iter()
        .map(|p| p.report.travel_time)
        .fold(f64::INFINITY, f64::min);
    for p in &points {
        assert!(p.report.travel_time >= t_opt - 1e-12);
        // reported scale relation holds on every row
        let expect = p.report.s / (1.0 - p.report.c).sqrt();
        assert!((p.report.l_c - expect).abs() < 1e-9);
    }
}
