//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured figures. Run with
//! `cargo test -p fragcorr --test acceptance -- --nocapture`.

use std::f64::consts::PI;

use fragcorr::analytic::{self, Dims};
use fragcorr::entangle;
use fragcorr::model::{MomentState, SystemParams};
use fragcorr::moments;
use fragcorr::oracle::{
    energy, extract_alpha, grid_purity_for_alpha, split_step_sampled, GridSpec, GridWavefunction,
};
use fragcorr::tolerances as tol;
use rand::{Rng, SeedableRng};

fn stiff() -> SystemParams {
    SystemParams::new(1.0, 1.0, 1.0, 1.0).unwrap() // omega = 2
}

fn grid(params: &SystemParams, n: usize, horizon: f64) -> GridSpec {
    GridSpec { n, ..GridSpec::auto(params, horizon) }
}

/// Criterion 1: analytic width law versus the propagator across one period,
/// with the stated bounds and period.
#[test]
fn criterion_1_width_law() {
    let params = stiff();
    let period = PI / params.omega();
    assert!((period - PI / 2.0).abs() < 1e-15);

    let (minus, plus) = analytic::alpha_bounds(&params);
    assert!((minus - 1.0).abs() < 1e-12 && (plus - 4.0).abs() < 1e-12);
    for k in 0..200 {
        let t = 0.031 * k as f64;
        let (a0, a1) = (analytic::alpha(&params, t), analytic::alpha(&params, t + period));
        assert!((a0 - a1).abs() / a0 < 1e-12, "period violated at t = {t}");
    }

    let spec = grid(&params, 1024, period);
    let psi0 = GridWavefunction::min_uncertainty(&spec, &params).unwrap();
    let times: Vec<f64> = (1..=50).map(|k| period * k as f64 / 50.0).collect();
    let mut worst = 0.0f64;
    for psi in split_step_sampled(&psi0, &params, &times).unwrap() {
        let est = extract_alpha(&psi).unwrap();
        let reference = analytic::alpha(&params, psi.t);
        worst = worst.max((est.value() - reference).abs() / reference);
    }
    assert!(
        worst < tol::WIDTH_ORACLE_REL_TOL,
        "width law max rel err {worst:.3e}"
    );
    println!(
        "ACCEPTANCE 1 width-law: PASS (50 samples, max rel err {worst:.3e} < {:.0e}, bounds {{1,4}}, period pi/2)",
        tol::WIDTH_ORACLE_REL_TOL
    );
}

/// Criterion 2: critical coupling freezes the width, analytically to 1e-12
/// and on the grid to 1e-8.
#[test]
fn criterion_2_critical_constancy() {
    let base = stiff();
    let params =
        SystemParams::from_omega(1.0, 1.0, base.critical_omega(), 1.0).unwrap();
    let alpha0 = 1.0;

    let mut analytic_dev = 0.0f64;
    for k in 0..=5000 {
        let t = 20.0 * k as f64 / 5000.0;
        analytic_dev = analytic_dev.max((analytic::alpha(&params, t) - alpha0).abs() / alpha0);
    }
    assert!(analytic_dev < tol::CRITICAL_ANALYTIC_REL_TOL, "analytic dev {analytic_dev:.3e}");

    let spec = grid(&params, 1024, PI);
    let psi0 = GridWavefunction::min_uncertainty(&spec, &params).unwrap();
    let times: Vec<f64> = (1..=8).map(|k| PI * k as f64 / 8.0).collect();
    let mut grid_dev = 0.0f64;
    for psi in split_step_sampled(&psi0, &params, &times).unwrap() {
        let est = extract_alpha(&psi).unwrap();
        grid_dev = grid_dev.max((est.value() - alpha0).abs() / alpha0);
    }
    assert!(grid_dev < tol::CRITICAL_ORACLE_REL_TOL, "grid dev {grid_dev:.3e}");
    println!(
        "ACCEPTANCE 2 critical-constancy: PASS (analytic {analytic_dev:.3e} < 1e-12, grid {grid_dev:.3e} < 1e-8)"
    );
}

/// Criterion 3: the coupled width law collapses to the free one as (omega t)^2.
#[test]
fn criterion_3_free_limit() {
    let free = SystemParams::free(1.0, 1.0, 1.0).unwrap();
    let t = 1.0;
    let gap = |x: f64| {
        let p = SystemParams::from_omega(1.0, 1.0, x / t, 1.0).unwrap();
        let reference = analytic::alpha_free(&free, t);
        (analytic::alpha(&p, t) - reference).abs() / reference
    };
    let g = gap(0.01);
    assert!(g < tol::FREE_LIMIT_REL_TOL, "gap at omega t = 0.01: {g:.3e}");
    // (omega t)^2 scaling across two decades, within a factor 2
    let (g_lo, g_hi) = (gap(0.001), gap(0.1));
    for ratio in [(g_lo / 1e-6) / (g / 1e-4), (g_hi / 1e-2) / (g / 1e-4)] {
        assert!(
            ratio < tol::FREE_LIMIT_SCALE_FACTOR && ratio > 1.0 / tol::FREE_LIMIT_SCALE_FACTOR,
            "quadratic scaling violated: ratio {ratio:.3}"
        );
    }
    println!(
        "ACCEPTANCE 3 free-limit: PASS (gap {g:.3e} < 1e-3 at omega*t = 0.01, quadratic scaling within 2x over two decades)"
    );
}

/// Criterion 4: 4 alpha(t) dX^2(t) = 1 at 100 random (kappa, a, t) triples;
/// certifies the corrected variance denominators.
#[test]
fn criterion_4_alpha_identity() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacce97a);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let kappa = if rng.gen_bool(0.15) { 0.0 } else { rng.gen_range(1e-3..10.0) };
        let a = rng.gen_range(0.1..10.0);
        let t = rng.gen_range(0.0..100.0);
        let params = SystemParams::new(1.0, 1.0, kappa, a).unwrap();
        let state = MomentState::minimum_uncertainty(&params, 0.0);
        let product = 4.0
            * analytic::alpha(&params, t)
            * moments::variance_x(&state, &params, t).unwrap();
        worst = worst.max((product - 1.0).abs());
        assert!(
            (product - 1.0).abs() < tol::ALPHA_IDENTITY_REL_TOL,
            "identity violated at kappa={kappa} a={a} t={t}: {product}"
        );
    }
    println!(
        "ACCEPTANCE 4 alpha-identity: PASS (100 random triples, max |4 a dX^2 - 1| = {worst:.3e} < 1e-10)"
    );
}

/// Criterion 5: interacting alignment decays like 1/t; the free asymptote is
/// dP/(2 p0) = lambda/(8 pi dX), and the 16 pi variant is rejected by the
/// late-time evaluation.
#[test]
fn criterion_5_alignment() {
    let params = stiff();
    let state = MomentState::minimum_uncertainty(&params, 1.0);
    // tan(theta) * t stays bounded by sqrt(max var) m / p0
    let bound = 0.25f64.sqrt() * params.m() / state.p0;
    for k in 1..2000 {
        let t = 0.05 * k as f64;
        let tt = moments::tan_theta(&state, &params, t).unwrap();
        assert!(tt * t <= bound * (1.0 + 1e-9), "tan(theta)*t = {} at t = {t}", tt * t);
    }
    let late = moments::tan_theta(&state, &params, 1e4).unwrap();
    assert!(late < tol::ALIGNMENT_LATE_TIME_MAX, "tan theta(1e4) = {late:.3e}");

    let free = SystemParams::free(1.0, 1.0, 1.0).unwrap();
    let free_state = MomentState::minimum_uncertainty(&free, 1.0);
    let asy = moments::tan_theta_asymptote(&free_state, &free).unwrap();
    let expected = free_state.delta_p / (2.0 * free_state.p0);
    assert!((asy.derived - expected).abs() / expected < tol::ASYMPTOTE_REL_TOL);
    let lam = free_state.lambda.unwrap();
    let lambda_form = lam / (8.0 * PI * free_state.delta_x);
    assert!((asy.derived - lambda_form).abs() / lambda_form < tol::ASYMPTOTE_REL_TOL);

    // oracle: the t -> infinity evaluation lands on the derived constant and
    // stays far from the 16 pi (paper-printed) variant
    let observed = moments::tan_theta(&free_state, &free, 1e6).unwrap();
    assert!((observed - asy.derived).abs() < tol::ASYMPTOTE_LATE_EVAL_ABS);
    let printed_gap = (observed - asy.paper_printed).abs();
    assert!(
        printed_gap > 1e3 * (observed - asy.derived).abs(),
        "16 pi variant not rejected: gap {printed_gap:.3e}"
    );
    println!(
        "ACCEPTANCE 5 alignment: PASS (tan theta(1e4) = {late:.3e} < 1e-3, free asymptote = dP/2p0 = lambda/(8 pi dX) to 1e-9, 16 pi variant off by {printed_gap:.3e})"
    );
}

/// Criterion 6: free S_V decays as t^-3 (3-D) over the late window;
/// interacting S_V / alpha^{3/2} is constant.
#[test]
fn criterion_6_entanglement_scaling() {
    let free = SystemParams::free(1.0, 1.0, 1.0).unwrap();
    let t_star = entangle::free_spreading_time(&free);
    let window = (10.0 * t_star, 1000.0 * t_star);
    let s3 = entangle::free_decay_exponent(&free, window, Dims::Three).unwrap();
    assert!((s3 + 3.0).abs() < tol::DECAY_SLOPE_ABS_TOL, "3-D slope {s3}");
    let s1 = entangle::free_decay_exponent(&free, window, Dims::One).unwrap();
    assert!((s1 + 1.0).abs() < tol::DECAY_SLOPE_ABS_TOL, "1-D slope {s1}");

    let params = stiff();
    let reference = entangle::schmidt_per_volume(&params, 0.0, 1.0, Dims::Three)
        / analytic::alpha(&params, 0.0).powf(1.5);
    let mut worst = 0.0f64;
    for k in 1..500 {
        let t = 0.02 * k as f64;
        let ratio = entangle::schmidt_per_volume(&params, t, 1.0, Dims::Three)
            / analytic::alpha(&params, t).powf(1.5);
        worst = worst.max((ratio - reference).abs() / reference);
    }
    assert!(worst < tol::SCHMIDT_SCALING_REL_TOL, "S_V/alpha^1.5 wander {worst:.3e}");
    println!(
        "ACCEPTANCE 6 entanglement-scaling: PASS (slopes {s3:.4}/{s1:.4} within ±0.01 of -3/-1, S_V/alpha^1.5 constant to {worst:.3e})"
    );
}

/// Criterion 7: dense grid purity reproduces schmidt/box_l = sqrt(alpha/pi)
/// within 2% at the reference geometry, converges under n and box doublings,
/// and the two reduced traces agree.
#[test]
fn criterion_7_purity_oracle() {
    let alpha = PI;
    let expected = 1.0; // sqrt(alpha/pi)

    let base = grid_purity_for_alpha(alpha, 40.0, 1024).unwrap();
    let err_base = (base.schmidt_1d / base.box_l - expected).abs() / expected;
    assert!(err_base < tol::PURITY_REL_TOL, "schmidt/box_l err {err_base:.3e}");
    assert!((base.trace - 1.0).abs() < 1e-9, "Tr rho = {}", base.trace);
    assert!(base.purity_x > 0.0 && base.purity_x <= 1.0);

    let sym = (base.purity_x - base.purity_y).abs() / base.purity_x;
    assert!(sym < tol::TRACE_SYMMETRY_REL_TOL, "trace asymmetry {sym:.3e}");

    // n doubling: the internal half-resolution value is the n = 1024 result
    let fine = grid_purity_for_alpha(alpha, 40.0, 2048).unwrap();
    let n_shift =
        (fine.schmidt_1d - fine.schmidt_1d_half_resolution).abs() / fine.schmidt_1d;
    assert!(n_shift < tol::PURITY_CONVERGENCE_REL_TOL, "n-doubling shift {n_shift:.3e}");

    // box doubling halves the edge corrections
    let wide = grid_purity_for_alpha(alpha, 80.0, 1024).unwrap();
    let err_wide = (wide.schmidt_1d / wide.box_l - expected).abs() / expected;
    assert!(
        err_wide < err_base,
        "box doubling did not converge: {err_wide:.3e} vs {err_base:.3e}"
    );
    println!(
        "ACCEPTANCE 7 purity-oracle: PASS (schmidt/box_l err {err_base:.3e} < 2e-2, n-shift {n_shift:.3e}, box-doubled err {err_wide:.3e}, trace symmetry {sym:.3e})"
    );
}

/// Criterion 8: norm and energy conservation over ten periods, plus
/// full-wavefunction fidelity including the phase field and its removable
/// zero at t = pi/omega.
#[test]
fn criterion_8_propagator_hygiene() {
    let params = stiff();
    let period = PI / params.omega();

    let spec = grid(&params, 512, period);
    let psi0 = GridWavefunction::min_uncertainty(&spec, &params).unwrap();
    let e0 = energy(&psi0, &params);
    let times: Vec<f64> = (1..=10).map(|k| period * k as f64).collect();
    let (mut norm_drift, mut energy_drift) = (0.0f64, 0.0f64);
    for psi in split_step_sampled(&psi0, &params, &times).unwrap() {
        norm_drift = norm_drift.max((psi.norm() - 1.0).abs());
        energy_drift = energy_drift.max((energy(&psi, &params) - e0).abs() / e0);
    }
    assert!(norm_drift < tol::NORM_DRIFT_TOL, "norm drift {norm_drift:.3e}");
    assert!(energy_drift < tol::ENERGY_DRIFT_REL_TOL, "energy drift {energy_drift:.3e}");

    // fidelity against the closed form, global phase removed; the last
    // sample sits exactly on the removable zero of c_f
    let spec = grid(&params, 1024, period);
    let psi0 = GridWavefunction::min_uncertainty(&spec, &params).unwrap();
    let fid_times: Vec<f64> = (1..=6).map(|k| period * k as f64 / 6.0).collect();
    let mut worst = 0.0f64;
    for psi in split_step_sampled(&psi0, &params, &fid_times).unwrap() {
        let dx = psi.dx();
        let mut overlap = num_complex::Complex64::default();
        let mut ana_norm = 0.0;
        for (j, a) in psi.amplitudes.iter().enumerate() {
            let x = psi.spec.position(j);
            let ana = analytic::wavefunction_1d(&params, psi.t, x);
            overlap += a.conj() * ana * dx;
            ana_norm += ana.norm_sqr() * dx;
        }
        worst = worst.max(1.0 - overlap.norm() / ana_norm.sqrt());
    }
    assert!(worst < 1.0 - tol::FIDELITY_MIN, "1 - fidelity = {worst:.3e}");

    // f(n pi / omega) = 0: finite and vanishing at the removable singularity
    for n in 1..=3 {
        for eps in [-1e-8, 1e-8] {
            let cf = analytic::phase_coeff(&params, n as f64 * period + eps);
            assert!(
                cf.abs() < tol::PHASE_REMOVABILITY_ABS,
                "c_f({n} pi/omega + {eps}) = {cf:.3e}"
            );
        }
    }
    println!(
        "ACCEPTANCE 8 propagator-hygiene: PASS (norm drift {norm_drift:.3e} < 1e-10, energy drift {energy_drift:.3e} < 1e-8, 1-fidelity {worst:.3e} < 1e-8, c_f removable zeros < 1e-6)"
    );
}
