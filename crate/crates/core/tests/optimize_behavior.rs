//! Cross-method tests for the optimal-τ solvers: closed forms against
//! brute-force and golden-section search, and stationarity of the
//! asymptotic objectives at the closed-form optima.

mod support;

use wpcn_core::analytic::{
    throughput_delay_limited, throughput_delay_tolerant_asymptotic, ApproxConstants,
};
use wpcn_core::model::{SystemParams, TransmissionMode};
use wpcn_core::optimize::{
    optimal_tau_limited_highsnr, optimal_tau_search, optimal_tau_tolerant_highsnr,
    search_unimodal_tau,
};
use wpcn_core::specfun::EULER_GAMMA;

fn params(n: u32, p_dbm: f64) -> SystemParams {
    SystemParams {
        n_antennas: n,
        tx_power_dbm: p_dbm,
        efficiency: 0.5,
        noise_power_dbm: -80.0,
        rate: 2.0,
        tau: 0.5,
        omega: 1e-5,
    }
}

#[test]
fn tolerant_closed_form_matches_frozen_bisection_value() {
    // N=1 with γ̄Ω² = 5: τ* = 1/(1 + W₀(5·e^{2ψ(1)−1})), computed by the
    // bisection oracle as 0.71846346658999849.
    let sol = optimal_tau_tolerant_highsnr(&params(1, 30.0)).unwrap();
    assert!(
        (sol.tau - 7.184_634_665_899_984_9e-1).abs() < 1e-12,
        "tau {}",
        sol.tau
    );
}

#[test]
fn tolerant_closed_form_is_stationary_point_of_asymptote() {
    // Central difference of the asymptotic objective at τ*; the derivative
    // must vanish to 1e-6 for every antenna count in the acceptance set.
    for n in [1u32, 2, 5, 10] {
        let p = params(n, 30.0);
        let sol = optimal_tau_tolerant_highsnr(&p).unwrap();
        let h = 1e-6;
        let up = throughput_delay_tolerant_asymptotic(&p.with_tau(sol.tau + h))
            .unwrap()
            .value;
        let down = throughput_delay_tolerant_asymptotic(&p.with_tau(sol.tau - h))
            .unwrap()
            .value;
        let deriv = (up - down) / (2.0 * h);
        assert!(deriv.abs() <= 1e-6, "N={n} derivative {deriv:e}");
    }
}

#[test]
fn search_on_tolerant_asymptote_recovers_closed_form() {
    // Replacing the exact objective with the asymptote, the generic search
    // must land on the closed-form optimum within its tolerance.
    let tol = 1e-4;
    for n in [1u32, 2, 5] {
        let p = params(n, 30.0);
        let closed = optimal_tau_tolerant_highsnr(&p).unwrap();
        let searched = search_unimodal_tau(
            &|t| Ok(throughput_delay_tolerant_asymptotic(&p.with_tau(t))?.value),
            tol,
        )
        .unwrap();
        assert!(
            (searched.tau - closed.tau).abs() <= tol,
            "N={n} search {} closed {}",
            searched.tau,
            closed.tau
        );
    }
}

#[test]
fn limited_closed_form_tracks_exhaustive_grid_at_high_snr() {
    // N=2, P=40 dBm: the closed form must land within 0.02 of the
    // brute-force argmax of the exact objective on a τ grid of step 1e-4.
    let p = params(2, 40.0);
    let closed = optimal_tau_limited_highsnr(&p, &ApproxConstants::default()).unwrap();
    let brute = support::grid_argmax_tau(
        &|t| throughput_delay_limited(&p.with_tau(t)).unwrap(),
        1e-4,
    );
    assert!(
        (closed.tau - brute).abs() <= 0.02,
        "closed {} brute {brute}",
        closed.tau
    );
}

#[test]
fn limited_closed_form_and_golden_section_agree_at_high_snr() {
    // N=5, P=40 dBm.
    let p = params(5, 40.0);
    let closed = optimal_tau_limited_highsnr(&p, &ApproxConstants::default()).unwrap();
    let searched = optimal_tau_search(TransmissionMode::DelayLimited, &p, 1e-4).unwrap();
    assert!(
        (closed.tau - searched.tau).abs() <= 0.02,
        "closed {} search {}",
        closed.tau,
        searched.tau
    );
}

#[test]
fn tolerant_asymptote_value_matches_hand_formula_at_balanced_split() {
    // N=1, τ=0.5, γ̄Ω²=5: the asymptote reduces to
    // (0.5/ln 2)·(2ψ(1) + ln 5) with ψ(1) = −γ.
    let p = params(1, 30.0);
    let got = throughput_delay_tolerant_asymptotic(&p).unwrap().value;
    let want = 0.5 / core::f64::consts::LN_2 * (-2.0 * EULER_GAMMA + 5.0f64.ln());
    assert!((got - want).abs() < 1e-12, "got {got} want {want}");
}

#[test]
fn search_respects_objective_errors() {
    // An objective that fails inside the bracket propagates its error.
    let f = |t: f64| {
        if t > 0.3 {
            Err(wpcn_core::analytic::AnalyticError::Domain("synthetic"))
        } else {
            Ok(t)
        }
    };
    assert!(search_unimodal_tau(&f, 1e-4).is_err());
}
