mod common;

use greedy_ldp::fluid::t_star;
use greedy_ldp::ldp::rate::rate_f_via_cost;
use greedy_ldp::ldp::{invert_exit_time, rate_f, tail_rate, HamTrajectory};
use greedy_ldp::chain::TailSide;

#[test]
fn exit_time_matches_runge_kutta() {
    let traj = HamTrajectory::new(1.0, 0.5).unwrap();
    let rk = common::ode::exit_time(1.0, 0.5, 2.0).unwrap();
    assert!((traj.exit_time - rk).abs() < 1e-8, "{} vs {rk}", traj.exit_time);
}

#[test]
fn exit_times_match_runge_kutta_on_a_grid() {
    for c in [0.2, 0.5, 1.0, 2.0, 5.0] {
        for a in [-4.0, -2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 1.5] {
            let traj = HamTrajectory::new(c, a).unwrap();
            let rk = common::ode::exit_time(c, a, 2.0).unwrap();
            assert!((traj.exit_time - rk).abs() < 1e-8, "c={c} a0={a}: {} vs {rk}", traj.exit_time);
        }
    }
}

#[test]
fn zero_momentum_exits_at_fluid_hitting_time() {
    let traj = HamTrajectory::new(1.0, 0.0).unwrap();
    assert!((traj.exit_time - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn both_rate_routes_agree() {
    let a = rate_f(1.0, 0.5).unwrap().value.unwrap_finite();
    let b = rate_f_via_cost(1.0, 0.5).unwrap();
    assert!((a - b).abs() < 1e-8);
}

#[test]
fn tail_rate_is_composition() {
    let direct = tail_rate(1.0, 0.1, TailSide::Upper).unwrap();
    let a0 = invert_exit_time(1.0, 2f64.ln() + 0.1).unwrap();
    assert_eq!(direct.optimizer, Some(a0));
    assert_eq!(direct.value, rate_f(1.0, a0).unwrap().value);
    let rk = common::ode::exit_time(1.0, a0, 2.0).unwrap();
    assert!((rk - (t_star(1.0) + 0.1)).abs() < 1e-8);
}
