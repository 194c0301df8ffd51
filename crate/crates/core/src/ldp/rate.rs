//! Rates along extremals, the inverse of the exit time, tail rates and path rates.

use crate::chain::TailSide;
use crate::error::{Error, Result};
use crate::fluid::t_star;
use crate::ldp::cost::cost_l;
use crate::ldp::trajectory::{HamTrajectory, MAX_ABS_ALPHA0};
use crate::model::{check_c, ExtReal, Interpolation, ScaledPath};
use crate::quadrature::{gauss_legendre, gauss_legendre_integrate, integrate, Gk15Options};

/// A rate in nats, with the initial momentum that attains it when there is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateValue {
    pub value: ExtReal,
    pub optimizer: Option<f64>,
}

impl RateValue {
    pub fn finite(value: f64, optimizer: Option<f64>) -> Self {
        Self { value: ExtReal::Finite(value), optimizer }
    }
}

/// `e^a (a - 1) + 1`, accurate near `a = 0`.
fn legendre_gap(a: f64) -> f64 {
    if a.abs() < 1e-3 {
        let a2 = a * a;
        a2 * (0.5 + a * (1.0 / 3.0 + a * (1.0 / 8.0 + a / 30.0)))
    } else {
        a.exp() * (a - 1.0) + 1.0
    }
}

/// Cost along the extremal, `c (1 - x) [e^alpha (alpha - 1) + 1]`.
pub fn simplified_integrand(traj: &HamTrajectory, t: f64) -> f64 {
    let x = traj.position(t);
    let gap = (1.0 - x).max(0.0);
    if gap == 0.0 {
        return 0.0;
    }
    traj.c * gap * legendre_gap(traj.momentum(t))
}

/// `L(x(t), x'(t))` along the extremal, with `x'` from the ODE right-hand side.
pub fn cost_integrand(traj: &HamTrajectory, t: f64) -> f64 {
    let x = traj.position(t);
    if x >= 1.0 {
        return 0.0;
    }
    match cost_l(traj.c, x, traj.velocity(t)) {
        ExtReal::Finite(v) => v,
        ExtReal::PosInf => f64::INFINITY,
    }
}

fn quad_opts() -> Gk15Options {
    Gk15Options::default()
}

/// Rate of the extremal with initial momentum `alpha0`, integrated up to its exit time.
pub fn rate_f(c: f64, alpha0: f64) -> Result<RateValue> {
    let traj = HamTrajectory::new(c, alpha0)?;
    rate_f_on(&traj)
}

pub fn rate_f_on(traj: &HamTrajectory) -> Result<RateValue> {
    if traj.alpha0 == 0.0 {
        return Ok(RateValue::finite(0.0, Some(0.0)));
    }
    let r = integrate(|t| simplified_integrand(traj, t), 0.0, traj.exit_time, quad_opts())?;
    Ok(RateValue::finite(r.value.max(0.0), Some(traj.alpha0)))
}

/// Same rate through the general cost function instead of the simplified integrand.
pub fn rate_f_via_cost(c: f64, alpha0: f64) -> Result<f64> {
    let traj = HamTrajectory::new(c, alpha0)?;
    if alpha0 == 0.0 {
        return Ok(0.0);
    }
    Ok(integrate(|t| cost_integrand(&traj, t), 0.0, traj.exit_time, quad_opts())?.value)
}

fn exit_time(c: f64, alpha0: f64) -> Result<f64> {
    Ok(HamTrajectory::new(c, alpha0)?.exit_time)
}

/// The unique `alpha0` whose extremal exits at time `target`.
///
/// Exit time is strictly decreasing in `alpha0`, so this is a monotone bisection
/// after expanding the bracket from `[-1, 1]` by doubling.
pub fn invert_exit_time(c: f64, target: f64) -> Result<f64> {
    check_c(c)?;
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::domain(format!("exit time must lie in (0, 1), got {target}")));
    }
    let mut lo = -1.0f64;
    while exit_time(c, lo)? < target {
        if lo <= -MAX_ABS_ALPHA0 {
            return Err(Error::domain(format!(
                "exit time {target} is beyond the reach of alpha0 >= -{MAX_ABS_ALPHA0} for c = {c}"
            )));
        }
        lo = (2.0 * lo).max(-MAX_ABS_ALPHA0);
    }
    let mut hi = 1.0f64;
    while exit_time(c, hi)? > target {
        if hi >= MAX_ABS_ALPHA0 {
            return Err(Error::domain(format!(
                "exit time {target} is below the reach of alpha0 <= {MAX_ABS_ALPHA0} for c = {c}"
            )));
        }
        hi = (2.0 * hi).min(MAX_ABS_ALPHA0);
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if exit_time(c, mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha0 = 0.5 * (lo + hi);
    let traj = HamTrajectory::new(c, alpha0)?;
    let x = traj.position(target);
    if x.is_finite() && (x - 1.0).abs() > 1e-10 {
        return Err(Error::numeric(format!(
            "exit-time inversion for c={c}, T={target} left |x(T) - 1| = {:e}",
            (x - 1.0).abs()
        )));
    }
    Ok(alpha0)
}

/// Decay rate of `P(T/n >= t* + eps)` (upper) or `P(T/n <= t* - eps)` (lower).
pub fn tail_rate(c: f64, eps: f64, side: TailSide) -> Result<RateValue> {
    check_c(c)?;
    if !(eps > 0.0) {
        return Err(Error::domain(format!("epsilon must be positive, got {eps}")));
    }
    let ts = t_star(c);
    let target = match side {
        TailSide::Upper => {
            let t = ts + eps;
            if !(t < 1.0) {
                return Err(Error::domain(format!(
                    "upper tail requires T*+eps < 1, got T*+eps = {t} (T* = {ts})"
                )));
            }
            t
        }
        TailSide::Lower => {
            let t = ts - eps;
            if !(t > 0.0) {
                return Err(Error::domain(format!(
                    "lower tail requires T*-eps > 0, got T*-eps = {t} (T* = {ts})"
                )));
            }
            t
        }
    };
    let alpha0 = invert_exit_time(c, target)?;
    rate_f(c, alpha0)
}

const PATH_NODES: usize = 16;

/// `I(phi) = int_0^1 L(phi, phi') dt` for a piecewise-linear path.
///
/// Each segment is integrated in the state variable `x`, with `dt = dx / slope`.
/// The `log(1 - x)` part of the cost is integrated exactly and the smooth
/// remainder with 16-point Gauss–Legendre, so segments ending at `x = 1` stay exact.
pub fn path_rate(c: f64, path: &ScaledPath) -> Result<RateValue> {
    check_c(c)?;
    if path.interpolation() != Interpolation::Linear {
        return Err(Error::domain(
            "path rate needs a piecewise-linear path; step paths are not absolutely continuous",
        ));
    }
    let (nodes, weights) = gauss_legendre(PATH_NODES);
    let times = path.times();
    let values = path.values();
    if times[times.len() - 1] < 1.0 && values[values.len() - 1] < 1.0 {
        // held constant below 1 until t = 1
        return Ok(RateValue { value: ExtReal::PosInf, optimizer: None });
    }
    let mut total = 0.0;
    for i in 0..times.len() - 1 {
        let (t0, t1) = (times[i], times[i + 1]);
        let (v0, v1) = (values[i], values[i + 1]);
        let dt = t1 - t0;
        let dv = v1 - v0;
        if dt == 0.0 {
            if dv == 0.0 {
                continue;
            }
            return Ok(RateValue { value: ExtReal::PosInf, optimizer: None });
        }
        if v0 >= 1.0 {
            // constant at 1: L(1, 0) = 0
            continue;
        }
        let slope = dv / dt;
        if slope < 1.0 {
            return Ok(RateValue { value: ExtReal::PosInf, optimizer: None });
        }
        let u = slope - 1.0;
        let smooth = |x: f64| -> f64 {
            let l = cost_l(c, x, slope).unwrap_finite();
            if u > 0.0 {
                l + u * (-x).ln_1p()
            } else {
                l
            }
        };
        let mut seg = gauss_legendre_integrate(smooth, v0, v1, &nodes, &weights);
        if u > 0.0 {
            seg -= u * (log_antiderivative(v1) - log_antiderivative(v0));
        }
        total += seg / slope;
    }
    Ok(RateValue::finite(total.max(0.0), None))
}

/// Antiderivative of `log(1 - x)` vanishing at `x = 1`.
fn log_antiderivative(x: f64) -> f64 {
    let u = 1.0 - x;
    if u <= 0.0 {
        0.0
    } else {
        -u * u.ln() + u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fluid::fluid_z;

    #[test]
    fn legendre_gap_series_matches() {
        for a in [-9e-4f64, -1e-5, 1e-5, 9e-4] {
            let direct = a.exp() * (a - 1.0) + 1.0;
            assert!((legendre_gap(a) - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn rate_at_zero_and_away() {
        assert_eq!(rate_f(1.0, 0.0).unwrap().value, ExtReal::Finite(0.0));
        assert!(rate_f(1.0, 0.5).unwrap().value.unwrap_finite() > 0.0);
        assert!(rate_f(1.0, -0.5).unwrap().value.unwrap_finite() > 0.0);
    }

    #[test]
    fn simplified_and_cost_routes_agree() {
        let a = rate_f(1.0, 0.5).unwrap().value.unwrap_finite();
        let b = rate_f_via_cost(1.0, 0.5).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn inversion_round_trips() {
        let a = invert_exit_time(1.0, t_star(1.0)).unwrap();
        assert!(a.abs() < 1e-9);
        for (t, neg) in [(0.8, true), (0.5, false)] {
            let a = invert_exit_time(1.0, t).unwrap();
            assert_eq!(a < 0.0, neg);
            let exit = HamTrajectory::new(1.0, a).unwrap().exit_time;
            assert!((exit - t).abs() < 1e-9);
        }
        assert!(invert_exit_time(1.0, 1.0).is_err());
    }

    #[test]
    fn tail_rate_composition_and_hypotheses() {
        let r = tail_rate(1.0, 0.1, TailSide::Upper).unwrap();
        let a = invert_exit_time(1.0, 2f64.ln() + 0.1).unwrap();
        assert_eq!(r.optimizer, Some(a));
        assert_eq!(r.value, rate_f(1.0, a).unwrap().value);
        assert!(matches!(tail_rate(1.0, 0.4, TailSide::Upper), Err(Error::Domain(_))));
        assert!(matches!(tail_rate(1.0, 0.7, TailSide::Lower), Err(Error::Domain(_))));
    }

    #[test]
    fn tail_rate_vanishes_with_eps() {
        let mut prev = f64::INFINITY;
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let v = tail_rate(1.0, eps, TailSide::Upper).unwrap().value.unwrap_finite();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-6);
    }

    fn linear(times: Vec<f64>, values: Vec<f64>) -> ScaledPath {
        ScaledPath::new(times, values, Interpolation::Linear).unwrap()
    }

    #[test]
    fn identity_path() {
        let r = path_rate(1.0, &linear(vec![0.0, 1.0], vec![0.0, 1.0])).unwrap();
        assert!((r.value.unwrap_finite() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn fluid_path_has_negligible_rate() {
        let c = 1.0;
        let ts = t_star(c);
        let n = 10_000;
        let mut times: Vec<f64> = (0..n).map(|i| ts * i as f64 / (n - 1) as f64).collect();
        let mut values: Vec<f64> = times.iter().map(|&t| fluid_z(c, t)).collect();
        *values.last_mut().unwrap() = 1.0;
        times.push(1.0);
        values.push(1.0);
        let r = path_rate(c, &linear(times, values)).unwrap();
        assert!(r.value.unwrap_finite() < 1e-6, "{:?}", r.value);
    }

    #[test]
    fn kinked_path_is_stable_under_refinement() {
        let coarse = linear(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 1.0]);
        let k = 20;
        let times: Vec<f64> = (0..=k).map(|i| i as f64 / k as f64).collect();
        let values = times.iter().map(|&t| (2.0 * t).min(1.0)).collect();
        let fine = linear(times, values);
        let a = path_rate(1.0, &coarse).unwrap().value.unwrap_finite();
        let b = path_rate(1.0, &fine).unwrap().value.unwrap_finite();
        assert!(a > 0.0);
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        // int_0^1/2 L(2t, 2) dt = (1/2) int_0^1 (-ln(1 - x) - x) dx = 1/4 for c = 1
        let exact = 0.25;
        assert!((a - exact).abs() < 1e-12, "{a}");
    }

    #[test]
    fn infinite_paths() {
        let slow = linear(vec![0.0, 1.0], vec![0.0, 0.5]);
        assert_eq!(path_rate(1.0, &slow).unwrap().value, ExtReal::PosInf);
        let jump = linear(vec![0.0, 0.5, 0.5, 1.0], vec![0.0, 0.5, 0.9, 1.0]);
        assert_eq!(path_rate(1.0, &jump).unwrap().value, ExtReal::PosInf);
        let step = ScaledPath::new(vec![0.0, 1.0], vec![0.0, 1.0], Interpolation::Step).unwrap();
        assert!(path_rate(1.0, &step).is_err());
    }
}
