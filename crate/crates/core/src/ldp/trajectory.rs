//! Closed-form extremals of the Hamiltonian system
//!
//! ```text
//! x' = 1 + c (1 - x) e^alpha,   x(0) = 0
//! alpha' = c (e^alpha - 1),     alpha(0) = alpha0
//! ```
//!
//! With `k0 = 1 - e^{-alpha0}` the momentum is `alpha(t) = -log(1 - k0 e^{ct})`.
//! All evaluators go through `r(t) = expm1(c t) * expm1(alpha0)`, which satisfies
//! `1 - k0 e^{ct} = e^{-alpha0} (1 - r)`, giving
//!
//! ```text
//! x(t)     = (1 - e^{-ct}) [ e^{alpha0} + (1 - r) phi(r) / c ],  phi(r) = -log(1 - r) / r
//! alpha(t) = alpha0 - log(1 - r)
//! ```
//!
//! This form is free of the `0/0` at `alpha0 = 0` and stays accurate for `|alpha0|` up to 700.

use crate::error::{Error, Result};
use crate::fluid;

/// Largest `|alpha0|` accepted; keeps `e^{alpha0}` finite.
pub const MAX_ABS_ALPHA0: f64 = 700.0;

/// Below this `|r|` the series of `phi` is used.
const SERIES_R: f64 = 1e-8;

/// Distance kept from the blow-up time when bracketing the exit time.
const SINGULAR_MARGIN: f64 = 1e-14;

/// One Hamiltonian extremal started at `(x, alpha) = (0, alpha0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamTrajectory {
    pub c: f64,
    pub alpha0: f64,
    /// `1 - e^{-alpha0}`
    pub k0: f64,
    /// First time `x` reaches 1.
    pub exit_time: f64,
    /// Blow-up time of `alpha(t)`, present when `alpha0 > 0`.
    pub singular_time: Option<f64>,
    expm1_alpha0: f64,
    exp_alpha0: f64,
}

impl HamTrajectory {
    pub fn new(c: f64, alpha0: f64) -> Result<Self> {
        crate::model::check_c(c)?;
        if !(alpha0.abs() <= MAX_ABS_ALPHA0) {
            return Err(Error::param(format!(
                "|alpha0| must be at most {MAX_ABS_ALPHA0}, got {alpha0}"
            )));
        }
        let expm1_alpha0 = alpha0.exp_m1();
        let singular_time = (alpha0 > 0.0).then(|| (1.0 / expm1_alpha0).ln_1p() / c);
        let mut traj = Self {
            c,
            alpha0,
            k0: -(-alpha0).exp_m1(),
            exit_time: f64::NAN,
            singular_time,
            expm1_alpha0,
            exp_alpha0: alpha0.exp(),
        };
        traj.exit_time = traj.solve_exit_time()?;
        Ok(traj)
    }

    fn r(&self, t: f64) -> f64 {
        (self.c * t).exp_m1() * self.expm1_alpha0
    }

    /// `x(t)`, unclipped. NaN at or past the blow-up time.
    pub fn position(&self, t: f64) -> f64 {
        if self.alpha0 == 0.0 {
            return fluid::fluid_z_unclipped(self.c, t);
        }
        let r = self.r(t);
        if r >= 1.0 {
            return f64::NAN;
        }
        let one_minus_r_phi = (1.0 - r) * phi(r);
        -(-self.c * t).exp_m1() * (self.exp_alpha0 + one_minus_r_phi / self.c)
    }

    /// `min(x(t), 1)`, held at 1 from the exit time on.
    pub fn clipped_position(&self, t: f64) -> f64 {
        if t >= self.exit_time {
            1.0
        } else {
            self.position(t).min(1.0)
        }
    }

    /// Momentum `alpha(t)`. NaN at or past the blow-up time.
    pub fn momentum(&self, t: f64) -> f64 {
        let r = self.r(t);
        if r >= 1.0 {
            return f64::NAN;
        }
        self.alpha0 - (-r).ln_1p()
    }

    /// `e^{alpha(t)}` without forming `alpha(t)` first.
    pub fn exp_momentum(&self, t: f64) -> f64 {
        let r = self.r(t);
        if r >= 1.0 {
            return f64::NAN;
        }
        self.exp_alpha0 / (1.0 - r)
    }

    /// `x'(t)` from the right-hand side of the Hamiltonian system.
    pub fn velocity(&self, t: f64) -> f64 {
        1.0 + self.c * (1.0 - self.position(t)) * self.exp_momentum(t)
    }

    fn solve_exit_time(&self) -> Result<f64> {
        let mut hi = match self.singular_time {
            Some(ts) => (ts - SINGULAR_MARGIN.min(ts * 1e-6)).min(1.0),
            None => 1.0,
        };
        if self.position(hi) < 1.0 {
            match self.singular_time {
                Some(ts) if hi < 1.0 => {
                    // x approaches 1 from below as t -> ts; the crossing sits within
                    // the margin and is not resolvable in double precision.
                    return Ok(ts);
                }
                Some(ts) => {
                    return Err(Error::numeric(format!(
                        "extremal c={}, alpha0={} stays below 1 on [0, 1] (x(1)={}, blow-up at {ts})",
                        self.c,
                        self.alpha0,
                        self.position(1.0)
                    )));
                }
                None => {
                    let mut steps = 0;
                    while self.position(hi) < 1.0 {
                        log::warn!(
                            "extremal c={}, alpha0={} below 1 at t={hi}; extending exit bracket",
                            self.c,
                            self.alpha0
                        );
                        hi += 0.5;
                        steps += 1;
                        if steps > 20 {
                            return Err(Error::numeric(format!(
                                "extremal c={}, alpha0={} never reaches 1 before t={hi}",
                                self.c, self.alpha0
                            )));
                        }
                    }
                }
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.position(mid) >= 1.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// `-log(1 - r) / r`, continuous at 0.
fn phi(r: f64) -> f64 {
    if r.abs() < SERIES_R {
        1.0 + r * (0.5 + r / 3.0)
    } else {
        -(-r).ln_1p() / r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal closed form in terms of `k0`, used as an oracle for the rewritten one.
    fn position_literal(c: f64, alpha0: f64, t: f64) -> f64 {
        let k0 = 1.0 - (-alpha0).exp();
        let e = (-c * t).exp();
        ((1.0 / (c * k0)) * ((1.0 - k0) / (1.0 - k0 * (c * t).exp())).ln() + 1.0 / (e - k0)
            - 1.0 / (1.0 - k0))
            * (e - k0)
    }

    #[test]
    fn matches_literal_closed_form() {
        for c in [0.5, 1.0, 3.0] {
            for alpha0 in [-2.0, -1.0, -0.3, 0.3, 1.0, 2.0] {
                let traj = HamTrajectory::new(c, alpha0).unwrap();
                for i in 0..=20 {
                    let t = traj.exit_time * i as f64 / 20.0;
                    let a = traj.position(t);
                    let b = position_literal(c, alpha0, t);
                    assert!((a - b).abs() < 1e-10, "c={c} a0={alpha0} t={t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn zero_momentum_is_fluid_limit() {
        let traj = HamTrajectory::new(1.0, 0.0).unwrap();
        assert!((traj.exit_time - 2f64.ln()).abs() < 1e-12);
        assert_eq!(traj.k0, 0.0);
        assert!(traj.singular_time.is_none());
    }

    #[test]
    fn tiny_momentum_is_continuous() {
        let c = 1.5;
        for t in [0.1, 0.3, 0.5] {
            let z = fluid::fluid_z_unclipped(c, t);
            for a in [1e-12, -1e-12, 1e-9, -1e-9] {
                let x = HamTrajectory::new(c, a).unwrap().position(t);
                assert!((x - z).abs() < 1e-8, "a={a} t={t}");
            }
        }
    }

    #[test]
    fn ode_residuals() {
        let traj = HamTrajectory::new(1.0, -1.0).unwrap();
        let h = 1e-6;
        for i in 1..20 {
            let t = traj.exit_time * i as f64 / 20.0;
            let dx = (traj.position(t + h) - traj.position(t - h)) / (2.0 * h);
            let da = (traj.momentum(t + h) - traj.momentum(t - h)) / (2.0 * h);
            let x = traj.position(t);
            let a = traj.momentum(t);
            assert!((dx - (1.0 + (1.0 - x) * a.exp())).abs() < 1e-6);
            assert!((da - a.exp_m1()).abs() < 1e-6);
        }
    }

    #[test]
    fn invariants_of_k0_and_exit() {
        for alpha0 in [-5.0, -1.0, -0.01, 0.01, 1.0, 5.0] {
            let traj = HamTrajectory::new(2.0, alpha0).unwrap();
            assert!(traj.k0 < 1.0);
            assert_eq!(traj.k0 < 0.0, alpha0 < 0.0);
            assert!(traj.exit_time > 0.0 && traj.exit_time <= 1.0);
            if let Some(ts) = traj.singular_time {
                assert!(traj.exit_time <= ts);
                assert!((ts - (-traj.k0.ln() / 2.0)).abs() < 1e-12 * ts.max(1.0));
            }
        }
    }

    #[test]
    fn extreme_momenta() {
        let hi = HamTrajectory::new(1.0, MAX_ABS_ALPHA0).unwrap();
        assert!(hi.exit_time > 0.0 && hi.exit_time < 1e-300);
        let lo = HamTrajectory::new(1.0, -MAX_ABS_ALPHA0).unwrap();
        assert!((lo.exit_time - 1.0).abs() < 1e-12, "{}", lo.exit_time);
        assert!(HamTrajectory::new(1.0, 701.0).is_err());
        assert!(HamTrajectory::new(0.0, 1.0).is_err());
    }

    #[test]
    fn large_alpha0_exit_hits_singularity() {
        // for large alpha0 the crossing is within rounding of the blow-up time
        let traj = HamTrajectory::new(1.0, 6.0).unwrap();
        let ts = traj.singular_time.unwrap();
        assert!((traj.exit_time - ts).abs() < 1e-12);
    }

    #[test]
    fn clipped_holds_one() {
        let traj = HamTrajectory::new(1.0, 0.5).unwrap();
        assert_eq!(traj.clipped_position(traj.exit_time), 1.0);
        assert_eq!(traj.clipped_position(0.99), 1.0);
        assert!(traj.clipped_position(traj.exit_time * 0.5) < 1.0);
    }
}
