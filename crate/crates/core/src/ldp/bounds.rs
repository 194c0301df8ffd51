//! Independent-set proportions used as thresholds, and their tail rates.

use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::fluid::t_star;
use crate::ldp::rate::{invert_exit_time, rate_f, RateValue};
use crate::model::check_c;

/// Principal branch `W0` of the Lambert function (`W e^W = x`, `W >= -1`) by Halley iteration.
pub fn lambert_w0(x: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if x.is_nan() || x < branch - 1e-15 {
        return Err(Error::domain(format!("Lambert W0 needs x >= -1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let p2 = 2.0 * (E * x + 1.0);
    if p2 <= 0.0 {
        return Ok(-1.0);
    }
    let mut w = if x < -0.25 {
        // branch-point series in p = sqrt(2 (e x + 1))
        let p = p2.sqrt();
        let series = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
        if p < 1e-4 {
            return Ok(series);
        }
        series
    } else if x < 3.0 {
        let l = x.ln_1p();
        l * (1.0 - (l.ln_1p()) / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let next = w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let done = (next - w).abs() <= 1e-15 * next.abs().max(f64::MIN_POSITIVE);
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

/// Asymptotic maximum independent-set proportion for `0 < c < e`:
/// `w + (c/2) w^2` with `w = e^{-W0(c)}`.
pub fn sigma1_star(c: f64) -> Result<f64> {
    if !(c > 0.0 && c < E) {
        return Err(Error::domain(format!("sigma1* requires 0 < c < e, got {c}")));
    }
    let w = (-lambert_w0(c)?).exp();
    Ok(w + 0.5 * c * w * w)
}

/// Erdős upper bound `(2/c) log c` on the maximum independent-set proportion, `c >= 3`.
pub fn sigma2_star(c: f64) -> Result<f64> {
    if !(c >= 3.0) || !c.is_finite() {
        return Err(Error::domain(format!("sigma2* requires c >= 3, got {c}")));
    }
    Ok(2.0 * c.ln() / c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Sigma1,
    Sigma2,
}

impl std::str::FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma1" => Ok(Bound::Sigma1),
            "sigma2" => Ok(Bound::Sigma2),
            other => Err(Error::param(format!("bound must be sigma1 or sigma2, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bound::Sigma1 => "sigma1",
            Bound::Sigma2 => "sigma2",
        })
    }
}

impl Bound {
    pub fn value(self, c: f64) -> Result<f64> {
        match self {
            Bound::Sigma1 => sigma1_star(c),
            Bound::Sigma2 => sigma2_star(c),
        }
    }
}

/// Rate of the event `{T/n >= sigma*(c)}`.
pub fn bound_rate(c: f64, bound: Bound) -> Result<(f64, RateValue)> {
    check_c(c)?;
    let sigma = bound.value(c)?;
    let ts = t_star(c);
    if !(sigma > ts && sigma < 1.0) {
        return Err(Error::domain(format!(
            "bound {sigma} must lie in (T*, 1) = ({ts}, 1) for c = {c}"
        )));
    }
    let alpha0 = invert_exit_time(c, sigma)?;
    Ok((sigma, rate_f(c, alpha0)?))
}
