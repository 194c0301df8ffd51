//! Closed-form macroscopic quantities of the exploration.

/// Below this mean degree the fluid curve uses its Taylor series in `c`.
const SMALL_C: f64 = 1e-6;

/// Fluid limit `min(z(t), 1)` with `z(t) = (1 + c)/c * (1 - exp(-c t))`.
pub fn fluid_z(c: f64, t: f64) -> f64 {
    fluid_z_unclipped(c, t).min(1.0)
}

/// `z(t)` without clipping at 1.
pub fn fluid_z_unclipped(c: f64, t: f64) -> f64 {
    if c < SMALL_C {
        let ct = c * t;
        (1.0 + c) * t * (1.0 - ct / 2.0 + ct * ct / 6.0)
    } else {
        (1.0 + c) * -(-c * t).exp_m1() / c
    }
}

/// Hitting time of 1 by the fluid curve, `log(1 + c) / c`.
pub fn t_star(c: f64) -> f64 {
    c.ln_1p() / c
}

/// Asymptotic variance of `sqrt(n) (T/n - t_star)`: `c / (2 (c + 1)^2)`.
pub fn clt_sigma2(c: f64) -> f64 {
    c / (2.0 * (c + 1.0) * (c + 1.0))
}
