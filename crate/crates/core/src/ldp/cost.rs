//! Cost function, Hamiltonian and their Legendre duality.

use crate::model::ExtReal;

/// Cost of moving at speed `beta` when a fraction `x` of the graph is explored.
///
/// Four branches: a Poisson rate for `x < 1, beta > 1`, `c (1 - x)` at
/// `beta = 1`, zero at the absorbing point `(1, 0)`, and `+inf` everywhere else.
pub fn cost_l(c: f64, x: f64, beta: f64) -> ExtReal {
    if x < 1.0 {
        let lambda = c * (1.0 - x);
        if beta > 1.0 {
            let u = beta - 1.0;
            ExtReal::Finite(u * ((u / lambda).ln() - 1.0) + lambda)
        } else if beta == 1.0 {
            ExtReal::Finite(lambda)
        } else {
            ExtReal::PosInf
        }
    } else if x == 1.0 && beta == 0.0 {
        ExtReal::Finite(0.0)
    } else {
        ExtReal::PosInf
    }
}

/// `H(x, alpha) = alpha + c (1 - x) (e^alpha - 1)` for `x < 1`, and 0 at `x = 1`.
pub fn hamiltonian(c: f64, x: f64, alpha: f64) -> f64 {
    if x < 1.0 {
        alpha + c * (1.0 - x) * alpha.exp_m1()
    } else {
        0.0
    }
}

/// Cramér rate of the empirical mean of Poisson(`lambda`) variables.
pub fn poisson_rate(lambda: f64, u: f64) -> ExtReal {
    if u > 0.0 {
        ExtReal::Finite(u * ((u / lambda).ln() - 1.0) + lambda)
    } else if u == 0.0 {
        ExtReal::Finite(lambda)
    } else {
        ExtReal::PosInf
    }
}

/// Maximize a unimodal function on `[lo, hi]` by golden-section search.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..200 {
        if hi - lo <= 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    let arg = 0.5 * (lo + hi);
    (arg, f(arg))
}

/// `sup_alpha { alpha beta - H(x, alpha) }` by direct numerical maximization.
///
/// Only meaningful where the supremum is attained (`x < 1`, `beta > 1`).
pub fn numerical_conjugate_of_h(c: f64, x: f64, beta: f64) -> f64 {
    golden_max(|a| a * beta - hamiltonian(c, x, a), -60.0, 60.0).1
}

/// `sup_beta { alpha beta - L(x, beta) }` by direct numerical maximization (`x < 1`).
pub fn numerical_conjugate_of_l(c: f64, x: f64, alpha: f64) -> f64 {
    let hi = 2.0 + 4.0 * c * (1.0 - x) * alpha.exp();
    golden_max(
        |b| match cost_l(c, x, b) {
            ExtReal::Finite(l) => alpha * b - l,
            ExtReal::PosInf => f64::NEG_INFINITY,
        },
        1.0,
        hi,
    )
    .1
}
