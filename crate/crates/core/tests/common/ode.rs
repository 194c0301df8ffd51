//! Adaptive Dormand–Prince 5(4) integration of
//! `x' = 1 + c (1 - x) e^a, a' = c (e^a - 1)` with event detection at `x = 1`.

type State = [f64; 2];

fn rhs(c: f64, y: State) -> State {
    let e = y[1].exp();
    [1.0 + c * (1.0 - y[0]) * e, c * (e - 1.0)]
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One step; returns the 5th-order solution and an error estimate.
fn step(c: f64, y: State, h: f64) -> (State, f64) {
    let mut k = [[0.0; 2]; 7];
    for s in 0..7 {
        let mut ys = y;
        for j in 0..s {
            ys[0] += h * A[s][j] * k[j][0];
            ys[1] += h * A[s][j] * k[j][1];
        }
        k[s] = rhs(c, ys);
    }
    let mut y5 = y;
    let mut err = 0.0f64;
    for d in 0..2 {
        let mut e = 0.0;
        for s in 0..7 {
            y5[d] += h * B5[s] * k[s][d];
            e += h * (B5[s] - B4[s]) * k[s][d];
        }
        err = err.max(e.abs() / (1e-14 + 1e-13 * y5[d].abs()));
    }
    (y5, err)
}

/// First time `x` reaches 1, or `None` if it does not happen before `t_max`.
pub fn exit_time(c: f64, alpha0: f64, t_max: f64) -> Option<f64> {
    let mut t: f64 = 0.0;
    let mut y = [0.0, alpha0];
    let mut h: f64 = 1e-4;
    while t < t_max {
        h = h.min(t_max - t);
        let (y1, err) = step(c, y, h);
        if !(err <= 1.0) || !y1[1].is_finite() {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.5);
            if h < 1e-15 {
                return None;
            }
            continue;
        }
        if y1[0] >= 1.0 {
            // bisect on the step length from the last accepted state
            let (mut lo, mut hi) = (0.0, h);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if step(c, y, mid).0[0] >= 1.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(t + 0.5 * (lo + hi));
        }
        t += h;
        y = y1;
        h *= (0.9 * err.max(1e-10).powf(-0.2)).min(4.0);
    }
    None
}
