//! Invariant checks shared by `greedy-ldp verify` and the test suites.

use crate::chain::{exact_stop_time_distribution, StopTimeDist};
use crate::error::Result;
use crate::explorer::enumerate_stop_time_law;
use crate::ldp::cost::{cost_l, hamiltonian, numerical_conjugate_of_h, numerical_conjugate_of_l};
use crate::ldp::HamTrajectory;
use crate::model::ModelParams;
use crate::par;
use crate::replicas;

pub const CHECK_NAMES: [&str; 6] = [
    "legendre",
    "conservation",
    "euler-lagrange",
    "monotonicity",
    "dp-consistency",
    "enumeration",
];

pub const ALPHA0_GRID: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
pub const C_GRID: [f64; 3] = [0.5, 1.0, 3.0];

pub const LEGENDRE_TOL: f64 = 1e-6;
pub const CONSERVATION_TOL: f64 = 1e-8;
pub const EL_TOL: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.to_string(), passed, detail }
    }

    /// `PASS name: detail` / `FAIL name: detail`
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![a];
    }
    (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
}

/// Largest error of `L = H*` on `x in {0,..,0.9}`, `beta in [1.01, 6]`,
/// and of `H = L*` on `alpha in [-3, 3]`.
pub fn legendre_errors(c: f64) -> (f64, f64) {
    let xs: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
    let mut betas = vec![1.01];
    betas.extend(linspace(1.25, 6.0, 20));
    let alphas = linspace(-3.0, 3.0, 25);
    let mut l_err = 0.0f64;
    let mut h_err = 0.0f64;
    for &x in &xs {
        for &b in &betas {
            let exact = cost_l(c, x, b).unwrap_finite();
            l_err = l_err.max((exact - numerical_conjugate_of_h(c, x, b)).abs());
        }
        for &a in &alphas {
            h_err = h_err.max((hamiltonian(c, x, a) - numerical_conjugate_of_l(c, x, a)).abs());
        }
    }
    (l_err, h_err)
}

/// `sup_t |H(x(t), alpha(t)) - H(0, alpha0)|` over `[0, T)` on `points` grid points.
pub fn conservation_error(c: f64, alpha0: f64, points: usize) -> Result<f64> {
    let traj = HamTrajectory::new(c, alpha0)?;
    let h0 = hamiltonian(c, 0.0, alpha0);
    let mut worst = 0.0f64;
    for i in 0..points {
        let t = traj.exit_time * i as f64 / points as f64;
        let x = traj.position(t);
        // the x = 1 branch of H is a convention, so the level set is tracked with the x < 1 formula
        let h = traj.momentum(t) + c * (1.0 - x) * (traj.exp_momentum(t) - 1.0);
        worst = worst.max((h - h0).abs());
    }
    Ok(worst)
}

/// Residual of `(x-1) x'' + (c x - (1+c)) x' - c x + (1+c) = 0` by central differences
/// with step `1e-4`, on `[0.01, T - 0.01]`.
pub fn euler_lagrange_residual(c: f64, alpha0: f64, points: usize) -> Result<f64> {
    let traj = HamTrajectory::new(c, alpha0)?;
    let h = 1e-4;
    let (a, b) = (0.01, traj.exit_time - 0.01);
    if b <= a {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for t in linspace(a, b, points) {
        let (xm, x0, xp) = (traj.position(t - h), traj.position(t), traj.position(t + h));
        let d1 = (xp - xm) / (2.0 * h);
        let d2 = (xp - 2.0 * x0 + xm) / (h * h);
        let r = (x0 - 1.0) * d2 + (c * x0 - (1.0 + c)) * d1 - c * x0 + (1.0 + c);
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Ordered pairs `alpha0 < alpha1` whose extremals fail `x_0 < x_1` or `T_0 > T_1`.
pub fn monotonicity_violations(c: f64, alphas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let trajs: Vec<HamTrajectory> = alphas
        .iter()
        .map(|&a| HamTrajectory::new(c, a))
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for w in trajs.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mut ok = lo.alpha0 < hi.alpha0 && lo.exit_time > hi.exit_time;
        for i in 1..=50 {
            let t = hi.exit_time * i as f64 / 50.0;
            ok &= lo.position(t) < hi.position(t);
        }
        if !ok {
            bad.push((lo.alpha0, hi.alpha0));
        }
    }
    Ok(bad)
}

/// Normalisation error and mean-bound violation of the exact law.
fn dp_sanity(dist: &StopTimeDist, c: f64) -> (f64, bool) {
    let total: f64 = dist.pmf.iter().sum();
    let n = dist.n as f64;
    let mean = dist.mean();
    let in_bounds = mean >= n / (1.0 + c) - 1e-9 && mean <= n + 1e-9;
    ((total - 1.0).abs(), in_bounds)
}

/// Total-variation distance between a sample of stop times and an exact law.
pub fn tv_distance(samples: &[usize], dist: &StopTimeDist) -> f64 {
    let mut counts = vec![0usize; dist.n + 1];
    for &k in samples {
        counts[k] += 1;
    }
    let m = samples.len() as f64;
    0.5 * (1..=dist.n)
        .map(|k| (counts[k] as f64 / m - dist.prob(k)).abs())
        .sum::<f64>()
}

fn check_legendre(cs: &[f64]) -> Result<CheckOutcome> {
    let errs = par::map_slice(cs, |&c| legendre_errors(c));
    let l = errs.iter().map(|e| e.0).fold(0.0, f64::max);
    let h = errs.iter().map(|e| e.1).fold(0.0, f64::max);
    Ok(CheckOutcome::new(
        "legendre",
        l < LEGENDRE_TOL && h < LEGENDRE_TOL,
        format!("max |L - H*| = {l:.3e}, max |H - L*| = {h:.3e} (tol {LEGENDRE_TOL:.0e})"),
    ))
}

fn grid_pairs(cs: &[f64], alphas: &[f64]) -> Vec<(f64, f64)> {
    cs.iter().flat_map(|&c| alphas.iter().map(move |&a| (c, a))).collect()
}

fn check_conservation(cs: &[f64], alphas: &[f64]) -> Result<CheckOutcome> {
    let pts = grid_pairs(cs, alphas);
    let errs = par::collect_results(par::map_slice(&pts, |&(c, a)| conservation_error(c, a, 2000)))?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    Ok(CheckOutcome::new(
        "conservation",
        worst < CONSERVATION_TOL,
        format!("sup |H - H0| = {worst:.3e} over {} extremals (tol {CONSERVATION_TOL:.0e})", pts.len()),
    ))
}

fn check_euler_lagrange(cs: &[f64], alphas: &[f64]) -> Result<CheckOutcome> {
    let pts = grid_pairs(cs, alphas);
    let errs = par::collect_results(par::map_slice(&pts, |&(c, a)| euler_lagrange_residual(c, a, 500)))?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    Ok(CheckOutcome::new(
        "euler-lagrange",
        worst < EL_TOL,
        format!("max residual = {worst:.3e} over {} extremals (tol {EL_TOL:.0e})", pts.len()),
    ))
}

fn check_monotonicity(cs: &[f64]) -> Result<CheckOutcome> {
    let alphas = linspace(-2.0, 2.0, 21);
    let mut bad = Vec::new();
    for &c in cs {
        bad.extend(monotonicity_violations(c, &alphas)?.into_iter().map(|p| (c, p)));
    }
    let pairs = 20 * cs.len();
    Ok(CheckOutcome::new(
        "monotonicity",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{pairs} ordered pairs ordered in position and exit time")
        } else {
            format!("{} of {pairs} pairs violate ordering, first (c, (a0, a1)) = {:?}", bad.len(), bad[0])
        },
    ))
}

fn check_dp(quick: bool, c_hint: Option<f64>) -> Result<CheckOutcome> {
    let cs: Vec<f64> = match c_hint {
        Some(c) => vec![c],
        None => vec![0.5, 1.0, 2.0, 5.0],
    };
    let n_max = if quick { 60 } else { 200 };
    let mut worst_norm = 0.0f64;
    let mut bound_failures = 0usize;
    for &c in &cs {
        let ns: Vec<usize> = (1..=n_max).filter(|&n| c <= n as f64).collect();
        let dists = par::collect_results(par::map_slice(&ns, |&n| {
            exact_stop_time_distribution(&ModelParams::finite(n, c)?)
        }))?;
        for d in &dists {
            let (norm, ok) = dp_sanity(d, c);
            worst_norm = worst_norm.max(norm);
            bound_failures += usize::from(!ok);
        }
    }
    let mut passed = worst_norm < 1e-12 && bound_failures == 0;
    let mut detail = format!("max |sum pmf - 1| = {worst_norm:.3e}, mean-bound failures = {bound_failures}");
    if !quick {
        let params = ModelParams::finite(50, 1.0)?;
        let dist = exact_stop_time_distribution(&params)?;
        let samples = replicas::chain_stop_times(&params, 2024, 200_000)?;
        let tv = tv_distance(&samples, &dist);
        passed &= tv < 0.01;
        detail.push_str(&format!(", TV(chain MC, DP) at n=50 = {tv:.4} (tol 0.01)"));
    }
    Ok(CheckOutcome::new("dp-consistency", passed, detail))
}

fn check_enumeration(quick: bool, c_hint: Option<f64>) -> Result<CheckOutcome> {
    let n_max = if quick { 4 } else { 6 };
    let cs: Vec<f64> = match c_hint {
        Some(c) => vec![c],
        None => vec![0.5, 1.0, 2.0],
    };
    let mut worst = 0.0f64;
    for &c in &cs {
        for n in 1..=n_max {
            if c > n as f64 {
                continue;
            }
            let law = enumerate_stop_time_law(n, c)?;
            let dist = exact_stop_time_distribution(&ModelParams::finite(n, c)?)?;
            for k in 1..=n {
                worst = worst.max((law[k - 1] - dist.prob(k)).abs());
            }
        }
    }
    Ok(CheckOutcome::new(
        "enumeration",
        worst < 1e-12,
        format!("max |graph enumeration - DP| = {worst:.3e} for n <= {n_max}"),
    ))
}

/// Options for [`run_checks`].
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub quick: bool,
    pub only: Option<String>,
    pub c: Option<f64>,
    pub alpha0: Option<f64>,
}

/// Run the selected checks in a fixed order.
pub fn run_checks(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let names: Vec<&str> = match &opts.only {
        Some(name) => {
            if !CHECK_NAMES.contains(&name.as_str()) {
                return Err(crate::Error::param(format!(
                    "unknown check {name:?}; expected one of {}",
                    CHECK_NAMES.join(", ")
                )));
            }
            vec![name.as_str()]
        }
        None => CHECK_NAMES.to_vec(),
    };
    let cs: Vec<f64> = match opts.c {
        Some(c) => {
            crate::model::check_c(c)?;
            vec![c]
        }
        None => C_GRID.to_vec(),
    };
    let alphas: Vec<f64> = match opts.alpha0 {
        Some(a) => vec![a],
        None if opts.quick => vec![-1.0, 0.5, 1.0],
        None => ALPHA0_GRID.to_vec(),
    };
    let legendre_cs: Vec<f64> = match opts.c {
        Some(c) => vec![c],
        None => vec![0.5, 1.0, 2.0],
    };
    names
        .into_iter()
        .map(|name| match name {
            "legendre" => check_legendre(&legendre_cs),
            "conservation" => check_conservation(&cs, &alphas),
            "euler-lagrange" => check_euler_lagrange(&cs, &alphas),
            "monotonicity" => check_monotonicity(&cs),
            "dp-consistency" => check_dp(opts.quick, opts.c),
            "enumeration" => check_enumeration(opts.quick, opts.c),
            _ => unreachable!(),
        })
        .collect()
}
