//! The one-dimensional exploration chain `Z_{k+1} = Z_k + 1 + Bin(n - Z_k - 1, c/n)`
//! and the exact law of its absorption time.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::fluid;
use crate::model::{Interpolation, ModelParams, ScaledPath};
use crate::output::fmt_float;

/// Default vertex-count cap for [`exact_stop_time_distribution`].
pub const DEFAULT_DP_CAP: usize = 2000;

/// Binomial terms below this fraction of the row maximum are dropped.
const BINOMIAL_TRUNCATION: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTrajectory {
    pub n: usize,
    /// `Z_0 = 0, ..., Z_T = n`.
    pub z: Vec<usize>,
    pub stop_time: usize,
}

/// Sample one trajectory of the chain. Deterministic in `seed`.
pub fn simulate_chain(params: &ModelParams, seed: u64) -> Result<ChainTrajectory> {
    let n = params.require_n()?;
    let p = params.edge_probability()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = Vec::with_capacity(n / 2 + 2);
    let mut current = 0usize;
    z.push(current);
    while current < n {
        let trials = (n - current - 1) as u64;
        let extra = if trials == 0 {
            0
        } else {
            Binomial::new(trials, p)
                .map_err(|e| Error::param(format!("binomial({trials}, {p}): {e}")))?
                .sample(&mut rng) as usize
        };
        current += 1 + extra;
        z.push(current);
    }
    Ok(ChainTrajectory {
        n,
        stop_time: z.len() - 1,
        z,
    })
}

/// Step path `t -> Z_{floor(n t)} / n` on `[0, 1]`; constant 1 after the stop time.
pub fn scaled_path(traj: &ChainTrajectory) -> ScaledPath {
    let n = traj.n as f64;
    let times = (0..traj.z.len()).map(|k| k as f64 / n).collect();
    let values = traj.z.iter().map(|&z| z as f64 / traj.n as f64).collect();
    ScaledPath::new(times, values, Interpolation::Step).expect("chain path is valid")
}

/// `sup_{t in [0,1]} |Y_t - min(z(t), 1)|` for the step path of `traj`.
pub fn sup_deviation_from_fluid(traj: &ChainTrajectory, c: f64) -> f64 {
    let n = traj.n;
    let nf = n as f64;
    let mut worst: f64 = 0.0;
    // on [k/n, (k+1)/n) the path is constant and the fluid curve monotone,
    // so the extremes sit at the interval ends
    for k in 0..n {
        let y = traj.z.get(k).copied().unwrap_or(n) as f64 / nf;
        let left = fluid::fluid_z(c, k as f64 / nf);
        let right = fluid::fluid_z(c, (k + 1) as f64 / nf);
        worst = worst.max((y - left).abs()).max((y - right).abs());
    }
    worst.max((1.0 - fluid::fluid_z(c, 1.0)).abs())
}

/// Exact law of the stopping time `T` over `k = 1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StopTimeDist {
    pub n: usize,
    pub c: f64,
    /// `pmf[k - 1] = P(T = k)`.
    pub pmf: Vec<f64>,
    /// Natural logarithms of the same probabilities; `-inf` where the mass underflows.
    pub log_pmf: Vec<f64>,
}

impl StopTimeDist {
    pub fn prob(&self, k: usize) -> f64 {
        if k == 0 || k > self.n {
            0.0
        } else {
            self.pmf[k - 1]
        }
    }

    pub fn mean(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(i, p)| (i + 1) as f64 * p)
            .sum()
    }

    /// CSV with header `k,pmf,log_pmf`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,pmf,log_pmf")?;
        for (i, (p, lp)) in self.pmf.iter().zip(&self.log_pmf).enumerate() {
            writeln!(w, "{},{},{}", i + 1, fmt_float(*p), fmt_float(*lp))?;
        }
        Ok(())
    }
}

/// Truncated binomial pmf: `(first_j, terms)`.
fn binomial_row(trials: usize, p: f64) -> (usize, Vec<f64>) {
    if trials == 0 {
        return (0, vec![1.0]);
    }
    if p >= 1.0 {
        return (trials, vec![1.0]);
    }
    let m = trials as f64;
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let ln_m_fact = libm::lgamma(m + 1.0);
    let log_term = |j: usize| {
        let j = j as f64;
        ln_m_fact - libm::lgamma(j + 1.0) - libm::lgamma(m - j + 1.0) + j * ln_p + (m - j) * ln_q
    };
    let mode = (((trials + 1) as f64 * p).floor() as usize).min(trials);
    let ln_max = log_term(mode);
    let ln_cut = ln_max + BINOMIAL_TRUNCATION.ln();
    let mut lo = mode;
    while lo > 0 && log_term(lo - 1) >= ln_cut {
        lo -= 1;
    }
    let mut hi = mode;
    while hi < trials && log_term(hi + 1) >= ln_cut {
        hi += 1;
    }
    // lgamma rounding leaves the row sum off by ~1e-13 at n = 2000; renormalising
    // stops that drift from compounding over the DP steps
    let mut terms: Vec<f64> = (lo..=hi).map(|j| (log_term(j) - ln_max).exp()).collect();
    let total: f64 = terms.iter().sum();
    terms.iter_mut().for_each(|t| *t /= total);
    (lo, terms)
}

/// [`exact_stop_time_distribution_with_cap`] with [`DEFAULT_DP_CAP`].
pub fn exact_stop_time_distribution(params: &ModelParams) -> Result<StopTimeDist> {
    exact_stop_time_distribution_with_cap(params, DEFAULT_DP_CAP)
}

/// Forward dynamic program over the occupation probabilities `P_k(z)`.
///
/// Each slice is kept in linear space relative to a running log scale, so
/// tail masses far below `f64::MIN_POSITIVE` keep their logarithms.
pub fn exact_stop_time_distribution_with_cap(params: &ModelParams, cap: usize) -> Result<StopTimeDist> {
    let n = params.require_n()?;
    if n > cap {
        return Err(Error::Resource(format!(
            "exact distribution requested for n = {n}, above the cap of {cap}"
        )));
    }
    let p = params.edge_probability()?;
    let rows: Vec<(usize, Vec<f64>)> = (0..n).map(|z| binomial_row(n - z - 1, p)).collect();

    let mut log_pmf = vec![f64::NEG_INFINITY; n];
    let mut current = vec![0.0; n + 1];
    let mut next = vec![0.0; n + 1];
    current[0] = 1.0;
    let mut log_scale = 0.0;
    // transient states occupy z in [lo, hi]
    let (mut lo, mut hi) = (0usize, 0usize);

    for k in 1..=n {
        next[lo.min(n)..=n].iter_mut().for_each(|v| *v = 0.0);
        let mut new_hi = 0;
        for z in lo..=hi {
            let mass = current[z];
            if mass == 0.0 {
                continue;
            }
            let (first, ref terms) = rows[z];
            let base = z + 1 + first;
            for (offset, &b) in terms.iter().enumerate() {
                next[base + offset] += mass * b;
            }
            new_hi = new_hi.max(base + terms.len() - 1);
        }
        let inflow = next[n];
        if inflow > 0.0 {
            log_pmf[k - 1] = inflow.ln() + log_scale;
        }
        next[n] = 0.0;

        let new_lo = lo + 1;
        let top = new_hi.min(n - 1);
        if new_lo > top {
            break;
        }
        let max = next[new_lo..=top].iter().fold(0.0f64, |a, &b| a.max(b));
        if max == 0.0 {
            break;
        }
        for v in &mut next[new_lo..=top] {
            *v /= max;
        }
        log_scale += max.ln();
        std::mem::swap(&mut current, &mut next);
        current[..new_lo].iter_mut().for_each(|v| *v = 0.0);
        lo = new_lo;
        hi = top;
    }

    let pmf = log_pmf.iter().map(|lp| lp.exp()).collect();
    Ok(StopTimeDist {
        n,
        c: params.c(),
        pmf,
        log_pmf,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    /// `T / n >= threshold`
    Upper,
    /// `T / n <= threshold`
    Lower,
}

impl std::str::FromStr for TailSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(TailSide::Upper),
            "lower" => Ok(TailSide::Lower),
            other => Err(Error::param(format!("side must be upper or lower, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for TailSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TailSide::Upper => "upper",
            TailSide::Lower => "lower",
        })
    }
}

/// `n * theta`, snapped to the nearest integer when it is integral up to rounding.
fn scaled_threshold(n: usize, threshold: f64) -> (f64, bool) {
    let x = n as f64 * threshold;
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        (r, true)
    } else {
        (x, false)
    }
}

/// First index `k` with `k / n >= threshold`.
pub fn upper_index(n: usize, threshold: f64) -> usize {
    let (x, integral) = scaled_threshold(n, threshold);
    if integral { x as usize } else { x.ceil() as usize }
}

/// Last index `k` with `k / n <= threshold`.
pub fn lower_index(n: usize, threshold: f64) -> usize {
    let (x, integral) = scaled_threshold(n, threshold);
    if integral { x as usize } else { x.floor() as usize }
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// Natural log of `P(T/n >= threshold)` (upper) or `P(T/n <= threshold)` (lower).
///
/// An empty tail yields `f64::NEG_INFINITY`.
pub fn tail_log_prob(dist: &StopTimeDist, threshold: f64, side: TailSide) -> Result<f64> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::param(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    let n = dist.n;
    match side {
        TailSide::Upper => {
            let first = upper_index(n, threshold).max(1);
            if first == 1 {
                return Ok(0.0);
            }
            if first > n {
                return Ok(f64::NEG_INFINITY);
            }
            Ok(log_sum_exp(&dist.log_pmf[first - 1..]))
        }
        TailSide::Lower => {
            let last = lower_index(n, threshold);
            if last >= n {
                return Ok(0.0);
            }
            if last == 0 {
                return Ok(f64::NEG_INFINITY);
            }
            Ok(log_sum_exp(&dist.log_pmf[..last]))
        }
    }
}
