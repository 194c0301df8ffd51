//! Shared parameter and path types.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Parameters of the sparse random graph `G(n, c/n)`.
///
/// `n` is absent for purely asymptotic computations (fluid limit, rates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    c: f64,
    n: Option<usize>,
}

impl ModelParams {
    /// Asymptotic parameters: only the mean degree `c`.
    pub fn asymptotic(c: f64) -> Result<Self> {
        check_c(c)?;
        Ok(Self { c, n: None })
    }

    /// Finite-size parameters. Requires `0 < c <= n` so that `c/n` is a probability,
    /// except for a single vertex, which has no pairs to connect.
    pub fn finite(n: usize, c: f64) -> Result<Self> {
        check_c(c)?;
        if n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if n > 1 && c > n as f64 {
            return Err(Error::param(format!(
                "c = {c} exceeds n = {n}; edge probability c/n must be at most 1"
            )));
        }
        Ok(Self { c, n: Some(n) })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub(crate) fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::param("operation needs a finite vertex count n"))
    }

    /// Edge probability `c/n` (capped at 1 for the single-vertex case).
    pub fn edge_probability(&self) -> Result<f64> {
        Ok((self.c / self.require_n()? as f64).min(1.0))
    }
}

pub(crate) fn check_c(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::param(format!("c must be a finite positive real, got {c}")));
    }
    Ok(())
}

/// A real number or `+inf`.
///
/// The cost function and the path rate take the value `+inf` as a legitimate
/// answer, so it is carried as a tag rather than as an IEEE infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::PosInf => None,
        }
    }

    /// Panics on `+inf`; meant for call sites that already know the value is finite.
    pub fn unwrap_finite(&self) -> f64 {
        self.finite().expect("ExtReal is +inf")
    }
}

/// Sum with `+inf` absorbing.
impl std::ops::Add for ExtReal {
    type Output = ExtReal;

    fn add(self, other: ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::PosInf,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
            (ExtReal::Finite(_), ExtReal::PosInf) => Some(Ordering::Less),
            (ExtReal::PosInf, ExtReal::Finite(_)) => Some(Ordering::Greater),
            (ExtReal::PosInf, ExtReal::PosInf) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PosInf => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    /// Right-continuous step function: value `values[i]` on `[times[i], times[i+1])`.
    Step,
    /// Piecewise-linear interpolation between grid points.
    Linear,
}

/// A nondecreasing path `t -> phi(t)` on `[0, 1]` with values in `[0, 1]` and `phi(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledPath {
    times: Vec<f64>,
    values: Vec<f64>,
    interpolation: Interpolation,
}

impl ScaledPath {
    pub fn new(times: Vec<f64>, values: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(Error::param(
                "path needs matching, non-empty time and value grids",
            ));
        }
        if times[0] != 0.0 {
            return Err(Error::param("path time grid must start at 0"));
        }
        if values[0] != 0.0 {
            return Err(Error::param("path must start at value 0"));
        }
        for w in times.windows(2) {
            if !(w[1] >= w[0]) {
                return Err(Error::param("path times must be nondecreasing"));
            }
        }
        if let Some(&t) = times.last() {
            if t > 1.0 {
                return Err(Error::param("path times must lie in [0, 1]"));
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::param(format!("path value {v} at index {i} is outside [0, 1]")));
            }
            if i > 0 && v < values[i - 1] {
                return Err(Error::param(format!(
                    "path decreases at index {i} ({} -> {v})",
                    values[i - 1]
                )));
            }
        }
        Ok(Self {
            times,
            values,
            interpolation,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    /// Evaluate the path at `t`. Beyond the last grid point the final value is held.
    pub fn value_at(&self, t: f64) -> f64 {
        let idx = self.times.partition_point(|&s| s <= t);
        if idx == 0 {
            return self.values[0];
        }
        let i = idx - 1;
        match self.interpolation {
            Interpolation::Step => self.values[i],
            Interpolation::Linear => {
                if i + 1 >= self.times.len() {
                    return self.values[i];
                }
                let (t0, t1) = (self.times[i], self.times[i + 1]);
                let (v0, v1) = (self.values[i], self.values[i + 1]);
                if t1 == t0 {
                    v1
                } else {
                    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
                }
            }
        }
    }
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive the seed of stream `stream_index` from a master seed.
///
/// SplitMix64 counter hashing: for a fixed master seed the map from index to
/// seed is a bijection, so distinct streams never share a seed.
/// `derive_seed(0, 0) == 0xa706_dd2f_4d19_7e6f`.
pub fn derive_seed(master_seed: u64, stream_index: u64) -> u64 {
    let base = mix64(master_seed.wrapping_add(GOLDEN_GAMMA));
    mix64(base.wrapping_add(GOLDEN_GAMMA.wrapping_mul(stream_index.wrapping_add(1))))
}
