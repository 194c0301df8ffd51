//! Large-deviation analytics: cost and Hamiltonian, extremals, rates, bounds.

pub mod bounds;
pub mod cost;
pub mod rate;
pub mod trajectory;

pub use bounds::{bound_rate, lambert_w0, sigma1_star, sigma2_star, Bound};
pub use cost::{cost_l, hamiltonian, poisson_rate};
pub use rate::{invert_exit_time, path_rate, rate_f, tail_rate, RateValue};
pub use trajectory::HamTrajectory;
