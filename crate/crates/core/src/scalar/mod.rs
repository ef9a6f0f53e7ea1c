//! Exact scalars and the rational functions `g`, `f`, `h`.

mod eps;
mod functions;
mod izergin;
mod poly;
mod rational;

pub use eps::{eps_limit, EpsScalar};
pub use functions::{f, g, h, set_product, PairFn};
pub use izergin::{determinant, izergin_k};
pub use rational::Rational;
