//! Certified evaluation of `G(x) = Γ(x+1)^(1/x)` and its first two
//! derivatives, the integer sequences built from `n!^(1/n)`, and verification
//! suites for the inequalities and identities they satisfy.
//!
//! Every numeric result is a [`CertifiedValue`]: a value with an absolute
//! error radius covering series truncation and floating-point rounding.

pub mod analysis;
pub mod certified;
pub mod consts;
pub mod error;
pub mod gfun;
pub mod kernel;
pub mod sequences;
mod series;

pub use certified::CertifiedValue;
pub use error::{Error, Result};
pub use gfun::{eval_point, Field, GPoint};
pub use kernel::{EvalConfig, KernelRow, Route};
