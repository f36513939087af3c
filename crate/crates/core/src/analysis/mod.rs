//! Root localization, verification suites and limit diagnostics.

pub mod limits;
pub mod report;
pub mod roots;
pub mod suites;

pub use limits::{limit_diagnostics, verify_limits, LimitQuantity, LimitRow};
pub use report::{CheckRecord, SuiteReport, Verdict};
pub use roots::{bisect, d5, d5_prime, find_root_a, find_root_c, Bracket, RootBracket, RootTarget};
