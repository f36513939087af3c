//! Shared inputs for the route benchmarks.

/// Evaluation points spanning small, moderate and large arguments.
pub const POINTS: [f64; 4] = [0.5, 7.5, 100.0, 10_000.0];
