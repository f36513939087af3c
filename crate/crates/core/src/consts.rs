//! Numerical constants shared across the crate.

/// Euler–Mascheroni constant, 0.57721566490153286060 (20 digits).
///
/// Certified at run time by [`crate::sequences::certify_euler_constant`],
/// which brackets it between `D_m - 1` and `C_m`.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_60;

/// ζ(2) = π²/6.
#[allow(clippy::excessive_precision)]
pub const ZETA2: f64 = 1.644_934_066_848_226_436_47;

/// ½·ln(2π).
#[allow(clippy::excessive_precision)]
pub const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// Relative representation error of the f64 literals above.
pub(crate) const LITERAL_REL_ERR: f64 = f64::EPSILON;

/// Even-index Bernoulli numbers B_2, B_4, …, B_20.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];
