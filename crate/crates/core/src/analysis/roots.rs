//! The threshold function `D(x) = (3x-1)/6 - (ln(1+x))²`, its derivative,
//! and bisection for their zeros `a` (of `D′`) and `c` (of `D`).
//!
//! `D′` is strictly decreasing on `(0, e-1]` and strictly increasing on
//! `[e-1, ∞)`, so `a` is its only zero past `e - 1`, with
//! `ln(1+a)/(1+a) = 1/4`. `D` increases on `[a, ∞)`; `c` is its zero there,
//! and `G″ < 0` for every `x > c`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{require_positive, Error, Result};

const EPS: f64 = f64::EPSILON;

/// `D(x) = (3x-1)/6 - (ln(1+x))²`.
pub fn d5(x: f64) -> Result<f64> {
    require_positive("d5", x)?;
    Ok(d5_value(x))
}

/// `D′(x) = 1/2 - 2 ln(1+x)/(1+x)`.
pub fn d5_prime(x: f64) -> Result<f64> {
    require_positive("d5_prime", x)?;
    Ok(d5_prime_value(x))
}

fn d5_value(x: f64) -> f64 {
    let l = x.ln_1p();
    (3.0 * x - 1.0) / 6.0 - l * l
}

fn d5_prime_value(x: f64) -> f64 {
    0.5 - 2.0 * x.ln_1p() / (1.0 + x)
}

/// Rounding radius of [`d5`], a few ulps of its largest part.
fn d5_radius(x: f64) -> f64 {
    let l = x.ln_1p();
    8.0 * EPS * ((3.0 * x + 1.0) / 6.0 + l * l)
}

fn d5_prime_radius(x: f64) -> f64 {
    8.0 * EPS * (0.5 + 2.0 * x.ln_1p() / (1.0 + x))
}

/// A sign-changing bracket produced by [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub iterations: u32,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Halves `[lo, hi]` until its width is below `tol`, keeping a sign change.
///
/// Stops early if the midpoint can no longer be separated from an endpoint or
/// lands on an exact zero, which the current bracket then contains.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Bracket> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::precondition(
            "bisect",
            format!("tol must be > 0, got {tol}"),
        ));
    }
    if lo.partial_cmp(&hi) != Some(Ordering::Less) {
        return Err(Error::precondition(
            "bisect",
            format!("need lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if (f_lo * f_hi).partial_cmp(&0.0) != Some(Ordering::Less) {
        return Err(Error::precondition(
            "bisect",
            format!("no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"),
        ));
    }
    let mut iterations = 0;
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        iterations += 1;
        if f_mid == 0.0 {
            break;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(Bracket {
        lo,
        hi,
        f_lo,
        f_hi,
        iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootTarget {
    /// Zero of `D′` past `e - 1`.
    RootA,
    /// Zero of `D` past `a`.
    RootC,
}

impl RootTarget {
    pub fn name(self) -> &'static str {
        match self {
            RootTarget::RootA => "root_a",
            RootTarget::RootC => "root_c",
        }
    }

    /// Open interval the root is known to lie in from sign evaluations at
    /// integers.
    pub fn coarse_range(self) -> (f64, f64) {
        match self {
            RootTarget::RootA => (7.0, 8.0),
            RootTarget::RootC => (17.0, 18.0),
        }
    }

    /// Five-decimal open interval for the root.
    pub fn fine_range(self) -> (f64, f64) {
        match self {
            RootTarget::RootA => (7.613_16, 7.613_17),
            RootTarget::RootC => (17.116_50, 17.116_51),
        }
    }
}

impl fmt::Display for RootTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Bracket width at or below which [`RootBracket::within_fine_range`] is
/// expected to hold.
pub const FINE_WIDTH: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub target: RootTarget,
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

impl RootBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn inside(&self, (lo, hi): (f64, f64)) -> bool {
        lo < self.lo && self.hi < hi
    }

    pub fn within_coarse_range(&self) -> bool {
        self.inside(self.target.coarse_range())
    }

    pub fn within_fine_range(&self) -> bool {
        self.inside(self.target.fine_range())
    }

    /// The containment every bracket must satisfy: the coarse range always,
    /// and the fine range once the bracket is at most [`FINE_WIDTH`] wide.
    pub fn containment_holds(&self) -> bool {
        self.within_coarse_range() && (self.width() > FINE_WIDTH || self.within_fine_range())
    }
}

/// Bisection of `f` with the sign change confirmed beyond rounding at both
/// ends of the final bracket.
fn certified_root<F, R>(
    target: RootTarget,
    f: F,
    radius: R,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<RootBracket>
where
    F: Fn(f64) -> f64,
    R: Fn(f64) -> f64,
{
    let b = bisect(&f, lo, hi, tol)?;
    if b.f_lo.abs() <= radius(b.lo) || b.f_hi.abs() <= radius(b.hi) {
        return Err(Error::precondition(
            "find_root",
            format!(
                "sign change on [{}, {}] not resolved beyond rounding; tol {tol} too small",
                b.lo, b.hi
            ),
        ));
    }
    Ok(RootBracket {
        target,
        lo: b.lo,
        hi: b.hi,
        iterations: b.iterations,
    })
}

/// Brackets `a`, the zero of `D′` in `(7, 8)`.
pub fn find_root_a(tol: f64) -> Result<RootBracket> {
    certified_root(
        RootTarget::RootA,
        d5_prime_value,
        d5_prime_radius,
        7.0,
        8.0,
        tol,
    )
}

/// Brackets `c`, the zero of `D` on `[a, 18]`, starting from the upper end
/// of the bracket for `a`.
pub fn find_root_c(tol: f64) -> Result<RootBracket> {
    let a = find_root_a(tol.min(1e-3))?;
    certified_root(RootTarget::RootC, d5_value, d5_radius, a.hi, 18.0, tol)
}
