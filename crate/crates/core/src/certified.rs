//! Real values carrying an absolute error radius.
//!
//! Every operation widens the radius by first-order propagation of the
//! operands' radii plus one rounding unit of the result, so the true value of
//! an expression stays inside `[value - err, value + err]` as long as the
//! inputs were enclosures.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

const EPS: f64 = f64::EPSILON;

/// A real number paired with a rigorous absolute-error radius.
///
/// `degraded` marks values whose radius exceeds the accuracy that was
/// requested (term budget exhausted, or the floating-point floor is above the
/// target). The radius is still honest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue {
    pub value: f64,
    pub err: f64,
    pub degraded: bool,
}

impl CertifiedValue {
    pub fn new(value: f64, err: f64) -> Self {
        debug_assert!(value.is_finite(), "non-finite value {value}");
        debug_assert!(err >= 0.0 && err.is_finite(), "bad radius {err}");
        Self {
            value,
            err,
            degraded: false,
        }
    }

    /// A value known to be exactly representable.
    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    /// A value that is correct to within one rounding of itself.
    pub fn rounded(value: f64) -> Self {
        Self::new(value, EPS * value.abs())
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    /// True when the whole enclosure lies strictly inside `(lo, hi)`.
    pub fn strictly_inside(&self, lo: f64, hi: f64) -> bool {
        lo < self.lo() && self.hi() < hi
    }

    pub fn widen(mut self, extra: f64) -> Self {
        debug_assert!(extra >= 0.0);
        self.err += extra;
        self
    }

    pub fn mark_degraded(mut self, flag: bool) -> Self {
        self.degraded |= flag;
        self
    }

    /// Sets the degraded flag to exactly `err > target`.
    pub fn retarget(mut self, target: f64) -> Self {
        self.degraded = self.err > target;
        self
    }

    /// Marks the value degraded when its radius exceeds `target`.
    pub fn against_target(self, target: f64) -> Self {
        let miss = self.err > target;
        self.mark_degraded(miss)
    }

    pub fn scale(self, k: f64) -> Self {
        let value = self.value * k;
        Self {
            value,
            err: self.err * k.abs() + EPS * value.abs(),
            degraded: self.degraded,
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        CertifiedValue::exact(1.0) / self
    }

    /// `exp(v ± e) = exp(v) ± exp(v)(e + e²)` for `e < 1/2`, and
    /// `exp(v)·expm1(e)` beyond that.
    pub fn exp(self) -> Self {
        let value = self.value.exp();
        let e = self.err;
        let spread = if e < 0.5 { e + e * e } else { e.exp_m1() };
        Self {
            value,
            err: value * spread + 2.0 * EPS * value,
            degraded: self.degraded,
        }
    }

    fn combine(value: f64, err: f64, a: &Self, b: &Self) -> Self {
        Self {
            value,
            err: err + EPS * value.abs(),
            degraded: a.degraded || b.degraded,
        }
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.2e}", self.value, self.err)
    }
}

impl From<f64> for CertifiedValue {
    fn from(value: f64) -> Self {
        CertifiedValue::exact(value)
    }
}

impl Add for CertifiedValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::combine(self.value + rhs.value, self.err + rhs.err, &self, &rhs)
    }
}

impl Sub for CertifiedValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::combine(self.value - rhs.value, self.err + rhs.err, &self, &rhs)
    }
}

impl Mul for CertifiedValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let err = self.value.abs() * rhs.err + rhs.value.abs() * self.err + self.err * rhs.err;
        Self::combine(self.value * rhs.value, err, &self, &rhs)
    }
}

impl Div for CertifiedValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let value = self.value / rhs.value;
        let floor = rhs.value.abs() - rhs.err;
        // Radius of the quotient of two intervals, valid while 0 ∉ rhs.
        let err = if floor > 0.0 {
            (self.err + value.abs() * rhs.err) / floor
        } else {
            f64::MAX
        };
        let mut out = Self::combine(value, err, &self, &rhs);
        out.degraded |= floor <= 0.0;
        out
    }
}

impl Neg for CertifiedValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            ..self
        }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<f64> for CertifiedValue {
            type Output = CertifiedValue;
            fn $method(self, rhs: f64) -> CertifiedValue {
                $tr::$method(self, CertifiedValue::exact(rhs))
            }
        }
        impl $tr<CertifiedValue> for f64 {
            type Output = CertifiedValue;
            fn $method(self, rhs: CertifiedValue) -> CertifiedValue {
                $tr::$method(CertifiedValue::exact(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_widens_radius() {
        let a = CertifiedValue::new(1.0, 1e-10);
        let b = CertifiedValue::new(2.0, 2e-10);
        let c = a + b;
        assert_eq!(c.value, 3.0);
        assert!(c.err >= 3e-10);
    }

    #[test]
    fn product_encloses_corner_values() {
        let a = CertifiedValue::new(1.5, 0.01);
        let b = CertifiedValue::new(-2.0, 0.02);
        let p = a * b;
        for x in [a.lo(), a.hi()] {
            for y in [b.lo(), b.hi()] {
                assert!(p.contains(x * y), "{} not in {p}", x * y);
            }
        }
    }

    #[test]
    fn quotient_encloses_corner_values() {
        let a = CertifiedValue::new(1.0, 0.05);
        let b = CertifiedValue::new(4.0, 0.1);
        let q = a / b;
        for x in [a.lo(), a.hi()] {
            for y in [b.lo(), b.hi()] {
                assert!(q.contains(x / y));
            }
        }
    }

    #[test]
    fn division_by_interval_containing_zero_is_degraded() {
        let q = CertifiedValue::exact(1.0) / CertifiedValue::new(0.1, 0.2);
        assert!(q.degraded);
    }

    #[test]
    fn exp_encloses_endpoints() {
        for e in [1e-12, 1e-3, 0.3, 0.7, 2.0] {
            let v = CertifiedValue::new(0.25, e);
            let out = v.exp();
            assert!(out.contains(v.lo().exp()));
            assert!(out.contains(v.hi().exp()));
        }
    }

    #[test]
    fn target_check_sets_flag() {
        let v = CertifiedValue::new(1.0, 1e-9);
        assert!(v.against_target(1e-12).degraded);
        assert!(!v.against_target(1e-6).degraded);
    }
}
