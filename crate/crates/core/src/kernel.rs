//! Certified ln Γ, digamma ψ = (ln Γ)′ and trigamma ψ′ = (ln Γ)″ on x > 0.
//!
//! Arguments below `shift_threshold` are moved up with the recurrences
//!
//! ```text
//! ln Γ(x) = ln Γ(x+k) - Σ_{j<k} ln(x+j)
//! ψ(x)    = ψ(x+k)    - Σ_{j<k} 1/(x+j)
//! ψ′(x)   = ψ′(x+k)   + Σ_{j<k} 1/(x+j)²
//! ```
//!
//! and evaluated at the shifted point by the asymptotic route; the series
//! route needs no shift. The two routes are:
//!
//! * [`Route::Asymptotic`]: the Stirling series with Bernoulli coefficients.
//!   For real arguments the Stirling series of ln Γ, ψ and ψ′ is enveloping:
//!   the remainder after any number of terms has the sign of, and is smaller
//!   in magnitude than, the first omitted term (Whittaker & Watson §12.33;
//!   DLMF 5.11.ii). That first omitted term is the truncation radius.
//! * [`Route::Series`]: the Weierstrass-product series
//!   `ln Γ(x) = -γx - ln x + Σ (x/n - ln(1+x/n))`, its derivative
//!   `ψ(x) = -γ - 1/x + Σ (1/n - 1/(x+n))` and `ψ′(x) = Σ_{n≥0} 1/(x+n)²`,
//!   summed with an integral-test tail bracket.
//!
//! The asymptotic route is the default; the series route is the independent
//! cross-check.

use crate::certified::CertifiedValue;
use crate::consts::{BERNOULLI_EVEN, EULER_GAMMA, HALF_LN_2PI, LITERAL_REL_ERR};
use crate::error::{require_positive, Error, Result};
use crate::series::{power_tail, sum_convex_series, u_minus_log1p, Tail, Term};

const EPS: f64 = f64::EPSILON;

/// B_22, needed for the remainder bound when all tabulated terms are used.
const BERNOULLI_22: f64 = 854_513.0 / 138.0;

/// Accuracy and budget knobs shared by all series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Requested absolute error radius.
    pub target_err: f64,
    /// Maximum number of series terms per evaluation.
    pub max_terms: u64,
    /// Arguments below this are shifted up by the recurrences.
    pub shift_threshold: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_err: 1e-12,
            max_terms: 10_000_000,
            shift_threshold: 40.0,
        }
    }
}

impl EvalConfig {
    pub fn with_target_err(mut self, target_err: f64) -> Self {
        self.target_err = target_err;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_err > 0.0 && self.target_err.is_finite()) {
            return Err(Error::domain("EvalConfig", "target_err must be > 0"));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("EvalConfig", "max_terms must be >= 1"));
        }
        if !(self.shift_threshold > 0.0 && self.shift_threshold.is_finite()) {
            return Err(Error::domain("EvalConfig", "shift_threshold must be > 0"));
        }
        Ok(())
    }
}

/// Evaluation route at the shifted argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Asymptotic,
    Series,
}

/// `(x, ln Γ(x), ψ(x), ψ′(x))` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRow {
    pub x: f64,
    pub ln_gamma: CertifiedValue,
    pub psi: CertifiedValue,
    pub psi1: CertifiedValue,
}

impl KernelRow {
    pub fn evaluate(x: f64, cfg: &EvalConfig) -> Result<Self> {
        Ok(Self {
            x,
            ln_gamma: ln_gamma(x, cfg)?,
            psi: digamma(x, cfg)?,
            psi1: trigamma(x, cfg)?,
        })
    }
}

pub fn ln_gamma(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    ln_gamma_via(x, cfg, Route::Asymptotic)
}

pub fn ln_gamma_via(x: f64, cfg: &EvalConfig, route: Route) -> Result<CertifiedValue> {
    require_positive("ln_gamma", x)?;
    cfg.validate()?;
    Ok(ln_gamma_offset(x, 0, cfg, route))
}

pub fn digamma(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    digamma_via(x, cfg, Route::Asymptotic)
}

pub fn digamma_via(x: f64, cfg: &EvalConfig, route: Route) -> Result<CertifiedValue> {
    require_positive("digamma", x)?;
    cfg.validate()?;
    let shift = Shift::plan(x, 0, cfg, route);
    let at_z = match route {
        Route::Asymptotic => stirling_digamma(shift.z),
        Route::Series => series_digamma(shift.z, cfg),
    };
    // ψ′(z) ≤ 1/z + 1/z² bounds the effect of the rounded shift point.
    let perturb = shift.z_err * (1.0 / shift.z + 1.0 / (shift.z * shift.z));
    let mut acc = at_z.widen(perturb);
    for arg in shift.args() {
        acc = acc - CertifiedValue::rounded(1.0 / arg).widen(EPS / arg);
    }
    Ok(acc.retarget(cfg.target_err))
}

pub fn trigamma(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    trigamma_via(x, cfg, Route::Asymptotic)
}

pub fn trigamma_via(x: f64, cfg: &EvalConfig, route: Route) -> Result<CertifiedValue> {
    require_positive("trigamma", x)?;
    cfg.validate()?;
    Ok(trigamma_offset(x, cfg, route).retarget(cfg.target_err))
}

/// Closed-form two-sided bound
/// `1/x + 1/(2x²) + 1/(6(x+1/14)³) < ψ′(x) < 1/x + 1/(2x²) + 1/(6x³)`.
pub fn trigamma_enclosure(x: f64) -> Result<(f64, f64)> {
    require_positive("trigamma_enclosure", x)?;
    let base = 1.0 / x + 1.0 / (2.0 * x * x);
    let shifted = x + 1.0 / 14.0;
    let lo = base + 1.0 / (6.0 * shifted * shifted * shifted);
    let hi = base + 1.0 / (6.0 * x * x * x);
    Ok((lo, hi))
}

/// `x²ψ′(x) - x - 1/2`, evaluated without the cancellation of the direct form
/// once `x` is past the shift threshold.
pub fn trigamma_excess(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    require_positive("trigamma_excess", x)?;
    cfg.validate()?;
    let out = if x >= cfg.shift_threshold {
        // z²ψ′(z) - z - 1/2 = Σ_{k≥1} B_2k / z^(2k-1)
        bernoulli_series(|k, b| b / x.powi(2 * k as i32 - 1), 0.0)
    } else {
        let psi1 = trigamma_offset(x, cfg, Route::Asymptotic);
        let x2 = CertifiedValue::rounded(x * x);
        x2 * psi1 - (x + 0.5)
    };
    Ok(out.retarget(cfg.target_err))
}

/// ln(n!) for any `n ≥ 0`, without forming n! for `n > 20`.
pub fn ln_factorial(n: u64) -> CertifiedValue {
    if n <= 1 {
        return CertifiedValue::exact(0.0);
    }
    if n <= 20 {
        let exact: u64 = (2..=n).product();
        // One rounding converting to f64, one in ln.
        let v = (exact as f64).ln();
        return CertifiedValue::new(v, 2.0 * EPS * v + EPS);
    }
    let cfg = EvalConfig::default();
    ln_gamma_offset(n as f64, 1, &cfg, Route::Asymptotic).retarget(cfg.target_err)
}

/// ln Γ(x + offset) with `x + offset` treated exactly.
pub(crate) fn ln_gamma_offset(
    x: f64,
    offset: u32,
    cfg: &EvalConfig,
    route: Route,
) -> CertifiedValue {
    let shift = Shift::plan(x, offset, cfg, route);
    let at_z = match route {
        Route::Asymptotic => stirling_ln_gamma(shift.z),
        Route::Series => series_ln_gamma(shift.z, cfg),
    };
    // |ψ(z)| ≤ |ln z| + 1/z for z > 0.
    let perturb = shift.z_err * (shift.z.ln().abs() + 1.0 / shift.z);
    let mut logs = CertifiedValue::exact(0.0);
    for arg in shift.args() {
        let l = arg.ln();
        logs = logs + CertifiedValue::new(l, 2.0 * EPS * l.abs() + EPS);
    }
    (at_z.widen(perturb) - logs).retarget(cfg.target_err)
}

fn trigamma_offset(x: f64, cfg: &EvalConfig, route: Route) -> CertifiedValue {
    let shift = Shift::plan(x, 0, cfg, route);
    let at_z = match route {
        Route::Asymptotic => stirling_trigamma(shift.z),
        Route::Series => series_trigamma(shift.z, cfg),
    };
    // |ψ″(z)| ≤ 1/z² + 1/z³.
    let z = shift.z;
    let perturb = shift.z_err * (1.0 / (z * z) + 1.0 / (z * z * z));
    let mut acc = at_z.widen(perturb);
    for arg in shift.args() {
        let t = 1.0 / (arg * arg);
        acc = acc + CertifiedValue::new(t, 4.0 * EPS * t);
    }
    acc
}

/// The argument actually evaluated after shifting, and the rounding it carries.
struct Shift {
    x: f64,
    first: u32,
    steps: u32,
    z: f64,
    z_err: f64,
}

impl Shift {
    /// Only the asymptotic route needs a large argument; the series route is
    /// most accurate where its terms are smallest, at the original point.
    fn plan(x: f64, offset: u32, cfg: &EvalConfig, route: Route) -> Shift {
        let start = x + offset as f64;
        let steps = if route == Route::Asymptotic && start < cfg.shift_threshold {
            (cfg.shift_threshold - start).ceil() as u32
        } else {
            0
        };
        let total = offset + steps;
        let z = x + total as f64;
        let z_err = if total == 0 { 0.0 } else { EPS * z };
        Shift {
            x,
            first: offset,
            steps,
            z,
            z_err,
        }
    }

    /// The (rounded) arguments `x + j` for `offset ≤ j < offset + steps`.
    fn args(&self) -> impl Iterator<Item = f64> + '_ {
        (self.first..self.first + self.steps).map(move |j| self.x + j as f64)
    }
}

/// `Σ_{k=1}^{K} term(k, B_2k)` truncated where the terms bottom out, with the
/// first omitted term as truncation radius. `base` is the magnitude of
/// the non-series part, used for the rounding allowance.
fn bernoulli_series(term: impl Fn(u32, f64) -> f64, base: f64) -> CertifiedValue {
    let mut terms = [0.0f64; 11];
    for k in 1..=10u32 {
        terms[k as usize - 1] = term(k, BERNOULLI_EVEN[k as usize - 1]);
    }
    terms[10] = term(11, BERNOULLI_22);
    let mut sum = 0.0;
    let mut abs = 0.0;
    let mut remainder = terms[10].abs();
    for k in 0..10 {
        sum += terms[k];
        abs += terms[k].abs();
        let next = terms[k + 1].abs();
        let negligible = next <= 1e-3 * EPS * (base + sum).abs();
        let diverging = k + 2 < terms.len() && terms[k + 2].abs() > next;
        if negligible || diverging {
            remainder = next;
            break;
        }
    }
    let value = base + sum;
    CertifiedValue::new(value, remainder + 4.0 * EPS * (base.abs() + abs))
}

/// ln Γ(z) = (z - 1/2)(ln z - 1) - 1/2 + ½ln 2π + Σ B_2k / (2k(2k-1) z^(2k-1)).
fn stirling_ln_gamma(z: f64) -> CertifiedValue {
    let lz = z.ln();
    let lead = (z - 0.5) * (lz - 1.0);
    let base = lead - 0.5 + HALF_LN_2PI;
    let series = bernoulli_series(
        |k, b| {
            let k2 = 2.0 * k as f64;
            b / (k2 * (k2 - 1.0) * z.powi(2 * k as i32 - 1))
        },
        base,
    );
    // The rounding of ln z is amplified by (z - 1/2).
    let extra =
        4.0 * EPS * (lead.abs() + 0.5 + HALF_LN_2PI) + 2.0 * EPS * (z - 0.5).abs() * lz.abs();
    series.widen(extra)
}

/// ψ(z) = ln z - 1/(2z) - Σ B_2k / (2k z^2k).
fn stirling_digamma(z: f64) -> CertifiedValue {
    let base = z.ln() - 0.5 / z;
    let series = bernoulli_series(|k, b| -b / (2.0 * k as f64 * z.powi(2 * k as i32)), base);
    series.widen(4.0 * EPS * (z.ln().abs() + 0.5 / z))
}

/// ψ′(z) = 1/z + 1/(2z²) + Σ B_2k / z^(2k+1).
fn stirling_trigamma(z: f64) -> CertifiedValue {
    let base = 1.0 / z + 0.5 / (z * z);
    let series = bernoulli_series(|k, b| b / z.powi(2 * k as i32 + 1), base);
    series.widen(4.0 * EPS * base)
}

fn euler_gamma() -> CertifiedValue {
    CertifiedValue::new(EULER_GAMMA, LITERAL_REL_ERR * EULER_GAMMA)
}

/// ∫_t^∞ (z/s - ln(1 + z/s)) ds = t[(1+u)ln(1+u) - u], u = z/t.
fn ln_gamma_tail(z: f64, t: f64) -> Tail {
    let u = z / t;
    if u <= 0.25 {
        let k_series = power_tail(-u, 2, |k| 1.0 / (k as f64 * (k as f64 - 1.0)));
        Tail::new(t * k_series, t * k_series)
    } else {
        let a = (1.0 + u) * u.ln_1p();
        Tail::new(t * (a - u), t * a)
    }
}

fn series_ln_gamma(z: f64, cfg: &EvalConfig) -> CertifiedValue {
    let sum = sum_convex_series(
        1,
        |n| u_minus_log1p(z / n as f64),
        |t| ln_gamma_tail(z, t),
        0.5 * cfg.target_err,
        cfg.max_terms,
    );
    let lz = z.ln();
    sum - euler_gamma() * z - CertifiedValue::new(lz, 2.0 * EPS * lz.abs())
}

fn series_digamma(z: f64, cfg: &EvalConfig) -> CertifiedValue {
    let sum = sum_convex_series(
        1,
        |n| {
            let n = n as f64;
            let t = z / (n * (n + z));
            Term { value: t, scale: t }
        },
        |t| {
            let l = (z / t).ln_1p();
            Tail::new(l, l)
        },
        0.5 * cfg.target_err,
        cfg.max_terms,
    );
    sum - euler_gamma() - CertifiedValue::rounded(1.0 / z)
}

fn series_trigamma(z: f64, cfg: &EvalConfig) -> CertifiedValue {
    sum_convex_series(
        0,
        |n| {
            let p = z + n as f64;
            let t = 1.0 / (p * p);
            Term { value: t, scale: t }
        },
        |t| {
            let v = 1.0 / (z + t);
            Tail::new(v, v)
        },
        0.5 * cfg.target_err,
        cfg.max_terms,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::ZETA2;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn ln_gamma_at_integers() {
        let v = ln_gamma(1.0, &cfg()).unwrap();
        assert!(v.contains(0.0), "{v}");
        assert!(v.err <= 1e-12);
        let v = ln_gamma(5.0, &cfg()).unwrap();
        assert!((v.value - 24f64.ln()).abs() <= v.err + 1e-15, "{v}");
        assert!(v.err <= 1e-12);
    }

    #[test]
    fn ln_gamma_half_is_log_sqrt_pi() {
        let want = 0.5 * std::f64::consts::PI.ln();
        for route in [Route::Asymptotic, Route::Series] {
            let v = ln_gamma_via(0.5, &cfg(), route).unwrap();
            assert!((v.value - want).abs() <= v.err + 1e-15, "{route:?} {v}");
            assert!(v.err <= 1e-12, "{route:?} {v}");
        }
    }

    #[test]
    fn digamma_at_one_and_two() {
        for route in [Route::Asymptotic, Route::Series] {
            let v = digamma_via(1.0, &cfg(), route).unwrap();
            assert!(v.contains(-EULER_GAMMA) || (v.value + EULER_GAMMA).abs() < 1e-15);
            let w = digamma_via(2.0, &cfg(), route).unwrap();
            assert!(
                (w.value - (1.0 - EULER_GAMMA)).abs() <= w.err + 1e-15,
                "{w}"
            );
        }
    }

    #[test]
    fn trigamma_at_one_is_zeta2() {
        for route in [Route::Asymptotic, Route::Series] {
            let v = trigamma_via(1.0, &cfg(), route).unwrap();
            assert!((v.value - ZETA2).abs() <= v.err + 1e-15, "{route:?} {v}");
            assert!(v.err <= 1e-12);
        }
    }

    #[test]
    fn routes_agree_within_radii() {
        for &x in &[0.01, 0.3, 1.7, 12.5, 39.9, 40.0, 123.4, 5000.0] {
            let c = cfg();
            let pairs = [
                (
                    ln_gamma_via(x, &c, Route::Asymptotic),
                    ln_gamma_via(x, &c, Route::Series),
                ),
                (
                    digamma_via(x, &c, Route::Asymptotic),
                    digamma_via(x, &c, Route::Series),
                ),
                (
                    trigamma_via(x, &c, Route::Asymptotic),
                    trigamma_via(x, &c, Route::Series),
                ),
            ];
            for (a, s) in pairs {
                let (a, s) = (a.unwrap(), s.unwrap());
                assert!(
                    (a.value - s.value).abs() <= a.err + s.err,
                    "x={x}: {a} vs {s}"
                );
            }
        }
    }

    #[test]
    fn enclosure_at_one() {
        let (lo, hi) = trigamma_enclosure(1.0).unwrap();
        let want_lo = 1.5 + 1.0 / (6.0 * (15.0f64 / 14.0).powi(3));
        assert!((lo - want_lo).abs() < 1e-15);
        assert!((hi - (1.5 + 1.0 / 6.0)).abs() < 1e-15);
        assert!(lo < ZETA2 && ZETA2 < hi);
    }

    #[test]
    fn enclosure_width_shrinks() {
        let (lo, hi) = trigamma_enclosure(100.0).unwrap();
        assert!(hi > lo && hi - lo < 1e-7);
    }

    #[test]
    fn trigamma_inside_enclosure() {
        for &x in &[0.5, 1.0, 2.0, 10.0, 100.0] {
            let (lo, hi) = trigamma_enclosure(x).unwrap();
            let v = trigamma(x, &cfg()).unwrap();
            assert!(v.strictly_inside(lo, hi), "x={x}: {v} vs ({lo}, {hi})");
        }
    }

    #[test]
    fn excess_matches_direct_form_at_moderate_x() {
        for &x in &[0.25, 3.0, 39.0, 41.0, 80.0] {
            let e = trigamma_excess(x, &cfg()).unwrap();
            let t = trigamma_via(x, &cfg().with_target_err(1e-17), Route::Series).unwrap();
            let direct = x * x * t.value - x - 0.5;
            let tol = e.err + x * x * t.err + 4.0 * f64::EPSILON * x * x * t.value;
            assert!((e.value - direct).abs() <= tol, "x={x}: {e} vs {direct}");
        }
    }

    #[test]
    fn excess_leading_behaviour() {
        // 1/(6x) - 1/(30x³) + …
        let x = 1e5;
        let e = trigamma_excess(x, &cfg()).unwrap();
        let want = 1.0 / (6.0 * x) - 1.0 / (30.0 * x * x * x);
        assert!((e.value - want).abs() < 1e-25, "{e}");
    }

    #[test]
    fn ln_factorial_small_and_large() {
        assert_eq!(ln_factorial(0).value, 0.0);
        assert!((ln_factorial(4).value - 24f64.ln()).abs() < 1e-15);
        let v = ln_factorial(170);
        assert!(v.value.is_finite() && v.value > 700.0);
        let exact20: f64 = (1..=20u64).map(|k| (k as f64).ln()).sum();
        assert!((ln_factorial(20).value - exact20).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_arguments() {
        for x in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(ln_gamma(x, &cfg()), Err(Error::Domain { .. })));
            assert!(digamma(x, &cfg()).is_err());
            assert!(trigamma(x, &cfg()).is_err());
            assert!(trigamma_enclosure(x).is_err());
        }
        let bad = EvalConfig {
            target_err: 0.0,
            ..cfg()
        };
        assert!(ln_gamma(1.0, &bad).is_err());
    }

    #[test]
    fn degraded_when_budget_too_small() {
        let tight = cfg().with_max_terms(20);
        let v = trigamma_via(0.5, &tight, Route::Series).unwrap();
        assert!(v.degraded);
        assert!((v.value - trigamma(0.5, &cfg()).unwrap().value).abs() <= v.err + 1e-12);
    }
}
