//! `G(x) = Γ(x+1)^(1/x) = e^{f(x)}` with `f(x) = ln Γ(x+1)/x`, its first two
//! derivatives, and the auxiliary series
//!
//! ```text
//! h(x) = x f′(x) = Σ_{n≥1} [ (1/x) ln(1 + x/n) - 1/(x+n) ]
//! g(x)           = Σ_{n≥1} x/(x+n)²                 = x ψ′(x) - 1/x
//! x² f″(x)       = -2 Σ_{n≥1} [ (1/x) ln(1 + x/n) - (3x+2n)/(2(x+n)²) ]
//! d(x)           = 1 - h(x)
//! ```
//!
//! Each series has a kernel-based counterpart; the two are kept separate so
//! the identities between them are genuine cross-checks. [`eval_point`]
//! takes `f″` from its series, `g` from its series and `h` from the kernel.

use std::fmt;
use std::str::FromStr;

use crate::certified::CertifiedValue;
use crate::error::{require_positive, Error, Result};
use crate::kernel::{self, EvalConfig, Route};
use crate::series::{
    log1p_minus_ratio, log1p_minus_ratio2, power_tail, sum_convex_series, u_minus_log1p, Tail, Term,
};

const EPS: f64 = f64::EPSILON;

/// Smallest argument accepted by [`eval_point`]; below it the `1/x`
/// amplification of kernel error dominates.
pub const MIN_POINT_X: f64 = 0.01;

fn e_const() -> CertifiedValue {
    CertifiedValue::rounded(std::f64::consts::E)
}

/// `f(x) = ln Γ(x+1) / x`.
pub fn f_of(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    require_positive("f_of", x)?;
    cfg.validate()?;
    let lg = kernel::ln_gamma_offset(x, 1, cfg, Route::Asymptotic);
    Ok((lg / x).retarget(cfg.target_err))
}

/// `h(x) = x f′(x)` by direct summation with an integral-test tail.
///
/// The tail integral is `∫_N^∞ D = 1 - (N/x) ln(1 + x/N)`.
pub fn h_series(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    require_positive("h_series", x)?;
    cfg.validate()?;
    let inv = 1.0 / x;
    let sum = sum_convex_series(
        1,
        |n| log1p_minus_ratio(x / n as f64).scaled(inv),
        |t| {
            let u = x / t;
            if u <= 0.25 {
                let v = -power_tail(-u, 1, |k| 1.0 / (k as f64 + 1.0));
                Tail::new(v, v)
            } else {
                Tail::new(1.0 - u.ln_1p() / u, 1.0)
            }
        },
        cfg.target_err,
        cfg.max_terms,
    );
    Ok(sum.widen(EPS * sum.value).retarget(cfg.target_err))
}

/// `h(x) = 1/x + ψ(x) - f(x)`.
pub fn h_kernel(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    let psi = kernel::digamma(x, cfg)?;
    let f = f_of(x, cfg)?;
    let h = CertifiedValue::rounded(1.0 / x) + psi - f;
    Ok(h.retarget(cfg.target_err))
}

/// `g(x) = Σ x/(x+n)²`, tail `∫_N^∞ = x/(x+N)`.
pub fn g_series(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    require_positive("g_series", x)?;
    cfg.validate()?;
    let sum = sum_convex_series(
        1,
        |n| {
            let p = x + n as f64;
            let t = x / (p * p);
            Term { value: t, scale: t }
        },
        |t| {
            let v = x / (x + t);
            Tail::new(v, v)
        },
        cfg.target_err,
        cfg.max_terms,
    );
    Ok(sum.retarget(cfg.target_err))
}

/// `g(x) = x ψ′(x) - 1/x`.
pub fn g_kernel(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    let psi1 = kernel::trigamma(x, cfg)?;
    let g = psi1 * x - CertifiedValue::rounded(1.0 / x);
    Ok(g.retarget(cfg.target_err))
}

/// `x g(x) - x + 1/2`, summed as the trapezoid defects of `t ↦ x/(x+t)²`:
///
/// ```text
/// x g(x) - x + 1/2 = Σ_{n≥0} x² / (2 (x+n)² (x+n+1)²)
/// ```
///
/// No cancellation occurs, so this stays accurate where `x g(x) - x` computed
/// from `g` would lose every digit.
pub fn g_excess_series(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    require_positive("g_excess_series", x)?;
    cfg.validate()?;
    let half_x2 = 0.5 * x * x;
    let sum = sum_convex_series(
        0,
        |n| {
            let p = x + n as f64;
            let r = x / (p * (p + 1.0));
            let t = 0.5 * r * r;
            Term { value: t, scale: t }
        },
        |t| {
            // ∫_P^∞ ds/(s²(s+1)²) = 1/P + 1/(P+1) - 2 ln(1 + 1/P)
            let w = 1.0 / (x + t);
            if w <= 0.25 {
                let v = -power_tail(-w, 3, |k| (k as f64 - 2.0) / k as f64);
                Tail::new(half_x2 * v, half_x2 * v)
            } else {
                let v = w + w / (1.0 + w) - 2.0 * w.ln_1p();
                Tail::new(half_x2 * v, half_x2 * 2.0 * w)
            }
        },
        cfg.target_err,
        cfg.max_terms,
    );
    Ok(sum.retarget(cfg.target_err))
}

/// `f″(x)` from its series; strictly negative.
///
/// The sum `Σ D(n)` equals `-x² f″(x)/2`, so it is summed to
/// `target · min(1, x²)/2` to make the radius of `f″` itself at most `target`.
/// Tail: `∫_N^∞ D = 1/2 - (N/x) ln(1 + x/N) + N/(2(x+N))`.
pub fn fpp_series(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    require_positive("fpp_series", x)?;
    cfg.validate()?;
    let inv = 1.0 / x;
    let sum_target = 0.5 * cfg.target_err * (x * x).min(1.0);
    let sum = sum_convex_series(
        1,
        |n| log1p_minus_ratio2(x / n as f64).scaled(inv),
        |t| {
            let u = x / t;
            if u <= 0.25 {
                let v = power_tail(-u, 2, |k| (k as f64 - 1.0) / (2.0 * (k as f64 + 1.0)));
                Tail::new(v, v)
            } else {
                Tail::new(0.5 - u.ln_1p() / u + 0.5 / (1.0 + u), 1.0)
            }
        },
        sum_target,
        cfg.max_terms,
    );
    let scale = -2.0 / (x * x);
    let fpp = sum
        .scale(scale)
        .widen(2.0 * EPS * (sum.value * scale).abs());
    Ok(fpp.retarget(cfg.target_err))
}

/// `f″(x) = (g + d² - 1 - h²)/x²`, the identity route. Cross-check only.
pub fn fpp_identity(x: f64, cfg: &EvalConfig) -> Result<CertifiedValue> {
    let g = g_series(x, cfg)?;
    let h = h_kernel(x, cfg)?;
    let d = 1.0 - h;
    let num = g + d.square() - 1.0 - h.square();
    Ok(num / CertifiedValue::rounded(x * x))
}

/// `R(x) = ((1+x)/x²)(x - ln(1+x))`, with `0 < R(x) < 1`.
pub fn r_factor(x: f64) -> Result<CertifiedValue> {
    require_positive("r_factor", x)?;
    let t = u_minus_log1p(x);
    let core = CertifiedValue::new(t.value, 4.0 * EPS * t.scale);
    let k = CertifiedValue::rounded((1.0 + x) / (x * x));
    Ok(core * k)
}

/// Both sides of `G(x)R(x)/(x+1) ≤ G′(x) ≤ G(x)/(x+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPrimeSandwich {
    pub lo: CertifiedValue,
    pub hi: CertifiedValue,
}

pub fn gprime_sandwich(x: f64, cfg: &EvalConfig) -> Result<GPrimeSandwich> {
    require_point(x)?;
    let f = f_of(x, cfg)?;
    Ok(sandwich_from(x, f.exp(), r_factor(x)?))
}

fn sandwich_from(x: f64, g_val: CertifiedValue, r: CertifiedValue) -> GPrimeSandwich {
    let hi = g_val / CertifiedValue::rounded(x + 1.0);
    GPrimeSandwich { lo: hi * r, hi }
}

fn require_point(x: f64) -> Result<()> {
    require_positive("eval_point", x)?;
    if x < MIN_POINT_X {
        return Err(Error::domain(
            "eval_point",
            format!("x = {x} is below the supported minimum {MIN_POINT_X}"),
        ));
    }
    Ok(())
}

/// Every derived function at one point.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPoint {
    pub x: f64,
    pub f: CertifiedValue,
    pub fp: CertifiedValue,
    pub fpp: CertifiedValue,
    pub G: CertifiedValue,
    pub Gp: CertifiedValue,
    pub Gpp: CertifiedValue,
    pub g: CertifiedValue,
    pub h: CertifiedValue,
    pub d: CertifiedValue,
    pub A: CertifiedValue,
    pub a_of_x: CertifiedValue,
    pub r_factor: CertifiedValue,
}

impl GPoint {
    pub fn get(&self, field: Field) -> CertifiedValue {
        match field {
            Field::F => self.f,
            Field::Fp => self.fp,
            Field::Fpp => self.fpp,
            Field::BigG => self.G,
            Field::BigGp => self.Gp,
            Field::BigGpp => self.Gpp,
            Field::G => self.g,
            Field::H => self.h,
            Field::D => self.d,
            Field::BigA => self.A,
            Field::A => self.a_of_x,
            Field::R => self.r_factor,
        }
    }

    /// `G(x)R(x)/(x+1)` and `G(x)/(x+1)` from the already-evaluated fields.
    pub fn sandwich(&self) -> GPrimeSandwich {
        sandwich_from(self.x, self.G, self.r_factor)
    }
}

/// Fills every [`GPoint`] field at `x ≥ 0.01`.
#[allow(non_snake_case)]
pub fn eval_point(x: f64, cfg: &EvalConfig) -> Result<GPoint> {
    require_point(x)?;
    cfg.validate()?;
    let f = f_of(x, cfg)?;
    let h = h_kernel(x, cfg)?;
    let fp = h / x;
    let fpp = fpp_series(x, cfg)?;
    let g = g_series(x, cfg)?;
    let d = 1.0 - h;
    let G = f.exp();
    let Gp = fp * G;
    let Gpp = (fpp + fp.square()) * G;
    let A = e_const() * Gp;
    let a_of_x = (A - 1.0) * x;
    let r = r_factor(x)?;
    Ok(GPoint {
        x,
        f,
        fp,
        fpp,
        G,
        Gp,
        Gpp,
        g,
        h,
        d,
        A,
        a_of_x,
        r_factor: r,
    })
}

/// Names accepted for the fields of a [`GPoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    F,
    Fp,
    Fpp,
    BigG,
    BigGp,
    BigGpp,
    G,
    H,
    D,
    BigA,
    A,
    R,
}

impl Field {
    pub const ALL: [Field; 12] = [
        Field::F,
        Field::Fp,
        Field::Fpp,
        Field::BigG,
        Field::BigGp,
        Field::BigGpp,
        Field::G,
        Field::H,
        Field::D,
        Field::BigA,
        Field::A,
        Field::R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Field::F => "f",
            Field::Fp => "fp",
            Field::Fpp => "fpp",
            Field::BigG => "G",
            Field::BigGp => "Gp",
            Field::BigGpp => "Gpp",
            Field::G => "g",
            Field::H => "h",
            Field::D => "d",
            Field::BigA => "A",
            Field::A => "a",
            Field::R => "R",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Field::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::domain("Field", format!("unknown field `{s}`")))
    }
}
