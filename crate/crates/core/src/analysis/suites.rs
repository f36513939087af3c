//! Verification suites. Each walks a grid or an integer range, checks one
//! family of inequalities or identities with certified radii, and returns a
//! [`SuiteReport`]. Grids are split across threads; partial reports are
//! merged back in grid order, so the output does not depend on scheduling.

use rayon::prelude::*;

use super::report::{CheckRecord, SuiteReport, Verdict};
use super::roots::{d5_prime, find_root_c};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::gfun::{self, eval_point};
use crate::kernel::{self, EvalConfig};
use crate::sequences::{self, HarmonicRow, HarmonicRows};

const EPS: f64 = f64::EPSILON;

/// Radius used for closed-form bound expressions built from a handful of
/// correctly rounded operations.
fn bound(v: f64) -> CertifiedValue {
    CertifiedValue::new(v, 8.0 * EPS * v.abs())
}

/// `{2^k / 4 : k = 0..=18}`.
pub fn default_bounds_grid() -> Vec<f64> {
    (0..=18).map(|k| f64::from(1u32 << k) / 4.0).collect()
}

/// `n` log-spaced points strictly inside `(lo, hi)`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (1..=n)
        .map(|i| (a + (b - a) * i as f64 / (n + 1) as f64).exp())
        .collect()
}

fn require_grid(op: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain(op, "grid is empty"));
    }
    if let Some(&x) = grid
        .iter()
        .find(|x| !(x.is_finite() && **x >= gfun::MIN_POINT_X))
    {
        return Err(Error::domain(
            op,
            format!(
                "grid point {x} is not a finite value >= {}",
                gfun::MIN_POINT_X
            ),
        ));
    }
    Ok(())
}

fn describe_grid(grid: &[f64]) -> String {
    match (grid.first(), grid.last()) {
        (Some(a), Some(b)) => format!("{} points in [{a}, {b}]", grid.len()),
        _ => "empty grid".to_string(),
    }
}

/// Runs `check` at every grid point in parallel and merges in order.
fn over_grid<F>(id: &str, descr: &str, grid: &[f64], check: F) -> Result<SuiteReport>
where
    F: Fn(f64, &mut SuiteReport) -> Result<()> + Sync,
{
    let parts = grid
        .par_iter()
        .map(|&x| {
            let mut r = SuiteReport::new(id, descr);
            check(x, &mut r)?;
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new(id, descr).merge_all(parts))
}

fn require_range(op: &'static str, name: &str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(op, format!("{name} must be >= 1")));
    }
    Ok(())
}

/// `g(m) + d(m)² < 1` for `m = 1..=m_max`, from the closed forms.
pub fn verify_cor_euler(m_max: u64) -> Result<SuiteReport> {
    require_range("verify_cor_euler", "m_max", m_max)?;
    let descr = format!("m = 1..{m_max}");
    let mut r = SuiteReport::new("cor_euler", descr);
    let one = CertifiedValue::exact(1.0);
    for row in HarmonicRows::new().take(m_max as usize) {
        let lhs = row.g_closed() + row.d_closed().square();
        r.check_lt("g(m) + d(m)^2 < 1", row.m as f64, lhs, one);
    }
    Ok(r)
}

/// `m ψ′(m) + d(m)² < 1 + 1/m` for `m = 1..=m_max`, with `ψ′` from the
/// kernel, plus the cross-check `m ψ′(m) = g(m) + 1/m`.
pub fn verify_cor_polygamma(m_max: u64, cfg: &EvalConfig) -> Result<SuiteReport> {
    require_range("verify_cor_polygamma", "m_max", m_max)?;
    let descr = format!("m = 1..{m_max}");
    let rows: Vec<_> = HarmonicRows::new().take(m_max as usize).collect();
    let parts = rows
        .par_chunks(512)
        .map(|chunk| {
            let mut r = SuiteReport::new("cor_polygamma", descr.as_str());
            for row in chunk {
                let m = row.m as f64;
                let m_psi1 = kernel::trigamma(m, cfg)? * m;
                let d = row.d_closed();
                let rhs = bound(1.0 + 1.0 / m);
                r.check_lt("m psi'(m) + d(m)^2 < 1 + 1/m", m, m_psi1 + d.square(), rhs);
                let g_plus = row.g_closed() + CertifiedValue::rounded(1.0 / m);
                r.check_identity("m psi'(m) = g(m) + 1/m", m, m_psi1, g_plus, 0.0);
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("cor_polygamma", descr.as_str()).merge_all(parts))
}

/// Accuracy requested where a bound's margin is far below the default target
/// (`x g(x) - x + 1/2` against `1/(6x)` has margin ~`1/(30x³)`).
const TIGHT_TARGET: f64 = 1e-22;

/// Every two-sided bound on `g`, `h`, `d`, `d²`, `G′`, `x²ψ′ - x`,
/// `x g - x`, the sharper logarithm underestimate, `f′ > -(x/2) f″` and
/// `0 < R < 1`, at each grid point.
pub fn verify_bounds(grid: &[f64], cfg: &EvalConfig) -> Result<SuiteReport> {
    require_grid("verify_bounds", grid)?;
    let tight = cfg.with_target_err(cfg.target_err.min(TIGHT_TARGET));
    over_grid("bounds", &describe_grid(grid), grid, |x, r| {
        let p = eval_point(x, cfg)?;
        let l1p = x.ln_1p();
        let x1 = x + 1.0;

        r.check_between(
            "x/(x+1) < g < 1 - 1/(x+1)^2",
            x,
            bound(x / x1),
            p.g,
            bound(1.0 - 1.0 / (x1 * x1)),
        );
        r.check_between(
            "1 - ln(1+x)/x < h < x/(x+1)",
            x,
            bound(1.0 - l1p / x),
            p.h,
            bound(x / x1),
        );
        r.check_between(
            "1/(x+1) < d < ln(1+x)/x",
            x,
            bound(1.0 / x1),
            p.d,
            bound(l1p / x),
        );
        r.check_between(
            "1/(x+1)^2 < d^2 < (ln(1+x)/x)^2",
            x,
            bound(1.0 / (x1 * x1)),
            p.d.square(),
            bound((l1p / x) * (l1p / x)),
        );

        let s = p.sandwich();
        r.check_le("G R/(x+1) <= G'", x, s.lo, p.Gp);
        r.check_le("G' <= G/(x+1)", x, p.Gp, s.hi);

        // x²ψ′(x) - x and x g(x) - x, both relative to 1/2.
        let lower = {
            let s = x + 1.0 / 14.0;
            bound(x * x / (6.0 * s * s * s))
        };
        let upper = bound(1.0 / (6.0 * x));
        let psi_excess = kernel::trigamma_excess(x, &tight)?;
        r.check_between("x^2 psi'(x) - x - 1/2 bounds", x, lower, psi_excess, upper);
        let g_excess = gfun::g_excess_series(x, &tight)?;
        r.check_between("x g(x) - x + 1/2 bounds", x, lower, g_excess, upper);

        let a = x;
        let v = a / (1.0 + a);
        let sharper = (3.0 * a * a + 2.0 * a) / (2.0 * (1.0 + a) * (1.0 + a));
        r.check_between(
            "a/(1+a) < (3a^2+2a)/(2(1+a)^2) < ln(1+a)",
            a,
            bound(v),
            bound(sharper),
            bound(l1p),
        );

        r.check_lt("-(x/2) f'' < f'", x, p.fpp * (-0.5 * x), p.fp);
        r.check_between(
            "0 < R < 1",
            x,
            CertifiedValue::exact(0.0),
            p.r_factor,
            CertifiedValue::exact(1.0),
        );
        Ok(())
    })
}

/// The identities tying independent evaluation routes together:
///
/// * `x²(f″ + f′²) = g + d² - 1`
/// * `g = x ψ′(x) - 1/x`
/// * `g = x² f″ + 2 x f′`
/// * `h` by series equals `h` from the kernel.
pub fn verify_identities(grid: &[f64], cfg: &EvalConfig) -> Result<SuiteReport> {
    require_grid("verify_identities", grid)?;
    over_grid("identities", &describe_grid(grid), grid, |x, r| {
        let p = eval_point(x, cfg)?;
        let x2 = CertifiedValue::rounded(x * x);
        let lhs = x2 * (p.fpp + p.fp.square());
        let rhs = p.g + p.d.square() - 1.0;
        r.check_identity("x^2(f'' + f'^2) = g + d^2 - 1", x, lhs, rhs, 0.0);

        let gk = gfun::g_kernel(x, cfg)?;
        r.check_identity("g = x psi'(x) - 1/x", x, p.g, gk, 0.0);

        let via_f = x2 * p.fpp + p.h * 2.0;
        r.check_identity("g = x^2 f'' + 2x f'", x, p.g, via_f, 0.0);

        let hs = gfun::h_series(x, cfg)?;
        r.check_identity("h series = h kernel", x, hs, p.h, 0.0);
        Ok(())
    })
}

/// Sign of a certified value, or `None` when zero lies inside it.
fn certified_sign(v: CertifiedValue) -> Option<bool> {
    if v.hi() < 0.0 {
        Some(true)
    } else if v.lo() > 0.0 {
        Some(false)
    } else {
        None
    }
}

/// `G″(x) < 0 ⟺ x g(x) - x + x d(x)² < 0` as a computed biconditional, and
/// the majorant `x g - x + x d² < -1/2 + 1/(6x) + ln(1+x)²/x`.
pub fn verify_sign_bridge(grid: &[f64], cfg: &EvalConfig) -> Result<SuiteReport> {
    require_grid("verify_sign_bridge", grid)?;
    let tight = cfg.with_target_err(cfg.target_err.min(TIGHT_TARGET));
    over_grid("sign_bridge", &describe_grid(grid), grid, |x, r| {
        let p = eval_point(x, cfg)?;
        let q = gfun::g_excess_series(x, &tight)? - 0.5 + p.d.square() * x;
        let verdict = match (certified_sign(p.Gpp), certified_sign(q)) {
            (Some(a), Some(b)) if a == b => Verdict::Pass,
            (Some(_), Some(_)) => Verdict::Fail,
            _ => Verdict::Inconclusive,
        };
        let margin = p.Gpp.value.abs().min(q.value.abs());
        let rec = CheckRecord {
            label: "G'' < 0 iff x g - x + x d^2 < 0",
            at: x,
            lhs: p.Gpp.value,
            rhs: q.value,
        };
        r.record(verdict, margin, rec);

        let l1p = x.ln_1p();
        let majorant = bound(-0.5 + 1.0 / (6.0 * x) + l1p * l1p / x);
        r.check_lt("x g - x + x d^2 < majorant", x, q, majorant);
        Ok(())
    })
}

/// Shape of `D′`: decreasing on `(0, e-1]`, increasing on `[e-1, 20]`,
/// negative at `e - 1`. (`D′` is positive near 0 and has a second zero near
/// 0.43, so only the monotonicity holds on the left piece.)
pub fn verify_d5_shape() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("d5_shape", "(0, e-1] and [e-1, 20]");
    let e1 = std::f64::consts::E - 1.0;
    let left: Vec<f64> = (0..=200).map(|i| e1 * (1.0 - i as f64 / 201.0)).collect();
    for w in left.windows(2) {
        let (a, b) = (d5_prime(w[0])?, d5_prime(w[1])?);
        r.check_fact("D' decreasing on (0, e-1]", w[1], b > a);
    }
    r.check_fact("D'(e-1) < 0", e1, d5_prime(e1)? < 0.0);
    let right: Vec<f64> = (0..=400)
        .map(|i| e1 + (20.0 - e1) * i as f64 / 400.0)
        .collect();
    for w in right.windows(2) {
        let (a, b) = (d5_prime(w[0])?, d5_prime(w[1])?);
        r.check_fact("D' increasing on [e-1, 20]", w[1], a < b);
    }
    Ok(r)
}

/// `0.42 > σ_1 > σ_2 > ⋯ > σ_{n_max} > 1/e`, and `1.15 > S_1`, `S_n > 1`.
pub fn verify_sigma_monotone(n_max: u64) -> Result<SuiteReport> {
    require_range("verify_sigma_monotone", "n_max", n_max)?;
    let table = sequences::sigma_table(n_max + 1)?;
    let mut r = SuiteReport::new("sigma_monotone", format!("n = 1..{n_max}"));
    let inv_e = CertifiedValue::rounded((-1f64).exp());
    let one = CertifiedValue::exact(1.0);
    r.check_lt("sigma_1 < 0.42", 1.0, table[0].sigma, bound(0.42));
    r.check_lt("S_1 < 1.15", 1.0, table[0].s, bound(1.15));
    for w in table.windows(2).take(n_max as usize) {
        let n = w[0].n as f64;
        r.check_lt("sigma_{n+1} < sigma_n", n, w[1].sigma, w[0].sigma);
        r.check_lt("1/e < sigma_n", n, inv_e, w[0].sigma);
        r.check_lt("1 < S_n", n, one, w[0].s);
    }
    Ok(r)
}

/// `1 + a(n+1)/(n+1) < S_n < 1 + a(n)/n` for `n_lo ≤ n ≤ n_hi`, with `a` at
/// integers from the harmonic closed forms.
pub fn verify_s_sandwich(n_lo: u64, n_hi: u64) -> Result<SuiteReport> {
    if n_lo == 0 || n_lo > n_hi {
        return Err(Error::domain(
            "verify_s_sandwich",
            format!("need 1 <= n_lo <= n_hi, got {n_lo}..{n_hi}"),
        ));
    }
    let descr = format!("n = {n_lo}..{n_hi}");
    let side = |row: &HarmonicRow| 1.0 + row.a_closed() / row.m as f64;
    let rows: Vec<HarmonicRow> = HarmonicRows::new()
        .skip(n_lo as usize - 1)
        .take((n_hi - n_lo + 2) as usize)
        .collect();
    let parts = rows
        .par_windows(2)
        .map(|w| {
            let mut r = SuiteReport::new("s_sandwich", descr.as_str());
            let s = sequences::sigma(w[0].m)?.s;
            r.check_between(
                "1 + a(n+1)/(n+1) < S_n < 1 + a(n)/n",
                w[0].m as f64,
                side(&w[1]),
                s,
                side(&w[0]),
            );
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("s_sandwich", descr.as_str()).merge_all(parts))
}

/// `C_m` strictly decreasing and positive, `D_m` strictly increasing, and
/// `D_m - 1 < C < C_m`, for `m = 1..=m_max`.
pub fn verify_harmonic_monotone(m_max: u64) -> Result<SuiteReport> {
    require_range("verify_harmonic_monotone", "m_max", m_max)?;
    let mut r = SuiteReport::new("harmonic_monotone", format!("m = 1..{m_max}"));
    let c = CertifiedValue::new(crate::consts::EULER_GAMMA, EPS * crate::consts::EULER_GAMMA);
    let zero = CertifiedValue::exact(0.0);
    let mut rows = HarmonicRows::new();
    let mut prev = rows.next().expect("generator is unbounded");
    for row in rows.take(m_max as usize) {
        let m = prev.m as f64;
        r.check_lt("C_{m+1} < C_m", m, row.c_m, prev.c_m);
        r.check_lt("0 < C_m", m, zero, prev.c_m);
        r.check_lt("D_m < D_{m+1}", m, prev.d_m, row.d_m);
        r.check_between("D_m - 1 < C < C_m", m, prev.d_m - 1.0, c, prev.c_m);
        prev = row;
    }
    Ok(r)
}

/// `G″ < 0` at `c + {0.1, 1, 10, 100}`, with `c` the upper edge of its
/// bracket.
pub fn verify_gpp_beyond_c(cfg: &EvalConfig) -> Result<SuiteReport> {
    let c = find_root_c(1e-7)?;
    let mut r = SuiteReport::new(
        "gpp_beyond_c",
        format!("x = {} + {{0.1, 1, 10, 100}}", c.hi),
    );
    for dx in [0.1, 1.0, 10.0, 100.0] {
        let x = c.hi + dx;
        let p = eval_point(x, cfg)?;
        r.check_lt("G''(x) < 0", x, p.Gpp, CertifiedValue::exact(0.0));
    }
    Ok(r)
}
