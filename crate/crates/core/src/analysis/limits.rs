//! Finite-`x` proximity of the limit quantities to their limits at infinity.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use super::report::SuiteReport;
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::gfun::{eval_point, GPoint};
use crate::kernel::EvalConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitQuantity {
    /// `x² f″(x) → -1`
    X2Fpp,
    /// `h(x) → 1`
    H,
    /// `x² (f″ + f′²) → 0`
    X2FppFp2,
    /// `G′(x) → 1/e`
    Gp,
    /// `x G″(x) → 0`
    XGpp,
    /// `x² G″(x) → -1/(2e)`
    X2Gpp,
    /// `a(x) → 1/2`
    A,
    /// `a′(x) → 0`, estimated by a central difference.
    APrime,
}

impl LimitQuantity {
    pub const ALL: [LimitQuantity; 8] = [
        LimitQuantity::X2Fpp,
        LimitQuantity::H,
        LimitQuantity::X2FppFp2,
        LimitQuantity::Gp,
        LimitQuantity::XGpp,
        LimitQuantity::X2Gpp,
        LimitQuantity::A,
        LimitQuantity::APrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LimitQuantity::X2Fpp => "x2_fpp",
            LimitQuantity::H => "h",
            LimitQuantity::X2FppFp2 => "x2_fpp_plus_fp2",
            LimitQuantity::Gp => "Gp",
            LimitQuantity::XGpp => "x_Gpp",
            LimitQuantity::X2Gpp => "x2_Gpp",
            LimitQuantity::A => "a",
            LimitQuantity::APrime => "a_prime",
        }
    }

    pub fn limit(self) -> f64 {
        let e = std::f64::consts::E;
        match self {
            LimitQuantity::X2Fpp => -1.0,
            LimitQuantity::H => 1.0,
            LimitQuantity::X2FppFp2 => 0.0,
            LimitQuantity::Gp => 1.0 / e,
            LimitQuantity::XGpp => 0.0,
            LimitQuantity::X2Gpp => -1.0 / (2.0 * e),
            LimitQuantity::A => 0.5,
            LimitQuantity::APrime => 0.0,
        }
    }
}

impl fmt::Display for LimitQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub x: f64,
    pub quantity: LimitQuantity,
    pub value: CertifiedValue,
    pub limit: f64,
    /// `|value - limit|`.
    pub distance: f64,
}

/// `{10, 10², 10³, 10⁴}`.
pub const DEFAULT_LIMIT_SCHEDULE: [f64; 4] = [10.0, 100.0, 1000.0, 10_000.0];

/// Relative step of the central difference used for `a′`.
const A_PRIME_STEP: f64 = 1e-3;

fn quantity_at(q: LimitQuantity, p: &GPoint, cfg: &EvalConfig) -> Result<CertifiedValue> {
    let x = p.x;
    let x2 = CertifiedValue::rounded(x * x);
    Ok(match q {
        LimitQuantity::X2Fpp => x2 * p.fpp,
        LimitQuantity::H => p.h,
        LimitQuantity::X2FppFp2 => x2 * (p.fpp + p.fp.square()),
        LimitQuantity::Gp => p.Gp,
        LimitQuantity::XGpp => p.Gpp * x,
        LimitQuantity::X2Gpp => x2 * p.Gpp,
        LimitQuantity::A => p.a_of_x,
        LimitQuantity::APrime => {
            // The radius covers rounding of the two samples only; the
            // O(δ²) truncation of the difference is not included.
            let dx = A_PRIME_STEP * x;
            let up = eval_point(x + dx, cfg)?.a_of_x;
            let down = eval_point(x - dx, cfg)?.a_of_x;
            (up - down) / CertifiedValue::rounded(2.0 * dx)
        }
    })
}

/// Every [`LimitQuantity`] at every `x`, in `xs` order.
pub fn limit_diagnostics(xs: &[f64], cfg: &EvalConfig) -> Result<Vec<LimitRow>> {
    if xs
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(Error::precondition(
            "limit_diagnostics",
            "x values must be strictly increasing",
        ));
    }
    let per_x = xs
        .par_iter()
        .map(|&x| {
            let p = eval_point(x, cfg)?;
            LimitQuantity::ALL
                .iter()
                .map(|&q| {
                    let value = quantity_at(q, &p, cfg)?;
                    Ok(LimitRow {
                        x,
                        quantity: q,
                        value,
                        limit: q.limit(),
                        distance: (value.value - q.limit()).abs(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_x.into_iter().flatten().collect())
}

/// Tolerances checked at `x = 10⁴`.
const TOLERANCES_AT_1E4: [(LimitQuantity, f64); 4] = [
    (LimitQuantity::X2Gpp, 0.01),
    (LimitQuantity::A, 0.05),
    (LimitQuantity::X2Fpp, 0.01),
    (LimitQuantity::Gp, 1e-3),
];

/// Runs [`limit_diagnostics`] on the default schedule and checks that
/// every distance shrinks over the last three points and that the
/// quantities at `10⁴` are within their tolerances.
pub fn verify_limits(cfg: &EvalConfig) -> Result<SuiteReport> {
    let rows = limit_diagnostics(&DEFAULT_LIMIT_SCHEDULE, cfg)?;
    Ok(limit_report(&rows))
}

/// Checks for a set of rows produced on [`DEFAULT_LIMIT_SCHEDULE`] (or any
/// schedule whose last three points should show shrinking distances).
pub fn limit_report(rows: &[LimitRow]) -> SuiteReport {
    let mut xs: Vec<f64> = rows.iter().map(|r| r.x).collect();
    xs.dedup();
    let descr = format!("x in {xs:?}");
    let mut report = SuiteReport::new("limits", descr);
    let tail: Vec<f64> = xs.iter().rev().take(3).rev().copied().collect();
    for q in LimitQuantity::ALL {
        let dists: Vec<CertifiedValue> = tail
            .iter()
            .filter_map(|&x| rows.iter().find(|r| r.x == x && r.quantity == q))
            .map(|r| CertifiedValue::new(r.distance, r.value.err))
            .collect();
        for (w, &x) in dists.windows(2).zip(tail.iter().skip(1)) {
            report.check_lt("distance to limit shrinks", x, w[1], w[0]);
        }
    }
    for (q, tol) in TOLERANCES_AT_1E4 {
        if let Some(r) = rows.iter().find(|r| r.x == 1e4 && r.quantity == q) {
            let dist = CertifiedValue::new(r.distance, r.value.err);
            report.check_le(
                "distance at 1e4 within tolerance",
                r.x,
                dist,
                CertifiedValue::exact(tol),
            );
        }
    }
    if let Some(r) = rows
        .iter()
        .find(|r| r.x == 1e4 && r.quantity == LimitQuantity::H)
    {
        let x = r.x;
        let lo = CertifiedValue::rounded(1.0 - x.ln_1p() / x);
        let hi = CertifiedValue::rounded(x / (x + 1.0));
        report.check_between("1 - ln(1+x)/x < h < x/(x+1) at 1e4", x, lo, r.value, hi);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::report::Verdict;

    #[test]
    fn default_schedule_passes() {
        let r = verify_limits(&EvalConfig::default()).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{r}: {:?}", r.failures);
        assert_eq!(r.n_checked, 8 * 2 + 4 + 2);
    }

    #[test]
    fn reference_distances_at_1e4() {
        let rows = limit_diagnostics(&[1e4], &EvalConfig::default()).unwrap();
        let get = |q| rows.iter().find(|r| r.quantity == q).unwrap().value.value;
        // Reference values from 40-digit evaluation.
        assert!((get(LimitQuantity::X2Fpp) + 1.0 - 9.5e-4).abs() < 1e-5);
        assert!((get(LimitQuantity::H) - 1.0 + 5.0e-4).abs() < 1e-5);
        assert!((get(LimitQuantity::A) - 0.5 + 1.26e-3).abs() < 1e-5);
    }

    #[test]
    fn rejects_unordered_input() {
        assert!(limit_diagnostics(&[10.0, 5.0], &EvalConfig::default()).is_err());
    }
}
