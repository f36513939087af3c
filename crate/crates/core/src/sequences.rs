//! Integer-indexed objects: harmonic rows `H_m`, `H_m^(2)`, `C_m = H_m - ln m`,
//! `D_m = H_m - ln(m!)/m`, the closed forms of `g`, `h`, `d` at integers,
//! `σ_n = (n+1)!^(1/(n+1)) - n!^(1/n)` with `S_n = e σ_n`, and the solver for
//! the smallest `n` with `a^n ≤ n!`.
//!
//! Factorials are never materialized: `ln(m!)` is either a running sum of
//! `ln k` (harmonic rows, `n_a`) or [`kernel::ln_factorial`] (σ).

use rayon::prelude::*;

use crate::certified::CertifiedValue;
use crate::consts::{EULER_GAMMA, LITERAL_REL_ERR, ZETA2};
use crate::error::{Error, Result};
use crate::kernel;
use crate::series::Compensated;

const EPS: f64 = f64::EPSILON;

/// Compensated running sum that also tracks a rounding radius.
#[derive(Debug, Default, Clone, Copy)]
struct Accumulator {
    sum: Compensated,
    term_round: f64,
    abs_sum: f64,
    count: u64,
}

impl Accumulator {
    /// Adds a term known to within `rel · |t|`.
    fn add(&mut self, t: f64, rel: f64) {
        self.sum.add(t);
        self.term_round += rel * t.abs();
        self.abs_sum += t.abs();
        self.count += 1;
    }

    fn value(&self) -> CertifiedValue {
        let s = self.sum.total();
        let summation = 2.0 * EPS * s.abs() + self.count as f64 * EPS * EPS * self.abs_sum;
        CertifiedValue::new(s, self.term_round + summation)
    }
}

fn euler_gamma() -> CertifiedValue {
    CertifiedValue::new(EULER_GAMMA, LITERAL_REL_ERR * EULER_GAMMA)
}

fn zeta2() -> CertifiedValue {
    CertifiedValue::new(ZETA2, LITERAL_REL_ERR * ZETA2)
}

/// `H_m`, `H_m^(2)`, `ln(m!)`, `C_m` and `D_m` for one `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicRow {
    pub m: u64,
    pub harmonic: CertifiedValue,
    pub harmonic2: CertifiedValue,
    pub ln_factorial: CertifiedValue,
    pub c_m: CertifiedValue,
    pub d_m: CertifiedValue,
}

/// Incremental generator of [`HarmonicRow`]s for `m = 1, 2, …`.
#[derive(Debug, Default, Clone)]
pub struct HarmonicRows {
    m: u64,
    h: Accumulator,
    h2: Accumulator,
    lnf: Accumulator,
}

impl HarmonicRows {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for HarmonicRows {
    type Item = HarmonicRow;

    fn next(&mut self) -> Option<HarmonicRow> {
        self.m += 1;
        let m = self.m;
        let k = m as f64;
        self.h.add(1.0 / k, EPS);
        self.h2.add(1.0 / (k * k), 2.0 * EPS);
        if m > 1 {
            self.lnf.add(k.ln(), EPS);
        }
        let harmonic = self.h.value();
        let harmonic2 = self.h2.value();
        let ln_factorial = self.lnf.value();
        let ln_m = CertifiedValue::new(k.ln(), EPS * k.ln());
        let c_m = harmonic - ln_m;
        let d_m = harmonic - ln_factorial / k;
        Some(HarmonicRow {
            m,
            harmonic,
            harmonic2,
            ln_factorial,
            c_m,
            d_m,
        })
    }
}

/// Rows for `m = 1..=m_max`.
pub fn harmonic_rows(m_max: u64) -> Result<Vec<HarmonicRow>> {
    if m_max == 0 {
        return Err(Error::domain("harmonic_rows", "m_max must be >= 1"));
    }
    Ok(HarmonicRows::new().take(m_max as usize).collect())
}

/// The single row at `m`, computed by running through `1..=m`.
pub fn harmonic_row(m: u64) -> Result<HarmonicRow> {
    if m == 0 {
        return Err(Error::domain("harmonic_row", "m must be >= 1"));
    }
    Ok(HarmonicRows::new()
        .nth(m as usize - 1)
        .expect("generator is unbounded"))
}

impl HarmonicRow {
    /// `g(m) = m (π²/6 - H_m^(2))`.
    pub fn g_closed(&self) -> CertifiedValue {
        (zeta2() - self.harmonic2) * self.m as f64
    }

    /// `h(m) = D_m - C`.
    pub fn h_closed(&self) -> CertifiedValue {
        self.d_m - euler_gamma()
    }

    /// `d(m) = C + 1 - D_m`.
    pub fn d_closed(&self) -> CertifiedValue {
        euler_gamma() + 1.0 - self.d_m
    }

    /// `a(m) = e G′(m) m - m` with `G(m) = m!^(1/m)` and `G′(m) = G(m) h(m)/m`.
    pub fn a_closed(&self) -> CertifiedValue {
        let k = self.m as f64;
        let big_g = (self.ln_factorial / k).exp();
        CertifiedValue::rounded(std::f64::consts::E) * big_g * self.h_closed() - k
    }
}

pub fn g_closed(m: u64) -> Result<CertifiedValue> {
    Ok(harmonic_row(m)?.g_closed())
}

pub fn h_closed(m: u64) -> Result<CertifiedValue> {
    Ok(harmonic_row(m)?.h_closed())
}

pub fn d_closed(m: u64) -> Result<CertifiedValue> {
    Ok(harmonic_row(m)?.d_closed())
}

/// `h(m) = 1 - C + (C_1 + ⋯ + C_{m-1} - ln m)/m`, the partial-sum form of the
/// closed expression; the `C_ℓ` sum is empty at `m = 1`.
pub fn h_closed_partial_sums(m: u64) -> Result<CertifiedValue> {
    if m == 0 {
        return Err(Error::domain("h_closed_partial_sums", "m must be >= 1"));
    }
    let mut sum = CertifiedValue::exact(0.0);
    for row in HarmonicRows::new().take(m as usize - 1) {
        sum = sum + row.c_m;
    }
    let k = m as f64;
    let ln_m = CertifiedValue::new(k.ln(), EPS * k.ln());
    Ok(1.0 - euler_gamma() + (sum - ln_m) / k)
}

/// The enclosure `D_m - 1 < C < C_m` used to certify the stored constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerCertificate {
    pub m: u64,
    pub lower: CertifiedValue,
    pub upper: CertifiedValue,
}

/// Checks the stored Euler–Mascheroni constant against `D_m - 1 < C < C_m`.
pub fn certify_euler_constant(m: u64) -> Result<EulerCertificate> {
    let row = harmonic_row(m)?;
    let lower = row.d_m - 1.0;
    let upper = row.c_m;
    let c = euler_gamma();
    if !(lower.hi() < c.lo() && c.hi() < upper.lo()) {
        return Err(Error::internal(
            "certify_euler_constant",
            format!("stored constant {EULER_GAMMA} not inside ({lower}, {upper}) at m = {m}"),
        ));
    }
    Ok(EulerCertificate { m, lower, upper })
}

/// Checks `Σ_{n=1}^{N} (a_{m+n} - a_n) = Σ_{ℓ=1}^{m} (a_{N+ℓ} - a_ℓ)` for a
/// 1-based sequence stored in `seq[0..]`.
///
/// The sides must agree to `1e-10` relative to the total magnitude of the
/// entries involved.
pub fn lemma_sums_check(seq: &[f64], m: usize, n: usize) -> Result<bool> {
    if m == 0 || n < m {
        return Err(Error::domain(
            "lemma_sums_check",
            format!("need N >= m >= 1, got m = {m}, N = {n}"),
        ));
    }
    if seq.len() < n + m {
        return Err(Error::domain(
            "lemma_sums_check",
            format!("sequence has {} entries, need {}", seq.len(), n + m),
        ));
    }
    let a = |k: usize| seq[k - 1];
    let mut lhs = Compensated::default();
    let mut rhs = Compensated::default();
    let mut scale = 0.0;
    for i in 1..=n {
        lhs.add(a(m + i));
        lhs.add(-a(i));
        scale += a(m + i).abs() + a(i).abs();
    }
    for l in 1..=m {
        rhs.add(a(n + l));
        rhs.add(-a(l));
        scale += a(n + l).abs() + a(l).abs();
    }
    Ok((lhs.total() - rhs.total()).abs() <= 1e-10 * scale.max(f64::MIN_POSITIVE))
}

/// Checks `Σ_{ℓ=1}^{m} C_ℓ = (m+1)(C_{m+1} + ln(m+1) - 1) - ln(m!)` to an
/// absolute `1e-10`.
pub fn lemma_simplify_check(m: u64) -> bool {
    let (lhs, rhs) = lemma_simplify_sides(m);
    (lhs - rhs).abs() <= 1e-10
}

/// Both sides of the identity checked by [`lemma_simplify_check`].
pub fn lemma_simplify_sides(m: u64) -> (f64, f64) {
    let mut lhs = Compensated::default();
    let mut rows = HarmonicRows::new();
    let mut ln_fact_m = 0.0;
    for _ in 0..m {
        let row = rows.next().expect("generator is unbounded");
        lhs.add(row.c_m.value);
        ln_fact_m = row.ln_factorial.value;
    }
    let next = rows.next().expect("generator is unbounded");
    let k = (m + 1) as f64;
    let rhs = k * (next.c_m.value + k.ln() - 1.0) - ln_fact_m;
    (lhs.total(), rhs)
}

/// `σ_n` and `S_n = e σ_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaTerm {
    pub n: u64,
    pub sigma: CertifiedValue,
    pub s: CertifiedValue,
}

/// `σ_n = exp(ln((n+1)!)/(n+1)) - exp(ln(n!)/n)`, all in the log domain.
pub fn sigma(n: u64) -> Result<SigmaTerm> {
    if n == 0 {
        return Err(Error::domain("sigma", "n must be >= 1"));
    }
    let root = |k: u64| (kernel::ln_factorial(k) / k as f64).exp();
    let sigma = root(n + 1) - root(n);
    let s = CertifiedValue::rounded(std::f64::consts::E) * sigma;
    Ok(SigmaTerm { n, sigma, s })
}

/// `σ_n` for `n = 1..=n_max`, computed in parallel and returned in order.
pub fn sigma_table(n_max: u64) -> Result<Vec<SigmaTerm>> {
    if n_max == 0 {
        return Err(Error::domain("sigma_table", "n_max must be >= 1"));
    }
    (1..=n_max).into_par_iter().map(sigma).collect()
}

/// The smallest `n` with `a^n ≤ n!`, and the interval
/// `((n-1)!^(1/(n-1)), n!^(1/n)]` that contains `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaResult {
    pub a_in: f64,
    pub n_a: u64,
    pub interval_lo: f64,
    pub interval_hi: f64,
}

/// `n!^(1/n)` given `ln(n!)`, directly from `n!` while it is exact in `f64`.
fn factorial_root(n: u64, ln_fact: f64) -> f64 {
    match n {
        0 | 1 => 1.0,
        2 => 2f64.sqrt(),
        3..=22 => (2..=n)
            .map(|k| k as f64)
            .product::<f64>()
            .powf(1.0 / n as f64),
        _ => (ln_fact / n as f64).exp(),
    }
}

/// Solves for the smallest `n` with `a^n ≤ n!`.
///
/// The test `n ln a ≤ ln(n!)` is decided on certified values and accepted
/// when the lower edge of the left side is at most the upper edge of the
/// right side: a point within rounding of the boundary counts as on it, which
/// keeps the right endpoint of the interval inclusive.
pub fn n_a(a: f64) -> Result<NaResult> {
    if !(a.is_finite() && a > 1.0) {
        return Err(Error::domain(
            "n_a",
            format!("expected a finite a > 1, got {a}"),
        ));
    }
    let ln_a = a.ln();
    let ln_a_err = EPS * ln_a.abs() + EPS;
    let cap = (3.0 * a * ln_a + 3.0).ceil() as u64;
    let mut lnf = Accumulator::default();
    let mut prev = CertifiedValue::exact(0.0);
    for n in 2..=cap.max(2) {
        lnf.add((n as f64).ln(), EPS);
        let rhs = lnf.value();
        let k = n as f64;
        let lhs_lo = k * ln_a - (k * ln_a_err + EPS * k * ln_a);
        if lhs_lo <= rhs.hi() {
            let interval_lo = factorial_root(n - 1, prev.value);
            let interval_hi = factorial_root(n, rhs.value);
            return Ok(NaResult {
                a_in: a,
                n_a: n,
                interval_lo,
                interval_hi,
            });
        }
        prev = rhs;
    }
    Err(Error::internal(
        "n_a",
        format!("no solution found below the cap n = {cap} for a = {a}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::ZETA2;

    #[test]
    fn first_rows() {
        let rows = harmonic_rows(2).unwrap();
        let r1 = rows[0];
        assert_eq!(r1.harmonic.value, 1.0);
        assert_eq!(r1.harmonic2.value, 1.0);
        assert_eq!(r1.c_m.value, 1.0);
        assert_eq!(r1.d_m.value, 1.0);
        assert!(rows[1].c_m.contains(1.5 - 2f64.ln()));
        assert!(harmonic_rows(0).is_err());
    }

    #[test]
    fn c_decreasing_and_d_increasing() {
        let rows = harmonic_rows(100_000).unwrap();
        for w in rows.windows(2) {
            assert!(w[0].c_m.lo() > w[1].c_m.hi(), "C at m = {}", w[0].m);
            assert!(w[0].d_m.hi() < w[1].d_m.lo(), "D at m = {}", w[0].m);
        }
        assert!(rows.last().unwrap().c_m.lo() > 0.0);
    }

    #[test]
    fn closed_forms_at_one() {
        assert!(g_closed(1).unwrap().contains(ZETA2 - 1.0));
        let h = h_closed(1).unwrap();
        assert!((h.value - (1.0 - EULER_GAMMA)).abs() <= h.err + 1e-16);
        let d = d_closed(1).unwrap();
        assert!((d.value - EULER_GAMMA).abs() <= d.err + 1e-16);
    }

    #[test]
    fn closed_form_bounds() {
        for row in harmonic_rows(2000).unwrap() {
            let m = row.m as f64;
            let g = row.g_closed();
            assert!(g.strictly_inside(m / (m + 1.0), 1.0 - 1.0 / ((m + 1.0) * (m + 1.0))));
            let d = row.d_closed();
            assert!(
                d.strictly_inside(1.0 / (m + 1.0), (1.0 + m).ln() / m),
                "m={m}"
            );
        }
    }

    #[test]
    fn both_h_forms_agree() {
        for m in [1, 2, 3, 10, 77, 500] {
            let a = h_closed(m).unwrap();
            let b = h_closed_partial_sums(m).unwrap();
            assert!((a.value - b.value).abs() <= 1e-12, "m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn euler_constant_certifies() {
        let cert = certify_euler_constant(1_000_000).unwrap();
        assert!(cert.lower.value < EULER_GAMMA && EULER_GAMMA < cert.upper.value);
    }

    #[test]
    fn shifted_sums_examples() {
        let constant = vec![3.5; 40];
        assert!(lemma_sums_check(&constant, 4, 20).unwrap());
        let linear: Vec<f64> = (1..=40).map(|k| k as f64).collect();
        assert!(lemma_sums_check(&linear, 7, 30).unwrap());
        assert!(lemma_sums_check(&linear, 7, 5).is_err());
        assert!(lemma_sums_check(&linear[..10], 3, 9).is_err());
    }

    #[test]
    fn simplify_small_cases() {
        assert_eq!(lemma_simplify_sides(0), (0.0, 0.0));
        let (l, r) = lemma_simplify_sides(1);
        assert_eq!(l, 1.0);
        assert!((r - 1.0).abs() < 1e-15);
        assert!(lemma_simplify_check(1000));
    }

    #[test]
    fn sigma_first_terms() {
        let s1 = sigma(1).unwrap();
        assert!(s1.sigma.contains(2f64.sqrt() - 1.0));
        assert!(s1.sigma.hi() < 0.42);
        assert!(s1.s.hi() < 1.15);
        let t = sigma_table(3).unwrap();
        assert!(t[0].sigma.lo() > t[1].sigma.hi() && t[1].sigma.lo() > t[2].sigma.hi());
        assert!(t.iter().all(|s| s.sigma.lo() > (-1f64).exp()));
    }

    #[test]
    fn n_a_examples() {
        assert_eq!(n_a(2f64.sqrt()).unwrap().n_a, 2);
        assert_eq!(n_a(2.0).unwrap().n_a, 4);
        assert_eq!(n_a(1.0001).unwrap().n_a, 2);
        assert!(n_a(1.0).is_err());
        assert!(n_a(f64::NAN).is_err());
        let r = n_a(2.0).unwrap();
        assert!(r.interval_lo < 2.0 && 2.0 <= r.interval_hi);
    }
}
