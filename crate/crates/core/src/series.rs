//! Summation of positive, decreasing, convex series with integral-test tails,
//! plus the cancellation-free logarithm kernels their terms are built from.
//!
//! Every term function used in this crate, `t ↦ D(t)`, is positive, strictly
//! decreasing and convex on `t > 0`, with a closed-form tail integral
//! `I(t) = ∫_t^∞ D`. After summing through index `N` the remainder
//! `Σ_{n>N} D(n)` is bracketed by
//!
//! * below: `max(I(N+1), I(N) - D(N)/2)` (monotone / trapezoid bound), and
//! * above: `min(I(N), I(N+1/2))` (monotone / midpoint bound),
//!
//! and is reported as the bracket midpoint with half its width as error.

use crate::certified::CertifiedValue;

const EPS: f64 = f64::EPSILON;

/// Smallest number of terms summed before the first tail check.
const MIN_TERMS: u64 = 16;

/// Per-term rounding allowance, in machine epsilons of the term's scale.
const TERM_ROUNDING_EPS: f64 = 4.0;

/// Switch-over point between power series and direct formulas.
const SERIES_CUTOFF: f64 = 0.25;

/// A computed series term and the magnitude its rounding error scales with.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Term {
    pub value: f64,
    pub scale: f64,
}

impl Term {
    pub fn scaled(self, k: f64) -> Term {
        Term {
            value: self.value * k,
            scale: self.scale * k.abs(),
        }
    }
}

/// A closed-form tail integral together with its rounding radius.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tail {
    pub value: f64,
    pub err: f64,
}

impl Tail {
    pub fn new(value: f64, scale: f64) -> Tail {
        Tail {
            value,
            err: 8.0 * EPS * scale.abs(),
        }
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums `Σ_{n ≥ first} term(n)` until the certified radius drops to `target`,
/// the truncation error falls below the accumulated rounding floor, or
/// `max_terms` terms have been used.
pub(crate) fn sum_convex_series<T, I>(
    first: u64,
    mut term: T,
    tail: I,
    target: f64,
    max_terms: u64,
) -> CertifiedValue
where
    T: FnMut(u64) -> Term,
    I: Fn(f64) -> Tail,
{
    let mut acc = Compensated::default();
    let mut term_round = 0.0;
    let mut abs_sum = 0.0;
    let mut count = 0u64;
    let mut n = first;
    let mut next_check = first + MIN_TERMS - 1;
    loop {
        let t = term(n);
        acc.add(t.value);
        term_round += TERM_ROUNDING_EPS * EPS * t.value.abs().max(t.scale);
        abs_sum += t.value.abs();
        count += 1;
        let out_of_budget = count >= max_terms;
        if n >= next_check || out_of_budget {
            let (mid, half_width, tail_round) = tail_bracket(&tail, n, t.value);
            let partial = acc.total();
            let value = partial + mid;
            // Neumaier: |error| ≤ 2ε|S| + O(nε²)Σ|t|.
            let summation = 2.0 * EPS * partial.abs() + count as f64 * EPS * EPS * abs_sum;
            let rounding = term_round + summation + tail_round + EPS * value.abs();
            let err = half_width + rounding;
            if err <= target || half_width <= rounding || out_of_budget {
                return CertifiedValue::new(value, err).against_target(target);
            }
            next_check = n + MIN_TERMS.max((n - first) / 8);
        }
        n += 1;
    }
}

/// Midpoint, half-width and rounding radius of the remainder after index `n`.
fn tail_bracket<I: Fn(f64) -> Tail>(tail: &I, n: u64, last_term: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    let at_n = tail(nf);
    let at_next = tail(nf + 1.0);
    let at_half = tail(nf + 0.5);
    let lo = at_next.value.max(at_n.value - 0.5 * last_term);
    let hi = at_n.value.min(at_half.value);
    let round = at_n.err.max(at_next.err).max(at_half.err) + EPS * last_term;
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    (0.5 * (lo + hi), 0.5 * (hi - lo), round)
}

/// `Σ_{j ≥ start} coeff(j)·z^j` for `|z| ≤ 1/4` and `|coeff(j)| ≤ 1`.
pub(crate) fn power_tail(z: f64, start: u32, coeff: impl Fn(u32) -> f64) -> f64 {
    debug_assert!(z.abs() <= SERIES_CUTOFF + 1e-12);
    let mut zj = z.powi(start as i32);
    let mut acc = 0.0;
    for j in start..start + 64 {
        let t = coeff(j) * zj;
        acc += t;
        if t.abs() <= 1e-18 * acc.abs() || zj == 0.0 {
            break;
        }
        zj *= z;
    }
    acc
}

/// `ln(1+u) - v` with `v = u/(1+u)`; equals `Σ_{j≥2} v^j/j`.
pub(crate) fn log1p_minus_ratio(u: f64) -> Term {
    let v = u / (1.0 + u);
    if v <= SERIES_CUTOFF {
        let value = power_tail(v, 2, |j| 1.0 / j as f64);
        Term {
            value,
            scale: 2.0 * value,
        }
    } else {
        let l = u.ln_1p();
        Term {
            value: l - v,
            scale: l,
        }
    }
}

/// `ln(1+u) - v - v²/2` with `v = u/(1+u)`; equals `Σ_{j≥3} v^j/j`.
pub(crate) fn log1p_minus_ratio2(u: f64) -> Term {
    let v = u / (1.0 + u);
    if v <= SERIES_CUTOFF {
        let value = power_tail(v, 3, |j| 1.0 / j as f64);
        Term {
            value,
            scale: 2.0 * value,
        }
    } else {
        let l = u.ln_1p();
        Term {
            value: l - v - 0.5 * v * v,
            scale: l,
        }
    }
}

/// `u - ln(1+u)`; equals `Σ_{j≥2} (1 - 1/j) v^j` with `v = u/(1+u)`.
pub(crate) fn u_minus_log1p(u: f64) -> Term {
    let v = u / (1.0 + u);
    if v <= SERIES_CUTOFF {
        let value = power_tail(v, 2, |j| 1.0 - 1.0 / j as f64);
        Term {
            value,
            scale: 2.0 * value,
        }
    } else {
        Term {
            value: u - u.ln_1p(),
            scale: u,
        }
    }
}
