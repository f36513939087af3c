mod common;

use proptest::prelude::*;

use common::ddouble::{self, Dd};
use gammaseq_core::gfun::{self, eval_point, gprime_sandwich};
use gammaseq_core::{kernel, sequences, EvalConfig};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

/// Log-uniform x in (0.01, 1e4).
fn log_x() -> impl Strategy<Value = f64> {
    (-2.0f64..4.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn h_routes_agree(x in log_x()) {
        let s = gfun::h_series(x, &cfg()).unwrap();
        let k = gfun::h_kernel(x, &cfg()).unwrap();
        prop_assert!((s.value - k.value).abs() <= s.err + k.err, "x={}: {} vs {}", x, s, k);
    }

    #[test]
    fn second_derivative_identity(x in log_x()) {
        let p = eval_point(x, &cfg()).unwrap();
        let x2 = x * x;
        let lhs = (p.fpp + p.fp.square()) * x2;
        let rhs = p.g + p.d.square() - 1.0;
        prop_assert!((lhs.value - rhs.value).abs() <= lhs.err + rhs.err, "x={}", x);
        let via_f = p.fpp * x2 + p.h * 2.0;
        prop_assert!((p.g.value - via_f.value).abs() <= p.g.err + via_f.err, "x={}", x);
    }

    #[test]
    fn point_bounds_hold(x in log_x()) {
        let p = eval_point(x, &cfg()).unwrap();
        let l = x.ln_1p();
        prop_assert!(p.G.value > 0.0 && p.g.value > 0.0 && p.h.value > 0.0);
        prop_assert!(p.h.strictly_inside(1.0 - l / x, x / (x + 1.0)));
        prop_assert!(p.g.strictly_inside(x / (x + 1.0), 1.0 - 1.0 / ((x + 1.0) * (x + 1.0))));
        prop_assert!(p.d.strictly_inside(1.0 / (x + 1.0), l / x));
        let d2 = p.d.square();
        prop_assert!(d2.strictly_inside(1.0 / ((x + 1.0) * (x + 1.0)), (l / x) * (l / x)));
        prop_assert!((p.fpp * (-0.5 * x)).hi() < p.fp.lo());
    }

    #[test]
    fn sharper_log_bound(a in (-4.0f64..6.0).prop_map(|e| 10f64.powf(e))) {
        let mid = (3.0 * a * a + 2.0 * a) / (2.0 * (1.0 + a) * (1.0 + a));
        prop_assert!(a / (1.0 + a) < mid && mid < a.ln_1p());
    }
}

#[test]
fn g_over_x_plus_one_decreasing() {
    let grid: Vec<f64> = (0..300).map(|k| 0.01 * 1.05f64.powi(k)).collect();
    let vals: Vec<_> = grid
        .iter()
        .map(|&x| eval_point(x, &cfg()).unwrap().G / (x + 1.0))
        .collect();
    for (w, x) in vals.windows(2).zip(&grid) {
        assert!(w[1].hi() < w[0].lo(), "x = {x}");
    }
}

#[test]
fn central_differences_match_derivatives() {
    const DELTA: f64 = 1e-5;
    for x in [1.0, 2.0, 5.0, 10.0, 50.0] {
        let p = eval_point(x, &cfg()).unwrap();
        let two_h = Dd::from_f64(x + DELTA) - Dd::from_f64(x - DELTA);
        let up = ddouble::big_g(x + DELTA);
        let mid = ddouble::big_g(x);
        let down = ddouble::big_g(x - DELTA);
        let fd1 = ((up - down) / two_h).to_f64();
        let fd2 = ((up - mid - mid + down) / (two_h * two_h).ldexp(-2)).to_f64();
        assert!((p.Gp.value - fd1).abs() <= 1e-6, "x={x}");
        assert!((p.Gpp.value - fd2).abs() <= 1e-4, "x={x}");
    }
}

#[test]
fn library_g_matches_double_double_oracle() {
    for x in [0.01, 0.3, 1.0, 2.5, 17.0, 123.0, 5000.0] {
        let p = eval_point(x, &cfg()).unwrap();
        let oracle = ddouble::big_g(x).to_f64();
        assert!(
            (p.G.value - oracle).abs() <= p.G.err,
            "x={x}: {} vs {oracle}",
            p.G
        );
    }
}

#[test]
fn ln_gamma_matches_double_double_oracle() {
    for x in [0.01, 0.5, 1.5, 7.25, 39.9, 40.0, 1e3, 1e6] {
        let v = kernel::ln_gamma(x, &cfg()).unwrap();
        let oracle = ddouble::ln_gamma(x).to_f64();
        assert!((v.value - oracle).abs() <= v.err, "x={x}: {v} vs {oracle}");
    }
}

#[test]
fn gprime_inside_sandwich_on_grid() {
    for k in 0..100 {
        let x = 0.05 * 1.1f64.powi(k);
        let s = gprime_sandwich(x, &cfg()).unwrap();
        let gp = eval_point(x, &cfg()).unwrap().Gp;
        assert!(s.lo.value <= s.hi.value);
        assert!(s.hi.value - gp.value >= -(gp.err + s.hi.err), "x={x}");
        assert!(gp.value - s.lo.value >= -(gp.err + s.lo.err), "x={x}");
    }
}

#[test]
fn series_agree_with_closed_forms_at_integers() {
    for row in sequences::harmonic_rows(50).unwrap() {
        let m = row.m as f64;
        if ![1.0, 2.0, 5.0, 10.0, 50.0].contains(&m) {
            continue;
        }
        let hs = gfun::h_series(m, &cfg()).unwrap();
        let hc = row.h_closed();
        assert!(
            (hs.value - hc.value).abs() <= hs.err + hc.err + 1e-10,
            "m={m}"
        );
        let gs = gfun::g_series(m, &cfg()).unwrap();
        let gc = row.g_closed();
        assert!(
            (gs.value - gc.value).abs() <= gs.err + gc.err + 1e-12,
            "m={m}"
        );
    }
}

#[test]
fn a_at_integers_matches_closed_form() {
    for row in sequences::harmonic_rows(200).unwrap() {
        if row.m % 20 != 1 {
            continue;
        }
        let p = eval_point(row.m as f64, &cfg()).unwrap();
        let c = row.a_closed();
        assert!(
            (p.a_of_x.value - c.value).abs() <= p.a_of_x.err + c.err,
            "m = {}",
            row.m
        );
    }
}
