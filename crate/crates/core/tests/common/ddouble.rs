//! Double-double arithmetic (about 32 significant digits) and a log-gamma
//! built on it. Used only as an independent oracle in tests.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: e }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn ldexp(self, k: i32) -> Dd {
        let s = 2f64.powi(k);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn exp(self) -> Dd {
        let k = (self.hi / LN2.hi).round();
        let r = self - LN2 * Dd::from_f64(k);
        // exp(r) = (exp(r / 2^10))^(2^10)
        let s = r.ldexp(-10);
        let mut term = Dd::from_f64(1.0);
        let mut sum = Dd::from_f64(1.0);
        for j in 1..=24 {
            term = term * s / Dd::from_f64(j as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.ldexp(k as i32)
    }

    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0);
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::from_f64(1.0);
        }
        y
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let s = two_sum(self.hi, b.hi);
        let t = two_sum(self.lo, b.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let p = self.hi * b.hi;
        let e = self.hi.mul_add(b.hi, -p);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        quick_two_sum(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        quick_two_sum(q1, q2) + Dd::from_f64(q3)
    }
}

pub const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);
pub const PI: Dd = Dd::new(std::f64::consts::PI, 1.224_646_799_147_353_2e-16);

/// `(numerator, denominator)` of `B_{2k}` for k = 1..=11.
const BERNOULLI: [(f64, f64); 11] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
];

/// `ln Γ(z)` for `z > 0`, shifting up to at least 60 before Stirling.
pub fn ln_gamma(z: f64) -> Dd {
    assert!(z > 0.0);
    let mut w = Dd::from_f64(z);
    let mut prod = Dd::from_f64(1.0);
    while w.hi < 60.0 {
        prod = prod * w;
        w = w + Dd::from_f64(1.0);
    }
    let half = Dd::from_f64(0.5);
    let half_ln_2pi = half * (PI.ldexp(1)).ln();
    let mut acc = (w - half) * w.ln() - w + half_ln_2pi;
    let w2 = w * w;
    let mut wpow = w;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        let coeff = Dd::from_f64(num) / (Dd::from_f64(den) * Dd::from_f64(m * (m - 1.0)));
        acc = acc + coeff / wpow;
        wpow = wpow * w2;
    }
    acc - prod.ln()
}

/// `G(x) = exp(ln Γ(x+1)/x)`.
pub fn big_g(x: f64) -> Dd {
    let xd = Dd::from_f64(x);
    (ln_gamma_shifted(x) / xd).exp()
}

/// `ln Γ(x + 1)` with the `+1` carried exactly.
fn ln_gamma_shifted(x: f64) -> Dd {
    ln_gamma(x) + Dd::from_f64(x).ln()
}
