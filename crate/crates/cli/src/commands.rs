use rayon::prelude::*;

use gammaseq_core::analysis::limits::verify_limits;
use gammaseq_core::analysis::roots::{find_root_a, find_root_c, RootBracket};
use gammaseq_core::analysis::suites;
use gammaseq_core::analysis::{SuiteReport, Verdict};
use gammaseq_core::sequences::{self, HarmonicRows};
use gammaseq_core::{eval_point, CertifiedValue, Error, EvalConfig, Field};

use crate::args::{SeqName, SuiteName};
use crate::output::{Cell, Kind, Record};

/// Exit status of a run. Codes: 0 success, 1 verification failure,
/// 2 usage or domain error, 3 inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::Precondition { .. } => CliError::Usage(e.to_string()),
            Error::Internal { .. } => CliError::Failure(e.to_string()),
        }
    }
}

pub type Outcome = Result<(Vec<Record>, Status), CliError>;

/// Parses a decimal string into a finite `f64`.
pub fn parse_decimal(name: &str, s: &str) -> Result<f64, CliError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Usage(format!(
            "--{name}: `{s}` is not a finite decimal number"
        ))),
    }
}

fn with_value(r: Record, v: CertifiedValue) -> Record {
    r.with("value", v.value).with("err", Cell::Err(v.err))
}

pub fn eval(x: &str, fields: &[Field], cfg: &EvalConfig) -> Outcome {
    let x = parse_decimal("x", x)?;
    let p = eval_point(x, cfg)?;
    let fields = if fields.is_empty() {
        &Field::ALL[..]
    } else {
        fields
    };
    let records = fields
        .iter()
        .map(|&f| {
            let r = Record::new(Kind::Point)
                .with("x", x)
                .with("field", f.name());
            with_value(r, p.get(f))
        })
        .collect();
    Ok((records, Status::Ok))
}

pub fn seq(name: SeqName, n_from: u64, n_to: u64) -> Outcome {
    if n_from < 1 || n_from > n_to {
        return Err(CliError::Usage(format!(
            "need 1 <= n_from <= n_to, got {n_from}..{n_to}"
        )));
    }
    let values: Vec<(u64, CertifiedValue)> = match name {
        SeqName::Sigma | SeqName::S => (n_from..=n_to)
            .into_par_iter()
            .map(|n| {
                let t = sequences::sigma(n)?;
                Ok((n, if name == SeqName::S { t.s } else { t.sigma }))
            })
            .collect::<Result<_, Error>>()?,
        SeqName::C | SeqName::D | SeqName::Harmonic => HarmonicRows::new()
            .skip((n_from - 1) as usize)
            .take((n_to - n_from + 1) as usize)
            .map(|row| {
                let v = match name {
                    SeqName::C => row.c_m,
                    SeqName::D => row.d_m,
                    _ => row.harmonic,
                };
                (row.m, v)
            })
            .collect(),
    };
    let records = values
        .into_iter()
        .map(|(n, v)| {
            let r = Record::new(Kind::SequenceRow)
                .with("sequence", name.name())
                .with("n", n);
            with_value(r, v)
        })
        .collect();
    Ok((records, Status::Ok))
}

fn root_record(b: &RootBracket) -> Record {
    Record::new(Kind::Root)
        .with("name", b.target.name())
        .with("lo", b.lo)
        .with("hi", b.hi)
        .with("width", b.width())
        .with("iterations", u64::from(b.iterations))
        .with("contained", b.containment_holds())
}

pub fn roots(tol: f64) -> Outcome {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be > 0, got {tol}")));
    }
    let brackets = [find_root_a(tol)?, find_root_c(tol)?];
    let status = if brackets.iter().all(RootBracket::containment_holds) {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok((brackets.iter().map(root_record).collect(), status))
}

pub fn na(a: &str) -> Outcome {
    let a = parse_decimal("a", a)?;
    let r = sequences::n_a(a)?;
    let record = Record::new(Kind::Na)
        .with("a", r.a_in)
        .with("n_a", r.n_a)
        .with("interval_lo", r.interval_lo)
        .with("interval_hi", r.interval_hi);
    Ok((vec![record], Status::Ok))
}

fn suite_record(r: &SuiteReport) -> Record {
    Record::new(Kind::Suite)
        .with("suite", r.suite_id.as_str())
        .with("range", r.range_descr.as_str())
        .with("n_checked", r.n_checked)
        .with("n_failed", r.n_failed)
        .with("n_inconclusive", r.n_inconclusive)
        .with("worst_margin", r.worst_margin)
        .with("verdict", r.verdict().to_string())
}

/// Grid used by the identity checks under `verify bounds`.
const IDENTITY_GRID: (f64, f64, usize) = (0.01, 1e4, 500);
/// Grid used by the sign-bridge checks under `verify bounds`.
const SIGN_BRIDGE_GRID: (f64, f64, usize) = (0.5, 100.0, 100);
/// First index of the `S_n` sandwich.
const SANDWICH_FROM: u64 = 18;

fn run_suites(
    suite: SuiteName,
    m_max: u64,
    n_max: u64,
    cfg: &EvalConfig,
) -> Result<Vec<SuiteReport>, Error> {
    let mut out = Vec::new();
    let all = suite == SuiteName::All;
    if all || suite == SuiteName::Euler {
        out.push(suites::verify_cor_euler(m_max)?);
    }
    if all || suite == SuiteName::Polygamma {
        out.push(suites::verify_cor_polygamma(m_max, cfg)?);
    }
    if all || suite == SuiteName::Bounds {
        out.push(suites::verify_bounds(&suites::default_bounds_grid(), cfg)?);
        let (lo, hi, n) = IDENTITY_GRID;
        out.push(suites::verify_identities(
            &suites::log_grid(lo, hi, n),
            cfg,
        )?);
        let (lo, hi, n) = SIGN_BRIDGE_GRID;
        out.push(suites::verify_sign_bridge(
            &suites::log_grid(lo, hi, n),
            cfg,
        )?);
        out.push(suites::verify_d5_shape()?);
        out.push(suites::verify_gpp_beyond_c(cfg)?);
    }
    if all || suite == SuiteName::Limits {
        out.push(verify_limits(cfg)?);
    }
    if all || suite == SuiteName::Monotone {
        out.push(suites::verify_sigma_monotone(n_max)?);
        if n_max >= SANDWICH_FROM {
            out.push(suites::verify_s_sandwich(SANDWICH_FROM, n_max)?);
        }
        out.push(suites::verify_harmonic_monotone(m_max)?);
    }
    Ok(out)
}

pub fn verify(suite: SuiteName, m_max: u64, n_max: u64, cfg: &EvalConfig) -> Outcome {
    let reports = run_suites(suite, m_max, n_max, cfg)?;
    let verdicts: Vec<Verdict> = reports.iter().map(SuiteReport::verdict).collect();
    let status = if verdicts.contains(&Verdict::Fail) {
        Status::Failed
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    for r in &reports {
        for (tag, list) in [("failed", &r.failures), ("inconclusive", &r.inconclusive)] {
            for c in list {
                eprintln!(
                    "{} {tag}: {} at {} (lhs {:e}, rhs {:e})",
                    r.suite_id, c.label, c.at, c.lhs, c.rhs
                );
            }
        }
    }
    Ok((reports.iter().map(suite_record).collect(), status))
}
