//! Stokes verification reports, suite runs and exit codes.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain_family;
use super::scenario::Scenario;
use crate::darboux::Mode;
use crate::dual::{Dual, Theta};
use crate::error::{Error, Result};

pub const REPORT_SCHEMA: u32 = 1;

/// A side difference passes when it is within `GAP_FACTOR` times the
/// combined integration gap, or `ABS_FLOOR`, whichever is larger.
const GAP_FACTOR: f64 = 10.0;
const ABS_FLOOR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    IdentityViolation,
    NotConverged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StokesReport {
    pub schema_version: u32,
    pub name: String,
    pub theta: Theta,
    pub r: f64,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    /// `∫_c dw`.
    pub lhs: Dual<f64>,
    /// `∫_{∂c} w`.
    pub rhs: Dual<f64>,
    pub diff_re: f64,
    pub diff_ze: f64,
    pub lhs_gap_re: f64,
    pub lhs_gap_ze: f64,
    pub rhs_gap_re: f64,
    pub rhs_gap_ze: f64,
    pub tol_re: f64,
    pub tol_ze: f64,
    /// Largest partition resolution used on either side.
    pub refinement_n: usize,
    pub runtime_ms: f64,
    pub status: Status,
    pub pass: bool,
}

pub fn verify_stokes(scn: &Scenario) -> Result<StokesReport> {
    let start = Instant::now();
    let w = scn.form()?;
    let ch = scn.chain()?;
    let (lhs, lhs_ok) = chain_family(&w.exterior_derivative()?, &ch, &scn.refinement, scn.mode)?;
    let (rhs, rhs_ok) = chain_family(&w, &ch.boundary()?, &scn.refinement, scn.mode)?;
    let diff = lhs.value - rhs.value;
    let tol_re = (GAP_FACTOR * (lhs.gap_re + rhs.gap_re)).max(ABS_FLOOR);
    let tol_ze = (GAP_FACTOR * (lhs.gap_ze + rhs.gap_ze)).max(ABS_FLOOR);
    let status = if !(lhs_ok && rhs_ok) {
        Status::NotConverged
    } else if diff.re.abs() <= tol_re && diff.ze.abs() <= tol_ze {
        Status::Pass
    } else {
        Status::IdentityViolation
    };
    Ok(StokesReport {
        schema_version: REPORT_SCHEMA,
        name: scn.name.clone(),
        theta: scn.theta,
        r: scn.r,
        n: scn.n,
        k: scn.k,
        mode: scn.mode,
        lhs: lhs.value,
        rhs: rhs.value,
        diff_re: diff.re,
        diff_ze: diff.ze,
        lhs_gap_re: lhs.gap_re,
        lhs_gap_ze: lhs.gap_ze,
        rhs_gap_re: rhs.gap_re,
        rhs_gap_ze: rhs.gap_ze,
        tol_re,
        tol_ze,
        refinement_n: lhs.n.max(rhs.n),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        status,
        pass: status == Status::Pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub identity_violations: usize,
    pub not_converged: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub reports: Vec<StokesReport>,
    pub summary: SuiteSummary,
}

/// 3 if any scenario did not converge, else 1 if any violated the
/// identity, else 0.
pub fn exit_code(reports: &[StokesReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::NotConverged) {
        3
    } else if reports.iter().any(|r| r.status == Status::IdentityViolation) {
        1
    } else {
        0
    }
}

/// Validates every scenario, then runs them concurrently. Reports keep the
/// input order.
pub fn run_suite(scenarios: &[Scenario]) -> Result<SuiteReport> {
    for s in scenarios {
        s.validate().map_err(|e| Error::Config(format!("scenario {:?}: {e}", s.name)))?;
    }
    let reports: Vec<StokesReport> = scenarios.par_iter().map(verify_stokes).collect::<Result<_>>()?;
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let summary = SuiteSummary {
        total: reports.len(),
        passed: count(Status::Pass),
        identity_violations: count(Status::IdentityViolation),
        not_converged: count(Status::NotConverged),
        exit_code: exit_code(&reports),
    };
    Ok(SuiteReport { schema_version: REPORT_SCHEMA, reports, summary })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    theta: u8,
    r: f64,
    n: usize,
    k: usize,
    mode: Mode,
    lhs_re: f64,
    lhs_ze: f64,
    rhs_re: f64,
    rhs_ze: f64,
    diff_re: f64,
    diff_ze: f64,
    gap_re: f64,
    gap_ze: f64,
    refinement_n: usize,
    runtime_ms: f64,
    status: Status,
}

/// One row per report.
pub fn write_csv<W: Write>(out: W, reports: &[StokesReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            name: &r.name,
            theta: r.theta.as_u8(),
            r: r.r,
            n: r.n,
            k: r.k,
            mode: r.mode,
            lhs_re: r.lhs.re,
            lhs_ze: r.lhs.ze,
            rhs_re: r.rhs.re,
            rhs_ze: r.rhs.ze,
            diff_re: r.diff_re,
            diff_ze: r.diff_ze,
            gap_re: r.lhs_gap_re + r.rhs_gap_re,
            gap_ze: r.lhs_gap_ze + r.rhs_gap_ze,
            refinement_n: r.refinement_n,
            runtime_ms: r.runtime_ms,
            status: r.status,
        })
        .map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}
