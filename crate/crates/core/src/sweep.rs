//! Energy sweeps: closed-form R and T on a uniform grid, optionally checked
//! against the direct-integration oracle.

use serde::{Deserialize, Serialize};

use crate::barriers::{Barrier, Region, ScatteringConfig};
use crate::coefficients::closed_form_rt;
use crate::error::{Error, Result};
use crate::ode_oracle::{compare_closed_form, ComparisonStatus};
use crate::parallel::Execution;

/// One grid energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(rename = "R")]
    pub reflection: Option<f64>,
    #[serde(rename = "T")]
    pub transmission: Option<f64>,
    pub region: Region,
    /// Empty, `singular`, `oracle-checked`, `oracle-failed` or `failed`.
    pub flags: String,
}

/// What went wrong at a grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum PointProblem {
    /// The closed form diverges here.
    Singular,
    /// The oracle disagreed with the closed form or could not converge.
    Oracle(String),
    /// A special function or the configuration failed.
    Numerical(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub record: SweepRecord,
    pub problem: Option<PointProblem>,
    /// `max(|ΔR|, |ΔT|)` between closed form and oracle, when checked.
    pub oracle_deviation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub barrier: Barrier,
    pub mass: f64,
    pub height: f64,
    pub emin: f64,
    pub emax: f64,
    pub steps: usize,
    /// Oracle tolerance; `None` skips the oracle.
    pub oracle_tol: Option<f64>,
}

/// `E_i = emin + i (emax - emin) / (steps - 1)`; a single step gives `[emin]`.
pub fn energy_grid(emin: f64, emax: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidConfig("steps must be at least 1".into()));
    }
    if !(emin.is_finite() && emax.is_finite() && emin <= emax) {
        return Err(Error::InvalidConfig(format!(
            "energy range must satisfy emin <= emax, got [{emin}, {emax}]"
        )));
    }
    if steps == 1 {
        return Ok(vec![emin]);
    }
    let width = emax - emin;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i == steps - 1 { emax } else { emin + i as f64 * width / last })
        .collect())
}

/// Evaluates one grid energy.
pub fn evaluate_point(
    energy: f64,
    mass: f64,
    height: f64,
    barrier: Barrier,
    oracle_tol: Option<f64>,
) -> SweepPoint {
    let cfg = match ScatteringConfig::new(energy, mass, height, barrier) {
        Ok(cfg) => cfg,
        Err(e) => {
            return failed(energy, Region::Transmissive, PointProblem::Numerical(e.to_string()));
        }
    };
    let region = cfg.region();
    let rt = match closed_form_rt(&cfg) {
        Ok(rt) => rt,
        Err(Error::Singular { .. }) => {
            return SweepPoint {
                record: record(energy, None, region, "singular"),
                problem: Some(PointProblem::Singular),
                oracle_deviation: None,
            }
        }
        Err(e) => return failed(energy, region, PointProblem::Numerical(e.to_string())),
    };
    let Some(tol) = oracle_tol else {
        return SweepPoint {
            record: record(energy, Some((rt.reflection, rt.transmission)), region, ""),
            problem: None,
            oracle_deviation: None,
        };
    };
    let values = Some((rt.reflection, rt.transmission));
    match compare_closed_form(&cfg, tol) {
        Ok(report) => {
            let (flag, problem) = match report.status {
                ComparisonStatus::Pass | ComparisonStatus::SkippedSingular => ("oracle-checked", None),
                ComparisonStatus::Fail => (
                    "oracle-failed",
                    Some(PointProblem::Oracle(format!(
                        "E = {energy}: closed form R = {:.6e}, oracle R = {:.6e}, deviation {:.3e} > tol {tol:e}",
                        rt.reflection,
                        report.oracle.map_or(f64::NAN, |o| o.reflection),
                        report.abs_deviation.unwrap_or(f64::NAN),
                    ))),
                ),
            };
            SweepPoint {
                record: record(energy, values, region, flag),
                problem,
                oracle_deviation: report.abs_deviation,
            }
        }
        Err(e) => SweepPoint {
            record: record(energy, values, region, "oracle-failed"),
            problem: Some(PointProblem::Oracle(format!("E = {energy}: {e}"))),
            oracle_deviation: None,
        },
    }
}

fn record(energy: f64, values: Option<(f64, f64)>, region: Region, flags: &str) -> SweepRecord {
    SweepRecord {
        energy,
        reflection: values.map(|v| v.0),
        transmission: values.map(|v| v.1),
        region,
        flags: flags.to_string(),
    }
}

fn failed(energy: f64, region: Region, problem: PointProblem) -> SweepPoint {
    SweepPoint {
        record: record(energy, None, region, "failed"),
        problem: Some(problem),
        oracle_deviation: None,
    }
}

/// Runs the sweep; points come back in ascending energy.
pub fn run_sweep(spec: &SweepSpec, execution: Execution) -> Result<Vec<SweepPoint>> {
    let grid = energy_grid(spec.emin, spec.emax, spec.steps)?;
    Ok(execution.map(&grid, |&e| {
        evaluate_point(e, spec.mass, spec.height, spec.barrier, spec.oracle_tol)
    }))
}
