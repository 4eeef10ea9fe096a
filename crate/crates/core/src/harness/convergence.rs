//! Degree-sweep convergence experiments.

use serde::Serialize;
use std::time::Instant;

use super::config::ExperimentConfig;
use super::{parse_measure_spec, HarnessError};
use crate::lagrange;
use crate::opuc::OpucBasis;
use crate::paraorth::find_nodes;

/// Resolution for the reference value of ∫f dμ.
const REFERENCE_RESOLUTION: usize = 1 << 16;

/// One (n, p) result. `ok` is false when the basis or node computation
/// failed for this degree; the error fields are NaN in that case.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub n: usize,
    pub p: f64,
    pub interp_error: f64,
    pub quad_error: f64,
    pub wall_ms: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub measure: String,
    pub f: String,
    pub w_strategy: String,
    pub seed: Option<u64>,
    pub version: String,
    pub rows: Vec<Row>,
}

impl ConvergenceReport {
    /// CSV body with the fixed schema
    /// `n,p,interp_error,quad_error,measure,f,w_strategy,seed`.
    /// Wall-clock time is appended as an extra column only on request,
    /// so the default output is byte-reproducible.
    pub fn to_csv(&self, include_timing: bool) -> String {
        let mut out = String::from("n,p,interp_error,quad_error,measure,f,w_strategy,seed");
        if include_timing {
            out.push_str(",wall_ms");
        }
        out.push('\n');
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{:e},{:e},{},{},{},{}",
                row.n, row.p, row.interp_error, row.quad_error, self.measure, self.f,
                self.w_strategy, seed
            ));
            if include_timing {
                out.push_str(&format!(",{}", row.wall_ms));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Run one experiment: for each degree n build the basis and nodes,
/// interpolate, and record ‖f − Lₙ(f)‖ₚ for each p plus
/// |Qₙ(f) − ∫f dμ|. Failed degrees are marked and the run continues.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ConvergenceReport, HarnessError> {
    cfg.validate()?;
    let measure = parse_measure_spec(&cfg.measure)?;
    let f = cfg.function;
    let reference = measure.integrate(|z| f.eval(z), REFERENCE_RESOLUTION);

    let mut rows = Vec::new();
    for &n in &cfg.degrees {
        let start = Instant::now();
        let result = (|| -> Result<Vec<Row>, HarnessError> {
            // basis straight from the measure: the moment route loses
            // accuracy at large n when the coefficients do not decay
            let basis = OpucBasis::from_measure(&measure, n + 2)?;
            let w = cfg.w_strategy.w_for(n);
            let ns = find_nodes(&basis, n, w)?;
            let quad_error = (ns.quadrature(|z| f.eval(z)) - reference).norm();
            let interp = lagrange::interpolate(&ns, &basis, |z| f.eval(z));
            let resolution = lagrange::error_resolution(n, cfg.resolution);
            let mut out = Vec::new();
            for &p in &cfg.exponents {
                let interp_error =
                    measure.lp_norm(|z| f.eval(z) - interp.eval(&basis, z), p, resolution);
                out.push(Row {
                    n,
                    p,
                    interp_error,
                    quad_error,
                    wall_ms: 0.0,
                    ok: true,
                });
            }
            Ok(out)
        })();
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok(mut batch) => {
                for row in &mut batch {
                    row.wall_ms = wall_ms;
                }
                rows.append(&mut batch);
            }
            Err(_) => {
                for &p in &cfg.exponents {
                    rows.push(Row {
                        n,
                        p,
                        interp_error: f64::NAN,
                        quad_error: f64::NAN,
                        wall_ms,
                        ok: false,
                    });
                }
            }
        }
    }

    Ok(ConvergenceReport {
        measure: cfg.measure.clone(),
        f: cfg.function.to_string(),
        w_strategy: cfg.w_strategy.to_string(),
        seed: cfg.w_strategy.seed(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        rows,
    })
}
