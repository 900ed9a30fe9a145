use std::io;

use crate::hyperbolic::{HyperbolicError, Representation};

use super::margin::{stability_margin, StabilityParams};

/// A one-parameter family of representations.
pub trait RepFamily {
    /// Column name of the parameter.
    fn parameter(&self) -> &str;
    fn at(&self, t: f64) -> Result<Representation, HyperbolicError>;
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub margin: f64,
    pub k_est: f64,
    pub a_est: f64,
    pub verdict: &'static str,
}

/// One grid point; failures are kept as their message.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub outcome: Result<SweepPoint, String>,
}

/// Runs [`stability_margin`] at every grid point, in grid order.
pub fn sweep(family: &dyn RepFamily, grid: &[f64], params: &StabilityParams) -> Vec<SweepRow> {
    grid.iter()
        .map(|&t| {
            let outcome = family
                .at(t)
                .map_err(|e| e.to_string())
                .and_then(|rep| stability_margin(&rep, params).map_err(|e| e.to_string()))
                .map(|r| SweepPoint { margin: r.margin, k_est: r.k_est, a_est: r.a_est, verdict: r.verdict.label() });
            SweepRow { parameter: t, outcome }
        })
        .collect()
}

/// Columns: the parameter, `margin`, `k_est`, `a_est`, `verdict`, `error`.
pub fn write_sweep_csv<W: io::Write>(parameter: &str, rows: &[SweepRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([parameter, "margin", "k_est", "a_est", "verdict", "error"])?;
    for row in rows {
        let t = row.parameter.to_string();
        match &row.outcome {
            Ok(p) => w.write_record([
                t,
                p.margin.to_string(),
                p.k_est.to_string(),
                p.a_est.to_string(),
                p.verdict.to_string(),
                String::new(),
            ])?,
            Err(e) => w.write_record([t, String::new(), String::new(), String::new(), "error".into(), e.clone()])?,
        }
    }
    w.flush()?;
    Ok(())
}
