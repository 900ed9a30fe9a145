use crate::hyperbolic::H3Point;

use super::orbit::GapMinima;
use super::StabilityError;

/// Default cap on the additive constant.
pub const DEFAULT_A_MAX: f64 = 50.0;

/// Quasi-geodesic constants of a sampled path.
///
/// `(k_est, a_est)` is the envelope `c ≤ K d + A` with the least `K ≥ 1`
/// for which some `A ≤ a_max` works, and then the least such `A`. When no
/// finite `K` works `k_est` is infinite and `a_est` is the largest gap with
/// zero distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QgFit {
    pub k_est: f64,
    pub a_est: f64,
    /// Least `d / c` over pairs with `2c ≥ window`.
    pub worst_ratio: f64,
    /// Index pair attaining `worst_ratio`.
    pub argmin: (usize, usize),
}

impl QgFit {
    /// True when `c ≤ K d + A` holds for every recorded gap.
    pub(crate) fn dominates(&self, minima: &GapMinima) -> bool {
        minima.by_gap.iter().enumerate().all(|(k, &(d, _))| {
            let c = (k + 1) as f64;
            let bound = if d == 0.0 { self.a_est } else { self.k_est * d + self.a_est };
            c <= bound + 1e-9 * c
        })
    }
}

pub(crate) fn fit(minima: &GapMinima, window: usize, a_max: f64) -> QgFit {
    let gaps = || minima.by_gap.iter().enumerate().map(|(k, &(d, i))| ((k + 1) as f64, d, i));
    let mut k_est: f64 = 1.0;
    for (c, d, _) in gaps() {
        if d > 0.0 {
            k_est = k_est.max((c - a_max) / d);
        } else if c > a_max {
            k_est = f64::INFINITY;
        }
    }
    let a_est = gaps()
        .map(|(c, d, _)| if d == 0.0 { c } else if k_est.is_infinite() { 0.0 } else { c - k_est * d })
        .fold(0.0, f64::max);
    let long: Vec<_> = gaps().filter(|&(c, _, _)| 2.0 * c >= window as f64).collect();
    // short paths fall back to their longest gap
    let pool = if long.is_empty() { gaps().next_back().into_iter().collect() } else { long };
    let (c, d, i) = pool
        .into_iter()
        .min_by(|x, y| (x.1 / x.0).total_cmp(&(y.1 / y.0)))
        .unwrap_or((1.0, 0.0, 0));
    QgFit { k_est, a_est, worst_ratio: d / c, argmin: (i, i + c as usize) }
}

/// Quasi-geodesic constants over all index pairs `|i - j| ≤ window`.
pub fn qg_constants(path: &[H3Point], window: usize) -> Result<QgFit, StabilityError> {
    qg_constants_with(path, window, DEFAULT_A_MAX)
}

/// [`qg_constants`] with an explicit additive cap.
pub fn qg_constants_with(path: &[H3Point], window: usize, a_max: f64) -> Result<QgFit, StabilityError> {
    if path.len() < 2 {
        return Err(StabilityError::PathTooShort(path.len()));
    }
    if window < 1 {
        return Err(StabilityError::InvalidParams("window must be positive".into()));
    }
    Ok(fit(&GapMinima::from_points(path, window), window, a_max))
}
