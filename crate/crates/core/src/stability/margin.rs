use std::fmt;
use std::io;

use num_complex::Complex64;

use crate::group::{enumerate_elements, CyclicNormalForm, GroupSpec, Word};
use crate::hyperbolic::{Classification, H3Point, MoebiusMap, Representation};
use crate::separability::{is_separable, SeparabilityVerdict};

use super::orbit::{displacement, orbit_path, GapMinima};
use super::qg::{fit, QgFit};
use super::StabilityError;

/// Below this `|tr² - 4|` a non-loxodromic image is not refuted on its own.
pub const PARABOLIC_MARGIN: f64 = 1e-6;

/// Truncation parameters of a stability check.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityParams {
    /// Largest cyclic length enumerated.
    pub depth: usize,
    /// Powers of each element traced.
    pub powers: usize,
    /// Largest index gap in the quasi-geodesic fit.
    pub window: usize,
    /// Threshold `ε₀` on translation length per letter.
    pub margin: f64,
    pub k_max: f64,
    pub a_max: f64,
    pub basepoint: H3Point,
}

impl Default for StabilityParams {
    fn default() -> Self {
        StabilityParams {
            depth: 8,
            powers: 16,
            window: 24,
            margin: 0.02,
            k_max: 100.0,
            a_max: 50.0,
            basepoint: H3Point::origin(),
        }
    }
}

impl StabilityParams {
    /// Defaults, with depth 5 when the group has surface factors.
    pub fn for_group(group: &GroupSpec) -> Self {
        let depth = if group.is_free() { 8 } else { 5 };
        StabilityParams { depth, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), StabilityError> {
        let bad = |s: &str| Err(StabilityError::InvalidParams(s.into()));
        if self.depth < 1 {
            return bad("depth must be at least 1");
        }
        if self.powers < 2 {
            return bad("powers must be at least 2");
        }
        if self.window < 2 {
            return bad("window must be at least 2");
        }
        if !(self.margin > 0.0) {
            return bad("margin must be positive");
        }
        if !(self.k_max >= 1.0 && self.a_max >= 0.0) {
            return bad("need k_max >= 1 and a_max >= 0");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeparabilityStatus {
    /// Certified by a witness.
    Separable,
    /// Not decided; kept in the tested set.
    Unknown,
}

/// Measurements for one conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementRecord {
    pub form: CyclicNormalForm,
    pub name: String,
    pub length: usize,
    pub status: SeparabilityStatus,
    pub trace: Complex64,
    pub classification: Classification,
    pub translation_length: f64,
    /// Translation length per letter.
    pub ratio: f64,
    /// `d(x, g^k x) / (k |g|)` at `k = N/2` and `k = N`.
    pub drift: (f64, f64),
    pub qg: QgFit,
    minima: GapMinima,
}

impl ElementRecord {
    fn is_identity(&self) -> bool {
        self.classification == Classification::Identity
    }

    /// Non-loxodromic with `|tr² - 4|` beyond [`PARABOLIC_MARGIN`].
    fn clearly_not_loxodromic(&self) -> bool {
        self.classification != Classification::Loxodromic
            && (self.trace * self.trace - Complex64::new(4.0, 0.0)).norm() > PARABOLIC_MARGIN
    }

    fn drifting(&self, params: &StabilityParams) -> bool {
        self.ratio < params.margin && self.drift.0 > self.drift.1
    }

    /// Flags for the CSV `verdict_flags` column, `ok` when none apply.
    pub fn flags(&self, params: &StabilityParams) -> Vec<&'static str> {
        let mut f = Vec::new();
        if self.is_identity() {
            f.push("identity");
        } else if self.classification != Classification::Loxodromic {
            f.push("non_loxodromic");
        }
        if self.ratio < params.margin {
            f.push("low_ratio");
        }
        if self.drifting(params) {
            f.push("drift");
        }
        if self.qg.k_est > params.k_max || self.qg.a_est > params.a_max {
            f.push("qg");
        }
        if f.is_empty() {
            f.push("ok");
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FailCause {
    /// The element acts trivially.
    Identity,
    /// Elliptic, or parabolic by a clear margin.
    NotLoxodromic { trace_sq: Complex64 },
    /// Ratio below threshold while the displacement rate keeps falling.
    Drift { ratio: f64, q_half: f64, q_full: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum InconclusiveReason {
    /// Ratio below threshold without a refutation.
    LowRatio { ratio: f64 },
    /// A failure on an element whose separability is not certified.
    Uncertified,
    /// Fitted constants beyond the caps.
    QgExceeded { k_est: f64, a_est: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum StabilityVerdict {
    Pass,
    Fail { witness: String, cause: FailCause },
    Inconclusive { element: String, reason: InconclusiveReason },
}

impl StabilityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            StabilityVerdict::Pass => "Pass",
            StabilityVerdict::Fail { .. } => "Fail",
            StabilityVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    /// 0 Pass, 1 Fail, 2 Inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            StabilityVerdict::Pass => 0,
            StabilityVerdict::Fail { .. } => 1,
            StabilityVerdict::Inconclusive { .. } => 2,
        }
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityVerdict::Pass => write!(f, "Pass"),
            StabilityVerdict::Fail { witness, cause } => {
                write!(f, "Fail witness=\"{witness}\" ")?;
                match cause {
                    FailCause::Identity => write!(f, "cause=identity"),
                    FailCause::NotLoxodromic { trace_sq } => {
                        write!(f, "cause=not_loxodromic trace_sq={}{:+}i", trace_sq.re, trace_sq.im)
                    }
                    FailCause::Drift { ratio, q_half, q_full } => {
                        write!(f, "cause=drift ratio={ratio} q_half={q_half} q_full={q_full}")
                    }
                }
            }
            StabilityVerdict::Inconclusive { element, reason } => {
                write!(f, "Inconclusive element=\"{element}\" ")?;
                match reason {
                    InconclusiveReason::LowRatio { ratio } => write!(f, "reason=low_ratio ratio={ratio}"),
                    InconclusiveReason::Uncertified => write!(f, "reason=uncertified_separability"),
                    InconclusiveReason::QgExceeded { k_est, a_est } => {
                        write!(f, "reason=qg_exceeded k_est={k_est} a_est={a_est}")
                    }
                }
            }
        }
    }
}

/// Outcome of [`stability_margin`]. A Pass holds at the recorded depth,
/// powers and window only.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub params: StabilityParams,
    /// Sorted by canonical form.
    pub records: Vec<ElementRecord>,
    pub k_est: f64,
    pub a_est: f64,
    /// Least ratio over the records.
    pub margin: f64,
    pub verdict: StabilityVerdict,
}

pub const CSV_HEADER: [&str; 9] =
    ["element", "length", "separable", "trace_re", "trace_im", "trans_len", "ratio", "worst_qg", "verdict_flags"];

impl StabilityReport {
    pub fn header(&self) -> String {
        let p = &self.params;
        format!("stability certified at depth L={} N={} W={} only", p.depth, p.powers, p.window)
    }

    /// One row per record, columns as in [`CSV_HEADER`].
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.records {
            let status = match r.status {
                SeparabilityStatus::Separable => "separable",
                SeparabilityStatus::Unknown => "unknown",
            };
            w.write_record([
                r.name.clone(),
                r.length.to_string(),
                status.to_string(),
                r.trace.re.to_string(),
                r.trace.im.to_string(),
                r.translation_length.to_string(),
                r.ratio.to_string(),
                r.qg.worst_ratio.to_string(),
                r.flags(&self.params).join("|"),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let separable = self.records.iter().filter(|r| r.status == SeparabilityStatus::Separable).count();
        writeln!(f, "{}", self.header())?;
        writeln!(f, "elements: {} (separable {}, unknown {})", self.records.len(), separable, self.records.len() - separable)?;
        writeln!(f, "margin: {}", self.margin)?;
        writeln!(f, "qg: K={} A={}", self.k_est, self.a_est)?;
        writeln!(f, "verdict: {}", self.verdict)
    }
}

fn power(m: &MoebiusMap, k: usize) -> MoebiusMap {
    let mut out = MoebiusMap::identity();
    for _ in 0..k {
        out = (out * *m).renormalize();
    }
    out
}

fn measure(
    rep: &Representation,
    form: CyclicNormalForm,
    status: SeparabilityStatus,
    params: &StabilityParams,
) -> Result<ElementRecord, StabilityError> {
    let group = rep.group();
    let word = form.to_word();
    let m = rep.evaluate(&word)?;
    let len = form.len();
    let half = params.powers / 2;
    let q = |k: usize| displacement(&power(&m, k), &params.basepoint) / (k * len) as f64;
    let minima = GapMinima::from_periodic(rep, word.letters(), params.powers, &params.basepoint, params.window);
    let qg = fit(&minima, params.window, params.a_max);
    debug_assert!(qg.dominates(&minima));
    let translation_length = m.translation_length();
    Ok(ElementRecord {
        name: group.format_word(&word),
        length: len,
        status,
        trace: m.trace(),
        classification: m.classify(),
        translation_length,
        ratio: translation_length / len as f64,
        drift: (q(half), q(params.powers)),
        qg,
        minima,
        form,
    })
}

/// Depth-bounded separable-stability check.
///
/// Every canonical class up to `params.depth` whose separability is
/// certified or unknown is measured. A certified separable element with an
/// identity image, a clearly non-loxodromic image, or a ratio below the
/// threshold with falling displacement rate gives Fail. Otherwise any ratio
/// below threshold, any uncertified failure, or fitted constants beyond the
/// caps give Inconclusive, and the rest is Pass.
pub fn stability_margin(rep: &Representation, params: &StabilityParams) -> Result<StabilityReport, StabilityError> {
    params.validate()?;
    let group = rep.group();
    group.require_free_product()?;
    let mut records = Vec::new();
    for form in enumerate_elements(group, params.depth) {
        let status = match is_separable(&form.to_word(), group)? {
            SeparabilityVerdict::Separable(_) => SeparabilityStatus::Separable,
            SeparabilityVerdict::Unknown => SeparabilityStatus::Unknown,
            SeparabilityVerdict::NotSeparable(_) => continue,
        };
        records.push(measure(rep, form, status, params)?);
    }
    records.sort_by(|a, b| a.form.cmp(&b.form));

    let mut global = GapMinima { by_gap: vec![(f64::INFINITY, 0); params.window] };
    for r in &records {
        for (slot, v) in global.by_gap.iter_mut().zip(&r.minima.by_gap) {
            if v.0 < slot.0 {
                *slot = *v;
            }
        }
    }
    global.by_gap.retain(|v| v.0.is_finite());
    let gfit = fit(&global, params.window, params.a_max);
    let margin = records.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let verdict = decide(&records, params, &gfit);
    Ok(StabilityReport { params: params.clone(), records, k_est: gfit.k_est, a_est: gfit.a_est, margin, verdict })
}

fn decide(records: &[ElementRecord], params: &StabilityParams, gfit: &QgFit) -> StabilityVerdict {
    for r in records.iter().filter(|r| r.status == SeparabilityStatus::Separable) {
        let cause = if r.is_identity() {
            Some(FailCause::Identity)
        } else if r.clearly_not_loxodromic() {
            Some(FailCause::NotLoxodromic { trace_sq: r.trace * r.trace })
        } else if r.drifting(params) {
            Some(FailCause::Drift { ratio: r.ratio, q_half: r.drift.0, q_full: r.drift.1 })
        } else {
            None
        };
        if let Some(cause) = cause {
            return StabilityVerdict::Fail { witness: r.name.clone(), cause };
        }
    }
    for r in records {
        let reason = if r.status == SeparabilityStatus::Unknown
            && (r.is_identity() || r.clearly_not_loxodromic() || r.drifting(params))
        {
            Some(InconclusiveReason::Uncertified)
        } else if r.ratio < params.margin {
            Some(InconclusiveReason::LowRatio { ratio: r.ratio })
        } else {
            None
        };
        if let Some(reason) = reason {
            return StabilityVerdict::Inconclusive { element: r.name.clone(), reason };
        }
    }
    if gfit.k_est > params.k_max || gfit.a_est > params.a_max {
        let worst = records
            .iter()
            .max_by(|a, b| a.qg.k_est.total_cmp(&b.qg.k_est).then(a.qg.a_est.total_cmp(&b.qg.a_est)))
            .map(|r| r.name.clone())
            .unwrap_or_default();
        return StabilityVerdict::Inconclusive {
            element: worst,
            reason: InconclusiveReason::QgExceeded { k_est: gfit.k_est, a_est: gfit.a_est },
        };
    }
    StabilityVerdict::Pass
}

/// Re-derives a Fail witness from scratch: the element must carry a
/// replayable Separable witness, and its image must be the identity,
/// clearly non-loxodromic, or have ratio below threshold with
/// `d(x, g^k x) / (k |g|)` falling from `k = N/2` to `k = N` along the
/// orbit path.
pub fn recheck_fail(rep: &Representation, witness: &Word, params: &StabilityParams) -> bool {
    let group = rep.group();
    let Ok(SeparabilityVerdict::Separable(wit)) = is_separable(witness, group) else { return false };
    if !wit.verify(witness, group) {
        return false;
    }
    let Ok(m) = rep.evaluate(witness) else { return false };
    if m.is_identity() {
        return true;
    }
    let t2 = m.trace_sq();
    if m.classify() != Classification::Loxodromic && (t2 - Complex64::new(4.0, 0.0)).norm() > PARABOLIC_MARGIN {
        return true;
    }
    let Ok((form, _)) = crate::group::cyclic_reduce(group, witness) else { return false };
    let len = form.len() as f64;
    let ratio = m.translation_length() / len;
    let rate = |k: usize| {
        orbit_path(rep, &form, k, &params.basepoint)
            .ok()
            .and_then(|p| p.last().map(|end| p[0].dist(end) / (k as f64 * len)))
    };
    match (rate(params.powers / 2), rate(params.powers)) {
        (Some(h), Some(f)) => ratio < params.margin && h > f,
        _ => false,
    }
}
