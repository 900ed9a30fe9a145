use num_complex::Complex64;

use crate::group::{CyclicNormalForm, GroupError, Letter};
use crate::hyperbolic::{H3Point, MoebiusMap, Representation};

use super::StabilityError;

/// Multiplications between determinant renormalizations.
const RENORM_EVERY: usize = 16;

/// Orbit of `x` along the letter path of `g^n`: the images of `x` under
/// every prefix, `n·|g| + 1` points starting at `x`.
pub fn orbit_path(
    rep: &Representation,
    g: &CyclicNormalForm,
    n: usize,
    x: &H3Point,
) -> Result<Vec<H3Point>, StabilityError> {
    if g.is_empty() {
        return Err(GroupError::TrivialElement.into());
    }
    if n == 0 {
        return Err(StabilityError::InvalidParams("powers must be at least 1".into()));
    }
    let letters = g.to_word().into_letters();
    let mut m = MoebiusMap::identity();
    let mut path = Vec::with_capacity(n * letters.len() + 1);
    path.push(*x);
    for (i, l) in letters.iter().cycle().take(n * letters.len()).enumerate() {
        m = m * *rep.letter(*l);
        if (i + 1) % RENORM_EVERY == 0 {
            m = m.renormalize();
        }
        path.push(m.apply(x));
    }
    Ok(path)
}

/// `d(x, m x)`, stable for very large translations.
pub fn displacement(m: &MoebiusMap, x: &H3Point) -> f64 {
    let s = x.h.sqrt();
    // t takes the point above the origin at height one to x
    let t = MoebiusMap::from_normalized(Complex64::new(s, 0.0), x.z / s, Complex64::new(0.0, 0.0), Complex64::new(1.0 / s, 0.0));
    let n = t.inverse() * *m * t;
    let e = [n.a.norm(), n.b.norm(), n.c.norm(), n.d.norm()];
    let top = e.iter().copied().fold(0.0, f64::max);
    // cosh d = |n|^2 / 2
    let ln_f = 2.0 * top.ln() + e.iter().map(|v| (v / top).powi(2)).sum::<f64>().ln();
    if ln_f < 25.0 {
        x.dist(&m.apply(x))
    } else {
        ln_f
    }
}

/// Least distance for each combinatorial gap `c = 1..=cmax`, with the
/// starting index of a pair attaining it.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GapMinima {
    pub(crate) by_gap: Vec<(f64, usize)>,
}

impl GapMinima {
    fn new(cmax: usize) -> Self {
        GapMinima { by_gap: vec![(f64::INFINITY, 0); cmax] }
    }

    fn record(&mut self, i: usize, c: usize, d: f64) {
        let slot = &mut self.by_gap[c - 1];
        if d < slot.0 {
            *slot = (d, i);
        }
    }

    pub(crate) fn from_points(path: &[H3Point], window: usize) -> Self {
        let cmax = window.min(path.len() - 1);
        let mut out = GapMinima::new(cmax);
        for i in 0..path.len() {
            for c in 1..=cmax.min(path.len() - 1 - i) {
                out.record(i, c, path[i].dist(&path[i + c]));
            }
        }
        out
    }

    /// Same minima as [`GapMinima::from_points`] on the orbit path of
    /// `letters` repeated `n` times, using periodicity so only one period of
    /// starting points is walked.
    pub(crate) fn from_periodic(rep: &Representation, letters: &[Letter], n: usize, x: &H3Point, window: usize) -> Self {
        let p = n * letters.len();
        let cmax = window.min(p);
        let mut out = GapMinima::new(cmax);
        for r in 0..letters.len().min(p) {
            let mut m = MoebiusMap::identity();
            for c in 1..=cmax.min(p - r) {
                m = m * *rep.letter(letters[(r + c - 1) % letters.len()]);
                if c % RENORM_EVERY == 0 {
                    m = m.renormalize();
                }
                out.record(r, c, displacement(&m, x));
            }
        }
        out
    }
}
