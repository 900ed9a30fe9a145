use crate::group::{GroupSpec, Letter, Word};

use num_complex::Complex64;

use super::moebius::{MoebiusMap, DET_TOL};
use super::HyperbolicError;

/// Multiplications between determinant renormalizations.
const RENORM_EVERY: usize = 16;

/// An assignment of a Möbius map to each generator of a group.
///
/// Nothing is assumed about discreteness or faithfulness. The relator
/// residual of each surface factor is computed on construction.
#[derive(Clone, Debug)]
pub struct Representation {
    group: GroupSpec,
    images: Vec<MoebiusMap>,
    inverses: Vec<MoebiusMap>,
    residuals: Vec<(usize, f64)>,
}

impl Representation {
    /// `images[i]` is the image of generator `i`.
    pub fn new(group: GroupSpec, images: Vec<MoebiusMap>) -> Result<Self, HyperbolicError> {
        if images.len() != group.generator_count() {
            return Err(HyperbolicError::WrongImageCount { expected: group.generator_count(), got: images.len() });
        }
        // entries already at determinant one are kept bit for bit
        let images: Vec<MoebiusMap> = images
            .iter()
            .map(|m| if (m.det() - Complex64::new(1.0, 0.0)).norm() <= DET_TOL { *m } else { m.renormalize() })
            .collect();
        let inverses = images.iter().map(MoebiusMap::inverse).collect();
        let mut rep = Representation { group, images, inverses, residuals: Vec::new() };
        rep.residuals = rep
            .group
            .surface_factors()
            .map(|f| {
                let r = rep.group.relator(f.id).expect("surface factor has a relator");
                (f.id, rep.evaluate_unchecked(&r).residual_from_identity())
            })
            .collect();
        Ok(rep)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn images(&self) -> &[MoebiusMap] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &MoebiusMap {
        &self.images[generator]
    }

    /// Image of a single letter.
    ///
    /// # Panics
    /// When the letter is outside the group.
    pub fn letter(&self, l: Letter) -> &MoebiusMap {
        if l.is_inverse() { &self.inverses[l.generator()] } else { &self.images[l.generator()] }
    }

    /// `(factor, residual)` for every surface factor.
    pub fn residuals(&self) -> &[(usize, f64)] {
        &self.residuals
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    /// Ordered product of letter images.
    pub fn evaluate(&self, w: &Word) -> Result<MoebiusMap, HyperbolicError> {
        if let Some(l) = w.letters().iter().find(|l| l.generator() >= self.images.len()) {
            return Err(HyperbolicError::LetterOutOfRange(l.code()));
        }
        Ok(self.evaluate_unchecked(w))
    }

    fn evaluate_unchecked(&self, w: &Word) -> MoebiusMap {
        let mut m = MoebiusMap::identity();
        for (i, l) in w.letters().iter().enumerate() {
            m = m * *self.letter(*l);
            if (i + 1) % RENORM_EVERY == 0 {
                m = m.renormalize();
            }
        }
        m
    }
}
