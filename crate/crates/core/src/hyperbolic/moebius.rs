use std::ops::Mul;

use num_complex::Complex64;

use super::point::{Boundary, H3Point};
use super::HyperbolicError;

/// Tolerance for `±I` and parabolic detection.
pub const EQ_TOL: f64 = 1e-9;
/// Determinant drift allowed before a map counts as unnormalized.
pub const DET_TOL: f64 = 1e-12;

/// An element of PSL(2,C), stored as a determinant-one matrix
/// `(a b; c d)`. Equality is up to global sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// Fixed points on the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPoints {
    Single(Boundary),
    /// For loxodromics `attracting` has derivative modulus < 1; for
    /// elliptics the labels are arbitrary but deterministic.
    Pair { attracting: Boundary, repelling: Boundary },
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl MoebiusMap {
    /// Builds and normalizes to determinant one.
    pub fn new(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Result<Self, HyperbolicError> {
        let det = a * d - b * cc;
        if det.norm() < 1e-300 || !det.is_finite() {
            return Err(HyperbolicError::Singular);
        }
        let k = det.sqrt().inv();
        Ok(MoebiusMap { a: a * k, b: b * k, c: cc * k, d: d * k })
    }

    /// Uses the entries as given; caller guarantees `ad - bc = 1`.
    pub const fn from_normalized(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        MoebiusMap { a, b, c, d }
    }

    pub fn identity() -> Self {
        MoebiusMap { a: c(1.0), b: c(0.0), c: c(0.0), d: c(1.0) }
    }

    /// `diag(λ, 1/λ)`, i.e. `z ↦ λ² z`.
    pub fn diagonal(lambda: Complex64) -> Result<Self, HyperbolicError> {
        Self::new(lambda, c(0.0), c(0.0), lambda.inv())
    }

    /// `z ↦ z + τ`.
    pub fn translation(tau: Complex64) -> Self {
        MoebiusMap { a: c(1.0), b: tau, c: c(0.0), d: c(1.0) }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn trace_sq(&self) -> Complex64 {
        let t = self.trace();
        t * t
    }

    /// Rescales so that the determinant is one again. A deviation below the
    /// rounding error of `ad - bc` is noise, and the map is returned as is.
    #[must_use]
    pub fn renormalize(&self) -> Self {
        let det = self.det();
        let scale = self.a.norm() * self.d.norm() + self.b.norm() * self.c.norm();
        if (det - c(1.0)).norm() <= 8.0 * f64::EPSILON * scale {
            return *self;
        }
        let k = det.sqrt().inv();
        MoebiusMap { a: self.a * k, b: self.b * k, c: self.c * k, d: self.d * k }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    #[must_use]
    pub fn conjugate_by(&self, h: &MoebiusMap) -> Self {
        (*h * *self * h.inverse()).renormalize()
    }

    /// Max-entry distance to `other` up to global sign.
    pub fn distance_pm(&self, other: &MoebiusMap) -> f64 {
        let plus = [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d];
        let minus = [self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d];
        let m = |v: [Complex64; 4]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        m(plus).min(m(minus))
    }

    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        self.distance_pm(other) <= tol
    }

    /// Operator 2-norm distance from `±I`.
    pub fn residual_from_identity(&self) -> f64 {
        let one = c(1.0);
        let minus = [self.a - one, self.b, self.c, self.d - one];
        let plus = [self.a + one, self.b, self.c, self.d + one];
        operator_norm(minus).min(operator_norm(plus))
    }

    pub fn is_identity(&self) -> bool {
        self.distance_pm(&Self::identity()) <= EQ_TOL
    }

    /// Trace classification with tolerance [`EQ_TOL`] on `|tr² - 4|`.
    pub fn classify(&self) -> Classification {
        if self.is_identity() {
            return Classification::Identity;
        }
        let t2 = self.trace_sq();
        if (t2 - c(4.0)).norm() <= EQ_TOL {
            Classification::Parabolic
        } else if t2.im.abs() <= EQ_TOL && t2.re >= 0.0 && t2.re < 4.0 {
            Classification::Elliptic
        } else {
            Classification::Loxodromic
        }
    }

    /// Eigenvalue of largest modulus.
    pub fn dominant_eigenvalue(&self) -> Complex64 {
        let t = self.trace();
        let s = (t * t - c(4.0)).sqrt();
        let l1 = (t + s) * 0.5;
        let l2 = (t - s) * 0.5;
        if l1.norm() >= l2.norm() { l1 } else { l2 }
    }

    /// Real translation length `2 ln |λ|`, zero unless loxodromic.
    pub fn translation_length(&self) -> f64 {
        match self.classify() {
            Classification::Loxodromic => 2.0 * self.dominant_eigenvalue().norm().ln(),
            _ => 0.0,
        }
    }

    /// Complex translation length `2 log λ` (real part ≥ 0).
    pub fn complex_length(&self) -> Complex64 {
        2.0 * self.dominant_eigenvalue().ln()
    }

    /// Action on the Riemann sphere.
    pub fn apply_boundary(&self, z: Boundary) -> Boundary {
        match z {
            Boundary::Infinity => {
                if self.c.norm() == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Finite(self.a / self.c)
                }
            }
            Boundary::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Poincaré extension to upper half-space.
    pub fn apply(&self, p: &H3Point) -> H3Point {
        let z = p.z;
        let h2 = p.h * p.h;
        let cz_d = self.c * z + self.d;
        let denom = cz_d.norm_sqr() + self.c.norm_sqr() * h2;
        let num = (self.a * z + self.b) * cz_d.conj() + self.a * self.c.conj() * h2;
        H3Point { z: num / denom, h: p.h / denom }
    }

    /// Roots of `c z² + (d - a) z - b = 0`.
    pub fn fixed_points(&self) -> Result<FixedPoints, HyperbolicError> {
        if self.is_identity() {
            return Err(HyperbolicError::IdentityMap);
        }
        let scale = [self.a, self.b, self.c, self.d].iter().map(|z| z.norm()).fold(0.0, f64::max);
        if self.c.norm() <= 1e-15 * scale {
            // z ↦ (a z + b)/d fixes ∞
            let diff = self.d - self.a;
            if diff.norm() <= EQ_TOL * scale {
                return Ok(FixedPoints::Single(Boundary::Infinity));
            }
            let other = Boundary::Finite(self.b / diff);
            return Ok(if self.a.norm() >= self.d.norm() {
                FixedPoints::Pair { attracting: Boundary::Infinity, repelling: other }
            } else {
                FixedPoints::Pair { attracting: other, repelling: Boundary::Infinity }
            });
        }
        let disc = (self.a - self.d) * (self.a - self.d) + 4.0 * self.b * self.c;
        if self.classify() == Classification::Parabolic {
            return Ok(FixedPoints::Single(Boundary::Finite((self.a - self.d) / (2.0 * self.c))));
        }
        let s = disc.sqrt();
        let z1 = (self.a - self.d + s) / (2.0 * self.c);
        let z2 = (self.a - self.d - s) / (2.0 * self.c);
        // derivative at a fixed point is 1/(c z + d)^2
        let attracting_first = (self.c * z1 + self.d).norm() >= (self.c * z2 + self.d).norm();
        let (att, rep) = if attracting_first { (z1, z2) } else { (z2, z1) };
        Ok(FixedPoints::Pair { attracting: Boundary::Finite(att), repelling: Boundary::Finite(rep) })
    }

    /// Center and radius of the isometric circle `|c z + d| = 1`.
    pub fn isometric_circle(&self) -> Option<(Complex64, f64)> {
        if self.c.norm() == 0.0 {
            None
        } else {
            Some((-self.d / self.c, 1.0 / self.c.norm()))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;

    fn mul(self, v: MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * v.a + self.b * v.c,
            b: self.a * v.b + self.b * v.d,
            c: self.c * v.a + self.d * v.c,
            d: self.c * v.b + self.d * v.d,
        }
    }
}

/// Largest singular value of a 2x2 complex matrix `[m00, m01, m10, m11]`.
fn operator_norm(m: [Complex64; 4]) -> f64 {
    let fro2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let det = (m[0] * m[3] - m[1] * m[2]).norm();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0);
    ((fro2 + disc.sqrt()) / 2.0).sqrt()
}
