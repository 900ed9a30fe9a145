use num_complex::Complex64;

use super::moebius::MoebiusMap;
use super::HyperbolicError;

/// A point `(z, h)` of upper half-space, `h > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3Point {
    pub z: Complex64,
    pub h: f64,
}

impl H3Point {
    pub fn new(z: Complex64, h: f64) -> Result<Self, HyperbolicError> {
        if h > 0.0 && h.is_finite() && z.is_finite() {
            Ok(H3Point { z, h })
        } else {
            Err(HyperbolicError::NonPositiveHeight(h))
        }
    }

    /// The point above the origin at height one.
    pub fn origin() -> Self {
        H3Point { z: Complex64::new(0.0, 0.0), h: 1.0 }
    }

    /// Hyperbolic distance.
    pub fn dist(&self, q: &H3Point) -> f64 {
        let num = (self.z - q.z).norm_sqr() + (self.h - q.h).powi(2);
        let x = num / (2.0 * self.h * q.h);
        // acosh(1 + x) = ln(1 + x + sqrt(x (x + 2))) without cancellation
        (x + (x * (x + 2.0)).sqrt()).ln_1p()
    }

    pub fn approx_eq(&self, q: &H3Point, tol: f64) -> bool {
        (self.z - q.z).norm() <= tol && (self.h - q.h).abs() <= tol
    }
}

/// `d(p, q)`, free-function form.
pub fn dist(p: &H3Point, q: &H3Point) -> f64 {
    p.dist(q)
}

/// `m · p`, free-function form.
pub fn apply(m: &MoebiusMap, p: &H3Point) -> H3Point {
    m.apply(p)
}

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    Finite(Complex64),
    Infinity,
}

impl Boundary {
    /// Chordal distance on the sphere (bounded by 2).
    pub fn dist(&self, other: &Boundary) -> f64 {
        match (self, other) {
            (Boundary::Infinity, Boundary::Infinity) => 0.0,
            (Boundary::Finite(z), Boundary::Infinity) | (Boundary::Infinity, Boundary::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (Boundary::Finite(z), Boundary::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vertical_geodesic() {
        let p = H3Point::new(cx(0.0, 0.0), 1.0).unwrap();
        let q = H3Point::new(cx(0.0, 0.0), std::f64::consts::E).unwrap();
        assert!((p.dist(&q) - 1.0).abs() < 1e-12);
        assert_eq!(p.dist(&p), 0.0);
    }

    #[test]
    fn rejects_nonpositive_height() {
        assert!(H3Point::new(cx(0.0, 0.0), 0.0).is_err());
        assert!(H3Point::new(cx(0.0, 0.0), -1.0).is_err());
    }

    fn random_map(rng: &mut impl Rng) -> MoebiusMap {
        loop {
            let mut e = || cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if let Ok(m) = MoebiusMap::new(e(), e(), e(), e()) {
                return m;
            }
        }
    }

    fn random_point(rng: &mut impl Rng) -> H3Point {
        H3Point::new(cx(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)), rng.gen_range(0.1..3.0)).unwrap()
    }

    #[test]
    fn isometry_invariance_and_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let m = random_map(&mut rng);
            let n = random_map(&mut rng);
            let (p, q) = (random_point(&mut rng), random_point(&mut rng));
            let d = p.dist(&q);
            assert!((d - m.apply(&p).dist(&m.apply(&q))).abs() < 1e-9 * d.max(1.0));
            let lhs = (m * n).apply(&p);
            let rhs = m.apply(&n.apply(&p));
            assert!(lhs.dist(&rhs) < 1e-9);
            assert!(m.apply(&p).h > 0.0);
        }
    }

    #[test]
    fn metric_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let (p, q, r) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
            assert!(p.dist(&q) >= 0.0);
            assert!(p.dist(&p).abs() < 1e-9);
            assert!((p.dist(&q) - q.dist(&p)).abs() < 1e-9);
            assert!(p.dist(&r) <= p.dist(&q) + q.dist(&r) + 1e-9);
        }
    }
}
