use std::fmt;

use num_complex::Complex64;

use crate::hyperbolic::{Boundary, MoebiusMap};

/// A generalized disk on the Riemann sphere: the open round disk
/// `|z - center| < radius`, or its exterior together with `∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
    pub exterior: bool,
}

impl Disk {
    pub fn interior(center: Complex64, radius: f64) -> Self {
        Disk { center, radius, exterior: false }
    }

    pub fn exterior(center: Complex64, radius: f64) -> Self {
        Disk { center, radius, exterior: true }
    }

    #[must_use]
    pub fn complement(&self) -> Self {
        Disk { exterior: !self.exterior, ..*self }
    }

    /// Membership with slack `tol` towards the boundary.
    pub fn contains(&self, z: &Boundary, tol: f64) -> bool {
        match z {
            Boundary::Infinity => self.exterior,
            Boundary::Finite(z) => {
                let d = (z - self.center).norm();
                if self.exterior { d > self.radius - tol } else { d < self.radius + tol }
            }
        }
    }

    /// Signed clearance of `z` inside the disk: positive when inside.
    pub fn clearance(&self, z: Complex64) -> f64 {
        let d = (z - self.center).norm();
        if self.exterior { d - self.radius } else { self.radius - d }
    }

    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// Whether the closure of `self` lies in `other`, `margin` away from its
    /// boundary.
    pub fn inside(&self, other: &Disk, margin: f64) -> bool {
        let d = (self.center - other.center).norm();
        match (self.exterior, other.exterior) {
            (false, false) => d + self.radius <= other.radius - margin,
            (false, true) => d - self.radius >= other.radius + margin,
            (true, true) => d + other.radius <= self.radius - margin,
            (true, false) => false,
        }
    }

    /// Whether the closures are `margin` apart.
    pub fn disjoint(&self, other: &Disk, margin: f64) -> bool {
        match (self.exterior, other.exterior) {
            (false, false) => (self.center - other.center).norm() >= self.radius + other.radius + margin,
            (false, true) => self.inside(&other.complement(), margin),
            (true, false) => other.inside(&self.complement(), margin),
            (true, true) => false,
        }
    }

    /// Image under `m`, or `None` when the image is a half-plane (the pole
    /// of `m` lies on the boundary circle).
    pub fn image(&self, m: &MoebiusMap) -> Option<Disk> {
        let scale = m.a.norm().max(m.b.norm()).max(m.c.norm()).max(m.d.norm());
        if m.c.norm() <= 1e-15 * scale {
            let k = (m.a / m.d).norm();
            let center = (m.a * self.center + m.b) / m.d;
            return Some(Disk { center, radius: self.radius * k, exterior: self.exterior });
        }
        let pole = -m.d / m.c;
        let off = pole - self.center;
        let gap = off.norm() - self.radius;
        if gap.abs() <= 1e-12 * self.radius.max(1.0) {
            return None;
        }
        // the reflection of the pole in the circle maps to the image center
        let center = if off.norm() == 0.0 {
            m.a / m.c
        } else {
            let refl = self.center + self.radius * self.radius / off.conj();
            let Boundary::Finite(c) = m.apply_boundary(Boundary::Finite(refl)) else { return None };
            c
        };
        let Boundary::Finite(p) = m.apply_boundary(Boundary::Finite(self.boundary_point(0.0))) else { return None };
        let radius = (p - center).norm();
        let pole_inside = self.contains(&Boundary::Finite(pole), 0.0);
        Some(Disk { center, radius, exterior: pole_inside })
    }
}

impl fmt::Display for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.exterior { "out" } else { "in" };
        write!(f, "{kind}:{},{},{}", self.center.re, self.center.im, self.radius)
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
    fn containment_cases() {
        let small = Disk::interior(cx(0.0, 0.0), 1.0);
        let big = Disk::interior(cx(0.5, 0.0), 2.0);
        assert!(small.inside(&big, 1e-6));
        assert!(!big.inside(&small, 0.0));
        assert!(small.inside(&Disk::exterior(cx(5.0, 0.0), 3.0), 1e-6));
        assert!(Disk::exterior(cx(0.0, 0.0), 5.0).inside(&Disk::exterior(cx(1.0, 0.0), 3.0), 1e-6));
        assert!(!Disk::exterior(cx(0.0, 0.0), 5.0).inside(&big, 0.0));
        assert!(small.disjoint(&Disk::interior(cx(3.0, 0.0), 1.0), 1e-6));
        assert!(!small.disjoint(&Disk::interior(cx(1.5, 0.0), 1.0), 0.0));
        assert!(!Disk::exterior(cx(0.0, 0.0), 1.0).disjoint(&Disk::exterior(cx(9.0, 0.0), 1.0), 0.0));
    }

    /// The closed-form image agrees with images of sampled boundary and
    /// interior points.
    #[test]
    fn image_matches_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let mut e = || cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let Ok(m) = MoebiusMap::new(e(), e(), e(), e()) else { continue };
            let d = Disk { center: e(), radius: rng.gen_range(0.1..1.5), exterior: rng.gen_bool(0.5) };
            let Some(img) = d.image(&m) else { continue };
            for k in 0..16 {
                let z = d.boundary_point(k as f64);
                let Boundary::Finite(w) = m.apply_boundary(Boundary::Finite(z)) else { continue };
                assert!(((w - img.center).norm() - img.radius).abs() < 1e-6 * img.radius.max(1.0));
            }
            // a point well inside maps well inside
            let inner = if d.exterior { d.center + cx(d.radius * 3.0 + 1.0, 0.0) } else { d.center };
            let w = m.apply_boundary(Boundary::Finite(inner));
            assert!(img.contains(&w, 1e-9), "{d:?} -> {img:?}");
        }
    }
}
