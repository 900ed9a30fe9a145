//! Side pairings of the regular hyperbolic `4g`-gon with all angles `2π/4g`.
//!
//! The polygon is centered at 0 in the unit disk, so the resulting group
//! preserves the unit circle. Side `k` faces direction `k · 2π/4g`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::moebius::MoebiusMap;
use super::representation::Representation;
use super::HyperbolicError;
use crate::group::GroupSpec;

fn rotation(theta: f64) -> MoebiusMap {
    let h = Complex64::from_polar(1.0, theta / 2.0);
    MoebiusMap::from_normalized(h, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), h.conj())
}

/// Translation along the real diameter by `2 rho`.
fn translation(rho: f64) -> MoebiusMap {
    let (c, s) = (Complex64::new(rho.cosh(), 0.0), Complex64::new(rho.sinh(), 0.0));
    MoebiusMap::from_normalized(c, s, s, c)
}

/// Generator images `a1, b1, ..., ag, bg` with `[a1,b1]...[ag,bg] = ±I`.
pub fn regular_polygon_generators(genus: usize) -> Result<Vec<MoebiusMap>, HyperbolicError> {
    if genus < 2 {
        return Err(HyperbolicError::GenusTooSmall(genus));
    }
    let n = 4 * genus;
    let step = 2.0 * PI / n as f64;
    let inradius = (1.0 / (PI / n as f64).tan()).acosh();
    let t = translation(inradius);
    // maps side i onto side j, carrying the interior to the exterior
    let pair = |i: usize, j: usize| (rotation(j as f64 * step) * t * rotation(PI - i as f64 * step)).renormalize();
    let mut out = Vec::with_capacity(2 * genus);
    for k in 0..genus {
        out.push(pair(4 * k + 2, 4 * k));
        out.push(pair(4 * k + 1, 4 * k + 3));
    }
    Ok(out)
}

/// The Fuchsian representation of the closed surface group of `genus`.
pub fn fuchsian_surface(genus: usize) -> Result<Representation, HyperbolicError> {
    let group = GroupSpec::surface(genus).map_err(|_| HyperbolicError::GenusTooSmall(genus))?;
    Representation::new(group, regular_polygon_generators(genus)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::Classification;

    #[test]
    fn relator_closes() {
        for g in 2..=4 {
            let rho = fuchsian_surface(g).unwrap();
            assert!(rho.max_residual() < 1e-8, "genus {g}: {}", rho.max_residual());
        }
    }

    #[test]
    fn generators_preserve_unit_circle_and_are_loxodromic() {
        for m in regular_polygon_generators(2).unwrap() {
            assert_eq!(m.classify(), Classification::Loxodromic);
            assert!(m.trace().im.abs() < 1e-12);
            let z = m.apply_boundary(crate::hyperbolic::Boundary::Finite(Complex64::from_polar(1.0, 0.7)));
            let crate::hyperbolic::Boundary::Finite(z) = z else { panic!() };
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn genus_one_rejected() {
        assert!(fuchsian_surface(1).is_err());
    }
}
