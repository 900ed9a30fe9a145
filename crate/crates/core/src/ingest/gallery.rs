//! Built-in reference representations.

use num_complex::Complex64;

use crate::group::GroupSpec;
use crate::hyperbolic::{regular_polygon_generators, HyperbolicError, MoebiusMap, Representation};
use crate::stability::{Disk, DiskPair, PingPongDisks, RepFamily};

/// A named representation with optional ping-pong disks.
#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub rep: Representation,
    pub disks: Option<PingPongDisks>,
}

pub const GALLERY_NAMES: [&str; 4] = ["schottky2", "fuchsian-genus2", "s2-times-z", "pinched-a"];

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn m(a: f64, b: f64, c: f64, d: f64) -> MoebiusMap {
    MoebiusMap::new(cx(a), cx(b), cx(c), cx(d)).expect("nonsingular")
}

/// Second Schottky generator: multiplier 100, repelling 1, attracting 4.
fn schottky_b() -> MoebiusMap {
    m(13.3, -13.2, 3.3, -3.2)
}

fn schottky_disks() -> PingPongDisks {
    let mut disks = PingPongDisks::default();
    disks.free.insert(0, DiskPair { plus: Disk::exterior(cx(0.0), 9.0), minus: Disk::interior(cx(0.0), 0.1) });
    disks.free.insert(1, DiskPair { plus: Disk::interior(cx(4.0), 0.6), minus: Disk::interior(cx(1.0), 0.6) });
    disks
}

/// Schottky group on `a = diag(10, 1/10)` and a conjugate of it with axis
/// from 1 to 4.
pub fn schottky2() -> GalleryEntry {
    schottky_with(10.0)
}

/// The Schottky pair with first generator `diag(λ, 1/λ)`. Disks are only
/// attached when `λ ≥ 10`, where they are known to work.
pub fn schottky_with(lambda: f64) -> GalleryEntry {
    let a = m(lambda, 0.0, 0.0, 1.0 / lambda);
    let rep = Representation::new(GroupSpec::free(2).expect("rank 2"), vec![a, schottky_b()]).expect("two images");
    GalleryEntry {
        name: "schottky2",
        description: "Schottky group of rank 2 with verified ping-pong disks",
        rep,
        disks: (lambda >= 10.0).then(schottky_disks),
    }
}

/// The family `λ ↦ schottky_with(λ)` for parameter sweeps.
#[derive(Clone, Copy, Debug, Default)]
pub struct SchottkyFamily;

impl RepFamily for SchottkyFamily {
    fn parameter(&self) -> &str {
        "lambda"
    }

    fn at(&self, lambda: f64) -> Result<Representation, HyperbolicError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(HyperbolicError::Singular);
        }
        let rep = schottky_with(lambda).rep;
        if let Some(g) = rep.images().iter().position(MoebiusMap::is_identity) {
            return Err(HyperbolicError::IdentityGenerator(g));
        }
        Ok(rep)
    }
}

/// Regular-octagon Fuchsian group of the genus 2 surface.
pub fn fuchsian_genus2() -> GalleryEntry {
    let rep = Representation::new(
        GroupSpec::surface(2).expect("genus 2"),
        regular_polygon_generators(2).expect("genus 2"),
    )
    .expect("four images");
    let mut disks = PingPongDisks::default();
    disks.surface.insert(0, Disk::interior(cx(0.0), 0.5));
    GalleryEntry { name: "fuchsian-genus2", description: "genus 2 Fuchsian group from the regular octagon", rep, disks: Some(disks) }
}

/// Klein combination of the genus 2 octagon group with a loxodromic `t`
/// whose axis runs from -1/4 to 1/4 inside the octagon.
pub fn s2_times_z() -> GalleryEntry {
    let lambda = 6.0;
    let conj = m(0.25, -0.25, 1.0, 1.0);
    let t = (conj * m(lambda, 0.0, 0.0, 1.0 / lambda) * conj.inverse()).renormalize();
    let mut images = regular_polygon_generators(2).expect("genus 2");
    images.push(t);
    let group: GroupSpec = "S2*Z".parse().expect("valid group");
    let rep = Representation::new(group, images).expect("five images");
    // isometric disks of t^-1 (around the attracting end) and t, enlarged
    let enlarge = |(c, r): (Complex64, f64)| Disk::interior(c, 1.2 * r);
    let plus = enlarge(t.inverse().isometric_circle().expect("c != 0"));
    let minus = enlarge(t.isometric_circle().expect("c != 0"));
    let mut disks = PingPongDisks::default();
    disks.surface.insert(0, Disk::interior(cx(0.0), 0.5));
    disks.free.insert(4, DiskPair { plus, minus });
    GalleryEntry { name: "s2-times-z", description: "genus 2 Fuchsian group combined with a loxodromic", rep, disks: Some(disks) }
}

/// The Schottky pair with `a` replaced by a parabolic; not discrete-faithful
/// on separable elements.
pub fn pinched_a() -> GalleryEntry {
    let rep = Representation::new(GroupSpec::free(2).expect("rank 2"), vec![m(1.0, 1.0, 0.0, 1.0), schottky_b()])
        .expect("two images");
    GalleryEntry { name: "pinched-a", description: "Schottky pair with a pinched to a parabolic", rep, disks: None }
}

/// Looks up a gallery entry by name. An `examples/` prefix and a `.rep`
/// suffix are ignored.
pub fn gallery(name: &str) -> Option<GalleryEntry> {
    let name = name.strip_prefix("examples/").unwrap_or(name);
    let name = name.strip_suffix(".rep").unwrap_or(name);
    match name {
        "schottky2" => Some(schottky2()),
        "fuchsian-genus2" => Some(fuchsian_genus2()),
        "s2-times-z" => Some(s2_times_z()),
        "pinched-a" => Some(pinched_a()),
        _ => None,
    }
}
