//! Ping-pong certificates for Klein combinations of Schottky letters with at
//! most one Fuchsian surface factor.
//!
//! Each free generator `y` owns disks `D_y` (plus) and `D_Y` (minus) and must
//! map the complement of `D_Y` into `D_y`. A surface factor owns a base disk
//! `B` that must miss every isometric disk of its generators; its region is
//! the complement of `B`. All regions must be pairwise disjoint. When every
//! check passes the group is discrete and the representation is faithful on
//! the free product.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::hyperbolic::{Boundary, MoebiusMap, Representation};

use super::disk::Disk;
use super::StabilityError;

/// Required clearance in every disk inequality.
pub const PING_PONG_MARGIN: f64 = 1e-6;
/// Boundary points sampled per disk on top of the closed-form check.
pub const BOUNDARY_SAMPLES: usize = 256;
/// Largest relator residual accepted for a surface factor.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPair {
    /// Disk around the attracting end, entered by positive powers.
    pub plus: Disk,
    /// Disk around the repelling end, entered by negative powers.
    pub minus: Disk,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PingPongDisks {
    /// Keyed by generator index.
    pub free: BTreeMap<usize, DiskPair>,
    /// Base disk keyed by surface factor id.
    pub surface: BTreeMap<usize, Disk>,
}

/// A representation together with disks that passed [`ping_pong_verify`].
#[derive(Clone, Debug)]
pub struct VerifiedDisks {
    rep: Representation,
    disks: PingPongDisks,
}

impl VerifiedDisks {
    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn disks(&self) -> &PingPongDisks {
        &self.disks
    }
}

#[derive(Clone, Debug)]
pub struct PingPongReport {
    pub failures: Vec<String>,
    certificate: Option<VerifiedDisks>,
}

impl PingPongReport {
    pub fn is_verified(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn certificate(&self) -> Option<&VerifiedDisks> {
        self.certificate.as_ref()
    }

    pub fn into_certificate(self) -> Option<VerifiedDisks> {
        self.certificate
    }
}

fn maps_into(m: &MoebiusMap, from: &Disk, into: &Disk) -> Result<(), String> {
    let img = from.complement().image(m).ok_or("image of the boundary is a line")?;
    if !img.inside(into, PING_PONG_MARGIN) {
        return Err(format!("image {img} is not inside {into}"));
    }
    for k in 0..BOUNDARY_SAMPLES {
        let z = from.boundary_point(TAU * k as f64 / BOUNDARY_SAMPLES as f64);
        let ok = match m.apply_boundary(Boundary::Finite(z)) {
            Boundary::Finite(w) => into.clearance(w) >= PING_PONG_MARGIN,
            Boundary::Infinity => into.exterior,
        };
        if !ok {
            return Err(format!("boundary sample {k} lands outside {into}"));
        }
    }
    Ok(())
}

/// Checks every disjointness and mapping inequality with margin
/// [`PING_PONG_MARGIN`].
pub fn ping_pong_verify(rep: &Representation, disks: &PingPongDisks) -> Result<PingPongReport, StabilityError> {
    let group = rep.group();
    let free_gens: Vec<usize> =
        group.factors().iter().filter(|f| !f.is_surface()).map(|f| group.generators_of(f.id).start).collect();
    let surfaces: Vec<usize> = group.surface_factors().map(|f| f.id).collect();
    if !free_gens.iter().copied().eq(disks.free.keys().copied())
        || !surfaces.iter().copied().eq(disks.surface.keys().copied())
    {
        return Err(StabilityError::DiskCountMismatch {
            expected: free_gens.len() + surfaces.len(),
            got: disks.free.len() + disks.surface.len(),
        });
    }

    let mut failures = Vec::new();
    if surfaces.len() > 1 {
        failures.push(format!("{} surface factors; at most one is supported", surfaces.len()));
    }
    for (&gen, pair) in &disks.free {
        let m = rep.image(gen);
        let name = group.letter_name(crate::group::Letter::new(gen, false));
        if let Err(e) = maps_into(m, &pair.minus, &pair.plus) {
            failures.push(format!("{name}: {e}"));
        }
        if let Err(e) = maps_into(&m.inverse(), &pair.plus, &pair.minus) {
            failures.push(format!("{name}^-1: {e}"));
        }
    }
    for (&factor, base) in &disks.surface {
        if base.exterior {
            failures.push(format!("surface factor {factor}: base disk must be bounded"));
            continue;
        }
        let residual = rep.residuals().iter().find(|r| r.0 == factor).map_or(f64::INFINITY, |r| r.1);
        if residual.is_nan() || residual >= RESIDUAL_TOL {
            failures.push(format!("surface factor {factor}: relator residual {residual:e}"));
        }
        for gen in group.generators_of(factor) {
            for m in [*rep.image(gen), rep.image(gen).inverse()] {
                match m.isometric_circle() {
                    Some((c, r)) if base.disjoint(&Disk::interior(c, r), PING_PONG_MARGIN) => {}
                    _ => failures.push(format!(
                        "surface factor {factor}: base disk meets the isometric disk of {}",
                        group.letter_name(crate::group::Letter::new(gen, false))
                    )),
                }
            }
        }
    }
    let regions: Vec<(String, Disk)> = disks
        .free
        .iter()
        .flat_map(|(&g, p)| {
            let name = group.letter_name(crate::group::Letter::new(g, false));
            [(format!("D({name})+"), p.plus), (format!("D({name})-"), p.minus)]
        })
        .chain(disks.surface.iter().map(|(&f, b)| (format!("P({f})"), b.complement())))
        .collect();
    for (i, (na, a)) in regions.iter().enumerate() {
        for (nb, b) in &regions[i + 1..] {
            if !a.disjoint(b, PING_PONG_MARGIN) {
                failures.push(format!("regions {na} and {nb} overlap"));
            }
        }
    }
    let certificate =
        failures.is_empty().then(|| VerifiedDisks { rep: rep.clone(), disks: disks.clone() });
    Ok(PingPongReport { failures, certificate })
}
