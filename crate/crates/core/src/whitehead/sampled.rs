//! Whitehead graphs read off sampled limit-set geometry.
//!
//! The regions of a verified ping-pong system play the role of the lifted
//! discs: a free disk `D_y` for each letter and, for the surface factor, the
//! complement `P` of the base disk `B`. A sampled axis whose endpoints lie in
//! different regions crosses the ball and gives a ball edge. For the surface
//! component, an endpoint in `P` is located in a translate `g(B)` by Ford
//! reduction, and an axis from `g_p(B)` to `g_q(B)` gives the loop labeled
//! `g_p^-1 g_q`.

use crate::group::{CyclicNormalForm, Letter, Reducer, Word};
use crate::hyperbolic::{Boundary, Classification, FixedPoints, MoebiusMap};
use crate::stability::{Disk, VerifiedDisks};

use super::graph::{standard_meridian_model, DiscVertex, Side, WhiteheadGraph};
use super::WhiteheadError;

/// Slack for region membership of sampled points.
const MEMBERSHIP_TOL: f64 = 1e-12;
/// Endpoints this close (chordally) are treated as coincident.
const SAME_AXIS_TOL: f64 = 1e-9;
/// Axes this close are compared exactly in the group.
const CANDIDATE_TOL: f64 = 1e-6;

/// The geodesic family a graph is built from.
#[derive(Clone, Debug, PartialEq)]
pub enum MuSpec {
    ConjugacyClass(CyclicNormalForm),
    /// `(repelling, attracting)` endpoint pairs.
    SampledAxes(Vec<(Boundary, Boundary)>),
}

impl MuSpec {
    /// Endpoint pairs, sampling conjugacy classes to `depth`.
    pub fn axes(&self, disks: &VerifiedDisks, depth: usize) -> Result<Vec<(Boundary, Boundary)>, WhiteheadError> {
        match self {
            MuSpec::ConjugacyClass(form) => sample_axes(disks, form, depth),
            MuSpec::SampledAxes(v) => Ok(v.clone()),
        }
    }
}

/// Conjugators `h` with `|h| <= depth` and their images, built once and
/// reused across elements.
pub struct AxisSampler<'a> {
    disks: &'a VerifiedDisks,
    conjugators: Vec<(Word, MoebiusMap)>,
}

impl<'a> AxisSampler<'a> {
    pub fn new(disks: &'a VerifiedDisks, depth: usize) -> Self {
        let rep = disks.representation();
        let group = rep.group();
        let reducer = Reducer::new(group);
        let letters: Vec<(Letter, MoebiusMap)> = group
            .letters()
            .map(|l| (l, rep.evaluate(&Word::from(vec![l])).expect("letter of the group")))
            .collect();
        let mut conjugators = vec![(Word::empty(), MoebiusMap::identity())];
        let mut frontier: Vec<(Vec<Letter>, MoebiusMap)> = vec![(Vec::new(), MoebiusMap::identity())];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (w, m) in &frontier {
                for &(l, lm) in &letters {
                    if w.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    if reducer.normal_form(&v).len() == v.len() {
                        let vm = (*m * lm).renormalize();
                        conjugators.push((Word::from(v.clone()), vm));
                        next.push((v, vm));
                    }
                }
            }
            frontier = next;
        }
        AxisSampler { disks, conjugators }
    }

    /// `(repelling, attracting)` pairs of the conjugates `h g h^-1`, one per
    /// distinct axis. Powers are replaced by their root.
    pub fn sample(&self, form: &CyclicNormalForm) -> Result<Vec<(Boundary, Boundary)>, WhiteheadError> {
        let (root, _) = form.root();
        let w = root.to_word();
        let m = self.disks.representation().evaluate(&w)?;
        if m.classify() != Classification::Loxodromic {
            return Ok(Vec::new());
        }
        let FixedPoints::Pair { attracting, repelling } = m.fixed_points()? else { return Ok(Vec::new()) };
        if repelling.dist(&attracting) < SAME_AXIS_TOL {
            return Err(WhiteheadError::DegenerateAxis);
        }
        // free reduction settles equality except across surface relators
        let mut seen = std::collections::HashSet::new();
        // the axis of h g h^-1 is the h-image of the axis of g
        let axes: Vec<(usize, Boundary, Boundary)> = self
            .conjugators
            .iter()
            .enumerate()
            .filter(|(_, (h, _))| seen.insert(h.concat(&w).concat(&h.inverse()).free_reduce()))
            .map(|(i, (_, h))| (i, h.apply_boundary(repelling), h.apply_boundary(attracting)))
            .collect();
        let reducer = Reducer::new(self.disks.representation().group());
        let conj = |i: usize| {
            let h = &self.conjugators[i].0;
            h.concat(&w).concat(&h.inverse())
        };
        Ok(dedup_axes(axes, |i, j| reducer.equal(&conj(i), &conj(j))))
    }
}

/// Drops repeated axes. Conjugators amplify rounding error, so numerically
/// close candidates are settled by `same`.
fn dedup_axes(
    mut axes: Vec<(usize, Boundary, Boundary)>,
    same: impl Fn(usize, usize) -> bool,
) -> Vec<(Boundary, Boundary)> {
    let key = |b: &Boundary| match b {
        Boundary::Finite(z) => z.re,
        Boundary::Infinity => f64::INFINITY,
    };
    axes.sort_by(|x, y| key(&x.1).total_cmp(&key(&y.1)).then(key(&x.2).total_cmp(&key(&y.2))).then(x.0.cmp(&y.0)));
    let mut kept: Vec<(usize, Boundary, Boundary)> = Vec::with_capacity(axes.len());
    for ax in axes {
        let k = key(&ax.1);
        let near = |o: &&(usize, Boundary, Boundary)| {
            let ko = key(&o.1);
            (k.is_infinite() && ko.is_infinite()) || k - ko <= CANDIDATE_TOL * (1.0 + k * k)
        };
        let dup = kept
            .iter()
            .rev()
            .take_while(near)
            .any(|o| o.1.dist(&ax.1) < CANDIDATE_TOL && o.2.dist(&ax.2) < CANDIDATE_TOL && same(o.0, ax.0));
        if !dup {
            kept.push(ax);
        }
    }
    kept.into_iter().map(|(_, r, a)| (r, a)).collect()
}

/// Fixed-point pairs of the conjugates `h g h^-1` with `|h| <= depth`, one
/// per distinct axis.
pub fn sample_axes(
    disks: &VerifiedDisks,
    form: &CyclicNormalForm,
    depth: usize,
) -> Result<Vec<(Boundary, Boundary)>, WhiteheadError> {
    AxisSampler::new(disks, depth).sample(form)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    /// Inside `D_y` for the letter `y`.
    Free { factor: usize, letter: Letter },
    /// Outside the base disk of a surface factor.
    Surface { factor: usize },
}

fn region_of(disks: &VerifiedDisks, x: &Boundary) -> Option<Region> {
    let group = disks.representation().group();
    for (&gen, pair) in &disks.disks().free {
        let factor = group.factor_of(Letter::new(gen, false));
        if pair.plus.contains(x, MEMBERSHIP_TOL) {
            return Some(Region::Free { factor, letter: Letter::new(gen, false) });
        }
        if pair.minus.contains(x, MEMBERSHIP_TOL) {
            return Some(Region::Free { factor, letter: Letter::new(gen, true) });
        }
    }
    for (&factor, base) in &disks.disks().surface {
        if base.complement().contains(x, MEMBERSHIP_TOL) {
            return Some(Region::Surface { factor });
        }
    }
    None
}

/// Vertex crossed by an axis arriving from region `r` (backward end) or
/// leaving into it (forward end).
fn region_vertex(r: Region, forward: bool) -> DiscVertex {
    match r {
        // D_y is entered through the y^-1 side
        Region::Free { factor, letter } => DiscVertex {
            component: 0,
            disc: factor,
            side: if letter.is_inverse() { Side::Plus } else { Side::Minus },
        },
        Region::Surface { factor } => DiscVertex {
            component: 0,
            disc: factor,
            side: if forward { Side::Minus } else { Side::Plus },
        },
    }
}

/// Ford reduction into the base disk of one surface factor.
struct FordDecoder<'a> {
    base: &'a Disk,
    letters: Vec<(Letter, MoebiusMap)>,
    max_steps: usize,
}

impl<'a> FordDecoder<'a> {
    fn new(disks: &'a VerifiedDisks, factor: usize, max_steps: usize) -> Option<Self> {
        let rep = disks.representation();
        let base = disks.disks().surface.get(&factor)?;
        let letters = rep
            .group()
            .generators_of(factor)
            .flat_map(|g| [(Letter::new(g, false), *rep.image(g)), (Letter::new(g, true), rep.image(g).inverse())])
            .collect();
        Some(FordDecoder { base, letters, max_steps })
    }

    /// Finds `g` with `x` in `g(B)`, or `None` when no translate is reached
    /// within the step budget.
    fn decode(&self, x: &Boundary) -> Option<Word> {
        let Boundary::Finite(mut z) = *x else { return None };
        let mut g: Vec<Letter> = Vec::new();
        for _ in 0..self.max_steps {
            if self.base.contains(&Boundary::Finite(z), MEMBERSHIP_TOL) {
                return Some(Word::from(g));
            }
            // apply the letter whose isometric circle holds z most deeply
            let (l, m, depth) = self
                .letters
                .iter()
                .map(|(l, m)| (*l, m, (m.c * z + m.d).norm_sqr()))
                .min_by(|a, b| a.2.total_cmp(&b.2))?;
            if depth >= 1.0 - 1e-12 {
                return None;
            }
            let Boundary::Finite(next) = m.apply_boundary(Boundary::Finite(z)) else { return None };
            z = next;
            g.push(l.inverse());
        }
        None
    }
}

/// Whitehead graph of the axes `axes` relative to a verified ping-pong
/// system. Surface labels longer than `depth` after Dehn reduction are
/// dropped.
pub fn whitehead_graph_sampled(
    axes: &[(Boundary, Boundary)],
    disks: &VerifiedDisks,
    depth: usize,
) -> Result<WhiteheadGraph, WhiteheadError> {
    let group = disks.representation().group();
    group.require_free_product()?;
    let reducer = Reducer::new(group);
    let mut graph = standard_meridian_model(group);
    let decoders: Vec<(usize, FordDecoder<'_>)> = disks
        .disks()
        .surface
        .keys()
        .filter_map(|&f| Some((f, FordDecoder::new(disks, f, 32 + 4 * depth)?)))
        .collect();
    for (back, fwd) in axes {
        let (rb, rf) = (region_of(disks, back), region_of(disks, fwd));
        if let (Some(rb), Some(rf)) = (rb, rf) {
            if rb != rf {
                graph.push_ball_edge(region_vertex(rb, false), region_vertex(rf, true));
            }
        }
        for (factor, decoder) in &decoders {
            let decode = |x: &Boundary, r: Option<Region>| match r {
                Some(Region::Surface { factor: f }) if f == *factor => decoder.decode(x),
                Some(_) => Some(Word::empty()),
                None => None,
            };
            let (Some(gb), Some(gf)) = (decode(back, rb), decode(fwd, rf)) else { continue };
            // both orientations of the unoriented geodesic
            for (gp, gq) in [(&gb, &gf), (&gf, &gb)] {
                let label = Word::from(reducer.reduce_in_factor(*factor, gp.inverse().concat(gq).letters()));
                if !label.is_empty() && label.len() <= depth {
                    graph.push_surface_loop(&reducer, *factor, label);
                }
            }
        }
    }
    graph.sort_edges();
    Ok(graph)
}
