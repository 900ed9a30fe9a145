//! Separability of elements: a complete decision in free groups by
//! Whitehead peak reduction, and one-sided certificates in free products
//! with surface factors.

mod moves;

pub use moves::{whitehead_moves, WhiteheadMove};

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::group::{cyclic_reduce, CyclicNormalForm, GroupError, GroupSpec, Letter, Word};
use crate::whitehead::{is_certificate, whitehead_graph_combinatorial, WhiteheadGraph};
use moves::{cyclic_reduce_free, signed_permutations, type_ii_moves};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparabilityError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group `{0}` is not a free group")]
    NotFree(String),
}

/// What a Separable witness leaves out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Omitted {
    /// A free-group generator absent from the image word.
    Generator(usize),
    /// A free factor absent from the cyclic normal form.
    Factor(usize),
}

/// Moves taking the cyclic reduction of the input to `image`, a cyclic word
/// that avoids `omitted`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparableWitness {
    pub moves: Vec<WhiteheadMove>,
    pub image: Word,
    pub omitted: Omitted,
}

impl SeparableWitness {
    /// Replays the witness on `w` and checks the result exactly.
    pub fn verify(&self, w: &Word, group: &GroupSpec) -> bool {
        let Ok((form, _)) = cyclic_reduce(group, w) else { return false };
        let mut cur = form.to_word();
        for m in &self.moves {
            cur = m.apply_cyclic(&cur);
        }
        if !same_cycle(&cur, &self.image) {
            return false;
        }
        match self.omitted {
            Omitted::Generator(g) => g < group.generator_count() && !cur.contains_generator(g),
            Omitted::Factor(f) => {
                f < group.factors().len() && cur.letters().iter().all(|l| group.factor_of(*l) != f)
            }
        }
    }
}

fn same_cycle(a: &Word, b: &Word) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| a.rotate(k) == *b))
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeparabilityVerdict {
    Separable(SeparableWitness),
    /// The witness graph is strongly connected without strong cutpoints.
    NotSeparable(WhiteheadGraph),
    Unknown,
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SeparabilityVerdict::Separable(_) => "Separable",
            SeparabilityVerdict::NotSeparable(_) => "NotSeparable",
            SeparabilityVerdict::Unknown => "Unknown",
        }
    }

    /// 0 for Separable, 1 for NotSeparable, 2 for Unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            SeparabilityVerdict::Separable(_) => 0,
            SeparabilityVerdict::NotSeparable(_) => 1,
            SeparabilityVerdict::Unknown => 2,
        }
    }
}

fn require_free(group: &GroupSpec) -> Result<(), SeparabilityError> {
    if group.is_free() && group.is_free_product() {
        Ok(())
    } else {
        Err(SeparabilityError::NotFree(group.to_string()))
    }
}

fn to_form(group: &GroupSpec, letters: &[Letter]) -> Result<CyclicNormalForm, SeparabilityError> {
    Ok(cyclic_reduce(group, &Word::from(letters.to_vec()))?.0)
}

fn descend(w: &mut Vec<Letter>, type_ii: &[WhiteheadMove]) -> Vec<WhiteheadMove> {
    let mut path = Vec::new();
    'outer: loop {
        let cur = Word::from(std::mem::take(w));
        for m in type_ii {
            let next = m.apply_cyclic(&cur);
            if next.len() < cur.len() {
                path.push(m.clone());
                *w = next.into_letters();
                continue 'outer;
            }
        }
        *w = cur.into_letters();
        return path;
    }
}

/// Greedy descent over Type II moves in lexicographic order, taking the
/// first length-decreasing move each time. By peak reduction the result
/// has minimal cyclic length in the `Aut(F_n)`-orbit.
pub fn peak_reduce(
    form: &CyclicNormalForm,
    group: &GroupSpec,
) -> Result<(CyclicNormalForm, Vec<WhiteheadMove>), SeparabilityError> {
    require_free(group)?;
    let mut w = form.to_word().into_letters();
    let path = descend(&mut w, &type_ii_moves(group.generator_count()));
    Ok((to_form(group, &w)?, path))
}

/// Orbit key modulo rotation and signed permutations.
fn orbit_key(w: &[Letter], perms: &[WhiteheadMove]) -> Vec<u16> {
    let mut best: Option<Vec<u16>> = None;
    for p in perms {
        let img: Vec<u16> = w.iter().map(|&x| p.image(x)[0].code()).collect();
        for k in 0..img.len().max(1) {
            let mut r = img.clone();
            r.rotate_left(k);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

fn omitted_generator(w: &[Letter], rank: usize) -> Option<usize> {
    (0..rank).find(|&g| w.iter().all(|l| l.generator() != g))
}

/// Decides whether `w` lies in a proper free factor of the free group.
///
/// The input is peak-reduced, then the minimal-length level set is explored
/// breadth-first over length-preserving Type II moves. `w` is separable
/// exactly when some word of that level set omits a generator; otherwise
/// the Whitehead graph of the minimal word is returned.
pub fn is_separable_free(w: &Word, group: &GroupSpec) -> Result<SeparabilityVerdict, SeparabilityError> {
    require_free(group)?;
    let rank = group.generator_count();
    let start = cyclic_reduce_free(w.letters());
    if start.is_empty() {
        return Err(GroupError::TrivialElement.into());
    }
    let type_ii = type_ii_moves(rank);
    let perms = signed_permutations(rank);
    let mut min = start;
    let peak = descend(&mut min, &type_ii);
    let found = |w: &[Letter], moves: Vec<WhiteheadMove>| {
        omitted_generator(w, rank).map(|g| {
            SeparabilityVerdict::Separable(SeparableWitness {
                moves,
                image: Word::from(w.to_vec()),
                omitted: Omitted::Generator(g),
            })
        })
    };
    if let Some(v) = found(&min, peak.clone()) {
        return Ok(v);
    }
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(orbit_key(&min, &perms));
    let mut queue: VecDeque<(Word, Vec<WhiteheadMove>)> = VecDeque::new();
    queue.push_back((Word::from(min.clone()), peak));
    while let Some((cur, path)) = queue.pop_front() {
        for m in &type_ii {
            let next = m.apply_cyclic(&cur);
            if next.len() != cur.len() || !seen.insert(orbit_key(next.letters(), &perms)) {
                continue;
            }
            let mut p = path.clone();
            p.push(m.clone());
            if let Some(v) = found(next.letters(), p.clone()) {
                return Ok(v);
            }
            queue.push_back((next, p));
        }
    }
    let form = to_form(group, &min)?;
    Ok(SeparabilityVerdict::NotSeparable(whitehead_graph_combinatorial(&form, group)?))
}

/// Semi-decision in a free product.
///
/// Free groups are decided completely by [`is_separable_free`]. Otherwise
/// an element whose cyclic normal form misses some factor is Separable, an
/// element whose Whitehead graph over the standard meridians is a
/// certificate is NotSeparable, and anything else is Unknown.
pub fn is_separable(w: &Word, group: &GroupSpec) -> Result<SeparabilityVerdict, SeparabilityError> {
    group.require_free_product()?;
    if group.is_free() {
        return is_separable_free(w, group);
    }
    let (form, _) = cyclic_reduce(group, w)?;
    let present = form.factors();
    if let Some(f) = (0..group.factors().len()).find(|f| !present.contains(f)) {
        return Ok(SeparabilityVerdict::Separable(SeparableWitness {
            moves: Vec::new(),
            image: form.to_word(),
            omitted: Omitted::Factor(f),
        }));
    }
    let graph = whitehead_graph_combinatorial(&form, group)?;
    if is_certificate(&graph) {
        Ok(SeparabilityVerdict::NotSeparable(graph))
    } else {
        Ok(SeparabilityVerdict::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> GroupSpec {
        "F2".parse().unwrap()
    }

    fn verdict(g: &GroupSpec, s: &str) -> SeparabilityVerdict {
        is_separable(&g.parse_word(s).unwrap(), g).unwrap()
    }

    #[test]
    fn peak_examples() {
        let g = f2();
        for (w, len) in [("a b", 1), ("a b A B", 4), ("a", 1), ("a a b", 1), ("a a b b", 4)] {
            let (form, _) = cyclic_reduce(&g, &g.parse_word(w).unwrap()).unwrap();
            let (min, path) = peak_reduce(&form, &g).unwrap();
            assert_eq!(min.len(), len, "{w}");
            if w == "a b" {
                assert_eq!(path.len(), 1);
            }
        }
    }

    #[test]
    fn free_examples() {
        let g = f2();
        assert!(verdict(&g, "a").is_separable());
        assert!(verdict(&g, "a b").is_separable());
        assert_eq!(verdict(&g, "a b A B").label(), "NotSeparable");
        assert_eq!(verdict(&g, "a a b b").label(), "NotSeparable");
        assert!(matches!(
            is_separable_free(&g.parse_word("a A").unwrap(), &g),
            Err(SeparabilityError::Group(GroupError::TrivialElement))
        ));
    }

    #[test]
    fn mixed_examples() {
        let g: GroupSpec = "S2*Z".parse().unwrap();
        let v = verdict(&g, "a1 b1");
        let SeparabilityVerdict::Separable(wit) = &v else { panic!("{v:?}") };
        assert_eq!(wit.omitted, Omitted::Factor(1));
        assert!(wit.verify(&g.parse_word("a1 b1").unwrap(), &g));
        assert_ne!(verdict(&g, "a1 t1").label(), "Separable");
    }

    #[test]
    fn rejects_single_surface() {
        let g = GroupSpec::surface(2).unwrap();
        assert!(is_separable(&g.parse_word("a1").unwrap(), &g).is_err());
    }
}
