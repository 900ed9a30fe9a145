use std::fmt::Write as _;

use crate::group::{GroupSpec, Letter, Word};

/// A Whitehead automorphism of the free group of rank `rank`.
///
/// A Type II move `(a, Z)` takes a multiplier letter `a` and a set `Z` of
/// letters with `a ∈ Z`, `a⁻¹ ∉ Z`. It fixes `a` and sends any other letter
/// `x` to `x a` when only `x` is in `Z`, to `a⁻¹ x` when only `x⁻¹` is, to
/// `a⁻¹ x a` when both are, and to `x` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WhiteheadMove {
    /// Generator `i` goes to `images[i]`; the generators of the images are a
    /// permutation of `0..rank`.
    Permutation { images: Vec<Letter> },
    /// `subset` is a bit mask over letter codes.
    TypeII { rank: usize, multiplier: Letter, subset: u64 },
}

impl WhiteheadMove {
    pub fn rank(&self) -> usize {
        match self {
            WhiteheadMove::Permutation { images } => images.len(),
            WhiteheadMove::TypeII { rank, .. } => *rank,
        }
    }

    /// Checked Type II constructor.
    pub fn type_ii(rank: usize, multiplier: Letter, subset: &[Letter]) -> Option<Self> {
        let mut mask = 0u64;
        for l in subset {
            if l.generator() >= rank {
                return None;
            }
            mask |= 1 << l.code();
        }
        let has = |l: Letter| mask & (1 << l.code()) != 0;
        if multiplier.generator() >= rank || !has(multiplier) || has(multiplier.inverse()) {
            return None;
        }
        Some(WhiteheadMove::TypeII { rank, multiplier, subset: mask })
    }

    /// Checked permutation constructor.
    pub fn permutation(images: Vec<Letter>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for l in &images {
            let g = l.generator();
            if g >= images.len() || seen[g] {
                return None;
            }
            seen[g] = true;
        }
        Some(WhiteheadMove::Permutation { images })
    }

    /// Letters of `Z` for a Type II move, in code order.
    pub fn subset(&self) -> Vec<Letter> {
        match self {
            WhiteheadMove::Permutation { .. } => Vec::new(),
            WhiteheadMove::TypeII { rank, subset, .. } => (0..2 * *rank as u16)
                .filter(|c| subset & (1 << c) != 0)
                .map(Letter::from_code)
                .collect(),
        }
    }

    /// Image of one letter (already freely reduced).
    pub fn image(&self, x: Letter) -> Vec<Letter> {
        match self {
            WhiteheadMove::Permutation { images } => {
                let y = images[x.generator()];
                vec![if x.is_inverse() { y.inverse() } else { y }]
            }
            WhiteheadMove::TypeII { multiplier: a, subset, .. } => {
                let a = *a;
                if x.generator() == a.generator() {
                    return vec![x];
                }
                let has = |l: Letter| subset & (1 << l.code()) != 0;
                match (has(x), has(x.inverse())) {
                    (true, false) => vec![x, a],
                    (false, true) => vec![a.inverse(), x],
                    (true, true) => vec![a.inverse(), x, a],
                    (false, false) => vec![x],
                }
            }
        }
    }

    /// Freely reduced image of a word.
    pub fn apply(&self, w: &Word) -> Word {
        Word::from(self.apply_letters(w.letters())).free_reduce()
    }

    /// Cyclically reduced image of a cyclic word.
    pub fn apply_cyclic(&self, w: &Word) -> Word {
        Word::from(cyclic_reduce_free(&self.apply_letters(w.letters())))
    }

    fn apply_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len() * 3);
        for &x in w {
            for y in self.image(x) {
                if out.last() == Some(&y.inverse()) {
                    out.pop();
                } else {
                    out.push(y);
                }
            }
        }
        out
    }

    #[must_use]
    pub fn inverse(&self) -> WhiteheadMove {
        match self {
            WhiteheadMove::Permutation { images } => {
                let mut inv = vec![Letter::new(0, false); images.len()];
                for (i, l) in images.iter().enumerate() {
                    inv[l.generator()] = Letter::new(i, l.is_inverse());
                }
                WhiteheadMove::Permutation { images: inv }
            }
            WhiteheadMove::TypeII { rank, multiplier, subset } => {
                let a = *multiplier;
                let mask = (subset & !(1 << a.code())) | (1 << a.inverse().code());
                WhiteheadMove::TypeII { rank: *rank, multiplier: a.inverse(), subset: mask }
            }
        }
    }

    /// Human-readable form using the letter names of `group`.
    pub fn describe(&self, group: &GroupSpec) -> String {
        match self {
            WhiteheadMove::Permutation { images } => {
                let parts: Vec<String> = images
                    .iter()
                    .enumerate()
                    .map(|(i, l)| format!("{}->{}", group.letter_name(Letter::new(i, false)), group.letter_name(*l)))
                    .collect();
                format!("perm({})", parts.join(", "))
            }
            WhiteheadMove::TypeII { multiplier, .. } => {
                let mut s = format!("({}, {{", group.letter_name(*multiplier));
                for (i, l) in self.subset().into_iter().enumerate() {
                    if i > 0 {
                        s.push_str(", ");
                    }
                    let _ = write!(s, "{}", group.letter_name(l));
                }
                s.push_str("})");
                s
            }
        }
    }
}

/// All signed permutations of `0..rank`, identity first.
pub(crate) fn signed_permutations(rank: usize) -> Vec<WhiteheadMove> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permute(&mut (0..rank).collect(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << rank);
    for p in perms {
        for signs in 0u32..(1 << rank) {
            let images = p.iter().enumerate().map(|(i, &g)| Letter::new(g, signs & (1 << i) != 0)).collect();
            out.push(WhiteheadMove::Permutation { images });
        }
    }
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Type II moves in lexicographic order of `(multiplier, subset mask)`.
pub(crate) fn type_ii_moves(rank: usize) -> Vec<WhiteheadMove> {
    let letters = 2 * rank;
    let mut out = Vec::with_capacity(letters << (letters - 2));
    for a in 0..letters as u16 {
        let others: Vec<u16> = (0..letters as u16).filter(|&c| c != a && c != (a ^ 1)).collect();
        let mut masks: Vec<u64> = (0u64..(1 << others.len()))
            .map(|bits| {
                let mut m = 1u64 << a;
                for (i, c) in others.iter().enumerate() {
                    if bits & (1 << i) != 0 {
                        m |= 1 << c;
                    }
                }
                m
            })
            .collect();
        masks.sort_unstable();
        out.extend(masks.into_iter().map(|subset| WhiteheadMove::TypeII { rank, multiplier: Letter::from_code(a), subset }));
    }
    out
}

/// The standard generating set of `Aut(F_rank)`: every signed permutation
/// (identity included) followed by every Type II move.
///
/// # Panics
/// When `rank` is 0 or above 32.
pub fn whitehead_moves(rank: usize) -> Vec<WhiteheadMove> {
    assert!((1..=32).contains(&rank), "rank out of range");
    let mut v = signed_permutations(rank);
    v.extend(type_ii_moves(rank));
    v
}

/// Free and cyclic reduction.
pub(crate) fn cyclic_reduce_free(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == out[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}
