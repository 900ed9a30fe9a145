//! Dehn's algorithm for the standard surface relator.
//!
//! For genus `g >= 2` the symmetrized relator `[a1,b1]...[ag,bg]` satisfies
//! C'(1/6), so a freely reduced word is trivial exactly when it contains more
//! than half of a cyclic conjugate of the relator or its inverse. Every
//! letter occurs exactly once in the relator and once in its inverse, which
//! makes the piece search linear per starting position.

use super::spec::GroupSpec;
use super::word::{free_reduce_letters, Letter, Word};
use super::GroupError;

#[derive(Clone, Debug)]
pub(crate) struct SurfaceRelator {
    genus: usize,
    code_base: u16,
    relators: [Vec<Letter>; 2],
    positions: [Vec<usize>; 2],
}

impl SurfaceRelator {
    pub(crate) fn new(group: &GroupSpec, factor: usize) -> Option<Self> {
        let genus = group.factor(factor).genus()?;
        let rel = group.relator(factor)?.into_letters();
        let inv: Vec<Letter> = rel.iter().rev().map(|l| l.inverse()).collect();
        let code_base = (2 * group.generators_of(factor).start) as u16;
        let mut positions = [vec![0; 4 * genus], vec![0; 4 * genus]];
        for (k, r) in [&rel, &inv].into_iter().enumerate() {
            for (i, l) in r.iter().enumerate() {
                positions[k][(l.code() - code_base) as usize] = i;
            }
        }
        Some(SurfaceRelator { genus, code_base, relators: [rel, inv], positions })
    }

    fn len(&self) -> usize {
        4 * self.genus
    }

    fn owns(&self, l: Letter) -> bool {
        l.code() >= self.code_base && ((l.code() - self.code_base) as usize) < self.len()
    }

    /// Finds the first (position, relator, match length) whose match exceeds
    /// half the relator. `cyclic` lets matches wrap around the word end.
    fn find_long_piece(&self, w: &[Letter], cyclic: bool) -> Option<(usize, usize, usize)> {
        let n = w.len();
        let len = self.len();
        for i in 0..n {
            let off = (w[i].code() - self.code_base) as usize;
            for k in 0..2 {
                let p = self.positions[k][off];
                let rel = &self.relators[k];
                let limit = if cyclic { len.min(n) } else { len.min(n - i) };
                let mut m = 0;
                while m < limit && w[(i + m) % n] == rel[(p + m) % len] {
                    m += 1;
                }
                if 2 * m > len {
                    return Some((i, k, m));
                }
            }
        }
        None
    }

    /// The replacement for a matched piece of length `m` starting at relator
    /// position `p`: the inverse of the complementary piece.
    fn replacement(&self, k: usize, p: usize, m: usize) -> Vec<Letter> {
        let len = self.len();
        let rel = &self.relators[k];
        (m..len).rev().map(|j| rel[(p + j) % len].inverse()).collect()
    }

    pub(crate) fn reduce(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut w = free_reduce_letters(letters);
        while let Some((i, k, m)) = self.find_long_piece(&w, false) {
            let p = self.positions[k][(w[i].code() - self.code_base) as usize];
            let rep = self.replacement(k, p, m);
            w.splice(i..i + m, rep);
            w = free_reduce_letters(&w);
        }
        w
    }

    /// Cyclic Dehn reduction. Returns the reduced cyclic word and the
    /// conjugator `c` with `input = c^-1 · result · c` (as elements).
    pub(crate) fn reduce_cyclic(&self, letters: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
        let mut w = self.reduce(letters);
        let mut conj: Vec<Letter> = Vec::new();
        loop {
            // cyclic free reduction: w = l u l^-1 -> u, conj <- l^-1 conj
            while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
                let l = w[0];
                w.pop();
                w.remove(0);
                conj.insert(0, l.inverse());
            }
            let Some((i, k, m)) = self.find_long_piece(&w, true) else { break };
            // rotate so the piece starts at 0: w = x y -> y x, conj <- x^-1 conj
            let x: Vec<Letter> = w[..i].to_vec();
            w.rotate_left(i);
            let mut prefix: Vec<Letter> = x.iter().rev().map(|l| l.inverse()).collect();
            prefix.extend_from_slice(&conj);
            conj = free_reduce_letters(&prefix);
            let p = self.positions[k][(w[0].code() - self.code_base) as usize];
            let rep = self.replacement(k, p, m);
            w.splice(0..m, rep);
            w = self.reduce(&w);
        }
        (w, free_reduce_letters(&conj))
    }
}

/// Dehn-reduces a word whose letters all lie in surface factor `factor`.
///
/// The result is freely reduced, contains no piece longer than half the
/// relator, and is empty iff the input is trivial in the factor.
pub fn dehn_reduce(group: &GroupSpec, word: &Word, factor: usize) -> Result<Word, GroupError> {
    let rel = SurfaceRelator::new(group, factor).ok_or(GroupError::NotASurfaceFactor(factor))?;
    if let Some(l) = word.letters().iter().find(|l| !rel.owns(**l)) {
        return Err(GroupError::MixedFactors { factor, letter: group.letter_name(*l) });
    }
    Ok(Word::from(rel.reduce(word.letters())))
}
