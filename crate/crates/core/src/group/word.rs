/// A generator or its inverse, interned as `2 * generator + inverse_bit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((2 * generator + usize::from(inverse)) as u16)
    }

    pub fn from_code(code: u16) -> Self {
        Letter(code)
    }

    pub fn code(self) -> u16 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A raw word in the generators. No reduction is implied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenation without reduction.
    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    #[must_use]
    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Removes adjacent `x x^-1` pairs until none remain.
    #[must_use]
    pub fn free_reduce(&self) -> Word {
        Word(free_reduce_letters(&self.0))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Freely reduced and first letter not inverse to last.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) => self.0.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    #[must_use]
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.0.len());
        Word(v)
    }

    pub fn contains_generator(&self, generator: usize) -> bool {
        self.0.iter().any(|l| l.generator() == generator)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub(crate) fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(codes: &[u16]) -> Word {
        codes.iter().map(|&c| Letter::from_code(c)).collect()
    }

    #[test]
    fn free_reduce_examples() {
        // a=0, A=1, b=2, B=3
        assert_eq!(w(&[0, 1, 2]).free_reduce(), w(&[2]));
        assert_eq!(Word::empty().free_reduce(), Word::empty());
        assert_eq!(w(&[0, 2, 3, 0]).free_reduce(), w(&[0, 0]));
        assert_eq!(w(&[0, 2, 3, 1]).free_reduce(), Word::empty());
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent_and_shortening(codes in prop::collection::vec(0u16..6, 0..40)) {
            let word = w(&codes);
            let r = word.free_reduce();
            prop_assert!(r.len() <= word.len());
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(word.concat(&word.inverse()).free_reduce().is_empty());
        }
    }
}
