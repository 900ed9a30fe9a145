use super::dehn::SurfaceRelator;
use super::spec::GroupSpec;
use super::word::{free_reduce_letters, Letter, Word};
use super::GroupError;

/// A maximal run of letters from one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: usize,
    pub word: Word,
}

/// Linear free-product normal form: nonempty reduced syllables, adjacent
/// syllables in distinct factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn to_word(&self) -> Word {
        self.syllables.iter().flat_map(|s| s.word.letters().iter().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.word.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// Cyclic normal form of a conjugacy class: syllables are cyclically
/// alternating between factors, each nonempty and Dehn-reduced. A lone
/// surface syllable is also cyclically Dehn-reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicNormalForm {
    syllables: Vec<Syllable>,
}

impl CyclicNormalForm {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// The letter sequence read once around the cycle.
    pub fn to_word(&self) -> Word {
        self.syllables.iter().flat_map(|s| s.word.letters().iter().copied()).collect()
    }

    /// Cyclic length (number of letters).
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.word.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Factors touched by the element.
    pub fn factors(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.syllables.iter().map(|s| s.factor).collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    #[must_use]
    pub fn inverse(&self) -> CyclicNormalForm {
        CyclicNormalForm {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { factor: s.factor, word: s.word.inverse() })
                .collect(),
        }
    }

    /// Rotation at syllable boundaries.
    #[must_use]
    pub fn rotate(&self, k: usize) -> CyclicNormalForm {
        let mut s = self.syllables.clone();
        if !s.is_empty() {
            let n = s.len();
            s.rotate_left(k % n);
        }
        CyclicNormalForm { syllables: s }
    }

    /// The lexicographically least rotation at syllable boundaries, or among
    /// all letter rotations when there is a single syllable.
    #[must_use]
    pub fn canonical(&self) -> CyclicNormalForm {
        if self.syllables.len() == 1 {
            let s = &self.syllables[0];
            let best = (0..s.word.len()).map(|k| s.word.rotate(k)).min().unwrap_or_default();
            return CyclicNormalForm { syllables: vec![Syllable { factor: s.factor, word: best }] };
        }
        (0..self.syllables.len())
            .map(|k| self.rotate(k))
            .min_by(|a, b| a.to_word().cmp(&b.to_word()))
            .unwrap_or_else(|| self.clone())
    }

    /// Syllable-level primitive root: the shortest prefix of syllables whose
    /// repetition gives the cycle. Single free syllables `t^k` have root `t`.
    #[must_use]
    pub fn root(&self) -> (CyclicNormalForm, usize) {
        let n = self.syllables.len();
        if n == 1 {
            let s = &self.syllables[0];
            let letters = s.word.letters();
            let period = (1..=letters.len())
                .find(|&p| letters.len().is_multiple_of(p) && letters.iter().enumerate().all(|(i, l)| *l == letters[i % p]))
                .unwrap_or(letters.len());
            let root = Syllable { factor: s.factor, word: Word::from(letters[..period].to_vec()) };
            return (CyclicNormalForm { syllables: vec![root] }, letters.len() / period.max(1));
        }
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| self.syllables[i] == self.syllables[i % p]) {
                return (CyclicNormalForm { syllables: self.syllables[..p].to_vec() }, n / p);
            }
        }
        (self.clone(), 1)
    }

    /// Validates the cyclic normal form invariants against `group`.
    pub fn from_syllables(group: &GroupSpec, syllables: Vec<Syllable>) -> Result<Self, GroupError> {
        let reducer = Reducer::new(group);
        let n = syllables.len();
        if n == 0 {
            return Err(GroupError::TrivialElement);
        }
        for (i, s) in syllables.iter().enumerate() {
            if s.word.is_empty() || s.word.letters().iter().any(|l| group.factor_of(*l) != s.factor) {
                return Err(GroupError::NotCyclicallyReduced);
            }
            if n > 1 && syllables[(i + 1) % n].factor == s.factor {
                return Err(GroupError::NotCyclicallyReduced);
            }
            let reduced = reducer.reduce_in_factor(s.factor, s.word.letters());
            if reduced.len() != s.word.len() {
                return Err(GroupError::NotCyclicallyReduced);
            }
        }
        if n == 1 {
            let (c, _) = reducer.cyclic_in_factor(syllables[0].factor, syllables[0].word.letters());
            if c.len() != syllables[0].word.len() {
                return Err(GroupError::NotCyclicallyReduced);
            }
        }
        Ok(CyclicNormalForm { syllables })
    }
}

/// Per-group reduction context caching the surface relators.
#[derive(Clone, Debug)]
pub(crate) struct Reducer<'g> {
    group: &'g GroupSpec,
    relators: Vec<Option<SurfaceRelator>>,
}

impl<'g> Reducer<'g> {
    pub(crate) fn new(group: &'g GroupSpec) -> Self {
        let relators = (0..group.factors().len()).map(|f| SurfaceRelator::new(group, f)).collect();
        Reducer { group, relators }
    }

    pub(crate) fn reduce_in_factor(&self, factor: usize, letters: &[Letter]) -> Vec<Letter> {
        match &self.relators[factor] {
            Some(r) => r.reduce(letters),
            None => free_reduce_letters(letters),
        }
    }

    pub(crate) fn cyclic_in_factor(&self, factor: usize, letters: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
        match &self.relators[factor] {
            Some(r) => r.reduce_cyclic(letters),
            // a rank-one factor word t^k is already cyclically reduced
            None => (free_reduce_letters(letters), Vec::new()),
        }
    }

    pub(crate) fn normal_form(&self, letters: &[Letter]) -> NormalForm {
        let mut syllables: Vec<Syllable> = Vec::new();
        for &l in letters {
            let f = self.group.factor_of(l);
            match syllables.last_mut() {
                Some(top) if top.factor == f => {
                    let mut v = top.word.letters().to_vec();
                    v.push(l);
                    let red = if self.relators[f].is_some() {
                        self.reduce_in_factor(f, &v)
                    } else {
                        free_reduce_letters(&v)
                    };
                    if red.is_empty() {
                        syllables.pop();
                    } else {
                        top.word = Word::from(red);
                    }
                }
                _ => syllables.push(Syllable { factor: f, word: Word::from(vec![l]) }),
            }
        }
        NormalForm { syllables }
    }

    pub(crate) fn cyclic_reduce(&self, letters: &[Letter]) -> Result<(CyclicNormalForm, Word), GroupError> {
        let mut syl = self.normal_form(letters).syllables;
        let mut conj: Vec<Letter> = Vec::new();
        while syl.len() >= 2 && syl[0].factor == syl[syl.len() - 1].factor {
            // cyc = x L = L^-1 (L x) L  =>  conj <- L conj
            let last = syl.pop().expect("nonempty");
            let mut c = last.word.letters().to_vec();
            c.extend_from_slice(&conj);
            conj = c;
            let mut merged = last.word.letters().to_vec();
            merged.extend_from_slice(syl[0].word.letters());
            let red = self.reduce_in_factor(last.factor, &merged);
            if red.is_empty() {
                syl.remove(0);
            } else {
                syl[0].word = Word::from(red);
            }
        }
        if syl.is_empty() {
            return Err(GroupError::TrivialElement);
        }
        if syl.len() == 1 {
            let (c, k) = self.cyclic_in_factor(syl[0].factor, syl[0].word.letters());
            syl[0].word = Word::from(c);
            let mut k = k;
            k.extend_from_slice(&conj);
            conj = k;
        }
        let conj = self.normal_form(&conj).to_word();
        Ok((CyclicNormalForm { syllables: syl }, conj))
    }

    /// Whether `a` and `b` are equal in the group.
    pub(crate) fn equal(&self, a: &Word, b: &Word) -> bool {
        let q = a.inverse().concat(b);
        self.normal_form(q.letters()).is_identity()
    }
}

/// Free-product normal form of `w`, with each surface syllable Dehn-reduced.
pub fn normal_form(group: &GroupSpec, w: &Word) -> NormalForm {
    Reducer::new(group).normal_form(w.letters())
}

/// Cyclic normal form and conjugator `c` with `c^-1 · form · c = w`.
pub fn cyclic_reduce(group: &GroupSpec, w: &Word) -> Result<(CyclicNormalForm, Word), GroupError> {
    Reducer::new(group).cyclic_reduce(w.letters())
}

/// Equality in the group, decided through normal forms.
pub fn words_equal(group: &GroupSpec, a: &Word, b: &Word) -> bool {
    Reducer::new(group).equal(a, b)
}
