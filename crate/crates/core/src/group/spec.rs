use std::fmt;
use std::str::FromStr;

use super::word::{Letter, Word};
use super::GroupError;

/// The isomorphism type of one free factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// Fundamental group of a closed orientable surface, standard one-relator
    /// presentation `[a1,b1]...[ag,bg]`.
    Surface { genus: usize },
    /// An infinite cyclic factor, i.e. one letter of the free part.
    FreeRankOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorSpec {
    pub id: usize,
    pub kind: FactorKind,
}

impl FactorSpec {
    pub fn is_surface(&self) -> bool {
        matches!(self.kind, FactorKind::Surface { .. })
    }

    pub fn genus(&self) -> Option<usize> {
        match self.kind {
            FactorKind::Surface { genus } => Some(genus),
            FactorKind::FreeRankOne => None,
        }
    }
}

/// Role of a generator inside its factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenRole {
    /// `a_j` of a surface factor (1-based handle index).
    A(usize),
    /// `b_j` of a surface factor (1-based handle index).
    B(usize),
    /// Generator of a rank-one free factor.
    T,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Generator {
    factor: usize,
    role: GenRole,
}

/// A free product `G_1 * ... * G_k * F_r` of closed-surface groups and a
/// free group, with the standard symmetric generating set.
///
/// Generators are numbered factor by factor; a surface factor of genus `g`
/// contributes `a1 b1 ... ag bg`, a free factor contributes one letter.
/// Letters are ordered by generator index, positive letter before its
/// inverse; every canonical form in the crate uses this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<FactorSpec>,
    gens: Vec<Generator>,
    factor_gens: Vec<(usize, usize)>,
    surface_ordinal: Vec<Option<usize>>,
    free_ordinal: Vec<Option<usize>>,
    free_product: bool,
}

impl GroupSpec {
    /// Builds the free product of the given factors.
    ///
    /// Rejects genus < 2, trivial products (fewer than two factors) and the
    /// uniquely freely decomposable case of exactly two surface factors.
    pub fn new(kinds: &[FactorKind]) -> Result<Self, GroupError> {
        for kind in kinds {
            if let FactorKind::Surface { genus } = kind {
                if *genus < 2 {
                    return Err(GroupError::GenusTooSmall(*genus));
                }
            }
        }
        if kinds.len() < 2 {
            return Err(GroupError::TrivialFreeProduct);
        }
        let surfaces = kinds
            .iter()
            .filter(|k| matches!(k, FactorKind::Surface { .. }))
            .count();
        if surfaces == 2 && kinds.len() == 2 {
            return Err(GroupError::UniquelyFreelyDecomposable);
        }
        Ok(Self::build(kinds, true))
    }

    /// The free group of rank `rank >= 2`.
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        Self::new(&vec![FactorKind::FreeRankOne; rank])
    }

    /// A single closed-surface group. This is not a free product, so it is
    /// only accepted where a bare factor makes sense (representations,
    /// Fuchsian examples); graph and separability code reject it.
    pub fn surface(genus: usize) -> Result<Self, GroupError> {
        if genus < 2 {
            return Err(GroupError::GenusTooSmall(genus));
        }
        Ok(Self::build(&[FactorKind::Surface { genus }], false))
    }

    fn build(kinds: &[FactorKind], free_product: bool) -> Self {
        let mut factors = Vec::with_capacity(kinds.len());
        let mut gens = Vec::new();
        let mut factor_gens = Vec::new();
        let mut surface_ordinal = Vec::new();
        let mut free_ordinal = Vec::new();
        let (mut n_surface, mut n_free) = (0, 0);
        for (id, &kind) in kinds.iter().enumerate() {
            factors.push(FactorSpec { id, kind });
            let start = gens.len();
            match kind {
                FactorKind::Surface { genus } => {
                    n_surface += 1;
                    surface_ordinal.push(Some(n_surface));
                    free_ordinal.push(None);
                    for j in 1..=genus {
                        gens.push(Generator { factor: id, role: GenRole::A(j) });
                        gens.push(Generator { factor: id, role: GenRole::B(j) });
                    }
                }
                FactorKind::FreeRankOne => {
                    n_free += 1;
                    surface_ordinal.push(None);
                    free_ordinal.push(Some(n_free));
                    gens.push(Generator { factor: id, role: GenRole::T });
                }
            }
            factor_gens.push((start, gens.len()));
        }
        GroupSpec { factors, gens, factor_gens, surface_ordinal, free_ordinal, free_product }
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn factor(&self, id: usize) -> &FactorSpec {
        &self.factors[id]
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    /// Number of letters (generators and their inverses).
    pub fn letter_count(&self) -> usize {
        2 * self.gens.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letter_count()).map(|c| Letter::from_code(c as u16))
    }

    pub fn factor_of(&self, letter: Letter) -> usize {
        self.gens[letter.generator()].factor
    }

    pub fn role_of(&self, generator: usize) -> GenRole {
        self.gens[generator].role
    }

    /// Half-open generator index range of a factor.
    pub fn generators_of(&self, factor: usize) -> std::ops::Range<usize> {
        let (s, e) = self.factor_gens[factor];
        s..e
    }

    pub fn is_free_product(&self) -> bool {
        self.free_product
    }

    /// True when every factor is infinite cyclic.
    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|f| !f.is_surface())
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_surface()).count()
    }

    pub fn surface_factors(&self) -> impl Iterator<Item = &FactorSpec> {
        self.factors.iter().filter(|f| f.is_surface())
    }

    pub(crate) fn require_free_product(&self) -> Result<(), GroupError> {
        if self.free_product {
            Ok(())
        } else {
            Err(GroupError::NotAFreeProduct)
        }
    }

    /// The surface relator `a1 b1 A1 B1 ... ag bg Ag Bg` of a surface factor.
    pub fn relator(&self, factor: usize) -> Option<Word> {
        let genus = self.factors[factor].genus()?;
        let base = self.factor_gens[factor].0;
        let mut letters = Vec::with_capacity(4 * genus);
        for j in 0..genus {
            let a = base + 2 * j;
            let b = a + 1;
            letters.push(Letter::new(a, false));
            letters.push(Letter::new(b, false));
            letters.push(Letter::new(a, true));
            letters.push(Letter::new(b, true));
        }
        Some(Word::from(letters))
    }

    /// Whether bare single letters `a`, `b`, ... name the free generators.
    fn uses_alphabet(&self) -> bool {
        self.is_free() && self.gens.len() <= 26
    }

    fn single_surface(&self) -> bool {
        self.surface_factors().count() == 1
    }

    /// Name of a single letter in the word syntax.
    pub fn letter_name(&self, letter: Letter) -> String {
        let g = &self.gens[letter.generator()];
        let inv = letter.is_inverse();
        match g.role {
            GenRole::T => {
                let k = self.free_ordinal[g.factor].expect("free factor");
                if self.uses_alphabet() {
                    let c = (b'a' + (k - 1) as u8) as char;
                    if inv { c.to_ascii_uppercase().to_string() } else { c.to_string() }
                } else {
                    format!("{}{}", if inv { 'T' } else { 't' }, k)
                }
            }
            GenRole::A(j) | GenRole::B(j) => {
                let base = match (g.role, inv) {
                    (GenRole::A(_), false) => 'a',
                    (GenRole::A(_), true) => 'A',
                    (_, false) => 'b',
                    (_, true) => 'B',
                };
                if self.single_surface() {
                    format!("{base}{j}")
                } else {
                    let i = self.surface_ordinal[g.factor].expect("surface factor");
                    format!("{base}{i}.{j}")
                }
            }
        }
    }

    /// Spells a word with whitespace-separated letters; the empty word is `1`.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a whitespace-separated word. `1` and the empty string denote
    /// the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            letters.push(self.parse_letter(token)?);
        }
        Ok(Word::from(letters))
    }

    fn parse_letter(&self, token: &str) -> Result<Letter, GroupError> {
        let bad = || GroupError::BadLetter(token.to_string());
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let inverse = head.is_ascii_uppercase();
        let lower = head.to_ascii_lowercase();

        if rest.is_empty() {
            if !self.uses_alphabet() || !lower.is_ascii_lowercase() {
                return Err(bad());
            }
            let k = (lower as u8 - b'a') as usize + 1;
            return self.free_letter(k, inverse).ok_or_else(bad);
        }
        match lower {
            't' => {
                let k: usize = rest.parse().map_err(|_| bad())?;
                self.free_letter(k, inverse).ok_or_else(bad)
            }
            'a' | 'b' => {
                let (surface, handle) = match rest.split_once('.') {
                    Some((i, j)) => (
                        i.parse::<usize>().map_err(|_| bad())?,
                        j.parse::<usize>().map_err(|_| bad())?,
                    ),
                    None if self.single_surface() => (1, rest.parse().map_err(|_| bad())?),
                    None => return Err(bad()),
                };
                let factor = self
                    .surface_ordinal
                    .iter()
                    .position(|o| *o == Some(surface))
                    .ok_or_else(bad)?;
                let genus = self.factors[factor].genus().expect("surface");
                if handle == 0 || handle > genus {
                    return Err(bad());
                }
                let offset = 2 * (handle - 1) + usize::from(lower == 'b');
                Ok(Letter::new(self.factor_gens[factor].0 + offset, inverse))
            }
            _ => Err(bad()),
        }
    }

    fn free_letter(&self, k: usize, inverse: bool) -> Option<Letter> {
        let factor = self.free_ordinal.iter().position(|o| *o == Some(k))?;
        Some(Letter::new(self.factor_gens[factor].0, inverse))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free() {
            return write!(f, "F{}", self.factors.len());
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fa| match fa.kind {
                FactorKind::Surface { genus } => format!("S{genus}"),
                FactorKind::FreeRankOne => "Z".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Parses `F2`, `S2*Z`, `S2*S3*Z`, `S2*F2`, or a lone `S2` (surface group).
impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::BadGroup(s.to_string());
        let mut kinds = Vec::new();
        for part in s.split('*').map(str::trim) {
            if part == "Z" {
                kinds.push(FactorKind::FreeRankOne);
            } else if let Some(n) = part.strip_prefix('F') {
                let n: usize = n.parse().map_err(|_| bad())?;
                kinds.extend(std::iter::repeat_n(FactorKind::FreeRankOne, n));
            } else if let Some(g) = part.strip_prefix('S') {
                let genus: usize = g.parse().map_err(|_| bad())?;
                kinds.push(FactorKind::Surface { genus });
            } else {
                return Err(bad());
            }
        }
        match kinds.as_slice() {
            [FactorKind::Surface { genus }] => GroupSpec::surface(*genus),
            _ => GroupSpec::new(&kinds),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_uniquely_freely_decomposable() {
        let err = "S2*S3".parse::<GroupSpec>().unwrap_err();
        assert_eq!(err, GroupError::UniquelyFreelyDecomposable);
        assert!("S2*S3*Z".parse::<GroupSpec>().is_ok());
    }

    #[test]
    fn rejects_small_genus_and_trivial_products() {
        assert_eq!("S1*Z".parse::<GroupSpec>().unwrap_err(), GroupError::GenusTooSmall(1));
        assert_eq!("F1".parse::<GroupSpec>().unwrap_err(), GroupError::TrivialFreeProduct);
        assert!(!"S2".parse::<GroupSpec>().unwrap().is_free_product());
    }

    #[test]
    fn letter_syntax() {
        let f2: GroupSpec = "F2".parse().unwrap();
        let w = f2.parse_word("a b A B").unwrap();
        assert_eq!(f2.format_word(&w), "a b A B");
        assert_eq!(f2.parse_word("t1 T2").unwrap(), f2.parse_word("a B").unwrap());

        let g: GroupSpec = "S2*Z".parse().unwrap();
        let w = g.parse_word("a1 B2 t1").unwrap();
        assert_eq!(g.format_word(&w), "a1 B2 t1");
        assert_eq!(g.parse_word("a1.1").unwrap(), g.parse_word("a1").unwrap());
        assert!(g.parse_word("a3").is_err());
        assert!(g.parse_word("a").is_err());

        let h: GroupSpec = "S2*S3*Z".parse().unwrap();
        let w = h.parse_word("a2.3 T1").unwrap();
        assert_eq!(h.format_word(&w), "a2.3 T1");
        assert!(h.parse_word("a1").is_err());
        assert_eq!(h.to_string(), "S2*S3*Z");
    }

    #[test]
    fn relator_shape() {
        let g: GroupSpec = "S2*Z".parse().unwrap();
        let r = g.relator(0).unwrap();
        assert_eq!(g.format_word(&r), "a1 b1 A1 B1 a2 b2 A2 B2");
        assert!(g.relator(1).is_none());
    }
}
