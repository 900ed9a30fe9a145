//! Words, normal forms and conjugacy-class enumeration in free products of
//! closed-surface groups and a free group.

mod dehn;
mod enumerate;
mod normal_form;
mod spec;
mod word;

pub use dehn::dehn_reduce;
pub use enumerate::enumerate_elements;
pub use normal_form::{cyclic_reduce, normal_form, words_equal, CyclicNormalForm, NormalForm, Syllable};
pub(crate) use normal_form::Reducer;
pub use spec::{FactorKind, FactorSpec, GenRole, GroupSpec};
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("surface genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("a free product needs at least two factors")]
    TrivialFreeProduct,
    #[error("two surface factors and no free part is uniquely freely decomposable; not supported")]
    UniquelyFreelyDecomposable,
    #[error("a single surface group is not a free product")]
    NotAFreeProduct,
    #[error("cannot parse group `{0}` (expected e.g. F2, S2*Z, S2*S3*Z)")]
    BadGroup(String),
    #[error("unknown letter `{0}`")]
    BadLetter(String),
    #[error("factor {0} is not a surface factor")]
    NotASurfaceFactor(usize),
    #[error("letter `{letter}` does not belong to factor {factor}")]
    MixedFactors { factor: usize, letter: String },
    #[error("the element is trivial")]
    TrivialElement,
    #[error("word is not in cyclic normal form")]
    NotCyclicallyReduced,
}
