//! Named group families and the spec mini-language.

mod corpus;
mod make;
mod spec;

pub use corpus::{corpus, CorpusEntry};
pub use make::make;
pub use spec::{ExtraspecialKind, GroupSpec};

/// Parses and builds a group in one step.
pub fn build(spec: &str) -> crate::Result<crate::group::FiniteGroup> {
    make(&spec.parse()?)
}
