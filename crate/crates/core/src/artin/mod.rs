//! Word problem in ADE Artin groups and transport checks.

mod coxeter;
mod garside;
mod transport;
mod word;

pub use coxeter::{CoxeterGroup, CoxeterLetter, CoxeterSpec, Element};
pub use garside::GarsideNF;
pub use transport::{
    check_homomorphism, converse_images, forward_generators, generator_recovery, images_by_position, ConverseVariant,
    ForwardGenerator, RecoveryEntry, RelationReport, RelationVerdict, RoundTripReport, TransportCase,
};
pub use word::{ArtinWord, Letter};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArtinError {
    #[error("unsupported Coxeter type `{0}` (supported: A1-A9, D4-D8, E6-E8)")]
    UnsupportedType(String),
    #[error("cannot parse token `{token}` at position {position}; expected s<k> or s<k>'")]
    Parse { token: String, position: usize },
    #[error("generator s{generator} exceeds the rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("transport expects {expected} objects, configuration has {found}")]
    WrongObjectCount { expected: usize, found: usize },
}
