//! Free-group words, finite presentations and their text syntax.

mod hom;
mod parse;
mod presentation;
mod tietze;
mod word;

pub use hom::{check_hom, GroupHom, HomCheck, HomError};
pub use parse::{parse_presentation, parse_word, ParseError, ParseErrorKind};
pub use presentation::{orbifold_group, GroupPresentation, PresentationError};
pub use tietze::{
    commutation_graph, eliminate_generator, reduce_with_commutations, tietze_simplify,
    CommutationGraph, TietzeOutcome,
};
pub use word::{free_reduce, Letter, Word};

/// Largest absolute exponent accepted by the parser.
pub const MAX_EXPONENT: i64 = 1_000_000;

/// Largest word length the parser will materialize.
pub const MAX_WORD_LEN: usize = 1 << 22;
