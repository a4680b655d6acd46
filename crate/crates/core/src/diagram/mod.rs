//! The diagram category: words in a black/white alphabet, matching diagrams,
//! `Q[w]`-linear morphism arithmetic, the projecting idempotents for one-sided
//! bipartitions, cyclic-word coevaluations, and evaluation at integer rank.

pub mod cyclic;
#[allow(clippy::module_inception)]
pub mod diagram;
pub mod gln;
pub mod morphism;
pub mod partition;
pub mod word;
pub mod young;

pub use cyclic::{
    action_morphism, cycle_coev, cyclic_morphism, cyclic_word_on_product, point_action,
    product_idempotent, product_word,
};
pub use diagram::{enumerate_diagrams, Diagram, Row, Vertex};
pub use gln::{diagram_matrix, evaluate_gl};
pub use morphism::Morphism;
pub use partition::{Bipartition, Partition};
pub use word::{Color, Word};
pub use young::young_idempotent;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("word mismatch: got {got}, expected {expected}")]
    WordMismatch { got: String, expected: String },
    #[error(
        "bipartitions with both partitions nonempty are not supported: \
         their projecting idempotents are not polynomial in the loop variable"
    )]
    TwoSidedBipartition,
    #[error("point index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("rank {n} too small for this object (needs at least {need})")]
    RankTooSmall { n: usize, need: usize },
    #[error("invalid partition data: {0}")]
    BadAttachment(String),
}
