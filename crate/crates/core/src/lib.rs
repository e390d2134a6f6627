//! Finite posets, finite lattices and their representation by up-set
//! lattices, fuzzy up-sets and monotonic operators.

pub mod birkhoff;
pub mod bits;
pub mod classes;
pub mod cli;
pub mod closure;
pub mod config;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod fuzzy;
pub mod generate;
pub mod iso;
pub mod lattice;
pub mod poset;
pub mod quotient;
pub mod text;

pub use birkhoff::{represents, upset_lattice, BirkhoffMap, UpSetFamily, UpSetLattice};
pub use bits::ElemSet;
pub use config::Caps;
pub use error::{Error, Result};
pub use lattice::{lattice_isomorphism, Lattice, MeetIrreducibles, Verdict};
pub use poset::{Poset, UpSet};
pub use classes::{are_equivalent, class_lattice, ClassLattice};
pub use fuzzy::{canonical_fuzzy, cuts_are_all_upsets, image_in_m, FuzzyUpSet};
pub use quotient::{
    boolean_embedding_operator, decide_embedding, embedded_family, quotient, EmbeddingVerdict,
    MonotonicOperator, QuotientPoset,
};
