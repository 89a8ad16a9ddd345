//! Trace languages, vector firing sequences and partial algebras.

pub mod algebra;
pub mod category;
pub mod checks;
pub mod commutation;
pub mod congruence;
pub mod correspondence;
pub mod error;
pub mod language;
pub mod random;
pub mod symbol;
pub mod term;
pub mod trace;
pub mod vector;

pub use error::{Error, Result};
pub use language::{compose_parallel, PrefixLanguage};
pub use symbol::{alphabet, Alphabet, Symbol};
pub use trace::Trace;
pub use vector::{
    component, vconcat, vfs, vops, AlphabetVector, VectorLanguage, VectorOp, VectorString,
};
