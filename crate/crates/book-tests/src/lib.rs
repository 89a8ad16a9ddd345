//! Runs the code listings of the guide in `book/` as doctests, one module
//! per chapter so a failure names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/languages.md")]
pub mod languages {}
#[doc = include_str!("../../../book/src/vectors.md")]
pub mod vectors {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/checks.md")]
pub mod checks {}
#[doc = include_str!("../../../book/src/morphisms.md")]
pub mod morphisms {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
