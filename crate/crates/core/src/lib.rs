//! Growth and cogrowth of subalgebras and subideals of free Lie algebras.
//!
//! The crate is organised bottom-up: [`words`] (alphabets, Lyndon-Shirshov
//! words, bracketing), [`counting`] and [`series`] (closed-form counts and
//! generating functions), [`freealg`] (noncommutative polynomials and Lie
//! expressions), [`subalgebra`] and [`subideal`] (degree-truncated linear
//! algebra on graded subspaces) and [`derivations`] (the shifting derivation).

pub mod counting;
pub mod derivations;
pub mod error;
pub mod field;
pub mod freealg;
pub mod series;
pub mod space;
pub mod subalgebra;
pub mod subideal;
pub mod table;
pub mod words;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use freealg::{LieElement, NcPoly};
pub use space::{GradedSubspace, Truncation};
pub use subalgebra::GeneratorSet;
pub use table::{GrowthRow, GrowthTable};
pub use words::{BracketTree, GradedAlphabet, Letter, LetterSpec, Word};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/freealg.md")]
    mod freealg {}
    #[doc = include_str!("../../../book/src/subalgebras.md")]
    mod subalgebras {}
    #[doc = include_str!("../../../book/src/subideals.md")]
    mod subideals {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
}
