//! Rational word functions: automata, transducers, bimachines, logical
//! translations, and algebraic decision procedures over monoid varieties.

pub mod automata;
pub mod bimachine;
pub mod canonical;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod monoid;
pub mod partition;
pub mod transducer;
pub mod text;
pub mod translation;
pub mod variety;
pub mod word;

pub use bimachine::Bimachine;
pub use automata::{Dfa, Nfa, Orientation};
pub use error::{Error, Result};
pub use partition::Partition;
pub use word::{word, Alphabet, Delay, Word};
pub use monoid::FiniteMonoid;
pub use variety::VarietySpec;
pub use transducer::{Dft, Nft};
pub use translation::Translation;
