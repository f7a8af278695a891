use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::sfa::Violation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An interval atom with `lo >= hi` or an infinite endpoint on the wrong side.
    InvalidAtom(String),
    /// A propositional binding with no, duplicate, empty or too many names.
    InvalidBinding(String),
    TooManyPropositions(usize),
    /// A letter that does not belong to the domain of the binding.
    LetterMismatch(String),
    /// Two automata over different algebras were combined.
    BindingMismatch,
    /// Structural invariants of an automaton do not hold.
    Invalid(Vec<Violation>),
    /// The operation needs a deterministic automaton.
    NotDeterministic(&'static str),
    /// Union through the product needs deterministic, complete operands.
    UnionPrecondition,
    UnsupportedAlgebra(&'static str),
    EmptyAlphabet,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAtom(msg) => write!(f, "invalid atom: {msg}"),
            Error::InvalidBinding(msg) => write!(f, "invalid algebra binding: {msg}"),
            Error::TooManyPropositions(k) => write!(
                f,
                "{k} propositions exceed the cap of {}",
                crate::algebra::MAX_PROPOSITIONS
            ),
            Error::LetterMismatch(msg) => write!(f, "letter does not match the algebra: {msg}"),
            Error::BindingMismatch => f.write_str("automata are defined over different algebras"),
            Error::Invalid(violations) => {
                f.write_str("invalid automaton: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Error::NotDeterministic(op) => {
                write!(
                    f,
                    "{op} needs a deterministic automaton; determinize it first"
                )
            }
            Error::UnionPrecondition => {
                f.write_str("union needs deterministic and complete operands")
            }
            Error::UnsupportedAlgebra(what) => {
                write!(f, "{what} is only defined over the interval algebra")
            }
            Error::EmptyAlphabet => f.write_str("alphabet is empty"),
        }
    }
}

impl core::error::Error for Error {}
