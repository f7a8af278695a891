//! Symbolic finite automata (SFAs) over pluggable effective Boolean algebras.
//!
//! Transitions carry predicates rather than letters. Two algebras ship with the
//! crate:
//!
//! * the **interval algebra**: letters are integers, atoms are half-open
//!   intervals `[a,b)` whose endpoints may be `-inf`/`inf`;
//! * the **propositional algebra**: letters are valuations of `k` propositions,
//!   atoms are literals `p` / `¬p`.
//!
//! On top of those the crate provides the special forms (neat, normalized,
//! feasible, complete, canonical minimal), the usual automata procedures
//! (product, complement, determinization, minimization, emptiness, inclusion,
//! equivalence), the `⟨n, m, l⟩` size measure, and a brute-force concrete-DFA
//! oracle used to cross-check all of the above.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use sfa_core::{Bound, IntervalAtom, Predicate, AlgebraBinding, SfaBuilder, OpCounters};
//! use sfa_core::Letter;
//!
//! let below = |b| Predicate::from(IntervalAtom::new(Bound::NegInf, Bound::Fin(b)).unwrap());
//! let above = |a| Predicate::from(IntervalAtom::new(Bound::Fin(a), Bound::PosInf).unwrap());
//!
//! let m = SfaBuilder::new(AlgebraBinding::Interval)
//!     .states(["q0", "q1"])
//!     .initial("q0")
//!     .accepting(["q1"])
//!     .transition("q0", below(100), "q1")
//!     .transition("q0", above(100), "q0")
//!     .transition("q1", below(200), "q1")
//!     .transition("q1", above(200), "q0")
//!     .build()
//!     .unwrap();
//!
//! let mut cx = OpCounters::default();
//! assert!(m.is_deterministic(&mut cx) && m.is_complete(&mut cx));
//! assert!(m.accepts(&[Letter::Int(150), Letter::Int(50), Letter::Int(199)]).unwrap());
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
mod error;
pub mod interval;
pub mod ops;
pub mod oracle;
pub mod propositional;
mod region;
pub mod sfa;
pub mod transforms;

pub use algebra::{
    AlgebraBinding, Atom, BooleanAlgebra, Letter, Predicate, PredicateClass, Propositions,
    MAX_PROPOSITIONS,
};
pub use error::Error;
pub use interval::{Bound, IntervalAtom, IntervalDnf};
pub use ops::ProductMode;
pub use propositional::{LiteralAtom, Valuation};
pub use sfa::{OpCounters, Sfa, SfaBuilder, SizeTriple, StateId, Transition, Violation};
