//! Predicates, letters and the effective Boolean algebra contract.
//!
//! A [`Predicate`] is a plain tree over the atoms of some algebra. Which algebra
//! gives it meaning is decided by an [`AlgebraBinding`], which also fixes the
//! letter domain: integers for the interval algebra, valuations `B^k` for the
//! propositional one.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::interval::{self, Bound, IntervalAtom};
use crate::propositional::{self, LiteralAtom, Valuation};

/// Upper bound on `k` for the propositional algebra; keeps `2^k` enumeration small.
pub const MAX_PROPOSITIONS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Interval(IntervalAtom),
    Literal(LiteralAtom),
}

impl From<IntervalAtom> for Atom {
    fn from(a: IntervalAtom) -> Self {
        Atom::Interval(a)
    }
}

impl From<LiteralAtom> for Atom {
    fn from(a: LiteralAtom) -> Self {
        Atom::Literal(a)
    }
}

/// Boolean combination of atoms.
///
/// `And`/`Or` are expected to have at least two children; use [`Predicate::and`],
/// [`Predicate::or`] and [`Predicate::not`] to build well-formed trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    True,
    False,
    Atom(Atom),
    And(Vec<Predicate>),
    Or(Vec<Predicate>),
    Not(Box<Predicate>),
}

impl From<IntervalAtom> for Predicate {
    fn from(a: IntervalAtom) -> Self {
        Predicate::Atom(Atom::Interval(a))
    }
}

impl From<LiteralAtom> for Predicate {
    fn from(a: LiteralAtom) -> Self {
        Predicate::Atom(Atom::Literal(a))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredicateClass {
    /// A single atom, `true` or `false`.
    Atomic,
    /// A conjunction of atomic predicates.
    Basic,
    General,
}

impl Predicate {
    /// Conjunction with neutral/absorbing element handling and flattening.
    pub fn and<I: IntoIterator<Item = Predicate>>(ps: I) -> Predicate {
        let mut children = Vec::new();
        for p in ps {
            match p {
                Predicate::True => {}
                Predicate::False => return Predicate::False,
                Predicate::And(cs) => children.extend(cs),
                other => children.push(other),
            }
        }
        match children.len() {
            0 => Predicate::True,
            1 => children.pop().unwrap(),
            _ => Predicate::And(children),
        }
    }

    /// Disjunction with neutral/absorbing element handling and flattening.
    pub fn or<I: IntoIterator<Item = Predicate>>(ps: I) -> Predicate {
        let mut children = Vec::new();
        for p in ps {
            match p {
                Predicate::False => {}
                Predicate::True => return Predicate::True,
                Predicate::Or(cs) => children.extend(cs),
                other => children.push(other),
            }
        }
        match children.len() {
            0 => Predicate::False,
            1 => children.pop().unwrap(),
            _ => Predicate::Or(children),
        }
    }

    /// Negation; only the constants are folded.
    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Predicate) -> Predicate {
        match p {
            Predicate::True => Predicate::False,
            Predicate::False => Predicate::True,
            other => Predicate::Not(Box::new(other)),
        }
    }

    pub fn classify(&self) -> PredicateClass {
        let leaf =
            |p: &Predicate| matches!(p, Predicate::Atom(_) | Predicate::True | Predicate::False);
        match self {
            p if leaf(p) => PredicateClass::Atomic,
            Predicate::And(cs) if cs.iter().all(leaf) => PredicateClass::Basic,
            _ => PredicateClass::General,
        }
    }

    /// True for atomic and basic predicates.
    pub fn is_basic(&self) -> bool {
        self.classify() != PredicateClass::General
    }

    /// Parse-tree size: one per atom or constant, one per binary connective
    /// (an n-ary node counts `n - 1`), one per negation.
    pub fn size(&self) -> usize {
        match self {
            Predicate::True | Predicate::False | Predicate::Atom(_) => 1,
            Predicate::And(cs) | Predicate::Or(cs) => {
                cs.len().saturating_sub(1) + cs.iter().map(Predicate::size).sum::<usize>()
            }
            Predicate::Not(c) => 1 + c.size(),
        }
    }

    /// Visits every atom in the tree.
    pub fn for_each_atom<F: FnMut(&Atom)>(&self, f: &mut F) {
        match self {
            Predicate::Atom(a) => f(a),
            Predicate::And(cs) | Predicate::Or(cs) => cs.iter().for_each(|c| c.for_each_atom(f)),
            Predicate::Not(c) => c.for_each_atom(f),
            Predicate::True | Predicate::False => {}
        }
    }

    /// Pretty-printer that resolves proposition names through `binding`.
    pub fn display<'a>(&'a self, binding: &'a AlgebraBinding) -> PredicateDisplay<'a> {
        PredicateDisplay {
            pred: self,
            binding,
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            Predicate::And(cs) | Predicate::Or(cs) => {
                cs.len() >= 2 && cs.iter().all(Predicate::well_formed)
            }
            Predicate::Not(c) => c.well_formed(),
            _ => true,
        }
    }
}

/// A concrete letter of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Int(i64),
    Valuation(Valuation),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Int(v) => write!(f, "{v}"),
            Letter::Valuation(v) => write!(f, "{v}"),
        }
    }
}

/// Ordered, distinct, non-empty proposition names (at most [`MAX_PROPOSITIONS`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Propositions(Vec<String>);

impl Propositions {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidBinding("no propositions".into()));
        }
        if names.len() > MAX_PROPOSITIONS {
            return Err(Error::TooManyPropositions(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidBinding("empty proposition name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidBinding(format!(
                    "duplicate proposition `{name}`"
                )));
            }
        }
        Ok(Propositions(names))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// The algebra an automaton's predicates live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraBinding {
    Interval,
    Propositional(Propositions),
}

impl AlgebraBinding {
    pub fn propositional<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Propositions::new(names).map(AlgebraBinding::Propositional)
    }

    /// Number of propositions, 0 for the interval algebra.
    pub fn width(&self) -> usize {
        match self {
            AlgebraBinding::Interval => 0,
            AlgebraBinding::Propositional(p) => p.len(),
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, AlgebraBinding::Interval)
    }
}

/// The contract every effective Boolean algebra fulfils: atoms can be checked
/// and evaluated on letters, and satisfiability is decidable with a witness.
///
/// Connectives are shared ([`Predicate`] is algebra-agnostic), so `eval` has a
/// structural default.
pub trait BooleanAlgebra {
    fn check_atom(&self, atom: &Atom) -> Result<(), Error>;
    fn check_letter(&self, letter: &Letter) -> Result<(), Error>;
    fn eval_atom(&self, atom: &Atom, letter: &Letter) -> bool;
    /// A letter in the denotation of `p`, or `None` when it denotes the empty set.
    fn sat(&self, p: &Predicate) -> Option<Letter>;

    fn eval(&self, p: &Predicate, letter: &Letter) -> Result<bool, Error> {
        self.check_letter(letter)?;
        Ok(eval_tree(self, p, letter))
    }

    fn check_predicate(&self, p: &Predicate) -> Result<(), Error> {
        if !p.well_formed() {
            return Err(Error::InvalidAtom(
                "connective with fewer than two children".into(),
            ));
        }
        let mut result = Ok(());
        p.for_each_atom(&mut |a| {
            if result.is_ok() {
                result = self.check_atom(a);
            }
        });
        result
    }
}

fn eval_tree<A: BooleanAlgebra + ?Sized>(alg: &A, p: &Predicate, letter: &Letter) -> bool {
    match p {
        Predicate::True => true,
        Predicate::False => false,
        Predicate::Atom(a) => alg.eval_atom(a, letter),
        Predicate::And(cs) => cs.iter().all(|c| eval_tree(alg, c, letter)),
        Predicate::Or(cs) => cs.iter().any(|c| eval_tree(alg, c, letter)),
        Predicate::Not(c) => !eval_tree(alg, c, letter),
    }
}

/// Integers with `[a,b)` atoms.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntervalAlgebra;

impl BooleanAlgebra for IntervalAlgebra {
    fn check_atom(&self, atom: &Atom) -> Result<(), Error> {
        match atom {
            Atom::Interval(a) => IntervalAtom::new(a.lo(), a.hi()).map(|_| ()),
            Atom::Literal(_) => Err(Error::InvalidAtom(
                "literal atom under the interval algebra".into(),
            )),
        }
    }

    fn check_letter(&self, letter: &Letter) -> Result<(), Error> {
        match letter {
            Letter::Int(_) => Ok(()),
            Letter::Valuation(_) => Err(Error::LetterMismatch("expected an integer".into())),
        }
    }

    fn eval_atom(&self, atom: &Atom, letter: &Letter) -> bool {
        match (atom, letter) {
            (Atom::Interval(a), Letter::Int(x)) => a.contains(*x),
            _ => false,
        }
    }

    fn sat(&self, p: &Predicate) -> Option<Letter> {
        interval::interval_sat(p).map(Letter::Int)
    }
}

/// Valuations of `k` propositions with literal atoms.
#[derive(Clone, Copy, Debug)]
pub struct PropositionalAlgebra {
    pub k: usize,
}

impl BooleanAlgebra for PropositionalAlgebra {
    fn check_atom(&self, atom: &Atom) -> Result<(), Error> {
        match atom {
            Atom::Literal(l) if l.var() < self.k => Ok(()),
            Atom::Literal(l) => Err(Error::InvalidAtom(format!(
                "proposition index {} out of range for k={}",
                l.var(),
                self.k
            ))),
            Atom::Interval(_) => Err(Error::InvalidAtom(
                "interval atom under the propositional algebra".into(),
            )),
        }
    }

    fn check_letter(&self, letter: &Letter) -> Result<(), Error> {
        match letter {
            Letter::Valuation(v) if v.width() == self.k => Ok(()),
            Letter::Valuation(v) => Err(Error::LetterMismatch(format!(
                "valuation of width {} for k={}",
                v.width(),
                self.k
            ))),
            Letter::Int(_) => Err(Error::LetterMismatch("expected a valuation".into())),
        }
    }

    fn eval_atom(&self, atom: &Atom, letter: &Letter) -> bool {
        match (atom, letter) {
            (Atom::Literal(l), Letter::Valuation(v)) => l.holds(v),
            _ => false,
        }
    }

    fn sat(&self, p: &Predicate) -> Option<Letter> {
        // k is capped by `Propositions`, so this cannot fail for bound algebras
        propositional::prop_sat(self.k, p)
            .ok()
            .flatten()
            .map(Letter::Valuation)
    }
}

impl BooleanAlgebra for AlgebraBinding {
    fn check_atom(&self, atom: &Atom) -> Result<(), Error> {
        match self {
            AlgebraBinding::Interval => IntervalAlgebra.check_atom(atom),
            AlgebraBinding::Propositional(p) => {
                PropositionalAlgebra { k: p.len() }.check_atom(atom)
            }
        }
    }

    fn check_letter(&self, letter: &Letter) -> Result<(), Error> {
        match self {
            AlgebraBinding::Interval => IntervalAlgebra.check_letter(letter),
            AlgebraBinding::Propositional(p) => {
                PropositionalAlgebra { k: p.len() }.check_letter(letter)
            }
        }
    }

    fn eval_atom(&self, atom: &Atom, letter: &Letter) -> bool {
        match self {
            AlgebraBinding::Interval => IntervalAlgebra.eval_atom(atom, letter),
            AlgebraBinding::Propositional(p) => {
                PropositionalAlgebra { k: p.len() }.eval_atom(atom, letter)
            }
        }
    }

    fn sat(&self, p: &Predicate) -> Option<Letter> {
        match self {
            AlgebraBinding::Interval => IntervalAlgebra.sat(p),
            AlgebraBinding::Propositional(props) => PropositionalAlgebra { k: props.len() }.sat(p),
        }
    }
}

pub struct PredicateDisplay<'a> {
    pred: &'a Predicate,
    binding: &'a AlgebraBinding,
}

impl PredicateDisplay<'_> {
    fn write(&self, p: &Predicate, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |c: &Predicate, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if matches!(c, Predicate::And(_) | Predicate::Or(_)) {
                f.write_str("(")?;
                self.write(c, f)?;
                f.write_str(")")
            } else {
                self.write(c, f)
            }
        };
        match p {
            Predicate::True => f.write_str("⊤"),
            Predicate::False => f.write_str("⊥"),
            Predicate::Atom(Atom::Interval(a)) => write!(f, "{a}"),
            Predicate::Atom(Atom::Literal(l)) => {
                if l.is_negated() {
                    f.write_str("¬")?;
                }
                match self.binding {
                    AlgebraBinding::Propositional(props) if l.var() < props.len() => {
                        f.write_str(&props.names()[l.var()])
                    }
                    _ => write!(f, "p{}", l.var() + 1),
                }
            }
            Predicate::And(cs) | Predicate::Or(cs) => {
                let sep = if matches!(p, Predicate::And(_)) {
                    "∧"
                } else {
                    "∨"
                };
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    child(c, f)?;
                }
                Ok(())
            }
            Predicate::Not(c) => {
                f.write_str("¬")?;
                if matches!(**c, Predicate::Not(_)) {
                    self.write(c, f)
                } else {
                    child(c, f)
                }
            }
        }
    }
}

impl fmt::Display for PredicateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.pred, f)
    }
}

/// Shorthand for building interval atoms in tests and examples; panics on an
/// improper interval.
pub fn iv(lo: Bound, hi: Bound) -> Predicate {
    Predicate::from(IntervalAtom::new(lo, hi).expect("proper interval"))
}
