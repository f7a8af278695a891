//! The interval algebra: integer letters, `[a,b)` atoms with `-inf`/`inf`
//! sentinels, and the linear-size DNF over sorted disjoint intervals.
//!
//! `-inf`/`inf` are endpoints only. No interval `[a,b)` can contain `inf`
//! (membership needs `z < b`), so letters are restricted to finite integers and
//! `⊤` denotes every integer.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::{max, min};
use core::fmt;

use crate::algebra::{Atom, Predicate};
use crate::error::Error;

/// Interval endpoint. The derived order is `NegInf < Fin(_) < PosInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Fin(i64),
    PosInf,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Fin(v) => write!(f, "{v}"),
            Bound::PosInf => f.write_str("inf"),
        }
    }
}

/// Half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalAtom {
    lo: Bound,
    hi: Bound,
}

impl IntervalAtom {
    /// `[-inf, inf)`, the denotation of `⊤`.
    pub const FULL: IntervalAtom = IntervalAtom {
        lo: Bound::NegInf,
        hi: Bound::PosInf,
    };

    pub fn new(lo: Bound, hi: Bound) -> Result<Self, Error> {
        if lo == Bound::PosInf || hi == Bound::NegInf || lo >= hi {
            return Err(Error::InvalidAtom(format!(
                "[{lo},{hi}) is not a proper interval"
            )));
        }
        Ok(IntervalAtom { lo, hi })
    }

    pub fn lo(&self) -> Bound {
        self.lo
    }

    pub fn hi(&self) -> Bound {
        self.hi
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= Bound::Fin(x) && Bound::Fin(x) < self.hi
    }

    /// Least finite member if bounded below, otherwise `hi - 1`, otherwise 0.
    pub fn witness(&self) -> i64 {
        match (self.lo, self.hi) {
            (Bound::Fin(a), _) => a,
            (_, Bound::Fin(b)) => b - 1,
            _ => 0,
        }
    }

    fn try_new(lo: Bound, hi: Bound) -> Option<Self> {
        (lo != Bound::PosInf && hi != Bound::NegInf && lo < hi).then_some(IntervalAtom { lo, hi })
    }
}

impl fmt::Display for IntervalAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.lo, self.hi)
    }
}

/// Conjunction of two atoms: `[max(a,c), min(b,d))` when proper.
pub fn atom_and(x: &IntervalAtom, y: &IntervalAtom) -> Option<IntervalAtom> {
    IntervalAtom::try_new(max(x.lo, y.lo), min(x.hi, y.hi))
}

/// Complement of an atom: at most the two pieces `[-inf, lo)` and `[hi, inf)`.
pub fn atom_not(x: &IntervalAtom) -> IntervalDnf {
    IntervalDnf::from_atom(*x).complement()
}

/// Sorted disjunction of pairwise disjoint, non-touching intervals.
///
/// This is the canonical representation of an interval predicate: two
/// predicates denote the same set iff their `IntervalDnf`s are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalDnf(Vec<IntervalAtom>);

impl IntervalDnf {
    pub fn empty() -> Self {
        IntervalDnf(Vec::new())
    }

    pub fn full() -> Self {
        IntervalDnf(alloc::vec![IntervalAtom::FULL])
    }

    pub fn from_atom(a: IntervalAtom) -> Self {
        IntervalDnf(alloc::vec![a])
    }

    /// Sorts and merges overlapping or touching intervals.
    pub fn from_atoms<I: IntoIterator<Item = IntervalAtom>>(atoms: I) -> Self {
        let mut atoms: Vec<IntervalAtom> = atoms.into_iter().collect();
        atoms.sort();
        let mut out: Vec<IntervalAtom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match out.last_mut() {
                Some(last) if a.lo <= last.hi => last.hi = max(last.hi, a.hi),
                _ => out.push(a),
            }
        }
        IntervalDnf(out)
    }

    pub fn atoms(&self) -> &[IntervalAtom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.0 == [IntervalAtom::FULL]
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.iter().any(|a| a.contains(x))
    }

    pub fn union(&self, other: &Self) -> Self {
        IntervalDnf::from_atoms(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Sweep over both sorted lists; yields at most `k + l` pieces.
    pub fn intersect(&self, other: &Self) -> Self {
        let (xs, ys) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < xs.len() && j < ys.len() {
            if let Some(a) = atom_and(&xs[i], &ys[j]) {
                out.push(a);
            }
            if xs[i].hi <= ys[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalDnf(out)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut start = Bound::NegInf;
        for a in &self.0 {
            if let Some(gap) = IntervalAtom::try_new(start, a.lo) {
                out.push(gap);
            }
            start = a.hi;
        }
        if let Some(gap) = IntervalAtom::try_new(start, Bound::PosInf) {
            out.push(gap);
        }
        IntervalDnf(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    /// The first interval's witness (see [`IntervalAtom::witness`]).
    pub fn witness(&self) -> Option<i64> {
        self.0.first().map(IntervalAtom::witness)
    }

    /// `⊥`, a single atom, or a flat `Or` of atoms in ascending order.
    pub fn to_predicate(&self) -> Predicate {
        Predicate::or(self.0.iter().map(|a| Predicate::from(*a)))
    }
}

/// Pushes negations down to the atoms, replacing `¬[a,b)` by its (at most two)
/// complementary pieces.
pub fn to_nnf(p: &Predicate) -> Predicate {
    nnf(p, false)
}

fn nnf(p: &Predicate, negate: bool) -> Predicate {
    match p {
        Predicate::True if negate => Predicate::False,
        Predicate::False if negate => Predicate::True,
        Predicate::Atom(Atom::Interval(a)) if negate => atom_not(a).to_predicate(),
        Predicate::And(cs) if negate => Predicate::or(cs.iter().map(|c| nnf(c, true))),
        Predicate::Or(cs) if negate => Predicate::and(cs.iter().map(|c| nnf(c, true))),
        Predicate::And(cs) => Predicate::and(cs.iter().map(|c| nnf(c, false))),
        Predicate::Or(cs) => Predicate::or(cs.iter().map(|c| nnf(c, false))),
        Predicate::Not(c) => nnf(c, !negate),
        // non-interval atoms are left alone; callers only pass interval predicates
        Predicate::Atom(_) if negate => Predicate::Not(alloc::boxed::Box::new(p.clone())),
        other => other.clone(),
    }
}

/// Linear-size DNF: NNF first, then union for `∨` and the sweeping
/// intersection for `∧`. The result is canonical.
pub fn to_dnf(p: &Predicate) -> IntervalDnf {
    dnf_of(&to_nnf(p))
}

fn dnf_of(p: &Predicate) -> IntervalDnf {
    match p {
        Predicate::True => IntervalDnf::full(),
        Predicate::False | Predicate::Atom(Atom::Literal(_)) => IntervalDnf::empty(),
        Predicate::Atom(Atom::Interval(a)) => IntervalDnf::from_atom(*a),
        Predicate::Or(cs) => cs
            .iter()
            .fold(IntervalDnf::empty(), |acc, c| acc.union(&dnf_of(c))),
        Predicate::And(cs) => cs
            .iter()
            .fold(IntervalDnf::full(), |acc, c| acc.intersect(&dnf_of(c))),
        // unreachable after NNF
        Predicate::Not(c) => dnf_of(c).complement(),
    }
}

/// Canonical representation: the sorted disjunction of maximal intervals.
pub fn canonicalize(p: &Predicate) -> IntervalDnf {
    to_dnf(p)
}

/// Satisfiability through the DNF; the witness is the first interval's least
/// finite element (or `hi - 1` when unbounded below, or 0 for `⊤`).
pub fn interval_sat(p: &Predicate) -> Option<i64> {
    to_dnf(p).witness()
}
