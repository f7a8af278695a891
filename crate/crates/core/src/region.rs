//! Exact denotations of predicates, used where constructions need to split the
//! domain into disjoint pieces (minterms, completion residuals).
//!
//! Interval predicates denote an [`IntervalDnf`]; propositional ones a truth
//! table over `B^k`. Both are canonical, so equality is semantic equality.

use alloc::vec::Vec;

use crate::algebra::{AlgebraBinding, Letter, Predicate};
use crate::interval::{self, IntervalDnf};
use crate::propositional::TruthTable;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Region {
    Interval(IntervalDnf),
    Prop(TruthTable),
}

impl Region {
    pub(crate) fn full(binding: &AlgebraBinding) -> Self {
        match binding {
            AlgebraBinding::Interval => Region::Interval(IntervalDnf::full()),
            AlgebraBinding::Propositional(p) => Region::Prop(TruthTable::full(p.len())),
        }
    }

    pub(crate) fn empty(binding: &AlgebraBinding) -> Self {
        match binding {
            AlgebraBinding::Interval => Region::Interval(IntervalDnf::empty()),
            AlgebraBinding::Propositional(p) => Region::Prop(TruthTable::empty(p.len())),
        }
    }

    pub(crate) fn of(binding: &AlgebraBinding, p: &Predicate) -> Self {
        match binding {
            AlgebraBinding::Interval => Region::Interval(interval::to_dnf(p)),
            AlgebraBinding::Propositional(props) => Region::Prop(TruthTable::of(props.len(), p)),
        }
    }

    pub(crate) fn and(&self, other: &Self) -> Self {
        match (self, other) {
            (Region::Interval(a), Region::Interval(b)) => Region::Interval(a.intersect(b)),
            (Region::Prop(a), Region::Prop(b)) => Region::Prop(a.and(b)),
            _ => unreachable!("regions of different algebras"),
        }
    }

    pub(crate) fn or(&self, other: &Self) -> Self {
        match (self, other) {
            (Region::Interval(a), Region::Interval(b)) => Region::Interval(a.union(b)),
            (Region::Prop(a), Region::Prop(b)) => Region::Prop(a.or(b)),
            _ => unreachable!("regions of different algebras"),
        }
    }

    pub(crate) fn not(&self) -> Self {
        match self {
            Region::Interval(a) => Region::Interval(a.complement()),
            Region::Prop(a) => Region::Prop(a.not()),
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        match self {
            Region::Interval(a) => a.is_empty(),
            Region::Prop(a) => a.is_empty(),
        }
    }

    pub(crate) fn witness(&self) -> Option<Letter> {
        match self {
            Region::Interval(a) => a.witness().map(Letter::Int),
            Region::Prop(a) => a.first().map(Letter::Valuation),
        }
    }

    /// Pairwise disjoint basic predicates whose union is this region: the
    /// maximal intervals, or a Shannon cube cover.
    pub(crate) fn pieces(&self) -> Vec<Predicate> {
        match self {
            Region::Interval(a) => a.atoms().iter().map(|x| Predicate::from(*x)).collect(),
            Region::Prop(t) => t
                .disjoint_cubes()
                .into_iter()
                .map(|cube| Predicate::and(cube.into_iter().map(Predicate::from)))
                .collect(),
        }
    }
}

/// Splits the domain along `regions`: every satisfiable combination of the
/// regions taken positively or negatively, with the indices taken positively.
/// Unsatisfiable partial conjunctions are pruned as soon as they appear.
pub(crate) fn minterms(
    binding: &AlgebraBinding,
    regions: &[Region],
    cx: &mut crate::sfa::OpCounters,
) -> Vec<(Region, Vec<usize>)> {
    let mut out = Vec::new();
    let mut positive = Vec::new();
    split(
        regions,
        0,
        Region::full(binding),
        &mut positive,
        &mut out,
        cx,
    );
    out
}

fn split(
    regions: &[Region],
    i: usize,
    current: Region,
    positive: &mut Vec<usize>,
    out: &mut Vec<(Region, Vec<usize>)>,
    cx: &mut crate::sfa::OpCounters,
) {
    if i == regions.len() {
        out.push((current, positive.clone()));
        return;
    }
    let with = current.and(&regions[i]);
    let without = current.and(&regions[i].not());
    cx.conj_built += 2;
    cx.sat_calls += 2;
    if !with.is_empty() {
        positive.push(i);
        split(regions, i + 1, with, positive, out, cx);
        positive.pop();
    }
    if !without.is_empty() {
        split(regions, i + 1, without, positive, out, cx);
    }
}
