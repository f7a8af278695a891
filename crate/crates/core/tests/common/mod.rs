#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use sfa_core::{
    AlgebraBinding, Bound, IntervalAtom, Letter, LiteralAtom, Predicate, Sfa, Transition, Valuation,
};

pub const LO: i64 = -5;
pub const HI: i64 = 25;

fn bound_lo() -> impl Strategy<Value = Bound> {
    prop_oneof![1 => Just(Bound::NegInf), 6 => (LO..HI).prop_map(Bound::Fin)]
}

pub fn interval_atom() -> impl Strategy<Value = IntervalAtom> {
    (bound_lo(), 1i64..12, prop::bool::weighted(0.15)).prop_map(|(lo, width, open)| {
        let hi = match (lo, open) {
            (_, true) => Bound::PosInf,
            (Bound::Fin(a), false) => Bound::Fin(a + width),
            (_, false) => Bound::Fin(LO + width),
        };
        IntervalAtom::new(lo, hi).unwrap()
    })
}

pub fn interval_pred() -> impl Strategy<Value = Predicate> {
    let leaf = prop_oneof![
        8 => interval_atom().prop_map(Predicate::from),
        1 => Just(Predicate::True),
        1 => Just(Predicate::False),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Predicate::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Predicate::Or),
            inner.prop_map(|p| Predicate::Not(Box::new(p))),
        ]
    })
}

pub fn prop_pred(k: usize) -> impl Strategy<Value = Predicate> {
    let leaf = prop_oneof![
        8 => (0..k, any::<bool>()).prop_map(|(v, n)| Predicate::from(LiteralAtom::new(v, n))),
        1 => Just(Predicate::True),
        1 => Just(Predicate::False),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Predicate::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Predicate::Or),
            inner.prop_map(|p| Predicate::Not(Box::new(p))),
        ]
    })
}

pub fn binding_for(k: usize) -> AlgebraBinding {
    if k == 0 {
        AlgebraBinding::Interval
    } else {
        AlgebraBinding::propositional((0..k).map(|i| format!("p{i}"))).unwrap()
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// Assembles an automaton, dropping repeated transitions.
pub fn assemble(
    binding: AlgebraBinding,
    n: usize,
    accepting: Vec<bool>,
    edges: Vec<(usize, Predicate, usize)>,
) -> Sfa {
    let mut seen = BTreeSet::new();
    let transitions = edges
        .into_iter()
        .filter(|e| seen.insert(e.clone()))
        .map(|(f, p, t)| Transition::new(f, p, t))
        .collect();
    let accepting = (0..n).filter(|q| accepting[*q]).collect();
    Sfa::new(binding, names(n), 0, accepting, transitions).unwrap()
}

/// Arbitrary (possibly nondeterministic, incomplete, infeasible) automata.
/// `k == 0` selects the interval algebra, otherwise `k` propositions.
pub fn arb_sfa(k: usize, max_n: usize) -> impl Strategy<Value = Sfa> {
    (1..=max_n).prop_flat_map(move |n| {
        let pred = if k == 0 {
            interval_pred().boxed()
        } else {
            prop_pred(k).boxed()
        };
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec((0..n, pred, 0..n), 0..=2 * n + 1),
        )
            .prop_map(move |(acc, edges)| assemble(binding_for(k), n, acc, edges))
    })
}

/// Deterministic interval automata built from a partition of the line per
/// state. Pieces may be dropped (`partial`), and pieces with the same target
/// are either kept as separate atoms (`neat`) or joined into one predicate.
pub fn arb_interval_dfa(max_n: usize, neat: bool, partial: bool) -> impl Strategy<Value = Sfa> {
    (1..=max_n).prop_flat_map(move |n| {
        let row = (
            prop::collection::btree_set(LO..HI, 0..4),
            prop::collection::vec(
                (0..n, prop::bool::weighted(if partial { 0.25 } else { 0.0 })),
                5,
            ),
        );
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(row, n),
        )
            .prop_map(move |(acc, rows)| {
                let mut edges = Vec::new();
                for (q, (cuts, targets)) in rows.into_iter().enumerate() {
                    let pieces = partition(&cuts);
                    let mut by_target: Vec<Vec<Predicate>> = vec![Vec::new(); n];
                    for (piece, (to, drop)) in pieces.into_iter().zip(targets) {
                        if !drop {
                            by_target[to].push(Predicate::from(piece));
                        }
                    }
                    for (to, preds) in by_target.into_iter().enumerate() {
                        if preds.is_empty() {
                            continue;
                        }
                        if neat {
                            edges.extend(preds.into_iter().map(|p| (q, p, to)));
                        } else {
                            edges.push((q, Predicate::or(preds), to));
                        }
                    }
                }
                assemble(AlgebraBinding::Interval, n, acc, edges)
            })
    })
}

pub fn partition(cuts: &BTreeSet<i64>) -> Vec<IntervalAtom> {
    let mut bounds = vec![Bound::NegInf];
    bounds.extend(cuts.iter().map(|c| Bound::Fin(*c)));
    bounds.push(Bound::PosInf);
    bounds
        .windows(2)
        .map(|w| IntervalAtom::new(w[0], w[1]).unwrap())
        .collect()
}

/// Deterministic propositional automata: every valuation gets a target (or
/// none when `partial`). Neat variants carry one full monomial per valuation.
pub fn arb_prop_dfa(
    k: usize,
    max_n: usize,
    neat: bool,
    partial: bool,
) -> impl Strategy<Value = Sfa> {
    (1..=max_n).prop_flat_map(move |n| {
        let cell = (0..n, prop::bool::weighted(if partial { 0.25 } else { 0.0 }));
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(prop::collection::vec(cell, 1 << k), n),
        )
            .prop_map(move |(acc, rows)| {
                let mut edges = Vec::new();
                for (q, row) in rows.into_iter().enumerate() {
                    let mut by_target: Vec<Vec<Predicate>> = vec![Vec::new(); n];
                    for (i, (to, drop)) in row.into_iter().enumerate() {
                        if !drop {
                            by_target[to].push(monomial(&Valuation::from_lex_index(k, i)));
                        }
                    }
                    for (to, preds) in by_target.into_iter().enumerate() {
                        if preds.is_empty() {
                            continue;
                        }
                        if neat {
                            edges.extend(preds.into_iter().map(|p| (q, p, to)));
                        } else {
                            edges.push((q, Predicate::or(preds), to));
                        }
                    }
                }
                assemble(binding_for(k), n, acc, edges)
            })
    })
}

pub fn monomial(v: &Valuation) -> Predicate {
    Predicate::and((0..v.width()).map(|i| Predicate::from(LiteralAtom::new(i, !v.get(i)))))
}

pub fn word(xs: &[i64]) -> Vec<Letter> {
    xs.iter().map(|x| Letter::Int(*x)).collect()
}

pub fn threshold() -> Sfa {
    let iv = |lo, hi| Predicate::from(IntervalAtom::new(lo, hi).unwrap());
    sfa_core::SfaBuilder::new(AlgebraBinding::Interval)
        .states(["q0", "q1"])
        .initial("q0")
        .accepting(["q1"])
        .transition("q0", iv(Bound::NegInf, Bound::Fin(100)), "q1")
        .transition("q0", iv(Bound::Fin(100), Bound::PosInf), "q0")
        .transition("q1", iv(Bound::NegInf, Bound::Fin(200)), "q1")
        .transition("q1", iv(Bound::Fin(200), Bound::PosInf), "q0")
        .build()
        .unwrap()
}

pub fn same_language(a: &Sfa, b: &Sfa) -> bool {
    let alphabet = sfa_core::oracle::default_alphabet(&[a, b]);
    sfa_core::oracle::oracle_equal(a, b, &alphabet).unwrap()
}
