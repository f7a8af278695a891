//! Conversions between the special forms: neat, normalized, feasible,
//! complete, and the canonical minimal forms over the interval algebra.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraBinding, Predicate};
use crate::error::Error;
use crate::interval::{self, IntervalAtom};
use crate::ops;
use crate::propositional::prop_to_dnf;
use crate::region::Region;
use crate::sfa::{OpCounters, Sfa, StateId, Transition};

/// Collects transitions in insertion order, dropping structural duplicates.
#[derive(Default)]
pub(crate) struct EdgeList {
    seen: BTreeSet<Transition>,
    edges: Vec<Transition>,
}

impl EdgeList {
    pub(crate) fn push(&mut self, from: StateId, pred: Predicate, to: StateId) {
        let t = Transition::new(from, pred, to);
        if self.seen.insert(t.clone()) {
            self.edges.push(t);
        }
    }

    pub(crate) fn into_vec(self) -> Vec<Transition> {
        self.edges
    }
}

fn rebuild(a: &Sfa, transitions: Vec<Transition>) -> Sfa {
    Sfa::from_parts(
        a.binding().clone(),
        a.states().to_vec(),
        a.initial(),
        a.accepting().clone(),
        transitions,
    )
}

/// Splits every predicate into basic disjuncts, one transition each.
///
/// Interval predicates go through the linear DNF (at most `2·|ψ|` atoms, all
/// satisfiable). Propositional ones go through distribution, which can be
/// exponential; contradictory monomials are dropped.
pub fn to_neat(a: &Sfa, cx: &mut OpCounters) -> Sfa {
    let mut edges = EdgeList::default();
    for t in a.transitions() {
        let disjuncts: Vec<Predicate> = match a.binding() {
            AlgebraBinding::Interval => {
                cx.sat_calls += 1;
                interval::to_dnf(&t.pred)
                    .atoms()
                    .iter()
                    .map(|x| Predicate::from(*x))
                    .collect()
            }
            AlgebraBinding::Propositional(_) => match prop_to_dnf(&t.pred) {
                Predicate::Or(ds) => ds,
                Predicate::False => Vec::new(),
                single => vec![single],
            },
        };
        for d in disjuncts {
            edges.push(t.from, d, t.to);
        }
    }
    rebuild(a, edges.into_vec())
}

/// Merges parallel edges into one disjunction per ordered state pair. Groups
/// keep the order of their first edge; disjuncts keep input order.
pub fn to_normalized(a: &Sfa, cx: &mut OpCounters) -> Sfa {
    let mut order: Vec<(StateId, StateId)> = Vec::new();
    let mut groups: BTreeMap<(StateId, StateId), Vec<Predicate>> = BTreeMap::new();
    for t in a.transitions() {
        let preds = groups.entry((t.from, t.to)).or_insert_with(|| {
            order.push((t.from, t.to));
            Vec::new()
        });
        preds.push(t.pred.clone());
    }
    let transitions = order
        .into_iter()
        .map(|key| {
            let preds = groups.remove(&key).unwrap();
            if preds.len() > 1 {
                cx.disj_built += 1;
            }
            Transition::new(key.0, Predicate::or(preds), key.1)
        })
        .collect();
    rebuild(a, transitions)
}

/// Drops exactly the transitions whose predicate is unsatisfiable.
pub fn to_feasible(a: &Sfa, cx: &mut OpCounters) -> Sfa {
    let transitions = a
        .transitions()
        .iter()
        .filter(|t| cx.sat(a.binding(), &t.pred).is_some())
        .cloned()
        .collect();
    rebuild(a, transitions)
}

/// Adds a non-accepting sink and residual transitions into it. Complete input
/// is returned unchanged.
///
/// For neat input the residual of each state is emitted as disjoint basic
/// pieces (interval gaps, at most `m + 1` per state, or a cube cover for
/// propositions) so the result stays neat and deterministic. Otherwise each
/// state gets at most one residual edge `¬(ψ₁ ∨ … ∨ ψ_m)`.
pub fn complete(a: &Sfa, cx: &mut OpCounters) -> Sfa {
    if a.is_complete(cx) {
        return a.clone();
    }
    let binding = a.binding();
    let neat = a.is_neat();
    let mut states = a.states().to_vec();
    let sink = states.len();
    states.push(a.fresh_name("sink"));

    let mut transitions = a.transitions().to_vec();
    for (q, out) in a.out_table().iter().enumerate() {
        if neat {
            let covered = out.iter().fold(Region::empty(binding), |acc, t| {
                acc.or(&Region::of(binding, &t.pred))
            });
            cx.disj_built += 1;
            cx.sat_calls += 1;
            for piece in covered.not().pieces() {
                transitions.push(Transition::new(q, piece, sink));
            }
        } else {
            cx.disj_built += 1;
            let residual = Predicate::not(Predicate::or(out.iter().map(|t| t.pred.clone())));
            if cx.sat(binding, &residual).is_some() {
                transitions.push(Transition::new(q, residual, sink));
            }
        }
    }
    let top = match binding {
        AlgebraBinding::Interval if neat => Predicate::from(IntervalAtom::FULL),
        _ => Predicate::True,
    };
    transitions.push(Transition::new(sink, top, sink));
    Sfa::from_parts(
        binding.clone(),
        states,
        a.initial(),
        a.accepting().clone(),
        transitions,
    )
}

fn require_interval(a: &Sfa, what: &'static str) -> Result<(), Error> {
    if a.binding().is_interval() {
        Ok(())
    } else {
        Err(Error::UnsupportedAlgebra(what))
    }
}

/// The unique minimal-state neat SFA for `L(a)`: determinize, complete,
/// minimize, split every predicate into its maximal intervals, then name the
/// states `q0, q1, …` in breadth-first order from the initial state, exploring
/// transitions by ascending interval.
///
/// Language-equal inputs give structurally equal outputs. Only defined over
/// the interval algebra.
pub fn canonical_minimal_neat(a: &Sfa, cx: &mut OpCounters) -> Result<Sfa, Error> {
    require_interval(a, "canonical_minimal_neat")?;
    let det = ops::determinize(a, cx);
    let total = complete(&det, cx);
    let min = ops::minimize(&total, cx)?;

    // per state: (atom, target) sorted by atom; atoms of one state are disjoint
    let mut rows: Vec<Vec<(IntervalAtom, StateId)>> = vec![Vec::new(); min.state_count()];
    let mut per_target: BTreeMap<(StateId, StateId), Vec<Predicate>> = BTreeMap::new();
    for t in min.transitions() {
        per_target
            .entry((t.from, t.to))
            .or_default()
            .push(t.pred.clone());
    }
    for ((from, to), preds) in per_target {
        cx.disj_built += 1;
        for atom in interval::canonicalize(&Predicate::or(preds)).atoms() {
            rows[from].push((*atom, to));
        }
    }
    for row in &mut rows {
        row.sort();
    }

    let mut index = vec![usize::MAX; min.state_count()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([min.initial()]);
    index[min.initial()] = 0;
    order.push(min.initial());
    while let Some(q) = queue.pop_front() {
        for (_, to) in &rows[q] {
            if index[*to] == usize::MAX {
                index[*to] = order.len();
                order.push(*to);
                queue.push_back(*to);
            }
        }
    }

    let states = (0..order.len()).map(|i| format!("q{i}")).collect();
    let accepting = order
        .iter()
        .enumerate()
        .filter(|(_, q)| min.is_accepting(**q))
        .map(|(i, _)| i)
        .collect();
    let transitions = order
        .iter()
        .enumerate()
        .flat_map(|(i, q)| rows[*q].iter().map(move |(atom, to)| (i, *atom, *to)))
        .map(|(i, atom, to)| Transition::new(i, Predicate::from(atom), index[to]))
        .collect();
    Ok(Sfa::from_parts(
        AlgebraBinding::Interval,
        states,
        0,
        accepting,
        transitions,
    ))
}

/// The canonical minimal-state normalized SFA: the canonical neat form with
/// the intervals between each pair of states joined in ascending order.
/// Transitions are ordered by source, then by target index.
pub fn canonical_minimal_normalized(a: &Sfa, cx: &mut OpCounters) -> Result<Sfa, Error> {
    require_interval(a, "canonical_minimal_normalized")?;
    let neat = canonical_minimal_neat(a, cx)?;
    let mut groups: BTreeMap<(StateId, StateId), Vec<Predicate>> = BTreeMap::new();
    for t in neat.transitions() {
        groups
            .entry((t.from, t.to))
            .or_default()
            .push(t.pred.clone());
    }
    let transitions = groups
        .into_iter()
        .map(|((from, to), preds)| {
            if preds.len() > 1 {
                cx.disj_built += 1;
            }
            Transition::new(from, Predicate::or(preds), to)
        })
        .collect();
    Ok(rebuild(&neat, transitions))
}
