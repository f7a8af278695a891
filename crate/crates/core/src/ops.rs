//! Boolean operations, determinization, minimization and the decision
//! procedures.
//!
//! Every procedure takes an [`OpCounters`] and records the satisfiability
//! checks and connectives it performs, so the costs can be compared with the
//! `⟨n, m, l⟩` bounds.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraBinding, BooleanAlgebra, Letter, Predicate};
use crate::error::Error;
use crate::interval;
use crate::region::{minterms, Region};
use crate::sfa::{OpCounters, Sfa, StateId, Transition};
use crate::transforms::{complete, EdgeList};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    Intersect,
    /// Needs deterministic, complete operands.
    Union,
}

/// Synchronous product over the reachable pairs, named `(q,p)`.
///
/// Synchronized edges whose conjunction is unsatisfiable are dropped, so the
/// result is feasible and has at most one transition per synchronized pair.
/// Over the interval algebra the conjunction is emitted in canonical form,
/// so two atoms give one atom and neat inputs give neat output; over the
/// propositional algebra it is the flattened conjunction.
pub fn product(a: &Sfa, b: &Sfa, mode: ProductMode, cx: &mut OpCounters) -> Result<Sfa, Error> {
    if a.binding() != b.binding() {
        return Err(Error::BindingMismatch);
    }
    if mode == ProductMode::Union
        && !(a.is_deterministic(cx)
            && a.is_complete(cx)
            && b.is_deterministic(cx)
            && b.is_complete(cx))
    {
        return Err(Error::UnionPrecondition);
    }
    let binding = a.binding();
    let (out_a, out_b) = (a.out_table(), b.out_table());

    let mut index: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
    let mut pairs = Vec::new();
    let mut queue = VecDeque::new();
    let start = (a.initial(), b.initial());
    index.insert(start, 0);
    pairs.push(start);
    queue.push_back(start);

    let mut edges = EdgeList::default();
    while let Some((p, q)) = queue.pop_front() {
        let from = index[&(p, q)];
        for ta in &out_a[p] {
            for tb in &out_b[q] {
                cx.conj_built += 1;
                let both = Predicate::and([ta.pred.clone(), tb.pred.clone()]);
                let label = match binding {
                    AlgebraBinding::Interval => {
                        cx.sat_calls += 1;
                        let dnf = interval::to_dnf(&both);
                        if dnf.is_empty() {
                            continue;
                        }
                        dnf.to_predicate()
                    }
                    AlgebraBinding::Propositional(_) => match cx.sat(binding, &both) {
                        Some(_) => both,
                        None => continue,
                    },
                };
                let key = (ta.to, tb.to);
                let to = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    queue.push_back(key);
                    pairs.len() - 1
                });
                edges.push(from, label, to);
            }
        }
    }

    let states = pairs
        .iter()
        .map(|(p, q)| format!("({},{})", a.state_name(*p), b.state_name(*q)))
        .collect();
    let accepting = pairs
        .iter()
        .enumerate()
        .filter(|(_, (p, q))| match mode {
            ProductMode::Intersect => a.is_accepting(*p) && b.is_accepting(*q),
            ProductMode::Union => a.is_accepting(*p) || b.is_accepting(*q),
        })
        .map(|(i, _)| i)
        .collect();
    Ok(Sfa::from_parts(
        binding.clone(),
        states,
        0,
        accepting,
        edges.into_vec(),
    ))
}

/// Complement of a deterministic automaton: complete it, then swap accepting
/// and rejecting states. A complete input gains no state.
pub fn complement(a: &Sfa, cx: &mut OpCounters) -> Result<Sfa, Error> {
    if !a.is_deterministic(cx) {
        return Err(Error::NotDeterministic("complement"));
    }
    let total = complete(a, cx);
    let accepting = (0..total.state_count())
        .filter(|q| !total.is_accepting(*q))
        .collect();
    Ok(Sfa::from_parts(
        total.binding().clone(),
        total.states().to_vec(),
        total.initial(),
        accepting,
        total.transitions().to_vec(),
    ))
}

/// Subset construction with minterms.
///
/// For a macro-state with outgoing component transitions `t₁ … t_r`, every
/// satisfiable `⋀_{i∈S} ψ_i ∧ ⋀_{i∉S} ¬ψ_i` with `S ≠ ∅` leads to the set of
/// targets of `S`; the all-negative minterm is left out, so the result need
/// not be complete. Minterms with the same target set are merged and emitted
/// as disjoint basic pieces, so the output is deterministic and neat.
/// Macro-states are named by their sorted member set, e.g. `{q0,q1}`.
pub fn determinize(a: &Sfa, cx: &mut OpCounters) -> Sfa {
    let binding = a.binding();
    let table = a.out_table();
    let regions: Vec<Vec<Region>> = table
        .iter()
        .map(|out| out.iter().map(|t| Region::of(binding, &t.pred)).collect())
        .collect();

    let mut index: BTreeMap<Vec<StateId>, StateId> = BTreeMap::new();
    let mut macros: Vec<Vec<StateId>> = Vec::new();
    let mut queue = VecDeque::new();
    let start = vec![a.initial()];
    index.insert(start.clone(), 0);
    macros.push(start.clone());
    queue.push_back(start);

    let mut edges = EdgeList::default();
    while let Some(set) = queue.pop_front() {
        let from = index[&set];
        let mut components: Vec<(&Region, StateId)> = Vec::new();
        for q in &set {
            for (t, r) in table[*q].iter().zip(&regions[*q]) {
                components.push((r, t.to));
            }
        }
        let component_regions: Vec<Region> = components.iter().map(|(r, _)| (*r).clone()).collect();

        // merge minterms by target set, keeping first-seen order
        let mut targets_order: Vec<Vec<StateId>> = Vec::new();
        let mut merged: BTreeMap<Vec<StateId>, Region> = BTreeMap::new();
        for (region, positive) in minterms(binding, &component_regions, cx) {
            if positive.is_empty() {
                continue;
            }
            let targets: Vec<StateId> = positive
                .iter()
                .map(|i| components[*i].1)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            match merged.get_mut(&targets) {
                Some(r) => {
                    cx.disj_built += 1;
                    *r = r.or(&region);
                }
                None => {
                    targets_order.push(targets.clone());
                    merged.insert(targets, region);
                }
            }
        }
        for targets in targets_order {
            let region = merged.remove(&targets).unwrap();
            let to = match index.get(&targets) {
                Some(to) => *to,
                None => {
                    let to = macros.len();
                    index.insert(targets.clone(), to);
                    macros.push(targets.clone());
                    queue.push_back(targets);
                    to
                }
            };
            for piece in region.pieces() {
                edges.push(from, piece, to);
            }
        }
    }

    let states = macros
        .iter()
        .map(|set| {
            let names: Vec<&str> = set.iter().map(|q| a.state_name(*q)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let accepting = macros
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().any(|q| a.is_accepting(*q)))
        .map(|(i, _)| i)
        .collect();
    Sfa::from_parts(binding.clone(), states, 0, accepting, edges.into_vec())
}

/// Moore-style minimization of a deterministic automaton.
///
/// Unreachable states are dropped and the automaton is completed if needed.
/// Starting from `{F, Q∖F}`, each block is split by the target blocks its
/// states reach on a witness letter of every minterm of the block's outgoing
/// predicates, until nothing changes. States are named after the first member
/// of their block.
///
/// The quotient keeps the transitions of each block's first member,
/// retargeted. Neat input stays neat (interval atoms into the same block are
/// merged into maximal intervals); other input gets one merged predicate per
/// target block. If a sink had to be added, its block is removed again, so the
/// result has no more states and no larger out-degree than the input.
pub fn minimize(a: &Sfa, cx: &mut OpCounters) -> Result<Sfa, Error> {
    if !a.is_deterministic(cx) {
        return Err(Error::NotDeterministic("minimize"));
    }
    let binding = a.binding();
    let neat = a.is_neat();
    let reachable = a.trim_unreachable();
    let original_states = reachable.state_count();
    let total = complete(&reachable, cx);
    let sink = (total.state_count() > original_states).then_some(original_states);
    let table = total.out_table();
    let n = total.state_count();

    let mut block = vec![0usize; n];
    let has_accepting = (0..n).any(|q| total.is_accepting(q));
    let has_rejecting = (0..n).any(|q| !total.is_accepting(q));
    if has_accepting && has_rejecting {
        for (q, b) in block.iter_mut().enumerate() {
            *b = if total.is_accepting(q) { 0 } else { 1 };
        }
    }
    let mut block_count = if has_accepting && has_rejecting { 2 } else { 1 };
    let regions: Vec<Vec<Region>> = table
        .iter()
        .map(|out| out.iter().map(|t| Region::of(binding, &t.pred)).collect())
        .collect();

    loop {
        let mut signature_of: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new()); n];
        for b in 0..block_count {
            let members: Vec<StateId> = (0..n).filter(|q| block[*q] == b).collect();
            let mut all: Vec<Region> = Vec::new();
            for q in &members {
                for r in &regions[*q] {
                    if !all.contains(r) {
                        all.push(r.clone());
                    }
                }
            }
            let witnesses: Vec<Letter> = minterms(binding, &all, cx)
                .into_iter()
                .filter_map(|(r, _)| r.witness())
                .collect();
            for q in members {
                let sig = witnesses
                    .iter()
                    .map(|w| {
                        let to = table[q]
                            .iter()
                            .find(|t| binding.eval(&t.pred, w).unwrap_or(false))
                            .map(|t| t.to)
                            .expect("complete automaton");
                        block[to]
                    })
                    .collect();
                signature_of[q] = (b, sig);
            }
        }
        // renumber blocks by first member so the numbering is deterministic
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut next = vec![0usize; n];
        for q in 0..n {
            let fresh = ids.len();
            next[q] = *ids.entry(&signature_of[q]).or_insert(fresh);
        }
        let count = ids.len();
        block = next;
        if count == block_count {
            break;
        }
        block_count = count;
    }

    let dropped = sink.map(|s| block[s]);
    let mut keep: Vec<usize> = (0..block_count).filter(|b| Some(*b) != dropped).collect();
    let initial_block = block[total.initial()];
    if Some(initial_block) == dropped {
        // the language is empty
        keep = vec![initial_block];
    }
    let new_id: BTreeMap<usize, StateId> = keep.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let rep = |b: usize| (0..n).find(|q| block[*q] == b).unwrap();

    let mut edges = EdgeList::default();
    for (i, b) in keep.iter().enumerate() {
        if Some(*b) == dropped {
            continue;
        }
        let r = rep(*b);
        let mut order: Vec<StateId> = Vec::new();
        let mut per_target: BTreeMap<StateId, Vec<Predicate>> = BTreeMap::new();
        for t in &table[r] {
            let Some(to) = new_id.get(&block[t.to]).copied() else {
                continue;
            };
            if Some(block[t.to]) == dropped {
                continue;
            }
            per_target.entry(to).or_insert_with(|| {
                order.push(to);
                Vec::new()
            });
            per_target.get_mut(&to).unwrap().push(t.pred.clone());
        }
        for to in order {
            let preds = per_target.remove(&to).unwrap();
            match binding {
                AlgebraBinding::Interval => {
                    if preds.len() > 1 {
                        cx.disj_built += 1;
                    }
                    let dnf = interval::to_dnf(&Predicate::or(preds));
                    if neat {
                        for atom in dnf.atoms() {
                            edges.push(i, Predicate::from(*atom), to);
                        }
                    } else {
                        edges.push(i, dnf.to_predicate(), to);
                    }
                }
                AlgebraBinding::Propositional(_) if neat => {
                    for p in preds {
                        edges.push(i, p, to);
                    }
                }
                AlgebraBinding::Propositional(_) => {
                    if preds.len() > 1 {
                        cx.disj_built += 1;
                    }
                    edges.push(i, Predicate::or(preds), to);
                }
            }
        }
    }

    let states: Vec<String> = keep
        .iter()
        .map(|b| total.state_name(rep(*b)).into())
        .collect();
    let accepting = keep
        .iter()
        .enumerate()
        .filter(|(_, b)| total.is_accepting(rep(**b)))
        .map(|(i, _)| i)
        .collect();
    Ok(Sfa::from_parts(
        binding.clone(),
        states,
        new_id[&initial_block],
        accepting,
        edges.into_vec(),
    ))
}

/// Emptiness by reachability of an accepting state.
///
/// With `assume_feasible` predicates are ignored (linear in the number of
/// states and transitions). Otherwise each traversed transition is checked
/// for satisfiability once, so at most `n·m` checks are made.
pub fn is_empty(a: &Sfa, assume_feasible: bool, cx: &mut OpCounters) -> bool {
    shortest_path(a, assume_feasible, cx).is_none()
}

/// A shortest accepted word, or `None` for the empty language. Letters are the
/// satisfiability witnesses of the traversed predicates.
pub fn accepted_word(a: &Sfa, cx: &mut OpCounters) -> Option<Vec<Letter>> {
    let path = shortest_path(a, false, cx)?;
    Some(
        path.into_iter()
            .map(|t| {
                a.binding()
                    .sat(&t.pred)
                    .expect("traversed only satisfiable edges")
            })
            .collect(),
    )
}

fn shortest_path<'a>(
    a: &'a Sfa,
    assume_feasible: bool,
    cx: &mut OpCounters,
) -> Option<Vec<&'a Transition>> {
    let table = a.out_table();
    let mut parent: Vec<Option<Option<&Transition>>> = vec![None; a.state_count()];
    parent[a.initial()] = Some(None);
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(q) = queue.pop_front() {
        if a.is_accepting(q) {
            let mut path = Vec::new();
            let mut cur = q;
            while let Some(Some(t)) = parent[cur] {
                path.push(t);
                cur = t.from;
            }
            path.reverse();
            return Some(path);
        }
        for t in &table[q] {
            if parent[t.to].is_some() {
                continue;
            }
            if !assume_feasible && cx.sat(a.binding(), &t.pred).is_none() {
                continue;
            }
            parent[t.to] = Some(Some(t));
            queue.push_back(t.to);
        }
    }
    None
}

/// A word in `L(a) ∖ L(b)`, if any. `b` is determinized first when needed.
pub fn inclusion_counterexample(
    a: &Sfa,
    b: &Sfa,
    cx: &mut OpCounters,
) -> Result<Option<Vec<Letter>>, Error> {
    let diff = difference(a, b, cx)?;
    Ok(accepted_word(&diff, cx))
}

fn difference(a: &Sfa, b: &Sfa, cx: &mut OpCounters) -> Result<Sfa, Error> {
    if a.binding() != b.binding() {
        return Err(Error::BindingMismatch);
    }
    let b_det;
    let b = if b.is_deterministic(cx) {
        b
    } else {
        b_det = determinize(b, cx);
        &b_det
    };
    let not_b = complement(b, cx)?;
    product(a, &not_b, ProductMode::Intersect, cx)
}

/// Decides `L(a) ⊆ L(b)` as emptiness of `a ∩ ¬b`. The product is already
/// feasible, so emptiness is plain reachability. A nondeterministic `b` is
/// determinized first (exponential in the worst case).
pub fn includes(a: &Sfa, b: &Sfa, cx: &mut OpCounters) -> Result<bool, Error> {
    let diff = difference(a, b, cx)?;
    Ok(is_empty(&diff, true, cx))
}

pub fn equivalent(a: &Sfa, b: &Sfa, cx: &mut OpCounters) -> Result<bool, Error> {
    Ok(includes(a, b, cx)? && includes(b, a, cx)?)
}
