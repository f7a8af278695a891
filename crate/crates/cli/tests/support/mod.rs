//! Seeded random automata and predicates.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sfa_core::{
    AlgebraBinding, Bound, IntervalAtom, Letter, LiteralAtom, Predicate, Sfa, Transition, Valuation,
};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite endpoints are drawn from this range.
pub const LO: i64 = 0;
pub const HI: i64 = 40;

pub fn atom(r: &mut Rng8) -> IntervalAtom {
    let lo = if r.gen_bool(0.1) {
        Bound::NegInf
    } else {
        Bound::Fin(r.gen_range(LO..HI))
    };
    let hi = if r.gen_bool(0.1) {
        Bound::PosInf
    } else {
        let floor = match lo {
            Bound::Fin(a) => a + 1,
            _ => LO,
        };
        Bound::Fin(r.gen_range(floor..=floor + 12))
    };
    IntervalAtom::new(lo, hi).unwrap()
}

fn literal(r: &mut Rng8, k: usize) -> Predicate {
    Predicate::from(LiteralAtom::new(r.gen_range(0..k), r.gen_bool(0.5)))
}

/// A predicate of parse-tree size at most `budget` (at least 1). `k == 0`
/// draws interval atoms, otherwise literals over `k` propositions.
pub fn predicate(r: &mut Rng8, k: usize, budget: usize) -> Predicate {
    let leaf = |r: &mut Rng8| match r.gen_range(0..20) {
        0 => Predicate::True,
        1 => Predicate::False,
        _ if k == 0 => Predicate::from(atom(r)),
        _ => literal(r, k),
    };
    if budget < 2 || r.gen_bool(0.25) {
        return leaf(r);
    }
    if budget < 3 || r.gen_bool(0.2) {
        return Predicate::Not(Box::new(predicate(r, k, budget - 1)));
    }
    // c children cost c - 1 connectives
    let c = r.gen_range(2..=4usize.min(budget.div_ceil(2)));
    let mut left = budget - (c - 1);
    let mut children = Vec::with_capacity(c);
    for i in 0..c {
        let share = left / (c - i);
        let size = r.gen_range(1..=share.max(1));
        let child = predicate(r, k, size);
        left -= child.size().min(left);
        children.push(child);
    }
    if r.gen_bool(0.5) {
        Predicate::And(children)
    } else {
        Predicate::Or(children)
    }
}

pub fn binding(k: usize) -> AlgebraBinding {
    if k == 0 {
        AlgebraBinding::Interval
    } else {
        AlgebraBinding::propositional((0..k).map(|i| format!("p{i}"))).unwrap()
    }
}

pub fn assemble(
    k: usize,
    n: usize,
    accepting: &[bool],
    edges: Vec<(usize, Predicate, usize)>,
) -> Sfa {
    let mut seen = BTreeSet::new();
    let transitions = edges
        .into_iter()
        .filter(|e| seen.insert(e.clone()))
        .map(|(f, p, t)| Transition::new(f, p, t))
        .collect();
    let states = (0..n).map(|i| format!("s{i}")).collect();
    let accepting = (0..n).filter(|q| accepting[*q]).collect();
    Sfa::new(binding(k), states, 0, accepting, transitions).unwrap()
}

fn accepting(r: &mut Rng8, n: usize) -> Vec<bool> {
    (0..n).map(|_| r.gen_bool(0.4)).collect()
}

/// Arbitrary automaton: possibly nondeterministic, incomplete and infeasible.
pub fn nfa(r: &mut Rng8, k: usize, max_n: usize, max_size: usize) -> Sfa {
    let n = r.gen_range(1..=max_n);
    let acc = accepting(r, n);
    let edges = (0..r.gen_range(0..=2 * n + 1))
        .map(|_| {
            let size = r.gen_range(1..=max_size);
            (r.gen_range(0..n), predicate(r, k, size), r.gen_range(0..n))
        })
        .collect();
    assemble(k, n, &acc, edges)
}

/// Neat automaton: every transition is one atom, or one monomial.
pub fn neat_nfa(r: &mut Rng8, k: usize, max_n: usize, max_m: usize) -> Sfa {
    let n = r.gen_range(1..=max_n);
    let acc = accepting(r, n);
    let mut edges = Vec::new();
    for q in 0..n {
        for _ in 0..r.gen_range(0..=max_m) {
            let pred = if k == 0 {
                Predicate::from(atom(r))
            } else {
                monomial_of(r, k)
            };
            edges.push((q, pred, r.gen_range(0..n)));
        }
    }
    assemble(k, n, &acc, edges)
}

fn monomial_of(r: &mut Rng8, k: usize) -> Predicate {
    let mut vars: Vec<usize> = (0..k).collect();
    vars.shuffle(r);
    let used = r.gen_range(1..=k);
    Predicate::and(
        vars[..used]
            .iter()
            .map(|v| Predicate::from(LiteralAtom::new(*v, r.gen_bool(0.5)))),
    )
}

/// Deterministic interval automaton with out-degree at most `max_m`, at most
/// two atoms per transition, and endpoints in `LO..HI`. Each state cuts the
/// line into pieces; pieces are grouped into transitions and, unless
/// `complete`, some transitions are dropped.
pub fn interval_dfa(r: &mut Rng8, max_n: usize, max_m: usize, complete: bool, neat: bool) -> Sfa {
    let n = r.gen_range(1..=max_n);
    let acc = accepting(r, n);
    let mut edges = Vec::new();
    for q in 0..n {
        let m = r.gen_range(1..=max_m);
        let pieces_per: Vec<usize> = (0..m)
            .map(|_| if neat { 1 } else { r.gen_range(1..=2) })
            .collect();
        let total: usize = pieces_per.iter().sum();
        let mut cuts = BTreeSet::new();
        while cuts.len() < total - 1 {
            cuts.insert(r.gen_range(LO..HI));
        }
        let mut pieces = partition(&cuts);
        pieces.shuffle(r);
        let mut it = pieces.into_iter();
        for per in pieces_per {
            let atoms: Vec<Predicate> = (&mut it).take(per).map(Predicate::from).collect();
            if !complete && r.gen_bool(0.2) {
                continue;
            }
            let pred = if atoms.len() == 1 {
                atoms.into_iter().next().unwrap()
            } else if r.gen_bool(0.3) {
                // same set, less direct presentation
                Predicate::Not(Box::new(Predicate::Not(Box::new(Predicate::Or(atoms)))))
            } else {
                Predicate::Or(atoms)
            };
            edges.push((q, pred, r.gen_range(0..n)));
        }
    }
    assemble(0, n, &acc, edges)
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

/// Deterministic propositional automaton: valuations are grouped into at
/// most `max_m` classes per state, each class one transition. Neat variants
/// split classes into full monomials.
pub fn prop_dfa(
    r: &mut Rng8,
    k: usize,
    max_n: usize,
    max_m: usize,
    complete: bool,
    neat: bool,
) -> Sfa {
    let n = r.gen_range(1..=max_n);
    let acc = accepting(r, n);
    let mut edges = Vec::new();
    for q in 0..n {
        let m = r.gen_range(1..=max_m);
        let mut classes: Vec<Vec<Predicate>> = vec![Vec::new(); m];
        for i in 0..1usize << k {
            classes[r.gen_range(0..m)].push(full_monomial(&Valuation::from_lex_index(k, i)));
        }
        for class in classes.into_iter().filter(|c| !c.is_empty()) {
            if !complete && r.gen_bool(0.2) {
                continue;
            }
            let to = r.gen_range(0..n);
            if neat {
                edges.extend(class.into_iter().map(|p| (q, p, to)));
            } else {
                edges.push((q, Predicate::or(class), to));
            }
        }
    }
    assemble(k, n, &acc, edges)
}

pub fn full_monomial(v: &Valuation) -> Predicate {
    Predicate::and((0..v.width()).map(|i| Predicate::from(LiteralAtom::new(i, !v.get(i)))))
}

/// Language-preserving rewrites: state splitting, predicate re-expression,
/// and splitting or merging parallel edges.
pub fn rewrite(r: &mut Rng8, a: &Sfa, steps: usize) -> Sfa {
    let mut cur = a.clone();
    for _ in 0..steps {
        cur = match r.gen_range(0..4) {
            0 => split_state(r, &cur),
            1 => reexpress(r, &cur),
            2 => split_edge(r, &cur),
            _ => sfa_core::transforms::to_normalized(&cur, &mut Default::default()),
        };
    }
    cur
}

fn parts(a: &Sfa) -> (usize, Vec<bool>, Vec<(usize, Predicate, usize)>) {
    let acc = (0..a.state_count()).map(|q| a.is_accepting(q)).collect();
    let edges = a
        .transitions()
        .iter()
        .map(|t| (t.from, t.pred.clone(), t.to))
        .collect();
    (a.state_count(), acc, edges)
}

fn width(a: &Sfa) -> usize {
    match a.binding() {
        AlgebraBinding::Interval => 0,
        AlgebraBinding::Propositional(p) => p.len(),
    }
}

/// Copies a state (same outgoing edges and acceptance) and moves some of the
/// edges into it over to the copy.
fn split_state(r: &mut Rng8, a: &Sfa) -> Sfa {
    let (n, mut acc, edges) = parts(a);
    let q = r.gen_range(0..n);
    acc.push(acc[q]);
    let mut out = Vec::new();
    for (f, p, t) in &edges {
        if *f == q {
            out.push((n, p.clone(), *t));
        }
    }
    for (f, p, t) in edges {
        let to = if t == q && r.gen_bool(0.5) { n } else { t };
        out.push((f, p, to));
    }
    assemble(width(a), n + 1, &acc, out)
}

fn reexpress(r: &mut Rng8, a: &Sfa) -> Sfa {
    let (n, acc, mut edges) = parts(a);
    if edges.is_empty() {
        return a.clone();
    }
    let i = r.gen_range(0..edges.len());
    let p = edges[i].1.clone();
    let k = width(a);
    edges[i].1 = match r.gen_range(0..3) {
        0 => Predicate::Not(Box::new(Predicate::Not(Box::new(p)))),
        1 => {
            let x = if k == 0 {
                Predicate::from(atom(r))
            } else {
                literal(r, k)
            };
            Predicate::Or(vec![
                Predicate::And(vec![p.clone(), x.clone()]),
                Predicate::And(vec![p, Predicate::Not(Box::new(x))]),
            ])
        }
        _ => match p {
            Predicate::Or(cs) => Predicate::Not(Box::new(Predicate::And(
                cs.into_iter()
                    .map(|c| Predicate::Not(Box::new(c)))
                    .collect(),
            ))),
            other => Predicate::And(vec![other, Predicate::True]),
        },
    };
    assemble(k, n, &acc, edges)
}

fn split_edge(r: &mut Rng8, a: &Sfa) -> Sfa {
    let (n, acc, mut edges) = parts(a);
    if edges.is_empty() {
        return a.clone();
    }
    let i = r.gen_range(0..edges.len());
    let (f, p, t) = edges.swap_remove(i);
    let k = width(a);
    let x = if k == 0 {
        Predicate::from(atom(r))
    } else {
        literal(r, k)
    };
    edges.push((f, Predicate::and([p.clone(), x.clone()]), t));
    edges.push((f, Predicate::and([p, Predicate::not(x)]), t));
    assemble(k, n, &acc, edges)
}

/// A random word over `alphabet`.
pub fn word(r: &mut Rng8, alphabet: &[Letter], max_len: usize) -> Vec<Letter> {
    (0..r.gen_range(0..=max_len))
        .map(|_| *alphabet.choose(r).unwrap())
        .collect()
}
