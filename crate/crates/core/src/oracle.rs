//! Brute-force reference semantics.
//!
//! An automaton is concretized into an explicit DFA over a finite alphabet
//! by subset construction, evaluating every predicate on every letter. The
//! window alphabet contains every interval endpoint plus a margin, so every
//! region the predicates can distinguish has a representative and language
//! questions over the window decide them over all of ℤ. Propositional
//! automata use all `2^k` valuations.
//!
//! Nothing here shares code with the symbolic constructions beyond predicate
//! evaluation, which makes it usable as an independent check.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraBinding, Atom, BooleanAlgebra, Letter};
use crate::error::Error;
use crate::interval::Bound;
use crate::propositional::Valuation;
use crate::sfa::Sfa;

#[derive(Clone, Debug)]
pub struct ConcreteDfa {
    pub alphabet: Vec<Letter>,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// `delta[q][i]` is the successor of `q` on `alphabet[i]`.
    pub delta: Vec<Vec<usize>>,
}

/// Integers `lo-2 ..= hi+2` around the finite endpoints of all automata
/// (`-2..=2` when there are none), or all valuations for a propositional
/// binding.
pub fn default_alphabet(automata: &[&Sfa]) -> Vec<Letter> {
    if let Some(AlgebraBinding::Propositional(props)) = automata.first().map(|a| a.binding()) {
        let k = props.len();
        return (0..1usize << k)
            .map(|i| Letter::Valuation(Valuation::from_lex_index(k, i)))
            .collect();
    }
    let mut ends = BTreeSet::new();
    for a in automata {
        for t in a.transitions() {
            t.pred.for_each_atom(&mut |atom| {
                if let Atom::Interval(x) = atom {
                    for b in [x.lo(), x.hi()] {
                        if let Bound::Fin(v) = b {
                            ends.insert(v);
                        }
                    }
                }
            });
        }
    }
    let lo = ends.first().copied().unwrap_or(0).saturating_sub(2);
    let hi = ends.last().copied().unwrap_or(0).saturating_add(2);
    (lo..=hi).map(Letter::Int).collect()
}

pub fn concretize(a: &Sfa, alphabet: &[Letter]) -> Result<ConcreteDfa, Error> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let binding = a.binding();
    for l in alphabet {
        binding.check_letter(l)?;
    }
    // step[q][i]: set of successors of q on letter i
    let mut step: Vec<Vec<BTreeSet<usize>>> =
        vec![vec![BTreeSet::new(); alphabet.len()]; a.state_count()];
    for t in a.transitions() {
        for (i, l) in alphabet.iter().enumerate() {
            if binding.eval(&t.pred, l)? {
                step[t.from][i].insert(t.to);
            }
        }
    }
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut sets = Vec::new();
    let mut delta = Vec::new();
    let start = BTreeSet::from([a.initial()]);
    index.insert(start.clone(), 0);
    sets.push(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet.len());
        #[allow(clippy::needless_range_loop)]
        for i in 0..alphabet.len() {
            let next: BTreeSet<usize> = set
                .iter()
                .flat_map(|q| step[*q][i].iter().copied())
                .collect();
            let id = match index.get(&next) {
                Some(id) => *id,
                None => {
                    let id = sets.len();
                    index.insert(next.clone(), id);
                    sets.push(next.clone());
                    queue.push_back(next);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
    }
    let accepting = sets
        .iter()
        .map(|s| s.iter().any(|q| a.is_accepting(*q)))
        .collect();
    Ok(ConcreteDfa {
        alphabet: alphabet.to_vec(),
        initial: 0,
        accepting,
        delta,
    })
}

impl ConcreteDfa {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    /// Letters outside the alphabet reject.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut q = self.initial;
        for l in word {
            match self.alphabet.iter().position(|x| x == l) {
                Some(i) => q = self.delta[q][i],
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn complement(&self) -> Self {
        let mut c = self.clone();
        c.accepting.iter_mut().for_each(|f| *f = !*f);
        c
    }

    fn product(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Self {
        assert_eq!(self.alphabet, other.alphabet, "alphabets differ");
        let mut index = BTreeMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let row = (0..self.alphabet.len())
                .map(|c| {
                    let next = (self.delta[p][c], other.delta[q][c]);
                    *index.entry(next).or_insert_with(|| {
                        pairs.push(next);
                        pairs.len() - 1
                    })
                })
                .collect();
            delta.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|(p, q)| keep(self.accepting[*p], other.accepting[*q]))
            .collect();
        ConcreteDfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.product(other, |a, b| a || b)
    }

    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            if self.accepting[q] {
                return false;
            }
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        true
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        self.intersect(&other.complement()).is_empty()
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.product(other, |a, b| a != b).is_empty()
    }

    /// Number of Myhill-Nerode classes of the language, dead class included.
    /// All states are reachable by construction.
    pub fn minimal_state_count(&self) -> usize {
        let n = self.state_count();
        let mut class: Vec<usize> = self.accepting.iter().map(|f| usize::from(*f)).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut ids = BTreeMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let sig: (usize, Vec<usize>) =
                    (class[q], self.delta[q].iter().map(|r| class[*r]).collect());
                let fresh = ids.len();
                next[q] = *ids.entry(sig).or_insert(fresh);
            }
            class = next;
            if ids.len() == count {
                return count;
            }
            count = ids.len();
        }
    }
}

pub fn oracle_equal(a: &Sfa, b: &Sfa, alphabet: &[Letter]) -> Result<bool, Error> {
    if a.binding() != b.binding() {
        return Err(Error::BindingMismatch);
    }
    Ok(concretize(a, alphabet)?.equivalent(&concretize(b, alphabet)?))
}

pub fn oracle_subset(a: &Sfa, b: &Sfa, alphabet: &[Letter]) -> Result<bool, Error> {
    if a.binding() != b.binding() {
        return Err(Error::BindingMismatch);
    }
    Ok(concretize(a, alphabet)?.subset_of(&concretize(b, alphabet)?))
}
