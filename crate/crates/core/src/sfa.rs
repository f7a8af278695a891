//! The automaton type, its structural invariants, run semantics and the
//! `⟨n, m, l⟩` size measure.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraBinding, BooleanAlgebra, Letter, Predicate};
use crate::error::Error;

/// Dense state index into [`Sfa::states`].
pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub pred: Predicate,
    pub to: StateId,
}

impl Transition {
    pub fn new(from: StateId, pred: Predicate, to: StateId) -> Self {
        Transition { from, pred, to }
    }
}

/// `⟨n, m, l⟩`: state count, maximal out-degree, largest predicate size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SizeTriple {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl fmt::Display for SizeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}, {}⟩", self.n, self.m, self.l)
    }
}

/// Cost counters for a single operation: satisfiability checks and the
/// conjunctions / disjunctions built along the way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub sat_calls: u64,
    pub conj_built: u64,
    pub disj_built: u64,
}

impl OpCounters {
    pub(crate) fn sat(&mut self, binding: &AlgebraBinding, p: &Predicate) -> Option<Letter> {
        self.sat_calls += 1;
        binding.sat(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoStates,
    DuplicateState(String),
    UnknownState(String),
    DuplicateTransition {
        from: String,
        pred: String,
        to: String,
    },
    InvalidPredicate {
        from: String,
        to: String,
        reason: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => f.write_str("automaton has no states"),
            Violation::DuplicateState(s) => write!(f, "duplicate state {s}"),
            Violation::UnknownState(s) => write!(f, "unknown state {s}"),
            Violation::DuplicateTransition { from, pred, to } => {
                write!(f, "duplicate transition {from} --{pred}--> {to}")
            }
            Violation::InvalidPredicate { from, to, reason } => {
                write!(f, "invalid predicate on {from} --> {to}: {reason}")
            }
        }
    }
}

/// A symbolic finite automaton `⟨A, Q, q₀, δ, F⟩`.
///
/// State names are kept for display and file round-trips; everything else
/// works on dense indices. Equality is structural (same state order, same
/// transition order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sfa {
    binding: AlgebraBinding,
    states: Vec<String>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    transitions: Vec<Transition>,
}

impl Sfa {
    /// Checked constructor; fails with every violated invariant.
    pub fn new(
        binding: AlgebraBinding,
        states: Vec<String>,
        initial: StateId,
        accepting: BTreeSet<StateId>,
        transitions: Vec<Transition>,
    ) -> Result<Self, Error> {
        let sfa = Sfa::from_parts(binding, states, initial, accepting, transitions);
        let violations = sfa.validate();
        if violations.is_empty() {
            Ok(sfa)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Unchecked constructor. Operations assume a valid automaton; run
    /// [`Sfa::validate`] on anything built this way from untrusted input.
    pub fn from_parts(
        binding: AlgebraBinding,
        states: Vec<String>,
        initial: StateId,
        accepting: BTreeSet<StateId>,
        transitions: Vec<Transition>,
    ) -> Self {
        Sfa {
            binding,
            states,
            initial,
            accepting,
            transitions,
        }
    }

    pub fn binding(&self) -> &AlgebraBinding {
        &self.binding
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting.contains(&q)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter().filter(move |t| t.from == q)
    }

    /// Outgoing transitions grouped per state.
    pub(crate) fn out_table(&self) -> Vec<Vec<&Transition>> {
        let mut table = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            table[t.from].push(t);
        }
        table
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    fn name_or_index(&self, q: StateId) -> String {
        self.states
            .get(q)
            .cloned()
            .unwrap_or_else(|| format!("#{q}"))
    }

    /// Every broken invariant; empty for a valid automaton.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push(Violation::NoStates);
        }
        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s.as_str()) {
                out.push(Violation::DuplicateState(s.clone()));
            }
        }
        let n = self.states.len();
        if self.initial >= n {
            out.push(Violation::UnknownState(format!(
                "#{} (initial)",
                self.initial
            )));
        }
        for q in &self.accepting {
            if *q >= n {
                out.push(Violation::UnknownState(format!("#{q} (accepting)")));
            }
        }
        let mut triples = BTreeSet::new();
        for t in &self.transitions {
            for q in [t.from, t.to] {
                if q >= n {
                    out.push(Violation::UnknownState(format!("#{q}")));
                }
            }
            if let Err(e) = self.binding.check_predicate(&t.pred) {
                out.push(Violation::InvalidPredicate {
                    from: self.name_or_index(t.from),
                    to: self.name_or_index(t.to),
                    reason: e.to_string(),
                });
            }
            if !triples.insert((t.from, &t.pred, t.to)) {
                out.push(Violation::DuplicateTransition {
                    from: self.name_or_index(t.from),
                    pred: t.pred.display(&self.binding).to_string(),
                    to: self.name_or_index(t.to),
                });
            }
        }
        out
    }

    /// At most one transition per letter from every state: every pair of
    /// distinct outgoing predicates has an unsatisfiable conjunction.
    pub fn is_deterministic(&self, cx: &mut OpCounters) -> bool {
        self.out_table().iter().all(|out| {
            for (i, a) in out.iter().enumerate() {
                for b in &out[i + 1..] {
                    cx.conj_built += 1;
                    let both = Predicate::and([a.pred.clone(), b.pred.clone()]);
                    if cx.sat(&self.binding, &both).is_some() {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// At least one transition per letter from every state.
    pub fn is_complete(&self, cx: &mut OpCounters) -> bool {
        self.out_table().iter().all(|out| {
            cx.disj_built += 1;
            let residual = Predicate::not(Predicate::or(out.iter().map(|t| t.pred.clone())));
            cx.sat(&self.binding, &residual).is_none()
        })
    }

    /// Every transition predicate is atomic or basic.
    pub fn is_neat(&self) -> bool {
        self.transitions.iter().all(|t| t.pred.is_basic())
    }

    /// At most one transition between any ordered pair of states.
    pub fn is_normalized(&self) -> bool {
        let mut pairs = BTreeSet::new();
        self.transitions
            .iter()
            .all(|t| pairs.insert((t.from, t.to)))
    }

    /// Every transition predicate is satisfiable.
    pub fn is_feasible(&self, cx: &mut OpCounters) -> bool {
        self.transitions
            .iter()
            .all(|t| cx.sat(&self.binding, &t.pred).is_some())
    }

    /// Frontier simulation; nondeterminism is allowed.
    pub fn accepts(&self, word: &[Letter]) -> Result<bool, Error> {
        for letter in word {
            self.binding.check_letter(letter)?;
        }
        let table = self.out_table();
        let mut frontier = BTreeSet::from([self.initial]);
        for letter in word {
            let mut next = BTreeSet::new();
            for q in &frontier {
                for t in &table[*q] {
                    if self.binding.eval(&t.pred, letter)? {
                        next.insert(t.to);
                    }
                }
            }
            if next.is_empty() {
                return Ok(false);
            }
            frontier = next;
        }
        Ok(frontier.iter().any(|q| self.accepting.contains(q)))
    }

    pub fn size_triple(&self) -> SizeTriple {
        let mut degree = vec![0usize; self.states.len()];
        for t in &self.transitions {
            degree[t.from] += 1;
        }
        SizeTriple {
            n: self.states.len(),
            m: degree.into_iter().max().unwrap_or(0),
            l: self
                .transitions
                .iter()
                .map(|t| t.pred.size())
                .max()
                .unwrap_or(0),
        }
    }

    /// Same automaton restricted to the states reachable from the initial one,
    /// keeping the relative state order.
    pub fn trim_unreachable(&self) -> Sfa {
        let table = self.out_table();
        let mut reached = vec![false; self.states.len()];
        reached[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for t in &table[q] {
                if !reached[t.to] {
                    reached[t.to] = true;
                    stack.push(t.to);
                }
            }
        }
        if reached.iter().all(|r| *r) {
            return self.clone();
        }
        let mut remap = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (q, name) in self.states.iter().enumerate() {
            if reached[q] {
                remap[q] = states.len();
                states.push(name.clone());
            }
        }
        Sfa {
            binding: self.binding.clone(),
            states,
            initial: remap[self.initial],
            accepting: self
                .accepting
                .iter()
                .filter(|q| reached[**q])
                .map(|q| remap[*q])
                .collect(),
            transitions: self
                .transitions
                .iter()
                .filter(|t| reached[t.from])
                .map(|t| Transition::new(remap[t.from], t.pred.clone(), remap[t.to]))
                .collect(),
        }
    }

    /// A state name not yet used, derived from `base`.
    pub(crate) fn fresh_name(&self, base: &str) -> String {
        if self.state_id(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.state_id(n).is_none())
            .unwrap()
    }
}

/// Builds an [`Sfa`] from state names.
///
/// ```
/// use sfa_core::{AlgebraBinding, Predicate, SfaBuilder};
/// let a = SfaBuilder::new(AlgebraBinding::Interval)
///     .states(["q"])
///     .initial("q")
///     .accepting(["q"])
///     .transition("q", Predicate::True, "q")
///     .build()
///     .unwrap();
/// assert_eq!(a.size_triple().n, 1);
/// ```
#[derive(Clone, Debug)]
pub struct SfaBuilder {
    binding: AlgebraBinding,
    states: Vec<String>,
    initial: Option<String>,
    accepting: Vec<String>,
    transitions: Vec<(String, Predicate, String)>,
}

impl SfaBuilder {
    pub fn new(binding: AlgebraBinding) -> Self {
        SfaBuilder {
            binding,
            states: Vec::new(),
            initial: None,
            accepting: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn states<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.states.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn initial(mut self, name: impl Into<String>) -> Self {
        self.initial = Some(name.into());
        self
    }

    pub fn accepting<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.accepting.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn transition(
        mut self,
        from: impl Into<String>,
        pred: Predicate,
        to: impl Into<String>,
    ) -> Self {
        self.transitions.push((from.into(), pred, to.into()));
        self
    }

    /// Resolves names and reports every violation (including unknown names).
    pub fn check(&self) -> (Sfa, Vec<Violation>) {
        let mut violations = Vec::new();
        let mut resolve = |name: &str, role: &str| -> StateId {
            match self.states.iter().position(|s| s == name) {
                Some(q) => q,
                None => {
                    let v = if role.is_empty() {
                        Violation::UnknownState(String::from(name))
                    } else {
                        Violation::UnknownState(format!("{name} ({role})"))
                    };
                    violations.push(v);
                    usize::MAX
                }
            }
        };
        let initial = match &self.initial {
            Some(name) => resolve(name, "initial"),
            None => resolve("<missing>", "initial"),
        };
        let accepting: BTreeSet<StateId> = self
            .accepting
            .iter()
            .map(|s| resolve(s, "accepting"))
            .collect();
        let transitions: Vec<Transition> = self
            .transitions
            .iter()
            .map(|(f, p, t)| Transition::new(resolve(f, ""), p.clone(), resolve(t, "")))
            .collect();
        let sfa = Sfa::from_parts(
            self.binding.clone(),
            self.states.clone(),
            initial,
            accepting,
            transitions,
        );
        // name resolution already reported the out-of-range indices
        let unresolved = violations.len();
        violations.extend(sfa.validate().into_iter().filter(|v| {
            unresolved == 0 || !matches!(v, Violation::UnknownState(s) if s.starts_with('#'))
        }));
        (sfa, violations)
    }

    pub fn build(self) -> Result<Sfa, Error> {
        let (sfa, violations) = self.check();
        if violations.is_empty() {
            Ok(sfa)
        } else {
            Err(Error::Invalid(violations))
        }
    }
}
