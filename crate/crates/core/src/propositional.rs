//! The propositional algebra over `k` propositions: letters are valuations
//! in `B^k`, atoms are literals (`p_i` or `¬p_i`, the polarity is part of the
//! atom) and basic predicates are monomials.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Atom, Predicate, MAX_PROPOSITIONS};
use crate::error::Error;

/// `p_var` or `¬p_var`; `var` is a 0-based proposition index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralAtom {
    var: u8,
    negated: bool,
}

impl LiteralAtom {
    pub fn new(var: usize, negated: bool) -> Self {
        assert!(
            var < MAX_PROPOSITIONS,
            "proposition index {var} out of range"
        );
        LiteralAtom {
            var: var as u8,
            negated,
        }
    }

    pub fn pos(var: usize) -> Self {
        Self::new(var, false)
    }

    pub fn neg(var: usize) -> Self {
        Self::new(var, true)
    }

    pub fn var(&self) -> usize {
        self.var as usize
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Self {
        LiteralAtom {
            negated: !self.negated,
            ..self
        }
    }

    pub fn holds(&self, v: &Valuation) -> bool {
        v.get(self.var()) != self.negated
    }
}

/// A bit vector of width `k`; bit `i` is the value of proposition `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Valuation {
    width: u8,
    bits: u32,
}

impl Valuation {
    pub fn zero(width: usize) -> Self {
        assert!(width <= MAX_PROPOSITIONS);
        Valuation {
            width: width as u8,
            bits: 0,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Valuation::zero(bits.len());
        for (i, b) in bits.iter().enumerate() {
            v.set(i, *b);
        }
        v
    }

    /// The `index`-th valuation in lexicographic order, where proposition 0 is
    /// the most significant position.
    pub fn from_lex_index(width: usize, index: usize) -> Self {
        let mut v = Valuation::zero(width);
        for i in 0..width {
            v.set(i, (index >> (width - 1 - i)) & 1 == 1);
        }
        v
    }

    pub fn lex_index(&self) -> usize {
        (0..self.width()).fold(0, |acc, i| (acc << 1) | self.get(i) as usize)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width());
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.width, self.lex_index()).cmp(&(other.width, other.lex_index()))
    }
}

impl fmt::Display for Valuation {
    /// Bitstring, proposition 0 first: `[1,0,1]` prints as `101`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Satisfiability of a monomial by a single contradiction scan. The witness
/// sets every constrained proposition to its required polarity and the rest to 0.
pub fn monomial_sat(k: usize, lits: &[LiteralAtom]) -> Option<Valuation> {
    let mut seen_pos = 0u32;
    let mut seen_neg = 0u32;
    for l in lits {
        let bit = 1u32 << l.var();
        if l.negated {
            seen_neg |= bit;
        } else {
            seen_pos |= bit;
        }
    }
    if seen_pos & seen_neg != 0 {
        return None;
    }
    let mut v = Valuation::zero(k);
    v.bits = seen_pos;
    Some(v)
}

/// Literals of a basic predicate, or `None` when it contains `⊥`.
fn basic_literals(p: &Predicate) -> Option<Vec<LiteralAtom>> {
    let collect = |p: &Predicate, out: &mut Vec<LiteralAtom>| match p {
        Predicate::Atom(Atom::Literal(l)) => {
            out.push(*l);
            Some(())
        }
        Predicate::True => Some(()),
        _ => None,
    };
    let mut out = Vec::new();
    match p {
        Predicate::And(cs) => {
            for c in cs {
                collect(c, &mut out)?;
            }
        }
        other => collect(other, &mut out)?,
    }
    Some(out)
}

fn eval(p: &Predicate, v: &Valuation) -> bool {
    match p {
        Predicate::True => true,
        Predicate::False => false,
        Predicate::Atom(Atom::Literal(l)) => l.holds(v),
        Predicate::Atom(Atom::Interval(_)) => false,
        Predicate::And(cs) => cs.iter().all(|c| eval(c, v)),
        Predicate::Or(cs) => cs.iter().any(|c| eval(c, v)),
        Predicate::Not(c) => !eval(c, v),
    }
}

/// Satisfiability with a lexicographically first witness. Basic predicates go
/// through [`monomial_sat`]; everything else enumerates `B^k`.
pub fn prop_sat(k: usize, p: &Predicate) -> Result<Option<Valuation>, Error> {
    if k > MAX_PROPOSITIONS {
        return Err(Error::TooManyPropositions(k));
    }
    if p.is_basic() {
        if *p == Predicate::False {
            return Ok(None);
        }
        if let Some(lits) = basic_literals(p) {
            return Ok(monomial_sat(k, &lits));
        }
    }
    Ok((0..1usize << k)
        .map(|i| Valuation::from_lex_index(k, i))
        .find(|v| eval(p, v)))
}

type Monomial = BTreeSet<LiteralAtom>;

/// DNF by distributing `∧` over `∨` after pushing negations into the literals.
/// Contradictory monomials are dropped and duplicates merged; no minimality is
/// attempted.
pub fn prop_to_dnf(p: &Predicate) -> Predicate {
    let monomials = dnf_monomials(p, false);
    Predicate::or(
        monomials
            .into_iter()
            .map(|m| Predicate::and(m.into_iter().map(Predicate::from))),
    )
}

fn consistent(m: &Monomial) -> bool {
    !m.iter().any(|l| !l.negated && m.contains(&l.negate()))
}

fn dnf_monomials(p: &Predicate, negate: bool) -> BTreeSet<Monomial> {
    let top = || BTreeSet::from([Monomial::new()]);
    match p {
        Predicate::True if !negate => top(),
        Predicate::False if negate => top(),
        Predicate::True | Predicate::False => BTreeSet::new(),
        Predicate::Atom(Atom::Literal(l)) => {
            let l = if negate { l.negate() } else { *l };
            BTreeSet::from([Monomial::from([l])])
        }
        Predicate::Atom(Atom::Interval(_)) => BTreeSet::new(),
        Predicate::Not(c) => dnf_monomials(c, !negate),
        Predicate::And(cs) | Predicate::Or(cs) => {
            let conjunctive = matches!(p, Predicate::And(_)) != negate;
            if conjunctive {
                cs.iter().fold(top(), |acc, c| {
                    let rhs = dnf_monomials(c, negate);
                    let mut out = BTreeSet::new();
                    for a in &acc {
                        for b in &rhs {
                            let m: Monomial = a.union(b).copied().collect();
                            if consistent(&m) {
                                out.insert(m);
                            }
                        }
                    }
                    out
                })
            } else {
                cs.iter().flat_map(|c| dnf_monomials(c, negate)).collect()
            }
        }
    }
}

/// Set of valuations as a bitmap over lexicographic indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct TruthTable {
    k: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn word_count(k: usize) -> usize {
        (1usize << k).div_ceil(64)
    }

    pub(crate) fn empty(k: usize) -> Self {
        TruthTable {
            k,
            words: vec![0; Self::word_count(k)],
        }
    }

    pub(crate) fn full(k: usize) -> Self {
        let mut t = Self::empty(k);
        for i in 0..1usize << k {
            t.insert(i);
        }
        t
    }

    pub(crate) fn of(k: usize, p: &Predicate) -> Self {
        let mut t = Self::empty(k);
        for i in 0..1usize << k {
            if eval(p, &Valuation::from_lex_index(k, i)) {
                t.insert(i);
            }
        }
        t
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| f(*a, *b))
            .collect();
        TruthTable { k: self.k, words }
    }

    pub(crate) fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub(crate) fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub(crate) fn not(&self) -> Self {
        let full = Self::full(self.k);
        self.zip(&full, |a, f| !a & f)
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub(crate) fn first(&self) -> Option<Valuation> {
        (0..1usize << self.k)
            .find(|i| self.get(*i))
            .map(|i| Valuation::from_lex_index(self.k, i))
    }

    /// Pairwise disjoint monomials covering exactly this set, in lexicographic
    /// order (Shannon expansion on propositions 0, 1, ...).
    pub(crate) fn disjoint_cubes(&self) -> Vec<Vec<LiteralAtom>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.cubes(0, 0, &mut prefix, &mut out);
        out
    }

    fn cubes(
        &self,
        var: usize,
        start: usize,
        prefix: &mut Vec<LiteralAtom>,
        out: &mut Vec<Vec<LiteralAtom>>,
    ) {
        let len = 1usize << (self.k - var);
        let ones = (start..start + len).filter(|i| self.get(*i)).count();
        if ones == 0 {
            return;
        }
        if ones == len {
            out.push(prefix.clone());
            return;
        }
        let half = len / 2;
        prefix.push(LiteralAtom::neg(var));
        self.cubes(var + 1, start, prefix, out);
        prefix.pop();
        prefix.push(LiteralAtom::pos(var));
        self.cubes(var + 1, start + half, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use proptest::prelude::*;

    fn lit(var: usize, neg: bool) -> Predicate {
        LiteralAtom::new(var, neg).into()
    }

    fn bits(s: &str) -> Valuation {
        Valuation::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    fn all(k: usize) -> impl Iterator<Item = Valuation> {
        (0..1usize << k).map(move |i| Valuation::from_lex_index(k, i))
    }

    #[test]
    fn lex_order_puts_first_proposition_first() {
        assert_eq!(Valuation::from_lex_index(3, 4), bits("100"));
        assert_eq!(Valuation::from_lex_index(3, 1), bits("001"));
        assert_eq!(bits("110").lex_index(), 6);
        assert!(bits("011") < bits("100"));
    }

    #[test]
    fn monomial_sat_examples() {
        let m = [
            LiteralAtom::pos(0),
            LiteralAtom::neg(1),
            LiteralAtom::pos(2),
        ];
        assert_eq!(monomial_sat(3, &m), Some(bits("101")));
        assert_eq!(
            monomial_sat(3, &[LiteralAtom::pos(0), LiteralAtom::neg(0)]),
            None
        );
        assert_eq!(monomial_sat(3, &[]), Some(bits("000")));
        assert_eq!(
            monomial_sat(2, &[LiteralAtom::pos(1), LiteralAtom::pos(1)]),
            Some(bits("01"))
        );
    }

    #[test]
    fn prop_sat_examples() {
        let psi = Predicate::or([
            Predicate::and([lit(0, false), lit(1, true)]),
            Predicate::and([lit(0, false), lit(1, false), lit(2, false)]),
        ]);
        assert_eq!(prop_sat(3, &psi).unwrap(), Some(bits("100")));
        let members: Vec<String> = all(3)
            .filter(|v| eval(&psi, v))
            .map(|v| alloc::format!("{v}"))
            .collect();
        assert_eq!(members, ["100", "101", "111"]);

        assert_eq!(
            prop_sat(
                3,
                &Predicate::and([lit(0, false), Predicate::not(lit(0, false))])
            )
            .unwrap(),
            None
        );
        assert_eq!(prop_sat(2, &Predicate::True).unwrap(), Some(bits("00")));
        assert!(matches!(
            prop_sat(17, &Predicate::True),
            Err(Error::TooManyPropositions(17))
        ));
    }

    #[test]
    fn prop_to_dnf_examples() {
        let p = Predicate::and([Predicate::or([lit(0, false), lit(1, false)]), lit(2, false)]);
        assert_eq!(
            prop_to_dnf(&p),
            Predicate::Or(alloc::vec![
                Predicate::And(alloc::vec![lit(0, false), lit(2, false)]),
                Predicate::And(alloc::vec![lit(1, false), lit(2, false)]),
            ])
        );
        let m = Predicate::and([lit(0, false), lit(1, true)]);
        assert_eq!(prop_to_dnf(&m), m);
        assert_eq!(
            prop_to_dnf(&Predicate::and([lit(0, false), lit(0, true)])),
            Predicate::False
        );
    }

    #[test]
    fn two_monomials_split_into_two_transitions() {
        let psi = Predicate::or([
            Predicate::and([lit(0, false), lit(1, true)]),
            Predicate::and([lit(0, false), lit(1, false), lit(2, false)]),
        ]);
        let Predicate::Or(ds) = prop_to_dnf(&psi) else {
            panic!("expected a disjunction")
        };
        assert_eq!(ds.len(), 2);
    }

    #[test]
    fn disjoint_cubes_cover_exactly() {
        let p = Predicate::or([lit(0, false), lit(1, false)]);
        let t = TruthTable::of(2, &p);
        let cubes = t.disjoint_cubes();
        assert_eq!(
            cubes,
            [
                alloc::vec![LiteralAtom::neg(0), LiteralAtom::pos(1)],
                alloc::vec![LiteralAtom::pos(0)]
            ]
        );
        assert_eq!(
            TruthTable::full(3).disjoint_cubes(),
            [Vec::<LiteralAtom>::new()]
        );
        assert!(TruthTable::empty(3).disjoint_cubes().is_empty());
    }

    pub(crate) fn pred_strategy(k: usize) -> impl Strategy<Value = Predicate> {
        let leaf = prop_oneof![
            8 => (0..k, any::<bool>()).prop_map(|(v, n)| lit(v, n)),
            1 => Just(Predicate::True),
            1 => Just(Predicate::False),
        ];
        leaf.prop_recursive(3, 24, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(Predicate::And),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Predicate::Or),
                inner.prop_map(|p| Predicate::Not(alloc::boxed::Box::new(p))),
            ]
        })
    }

    proptest! {
        #[test]
        fn prop_sat_agrees_with_enumeration(
            (k, p) in (1usize..=8).prop_flat_map(|k| (Just(k), pred_strategy(k)))
        ) {
            let first = all(k).find(|v| eval(&p, v));
            prop_assert_eq!(prop_sat(k, &p).unwrap(), first);
        }

        #[test]
        fn dnf_is_equivalent_with_satisfiable_monomials(p in pred_strategy(4)) {
            let d = prop_to_dnf(&p);
            for v in all(4) {
                prop_assert_eq!(eval(&d, &v), eval(&p, &v));
            }
            let disjuncts = match &d {
                Predicate::Or(ds) => ds.clone(),
                Predicate::False => Vec::new(),
                other => alloc::vec![other.clone()],
            };
            for m in disjuncts {
                prop_assert!(m.is_basic());
                prop_assert!(prop_sat(4, &m).unwrap().is_some());
            }
        }

        #[test]
        fn monomial_witness_satisfies(lits in prop::collection::vec((0usize..5, any::<bool>()), 0..6)) {
            let lits: Vec<LiteralAtom> = lits.into_iter().map(|(v, n)| LiteralAtom::new(v, n)).collect();
            match monomial_sat(5, &lits) {
                Some(w) => prop_assert!(lits.iter().all(|l| l.holds(&w))),
                None => prop_assert!(lits.iter().any(|l| lits.contains(&l.negate()))),
            }
        }

        #[test]
        fn cubes_are_disjoint_and_exact(p in pred_strategy(4)) {
            let t = TruthTable::of(4, &p);
            let cubes = t.disjoint_cubes();
            for v in all(4) {
                let hits = cubes.iter().filter(|c| c.iter().all(|l| l.holds(&v))).count();
                prop_assert_eq!(hits, eval(&p, &v) as usize);
            }
        }
    }
}
