//! The JSON file format for automata.
//!
//! ```json
//! {
//!   "algebra": {"kind": "interval"},
//!   "states": ["q0", "q1"],
//!   "initial": "q0",
//!   "accepting": ["q1"],
//!   "transitions": [
//!     {"from": "q0", "pred": {"atom": {"lo": "-inf", "hi": 100}}, "to": "q1"}
//!   ]
//! }
//! ```
//!
//! A propositional automaton uses `{"kind": "propositional", "props": [...]}`
//! and atoms `{"atom": {"var": "p", "neg": false}}`. Predicates are `"true"`,
//! `"false"`, `{"and": [...]}`, `{"or": [...]}`, `{"not": ...}` or an atom.
//! Unknown fields are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sfa_core::{
    AlgebraBinding, Atom, Bound, IntervalAtom, LiteralAtom, Predicate, Sfa, SfaBuilder, Violation,
};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SfaFile {
    algebra: AlgebraFile,
    states: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    transitions: Vec<TransitionFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum AlgebraFile {
    Interval,
    Propositional { props: Vec<String> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionFile {
    from: String,
    pred: PredFile,
    to: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PredFile {
    True,
    False,
    And(Vec<PredFile>),
    Or(Vec<PredFile>),
    Not(Box<PredFile>),
    Atom(AtomFile),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum AtomFile {
    Interval(IntervalFile),
    Literal(LiteralFile),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalFile {
    lo: BoundFile,
    hi: BoundFile,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LiteralFile {
    var: String,
    neg: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum BoundFile {
    Fin(i64),
    Inf(Infinity),
}

#[derive(Debug, Serialize, Deserialize)]
enum Infinity {
    #[serde(rename = "-inf")]
    Neg,
    #[serde(rename = "inf")]
    Pos,
}

/// Reads and validates an automaton from a file.
pub fn read_sfa(path: &Path) -> Result<Sfa, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_sfa(&text).map_err(|e| e.in_file(path))
}

/// Parses and validates an automaton.
pub fn parse_sfa(text: &str) -> Result<Sfa, CliError> {
    let (sfa, violations) = parse_unchecked(text)?;
    if violations.is_empty() {
        Ok(sfa)
    } else {
        Err(CliError::Core(sfa_core::Error::Invalid(violations)))
    }
}

/// Parses an automaton and reports its invariant violations instead of
/// failing on them. Syntax errors and malformed predicates still fail.
pub fn parse_unchecked(text: &str) -> Result<(Sfa, Vec<Violation>), CliError> {
    let file: SfaFile = serde_json::from_str(text).map_err(|e| {
        let position = format!(" at line {} column {}", e.line(), e.column());
        let message = e.to_string();
        CliError::Parse {
            file: None,
            line: e.line(),
            column: e.column(),
            message: message
                .strip_suffix(&position)
                .unwrap_or(&message)
                .to_string(),
        }
    })?;
    let binding = match file.algebra {
        AlgebraFile::Interval => AlgebraBinding::Interval,
        AlgebraFile::Propositional { props } => {
            AlgebraBinding::propositional(props).map_err(CliError::Core)?
        }
    };
    let mut builder = SfaBuilder::new(binding.clone())
        .states(file.states)
        .initial(file.initial)
        .accepting(file.accepting);
    for (i, t) in file.transitions.into_iter().enumerate() {
        let pred = predicate(&binding, t.pred).map_err(|message| CliError::Semantic {
            file: None,
            message: format!("transition {i} ({} -> {}): {message}", t.from, t.to),
        })?;
        builder = builder.transition(t.from, pred, t.to);
    }
    Ok(builder.check())
}

fn predicate(binding: &AlgebraBinding, p: PredFile) -> Result<Predicate, String> {
    let many = |ps: Vec<PredFile>, what: &str| -> Result<Vec<Predicate>, String> {
        if ps.len() < 2 {
            return Err(format!("\"{what}\" needs at least two operands"));
        }
        ps.into_iter().map(|p| predicate(binding, p)).collect()
    };
    Ok(match p {
        PredFile::True => Predicate::True,
        PredFile::False => Predicate::False,
        PredFile::And(ps) => Predicate::And(many(ps, "and")?),
        PredFile::Or(ps) => Predicate::Or(many(ps, "or")?),
        PredFile::Not(p) => Predicate::Not(Box::new(predicate(binding, *p)?)),
        PredFile::Atom(AtomFile::Interval(x)) => {
            if !binding.is_interval() {
                return Err("interval atom in a propositional automaton".into());
            }
            let bound = |b| match b {
                BoundFile::Fin(v) => Bound::Fin(v),
                BoundFile::Inf(Infinity::Neg) => Bound::NegInf,
                BoundFile::Inf(Infinity::Pos) => Bound::PosInf,
            };
            let atom = IntervalAtom::new(bound(x.lo), bound(x.hi)).map_err(|e| e.to_string())?;
            Predicate::from(atom)
        }
        PredFile::Atom(AtomFile::Literal(l)) => match binding {
            AlgebraBinding::Propositional(props) => {
                let var = props
                    .index_of(&l.var)
                    .ok_or_else(|| format!("unknown proposition {:?}", l.var))?;
                Predicate::from(LiteralAtom::new(var, l.neg))
            }
            AlgebraBinding::Interval => {
                return Err("propositional atom in an interval automaton".into())
            }
        },
    })
}

/// Serializes an automaton; [`parse_sfa`] gives it back unchanged.
pub fn emit_sfa(a: &Sfa) -> String {
    let binding = a.binding();
    let file = SfaFile {
        algebra: match binding {
            AlgebraBinding::Interval => AlgebraFile::Interval,
            AlgebraBinding::Propositional(p) => AlgebraFile::Propositional {
                props: p.names().to_vec(),
            },
        },
        states: a.states().to_vec(),
        initial: a.state_name(a.initial()).to_string(),
        accepting: a
            .accepting()
            .iter()
            .map(|q| a.state_name(*q).to_string())
            .collect(),
        transitions: a
            .transitions()
            .iter()
            .map(|t| TransitionFile {
                from: a.state_name(t.from).to_string(),
                pred: pred_file(binding, &t.pred),
                to: a.state_name(t.to).to_string(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("automata always serialize");
    text.push('\n');
    text
}

fn pred_file(binding: &AlgebraBinding, p: &Predicate) -> PredFile {
    let all = |ps: &[Predicate]| ps.iter().map(|p| pred_file(binding, p)).collect();
    match p {
        Predicate::True => PredFile::True,
        Predicate::False => PredFile::False,
        Predicate::And(ps) => PredFile::And(all(ps)),
        Predicate::Or(ps) => PredFile::Or(all(ps)),
        Predicate::Not(p) => PredFile::Not(Box::new(pred_file(binding, p))),
        Predicate::Atom(Atom::Interval(x)) => {
            let bound = |b| match b {
                Bound::Fin(v) => BoundFile::Fin(v),
                Bound::NegInf => BoundFile::Inf(Infinity::Neg),
                Bound::PosInf => BoundFile::Inf(Infinity::Pos),
            };
            PredFile::Atom(AtomFile::Interval(IntervalFile {
                lo: bound(x.lo()),
                hi: bound(x.hi()),
            }))
        }
        Predicate::Atom(Atom::Literal(l)) => {
            let var = match binding {
                AlgebraBinding::Propositional(props) => props.names()[l.var()].clone(),
                AlgebraBinding::Interval => format!("p{}", l.var()),
            };
            PredFile::Atom(AtomFile::Literal(LiteralFile {
                var,
                neg: l.is_negated(),
            }))
        }
    }
}
