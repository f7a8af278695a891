use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;
use sfa_core::{OpCounters, Sfa, SizeTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Size {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl From<SizeTriple> for Size {
    fn from(s: SizeTriple) -> Self {
        Size {
            n: s.n,
            m: s.m,
            l: s.l,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub sat_calls: u64,
    pub conj_built: u64,
    pub disj_built: u64,
}

/// What a command did: sizes of inputs and output, operation costs, wall
/// time, and its result (a boolean, a path, or command-specific data).
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub op: &'static str,
    pub inputs: Vec<Size>,
    pub output: Option<Size>,
    pub counters: Counters,
    pub ms: f64,
    pub result: Value,
}

impl Report {
    pub(crate) fn new(op: &'static str, inputs: &[Sfa], cx: OpCounters, ms: f64) -> Self {
        Report {
            op,
            // an automaton that failed validation may point at unknown states
            inputs: inputs
                .iter()
                .filter(|a| a.validate().is_empty())
                .map(|a| a.size_triple().into())
                .collect(),
            output: None,
            counters: Counters {
                sat_calls: cx.sat_calls,
                conj_built: cx.conj_built,
                disj_built: cx.disj_built,
            },
            ms,
            result: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let size = |s: &Size| format!("⟨{}, {}, {}⟩", s.n, s.m, s.l);
        let mut out = format!("op: {}\n", self.op);
        for (i, s) in self.inputs.iter().enumerate() {
            writeln!(out, "input {}: {}", i + 1, size(s)).unwrap();
        }
        if let Some(s) = &self.output {
            writeln!(out, "output: {}", size(s)).unwrap();
        }
        let c = &self.counters;
        writeln!(
            out,
            "counters: sat_calls={} conj_built={} disj_built={}",
            c.sat_calls, c.conj_built, c.disj_built
        )
        .unwrap();
        writeln!(out, "time: {:.3} ms", self.ms).unwrap();
        match &self.result {
            Value::Null => {}
            Value::String(s) => writeln!(out, "result: {s}").unwrap(),
            Value::Array(items) if items.is_empty() => writeln!(out, "result: ok").unwrap(),
            Value::Array(items) => {
                for item in items {
                    writeln!(out, "violation: {}", item.as_str().unwrap_or_default()).unwrap();
                }
            }
            Value::Object(fields) => {
                for (k, v) in fields {
                    writeln!(out, "{k}: {v}").unwrap();
                }
            }
            other => writeln!(out, "result: {other}").unwrap(),
        }
        out
    }
}
