//! Task results and their text and machine renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use contact_pairs::normality::FlagWitness;
use contact_pairs::{Residual, Vector, VerificationReport, Witness};
use serde_json::{json, Value};

use crate::document::{encode_vector, InputDocument, TaskSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub expected: Value,
    pub actual: Option<Value>,
}

impl Expectation {
    pub fn matched(&self) -> bool {
        self.actual.as_ref() == Some(&self.expected)
    }
}

/// Everything a task produced. Machine output is a deterministic function of this.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub op: String,
    pub args: BTreeMap<String, Value>,
    /// Verdicts that decide the status when no expectations are given.
    pub primary: Vec<String>,
    pub verdicts: BTreeMap<String, bool>,
    pub values: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    pub notes: BTreeMap<String, String>,
    pub expectations: BTreeMap<String, Expectation>,
    pub document: Option<InputDocument>,
}

impl Report {
    pub fn new(task: &TaskSpec) -> Self {
        Report { op: task.op.clone(), args: task.args.clone(), ..Default::default() }
    }

    pub fn verdict(&mut self, name: &str, value: bool) {
        self.verdicts.insert(name.to_string(), value);
    }

    pub fn primary_verdict(&mut self, name: &str, value: bool) {
        self.verdict(name, value);
        self.primary.push(name.to_string());
    }

    pub fn value(&mut self, name: &str, value: Value) {
        self.values.insert(name.to_string(), value);
    }

    pub fn note(&mut self, name: &str, note: impl Into<String>) {
        self.notes.insert(name.to_string(), note.into());
    }

    /// One verdict per check, named `prefix + check name`.
    pub fn absorb(&mut self, prefix: &str, r: &VerificationReport) {
        for c in r.checks() {
            let name = format!("{prefix}{}", c.name);
            if let Some(w) = &c.witness {
                self.witnesses.insert(name.clone(), witness_json(w));
            }
            if let Some(n) = &c.note {
                self.notes.insert(name.clone(), n.clone());
            }
            self.verdicts.insert(name, c.passed);
        }
    }

    /// Compares each expected key against verdicts, then values.
    pub fn check_expectations(&mut self, expect: &BTreeMap<String, Value>) {
        for (k, expected) in expect {
            let actual = self
                .verdicts
                .get(k)
                .map(|b| Value::Bool(*b))
                .or_else(|| self.values.get(k).cloned());
            self.expectations.insert(k.clone(), Expectation { expected: expected.clone(), actual });
        }
    }

    pub fn passed(&self) -> bool {
        if self.expectations.is_empty() {
            self.primary.iter().all(|p| self.verdicts.get(p) == Some(&true))
        } else {
            self.expectations.values().all(Expectation::matched)
        }
    }

    /// 0 when everything is as expected, 1 when a check evaluated to false.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let expectations: serde_json::Map<String, Value> = self
            .expectations
            .iter()
            .map(|(k, e)| {
                (k.clone(), json!({"expected": e.expected, "actual": e.actual, "matched": e.matched()}))
            })
            .collect();
        let mut out = json!({
            "task": {"op": self.op, "args": self.args},
            "status": if self.passed() { "pass" } else { "fail" },
            "primary": self.primary,
            "verdicts": self.verdicts,
            "values": self.values,
            "witnesses": self.witnesses,
            "notes": self.notes,
            "expectations": expectations,
        });
        if let Some(d) = &self.document {
            out["document"] = serde_json::to_value(d).expect("documents serialize");
        }
        out
    }

    /// Pretty JSON with sorted keys and no timing, so identical inputs give identical bytes.
    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "task: {}", self.op);
        for (k, v) in &self.values {
            let _ = writeln!(s, "  {k} = {}", compact(v));
        }
        for (k, v) in &self.verdicts {
            let mark = if *v { "pass" } else { "FAIL" };
            let star = if self.primary.contains(k) { " *" } else { "" };
            let _ = write!(s, "  [{mark}] {k}{star}");
            if let Some(w) = self.witnesses.get(k) {
                let _ = write!(s, "  witness {}", compact(w));
            }
            if let Some(n) = self.notes.get(k) {
                let _ = write!(s, "  ({n})");
            }
            let _ = writeln!(s);
        }
        for (k, e) in &self.expectations {
            let actual = e.actual.as_ref().map(compact).unwrap_or_else(|| "missing".into());
            let mark = if e.matched() { "ok" } else { "MISMATCH" };
            let _ = writeln!(s, "  expect {k} = {} : {mark} (got {actual})", compact(&e.expected));
        }
        let _ = writeln!(s, "status: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("json")
}

pub fn vector_json(v: &Vector) -> Value {
    json!(encode_vector(v))
}

pub fn witness_json(w: &Witness) -> Value {
    let basis: Vec<usize> = w.basis.iter().map(|i| i + 1).collect();
    let residual = match &w.residual {
        Residual::Scalar(c) => json!(c.to_string()),
        Residual::Vector(v) => vector_json(v),
    };
    json!({"basis": basis, "residual": residual})
}

pub fn flag_witness_json(w: &FlagWitness) -> Value {
    let args: Vec<Value> = w.args.iter().map(vector_json).collect();
    json!({"args": args, "residual": vector_json(&w.residual)})
}
