//! Pass/fail outcomes carrying counterexample witnesses.

use std::fmt::Write as _;

use crate::order::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W = Witness> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        !self.is_pass()
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }

    pub fn from_option(w: Option<W>) -> Self {
        match w {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Elem(usize),
    Set(ElementSet),
    Text(String),
}

/// Named bindings demonstrating the failure of a quantified law.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness(Vec<(&'static str, Value)>);

impl Witness {
    pub fn new() -> Self {
        Witness(Vec::new())
    }

    pub fn elem(mut self, key: &'static str, x: usize) -> Self {
        self.0.push((key, Value::Elem(x)));
        self
    }

    pub fn set(mut self, key: &'static str, s: ElementSet) -> Self {
        self.0.push((key, Value::Set(s)));
        self
    }

    pub fn text(mut self, key: &'static str, t: impl Into<String>) -> Self {
        self.0.push((key, Value::Text(t.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn get_elem(&self, key: &str) -> Option<usize> {
        match self.get(key) {
            Some(Value::Elem(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn bindings(&self) -> &[(&'static str, Value)] {
        &self.0
    }

    /// `x=a y=b ub={e,f}` using the display names of `p`.
    pub fn render(&self, p: &Poset) -> String {
        let mut out = String::new();
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{k}=");
            match v {
                Value::Elem(x) => out.push_str(p.name(*x)),
                Value::Set(s) => out.push_str(&render_set(p, *s)),
                Value::Text(t) => out.push_str(t),
            }
        }
        out
    }
}

pub fn render_set(p: &Poset, s: ElementSet) -> String {
    let names: Vec<&str> = s.iter().map(|x| p.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

/// One report line in the fixed `CHECK (<id>) PASS|FAIL [witness ...]` grammar.
pub fn check_line(id: &str, verdict: &Verdict, p: &Poset) -> String {
    match verdict {
        Verdict::Pass => format!("CHECK ({id}) PASS"),
        Verdict::Fail(w) if w.bindings().is_empty() => format!("CHECK ({id}) FAIL"),
        Verdict::Fail(w) => format!("CHECK ({id}) FAIL witness {}", w.render(p)),
    }
}
