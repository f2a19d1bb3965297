//! Machine-parseable report emission: one "key = value" line each, exact
//! rational strings, deterministic order.

use num_rational::BigRational;
use pcog_core::game::{Coalition, Ownership};
use pcog_core::optima::Witness;
use pcog_core::ratio::format_rational;
use std::fmt::Display;

pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            lines: vec![("command".to_string(), command.to_string())],
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn push_rational(&mut self, key: impl Into<String>, value: &BigRational) {
        self.push(key, format_rational(value));
    }

    pub fn print(self) {
        for (k, v) in self.lines {
            println!("{k} = {v}");
        }
    }
}

pub fn coalition_str(s: Coalition, ownership: &Ownership) -> String {
    s.member_ids(ownership).join(",")
}

pub fn witness_str(w: &Witness) -> String {
    match w {
        Witness::Vertices(vs) => vs
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
        Witness::Edges(es) => es
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(","),
    }
}
