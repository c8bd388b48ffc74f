//! Reports and their text, JSON and CSV renderings.

use std::collections::BTreeMap;

use serde::Serialize;

use ptrace_core::exact::{Hilbert, TruncatedSeries};

/// A graded table: every entry is `value * prod vars^exponents`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub formula: String,
    pub grading: String,
    pub variables: Vec<String>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub exponents: Vec<i64>,
    pub value: u64,
}

impl Table {
    pub fn new(name: &str, formula: &str, grading: &str, variables: &[&str]) -> Self {
        Self {
            name: name.into(),
            formula: formula.into(),
            grading: grading.into(),
            variables: variables.iter().map(|v| v.to_string()).collect(),
            entries: Vec::new(),
        }
    }

    pub fn from_hilbert<const N: usize>(
        name: &str,
        formula: &str,
        grading: &str,
        variables: [&str; N],
        h: &Hilbert<N>,
    ) -> Self {
        let mut t = Self::new(name, formula, grading, &variables);
        for (e, &c) in h.terms() {
            t.push(e.to_vec(), c);
        }
        t
    }

    /// Flattens a truncated series in `s` into entries keyed `[s, ..]`.
    pub fn from_series<const N: usize>(
        name: &str,
        formula: &str,
        grading: &str,
        variables: [&str; N],
        series: &TruncatedSeries<N>,
    ) -> Self {
        let vars: Vec<&str> = std::iter::once("s").chain(variables).collect();
        let mut t = Self::new(name, formula, grading, &vars);
        for (k, coeff) in series.coeffs().iter().enumerate() {
            for (e, &c) in coeff.terms() {
                t.push(std::iter::once(k as i64).chain(e.iter().copied()).collect(), c);
            }
        }
        t
    }

    pub fn push(&mut self, exponents: Vec<i64>, value: u64) {
        self.entries.push(Entry { exponents, value });
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.value).sum()
    }

    /// `1 + 3*t + t^2*u^-2`-style rendering.
    pub fn polynomial(&self) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let mono: Vec<String> = self
                    .variables
                    .iter()
                    .zip(&e.exponents)
                    .filter(|(_, &x)| x != 0)
                    .map(|(v, &x)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                    .collect();
                match (e.value, mono.is_empty()) {
                    (c, true) => c.to_string(),
                    (1, false) => mono.join("*"),
                    (c, false) => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

/// A single named quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scalar {
    pub name: String,
    pub formula: String,
    pub value: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The two computations being compared.
    pub compares: String,
    pub passed: bool,
    /// Set when the check passed vacuously.
    pub weak: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, compares: &str, outcome: std::result::Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name: name.into(),
            compares: compares.into(),
            passed,
            weak: false,
            detail,
        }
    }

    pub fn weak(mut self, weak: bool) -> Self {
        self.weak = weak;
        self
    }
}

/// How far a brute-force computation was carried out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub certified_through: i64,
    pub stabilization_window: i64,
    pub rule: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Provenance {
    pub grading: Option<String>,
    pub formulas: Vec<String>,
    pub certification: Option<Certification>,
    pub checks: Vec<CheckResult>,
    pub weak: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub tables: Vec<Table>,
    pub values: Vec<Scalar>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            input: BTreeMap::new(),
            tables: Vec::new(),
            values: Vec::new(),
            provenance: Provenance::default(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.input.insert(key.into(), value.to_string());
        self
    }

    pub fn table(&mut self, t: Table) -> &mut Self {
        self.tables.push(t);
        self
    }

    pub fn value(&mut self, name: &str, formula: &str, value: impl Serialize) -> &mut Self {
        self.values.push(Scalar {
            name: name.into(),
            formula: formula.into(),
            value: serde_json::to_value(value).expect("serializable value"),
        });
        self
    }

    pub fn check(&mut self, c: CheckResult) -> &mut Self {
        self.provenance.weak |= c.weak;
        self.provenance.checks.push(c);
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.provenance.warnings.push(msg.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.provenance.checks.iter().all(|c| c.passed)
    }

    /// Fills the formula index from the tables and values; call once at the end.
    pub fn finish(mut self) -> Self {
        let mut formulas: Vec<String> = self
            .tables
            .iter()
            .map(|t| t.formula.clone())
            .chain(self.values.iter().map(|v| v.formula.clone()))
            .collect();
        formulas.sort();
        formulas.dedup();
        self.provenance.formulas = formulas;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per table entry: `table, formula, grading, exponents, value`.
    /// Scalars follow with an empty exponent tuple.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["table", "formula", "grading", "variables", "exponents", "value"])
            .expect("in-memory write");
        let grading = self.provenance.grading.clone().unwrap_or_default();
        for t in &self.tables {
            let vars = t.variables.join(";");
            for e in &t.entries {
                let exps: Vec<String> = e.exponents.iter().map(i64::to_string).collect();
                w.write_record([
                    t.name.as_str(),
                    &t.formula,
                    &t.grading,
                    &vars,
                    &format!("({})", exps.join(",")),
                    &e.value.to_string(),
                ])
                .expect("in-memory write");
            }
        }
        for v in &self.values {
            let value = match &v.value {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record([v.name.as_str(), &v.formula, &grading, "", "()", &value])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 csv")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let grading = self.provenance.grading.as_deref().unwrap_or("none");
        out.push_str(&format!("{} (grading: {grading})\n", self.command));
        for (k, v) in &self.input {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for v in &self.values {
            out.push_str(&format!("{} = {}  [{}]\n", v.name, v.value, v.formula));
        }
        for t in &self.tables {
            out.push_str(&format!(
                "{} = {}  [{}, {}]\n",
                t.name,
                t.polynomial(),
                t.formula,
                t.grading
            ));
        }
        if let Some(c) = &self.provenance.certification {
            out.push_str(&format!(
                "certified through weight {} ({} trailing zero weights; {})\n",
                c.certified_through, c.stabilization_window, c.rule
            ));
        }
        for c in &self.provenance.checks {
            let status = match (c.passed, c.weak) {
                (true, false) => "PASS",
                (true, true) => "PASS (weak)",
                (false, _) => "FAIL",
            };
            out.push_str(&format!("{status} {}: {} [{}]\n", c.name, c.detail, c.compares));
        }
        for w in &self.provenance.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}
