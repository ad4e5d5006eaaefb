//! Reports and their JSON / text renderings.

use std::fmt::Write as _;
use std::time::Duration;

use cartan_core::{CheckReport, Clause, Verdict};
use serde::{Deserialize, Serialize};

/// One check inside a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ball_radius: Option<u32>,
    /// Reported for context; excluded from the aggregate verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub informational: bool,
    pub clauses: Vec<Clause>,
    /// Wall time. Kept out of JSON so that reports are byte-reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn from_report(r: CheckReport, elapsed: Duration) -> Self {
        CheckRecord {
            verdict: r.verdict(),
            check: r.check,
            ball_radius: r.ball_radius,
            informational: false,
            clauses: r.clauses,
            elapsed,
        }
    }

    /// Merges several reports into one record named `check`.
    pub fn merged(check: &str, ball_radius: Option<u32>, parts: Vec<CheckReport>, elapsed: Duration) -> Self {
        let mut out = CheckReport::new(check, ball_radius);
        for p in parts {
            for mut c in p.clauses {
                if c.name != p.check {
                    c.name = format!("{}/{}", p.check, c.name);
                }
                out.push(c);
            }
        }
        Self::from_report(out, elapsed)
    }

    /// Every clause marked inconclusive with the given reason.
    pub fn skipped(check: &str, ball_radius: Option<u32>, reason: &str) -> Self {
        let clause = Clause {
            name: check.to_string(),
            verdict: Verdict::Inconclusive,
            checked: 0,
            witness: None,
            note: Some(reason.to_string()),
        };
        Self::from_report(CheckReport::new(check, ball_radius).with(clause), Duration::ZERO)
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub scenario: String,
    pub checks: Vec<CheckRecord>,
}

impl Section {
    pub fn new(scenario: &str) -> Self {
        Section {
            scenario: scenario.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .fold(Verdict::Pass, |acc, c| acc.and(c.verdict))
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == name)
    }
}

/// A row of the Weyl table: the arrow `([class], input)`, its range, and
/// σ̃ at `(([class], α̃_[second] input), ([second], input))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylRow {
    pub class: Vec<i64>,
    pub second: Vec<i64>,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub sigma: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub scenario: String,
    pub check: String,
    pub expected: Option<Verdict>,
    pub actual: Option<Verdict>,
}

impl Expectation {
    pub fn met(&self) -> bool {
        self.expected.is_some() && self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub seed: u64,
    pub ball_radius: u32,
    pub k_max: u32,
    pub samples: usize,
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub weyl_table: Vec<WeylRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub expectations: Vec<Expectation>,
}

impl Report {
    pub fn new(command: &str, seed: u64, ball_radius: u32, k_max: u32, samples: usize) -> Self {
        Report {
            command: command.to_string(),
            verdict: Verdict::Pass,
            seed,
            ball_radius,
            k_max,
            samples,
            sections: Vec::new(),
            weyl_table: Vec::new(),
            expectations: Vec::new(),
        }
    }

    /// Sets the root verdict from the sections.
    pub fn finish_from_sections(mut self) -> Self {
        self.verdict = self.sections.iter().fold(Verdict::Pass, |acc, s| acc.and(s.verdict()));
        self
    }

    pub fn section(&self, scenario: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.scenario == scenario)
    }

    pub fn check(&self, scenario: &str, check: &str) -> Option<&CheckRecord> {
        self.section(scenario)?.check(check)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Expectation> {
        self.expectations.iter().filter(|e| !e.met())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn radius(r: Option<u32>) -> String {
    r.map(|b| format!(" [B={b}]")).unwrap_or_default()
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {}  (seed {}, B={}, k_max={}, samples {})",
        report.command, report.verdict, report.seed, report.ball_radius, report.k_max, report.samples
    );
    for s in &report.sections {
        let _ = writeln!(out, "{}", s.scenario);
        for c in &s.checks {
            let tag = if c.informational { " (info)" } else { "" };
            let _ = writeln!(
                out,
                "  {:<28} {:<12}{}{}  {:.2}s",
                c.check,
                c.verdict.to_string(),
                radius(c.ball_radius),
                tag,
                c.elapsed.as_secs_f64()
            );
            for cl in c.clauses.iter().filter(|cl| cl.verdict != Verdict::Pass) {
                let _ = write!(out, "      {} {}", cl.name, cl.verdict);
                if let Some(w) = &cl.witness {
                    for (k, g) in &w.elements {
                        let _ = write!(out, " {k}={g}");
                    }
                    for (k, v) in &w.values {
                        let _ = write!(out, " {k}={v}");
                    }
                }
                if let Some(n) = &cl.note {
                    let _ = write!(out, "  ({n})");
                }
                out.push('\n');
            }
        }
    }
    if !report.weyl_table.is_empty() {
        let _ = writeln!(out, "weyl table: class | second | input | output | sigma");
        for r in &report.weyl_table {
            let _ = writeln!(
                out,
                "  {:?} | {:?} | ({}) | ({}) | {}",
                r.class,
                r.second,
                r.input.join(", "),
                r.output.join(", "),
                r.sigma
            );
        }
    }
    for e in report.mismatches() {
        let show = |v: Option<Verdict>| v.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "MISMATCH {} / {}: expected {}, got {}",
            e.scenario,
            e.check,
            show(e.expected),
            show(e.actual)
        );
    }
    out
}
