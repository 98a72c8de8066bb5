//! Structured command results, their text form and exit codes.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// One assumption set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub id: usize,
    /// Δ as sorted assumption tokens.
    pub assumptions: Vec<String>,
    /// Relevant assumptions outside Δ.
    pub omitted: Vec<String>,
    /// Leniently rejected assumptions.
    pub lr: Vec<String>,
    /// Dummy occurrences `[t,t+1]da_l` that explain leniently rejected frame assumptions.
    pub das: Vec<String>,
    /// State at the horizon, when every model of the extension agrees on it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_state: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub domain: String,
    pub semantics: String,
    pub select_min_lr_aq: bool,
    pub extensions: Vec<ExtensionReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntailReport {
    pub domain: String,
    pub formula: String,
    pub semantics: String,
    pub mode: String,
    pub entailed: bool,
    pub extensions: usize,
    /// For a YES, an extension that entails the formula; for a NO, one that does not.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub id: usize,
    /// State at each time point.
    pub states: Vec<Vec<String>>,
    pub occurrences: Vec<String>,
    pub fa: Vec<String>,
    /// `None` when every qualification assumption is true.
    pub aq: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelsReport {
    pub domain: String,
    pub kind: String,
    pub total: usize,
    pub models: Vec<ModelReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransReport {
    pub domain: String,
    pub state: Vec<String>,
    pub action: String,
    pub max_steps: usize,
    pub diverged: bool,
    pub states: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub domain: String,
    pub theorem: u8,
    pub pass: bool,
    /// `name = value` lines summarising the run.
    pub details: Vec<String>,
    pub witnesses: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub matches: bool,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
}

/// Result of any command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Solve(SolveReport),
    Entail(EntailReport),
    Models(ModelsReport),
    Trans(TransReport),
    Verify(VerifyReport),
    Corpus(CorpusReport),
    List { domains: Vec<String> },
}

/// Exit statuses.
pub mod exit {
    /// At least one extension, YES, PASS, stable successors, corpus matched.
    pub const POSITIVE: i32 = 0;
    /// No extension, NO, FAIL, DIVERGED, corpus mismatch.
    pub const NEGATIVE: i32 = 1;
    /// Syntax, validation or usage error.
    pub const INVALID: i32 = 2;
    /// Γ is R-inconsistent.
    pub const INCONSISTENT: i32 = 3;
    /// An enumeration bound was exceeded.
    pub const RESOURCE: i32 = 4;
}

impl Report {
    /// Whether the outcome is the positive one for its command.
    pub fn positive(&self) -> bool {
        match self {
            Report::Solve(r) => !r.extensions.is_empty(),
            Report::Entail(r) => r.entailed,
            Report::Models(r) => r.total > 0,
            Report::Trans(r) => !r.diverged && !r.states.is_empty(),
            Report::Verify(r) => r.pass,
            Report::Corpus(r) => r.entries.iter().all(|e| e.matches),
            Report::List { .. } => true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.positive() {
            exit::POSITIVE
        } else {
            exit::NEGATIVE
        }
    }
}

/// Exit status for a failed command.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent => exit::INCONSISTENT,
        Error::Core(argact_core::Error::ResourceBound { .. }) => exit::RESOURCE,
        _ => exit::INVALID,
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.join(" ")
    }
}

fn set(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self {
            Report::Solve(r) => {
                let n = r.extensions.len();
                let _ = writeln!(
                    s,
                    "{}: {} {}{}",
                    r.domain,
                    n,
                    if n == 1 { "extension" } else { "extensions" },
                    format_args!(" ({}{})", r.semantics, if r.select_min_lr_aq { ", min Lr_AQ" } else { "" }),
                );
                for e in &r.extensions {
                    let _ = writeln!(s, "#{}", e.id);
                    let _ = writeln!(s, "  assumptions: {}", list(&e.assumptions));
                    let _ = writeln!(s, "  omitted: {}", list(&e.omitted));
                    let _ = writeln!(s, "  lr: {}", list(&e.lr));
                    let _ = writeln!(s, "  das: {}", list(&e.das));
                    if let Some(w) = &e.final_state {
                        let _ = writeln!(s, "  final state: {}", set(w));
                    }
                }
            }
            Report::Entail(r) => {
                let _ = writeln!(
                    s,
                    "{} ({} {}, {} extensions): {}",
                    r.formula,
                    r.mode,
                    r.semantics,
                    r.extensions,
                    if r.entailed { "YES" } else { "NO" }
                );
                if let Some(w) = r.witness {
                    let _ = writeln!(s, "witness: #{w}");
                }
            }
            Report::Models(r) => {
                let _ = writeln!(s, "{}: {} {} models", r.domain, r.total, r.kind);
                for m in &r.models {
                    let _ = writeln!(s, "#{}", m.id);
                    for (t, row) in m.states.iter().enumerate() {
                        let _ = writeln!(s, "  [{t}] {}", set(row));
                    }
                    let _ = writeln!(s, "  Occ: {}", list(&m.occurrences));
                    let _ = writeln!(s, "  FA: {}", list(&m.fa));
                    match &m.aq {
                        Some(aq) => {
                            let _ = writeln!(s, "  AQ: {}", list(aq));
                        }
                        None => {
                            let _ = writeln!(s, "  AQ: all");
                        }
                    }
                }
                if r.models.len() < r.total {
                    let _ = writeln!(s, "({} more not shown)", r.total - r.models.len());
                }
            }
            Report::Trans(r) => {
                let _ = writeln!(s, "Trans({}, {}) within {} steps", set(&r.state), r.action, r.max_steps);
                for st in &r.states {
                    let _ = writeln!(s, "  {}", set(st));
                }
                if r.diverged {
                    let _ = writeln!(s, "DIVERGED");
                } else if r.states.is_empty() {
                    let _ = writeln!(s, "no stable successor");
                }
            }
            Report::Verify(r) => {
                let _ = writeln!(s, "theorem {} on {}: {}", r.theorem, r.domain, if r.pass { "PASS" } else { "FAIL" });
                for d in &r.details {
                    let _ = writeln!(s, "  {d}");
                }
                for w in &r.witnesses {
                    let _ = writeln!(s, "  witness {w}");
                }
                for x in &r.failures {
                    let _ = writeln!(s, "  failure: {x}");
                }
            }
            Report::Corpus(r) => {
                for e in &r.entries {
                    let _ = writeln!(s, "{} {}", if e.matches { "MATCH" } else { "MISMATCH" }, e.name);
                }
            }
            Report::List { domains } => {
                for d in domains {
                    let _ = writeln!(s, "{d}");
                }
            }
        }
        f.write_str(&s)
    }
}
