//! The bundled example domains and their recorded outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use argact_core::lang::solve_time_constraints;
use argact_core::ramification::{check_stratified, extension_histories, InstantwiseState};
use argact_core::{DomainDescription, Framework, Limits, Mode, TimeBase};

use crate::commands::{cycle_text, extensions, prepare, state_tokens, tokens, transition, verify, Semantics};
use crate::error::{Error, Result};
use crate::report::{CorpusEntry, CorpusReport};
use crate::syntax::parse_domain;

/// `(name, source, expected output)` for every bundled domain.
pub const DOMAINS: &[(&str, &str, &str)] = &[
    ("yale", include_str!("../corpus/yale.ad"), include_str!("../corpus/expected/yale.out")),
    ("yale-surprise", include_str!("../corpus/yale-surprise.ad"), include_str!("../corpus/expected/yale-surprise.out")),
    ("stolen-car", include_str!("../corpus/stolen-car.ad"), include_str!("../corpus/expected/stolen-car.out")),
    (
        "murder-mystery",
        include_str!("../corpus/murder-mystery.ad"),
        include_str!("../corpus/expected/murder-mystery.out"),
    ),
    ("spy", include_str!("../corpus/spy.ad"), include_str!("../corpus/expected/spy.out")),
    ("potato", include_str!("../corpus/potato.ad"), include_str!("../corpus/expected/potato.out")),
    ("roulette", include_str!("../corpus/roulette.ad"), include_str!("../corpus/expected/roulette.out")),
    (
        "circuit-thielscher",
        include_str!("../corpus/circuit-thielscher.ad"),
        include_str!("../corpus/expected/circuit-thielscher.out"),
    ),
    ("suitcase", include_str!("../corpus/suitcase.ad"), include_str!("../corpus/expected/suitcase.out")),
    ("relay-loop", include_str!("../corpus/relay-loop.ad"), include_str!("../corpus/expected/relay-loop.out")),
];

/// Extensions are listed one by one up to this many.
const LIST_LIMIT: usize = 12;

pub fn names() -> Vec<String> {
    DOMAINS.iter().map(|(n, _, _)| (*n).to_owned()).collect()
}

pub fn source(name: &str) -> Result<&'static str> {
    DOMAINS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, s, _)| *s)
        .ok_or_else(|| Error::Usage(format!("no bundled domain `{name}`")))
}

pub fn load(name: &str) -> Result<DomainDescription> {
    parse_domain(source(name)?)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::S => "S",
        Mode::Q => "Q",
        Mode::AD => "AD",
    }
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

/// Named time constants in the order the `order` statements mention them.
fn constants(d: &DomainDescription) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for ch in &d.time_constraints {
        for t in std::iter::once(&ch.first).chain(ch.rest.iter().map(|(_, t)| t)) {
            if let TimeBase::Const(c) = &t.base {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
        }
    }
    out
}

/// The scripted output for one domain.
pub fn run_domain(d: &DomainDescription, limits: Limits) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(s, "domain {} (mode {})", d.name, mode_name(d.mode));
    let g = prepare(d)?;
    let fw = Framework::with_limits(&g, limits);
    let sem = Semantics::for_mode(d.mode);
    let exts = extensions(&fw, sem, false)?;
    let _ = writeln!(s, "{}: {} extensions", sem.name(), exts.len());
    if exts.len() <= LIST_LIMIT {
        for (i, v) in exts.iter().enumerate() {
            let omitted: Vec<_> = g.universe.iter().filter(|a| !v.contains(a)).cloned().collect();
            let _ = writeln!(s, "  #{} omits {}", i + 1, braces(&tokens(&omitted)));
            let _ = writeln!(s, "  #{} lr {}", i + 1, braces(&tokens(&v.lr)));
        }
    }
    match d.mode {
        Mode::S | Mode::Q => {
            if d.mode == Mode::Q {
                let kept = extensions(&fw, sem, true)?;
                let ids: Vec<String> = kept
                    .iter()
                    .filter_map(|k| exts.iter().position(|e| e == k).map(|i| format!("#{}", i + 1)))
                    .collect();
                let _ = writeln!(s, "min Lr_AQ keeps {}", braces(&ids));
            }
            let k = if d.mode == Mode::S { 3 } else { 6 };
            match verify(d, k, None, None, limits) {
                Ok(r) => {
                    let _ = writeln!(s, "theorem {k}: {}", if r.pass { "PASS" } else { "FAIL" });
                    for x in r.details.iter().chain(&r.failures) {
                        let _ = writeln!(s, "  {x}");
                    }
                }
                Err(Error::Core(e @ argact_core::Error::ResourceBound { .. })) => {
                    let _ = writeln!(s, "theorem {k}: out of bounds ({e})");
                }
                Err(e) => return Err(e),
            }
        }
        Mode::AD => {
            let st = check_stratified(d)?;
            let _ = writeln!(s, "stratified: {}", if st.stratified { "yes" } else { "no" });
            for c in &st.cycles {
                let _ = writeln!(s, "  cycle {}", cycle_text(c));
            }
            if let Ok(r) = transition(d, None, None, None) {
                let _ = writeln!(s, "trans from {} under {}:", braces(&r.state), r.action);
                for st in &r.states {
                    let _ = writeln!(s, "  {}", braces(st));
                }
                if r.diverged {
                    let _ = writeln!(s, "  DIVERGED");
                }
            }
            let mut finals: BTreeMap<String, usize> = BTreeMap::new();
            let mut traces: BTreeMap<Vec<String>, usize> = BTreeMap::new();
            let consts = constants(d);
            let values = solve_time_constraints(d)?;
            for v in &exts {
                let hs = extension_histories(&g, &v.assumptions)?;
                let ends: std::collections::BTreeSet<&InstantwiseState> = hs.iter().filter_map(|h| h.last()).collect();
                let key = match ends.len() {
                    1 => braces(&state_tokens(&d.signature, ends.into_iter().next().expect("one state"))),
                    _ => "not determined".to_owned(),
                };
                *finals.entry(key).or_default() += 1;
                if !consts.is_empty() && hs.len() == 1 {
                    let rows = consts
                        .iter()
                        .map(|c| {
                            let t = values[c] as usize;
                            format!("[{c}={t}] {}", braces(&state_tokens(&d.signature, &hs[0][t])))
                        })
                        .collect();
                    *traces.entry(rows).or_default() += 1;
                }
            }
            let _ = writeln!(s, "state at {}:", d.horizon);
            for (k, n) in &finals {
                let _ = writeln!(s, "  {k}: {n}");
            }
            for (rows, n) in &traces {
                let _ = writeln!(s, "trace ({n} extensions):");
                for r in rows {
                    let _ = writeln!(s, "  {r}");
                }
            }
        }
    }
    Ok(s)
}

/// Run every bundled domain and compare with its recorded output.
pub fn run(limits: Limits) -> Result<CorpusReport> {
    let mut entries = Vec::new();
    for (name, src, expected) in DOMAINS {
        let output = run_domain(&parse_domain(src)?, limits)?;
        entries.push(CorpusEntry { name: (*name).to_owned(), matches: output == normalise(expected), output });
    }
    Ok(CorpusReport { entries })
}

/// Expected files may have been checked out with CRLF line endings.
fn normalise(s: &str) -> String {
    s.replace("\r\n", "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_domain_parses_and_round_trips() {
        for (name, src, _) in DOMAINS {
            let d = parse_domain(src).unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = parse_domain(&crate::render_domain(&d)).unwrap();
            assert_eq!(again, d, "{name}");
        }
    }

    #[test]
    fn modes_of_the_corpus() {
        let modes: Vec<(String, Mode)> = names().into_iter().map(|n| (n.clone(), load(&n).unwrap().mode)).collect();
        for (n, m) in modes {
            let want = match n.as_str() {
                "yale" | "stolen-car" | "murder-mystery" => Mode::S,
                "yale-surprise" | "spy" | "potato" | "roulette" => Mode::Q,
                _ => Mode::AD,
            };
            assert_eq!(m, want, "{n}");
        }
    }

    #[test]
    fn suitcase_constants_in_order() {
        assert_eq!(constants(&load("suitcase").unwrap()), vec!["c1", "c2", "c4", "c5", "c3"]);
    }
}
