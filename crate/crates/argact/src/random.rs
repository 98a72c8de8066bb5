//! Seeded random domains for checking the correspondence theorems.
//!
//! The class is small on purpose: at most two fluents and two actions,
//! horizon 1 to 3, a complete state at 0, one or two occurrences and at most
//! one later observation. Effect and qualification conditions are single
//! literals.

use std::fmt::Write as _;

use argact_core::{DomainDescription, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::prepare;
use crate::error::{Error, Result};
use crate::syntax::parse_domain;

fn literal(rng: &mut ChaCha8Rng, fluents: usize) -> String {
    let f = rng.random_range(0..fluents);
    if rng.random_bool(0.5) {
        format!("f{f}")
    } else {
        format!("-f{f}")
    }
}

fn at(lit: &str, t: &str) -> String {
    match lit.strip_prefix('-') {
        Some(f) => format!("-[{t}] {f}"),
        None => format!("[{t}] {lit}"),
    }
}

/// Source text of a random domain in mode S or Q.
pub fn source(mode: Mode, seed: u64) -> String {
    assert!(mode != Mode::AD, "random domains are S or Q");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fluents = rng.random_range(1..=2usize);
    let actions = rng.random_range(1..=2usize);
    let horizon = rng.random_range(1..=3u32);
    let mut s = String::new();
    let _ = writeln!(s, "domain r{seed};");
    let names = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>().join(", ");
    let _ = writeln!(s, "fluents {};", names("f", fluents));
    let _ = writeln!(s, "actions {};", names("a", actions));
    let _ = writeln!(s, "horizon {horizon};");
    let tail = if mode == Mode::S { " unqualified" } else { "" };
    for a in 0..actions {
        for _ in 0..rng.random_range(1..=2) {
            let effect = literal(&mut rng, fluents);
            if rng.random_bool(0.5) {
                let cond = literal(&mut rng, fluents);
                let _ = writeln!(s, "effect a{a} if {cond} causes {effect}{tail};");
            } else {
                let _ = writeln!(s, "effect a{a} causes {effect}{tail};");
            }
        }
    }
    if mode == Mode::Q && rng.random_bool(0.6) {
        let target = literal(&mut rng, fluents);
        let cond = literal(&mut rng, fluents);
        let when = if rng.random_bool(0.5) { "t" } else { "u" };
        let _ = writeln!(s, "qual {target} if {} over [t,u];", at(&cond, when));
    }
    for f in 0..fluents {
        let lit = if rng.random_bool(0.5) { format!("f{f}") } else { format!("-f{f}") };
        let _ = writeln!(s, "fact {};", at(&lit, "0"));
    }
    let mut starts: Vec<u32> = (0..horizon).collect();
    let occurrences = rng.random_range(1..=2usize).min(starts.len());
    for _ in 0..occurrences {
        let t = starts.remove(rng.random_range(0..starts.len()));
        let _ = writeln!(s, "fact [{t},{}] a{};", t + 1, rng.random_range(0..actions));
    }
    if rng.random_bool(0.5) {
        let t = rng.random_range(1..=horizon).to_string();
        let _ = writeln!(s, "fact {};", at(&literal(&mut rng, fluents), &t));
    }
    s
}

/// A random domain in mode S or Q.
pub fn domain(mode: Mode, seed: u64) -> Result<DomainDescription> {
    parse_domain(&source(mode, seed))
}

/// The first `n` random domains, by seed, whose Γ is consistent.
pub fn consistent_domains(mode: Mode, n: usize) -> Result<Vec<(u64, DomainDescription)>> {
    let mut out = Vec::with_capacity(n);
    let mut seed = 0;
    while out.len() < n {
        let d = domain(mode, seed)?;
        match prepare(&d) {
            Ok(_) => out.push((seed, d)),
            Err(Error::Inconsistent) => {}
            Err(e) => return Err(e),
        }
        seed += 1;
    }
    Ok(out)
}
