//! The operations behind the `argact` subcommands.

use std::collections::BTreeSet;

use argact_core::models::{
    enumerate_coherent, enumerate_cpmm, enumerate_cpmqm, verify_correspondence, Interpretation, ModelKind,
};
use argact_core::ramification::{
    check_stratified, check_theorem7, default_max_steps, extension_histories, trans, InstantwiseState,
};
use argact_core::{
    close, ground, resolve_times, select_min_lr_aq, Assumption, AssumptionVerdict, DomainDescription, Framework,
    GroundDomain, Limits, Literal, Mode, Signature,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{EntailReport, ExtensionReport, ModelReport, ModelsReport, SolveReport, TransReport, VerifyReport};
use crate::syntax::{parse_formula, parse_literals, render_formula};

/// Extension semantics selectable with `--semantics`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    Presumable,
    Plausible,
    Stable,
    SemiQPlausible,
    QPlausible,
    AdPlausible,
    Admissible,
    Preferred,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Presumable => "presumable",
            Semantics::Plausible => "plausible",
            Semantics::Stable => "stable",
            Semantics::SemiQPlausible => "semi-q-plausible",
            Semantics::QPlausible => "q-plausible",
            Semantics::AdPlausible => "ad-plausible",
            Semantics::Admissible => "admissible",
            Semantics::Preferred => "preferred",
        }
    }

    /// The plausibility notion that matches a domain's mode.
    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::S => Semantics::Plausible,
            Mode::Q => Semantics::QPlausible,
            Mode::AD => Semantics::AdPlausible,
        }
    }
}

/// Skeptical or credulous entailment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EntailMode {
    Skeptical,
    Credulous,
}

/// Model families for `models --kind`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelsKind {
    Cpmm,
    Cpmqm,
    Coherent,
}

/// Resolve times, ground, and reject an R-inconsistent Γ.
pub fn prepare(d: &DomainDescription) -> Result<GroundDomain> {
    let g = ground(&resolve_times(d)?)?;
    if !g.gamma_satisfiable || !close(&g, &[])?.is_consistent() {
        return Err(Error::Inconsistent);
    }
    Ok(g)
}

pub fn tokens(items: &[Assumption]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Literals of `s` in declaration order of the fluents.
pub fn state_tokens(sig: &Signature, s: &InstantwiseState) -> Vec<String> {
    sig.fluents
        .iter()
        .map(|f| {
            let l = Literal::pos(f);
            if s.holds(&l) { l } else { l.negate() }.to_string()
        })
        .collect()
}

/// The extensions of `fw` under `sem`.
pub fn extensions(fw: &Framework<'_>, sem: Semantics, min_lr_aq: bool) -> Result<Vec<AssumptionVerdict>> {
    let v = match sem {
        Semantics::Presumable => fw.presumable_sets()?,
        Semantics::Plausible => fw.plausible_sets()?,
        Semantics::Stable => fw.stable_sets()?,
        Semantics::SemiQPlausible => fw.semi_q_plausible_sets()?,
        Semantics::QPlausible => fw.q_plausible_sets()?,
        Semantics::AdPlausible => fw.ad_plausible_sets()?,
        Semantics::Admissible => fw.admissible_sets()?,
        Semantics::Preferred => fw.preferred_sets()?,
    };
    Ok(if min_lr_aq { select_min_lr_aq(&v) } else { v })
}

/// Dummy occurrence explaining a leniently rejected frame assumption.
fn das(lr: &[Assumption]) -> Vec<String> {
    lr.iter()
        .filter_map(|a| match a {
            Assumption::Frame { time, literal } => Some(format!("[{},{}]da_{}", time, time + 1, literal.negate())),
            Assumption::Qual { .. } => None,
        })
        .collect()
}

/// The state at the horizon shared by every model of `E_D(Δ)`.
pub fn final_state(g: &GroundDomain, delta: &[Assumption]) -> Result<Option<InstantwiseState>> {
    let hs = extension_histories(g, delta)?;
    let ends: BTreeSet<&InstantwiseState> = hs.iter().filter_map(|h| h.last()).collect();
    Ok(if ends.len() == 1 { ends.into_iter().next().cloned() } else { None })
}

pub fn solve(d: &DomainDescription, sem: Semantics, min_lr_aq: bool, limits: Limits) -> Result<SolveReport> {
    let g = prepare(d)?;
    let fw = Framework::with_limits(&g, limits);
    let verdicts = extensions(&fw, sem, min_lr_aq)?;
    let mut out = Vec::new();
    for (i, v) in verdicts.iter().enumerate() {
        let omitted: Vec<Assumption> = g.universe.iter().filter(|a| !v.contains(a)).cloned().collect();
        let final_state = if d.mode == Mode::AD {
            final_state(&g, &v.assumptions)?.map(|s| state_tokens(&d.signature, &s))
        } else {
            None
        };
        out.push(ExtensionReport {
            id: i + 1,
            assumptions: tokens(&v.assumptions),
            omitted: tokens(&omitted),
            lr: tokens(&v.lr),
            das: das(&v.lr),
            final_state,
        });
    }
    Ok(SolveReport {
        domain: d.name.clone(),
        semantics: sem.name().into(),
        select_min_lr_aq: min_lr_aq,
        extensions: out,
    })
}

/// Skeptical: at least one extension and all of them entail the formula.
/// Credulous: some extension entails it. Free fluents are read at 0.
pub fn entail(
    d: &DomainDescription,
    formula: &str,
    sem: Semantics,
    mode: EntailMode,
    limits: Limits,
) -> Result<EntailReport> {
    let g = prepare(d)?;
    let f = resolve_formula(d, &parse_formula(formula)?)?;
    let gf = g.ground_formula(&f, 0)?;
    let fw = Framework::with_limits(&g, limits);
    let exts = extensions(&fw, sem, false)?;
    let mut holds = Vec::new();
    for v in &exts {
        holds.push(fw.extension(&v.assumptions)?.entails(&gf));
    }
    let (entailed, witness) = match mode {
        EntailMode::Skeptical => {
            let miss = holds.iter().position(|h| !h);
            (!holds.is_empty() && miss.is_none(), miss.map(|i| i + 1))
        }
        EntailMode::Credulous => {
            let hit = holds.iter().position(|&h| h);
            (hit.is_some(), hit.map(|i| i + 1))
        }
    };
    Ok(EntailReport {
        domain: d.name.clone(),
        formula: render_formula(&f),
        semantics: sem.name().into(),
        mode: match mode {
            EntailMode::Skeptical => "skeptical".into(),
            EntailMode::Credulous => "credulous".into(),
        },
        entailed,
        extensions: exts.len(),
        witness,
    })
}

/// Substitute the domain's time constants into a query.
fn resolve_formula(d: &DomainDescription, f: &argact_core::Formula) -> Result<argact_core::Formula> {
    let mut probe = d.clone();
    probe.theory = vec![f.clone()];
    let r = resolve_times(&probe)?;
    Ok(r.theory.into_iter().next().expect("one formula"))
}

fn model_report(id: usize, sig: &Signature, i: &Interpretation) -> ModelReport {
    let states = (0..=i.horizon)
        .map(|t| {
            sig.fluents
                .iter()
                .map(|f| Literal::new(f, i.fluent(f, i64::from(t)).unwrap_or(false)).to_string())
                .collect()
        })
        .collect();
    let occurrences = i.occurrences.iter().map(|(t, a, u)| format!("[{t},{u}]{a}")).collect();
    let fa: Vec<Assumption> = i.fa.iter().cloned().collect();
    let aq = (!i.all_aq).then(|| i.aq.iter().map(ToString::to_string).collect());
    ModelReport { id, states, occurrences, fa: tokens(&fa), aq }
}

pub fn models(d: &DomainDescription, kind: ModelsKind, limit: Option<usize>) -> Result<ModelsReport> {
    let g = prepare(d)?;
    let found = match kind {
        ModelsKind::Cpmm => enumerate_cpmm(&g)?,
        ModelsKind::Cpmqm => enumerate_cpmqm(&g)?,
        ModelsKind::Coherent => enumerate_coherent(&g, if d.mode == Mode::S { ModelKind::S } else { ModelKind::Q })?,
    };
    let shown = limit.unwrap_or(usize::MAX).min(found.len());
    Ok(ModelsReport {
        domain: d.name.clone(),
        kind: match kind {
            ModelsKind::Cpmm => "cpmm".into(),
            ModelsKind::Cpmqm => "cpmqm".into(),
            ModelsKind::Coherent => "coherent".into(),
        },
        total: found.len(),
        models: found[..shown].iter().enumerate().map(|(k, i)| model_report(k + 1, &d.signature, i)).collect(),
    })
}

/// The state at 0 fixed by Γ.
pub fn initial_state(d: &DomainDescription) -> Result<InstantwiseState> {
    let g = prepare(d)?;
    let c = close(&g, &[])?;
    let mut lits = Vec::new();
    for f in &d.signature.fluents {
        let a = g.fluent_atom(f, 0).expect("fluent atom");
        match (c.entails_lit(a, true), c.entails_lit(a, false)) {
            (true, false) => lits.push(Literal::pos(f)),
            (false, true) => lits.push(Literal::neg(f)),
            _ => return Err(Error::Usage(format!("the theory does not fix {f} at 0; pass --state"))),
        }
    }
    Ok(InstantwiseState::new(lits))
}

/// The single action that Γ says occurs over `[0,1]`.
pub fn initial_action(d: &DomainDescription) -> Result<String> {
    let g = prepare(d)?;
    let acts: Vec<&String> = g.occurrences.iter().filter(|o| o.0 == 0 && o.2 == 1).map(|o| &o.1).collect();
    match acts.as_slice() {
        [a] => Ok((*a).clone()),
        _ => Err(Error::Usage("no single action occurs over [0,1]; pass --action".into())),
    }
}

fn state_arg(d: &DomainDescription, state: Option<&str>) -> Result<InstantwiseState> {
    match state {
        Some(s) => Ok(InstantwiseState::complete(&d.signature, &parse_literals(s)?)?),
        None => initial_state(d),
    }
}

fn action_arg(d: &DomainDescription, action: Option<&str>) -> Result<String> {
    match action {
        Some(a) if d.signature.actions.iter().any(|x| x == a) => Ok(a.to_owned()),
        Some(a) => Err(Error::Usage(format!("undeclared action `{a}`"))),
        None => initial_action(d),
    }
}

pub fn transition(
    d: &DomainDescription,
    state: Option<&str>,
    action: Option<&str>,
    max_steps: Option<usize>,
) -> Result<TransReport> {
    let w = state_arg(d, state)?;
    let a = action_arg(d, action)?;
    let steps = max_steps.unwrap_or_else(|| default_max_steps(d));
    let r = trans(d, &w, &a, steps)?;
    Ok(TransReport {
        domain: d.name.clone(),
        state: state_tokens(&d.signature, &w),
        action: a,
        max_steps: steps,
        diverged: r.diverged,
        states: r.states.iter().map(|s| state_tokens(&d.signature, s)).collect(),
    })
}

/// Run theorem `k`: 1 to 6 compare extensions with canonical models, 7
/// checks the transition correspondence from the state at 0 (or `state`)
/// under the action over `[0,1]` (or `action`).
pub fn verify(
    d: &DomainDescription,
    k: u8,
    state: Option<&str>,
    action: Option<&str>,
    limits: Limits,
) -> Result<VerifyReport> {
    if k == 7 {
        let w = state_arg(d, state)?;
        let a = action_arg(d, action)?;
        let st = check_stratified(d)?;
        if !st.stratified {
            let cycles: Vec<String> = st.cycles.iter().map(|c| cycle_text(c)).collect();
            return Ok(VerifyReport {
                domain: d.name.clone(),
                theorem: 7,
                pass: false,
                details: vec!["stratified = false".into()],
                witnesses: Vec::new(),
                failures: cycles.into_iter().map(|c| format!("cycle {c}")).collect(),
            });
        }
        let r = check_theorem7(d, &w, &a, limits)?;
        let show = |s: &InstantwiseState| format!("{{{}}}", state_tokens(&d.signature, s).join(", "));
        return Ok(VerifyReport {
            domain: d.name.clone(),
            theorem: 7,
            pass: r.holds,
            details: vec![
                format!("transitions = {}", r.transitions.len()),
                format!("ad-plausible = {}", r.ad_plausible),
                format!("truncated = {}", r.truncated),
                format!("converse counterexamples = {}", r.converse_counterexamples),
            ],
            witnesses: r.witnesses.iter().map(show).collect(),
            failures: r.failures,
        });
    }
    let g = prepare(d)?;
    let fw = Framework::with_limits(&g, limits);
    let r = verify_correspondence(&fw, k)?;
    Ok(VerifyReport {
        domain: d.name.clone(),
        theorem: k,
        pass: r.holds,
        details: vec![format!("canonical models = {}", r.models), format!("extensions = {}", r.sets)],
        witnesses: Vec::new(),
        failures: r.failures,
    })
}

/// `l1 -> l2 -> ... -> l1`.
pub fn cycle_text(c: &[Literal]) -> String {
    let mut parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    if let Some(first) = parts.first().cloned() {
        parts.push(first);
    }
    parts.join(" -> ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn domain(name: &str) -> DomainDescription {
        corpus::load(name).unwrap()
    }

    #[test]
    fn yale_plausible_omits_two_frame_assumptions() {
        let r = solve(&domain("yale"), Semantics::Plausible, false, Limits::default()).unwrap();
        assert_eq!(r.extensions.len(), 1);
        assert_eq!(r.extensions[0].omitted, vec!["FA@0(¬loaded)", "FA@2(alive)"]);
    }

    #[test]
    fn entailment_modes() {
        let y = domain("yale");
        for f in ["-[3]alive", "[2]loaded", "true"] {
            assert!(entail(&y, f, Semantics::Plausible, EntailMode::Skeptical, Limits::default()).unwrap().entailed);
        }
        let r = domain("roulette");
        let sk = entail(&r, "[1]loaded", Semantics::QPlausible, EntailMode::Skeptical, Limits::default()).unwrap();
        let cr = entail(&r, "[1]loaded", Semantics::QPlausible, EntailMode::Credulous, Limits::default()).unwrap();
        assert!(!sk.entailed && cr.entailed);
        assert_eq!(sk.extensions, 2);
    }

    #[test]
    fn das_names_the_opposite_literal() {
        assert_eq!(das(&[Assumption::fa(1, Literal::pos("parked"))]), vec!["[1,2]da_¬parked"]);
    }

    #[test]
    fn initial_state_and_action_come_from_gamma() {
        let c = domain("circuit-thielscher");
        assert_eq!(
            state_tokens(&c.signature, &initial_state(&c).unwrap()),
            vec!["¬sw1", "sw2", "sw3", "¬relay", "¬light", "¬detect"]
        );
        assert_eq!(initial_action(&c).unwrap(), "toggle1");
        assert!(initial_state(&domain("stolen-car")).is_ok());
        assert!(matches!(initial_action(&domain("spy")), Err(Error::Usage(_))));
    }

    #[test]
    fn inconsistent_theory_is_reported() {
        let d = crate::parse_domain("domain d; fluents f; horizon 1; fact [0] f; fact -[0] f;").unwrap();
        assert_eq!(prepare(&d).unwrap_err(), Error::Inconsistent);
    }
}
