//! Ramification: stable time points, ramification compliance, instantwise
//! states and the Res / Causes / Trans transition relations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::deduction::{close, Closure};
use crate::error::{Error, Result};
use crate::ground::{GroundAtom, GroundDomain, GroundFormula, GroundRule};
use crate::lang::{
    Assumption, BinOp, DomainDescription, Formula, Literal, QualTag, RuleDecl, RuleKind, Signature, TimeExpr,
};

/// A complete, consistent assignment of the fluents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstantwiseState {
    values: BTreeMap<String, bool>,
}

impl InstantwiseState {
    /// Build from literals; later literals override earlier ones.
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        InstantwiseState { values: lits.into_iter().map(|l| (l.fluent, l.positive)).collect() }
    }

    /// Build from literals, requiring exactly one literal per fluent of `sig`.
    pub fn complete(sig: &Signature, lits: &[Literal]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for l in lits {
            if !sig.fluents.contains(&l.fluent) {
                return Err(Error::Validation(format!("unknown fluent {}", l.fluent)));
            }
            if values.insert(l.fluent.clone(), l.positive).is_some_and(|p| p != l.positive) {
                return Err(Error::Validation(format!("both {} and its negation", l.fluent)));
            }
        }
        for f in &sig.fluents {
            if !values.contains_key(f) {
                return Err(Error::Validation(format!("no literal for fluent {f}")));
            }
        }
        Ok(InstantwiseState { values })
    }

    pub fn holds(&self, l: &Literal) -> bool {
        self.values.get(&l.fluent) == Some(&l.positive)
    }

    pub fn holds_all(&self, ls: &[Literal]) -> bool {
        ls.iter().all(|l| self.holds(l))
    }

    pub fn literals(&self) -> Vec<Literal> {
        self.values.iter().map(|(f, &p)| Literal::new(f, p)).collect()
    }

    /// The state with `ls` made true.
    pub fn with(&self, ls: &[Literal]) -> Self {
        let mut s = self.clone();
        for l in ls {
            s.values.insert(l.fluent.clone(), l.positive);
        }
        s
    }

    /// Literals of `self` that are not in `other`.
    pub fn difference(&self, other: &InstantwiseState) -> Vec<Literal> {
        self.literals().into_iter().filter(|l| !other.holds(l)).collect()
    }
}

impl fmt::Display for InstantwiseState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.literals().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A ramification rule `Ψ ⟹ l` read as a state constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationView {
    pub conditions: Vec<Literal>,
    pub effect: Literal,
    /// Index of the declaration in the domain.
    pub decl: usize,
}

impl RamificationView {
    pub fn tag(&self) -> QualTag {
        QualTag::Ramification(self.effect.clone())
    }
}

/// An action description `α: Ψ ⟹ l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionView {
    pub action: String,
    pub conditions: Vec<Literal>,
    pub effect: Literal,
    pub decl: usize,
}

fn condition_literals(conds: &[Formula]) -> Result<Vec<Literal>> {
    fn go(f: &Formula, positive: bool, out: &mut Vec<Literal>) -> Result<()> {
        match f {
            Formula::True if positive => Ok(()),
            Formula::Fluent(x) => {
                out.push(Literal::new(x, positive));
                Ok(())
            }
            Formula::Not(a) => go(a, !positive, out),
            Formula::Bin(BinOp::And, a, b) if positive => {
                go(a, true, out)?;
                go(b, true, out)
            }
            _ => Err(Error::Precondition(format!("condition {f:?} is not a conjunction of fluent literals"))),
        }
    }
    let mut out = Vec::new();
    for c in conds {
        go(c, true, &mut out)?;
    }
    Ok(out)
}

/// The ramification rules of `d` as state constraints.
pub fn ramification_views(d: &DomainDescription) -> Result<Vec<RamificationView>> {
    let mut out = Vec::new();
    for (i, decl) in d.decls.iter().enumerate() {
        if let RuleDecl::Ramify { conditions, effect } = decl {
            out.push(RamificationView { conditions: condition_literals(conditions)?, effect: effect.clone(), decl: i });
        }
    }
    Ok(out)
}

/// The action descriptions of `action` in `d`.
pub fn action_views(d: &DomainDescription, action: &str) -> Result<Vec<ActionView>> {
    let mut out = Vec::new();
    for (i, decl) in d.decls.iter().enumerate() {
        if let RuleDecl::Effect { action: a, conditions, effect, .. } = decl {
            if a == action {
                out.push(ActionView {
                    action: a.clone(),
                    conditions: condition_literals(conditions)?,
                    effect: effect.clone(),
                    decl: i,
                });
            }
        }
    }
    Ok(out)
}

fn consistent_literals(ls: &[&Literal]) -> bool {
    ls.iter().all(|l| !ls.iter().any(|m| m.fluent == l.fluent && m.positive != l.positive))
}

/// Maximal sets of applicable descriptions of `action` whose effects are consistent.
pub fn possible_applications(
    d: &DomainDescription,
    action: &str,
    s: &InstantwiseState,
) -> Result<Vec<Vec<ActionView>>> {
    let applicable: Vec<ActionView> =
        action_views(d, action)?.into_iter().filter(|v| s.holds_all(&v.conditions)).collect();
    let k = applicable.len();
    if k > 20 {
        return Err(Error::ResourceBound { what: "applicable action descriptions", size: k, limit: 20 });
    }
    let ok: Vec<u32> = (0u32..1 << k)
        .filter(|&m| {
            let effects: Vec<&Literal> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| &applicable[i].effect).collect();
            consistent_literals(&effects)
        })
        .collect();
    let maximal = ok.iter().filter(|&&m| !ok.iter().any(|&n| n != m && n & m == m));
    let mut out: Vec<Vec<ActionView>> = maximal
        .filter(|&&m| m != 0)
        .map(|&m| (0..k).filter(|i| m >> i & 1 == 1).map(|i| applicable[i].clone()).collect())
        .collect();
    out.sort_by_key(|o: &Vec<ActionView>| o.iter().map(|v| v.decl).collect::<Vec<_>>());
    Ok(out)
}

/// Direct effects of `action` in `s`; `{s}` when nothing is applicable.
pub fn res(d: &DomainDescription, s: &InstantwiseState, action: &str) -> Result<Vec<InstantwiseState>> {
    let apps = possible_applications(d, action, s)?;
    if apps.is_empty() {
        return Ok(alloc::vec![s.clone()]);
    }
    let out: BTreeSet<InstantwiseState> =
        apps.iter().map(|o| s.with(&o.iter().map(|v| v.effect.clone()).collect::<Vec<_>>())).collect();
    Ok(out.into_iter().collect())
}

/// Ramification rules whose conditions hold in `s` and whose effect does not.
pub fn active_views<'v>(views: &'v [RamificationView], s: &InstantwiseState) -> Vec<&'v RamificationView> {
    views.iter().filter(|v| s.holds_all(&v.conditions) && !s.holds(&v.effect)).collect()
}

/// A state is stable when no ramification rule can change it.
pub fn is_stable_state(views: &[RamificationView], s: &InstantwiseState) -> bool {
    active_views(views, s).is_empty()
}

/// One-step indirect effects: every nonempty set of active rules with
/// consistent effects, applied with minimal change.
pub fn causes(d: &DomainDescription, s: &InstantwiseState) -> Result<Vec<InstantwiseState>> {
    causes_with(&ramification_views(d)?, s)
}

fn causes_with(views: &[RamificationView], s: &InstantwiseState) -> Result<Vec<InstantwiseState>> {
    let active = active_views(views, s);
    let k = active.len();
    if k > 20 {
        return Err(Error::ResourceBound { what: "active ramification rules", size: k, limit: 20 });
    }
    let mut out = BTreeSet::new();
    for m in 1u32..1 << k {
        let effects: Vec<&Literal> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| &active[i].effect).collect();
        if consistent_literals(&effects) {
            out.insert(s.with(&effects.into_iter().cloned().collect::<Vec<_>>()));
        }
    }
    Ok(out.into_iter().collect())
}

/// Outcome of [`trans`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransResult {
    /// Stable states reached.
    pub states: Vec<InstantwiseState>,
    /// Some branch was still unstable after the step bound.
    pub diverged: bool,
    /// Number of causation steps explored.
    pub steps: usize,
}

/// Default step bound for [`trans`]: four times the number of fluent literals.
pub fn default_max_steps(d: &DomainDescription) -> usize {
    4 * 2 * d.signature.fluents.len()
}

/// Res followed by causation chains that end in a stable state.
pub fn trans(d: &DomainDescription, w: &InstantwiseState, action: &str, max_steps: usize) -> Result<TransResult> {
    if max_steps == 0 {
        return Err(Error::Precondition("max_steps must be at least 1".into()));
    }
    let views = ramification_views(d)?;
    let mut layer: BTreeSet<InstantwiseState> = res(d, w, action)?.into_iter().collect();
    let mut found = BTreeSet::new();
    let mut steps = 0;
    loop {
        let mut next = BTreeSet::new();
        for s in &layer {
            if is_stable_state(&views, s) {
                found.insert(s.clone());
            } else {
                next.extend(causes_with(&views, s)?);
            }
        }
        if next.is_empty() {
            break;
        }
        if steps == max_steps {
            return Ok(TransResult { states: found.into_iter().collect(), diverged: true, steps });
        }
        steps += 1;
        layer = next;
    }
    Ok(TransResult { states: found.into_iter().collect(), diverged: false, steps })
}

/// Outcome of [`check_stratified`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationReport {
    /// No cycle in the literal dependency graph.
    pub stratified: bool,
    /// Elementary cycles of the literal graph, each as a literal sequence.
    pub cycles: Vec<Vec<Literal>>,
    /// Result of the exact rule-cycle check, when the rule count allows it.
    pub exact: Option<bool>,
}

const EXACT_LIMIT: usize = 8;

/// Detect cyclic chains of ramification rules.
///
/// The literal graph has an edge `l_i → l_k` when `l_i` is a condition of a
/// rule with effect `l_k` whose other conditions are consistent with `l_i`.
pub fn check_stratified(d: &DomainDescription) -> Result<StratificationReport> {
    let views = ramification_views(d)?;
    let mut nodes: BTreeSet<Literal> = BTreeSet::new();
    let mut edges: BTreeMap<Literal, BTreeSet<Literal>> = BTreeMap::new();
    for v in &views {
        let refs: Vec<&Literal> = v.conditions.iter().collect();
        if !consistent_literals(&refs) {
            continue;
        }
        for c in &v.conditions {
            nodes.insert(c.clone());
            nodes.insert(v.effect.clone());
            edges.entry(c.clone()).or_default().insert(v.effect.clone());
        }
    }
    let nodes: Vec<Literal> = nodes.into_iter().collect();
    let mut cycles = Vec::new();
    for (si, start) in nodes.iter().enumerate() {
        let mut path = alloc::vec![start.clone()];
        cycle_search(start, si, &nodes, &edges, &mut path, &mut cycles);
    }
    let exact = (views.len() <= EXACT_LIMIT).then(|| exact_cycle_exists(&views));
    Ok(StratificationReport { stratified: cycles.is_empty(), cycles, exact })
}

fn cycle_search(
    start: &Literal,
    si: usize,
    nodes: &[Literal],
    edges: &BTreeMap<Literal, BTreeSet<Literal>>,
    path: &mut Vec<Literal>,
    out: &mut Vec<Vec<Literal>>,
) {
    let last = path.last().expect("nonempty path").clone();
    let Some(next) = edges.get(&last) else { return };
    for n in next {
        if n == start {
            out.push(path.clone());
            continue;
        }
        let ni = nodes.iter().position(|x| x == n).expect("node");
        if ni < si || path.contains(n) {
            continue;
        }
        path.push(n.clone());
        cycle_search(start, si, nodes, edges, path, out);
        path.pop();
    }
}

/// Exact check: a cyclic sequence of rules `r_1 … r_m` and one literal set Φ
/// such that each `Φ ∪ {l_i}` is consistent and contains the conditions of
/// `r_{i+1}`, with `l_i` among them.
fn exact_cycle_exists(views: &[RamificationView]) -> bool {
    let n = views.len();
    let enables = |i: usize, k: usize| views[k].conditions.contains(&views[i].effect);
    fn dfs(
        views: &[RamificationView],
        enables: &dyn Fn(usize, usize) -> bool,
        start: usize,
        seq: &mut Vec<usize>,
    ) -> bool {
        let last = *seq.last().expect("nonempty");
        for k in 0..views.len() {
            if !enables(last, k) {
                continue;
            }
            if k == start && witness(views, seq) {
                return true;
            }
            if k <= start || seq.contains(&k) {
                continue;
            }
            seq.push(k);
            if dfs(views, enables, start, seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    fn witness(views: &[RamificationView], seq: &[usize]) -> bool {
        let m = seq.len();
        let mut phi: Vec<Literal> = Vec::new();
        for j in 0..m {
            let (i, k) = (seq[j], seq[(j + 1) % m]);
            for c in &views[k].conditions {
                if *c != views[i].effect && !phi.contains(c) {
                    phi.push(c.clone());
                }
            }
        }
        let refs: Vec<&Literal> = phi.iter().collect();
        if !consistent_literals(&refs) {
            return false;
        }
        seq.iter().all(|&i| {
            let mut with: Vec<&Literal> = refs.clone();
            with.push(&views[i].effect);
            consistent_literals(&with)
        })
    }
    (0..n).any(|s| dfs(views, &enables, s, &mut alloc::vec![s]))
}

/// A ramification rule instance of a grounded domain.
struct RuleInstance<'g> {
    rule: &'g GroundRule,
    time: u32,
    effect: Literal,
    aq: usize,
}

fn instances(g: &GroundDomain) -> Vec<RuleInstance<'_>> {
    let mut out = Vec::new();
    for (ri, r) in g.rules.iter().enumerate() {
        if r.kind != RuleKind::Ramification || g.inert.contains(ri) {
            continue;
        }
        for p in &r.premises {
            if let GroundFormula::Lit(a, true) = p {
                if let GroundAtom::AQAt(t, QualTag::Ramification(l), _) = &g.atoms[*a] {
                    out.push(RuleInstance { rule: r, time: *t, effect: l.clone(), aq: *a });
                }
            }
        }
    }
    out
}

fn fluent_entailed(c: &Closure<'_>, l: &Literal, t: u32) -> bool {
    match c.domain().fluent_atom(&l.fluent, t) {
        Some(a) => c.entails_lit(a, l.positive),
        None => false,
    }
}

fn unstable_points(c: &Closure<'_>, with_aq: bool) -> BTreeSet<u32> {
    let g = c.domain();
    let mut out = BTreeSet::new();
    for inst in instances(g) {
        let premises_hold = inst.rule.premises.iter().all(|p| {
            let is_aq = matches!(p, GroundFormula::Lit(a, true) if *a == inst.aq);
            (is_aq && !with_aq) || c.entails(p)
        });
        if premises_hold && !fluent_entailed(c, &inst.effect, inst.time) {
            out.insert(inst.time);
        }
    }
    out
}

/// Time points in `[0, H]` at which no ramification rule instance has its
/// premises (qualification included) derivable while its effect is not.
pub fn stable_time_points(g: &GroundDomain, delta: &[Assumption]) -> Result<Vec<u32>> {
    let c = close(g, delta)?;
    let bad = unstable_points(&c, true);
    Ok((0..=g.horizon()).filter(|t| !bad.contains(t)).collect())
}

/// Time points at which the derivable state enables no ramification rule
/// whose effect is not derivable, whatever the qualification assumptions.
pub fn state_stable_points(g: &GroundDomain, delta: &[Assumption]) -> Result<Vec<u32>> {
    let c = close(g, delta)?;
    let bad = unstable_points(&c, false);
    Ok((0..=g.horizon()).filter(|t| !bad.contains(t)).collect())
}

/// Ramification compliance of Δ.
///
/// Clause 1: every relevant AQ assumption outside Δ whose addition keeps the
/// closure consistent adds nothing but itself. Clause 2: no state-unstable
/// time point has all of its frame assumptions in Δ.
pub fn ramification_compliant(g: &GroundDomain, delta: &[Assumption]) -> Result<bool> {
    let c = close(g, delta)?;
    if !c.is_consistent() {
        return Ok(false);
    }
    let base: BTreeSet<(usize, bool)> = c.literals().into_iter().collect();
    for q in g.universe.iter().filter(|a| a.is_qual() && !delta.contains(a)) {
        let mut aug = delta.to_vec();
        aug.push(q.clone());
        let c2 = close(g, &aug)?;
        if !c2.is_consistent() {
            continue;
        }
        let qa = g.assumption_atom(q).expect("universe atom");
        if c2.literals().into_iter().any(|(a, p)| !base.contains(&(a, p)) && a != qa) {
            return Ok(false);
        }
    }
    for t in unstable_points(&c, false) {
        let row: Vec<&Assumption> = g.universe.iter().filter(|a| a.is_frame() && a.time() == t).collect();
        if !row.is_empty() && row.iter().all(|a| delta.contains(a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`check_theorem7`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem7Report {
    /// Soundness and completeness both hold.
    pub holds: bool,
    /// `Trans(w, α)`.
    pub transitions: Vec<InstantwiseState>,
    /// Stable states reached by models of AD-plausible sets.
    pub witnesses: Vec<InstantwiseState>,
    pub ad_plausible: usize,
    /// Sets with a model that is still unstable at the horizon; their
    /// eventual state lies outside the window and they are not judged.
    pub truncated: usize,
    /// Presumable sets that are not AD-plausible although every model of
    /// theirs ends in `Trans`.
    pub converse_counterexamples: usize,
    pub failures: Vec<String>,
}

/// The domain `d` with Γ replaced by `w` at 0 and `[0,1]α`.
pub fn transition_domain(d: &DomainDescription, w: &InstantwiseState, action: &str) -> Result<DomainDescription> {
    let mut out = d.clone();
    out.time_constraints.clear();
    out.theory = w.literals().iter().map(|l| Formula::lit_at(TimeExpr::int(0), l)).collect();
    out.theory.push(Formula::occ(TimeExpr::int(0), TimeExpr::int(1), action));
    out.validate()?;
    Ok(out)
}

/// Fluent histories over `[0, H]` of the models of `E_D(Δ)`.
pub fn extension_histories(g: &GroundDomain, delta: &[Assumption]) -> Result<Vec<Vec<InstantwiseState>>> {
    let c = close(g, delta)?;
    if !c.is_consistent() {
        return Ok(Vec::new());
    }
    let cnf = crate::models::theory_cnf(g);
    let units: Vec<crate::sat::Lit> = c.literals().into_iter().map(|(a, p)| crate::ground::lit_of(a, p)).collect();
    let fluents = &g.domain.signature.fluents;
    let project: Vec<usize> = (0..=g.horizon())
        .flat_map(|t| fluents.iter().map(move |f| g.fluent_atom(f, t).expect("fluent atom")))
        .collect();
    let rows = crate::models::project_models(&cnf, &units, &project, crate::models::MAX_CANDIDATES)?;
    Ok(rows
        .into_iter()
        .map(|row| {
            row.chunks(fluents.len())
                .map(|vals| InstantwiseState::new(fluents.iter().zip(vals).map(|(f, &v)| Literal::new(f, v))))
                .collect()
        })
        .collect())
}

/// How the models of `E_D(Δ)` end.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Ending {
    /// Every model reaches a stable state of `Trans`; the states reached.
    InTrans(BTreeSet<InstantwiseState>),
    /// Some model reaches a stable state outside `Trans`, or there is no model.
    Outside(String),
    /// Some model is unstable at every point of `(0, H]`.
    Truncated,
}

fn ending(
    g: &GroundDomain,
    views: &[RamificationView],
    trans: &[InstantwiseState],
    delta: &[Assumption],
) -> Result<Ending> {
    let hs = extension_histories(g, delta)?;
    if hs.is_empty() {
        return Ok(Ending::Outside("E_D(Δ) has no model".into()));
    }
    let mut reached = BTreeSet::new();
    let mut truncated = false;
    for h in hs {
        match h.iter().enumerate().skip(1).find(|(_, s)| is_stable_state(views, s)) {
            Some((_, s)) if trans.contains(s) => {
                reached.insert(s.clone());
            }
            Some((t, s)) => {
                return Ok(Ending::Outside(format!("a model is stable at {t} in {s}, which is not in Trans")))
            }
            None => truncated = true,
        }
    }
    Ok(if truncated { Ending::Truncated } else { Ending::InTrans(reached) })
}

fn show_excluded(g: &GroundDomain, delta: &[Assumption]) -> String {
    let out: Vec<String> = g.universe.iter().filter(|a| !delta.contains(a)).map(|a| format!("{a}")).collect();
    format!("AB minus {{{}}}", out.join(", "))
}

/// Check the transition correspondence for `w` and `α`.
///
/// Γ of `d` is replaced by `w` at 0 and `[0,1]α`. Soundness: every model of
/// `E_D(Δ)` for an AD-plausible Δ reaches its first stable state after 0
/// inside `Trans(w, α)`. Completeness: every state of `Trans(w, α)` is
/// reached that way. Models of `E_D(Δ)` are the fluent histories consistent
/// with Γ, the rules and the closure of Δ. Sets with a model that never
/// stabilises inside the window are counted as truncated and not judged.
/// Presumable sets outside the AD-plausible family whose models all end in
/// `Trans` are counted but are not failures: AD-plausibility compares sets
/// with each other, so no property of Δ alone can imply it.
pub fn check_theorem7(
    d: &DomainDescription,
    w: &InstantwiseState,
    action: &str,
    limits: crate::semantics::Limits,
) -> Result<Theorem7Report> {
    let strat = check_stratified(d)?;
    if !strat.stratified {
        return Err(Error::Precondition(format!("{} is not stratified", d.name)));
    }
    let dd = transition_domain(d, w, action)?;
    let g = crate::ground::ground(&dd)?;
    let views = ramification_views(&dd)?;
    let tr = trans(&dd, w, action, default_max_steps(&dd))?;
    let fw = crate::semantics::Framework::with_limits(&g, limits);
    let ad = fw.ad_plausible_sets()?;
    let mut failures = Vec::new();
    let mut witnesses = BTreeSet::new();
    let mut truncated = 0;
    for v in &ad {
        match ending(&g, &views, &tr.states, &v.assumptions)? {
            Ending::InTrans(states) => witnesses.extend(states),
            Ending::Outside(why) => failures.push(format!("AD-plausible {}: {why}", show_excluded(&g, &v.assumptions))),
            Ending::Truncated => truncated += 1,
        }
    }
    for s in tr.states.iter().filter(|s| !witnesses.contains(*s)) {
        failures.push(format!("{s} is in Trans but no AD-plausible set reaches it"));
    }
    let ad_sets: BTreeSet<&Vec<Assumption>> = ad.iter().map(|v| &v.assumptions).collect();
    let mut converse_counterexamples = 0;
    for v in fw.presumable_sets()? {
        if !ad_sets.contains(&v.assumptions) {
            if let Ending::InTrans(_) = ending(&g, &views, &tr.states, &v.assumptions)? {
                converse_counterexamples += 1;
            }
        }
    }
    Ok(Theorem7Report {
        holds: failures.is_empty(),
        transitions: tr.states,
        witnesses: witnesses.into_iter().collect(),
        ad_plausible: ad.len(),
        truncated,
        converse_counterexamples,
        failures,
    })
}

/// Assumptions outside Δ that matter in the history `h`: frame assumptions
/// of literals true at their time point, and qualifications of ramification
/// rules that are active there.
pub fn effective_exclusions(
    g: &GroundDomain,
    delta: &[Assumption],
    h: &[InstantwiseState],
) -> Result<BTreeSet<Assumption>> {
    let views = ramification_views(&g.domain)?;
    Ok(g.universe
        .iter()
        .filter(|a| !delta.contains(a))
        .filter(|a| match a {
            Assumption::Frame { time, literal } => h[*time as usize].holds(literal),
            Assumption::Qual { from, tag, .. } => {
                active_views(&views, &h[*from as usize]).iter().any(|v| v.effect == *tag.literal())
            }
        })
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{circuit, grounded, relay_loop};
    use crate::semantics::{Framework, Limits};
    use alloc::vec;
    use proptest::prelude::*;

    fn state(lits: &[(&str, bool)]) -> InstantwiseState {
        InstantwiseState::new(lits.iter().map(|&(f, p)| Literal::new(f, p)))
    }

    fn circuit_initial() -> InstantwiseState {
        state(&[("sw1", false), ("sw2", true), ("sw3", true), ("relay", false), ("light", false), ("detect", false)])
    }

    fn t1() -> InstantwiseState {
        state(&[("sw1", true), ("sw2", false), ("sw3", true), ("relay", true), ("light", false), ("detect", false)])
    }

    fn t2() -> InstantwiseState {
        t1().with(&[Literal::pos("detect")])
    }

    fn fa(t: u32, f: &str, p: bool) -> Assumption {
        Assumption::fa(t, Literal::new(f, p))
    }

    fn aq(t: u32, f: &str, p: bool) -> Assumption {
        Assumption::aq(t, t + 1, QualTag::Ramification(Literal::new(f, p)))
    }

    #[test]
    fn circuit_toggle_reaches_t1_and_t2() {
        let d = circuit(4);
        let r = trans(&d, &circuit_initial(), "toggle1", default_max_steps(&d)).unwrap();
        assert!(!r.diverged);
        assert_eq!(r.states, vec![t1(), t2()]);
    }

    #[test]
    fn res_flips_the_toggled_switch() {
        let d = circuit(4);
        let s = circuit_initial();
        assert_eq!(res(&d, &s, "toggle1").unwrap(), vec![s.with(&[Literal::pos("sw1")])]);
        assert_eq!(possible_applications(&d, "toggle1", &s).unwrap().len(), 1);
    }

    #[test]
    fn stable_state_has_no_causes() {
        let d = circuit(4);
        assert!(causes(&d, &t1()).unwrap().is_empty());
        let on = circuit_initial().with(&[Literal::pos("sw1")]);
        let next = causes(&d, &on).unwrap();
        assert!(!next.is_empty());
        assert!(next.iter().all(|s| s.holds(&Literal::pos("relay")) || s.holds(&Literal::pos("light"))));
    }

    #[test]
    fn relay_loop_diverges_and_is_not_stratified() {
        let d = relay_loop(4);
        let w = state(&[("sw1", false), ("sw2", true), ("relay1", false), ("relay2", false)]);
        let r = trans(&d, &w, "toggle1", default_max_steps(&d)).unwrap();
        assert!(r.diverged);
        assert!(r.states.is_empty());
        let st = check_stratified(&d).unwrap();
        assert!(!st.stratified);
        assert_eq!(st.exact, Some(true));
        let on_cycle = |l: &Literal| st.cycles.iter().any(|c| c.contains(l));
        assert!(on_cycle(&Literal::pos("sw2")) && on_cycle(&Literal::neg("sw2")));
        assert!(on_cycle(&Literal::pos("relay1")) && on_cycle(&Literal::pos("relay2")));
        let err = check_theorem7(&d, &w, "toggle1", Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn circuit_is_stratified() {
        let st = check_stratified(&circuit(4)).unwrap();
        assert!(st.stratified);
        assert_eq!(st.exact, Some(false));
    }

    #[test]
    fn zero_step_bound_is_rejected() {
        assert!(trans(&circuit(4), &circuit_initial(), "toggle1", 0).is_err());
    }

    #[test]
    fn full_frame_row_at_unstable_point_is_not_compliant() {
        let g = grounded(&circuit(4));
        let delta: Vec<Assumption> = g
            .universe
            .iter()
            .filter(|a| a.is_frame() && a.time() <= 1 && **a != fa(0, "sw1", false))
            .cloned()
            .collect();
        assert!(!state_stable_points(&g, &delta).unwrap().contains(&1));
        assert!(!ramification_compliant(&g, &delta).unwrap());
    }

    /// Effective exclusions of the three sets discussed for the circuit, with
    /// the final state each one leads to. `[0]FA_¬sw1` is attacked by `toggle1`.
    fn example_sets() -> [(BTreeSet<Assumption>, InstantwiseState); 3] {
        let base = [
            fa(0, "sw1", false),
            fa(1, "light", false),
            fa(1, "relay", false),
            fa(2, "sw2", true),
            fa(3, "light", true),
        ];
        let with = |extra: &[Assumption]| base.iter().chain(extra).cloned().collect::<BTreeSet<_>>();
        [
            (with(&[aq(2, "detect", true), aq(3, "detect", true)]), t1()),
            (with(&[aq(2, "detect", true), fa(3, "detect", false)]), t2()),
            (with(&[fa(2, "detect", false)]), t2()),
        ]
    }

    #[test]
    fn circuit_ad_plausible_sets_cover_the_three_classes() {
        let g = grounded(&circuit(4));
        let fw = Framework::with_limits(&g, Limits::default());
        let ad = fw.ad_plausible_sets().unwrap();
        for (want, end) in example_sets() {
            let hits: Vec<_> = ad
                .iter()
                .filter(|v| {
                    let hs = extension_histories(&g, &v.assumptions).unwrap();
                    hs.len() == 1 && effective_exclusions(&g, &v.assumptions, &hs[0]).unwrap() == want
                })
                .collect();
            assert!(!hits.is_empty(), "no AD-plausible set with exclusions {want:?}");
            for v in hits {
                assert_eq!(extension_histories(&g, &v.assumptions).unwrap()[0][4], end);
            }
        }
    }

    #[test]
    fn circuit_transition_correspondence() {
        let r = check_theorem7(&circuit(4), &circuit_initial(), "toggle1", Limits::default()).unwrap();
        assert!(r.holds, "{:?}", r.failures);
        assert_eq!(r.witnesses, vec![t1(), t2()]);
        assert_eq!(r.transitions, r.witnesses);
    }

    fn any_state(fluents: &'static [&'static str]) -> impl Strategy<Value = InstantwiseState> {
        proptest::collection::vec(any::<bool>(), fluents.len())
            .prop_map(move |bits| InstantwiseState::new(fluents.iter().zip(bits).map(|(f, b)| Literal::new(f, b))))
    }

    const CIRCUIT: &[&str] = &["sw1", "sw2", "sw3", "relay", "light", "detect"];
    const LOOP: &[&str] = &["sw1", "sw2", "relay1", "relay2"];

    proptest! {
        #[test]
        fn causes_empty_iff_stable(s in any_state(CIRCUIT), l in any_state(LOOP)) {
            for (d, s) in [(circuit(2), s), (relay_loop(2), l)] {
                let views = ramification_views(&d).unwrap();
                prop_assert_eq!(causes(&d, &s).unwrap().is_empty(), is_stable_state(&views, &s));
            }
        }

        #[test]
        fn changes_come_from_fired_rules(s in any_state(CIRCUIT), a in 1usize..=3) {
            let d = circuit(2);
            let views = ramification_views(&d).unwrap();
            let effects: BTreeSet<Literal> = active_views(&views, &s).iter().map(|v| v.effect.clone()).collect();
            for n in causes(&d, &s).unwrap() {
                prop_assert!(n.difference(&s).iter().all(|l| effects.contains(l)));
            }
            let action = format!("toggle{a}");
            let sw = Literal::new(&format!("sw{a}"), true);
            for n in res(&d, &s, &action).unwrap() {
                let diff = n.difference(&s);
                prop_assert_eq!(diff.len(), 1);
                prop_assert_eq!(&diff[0].fluent, &sw.fluent);
            }
        }

        #[test]
        fn trans_is_monotone_in_step_bound(s in any_state(CIRCUIT), k in 1usize..6) {
            let d = circuit(2);
            let small = trans(&d, &s, "toggle1", k).unwrap();
            let large = trans(&d, &s, "toggle1", k + 4).unwrap();
            prop_assert!(small.states.iter().all(|x| large.states.contains(x)));
        }

        #[test]
        fn stratified_trans_terminates(s in any_state(CIRCUIT), a in 1usize..=3) {
            let d = circuit(2);
            let bound = 2 * CIRCUIT.len() * ramification_views(&d).unwrap().len();
            let r = trans(&d, &s, &format!("toggle{a}"), bound).unwrap();
            prop_assert!(!r.diverged);
            prop_assert!(!r.states.is_empty());
        }
    }
}
