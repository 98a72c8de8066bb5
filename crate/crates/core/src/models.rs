//! Bounded model theory: interpretations, coherent and Δ-relativised models,
//! CPMM / CPMQM enumeration and the correspondence harness.
//!
//! Interpretations live on the window `[0, H]`. Outside it every frame and
//! qualification assumption is true, there are no occurrences, and fluents
//! keep their value at `H`. Qualification atoms of the vocabulary that are
//! not relevant assumptions are false in Q-models; rules that could use
//! them need an occurrence Γ does not mention, so they never fire.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ground::{lit_of, AtomId, GroundAtom, GroundDomain, GroundFormula, Recorder};
use crate::lang::{Assumption, AssumptionExpr, BinOp, CmpOp, Formula, Literal, RuleKind};
use crate::sat::{Lit, Solver};
use crate::semantics::{keep_maximal, keep_minimal, Framework};

/// An interpretation restricted to the window `[0, H]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation {
    pub horizon: u32,
    pub fluents: Vec<String>,
    /// `history[t][i]` is the value of `fluents[i]` at `t`.
    pub history: Vec<Vec<bool>>,
    /// True occurrence triples, dummy actions included.
    pub occurrences: BTreeSet<(u32, String, u32)>,
    /// True qualification atoms of the window.
    pub aq: BTreeSet<Assumption>,
    /// True frame atoms of the window.
    pub fa: BTreeSet<Assumption>,
    /// S-model: every qualification atom is true.
    pub all_aq: bool,
}

fn time_of(t: &crate::lang::TimeExpr) -> Result<i64> {
    t.as_int().ok_or_else(|| Error::Precondition(format!("time {t} is not ground")))
}

impl Interpretation {
    pub fn fluent(&self, f: &str, t: i64) -> Option<bool> {
        let i = self.fluents.iter().position(|x| x == f)?;
        let t = t.clamp(0, self.horizon as i64) as usize;
        Some(self.history[t][i])
    }

    pub fn literal(&self, l: &Literal, t: u32) -> bool {
        self.fluent(&l.fluent, t as i64) == Some(l.positive)
    }

    /// The state at `t` as literals.
    pub fn state(&self, t: u32) -> Vec<Literal> {
        self.fluents.iter().enumerate().map(|(i, f)| Literal::new(f, self.history[t as usize][i])).collect()
    }

    fn frame_true(&self, t: i64, l: &Literal) -> bool {
        t < 0 || t >= self.horizon as i64 || self.fa.contains(&Assumption::fa(t as u32, l.clone()))
    }

    fn qual_true(&self, a: &Assumption) -> bool {
        let Assumption::Qual { to, .. } = a else { return false };
        self.all_aq || *to > self.horizon || self.aq.contains(a)
    }

    /// Truth value of a ground formula at `t`.
    pub fn eval(&self, f: &Formula, t: i64) -> Result<bool> {
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Fluent(x) => self.fluent(x, t).ok_or_else(|| Error::UnknownAtom(x.clone()))?,
            Formula::Cmp(op, a, b) => {
                let (a, b) = (time_of(a)?, time_of(b)?);
                match op {
                    CmpOp::Lt => a < b,
                    CmpOp::Eq => a == b,
                }
            }
            Formula::Not(a) => !self.eval(a, t)?,
            Formula::Bin(op, a, b) => {
                let (x, y) = (self.eval(a, t)?, self.eval(b, t)?);
                match op {
                    BinOp::And => x && y,
                    BinOp::Or => x || y,
                    BinOp::Implies => !x || y,
                    BinOp::Iff => x == y,
                }
            }
            Formula::At(s, a) => self.eval(a, time_of(s)?)?,
            Formula::Occ(a, b, name) => {
                let (a, b) = (time_of(a)?, time_of(b)?);
                a >= 0 && b >= 0 && self.occurrences.contains(&(a as u32, name.clone(), b as u32))
            }
            Formula::Assume(AssumptionExpr::Frame(s, l)) => self.frame_true(time_of(s)?, l),
            Formula::Assume(AssumptionExpr::Qual(a, b, tag)) => {
                let (a, b) = (time_of(a)?, time_of(b)?);
                if a < 0 || b < 0 {
                    true
                } else {
                    self.qual_true(&Assumption::aq(a as u32, b as u32, tag.clone()))
                }
            }
        })
    }

    /// Value of a ground atom.
    pub fn atom_value(&self, a: &GroundAtom) -> bool {
        match a {
            GroundAtom::FluentAt(f, t) => self.fluent(f, *t as i64).unwrap_or(false),
            GroundAtom::Occ(t, name, u) => self.occurrences.contains(&(*t, name.clone(), *u)),
            GroundAtom::AQAt(t, tag, u) => self.qual_true(&Assumption::aq(*t, *u, tag.clone())),
            GroundAtom::FAAt(t, l) => self.frame_true(*t as i64, l),
        }
    }

    fn valuation(&self, g: &GroundDomain) -> Vec<bool> {
        g.atoms.iter().map(|a| self.atom_value(a)).collect()
    }

    /// Δ_QF^I restricted to the relevant universe.
    pub fn delta_qf(&self, g: &GroundDomain) -> Vec<Assumption> {
        g.universe
            .iter()
            .filter(|a| match a {
                Assumption::Frame { time, literal } => self.frame_true(*time as i64, literal),
                q => self.qual_true(q),
            })
            .cloned()
            .collect()
    }

    /// Occurrences of dummy actions.
    pub fn dummies(&self) -> Vec<(u32, String, u32)> {
        self.occurrences.iter().filter(|o| o.1.starts_with("da_")).cloned().collect()
    }
}

fn holds(f: &GroundFormula, val: &[bool]) -> bool {
    f.eval(&|a| val[a])
}

fn rule_fires(r: &crate::ground::GroundRule, val: &[bool]) -> bool {
    r.premises.iter().all(|p| holds(p, val))
}

/// Whether `i` satisfies Γ and every ground rule.
pub fn is_model(i: &Interpretation, g: &GroundDomain) -> bool {
    let val = i.valuation(g);
    g.theory.iter().all(|f| holds(f, &val))
        && g.rules.iter().all(|r| !rule_fires(r, &val) || r.consequence.iter().all(|&(a, p)| val[a] == p))
}

fn dummy_name(from: &Literal) -> String {
    format!("da_{}", from.negate())
}

/// Whether the flip `l → ¬l` at `t` is explained by an action rule firing in `val`.
fn explained(g: &GroundDomain, val: &[bool], l: &Literal, t: u32) -> bool {
    let Some(target) = g.fluent_atom(&l.fluent, t + 1) else { return false };
    g.rules
        .iter()
        .any(|r| r.kind == RuleKind::Action && r.consequence.contains(&(target, !l.positive)) && rule_fires(r, val))
}

fn basic_action(name: &str, g: &GroundDomain) -> bool {
    g.domain.signature.actions.iter().any(|a| a == name)
}

/// Coherence: basic occurrences come from Γ and every change is explained.
pub fn is_coherent(i: &Interpretation, g: &GroundDomain) -> bool {
    let oa: BTreeSet<&(u32, String, u32)> = g.occurrences.iter().collect();
    if i.occurrences.iter().any(|o| basic_action(&o.1, g) && !oa.contains(o)) {
        return false;
    }
    let val = i.valuation(g);
    for t in 0..i.horizon {
        for l in g.domain.signature.literals() {
            if i.literal(&l, t) && !i.literal(&l, t + 1) {
                let dummy = (t, dummy_name(&l), t + 1);
                if !explained(g, &val, &l, t) && !i.occurrences.contains(&dummy) {
                    return false;
                }
            }
        }
    }
    true
}

/// Bound on the number of unconstrained fluent and qualification atoms.
pub const MAX_FREE_ATOMS: usize = 18;
/// Bound on the number of enumerated candidate models.
pub const MAX_CANDIDATES: usize = 1 << 16;

/// Γ and every ground rule as clauses over `lit_of` variables.
pub(crate) struct TheoryCnf {
    pub clauses: Vec<Vec<Lit>>,
    pub num_vars: usize,
}

pub(crate) fn theory_cnf(g: &GroundDomain) -> TheoryCnf {
    let mut clauses: Vec<Vec<Lit>> = g.base_units.iter().map(|&(a, p)| vec![lit_of(a, p)]).collect();
    clauses.extend(g.residual.iter().cloned());
    let mut rec = Recorder::new(g.residual_vars.max(g.num_atoms()));
    for r in &g.rules {
        let prem: Vec<Lit> = r.premises.iter().map(|p| rec.encode(p)).collect();
        for &(a, p) in &r.consequence {
            let mut c: Vec<Lit> = prem.iter().map(|&l| -l).collect();
            c.push(lit_of(a, p));
            clauses.push(c);
        }
    }
    clauses.extend(rec.clauses);
    TheoryCnf { clauses, num_vars: rec.next as usize }
}

/// Distinct assignments to `project` over models of `cnf` under `units`.
pub(crate) fn project_models(cnf: &TheoryCnf, units: &[Lit], project: &[AtomId], cap: usize) -> Result<Vec<Vec<bool>>> {
    let mut s = Solver::new(cnf.num_vars);
    for c in &cnf.clauses {
        s.add_clause(c);
    }
    for &u in units {
        s.add_clause(&[u]);
    }
    let mut out = Vec::new();
    while s.solve(&[]) {
        let row: Vec<bool> = project.iter().map(|&a| s.model_value(a + 1)).collect();
        let block: Vec<Lit> = project.iter().zip(&row).map(|(&a, &v)| lit_of(a, !v)).collect();
        out.push(row);
        if out.len() > cap {
            return Err(Error::ResourceBound { what: "candidate models", size: out.len(), limit: cap });
        }
        if block.is_empty() {
            break;
        }
        s.add_clause(&block);
    }
    Ok(out)
}

/// Which family of models to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// S-models: every qualification assumption true.
    S,
    /// Q-models: relevant qualification assumptions free.
    Q,
}

struct Space {
    fluent_atoms: Vec<Vec<AtomId>>,
    aq: Vec<(AtomId, Assumption)>,
    units: Vec<Lit>,
}

fn space(g: &GroundDomain, kind: ModelKind) -> Result<Space> {
    let h = g.horizon();
    let sig = &g.domain.signature;
    let fluent_atoms: Vec<Vec<AtomId>> =
        (0..=h).map(|t| sig.fluents.iter().map(|f| g.fluent_atom(f, t).expect("fluent atom")).collect()).collect();
    let oa: BTreeSet<&(u32, String, u32)> = g.occurrences.iter().collect();
    let mut units = Vec::new();
    let mut aq = Vec::new();
    for (id, a) in g.atoms.iter().enumerate() {
        match a {
            GroundAtom::Occ(t, name, u) => units.push(lit_of(id, oa.contains(&(*t, name.clone(), *u)))),
            GroundAtom::AQAt(..) => {
                let asm = a.to_assumption().expect("AQ atom");
                match kind {
                    ModelKind::S => units.push(lit_of(id, true)),
                    ModelKind::Q if g.universe_index(&asm).is_some() => aq.push((id, asm)),
                    ModelKind::Q => units.push(lit_of(id, false)),
                }
            }
            _ => {}
        }
    }
    let fixed: BTreeSet<AtomId> = g.base_units.iter().map(|&(a, _)| a).collect();
    let free = fluent_atoms.iter().flatten().filter(|a| !fixed.contains(a)).count() + aq.len();
    if free > MAX_FREE_ATOMS {
        return Err(Error::ResourceBound { what: "free model atoms", size: free, limit: MAX_FREE_ATOMS });
    }
    Ok(Space { fluent_atoms, aq, units })
}

/// Candidate models with the given history and qualification values; FA is
/// either the largest admissible set or the one fixed by `fa`.
fn build(
    g: &GroundDomain,
    kind: ModelKind,
    history: Vec<Vec<bool>>,
    aq: BTreeSet<Assumption>,
    fa: Option<&BTreeSet<Assumption>>,
) -> Interpretation {
    let h = g.horizon();
    let sig = &g.domain.signature;
    let mut i = Interpretation {
        horizon: h,
        fluents: sig.fluents.clone(),
        history,
        occurrences: g.occurrences.iter().cloned().collect(),
        aq,
        fa: BTreeSet::new(),
        all_aq: kind == ModelKind::S,
    };
    let all_fa: BTreeSet<Assumption> =
        (0..h).flat_map(|t| sig.literals().into_iter().map(move |l| Assumption::fa(t, l))).collect();
    i.fa = match fa {
        Some(fa) => fa.clone(),
        None => {
            i.fa = all_fa.clone();
            let val = i.valuation(g);
            let mut blocked = BTreeSet::new();
            for r in g.rules.iter().filter(|r| r.kind != RuleKind::Frame && rule_fires(r, &val)) {
                for &(a, p) in &r.consequence {
                    if let (GroundAtom::FAAt(t, l), false) = (&g.atoms[a], p) {
                        blocked.insert(Assumption::fa(*t, l.clone()));
                    }
                }
            }
            all_fa
                .into_iter()
                .filter(|a| {
                    let Assumption::Frame { time, literal } = a else { return false };
                    !blocked.contains(a) && !(i.literal(literal, *time) && !i.literal(literal, time + 1))
                })
                .collect()
        }
    };
    let val = i.valuation(g);
    for t in 0..h {
        for l in sig.literals() {
            let needs = match fa {
                Some(fa) => !fa.contains(&Assumption::fa(t, l.clone())),
                None => i.literal(&l, t) && !i.literal(&l, t + 1),
            };
            if needs && !explained(g, &val, &l, t) {
                i.occurrences.insert((t, dummy_name(&l), t + 1));
            }
        }
    }
    i
}

/// A fluent history indexed by time then fluent, with the true AQ.
type Skeleton = (Vec<Vec<bool>>, BTreeSet<Assumption>);

/// Histories and qualification values of all models with frame atoms free.
fn skeletons(g: &GroundDomain, kind: ModelKind) -> Result<Vec<Skeleton>> {
    let sp = space(g, kind)?;
    let cnf = theory_cnf(g);
    let mut project: Vec<AtomId> = sp.fluent_atoms.iter().flatten().copied().collect();
    project.extend(sp.aq.iter().map(|(a, _)| *a));
    let nf = g.domain.signature.fluents.len();
    let rows = project_models(&cnf, &sp.units, &project, MAX_CANDIDATES)?;
    Ok(rows
        .into_iter()
        .map(|row| {
            let history: Vec<Vec<bool>> = row[..sp.fluent_atoms.len() * nf].chunks(nf).map(<[bool]>::to_vec).collect();
            let aq: BTreeSet<Assumption> = sp
                .aq
                .iter()
                .zip(&row[sp.fluent_atoms.len() * nf..])
                .filter(|(_, &v)| v)
                .map(|((_, a), _)| a.clone())
                .collect();
            (history, aq)
        })
        .collect())
}

/// Coherent models with ⊂-minimal occurrences; one per history and
/// qualification valuation, each with its largest frame denotation.
fn coherent_candidates(g: &GroundDomain, kind: ModelKind) -> Result<Vec<Interpretation>> {
    let mut out = Vec::new();
    for (h, aq) in skeletons(g, kind)? {
        let i = build(g, kind, h, aq, None);
        if is_model(&i, g) && is_coherent(&i, g) {
            out.push(i);
        }
    }
    Ok(out)
}

fn occ_key(all: &[(u32, String, u32)], i: &Interpretation) -> crate::bits::Bits {
    all.iter().enumerate().filter(|(_, o)| i.occurrences.contains(o)).map(|(k, _)| k).collect()
}

fn set_key(all: &[Assumption], s: &BTreeSet<Assumption>) -> crate::bits::Bits {
    all.iter().enumerate().filter(|(_, a)| s.contains(a)).map(|(k, _)| k).collect()
}

fn prioritised(g: &GroundDomain, kind: ModelKind) -> Result<Vec<Interpretation>> {
    let cands = coherent_candidates(g, kind)?;
    let mut occs: Vec<(u32, String, u32)> = cands.iter().flat_map(|i| i.occurrences.iter().cloned()).collect();
    occs.sort();
    occs.dedup();
    let pmm = keep_minimal(&cands, |i| occ_key(&occs, i));
    let fa_all: Vec<Assumption> = g.universe.iter().filter(|a| a.is_frame()).cloned().collect();
    let aq_all: Vec<Assumption> = g.universe.iter().filter(|a| a.is_qual()).cloned().collect();
    let stage = match kind {
        ModelKind::S => pmm,
        ModelKind::Q => keep_maximal(&pmm, |i| set_key(&aq_all, &i.aq)),
    };
    let mut out = keep_maximal(&stage, |i| set_key(&fa_all, &i.fa));
    out.sort();
    Ok(out)
}

/// Coherent models of the given kind, one per history and qualification
/// valuation, each with its largest frame denotation.
pub fn enumerate_coherent(g: &GroundDomain, kind: ModelKind) -> Result<Vec<Interpretation>> {
    let mut out = coherent_candidates(g, kind)?;
    out.sort();
    Ok(out)
}

/// Canonical prioritised minimal S-models.
pub fn enumerate_cpmm(g: &GroundDomain) -> Result<Vec<Interpretation>> {
    prioritised(g, ModelKind::S)
}

/// Canonical prioritised minimal Q-models: minimal occurrences, then maximal
/// AQ, then maximal FA.
pub fn enumerate_cpmqm(g: &GroundDomain) -> Result<Vec<Interpretation>> {
    prioritised(g, ModelKind::Q)
}

/// Δ-relativised models: assumption values exactly Δ on the relevant
/// universe and occurrences `OA_D ∪ DAS(Δ)`.
pub fn relativised_models(g: &GroundDomain, delta: &[Assumption], kind: ModelKind) -> Result<Vec<Interpretation>> {
    let want_aq: BTreeSet<Assumption> = delta.iter().filter(|a| a.is_qual()).cloned().collect();
    let fa: BTreeSet<Assumption> = delta.iter().filter(|a| a.is_frame()).cloned().collect();
    let mut out = Vec::new();
    for (h, aq) in skeletons(g, kind)? {
        if kind == ModelKind::Q && aq != want_aq {
            continue;
        }
        let i = build(g, kind, h, aq, Some(&fa));
        if is_model(&i, g) && as_set(&i.delta_qf(g)) == as_set(delta) {
            out.push(i);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn as_set(d: &[Assumption]) -> BTreeSet<Assumption> {
    d.iter().cloned().collect()
}

/// Outcome of [`verify_correspondence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub theorem: u8,
    pub holds: bool,
    /// Number of canonical models found.
    pub models: usize,
    /// Number of plausible (or Q-plausible) sets found.
    pub sets: usize,
    /// Human-readable descriptions of every failed check.
    pub failures: Vec<String>,
}

fn show(d: &[Assumption]) -> String {
    let parts: Vec<String> = d.iter().map(|a| format!("{a}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Check one of the six model/argument correspondences on `g`.
///
/// 1 and 4: the assumption projection of every canonical model is
/// (Q-)plausible. 2 and 5: each (Q-)plausible Δ has relativised models, all
/// canonical; conversely every projection of a canonical model whose
/// relativised models are all canonical is (Q-)plausible. 3 and 6: the
/// canonical models are exactly the union of the relativised models of the
/// (Q-)plausible sets. Theorems 1 and 4 also check that every leniently
/// rejected frame assumption is witnessed by a dummy action.
pub fn verify_correspondence(fw: &Framework<'_>, theorem: u8) -> Result<CorrespondenceReport> {
    let g = fw.domain();
    let kind = match theorem {
        1..=3 => ModelKind::S,
        4..=6 => ModelKind::Q,
        _ => return Err(Error::Precondition(format!("no correspondence theorem {theorem}"))),
    };
    let models = match kind {
        ModelKind::S => enumerate_cpmm(g)?,
        ModelKind::Q => enumerate_cpmqm(g)?,
    };
    let sets = match kind {
        ModelKind::S => fw.plausible_sets()?,
        ModelKind::Q => fw.q_plausible_sets()?,
    };
    let set_list: Vec<Vec<Assumption>> = sets.iter().map(|v| v.assumptions.clone()).collect();
    let set_keys: BTreeSet<BTreeSet<Assumption>> = set_list.iter().map(|d| as_set(d)).collect();
    let model_set: BTreeSet<&Interpretation> = models.iter().collect();
    let mut failures = Vec::new();
    match theorem {
        1 | 4 => {
            for m in &models {
                let d = m.delta_qf(g);
                if !set_keys.contains(&as_set(&d)) {
                    failures.push(format!("canonical model projection {} is not plausible", show(&d)));
                }
                for a in fw.lr(&d)? {
                    if let Assumption::Frame { time, literal } = &a {
                        if !m.occurrences.contains(&(*time, dummy_name(literal), time + 1)) {
                            failures.push(format!("{a} is leniently rejected but no dummy action witnesses it"));
                        }
                    }
                }
            }
        }
        2 | 5 => {
            for d in &set_list {
                let rel = relativised_models(g, d, kind)?;
                if rel.is_empty() {
                    failures.push(format!("plausible set {} has no relativised model", show(d)));
                }
                if rel.iter().any(|i| !model_set.contains(i)) {
                    failures.push(format!("plausible set {} has a non-canonical relativised model", show(d)));
                }
            }
            let projections: BTreeSet<Vec<Assumption>> = models.iter().map(|m| m.delta_qf(g)).collect();
            for d in projections {
                let rel = relativised_models(g, &d, kind)?;
                let all_canonical = !rel.is_empty() && rel.iter().all(|i| model_set.contains(i));
                if all_canonical && !set_keys.contains(&as_set(&d)) {
                    failures.push(format!("{} has only canonical relativised models but is not plausible", show(&d)));
                }
            }
        }
        _ => {
            let mut union = BTreeSet::new();
            for d in &set_list {
                union.extend(relativised_models(g, d, kind)?);
            }
            let canon: BTreeSet<Interpretation> = models.iter().cloned().collect();
            for i in canon.difference(&union) {
                failures.push(format!(
                    "canonical model with projection {} is not relativised to a plausible set",
                    show(&i.delta_qf(g))
                ));
            }
            for i in union.difference(&canon) {
                failures.push(format!("relativised model with projection {} is not canonical", show(&i.delta_qf(g))));
            }
        }
    }
    Ok(CorrespondenceReport { theorem, holds: failures.is_empty(), models: models.len(), sets: sets.len(), failures })
}
