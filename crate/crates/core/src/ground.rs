//! Grounding of a resolved domain description over `[0, H]`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lang::{
    Assumption, AssumptionExpr, BinOp, CmpOp, DomainDescription, Formula, Literal, QualTag, RuleKind, TimeBase,
    TimeExpr,
};
use crate::sat::{Lit, Solver};

pub type AtomId = usize;

/// A propositional atom of the ground vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundAtom {
    FluentAt(String, u32),
    Occ(u32, String, u32),
    AQAt(u32, QualTag, u32),
    FAAt(u32, Literal),
}

impl GroundAtom {
    pub fn from_assumption(a: &Assumption) -> GroundAtom {
        match a {
            Assumption::Frame { time, literal } => GroundAtom::FAAt(*time, literal.clone()),
            Assumption::Qual { from, to, tag } => GroundAtom::AQAt(*from, tag.clone(), *to),
        }
    }

    pub fn to_assumption(&self) -> Option<Assumption> {
        match self {
            GroundAtom::FAAt(t, l) => Some(Assumption::fa(*t, l.clone())),
            GroundAtom::AQAt(t, tag, u) => Some(Assumption::aq(*t, *u, tag.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundAtom::FluentAt(x, t) => write!(f, "[{t}]{x}"),
            GroundAtom::Occ(t, a, u) => write!(f, "[{t},{u}]{a}"),
            a => write!(f, "{}", a.to_assumption().expect("assumption atom")),
        }
    }
}

/// A propositional formula over atom ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundFormula {
    Const(bool),
    Lit(AtomId, bool),
    Not(Box<GroundFormula>),
    And(Vec<GroundFormula>),
    Or(Vec<GroundFormula>),
    Implies(Box<GroundFormula>, Box<GroundFormula>),
    Iff(Box<GroundFormula>, Box<GroundFormula>),
}

impl GroundFormula {
    /// Negation, pushed into literals and constants.
    pub fn negated(self) -> GroundFormula {
        match self {
            GroundFormula::Const(b) => GroundFormula::Const(!b),
            GroundFormula::Lit(a, p) => GroundFormula::Lit(a, !p),
            GroundFormula::Not(g) => *g,
            g => GroundFormula::Not(Box::new(g)),
        }
    }

    /// The literal form, if this is a literal.
    pub fn as_lit(&self) -> Option<(AtomId, bool)> {
        match self {
            GroundFormula::Lit(a, p) => Some((*a, *p)),
            _ => None,
        }
    }

    /// Flatten a conjunction of literals; `None` for anything else.
    pub fn as_lit_conjunction(&self) -> Option<Vec<(AtomId, bool)>> {
        match self {
            GroundFormula::Const(true) => Some(Vec::new()),
            GroundFormula::Lit(a, p) => Some(vec![(*a, *p)]),
            GroundFormula::And(gs) => {
                let mut v = Vec::new();
                for g in gs {
                    v.extend(g.as_lit_conjunction()?);
                }
                Some(v)
            }
            _ => None,
        }
    }

    /// Evaluate under a total valuation.
    pub fn eval(&self, val: &dyn Fn(AtomId) -> bool) -> bool {
        match self {
            GroundFormula::Const(b) => *b,
            GroundFormula::Lit(a, p) => val(*a) == *p,
            GroundFormula::Not(g) => !g.eval(val),
            GroundFormula::And(gs) => gs.iter().all(|g| g.eval(val)),
            GroundFormula::Or(gs) => gs.iter().any(|g| g.eval(val)),
            GroundFormula::Implies(a, b) => !a.eval(val) || b.eval(val),
            GroundFormula::Iff(a, b) => a.eval(val) == b.eval(val),
        }
    }

    /// Three-valued evaluation under a partial valuation.
    pub fn eval_partial(&self, val: &dyn Fn(AtomId) -> Option<bool>) -> Option<bool> {
        let and = |xs: &mut dyn Iterator<Item = Option<bool>>| {
            let mut r = Some(true);
            for x in xs {
                match x {
                    Some(false) => return Some(false),
                    None => r = None,
                    Some(true) => {}
                }
            }
            r
        };
        match self {
            GroundFormula::Const(b) => Some(*b),
            GroundFormula::Lit(a, p) => val(*a).map(|v| v == *p),
            GroundFormula::Not(g) => g.eval_partial(val).map(|b| !b),
            GroundFormula::And(gs) => and(&mut gs.iter().map(|g| g.eval_partial(val))),
            GroundFormula::Or(gs) => and(&mut gs.iter().map(|g| g.eval_partial(val).map(|b| !b))).map(|b| !b),
            GroundFormula::Implies(a, b) => match (a.eval_partial(val), b.eval_partial(val)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
            GroundFormula::Iff(a, b) => match (a.eval_partial(val), b.eval_partial(val)) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
        }
    }

    pub fn atoms(&self, out: &mut BTreeSet<AtomId>) {
        match self {
            GroundFormula::Const(_) => {}
            GroundFormula::Lit(a, _) => {
                out.insert(*a);
            }
            GroundFormula::Not(g) => g.atoms(out),
            GroundFormula::And(gs) | GroundFormula::Or(gs) => gs.iter().for_each(|g| g.atoms(out)),
            GroundFormula::Implies(a, b) | GroundFormula::Iff(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }
}

/// A ground rule instance. Premises are split at conjunctions; the
/// consequence is always a conjunction of literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundRule {
    pub kind: RuleKind,
    /// Declaration index, `None` for frame rules.
    pub source: Option<usize>,
    /// Values of the schema's time variables, in schema order.
    pub binding: Vec<u32>,
    pub premises: Vec<GroundFormula>,
    pub consequence: Vec<(AtomId, bool)>,
}

impl GroundRule {
    /// Literal premises only, if every premise is a literal.
    pub fn literal_premises(&self) -> Option<Vec<(AtomId, bool)>> {
        self.premises.iter().map(|p| p.as_lit()).collect()
    }
}

/// A grounded domain: vocabulary, ground theory, ground rules and the
/// relevant assumption universe.
#[derive(Clone, Debug)]
pub struct GroundDomain {
    pub domain: DomainDescription,
    pub atoms: Vec<GroundAtom>,
    index: BTreeMap<GroundAtom, AtomId>,
    /// Γ, one entry per fact (facts with free fluents are conjoined over all times).
    pub theory: Vec<GroundFormula>,
    pub rules: Vec<GroundRule>,
    /// Relevant assumptions in canonical order.
    pub universe: Vec<Assumption>,
    pub universe_atoms: Vec<AtomId>,
    /// Occurrences entailed by Γ (`OA_D`).
    pub occurrences: Vec<(u32, String, u32)>,
    /// Whether Γ is classically satisfiable.
    pub gamma_satisfiable: bool,
    pub(crate) base_units: Vec<(AtomId, bool)>,
    /// Γ's non-unit part after unit propagation, as clauses over atom variables and Tseitin variables.
    pub(crate) residual: Vec<Vec<Lit>>,
    pub(crate) residual_vars: usize,
    pub(crate) residual_atoms: Bits,
    /// Rules that can never fire while the closure is consistent.
    pub(crate) inert: Bits,
    pub(crate) universe_pos: BTreeMap<AtomId, usize>,
    pub(crate) rule_index: crate::deduction::RuleIndex,
}

impl GroundDomain {
    pub fn atom_id(&self, a: &GroundAtom) -> Option<AtomId> {
        self.index.get(a).copied()
    }

    pub fn horizon(&self) -> u32 {
        self.domain.horizon
    }

    pub fn assumption_atom(&self, a: &Assumption) -> Option<AtomId> {
        self.atom_id(&GroundAtom::from_assumption(a))
    }

    /// Position of an assumption in [`GroundDomain::universe`].
    pub fn universe_index(&self, a: &Assumption) -> Option<usize> {
        self.universe_pos.get(&self.assumption_atom(a)?).copied()
    }

    pub fn fluent_atom(&self, fluent: &str, t: u32) -> Option<AtomId> {
        self.atom_id(&GroundAtom::FluentAt(fluent.to_string(), t))
    }

    /// Ground a formula given in the domain language. Free fluents are read at time `now`.
    pub fn ground_formula(&self, f: &Formula, now: u32) -> Result<GroundFormula> {
        let mut lookup =
            |a: GroundAtom| -> Result<AtomId> { self.atom_id(&a).ok_or_else(|| Error::UnknownAtom(a.to_string())) };
        ground_with(f, &BTreeMap::new(), Some(i64::from(now)), self.horizon(), &mut lookup).map_err(|e| match e {
            GroundErr::Range => Error::HorizonOverflow { what: "formula".into(), value: -1, horizon: self.horizon() },
            GroundErr::Other(e) => e,
        })
    }

    pub fn rules_of_kind(&self, kind: RuleKind) -> impl Iterator<Item = &GroundRule> {
        self.rules.iter().filter(move |r| r.kind == kind)
    }

    /// Number of atoms.
    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }
}

enum GroundErr {
    Range,
    Other(Error),
}

impl From<Error> for GroundErr {
    fn from(e: Error) -> Self {
        GroundErr::Other(e)
    }
}

fn ground_time(t: &TimeExpr, env: &BTreeMap<String, i64>, h: u32) -> core::result::Result<u32, GroundErr> {
    let b = t.bind(env);
    match b.base {
        TimeBase::Zero if (0..=i64::from(h)).contains(&b.offset) => Ok(b.offset as u32),
        TimeBase::Zero => Err(GroundErr::Range),
        _ => Err(GroundErr::Other(Error::Validation(format!("unresolved time `{t}`")))),
    }
}

fn ground_with(
    f: &Formula,
    env: &BTreeMap<String, i64>,
    now: Option<i64>,
    h: u32,
    lookup: &mut dyn FnMut(GroundAtom) -> Result<AtomId>,
) -> core::result::Result<GroundFormula, GroundErr> {
    Ok(match f {
        Formula::True => GroundFormula::Const(true),
        Formula::False => GroundFormula::Const(false),
        Formula::Fluent(x) => {
            let t = match now {
                Some(t) if (0..=i64::from(h)).contains(&t) => t as u32,
                Some(_) => return Err(GroundErr::Range),
                None => return Err(GroundErr::Other(Error::Validation(format!("fluent `{x}` has no time binder")))),
            };
            GroundFormula::Lit(lookup(GroundAtom::FluentAt(x.clone(), t))?, true)
        }
        Formula::Cmp(op, a, b) => {
            let (a, b) = (a.bind(env), b.bind(env));
            match (a.as_int(), b.as_int()) {
                (Some(x), Some(y)) => GroundFormula::Const(match op {
                    CmpOp::Lt => x < y,
                    CmpOp::Eq => x == y,
                }),
                _ => return Err(GroundErr::Other(Error::Validation("unresolved comparison".into()))),
            }
        }
        Formula::Not(a) => ground_with(a, env, now, h, lookup)?.negated(),
        Formula::Bin(op, a, b) => {
            let (a, b) = (ground_with(a, env, now, h, lookup)?, ground_with(b, env, now, h, lookup)?);
            simplify_bin(*op, a, b)
        }
        Formula::At(t, a) => {
            let t = t.bind(env);
            match t.as_int() {
                Some(v) => ground_with(a, env, Some(v), h, lookup)?,
                None => return Err(GroundErr::Other(Error::Validation(format!("unresolved time `{t}`")))),
            }
        }
        Formula::Occ(t, u, a) => {
            let (t, u) = (ground_time(t, env, h)?, ground_time(u, env, h)?);
            GroundFormula::Lit(lookup(GroundAtom::Occ(t, a.clone(), u))?, true)
        }
        Formula::Assume(AssumptionExpr::Frame(t, l)) => {
            let t = ground_time(t, env, h)?;
            if t >= h {
                return Err(GroundErr::Range);
            }
            GroundFormula::Lit(lookup(GroundAtom::FAAt(t, l.clone()))?, true)
        }
        Formula::Assume(AssumptionExpr::Qual(t, u, tag)) => {
            let (t, u) = (ground_time(t, env, h)?, ground_time(u, env, h)?);
            GroundFormula::Lit(lookup(GroundAtom::AQAt(t, tag.clone(), u))?, true)
        }
    })
}

fn simplify_bin(op: BinOp, a: GroundFormula, b: GroundFormula) -> GroundFormula {
    use GroundFormula::Const;
    match (op, a, b) {
        (BinOp::And, Const(false), _) | (BinOp::And, _, Const(false)) => Const(false),
        (BinOp::And, Const(true), x) | (BinOp::And, x, Const(true)) => x,
        (BinOp::Or, Const(true), _) | (BinOp::Or, _, Const(true)) => Const(true),
        (BinOp::Or, Const(false), x) | (BinOp::Or, x, Const(false)) => x,
        (BinOp::Implies, Const(false), _) | (BinOp::Implies, _, Const(true)) => Const(true),
        (BinOp::Implies, Const(true), x) => x,
        (BinOp::Implies, x, Const(false)) => x.negated(),
        (BinOp::Iff, Const(true), x) | (BinOp::Iff, x, Const(true)) => x,
        (BinOp::Iff, Const(false), x) | (BinOp::Iff, x, Const(false)) => x.negated(),
        (BinOp::And, a, b) => {
            let mut v = Vec::new();
            for g in [a, b] {
                match g {
                    GroundFormula::And(gs) => v.extend(gs),
                    g => v.push(g),
                }
            }
            GroundFormula::And(v)
        }
        (BinOp::Or, a, b) => {
            let mut v = Vec::new();
            for g in [a, b] {
                match g {
                    GroundFormula::Or(gs) => v.extend(gs),
                    g => v.push(g),
                }
            }
            GroundFormula::Or(v)
        }
        (BinOp::Implies, a, b) => GroundFormula::Implies(Box::new(a), Box::new(b)),
        (BinOp::Iff, a, b) => GroundFormula::Iff(Box::new(a), Box::new(b)),
    }
}

fn split_conjunction(g: GroundFormula, out: &mut Vec<GroundFormula>) {
    match g {
        GroundFormula::And(gs) => gs.into_iter().for_each(|g| split_conjunction(g, out)),
        g => out.push(g),
    }
}

struct Vocab {
    atoms: Vec<GroundAtom>,
    index: BTreeMap<GroundAtom, AtomId>,
}

impl Vocab {
    fn intern(&mut self, a: GroundAtom) -> AtomId {
        if let Some(&i) = self.index.get(&a) {
            return i;
        }
        let i = self.atoms.len();
        self.index.insert(a.clone(), i);
        self.atoms.push(a);
        i
    }
}

/// Instantiate every rule schema over `[0, H]`.
///
/// Instances whose times fall outside the horizon, or whose side conditions
/// such as `t < u` are false, are dropped.
pub fn ground(d: &DomainDescription) -> Result<GroundDomain> {
    let h = d.horizon;
    let mut voc = Vocab { atoms: Vec::new(), index: BTreeMap::new() };
    for t in 0..=h {
        for f in &d.signature.fluents {
            voc.intern(GroundAtom::FluentAt(f.clone(), t));
        }
    }
    let lits = d.signature.literals();
    for t in 0..h {
        for l in &lits {
            voc.intern(GroundAtom::FAAt(t, l.clone()));
        }
    }

    let mut theory = Vec::new();
    for f in &d.theory {
        let mut lookup = |a: GroundAtom| -> Result<AtomId> { Ok(voc.intern(a)) };
        let g = if f.has_free_fluent() {
            let mut parts = Vec::new();
            for t in 0..=h {
                parts.push(ground_or_err(f, Some(i64::from(t)), h, &mut lookup)?);
            }
            parts.into_iter().fold(GroundFormula::Const(true), |a, b| simplify_bin(BinOp::And, a, b))
        } else {
            ground_or_err(f, None, h, &mut lookup)?
        };
        theory.push(g);
    }

    let mut rules = Vec::new();
    for schema in d.rules() {
        let n = schema.time_vars.len() as u32;
        let base = h + 1;
        for code in 0..base.pow(n) {
            let binding: Vec<u32> = (0..n).map(|i| code / base.pow(n - 1 - i) % base).collect();
            let env: BTreeMap<String, i64> =
                schema.time_vars.iter().zip(&binding).map(|(v, &x)| (v.clone(), i64::from(x))).collect();
            let mut lookup = |a: GroundAtom| -> Result<AtomId> { Ok(voc.intern(a)) };
            if let Some(r) = instantiate(&schema, &env, h, &binding, &mut lookup)? {
                rules.push(r);
            }
        }
    }

    finish(d.clone(), voc, theory, rules)
}

fn ground_or_err(
    f: &Formula,
    now: Option<i64>,
    h: u32,
    lookup: &mut dyn FnMut(GroundAtom) -> Result<AtomId>,
) -> Result<GroundFormula> {
    ground_with(f, &BTreeMap::new(), now, h, lookup).map_err(|e| match e {
        GroundErr::Range => Error::HorizonOverflow { what: "fact".into(), value: -1, horizon: h },
        GroundErr::Other(e) => e,
    })
}

fn instantiate(
    schema: &crate::lang::InferenceRule,
    env: &BTreeMap<String, i64>,
    h: u32,
    binding: &[u32],
    lookup: &mut dyn FnMut(GroundAtom) -> Result<AtomId>,
) -> Result<Option<GroundRule>> {
    // Unit-step rules never start at H.
    if matches!(schema.kind, RuleKind::Frame | RuleKind::Ramification) && binding[0] >= h {
        return Ok(None);
    }
    let mut premises = Vec::new();
    for p in &schema.premises {
        match ground_with(p, env, None, h, lookup) {
            Ok(g) => split_conjunction(g, &mut premises),
            Err(GroundErr::Range) => return Ok(None),
            Err(GroundErr::Other(e)) => return Err(e),
        }
    }
    if premises.contains(&GroundFormula::Const(false)) {
        return Ok(None);
    }
    premises.retain(|p| *p != GroundFormula::Const(true));
    let cons = match ground_with(&schema.consequence, env, None, h, lookup) {
        Ok(g) => g,
        // A consequence mentioning FA at H has no such assumption; keep the fluent part.
        Err(GroundErr::Range) => match &schema.consequence {
            Formula::Bin(BinOp::And, a, _) => match ground_with(a, env, None, h, lookup) {
                Ok(g) => g,
                Err(GroundErr::Range) => return Ok(None),
                Err(GroundErr::Other(e)) => return Err(e),
            },
            _ => return Ok(None),
        },
        Err(GroundErr::Other(e)) => return Err(e),
    };
    let consequence = cons
        .as_lit_conjunction()
        .ok_or_else(|| Error::Validation("rule consequence is not a conjunction of literals".into()))?;
    Ok(Some(GroundRule { kind: schema.kind, source: schema.source, binding: binding.to_vec(), premises, consequence }))
}

fn finish(
    domain: DomainDescription,
    voc: Vocab,
    theory: Vec<GroundFormula>,
    rules: Vec<GroundRule>,
) -> Result<GroundDomain> {
    let n = voc.atoms.len();
    // Γ: units plus the rest, simplified by unit propagation.
    let mut units: BTreeMap<AtomId, bool> = BTreeMap::new();
    let mut complex = Vec::new();
    let mut unit_clash = false;
    for g in &theory {
        match g.as_lit_conjunction() {
            Some(ls) => {
                for (a, p) in ls {
                    if units.insert(a, p) == Some(!p) {
                        unit_clash = true;
                    }
                }
            }
            None => complex.push(g.clone()),
        }
    }
    let residual = solver_clauses(&complex, n);
    let residual_vars = residual.iter().flatten().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0).max(n);
    let mut solver = Solver::new(residual_vars);
    for c in &residual {
        solver.add_clause(c);
    }
    let assumptions: Vec<Lit> = units.iter().map(|(&a, &p)| lit_of(a, p)).collect();
    let gamma_satisfiable = !unit_clash && solver.solve(&assumptions);

    // Units implied by Γ's complex part: probe each atom that occurs in it.
    let mut residual_atoms = Bits::new(n);
    for g in &complex {
        let mut s = BTreeSet::new();
        g.atoms(&mut s);
        for a in s {
            residual_atoms.insert(a);
        }
    }
    if gamma_satisfiable {
        for a in residual_atoms.iter().collect::<Vec<_>>() {
            if units.contains_key(&a) {
                continue;
            }
            for p in [true, false] {
                let mut asm = assumptions.clone();
                asm.push(lit_of(a, !p));
                if !solver.solve(&asm) {
                    units.insert(a, p);
                }
            }
        }
    }

    // Occurrences entailed by Γ.
    let mut occurrences = Vec::new();
    let all_units: Vec<Lit> = units.iter().map(|(&a, &p)| lit_of(a, p)).collect();
    for (i, atom) in voc.atoms.iter().enumerate() {
        if let GroundAtom::Occ(t, a, u) = atom {
            let entailed = !gamma_satisfiable || units.get(&i) == Some(&true) || {
                let mut asm = all_units.clone();
                asm.push(lit_of(i, false));
                residual_atoms.contains(i) && !solver.solve(&asm)
            };
            if entailed && (theory_mentions(&theory, i)) {
                occurrences.push((*t, a.clone(), *u));
            }
        }
    }
    occurrences.sort();

    // Occurrence atoms that appear in Γ; rules needing any other occurrence are inert.
    let mut gamma_atoms = BTreeSet::new();
    for g in &theory {
        g.atoms(&mut gamma_atoms);
    }
    let mut inert = Bits::new(rules.len());
    let mut relevant: BTreeSet<Assumption> = BTreeSet::new();
    for t in 0..domain.horizon {
        for l in domain.signature.literals() {
            relevant.insert(Assumption::fa(t, l));
        }
    }
    for (ri, r) in rules.iter().enumerate() {
        let occ_ok = r.premises.iter().all(|p| match p {
            GroundFormula::Lit(a, true) if matches!(voc.atoms[*a], GroundAtom::Occ(..)) => gamma_atoms.contains(a),
            _ => true,
        });
        if !occ_ok {
            inert.insert(ri);
            continue;
        }
        if matches!(r.kind, RuleKind::Action | RuleKind::Ramification) {
            for p in &r.premises {
                if let GroundFormula::Lit(a, true) = p {
                    if let GroundAtom::AQAt(..) = voc.atoms[*a] {
                        relevant.insert(voc.atoms[*a].to_assumption().expect("AQ atom"));
                    }
                }
            }
        }
    }
    let universe: Vec<Assumption> = relevant.into_iter().collect();
    let universe_atoms: Vec<AtomId> = universe.iter().map(|a| voc.index[&GroundAtom::from_assumption(a)]).collect();
    let universe_pos = universe_atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let rule_index = crate::deduction::RuleIndex::build(&rules, n);
    Ok(GroundDomain {
        rule_index,
        domain,
        atoms: voc.atoms,
        index: voc.index,
        theory,
        rules,
        universe,
        universe_atoms,
        occurrences,
        gamma_satisfiable,
        base_units: units.into_iter().collect(),
        residual,
        residual_vars,
        residual_atoms,
        inert,
        universe_pos,
    })
}

fn theory_mentions(theory: &[GroundFormula], a: AtomId) -> bool {
    theory.iter().any(|g| {
        let mut s = BTreeSet::new();
        g.atoms(&mut s);
        s.contains(&a)
    })
}

pub(crate) fn lit_of(a: AtomId, p: bool) -> Lit {
    let v = (a + 1) as Lit;
    if p {
        v
    } else {
        -v
    }
}

/// Re-encode `complex` into plain clauses (the solver keeps its clauses private).
fn solver_clauses(complex: &[GroundFormula], n: usize) -> Vec<Vec<Lit>> {
    let mut rec = Recorder { next: n as Lit, clauses: Vec::new() };
    for g in complex {
        let l = rec.encode(g);
        rec.clauses.push(vec![l]);
    }
    rec.clauses
}

/// Tseitin encoder that records clauses instead of solving.
pub(crate) struct Recorder {
    pub next: Lit,
    pub clauses: Vec<Vec<Lit>>,
}

impl Recorder {
    pub fn new(first_free_var: usize) -> Self {
        Recorder { next: first_free_var as Lit, clauses: Vec::new() }
    }

    fn fresh(&mut self) -> Lit {
        self.next += 1;
        self.next
    }

    pub fn encode(&mut self, g: &GroundFormula) -> Lit {
        match g {
            GroundFormula::Const(b) => {
                let v = self.fresh();
                self.clauses.push(vec![if *b { v } else { -v }]);
                v
            }
            GroundFormula::Lit(a, p) => lit_of(*a, *p),
            GroundFormula::Not(x) => -self.encode(x),
            GroundFormula::And(gs) | GroundFormula::Or(gs) => {
                let is_and = matches!(g, GroundFormula::And(_));
                let ls: Vec<Lit> = gs
                    .iter()
                    .map(|x| {
                        let l = self.encode(x);
                        if is_and {
                            l
                        } else {
                            -l
                        }
                    })
                    .collect();
                let v = self.fresh();
                let mut big = vec![v];
                for &l in &ls {
                    self.clauses.push(vec![-v, l]);
                    big.push(-l);
                }
                self.clauses.push(big);
                if is_and {
                    v
                } else {
                    -v
                }
            }
            GroundFormula::Implies(a, b) => {
                self.encode(&GroundFormula::Or(vec![(**a).clone().negated(), (**b).clone()]))
            }
            GroundFormula::Iff(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.push(vec![-v, -x, y]);
                self.clauses.push(vec![-v, x, -y]);
                self.clauses.push(vec![v, x, y]);
                self.clauses.push(vec![v, -x, -y]);
                v
            }
        }
    }
}

/// The relevant assumption universe of a grounded domain.
pub fn relevant_assumptions(g: &GroundDomain) -> Vec<Assumption> {
    g.universe.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{resolve_times, DomainBuilder, Literal};

    pub(crate) fn ysp(q: bool) -> DomainDescription {
        DomainBuilder::new("yale", 3)
            .fluents(&["alive", "loaded"])
            .actions(&["load", "wait", "shoot"])
            .effect("load", vec![], Literal::pos("loaded"), q)
            .effect("shoot", vec![Formula::Fluent("loaded".into())], Literal::neg("alive"), q)
            .effect("shoot", vec![], Literal::neg("loaded"), q)
            .fact_literal(0, Literal::pos("alive"))
            .occurs(0, 1, "load")
            .occurs(1, 2, "wait")
            .occurs(2, 3, "shoot")
            .build()
            .unwrap()
    }

    fn g(d: &DomainDescription) -> GroundDomain {
        ground(&resolve_times(d).unwrap()).unwrap()
    }

    #[test]
    fn ysp_instance_counts() {
        let gd = g(&ysp(false));
        assert_eq!(gd.rules_of_kind(RuleKind::Frame).count(), 12);
        let shoot_alive = gd.rules.iter().filter(|r| r.kind == RuleKind::Action && r.source == Some(1)).count();
        assert_eq!(shoot_alive, 6);
    }

    #[test]
    fn s_domain_has_no_aq_in_universe() {
        let gd = g(&ysp(false));
        assert_eq!(gd.universe.len(), 12);
        assert!(gd.universe.iter().all(Assumption::is_frame));
    }

    #[test]
    fn q_universe_keeps_only_asserted_intervals() {
        let gd = g(&ysp(true));
        let tag = QualTag::ActionEffect("shoot".into(), Literal::neg("alive"));
        assert!(gd.universe.contains(&Assumption::aq(2, 3, tag.clone())));
        assert!(!gd.universe.contains(&Assumption::aq(0, 1, tag)));
        assert_eq!(gd.universe.iter().filter(|a| a.is_qual()).count(), 3);
    }

    #[test]
    fn minimal_domain() {
        let d = DomainBuilder::new("d", 1).fluents(&["f"]).build().unwrap();
        let gd = g(&d);
        assert_eq!(gd.universe, [Assumption::fa(0, Literal::pos("f")), Assumption::fa(0, Literal::neg("f"))]);
        let d = DomainBuilder::new("d", 1).fluents(&["f"]).inertia(crate::lang::Inertia::Only(vec![])).build().unwrap();
        assert!(g(&d).rules.is_empty());
    }

    #[test]
    fn grounding_is_deterministic() {
        let (a, b) = (g(&ysp(true)), g(&ysp(true)));
        assert_eq!(a.atoms, b.atoms);
        assert_eq!(a.rules, b.rules);
    }

    #[test]
    fn occurrences_entailed() {
        let gd = g(&ysp(false));
        assert_eq!(gd.occurrences.len(), 3);
        assert!(gd.gamma_satisfiable);
    }

    #[test]
    fn rule_shapes_survive_grounding() {
        let gd = g(&ysp(true));
        for r in &gd.rules {
            match r.kind {
                RuleKind::Frame => {
                    assert_eq!(r.premises.len(), 2);
                    assert_eq!(r.consequence.len(), 1);
                }
                RuleKind::Action => {
                    assert!(r.consequence.len() == 2 && !r.consequence[1].1);
                    assert!(matches!(gd.atoms[r.consequence[1].0], GroundAtom::FAAt(..)));
                }
                _ => {}
            }
        }
    }
}
