//! The timed propositional language: literals, time expressions, formulas,
//! assumptions, rule declarations and domain descriptions.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// A fluent or its negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub fluent: String,
    pub positive: bool,
}

impl Literal {
    pub fn new(fluent: &str, positive: bool) -> Self {
        Literal { fluent: fluent.to_owned(), positive }
    }

    pub fn pos(fluent: &str) -> Self {
        Literal::new(fluent, true)
    }

    pub fn neg(fluent: &str) -> Self {
        Literal::new(fluent, false)
    }

    pub fn negate(&self) -> Self {
        negate(self)
    }
}

/// Flip the polarity of a literal.
pub fn negate(l: &Literal) -> Literal {
    Literal { fluent: l.fluent.clone(), positive: !l.positive }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.fluent.cmp(&other.fluent).then_with(|| other.positive.cmp(&self.positive))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            f.write_str(&self.fluent)
        } else {
            write!(f, "¬{}", self.fluent)
        }
    }
}

/// What a time expression is measured from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimeBase {
    /// Absolute integer time; the value is the offset.
    Zero,
    /// The origin `Θ`.
    Origin,
    /// A rule variable such as `t` or `u`.
    Var(String),
    /// A named constant fixed by `order` statements.
    Const(String),
}

/// `base + offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeExpr {
    pub base: TimeBase,
    pub offset: i64,
}

impl TimeExpr {
    pub fn int(t: i64) -> Self {
        TimeExpr { base: TimeBase::Zero, offset: t }
    }

    pub fn origin(succ: i64) -> Self {
        TimeExpr { base: TimeBase::Origin, offset: succ }
    }

    pub fn var(name: &str) -> Self {
        TimeExpr { base: TimeBase::Var(name.to_owned()), offset: 0 }
    }

    pub fn constant(name: &str) -> Self {
        TimeExpr { base: TimeBase::Const(name.to_owned()), offset: 0 }
    }

    pub fn plus(&self, k: i64) -> Self {
        TimeExpr { base: self.base.clone(), offset: self.offset + k }
    }

    /// The integer value, if the expression is absolute.
    pub fn as_int(&self) -> Option<i64> {
        match self.base {
            TimeBase::Zero => Some(self.offset),
            _ => None,
        }
    }

    /// Substitute integer values for variables; other bases are left alone.
    pub fn bind(&self, env: &BTreeMap<String, i64>) -> TimeExpr {
        match &self.base {
            TimeBase::Var(v) | TimeBase::Const(v) if env.contains_key(v) => TimeExpr::int(env[v] + self.offset),
            TimeBase::Origin if env.contains_key("Θ") => TimeExpr::int(env["Θ"] + self.offset),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.base {
            TimeBase::Zero => return write!(f, "{}", self.offset),
            TimeBase::Origin => "theta",
            TimeBase::Var(v) | TimeBase::Const(v) => v.as_str(),
        };
        match self.offset.cmp(&0) {
            Ordering::Equal => f.write_str(name),
            Ordering::Greater => write!(f, "{}+{}", name, self.offset),
            Ordering::Less => write!(f, "{}-{}", name, -self.offset),
        }
    }
}

/// How a qualification assumption is tagged.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QualTag {
    /// `AQ_{α−l}`: the effect `l` of action `α` is qualified.
    ActionEffect(String, Literal),
    /// `AQ_l`: untagged effect qualification.
    PlainEffect(Literal),
    /// Unit-interval `[τ]AQ_l` guarding a ramification rule.
    Ramification(Literal),
}

impl QualTag {
    pub fn literal(&self) -> &Literal {
        match self {
            QualTag::ActionEffect(_, l) | QualTag::PlainEffect(l) | QualTag::Ramification(l) => l,
        }
    }
}

impl fmt::Display for QualTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QualTag::ActionEffect(a, l) => write!(f, "{a}->{l}"),
            QualTag::PlainEffect(l) | QualTag::Ramification(l) => write!(f, "{l}"),
        }
    }
}

/// A ground assumption: `[t]FA_l` or `[t,u]AQ_x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assumption {
    Frame { time: u32, literal: Literal },
    Qual { from: u32, to: u32, tag: QualTag },
}

impl Assumption {
    pub fn fa(time: u32, literal: Literal) -> Self {
        Assumption::Frame { time, literal }
    }

    pub fn aq(from: u32, to: u32, tag: QualTag) -> Self {
        Assumption::Qual { from, to, tag }
    }

    pub fn is_frame(&self) -> bool {
        matches!(self, Assumption::Frame { .. })
    }

    pub fn is_qual(&self) -> bool {
        !self.is_frame()
    }

    /// Start time of the assumption.
    pub fn time(&self) -> u32 {
        match self {
            Assumption::Frame { time, .. } => *time,
            Assumption::Qual { from, .. } => *from,
        }
    }
}

/// Renders the token syntax `FA@t(lit)`, `AQ@t..u(action->lit)`, `AQ@t(lit)`.
impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::Frame { time, literal } => write!(f, "FA@{time}({literal})"),
            Assumption::Qual { from, tag: tag @ QualTag::Ramification(_), .. } => {
                write!(f, "AQ@{from}({tag})")
            }
            Assumption::Qual { from, to, tag } => write!(f, "AQ@{from}..{to}({tag})"),
        }
    }
}

/// An assumption atom inside a formula, with unresolved times.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AssumptionExpr {
    Frame(TimeExpr, Literal),
    Qual(TimeExpr, TimeExpr, QualTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Lt,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

/// Formulas of the domain language.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Fluent(String),
    Cmp(CmpOp, TimeExpr, TimeExpr),
    Not(Box<Formula>),
    Bin(BinOp, Box<Formula>, Box<Formula>),
    At(TimeExpr, Box<Formula>),
    Occ(TimeExpr, TimeExpr, String),
    Assume(AssumptionExpr),
}

impl Formula {
    pub fn negated(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn bin(op: BinOp, a: Formula, b: Formula) -> Formula {
        Formula::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::And, a, b)
    }

    pub fn at(t: TimeExpr, f: Formula) -> Formula {
        Formula::At(t, Box::new(f))
    }

    /// The literal `l` as a formula without a binder.
    pub fn literal(l: &Literal) -> Formula {
        let atom = Formula::Fluent(l.fluent.clone());
        if l.positive {
            atom
        } else {
            Formula::negated(atom)
        }
    }

    /// `[t]l`.
    pub fn lit_at(t: TimeExpr, l: &Literal) -> Formula {
        Formula::at(t, Formula::literal(l))
    }

    pub fn occ(t: TimeExpr, u: TimeExpr, action: &str) -> Formula {
        Formula::Occ(t, u, action.to_owned())
    }

    pub fn fa(t: TimeExpr, l: &Literal) -> Formula {
        Formula::Assume(AssumptionExpr::Frame(t, l.clone()))
    }

    pub fn aq(t: TimeExpr, u: TimeExpr, tag: QualTag) -> Formula {
        Formula::Assume(AssumptionExpr::Qual(t, u, tag))
    }

    /// Whether a fluent occurs outside every `[τ]` binder.
    pub fn has_free_fluent(&self) -> bool {
        match self {
            Formula::Fluent(_) => true,
            Formula::Not(a) => a.has_free_fluent(),
            Formula::Bin(_, a, b) => a.has_free_fluent() || b.has_free_fluent(),
            _ => false,
        }
    }

    /// Whether an occurrence or assumption atom occurs anywhere.
    pub fn has_event_or_assumption(&self) -> bool {
        match self {
            Formula::Occ(..) | Formula::Assume(_) => true,
            Formula::Not(a) | Formula::At(_, a) => a.has_event_or_assumption(),
            Formula::Bin(_, a, b) => a.has_event_or_assumption() || b.has_event_or_assumption(),
            _ => false,
        }
    }

    pub fn has_assumption(&self) -> bool {
        match self {
            Formula::Assume(_) => true,
            Formula::Not(a) | Formula::At(_, a) => a.has_assumption(),
            Formula::Bin(_, a, b) => a.has_assumption() || b.has_assumption(),
            _ => false,
        }
    }

    /// Apply `f` to every time expression.
    pub fn map_times(&self, f: &mut impl FnMut(&TimeExpr) -> TimeExpr) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Fluent(_) => self.clone(),
            Formula::Cmp(op, a, b) => Formula::Cmp(*op, f(a), f(b)),
            Formula::Not(a) => Formula::negated(a.map_times(f)),
            Formula::Bin(op, a, b) => Formula::bin(*op, a.map_times(f), b.map_times(f)),
            Formula::At(t, a) => Formula::at(f(t), a.map_times(f)),
            Formula::Occ(t, u, a) => Formula::Occ(f(t), f(u), a.clone()),
            Formula::Assume(AssumptionExpr::Frame(t, l)) => Formula::Assume(AssumptionExpr::Frame(f(t), l.clone())),
            Formula::Assume(AssumptionExpr::Qual(t, u, tag)) => {
                Formula::Assume(AssumptionExpr::Qual(f(t), f(u), tag.clone()))
            }
        }
    }

    /// Visit every time expression.
    pub fn for_each_time(&self, f: &mut impl FnMut(&TimeExpr)) {
        self.map_times(&mut |t| {
            f(t);
            t.clone()
        });
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::At(_, a) => a.visit(f),
            Formula::Bin(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Fluent names and action names mentioned in the formula.
    pub fn names(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let (mut fl, mut ac) = (BTreeSet::new(), BTreeSet::new());
        self.visit(&mut |g| match g {
            Formula::Fluent(x) => {
                fl.insert(x.clone());
            }
            Formula::Occ(_, _, a) => {
                ac.insert(a.clone());
            }
            Formula::Assume(AssumptionExpr::Frame(_, l)) => {
                fl.insert(l.fluent.clone());
            }
            Formula::Assume(AssumptionExpr::Qual(_, _, tag)) => {
                fl.insert(tag.literal().fluent.clone());
                if let QualTag::ActionEffect(a, _) = tag {
                    ac.insert(a.clone());
                }
            }
            _ => {}
        });
        (fl, ac)
    }

    /// If the formula is a conjunction of `[t]l` with absolute times, return them.
    pub fn as_timed_literals(&self) -> Option<Vec<(i64, Literal)>> {
        fn lit(f: &Formula, positive: bool) -> Option<Literal> {
            match f {
                Formula::Fluent(x) => Some(Literal::new(x, positive)),
                Formula::Not(a) => lit(a, !positive),
                _ => None,
            }
        }
        match self {
            Formula::At(t, a) => Some(vec![(t.as_int()?, lit(a, true)?)]),
            Formula::Not(a) => match &**a {
                Formula::At(t, b) => Some(vec![(t.as_int()?, lit(b, false)?)]),
                _ => None,
            },
            Formula::Bin(BinOp::And, a, b) => {
                let mut v = a.as_timed_literals()?;
                v.extend(b.as_timed_literals()?);
                Some(v)
            }
            _ => None,
        }
    }
}

/// Kinds of inference rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Frame,
    Action,
    Qualification,
    Ramification,
}

/// A rule schema over time variables, in the generic premises/consequence form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceRule {
    pub kind: RuleKind,
    pub premises: Vec<Formula>,
    pub consequence: Formula,
    pub time_vars: Vec<String>,
    /// Index of the declaration in [`DomainDescription::decls`]; `None` for frame rules.
    pub source: Option<usize>,
}

/// What a `qual` statement disqualifies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QualTarget {
    /// `qual L [by A] ... over [t,u]`. Without `by` it applies to every
    /// qualified effect rule for `L`.
    Effect { literal: Literal, action: Option<String> },
    /// `qual L if ...;` for the unit AQ of a ramification rule.
    Ramification(Literal),
}

/// A rule as written in a domain file.
///
/// Conditions may use fluents without a binder; they are read at the rule's
/// start time `t`. Explicit binders may use the variables `t` and `u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleDecl {
    Effect {
        action: String,
        conditions: Vec<Formula>,
        effect: Literal,
        qualified: bool,
        /// The effect holds at every point of `[t,u]` instead of only at `u`.
        throughout: bool,
    },
    Qual {
        target: QualTarget,
        conditions: Vec<Formula>,
    },
    Ramify {
        conditions: Vec<Formula>,
        effect: Literal,
    },
}

impl RuleDecl {
    pub fn conditions(&self) -> &[Formula] {
        match self {
            RuleDecl::Effect { conditions, .. }
            | RuleDecl::Qual { conditions, .. }
            | RuleDecl::Ramify { conditions, .. } => conditions,
        }
    }
}

/// Which literals are subject to inertia.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inertia {
    All,
    Only(Vec<Literal>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderRel {
    Le,
    Lt,
}

/// `a R1 b R2 c ...` among time constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderChain {
    pub first: TimeExpr,
    pub rest: Vec<(OrderRel, TimeExpr)>,
}

/// Which semantics family a domain belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// No qualification assumptions at all.
    S,
    /// Qualification assumptions, no ramification rules.
    Q,
    /// Ramification rules present.
    AD,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub fluents: Vec<String>,
    pub actions: Vec<String>,
}

impl Signature {
    /// `F*` in declaration order, positive literal first.
    pub fn literals(&self) -> Vec<Literal> {
        self.fluents.iter().flat_map(|f| [Literal::pos(f), Literal::neg(f)]).collect()
    }

    /// Names `da_l` of the dummy actions, one per literal.
    pub fn dummy_actions(&self) -> Vec<String> {
        self.literals().iter().map(|l| format!("da_{l}")).collect()
    }
}

/// A domain description `⟨L_D, R, AB, Γ⟩` over a finite horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainDescription {
    pub name: String,
    pub signature: Signature,
    pub horizon: u32,
    pub inertia: Inertia,
    pub decls: Vec<RuleDecl>,
    pub theory: Vec<Formula>,
    pub time_constraints: Vec<OrderChain>,
    pub mode: Mode,
}

fn t_var() -> TimeExpr {
    TimeExpr::var("t")
}

fn u_var() -> TimeExpr {
    TimeExpr::var("u")
}

/// Bind free fluents of a condition to `t`.
fn bind_condition(c: &Formula) -> Formula {
    if c.has_free_fluent() {
        Formula::at(t_var(), c.clone())
    } else {
        c.clone()
    }
}

impl DomainDescription {
    /// The mode implied by the rules present.
    pub fn infer_mode(&self) -> Mode {
        let mut q = false;
        for d in &self.decls {
            match d {
                RuleDecl::Ramify { .. } => return Mode::AD,
                RuleDecl::Effect { qualified: true, .. } | RuleDecl::Qual { .. } => q = true,
                RuleDecl::Effect { .. } => {}
            }
        }
        if q {
            Mode::Q
        } else {
            Mode::S
        }
    }

    pub fn inertial_literals(&self) -> Vec<Literal> {
        match &self.inertia {
            Inertia::All => self.signature.literals(),
            Inertia::Only(ls) => ls.clone(),
        }
    }

    /// Whether some qualified effect rule concludes `l`.
    fn qualified_effects_for(&self, l: &Literal) -> Vec<String> {
        let mut out = Vec::new();
        for d in &self.decls {
            if let RuleDecl::Effect { action, effect, qualified: true, .. } = d {
                if effect == l && !out.contains(action) {
                    out.push(action.clone());
                }
            }
        }
        out
    }

    /// All rule schemata, frame rules first, then declarations in order.
    ///
    /// A `qual` without `by` expands into one schema per qualified effect rule
    /// for the same literal, or a single `PlainEffect` schema if there is none.
    pub fn rules(&self) -> Vec<InferenceRule> {
        let t = t_var();
        let mut out = Vec::new();
        for l in self.inertial_literals() {
            out.push(InferenceRule {
                kind: RuleKind::Frame,
                premises: vec![Formula::lit_at(t.clone(), &l), Formula::fa(t.clone(), &l)],
                consequence: Formula::lit_at(t.plus(1), &l),
                time_vars: vec!["t".into()],
                source: None,
            });
        }
        for (i, d) in self.decls.iter().enumerate() {
            match d {
                RuleDecl::Effect { action, conditions, effect, qualified, throughout } => {
                    let mut premises: Vec<Formula> = conditions.iter().map(bind_condition).collect();
                    premises.push(Formula::Cmp(CmpOp::Lt, t.clone(), u_var()));
                    premises.push(Formula::occ(t.clone(), u_var(), action));
                    if *qualified {
                        premises.push(Formula::aq(
                            t.clone(),
                            u_var(),
                            QualTag::ActionEffect(action.clone(), effect.clone()),
                        ));
                    }
                    let (consequence, vars) = if *throughout {
                        let s = TimeExpr::var("s");
                        premises.push(Formula::negated(Formula::Cmp(CmpOp::Lt, s.clone(), t.clone())));
                        premises.push(Formula::negated(Formula::Cmp(CmpOp::Lt, u_var(), s.clone())));
                        (
                            Formula::and(
                                Formula::lit_at(s.clone(), effect),
                                Formula::negated(Formula::fa(s, &effect.negate())),
                            ),
                            vec!["t".into(), "u".into(), "s".into()],
                        )
                    } else {
                        (
                            Formula::and(
                                Formula::lit_at(u_var(), effect),
                                Formula::negated(Formula::fa(t.clone(), &effect.negate())),
                            ),
                            vec!["t".into(), "u".into()],
                        )
                    };
                    out.push(InferenceRule {
                        kind: RuleKind::Action,
                        premises,
                        consequence,
                        time_vars: vars,
                        source: Some(i),
                    });
                }
                RuleDecl::Qual { target, conditions } => {
                    let mut premises: Vec<Formula> = conditions.iter().map(bind_condition).collect();
                    match target {
                        QualTarget::Effect { literal, action } => {
                            premises.push(Formula::Cmp(CmpOp::Lt, t.clone(), u_var()));
                            let tags: Vec<QualTag> = match action {
                                Some(a) => vec![QualTag::ActionEffect(a.clone(), literal.clone())],
                                None => {
                                    let acts = self.qualified_effects_for(literal);
                                    if acts.is_empty() {
                                        vec![QualTag::PlainEffect(literal.clone())]
                                    } else {
                                        acts.into_iter().map(|a| QualTag::ActionEffect(a, literal.clone())).collect()
                                    }
                                }
                            };
                            for tag in tags {
                                out.push(InferenceRule {
                                    kind: RuleKind::Qualification,
                                    premises: premises.clone(),
                                    consequence: Formula::negated(Formula::aq(t.clone(), u_var(), tag)),
                                    time_vars: vec!["t".into(), "u".into()],
                                    source: Some(i),
                                });
                            }
                        }
                        QualTarget::Ramification(l) => out.push(InferenceRule {
                            kind: RuleKind::Qualification,
                            premises,
                            consequence: Formula::negated(Formula::aq(
                                t.clone(),
                                t.plus(1),
                                QualTag::Ramification(l.clone()),
                            )),
                            time_vars: vec!["t".into()],
                            source: Some(i),
                        }),
                    }
                }
                RuleDecl::Ramify { conditions, effect } => {
                    let mut premises: Vec<Formula> = conditions.iter().map(bind_condition).collect();
                    premises.push(Formula::aq(t.clone(), t.plus(1), QualTag::Ramification(effect.clone())));
                    out.push(InferenceRule {
                        kind: RuleKind::Ramification,
                        premises,
                        consequence: Formula::and(
                            Formula::lit_at(t.plus(1), effect),
                            Formula::negated(Formula::fa(t.clone(), &effect.negate())),
                        ),
                        time_vars: vec!["t".into()],
                        source: Some(i),
                    });
                }
            }
        }
        out
    }

    /// Check signature closure, formula placement and mode consistency.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        let sig = &self.signature;
        if sig.fluents.is_empty() {
            return bad("no fluents declared".into());
        }
        if self.horizon < 1 {
            return bad("horizon must be at least 1".into());
        }
        let fluents: BTreeSet<&String> = sig.fluents.iter().collect();
        let actions: BTreeSet<&String> = sig.actions.iter().collect();
        if fluents.len() != sig.fluents.len() {
            return bad("duplicate fluent declaration".into());
        }
        if actions.len() != sig.actions.len() {
            return bad("duplicate action declaration".into());
        }
        if let Some(x) = fluents.intersection(&actions).next() {
            return bad(format!("`{x}` is declared both as a fluent and an action"));
        }
        let check_names = |f: &Formula| -> Result<()> {
            let (fl, ac) = f.names();
            if let Some(x) = fl.iter().find(|x| !fluents.contains(x)) {
                return Err(Error::Validation(format!("undeclared fluent `{x}`")));
            }
            if let Some(x) = ac.iter().find(|x| !actions.contains(x)) {
                return Err(Error::Validation(format!("undeclared action `{x}`")));
            }
            Ok(())
        };
        let check_lit = |l: &Literal| -> Result<()> {
            if fluents.contains(&l.fluent) {
                Ok(())
            } else {
                Err(Error::Validation(format!("undeclared fluent `{}`", l.fluent)))
            }
        };
        let check_action = |a: &String| -> Result<()> {
            if actions.contains(a) {
                Ok(())
            } else {
                Err(Error::Validation(format!("undeclared action `{a}`")))
            }
        };
        if let Inertia::Only(ls) = &self.inertia {
            for l in ls {
                check_lit(l)?;
            }
        }
        for f in &self.theory {
            check_names(f)?;
            if f.has_assumption() {
                return bad("assumption atoms are not allowed in facts".into());
            }
            check_placement(f, false)?;
            let mut var = None;
            f.for_each_time(&mut |t| {
                if let TimeBase::Var(v) = &t.base {
                    var = Some(v.clone());
                }
            });
            if let Some(v) = var {
                return bad(format!("time variable `{v}` is not allowed in facts"));
            }
        }
        for d in &self.decls {
            for c in d.conditions() {
                check_names(c)?;
                if c.has_event_or_assumption() {
                    return bad("occurrence and assumption atoms are not allowed in rule conditions".into());
                }
                let mut bad_var = None;
                c.for_each_time(&mut |t| {
                    if let TimeBase::Var(v) = &t.base {
                        let ok = match d {
                            RuleDecl::Effect { .. } | RuleDecl::Qual { target: QualTarget::Effect { .. }, .. } => {
                                v == "t" || v == "u"
                            }
                            _ => v == "t",
                        };
                        if !ok {
                            bad_var = Some(v.clone());
                        }
                    }
                });
                if let Some(v) = bad_var {
                    return bad(format!("unbound time variable `{v}` in rule condition"));
                }
            }
            match d {
                RuleDecl::Effect { action, effect, .. } => {
                    check_action(action)?;
                    check_lit(effect)?;
                }
                RuleDecl::Qual { target: QualTarget::Effect { literal, action }, .. } => {
                    check_lit(literal)?;
                    if let Some(a) = action {
                        check_action(a)?;
                    }
                }
                RuleDecl::Qual { target: QualTarget::Ramification(l), .. } => check_lit(l)?,
                RuleDecl::Ramify { effect, .. } => check_lit(effect)?,
            }
        }
        for ch in &self.time_constraints {
            for t in core::iter::once(&ch.first).chain(ch.rest.iter().map(|(_, t)| t)) {
                if let TimeBase::Var(v) = &t.base {
                    return bad(format!("time variable `{v}` is not allowed in order statements"));
                }
            }
        }
        let inferred = self.infer_mode();
        if self.mode == Mode::S && inferred != Mode::S {
            return bad("S-mode domain uses qualification assumptions".into());
        }
        if self.mode == Mode::Q && inferred == Mode::AD {
            return bad("Q-mode domain contains ramification rules".into());
        }
        Ok(())
    }
}

/// Occurrence and assumption atoms must not sit below a `[τ]` binder.
fn check_placement(f: &Formula, under_binder: bool) -> Result<()> {
    match f {
        Formula::Occ(t, u, _) => {
            if under_binder {
                return Err(Error::Validation("occurrence atom under a time binder".into()));
            }
            if let (Some(a), Some(b)) = (t.as_int(), u.as_int()) {
                if a >= b {
                    return Err(Error::Validation(format!("empty occurrence interval [{a},{b}]")));
                }
            }
            Ok(())
        }
        Formula::Assume(_) if under_binder => Err(Error::Validation("assumption atom under a time binder".into())),
        Formula::Not(a) => check_placement(a, under_binder),
        Formula::At(_, a) => check_placement(a, true),
        Formula::Bin(_, a, b) => {
            check_placement(a, under_binder)?;
            check_placement(b, under_binder)
        }
        _ => Ok(()),
    }
}

/// Assign integers to `Θ` and the named constants and substitute them.
///
/// `Θ` is 0 and every constant gets the least value allowed by the `order`
/// statements. Afterwards every time in the theory and the constraints is
/// absolute and inside `[0, H]`.
pub fn resolve_times(d: &DomainDescription) -> Result<DomainDescription> {
    let env = solve_time_constraints(d)?;
    let subst = |t: &TimeExpr| -> TimeExpr {
        match &t.base {
            TimeBase::Origin => TimeExpr::int(t.offset),
            TimeBase::Const(c) => TimeExpr::int(env[c] + t.offset),
            _ => t.clone(),
        }
    };
    let mut out = d.clone();
    out.theory = d.theory.iter().map(|f| f.map_times(&mut |t| subst(t))).collect();
    for ch in &mut out.time_constraints {
        ch.first = subst(&ch.first);
        for (_, t) in &mut ch.rest {
            *t = subst(t);
        }
    }
    let h = i64::from(d.horizon);
    let mut overflow = None;
    for (orig, f) in d.theory.iter().zip(&out.theory) {
        let mut origs = Vec::new();
        orig.for_each_time(&mut |t| origs.push(t.clone()));
        let mut k = 0;
        f.for_each_time(&mut |t| {
            if let Some(v) = t.as_int() {
                if (v < 0 || v > h) && overflow.is_none() {
                    overflow = Some((origs[k].to_string(), v));
                }
            }
            k += 1;
        });
    }
    if let Some((what, value)) = overflow {
        return Err(Error::HorizonOverflow { what, value, horizon: d.horizon });
    }
    Ok(out)
}

/// The least assignment to `Θ` and the named constants.
pub fn solve_time_constraints(d: &DomainDescription) -> Result<BTreeMap<String, i64>> {
    let mut names: Vec<String> = Vec::new();
    let note = |t: &TimeExpr, names: &mut Vec<String>| {
        if let TimeBase::Const(c) = &t.base {
            if !names.contains(c) {
                names.push(c.clone());
            }
        }
    };
    for ch in &d.time_constraints {
        note(&ch.first, &mut names);
        for (_, t) in &ch.rest {
            note(t, &mut names);
        }
    }
    for f in &d.theory {
        f.for_each_time(&mut |t| note(t, &mut names));
    }
    // Node 0 is the origin, node i+1 is names[i]; edge (a, b, w) means value(b) >= value(a) + w.
    let node = |t: &TimeExpr| -> Option<usize> {
        match &t.base {
            TimeBase::Origin => Some(0),
            TimeBase::Const(c) => names.iter().position(|n| n == c).map(|i| i + 1),
            TimeBase::Zero => Some(0),
            TimeBase::Var(_) => None,
        }
    };
    let base_offset = |t: &TimeExpr| -> i64 {
        // An absolute integer is treated as origin + value, which is the same since Θ = 0.
        t.offset
    };
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for ch in &d.time_constraints {
        let mut prev = &ch.first;
        for (rel, next) in &ch.rest {
            let (a, b) = (node(prev), node(next));
            if let (Some(a), Some(b)) = (a, b) {
                let gap = if *rel == OrderRel::Lt { 1 } else { 0 };
                edges.push((a, b, base_offset(prev) - base_offset(next) + gap));
            }
            prev = next;
        }
    }
    let n = names.len() + 1;
    for i in 1..n {
        edges.push((0, i, 0));
    }
    let mut val = vec![0i64; n];
    let mut changed = true;
    let mut rounds = 0;
    while changed {
        changed = false;
        for &(a, b, w) in &edges {
            if val[a] + w > val[b] {
                if b == 0 {
                    let who = if a == 0 { "theta".to_string() } else { names[a - 1].clone() };
                    return Err(Error::ConstraintCycle(who));
                }
                val[b] = val[a] + w;
                changed = true;
            }
        }
        rounds += 1;
        if rounds > n + 1 && changed {
            let who = edges
                .iter()
                .find(|&&(a, b, w)| val[a] + w > val[b])
                .map(|&(_, b, _)| if b == 0 { "theta".to_string() } else { names[b - 1].clone() })
                .unwrap_or_default();
            return Err(Error::ConstraintCycle(who));
        }
    }
    let mut env = BTreeMap::new();
    for (i, c) in names.iter().enumerate() {
        let v = val[i + 1];
        if v > i64::from(d.horizon) {
            return Err(Error::HorizonOverflow { what: c.clone(), value: v, horizon: d.horizon });
        }
        env.insert(c.clone(), v);
    }
    Ok(env)
}

/// Programmatic construction of domain descriptions.
#[derive(Clone, Debug)]
pub struct DomainBuilder {
    d: DomainDescription,
}

impl DomainBuilder {
    pub fn new(name: &str, horizon: u32) -> Self {
        DomainBuilder {
            d: DomainDescription {
                name: name.to_owned(),
                signature: Signature::default(),
                horizon,
                inertia: Inertia::All,
                decls: Vec::new(),
                theory: Vec::new(),
                time_constraints: Vec::new(),
                mode: Mode::S,
            },
        }
    }

    pub fn fluents(mut self, names: &[&str]) -> Self {
        self.d.signature.fluents.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn actions(mut self, names: &[&str]) -> Self {
        self.d.signature.actions.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn inertia(mut self, inertia: Inertia) -> Self {
        self.d.inertia = inertia;
        self
    }

    pub fn fact(mut self, f: Formula) -> Self {
        self.d.theory.push(f);
        self
    }

    /// `[t]l`.
    pub fn fact_literal(self, t: i64, l: Literal) -> Self {
        self.fact(Formula::lit_at(TimeExpr::int(t), &l))
    }

    /// `[t,u]a`.
    pub fn occurs(self, t: i64, u: i64, action: &str) -> Self {
        self.fact(Formula::occ(TimeExpr::int(t), TimeExpr::int(u), action))
    }

    pub fn rule(mut self, decl: RuleDecl) -> Self {
        self.d.decls.push(decl);
        self
    }

    /// `effect action if conditions causes effect [unqualified]`.
    pub fn effect(self, action: &str, conditions: Vec<Formula>, effect: Literal, qualified: bool) -> Self {
        self.rule(RuleDecl::Effect { action: action.to_owned(), conditions, effect, qualified, throughout: false })
    }

    pub fn order(mut self, chain: OrderChain) -> Self {
        self.d.time_constraints.push(chain);
        self
    }

    /// Infer the mode and validate.
    pub fn build(mut self) -> Result<DomainDescription> {
        self.d.mode = self.d.infer_mode();
        self.d.validate()?;
        Ok(self.d)
    }
}
