//! The deductive system: closure under ground rules, entailment, R-consistency
//! and the well-definedness lint.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::ground::{lit_of, AtomId, GroundDomain, GroundFormula, Recorder};
use crate::lang::Assumption;
use crate::sat::{Lit, Solver};

/// `Th_R(Γ ∪ Δ)`, represented by its literal part plus Γ's non-literal clauses.
#[derive(Clone, Debug)]
pub struct Closure<'g> {
    g: &'g GroundDomain,
    /// Literals of the base `Γ ∪ Δ` (after unit propagation of Γ).
    base: Bits,
    /// Known literals; index `2 * atom + (negative as usize)`.
    known: Bits,
    extra: Vec<Vec<Lit>>,
    extra_vars: usize,
    extra_atoms: Bits,
    /// Indices of fired ground rules.
    pub fired: Bits,
    consistent: bool,
}

fn key(a: AtomId, p: bool) -> usize {
    2 * a + usize::from(!p)
}

impl<'g> Closure<'g> {
    pub fn domain(&self) -> &'g GroundDomain {
        self.g
    }

    /// Whether the closure is classically satisfiable.
    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    fn complex(&self) -> bool {
        !self.g.residual.is_empty() || !self.extra.is_empty()
    }

    pub fn knows(&self, a: AtomId, p: bool) -> bool {
        self.known.contains(key(a, p))
    }

    fn units(&self) -> Vec<Lit> {
        self.known.iter().map(|k| lit_of(k / 2, k % 2 == 0)).collect()
    }

    fn solver(&self) -> Solver {
        let mut s = Solver::new(self.g.residual_vars.max(self.extra_vars));
        for c in self.g.residual.iter().chain(&self.extra) {
            s.add_clause(c);
        }
        s
    }

    /// Entailment of a single literal.
    pub fn entails_lit(&self, a: AtomId, p: bool) -> bool {
        if !self.consistent || self.knows(a, p) {
            return true;
        }
        if !self.complex() || !(self.g.residual_atoms.contains(a) || self.extra_atoms.contains(a)) {
            return false;
        }
        let mut s = self.solver();
        let mut asm = self.units();
        asm.push(lit_of(a, !p));
        !s.solve(&asm)
    }

    /// Classical entailment of a ground formula.
    pub fn entails(&self, f: &GroundFormula) -> bool {
        if !self.consistent {
            return true;
        }
        if let Some((a, p)) = f.as_lit() {
            return self.entails_lit(a, p);
        }
        let partial = |a: AtomId| -> Option<bool> {
            if self.knows(a, true) {
                Some(true)
            } else if self.knows(a, false) {
                Some(false)
            } else {
                None
            }
        };
        match f.eval_partial(&partial) {
            Some(true) => true,
            Some(false) if !self.complex() => false,
            _ => {
                let mut rec = Recorder::new(self.g.residual_vars.max(self.extra_vars));
                let l = rec.encode(f);
                let mut s = self.solver();
                for c in &rec.clauses {
                    s.add_clause(c);
                }
                let mut asm = self.units();
                asm.push(-l);
                !s.solve(&asm)
            }
        }
    }

    /// Assumptions of the relevant universe entailed by the closure.
    pub fn entailed_assumptions(&self) -> Vec<Assumption> {
        self.g
            .universe_atoms
            .iter()
            .zip(&self.g.universe)
            .filter(|(&a, _)| self.entails_lit(a, true))
            .map(|(_, x)| x.clone())
            .collect()
    }

    /// Literals added by rule firings (not in the base).
    pub fn derived_literals(&self) -> Vec<(AtomId, bool)> {
        let mut k = self.known.clone();
        k.difference_with(&self.base);
        k.iter().map(|k| (k / 2, k % 2 == 0)).collect()
    }

    /// All known literals of the closure.
    pub fn literals(&self) -> Vec<(AtomId, bool)> {
        self.known.iter().map(|k| (k / 2, k % 2 == 0)).collect()
    }
}

/// Close `Γ ∪ Δ` under the ground rules.
pub fn close<'g>(g: &'g GroundDomain, delta: &[Assumption]) -> Result<Closure<'g>> {
    let mut atoms = Vec::with_capacity(delta.len());
    for a in delta {
        atoms.push(g.assumption_atom(a).ok_or_else(|| Error::UnknownAtom(alloc::string::ToString::to_string(a)))?);
    }
    Ok(close_atoms(g, &atoms, &[]))
}

/// Close `Γ ∪ Δ ∪ Σ` where `Σ` is a set of arbitrary ground formulas.
pub fn close_with<'g>(g: &'g GroundDomain, delta: &[Assumption], sigma: &[GroundFormula]) -> Result<Closure<'g>> {
    let mut atoms = Vec::with_capacity(delta.len());
    for a in delta {
        atoms.push(g.assumption_atom(a).ok_or_else(|| Error::UnknownAtom(alloc::string::ToString::to_string(a)))?);
    }
    Ok(close_atoms(g, &atoms, sigma))
}

/// Classical entailment check on a closure.
pub fn entails(c: &Closure<'_>, f: &GroundFormula) -> bool {
    c.entails(f)
}

/// Whether `Γ ∪ Σ` is R-consistent.
pub fn r_consistent(g: &GroundDomain, sigma: &[GroundFormula]) -> bool {
    close_atoms(g, &[], sigma).is_consistent()
}

pub(crate) fn close_atoms<'g>(g: &'g GroundDomain, delta: &[AtomId], sigma: &[GroundFormula]) -> Closure<'g> {
    let n = g.num_atoms();
    let mut known = Bits::new(2 * n);
    let mut consistent = g.gamma_satisfiable;
    let add = |known: &mut Bits, a: AtomId, p: bool, consistent: &mut bool| {
        known.insert(key(a, p));
        if known.contains(key(a, !p)) {
            *consistent = false;
        }
    };
    for &(a, p) in &g.base_units {
        add(&mut known, a, p, &mut consistent);
    }
    for &a in delta {
        add(&mut known, a, true, &mut consistent);
    }
    let mut rec = Recorder::new(g.residual_vars);
    let mut extra_atoms = Bits::new(n);
    for f in sigma {
        match f.as_lit_conjunction() {
            Some(ls) => ls.into_iter().for_each(|(a, p)| add(&mut known, a, p, &mut consistent)),
            None => {
                let l = rec.encode(f);
                rec.clauses.push(vec![l]);
                let mut s = BTreeSet::new();
                f.atoms(&mut s);
                s.into_iter().for_each(|a| {
                    extra_atoms.insert(a);
                });
            }
        }
    }
    let mut c = Closure {
        g,
        base: known.clone(),
        known,
        extra_vars: rec.next as usize,
        extra: rec.clauses,
        extra_atoms,
        fired: Bits::new(g.rules.len()),
        consistent,
    };
    if c.consistent && c.complex() {
        let mut s = c.solver();
        c.consistent = s.solve(&c.units());
    }
    if c.consistent {
        if c.complex() {
            saturate_general(&mut c);
        } else {
            saturate_literal(&mut c);
        }
    }
    if c.consistent && c.complex() {
        let mut s = c.solver();
        c.consistent = s.solve(&c.units());
    }
    if !c.consistent {
        c.fired = Bits::full(g.rules.len());
    }
    c
}

/// Counter-based forward chaining when the base is a set of literals.
fn saturate_literal(c: &mut Closure<'_>) {
    let g = c.g;
    let info = &g.rule_index;
    let mut missing: Vec<u32> = info.lit_count.clone();
    let mut queue: Vec<usize> = c.known.iter().collect();
    let mut pending_complex: Vec<usize> = Vec::new();
    let fire = |c: &mut Closure<'_>, ri: usize, queue: &mut Vec<usize>| {
        c.fired.insert(ri);
        for &(a, p) in &g.rules[ri].consequence {
            if c.known.insert(key(a, p)) {
                queue.push(key(a, p));
                if c.known.contains(key(a, !p)) {
                    c.consistent = false;
                }
            }
        }
    };
    for (ri, &m) in missing.iter().enumerate() {
        if m == 0 && !g.inert.contains(ri) {
            if info.has_complex.contains(ri) {
                pending_complex.push(ri);
            } else {
                fire(c, ri, &mut queue);
            }
        }
    }
    loop {
        while let Some(k) = queue.pop() {
            if !c.consistent {
                return;
            }
            for &ri in &info.watch[k] {
                missing[ri] -= 1;
                if missing[ri] == 0 && !g.inert.contains(ri) {
                    if info.has_complex.contains(ri) {
                        pending_complex.push(ri);
                    } else {
                        fire(c, ri, &mut queue);
                    }
                }
            }
        }
        if !c.consistent {
            return;
        }
        let mut progressed = false;
        let pend = core::mem::take(&mut pending_complex);
        for ri in pend {
            if c.fired.contains(ri) {
                continue;
            }
            let ok = g.rules[ri].premises.iter().all(|p| p.as_lit().is_some() || c.entails(p));
            if ok {
                fire(c, ri, &mut queue);
                progressed = true;
            } else {
                pending_complex.push(ri);
            }
        }
        if !progressed || !c.consistent {
            return;
        }
    }
}

/// Round-based forward chaining with full entailment checks for each premise.
fn saturate_general(c: &mut Closure<'_>) {
    let g = c.g;
    loop {
        let mut progressed = false;
        for (ri, r) in g.rules.iter().enumerate() {
            if c.fired.contains(ri) || g.inert.contains(ri) {
                continue;
            }
            if r.premises.iter().all(|p| c.entails(p)) {
                c.fired.insert(ri);
                progressed = true;
                for &(a, p) in &r.consequence {
                    c.known.insert(key(a, p));
                    if c.known.contains(key(a, !p)) {
                        c.consistent = false;
                        return;
                    }
                }
            }
        }
        if !progressed {
            return;
        }
        let mut s = c.solver();
        if !s.solve(&c.units()) {
            c.consistent = false;
            return;
        }
    }
}

/// Watch lists for literal premises.
#[derive(Clone, Debug, Default)]
pub(crate) struct RuleIndex {
    pub lit_count: Vec<u32>,
    pub watch: Vec<Vec<usize>>,
    pub has_complex: Bits,
}

impl RuleIndex {
    pub fn build(g_rules: &[crate::ground::GroundRule], num_atoms: usize) -> Self {
        let mut idx = RuleIndex {
            lit_count: vec![0; g_rules.len()],
            watch: vec![Vec::new(); 2 * num_atoms],
            has_complex: Bits::new(g_rules.len()),
        };
        for (ri, r) in g_rules.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for p in &r.premises {
                match p.as_lit() {
                    Some((a, pol)) => {
                        if seen.insert(key(a, pol)) {
                            idx.lit_count[ri] += 1;
                            idx.watch[key(a, pol)].push(ri);
                        }
                    }
                    None => {
                        idx.has_complex.insert(ri);
                    }
                }
            }
        }
        idx
    }
}

/// Which rule sets the well-definedness lint inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WellDefinedMode {
    /// The rule sets fired in the closures of `Γ` and of `Γ` plus the whole universe.
    FiredOnly,
    /// Every subset of the ground rules; at most 20 rules.
    Exhaustive,
}

/// A set of rules whose premises are jointly satisfiable but whose
/// consequences are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedViolation {
    pub rules: Vec<usize>,
}

/// Lint the rule set against the well-definedness condition on `CONS`.
pub fn check_well_defined(g: &GroundDomain, mode: WellDefinedMode) -> Result<Vec<WellDefinedViolation>> {
    match mode {
        WellDefinedMode::Exhaustive => {
            let all: Vec<usize> = (0..g.rules.len()).collect();
            check_rule_subsets(g, &all)
        }
        WellDefinedMode::FiredOnly => {
            let mut out = Vec::new();
            for delta in [&[][..], &g.universe_atoms[..]] {
                let c = close_atoms(g, delta, &[]);
                let set: Vec<usize> = c.fired.iter().collect();
                if !c.is_consistent() {
                    continue;
                }
                if let Some(v) = violation(g, &set) {
                    out.push(v);
                }
            }
            Ok(out)
        }
    }
}

/// Exhaustive check restricted to the given rules; reports ⊂-minimal witnesses.
pub fn check_rule_subsets(g: &GroundDomain, rules: &[usize]) -> Result<Vec<WellDefinedViolation>> {
    if rules.len() > 20 {
        return Err(Error::ResourceBound { what: "ground rules for exhaustive check", size: rules.len(), limit: 20 });
    }
    let mut found: Vec<u32> = Vec::new();
    // Visit subsets by size so that minimal witnesses come first.
    let mut masks: Vec<u32> = (1u32..(1u32 << rules.len())).collect();
    masks.sort_by_key(|m| m.count_ones());
    for m in masks {
        if found.iter().any(|&f| f & !m == 0) {
            continue;
        }
        let set: Vec<usize> = (0..rules.len()).filter(|i| m >> i & 1 == 1).map(|i| rules[i]).collect();
        if violation(g, &set).is_some() {
            found.push(m);
        }
    }
    Ok(found
        .into_iter()
        .map(|m| WellDefinedViolation {
            rules: (0..rules.len()).filter(|i| m >> i & 1 == 1).map(|i| rules[i]).collect(),
        })
        .collect())
}

fn violation(g: &GroundDomain, set: &[usize]) -> Option<WellDefinedViolation> {
    let mut rec = Recorder::new(g.num_atoms());
    let mut prem = Vec::new();
    for &ri in set {
        for p in &g.rules[ri].premises {
            prem.push(rec.encode(p));
        }
    }
    let cons: Vec<Lit> =
        set.iter().flat_map(|&ri| g.rules[ri].consequence.iter().map(|&(a, p)| lit_of(a, p))).collect();
    // Consequences that contradict an assumption premise mean the set can never
    // fire together in a consistent closure, so it is not counted.
    prem.extend(cons.iter().copied().filter(|l| {
        let a = l.unsigned_abs() as usize - 1;
        matches!(g.atoms[a], crate::ground::GroundAtom::FAAt(..) | crate::ground::GroundAtom::AQAt(..))
    }));
    let mut s = Solver::new(rec.next as usize);
    for c in &rec.clauses {
        s.add_clause(c);
    }
    if !s.solve(&prem) {
        return None;
    }
    let clash = cons.iter().any(|l| cons.contains(&-l));
    clash.then(|| WellDefinedViolation { rules: set.to_vec() })
}
