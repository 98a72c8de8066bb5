//! Attack, rejection and the extension semantics over the relevant
//! assumption universe of a grounded domain.
//!
//! Sets are handled internally as [`Bits`] over positions in
//! [`GroundDomain::universe`]. Rules never conclude a positive assumption
//! atom, so a set is closed exactly when it is consistent and contains the
//! assumptions Γ already entails. Presumable sets are then the maximal
//! consistent subsets, found with [`crate::search::marco`].

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::bits::Bits;
use crate::deduction::{close_atoms, Closure};
use crate::error::{Error, Result};
use crate::ground::{AtomId, GroundDomain};
use crate::lang::{Assumption, QualTag};
use crate::search::{marco, Frontier};

/// Enumeration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Bound on contested assumptions (those in some minimal inconsistent set).
    pub max_assumptions: usize,
    /// Bound on the number of frontier sets a single search may produce.
    pub max_outputs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_assumptions: 64, max_outputs: 200_000 }
    }
}

/// Semantic flags of an assumption set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VerdictFlags {
    pub closed: bool,
    pub conflict_free: bool,
    pub presumable: bool,
    pub plausible: bool,
    pub semi_q_plausible: bool,
    pub q_plausible: bool,
    pub ramification_compliant: bool,
    pub ad_plausible: bool,
    pub stable: bool,
    pub admissible: bool,
    pub preferred: bool,
}

/// An assumption set with its leniently rejected assumptions and flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionVerdict {
    /// Δ, sorted.
    pub assumptions: Vec<Assumption>,
    /// Lr(Δ), sorted.
    pub lr: Vec<Assumption>,
    pub flags: VerdictFlags,
}

impl AssumptionVerdict {
    /// Δ_FA.
    pub fn fa(&self) -> Vec<Assumption> {
        self.assumptions.iter().filter(|a| a.is_frame()).cloned().collect()
    }

    /// Δ_AQ.
    pub fn aq(&self) -> Vec<Assumption> {
        self.assumptions.iter().filter(|a| a.is_qual()).cloned().collect()
    }

    /// Lr(Δ) ∩ AB_FA.
    pub fn lr_fa(&self) -> Vec<Assumption> {
        self.lr.iter().filter(|a| a.is_frame()).cloned().collect()
    }

    /// Lr(Δ) ∩ AB_AQ.
    pub fn lr_aq(&self) -> Vec<Assumption> {
        self.lr.iter().filter(|a| a.is_qual()).cloned().collect()
    }

    pub fn contains(&self, a: &Assumption) -> bool {
        self.assumptions.binary_search(a).is_ok()
    }
}

#[derive(Clone, Debug)]
struct Analysis {
    forced: Bits,
    frontier: Frontier,
    contested: Bits,
}

/// The assumption-based framework of a grounded domain.
#[derive(Debug)]
pub struct Framework<'g> {
    g: &'g GroundDomain,
    limits: Limits,
    analysis: OnceCell<Analysis>,
    attackers: OnceCell<Vec<Vec<Bits>>>,
}

/// Keep the items whose key is ⊂-minimal among all keys.
pub(crate) fn keep_minimal<T: Clone>(items: &[T], key: impl Fn(&T) -> Bits) -> Vec<T> {
    let keys: Vec<Bits> = items.iter().map(&key).collect();
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| !keys.iter().any(|k| k.is_proper_subset(&keys[*i])))
        .map(|(_, x)| x.clone())
        .collect()
}

/// Keep the items whose key is ⊂-maximal among all keys.
pub(crate) fn keep_maximal<T: Clone>(items: &[T], key: impl Fn(&T) -> Bits) -> Vec<T> {
    let keys: Vec<Bits> = items.iter().map(&key).collect();
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| !keys.iter().any(|k| keys[*i].is_proper_subset(k)))
        .map(|(_, x)| x.clone())
        .collect()
}

fn index_set(list: &[Assumption], pick: impl Fn(&Assumption) -> bool) -> Bits {
    list.iter().enumerate().filter(|(_, a)| pick(a)).map(|(i, _)| i).collect()
}

/// Verdicts whose Lr ∩ AB_AQ is ⊂-minimal.
pub fn select_min_lr_aq(verdicts: &[AssumptionVerdict]) -> Vec<AssumptionVerdict> {
    let mut all: Vec<Assumption> = verdicts.iter().flat_map(|v| v.lr_aq()).collect();
    all.sort();
    all.dedup();
    keep_minimal(verdicts, |v| index_set(&all, |a| v.lr.binary_search(a).is_ok() && a.is_qual()))
}

impl<'g> Framework<'g> {
    pub fn new(g: &'g GroundDomain) -> Self {
        Framework::with_limits(g, Limits::default())
    }

    pub fn with_limits(g: &'g GroundDomain, limits: Limits) -> Self {
        Framework { g, limits, analysis: OnceCell::new(), attackers: OnceCell::new() }
    }

    pub fn domain(&self) -> &'g GroundDomain {
        self.g
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// The relevant assumption universe AB.
    pub fn universe(&self) -> &'g [Assumption] {
        &self.g.universe
    }

    fn n(&self) -> usize {
        self.g.universe.len()
    }

    fn atoms_of(&self, s: &Bits) -> Vec<AtomId> {
        s.iter().map(|i| self.g.universe_atoms[i]).collect()
    }

    pub(crate) fn closure_of(&self, s: &Bits) -> Closure<'g> {
        close_atoms(self.g, &self.atoms_of(s), &[])
    }

    pub(crate) fn consistent(&self, s: &Bits) -> bool {
        self.closure_of(s).is_consistent()
    }

    /// Universe positions whose contrary is entailed by `c`.
    fn attacked_by(&self, c: &Closure<'_>) -> Bits {
        (0..self.n()).filter(|&i| c.entails_lit(self.g.universe_atoms[i], false)).collect()
    }

    fn to_bits(&self, delta: &[Assumption]) -> Result<(Bits, Vec<AtomId>)> {
        let mut s = Bits::new(self.n());
        let mut outside = Vec::new();
        for a in delta {
            match self.g.universe_index(a) {
                Some(i) => {
                    s.insert(i);
                }
                None => outside.push(self.atom(a)?),
            }
        }
        Ok((s, outside))
    }

    fn atom(&self, a: &Assumption) -> Result<AtomId> {
        self.g.assumption_atom(a).ok_or_else(|| Error::UnknownAtom(a.to_string()))
    }

    fn to_list(&self, s: &Bits) -> Vec<Assumption> {
        s.iter().map(|i| self.g.universe[i].clone()).collect()
    }

    fn close_list(&self, delta: &[Assumption]) -> Result<Closure<'g>> {
        let atoms = delta.iter().map(|a| self.atom(a)).collect::<Result<Vec<_>>>()?;
        Ok(close_atoms(self.g, &atoms, &[]))
    }

    /// `E_D(Δ) = Th_R(Γ ∪ Δ)`.
    pub fn extension(&self, delta: &[Assumption]) -> Result<Closure<'g>> {
        self.close_list(delta)
    }

    /// Δ attacks δ iff Γ ∪ Δ entails the contrary of δ.
    pub fn attacks(&self, delta: &[Assumption], d: &Assumption) -> Result<bool> {
        let c = self.close_list(delta)?;
        Ok(c.entails_lit(self.atom(d)?, false))
    }

    /// Δ = AB ∩ Th(Γ ∪ Δ).
    pub fn is_closed(&self, delta: &[Assumption]) -> Result<bool> {
        let (s, outside) = self.to_bits(delta)?;
        if !outside.is_empty() {
            return Ok(false);
        }
        let c = self.closure_of(&s);
        Ok((0..self.n()).all(|i| c.entails_lit(self.g.universe_atoms[i], true) == s.contains(i)))
    }

    /// No δ ∈ AB with both δ and its contrary derivable.
    pub fn is_conflict_free(&self, delta: &[Assumption]) -> Result<bool> {
        let c = self.close_list(delta)?;
        Ok(self.g.universe_atoms.iter().all(|&a| !(c.entails_lit(a, true) && c.entails_lit(a, false))))
    }

    /// Δ attacks one of its own members.
    pub fn is_self_attacking(&self, delta: &[Assumption]) -> Result<bool> {
        let c = self.close_list(delta)?;
        for a in delta {
            if c.entails_lit(self.atom(a)?, false) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Δ is conflict-free and Δ ∪ {δ} attacks itself.
    pub fn rejects(&self, delta: &[Assumption], d: &Assumption) -> Result<bool> {
        if !self.is_conflict_free(delta)? {
            return Ok(false);
        }
        let mut aug = delta.to_vec();
        aug.push(d.clone());
        self.is_self_attacking(&aug)
    }

    /// Rejected without being attacked.
    pub fn leniently_rejects(&self, delta: &[Assumption], d: &Assumption) -> Result<bool> {
        Ok(self.rejects(delta, d)? && !self.attacks(delta, d)?)
    }

    /// Lr(Δ) over the relevant universe.
    pub fn lr(&self, delta: &[Assumption]) -> Result<Vec<Assumption>> {
        let mut out = Vec::new();
        for d in self.g.universe.iter() {
            if self.leniently_rejects(delta, d)? {
                out.push(d.clone());
            }
        }
        Ok(out)
    }

    fn analysis(&self) -> Result<&Analysis> {
        if let Some(a) = self.analysis.get() {
            return Ok(a);
        }
        let n = self.n();
        let base = close_atoms(self.g, &[], &[]);
        let forced: Bits = if base.is_consistent() {
            (0..n).filter(|&i| base.entails_lit(self.g.universe_atoms[i], true)).collect()
        } else {
            Bits::new(n)
        };
        let limits = self.limits;
        let mut contested = Bits::new(n);
        let mut outputs = 0usize;
        let frontier = marco(n, &[], &mut |s| !self.consistent(s), &mut |m| {
            contested.union_with(m);
            outputs += 1;
            if contested.len() > limits.max_assumptions {
                return Err(Error::ResourceBound {
                    what: "contested assumptions",
                    size: contested.len(),
                    limit: limits.max_assumptions,
                });
            }
            if outputs > limits.max_outputs {
                return Err(Error::ResourceBound {
                    what: "minimal inconsistent sets",
                    size: outputs,
                    limit: limits.max_outputs,
                });
            }
            Ok(())
        })?;
        if frontier.maximal.len() > limits.max_outputs {
            return Err(Error::ResourceBound {
                what: "presumable sets",
                size: frontier.maximal.len(),
                limit: limits.max_outputs,
            });
        }
        let _ = self.analysis.set(Analysis { forced, frontier, contested: contested.normalized() });
        Ok(self.analysis.get().expect("analysis set"))
    }

    /// Assumptions that occur in some minimal inconsistent set.
    pub fn contested(&self) -> Result<Vec<Assumption>> {
        Ok(self.to_list(&self.analysis()?.contested))
    }

    /// Verdict for a consistent set with the basic flags filled in.
    fn consistent_verdict(&self, s: &Bits, presumable: bool) -> AssumptionVerdict {
        let c = self.closure_of(s);
        let attacked = self.attacked_by(&c);
        let lr: Bits = if presumable {
            (0..self.n()).filter(|&i| !s.contains(i) && !attacked.contains(i)).collect()
        } else {
            (0..self.n())
                .filter(|&i| {
                    if s.contains(i) || attacked.contains(i) {
                        return false;
                    }
                    let mut t = s.clone();
                    t.insert(i);
                    !self.consistent(&t)
                })
                .collect()
        };
        let forced = self.analysis.get().map(|a| a.forced.clone()).unwrap_or_default();
        let flags = VerdictFlags {
            closed: forced.is_subset(s),
            conflict_free: true,
            presumable,
            stable: presumable && lr.is_empty(),
            ..VerdictFlags::default()
        };
        AssumptionVerdict { assumptions: self.to_list(s), lr: self.to_list(&lr), flags }
    }

    fn presumable_bits(&self) -> Result<Vec<Bits>> {
        if self.n() == 0 {
            return Ok(if self.is_presumable_literal(&[])? { alloc::vec![Bits::default()] } else { Vec::new() });
        }
        Ok(self.analysis()?.frontier.maximal.clone())
    }

    fn is_presumable_literal(&self, delta: &[Assumption]) -> Result<bool> {
        if !self.is_closed(delta)? || self.is_self_attacking(delta)? {
            return Ok(false);
        }
        for d in self.g.universe.iter() {
            if !delta.contains(d) && !self.rejects(delta, d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sorted(mut v: Vec<AssumptionVerdict>) -> Vec<AssumptionVerdict> {
        v.sort_by(|a, b| a.assumptions.cmp(&b.assumptions));
        v
    }

    /// Closed, non-self-attacking sets rejecting every excluded assumption.
    pub fn presumable_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let sets = self.presumable_bits()?;
        Ok(Self::sorted(sets.iter().map(|s| self.consistent_verdict(s, true)).collect()))
    }

    fn lr_bits(&self, v: &AssumptionVerdict, pick: impl Fn(&Assumption) -> bool) -> Bits {
        v.lr.iter().filter(|a| pick(a)).filter_map(|a| self.g.universe_index(a)).collect()
    }

    fn delta_bits(&self, v: &AssumptionVerdict, pick: impl Fn(&Assumption) -> bool) -> Bits {
        v.assumptions.iter().filter(|a| pick(a)).filter_map(|a| self.g.universe_index(a)).collect()
    }

    /// Presumable sets with ⊂-minimal Lr.
    pub fn plausible_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let p = self.presumable_sets()?;
        let mut out = keep_minimal(&p, |v| self.lr_bits(v, |_| true));
        out.iter_mut().for_each(|v| v.flags.plausible = true);
        Ok(out)
    }

    /// Presumable sets attacking every excluded assumption.
    pub fn stable_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        Ok(self.presumable_sets()?.into_iter().filter(|v| v.flags.stable).collect())
    }

    /// Presumable sets with ⊂-minimal Lr_FA.
    pub fn semi_q_plausible_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let p = self.presumable_sets()?;
        let mut out = keep_minimal(&p, |v| self.lr_bits(v, Assumption::is_frame));
        out.iter_mut().for_each(|v| v.flags.semi_q_plausible = true);
        Ok(out)
    }

    /// Semi-Q-plausible sets with ⊂-maximal Δ_AQ, then ⊂-maximal Δ_FA.
    pub fn q_plausible_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let s1 = self.semi_q_plausible_sets()?;
        let s2 = keep_maximal(&s1, |v| self.delta_bits(v, Assumption::is_qual));
        let mut out = keep_maximal(&s2, |v| self.delta_bits(v, Assumption::is_frame));
        out.iter_mut().for_each(|v| v.flags.q_plausible = true);
        Ok(out)
    }

    /// Presumable sets that are ramification compliant, then ⊂-minimal Lr_FA,
    /// ⊂-maximal action qualifications, and ⊂-maximal Δ_FA compared on the
    /// time points where both sets are state-stable.
    pub fn ad_plausible_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let mut compliant = Vec::new();
        for mut v in self.presumable_sets()? {
            if crate::ramification::ramification_compliant(self.g, &v.assumptions)? {
                v.flags.ramification_compliant = true;
                compliant.push(v);
            }
        }
        let s1 = keep_minimal(&compliant, |v| self.lr_bits(v, Assumption::is_frame));
        let action_qual =
            |a: &Assumption| matches!(a, Assumption::Qual { tag, .. } if !matches!(tag, QualTag::Ramification(_)));
        let s2 = keep_maximal(&s1, |v| self.delta_bits(v, action_qual));
        let stable: Vec<Vec<u32>> = s2
            .iter()
            .map(|v| crate::ramification::state_stable_points(self.g, &v.assumptions))
            .collect::<Result<_>>()?;
        let fa_on = |v: &AssumptionVerdict, pts: &[u32]| {
            self.delta_bits(v, |a| matches!(a, Assumption::Frame { time, .. } if pts.contains(time)))
        };
        let mut out = Vec::new();
        for (i, v) in s2.iter().enumerate() {
            let dominated = s2.iter().enumerate().any(|(j, w)| {
                if i == j {
                    return false;
                }
                let common: Vec<u32> = stable[i].iter().filter(|t| stable[j].contains(t)).copied().collect();
                fa_on(v, &common).is_proper_subset(&fa_on(w, &common))
            });
            if !dominated {
                let mut v = v.clone();
                v.flags.ad_plausible = true;
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Minimal consistent attackers of each universe position.
    fn minimal_attackers(&self) -> Result<&Vec<Vec<Bits>>> {
        if let Some(a) = self.attackers.get() {
            return Ok(a);
        }
        let an = self.analysis()?;
        let n = self.n();
        let mut all = Vec::with_capacity(n);
        for i in 0..n {
            if !an.contested.contains(i) {
                all.push(Vec::new());
                continue;
            }
            let atom = self.g.universe_atoms[i];
            let limit = self.limits.max_outputs;
            let mut count = 0usize;
            let f = marco(n, &an.frontier.minimal, &mut |s| self.closure_of(s).entails_lit(atom, false), &mut |_| {
                count += 1;
                if count > limit {
                    return Err(Error::ResourceBound { what: "minimal attackers", size: count, limit });
                }
                Ok(())
            })?;
            all.push(f.minimal);
        }
        let _ = self.attackers.set(all);
        Ok(self.attackers.get().expect("attackers set"))
    }

    fn universe_inconsistent(&self) -> bool {
        !self.consistent(&Bits::full(self.n()))
    }

    /// Admissibility of a set of universe positions.
    fn admissible_bits(&self, s: &Bits, u_inconsistent: bool) -> Result<bool> {
        let an = self.analysis()?;
        let c = self.closure_of(s);
        if !c.is_consistent() {
            return Ok(self.n() == 0);
        }
        if !an.forced.is_subset(s) {
            return Ok(false);
        }
        let attacked = self.attacked_by(&c);
        if u_inconsistent && !s.is_empty() && attacked.is_empty() {
            return Ok(false);
        }
        let att = self.minimal_attackers()?;
        Ok(s.iter().all(|i| att[i].iter().all(|a| a.intersects(&attacked))))
    }

    /// Closed sets defending themselves against every closed attacker.
    pub fn admissible_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let n = self.n();
        if n > self.limits.max_assumptions {
            return Err(Error::ResourceBound { what: "assumptions", size: n, limit: self.limits.max_assumptions });
        }
        let u_inc = self.universe_inconsistent();
        let mut found = Vec::new();
        let mut stack = alloc::vec![(Bits::new(n), 0usize)];
        while let Some((s, next)) = stack.pop() {
            if self.admissible_bits(&s, u_inc)? {
                found.push(s.clone());
            }
            for i in next..n {
                let mut t = s.clone();
                t.insert(i);
                if self.consistent(&t) {
                    stack.push((t, i + 1));
                }
            }
        }
        let mut out: Vec<AssumptionVerdict> = found
            .iter()
            .map(|s| {
                let mut v = self.consistent_verdict(s, false);
                v.flags.admissible = true;
                v
            })
            .collect();
        let maximal = keep_maximal(&found, |s| s.clone());
        for v in out.iter_mut() {
            let (b, _) = self.to_bits(&v.assumptions)?;
            v.flags.preferred = maximal.iter().any(|m| m.clone().normalized() == b.clone().normalized());
        }
        Ok(Self::sorted(out))
    }

    /// ⊂-maximal admissible sets.
    pub fn preferred_sets(&self) -> Result<Vec<AssumptionVerdict>> {
        let n = self.n();
        let u_inc = self.universe_inconsistent();
        let att = self.minimal_attackers()?;
        let mut candidates: Vec<Bits> = Vec::new();
        let mut seeds = self.presumable_bits()?;
        if seeds.is_empty() {
            seeds.push(Bits::new(n));
        }
        for m in seeds {
            let mut s = m;
            loop {
                let attacked = self.attacked_by(&self.closure_of(&s));
                let mut t: Bits = s.iter().filter(|&i| att[i].iter().all(|a| a.intersects(&attacked))).collect();
                if u_inc && attacked.is_empty() {
                    t = Bits::new(n);
                }
                let t = t.normalized();
                if t == s.clone().normalized() {
                    break;
                }
                s = t;
            }
            if self.admissible_bits(&s, u_inc)? {
                candidates.push(s.normalized());
            }
        }
        candidates.sort();
        candidates.dedup();
        let maximal = keep_maximal(&candidates, |s| s.clone());
        let out = maximal
            .iter()
            .map(|s| {
                let mut v = self.consistent_verdict(s, false);
                v.flags.admissible = true;
                v.flags.preferred = true;
                v
            })
            .collect();
        Ok(Self::sorted(out))
    }

    /// Every flag for an arbitrary set, computed from the literal definitions
    /// and the enumerated semantics.
    pub fn classify(&self, delta: &[Assumption]) -> Result<AssumptionVerdict> {
        let mut delta = delta.to_vec();
        delta.sort();
        delta.dedup();
        let mut flags = VerdictFlags {
            closed: self.is_closed(&delta)?,
            conflict_free: self.is_conflict_free(&delta)?,
            presumable: self.is_presumable_literal(&delta)?,
            ..VerdictFlags::default()
        };
        let lr = self.lr(&delta)?;
        flags.stable = flags.presumable
            && self.g.universe.iter().all(|d| delta.contains(d) || self.attacks(&delta, d).unwrap_or(false));
        let member = |sets: &[AssumptionVerdict]| sets.iter().any(|v| v.assumptions == delta);
        if flags.presumable {
            flags.plausible = member(&self.plausible_sets()?);
            flags.semi_q_plausible = member(&self.semi_q_plausible_sets()?);
            flags.q_plausible = member(&self.q_plausible_sets()?);
            flags.ramification_compliant = crate::ramification::ramification_compliant(self.g, &delta)?;
            flags.ad_plausible = member(&self.ad_plausible_sets()?);
        }
        let (s, outside) = self.to_bits(&delta)?;
        if outside.is_empty() && (flags.closed && !self.is_self_attacking(&delta)?) {
            flags.admissible = self.admissible_bits(&s, self.universe_inconsistent())?;
            if flags.admissible {
                flags.preferred = member(&self.preferred_sets()?);
            }
        }
        Ok(AssumptionVerdict { assumptions: delta, lr, flags })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{grounded, mini_ysp, potato, spy, stolen_car, subsets, ysp};
    use crate::lang::Literal;
    use alloc::vec;

    fn fa(t: u32, l: Literal) -> Assumption {
        Assumption::fa(t, l)
    }

    fn sets(v: &[AssumptionVerdict]) -> Vec<Vec<Assumption>> {
        let mut out: Vec<Vec<Assumption>> = v.iter().map(|x| x.assumptions.clone()).collect();
        out.sort();
        out
    }

    /// Every semantics computed straight from the definitions by brute force.
    struct Oracle {
        presumable: Vec<Vec<Assumption>>,
        plausible: Vec<Vec<Assumption>>,
        semi_q: Vec<Vec<Assumption>>,
        q: Vec<Vec<Assumption>>,
        stable: Vec<Vec<Assumption>>,
        admissible: Vec<Vec<Assumption>>,
        preferred: Vec<Vec<Assumption>>,
    }

    fn oracle(g: &GroundDomain, with_admissible: bool) -> Oracle {
        let u = &g.universe;
        let n = u.len();
        assert!(n <= 16);
        let all: Vec<Bits> = subsets(n).into_iter().map(|s| s.into_iter().collect::<Bits>().normalized()).collect();
        let info: Vec<(Bits, Bits)> = all
            .iter()
            .map(|s| {
                let atoms: Vec<AtomId> = s.iter().map(|i| g.universe_atoms[i]).collect();
                let c = close_atoms(g, &atoms, &[]);
                let pos: Bits = (0..n).filter(|&i| c.entails_lit(g.universe_atoms[i], true)).collect();
                let neg: Bits = (0..n).filter(|&i| c.entails_lit(g.universe_atoms[i], false)).collect();
                (pos.normalized(), neg.normalized())
            })
            .collect();
        let idx = |s: &Bits| all.iter().position(|x| x == &s.clone().normalized()).unwrap();
        let closed = |k: usize| info[k].0 == all[k];
        let cf = |k: usize| !info[k].0.intersects(&info[k].1);
        let self_att = |k: usize| all[k].intersects(&info[k].1);
        let rejects = |k: usize, d: usize| {
            let mut t = all[k].clone();
            t.insert(d);
            cf(k) && self_att(idx(&t))
        };
        let list = |s: &Bits| -> Vec<Assumption> { s.iter().map(|i| u[i].clone()).collect() };
        let closed_sets: Vec<usize> = (0..all.len()).filter(|&j| closed(j)).collect();
        let mut pres = Vec::new();
        let mut stable = Vec::new();
        let mut adm = Vec::new();
        for k in 0..all.len() {
            if !closed(k) || self_att(k) {
                continue;
            }
            if (0..n).all(|d| all[k].contains(d) || rejects(k, d)) {
                let lr: Bits = (0..n).filter(|&d| rejects(k, d) && !info[k].1.contains(d)).collect();
                pres.push((k, lr.normalized()));
            }
            if (0..n).all(|d| all[k].contains(d) || info[k].1.contains(d)) {
                stable.push(list(&all[k]));
            }
            let defended = with_admissible
                && closed_sets.iter().all(|&j| !info[j].1.intersects(&all[k]) || info[k].1.intersects(&all[j]));
            if defended {
                adm.push(k);
            }
        }
        let mask = |b: &Bits, pick: &dyn Fn(&Assumption) -> bool| -> Bits {
            b.iter().filter(|&i| pick(&u[i])).collect::<Bits>().normalized()
        };
        let plaus = keep_minimal(&pres, |p| p.1.clone());
        let semi = keep_minimal(&pres, |p| mask(&p.1, &|a| a.is_frame()));
        let q2 = keep_maximal(&semi, |p| mask(&all[p.0], &|a| a.is_qual()));
        let q = keep_maximal(&q2, |p| mask(&all[p.0], &|a| a.is_frame()));
        let pref = keep_maximal(&adm, |&k| all[k].clone());
        let out = |v: Vec<Vec<Assumption>>| {
            let mut v = v;
            v.sort();
            v
        };
        Oracle {
            presumable: out(pres.iter().map(|p| list(&all[p.0])).collect()),
            plausible: out(plaus.iter().map(|p| list(&all[p.0])).collect()),
            semi_q: out(semi.iter().map(|p| list(&all[p.0])).collect()),
            q: out(q.iter().map(|p| list(&all[p.0])).collect()),
            stable: out(stable),
            admissible: out(adm.iter().map(|&k| list(&all[k])).collect()),
            preferred: out(pref.iter().map(|&k| list(&all[k])).collect()),
        }
    }

    fn agree_with_oracle(g: &GroundDomain, with_admissible: bool) {
        let fw = Framework::new(g);
        let o = oracle(g, with_admissible);
        assert_eq!(sets(&fw.presumable_sets().unwrap()), o.presumable);
        assert_eq!(sets(&fw.plausible_sets().unwrap()), o.plausible);
        assert_eq!(sets(&fw.semi_q_plausible_sets().unwrap()), o.semi_q);
        assert_eq!(sets(&fw.q_plausible_sets().unwrap()), o.q);
        assert_eq!(sets(&fw.stable_sets().unwrap()), o.stable);
        if with_admissible {
            assert_eq!(sets(&fw.preferred_sets().unwrap()), o.preferred);
            assert_eq!(sets(&fw.admissible_sets().unwrap()), o.admissible);
        }
    }

    #[test]
    fn ysp_plausible_is_intended() {
        let g = grounded(&ysp(false));
        let fw = Framework::new(&g);
        let p = fw.plausible_sets().unwrap();
        assert_eq!(p.len(), 1);
        let mut expected: Vec<Assumption> = g.universe.clone();
        expected.retain(|a| *a != fa(0, Literal::neg("loaded")) && *a != fa(2, Literal::pos("alive")));
        assert_eq!(p[0].assumptions, expected);
        assert!(p[0].lr.is_empty());
        assert_eq!(sets(&fw.stable_sets().unwrap()), sets(&p));
        let ext = fw.extension(&p[0].assumptions).unwrap();
        assert!(ext.entails_lit(g.fluent_atom("alive", 3).unwrap(), false));
        assert!(ext.entails_lit(g.fluent_atom("loaded", 2).unwrap(), true));
    }

    #[test]
    fn rejection_versus_attack() {
        let g = grounded(&ysp(false));
        let fw = Framework::new(&g);
        let d1 = [fa(0, Literal::pos("alive")), fa(1, Literal::pos("alive")), fa(1, Literal::pos("loaded"))];
        assert!(fw.attacks(&d1, &fa(2, Literal::pos("alive"))).unwrap());
        assert!(!fw.leniently_rejects(&d1, &fa(2, Literal::pos("alive"))).unwrap());
        let d2 = [fa(0, Literal::pos("alive")), fa(1, Literal::pos("alive")), fa(2, Literal::pos("alive"))];
        assert!(fw.rejects(&d2, &fa(1, Literal::pos("loaded"))).unwrap());
        assert!(!fw.attacks(&d2, &fa(1, Literal::pos("loaded"))).unwrap());
        assert!(fw.leniently_rejects(&d2, &fa(1, Literal::pos("loaded"))).unwrap());
        assert!(fw.attacks(&[], &fa(0, Literal::neg("loaded"))).unwrap());
    }

    #[test]
    fn closed_and_conflict_free_basics() {
        let g = grounded(&ysp(false));
        let fw = Framework::new(&g);
        assert!(fw.is_closed(&[]).unwrap() && fw.is_conflict_free(&[]).unwrap());
        assert!(!fw.is_conflict_free(&g.universe).unwrap());
    }

    #[test]
    fn stolen_car_has_two_plausible_sets() {
        let g = grounded(&stolen_car());
        let fw = Framework::new(&g);
        let p = fw.presumable_sets().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(fw.plausible_sets().unwrap().len(), 2);
        let omitted: Vec<Vec<Assumption>> = p.iter().map(|v| v.lr.clone()).collect();
        assert!(omitted.contains(&vec![fa(0, Literal::pos("parked"))]));
        assert!(omitted.contains(&vec![fa(1, Literal::pos("parked"))]));
    }

    fn spy_aq(g: &GroundDomain) -> Vec<Assumption> {
        g.universe.iter().filter(|a| a.is_qual()).cloned().collect()
    }

    #[test]
    fn spy_preferred_and_plausible() {
        let g = grounded(&spy());
        let fw = Framework::new(&g);
        let aq = spy_aq(&g);
        assert_eq!(aq.len(), 3);
        let pref = fw.preferred_sets().unwrap();
        assert!(!pref.is_empty());
        assert!(pref.iter().all(|v| aq.iter().all(|a| !v.contains(a))));
        for family in [fw.plausible_sets().unwrap(), fw.q_plausible_sets().unwrap()] {
            assert!(!family.is_empty());
            for v in &family {
                assert_eq!(aq.iter().filter(|a| v.contains(a)).count(), 1);
                let rivals: Vec<&Assumption> = aq.iter().filter(|a| !v.contains(a)).collect();
                let attacked = rivals.iter().filter(|a| fw.attacks(&v.assumptions, a).unwrap()).count();
                let lenient = rivals.iter().filter(|a| v.lr.contains(a)).count();
                assert_eq!((attacked, lenient), (1, 1));
            }
        }
    }

    #[test]
    fn potato_two_q_plausible_and_selection() {
        let g = grounded(&potato());
        let fw = Framework::new(&g);
        let q = fw.q_plausible_sets().unwrap();
        assert_eq!(q.len(), 2);
        let aq = spy_aq(&g);
        assert_eq!(aq.len(), 2);
        assert!(q.iter().all(|v| aq.iter().filter(|a| v.contains(a)).count() == 1));
        let sel = select_min_lr_aq(&q);
        assert_eq!(sel.len(), 1);
        let ext = fw.extension(&sel[0].assumptions).unwrap();
        assert!(ext.entails_lit(g.fluent_atom("blocked_tp", 1).unwrap(), true));
        assert!(sel[0].lr_aq().is_empty());
    }

    #[test]
    fn mini_yale_prefers_the_qualification() {
        let g = grounded(&mini_ysp());
        let fw = Framework::new(&g);
        let q = fw.q_plausible_sets().unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].aq().len(), 1);
        assert!(fw.attacks(&q[0].assumptions, &fa(0, Literal::pos("alive"))).unwrap());
    }

    #[test]
    fn matches_brute_force_on_small_domains() {
        for d in [ysp(false), stolen_car(), spy(), mini_ysp()] {
            let g = grounded(&d);
            agree_with_oracle(&g, true);
        }
        agree_with_oracle(&grounded(&ysp(true)), false);
    }

    #[test]
    fn classify_agrees_with_enumeration() {
        let g = grounded(&spy());
        let fw = Framework::new(&g);
        for v in fw.q_plausible_sets().unwrap() {
            let c = fw.classify(&v.assumptions).unwrap();
            assert!(c.flags.presumable && c.flags.plausible && c.flags.q_plausible);
            assert_eq!(c.lr, v.lr);
        }
    }

    #[test]
    fn contested_bound_is_enforced() {
        let g = grounded(&ysp(false));
        let fw = Framework::with_limits(&g, Limits { max_assumptions: 1, ..Limits::default() });
        assert!(matches!(fw.presumable_sets(), Err(Error::ResourceBound { .. })));
    }
}
