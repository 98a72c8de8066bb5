//! A small CDCL solver. Variables are numbered from 1; a literal is `±var`.
//!
//! Two watched literals, first-UIP clause learning with backjumping,
//! activity-based decisions and Luby restarts. Decisions take the fixed
//! polarity given by [`Solver::prefer_true`], so results are deterministic.

use alloc::vec;
use alloc::vec::Vec;

pub type Lit = i32;

fn var(l: Lit) -> usize {
    l.unsigned_abs() as usize
}

fn idx(l: Lit) -> usize {
    2 * var(l) + usize::from(l < 0)
}

const NO_REASON: usize = usize::MAX;

/// Incremental clause store plus solver.
#[derive(Clone, Debug, Default)]
pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    /// Value of each variable: 0 unassigned, 1 true, -1 false.
    value: Vec<i8>,
    level: Vec<usize>,
    reason: Vec<usize>,
    activity: Vec<f64>,
    bump: f64,
    seen: Vec<bool>,
    /// `watches[idx(l)]` holds clauses watching literal `l`.
    watches: Vec<Vec<usize>>,
    trail: Vec<Lit>,
    /// Trail length at the start of each decision level.
    levels: Vec<usize>,
    /// Trail position of the next literal to propagate.
    qhead: usize,
    units: Vec<Lit>,
    empty: bool,
    /// Preferred polarity for decisions.
    pub prefer_true: bool,
}

fn luby(mut i: u64) -> u64 {
    let mut size = 1;
    let mut seq = 0;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) / 2;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        let mut s = Solver { bump: 1.0, ..Solver::default() };
        s.grow(num_vars);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn grow(&mut self, n: usize) {
        if n > self.num_vars {
            self.num_vars = n;
            self.value.resize(n + 1, 0);
            self.level.resize(n + 1, 0);
            self.reason.resize(n + 1, NO_REASON);
            self.activity.resize(n + 1, 0.0);
            self.seen.resize(n + 1, false);
            self.watches.resize(2 * n + 2, Vec::new());
        }
    }

    /// Allocate a fresh variable.
    pub fn new_var(&mut self) -> Lit {
        self.grow(self.num_vars + 1);
        self.num_vars as Lit
    }

    pub fn add_clause(&mut self, clause: &[Lit]) {
        let mut c: Vec<Lit> = Vec::with_capacity(clause.len());
        for &l in clause {
            if c.contains(&-l) {
                return;
            }
            if !c.contains(&l) {
                c.push(l);
            }
        }
        if let Some(m) = c.iter().map(|&l| var(l)).max() {
            self.grow(m);
        }
        match c.len() {
            0 => self.empty = true,
            1 => self.units.push(c[0]),
            _ => {
                self.attach(c);
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> usize {
        let ci = self.clauses.len();
        self.watches[idx(c[0])].push(ci);
        self.watches[idx(c[1])].push(ci);
        self.clauses.push(c);
        ci
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[var(l)];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: Lit, reason: usize) {
        let v = var(l);
        self.value[v] = if l > 0 { 1 } else { -1 };
        self.level[v] = self.levels.len();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Propagate the unprocessed part of the trail; the conflicting clause on failure.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let falsified = -self.trail[self.qhead];
            self.qhead += 1;
            let mut ws = core::mem::take(&mut self.watches[idx(falsified)]);
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let other = c[0];
                let ov = {
                    let v = self.value[var(other)];
                    if other > 0 {
                        v
                    } else {
                        -v
                    }
                };
                if ov == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let v = self.value[var(l)];
                    let lv = if l > 0 { v } else { -v };
                    if lv != -1 {
                        c.swap(1, k);
                        let nl = c[1];
                        self.watches[idx(nl)].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if ov == 0 {
                    self.assign(other, ci);
                    i += 1;
                } else {
                    conflict = Some(ci);
                    break;
                }
            }
            let slot = &mut self.watches[idx(falsified)];
            ws.append(slot);
            *slot = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn backtrack(&mut self, to_level: usize) {
        if self.levels.len() <= to_level {
            return;
        }
        let mark = self.levels[to_level];
        for &l in &self.trail[mark..] {
            let v = var(l);
            self.value[v] = 0;
            self.reason[v] = NO_REASON;
        }
        self.trail.truncate(mark);
        self.levels.truncate(to_level);
        self.qhead = self.qhead.min(mark);
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.bump;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.bump *= 1e-100;
        }
    }

    /// First-UIP learnt clause for `confl`, asserting literal first, and its backjump level.
    fn analyze(&mut self, mut confl: usize) -> (Vec<Lit>, usize) {
        let current = self.levels.len();
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0usize;
        let mut p: Lit = 0;
        let mut pos = self.trail.len();
        loop {
            let clause = core::mem::take(&mut self.clauses[confl]);
            for &q in &clause {
                let v = var(q);
                if (p != 0 && v == var(p)) || self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                self.seen[v] = true;
                self.bump_var(v);
                if self.level[v] >= current {
                    pending += 1;
                } else {
                    learnt.push(q);
                }
            }
            self.clauses[confl] = clause;
            loop {
                pos -= 1;
                if self.seen[var(self.trail[pos])] {
                    break;
                }
            }
            p = self.trail[pos];
            self.seen[var(p)] = false;
            pending -= 1;
            if pending == 0 {
                break;
            }
            confl = self.reason[var(p)];
        }
        learnt[0] = -p;
        for &l in &learnt[1..] {
            self.seen[var(l)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[var(learnt[1])];
        }
        self.bump /= 0.95;
        (learnt, back)
    }

    fn pick_branch(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 1..=self.num_vars {
            if self.value[v] == 0 && best.is_none_or(|b| self.activity[v] > self.activity[b]) {
                best = Some(v);
            }
        }
        best
    }

    /// Satisfiability under temporary unit `assumptions`; leaves a model readable with [`Solver::model_value`].
    pub fn solve(&mut self, assumptions: &[Lit]) -> bool {
        for &l in &self.trail {
            let v = var(l);
            self.value[v] = 0;
            self.reason[v] = NO_REASON;
        }
        self.trail.clear();
        self.levels.clear();
        self.qhead = 0;
        if self.empty {
            return false;
        }
        if let Some(m) = assumptions.iter().map(|&l| var(l)).max() {
            self.grow(m);
        }
        let units = self.units.clone();
        for &l in &units {
            match self.lit_value(l) {
                1 => {}
                -1 => {
                    self.empty = true;
                    return false;
                }
                _ => self.assign(l, NO_REASON),
            }
        }
        let mut conflicts = 0u64;
        let mut restarts = 0u64;
        let mut limit = 64 * luby(0);
        loop {
            if let Some(confl) = self.propagate() {
                if self.levels.is_empty() {
                    self.empty = true;
                    return false;
                }
                conflicts += 1;
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.units.push(learnt[0]);
                    self.assign(learnt[0], NO_REASON);
                } else {
                    let lit = learnt[0];
                    let ci = self.attach(learnt);
                    self.assign(lit, ci);
                }
                continue;
            }
            if conflicts >= limit {
                conflicts = 0;
                restarts += 1;
                limit = 64 * luby(restarts);
                self.backtrack(0);
                continue;
            }
            let level = self.levels.len();
            let decision = if level < assumptions.len() {
                let a = assumptions[level];
                match self.lit_value(a) {
                    -1 => return false,
                    1 => {
                        self.levels.push(self.trail.len());
                        continue;
                    }
                    _ => a,
                }
            } else {
                match self.pick_branch() {
                    None => return true,
                    Some(v) => {
                        if self.prefer_true {
                            v as Lit
                        } else {
                            -(v as Lit)
                        }
                    }
                }
            };
            self.levels.push(self.trail.len());
            self.assign(decision, NO_REASON);
        }
    }

    /// Value of `v` in the last model found.
    pub fn model_value(&self, v: usize) -> bool {
        self.value.get(v).copied().unwrap_or(0) == 1
    }
}

/// One-shot satisfiability of `clauses` under `assumptions`.
pub fn satisfiable(num_vars: usize, clauses: &[Vec<Lit>], assumptions: &[Lit]) -> bool {
    let mut s = Solver::new(num_vars);
    for c in clauses {
        s.add_clause(c);
    }
    s.solve(assumptions)
}

/// Brute-force truth table check, used as a test oracle.
pub fn satisfiable_by_table(num_vars: usize, clauses: &[Vec<Lit>]) -> bool {
    assert!(num_vars <= 20);
    (0u32..(1 << num_vars)).any(|m| {
        clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let bit = m >> (var(l) - 1) & 1 == 1;
                bit == (l > 0)
            })
        })
    })
}
