//! A complete CDCL satisfiability engine: two-literal watching, first-UIP
//! clause learning with basic minimization, activity-driven branching with
//! phase saving, Luby restarts and learnt-clause reduction. Clauses can be
//! added incrementally between solves; solving under assumptions yields an
//! unsat core over the assumption literals on failure.

pub mod dimacs;

use crate::budget::Budget;
use crate::lit::{Lit, Var};
use crate::rng::SplitMix64;

/// Result of one solve call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// A total assignment satisfying the clause database and assumptions.
    Sat(Vec<bool>),
    /// A subset of the assumptions under which the database is
    /// unsatisfiable (empty when the database alone is unsatisfiable).
    /// Not necessarily minimal.
    Unsat(Vec<Lit>),
    /// The budget ran out; no partial model is exposed.
    Interrupted,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }

    pub fn model(&self) -> Option<&[bool]> {
        match self {
            SatOutcome::Sat(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

type ClauseRef = u32;

#[derive(Debug)]
struct ClauseHeader {
    start: u32,
    len: u32,
    learnt: bool,
    deleted: bool,
    activity: f32,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: ClauseRef,
    blocker: Lit,
}

const RESTART_BASE: u64 = 100;

pub struct Solver {
    // Clause storage: headers index into one flat literal arena.
    headers: Vec<ClauseHeader>,
    arena: Vec<Lit>,
    learnt_refs: Vec<ClauseRef>,

    watches: Vec<Vec<Watcher>>, // indexed by literal code
    assigns: Vec<Option<bool>>,
    level: Vec<u32>,
    reason: Vec<Option<ClauseRef>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,

    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarOrder,
    polarity: Vec<bool>,
    seen: Vec<bool>,

    ok: bool,
    max_learnts: f64,
    adjust_conflicts: f64,
    adjust_counter: u64,
    seed_jitter: Option<SplitMix64>,
    pub stats: SolverStats,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            headers: Vec::new(),
            arena: Vec::new(),
            learnt_refs: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarOrder::new(),
            polarity: Vec::new(),
            seen: Vec::new(),
            ok: true,
            max_learnts: 0.0,
            adjust_conflicts: 100.0,
            adjust_counter: 100,
            seed_jitter: None,
            stats: SolverStats::default(),
        }
    }

    /// A solver whose branching order is perturbed by the seed; seed 0
    /// leaves activities untouched. Behaviour stays deterministic per seed.
    pub fn with_seed(seed: u64) -> Solver {
        let mut solver = Solver::new();
        if seed != 0 {
            solver.seed_jitter = Some(SplitMix64::new(seed));
        }
        solver
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var::from_index(self.assigns.len());
        self.assigns.push(None);
        self.level.push(0);
        self.reason.push(None);
        let jitter = match &mut self.seed_jitter {
            Some(rng) => rng.unit() * 1e-6,
            None => 0.0,
        };
        self.activity.push(jitter);
        self.polarity.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.grow(self.assigns.len());
        self.heap.insert(v, &self.activity);
        v
    }

    /// Grow the variable table so `var` is valid.
    pub fn ensure_var(&mut self, var: Var) {
        while self.assigns.len() <= var.index() {
            self.new_var();
        }
    }

    #[inline]
    fn value_lit(&self, lit: Lit) -> Option<bool> {
        self.assigns[lit.var().index()].map(|b| b == lit.is_positive())
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a clause. Duplicate literals are merged, tautologies dropped,
    /// and literals already false at the top level removed. Adding the
    /// empty clause (directly or by simplification) makes every future
    /// solve UNSAT with an empty core.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        debug_assert_eq!(self.decision_level(), 0, "clauses are added between solves");
        if !self.ok {
            return;
        }
        let mut lits = lits.to_vec();
        for &l in &lits {
            self.ensure_var(l.var());
        }
        lits.sort();
        lits.dedup();
        let mut write = 0;
        for i in 0..lits.len() {
            if i + 1 < lits.len() && lits[i] == !lits[i + 1] {
                return; // tautology
            }
            match self.value_lit(lits[i]) {
                Some(true) => return, // already satisfied at top level
                Some(false) => {}     // drop the literal
                None => {
                    lits[write] = lits[i];
                    write += 1;
                }
            }
        }
        lits.truncate(write);

        match lits.len() {
            0 => self.ok = false,
            1 => {
                self.unchecked_enqueue(lits[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.alloc_clause(&lits, false);
            }
        }
    }

    fn alloc_clause(&mut self, lits: &[Lit], learnt: bool) -> ClauseRef {
        debug_assert!(lits.len() >= 2);
        let cref = self.headers.len() as ClauseRef;
        let start = self.arena.len() as u32;
        self.arena.extend_from_slice(lits);
        self.headers.push(ClauseHeader {
            start,
            len: lits.len() as u32,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        if learnt {
            self.learnt_refs.push(cref);
        }
        self.watches[lits[0].code()].push(Watcher { cref, blocker: lits[1] });
        self.watches[lits[1].code()].push(Watcher { cref, blocker: lits[0] });
        cref
    }

    #[inline]
    fn clause(&self, cref: ClauseRef) -> &[Lit] {
        let h = &self.headers[cref as usize];
        &self.arena[h.start as usize..(h.start + h.len) as usize]
    }

    #[inline]
    fn clause_mut(&mut self, cref: ClauseRef) -> &mut [Lit] {
        let h = &self.headers[cref as usize];
        let (start, len) = (h.start as usize, h.len as usize);
        &mut self.arena[start..start + len]
    }

    fn unchecked_enqueue(&mut self, lit: Lit, reason: Option<ClauseRef>) {
        let v = lit.var().index();
        debug_assert!(self.assigns[v].is_none());
        self.assigns[v] = Some(lit.is_positive());
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    /// Unit propagation; returns the conflicting clause if any.
    fn propagate(&mut self) -> Option<ClauseRef> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;

            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut keep = 0;
            let mut i = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value_lit(w.blocker) == Some(true) {
                    ws[keep] = w;
                    keep += 1;
                    continue;
                }
                // Normalize: the false literal sits at position 1.
                let first = {
                    let lits = self.clause_mut(w.cref);
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                    debug_assert_eq!(lits[1], false_lit);
                    lits[0]
                };
                let watcher = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && self.value_lit(first) == Some(true) {
                    ws[keep] = watcher;
                    keep += 1;
                    continue;
                }
                // Look for a non-false replacement watch.
                let len = self.headers[w.cref as usize].len as usize;
                for k in 2..len {
                    if self.value_lit(self.clause(w.cref)[k]) != Some(false) {
                        let lits = self.clause_mut(w.cref);
                        lits.swap(1, k);
                        let new_watch = lits[1];
                        self.watches[new_watch.code()].push(watcher);
                        continue 'watchers;
                    }
                }
                // Unit or conflicting.
                ws[keep] = watcher;
                keep += 1;
                if self.value_lit(first) == Some(false) {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                } else {
                    self.unchecked_enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(keep);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, target: usize) {
        if self.decision_level() <= target {
            return;
        }
        let bound = self.trail_lim[target];
        for i in (bound..self.trail.len()).rev() {
            let lit = self.trail[i];
            let v = lit.var();
            self.polarity[v.index()] = lit.is_positive();
            self.assigns[v.index()] = None;
            self.reason[v.index()] = None;
            if !self.heap.contains(v) {
                self.heap.insert(v, &self.activity);
            }
        }
        self.trail.truncate(bound);
        self.trail_lim.truncate(target);
        self.qhead = bound;
    }

    fn bump_var(&mut self, v: Var) {
        self.activity[v.index()] += self.var_inc;
        if self.activity[v.index()] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.update(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: ClauseRef) {
        let h = &mut self.headers[cref as usize];
        h.activity += self.cla_inc as f32;
        if h.activity > 1e20 {
            for r in &self.learnt_refs {
                self.headers[*r as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backtrack level.
    fn analyze(&mut self, mut confl: ClauseRef) -> (Vec<Lit>, usize) {
        let mut learnt: Vec<Lit> = vec![Lit::from_dimacs(1).unwrap()]; // placeholder
        let mut counter = 0u32;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level() as u32;

        loop {
            if self.headers[confl as usize].learnt {
                self.bump_clause(confl);
            }
            let skip = usize::from(p.is_some());
            let len = self.headers[confl as usize].len as usize;
            for k in skip..len {
                let q = self.clause(confl)[k];
                let v = q.var();
                if !self.seen[v.index()] && self.level[v.index()] > 0 {
                    self.seen[v.index()] = true;
                    self.bump_var(v);
                    if self.level[v.index()] >= current {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            self.seen[lit.var().index()] = false;
            counter -= 1;
            if counter == 0 {
                break;
            }
            confl = self.reason[lit.var().index()].expect("UIP path literal has a reason");
        }
        learnt[0] = !p.expect("conflict at level > 0");

        // Basic minimization: drop literals whose reason is subsumed by the
        // rest of the learnt clause.
        let mut compact = Vec::with_capacity(learnt.len());
        compact.push(learnt[0]);
        for &lit in &learnt[1..] {
            let redundant = match self.reason[lit.var().index()] {
                None => false,
                Some(reason) => {
                    let len = self.headers[reason as usize].len as usize;
                    (1..len).all(|k| {
                        let q = self.clause(reason)[k];
                        self.seen[q.var().index()] || self.level[q.var().index()] == 0
                    })
                }
            };
            if !redundant {
                compact.push(lit);
            }
        }
        for lit in &learnt {
            self.seen[lit.var().index()] = false;
        }
        let mut learnt = compact;

        let backtrack = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var().index()] as usize
        };
        (learnt, backtrack)
    }

    /// The failed-assumption analysis: `p` is an assumption found false.
    /// Returns the subset of assumption literals implying the conflict.
    fn analyze_final(&mut self, p: Lit) -> Vec<Lit> {
        let mut core = vec![p];
        if self.decision_level() == 0 {
            return core;
        }
        self.seen[p.var().index()] = true;
        for i in (self.trail_lim[0]..self.trail.len()).rev() {
            let lit = self.trail[i];
            let v = lit.var();
            if !self.seen[v.index()] {
                continue;
            }
            match self.reason[v.index()] {
                None => core.push(lit), // an assumption decision
                Some(cref) => {
                    let len = self.headers[cref as usize].len as usize;
                    for k in 1..len {
                        let q = self.clause(cref)[k];
                        if self.level[q.var().index()] > 0 {
                            self.seen[q.var().index()] = true;
                        }
                    }
                }
            }
            self.seen[v.index()] = false;
        }
        self.seen[p.var().index()] = false;
        core
    }

    fn locked(&self, cref: ClauseRef) -> bool {
        let first = self.clause(cref)[0];
        self.reason[first.var().index()] == Some(cref) && self.value_lit(first) == Some(true)
    }

    fn detach_clause(&mut self, cref: ClauseRef) {
        let (w0, w1) = {
            let lits = self.clause(cref);
            (lits[0], lits[1])
        };
        self.watches[w0.code()].retain(|w| w.cref != cref);
        self.watches[w1.code()].retain(|w| w.cref != cref);
    }

    /// Throws away the least active half of the learnt clauses, keeping
    /// binary and locked ones.
    fn reduce_learnts(&mut self) {
        let mut refs = std::mem::take(&mut self.learnt_refs);
        refs.sort_by(|&a, &b| {
            let (ha, hb) = (&self.headers[a as usize], &self.headers[b as usize]);
            ha.activity.partial_cmp(&hb.activity).unwrap_or(std::cmp::Ordering::Equal)
        });
        let half = refs.len() / 2;
        let mut kept = Vec::with_capacity(refs.len() - half);
        for (i, &cref) in refs.iter().enumerate() {
            let len = self.headers[cref as usize].len;
            if i < half && len > 2 && !self.locked(cref) {
                self.detach_clause(cref);
                self.headers[cref as usize].deleted = true;
            } else {
                kept.push(cref);
            }
        }
        self.learnt_refs = kept;
    }

    /// Solves the database under assumptions with no resource limits.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SatOutcome {
        self.solve_with_budget(assumptions, &Budget::unlimited())
    }

    /// Solves the database under assumptions. The budget is checked at
    /// restart boundaries; exhaustion yields `Interrupted` and never a
    /// partial model.
    pub fn solve_with_budget(&mut self, assumptions: &[Lit], budget: &Budget) -> SatOutcome {
        self.stats.solves += 1;
        self.cancel_until(0);
        if !self.ok {
            return SatOutcome::Unsat(Vec::new());
        }
        for l in assumptions {
            self.ensure_var(l.var());
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SatOutcome::Unsat(Vec::new());
        }
        if self.max_learnts == 0.0 {
            self.max_learnts = (self.headers.len() as f64 / 3.0).max(1000.0);
        }

        let mut restarts = 0u64;
        loop {
            if budget.exhausted() {
                self.cancel_until(0);
                return SatOutcome::Interrupted;
            }
            let conflict_budget = luby(restarts) * RESTART_BASE;
            match self.search(assumptions, conflict_budget) {
                SearchStep::Sat(model) => {
                    self.cancel_until(0);
                    return SatOutcome::Sat(model);
                }
                SearchStep::Unsat(core) => {
                    self.cancel_until(0);
                    return SatOutcome::Unsat(core);
                }
                SearchStep::Restart => {
                    restarts += 1;
                    self.stats.restarts += 1;
                }
            }
        }
    }

    fn search(&mut self, assumptions: &[Lit], conflict_budget: u64) -> SearchStep {
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                conflicts += 1;
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SearchStep::Unsat(Vec::new());
                }
                let (learnt, backtrack) = self.analyze(confl);
                self.cancel_until(backtrack);
                if learnt.len() == 1 {
                    self.unchecked_enqueue(learnt[0], None);
                } else {
                    let cref = self.alloc_clause(&learnt, true);
                    self.bump_clause(cref);
                    self.unchecked_enqueue(learnt[0], Some(cref));
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;

                self.adjust_counter = self.adjust_counter.saturating_sub(1);
                if self.adjust_counter == 0 {
                    self.adjust_conflicts *= 1.5;
                    self.adjust_counter = self.adjust_conflicts as u64;
                    self.max_learnts *= 1.1;
                }
            } else {
                if conflicts >= conflict_budget {
                    self.cancel_until(0);
                    return SearchStep::Restart;
                }
                if self.learnt_refs.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_learnts();
                }

                let mut next = None;
                while self.decision_level() < assumptions.len() {
                    let p = assumptions[self.decision_level()];
                    match self.value_lit(p) {
                        Some(true) => self.trail_lim.push(self.trail.len()),
                        Some(false) => {
                            let core = self.analyze_final(p);
                            return SearchStep::Unsat(core);
                        }
                        None => {
                            next = Some(p);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(p) => p,
                    None => match self.pick_branch_var() {
                        Some(v) => v.lit(self.polarity[v.index()]),
                        None => return SearchStep::Sat(self.extract_model()),
                    },
                };
                self.trail_lim.push(self.trail.len());
                self.unchecked_enqueue(next, None);
            }
        }
    }

    fn pick_branch_var(&mut self) -> Option<Var> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v.index()].is_none() {
                return Some(v);
            }
        }
        None
    }

    fn extract_model(&self) -> Vec<bool> {
        self.assigns.iter().map(|a| a.expect("model is total")).collect()
    }

    /// Checks a total assignment against every live clause; test support.
    pub fn model_satisfies_db(&self, model: &[bool]) -> bool {
        self.headers.iter().enumerate().all(|(i, h)| {
            if h.deleted || h.learnt {
                return true;
            }
            self.clause(i as ClauseRef)
                .iter()
                .any(|l| model[l.var().index()] == l.is_positive())
        }) && self.trail_lim.is_empty()
            && self
                .trail
                .iter()
                .all(|l| model[l.var().index()] == l.is_positive())
    }
}

enum SearchStep {
    Sat(Vec<bool>),
    Unsat(Vec<Lit>),
    Restart,
}

/// Luby restart sequence: 1 1 2 1 1 2 4 1 1 2 ...
fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) / 2;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}

/// Activity-ordered binary max-heap with position tracking.
struct VarOrder {
    heap: Vec<Var>,
    pos: Vec<i32>,
}

impl VarOrder {
    fn new() -> VarOrder {
        VarOrder { heap: Vec::new(), pos: Vec::new() }
    }

    fn grow(&mut self, n: usize) {
        while self.pos.len() < n {
            self.pos.push(-1);
        }
    }

    fn contains(&self, v: Var) -> bool {
        self.pos[v.index()] >= 0
    }

    fn insert(&mut self, v: Var, activity: &[f64]) {
        debug_assert!(!self.contains(v));
        self.pos[v.index()] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, activity);
    }

    fn update(&mut self, v: Var, activity: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.pos[v.index()] as usize, activity);
        }
    }

    fn pop(&mut self, activity: &[f64]) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top.index()] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last.index()] = 0;
            self.sift_down(0, activity);
        }
        Some(top)
    }

    fn better(a: Var, b: Var, activity: &[f64]) -> bool {
        let (aa, ab) = (activity[a.index()], activity[b.index()]);
        aa > ab || (aa == ab && a < b)
    }

    fn sift_up(&mut self, mut i: usize, activity: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if Self::better(self.heap[i], self.heap[parent], activity) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize, activity: &[f64]) {
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.heap.len()
                && Self::better(self.heap[right], self.heap[left], activity)
            {
                right
            } else {
                left
            };
            if Self::better(self.heap[child], self.heap[i], activity) {
                self.swap(i, child);
                i = child;
            } else {
                break;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i].index()] = i as i32;
        self.pos[self.heap[j].index()] = j as i32;
    }
}
