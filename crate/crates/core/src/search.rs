//! Exhaustive search over idempotent-sum free sequences.
//!
//! Sequences are enumerated as non-decreasing index paths into a fixed,
//! sorted alphabet, so each multiset is visited once. Every node carries the
//! dense reach set of its sequence; a child is pruned as soon as its reach
//! set hits the target state, which is sound because freeness is inherited
//! by subsequences.
//!
//! Work is split by first term. Each first-term branch is searched
//! sequentially and independently of the others, so node counts and the
//! reported witness do not depend on the thread count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequences::{DenseReach, Layout};

/// Limits for brute-force computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub node_limit: u64,
    pub time_limit: Duration,
    /// Largest reach-state universe the dense search will allocate.
    pub state_cap: u64,
    /// Largest alphabet the search will enumerate.
    pub alphabet_cap: usize,
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            node_limit: 100_000_000,
            time_limit: Duration::from_secs(60),
            state_cap: 10_000_000,
            alphabet_cap: 1_000_000,
            threads: 1,
        }
    }
}

impl Budget {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_node_limit(mut self, nodes: u64) -> Self {
        self.node_limit = nodes;
        self
    }

    pub fn with_time_limit(mut self, t: Duration) -> Self {
        self.time_limit = t;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Node accounting shared by the branches of one computation.
pub(crate) struct Meter {
    nodes: AtomicU64,
    limit: u64,
    deadline: Instant,
    started: Instant,
    aborted: AtomicBool,
}

const FLUSH: u64 = 1024;

impl Meter {
    pub(crate) fn new(budget: &Budget) -> Self {
        let started = Instant::now();
        Meter {
            nodes: AtomicU64::new(0),
            limit: budget.node_limit,
            deadline: started + budget.time_limit,
            started,
            aborted: AtomicBool::new(false),
        }
    }

    fn flush(&self, local: &mut u64) -> Result<()> {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded("aborted".into()));
        }
        if total > self.limit {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded(format!("node limit {} exceeded", self.limit)));
        }
        if Instant::now() > self.deadline {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded(format!(
                "time limit {:?} exceeded after {total} nodes",
                self.deadline - self.started
            )));
        }
        Ok(())
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes.load(Ordering::Relaxed), elapsed: self.started.elapsed() }
    }
}

/// Precomputed transitions for one alphabet over one layout.
pub(crate) struct Engine {
    layout: Layout,
    radix: Vec<u64>,
    /// `trans[e][i][digit]` = next digit of coordinate `i`, times its stride.
    trans: Vec<Vec<Vec<u64>>>,
    singles: Vec<u64>,
    len: usize,
    threads: usize,
}

impl Engine {
    /// `alphabet` holds raw per-coordinate amounts, one entry per element.
    pub(crate) fn new(layout: Layout, alphabet: &[Vec<u64>], budget: &Budget) -> Result<Self> {
        if layout.universe() > budget.state_cap {
            return Err(Error::BudgetExceeded(format!(
                "reach-state universe {} exceeds the state cap {}",
                layout.universe(),
                budget.state_cap
            )));
        }
        if alphabet.len() > budget.alphabet_cap {
            return Err(Error::BudgetExceeded(format!(
                "alphabet of {} elements exceeds the cap {}",
                alphabet.len(),
                budget.alphabet_cap
            )));
        }
        let r = layout.arity();
        let radix: Vec<u64> = (0..r).map(|i| layout.radix(i)).collect();
        let trans = alphabet
            .iter()
            .map(|raw| {
                (0..r)
                    .map(|i| {
                        (0..radix[i])
                            .map(|d| layout.next_digit(i, d, raw[i]) * layout.stride(i))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let singles = alphabet.iter().map(|raw| layout.step(0, raw)).collect();
        Ok(Engine {
            layout,
            radix,
            trans,
            singles,
            len: alphabet.len(),
            threads: budget.threads.max(1),
        })
    }

    #[inline]
    fn next(&self, state: u64, e: usize) -> u64 {
        let t = &self.trans[e];
        if t.len() == 1 {
            return t[0][state as usize];
        }
        let mut rest = state;
        let mut out = 0;
        for (i, ti) in t.iter().enumerate() {
            let d = rest % self.radix[i];
            rest /= self.radix[i];
            out += ti[d as usize];
        }
        out
    }

    /// Reach set of `parent · e` into `out`; `false` when it hits the target.
    #[inline]
    pub(crate) fn extend(&self, parent: &DenseReach, e: usize, out: &mut DenseReach) -> bool {
        let target = self.layout.target();
        let single = self.singles[e];
        if single == target {
            return false;
        }
        out.copy_from(parent);
        out.insert(single);
        for s in parent.iter() {
            let t = self.next(s, e);
            if t == target {
                return false;
            }
            out.insert(t);
        }
        true
    }

    pub(crate) fn fresh(&self) -> DenseReach {
        DenseReach::new(self.layout.universe())
    }

    fn pool(&self) -> Option<rayon::ThreadPool> {
        if self.threads <= 1 {
            return None;
        }
        rayon::ThreadPoolBuilder::new().num_threads(self.threads).build().ok()
    }

    fn run_branches<T: Send>(&self, f: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
        match self.pool() {
            Some(pool) => pool.install(|| (0..self.len).into_par_iter().map(&f).collect()),
            None => (0..self.len).map(f).collect(),
        }
    }

    /// A free sequence of exactly `len` terms, as alphabet positions.
    pub(crate) fn find_free(&self, len: usize, meter: &Meter) -> Result<Option<Vec<usize>>> {
        if len == 0 {
            return Ok(Some(Vec::new()));
        }
        let found = self.run_branches(|first| {
            let mut st = Walk::new(self, len);
            let mut local = 0;
            let r = st.seek(first, len, meter, &mut local);
            meter.flush(&mut local)?;
            r
        })?;
        Ok(found.into_iter().flatten().next())
    }

    /// Visit every nonempty free sequence of length at most `max_len`.
    /// Visitor state is per first-term branch; the branch states are
    /// returned in alphabet order.
    pub(crate) fn fold_free<A: Send>(
        &self,
        max_len: usize,
        meter: &Meter,
        init: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &[usize], &DenseReach) + Sync,
    ) -> Result<Vec<A>> {
        if max_len == 0 {
            return Ok(Vec::new());
        }
        self.run_branches(|first| {
            let mut acc = init();
            let mut st = Walk::new(self, max_len);
            let mut local = 0;
            let r = st.visit_all(first, max_len, meter, &mut local, &mut |p, reach| {
                visit(&mut acc, p, reach)
            });
            meter.flush(&mut local)?;
            r.map(|_| acc)
        })
    }

    /// Length of a longest free sequence, with a witness.
    ///
    /// Iterative deepening from `start`: when a free sequence of that length
    /// exists the length is raised until none does; otherwise it is lowered
    /// until one does. `hard_cap` bounds the climb.
    pub(crate) fn longest_free(
        &self,
        start: usize,
        hard_cap: usize,
        meter: &Meter,
    ) -> Result<(usize, Vec<usize>)> {
        let mut len = start.min(hard_cap);
        match self.find_free(len, meter)? {
            Some(mut best) => {
                while len < hard_cap {
                    match self.find_free(len + 1, meter)? {
                        Some(w) => {
                            len += 1;
                            best = w;
                        }
                        None => break,
                    }
                }
                Ok((len, best))
            }
            None => loop {
                len -= 1;
                if let Some(w) = self.find_free(len, meter)? {
                    return Ok((len, w));
                }
            },
        }
    }
}

/// Depth-first walker for one first-term branch.
struct Walk<'a> {
    eng: &'a Engine,
    stack: Vec<DenseReach>,
    path: Vec<usize>,
}

impl<'a> Walk<'a> {
    fn new(eng: &'a Engine, depth: usize) -> Self {
        Walk {
            eng,
            stack: (0..=depth).map(|_| eng.fresh()).collect(),
            path: Vec::with_capacity(depth),
        }
    }

    fn tick(&self, meter: &Meter, local: &mut u64) -> Result<()> {
        *local += 1;
        if *local >= FLUSH {
            meter.flush(local)?;
        }
        Ok(())
    }

    fn seek(&mut self, first: usize, len: usize, meter: &Meter, local: &mut u64) -> Result<Option<Vec<usize>>> {
        self.stack[0].clear();
        let (root, rest) = self.stack.split_at_mut(1);
        if !self.eng.extend(&root[0], first, &mut rest[0]) {
            return Ok(None);
        }
        self.tick(meter, local)?;
        self.path.clear();
        self.path.push(first);
        if self.dfs(1, first, len, meter, local)? {
            Ok(Some(self.path.clone()))
        } else {
            Ok(None)
        }
    }

    fn dfs(&mut self, depth: usize, min: usize, len: usize, meter: &Meter, local: &mut u64) -> Result<bool> {
        if depth == len {
            return Ok(true);
        }
        for e in min..self.eng.len {
            let (lo, hi) = self.stack.split_at_mut(depth + 1);
            if !self.eng.extend(&lo[depth], e, &mut hi[0]) {
                continue;
            }
            self.tick(meter, local)?;
            self.path.push(e);
            if self.dfs(depth + 1, e, len, meter, local)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }

    fn visit_all(
        &mut self,
        first: usize,
        max_len: usize,
        meter: &Meter,
        local: &mut u64,
        visit: &mut dyn FnMut(&[usize], &DenseReach),
    ) -> Result<()> {
        self.stack[0].clear();
        let (root, rest) = self.stack.split_at_mut(1);
        if !self.eng.extend(&root[0], first, &mut rest[0]) {
            return Ok(());
        }
        self.tick(meter, local)?;
        self.path.clear();
        self.path.push(first);
        self.visit_rec(1, first, max_len, meter, local, visit)
    }

    fn visit_rec(
        &mut self,
        depth: usize,
        min: usize,
        max_len: usize,
        meter: &Meter,
        local: &mut u64,
        visit: &mut dyn FnMut(&[usize], &DenseReach),
    ) -> Result<()> {
        visit(&self.path, &self.stack[depth]);
        if depth == max_len {
            return Ok(());
        }
        for e in min..self.eng.len {
            let (lo, hi) = self.stack.split_at_mut(depth + 1);
            if !self.eng.extend(&lo[depth], e, &mut hi[0]) {
                continue;
            }
            self.tick(meter, local)?;
            self.path.push(e);
            self.visit_rec(depth + 1, e, max_len, meter, local, visit)?;
            self.path.pop();
        }
        Ok(())
    }
}
