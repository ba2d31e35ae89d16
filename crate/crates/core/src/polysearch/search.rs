use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::identity::IdentitySystem;
use super::table::{decode, encode, tuple_count, PolymorphismTable};
use super::verify::verify_polymorphism;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_CLASSES: usize = 2000;
/// Upper bound on `|V(H)|^n` before any merging happens.
pub const MAX_RAW_TUPLES: usize = 1 << 22;

#[derive(Clone, Debug, Serialize)]
pub struct SearchOptions {
    /// Branching nodes before giving up; `None` for no limit.
    pub max_nodes: Option<u64>,
    /// Wall-clock limit in milliseconds; `None` for no limit.
    pub time_ms: Option<u64>,
    /// Largest number of tuple classes accepted after merging.
    pub max_classes: usize,
    /// Seeds tie-breaking among equally constrained classes.
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_nodes: None,
            time_ms: Some(60_000),
            max_classes: DEFAULT_MAX_CLASSES,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SearchStatus {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub tuples: usize,
    pub classes: usize,
    pub constraints: usize,
    pub nodes: u64,
    pub propagations: u64,
    pub backtracks: u64,
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub table: Option<PolymorphismTable>,
    pub stats: SearchStats,
    pub seed: u64,
}

/// Tuples of `H^n` grouped into classes forced equal by the identities.
pub(crate) struct TupleClasses {
    pub(crate) class_of: Vec<usize>,
    pub(crate) count: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Union-find over every instance of every identity, classes numbered by first tuple.
pub(crate) fn merge_tuples(n: usize, sys: &IdentitySystem) -> Result<TupleClasses> {
    let size = tuple_count(n, sys.arity)
        .filter(|&s| s <= MAX_RAW_TUPLES)
        .ok_or_else(|| Error::budget("tuple", MAX_RAW_TUPLES, usize::MAX))?;
    let mut parent: Vec<usize> = (0..size).collect();
    let k = sys.variables.len();
    let assignments = tuple_count(n, k)
        .filter(|&s| s <= MAX_RAW_TUPLES)
        .ok_or_else(|| Error::budget("variable assignment", MAX_RAW_TUPLES, usize::MAX))?;
    let mut lhs = vec![0; sys.arity];
    let mut rhs = vec![0; sys.arity];
    for (l, r) in &sys.identities {
        for code in 0..assignments {
            let a = decode(code, n, k);
            for p in 0..sys.arity {
                lhs[p] = a[l[p]];
                rhs[p] = a[r[p]];
            }
            let (x, y) = (find(&mut parent, encode(&lhs, n)), find(&mut parent, encode(&rhs, n)));
            if x != y {
                // keeping the smaller root makes classes independent of merge order
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                parent[hi] = lo;
            }
        }
    }
    let mut id = vec![usize::MAX; size];
    let mut class_of = vec![0; size];
    let mut count = 0;
    for t in 0..size {
        let r = find(&mut parent, t);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        class_of[t] = id[r];
    }
    Ok(TupleClasses { class_of, count })
}

struct Solver<'a> {
    nbr: &'a [u64],
    adj: Vec<Vec<usize>>,
    priority: Vec<usize>,
    stats: SearchStats,
    start: Instant,
    opts: &'a SearchOptions,
    timed_out: bool,
}

impl Solver<'_> {
    fn neighbourhood(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            out |= self.nbr[b];
            m &= m - 1;
        }
        out
    }

    /// Arc consistency from the classes in `queue`; false on a wipe-out.
    fn propagate(&mut self, dom: &mut [u64], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; dom.len()];
        for &q in &queue {
            queued[q] = true;
        }
        while let Some(y) = queue.pop() {
            queued[y] = false;
            let support = self.neighbourhood(dom[y]);
            for i in 0..self.adj[y].len() {
                let x = self.adj[y][i];
                let new = dom[x] & support;
                if new != dom[x] {
                    self.stats.propagations += 1;
                    if new == 0 {
                        return false;
                    }
                    dom[x] = new;
                    if !queued[x] {
                        queued[x] = true;
                        queue.push(x);
                    }
                }
            }
        }
        true
    }

    fn out_of_budget(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if self.opts.max_nodes.is_some_and(|m| self.stats.nodes >= m) {
            self.timed_out = true;
        } else if self.stats.nodes % 256 == 0 {
            if let Some(ms) = self.opts.time_ms {
                if self.start.elapsed().as_millis() >= ms as u128 {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// Depth-first search; `Some(domains)` with all singletons on success.
    fn solve(&mut self, dom: Vec<u64>) -> Option<Vec<u64>> {
        let pick = (0..dom.len())
            .filter(|&c| dom[c].count_ones() > 1)
            .min_by_key(|&c| (dom[c].count_ones(), self.priority[c]));
        let Some(c) = pick else {
            return Some(dom);
        };
        let mut values = dom[c];
        while values != 0 {
            let v = values.trailing_zeros();
            values &= values - 1;
            if self.out_of_budget() {
                return None;
            }
            self.stats.nodes += 1;
            let mut next = dom.clone();
            next[c] = 1 << v;
            if self.propagate(&mut next, vec![c]) {
                if let Some(done) = self.solve(next) {
                    return Some(done);
                }
                if self.timed_out {
                    return None;
                }
            }
            self.stats.backtracks += 1;
        }
        None
    }
}

/// Searches for a polymorphism of `h` satisfying `sys`.
///
/// Tuples forced equal by the identities share one variable; each pair of componentwise
/// adjacent tuples constrains their classes to adjacent values. The result is `UNSAT` only
/// when the search space is exhausted; any limit hit yields `TIMEOUT`.
pub fn search_polymorphism(h: &Graph, sys: &IdentitySystem, opts: &SearchOptions) -> Result<SearchOutcome> {
    sys.validate()?;
    let start = Instant::now();
    let n = h.n();
    if n > 64 {
        return Err(Error::Invalid("polymorphism search supports at most 64 vertices".into()));
    }
    let merged = merge_tuples(n, sys)?;
    let mut stats = SearchStats {
        tuples: merged.class_of.len(),
        classes: merged.count,
        ..SearchStats::default()
    };
    if merged.count > opts.max_classes {
        return Err(Error::budget("tuple class", opts.max_classes, merged.count));
    }
    let finish = |status, table, mut stats: SearchStats| {
        stats.wall_ms = start.elapsed().as_millis();
        Ok(SearchOutcome {
            status,
            table,
            stats,
            seed: opts.seed,
        })
    };

    let nbr = h.neighbor_masks();
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let looped: u64 = (0..n).filter(|&v| h.has_self_loop(v)).fold(0, |m, v| m | 1 << v);
    let mut dom = vec![all; merged.count];
    if sys.idempotent {
        for v in 0..n {
            let c = merged.class_of[encode(&vec![v; sys.arity], n)];
            dom[c] &= 1 << v;
        }
    }

    // adjacency constraints between classes
    let lists: Vec<Vec<usize>> = (0..n).map(|v| h.neighbors(v).collect()).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); merged.count];
    let mut pos = vec![0usize; sys.arity];
    let mut y = vec![0usize; sys.arity];
    for (t, &cx) in merged.class_of.iter().enumerate() {
        let x = decode(t, n, sys.arity);
        if x.iter().any(|&v| lists[v].is_empty()) {
            continue;
        }
        pos.iter_mut().for_each(|p| *p = 0);
        'odometer: loop {
            for k in 0..sys.arity {
                y[k] = lists[x[k]][pos[k]];
            }
            let u = encode(&y, n);
            // each unordered pair once
            if u >= t {
                let cy = merged.class_of[u];
                if cx == cy {
                    dom[cx] &= looped;
                } else {
                    adj[cx].push(cy);
                    adj[cy].push(cx);
                }
            }
            let mut k = sys.arity;
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                pos[k] += 1;
                if pos[k] < lists[x[k]].len() {
                    continue 'odometer;
                }
                pos[k] = 0;
            }
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    stats.constraints = adj.iter().map(Vec::len).sum::<usize>() / 2;

    if dom.iter().any(|&d| d == 0) {
        return finish(SearchStatus::Unsat, None, stats);
    }
    let mut priority: Vec<usize> = (0..merged.count).collect();
    priority.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    let mut solver = Solver {
        nbr: &nbr,
        adj,
        priority,
        stats,
        start,
        opts,
        timed_out: false,
    };
    let everything: Vec<usize> = (0..merged.count).collect();
    if !solver.propagate(&mut dom, everything) {
        return finish(SearchStatus::Unsat, None, solver.stats);
    }
    let result = solver.solve(dom);
    let timed_out = solver.timed_out;
    let stats = solver.stats;
    match result {
        Some(dom) => {
            let values: Vec<usize> = merged
                .class_of
                .iter()
                .map(|&c| dom[c].trailing_zeros() as usize)
                .collect();
            let table = PolymorphismTable::new(h.clone(), sys.arity, values)?;
            if let Err(c) = verify_polymorphism(h, &table, sys) {
                panic!("search produced a table that fails verification: {c}");
            }
            finish(SearchStatus::Sat, Some(table), stats)
        }
        None if timed_out => finish(SearchStatus::Timeout, None, stats),
        None => finish(SearchStatus::Unsat, None, stats),
    }
}
