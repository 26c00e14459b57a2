//! Exact maximum induced forest, linear forest and path search.
//!
//! The subset searches branch include-first on the lowest-index vertex that
//! can still be added. A vertex that cannot join the current set never can
//! later (the shapes are closed under induced subgraphs), so it is dropped
//! for good; this also gives the bound `|chosen| + |still addable|`. Because
//! the include branch is explored first and only strict improvements
//! replace the incumbent, the witness returned is the lexicographically
//! smallest optimal vertex set.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Shape};
use crate::vertex_set::VertexSet;

/// Largest order accepted by [`oracle_subset_scan`].
pub const ORACLE_MAX_ORDER: usize = 24;

/// Optional limits on a single solver call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        node_limit: None,
        time_limit: None,
    };

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            node_limit: Some(limit),
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub shape: Shape,
    pub value: usize,
    pub witness: VertexSet,
    /// False only for best-so-far results returned with a budget error.
    pub optimal: bool,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exceeded; best {shape} found so far has order {}", .0.value, shape = .0.shape)]
    BudgetExceeded(Box<SolveResult>),
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("order {0} is above the subset-scan limit of {ORACLE_MAX_ORDER}")]
    OrderTooLargeForOracle(usize),
}

impl SolveError {
    /// Best-so-far result carried by a budget error.
    pub fn partial(&self) -> Option<&SolveResult> {
        match self {
            SolveError::BudgetExceeded(r) => Some(r),
            _ => None,
        }
    }
}

/// Can `v` join `set` keeping the induced subgraph of the given shape
/// (paths are grown as linear forests and filtered at record time)?
#[inline]
fn can_add(g: &Graph, set: VertexSet, v: usize, shape: Shape) -> bool {
    let nbrs = g.neighbors(v).intersection(set);
    match shape {
        Shape::Forest => {
            let mut rest = nbrs;
            while let Some(u) = rest.first() {
                let comp = g.component_within(u, set);
                if comp.intersection(nbrs).len() > 1 {
                    return false;
                }
                rest = rest.difference(comp);
            }
            true
        }
        Shape::LinearForest | Shape::InducedPath => match nbrs.len() {
            0 => true,
            1 => g.degree_in(nbrs.first().unwrap(), set) <= 1,
            2 => {
                let mut it = nbrs.iter();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                g.degree_in(a, set) <= 1
                    && g.degree_in(b, set) <= 1
                    && !g.component_within(a, set).contains(b)
            }
            _ => false,
        },
    }
}

struct Search<'g> {
    g: &'g Graph,
    shape: Shape,
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    aborted: bool,
    best: Option<VertexSet>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, shape: Shape, budget: SearchBudget) -> Self {
        Search {
            g,
            shape,
            budget,
            start: Instant::now(),
            nodes: 0,
            aborted: false,
            best: None,
        }
    }

    fn best_len(&self) -> usize {
        self.best.map_or(0, |b| b.len())
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.budget.node_limit {
            if self.nodes > limit {
                self.aborted = true;
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(t) = self.budget.time_limit {
                if self.start.elapsed() > t {
                    self.aborted = true;
                }
            }
        }
        !self.aborted
    }

    fn offer(&mut self, set: VertexSet) {
        let better = match self.best {
            None => true,
            Some(b) => set.preference_cmp(b) == Ordering::Less,
        };
        if better {
            self.best = Some(set);
        }
    }

    fn is_recordable(&self, set: VertexSet) -> bool {
        match self.shape {
            Shape::InducedPath => {
                !set.is_empty()
                    && self.g.component_within(set.first().unwrap(), set) == set
            }
            _ => true,
        }
    }

    /// `open`: undecided vertices (all above the last branching vertex).
    fn subsets(&mut self, chosen: VertexSet, open: VertexSet) {
        if !self.tick() {
            return;
        }
        if (self.best.is_none() || chosen.len() > self.best_len()) && self.is_recordable(chosen) {
            self.offer(chosen);
        }
        let avail: VertexSet = open
            .iter()
            .filter(|&w| can_add(self.g, chosen, w, self.shape))
            .collect();
        if chosen.len() + avail.len() <= self.best_len() {
            return;
        }
        let Some(v) = avail.first() else { return };
        let rest = avail.without(v);
        self.subsets(chosen.with(v), rest);
        if self.aborted {
            return;
        }
        self.subsets(chosen, rest);
    }

    /// Grows induced paths from `end`; `path` already contains `end`.
    fn extend_path(&mut self, path: VertexSet, end: usize, blocked: VertexSet) {
        if !self.tick() {
            return;
        }
        self.offer(path);
        // `blocked` = path plus every neighbour of the path except `end`.
        let room = self.g.vertices().difference(blocked);
        let next = self.g.neighbors(end).intersection(room);
        if next.is_empty() {
            return;
        }
        let mut reach = VertexSet::EMPTY;
        let mut rest = next;
        while let Some(u) = rest.first() {
            let c = self.g.component_within(u, room);
            reach = reach.union(c);
            rest = rest.difference(c);
        }
        if path.len() + reach.len() < self.best_len() {
            return;
        }
        let end_nbrs = self.g.neighbors(end);
        for w in next.iter() {
            self.extend_path(path.with(w), w, blocked.union(end_nbrs).with(w));
            if self.aborted {
                return;
            }
        }
    }

    fn finish(self) -> Result<SolveResult, SolveError> {
        let witness = self.best.unwrap_or(VertexSet::EMPTY);
        assert!(
            self.g.shape_check(witness, self.shape) || (witness.is_empty() && self.shape == Shape::InducedPath),
            "solver produced an invalid {} witness {:?}",
            self.shape,
            witness
        );
        let result = SolveResult {
            shape: self.shape,
            value: witness.len(),
            witness,
            optimal: !self.aborted,
            stats: SolveStats {
                nodes: self.nodes,
                elapsed: self.start.elapsed(),
            },
        };
        if self.aborted {
            Err(SolveError::BudgetExceeded(Box::new(result)))
        } else {
            Ok(result)
        }
    }
}

fn subset_search(g: &Graph, shape: Shape, budget: SearchBudget) -> Result<SolveResult, SolveError> {
    let mut s = Search::new(g, shape, budget);
    s.subsets(VertexSet::EMPTY, g.vertices());
    s.finish()
}

/// a(G): maximum order of an induced forest.
pub fn max_induced_forest(g: &Graph, budget: SearchBudget) -> Result<SolveResult, SolveError> {
    subset_search(g, Shape::Forest, budget)
}

/// LIF(G): maximum order of an induced linear forest.
pub fn max_induced_linear_forest(g: &Graph, budget: SearchBudget) -> Result<SolveResult, SolveError> {
    subset_search(g, Shape::LinearForest, budget)
}

/// LIP(G): order of a longest induced path, by path extension from every
/// start vertex.
pub fn longest_induced_path(g: &Graph, budget: SearchBudget) -> Result<SolveResult, SolveError> {
    if g.order() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let mut s = Search::new(g, Shape::InducedPath, budget);
    for v in 0..g.order() {
        let p = VertexSet::singleton(v);
        s.extend_path(p, v, p);
        if s.aborted {
            break;
        }
    }
    s.finish()
}

/// LIP(G) by the generic subset search; kept as an independent second route.
pub fn longest_induced_path_by_subsets(
    g: &Graph,
    budget: SearchBudget,
) -> Result<SolveResult, SolveError> {
    if g.order() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    subset_search(g, Shape::InducedPath, budget)
}

pub fn solve(g: &Graph, shape: Shape, budget: SearchBudget) -> Result<SolveResult, SolveError> {
    match shape {
        Shape::Forest => max_induced_forest(g, budget),
        Shape::LinearForest => max_induced_linear_forest(g, budget),
        Shape::InducedPath => longest_induced_path(g, budget),
    }
}

/// Plain scan over all `2^n` vertex subsets. Deliberately unoptimised; used
/// as ground truth for the searches above.
pub fn oracle_subset_scan(g: &Graph, shape: Shape) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(SolveError::OrderTooLargeForOracle(n));
    }
    if n == 0 && shape == Shape::InducedPath {
        return Err(SolveError::EmptyGraph);
    }
    let start = Instant::now();
    let mut best: Option<VertexSet> = None;
    for mask in 0u128..(1u128 << n) {
        let s = VertexSet(mask);
        if !g.shape_check(s, shape) {
            continue;
        }
        if best.is_none_or(|b| s.preference_cmp(b) == Ordering::Less) {
            best = Some(s);
        }
    }
    let witness = best.expect("the empty set or a single vertex always qualifies");
    Ok(SolveResult {
        shape,
        value: witness.len(),
        witness,
        optimal: true,
        stats: SolveStats {
            nodes: 1u64 << n,
            elapsed: start.elapsed(),
        },
    })
}
