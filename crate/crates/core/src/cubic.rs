//! Connected cubic graphs up to isomorphism, for building graph6 corpora.
//!
//! Classes of order `n` are grown from all simple cubic graphs (connected or
//! not) of smaller order by three operations: edge insertion (subdivide two
//! distinct edges and join the two new vertices), diamond insertion (replace
//! an edge by a path through a copy of K4 minus an edge, entering and leaving
//! at its two degree-2 vertices) and triangle expansion (replace a vertex by
//! a triangle). Disconnected parents matter: a bridge whose removal splits
//! the graph can only be undone from a disjoint union. Duplicates are removed
//! with a canonical labelling found by
//! individualisation and colour refinement, which scales well past the
//! orders the exhaustive permutation search in [`crate::enumerate`] covers.

use std::sync::Mutex;

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::refine_colors;
use crate::graph::{Graph, GraphFamily};
use crate::vertex_set::VertexSet;

/// Largest order the generator accepts.
pub const CUBIC_MAX_ORDER: usize = 22;

/// Number of connected cubic graphs of order 4, 6, ..., 18.
pub const CONNECTED_CUBIC_COUNTS: [(usize, usize); 8] = [
    (4, 1),
    (6, 2),
    (8, 5),
    (10, 19),
    (12, 85),
    (14, 509),
    (16, 4060),
    (18, 41301),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("cubic graphs need an even order of at least 4 (and at most {CUBIC_MAX_ORDER}), got {0}")]
    BadOrder(usize),
}

/// Canonical key: adjacency rows after relabelling into canonical order.
pub type CanonKey = Vec<u128>;

fn relabel_rows(g: &Graph, pos: &[usize]) -> CanonKey {
    let mut rows = vec![0u128; g.order()];
    for v in 0..g.order() {
        rows[pos[v]] = g.neighbors(v).iter().fold(0u128, |acc, u| acc | 1u128 << pos[u]);
    }
    rows
}

fn ir_search(g: &Graph, colors: Vec<usize>, best: &mut Option<(CanonKey, Vec<usize>)>) {
    let colors = refine_colors(g, colors);
    let n = g.order();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let key = relabel_rows(g, &colors);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            *best = Some((key, colors));
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = (0..n)
            .map(|u| {
                if colors[u] == target && u != v {
                    2 * colors[u] + 1
                } else {
                    2 * colors[u]
                }
            })
            .collect();
        ir_search(g, split, best);
    }
}

/// Canonical key and position map (`pos[v]` = canonical index of `v`).
pub fn canonical_key(g: &Graph) -> (CanonKey, Vec<usize>) {
    if g.order() == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut best = None;
    ir_search(g, vec![0; g.order()], &mut best);
    best.expect("search reaches at least one leaf")
}

/// `g` relabelled into canonical order.
pub fn canonical_relabel(g: &Graph) -> Graph {
    let (_, pos) = canonical_key(g);
    g.relabel(&pos)
}

fn insert_edge(g: &Graph, (a, b): (usize, usize), (c, d): (usize, usize)) -> Graph {
    let n = g.order();
    let (x, y) = (n, n + 1);
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v)).collect();
    adj[a].remove(b);
    adj[b].remove(a);
    adj[c].remove(d);
    adj[d].remove(c);
    adj.push([a, b, y].into_iter().collect());
    adj.push([c, d, x].into_iter().collect());
    for (v, w) in [(a, x), (b, x), (c, y), (d, y)] {
        adj[v].insert(w);
    }
    Graph::from_adjacency(adj).expect("edge insertion keeps the graph simple")
}

fn insert_diamond(g: &Graph, (u, v): (usize, usize)) -> Graph {
    let n = g.order();
    let (a, b, c, d) = (n, n + 1, n + 2, n + 3);
    let mut adj: Vec<VertexSet> = (0..n).map(|x| g.neighbors(x)).collect();
    adj[u].remove(v);
    adj[v].remove(u);
    adj[u].insert(c);
    adj[v].insert(d);
    adj.push([b, c, d].into_iter().collect());
    adj.push([a, c, d].into_iter().collect());
    adj.push([a, b, u].into_iter().collect());
    adj.push([a, b, v].into_iter().collect());
    Graph::from_adjacency(adj).expect("diamond insertion keeps the graph simple")
}

fn expand_triangle(g: &Graph, v: usize) -> Graph {
    let n = g.order();
    let nb = g.neighbors(v).to_vec();
    let (b, c) = (nb[1], nb[2]);
    let (y, z) = (n, n + 1);
    let mut adj: Vec<VertexSet> = (0..n).map(|x| g.neighbors(x)).collect();
    adj[v] = [nb[0], y, z].into_iter().collect();
    adj[b].remove(v);
    adj[b].insert(y);
    adj[c].remove(v);
    adj[c].insert(z);
    adj.push([v, z, b].into_iter().collect());
    adj.push([v, y, c].into_iter().collect());
    Graph::from_adjacency(adj).expect("triangle expansion keeps the graph simple")
}

/// Generated levels, shared across calls: `connected[k]` and `all[k]` hold
/// order `2k` (empty below 4).
#[derive(Default)]
struct Levels {
    connected: Vec<Vec<Graph>>,
    all: Vec<Vec<Graph>>,
}

static LEVELS: Mutex<Levels> = Mutex::new(Levels {
    connected: Vec::new(),
    all: Vec::new(),
});

/// All connected cubic graphs of order `n`, canonically labelled and sorted
/// by canonical key. Levels are built once per process and reused.
pub fn connected_cubic(n: usize) -> Result<Vec<Graph>, CubicError> {
    if n < 4 || n % 2 == 1 || n > CUBIC_MAX_ORDER {
        return Err(CubicError::BadOrder(n));
    }
    let half = n / 2;
    let mut lv = LEVELS.lock().unwrap_or_else(|e| e.into_inner());
    if lv.connected.len() < 3 {
        let k4 = vec![Graph::standard(GraphFamily::Complete(4)).expect("K4")];
        lv.connected = vec![Vec::new(), Vec::new(), k4.clone()];
        lv.all = vec![Vec::new(), Vec::new(), k4];
    }
    for k in lv.connected.len()..=half {
        let from_diamonds: &[Graph] = if k >= 4 { &lv.all[k - 2] } else { &[] };
        let connected = grow(&lv.all[k - 1], from_diamonds, &lv.connected[k - 1]);
        let mut all = connected.clone();
        lv.connected.push(connected);
        all.extend(disjoint_unions(&lv.connected, k));
        lv.all.push(all);
    }
    Ok(lv.connected[half].clone())
}

/// Every disjoint union of at least two connected classes with total order
/// `2k`, components taken in non-decreasing (order, index) sequence.
fn disjoint_unions(connected: &[Vec<Graph>], k: usize) -> Vec<Graph> {
    fn rec(
        connected: &[Vec<Graph>],
        left: usize,
        min: (usize, usize),
        acc: &Graph,
        parts: usize,
        out: &mut Vec<Graph>,
    ) {
        if left == 0 {
            if parts >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for k in min.0..=left {
            let lo = if k == min.0 { min.1 } else { 0 };
            for (i, c) in connected[k].iter().enumerate().skip(lo) {
                let next = acc.disjoint_union(c).expect("order fits");
                rec(connected, left - k, (k, i), &next, parts + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(connected, k, (2, 0), &Graph::empty(0).expect("order 0"), 0, &mut out);
    out
}

fn canon_pair(h: Graph) -> (CanonKey, Graph) {
    let (key, pos) = canonical_key(&h);
    let g = h.relabel(&pos);
    (key, g)
}

fn grow(small: &[Graph], smaller: &[Graph], triangles: &[Graph]) -> Vec<Graph> {
    let mut children: Vec<(CanonKey, Graph)> = small
        .par_iter()
        .flat_map_iter(|g| {
            let edges = g.edges();
            let mut out = Vec::with_capacity(edges.len() * edges.len() / 2);
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    let h = insert_edge(g, edges[i], edges[j]);
                    if h.is_connected() {
                        out.push(canon_pair(h));
                    }
                }
            }
            out
        })
        .collect();
    children.par_extend(smaller.par_iter().flat_map_iter(|g| {
        g.edges()
            .into_iter()
            .map(|e| insert_diamond(g, e))
            .filter(Graph::is_connected)
            .map(canon_pair)
            .collect::<Vec<_>>()
    }));
    children.par_extend(triangles.par_iter().flat_map_iter(|g| {
        (0..g.order()).map(|v| canon_pair(expand_triangle(g, v))).collect::<Vec<_>>()
    }));
    children.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    children.dedup_by(|a, b| a.0 == b.0);
    children.into_iter().map(|(_, g)| g).collect()
}
