//! Small-graph enumeration up to isomorphism and random regular graphs.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest order handled by [`canonical_form`] and [`enumerate_connected`].
pub const ENUM_MAX_ORDER: usize = 8;

const RESTART_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {0} is above the enumeration limit of {ENUM_MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("no {r}-regular graph on {n} vertices exists")]
    InfeasibleDegree { n: usize, r: usize },
    #[error("gave up after {0} restarts")]
    RetriesExhausted(usize),
}

/// Lexicographically smallest upper-triangle bit string (column order
/// `x(0,1), x(0,2), x(1,2), ...`) over all vertex orderings compatible with
/// the iterated-degree colouring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u128,
}

/// Colour refinement starting from degrees. Colours are ranks of sorted
/// signatures, so they are invariant under relabelling.
pub(crate) fn refine_colors(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.order();
    let mut classes = colors.iter().collect::<HashSet<_>>().len();
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| sorted.binary_search(&k).expect("key present"))
            .collect();
        let count = sorted.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

fn is_twin(g: &Graph, a: usize, b: usize) -> bool {
    g.neighbors(a).without(b) == g.neighbors(b).without(a)
}

struct Canon<'g> {
    g: &'g Graph,
    n: usize,
    total_bits: usize,
    /// Required colour at each position.
    slot_color: Vec<usize>,
    colors: Vec<usize>,
    perm: Vec<usize>,
    best: Option<(u128, Vec<usize>)>,
}

impl Canon<'_> {
    fn prefix_bits(pos: usize) -> usize {
        pos * (pos + 1) / 2
    }

    /// `prefix` holds the bits of columns `1..pos`.
    fn search(&mut self, pos: usize, used: VertexSet, prefix: u128) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| prefix < *b) {
                self.best = Some((prefix, self.perm.clone()));
            }
            return;
        }
        let want = self.slot_color[pos];
        let len = Self::prefix_bits(pos);
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if used.contains(v) || self.colors[v] != want {
                continue;
            }
            if tried.iter().any(|&t| is_twin(self.g, t, v)) {
                continue;
            }
            tried.push(v);
            let mut col = 0u128;
            for q in 0..pos {
                col = (col << 1) | self.g.has_edge(self.perm[q], v) as u128;
            }
            let next = (prefix << pos) | col;
            if let Some((b, _)) = &self.best {
                if next > b >> (self.total_bits - len) {
                    continue;
                }
            }
            self.perm.push(v);
            self.search(pos + 1, used.with(v), next);
            self.perm.pop();
        }
    }
}

/// Canonical form together with a canonical ordering: `order[p]` is the
/// vertex placed at position `p`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>), EnumError> {
    let n = g.order();
    if n > ENUM_MAX_ORDER {
        return Err(EnumError::OrderTooLarge(n));
    }
    let colors = refine_colors(g, g.degree_sequence());
    let mut slot_color = colors.clone();
    slot_color.sort_unstable();
    let mut c = Canon {
        g,
        n,
        total_bits: n * n.saturating_sub(1) / 2,
        slot_color,
        colors,
        perm: Vec::with_capacity(n),
        best: None,
    };
    c.search(0, VertexSet::EMPTY, 0);
    let (bits, order) = c.best.expect("at least one ordering exists");
    Ok((CanonicalForm { n, bits }, order))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, EnumError> {
    canonical_labeling(g).map(|(f, _)| f)
}

/// The graph relabelled into its canonical ordering.
pub fn canonical_graph(g: &Graph) -> Result<Graph, EnumError> {
    let (_, order) = canonical_labeling(g)?;
    let mut perm = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.relabel(&perm))
}

/// Conjunctive graph filter; `None` fields accept everything.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFilter {
    pub min_degree: Option<usize>,
    pub regular_r: Option<usize>,
    pub connected: bool,
}

impl GraphFilter {
    pub fn connected() -> Self {
        GraphFilter {
            connected: true,
            ..Default::default()
        }
    }

    pub fn with_min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }

    pub fn with_regularity(mut self, r: usize) -> Self {
        self.regular_r = Some(r);
        self
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        if self.connected && !g.is_connected() {
            return false;
        }
        if let Some(d) = self.min_degree {
            if g.min_degree().unwrap_or(0) < d {
                return false;
            }
        }
        if let Some(r) = self.regular_r {
            if g.regularity().ok().flatten() != Some(r) {
                return false;
            }
        }
        true
    }
}

static CLASSES: [OnceLock<Vec<Graph>>; ENUM_MAX_ORDER + 1] = [const { OnceLock::new() }; ENUM_MAX_ORDER + 1];

/// All connected graphs on `n` vertices, one canonical representative per
/// isomorphism class, sorted by canonical form.
///
/// Every connected graph has a vertex whose removal leaves it connected,
/// so adding a vertex to the (n-1)-classes in every possible way reaches
/// every class.
pub fn connected_classes(n: usize) -> Result<&'static [Graph], EnumError> {
    if n > ENUM_MAX_ORDER {
        return Err(EnumError::OrderTooLarge(n));
    }
    Ok(CLASSES[n].get_or_init(|| build_level(n)))
}

fn build_level(n: usize) -> Vec<Graph> {
    match n {
        0 => vec![Graph::empty(0).unwrap()],
        1 => vec![Graph::empty(1).unwrap()],
        _ => {
            let prev = connected_classes(n - 1).expect("smaller order");
            let mut children: Vec<(CanonicalForm, Graph)> = prev
                .par_iter()
                .flat_map_iter(|g| {
                    let m = g.order();
                    (1u128..(1u128 << m)).map(move |mask| {
                        let h = g.with_vertex(VertexSet(mask)).expect("order within range");
                        let (form, _) = canonical_labeling(&h).expect("order within range");
                        (form, h)
                    })
                })
                .collect();
            children.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
            children.dedup_by(|a, b| a.0 == b.0);
            children
                .into_iter()
                .map(|(_, h)| canonical_graph(&h).expect("order within range"))
                .collect()
        }
    }
}

/// Connected classes of order `n` passing `filter`.
pub fn enumerate_connected(
    n: usize,
    filter: GraphFilter,
) -> Result<impl Iterator<Item = &'static Graph>, EnumError> {
    Ok(connected_classes(n)?.iter().filter(move |g| filter.accepts(g)))
}

/// A random simple r-regular graph from the pairing model.
///
/// Points are paired one at a time, each pair drawn uniformly among the
/// pairs that create neither a loop nor a repeated edge; a dead end
/// restarts the pairing. Deterministic for a fixed seed.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph, EnumError> {
    if r >= n || (n * r) % 2 == 1 {
        return Err(EnumError::InfeasibleDegree { n, r });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..RESTART_LIMIT {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
        points.shuffle(&mut rng);
        let mut g = Graph::empty(n).expect("order checked by caller");
        while !points.is_empty() {
            let mut valid = Vec::new();
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let (a, b) = (points[i], points[j]);
                    if a != b && !g.has_edge(a, b) {
                        valid.push((i, j));
                    }
                }
            }
            if valid.is_empty() {
                continue 'restart;
            }
            let (i, j) = valid[rng.gen_range(0..valid.len())];
            g = g.with_edge(points[i], points[j]).expect("valid pair");
            points.swap_remove(j);
            points.swap_remove(i);
        }
        return Ok(g);
    }
    Err(EnumError::RetriesExhausted(RESTART_LIMIT))
}
