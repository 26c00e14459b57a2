//! Report rows for each subcommand.
//!
//! Lists inside a CSV cell are joined with `;` (graph6 never uses it).
//! Parts of a partition are joined with `|`, vertices with spaces.

use linforest::survey::{ConjectureRow, CubicRow, ExtremalRow, GRow, GreedyRow, NgRow};
use linforest::{Shape, SolveResult};
use serde::Serialize;

use crate::report::Row;

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn join<T: AsRef<str>>(items: &[T]) -> String {
    items.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(";")
}

fn vertices(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Rows that can report a mathematical finding (a violated bound or a
/// counterexample).
pub trait Finding {
    fn finding(&self) -> bool;
}

impl Row for CubicRow {
    const HEADER: &'static [&'static str] = &["n", "max_a", "min_a", "max_lif", "min_lif", "graphs", "complete"];
    const KEY: &'static str = "n";

    fn key(&self) -> usize {
        self.n
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.max_a.to_string(),
            self.min_a.to_string(),
            self.max_lif.to_string(),
            self.min_lif.to_string(),
            self.graphs.to_string(),
            self.complete.to_string(),
        ]
    }

    fn complete(&self) -> bool {
        self.complete
    }
}

impl Finding for CubicRow {
    fn finding(&self) -> bool {
        false
    }
}

impl Row for GRow {
    const HEADER: &'static [&'static str] = &["n", "g_num", "g_den", "witness_g6", "classes", "complete"];
    const KEY: &'static str = "n";

    fn key(&self) -> usize {
        self.n
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.g_num().to_string(),
            self.g_den().to_string(),
            self.witness_g6.clone(),
            self.classes.to_string(),
            self.complete.to_string(),
        ]
    }

    fn complete(&self) -> bool {
        self.complete
    }
}

impl Finding for GRow {
    fn finding(&self) -> bool {
        false
    }
}

impl Row for ConjectureRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "classes",
        "min_f_num",
        "min_f_den",
        "equality",
        "counterexamples",
        "complete",
    ];
    const KEY: &'static str = "n";

    fn key(&self) -> usize {
        self.n
    }

    fn fields(&self) -> Vec<String> {
        let cex: Vec<String> = self
            .counterexamples
            .iter()
            .map(|c| format!("{}={}", c.graph6, c.f))
            .collect();
        vec![
            self.n.to_string(),
            self.classes.to_string(),
            opt(&self.min_f.as_ref().map(|q| q.numer().clone())),
            opt(&self.min_f.as_ref().map(|q| q.denom().clone())),
            join(&self.equality),
            join(&cex),
            self.complete.to_string(),
        ]
    }

    fn complete(&self) -> bool {
        self.complete
    }

    fn clean(field: &dyn Fn(&str) -> String) -> bool {
        field("counterexamples").is_empty()
    }
}

impl Finding for ConjectureRow {
    fn finding(&self) -> bool {
        // a value below 2 computed from a lower bound on LIF proves nothing
        self.complete && !self.counterexamples.is_empty()
    }
}

impl Row for NgRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "classes",
        "cap",
        "max_a_sum",
        "max_lif_sum",
        "a_equality",
        "lif_equality",
        "violations",
        "path_attains",
        "complete",
    ];
    const KEY: &'static str = "n";

    fn key(&self) -> usize {
        self.n
    }

    fn fields(&self) -> Vec<String> {
        let violations: Vec<&str> = self.violations.iter().map(|v| v.graph6.as_str()).collect();
        vec![
            self.n.to_string(),
            self.classes.to_string(),
            (self.n + 4).to_string(),
            self.max_a_sum.to_string(),
            self.max_lif_sum.to_string(),
            join(&self.a_equality),
            join(&self.lif_equality),
            join(&violations),
            opt(&self.path_attains),
            self.complete.to_string(),
        ]
    }

    fn complete(&self) -> bool {
        self.complete
    }

    fn clean(field: &dyn Fn(&str) -> String) -> bool {
        field("violations").is_empty() && field("path_attains") != "false"
    }
}

impl Finding for NgRow {
    fn finding(&self) -> bool {
        self.complete && (!self.violations.is_empty() || self.path_attains == Some(false))
    }
}

impl Row for ExtremalRow {
    const HEADER: &'static [&'static str] = &[
        "r",
        "order",
        "expected_order",
        "regular",
        "parity",
        "lip",
        "lip_matches_r",
        "graph6",
        "finding",
    ];
    const KEY: &'static str = "r";

    fn key(&self) -> usize {
        self.construction.r
    }

    fn fields(&self) -> Vec<String> {
        let c = &self.construction;
        let parity = serde_json::to_value(c.parity_case)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        vec![
            c.r.to_string(),
            self.order.to_string(),
            c.expected_order.to_string(),
            c.verified_regular.to_string(),
            parity,
            opt(&c.lip_value),
            opt(&c.lip_matches_r),
            self.graph6.clone(),
            opt(&self.finding),
        ]
    }

    fn complete(&self) -> bool {
        true
    }

    fn clean(field: &dyn Fn(&str) -> String) -> bool {
        field("finding").is_empty()
    }
}

impl Finding for ExtremalRow {
    fn finding(&self) -> bool {
        self.finding.is_some()
    }
}

/// A greedy partition of the `index`-th input graph.
#[derive(Debug, Serialize)]
pub struct GreedyOut {
    pub index: usize,
    #[serde(flatten)]
    pub row: GreedyRow,
}

impl Row for GreedyOut {
    const HEADER: &'static [&'static str] = &[
        "index",
        "graph6",
        "n",
        "r",
        "certified",
        "bound_num",
        "bound_den",
        "bound_ceil",
        "meets_bound",
        "lif",
        "lif_meets_bound",
        "claims_hold",
        "steps",
        "parts",
        "complete",
    ];
    const KEY: &'static str = "index";

    fn key(&self) -> usize {
        self.index
    }

    fn fields(&self) -> Vec<String> {
        let r = &self.row;
        let parts: Vec<String> = r.parts.iter().map(|p| vertices(p)).collect();
        vec![
            self.index.to_string(),
            r.graph6.clone(),
            r.n.to_string(),
            opt(&r.r),
            r.certified.to_string(),
            opt(&r.bound.as_ref().map(|b| b.numer().clone())),
            opt(&r.bound.as_ref().map(|b| b.denom().clone())),
            opt(&r.bound_ceil),
            r.meets_bound.to_string(),
            opt(&r.lif),
            opt(&r.lif_meets_bound),
            r.claims_hold.to_string(),
            r.steps.to_string(),
            parts.join("|"),
            self.complete().to_string(),
        ]
    }

    fn complete(&self) -> bool {
        self.row.lif_exact != Some(false)
    }

    fn clean(field: &dyn Fn(&str) -> String) -> bool {
        field("meets_bound") != "false"
            && field("lif_meets_bound") != "false"
            && field("lif_exact") != "false"
    }
}

impl Finding for GreedyOut {
    fn finding(&self) -> bool {
        !self.row.meets_bound || (self.complete() && self.row.lif_meets_bound == Some(false))
    }
}

/// One solver run on the `index`-th input graph.
#[derive(Debug, Serialize)]
pub struct SolveOut {
    pub index: usize,
    pub shape: Shape,
    pub value: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub witness: Vec<usize>,
}

impl SolveOut {
    pub fn new(index: usize, r: &SolveResult) -> Self {
        SolveOut {
            index,
            shape: r.shape,
            value: r.value,
            optimal: r.optimal,
            nodes: r.stats.nodes,
            witness: r.witness.to_vec(),
        }
    }

    pub fn text(&self) -> String {
        let value = if self.optimal {
            self.value.to_string()
        } else {
            format!(">= {} (budget exceeded, lower bound)", self.value)
        };
        format!(
            "shape: {}\nvalue: {value}\nwitness: {}\nnodes: {}\n",
            self.shape.name(),
            vertices(&self.witness),
            self.nodes
        )
    }
}

impl Row for SolveOut {
    const HEADER: &'static [&'static str] = &["index", "shape", "value", "optimal", "nodes", "witness"];
    const KEY: &'static str = "index";

    fn key(&self) -> usize {
        self.index
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.shape.name().to_string(),
            self.value.to_string(),
            self.optimal.to_string(),
            self.nodes.to_string(),
            vertices(&self.witness),
        ]
    }

    fn complete(&self) -> bool {
        self.optimal
    }
}
