//! Batch computations behind the command-line reports.
//!
//! Every function here maps graphs to rows in input order; parallel runs
//! and serial runs give identical output.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{caro_wei_t, f_ratio, lif_regular_lower_bound, lip_order_lower_bound, lip_upper_bound, BoundsError};
use crate::enumerate::{connected_classes, enumerate_connected, EnumError, GraphFilter};
use crate::extremal::{construct_extremal_lip, ExtremalConstruction};
use crate::graph::{Graph, GraphFamily, Shape};
use crate::greedy::{greedy_partition, verify_claims, GreedyError};
use crate::io::encode_graph6;
use crate::scalar::{ceil, serialize_ratio};
use crate::solve::{solve, SearchBudget, SolveError, SolveResult};
use crate::Rational;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
}

/// Exact value or a budget-limited lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub value: usize,
    pub exact: bool,
}

/// Runs one solver, folding a budget overrun into a non-exact value.
pub fn measure(g: &Graph, shape: Shape, budget: SearchBudget) -> Result<(Measured, SolveResult), SolveError> {
    match solve(g, shape, budget) {
        Ok(r) => Ok((Measured { value: r.value, exact: true }, r)),
        Err(SolveError::BudgetExceeded(r)) => Ok((Measured { value: r.value, exact: false }, *r)),
        Err(e) => Err(e),
    }
}

fn measure_value(g: &Graph, shape: Shape, budget: SearchBudget) -> Measured {
    measure(g, shape, budget).expect("graphs in a survey are nonempty").0
}

/// Runs `f` on a rayon pool of `jobs` threads (`None` = rayon default).
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicRow {
    pub n: usize,
    pub max_a: usize,
    pub min_a: usize,
    pub max_lif: usize,
    pub min_lif: usize,
    pub graphs: usize,
    pub complete: bool,
}

/// Per-order extremes of a(G) and LIF(G) over a corpus of cubic graphs of
/// one order.
pub fn table_cubic_row(graphs: &[Graph], budget: SearchBudget) -> Result<CubicRow, SurveyError> {
    let Some(first) = graphs.first() else {
        return Err(SurveyError::Input("empty cubic corpus".into()));
    };
    let n = first.order();
    if let Some(bad) = graphs
        .iter()
        .position(|g| g.order() != n || g.regularity().ok().flatten() != Some(3))
    {
        return Err(SurveyError::Input(format!(
            "graph #{bad} is not a cubic graph of order {n}"
        )));
    }
    let values: Vec<(Measured, Measured)> = graphs
        .par_iter()
        .map(|g| {
            (
                measure_value(g, Shape::Forest, budget),
                measure_value(g, Shape::LinearForest, budget),
            )
        })
        .collect();
    let a = values.iter().map(|v| v.0.value);
    let lif = values.iter().map(|v| v.1.value);
    Ok(CubicRow {
        n,
        max_a: a.clone().max().unwrap(),
        min_a: a.min().unwrap(),
        max_lif: lif.clone().max().unwrap(),
        min_lif: lif.min().unwrap(),
        graphs: graphs.len(),
        complete: values.iter().all(|v| v.0.exact && v.1.exact),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GRow {
    pub n: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub g: Rational,
    pub witness_g6: String,
    pub classes: usize,
    pub complete: bool,
}

impl GRow {
    pub fn g_num(&self) -> &BigInt {
        self.g.numer()
    }

    pub fn g_den(&self) -> &BigInt {
        self.g.denom()
    }
}

/// min f(G) = LIF(G)/t(G) over the connected graphs given (disconnected
/// inputs are skipped). Ties keep the first graph.
pub fn g_row(graphs: &[Graph], budget: SearchBudget) -> Result<GRow, SurveyError> {
    let connected: Vec<&Graph> = graphs.iter().filter(|g| g.is_connected()).collect();
    let Some(first) = connected.first() else {
        return Err(SurveyError::Input("no connected graphs to survey".into()));
    };
    let n = first.order();
    if connected.iter().any(|g| g.order() != n) {
        return Err(SurveyError::Input("graphs of mixed order in one g(n) corpus".into()));
    }
    let fs: Vec<(Rational, bool)> = connected
        .par_iter()
        .map(|g| {
            let m = measure_value(g, Shape::LinearForest, budget);
            (f_ratio::<BigInt>(g, m.value), m.exact)
        })
        .collect();
    let (idx, best) = fs
        .iter()
        .enumerate()
        .fold(None::<(usize, &Rational)>, |acc, (i, (f, _))| match acc {
            Some((_, b)) if b <= f => acc,
            _ => Some((i, f)),
        })
        .expect("at least one graph");
    Ok(GRow {
        n,
        g: best.clone(),
        witness_g6: encode_graph6(connected[idx]),
        classes: connected.len(),
        complete: fs.iter().all(|f| f.1),
    })
}

/// g(n) from the built-in enumerator (n <= 8).
pub fn g_row_builtin(n: usize, budget: SearchBudget) -> Result<GRow, SurveyError> {
    g_row(connected_classes(n)?, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FValue {
    pub graph6: String,
    #[serde(serialize_with = "serialize_ratio")]
    pub f: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub classes: usize,
    #[serde(serialize_with = "crate::survey::serialize_opt_ratio")]
    pub min_f: Option<Rational>,
    pub equality: Vec<String>,
    pub counterexamples: Vec<FValue>,
    pub complete: bool,
}

pub(crate) fn serialize_opt_ratio<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

/// f(G) >= 2 over connected graphs with minimum degree at least 2.
pub fn conjecture_row(graphs: &[Graph], budget: SearchBudget) -> ConjectureRow {
    let eligible: Vec<&Graph> = graphs
        .iter()
        .filter(|g| GraphFilter::connected().with_min_degree(2).accepts(g))
        .collect();
    let fs: Vec<(Rational, bool)> = eligible
        .par_iter()
        .map(|g| {
            let m = measure_value(g, Shape::LinearForest, budget);
            (f_ratio::<BigInt>(g, m.value), m.exact)
        })
        .collect();
    let two = Rational::from_integer(BigInt::from(2));
    let mut equality = Vec::new();
    let mut counterexamples = Vec::new();
    for (g, (f, _)) in eligible.iter().zip(&fs) {
        if *f == two {
            equality.push(encode_graph6(g));
        } else if *f < two {
            counterexamples.push(FValue {
                graph6: encode_graph6(g),
                f: f.clone(),
            });
        }
    }
    ConjectureRow {
        n: graphs.first().map_or(0, |g| g.order()),
        classes: eligible.len(),
        min_f: fs.iter().map(|f| &f.0).min().cloned(),
        equality,
        counterexamples,
        complete: fs.iter().all(|f| f.1),
    }
}

pub fn conjecture_row_builtin(n: usize, budget: SearchBudget) -> Result<ConjectureRow, SurveyError> {
    let graphs: Vec<Graph> = enumerate_connected(n, GraphFilter::connected().with_min_degree(2))?
        .cloned()
        .collect();
    let mut row = conjecture_row(&graphs, budget);
    row.n = n;
    Ok(row)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NgPair {
    pub graph6: String,
    pub a: usize,
    pub a_comp: usize,
    pub lif: usize,
    pub lif_comp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NgRow {
    pub n: usize,
    pub classes: usize,
    pub max_a_sum: usize,
    pub max_lif_sum: usize,
    pub a_equality: Vec<String>,
    pub lif_equality: Vec<String>,
    pub violations: Vec<NgPair>,
    /// Whether a(P_n) + a(complement of P_n) = n + 4; absent for n < 4,
    /// where the path is not expected to attain it.
    pub path_attains: Option<bool>,
    pub complete: bool,
}

/// a and LIF of a graph and its complement for every connected class of
/// order n; complements of the classes are covered by symmetry.
pub fn nordhaus_gaddum_row(n: usize, budget: SearchBudget) -> Result<NgRow, SurveyError> {
    let classes = connected_classes(n)?;
    let pairs: Vec<(NgPair, bool)> = classes
        .par_iter()
        .map(|g| {
            let c = g.complement();
            let vals = [
                measure_value(g, Shape::Forest, budget),
                measure_value(&c, Shape::Forest, budget),
                measure_value(g, Shape::LinearForest, budget),
                measure_value(&c, Shape::LinearForest, budget),
            ];
            (
                NgPair {
                    graph6: encode_graph6(g),
                    a: vals[0].value,
                    a_comp: vals[1].value,
                    lif: vals[2].value,
                    lif_comp: vals[3].value,
                },
                vals.iter().all(|v| v.exact),
            )
        })
        .collect();
    let cap = n + 4;
    let path_attains = (n >= 4).then(|| {
        let path = Graph::standard(GraphFamily::Path(n)).expect("path");
        measure_value(&path, Shape::Forest, budget).value
            + measure_value(&path.complement(), Shape::Forest, budget).value
            == cap
    });
    Ok(NgRow {
        n,
        classes: pairs.len(),
        max_a_sum: pairs.iter().map(|p| p.0.a + p.0.a_comp).max().unwrap_or(0),
        max_lif_sum: pairs.iter().map(|p| p.0.lif + p.0.lif_comp).max().unwrap_or(0),
        a_equality: pairs
            .iter()
            .filter(|p| p.0.a + p.0.a_comp == cap)
            .map(|p| p.0.graph6.clone())
            .collect(),
        lif_equality: pairs
            .iter()
            .filter(|p| p.0.lif + p.0.lif_comp == cap)
            .map(|p| p.0.graph6.clone())
            .collect(),
        violations: pairs
            .iter()
            .filter(|p| p.0.a + p.0.a_comp > cap || p.0.lif + p.0.lif_comp > cap)
            .map(|p| p.0.clone())
            .collect(),
        path_attains,
        complete: pairs.iter().all(|p| p.1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRow {
    #[serde(flatten)]
    pub construction: ExtremalConstruction,
    pub order: usize,
    pub graph6: String,
    /// Set when the exact LIP differs from r.
    pub finding: Option<String>,
}

pub fn extremal_row(r: usize) -> Result<ExtremalRow, SurveyError> {
    let c = construct_extremal_lip(r)?;
    let finding = match (c.lip_value, c.lip_matches_r) {
        (Some(lip), Some(false)) => Some(format!("claim mismatch: LIP = {lip}, expected {r}")),
        _ => None,
    };
    Ok(ExtremalRow {
        order: c.order(),
        graph6: encode_graph6(&c.graph),
        construction: c,
        finding,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyRow {
    pub graph6: String,
    pub n: usize,
    pub r: Option<usize>,
    pub parts: Vec<Vec<usize>>,
    pub certified: usize,
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub bound: Option<Rational>,
    /// ceil(2n/(r+1)), the integer form of the guarantee.
    pub bound_ceil: Option<usize>,
    pub meets_bound: bool,
    pub claims_hold: bool,
    pub claim_error: Option<String>,
    pub steps: u64,
    /// LIF, when requested; a lower bound unless `lif_exact`.
    pub lif: Option<usize>,
    pub lif_exact: Option<bool>,
    pub lif_meets_bound: Option<bool>,
}

/// Runs the greedy partition and its claim checks on one graph; optionally
/// compares with the exact LIF.
pub fn greedy_row(g: &Graph, exact_lif: Option<SearchBudget>) -> Result<GreedyRow, SurveyError> {
    let res = greedy_partition::<BigInt>(g)?;
    let claims = verify_claims(g, &res);
    let certified = res.certified().len();
    let bound_ceil = res.bound.as_ref().map(|b| ceil(b).to_usize().expect("small bound"));
    let measured = match exact_lif {
        Some(budget) => Some(
            measure(g, Shape::LinearForest, budget)
                .map_err(|e| SurveyError::Input(e.to_string()))?
                .0,
        ),
        None => None,
    };
    let lif = measured.map(|m| m.value);
    let lif_meets_bound = match (lif, res.regularity) {
        (Some(l), Some(r)) if r >= 1 => {
            Some(Rational::from_integer(BigInt::from(l)) >= lif_regular_lower_bound::<BigInt>(g.order(), r)?)
        }
        _ => None,
    };
    Ok(GreedyRow {
        graph6: encode_graph6(g),
        n: g.order(),
        r: res.regularity,
        parts: res.parts.iter().map(|p| p.to_vec()).collect(),
        certified,
        meets_bound: bound_ceil.is_none_or(|b| certified >= b),
        bound: res.bound.clone(),
        bound_ceil,
        claims_hold: claims.is_ok(),
        claim_error: claims.err().map(|e| e.to_string()),
        steps: res.steps,
        lif,
        lif_exact: measured.map(|m| m.exact),
        lif_meets_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LipBoundRow {
    pub n: usize,
    pub r: usize,
    pub lip: usize,
    pub min_order: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub upper: Rational,
    pub order_ok: bool,
    pub upper_ok: bool,
}

/// Order and path-length bounds for one r-regular graph (r >= 2).
pub fn lip_bound_row(g: &Graph, budget: SearchBudget) -> Result<LipBoundRow, SurveyError> {
    let r = g
        .regularity()
        .ok()
        .flatten()
        .filter(|&r| r >= 2)
        .ok_or_else(|| SurveyError::Input("graph is not r-regular with r >= 2".into()))?;
    let n = g.order();
    let lip = measure_value(g, Shape::InducedPath, budget).value;
    let min_order = lip_order_lower_bound(r, lip)?;
    let upper = lip_upper_bound::<BigInt>(n, r)?;
    Ok(LipBoundRow {
        n,
        r,
        lip,
        min_order,
        order_ok: n >= min_order,
        upper_ok: Rational::from_integer(BigInt::from(lip)) <= upper,
        upper,
    })
}

/// t(G) as an exact rational (convenience re-export for reports).
pub fn caro_wei(g: &Graph) -> Rational {
    caro_wei_t::<BigInt>(g)
}
