use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use linforest::bounds::BoundsError;
use linforest::cubic::{connected_cubic, CubicError};
use linforest::enumerate::{random_regular, ENUM_MAX_ORDER};
use linforest::io::{encode_graph6, parse_graph, read_graphs, GraphStream};
use linforest::survey::{
    conjecture_row, conjecture_row_builtin, extremal_row, g_row, g_row_builtin, greedy_row, nordhaus_gaddum_row,
    table_cubic_row, with_jobs, SurveyError,
};
use linforest::{Graph, SearchBudget, Shape, SolveError};

use crate::report::{Format, Report, Row};
use crate::rows::{Finding, GreedyOut, SolveOut};
use crate::{Common, Failure, Status};

impl From<SurveyError> for Failure {
    fn from(e: SurveyError) -> Failure {
        match e {
            SurveyError::Bounds(BoundsError::ConstructionNotRegular { .. }) => Failure::Internal(e.to_string()),
            SurveyError::Greedy(linforest::greedy::GreedyError::FuelExhausted(_)) => {
                Failure::Internal(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<CubicError> for Failure {
    fn from(e: CubicError) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// Parses `4..=14`, `4..15`, `4-14`, `10` or comma-separated mixtures into a
/// sorted list without duplicates.
pub fn parse_range(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("cannot parse range {spec:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let mut out = Vec::new();
    for piece in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (lo, hi) = if let Some((a, b)) = piece.split_once("..=") {
            (num(a)?, num(b)?)
        } else if let Some((a, b)) = piece.split_once("..") {
            let b = num(b)?;
            (num(a)?, b.checked_sub(1).ok_or_else(bad)?)
        } else if let Some((a, b)) = piece.split_once('-') {
            (num(a)?, num(b)?)
        } else {
            let v = num(piece)?;
            (v, v)
        };
        out.extend(lo..=hi);
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn budget(c: &Common) -> SearchBudget {
    match c.budget_nodes {
        0 => SearchBudget::UNLIMITED,
        k => SearchBudget::nodes(k),
    }
}

fn format(c: &Common) -> Format {
    c.format.unwrap_or(Format::Csv)
}

fn read_corpus(path: &Path) -> Result<Vec<Graph>, Failure> {
    if !path.is_file() {
        return Err(Failure::Input(format!("missing corpus file {}", path.display())));
    }
    read_graphs(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads corpus files and groups their graphs by order.
fn corpora_by_order(paths: &[PathBuf]) -> Result<BTreeMap<usize, Vec<Graph>>, Failure> {
    let mut by_order: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
    for p in paths {
        for g in read_corpus(p)? {
            by_order.entry(g.order()).or_default().push(g);
        }
    }
    Ok(by_order)
}

/// Visits `keys` in order, reusing rows kept from an earlier run and
/// computing the rest; the status is the most severe row outcome.
fn sweep<R: Row + Finding>(
    keys: &[usize],
    common: &Common,
    mut compute: impl FnMut(usize) -> Result<R, Failure>,
) -> Result<Status, Failure> {
    let mut report = Report::<R>::open(common.out.as_deref(), format(common), common.resume)?;
    let mut status = Status::Ok;
    for &k in keys {
        if report.reuse(k)? {
            continue;
        }
        let row = compute(k)?;
        if row.key() != k {
            return Err(Failure::Internal(format!("row for key {k} reports key {}", row.key())));
        }
        if row.finding() {
            status = status.max(Status::Finding);
        } else if !row.complete() {
            eprintln!("linforest: row {k} is incomplete (search budget exceeded)");
            status = status.max(Status::Incomplete);
        }
        report.emit(&row)?;
    }
    report.finish()?;
    Ok(status)
}

pub fn solve(graph: Option<String>, input: Option<PathBuf>, shape: Shape, common: &Common) -> Result<Status, Failure> {
    let graphs = match (graph, input) {
        (Some(_), Some(_)) => return Err(Failure::Input("give either a graph or --input, not both".into())),
        (Some(text), None) => vec![parse_graph(&text).map_err(|e| Failure::Input(e.to_string()))?],
        (None, Some(path)) => read_corpus(&path)?,
        (None, None) => GraphStream::stdin()
            .and_then(|s| s.map(|r| r.map(|(_, g)| g)).collect())
            .map_err(|e| Failure::Input(e.to_string()))?,
    };
    let budget = budget(common);
    let results: Vec<SolveOut> = with_jobs(common.jobs, || {
        graphs
            .iter()
            .enumerate()
            .map(|(i, g)| match linforest::solve::solve(g, shape, budget) {
                Ok(r) => Ok(SolveOut::new(i, &r)),
                Err(SolveError::BudgetExceeded(r)) => Ok(SolveOut::new(i, &r)),
                Err(e) => Err(Failure::Input(format!("graph {i}: {e}"))),
            })
            .collect::<Result<_, _>>()
    })?;
    let status = if results.iter().all(|r| r.optimal) {
        Status::Ok
    } else {
        Status::Incomplete
    };
    match common.format {
        Some(f) => {
            let mut report = Report::<SolveOut>::open(common.out.as_deref(), f, false)?;
            for r in &results {
                report.emit(r)?;
            }
            report.finish()?;
        }
        None => {
            let mut text = String::new();
            for r in &results {
                if results.len() > 1 {
                    text.push_str(&format!("# graph {}\n", r.index));
                }
                text.push_str(&r.text());
            }
            write_text(common.out.as_deref(), &text)?;
        }
    }
    Ok(status)
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn cubic_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("cubic_{n}.g6"))
}

/// Even orders of at least 4 from a range; cubic graphs need both.
fn cubic_orders(n: &str) -> Result<Vec<usize>, Failure> {
    let orders: Vec<usize> = parse_range(n)?.into_iter().filter(|&k| k >= 4 && k % 2 == 0).collect();
    if orders.is_empty() {
        return Err(Failure::Input(format!("no even order >= 4 in {n:?}")));
    }
    Ok(orders)
}

pub fn table_cubic(input: &[PathBuf], n: &str, common: &Common) -> Result<Status, Failure> {
    let orders = cubic_orders(n)?;
    eprintln!("linforest: corpora are taken to be complete sets of connected cubic graphs");
    let budget = budget(common);
    if let [dir] = input {
        if dir.is_dir() {
            for &k in &orders {
                let p = cubic_file(dir, k);
                if !p.is_file() {
                    return Err(Failure::Input(format!("missing corpus file {}", p.display())));
                }
            }
            return with_jobs(common.jobs, || {
                sweep(&orders, common, |k| Ok(table_cubic_row(&read_corpus(&cubic_file(dir, k))?, budget)?))
            });
        }
    }
    let corpora = corpora_by_order(input)?;
    if let Some(k) = orders.iter().find(|k| !corpora.contains_key(k)) {
        return Err(Failure::Input(format!("no corpus of order {k} among the input files")));
    }
    with_jobs(common.jobs, || {
        sweep(&orders, common, |k| Ok(table_cubic_row(&corpora[&k], budget)?))
    })
}

fn check_builtin_or_corpus(orders: &[usize], corpora: &BTreeMap<usize, Vec<Graph>>) -> Result<(), Failure> {
    match orders.iter().find(|&&k| k > ENUM_MAX_ORDER && !corpora.contains_key(&k)) {
        Some(k) => Err(Failure::Input(format!(
            "order {k} is above the built-in enumerator's limit of {ENUM_MAX_ORDER}; supply a corpus with --input"
        ))),
        None => Ok(()),
    }
}

pub fn table_g(n: &str, input: &[PathBuf], common: &Common) -> Result<Status, Failure> {
    let orders = parse_range(n)?;
    if orders.contains(&0) {
        return Err(Failure::Input("g(n) needs n >= 1".into()));
    }
    let corpora = corpora_by_order(input)?;
    check_builtin_or_corpus(&orders, &corpora)?;
    let budget = budget(common);
    with_jobs(common.jobs, || {
        sweep(&orders, common, |k| match corpora.get(&k) {
            Some(gs) => Ok(g_row(gs, budget)?),
            None => Ok(g_row_builtin(k, budget)?),
        })
    })
}

pub fn conjecture(n: &str, input: &[PathBuf], common: &Common) -> Result<Status, Failure> {
    let orders = parse_range(n)?;
    let corpora = corpora_by_order(input)?;
    check_builtin_or_corpus(&orders, &corpora)?;
    let budget = budget(common);
    with_jobs(common.jobs, || {
        sweep(&orders, common, |k| {
            let row = match corpora.get(&k) {
                Some(gs) => {
                    let mut row = conjecture_row(gs, budget);
                    row.n = k;
                    row
                }
                None => conjecture_row_builtin(k, budget)?,
            };
            for c in &row.counterexamples {
                eprintln!("linforest: FINDING: f({}) = {} < 2", c.graph6, c.f);
            }
            Ok(row)
        })
    })
}

pub fn nordhaus_gaddum(n: &str, common: &Common) -> Result<Status, Failure> {
    let orders = parse_range(n)?;
    let budget = budget(common);
    with_jobs(common.jobs, || {
        sweep(&orders, common, |k| {
            let row = nordhaus_gaddum_row(k, budget)?;
            for v in &row.violations {
                eprintln!(
                    "linforest: FINDING: {} has a + a' = {} and LIF + LIF' = {}, cap {}",
                    v.graph6,
                    v.a + v.a_comp,
                    v.lif + v.lif_comp,
                    k + 4
                );
            }
            if row.complete && row.path_attains == Some(false) {
                eprintln!("linforest: FINDING: P_{k} does not attain a(G) + a(complement) = {}", k + 4);
            }
            Ok(row)
        })
    })
}

pub fn extremal(r: &str, common: &Common) -> Result<Status, Failure> {
    let rs = parse_range(r)?;
    with_jobs(common.jobs, || {
        sweep(&rs, common, |r| {
            let row = extremal_row(r)?;
            if let Some(f) = &row.finding {
                eprintln!("linforest: FINDING: r = {r}: {f}");
            }
            Ok(row)
        })
    })
}

pub struct GreedySource {
    pub graph: Option<String>,
    pub input: Option<PathBuf>,
    pub r: Option<usize>,
    pub n: String,
    pub count: usize,
    pub seed: u64,
}

impl GreedySource {
    fn graphs(&self) -> Result<Vec<Graph>, Failure> {
        match (&self.graph, &self.input, self.r) {
            (Some(text), None, None) => Ok(vec![parse_graph(text).map_err(|e| Failure::Input(e.to_string()))?]),
            (None, Some(path), None) => read_corpus(path),
            (None, None, Some(r)) => {
                let orders: Vec<usize> = parse_range(&self.n)?
                    .into_iter()
                    .filter(|&k| k > r && (k * r) % 2 == 0)
                    .collect();
                if orders.is_empty() {
                    return Err(Failure::Input(format!("no order in {:?} admits an {r}-regular graph", self.n)));
                }
                (0..self.count)
                    .map(|i| {
                        random_regular(orders[i % orders.len()], r, self.seed.wrapping_add(i as u64))
                            .map_err(|e| Failure::Input(e.to_string()))
                    })
                    .collect()
            }
            _ => Err(Failure::Input(
                "give exactly one of: a graph, --input, or --r for random regular graphs".into(),
            )),
        }
    }
}

pub fn greedy(source: GreedySource, exact: bool, common: &Common) -> Result<Status, Failure> {
    let graphs = source.graphs()?;
    let keys: Vec<usize> = (0..graphs.len()).collect();
    let lif_budget = exact.then(|| budget(common));
    with_jobs(common.jobs, || {
        sweep(&keys, common, |i| {
            let row = greedy_row(&graphs[i], lif_budget)?;
            if let Some(e) = &row.claim_error {
                eprintln!("linforest: note: graph {i} ({}): {e}", row.graph6);
            }
            let out = GreedyOut { index: i, row };
            if out.finding() {
                eprintln!("linforest: FINDING: graph {i} ({}) falls short of the bound", out.row.graph6);
            }
            Ok(out)
        })
    })
}

pub fn gen_cubic(n: &str, dir: &Path, jobs: Option<usize>) -> Result<Status, Failure> {
    let orders = cubic_orders(n)?;
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
    for k in orders {
        let graphs = with_jobs(jobs, || connected_cubic(k))?;
        let mut text = String::with_capacity(graphs.len() * (k * k / 12 + 2));
        for g in &graphs {
            text.push_str(&encode_graph6(g));
            text.push('\n');
        }
        let path = cubic_file(dir, k);
        fs::write(&path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        eprintln!("linforest: wrote {} graphs to {}", graphs.len(), path.display());
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..=8").unwrap(), vec![4, 5, 6, 7, 8]);
        assert_eq!(parse_range("4..8").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_range("3-5,10").unwrap(), vec![3, 4, 5, 10]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("x").is_err());
        assert!(parse_range("5..5").is_err());
    }
}
