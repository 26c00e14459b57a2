//! Greedy peeling of maximal induced linear forests.
//!
//! Parts are grown one at a time from the unassigned vertices: a vertex
//! joins the current part whenever the part stays an induced linear forest,
//! and after every addition an outside vertex `w` whose only neighbour `t`
//! in the part has part-degree 2 is swapped in for `t`. When the finished
//! part is larger than an earlier one, it takes the place of the first such
//! earlier part and everything after it is returned to the pool. On an
//! r-regular graph the first part has order at least `2n/(r+1)`.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::lif_regular_lower_bound;
use crate::graph::{Graph, GraphError, Shape};
use crate::scalar::ExactInt;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreedyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("step budget of {0} exhausted before the partition settled")]
    FuelExhausted(u64),
    #[error("claim violated: vertex {vertex} of part {part} has {count} neighbours in part {earlier}")]
    ClaimViolated {
        vertex: usize,
        part: usize,
        earlier: usize,
        count: usize,
    },
    #[error("claim violated in the last two parts: {0}")]
    LastPartViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionResult<I: ExactInt> {
    /// Final parts in order; part orders are non-increasing.
    pub parts: Vec<VertexSet>,
    /// Loop iterations: additions, swaps and restarts.
    pub steps: u64,
    pub regularity: Option<usize>,
    /// `2n/(r+1)` for r-regular input, absent otherwise.
    #[serde(skip)]
    pub bound: Option<Ratio<I>>,
}

impl<I: ExactInt> PartitionResult<I> {
    pub fn certified(&self) -> VertexSet {
        self.parts.first().copied().unwrap_or_default()
    }

    /// Whether the first part reaches the regular-graph bound (vacuous when
    /// no bound applies).
    pub fn meets_bound(&self) -> bool {
        match &self.bound {
            Some(b) => Ratio::from_integer(crate::scalar::int::<I>(self.certified().len() as i64)) >= *b,
            None => true,
        }
    }
}

/// Per-vertex cross-part degree found by [`verify_claims`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossDegree {
    pub vertex: usize,
    pub part: usize,
    pub earlier: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub cross_degrees: Vec<CrossDegree>,
    /// True when `2(k-1) = r` and the last-part checks were run.
    pub last_part_checked: bool,
}

/// Incremental linear-forest test: `v` may join `part` iff it has at most
/// two neighbours there, none of part-degree 2, and two neighbours lie on
/// different paths.
fn addable(g: &Graph, part: VertexSet, v: usize) -> bool {
    let nbrs = g.neighbors(v).intersection(part);
    match nbrs.len() {
        0 => true,
        1 => g.degree_in(nbrs.first().unwrap(), part) < 2,
        2 => {
            let mut it = nbrs.iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            g.degree_in(a, part) < 2
                && g.degree_in(b, part) < 2
                && !g.component_within(a, part).contains(b)
        }
        _ => false,
    }
}

/// Lowest `w` outside the part with a single part-neighbour `t` of
/// part-degree 2; returns `(w, t)`.
fn swap_candidate(g: &Graph, part: VertexSet, pool: VertexSet) -> Option<(usize, usize)> {
    pool.iter().find_map(|w| {
        let nbrs = g.neighbors(w).intersection(part);
        if nbrs.len() != 1 {
            return None;
        }
        let t = nbrs.first().unwrap();
        (g.degree_in(t, part) == 2).then_some((w, t))
    })
}

fn default_fuel(g: &Graph) -> u64 {
    let n = g.order() as u64;
    let d = g.max_degree().unwrap_or(0) as u64;
    (n * n * n * (d + 1)).max(64)
}

pub fn greedy_partition<I: ExactInt>(g: &Graph) -> Result<PartitionResult<I>, GreedyError> {
    greedy_partition_with_fuel(g, default_fuel(g))
}

pub fn greedy_partition_with_fuel<I: ExactInt>(
    g: &Graph,
    fuel: u64,
) -> Result<PartitionResult<I>, GreedyError> {
    let n = g.order();
    let regularity = g.regularity()?;
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut pool = g.vertices();
    let mut steps = 0u64;
    let burn = |steps: &mut u64| {
        *steps += 1;
        if *steps > fuel {
            Err(GreedyError::FuelExhausted(fuel))
        } else {
            Ok(())
        }
    };
    // `j` is the number of live parts; the current part is parts[j - 1].
    let mut j = 0usize;
    while !pool.is_empty() {
        j += 1;
        if parts.len() < j {
            parts.push(VertexSet::EMPTY);
        }
        debug_assert!(parts[j - 1].is_empty());
        let cur = j - 1;
        while let Some(v) = pool.iter().find(|&v| addable(g, parts[cur], v)) {
            burn(&mut steps)?;
            pool.remove(v);
            parts[cur].insert(v);
            while let Some((w, t)) = swap_candidate(g, parts[cur], pool) {
                burn(&mut steps)?;
                parts[cur].remove(t);
                pool.insert(t);
                pool.remove(w);
                parts[cur].insert(w);
            }
            debug_assert!(g.shape_check(parts[cur], Shape::LinearForest));
        }
        let size = parts[cur].len();
        if let Some(k0) = (0..cur).find(|&k| parts[k].len() < size) {
            burn(&mut steps)?;
            parts.swap(k0, cur);
            for p in parts.iter_mut().take(j).skip(k0 + 1) {
                pool = pool.union(*p);
                *p = VertexSet::EMPTY;
            }
            j = k0 + 1;
        }
    }
    parts.truncate(j);
    debug_assert_eq!(parts.iter().map(|p| p.len()).sum::<usize>(), n);
    let bound = match regularity {
        Some(r) if r >= 1 => {
            Some(lif_regular_lower_bound::<I>(n, r).expect("r-regular implies 1 <= r < n"))
        }
        _ => None,
    };
    Ok(PartitionResult {
        parts,
        steps,
        regularity,
        bound,
    })
}

/// Checks the structural claims behind the bound on a finished partition:
/// every vertex of a later part has at least two neighbours in each earlier
/// part, and on r-regular graphs with `2(k-1) = r` the last part is
/// independent and at most half the size of the one before it.
pub fn verify_claims<I: ExactInt>(
    g: &Graph,
    res: &PartitionResult<I>,
) -> Result<ClaimReport, GreedyError> {
    let mut cross = Vec::new();
    for (i, part) in res.parts.iter().enumerate().skip(1) {
        for v in part.iter() {
            for (j, earlier) in res.parts[..i].iter().enumerate() {
                let count = g.degree_in(v, *earlier);
                if count < 2 {
                    return Err(GreedyError::ClaimViolated {
                        vertex: v,
                        part: i,
                        earlier: j,
                        count,
                    });
                }
                cross.push(CrossDegree {
                    vertex: v,
                    part: i,
                    earlier: j,
                    count,
                });
            }
        }
    }
    let k = res.parts.len();
    let last_part_checked = matches!(res.regularity, Some(r) if k >= 2 && 2 * (k - 1) == r);
    if last_part_checked {
        let last = res.parts[k - 1];
        let prev = res.parts[k - 2];
        if g.induced_size(last) != 0 {
            return Err(GreedyError::LastPartViolated(format!(
                "last part {last:?} is not independent"
            )));
        }
        if prev.len() < 2 * last.len() {
            return Err(GreedyError::LastPartViolated(format!(
                "part of order {} precedes a last part of order {}",
                prev.len(),
                last.len()
            )));
        }
    }
    Ok(ClaimReport {
        cross_degrees: cross,
        last_part_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;
    use crate::Rational;
    use num_bigint::BigInt;

    fn fam(f: GraphFamily) -> Graph {
        Graph::standard(f).unwrap()
    }

    fn run(g: &Graph) -> PartitionResult<BigInt> {
        greedy_partition(g).unwrap()
    }

    fn check_invariants(g: &Graph, res: &PartitionResult<BigInt>) {
        let mut seen = VertexSet::EMPTY;
        for p in &res.parts {
            assert!(p.intersection(seen).is_empty());
            assert!(g.shape_check(*p, Shape::LinearForest));
            seen = seen.union(*p);
        }
        assert_eq!(seen, g.vertices());
        for w in res.parts.windows(2) {
            assert!(w[0].len() >= w[1].len());
        }
    }

    #[test]
    fn complete_graph_meets_sharp_bound() {
        let k4 = fam(GraphFamily::Complete(4));
        let res = run(&k4);
        check_invariants(&k4, &res);
        assert_eq!(res.bound, Some(Rational::from_integer(2.into())));
        assert!(res.certified().len() >= 2);
        let report = verify_claims(&k4, &res).unwrap();
        assert!(report.cross_degrees.iter().all(|c| c.count >= 2));
        assert_eq!(res.parts.len(), 2);
        assert!(report.last_part_checked == false);
    }

    #[test]
    fn matching_is_one_part() {
        let g = Graph::new(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let res = run(&g);
        assert_eq!(res.parts, vec![g.vertices()]);
        let report = verify_claims(&g, &res).unwrap();
        assert!(report.cross_degrees.is_empty());
    }

    #[test]
    fn six_cycle_meets_bound() {
        let c6 = fam(GraphFamily::Cycle(6));
        let res = run(&c6);
        check_invariants(&c6, &res);
        assert_eq!(res.bound, Some(Rational::from_integer(4.into())));
        assert!(res.certified().len() >= 4);
        assert!(res.meets_bound());
    }

    #[test]
    fn five_cycle_trace() {
        // Part 1 takes 0,1,2,3; vertex 4 would close the cycle.
        let c5 = fam(GraphFamily::Cycle(5));
        let res = run(&c5);
        assert_eq!(res.parts, vec![VertexSet(0b01111), VertexSet(0b10000)]);
        let report = verify_claims(&c5, &res).unwrap();
        assert!(report.last_part_checked);
        assert_eq!(
            report.cross_degrees,
            vec![CrossDegree { vertex: 4, part: 1, earlier: 0, count: 2 }]
        );
    }

    #[test]
    fn non_regular_graphs_carry_no_bound() {
        let p4 = fam(GraphFamily::Path(4));
        let res = run(&p4);
        assert_eq!(res.bound, None);
        assert_eq!(res.parts, vec![p4.vertices()]);
        let star = fam(GraphFamily::CompleteBipartite(1, 4));
        let res = run(&star);
        check_invariants(&star, &res);
        assert_eq!(res.bound, None);
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let k4 = fam(GraphFamily::Complete(4));
        assert_eq!(
            greedy_partition_with_fuel::<BigInt>(&k4, 1),
            Err(GreedyError::FuelExhausted(1))
        );
        assert!(matches!(
            greedy_partition::<BigInt>(&Graph::empty(0).unwrap()),
            Err(GreedyError::Graph(GraphError::EmptyGraph))
        ));
    }

    #[test]
    fn verify_claims_flags_bad_partition() {
        let c5 = fam(GraphFamily::Cycle(5));
        let bogus = PartitionResult::<BigInt> {
            parts: vec![VertexSet(0b00011), VertexSet(0b11100)],
            steps: 0,
            regularity: Some(2),
            bound: None,
        };
        assert!(matches!(
            verify_claims(&c5, &bogus),
            Err(GreedyError::ClaimViolated { vertex: 2, .. })
        ));
    }
}
