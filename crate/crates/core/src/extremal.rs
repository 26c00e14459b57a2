//! Regular graphs of minimum order for a given longest induced path.
//!
//! Both recipes start from a path `p_1..p_r` and a set `S` of extra
//! vertices, join part of `S` completely to the path, delete a matching,
//! and then restore regularity through the remaining special vertices.
//!
//! Even r: `S = {v, s_1..s_{r-2}}`. Each `s_i` is joined to every `p_j`,
//! the edges `p_{i+1} s_i` for `i <= (r-2)/2` are removed, and `v` is joined
//! to the endpoints of the removed edges and to both path ends.
//!
//! Odd r: `S = {u, w, s_1..s_{r-2}}`. Each `s_i` is joined to every `p_j`,
//! the edges `p_{i+1} s_i` for all `i <= r-2` are removed, `w` is joined to
//! `u` and every `s_i`, `u` to every inner path vertex, and finally `u` to
//! `p_1` and `w` to `p_r`.

use serde::Serialize;

use crate::bounds::{lip_order_lower_bound, BoundsError};
use crate::graph::Graph;
use crate::solve::{longest_induced_path, SearchBudget};

/// Largest r for which the construction's LIP is computed exactly.
pub const LIP_SOLVE_MAX_R: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalConstruction {
    pub r: usize,
    #[serde(skip)]
    pub graph: Graph,
    pub parity_case: Parity,
    pub verified_regular: bool,
    /// `lip_order_lower_bound(r, r)`, which the order must equal.
    pub expected_order: usize,
    pub lip_value: Option<usize>,
    pub lip_matches_r: Option<bool>,
}

impl ExtremalConstruction {
    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

fn even_recipe(r: usize) -> Vec<(usize, usize)> {
    // p_j = j - 1, v = r, s_i = r + i
    let p = |j: usize| j - 1;
    let v = r;
    let s = |i: usize| r + i;
    let mut edges: Vec<(usize, usize)> = (1..r).map(|j| (p(j), p(j + 1))).collect();
    let removed: Vec<(usize, usize)> = (1..=(r - 2) / 2).map(|i| (p(i + 1), s(i))).collect();
    for i in 1..=r - 2 {
        for j in 1..=r {
            if !removed.contains(&(p(j), s(i))) {
                edges.push((p(j), s(i)));
            }
        }
    }
    for &(a, b) in &removed {
        edges.push((v, a));
        edges.push((v, b));
    }
    edges.push((v, p(1)));
    edges.push((v, p(r)));
    edges
}

fn odd_recipe(r: usize) -> Vec<(usize, usize)> {
    // p_j = j - 1, u = r, w = r + 1, s_i = r + 1 + i
    let p = |j: usize| j - 1;
    let (u, w) = (r, r + 1);
    let s = |i: usize| r + 1 + i;
    let mut edges: Vec<(usize, usize)> = (1..r).map(|j| (p(j), p(j + 1))).collect();
    for i in 1..=r - 2 {
        for j in 1..=r {
            if j != i + 1 {
                edges.push((p(j), s(i)));
            }
        }
    }
    edges.push((w, u));
    for i in 1..=r - 2 {
        edges.push((w, s(i)));
    }
    for j in 2..r {
        edges.push((u, p(j)));
    }
    edges.push((u, p(1)));
    edges.push((w, p(r)));
    edges
}

/// Builds the construction for `r` without solving for its LIP.
pub fn build_extremal(r: usize) -> Result<ExtremalConstruction, BoundsError> {
    if r < 2 {
        return Err(BoundsError::BadParams(format!("need r >= 2, got {r}")));
    }
    let (n, edges, parity) = if r % 2 == 0 {
        (2 * r - 1, even_recipe(r), Parity::Even)
    } else {
        (2 * r, odd_recipe(r), Parity::Odd)
    };
    let graph = Graph::new(n, &edges).map_err(|e| BoundsError::BadParams(e.to_string()))?;
    let regular = graph.regularity().ok().flatten() == Some(r);
    if !regular || graph.size() * 2 != n * r {
        return Err(BoundsError::ConstructionNotRegular {
            r,
            degrees: graph.degree_sequence(),
        });
    }
    Ok(ExtremalConstruction {
        r,
        graph,
        parity_case: parity,
        verified_regular: true,
        expected_order: lip_order_lower_bound(r, r)?,
        lip_value: None,
        lip_matches_r: None,
    })
}

/// Builds and verifies the construction; for `r <= LIP_SOLVE_MAX_R` the
/// exact LIP is computed and compared with `r`.
pub fn construct_extremal_lip(r: usize) -> Result<ExtremalConstruction, BoundsError> {
    let mut c = build_extremal(r)?;
    if r <= LIP_SOLVE_MAX_R {
        let lip = longest_induced_path(&c.graph, SearchBudget::UNLIMITED)
            .expect("unbounded search on a nonempty graph")
            .value;
        c.lip_value = Some(lip);
        c.lip_matches_r = Some(lip == r);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;
    use crate::io::encode_graph6;

    #[test]
    fn r2_is_triangle() {
        let c = construct_extremal_lip(2).unwrap();
        assert_eq!(c.graph, Graph::standard(GraphFamily::Complete(3)).unwrap());
        assert_eq!(encode_graph6(&c.graph), "Bw");
        assert_eq!((c.lip_value, c.lip_matches_r), (Some(2), Some(true)));
    }

    #[test]
    fn r4_has_order_seven_and_lip_four() {
        let c = construct_extremal_lip(4).unwrap();
        assert_eq!(c.order(), 7);
        assert_eq!(c.expected_order, 7);
        assert_eq!(c.graph.regularity().unwrap(), Some(4));
        assert_eq!(c.lip_value, Some(4));
    }

    #[test]
    fn r3_is_the_prism_with_lip_four() {
        let c = construct_extremal_lip(3).unwrap();
        assert_eq!(c.order(), 6);
        // two disjoint triangles: {u, p1, p2} and {w, s1, p3}
        for (a, b, d) in [(3, 0, 1), (4, 5, 2)] {
            assert!(c.graph.has_edge(a, b) && c.graph.has_edge(b, d) && c.graph.has_edge(a, d));
        }
        assert_eq!(c.lip_value, Some(4));
        assert_eq!(c.lip_matches_r, Some(false));
    }

    #[test]
    fn every_r_is_regular_with_bound_order() {
        for r in 2..=8 {
            let c = build_extremal(r).unwrap();
            assert!(c.verified_regular);
            assert_eq!(c.order(), c.expected_order, "r={r}");
            assert!(c.graph.is_connected());
        }
        assert!(build_extremal(1).is_err());
    }
}
