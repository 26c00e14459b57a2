//! Independent checkers shared by the integration tests.
//!
//! Nothing here calls into the solver or `shape_check`: shapes are decided
//! from the adjacency matrix with a union-find and explicit degree counts,
//! and optima are found by scanning every vertex subset.

#![allow(dead_code)]

use linforest::{Graph, Shape};
use rand::Rng;

/// Decides a shape on `verts` from scratch.
pub fn satisfies(g: &Graph, verts: &[usize], shape: Shape) -> bool {
    let k = verts.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut degree = vec![0usize; k];
    let mut edges = 0usize;
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(verts[i], verts[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a == b {
                    return false; // closes a cycle
                }
                parent[a] = b;
                degree[i] += 1;
                degree[j] += 1;
                edges += 1;
            }
        }
    }
    match shape {
        Shape::Forest => true,
        Shape::LinearForest => degree.iter().all(|&d| d <= 2),
        Shape::InducedPath => k >= 1 && degree.iter().all(|&d| d <= 2) && edges == k - 1,
    }
}

/// Vertices of the subset encoded by `mask`.
pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Largest subset satisfying `shape`, by scanning all 2^n subsets.
pub fn brute_optimum(g: &Graph, shape: Shape) -> usize {
    let n = g.order();
    assert!(n <= 20, "brute force is for small graphs");
    (0..1u64 << n)
        .filter(|&m| satisfies(g, &members(m, n), shape))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn is_independent(g: &Graph, verts: &[usize]) -> bool {
    verts
        .iter()
        .enumerate()
        .all(|(i, &u)| verts[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

pub fn independence_number(g: &Graph) -> usize {
    let n = g.order();
    (0..1u64 << n)
        .filter(|&m| is_independent(g, &members(m, n)))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// G(n, p) with p = num/den.
pub fn gnp(rng: &mut impl Rng, n: usize, num: u32, den: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_ratio(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Graph from an upper-triangle bit list in row order (0,1), (0,2), ...
pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut it = bits.iter();
    for u in 0..n {
        for v in u + 1..n {
            if *it.next().expect("enough bits") {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}
