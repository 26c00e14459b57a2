//! Closed-form bounds on induced forests and paths, evaluated exactly.
//!
//! All values are `Ratio<I>` over an exact integer type; nothing here
//! touches floating point.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::{ceil_div, int, ratio, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("construction for r = {r} is not {r}-regular (degrees {degrees:?})")]
    ConstructionNotRegular { r: usize, degrees: Vec<usize> },
}

fn bad(msg: String) -> BoundsError {
    BoundsError::BadParams(msg)
}

/// A bound evaluated on one graph, optionally compared with a measured
/// invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport<I: ExactInt> {
    pub name: &'static str,
    #[serde(serialize_with = "crate::scalar::serialize_ratio")]
    pub value: Ratio<I>,
    /// Whether the hypotheses of the bound hold for this graph.
    pub applicable: bool,
    /// The bound is non-positive and therefore says nothing.
    pub trivial: bool,
    pub measured: Option<usize>,
    pub holds: Option<bool>,
    pub equality: Option<bool>,
}

impl<I: ExactInt> BoundReport<I> {
    fn lower(name: &'static str, value: Ratio<I>, applicable: bool, measured: Option<usize>) -> Self {
        let trivial = !value.is_positive();
        let m = measured.map(|m| Ratio::from_integer(int::<I>(m as i64)));
        BoundReport {
            name,
            holds: m.as_ref().map(|m| !applicable || *m >= value),
            equality: m.as_ref().map(|m| *m == value),
            value,
            applicable,
            trivial,
            measured,
        }
    }
}

/// t(G) = sum over vertices of 1/(d(v)+1).
pub fn caro_wei_t<I: ExactInt>(g: &Graph) -> Ratio<I> {
    g.degree_sequence()
        .into_iter()
        .fold(Ratio::zero(), |acc, d| acc + ratio::<I>(1, d as i64 + 1))
}

/// f(G) = LIF(G) / t(G). `lif` must be the exact LIF of `g`.
///
/// # Panics
/// On the graph with no vertices, where t(G) = 0.
pub fn f_ratio<I: ExactInt>(g: &Graph, lif: usize) -> Ratio<I> {
    let t = caro_wei_t::<I>(g);
    assert!(!t.is_zero(), "f is undefined on the empty graph");
    Ratio::from_integer(int(lif as i64)) / t
}

/// 2n/(r+1), the guaranteed LIF of an r-regular graph of order n.
pub fn lif_regular_lower_bound<I: ExactInt>(n: usize, r: usize) -> Result<Ratio<I>, BoundsError> {
    if n == 0 || r == 0 || r >= n {
        return Err(bad(format!("need n >= 1 and 1 <= r <= n-1, got n={n}, r={r}")));
    }
    Ok(ratio(2 * n as i64, r as i64 + 1))
}

/// Minimum order of an r-regular graph whose longest induced path has
/// order k: `2k + ceil(-2(k-1)/r)`, plus one when r and the ceiling are
/// both odd (degree sum parity).
pub fn lip_order_lower_bound(r: usize, k: usize) -> Result<usize, BoundsError> {
    if r == 0 || k == 0 {
        return Err(bad(format!("need r >= 1 and k >= 1, got r={r}, k={k}")));
    }
    let c = ceil_div(-2 * (k as i64 - 1), r as i64);
    let mut n = 2 * k as i64 + c;
    if r % 2 == 1 && c.rem_euclid(2) == 1 {
        n += 1;
    }
    Ok(n as usize)
}

/// Number of edges leaving an induced path of order k in an r-regular
/// graph: `2(r-1) + (k-2)(r-2)`. Requires two distinct ends (k >= 2).
pub fn edges_leaving_path(r: usize, k: usize) -> Result<i64, BoundsError> {
    if r == 0 || k < 2 {
        return Err(bad(format!("need r >= 1 and k >= 2, got r={r}, k={k}")));
    }
    let (r, k) = (r as i64, k as i64);
    Ok(2 * (r - 1) + (k - 2) * (r - 2))
}

/// `(rn - 2) / (2r - 2)`: no r-regular graph of order n has a longer
/// induced path.
pub fn lip_upper_bound<I: ExactInt>(n: usize, r: usize) -> Result<Ratio<I>, BoundsError> {
    if r < 2 {
        return Err(bad(format!("need r >= 2, got {r}")));
    }
    let (n, r) = (n as i64, r as i64);
    Ok(ratio(r * n - 2, 2 * r - 2))
}

pub const SHI_XU: &str = "shi_xu";
pub const PUNNIM: &str = "punnim";

/// Lower bounds on a(G) from the literature: `(8n - 2m - 2)/9` for
/// connected graphs and `2 t(G)` for graphs without isolated vertices.
/// `a` is the exact a(G), when known.
pub fn misc_lower_bounds<I: ExactInt>(g: &Graph, a: Option<usize>) -> Vec<BoundReport<I>> {
    let (n, m) = (g.order() as i64, g.size() as i64);
    let shi_xu = BoundReport::lower(
        SHI_XU,
        ratio(8 * n - 2 * m - 2, 9),
        g.order() > 0 && g.is_connected(),
        a,
    );
    let punnim = BoundReport::lower(
        PUNNIM,
        caro_wei_t::<I>(g) * Ratio::from_integer(int(2)),
        g.min_degree().is_some_and(|d| d >= 1),
        a,
    );
    vec![shi_xu, punnim]
}

/// `inv(G) + inv(complement G) <= n + 4`, for a(G) or LIF(G).
pub fn nordhaus_gaddum_check<I: ExactInt>(g: &Graph, value_g: usize, value_comp: usize) -> BoundReport<I> {
    let n = g.order();
    let sum = value_g + value_comp;
    BoundReport {
        name: "nordhaus_gaddum",
        value: Ratio::from_integer(int(n as i64 + 4)),
        applicable: true,
        trivial: false,
        measured: Some(sum),
        holds: Some(sum <= n + 4),
        equality: Some(sum == n + 4),
    }
}
