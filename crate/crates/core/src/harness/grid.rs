//! Sample grids in `x`.

use crate::error::{Error, Result};
use crate::index::IndexPair;

/// `n` Chebyshev–Lobatto nodes `-cos(k pi / (n-1))` in increasing order.
///
/// The nodes are mirrored exactly, so an odd `n` puts `0` on the grid.
pub fn chebyshev_lobatto(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 nodes, got {n}")));
    }
    let mut nodes = vec![0.0; n];
    let step = std::f64::consts::PI / (n - 1) as f64;
    for k in 0..n / 2 {
        let v = -(k as f64 * step).cos();
        nodes[k] = v;
        nodes[n - 1 - k] = -v;
    }
    nodes[0] = -1.0;
    nodes[n - 1] = 1.0;
    Ok(nodes)
}

/// The points added to every pair's grid: `0`, `+-a` and, when defined, `+-x-bar`.
pub fn special_points(p: IndexPair) -> Vec<f64> {
    let mut out = vec![0.0];
    if let Ok(tr) = p.transition() {
        out.extend([-tr.a, tr.a]);
        if let Some(xb) = tr.xbar {
            out.extend([-xb, xb]);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// One entry of a merged grid: the abscissa and, for shared nodes, its index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub node: Option<usize>,
}

/// Shared nodes merged with `extra` points, increasing and without repeats.
pub fn merge(nodes: &[f64], extra: &[f64]) -> Vec<GridPoint> {
    let mut out: Vec<GridPoint> = Vec::with_capacity(nodes.len() + extra.len());
    let (mut i, mut j) = (0, 0);
    while i < nodes.len() || j < extra.len() {
        let take_node = j >= extra.len() || (i < nodes.len() && nodes[i] <= extra[j]);
        let pt = if take_node {
            i += 1;
            GridPoint { x: nodes[i - 1], node: Some(i - 1) }
        } else {
            j += 1;
            GridPoint { x: extra[j - 1], node: None }
        };
        match out.last() {
            Some(last) if last.x == pt.x => {}
            _ => out.push(pt),
        }
    }
    out
}

/// The sweep grid of one pair.
pub fn pair_grid(nodes: &[f64], p: IndexPair) -> Vec<GridPoint> {
    merge(nodes, &special_points(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::HalfInt;

    #[test]
    fn lobatto_nodes() {
        let g = chebyshev_lobatto(5).unwrap();
        assert_eq!(g[0], -1.0);
        assert_eq!(g[2], 0.0);
        assert_eq!(g[4], 1.0);
        assert!((g[3] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let g = chebyshev_lobatto(2001).unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.iter().zip(g.iter().rev()).all(|(a, b)| *a == -*b));
        assert!(chebyshev_lobatto(1).is_err());
    }

    #[test]
    fn merged_grid_keeps_node_indices() {
        let nodes = chebyshev_lobatto(3).unwrap();
        let p = IndexPair::new(HalfInt::from_twice(7), HalfInt::from_int(3)).unwrap();
        let g = pair_grid(&nodes, p);
        let tr = p.transition().unwrap();
        let xs: Vec<f64> = g.iter().map(|q| q.x).collect();
        assert_eq!(xs, vec![-1.0, -tr.xbar.unwrap(), -tr.a, 0.0, tr.a, tr.xbar.unwrap(), 1.0]);
        assert_eq!(g[3].node, Some(1));
        assert_eq!(g[1].node, None);
    }

    #[test]
    fn endpoint_transition_is_not_duplicated() {
        // a = 1 for m = 0
        let p = IndexPair::new(HalfInt::HALF, HalfInt::ZERO).unwrap();
        let g = pair_grid(&chebyshev_lobatto(3).unwrap(), p);
        assert_eq!(g.len(), 3);
    }
}
