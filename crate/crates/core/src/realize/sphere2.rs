//! Topological fans over 2-spheres from a four-coloring of the vertices.

use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::fan::{FanError, Ray, TopologicalFan, ValidationReport};
use crate::rational::Rat;

/// The four colors e₁, e₂, e₃, e₁+e₂+e₃; any three are a basis of ℤ³.
pub const COLORS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

pub const COLORING_NODE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Sphere2Error {
    #[error("complex is not a 2-dimensional pseudomanifold")]
    NotTwoDimensional,
    #[error("expected {expected} positions of length 3, got {got}")]
    Positions { expected: usize, got: usize },
    #[error("no four-coloring found within the node limit")]
    NoColoring,
    #[error("positions do not give a complete fan")]
    NotStarShaped(Box<ValidationReport>),
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sphere2Realization {
    pub fan: TopologicalFan,
    /// Color index (0..4) of each vertex.
    pub coloring: Vec<usize>,
}

/// Proper coloring of the 1-skeleton with four colors, by backtracking in
/// order of decreasing degree.
pub fn four_coloring(k: &SimplicialComplex, node_limit: u64) -> Option<Vec<usize>> {
    let m = k.m();
    let nbrs: Vec<Vec<usize>> = (0..=m).map(|v| if v == 0 { Vec::new() } else { k.neighbors(v).into_iter().collect() }).collect();
    let mut order: Vec<usize> = (1..=m).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(nbrs[v].len()), v));
    let mut color = vec![usize::MAX; m + 1];
    let mut nodes = 0u64;
    fn rec(d: usize, order: &[usize], nbrs: &[Vec<usize>], color: &mut [usize], nodes: &mut u64, limit: u64) -> Option<bool> {
        if d == order.len() {
            return Some(true);
        }
        let v = order[d];
        for c in 0..4 {
            *nodes += 1;
            if *nodes > limit {
                return None;
            }
            if nbrs[v].iter().any(|&u| color[u] == c) {
                continue;
            }
            color[v] = c;
            match rec(d + 1, order, nbrs, color, nodes, limit) {
                Some(false) => {}
                other => return other,
            }
        }
        color[v] = usize::MAX;
        Some(false)
    }
    match rec(0, &order, &nbrs, &mut color, &mut nodes, node_limit) {
        Some(true) => Some(color[1..].to_vec()),
        _ => None,
    }
}

/// b = positions, c = 0, v = color vectors; the result is validated.
pub fn realize_2sphere(k: &SimplicialComplex, positions: &[Vec<Rat>]) -> Result<Sphere2Realization, Sphere2Error> {
    if k.dim() != 2 || !k.is_pseudomanifold() {
        return Err(Sphere2Error::NotTwoDimensional);
    }
    if positions.len() != k.m() || positions.iter().any(|p| p.len() != 3) {
        return Err(Sphere2Error::Positions { expected: k.m(), got: positions.len() });
    }
    let coloring = four_coloring(k, COLORING_NODE_LIMIT).ok_or(Sphere2Error::NoColoring)?;
    let zero = vec![Rat::from_integer(0.into()); 3];
    let rays = positions
        .iter()
        .zip(&coloring)
        .map(|(p, &c)| Ray::new(p.clone(), zero.clone(), COLORS[c].to_vec()))
        .collect();
    let fan = TopologicalFan::new(3, k.clone(), rays)?;
    let report = fan.validate();
    if !report.is_valid() {
        return Err(Sphere2Error::NotStarShaped(Box::new(report)));
    }
    Ok(Sphere2Realization { fan, coloring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_vec;

    #[test]
    fn tetrahedron_uses_all_four_colors() {
        let k = SimplicialComplex::boundary_of_simplex(3);
        let pos = [vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]];
        let pos: Vec<Vec<Rat>> = pos.iter().map(|p| rat_vec(p)).collect();
        let r = realize_2sphere(&k, &pos).unwrap();
        let mut c = r.coloring.clone();
        c.sort_unstable();
        assert_eq!(c, vec![0, 1, 2, 3]);
    }

    #[test]
    fn flat_positions_rejected() {
        let k = SimplicialComplex::boundary_of_simplex(3);
        let pos = [vec![1, 0, 0], vec![0, 1, 0], vec![-1, 0, 0], vec![0, -1, 0]];
        let pos: Vec<Vec<Rat>> = pos.iter().map(|p| rat_vec(p)).collect();
        assert!(matches!(realize_2sphere(&k, &pos), Err(Sphere2Error::NotStarShaped(_))));
    }

    #[test]
    fn polygon_rejected() {
        assert_eq!(realize_2sphere(&SimplicialComplex::polygon(4), &[]).unwrap_err(), Sphere2Error::NotTwoDimensional);
    }
}
