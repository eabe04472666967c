//! Determinant sign tables forced by the toric sign condition.
//!
//! Signs are relative to an explicit vertex ordering of every facet. Across
//! a wall, replacing the opposite vertex p of F by p' gives an ordering of F'
//! whose determinant is minus that of F; composing with the permutation to
//! F''s own ordering yields its sign.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SignError {
    #[error("complex is not a pure pseudomanifold")]
    NotPseudomanifold,
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("seed facet index {0} out of range")]
    BadSeed(usize),
    #[error("ordering for facet {0} is not a permutation of it")]
    BadOrdering(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignTable {
    /// Vertex ordering of each facet, parallel to the complex's facet list.
    pub orders: Vec<Vec<usize>>,
    pub signs: Vec<i32>,
}

/// A cycle in the dual graph along which propagation returns with the wrong sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignContradiction {
    /// Facet indices (0-based) forming the closed walk; the last step goes back to the first.
    pub cycle: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SignOutcome {
    Table(SignTable),
    Contradiction(SignContradiction),
}

/// Sign of the permutation taking `from` to `to` (same element set).
pub fn permutation_parity(from: &[usize], to: &[usize]) -> i32 {
    let mut perm: Vec<usize> = from.iter().map(|x| to.iter().position(|y| y == x).expect("same set")).collect();
    let mut sign = 1;
    for i in 0..perm.len() {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// Sign of F' given the sign of F for facets sharing a wall.
pub fn propagate(order_f: &[usize], sign_f: i32, order_g: &[usize]) -> i32 {
    let p = *order_f.iter().find(|x| !order_g.contains(x)).expect("adjacent facets");
    let q = *order_g.iter().find(|x| !order_f.contains(x)).expect("adjacent facets");
    let replaced: Vec<usize> = order_f.iter().map(|&x| if x == p { q } else { x }).collect();
    -sign_f * permutation_parity(&replaced, order_g)
}

/// Breadth-first propagation from `seed` with `seed_sign`, using the
/// complex's listed orderings unless `orders` is given.
pub fn derive_sign_table(
    k: &SimplicialComplex,
    orders: Option<&[Vec<usize>]>,
    seed: usize,
    seed_sign: i32,
) -> Result<SignOutcome, SignError> {
    if !k.is_pseudomanifold() {
        return Err(SignError::NotPseudomanifold);
    }
    let nf = k.facets().len();
    if seed >= nf {
        return Err(SignError::BadSeed(seed));
    }
    let orders: Vec<Vec<usize>> = orders.map_or_else(|| k.listed_facets().to_vec(), <[_]>::to_vec);
    for (i, o) in orders.iter().enumerate() {
        let mut s = o.clone();
        s.sort_unstable();
        if s != k.facets()[i] {
            return Err(SignError::BadOrdering(i));
        }
    }
    let adj = k.dual_graph();
    let mut sign = vec![0i32; nf];
    let mut parent = vec![usize::MAX; nf];
    sign[seed] = seed_sign.signum();
    let mut q = VecDeque::from([seed]);
    while let Some(a) = q.pop_front() {
        for &b in &adj[a] {
            let s = propagate(&orders[a], sign[a], &orders[b]);
            if sign[b] == 0 {
                sign[b] = s;
                parent[b] = a;
                q.push_back(b);
            } else if sign[b] != s {
                let cycle = close_cycle(&parent, a, b);
                let facets = cycle.iter().map(|&i| orders[i].clone()).collect();
                return Ok(SignOutcome::Contradiction(SignContradiction { cycle, facets }));
            }
        }
    }
    if sign.contains(&0) {
        return Err(SignError::Disconnected);
    }
    Ok(SignOutcome::Table(SignTable { orders, signs: sign }))
}

fn close_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (pa, pb) = (path(a), path(b));
    let common = *pa.iter().find(|x| pb.contains(x)).expect("same tree");
    let mut cycle: Vec<usize> = pa.iter().take_while(|&&x| x != common).copied().collect();
    cycle.reverse();
    let mut tail: Vec<usize> = pb.iter().take_while(|&&x| x != common).copied().collect();
    cycle.insert(0, common);
    cycle.append(&mut tail);
    cycle
}

/// The sign condition holds for a labeling: every adjacent pair agrees with propagation.
pub fn check_sign_condition(table: &SignTable, dets: &[i128]) -> bool {
    table.signs.iter().zip(dets).all(|(&s, &d)| i128::from(s) == d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity() {
        assert_eq!(permutation_parity(&[1, 2, 3], &[1, 2, 3]), 1);
        assert_eq!(permutation_parity(&[2, 1, 3], &[1, 2, 3]), -1);
        assert_eq!(permutation_parity(&[2, 3, 1], &[1, 2, 3]), 1);
    }

    #[test]
    fn square_alternates_with_slot_orders() {
        let k = SimplicialComplex::polygon(4);
        let orders = vec![vec![1, 2], vec![3, 2], vec![3, 4], vec![1, 4]];
        match derive_sign_table(&k, Some(&orders), 0, 1).unwrap() {
            SignOutcome::Table(t) => assert_eq!(t.signs, vec![1, -1, 1, -1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_orders_give_constant_sign() {
        let k = SimplicialComplex::polygon(5);
        match derive_sign_table(&k, None, 0, 1).unwrap() {
            SignOutcome::Table(t) => assert!(t.signs.iter().all(|&s| s == 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projective_plane_contradicts() {
        // Six-vertex triangulation of RP².
        let facets = vec![
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 6, 2],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 2],
            vec![5, 6, 3],
            vec![6, 2, 4],
        ];
        let k = SimplicialComplex::new(6, facets).unwrap();
        assert!(k.is_pseudomanifold());
        match derive_sign_table(&k, None, 0, 1).unwrap() {
            SignOutcome::Contradiction(c) => assert!(c.cycle.len() >= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disconnected_is_an_error() {
        let a = SimplicialComplex::polygon(3);
        let k = a.join(&SimplicialComplex::new(1, vec![vec![1]]).unwrap());
        assert_eq!(derive_sign_table(&k, None, 0, 1), Err(SignError::NotPseudomanifold));
        let two = SimplicialComplex::new(6, vec![vec![1, 2], vec![2, 3], vec![3, 1], vec![4, 5], vec![5, 6], vec![6, 4]])
            .unwrap();
        assert_eq!(derive_sign_table(&two, None, 0, 1), Err(SignError::Disconnected));
    }
}
