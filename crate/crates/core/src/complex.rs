//! Abstract simplicial complexes on the vertex set `1..=m`, stored by facets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::binomial;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("facet {0:?} is empty")]
    EmptyFacet(Vec<usize>),
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("facet {small:?} is contained in facet {big:?}")]
    NotAntichain { small: Vec<usize>, big: Vec<usize> },
    #[error("vertex {0} lies in no facet")]
    UnusedVertex(usize),
    #[error("{0:?} is not a facet")]
    NotAFacet(Vec<usize>),
    #[error("bad cyclic polytope parameters n={n}, m={m} (need m > n >= 2)")]
    BadCyclicParameters { n: usize, m: usize },
}

/// A finite simplicial complex given by its facets.
///
/// Facets are kept both sorted (for set queries) and in the order they were
/// supplied; the listed order carries an orientation used by sign tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Vec<usize>>,
    listed: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl SimplicialComplex {
    pub fn new(m: usize, facets: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut sorted = Vec::with_capacity(facets.len());
        for f in &facets {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet(f.clone()));
            }
            for &v in f {
                if v == 0 || v > m {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, m });
                }
            }
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex(f.clone()));
            }
            sorted.push(s);
        }
        for (i, a) in sorted.iter().enumerate() {
            for (j, b) in sorted.iter().enumerate() {
                if i != j && a.len() <= b.len() && is_subset(a, b) && (a.len() < b.len() || i > j) {
                    return Err(ComplexError::NotAntichain { small: a.clone(), big: b.clone() });
                }
            }
        }
        let mut used = vec![false; m + 1];
        for f in &sorted {
            for &v in f {
                used[v] = true;
            }
        }
        if let Some(v) = (1..=m).find(|&v| !used[v]) {
            return Err(ComplexError::UnusedVertex(v));
        }
        Ok(Self { m, facets: sorted, listed: facets, labels: BTreeMap::new() })
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Facets with sorted vertex lists, in input order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Facets exactly as listed at construction.
    pub fn listed_facets(&self) -> &[Vec<usize>] {
        &self.listed
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> String {
        self.labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim() + 1;
        self.facets.iter().all(|f| f.len() as isize == d)
    }

    pub fn facet_index(&self, face: &[usize]) -> Option<usize> {
        let mut s = face.to_vec();
        s.sort_unstable();
        self.facets.iter().position(|f| *f == s)
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let mut s = face.to_vec();
        s.sort_unstable();
        s.dedup();
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// All faces with exactly `k` vertices (sorted, deduplicated).
    pub fn faces_of_size(&self, k: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() < k {
                continue;
            }
            for idx in crate::linalg::combinations(f.len(), k) {
                out.insert(idx.iter().map(|&i| f[i]).collect());
            }
        }
        out
    }

    /// Every face including the empty one.
    pub fn all_faces(&self) -> BTreeSet<Vec<usize>> {
        let top = (self.dim() + 1).max(0) as usize;
        (0..=top).flat_map(|k| self.faces_of_size(k)).collect()
    }

    pub fn f_vector(&self) -> Vec<u64> {
        let top = (self.dim() + 1).max(0) as usize;
        (1..=top).map(|k| self.faces_of_size(k).len() as u64).collect()
    }

    /// f- and h-vector; the h-vector uses n = dim + 1.
    pub fn f_h_vectors(&self) -> FVector {
        let f = self.f_vector();
        let n = f.len() as i64;
        let fm = |i: i64| -> i64 { if i < 0 { 1 } else { f[i as usize] as i64 } };
        let h = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let s = if (k - i) % 2 == 0 { 1 } else { -1 };
                        s * binomial(n - i, k - i) * fm(i - 1)
                    })
                    .sum()
            })
            .collect();
        FVector { f, h }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn one_skeleton(&self) -> BTreeSet<(usize, usize)> {
        self.faces_of_size(2).into_iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.facets
            .iter()
            .filter(|f| f.contains(&v))
            .flat_map(|f| f.iter().copied())
            .filter(|&u| u != v)
            .collect()
    }

    /// Link of `v`, relabeled onto its neighbors in increasing order.
    /// Returns the complex together with the map new-index -> old vertex.
    pub fn link(&self, v: usize) -> Result<(SimplicialComplex, Vec<usize>), ComplexError> {
        if v == 0 || v > self.m {
            return Err(ComplexError::VertexOutOfRange { vertex: v, m: self.m });
        }
        let nb: Vec<usize> = self.neighbors(v).into_iter().collect();
        let pos: BTreeMap<usize, usize> = nb.iter().enumerate().map(|(i, &u)| (u, i + 1)).collect();
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().filter(|&&u| u != v).map(|u| pos[u]).collect())
            .filter(|f: &Vec<usize>| !f.is_empty())
            .collect();
        let mut labels = BTreeMap::new();
        for (i, &u) in nb.iter().enumerate() {
            if let Some(l) = self.labels.get(&u) {
                labels.insert(i + 1, l.clone());
            }
        }
        Ok((SimplicialComplex::new(nb.len(), facets)?.with_labels(labels), nb))
    }

    /// Replaces the facet `sigma` by the cone from a new vertex `m+1` over its
    /// boundary. The new facets keep the orientation of the removed one.
    pub fn stellar_subdivide(&self, sigma: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        let idx = self.facet_index(sigma).ok_or_else(|| ComplexError::NotAFacet(sigma.to_vec()))?;
        if self.facets[idx].len() as isize != self.dim() + 1 {
            return Err(ComplexError::NotAFacet(sigma.to_vec()));
        }
        let x = self.m + 1;
        let old = &self.listed[idx];
        let mut listed: Vec<Vec<usize>> = Vec::new();
        for (i, f) in self.listed.iter().enumerate() {
            if i == idx {
                for j in 0..old.len() {
                    let mut g = old.clone();
                    g[j] = x;
                    listed.push(g);
                }
            } else {
                listed.push(f.clone());
            }
        }
        Ok(SimplicialComplex::new(x, listed)?.with_labels(self.labels.clone()))
    }

    /// Suspension with new vertices `m+1` (north) and `m+2` (south).
    pub fn suspend(&self) -> SimplicialComplex {
        let (n, s) = (self.m + 1, self.m + 2);
        let mut listed = Vec::new();
        for f in &self.listed {
            let mut a = f.clone();
            a.push(n);
            listed.push(a);
        }
        for f in &self.listed {
            let mut b = f.clone();
            b.push(s);
            listed.push(b);
        }
        SimplicialComplex::new(self.m + 2, listed)
            .expect("suspension of a valid complex is valid")
            .with_labels(self.labels.clone())
    }

    /// Join; vertices of `other` are shifted by `self.m`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut listed = Vec::new();
        for f in &self.listed {
            for g in &other.listed {
                let mut h = f.clone();
                h.extend(g.iter().map(|&v| v + self.m));
                listed.push(h);
            }
        }
        SimplicialComplex::new(self.m + other.m, listed).expect("join of valid complexes is valid")
    }

    /// Boundary of the cyclic polytope C^n(m) by Gale evenness.
    pub fn cyclic_polytope_boundary(n: usize, m: usize) -> Result<SimplicialComplex, ComplexError> {
        if n < 2 || m <= n {
            return Err(ComplexError::BadCyclicParameters { n, m });
        }
        let facets: Vec<Vec<usize>> = crate::linalg::combinations(m, n)
            .into_iter()
            .map(|s| s.into_iter().map(|i| i + 1).collect::<Vec<_>>())
            .filter(|s| gale_even(s, m))
            .collect();
        SimplicialComplex::new(m, facets)
    }

    pub fn boundary_of_simplex(n: usize) -> SimplicialComplex {
        let facets = (1..=n + 1).map(|skip| (1..=n + 1).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::new(n + 1, facets).expect("simplex boundary is valid")
    }

    pub fn polygon(m: usize) -> SimplicialComplex {
        let facets = (1..=m).map(|i| vec![i, i % m + 1]).collect();
        SimplicialComplex::new(m, facets).expect("polygon is valid")
    }

    /// Codimension-one faces mapped to the indices of the facets containing them.
    pub fn walls(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for skip in 0..f.len() {
                let w: Vec<usize> = f.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                out.entry(w).or_default().push(i);
            }
        }
        out
    }

    /// Pure, and every wall lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        self.is_pure() && self.walls().values().all(|fs| fs.len() == 2)
    }

    /// Adjacency of facets sharing a wall.
    pub fn dual_graph(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.facets.len()];
        for fs in self.walls().values() {
            for &a in fs {
                for &b in fs {
                    if a != b && !adj[a].contains(&b) {
                        adj[a].push(b);
                    }
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn dual_graph_connected(&self) -> bool {
        let adj = self.dual_graph();
        if adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; adj.len()];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(a) = q.pop_front() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    q.push_back(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Inclusion-minimal vertex sets that are not faces.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let top = (self.dim() + 2).max(1) as usize;
        let mut out: Vec<Vec<usize>> = Vec::new();
        for k in 1..=top.min(self.m) {
            let faces_below = if k >= 2 { self.faces_of_size(k - 1) } else { BTreeSet::from([vec![]]) };
            for c in crate::linalg::combinations(self.m, k) {
                let s: Vec<usize> = c.iter().map(|&i| i + 1).collect();
                if self.contains_face(&s) {
                    continue;
                }
                let all_boundary_faces = (0..k).all(|skip| {
                    let t: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                    faces_below.contains(&t)
                });
                if all_boundary_faces {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Renames vertex `v` to `perm[v-1]` (a bijection onto `1..=m`).
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        let listed = self.listed.iter().map(|f| f.iter().map(|&v| perm[v - 1]).collect()).collect();
        let labels = self.labels.iter().map(|(&v, l)| (perm[v - 1], l.clone())).collect();
        SimplicialComplex::new(self.m, listed).expect("relabeling preserves validity").with_labels(labels)
    }

    /// Same facet set, ignoring listed order and labels.
    pub fn same_facets(&self, other: &SimplicialComplex) -> bool {
        if self.m != other.m {
            return false;
        }
        let a: BTreeSet<_> = self.facets.iter().collect();
        let b: BTreeSet<_> = other.facets.iter().collect();
        a == b
    }

    /// A vertex bijection `perm` (vertex v ↦ perm[v-1]) carrying the facets
    /// of `self` onto those of `other`, if one exists.
    pub fn isomorphism(&self, other: &SimplicialComplex) -> Option<Vec<usize>> {
        if self.m != other.m || self.facets.len() != other.facets.len() || self.f_vector() != other.f_vector() {
            return None;
        }
        let deg = |k: &SimplicialComplex| -> Vec<usize> {
            (0..=k.m).map(|v| k.facets.iter().filter(|f| f.contains(&v)).count()).collect()
        };
        let (da, db) = (deg(self), deg(other));
        let target: BTreeSet<Vec<usize>> = other.facets.iter().cloned().collect();
        let mut perm = vec![0usize; self.m + 1];
        let mut used = vec![false; self.m + 1];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            a: &SimplicialComplex,
            b: &SimplicialComplex,
            v: usize,
            da: &[usize],
            db: &[usize],
            target: &BTreeSet<Vec<usize>>,
            perm: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if v > a.m {
                return true;
            }
            for w in 1..=b.m {
                if used[w] || da[v] != db[w] {
                    continue;
                }
                perm[v] = w;
                used[w] = true;
                let ok = a.facets.iter().filter(|f| f.contains(&v)).all(|f| {
                    let mut img: Vec<usize> = f.iter().filter(|&&x| x <= v).map(|&x| perm[x]).collect();
                    img.sort_unstable();
                    if img.len() == f.len() {
                        target.contains(&img)
                    } else {
                        b.contains_face(&img)
                    }
                });
                if ok && rec(a, b, v + 1, da, db, target, perm, used) {
                    return true;
                }
                used[w] = false;
            }
            perm[v] = 0;
            false
        }
        rec(self, other, 1, &da, &db, &target, &mut perm, &mut used).then(|| perm[1..].to_vec())
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Every maximal block of `s` that has non-elements on both sides has even size.
fn gale_even(s: &[usize], m: usize) -> bool {
    let mut i = 0;
    while i < s.len() {
        let mut j = i;
        while j + 1 < s.len() && s[j + 1] == s[j] + 1 {
            j += 1;
        }
        let interior = s[i] > 1 && s[j] < m;
        if interior && (j - i + 1) % 2 == 1 {
            return false;
        }
        i = j + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimplicialComplex {
        SimplicialComplex::polygon(4).suspend()
    }

    #[test]
    fn purity() {
        assert!(SimplicialComplex::polygon(4).is_pure());
        assert!(!SimplicialComplex::new(3, vec![vec![1, 2], vec![3]]).unwrap().is_pure());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::new(3, vec![vec![1, 2], vec![1, 2, 3]]),
            Err(ComplexError::NotAntichain { .. })
        ));
        assert!(matches!(SimplicialComplex::new(3, vec![vec![1, 2]]), Err(ComplexError::UnusedVertex(3))));
        assert!(matches!(
            SimplicialComplex::new(2, vec![vec![1, 3]]),
            Err(ComplexError::VertexOutOfRange { .. })
        ));
        assert!(SimplicialComplex::new(2, vec![vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn link_of_square_and_octahedron() {
        let (l, map) = SimplicialComplex::polygon(4).link(1).unwrap();
        assert_eq!(map, vec![2, 4]);
        assert_eq!(l.facets(), &[vec![1], vec![2]]);
        let (l, _) = octahedron().link(1).unwrap();
        assert!(l.is_pseudomanifold());
        assert_eq!(l.f_vector(), vec![4, 4]);
        assert!(SimplicialComplex::polygon(4).link(9).is_err());
    }

    #[test]
    fn stellar_counts() {
        let p5 = SimplicialComplex::polygon(4).stellar_subdivide(&[1, 2]).unwrap();
        assert_eq!(p5.m(), 5);
        assert_eq!(p5.facets().len(), 5);
        assert!(p5.is_pseudomanifold());
        let t = SimplicialComplex::boundary_of_simplex(3).stellar_subdivide(&[1, 2, 3]).unwrap();
        assert_eq!(t.facets().len(), 6);
        assert!(SimplicialComplex::polygon(4).stellar_subdivide(&[1, 3]).is_err());
    }

    #[test]
    fn suspension_examples() {
        let two_points = SimplicialComplex::new(2, vec![vec![1], vec![2]]).unwrap();
        let sq = two_points.suspend();
        assert_eq!(sq.f_vector(), vec![4, 4]);
        assert!(sq.is_pseudomanifold());
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn vectors() {
        let fv = SimplicialComplex::polygon(4).f_h_vectors();
        assert_eq!((fv.f, fv.h), (vec![4, 4], vec![1, 2, 1]));
        let fv = octahedron().f_h_vectors();
        assert_eq!(fv.h, vec![1, 3, 3, 1]);
        let fv = SimplicialComplex::boundary_of_simplex(4).f_h_vectors();
        assert_eq!(fv.f, vec![5, 10, 10, 5]);
        assert_eq!(fv.h, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn cyclic_polytopes() {
        let c = SimplicialComplex::cyclic_polytope_boundary(2, 5).unwrap();
        assert!(c.same_facets(&SimplicialComplex::polygon(5)));
        let c = SimplicialComplex::cyclic_polytope_boundary(4, 8).unwrap();
        assert_eq!(c.one_skeleton().len(), 28);
        let c = SimplicialComplex::cyclic_polytope_boundary(3, 7).unwrap();
        assert_eq!(c.facets().len(), 10);
        assert_eq!(c.euler_characteristic(), 2);
        assert!(SimplicialComplex::cyclic_polytope_boundary(4, 4).is_err());
    }

    #[test]
    fn minimal_non_faces_of_square() {
        assert_eq!(SimplicialComplex::polygon(4).minimal_non_faces(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(SimplicialComplex::boundary_of_simplex(2).minimal_non_faces(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn isomorphism_of_relabeled_complex() {
        let k = SimplicialComplex::cyclic_polytope_boundary(4, 7).unwrap();
        let perm = vec![3, 1, 7, 2, 6, 4, 5];
        let g = k.relabel(&perm);
        let found = k.isomorphism(&g).unwrap();
        assert!(k.relabel(&found).same_facets(&g));
        assert!(k.isomorphism(&SimplicialComplex::boundary_of_simplex(2).join(&SimplicialComplex::polygon(4))).is_none());
    }
}
