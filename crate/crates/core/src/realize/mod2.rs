//! Mod-2 labelings: nonzero classes of (Z/2)ⁿ, independent on every facet.

use serde::Serialize;

use crate::complex::SimplicialComplex;

pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Mod2Outcome {
    /// `classes[i-1]` is the bitmask class of vertex i.
    Feasible { classes: Vec<u32>, nodes: u64 },
    /// A 1-skeleton clique larger than the number of nonzero classes.
    Clique { clique: Vec<usize> },
    Exhausted { nodes: u64 },
    LimitReached { nodes: u64 },
}

/// Maximum clique of the 1-skeleton (Bron–Kerbosch with pivoting), sorted.
pub fn max_clique(k: &SimplicialComplex) -> Vec<usize> {
    let m = k.m();
    let adj: Vec<Vec<bool>> = {
        let mut a = vec![vec![false; m + 1]; m + 1];
        for (x, y) in k.one_skeleton() {
            a[x][y] = true;
            a[y][x] = true;
        }
        a
    };
    let mut best = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (1..=m).collect(), Vec::new(), &mut best);
    best.sort_unstable();
    best
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, p: Vec<usize>, x: Vec<usize>, best: &mut Vec<usize>) {
    if p.is_empty() && x.is_empty() {
        if r.len() > best.len() {
            *best = r;
        }
        return;
    }
    if r.len() + p.len() <= best.len() {
        return;
    }
    let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&w| adj[u][w]).count()).expect("nonempty");
    let mut p = p;
    let mut x = x;
    for v in p.clone().into_iter().filter(|&v| !adj[pivot][v]) {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, best);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

fn independent(classes: &[u32]) -> bool {
    let mut basis: Vec<u32> = Vec::new();
    for &c in classes {
        let mut x = c;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x == 0 {
            return false;
        }
        basis.push(x);
    }
    true
}

/// Backtracking over vertices; `normalize` pins a facet's listed vertices to e₁..eₙ.
pub fn mod2_search(k: &SimplicialComplex, n: usize, normalize: Option<usize>, node_limit: u64) -> Mod2Outcome {
    let clique = max_clique(k);
    if clique.len() > (1usize << n) - 1 {
        return Mod2Outcome::Clique { clique };
    }
    let m = k.m();
    let mut classes = vec![0u32; m + 1];
    if let Some(fi) = normalize {
        for (slot, &x) in k.listed_facets()[fi].iter().enumerate() {
            classes[x] = 1 << slot;
        }
    }
    let order = super::labeling::greedy_order(
        k,
        &normalize.map_or_else(Vec::new, |fi| k.listed_facets()[fi].clone()),
    );
    let facets_of: Vec<Vec<&Vec<usize>>> =
        (0..=m).map(|x| k.facets().iter().filter(|f| f.contains(&x)).collect()).collect();
    let mut st = State { n, order: &order, facets_of: &facets_of, classes, nodes: 0, limit: node_limit };
    match st.rec(0) {
        Some(true) => Mod2Outcome::Feasible { classes: st.classes[1..].to_vec(), nodes: st.nodes },
        Some(false) => Mod2Outcome::Exhausted { nodes: st.nodes },
        None => Mod2Outcome::LimitReached { nodes: st.nodes },
    }
}

struct State<'a> {
    n: usize,
    order: &'a [usize],
    facets_of: &'a [Vec<&'a Vec<usize>>],
    classes: Vec<u32>,
    nodes: u64,
    limit: u64,
}

impl State<'_> {
    /// Some(found) when finished, None when the node limit trips.
    fn rec(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let x = self.order[depth];
        for c in 1..(1u32 << self.n) {
            self.nodes += 1;
            if self.nodes > self.limit {
                return None;
            }
            self.classes[x] = c;
            let ok = self.facets_of[x].iter().all(|f| {
                let assigned: Vec<u32> = f.iter().map(|&y| self.classes[y]).filter(|&c| c != 0).collect();
                independent(&assigned)
            });
            if ok {
                match self.rec(depth + 1) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        self.classes[x] = 0;
        Some(false)
    }
}
