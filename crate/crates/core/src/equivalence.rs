//! Strict, D- and H-equivalence of topological fans.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fan::{Ray, TopologicalFan};
use crate::rational::rat;
use crate::ring::RElem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquivMode {
    Strict,
    D,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    /// `sigma[i-1]` is the image of vertex i.
    pub sigma: Vec<usize>,
    /// Per-ray μ_i with β'_{σ(i)} = β_i μ_i.
    pub mus: Vec<RElem>,
}

/// μ with `to = from · μ` for the given mode, if one exists.
pub fn ray_multiplier(from: &Ray, to: &Ray, mode: EquivMode) -> Option<RElem> {
    match mode {
        EquivMode::Strict => (from == to).then(RElem::one),
        EquivMode::D => {
            if from == to {
                Some(RElem::one())
            } else {
                let conj = Ray::from(&from.to_rvec().right_mul(&RElem::mu0()));
                (conj == *to).then(RElem::mu0)
            }
        }
        EquivMode::H => h_multiplier(from, to),
    }
}

fn h_multiplier(from: &Ray, to: &Ray) -> Option<RElem> {
    if from.dim() != to.dim() {
        return None;
    }
    let k = from.b.iter().position(|x| !x.is_zero())?;
    let s = &to.b[k] / &from.b[k];
    if !s.is_positive() || from.b.iter().zip(&to.b).any(|(x, y)| &(x * &s) != y) {
        return None;
    }
    let eps = if from.v == to.v {
        1
    } else if from.v.iter().zip(&to.v).all(|(x, y)| *x == -*y) {
        -1
    } else {
        return None;
    };
    let kv = from.v.iter().position(|&x| x != 0)?;
    let gamma = (&to.c[kv] - &s * &from.c[kv]) / rat(from.v[kv]);
    let ok = (0..from.dim()).all(|j| to.c[j] == &s * &from.c[j] + &gamma * rat(from.v[j]));
    ok.then(|| RElem::new(s, gamma, eps))
}

/// Lexicographically least simplicial isomorphism satisfying the ray condition.
pub fn equivalent(a: &TopologicalFan, b: &TopologicalFan, mode: EquivMode) -> Option<Equivalence> {
    if a.n != b.n || a.m() != b.m() || a.complex.facets().len() != b.complex.facets().len() {
        return None;
    }
    let m = a.m();
    let compat: Vec<Vec<(usize, RElem)>> = (1..=m)
        .map(|i| {
            (1..=m)
                .filter_map(|j| ray_multiplier(a.ray(i), b.ray(j), mode).map(|mu| (j, mu)))
                .collect()
        })
        .collect();
    let deg = |f: &TopologicalFan, v: usize| f.complex.facets().iter().filter(|x| x.contains(&v)).count();
    let deg_a: Vec<usize> = (1..=m).map(|v| deg(a, v)).collect();
    let deg_b: Vec<usize> = (1..=m).map(|v| deg(b, v)).collect();
    let facets_b: BTreeSet<Vec<usize>> = b.facet_set();
    let mut st = Search {
        a,
        b,
        compat: &compat,
        deg_a: &deg_a,
        deg_b: &deg_b,
        facets_b: &facets_b,
        sigma: vec![0; m],
        mus: vec![RElem::zero(); m],
        used: vec![false; m + 1],
    };
    st.rec(0).then_some(Equivalence { sigma: st.sigma, mus: st.mus })
}

struct Search<'a> {
    a: &'a TopologicalFan,
    b: &'a TopologicalFan,
    compat: &'a [Vec<(usize, RElem)>],
    deg_a: &'a [usize],
    deg_b: &'a [usize],
    facets_b: &'a BTreeSet<Vec<usize>>,
    sigma: Vec<usize>,
    mus: Vec<RElem>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn rec(&mut self, i: usize) -> bool {
        if i == self.sigma.len() {
            return self.a.complex.facets().iter().all(|f| self.facets_b.contains(&self.image(f)));
        }
        for (j, mu) in &self.compat[i] {
            let j = *j;
            if self.used[j] || self.deg_a[i] != self.deg_b[j - 1] {
                continue;
            }
            self.sigma[i] = j;
            self.used[j] = true;
            if self.partial_ok(i + 1) {
                self.mus[i] = mu.clone();
                if self.rec(i + 1) {
                    return true;
                }
            }
            self.used[j] = false;
            self.sigma[i] = 0;
        }
        false
    }

    fn image(&self, f: &[usize]) -> Vec<usize> {
        let mut g: Vec<usize> = f.iter().map(|&v| self.sigma[v - 1]).collect();
        g.sort_unstable();
        g
    }

    /// Images of the assigned parts of facets containing vertex `v` must be faces.
    fn partial_ok(&self, v: usize) -> bool {
        self.a.complex.facets().iter().filter(|f| f.contains(&v)).all(|f| {
            let part: Vec<usize> = f.iter().copied().filter(|&u| self.sigma[u - 1] != 0).collect();
            let img = self.image(&part);
            if part.len() == f.len() {
                self.facets_b.contains(&img)
            } else {
                self.b.complex.contains_face(&img)
            }
        })
    }
}
