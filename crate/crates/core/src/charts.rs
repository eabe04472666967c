//! Exponent data of the quotient construction: Ker λ, chart transitions,
//! cocycle checks and the orbit-space face poset.

use rayon::prelude::*;
use serde::Serialize;

use crate::fan::{FanError, TopologicalFan};
use crate::ring::{pairing, RElem, RVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelGenerator {
    pub k: usize,
    /// Exponents E_1..E_m.
    pub exponents: Vec<RElem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelPresentation {
    pub base: Vec<usize>,
    pub generators: Vec<KernelGenerator>,
}

/// Square R-matrix indexed by `rows` (facet J) and `cols` (facet I).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub entries: Vec<Vec<RElem>>,
}

impl TransitionMatrix {
    pub fn entry(&self, j: usize, i: usize) -> Option<&RElem> {
        let r = self.target.iter().position(|&x| x == j)?;
        let c = self.source.iter().position(|&x| x == i)?;
        Some(&self.entries[r][c])
    }

    /// `self ∘ first`: first maps I→J, self maps J→K.
    pub fn compose(&self, first: &TransitionMatrix) -> Option<TransitionMatrix> {
        if self.source != first.target {
            return None;
        }
        let entries = (0..self.target.len())
            .map(|k| {
                (0..first.source.len())
                    .map(|i| {
                        (0..self.source.len())
                            .fold(RElem::zero(), |acc, j| &acc + &(&self.entries[k][j] * &first.entries[j][i]))
                    })
                    .collect()
            })
            .collect();
        Some(TransitionMatrix { source: first.source.clone(), target: self.target.clone(), entries })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.entries.iter().enumerate().all(|(r, row)| {
                row.iter().enumerate().all(|(c, e)| if r == c { e.is_one() } else { e.is_zero() })
            })
    }
}

fn sorted(f: &[usize]) -> Vec<usize> {
    let mut s = f.to_vec();
    s.sort_unstable();
    s
}

pub fn kernel_presentation(fan: &TopologicalFan, facet: &[usize]) -> Result<KernelPresentation, FanError> {
    let base = sorted(facet);
    let alphas = fan.dual_basis(&base)?.alphas;
    let m = fan.m();
    let generators = (1..=m)
        .filter(|k| !base.contains(k))
        .map(|k| {
            let bk = fan.ray(k).to_rvec();
            let mut e = vec![RElem::zero(); m];
            e[k - 1] = RElem::one();
            for (pos, &i) in base.iter().enumerate() {
                e[i - 1] = -&pairing(&alphas[pos], &bk).expect("same dimension");
            }
            KernelGenerator { k, exponents: e }
        })
        .collect();
    Ok(KernelPresentation { base, generators })
}

/// Σ_j β_j E_j, which vanishes exactly when the generator lies in Ker λ.
pub fn kernel_residual(fan: &TopologicalFan, g: &KernelGenerator) -> RVec {
    let mut acc = RVec::zeros(fan.n);
    for (j, e) in g.exponents.iter().enumerate() {
        let term = RVec::from_elems(&fan.ray(j + 1).to_rvec().elems().iter().map(|b| b * e).collect::<Vec<_>>());
        acc = acc.add(&term);
    }
    acc
}

/// Both presentations generate the same subgroup: every generator of one is
/// the R-combination of the other's generators read off its free coordinates.
pub fn same_kernel(p: &KernelPresentation, q: &KernelPresentation) -> bool {
    let inside = |a: &KernelPresentation, b: &KernelPresentation| {
        b.generators.iter().all(|g| {
            let m = g.exponents.len();
            (0..m).all(|j| {
                let combo = a
                    .generators
                    .iter()
                    .fold(RElem::zero(), |acc, e| &acc + &(&e.exponents[j] * &g.exponents[e.k - 1]));
                combo == g.exponents[j]
            })
        })
    };
    inside(p, q) && inside(q, p)
}

/// Entry (j, i) = ⟨α^J_j, β_i⟩; rows follow sorted J, columns sorted I.
pub fn transition_matrix(fan: &TopologicalFan, i_facet: &[usize], j_facet: &[usize]) -> Result<TransitionMatrix, FanError> {
    let (src, tgt) = (sorted(i_facet), sorted(j_facet));
    fan.require_facet(&src)?;
    let alphas = fan.dual_basis(&tgt)?.alphas;
    let entries = alphas
        .iter()
        .map(|a| src.iter().map(|&i| pairing(a, &fan.ray(i).to_rvec()).expect("same dimension")).collect())
        .collect();
    Ok(TransitionMatrix { source: src, target: tgt, entries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleFailure {
    Composition { i: Vec<usize>, j: Vec<usize>, k: Vec<usize> },
    Inverse { i: Vec<usize>, j: Vec<usize> },
}

/// All transition matrices between maximal facets, keyed by (source, target) index.
pub fn all_transitions(fan: &TopologicalFan) -> Result<Vec<Vec<TransitionMatrix>>, FanError> {
    let facets = fan.complex.facets();
    facets
        .par_iter()
        .map(|i| facets.iter().map(|j| transition_matrix(fan, i, j)).collect())
        .collect()
}

/// T(J,K)·T(I,J) = T(I,K) and T(J,I)·T(I,J) = 1 over all facet triples.
/// Returns the first failure in (I, J, K) index order.
pub fn check_cocycle(fan: &TopologicalFan) -> Result<Option<CocycleFailure>, FanError> {
    let t = all_transitions(fan)?;
    check_cocycle_with(fan, &t)
}

pub fn check_cocycle_with(fan: &TopologicalFan, t: &[Vec<TransitionMatrix>]) -> Result<Option<CocycleFailure>, FanError> {
    let facets = fan.complex.facets();
    let nf = facets.len();
    let first = (0..nf).into_par_iter().find_map_first(|a| {
        for b in 0..nf {
            let back = t[b][a].compose(&t[a][b]).expect("composable");
            if !back.is_identity() {
                return Some(CocycleFailure::Inverse { i: facets[a].clone(), j: facets[b].clone() });
            }
            for c in 0..nf {
                let comp = t[b][c].compose(&t[a][b]).expect("composable");
                if comp != t[a][c] {
                    return Some(CocycleFailure::Composition {
                        i: facets[a].clone(),
                        j: facets[b].clone(),
                        k: facets[c].clone(),
                    });
                }
            }
        }
        None
    });
    Ok(first)
}

/// Every transition exponent has vanishing c-part.
pub fn check_conjugation_equivariant(fan: &TopologicalFan) -> Result<bool, FanError> {
    let t = all_transitions(fan)?;
    Ok(t.iter().flatten().all(|m| m.entries.iter().flatten().all(|e| num_traits::Zero::is_zero(&e.c))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetElement {
    pub face: Vec<usize>,
    /// Codimension of the orbit-space face, |J|.
    pub rank: usize,
    /// Pattern in [0,1]^m: '0' where x_j = 0 (j ∈ J), '*' elsewhere.
    pub cube: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacePoset {
    pub elements: Vec<PosetElement>,
    /// (smaller, larger) index pairs of covering relations in reverse inclusion:
    /// the face of J' lies below the face of J when J ⊂ J', |J'| = |J| + 1.
    pub covers: Vec<(usize, usize)>,
}

impl FacePoset {
    pub fn rank_counts(&self) -> Vec<usize> {
        let top = self.elements.iter().map(|e| e.rank).max().unwrap_or(0);
        (0..=top).map(|r| self.elements.iter().filter(|e| e.rank == r).count()).collect()
    }
}

pub fn orbit_face_poset(fan: &TopologicalFan) -> FacePoset {
    let m = fan.m();
    let faces: Vec<Vec<usize>> = {
        let mut f: Vec<Vec<usize>> = fan.complex.all_faces().into_iter().collect();
        f.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        f
    };
    let elements: Vec<PosetElement> = faces
        .iter()
        .map(|f| PosetElement {
            face: f.clone(),
            rank: f.len(),
            cube: (1..=m).map(|j| if f.contains(&j) { '0' } else { '*' }).collect(),
        })
        .collect();
    let mut covers = Vec::new();
    for (a, fa) in faces.iter().enumerate() {
        for (b, fb) in faces.iter().enumerate() {
            if fb.len() == fa.len() + 1 && fa.iter().all(|x| fb.contains(x)) {
                covers.push((b, a));
            }
        }
    }
    FacePoset { elements, covers }
}
