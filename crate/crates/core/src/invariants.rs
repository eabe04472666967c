//! Cohomology presentation, Betti numbers, Pontrjagin class, weights and
//! Todd genus of the manifold attached to a complete non-singular fan.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fan::{ConeMode, FanError, TopologicalFan};
use crate::linalg::{self, RatMatrix};
use crate::rational::{format_rat, is_integral, rat, Rat};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("degree {k} out of range 0..={n}")]
    DegreeOutOfRange { k: usize, n: usize },
    #[error("direction lies on the boundary of a v-cone")]
    DegenerateDirection,
    #[error("direction has length {got}, expected {n}")]
    DirectionLength { got: usize, n: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomPresentation {
    pub m: usize,
    /// Minimal non-faces I; each stands for ∏_{i∈I} μ_i.
    pub sr_monomials: Vec<Vec<usize>>,
    /// Row k holds ⟨e_k, v_i⟩ for i = 1..m.
    pub linear_relations: Vec<Vec<i64>>,
}

pub fn cohomology_presentation(fan: &TopologicalFan) -> CohomPresentation {
    CohomPresentation {
        m: fan.m(),
        sr_monomials: fan.complex.minimal_non_faces(),
        linear_relations: (0..fan.n).map(|k| fan.rays.iter().map(|r| r.v[k]).collect()).collect(),
    }
}

/// Exponent vector of a monomial in μ_1..μ_m.
pub type Monomial = Vec<u32>;
pub type Poly = BTreeMap<Monomial, Rat>;

pub fn monomial_name(mono: &[u32]) -> String {
    let parts: Vec<String> = mono
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("mu{}", i + 1) } else { format!("mu{}^{}", i + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedClass {
    /// Cohomological degree 2k.
    pub degree: usize,
    pub basis: Vec<String>,
    #[serde(skip)]
    pub basis_monomials: Vec<Monomial>,
    #[serde(serialize_with = "ser_rats")]
    pub coords: Vec<Rat>,
    pub integral: bool,
}

fn ser_rats<S: serde::Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_rat))
}

impl GradedClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

struct Piece {
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Reduced relation rows with their pivot (non-basis) column.
    pivots: Vec<(usize, Vec<Rat>)>,
    basis: Vec<usize>,
}

/// The graded quotient ring Z[μ]/𝓘 tensored with Q, one degree at a time.
pub struct GradedRing<'a> {
    fan: &'a TopologicalFan,
    free_vars: Vec<usize>,
    pieces: BTreeMap<usize, Piece>,
}

impl<'a> GradedRing<'a> {
    pub fn new(fan: &'a TopologicalFan) -> Self {
        let rel: RatMatrix =
            (0..fan.n).map(|k| fan.rays.iter().map(|r| rat(r.v[k])).collect()).collect();
        let mut a = rel;
        let (pivots, _) = linalg::rref_in_place(&mut a, fan.m());
        let free_vars = (0..fan.m()).filter(|c| !pivots.contains(c)).collect();
        Self { fan, free_vars, pieces: BTreeMap::new() }
    }

    fn face_supported(&self, mono: &[u32]) -> bool {
        let supp: Vec<usize> = mono.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i + 1).collect();
        self.fan.complex.contains_face(&supp)
    }

    fn monomials(&self, k: usize) -> Vec<Monomial> {
        let m = self.fan.m();
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if m > 0 {
            rec(0, k as u32, &mut cur, &mut out);
        }
        out.into_iter().filter(|x| self.face_supported(x)).collect()
    }

    /// Preference order for basis elements: monomials in the free variables
    /// first, then by largest exponent, then by the sorted index tuple.
    fn preference_key(&self, mono: &[u32]) -> (bool, u32, Vec<usize>) {
        let only_free = mono.iter().enumerate().all(|(i, &e)| e == 0 || self.free_vars.contains(&i));
        let maxe = mono.iter().copied().max().unwrap_or(0);
        let tuple: Vec<usize> =
            mono.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize)).collect();
        (!only_free, maxe, tuple)
    }

    fn piece(&mut self, k: usize) -> &Piece {
        if !self.pieces.contains_key(&k) {
            let p = self.build_piece(k);
            self.pieces.insert(k, p);
        }
        &self.pieces[&k]
    }

    fn build_piece(&self, k: usize) -> Piece {
        let columns = self.monomials(k);
        let index: HashMap<Monomial, usize> = columns.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let nc = columns.len();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        if k >= 1 {
            for lower in self.monomials(k - 1) {
                for r in 0..self.fan.n {
                    let mut row = vec![Rat::zero(); nc];
                    let mut any = false;
                    for (i, ray) in self.fan.rays.iter().enumerate() {
                        if ray.v[r] == 0 {
                            continue;
                        }
                        let mut mono = lower.clone();
                        mono[i] += 1;
                        if let Some(&c) = index.get(&mono) {
                            row[c] += rat(ray.v[r]);
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        // Greedy basis in preference order.
        let mut order: Vec<usize> = (0..nc).collect();
        order.sort_by_key(|&c| self.preference_key(&columns[c]));
        let base_rank = if rows.is_empty() { 0 } else { linalg::rank(&rows) };
        let mut basis = Vec::new();
        let mut acc = rows.clone();
        let mut rank = base_rank;
        for &c in &order {
            if rank == nc {
                break;
            }
            let mut unit = vec![Rat::zero(); nc];
            unit[c] = Rat::one();
            acc.push(unit);
            let r = linalg::rank(&acc);
            if r > rank {
                rank = r;
                basis.push(c);
            } else {
                acc.pop();
            }
        }
        basis.sort_by_key(|&c| self.preference_key(&columns[c]));
        // Reduce relations with non-basis columns first.
        let nonbasis: Vec<usize> = (0..nc).filter(|c| !basis.contains(c)).collect();
        let perm: Vec<usize> = nonbasis.iter().chain(basis.iter()).copied().collect();
        let mut a: RatMatrix = rows.iter().map(|r| perm.iter().map(|&c| r[c].clone()).collect()).collect();
        let (piv, _) = linalg::rref_in_place(&mut a, nc);
        let pivots = piv
            .iter()
            .enumerate()
            .map(|(ri, &pc)| {
                let mut row = vec![Rat::zero(); nc];
                for (j, &c) in perm.iter().enumerate() {
                    row[c] = a[ri][j].clone();
                }
                (perm[pc], row)
            })
            .collect();
        Piece { columns, index, pivots, basis }
    }

    pub fn n(&self) -> usize {
        self.fan.n
    }

    pub fn graded_rank(&mut self, k: usize) -> Result<usize, InvariantError> {
        if k > self.fan.n {
            return Err(InvariantError::DegreeOutOfRange { k, n: self.fan.n });
        }
        Ok(self.piece(k).basis.len())
    }

    pub fn basis(&mut self, k: usize) -> Vec<Monomial> {
        let p = self.piece(k);
        p.basis.iter().map(|&c| p.columns[c].clone()).collect()
    }

    /// Reduces a homogeneous polynomial of degree k to basis coordinates.
    pub fn normal_form(&mut self, poly: &Poly, k: usize) -> Result<GradedClass, InvariantError> {
        if k > self.fan.n {
            return Err(InvariantError::DegreeOutOfRange { k, n: self.fan.n });
        }
        let p = self.piece(k);
        let mut vec = vec![Rat::zero(); p.columns.len()];
        for (mono, c) in poly {
            debug_assert_eq!(mono.iter().sum::<u32>() as usize, k);
            if let Some(&i) = p.index.get(mono) {
                vec[i] += c;
            }
        }
        for (pc, row) in &p.pivots {
            if vec[*pc].is_zero() {
                continue;
            }
            let f = vec[*pc].clone();
            for (x, r) in vec.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
        let coords: Vec<Rat> = p.basis.iter().map(|&c| vec[c].clone()).collect();
        let basis_monomials: Vec<Monomial> = p.basis.iter().map(|&c| p.columns[c].clone()).collect();
        Ok(GradedClass {
            degree: 2 * k,
            basis: basis_monomials.iter().map(|m| monomial_name(m)).collect(),
            integral: coords.iter().all(is_integral),
            basis_monomials,
            coords,
        })
    }

    /// p_j = e_j(μ_1², …, μ_m²) reduced, for 4j ≤ 2n.
    pub fn pontrjagin_class(&mut self) -> Vec<GradedClass> {
        let m = self.fan.m();
        let mut out = Vec::new();
        for j in 0..=self.fan.n / 2 {
            let mut poly = Poly::new();
            for s in linalg::combinations(m, j) {
                let mut mono = vec![0u32; m];
                for i in s {
                    mono[i] = 2;
                }
                if self.face_supported(&mono) {
                    *poly.entry(mono).or_insert_with(Rat::zero) += Rat::one();
                }
            }
            out.push(self.normal_form(&poly, 2 * j).expect("degree in range"));
        }
        out
    }
}

/// b_{2k} = h_k of the underlying complex.
pub fn betti_numbers(fan: &TopologicalFan) -> Vec<i64> {
    fan.complex.f_h_vectors().h
}

pub fn graded_ranks(fan: &TopologicalFan) -> Vec<usize> {
    let mut ring = GradedRing::new(fan);
    (0..=fan.n).map(|k| ring.graded_rank(k).expect("in range")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmniWeight {
    pub facet: Vec<usize>,
    pub w: i32,
    pub w_plus: u8,
    pub w_minus: u8,
}

pub fn omni_weights(fan: &TopologicalFan) -> Result<Vec<OmniWeight>, InvariantError> {
    fan.complex
        .facets()
        .iter()
        .map(|f| {
            let w = fan.orientation_sign(f)?;
            Ok(OmniWeight { facet: f.clone(), w, w_plus: u8::from(w > 0), w_minus: u8::from(w < 0) })
        })
        .collect()
}

/// x lies in the v-cone of some codimension-one face.
fn on_v_boundary(fan: &TopologicalFan, x: &[Rat]) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    fan.complex.faces_of_size(fan.n.saturating_sub(1)).iter().any(|f| {
        let g: RatMatrix = f.iter().map(|&i| fan.ray(i).v.iter().map(|&x| rat(x)).collect()).collect();
        crate::cone::in_cone(&g, x)
    })
}

/// Σ w(I) over facets whose v-cone contains the generic direction.
pub fn todd_genus(fan: &TopologicalFan, direction: &[Rat]) -> Result<i64, InvariantError> {
    if direction.len() != fan.n {
        return Err(InvariantError::DirectionLength { got: direction.len(), n: fan.n });
    }
    if on_v_boundary(fan, direction) {
        return Err(InvariantError::DegenerateDirection);
    }
    let mut t = 0i64;
    for f in fan.locate_cone(direction, ConeMode::V) {
        t += i64::from(fan.orientation_sign(&f)?);
    }
    Ok(t)
}

/// Todd genus along a seeded generic direction; returns the direction used.
pub fn todd_genus_seeded(fan: &TopologicalFan, seed: u64) -> Result<(i64, Vec<Rat>), InvariantError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = fan.generic_direction(&mut rng, ConeMode::V);
    Ok((todd_genus(fan, &x)?, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::fan::Ray;
    use crate::rational::{rat_vec, ratio};

    fn cp2cp2() -> TopologicalFan {
        let b = [[1, 0], [0, 1], [-1, 0], [-1, -1]];
        let v = [[1, 0], [0, 1], [-1, -2], [-1, -1]];
        let rays = b.iter().zip(v).map(|(b, v)| Ray::new(rat_vec(b), rat_vec(&[0, 0]), v.to_vec())).collect();
        let k = SimplicialComplex::new(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]).unwrap();
        TopologicalFan::new(2, k, rays).unwrap()
    }

    fn mono(m: usize, idx: &[usize]) -> Monomial {
        let mut x = vec![0; m];
        for &i in idx {
            x[i - 1] += 1;
        }
        x
    }

    #[test]
    fn presentation() {
        let p = cohomology_presentation(&cp2cp2());
        assert_eq!(p.sr_monomials, vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(p.linear_relations, vec![vec![1, 0, -1, -1], vec![0, 1, -2, -1]]);
    }

    #[test]
    fn ranks_and_reductions() {
        let f = cp2cp2();
        let mut r = GradedRing::new(&f);
        assert_eq!(r.graded_rank(1).unwrap(), 2);
        assert_eq!(r.basis(1), vec![mono(4, &[3]), mono(4, &[4])]);
        assert_eq!(r.graded_rank(2).unwrap(), 1);
        assert_eq!(r.basis(2), vec![mono(4, &[3, 4])]);
        let sq = |i| Poly::from([(mono(4, &[i, i]), rat(1))]);
        assert_eq!(r.normal_form(&sq(3), 2).unwrap().coords, vec![rat(-1)]);
        assert_eq!(r.normal_form(&sq(4), 2).unwrap().coords, vec![rat(-2)]);
        assert_eq!(r.normal_form(&sq(1), 2).unwrap().coords, vec![rat(-1)]);
        assert_eq!(r.normal_form(&sq(2), 2).unwrap().coords, vec![rat(-2)]);
        let sr = Poly::from([(mono(4, &[1, 3]), rat(1))]);
        assert!(r.normal_form(&sr, 2).unwrap().is_zero());
        assert!(r.graded_rank(3).is_err());
        assert_eq!(betti_numbers(&f), vec![1, 2, 1]);
        assert_eq!(graded_ranks(&f), vec![1, 2, 1]);
    }

    #[test]
    fn pontrjagin() {
        let f = cp2cp2();
        let p = GradedRing::new(&f).pontrjagin_class();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].coords, vec![rat(1)]);
        assert_eq!(p[1].basis, vec!["mu3*mu4".to_string()]);
        assert_eq!(p[1].coords, vec![rat(-6)]);
        assert!(p[1].integral);
    }

    #[test]
    fn weights_and_todd() {
        let f = cp2cp2();
        let w: Vec<i32> = omni_weights(&f).unwrap().iter().map(|x| x.w).collect();
        // Facets in sorted form: {1,2}, {2,3}, {3,4}, {1,4}.
        assert_eq!(w, vec![1, 1, -1, 1]);
        assert_eq!(todd_genus(&f, &rat_vec(&[1, 1])).unwrap(), 1);
        assert_eq!(todd_genus(&f, &[rat(-1), ratio(-3, 2)]).unwrap(), 1);
        assert_eq!(todd_genus(&f, &rat_vec(&[1, 0])), Err(InvariantError::DegenerateDirection));
        for seed in 0..10 {
            assert_eq!(todd_genus_seeded(&f, seed).unwrap().0, 1);
        }
    }
}
