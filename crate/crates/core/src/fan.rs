//! Topological fans Δ = (Σ, β) and their validation.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::cone;
use crate::linalg;
use crate::rational::{rat, serde_rat_vec, Rat};
use crate::ring::{self, RVec, RingError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FanError {
    #[error("ray {ray} has dimension {got}, expected {n}")]
    RayDimension { ray: usize, got: usize, n: usize },
    #[error("{rays} rays for a complex on {m} vertices")]
    RayCount { rays: usize, m: usize },
    #[error("v of ray {0} is not primitive")]
    NotPrimitive(usize),
    #[error("b of ray {0} is zero")]
    ZeroB(usize),
    #[error("{0:?} is not a facet")]
    NotAFacet(Vec<usize>),
    #[error("facet {facet:?}: {source}")]
    Ring { facet: Vec<usize>, source: RingError },
}

/// β_i = (b_i + √−1 c_i, v_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ray {
    #[serde(with = "serde_rat_vec")]
    pub b: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    pub c: Vec<Rat>,
    pub v: Vec<i64>,
}

impl Ray {
    pub fn new(b: Vec<Rat>, c: Vec<Rat>, v: Vec<i64>) -> Self {
        Self { b, c, v }
    }

    /// Ordinary-fan ray: b = v, c = 0.
    pub fn algebraic(v: &[i64]) -> Self {
        Self::from(&RVec::algebraic(v))
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn to_rvec(&self) -> RVec {
        RVec::new(self.b.clone(), self.c.clone(), self.v.clone())
    }
}

impl From<&RVec> for Ray {
    fn from(r: &RVec) -> Self {
        Self::new(r.b.clone(), r.c.clone(), r.v.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalFan {
    pub n: usize,
    pub complex: SimplicialComplex,
    pub rays: Vec<Ray>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMode {
    B,
    V,
}

/// Failure certificates; every `false` verdict carries at least one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    DependentB { facet: Vec<usize> },
    DependentV { facet: Vec<usize> },
    ConeOverlap {
        facets: (Vec<usize>, Vec<usize>),
        #[serde(with = "serde_rat_vec")]
        point: Vec<Rat>,
    },
    NotPure { dim: isize, expected: usize },
    BadWall { wall: Vec<usize>, facet_count: usize },
    SameSide { wall: Vec<usize>, opposite: (usize, usize) },
    DisconnectedDualGraph,
    Uncovered {
        #[serde(with = "serde_rat_vec")]
        direction: Vec<Rat>,
    },
    MultiplyCovered {
        #[serde(with = "serde_rat_vec")]
        direction: Vec<Rat>,
        facets: Vec<Vec<usize>>,
    },
    SingularFacet { facet: Vec<usize>, minor_gcd: i128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub fan_condition_ok: bool,
    pub completeness_ok: bool,
    pub nonsingularity_ok: bool,
    pub involutive: bool,
    pub witnesses: Vec<Witness>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.fan_condition_ok && self.completeness_ok && self.nonsingularity_ok
    }
}

/// Number of sampled directions used by the completeness sanity layer.
pub const COMPLETENESS_SAMPLES: usize = 32;

impl TopologicalFan {
    pub fn new(n: usize, complex: SimplicialComplex, rays: Vec<Ray>) -> Result<Self, FanError> {
        if rays.len() != complex.m() {
            return Err(FanError::RayCount { rays: rays.len(), m: complex.m() });
        }
        for (i, r) in rays.iter().enumerate() {
            for len in [r.b.len(), r.c.len(), r.v.len()] {
                if len != n {
                    return Err(FanError::RayDimension { ray: i + 1, got: len, n });
                }
            }
            if r.b.iter().all(Zero::is_zero) {
                return Err(FanError::ZeroB(i + 1));
            }
            if r.v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                return Err(FanError::NotPrimitive(i + 1));
            }
        }
        Ok(Self { n, complex, rays })
    }

    /// Ordinary fan with b = v, c = 0.
    pub fn algebraic(complex: SimplicialComplex, v: &[Vec<i64>]) -> Result<Self, FanError> {
        let n = v.first().map_or(0, Vec::len);
        Self::new(n, complex, v.iter().map(|x| Ray::algebraic(x)).collect())
    }

    pub fn m(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, i: usize) -> &Ray {
        &self.rays[i - 1]
    }

    pub fn rvecs(&self, face: &[usize]) -> Vec<RVec> {
        face.iter().map(|&i| self.ray(i).to_rvec()).collect()
    }

    pub fn require_facet(&self, face: &[usize]) -> Result<Vec<usize>, FanError> {
        let idx = self.complex.facet_index(face).ok_or_else(|| FanError::NotAFacet(face.to_vec()))?;
        if self.complex.facets()[idx].len() != self.n {
            return Err(FanError::NotAFacet(face.to_vec()));
        }
        Ok(face.to_vec())
    }

    /// Dual set α^I for a maximal simplex, in the given order of I.
    pub fn dual_basis(&self, facet: &[usize]) -> Result<ring::DualBasis, FanError> {
        let f = self.require_facet(facet)?;
        ring::dual_basis(&self.rvecs(&f)).map_err(|source| FanError::Ring { facet: f, source })
    }

    pub fn orientation_sign(&self, facet: &[usize]) -> Result<i32, FanError> {
        let f = self.require_facet(facet)?;
        ring::orientation_sign(&self.rvecs(&f)).map_err(|source| FanError::Ring { facet: f, source })
    }

    fn gens(&self, face: &[usize], mode: ConeMode) -> Vec<Vec<Rat>> {
        face.iter()
            .map(|&i| match mode {
                ConeMode::B => self.ray(i).b.clone(),
                ConeMode::V => self.ray(i).v.iter().map(|&x| rat(x)).collect(),
            })
            .collect()
    }

    /// Facets (sorted vertex lists) whose cone contains `x`.
    pub fn locate_cone(&self, x: &[Rat], mode: ConeMode) -> Vec<Vec<usize>> {
        self.complex
            .facets()
            .iter()
            .filter(|f| cone::in_cone(&self.gens(f, mode), x))
            .cloned()
            .collect()
    }

    pub fn check_involutive(&self) -> bool {
        self.rays.iter().all(|r| r.c.iter().all(Zero::is_zero))
    }

    /// Per-facet independence and pairwise cone intersections.
    pub fn check_fan_condition(&self) -> (bool, Vec<Witness>) {
        let mut w = Vec::new();
        for f in self.complex.facets() {
            if linalg::rank(&self.gens(f, ConeMode::B)) < f.len() {
                w.push(Witness::DependentB { facet: f.clone() });
            }
            if linalg::rank(&self.gens(f, ConeMode::V)) < f.len() {
                w.push(Witness::DependentV { facet: f.clone() });
            }
        }
        if !w.is_empty() {
            return (false, w);
        }
        let facets = self.complex.facets();
        let labeled = |f: &Vec<usize>| -> Vec<(usize, Vec<Rat>)> {
            f.iter().map(|&i| (i, self.ray(i).b.clone())).collect()
        };
        for (a, fa) in facets.iter().enumerate() {
            for fb in &facets[a + 1..] {
                for (p, q) in [(fa, fb), (fb, fa)] {
                    if let Some(point) = cone::intersection_excess(&labeled(p), &labeled(q)) {
                        w.push(Witness::ConeOverlap { facets: (p.clone(), q.clone()), point });
                        return (false, w);
                    }
                }
            }
        }
        (true, w)
    }

    /// Wall pairing, opposite sides, dual connectivity, then sampled directions.
    pub fn check_complete(&self) -> (bool, Vec<Witness>) {
        self.check_complete_seeded(0, COMPLETENESS_SAMPLES)
    }

    pub fn check_complete_seeded(&self, seed: u64, samples: usize) -> (bool, Vec<Witness>) {
        let mut w = Vec::new();
        if !self.complex.is_pure() || self.complex.dim() + 1 != self.n as isize {
            w.push(Witness::NotPure { dim: self.complex.dim(), expected: self.n.saturating_sub(1) });
            return (false, w);
        }
        let facets = self.complex.facets();
        for (wall, fs) in self.complex.walls() {
            if fs.len() != 2 {
                if fs.len() == 1 {
                    if let Some(direction) = self.uncovered_near_wall(&wall, &facets[fs[0]]) {
                        w.push(Witness::Uncovered { direction });
                    }
                }
                w.push(Witness::BadWall { wall, facet_count: fs.len() });
                return (false, w);
            }
            let opp = |f: &Vec<usize>| *f.iter().find(|v| !wall.contains(v)).expect("facet extends wall");
            let (p, q) = (opp(&facets[fs[0]]), opp(&facets[fs[1]]));
            let side = |x: usize| {
                let mut g = self.gens(&wall, ConeMode::B);
                g.push(self.ray(x).b.clone());
                crate::rational::sign(&linalg::det(&g))
            };
            let (sp, sq) = (side(p), side(q));
            if sp == 0 || sq == 0 || sp == sq {
                w.push(Witness::SameSide { wall, opposite: (p, q) });
                return (false, w);
            }
        }
        if !self.complex.dual_graph_connected() {
            w.push(Witness::DisconnectedDualGraph);
            return (false, w);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = self.generic_direction(&mut rng, ConeMode::B);
            let hits = self.locate_cone(&x, ConeMode::B);
            match hits.len() {
                1 => {}
                0 => {
                    w.push(Witness::Uncovered { direction: x });
                    return (false, w);
                }
                _ => {
                    w.push(Witness::MultiplyCovered { direction: x, facets: hits });
                    return (false, w);
                }
            }
        }
        (true, w)
    }

    /// Just beyond a boundary wall: its barycenter pushed away from the one
    /// facet containing it.
    fn uncovered_near_wall(&self, wall: &[usize], facet: &[usize]) -> Option<Vec<Rat>> {
        let opp = *facet.iter().find(|v| !wall.contains(v))?;
        let mut bary = vec![Rat::zero(); self.n];
        for &i in wall {
            for (x, y) in bary.iter_mut().zip(&self.ray(i).b) {
                *x += y;
            }
        }
        let mut eps = crate::rational::ratio(1, 16);
        for _ in 0..12 {
            let x: Vec<Rat> = bary.iter().zip(&self.ray(opp).b).map(|(a, o)| a - &eps * o).collect();
            if self.locate_cone(&x, ConeMode::B).is_empty() {
                return Some(x);
            }
            eps /= rat(4);
        }
        None
    }

    /// A direction off every hyperplane spanned by n−1 of the rays (b or v parts).
    pub fn generic_direction(&self, rng: &mut impl Rng, mode: ConeMode) -> Vec<Rat> {
        let hyper: Vec<Vec<Vec<Rat>>> = if self.n >= 2 {
            linalg::combinations(self.m(), self.n - 1)
                .into_iter()
                .map(|s| self.gens(&s.iter().map(|&i| i + 1).collect::<Vec<_>>(), mode))
                .filter(|g| linalg::rank(g) == self.n - 1)
                .collect()
        } else {
            Vec::new()
        };
        loop {
            let x: Vec<Rat> = (0..self.n).map(|_| rat(rng.gen_range(-1_000_000..=1_000_000))).collect();
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            let on_some = hyper.iter().any(|g| {
                let mut m = g.clone();
                m.push(x.clone());
                linalg::det(&m).is_zero()
            });
            if !on_some {
                return x;
            }
        }
    }

    pub fn check_nonsingular(&self) -> (bool, Vec<Witness>) {
        let mut w = Vec::new();
        for f in self.complex.facets() {
            let rows: Vec<Vec<i64>> = f.iter().map(|&i| self.ray(i).v.clone()).collect();
            let g = linalg::maximal_minor_gcd(&rows);
            if g != 1 {
                w.push(Witness::SingularFacet { facet: f.clone(), minor_gcd: g });
            }
        }
        (w.is_empty(), w)
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_seeded(0)
    }

    /// `validate` with the sampled-direction layer seeded by `seed`.
    pub fn validate_seeded(&self, seed: u64) -> ValidationReport {
        let (fan_ok, mut w) = self.check_fan_condition();
        let (complete_ok, w2) =
            if fan_ok { self.check_complete_seeded(seed, COMPLETENESS_SAMPLES) } else { (false, Vec::new()) };
        let (ns_ok, w3) = self.check_nonsingular();
        w.extend(w2);
        w.extend(w3);
        ValidationReport {
            fan_condition_ok: fan_ok,
            completeness_ok: complete_ok,
            nonsingularity_ok: ns_ok,
            involutive: self.check_involutive(),
            witnesses: w,
        }
    }

    /// Ray-wise H-normal form: b to unit L1 norm (c scaled along), v with a
    /// positive leading entry, c orthogonal to v.
    pub fn h_canonical_form(&self) -> TopologicalFan {
        let rays = self.rays.iter().map(h_normalize_ray).collect();
        TopologicalFan { n: self.n, complex: self.complex.clone(), rays }
    }

    /// Replaces every ray by β_i·μ_i.
    pub fn right_multiply(&self, mus: &[crate::ring::RElem]) -> TopologicalFan {
        let rays = self.rays.iter().zip(mus).map(|(r, mu)| Ray::from(&r.to_rvec().right_mul(mu))).collect();
        TopologicalFan { n: self.n, complex: self.complex.clone(), rays }
    }

    /// Renames vertex i to perm[i−1], moving rays along.
    pub fn relabel(&self, perm: &[usize]) -> TopologicalFan {
        let mut rays = self.rays.clone();
        for (i, r) in self.rays.iter().enumerate() {
            rays[perm[i] - 1] = r.clone();
        }
        TopologicalFan { n: self.n, complex: self.complex.relabel(perm), rays }
    }

    pub fn facet_set(&self) -> BTreeSet<Vec<usize>> {
        self.complex.facets().iter().cloned().collect()
    }
}

pub fn h_normalize_ray(r: &Ray) -> Ray {
    let l1: Rat = r.b.iter().map(|x| x.abs()).sum();
    let b: Vec<Rat> = r.b.iter().map(|x| x / &l1).collect();
    let mut c: Vec<Rat> = r.c.iter().map(|x| x / &l1).collect();
    let flip = r.v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
    let v: Vec<i64> = if flip { r.v.iter().map(|x| -x).collect() } else { r.v.clone() };
    let vv: i64 = v.iter().map(|x| x * x).sum();
    if vv != 0 {
        let cv: Rat = c.iter().zip(&v).map(|(x, &y)| x * rat(y)).sum();
        let t = cv / rat(vv);
        for (x, &y) in c.iter_mut().zip(&v) {
            *x -= &t * rat(y);
        }
    }
    Ray::new(b, c, v)
}
