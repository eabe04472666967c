//! Backtracking search for integer vertex labelings of a simplicial sphere.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::linalg::{det, det_int, maximal_minor_gcd};
use crate::rational::rat;

use super::barnette::CaseAnalysis;
use super::mod2::{self, Mod2Outcome};
use super::signs::{derive_sign_table, SignContradiction, SignError, SignOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Unimodular,
    ToricSign,
    Mod2,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LabelingError {
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("complex is not pure")]
    NotPure,
    #[error("normalization face {0:?} is not a facet")]
    NotAFacet(Vec<usize>),
    #[error("vertex order is not a permutation of the vertices")]
    BadVertexOrder,
    #[error(transparent)]
    Sign(#[from] SignError),
}

#[derive(Debug, Clone)]
pub struct LabelingProblem {
    pub complex: SimplicialComplex,
    pub mode: Mode,
    pub bound: i64,
    /// Facet whose listed vertices receive e₁..eₙ; defaults to the
    /// lexicographically first facet.
    pub normalize: Option<Vec<usize>>,
    /// Overrides the facet-greedy backtracking order.
    pub vertex_order: Option<Vec<usize>>,
    pub deterministic: bool,
}

impl LabelingProblem {
    pub fn new(complex: SimplicialComplex, mode: Mode, bound: i64) -> Self {
        Self { complex, mode, bound, normalize: None, vertex_order: None, deterministic: false }
    }

    pub fn n(&self) -> usize {
        (self.complex.dim() + 1) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelingSolution {
    /// `v[i-1]` is the label of vertex i.
    pub v: Vec<Vec<i64>>,
    /// Determinant of each facet (listed vertex order, complex facet order).
    pub dets: Vec<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    SignContradiction(SignContradiction),
    PigeonholeClique { clique: Vec<usize>, classes: usize },
    Mod2Exhausted { nodes: u64 },
    CaseAnalysis(CaseAnalysis),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Outcome {
    Sat { solution: LabelingSolution, nodes: u64 },
    Unsat { bound: i64, nodes: u64 },
    Infeasible { certificate: Certificate },
    /// The mod-2 search hit its node limit without a verdict.
    Unknown { nodes: u64 },
}

impl Outcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat { .. })
    }
}

/// Determinants of every facet in listed order, computed with exact rationals.
pub fn facet_determinants(k: &SimplicialComplex, v: &[Vec<i64>]) -> Vec<i128> {
    k.listed_facets()
        .iter()
        .map(|f| {
            let n = f.len();
            let rows: Vec<Vec<_>> = (0..n).map(|r| f.iter().map(|&x| rat(v[x - 1][r])).collect()).collect();
            let d = det(&rows);
            d.to_integer().try_into().expect("determinant fits in i128")
        })
        .collect()
}

/// Checks a labeling against the mode's constraints from scratch.
pub fn verify_labeling(p: &LabelingProblem, v: &[Vec<i64>]) -> Result<bool, LabelingError> {
    let n = p.n();
    if v.len() != p.complex.m() || v.iter().any(|x| x.len() != n) {
        return Ok(false);
    }
    let dets = facet_determinants(&p.complex, v);
    Ok(match p.mode {
        Mode::Unimodular => dets.iter().all(|d| d.abs() == 1),
        Mode::ToricSign => match sign_table(p)? {
            SignOutcome::Table(t) => t.signs.iter().zip(&dets).all(|(&s, &d)| i128::from(s) == d),
            SignOutcome::Contradiction(_) => false,
        },
        Mode::Mod2 => dets.iter().all(|d| d.rem_euclid(2) == 1),
    })
}

fn normalization_index(p: &LabelingProblem) -> Result<usize, LabelingError> {
    match &p.normalize {
        None => Ok(0),
        Some(f) => p.complex.facet_index(f).ok_or_else(|| LabelingError::NotAFacet(f.clone())),
    }
}

fn sign_table(p: &LabelingProblem) -> Result<SignOutcome, LabelingError> {
    let seed = normalization_index(p)?;
    Ok(derive_sign_table(&p.complex, None, seed, 1)?)
}

pub fn search_labeling(p: &LabelingProblem) -> Result<Outcome, LabelingError> {
    if p.bound < 1 {
        return Err(LabelingError::ZeroBound);
    }
    if !p.complex.is_pure() {
        return Err(LabelingError::NotPure);
    }
    let n = p.n();
    let seed = normalization_index(p)?;
    if p.mode == Mode::Mod2 {
        return Ok(match mod2::mod2_search(&p.complex, n, Some(seed), mod2::DEFAULT_NODE_LIMIT) {
            Mod2Outcome::Feasible { classes, nodes } => {
                let v: Vec<Vec<i64>> =
                    classes.iter().map(|&c| (0..n).map(|b| i64::from(c >> b & 1 == 1)).collect()).collect();
                let dets = facet_determinants(&p.complex, &v);
                Outcome::Sat { solution: LabelingSolution { v, dets }, nodes }
            }
            Mod2Outcome::Clique { clique } => {
                Outcome::Infeasible { certificate: Certificate::PigeonholeClique { clique, classes: (1 << n) - 1 } }
            }
            Mod2Outcome::Exhausted { nodes } => Outcome::Infeasible { certificate: Certificate::Mod2Exhausted { nodes } },
            Mod2Outcome::LimitReached { nodes } => Outcome::Unknown { nodes },
        });
    }
    let signs: Option<Vec<i32>> = match p.mode {
        Mode::ToricSign => match sign_table(p)? {
            SignOutcome::Table(t) => Some(t.signs),
            SignOutcome::Contradiction(c) => {
                return Ok(Outcome::Infeasible { certificate: Certificate::SignContradiction(c) })
            }
        },
        _ => None,
    };
    let clique = mod2::max_clique(&p.complex);
    if clique.len() > (1usize << n) - 1 {
        return Ok(Outcome::Infeasible {
            certificate: Certificate::PigeonholeClique { clique, classes: (1 << n) - 1 },
        });
    }
    let m = p.complex.m();
    let norm = p.complex.listed_facets()[seed].clone();
    let mut v: Vec<Option<Vec<i64>>> = vec![None; m];
    for (slot, &x) in norm.iter().enumerate() {
        v[x - 1] = Some((0..n).map(|j| i64::from(j == slot)).collect());
    }
    let order = match &p.vertex_order {
        Some(o) => {
            let mut s = o.clone();
            s.sort_unstable();
            if s != (1..=m).collect::<Vec<_>>() {
                return Err(LabelingError::BadVertexOrder);
            }
            o.iter().copied().filter(|x| !norm.contains(x)).collect()
        }
        None => greedy_order(&p.complex, &norm),
    };
    let search = Search { k: &p.complex, n, bound: p.bound, signs: signs.as_deref(), order: &order };
    let result = search.run(v, p.deterministic);
    Ok(match result {
        (Some(v), nodes) => {
            let dets = facet_determinants(&p.complex, &v);
            Outcome::Sat { solution: LabelingSolution { v, dets }, nodes }
        }
        (None, nodes) => Outcome::Unsat { bound: p.bound, nodes },
    })
}

/// Repeatedly picks the vertex completing the most facets, ties to the smallest index.
pub fn greedy_order(k: &SimplicialComplex, fixed: &[usize]) -> Vec<usize> {
    let mut assigned = vec![false; k.m() + 1];
    for &x in fixed {
        assigned[x] = true;
    }
    let mut order = Vec::new();
    while order.len() + fixed.len() < k.m() {
        let score = |x: usize| {
            let completes = k.facets().iter().filter(|f| f.contains(&x) && f.iter().all(|&y| y == x || assigned[y])).count();
            let touches = k.facets().iter().filter(|f| f.contains(&x) && f.iter().any(|&y| assigned[y])).count();
            (completes, touches)
        };
        let best = (1..=k.m()).filter(|&x| !assigned[x]).fold(None, |acc: Option<(usize, (usize, usize))>, x| {
            let s = score(x);
            match acc {
                Some((_, bs)) if bs >= s => acc,
                _ => Some((x, s)),
            }
        });
        let (x, _) = best.expect("unassigned vertex remains");
        assigned[x] = true;
        order.push(x);
    }
    order
}

type Q = Ratio<i128>;

struct Search<'a> {
    k: &'a SimplicialComplex,
    n: usize,
    bound: i64,
    signs: Option<&'a [i32]>,
    order: &'a [usize],
}

impl Search<'_> {
    fn run(&self, v: Vec<Option<Vec<i64>>>, deterministic: bool) -> (Option<Vec<Vec<i64>>>, u64) {
        let Some(&first) = self.order.first() else {
            let full: Vec<Vec<i64>> = v.into_iter().map(|x| x.expect("assigned")).collect();
            return (Some(full), 1);
        };
        let cands = self.candidates(&v, first);
        let explore = |c: &Vec<i64>| {
            let mut w = v.clone();
            w[first - 1] = Some(c.clone());
            let mut nodes = 1u64;
            let found = self.rec(&mut w, 1, &mut nodes);
            (found.then(|| w.iter().map(|x| x.clone().expect("assigned")).collect::<Vec<_>>()), nodes)
        };
        if deterministic {
            let mut total = 1u64;
            for c in &cands {
                let (r, nodes) = explore(c);
                total += nodes;
                if r.is_some() {
                    return (r, total);
                }
            }
            (None, total)
        } else {
            let results: Vec<(Option<Vec<Vec<i64>>>, u64)> = cands.par_iter().map(explore).collect();
            let total = 1 + results.iter().map(|r| r.1).sum::<u64>();
            (results.into_iter().find_map(|r| r.0), total)
        }
    }

    fn rec(&self, v: &mut Vec<Option<Vec<i64>>>, depth: usize, nodes: &mut u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for c in self.candidates(v, x) {
            *nodes += 1;
            v[x - 1] = Some(c);
            if self.rec(v, depth + 1, nodes) {
                return true;
            }
        }
        v[x - 1] = None;
        false
    }

    /// All labels for vertex x consistent with the assigned vertices.
    fn candidates(&self, v: &[Option<Vec<i64>>], x: usize) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut eqs: Vec<(Vec<i64>, Option<i64>)> = Vec::new();
        let mut partial: Vec<Vec<Vec<i64>>> = Vec::new();
        for (fi, f) in self.k.listed_facets().iter().enumerate() {
            let Some(slot) = f.iter().position(|&y| y == x) else { continue };
            if f.iter().all(|&y| y == x || v[y - 1].is_some()) {
                let coef: Vec<i64> = (0..n)
                    .map(|j| {
                        let cols: Vec<Vec<i64>> = f
                            .iter()
                            .map(|&y| {
                                if y == x {
                                    (0..n).map(|r| i64::from(r == j)).collect()
                                } else {
                                    v[y - 1].clone().expect("assigned")
                                }
                            })
                            .collect();
                        let rows: Vec<Vec<i64>> = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
                        det_int(&rows) as i64
                    })
                    .collect();
                let _ = slot;
                eqs.push((coef, self.signs.map(|s| i64::from(s[fi]))));
            } else {
                partial.push(f.iter().filter(|&&y| y != x).filter_map(|&y| v[y - 1].clone()).collect());
            }
        }
        let ok_partial = |c: &[i64]| {
            partial.iter().all(|rows| {
                let mut r = rows.clone();
                r.push(c.to_vec());
                maximal_minor_gcd(&r) == 1
            })
        };
        let ok_eqs = |c: &[i64]| {
            eqs.iter().all(|(coef, rhs)| {
                let val: i64 = coef.iter().zip(c).map(|(a, b)| a * b).sum();
                match rhs {
                    Some(s) => val == *s,
                    None => val.abs() == 1,
                }
            })
        };
        let mut out = Vec::new();
        // Independent subset of the equations.
        let mut basis: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (i, (coef, _)) in eqs.iter().enumerate() {
            let mut trial = rows.clone();
            trial.push(coef.iter().map(|&a| Q::from_integer(a.into())).collect());
            if rank_q(&trial) > rows.len() {
                rows = trial;
                basis.push(i);
            }
        }
        let r = basis.len();
        // RREF of [A | I] gives x_pivot = (T rhs)_i - Σ R_{i,f} x_f.
        let mut aug: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut a = row.clone();
                a.extend((0..r).map(|j| if i == j { Q::one() } else { Q::zero() }));
                a
            })
            .collect();
        let pivots = rref_q(&mut aug, n);
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let rhs_choices: Vec<Vec<i64>> = {
            let fixed: Vec<Option<i64>> = basis.iter().map(|&i| eqs[i].1).collect();
            let mut acc: Vec<Vec<i64>> = vec![Vec::new()];
            for f in fixed {
                let opts: Vec<i64> = match f {
                    Some(s) => vec![s],
                    None => vec![1, -1],
                };
                acc = acc.into_iter().flat_map(|a| opts.iter().map(move |&o| [a.clone(), vec![o]].concat())).collect();
            }
            acc
        };
        let k = self.bound;
        let width = (2 * k + 1) as usize;
        let total = width.pow(free.len() as u32);
        for rhs in &rhs_choices {
            let t_rhs: Vec<Q> = (0..r)
                .map(|i| (0..r).map(|j| aug[i][n + j] * Q::from_integer(rhs[j].into())).fold(Q::zero(), |a, b| a + b))
                .collect();
            'free: for mut code in 0..total {
                let mut c = vec![0i64; n];
                for &f in &free {
                    c[f] = (code % width) as i64 - k;
                    code /= width;
                }
                for (i, &pc) in pivots.iter().enumerate() {
                    let mut val = t_rhs[i];
                    for &f in &free {
                        val -= aug[i][f] * Q::from_integer(c[f].into());
                    }
                    if !val.is_integer() || val.abs() > Q::from_integer(k.into()) {
                        continue 'free;
                    }
                    c[pc] = val.to_integer() as i64;
                }
                if c.iter().all(|&a| a == 0) {
                    continue;
                }
                if ok_eqs(&c) && ok_partial(&c) {
                    out.push(c);
                }
            }
        }
        out.sort_by_key(|c| (c.iter().map(|a| a.abs()).sum::<i64>(), c.clone()));
        out.dedup();
        out
    }
}

fn rref_q(a: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    rref_q(&mut a, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::barnette;

    #[test]
    fn square_toric_sign_sat() {
        let k = SimplicialComplex::polygon(4);
        let p = LabelingProblem { deterministic: true, ..LabelingProblem::new(k.clone(), Mode::ToricSign, 2) };
        let out = search_labeling(&p).unwrap();
        let Outcome::Sat { solution, .. } = out else { panic!("{out:?}") };
        assert!(verify_labeling(&p, &solution.v).unwrap());
        // Cyclic listed orders make every determinant +1.
        assert!(solution.dets.iter().all(|&d| d == 1));
        assert!(verify_labeling(&p, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap());
    }

    #[test]
    fn barnette_unimodular_sat() {
        let p = LabelingProblem::new(barnette::complex(), Mode::Unimodular, 1);
        let out = search_labeling(&p).unwrap();
        let Outcome::Sat { solution, .. } = out else { panic!("{out:?}") };
        assert!(verify_labeling(&p, &solution.v).unwrap());
        assert_eq!(solution.v[0..4], barnette::labeling_with(&barnette::UNIMODULAR_D)[0..4]);
        assert!(verify_labeling(&p, &barnette::labeling_with(&barnette::UNIMODULAR_D)).unwrap());
    }

    #[test]
    fn barnette_toric_sign_unsat_small() {
        let p = LabelingProblem { deterministic: true, ..LabelingProblem::new(barnette::complex(), Mode::ToricSign, 2) };
        assert!(matches!(search_labeling(&p).unwrap(), Outcome::Unsat { bound: 2, .. }));
    }

    #[test]
    fn pigeonhole_certificate() {
        let k = SimplicialComplex::cyclic_polytope_boundary(4, 16).unwrap();
        let p = LabelingProblem::new(k, Mode::Unimodular, 1);
        match search_labeling(&p).unwrap() {
            Outcome::Infeasible { certificate: Certificate::PigeonholeClique { clique, classes } } => {
                assert_eq!((clique.len(), classes), (16, 15));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_normalization() {
        let mut p = LabelingProblem::new(SimplicialComplex::polygon(4), Mode::Unimodular, 1);
        p.normalize = Some(vec![1, 3]);
        assert_eq!(search_labeling(&p), Err(LabelingError::NotAFacet(vec![1, 3])));
    }
}
