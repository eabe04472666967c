//! The Barnette sphere: fixture data, the d_ij equation system and its
//! infeasibility, both bounded and by case analysis.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::SimplicialComplex;

/// Vertices e1..e4 are 1..4 and d1..d4 are 5..8. Facets in table order,
/// each in the listed vertex order.
pub const FACETS: [[usize; 4]; 19] = [
    [1, 2, 3, 4],
    [5, 2, 3, 4],
    [1, 6, 3, 4],
    [1, 2, 7, 4],
    [1, 2, 3, 8],
    [5, 6, 3, 4],
    [1, 6, 7, 4],
    [5, 2, 7, 4],
    [1, 6, 3, 7],
    [1, 2, 7, 5],
    [5, 2, 3, 6],
    [1, 2, 5, 8],
    [1, 7, 3, 8],
    [6, 2, 3, 8],
    [1, 5, 7, 8],
    [5, 2, 6, 8],
    [7, 6, 3, 8],
    [5, 6, 7, 4],
    [5, 6, 7, 8],
];

/// Facet determinant signs forced by the sign rule, facet 1 positive.
pub const SIGNS: [i32; 19] = [1, -1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, -1, 1];

/// A commonly quoted v(d1..d4) (e's standard). Five facets get determinant 0 or 2.
pub const QUOTED_D: [[i64; 4]; 4] = [[1, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0], [1, 1, 1, 1]];

/// A unimodular labeling of the d's (e's standard), found by search.
pub const UNIMODULAR_D: [[i64; 4]; 4] = [[-1, -1, -1, -1], [0, -1, 0, -1], [0, -1, -1, 0], [-1, -1, 0, -1]];

/// Coordinates of an ordinary complete simplicial fan on the Barnette sphere,
/// indexed like the vertices.
pub const COMPLETE_FAN_B: [[i64; 4]; 8] = [
    [-1, 12, -4, -2],
    [-4, 8, 3, -3],
    [4, 1, 7, -1],
    [-5, 1, 5, 3],
    [0, -8, 0, -2],
    [6, -7, -1, 1],
    [2, 7, -15, -1],
    [5, 3, -7, -3],
];

pub fn complex() -> SimplicialComplex {
    let labels: BTreeMap<usize, String> = (1..=4)
        .map(|i| (i, format!("e{i}")))
        .chain((1..=4).map(|i| (i + 4, format!("d{i}"))))
        .collect();
    SimplicialComplex::new(8, FACETS.iter().map(|f| f.to_vec()).collect())
        .expect("fixture is valid")
        .with_labels(labels)
}

/// Whether `k` is combinatorially the Barnette sphere.
pub fn is_barnette(k: &SimplicialComplex) -> bool {
    k.isomorphism(&complex()).is_some()
}

/// Full labeling (vertex-indexed) with standard e's and the given d's.
pub fn labeling_with(d: &[[i64; 4]; 4]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
    v.extend(d.iter().map(|r| r.to_vec()));
    v
}

/// d[i][j] = d_{(i+1)(j+1)}, the j-th entry of v(d_{i+1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DMatrix(pub [[i64; 4]; 4]);

impl DMatrix {
    fn d(&self, i: usize, j: usize) -> i64 {
        self.0[i - 1][j - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub equation: String,
    pub holds: bool,
}

const CYC: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];
const CYC3: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

/// Evaluates every instance of eq1–eq6.
pub fn verify_barnette_system(dm: &DMatrix) -> Vec<EquationCheck> {
    let d = |i, j| dm.d(i, j);
    let mut out = Vec::new();
    let mut push = |name: String, holds: bool| out.push(EquationCheck { equation: name, holds });
    for i in 1..=4 {
        push(format!("eq1 d{i}{i} = -1"), d(i, i) == -1);
    }
    for (i, j) in CYC {
        push(format!("eq2 d{i}{j} d{j}{i} = 0"), d(i, j) * d(j, i) == 0);
    }
    for (i, j) in CYC {
        push(format!("eq3 d{j}4 + d{i}4 d{j}{i} = -1"), d(j, 4) + d(i, 4) * d(j, i) == -1);
    }
    for (i, j) in CYC {
        push(format!("eq4 d{j}{i} + d{j}4 d4{i} = -1"), d(j, i) + d(j, 4) * d(4, i) == -1);
    }
    for (i, j, k) in CYC3 {
        push(
            format!("eq5 d{i}{j} - d{k}{j} - d4{j} - d{i}{j} d{k}4 d4{k} = 1"),
            d(i, j) - d(k, j) - d(4, j) - d(i, j) * d(k, 4) * d(4, k) == 1,
        );
    }
    push(
        "eq6 d13 d32 d21 + d12 d23 d31 = 0".into(),
        d(1, 3) * d(3, 2) * d(2, 1) + d(1, 2) * d(2, 3) * d(3, 1) == 0,
    );
    out
}

pub fn satisfies_all(dm: &DMatrix) -> bool {
    verify_barnette_system(dm).iter().all(|c| c.holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub bound: i64,
    pub assignments_examined: u64,
    pub solutions: Vec<DMatrix>,
}

/// All integer solutions with |d_ij| ≤ bound. The enumeration fixes eq1,
/// branches on which factor of each eq2 product vanishes, enumerates d14,
/// and solves the rest of eq3/eq4 exactly before testing eq5 and eq6.
pub fn exhaustive_d_search(bound: i64) -> ExhaustiveReport {
    let range = || -bound..=bound;
    let mut examined = 0u64;
    let mut solutions = Vec::new();
    let mut d = [[0i64; 4]; 4];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = -1;
    }
    // For each cyclic pair, the nonzero candidate of (d_ij, d_ji) or both zero.
    let pair_opts: Vec<(i64, i64)> = range()
        .map(|x| (x, 0))
        .chain(range().filter(|&x| x != 0).map(|x| (0, x)))
        .collect();
    for &(d12, d21) in &pair_opts {
        for &(d23, d32) in &pair_opts {
            for &(d31, d13) in &pair_opts {
                d[0][1] = d12;
                d[1][0] = d21;
                d[1][2] = d23;
                d[2][1] = d32;
                d[2][0] = d31;
                d[0][2] = d13;
                for d14 in range() {
                    // eq3: d24 = -1 - d14 d21, d34 = -1 - d24 d32, d14 = -1 - d34 d13.
                    let d24 = -1 - d14 * d21;
                    let d34 = -1 - d24 * d32;
                    if d14 != -1 - d34 * d13 || d24.abs() > bound || d34.abs() > bound {
                        examined += 1;
                        continue;
                    }
                    d[0][3] = d14;
                    d[1][3] = d24;
                    d[2][3] = d34;
                    // eq4: d_ji + d_j4 d_4i = -1 for (i,j) = (1,2), (2,3), (3,1).
                    let solve = |dji: i64, dj4: i64| -> Vec<i64> {
                        if dj4 == 0 {
                            if dji == -1 {
                                range().collect()
                            } else {
                                Vec::new()
                            }
                        } else if (-1 - dji) % dj4 == 0 && ((-1 - dji) / dj4).abs() <= bound {
                            vec![(-1 - dji) / dj4]
                        } else {
                            Vec::new()
                        }
                    };
                    let c41 = solve(d21, d24);
                    let c42 = solve(d32, d34);
                    let c43 = solve(d13, d14);
                    for &d41 in &c41 {
                        for &d42 in &c42 {
                            for &d43 in &c43 {
                                examined += 1;
                                d[3][0] = d41;
                                d[3][1] = d42;
                                d[3][2] = d43;
                                let dm = DMatrix(d);
                                if satisfies_all(&dm) {
                                    solutions.push(dm);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ExhaustiveReport { bound, assignments_examined: examined, solutions }
}

/// Plain brute force over all 12 off-diagonal entries in [-bound, bound].
pub fn brute_force_d_search(bound: i64) -> Vec<DMatrix> {
    let vals: Vec<i64> = (-bound..=bound).collect();
    let slots: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut d = [[0i64; 4]; 4];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = -1;
    }
    let mut out = Vec::new();
    let total = vals.len().pow(slots.len() as u32);
    for mut code in 0..total {
        for &(i, j) in &slots {
            d[i][j] = vals[code % vals.len()];
            code /= vals.len();
        }
        let dm = DMatrix(d);
        if satisfies_all(&dm) {
            out.push(dm);
        }
    }
    out
}

// ---- Bound-free case analysis ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Val {
    Known(i64),
    NonZero,
    Unknown,
}

#[derive(Debug, Clone)]
struct Term {
    coef: i64,
    vars: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Equation {
    name: String,
    terms: Vec<Term>,
    rhs: i64,
}

fn var(i: usize, j: usize) -> usize {
    (i - 1) * 4 + (j - 1)
}

fn var_name(x: usize) -> String {
    format!("d{}{}", x / 4 + 1, x % 4 + 1)
}

fn system() -> Vec<Equation> {
    let t = |coef: i64, vars: &[usize]| Term { coef, vars: vars.to_vec() };
    let mut eqs = Vec::new();
    for (i, j) in CYC {
        eqs.push(Equation { name: format!("eq2({i},{j})"), terms: vec![t(1, &[var(i, j), var(j, i)])], rhs: 0 });
    }
    for (i, j) in CYC {
        eqs.push(Equation {
            name: format!("eq3({i},{j})"),
            terms: vec![t(1, &[var(j, 4)]), t(1, &[var(i, 4), var(j, i)])],
            rhs: -1,
        });
    }
    for (i, j) in CYC {
        eqs.push(Equation {
            name: format!("eq4({i},{j})"),
            terms: vec![t(1, &[var(j, i)]), t(1, &[var(j, 4), var(4, i)])],
            rhs: -1,
        });
    }
    for (i, j, k) in CYC3 {
        eqs.push(Equation {
            name: format!("eq5({i},{j},{k})"),
            terms: vec![
                t(1, &[var(i, j)]),
                t(-1, &[var(k, j)]),
                t(-1, &[var(4, j)]),
                t(-1, &[var(i, j), var(k, 4), var(4, k)]),
            ],
            rhs: 1,
        });
    }
    eqs.push(Equation {
        name: "eq6".into(),
        terms: vec![t(1, &[var(1, 3), var(3, 2), var(2, 1)]), t(1, &[var(1, 2), var(2, 3), var(3, 1)])],
        rhs: 0,
    });
    eqs
}

/// One closed branch of the case analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseLeaf {
    pub assumptions: Vec<String>,
    pub derivations: Vec<String>,
    pub contradiction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseAnalysis {
    /// Number of zero entries among d21, d32, d13 per top-level case.
    pub cases: Vec<CaseSummary>,
    pub leaves: Vec<CaseLeaf>,
    /// True when every branch closed, i.e. the system has no integer solution.
    pub infeasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub pattern: String,
    pub zeros: usize,
    pub closed: bool,
}

enum Simplified {
    Contradiction(String),
    Derived(usize, Val, String),
    Nothing,
}

/// Substitutes known values; returns remaining (coef, unknown vars) terms and a constant.
fn substitute(eq: &Equation, vals: &[Val]) -> (Vec<(i64, Vec<usize>)>, i64) {
    let mut constant = 0i64;
    let mut rest: Vec<(i64, Vec<usize>)> = Vec::new();
    for t in &eq.terms {
        let mut coef = t.coef;
        let mut open = Vec::new();
        for &x in &t.vars {
            match vals[x] {
                Val::Known(v) => coef *= v,
                _ => open.push(x),
            }
        }
        if coef == 0 {
            continue;
        }
        if open.is_empty() {
            constant += coef;
        } else {
            rest.push((coef, open));
        }
    }
    (rest, constant)
}

fn step(eq: &Equation, vals: &[Val]) -> Simplified {
    let (rest, constant) = substitute(eq, vals);
    let target = eq.rhs - constant;
    if rest.is_empty() {
        return if target == 0 {
            Simplified::Nothing
        } else {
            Simplified::Contradiction(format!("{} evaluates to {} instead of {}", eq.name, constant, eq.rhs))
        };
    }
    // Single monomial equal to zero.
    if rest.len() == 1 && target == 0 {
        let vars = &rest[0].1;
        let open: Vec<usize> = vars.iter().copied().filter(|&x| vals[x] != Val::NonZero).collect();
        match open.len() {
            0 => return Simplified::Contradiction(format!("{}: product of nonzero factors is 0", eq.name)),
            1 => {
                return Simplified::Derived(
                    open[0],
                    Val::Known(0),
                    format!("{}: {} = 0 (other factors nonzero)", eq.name, var_name(open[0])),
                )
            }
            _ => {}
        }
    }
    // Affine in a single variable.
    let mut all: Vec<usize> = rest.iter().flat_map(|(_, v)| v.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    if all.len() == 1 && rest.iter().all(|(_, v)| v.len() == 1) {
        let x = all[0];
        let a: i64 = rest.iter().map(|(c, _)| c).sum();
        if a == 0 {
            return if target == 0 {
                Simplified::Nothing
            } else {
                Simplified::Contradiction(format!("{}: 0 = {}", eq.name, target))
            };
        }
        if target % a != 0 {
            return Simplified::Contradiction(format!("{}: {} = {}/{} is not integral", eq.name, var_name(x), target, a));
        }
        let value = target / a;
        if value == 0 && vals[x] == Val::NonZero {
            return Simplified::Contradiction(format!("{}: forces nonzero {} to 0", eq.name, var_name(x)));
        }
        return Simplified::Derived(x, Val::Known(value), format!("{}: {} = {}", eq.name, var_name(x), value));
    }
    // A product equal to a nonzero constant makes every factor nonzero.
    if rest.len() == 1 && target != 0 {
        for &x in &rest[0].1 {
            if vals[x] == Val::Unknown {
                return Simplified::Derived(
                    x,
                    Val::NonZero,
                    format!("{}: {} != 0 (product is {})", eq.name, var_name(x), target),
                );
            }
        }
    }
    Simplified::Nothing
}

fn propagate(eqs: &[Equation], vals: &mut [Val], log: &mut Vec<String>) -> Option<String> {
    loop {
        let mut changed = false;
        for eq in eqs {
            match step(eq, vals) {
                Simplified::Contradiction(msg) => return Some(msg),
                Simplified::Derived(x, v, msg) => {
                    if let (Val::NonZero, Val::Known(0)) = (vals[x], v) {
                        return Some(format!("{msg}, but {} was nonzero", var_name(x)));
                    }
                    vals[x] = v;
                    log.push(msg);
                    changed = true;
                }
                Simplified::Nothing => {}
            }
        }
        if !changed {
            return None;
        }
    }
}

/// Splits on zero/nonzero of an open variable until every branch closes.
fn explore(
    eqs: &[Equation],
    vals: Vec<Val>,
    assumptions: Vec<String>,
    log: Vec<String>,
    depth: usize,
    leaves: &mut Vec<CaseLeaf>,
) -> bool {
    let mut vals = vals;
    let mut log = log;
    if let Some(msg) = propagate(eqs, &mut vals, &mut log) {
        leaves.push(CaseLeaf { assumptions, derivations: log, contradiction: msg });
        return true;
    }
    if depth == 0 {
        return false;
    }
    let Some(x) = (0..16).find(|&x| vals[x] == Val::Unknown && eqs.iter().any(|e| e.terms.iter().any(|t| t.vars.contains(&x))))
    else {
        return false;
    };
    let mut ok = true;
    for v in [Val::Known(0), Val::NonZero] {
        let mut nv = vals.clone();
        nv[x] = v;
        let mut a = assumptions.clone();
        a.push(match v {
            Val::Known(_) => format!("{} = 0", var_name(x)),
            _ => format!("{} != 0", var_name(x)),
        });
        ok &= explore(eqs, nv, a, log.clone(), depth - 1, leaves);
    }
    ok
}

/// Case analysis on which of d21, d32, d13 vanish, closing every branch by
/// exact propagation through eq2–eq6 with d_ii = −1.
pub fn case_analysis_certificate() -> CaseAnalysis {
    let eqs = system();
    let mut leaves = Vec::new();
    let mut cases = Vec::new();
    let keys = [var(2, 1), var(3, 2), var(1, 3)];
    for mask in 0..8u32 {
        let mut vals = vec![Val::Unknown; 16];
        for i in 1..=4 {
            vals[var(i, i)] = Val::Known(-1);
        }
        let mut assumptions = Vec::new();
        for (b, &x) in keys.iter().enumerate() {
            if mask >> b & 1 == 1 {
                vals[x] = Val::Known(0);
                assumptions.push(format!("{} = 0", var_name(x)));
            } else {
                vals[x] = Val::NonZero;
                assumptions.push(format!("{} != 0", var_name(x)));
            }
        }
        let before = leaves.len();
        let closed = explore(&eqs, vals, assumptions.clone(), Vec::new(), 6, &mut leaves);
        if !closed {
            leaves.truncate(before);
        }
        cases.push(CaseSummary { pattern: assumptions.join(", "), zeros: mask.count_ones() as usize, closed });
    }
    let infeasible = cases.iter().all(|c| c.closed);
    CaseAnalysis { cases, leaves, infeasible }
}

impl fmt::Display for DMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            writeln!(f, "v(d{}) = {:?}", i + 1, r)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d_of(rows: [[i64; 4]; 4]) -> DMatrix {
        DMatrix(rows)
    }

    #[test]
    fn fixture_shape() {
        let k = complex();
        assert!(k.is_pure());
        assert!(k.is_pseudomanifold());
        assert!(k.dual_graph_connected());
        assert_eq!(k.f_vector()[3], 19);
        assert_eq!(k.euler_characteristic(), 0);
        assert!(is_barnette(&k.relabel(&[8, 7, 6, 5, 4, 3, 2, 1])));
        assert!(!is_barnette(&SimplicialComplex::cyclic_polytope_boundary(4, 8).unwrap()));
        let s = k.stellar_subdivide(&[5, 6, 7, 8]).unwrap();
        assert_eq!((s.m(), s.facets().len()), (9, 22));
    }

    #[test]
    fn eq2_failure_reported() {
        let mut rows = [[-1i64; 4]; 4];
        rows[0][1] = 1;
        rows[1][0] = 1;
        let r = verify_barnette_system(&d_of(rows));
        let eq2 = r.iter().find(|c| c.equation.starts_with("eq2 d12")).unwrap();
        assert!(!eq2.holds);
    }

    #[test]
    fn case_analysis_closes() {
        let c = case_analysis_certificate();
        assert!(c.infeasible, "{c:#?}");
        assert_eq!(c.cases.len(), 8);
        // All of d21, d32, d13 nonzero forces d12 = d23 = d31 = 0, against eq6.
        let all_nonzero = c.leaves.iter().find(|l| l.assumptions.iter().take(3).all(|a| a.contains("!="))).unwrap();
        assert!(all_nonzero.derivations.iter().any(|d| d.contains("d12 = 0")));
        assert!(all_nonzero.contradiction.contains("eq6"));
    }

    #[test]
    fn bounded_search_agrees_with_brute_force() {
        assert!(brute_force_d_search(1).is_empty());
        assert!(exhaustive_d_search(1).solutions.is_empty());
        assert!(exhaustive_d_search(5).solutions.is_empty());
    }
}
