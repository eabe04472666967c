//! Exact membership in simplicial cones and Fourier–Motzkin feasibility.

use num_traits::{Signed, Zero};

use crate::linalg::{self, coefficients_in_span};
use crate::rational::Rat;

/// Coordinates of `x` in the span of linearly independent `gens`.
pub fn simplicial_coords(gens: &[Vec<Rat>], x: &[Rat]) -> Option<Vec<Rat>> {
    if gens.is_empty() {
        return x.iter().all(Zero::is_zero).then(Vec::new);
    }
    coefficients_in_span(gens, x)
}

/// x ∈ ∠gens for linearly independent generators.
pub fn in_cone(gens: &[Vec<Rat>], x: &[Rat]) -> bool {
    simplicial_coords(gens, x).is_some_and(|c| c.iter().all(|t| !t.is_negative()))
}

/// x in the relative interior (all coordinates strictly positive).
pub fn in_open_cone(gens: &[Vec<Rat>], x: &[Rat]) -> bool {
    simplicial_coords(gens, x).is_some_and(|c| c.iter().all(Signed::is_positive))
}

/// Inequality `coeffs · z <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ineq {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Ineq {
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .unwrap_or_else(|| if self.rhs.is_zero() { Rat::from_integer(1.into()) } else { self.rhs.abs() });
        for c in &mut self.coeffs {
            *c /= &scale;
        }
        self.rhs /= scale;
        self
    }
}

/// Feasibility of a system of inequalities by Fourier–Motzkin elimination.
/// Returns a rational witness point when feasible.
pub fn fm_feasible(ineqs: &[Ineq], nvars: usize) -> Option<Vec<Rat>> {
    let mut levels: Vec<Vec<Ineq>> = vec![ineqs.to_vec()];
    for k in (0..nvars).rev() {
        let cur = levels.last().expect("nonempty");
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for q in cur {
            if q.coeffs[k].is_positive() {
                pos.push(q);
            } else if q.coeffs[k].is_negative() {
                neg.push(q);
            } else {
                next.push(q.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let (ap, an) = (&p.coeffs[k], -n.coeffs[k].clone());
                let coeffs: Vec<Rat> =
                    p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| x * &an + y * ap).collect();
                let rhs = &p.rhs * &an + &n.rhs * ap;
                next.push(Ineq { coeffs, rhs }.normalized());
            }
        }
        next.sort();
        next.dedup();
        if next.iter().any(|q| q.coeffs.iter().all(Zero::is_zero) && q.rhs.is_negative()) {
            return None;
        }
        levels.push(next);
    }
    if levels.last().expect("nonempty").iter().any(|q| q.rhs.is_negative()) {
        return None;
    }
    let mut z = vec![Rat::zero(); nvars];
    for k in 0..nvars {
        // Constraints at the level where variables k.. are still present and
        // variables < k are already fixed.
        let level = &levels[nvars - 1 - k];
        let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
        for q in level {
            let a = &q.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest: Rat = (0..k).map(|j| &q.coeffs[j] * &z[j]).sum();
            let bound = (&q.rhs - rest) / a;
            if a.is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| if bound < h { bound.clone() } else { h }));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| if bound > l { bound.clone() } else { l }));
            }
        }
        z[k] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(Rat::zero()),
            (None, None) => Rat::zero(),
        };
    }
    Some(z)
}

/// Nonnegative solution of `M y = rhs`, found by eliminating the equalities
/// and running Fourier–Motzkin on the remaining sign constraints.
pub fn nonneg_solution(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let nvars = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let (pivots, _) = linalg::rref_in_place(&mut a, nvars);
    if a.iter().any(|row| row[..nvars].iter().all(Zero::is_zero) && !row[nvars].is_zero()) {
        return None;
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    // y_p = rhs_p - Σ_f a_pf z_f for pivot p; y_f = z_f.
    let mut ineqs = Vec::new();
    for (fi, _) in free.iter().enumerate() {
        let mut coeffs = vec![Rat::zero(); free.len()];
        coeffs[fi] = Rat::from_integer((-1).into());
        ineqs.push(Ineq { coeffs, rhs: Rat::zero() });
    }
    for (r, _) in pivots.iter().enumerate() {
        let coeffs: Vec<Rat> = free.iter().map(|&f| a[r][f].clone()).collect();
        ineqs.push(Ineq { coeffs, rhs: a[r][nvars].clone() });
    }
    let z = fm_feasible(&ineqs, free.len())?;
    let mut y = vec![Rat::zero(); nvars];
    for (fi, &f) in free.iter().enumerate() {
        y[f] = z[fi].clone();
    }
    for (r, &p) in pivots.iter().enumerate() {
        let s: Rat = free.iter().enumerate().map(|(fi, &f)| &a[r][f] * &z[fi]).sum();
        y[p] = &a[r][nvars] - s;
    }
    Some(y)
}

/// For simplicial cones with labeled generators, a point of ∠I ∩ ∠J that is
/// not in ∠(I∩J), if one exists.
pub fn intersection_excess(
    gi: &[(usize, Vec<Rat>)],
    gj: &[(usize, Vec<Rat>)],
) -> Option<Vec<Rat>> {
    let n = gi.first().or(gj.first()).map_or(0, |g| g.1.len());
    let ni = gi.len();
    let nv = ni + gj.len();
    for (pos, (label, _)) in gi.iter().enumerate() {
        if gj.iter().any(|(l, _)| l == label) {
            continue;
        }
        // Σ s b_I − Σ t b_J = 0, s_pos = 1.
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                gi.iter()
                    .map(|g| g.1[r].clone())
                    .chain(gj.iter().map(|g| -g.1[r].clone()))
                    .collect()
            })
            .collect();
        let mut rhs = vec![Rat::zero(); n];
        let mut pin = vec![Rat::zero(); nv];
        pin[pos] = Rat::from_integer(1.into());
        m.push(pin);
        rhs.push(Rat::from_integer(1.into()));
        if let Some(y) = nonneg_solution(&m, &rhs) {
            let x: Vec<Rat> =
                (0..n).map(|r| gi.iter().zip(&y[..ni]).map(|(g, s)| &g.1[r] * s).sum()).collect();
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_vec, ratio};

    #[test]
    fn membership() {
        let gens = vec![rat_vec(&[1, 0]), rat_vec(&[0, 1])];
        assert!(in_cone(&gens, &rat_vec(&[1, 1])));
        assert!(in_cone(&gens, &rat_vec(&[1, 0])));
        assert!(!in_open_cone(&gens, &rat_vec(&[1, 0])));
        assert!(!in_cone(&gens, &rat_vec(&[-1, 1])));
        let gens = vec![rat_vec(&[0, 1]), rat_vec(&[-1, -2])];
        assert!(in_cone(&gens, &[rat(-1), ratio(-3, 2)]));
    }

    #[test]
    fn fm_simple() {
        // x >= 1, y >= 2, x + y <= 4
        let q = |c: &[i64], r: i64| Ineq { coeffs: rat_vec(c), rhs: rat(r) };
        let sys = vec![q(&[-1, 0], -1), q(&[0, -1], -2), q(&[1, 1], 4)];
        let z = fm_feasible(&sys, 2).unwrap();
        assert!(z[0] >= rat(1) && z[1] >= rat(2) && &z[0] + &z[1] <= rat(4));
        let sys = vec![q(&[-1, 0], -3), q(&[0, -1], -2), q(&[1, 1], 4)];
        assert!(fm_feasible(&sys, 2).is_none());
    }

    #[test]
    fn overlapping_cones() {
        let gi = vec![(1, rat_vec(&[1, 0])), (2, rat_vec(&[0, 1]))];
        let gj = vec![(1, rat_vec(&[1, 0])), (3, rat_vec(&[1, 1]))];
        let x = intersection_excess(&gj, &gi).unwrap();
        assert_eq!(x, rat_vec(&[1, 1]));
        let gk = vec![(2, rat_vec(&[0, 1])), (4, rat_vec(&[-1, 0]))];
        assert!(intersection_excess(&gi, &gk).is_none());
        assert!(intersection_excess(&gk, &gi).is_none());
    }
}
