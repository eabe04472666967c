//! Seeded random complete non-singular topological fans of small dimension.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::fan::{Ray, TopologicalFan};
use crate::linalg::{det_int, det};
use crate::rational::{ratio, rat, Rat};
use crate::realize::surgery::{product_fan, stellar_subdivide_fan};
use crate::ring::RElem;

fn projective_space(n: usize) -> TopologicalFan {
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    v.push(vec![-1; n]);
    TopologicalFan::algebraic(SimplicialComplex::boundary_of_simplex(n), &v).expect("valid")
}

fn base_fan(rng: &mut impl Rng, n: usize) -> TopologicalFan {
    // Partitions of n into projective-space factors.
    let parts: &[&[usize]] = match n {
        1 => &[&[1]],
        2 => &[&[2], &[1, 1]],
        _ => &[&[3], &[2, 1], &[1, 1, 1]],
    };
    let choice = parts[rng.gen_range(0..parts.len())];
    let mut fan = projective_space(choice[0]);
    for &k in &choice[1..] {
        fan = product_fan(&fan, &projective_space(k)).expect("valid");
    }
    fan
}

fn random_gl_q(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rat>> {
    loop {
        let a: Vec<Vec<Rat>> =
            (0..n).map(|_| (0..n).map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect()).collect();
        if det(&a) != rat(0) {
            return a;
        }
    }
}

fn random_gl_z(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n == 1 {
        u[0][0] = if rng.gen() { 1 } else { -1 };
        return u;
    }
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let s = if rng.gen() { 1 } else { -1 };
        for k in 0..n {
            u[i][k] += s * u[j][k];
        }
    }
    if rng.gen() {
        u[0].iter_mut().for_each(|x| *x = -*x);
    }
    debug_assert_eq!(det_int(&u).abs(), 1);
    u
}

/// A complete non-singular fan with 1 ≤ n ≤ max_n and at most max_m rays.
pub fn random_valid_fan(rng: &mut impl Rng, max_n: usize, max_m: usize) -> TopologicalFan {
    let n = rng.gen_range(1..=max_n.max(1));
    let mut fan = base_fan(rng, n);
    // Stellar subdivision needs facets with a nonempty boundary.
    let target = if n == 1 { fan.m() } else { rng.gen_range(fan.m()..=max_m.max(fan.m())) };
    while fan.m() < target {
        let facets = fan.complex.facets().to_vec();
        let f = &facets[rng.gen_range(0..facets.len())];
        fan = stellar_subdivide_fan(&fan, f).expect("facet");
    }
    let a = random_gl_q(rng, n);
    let u = random_gl_z(rng, n);
    let rays: Vec<Ray> = fan
        .rays
        .iter()
        .map(|r| {
            let b = (0..n).map(|i| (0..n).map(|j| &a[i][j] * &r.b[j]).sum()).collect();
            let v = (0..n).map(|i| (0..n).map(|j| u[i][j] * r.v[j]).sum()).collect();
            Ray::new(b, r.c.clone(), v)
        })
        .collect();
    let fan = TopologicalFan::new(n, fan.complex.clone(), rays).expect("valid");
    let mus: Vec<RElem> = (0..fan.m())
        .map(|_| {
            RElem::new(
                ratio(rng.gen_range(1..=4), rng.gen_range(1..=3)),
                ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)),
                if rng.gen() { 1 } else { -1 },
            )
        })
        .collect();
    let fan = fan.right_multiply(&mus);
    let mut perm: Vec<usize> = (1..=fan.m()).collect();
    perm.shuffle(rng);
    fan.relabel(&perm)
}

pub fn random_valid_fan_seeded(seed: u64, max_n: usize, max_m: usize) -> TopologicalFan {
    random_valid_fan(&mut ChaCha8Rng::seed_from_u64(seed), max_n, max_m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..10 {
            let f = random_valid_fan_seeded(seed, 3, 8);
            assert_eq!(f, random_valid_fan_seeded(seed, 3, 8));
            assert!(f.n <= 3 && f.m() <= 8);
            let r = f.validate();
            assert!(r.is_valid(), "seed {seed}: {r:?}");
        }
    }
}
