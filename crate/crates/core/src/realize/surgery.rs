//! Fan-level surgeries: stellar subdivision, suspension and product.

use num_traits::Zero;
use thiserror::Error;

use crate::complex::ComplexError;
use crate::fan::{FanError, Ray, TopologicalFan};
use crate::rational::Rat;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("{0:?} is not a facet")]
    NotAFacet(Vec<usize>),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Subdivides the facet σ with a new vertex m+1 whose ray is Σ_{j∈σ} β_j.
pub fn stellar_subdivide_fan(fan: &TopologicalFan, sigma: &[usize]) -> Result<TopologicalFan, SurgeryError> {
    let mut s = sigma.to_vec();
    s.sort_unstable();
    if fan.complex.facet_index(&s).is_none() {
        return Err(SurgeryError::NotAFacet(sigma.to_vec()));
    }
    let n = fan.n;
    let mut new = Ray::new(vec![Rat::zero(); n], vec![Rat::zero(); n], vec![0; n]);
    for &j in &s {
        let r = fan.ray(j);
        for k in 0..n {
            new.b[k] += &r.b[k];
            new.c[k] += &r.c[k];
            new.v[k] += r.v[k];
        }
    }
    let complex = fan.complex.stellar_subdivide(&s)?;
    let mut rays = fan.rays.clone();
    rays.push(new);
    Ok(TopologicalFan::new(n, complex, rays)?)
}

fn extend(r: &Ray, before: usize, after: usize) -> Ray {
    let pad = |xs: &[Rat]| {
        let mut out = vec![Rat::zero(); before];
        out.extend_from_slice(xs);
        out.extend(std::iter::repeat_with(Rat::zero).take(after));
        out
    };
    let mut v = vec![0; before];
    v.extend_from_slice(&r.v);
    v.extend(std::iter::repeat_n(0, after));
    Ray::new(pad(&r.b), pad(&r.c), v)
}

/// Dimension n+1: old rays gain a zero coordinate, vertices m+1 and m+2 get ±e_{n+1}.
pub fn suspend_fan(fan: &TopologicalFan) -> Result<TopologicalFan, SurgeryError> {
    let n = fan.n;
    let mut rays: Vec<Ray> = fan.rays.iter().map(|r| extend(r, 0, 1)).collect();
    for s in [1, -1] {
        let v: Vec<i64> = (0..=n).map(|k| if k == n { s } else { 0 }).collect();
        rays.push(Ray::algebraic(&v));
    }
    Ok(TopologicalFan::new(n + 1, fan.complex.suspend(), rays)?)
}

/// Join of the complexes with rays in complementary coordinates.
pub fn product_fan(a: &TopologicalFan, b: &TopologicalFan) -> Result<TopologicalFan, SurgeryError> {
    let mut rays: Vec<Ray> = a.rays.iter().map(|r| extend(r, 0, b.n)).collect();
    rays.extend(b.rays.iter().map(|r| extend(r, a.n, 0)));
    Ok(TopologicalFan::new(a.n + b.n, a.complex.join(&b.complex), rays)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::rational::rat_vec;

    fn cp1() -> TopologicalFan {
        TopologicalFan::algebraic(SimplicialComplex::boundary_of_simplex(1), &[vec![1], vec![-1]]).unwrap()
    }

    fn cp2cp2() -> TopologicalFan {
        let k = SimplicialComplex::new(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]).unwrap();
        let mut f = TopologicalFan::algebraic(k, &[vec![1, 0], vec![0, 1], vec![-1, -2], vec![-1, -1]]).unwrap();
        f.rays[2].b = rat_vec(&[-1, 0]);
        f
    }

    #[test]
    fn stellar_on_first_facet() {
        let f = stellar_subdivide_fan(&cp2cp2(), &[1, 2]).unwrap();
        assert_eq!(f.m(), 5);
        assert_eq!(*f.ray(5), Ray::algebraic(&[1, 1]));
        assert!(f.validate().is_valid());
        assert_eq!(stellar_subdivide_fan(&cp2cp2(), &[1, 3]), Err(SurgeryError::NotAFacet(vec![1, 3])));
    }

    #[test]
    fn suspension_validates() {
        let f = suspend_fan(&cp2cp2()).unwrap();
        assert_eq!((f.n, f.m()), (3, 6));
        assert!(f.validate().is_valid());
    }

    #[test]
    fn product_of_lines_is_square() {
        let f = product_fan(&cp1(), &cp1()).unwrap();
        assert_eq!(f.n, 2);
        let vs: Vec<Vec<i64>> = f.rays.iter().map(|r| r.v.clone()).collect();
        assert_eq!(vs, vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(f.validate().is_valid());
    }
}
