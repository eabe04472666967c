//! Bundled complexes and fans.

use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::fan::{Ray, TopologicalFan};
use crate::io::EmbeddedComplex;
use crate::rational::{ratio, rat_vec, Rat};
use crate::realize::barnette;

pub const NAMES: [&str; 7] = ["cp2cp2", "barnette", "barnette-fan", "cyclic:<n>:<m>", "octahedron", "icosahedron", "tetrahedron"];

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error("cyclic fixture must be cyclic:<n>:<m>, got {0:?}")]
    CyclicSyntax(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Fan(TopologicalFan),
    Complex(EmbeddedComplex),
}

pub fn fixture(name: &str) -> Result<Fixture, FixtureError> {
    Ok(match name {
        "cp2cp2" => Fixture::Fan(cp2cp2()),
        "barnette" => Fixture::Complex(EmbeddedComplex { complex: barnette::complex(), positions: None }),
        "barnette-fan" => Fixture::Fan(barnette_fan()),
        "octahedron" => Fixture::Complex(octahedron()),
        "icosahedron" => Fixture::Complex(icosahedron()),
        "tetrahedron" => Fixture::Complex(tetrahedron()),
        _ if name.starts_with("cyclic:") => {
            let parts: Vec<&str> = name.split(':').collect();
            let parse = |s: &str| s.parse::<usize>().map_err(|_| FixtureError::CyclicSyntax(name.to_string()));
            if parts.len() != 3 {
                return Err(FixtureError::CyclicSyntax(name.to_string()));
            }
            let k = SimplicialComplex::cyclic_polytope_boundary(parse(parts[1])?, parse(parts[2])?)?;
            Fixture::Complex(EmbeddedComplex { complex: k, positions: None })
        }
        _ => return Err(FixtureError::Unknown(name.to_string())),
    })
}

/// The four-ray fan of CP²#CP² with b₃ = −e₁ and v₃ = −e₁−2e₂.
pub fn cp2cp2() -> TopologicalFan {
    let b = [[1, 0], [0, 1], [-1, 0], [-1, -1]];
    let v = [[1, 0], [0, 1], [-1, -2], [-1, -1]];
    let rays = b.iter().zip(v).map(|(b, v)| Ray::new(rat_vec(b), rat_vec(&[0, 0]), v.to_vec())).collect();
    let k = SimplicialComplex::new(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]).expect("valid");
    TopologicalFan::new(2, k, rays).expect("valid")
}

/// Barnette sphere with an ordinary complete fan as b and a unimodular labeling as v.
pub fn barnette_fan() -> TopologicalFan {
    let v = barnette::labeling_with(&barnette::UNIMODULAR_D);
    let rays = barnette::COMPLETE_FAN_B
        .iter()
        .zip(&v)
        .map(|(b, v)| Ray::new(rat_vec(b), rat_vec(&[0, 0, 0, 0]), v.clone()))
        .collect();
    TopologicalFan::new(4, barnette::complex(), rays).expect("valid")
}

/// Vertices ±e₁, ±e₂, ±e₃ numbered e₁, −e₁, e₂, −e₂, e₃, −e₃.
pub fn octahedron() -> EmbeddedComplex {
    let mut facets = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    let positions = (0..6)
        .map(|i| (0..3).map(|j| if j == i / 2 { Rat::from_integer((1 - 2 * (i % 2) as i64).into()) } else { ratio(0, 1) }).collect())
        .collect();
    EmbeddedComplex { complex: SimplicialComplex::new(6, facets).expect("valid"), positions: Some(positions) }
}

/// Icosahedron with the golden ratio replaced by 3/2.
pub fn icosahedron() -> EmbeddedComplex {
    let t = || ratio(3, 2);
    let z = || ratio(0, 1);
    let one = |s: i64| ratio(s, 1);
    let neg = |x: Rat| -x;
    let positions = vec![
        vec![z(), one(1), t()],
        vec![one(1), t(), z()],
        vec![t(), z(), one(1)],
        vec![z(), one(1), neg(t())],
        vec![one(1), neg(t()), z()],
        vec![neg(t()), z(), one(1)],
        vec![z(), one(-1), t()],
        vec![one(-1), t(), z()],
        vec![t(), z(), one(-1)],
        vec![z(), one(-1), neg(t())],
        vec![one(-1), neg(t()), z()],
        vec![neg(t()), z(), one(-1)],
    ];
    let facets = [
        [3, 5, 7],
        [1, 6, 7],
        [1, 3, 7],
        [3, 5, 9],
        [5, 9, 10],
        [4, 9, 10],
        [4, 10, 12],
        [5, 10, 11],
        [5, 7, 11],
        [6, 11, 12],
        [6, 7, 11],
        [10, 11, 12],
        [1, 2, 3],
        [2, 4, 9],
        [2, 3, 9],
        [1, 6, 8],
        [4, 8, 12],
        [6, 8, 12],
        [2, 4, 8],
        [1, 2, 8],
    ];
    let k = SimplicialComplex::new(12, facets.iter().map(|f| f.to_vec()).collect()).expect("valid");
    EmbeddedComplex { complex: k, positions: Some(positions) }
}

pub fn tetrahedron() -> EmbeddedComplex {
    let pos = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    EmbeddedComplex {
        complex: SimplicialComplex::boundary_of_simplex(3),
        positions: Some(pos.iter().map(|p| rat_vec(p)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_fixtures() {
        assert!(matches!(fixture("cp2cp2").unwrap(), Fixture::Fan(_)));
        let Fixture::Complex(c) = fixture("cyclic:4:8").unwrap() else { panic!() };
        assert_eq!(c.complex.facets().len(), 20);
        assert_eq!(fixture("cyclic:4"), Err(FixtureError::CyclicSyntax("cyclic:4".into())));
        assert_eq!(fixture("nope"), Err(FixtureError::Unknown("nope".into())));
    }

    #[test]
    fn fixture_fans_validate() {
        assert!(cp2cp2().validate().is_valid());
        let report = barnette_fan().validate();
        assert!(report.is_valid(), "{report:?}");
    }

    #[test]
    fn sphere_shapes() {
        for e in [octahedron(), icosahedron(), tetrahedron()] {
            assert!(e.complex.is_pseudomanifold());
            assert_eq!(e.complex.euler_characteristic(), 2);
        }
        assert_eq!(icosahedron().complex.one_skeleton().len(), 30);
    }
}
