use std::time::Instant;

use topfan_core::complex::SimplicialComplex;
use topfan_core::linalg::det_int;
use topfan_core::realize::barnette::{self, DMatrix};
use topfan_core::realize::labeling::{facet_determinants, search_labeling, verify_labeling, Certificate, LabelingProblem, Mode, Outcome};
use topfan_core::realize::mod2::{max_clique, mod2_search, Mod2Outcome};
use topfan_core::realize::signs::{derive_sign_table, SignOutcome};
use topfan_core::realize::sphere2::{realize_2sphere, COLORS};
use topfan_core::fixtures;

fn table() -> Vec<i32> {
    match derive_sign_table(&barnette::complex(), None, 0, 1).unwrap() {
        SignOutcome::Table(t) => t.signs,
        SignOutcome::Contradiction(c) => panic!("{c:?}"),
    }
}

#[test]
fn barnette_sign_table_matches_fixture_signs() {
    assert_eq!(table(), barnette::SIGNS.to_vec());
}

#[test]
fn barnette_toric_sign_unsat_at_five() {
    let mut p = LabelingProblem::new(barnette::complex(), Mode::ToricSign, 5);
    p.normalize = Some(vec![1, 2, 3, 4]);
    let start = Instant::now();
    let out = search_labeling(&p).unwrap();
    assert!(matches!(out, Outcome::Unsat { bound: 5, .. }), "{out:?}");
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn barnette_unsat_independent_of_vertex_order() {
    let orders = [vec![8, 7, 6, 5, 4, 3, 2, 1], vec![5, 6, 7, 8, 1, 2, 3, 4], vec![6, 8, 5, 7, 1, 2, 3, 4]];
    for o in orders {
        let mut p = LabelingProblem::new(barnette::complex(), Mode::ToricSign, 2);
        p.vertex_order = Some(o.clone());
        p.deterministic = true;
        assert!(matches!(search_labeling(&p).unwrap(), Outcome::Unsat { .. }), "order {o:?}");
    }
}

#[test]
fn barnette_unimodular_labeling_violates_sign_system() {
    // Any toric-sign solution would have to satisfy eq1-eq6; the unimodular one does not.
    let d = DMatrix(barnette::UNIMODULAR_D);
    assert!(!barnette::satisfies_all(&d));
    let v = barnette::labeling_with(&barnette::UNIMODULAR_D);
    let dets = facet_determinants(&barnette::complex(), &v);
    assert!(dets.iter().all(|d| d.abs() == 1));
    assert_ne!(dets.iter().map(|&d| d as i32).collect::<Vec<_>>(), barnette::SIGNS.to_vec());
}

#[test]
fn barnette_quoted_labeling_determinants() {
    let v = barnette::labeling_with(&barnette::QUOTED_D);
    let dets = facet_determinants(&barnette::complex(), &v);
    assert_eq!(dets, vec![1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, -1, -1, -1, 2, 2]);
}

#[test]
fn barnette_complete_fan_coordinates() {
    assert!(fixtures::barnette_fan().validate().is_valid());
}

#[test]
fn d_system_bounded_and_case_analysis() {
    assert!(barnette::exhaustive_d_search(5).solutions.is_empty());
    let start = Instant::now();
    let c = barnette::case_analysis_certificate();
    assert!(c.infeasible);
    assert!(start.elapsed().as_millis() < 1000);
}

#[test]
fn square_toric_sign_certificate() {
    let k = SimplicialComplex::polygon(4);
    let p = LabelingProblem::new(k, Mode::ToricSign, 1);
    assert!(verify_labeling(&p, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap());
    assert!(!verify_labeling(&p, &[vec![1, 0], vec![0, 1], vec![1, 0], vec![0, -1]]).unwrap());
}

#[test]
fn sat_results_reverify() {
    let cases = [
        (SimplicialComplex::polygon(5), Mode::Unimodular),
        (SimplicialComplex::polygon(6), Mode::ToricSign),
        (SimplicialComplex::boundary_of_simplex(3), Mode::ToricSign),
        (SimplicialComplex::cyclic_polytope_boundary(3, 6).unwrap(), Mode::Unimodular),
        (SimplicialComplex::boundary_of_simplex(2).join(&SimplicialComplex::polygon(4)), Mode::Unimodular),
    ];
    for (k, mode) in cases {
        let p = LabelingProblem::new(k, mode, 2);
        match search_labeling(&p).unwrap() {
            Outcome::Sat { solution, .. } => {
                assert!(verify_labeling(&p, &solution.v).unwrap());
                // Second, integer-only determinant path.
                for (f, d) in p.complex.listed_facets().iter().zip(&solution.dets) {
                    let rows: Vec<Vec<i64>> =
                        (0..f.len()).map(|r| f.iter().map(|&x| solution.v[x - 1][r]).collect()).collect();
                    assert_eq!(det_int(&rows), *d);
                }
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn cyclic_polytope_cliques() {
    let c8 = SimplicialComplex::cyclic_polytope_boundary(4, 8).unwrap();
    assert_eq!(c8.one_skeleton().len(), 28);
    let start = Instant::now();
    let c16 = SimplicialComplex::cyclic_polytope_boundary(4, 16).unwrap();
    match mod2_search(&c16, 4, Some(0), 1_000) {
        Mod2Outcome::Clique { clique } => assert_eq!(clique.len(), 16),
        other => panic!("{other:?}"),
    }
    assert!(start.elapsed().as_millis() < 1000);
    let c15 = SimplicialComplex::cyclic_polytope_boundary(4, 15).unwrap();
    assert_eq!(max_clique(&c15).len(), 15);
    assert!(!matches!(mod2_search(&c15, 4, Some(0), 100_000), Mod2Outcome::Clique { .. }));
}

#[test]
fn mod2_infeasible_implies_unimodular_unsat() {
    let k = SimplicialComplex::cyclic_polytope_boundary(4, 8).unwrap();
    assert!(matches!(mod2_search(&k, 4, Some(0), 1_000_000), Mod2Outcome::Exhausted { .. }));
    for bound in 1..=2 {
        let p = LabelingProblem::new(k.clone(), Mode::Unimodular, bound);
        assert!(matches!(search_labeling(&p).unwrap(), Outcome::Unsat { .. }), "bound {bound}");
    }
    let k = SimplicialComplex::cyclic_polytope_boundary(4, 16).unwrap();
    let p = LabelingProblem::new(k, Mode::Unimodular, 1);
    assert!(matches!(
        search_labeling(&p).unwrap(),
        Outcome::Infeasible { certificate: Certificate::PigeonholeClique { .. } }
    ));
}

#[test]
fn two_spheres_realize() {
    for name in ["octahedron", "icosahedron", "tetrahedron"] {
        let fixtures::Fixture::Complex(e) = fixtures::fixture(name).unwrap() else { panic!() };
        let r = realize_2sphere(&e.complex, e.positions.as_ref().unwrap()).unwrap();
        assert!(r.fan.validate().is_valid(), "{name}");
        assert!(r.fan.rays.iter().all(|ray| COLORS.iter().any(|c| ray.v == c.to_vec())));
    }
}
