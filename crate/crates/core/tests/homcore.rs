mod common;

use common::{algebra, load, module};
use proptest::prelude::*;
use silting_core::exactlin::int;
use silting_core::fdalg::{end_algebra, FdAlgebra};
use silting_core::fixtures::*;
use silting_core::homcore::*;
use silting_core::repmod::Representation;
use silting_core::twoterm::{functor_hom, TwoTermComplex};
use std::sync::Arc;

fn ext_free(m: &Representation, n: &Representation, i: usize) -> usize {
    let r = free_resolution(m, i + 1);
    ext_from_resolution(&r.terms, &r.differentials, n, i)
}

#[test]
fn global_dimensions_of_fixture_algebras() {
    let cases = [(K_QUIVER.to_string(), 0), (A2_QUIVER.to_string(), 1), (EX3_QUIVER.to_string(), 3), (EX2_QUIVER.to_string(), 2), (ex1_quiver(2), 2)];
    for (q, expected) in cases {
        let b = PathAlgebraBackend::new(&algebra(&q));
        let g = gldim(&b, DEFAULT_CAP);
        assert_eq!(g.overall, DimVerdict::Finite(expected));
        for s in b.simples() {
            min_resolution(&b, &s, DEFAULT_CAP).verify(&b).unwrap();
        }
    }
}

#[test]
fn ex3_projective_dimensions_of_simples() {
    let b = PathAlgebraBackend::new(&algebra(EX3_QUIVER));
    let pds: Vec<DimVerdict> = b.simples().iter().map(|s| pd(&b, s, DEFAULT_CAP)).collect();
    assert!(pds.contains(&DimVerdict::Finite(3)));
    assert!(pds.iter().all(|d| matches!(d, DimVerdict::Finite(0..=3))));
    assert_eq!(pd(&b, &Representation::projective(&b.alg, 2), DEFAULT_CAP), DimVerdict::Finite(0));
    assert_eq!(pd(&b, &Representation::zero(&b.alg), DEFAULT_CAP), DimVerdict::Finite(0));
}

#[test]
fn hom_into_s2_over_ex3_end_algebra_is_periodic() {
    let (a, p) = load(EX3_QUIVER, EX3_COMPLEX);
    let end = end_algebra(&p);
    let back = FdBackend::new(&end.algebra).unwrap();
    let fs2 = functor_hom(&end, &TwoTermComplex::stalk0(&module(&a, "S2")));
    let rep = back.structure.to_representation(&fs2);
    let res = min_resolution(&back, &rep, DEFAULT_CAP);
    assert_eq!(res.outcome, ResolutionOutcome::InfinitePeriodic { entry: 0, period: 3 });
    res.verify(&back).unwrap();
    assert_eq!(gldim(&back, DEFAULT_CAP).overall, DimVerdict::Infinite);
}

#[test]
fn truncated_polynomial_ring_has_periodic_simple() {
    let b = Arc::new(FdAlgebra::truncated_polynomial(&[int(0), int(0)]));
    let back = FdBackend::new(&b).unwrap();
    let s = &back.simples()[0];
    let res = min_resolution(&back, s, DEFAULT_CAP);
    assert_eq!(res.outcome, ResolutionOutcome::InfinitePeriodic { entry: 0, period: 1 });
    res.verify(&back).unwrap();
    assert_eq!(ext_dim(&back, s, s, 5, DEFAULT_CAP), ExtDim::Known(1));
}

#[test]
fn capped_resolution_is_unknown() {
    let b = PathAlgebraBackend::new(&algebra(EX2_QUIVER));
    let s = &b.simples()[0];
    assert_eq!(min_resolution(&b, s, 1).outcome, ResolutionOutcome::ExceededCap(1));
    assert_eq!(ext_dim(&b, s, s, 2, 1), ExtDim::Unknown);
}

#[test]
fn ext_one_between_simples_counts_arrows() {
    for (q, arrows) in [(A2_QUIVER, 1), (EX3_QUIVER, 5), (EX2_QUIVER, 8)] {
        let b = PathAlgebraBackend::new(&algebra(q));
        assert_eq!(ext1_simple_total(&b, DEFAULT_CAP), ExtDim::Known(arrows));
    }
}

#[test]
fn ext_agrees_with_a_non_minimal_resolution() {
    let a = algebra(EX3_QUIVER);
    let b = PathAlgebraBackend::new(&a);
    let simples = b.simples();
    for m in &simples {
        for n in &simples {
            for i in 0..=1 {
                assert_eq!(ext_dim(&b, m, n, i, DEFAULT_CAP), ExtDim::Known(ext_free(m, n, i)));
            }
        }
    }
    let m = module(&a, "P2/(a, d)");
    for n in &simples {
        assert_eq!(ext_dim(&b, &m, n, 2, DEFAULT_CAP), ExtDim::Known(ext_free(&m, n, 2)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ext_is_independent_of_the_resolution(
        v in 0usize..4,
        gen in prop::sample::select(vec!["", "a", "c", "d", "e", "a.b", "e.a", "e.d", "e.a.b"]),
        target in 0usize..4,
        i in 0usize..2,
    ) {
        let a = algebra(EX3_QUIVER);
        let label = a.presentation.vertices[v].clone();
        let text = if gen.is_empty() { format!("P{label}") } else { format!("P{label}/({gen})") };
        let m = match silting_core::cli::spec::parse_module(&text, &a) {
            Ok(m) => m,
            Err(_) => return Ok(()),
        };
        let b = PathAlgebraBackend::new(&a);
        let n = Representation::simple(&a.algebra, target);
        let res = min_resolution(&b, &m, DEFAULT_CAP);
        prop_assert!(res.verify(&b).is_ok());
        prop_assert_eq!(ext_dim(&b, &m, &n, i, DEFAULT_CAP), ExtDim::Known(ext_free(&m, &n, i)));
    }
}
