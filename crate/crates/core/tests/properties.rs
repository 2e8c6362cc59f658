mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::algebra;
use num_traits::Zero;
use silting_core::exactlin::{int, unit, Scalar, Subspace};
use silting_core::fdalg::{self, nilpotency_index, product_space, quotient_algebra, radical, FdAlgebra};
use silting_core::fixtures::{A0_QUIVER, EX3_COMPLEX, EX3_QUIVER};
use silting_core::homcore::*;
use silting_core::pathalg::{build_algebra, PathAlgebra, DEFAULT_LENGTH_CAP};
use silting_core::quiverdsl::{parse_algebra, render_presentation, AlgebraPresentation, ArrowDecl, RelationExpr};
use silting_core::repmod::{self, Representation};
use silting_core::twoterm::*;

/// Acyclic quivers on up to five vertices with monomial relations of length two.
fn monomial_presentation() -> impl Strategy<Value = AlgebraPresentation> {
    (1usize..=5).prop_flat_map(|nv| {
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|i| (i + 1..nv).map(move |j| (i, j))).collect();
        let np = pairs.len();
        (Just(nv), Just(pairs), proptest::collection::vec(0..np.max(1), 0..=6), proptest::collection::vec(any::<u8>(), 6))
            .prop_map(|(nv, pairs, picks, rel_bits)| {
                let arrows: Vec<ArrowDecl> = if pairs.is_empty() {
                    Vec::new()
                } else {
                    picks
                        .iter()
                        .enumerate()
                        .map(|(k, &i)| ArrowDecl { label: format!("x{k}"), source: pairs[i].0, target: pairs[i].1 })
                        .collect()
                };
                let mut composable = Vec::new();
                for (i, a) in arrows.iter().enumerate() {
                    for (j, b) in arrows.iter().enumerate() {
                        if a.target == b.source {
                            composable.push(vec![i, j]);
                        }
                    }
                }
                let relations = composable
                    .into_iter()
                    .enumerate()
                    .filter(|(k, _)| rel_bits[k % rel_bits.len()] & (1 << (k % 8)) != 0)
                    .map(|(_, w)| RelationExpr { terms: vec![(int(1), w)] })
                    .collect();
                AlgebraPresentation { vertices: (1..=nv).map(|v| v.to_string()).collect(), arrows, relations }
            })
    })
}

/// Number of paths containing no relation as a contiguous subpath.
fn path_count_oracle(p: &AlgebraPresentation) -> usize {
    let forbidden: Vec<&Vec<usize>> = p.relations.iter().map(|r| &r.terms[0].1).collect();
    let mut count = p.vertices.len();
    let mut frontier: Vec<Vec<usize>> = (0..p.arrows.len()).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        count += frontier.len();
        let mut next = Vec::new();
        for w in &frontier {
            let t = p.arrows[*w.last().expect("nonempty")].target;
            for (x, a) in p.arrows.iter().enumerate() {
                if a.source == t {
                    let mut w2 = w.clone();
                    w2.push(x);
                    if forbidden.iter().all(|f| !w2.windows(f.len()).any(|s| s == f.as_slice())) {
                        next.push(w2);
                    }
                }
            }
        }
        frontier = next;
    }
    count
}

fn ex3() -> PathAlgebra {
    algebra(EX3_QUIVER)
}

/// Map `P_u -> P_v` given by an element of `e_v A e_u` with small integer coefficients.
fn projective_map(a: &PathAlgebra, u: usize, v: usize, coeffs: &[i64]) -> TwoTermComplex {
    let alg = &a.algebra;
    let src = Representation::projective(alg, u);
    let tgt = Representation::projective(alg, v);
    let n = alg.paths_between(v, u).len();
    let img: Vec<Scalar> = (0..n).map(|i| int(coeffs[i % coeffs.len()])).collect();
    let f = repmod::map_from_projectives(&src, &[u], &tgt, &[img]);
    TwoTermComplex::new(src, tgt, f)
}

fn random_complex(a: &PathAlgebra, spec: &[(usize, usize, Vec<i64>)]) -> TwoTermComplex {
    let parts: Vec<TwoTermComplex> = spec.iter().map(|(u, v, c)| projective_map(a, *u, *v, c)).collect();
    TwoTermComplex::direct_sum(&parts)
}

fn complex_spec() -> impl Strategy<Value = Vec<(usize, usize, Vec<i64>)>> {
    proptest::collection::vec((0usize..4, 0usize..4, proptest::collection::vec(-2i64..=2, 3)), 1..=2)
}

fn random_module(a: &PathAlgebra, v: usize, w: usize, coeffs: &[i64]) -> Representation {
    repmod::cokernel(&projective_map(a, w, v, coeffs).diff, &Representation::projective(&a.algebra, v)).module
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn monomial_algebras_match_path_count(p in monomial_presentation()) {
        let a = build_algebra(&p, DEFAULT_LENGTH_CAP).unwrap();
        prop_assert_eq!(a.dim(), path_count_oracle(&p));
        let n = a.vertex_count();
        let by_source: usize = (0..n).map(|v| (0..n).map(|t| a.algebra.paths_between(v, t).len()).sum::<usize>()).sum();
        let by_target: usize = (0..n).map(|t| (0..n).map(|v| a.algebra.paths_between(v, t).len()).sum::<usize>()).sum();
        prop_assert_eq!(by_source, a.dim());
        prop_assert_eq!(by_target, a.dim());
        let b = FdAlgebra::from_basic(&a.algebra);
        prop_assert!(b.is_associative());
        prop_assert!(b.unit_is_identity());
    }

    #[test]
    fn radical_and_idempotents(p in monomial_presentation()) {
        let a = build_algebra(&p, DEFAULT_LENGTH_CAP).unwrap();
        let b = FdAlgebra::from_basic(&a.algebra);
        let j = radical(&b);
        prop_assert_eq!(j.dim(), a.dim() - a.vertex_count());
        let full = Subspace::full(b.dim());
        prop_assert!(product_space(&b, &full, &j).is_subspace_of(&j));
        prop_assert!(product_space(&b, &j, &full).is_subspace_of(&j));
        prop_assert!(nilpotency_index(&b, &j).is_some());
        prop_assert!(radical(&quotient_algebra(&b, &j)).is_zero());
        let idem = fdalg::primitive_idempotents(&b).unwrap();
        prop_assert_eq!(idem.len(), a.vertex_count());
        let mut total = 0;
        for (i, e) in idem.iter().enumerate() {
            prop_assert_eq!(&b.mul(e, e), e);
            for (k, f) in idem.iter().enumerate() {
                if i != k {
                    prop_assert!(b.mul(e, f).iter().all(|x| x.is_zero()));
                }
            }
            let eb = Subspace::from_vectors(b.dim(), (0..b.dim()).map(|k| b.mul(e, &unit(b.dim(), k))));
            total += eb.dim();
        }
        prop_assert_eq!(total, b.dim());
    }

    #[test]
    fn backends_agree_on_the_regular_complex(p in monomial_presentation()) {
        let a = build_algebra(&p, DEFAULT_LENGTH_CAP).unwrap();
        let back_a = PathAlgebraBackend::new(&a);
        let ga = gldim(&back_a, DEFAULT_CAP);
        let end = fdalg::end_algebra(&TwoTermComplex::stalk0(&Representation::regular(&a.algebra)));
        let back_b = FdBackend::new(&end.algebra).unwrap();
        prop_assert_eq!(back_b.structure.basic.vertex_count(), a.vertex_count());
        prop_assert_eq!(gldim(&back_b, DEFAULT_CAP).overall, ga.overall);
        let all = repmod::direct_sum(&back_a.simples()).module;
        prop_assert_eq!(pd(&back_a, &all, DEFAULT_CAP), ga.overall);
        for s in back_a.simples() {
            prop_assert!(min_resolution(&back_a, &s, DEFAULT_CAP).verify(&back_a).is_ok());
        }
    }

    #[test]
    fn rendered_fixtures_reparse(p in monomial_presentation()) {
        prop_assert_eq!(parse_algebra(&render_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn parsing_never_panics(lines in proptest::collection::vec(
        prop::sample::select(vec![
            "vertices: 1 2 3", "vertices: 1 1", "vertices:", "arrow a: 1 -> 2", "arrow b: 2 -> 3", "arrow a: 2 -> 3",
            "arrow c: 1 -> 9", "relation a.b", "relation a.a", "relation a.b - a.b", "relation 2*a.b + b",
            "relation 0*a.b", "relation a.", "relation 1/0*a.b", "arrow : 1 -> 2", "# comment", "", "relation a.b.c",
            "relation -1/2*a.b", "arrow d 1 -> 2",
        ]),
        0..6,
    )) {
        let text = lines.join("\n");
        if let Ok(p) = parse_algebra(&text) {
            prop_assert_eq!(parse_algebra(&render_presentation(&p)).unwrap(), p);
        }
    }

    #[test]
    fn homotopy_hom_in_two_term_range(x in complex_spec(), y in complex_spec()) {
        let a = ex3();
        let (x, y) = (random_complex(&a, &x), random_complex(&a, &y));
        prop_assert_eq!(hom_homotopy(&x, &y, 2).dim(), 0);
        prop_assert_eq!(hom_homotopy(&x, &y, -2).dim(), 0);
        let h = hom_homotopy(&x, &y, 0);
        prop_assert_eq!(h.cycles_dim() - h.boundaries_dim(), h.dim());
    }

    #[test]
    fn class_composition_is_unital_and_well_defined(x in complex_spec(), y in complex_spec(), z in complex_spec()) {
        let a = ex3();
        let (x, y, z) = (random_complex(&a, &x), random_complex(&a, &y), random_complex(&a, &z));
        let hxy = hom_homotopy(&x, &y, 0);
        let hyz = hom_homotopy(&y, &z, 0);
        let hxz = hom_homotopy(&x, &z, 0);
        let class = |h: &ChainHomClass, f: &ChainMap| h.class_coordinates(&h.chain_map_coordinates(f).unwrap()).unwrap();
        for v in hxy.class_basis() {
            let f = hxy.chain_map(v);
            prop_assert!(f.is_chain_map(&x, &y));
            prop_assert_eq!(class(&hxy, &f.then(&ChainMap::identity(&y))), class(&hxy, &f));
            prop_assert_eq!(class(&hxy, &ChainMap::identity(&x).then(&f)), class(&hxy, &f));
            for w in hyz.class_basis() {
                let g = hyz.chain_map(w);
                let gf = f.then(&g);
                prop_assert!(gf.is_chain_map(&x, &z));
                // adding a null-homotopic map to f does not change the class of g ∘ f
                for b in hxy.boundary_basis() {
                    prop_assert!(hxy.is_cycle(b) && hxy.is_null_homotopic(b));
                    let shifted: Vec<Scalar> = hxy.chain_map_coordinates(&f).unwrap().iter().zip(b).map(|(p, q)| p + q).collect();
                    prop_assert_eq!(class(&hxz, &hxy.chain_map(&shifted).then(&g)), class(&hxz, &gf));
                }
            }
        }
    }

    #[test]
    fn torsion_routes_agree_on_quotients(v in 0usize..4, w in 0usize..4, coeffs in proptest::collection::vec(-2i64..=2, 3)) {
        let a = ex3();
        let p = common::complex(&a, EX3_COMPLEX);
        let m = random_module(&a, v, w, &coeffs);
        let r = torsion_classify(&p, &m);
        prop_assert!(r.routes_agree());
        let t = &r.sequence.torsion.module;
        if m.is_zero() {
            return Ok(());
        }
        prop_assert_eq!(r.class == TorsionClass::Torsion, t.total_dim() == m.total_dim());
        prop_assert_eq!(r.class == TorsionClass::TorsionFree, t.is_zero());
        prop_assert_eq!(repmod::hom(&p.homology(0), &r.sequence.free.module).unwrap().dim(), 0);
    }

    #[test]
    fn heart_membership_routes_agree(x in complex_spec()) {
        let a = ex3();
        let p = common::complex(&a, EX3_COMPLEX);
        let x = random_complex(&a, &x);
        prop_assert!(c_membership(&p, &x).agree());
    }
}

#[test]
fn a0_has_global_dimension_three() {
    let b = PathAlgebraBackend::new(&algebra(A0_QUIVER));
    assert_eq!(gldim(&b, DEFAULT_CAP).overall, DimVerdict::Finite(3));
}

#[test]
fn end_of_regular_complex_is_isomorphic_algebra() {
    let a = ex3();
    let end = fdalg::end_algebra(&TwoTermComplex::stalk0(&Representation::regular(&a.algebra)));
    let s = fdalg::fd_structure(&Arc::new((*end.algebra).clone())).unwrap();
    assert_eq!(s.basic.dim(), a.dim());
    assert_eq!(s.basic.arrows.len(), a.algebra.arrows.len());
}
