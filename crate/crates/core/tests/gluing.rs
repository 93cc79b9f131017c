use std::collections::HashMap;

use dgres_core::catalog::*;
use dgres_core::gluing::{ground_bimodule, product_comparison, zero_bimodule};
use dgres_core::*;
use proptest::prelude::*;

fn q() -> Field {
    Field::Rational
}

fn k() -> DGAlgebra {
    DGAlgebra::ground(q())
}

fn a2() -> GluedAlgebra {
    let one = [q().one()];
    let n = ground_bimodule(&k(), &one, &k(), &one).unwrap();
    glue(&k(), &k(), &n).unwrap()
}

fn dual_numbers_over_k() -> GluedAlgebra {
    let aug = truncated_polynomial_aug(q(), 2);
    let n = ground_bimodule(aug.algebra(), aug.values(), &k(), &[q().one()]).unwrap();
    glue(aug.algebra(), &k(), &n).unwrap()
}

#[test]
fn gluing_the_ground_field_gives_the_path_algebra() {
    let ga = a2();
    let path = a2_path(q());
    assert_eq!(ga.c.dim(), 3);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(ga.c.mul_basis(i, j), path.mul_basis(i, j), "({i}, {j})");
        }
    }
    assert_eq!(ga.c.unit(), path.unit());
}

#[test]
fn gluing_dual_numbers() {
    let ga = dual_numbers_over_k();
    assert_eq!(ga.c.dim(), 4);
    assert!(ga.c.validate().is_valid());
    // x·n = 0 since x acts through the augmentation
    let x = ga.offsets()[2] + 1;
    assert!(ga.c.mul_basis(x, 1).is_zero());
}

#[test]
fn gluing_along_zero_is_the_product() {
    let a = truncated_polynomial(q(), 2, 0);
    let b = truncated_tensor(q(), 2, 0);
    let ga = glue(&a, &b, &zero_bimodule(&a, &b).unwrap()).unwrap();
    let h = product_comparison(&ga).unwrap();
    assert!(h.check(true).is_empty());
    assert_eq!(h.matrix.rank(), ga.c.dim());
}

#[test]
fn rejects_modules_over_the_wrong_algebra() {
    let a = truncated_polynomial(q(), 2, 0);
    let m = DGModule::free(&a, &[0]);
    assert!(glue(&a, &k(), &m).is_err());
}

#[test]
fn diagonal_is_the_cone() {
    let a = truncated_polynomial(q(), 2, 0);
    let b = truncated_tensor(q(), 2, 0);
    let zero = glue(&a, &b, &zero_bimodule(&a, &b).unwrap()).unwrap();
    for (name, ga) in [("A2", a2()), ("dual numbers", dual_numbers_over_k()), ("zero", zero)] {
        let r = glued_diagonal_cone(&ga).unwrap();
        assert!(r.sum_problems.is_empty(), "{name}: {:?}", r.sum_problems);
        assert!(r.verified(), "{name}");
        assert_eq!(r.cone.dim(), ga.c.dim() + 2 * ga.n.dim());
    }
    // the section respects the actions only when N = 0
    assert!(!glued_diagonal_cone(&a2()).unwrap().section_bimodule_map);
    let zero = glue(&a, &b, &zero_bimodule(&a, &b).unwrap()).unwrap();
    assert!(glued_diagonal_cone(&zero).unwrap().section_bimodule_map);
}

#[test]
fn algebra_splits_into_a_triple() {
    for ga in [a2(), dual_numbers_over_k()] {
        let s = DGModule::free(&ga.c, &[0]);
        let t = module_triple_check(&ga, &s).unwrap();
        assert!(t.round_trips(), "{:?}", t.round_trip_problems);
        assert_eq!(t.s_a.dim(), ga.a.dim());
        assert_eq!(t.s_b.dim(), ga.b.dim() + ga.n.dim());
    }
}

/// A representation `S_A --M--> S_B` of the A2 quiver, with interleaved basis.
fn quiver_module(ga: &GluedAlgebra, a_deg: &[i32], b_deg: &[i32], m: &[Vec<i64>]) -> DGModule {
    let f = q();
    let (p, r) = (a_deg.len(), b_deg.len());
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..p + r).collect();
        o.sort_by_key(|&i| (i % 2, i));
        o
    };
    let pos = |i: usize| order.iter().position(|&x| x == i).unwrap();
    let mut basis = vec![(String::new(), 0); p + r];
    for i in 0..p {
        basis[pos(i)] = (format!("a{i}"), a_deg[i]);
    }
    for j in 0..r {
        basis[pos(p + j)] = (format!("b{j}"), b_deg[j]);
    }
    let mut act = HashMap::new();
    for i in 0..p {
        act.insert((pos(i), 2), SparseVec::unit(pos(i), f));
        let img = SparseVec::from_pairs(
            (0..r)
                .filter(|&j| b_deg[j] == a_deg[i])
                .map(|j| (pos(p + j), f.int(m[j][i]))),
        );
        act.insert((pos(i), 1), img);
    }
    for j in 0..r {
        act.insert((pos(p + j), 0), SparseVec::unit(pos(p + j), f));
    }
    DGModule::from_parts(ga.c.clone(), basis, vec![SparseVec::new(); p + r], act).unwrap()
}

#[test]
fn b_modules_have_no_a_part() {
    let ga = a2();
    let s = quiver_module(&ga, &[], &[0, 1], &[vec![], vec![]]);
    let t = module_triple_check(&ga, &s).unwrap();
    assert_eq!(t.s_a.dim(), 0);
    assert!(t.phi.is_empty());
    assert!(t.round_trips());
}

#[test]
fn non_unital_modules_are_rejected() {
    let ga = a2();
    let s = DGModule::from_parts(ga.c.clone(), vec![("s".into(), 0)], vec![SparseVec::new()], HashMap::new()).unwrap();
    assert!(module_triple_check(&ga, &s).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn random_quiver_modules_round_trip(
        a_deg in prop::collection::vec(0..2i32, 0..4),
        b_deg in prop::collection::vec(0..2i32, 0..4),
        entries in prop::collection::vec(-2..3i64, 16),
    ) {
        let ga = a2();
        let m: Vec<Vec<i64>> = (0..b_deg.len())
            .map(|j| (0..a_deg.len()).map(|i| entries[j * 4 + i]).collect())
            .collect();
        let s = quiver_module(&ga, &a_deg, &b_deg, &m);
        prop_assert!(s.validate().is_valid());
        let t = module_triple_check(&ga, &s).unwrap();
        prop_assert!(t.round_trips(), "{:?}", t.round_trip_problems);
        prop_assert_eq!(t.s_a.dim(), a_deg.len());
        prop_assert_eq!(t.s_b.dim(), b_deg.len());
    }
}
