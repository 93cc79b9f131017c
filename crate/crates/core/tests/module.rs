use std::collections::BTreeMap;

use dgres_core::catalog::*;
use dgres_core::module::flat_complex;
use dgres_core::*;
use proptest::prelude::*;

fn q() -> Field {
    Field::Rational
}

fn w(lo: i32, hi: i32) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

#[test]
fn free_and_trivial_modules_validate() {
    let aug = koszul_cubic_aug(q());
    let a = aug.algebra();
    for shifts in [vec![0], vec![1], vec![-2, 3]] {
        let m = DGModule::free(a, &shifts);
        assert!(m.validate().is_valid(), "{:?}", m.validate());
        assert!(m.shift(1).validate().is_valid());
    }
    assert!(DGModule::trivial(&aug).validate().is_valid());
    assert!(DGModule::trivial(&cyclic_group_aug(Field::prime(3).unwrap(), 3)).validate().is_valid());
}

#[test]
fn broken_action_is_reported() {
    let a = truncated_polynomial(q(), 2, 0);
    let m = DGModule::from_fn(a, vec![("m".into(), 0)], vec![SparseVec::new()], |_, _| {
        SparseVec::unit(0, q())
    })
    .unwrap();
    let r = m.validate();
    assert!(r.has(ViolationKind::Associativity));
    assert!(!r.has(ViolationKind::Unit));
}

#[test]
fn hom_from_the_free_module_recovers_the_target() {
    let a = koszul_cubic(q()).unwrap();
    let free = DGModule::free(&a, &[0]);
    let h = hom_complex(&free, &free, w(-3, 3)).unwrap();
    let expected = a.complex().unwrap();
    for n in -1..=0 {
        assert_eq!(h.complex.dim(n), expected.dim(n), "degree {n}");
    }
    let hh = h.complex.cohomology(w(-3, 3)).unwrap().nonzero();
    assert_eq!(hh, BTreeMap::from([(-1, 2), (0, 2)]));
}

#[test]
fn hom_between_trivial_modules() {
    let aug = truncated_polynomial_aug(q(), 2);
    let k = DGModule::trivial(&aug);
    let free = DGModule::free(aug.algebra(), &[0]);
    let h = hom_complex(&k, &k, w(-1, 1)).unwrap();
    assert_eq!(h.complex.dim(0), Some(1));
    let h = hom_complex(&free, &k, w(-1, 1)).unwrap();
    assert_eq!(h.complex.dim(0), Some(1));
    let f = h.map(0, 0);
    assert!(f.check(&free, &k, true).is_empty());
    assert_eq!(h.coordinates(0, &f), Some(SparseVec::unit(0, q())));
    let h = hom_complex(&k, &free, w(-1, 1)).unwrap();
    assert_eq!(h.complex.dim(0), Some(1));
    assert!(h.map(0, 0).check(&k, &free, true).is_empty());
}

#[test]
fn cone_of_identity_is_acyclic() {
    let a = koszul_cubic(q()).unwrap();
    let m = DGModule::free(&a, &[0, 2]);
    let id = ModuleMap::new(0, Matrix::identity(q(), m.dim()));
    let c = cone(&id, &m, &m).unwrap();
    assert!(c.validate().is_valid());
    assert!(c.complex().unwrap().is_acyclic(w(-6, 6)).unwrap());
}

#[test]
fn cone_of_augmentation_detects_non_quasi_iso() {
    let aug = truncated_polynomial_aug(q(), 2);
    let free = DGModule::free(aug.algebra(), &[0]);
    let k = DGModule::trivial(&aug);
    let eps = ModuleMap::new(0, Matrix::from_i64_rows(q(), &[&[1, 0]]));
    let c = cone(&eps, &free, &k).unwrap();
    assert!(c.validate().is_valid());
    assert!(!c.complex().unwrap().is_acyclic(w(-3, 3)).unwrap());

    let cubic = koszul_cubic_aug(q());
    let free = DGModule::free(cubic.algebra(), &[0]);
    let k = DGModule::trivial(&cubic);
    let eps = ModuleMap::new(0, Matrix::from_i64_rows(q(), &[&[1, 0, 0, 0, 0, 0]]));
    let report = verify_quasi_iso(
        &free.complex().unwrap(),
        &k.complex().unwrap(),
        &eps.graded_map(&free, &k),
        w(-3, 3),
    )
    .unwrap();
    let acyclic = cone(&eps, &free, &k).unwrap().complex().unwrap().is_acyclic(w(-3, 3)).unwrap();
    assert_eq!(report.is_quasi_iso(), acyclic);
    assert!(!acyclic);
}

#[test]
fn non_closed_maps_have_no_cone() {
    let a = truncated_polynomial(q(), 2, 0);
    let m = DGModule::free(&a, &[0]);
    let not_linear = ModuleMap::new(0, Matrix::from_i64_rows(q(), &[&[1, 0], &[0, 0]]));
    assert!(!not_linear.check(&m, &m, true).is_empty());
    assert!(cone(&not_linear, &m, &m).is_err());
}

#[test]
fn tensor_over_the_algebra() {
    let aug = truncated_polynomial_aug(q(), 3);
    let a = aug.algebra();
    let free = DGModule::free(a, &[0]);
    let k_op = DGModule::trivial(&aug.opposite());
    let k = DGModule::trivial(&aug);
    let t = tensor_over(&free, &k_op, w(-2, 2)).unwrap();
    assert_eq!(t.complex.dims().values().sum::<usize>(), 1);
    let t = tensor_over(&k, &k_op, w(-2, 2)).unwrap();
    assert_eq!(t.complex.dim(0), Some(1));
    assert!(t.class(0, 0, 0).is_some());
    let free_op = DGModule::free(&a.opposite(), &[0]);
    let t = tensor_over(&free, &free_op, w(-2, 2)).unwrap();
    assert_eq!(t.complex.dim(0), Some(3));
    let a2 = DGModule::free(&a2_path(q()), &[0]);
    assert!(tensor_over(&a2, &a2, w(-1, 1)).is_err());
}

#[test]
fn tensor_over_respects_differentials() {
    let aug = koszul_cubic_aug(q());
    let free = DGModule::free(aug.algebra(), &[0]);
    let k_op = DGModule::trivial(&aug.opposite());
    let t = tensor_over(&free, &k_op, w(-3, 3)).unwrap();
    assert_eq!(t.complex.cohomology(w(-3, 3)).unwrap().nonzero(), BTreeMap::from([(0, 1)]));
}

#[test]
fn submodules_and_witnesses() {
    let a = truncated_polynomial(q(), 3, 0);
    let m = DGModule::free(&a, &[0]);
    let x = SparseVec::unit(1, q());
    let x2 = SparseVec::unit(2, q());
    let (sub, inc) = m.submodule(&[x.clone(), x2.clone()], vec!["x".into(), "x2".into()]).unwrap();
    assert!(sub.validate().is_valid());
    assert!(ModuleMap::new(0, inc).check(&sub, &m, true).is_empty());
    let err = m.submodule(&[x], vec!["x".into()]).unwrap_err();
    assert!(err.to_string().contains("x·x"), "{err}");
}

#[test]
fn bimodules_over_a2_and_the_diagonal() {
    let a = a2_path(q());
    let diag = diagonal(&a).unwrap();
    assert_eq!(diag.algebra().dim(), 9);
    assert!(diag.validate().is_valid());
    let ext = exterior(q(), -1);
    let diag = diagonal(&ext).unwrap();
    assert!(diag.validate().is_valid(), "{:?}", diag.validate());
    let cubic = koszul_cubic(q()).unwrap();
    assert!(diagonal(&cubic).unwrap().validate().is_valid());
}

#[test]
fn endomorphism_algebras() {
    let c = koszul_cubic(q()).unwrap().complex().unwrap();
    let e = end_algebra(&c).unwrap();
    assert_eq!(e.dim(), 36);
    assert!(e.validate().is_valid(), "{:?}", e.validate());
    let h = e.complex().unwrap().cohomology_in(-2..=2).unwrap().nonzero();
    assert_eq!(h, BTreeMap::from([(-1, 4), (0, 8), (1, 4)]));

    let acyclic = contractible_pair(q()).complex().unwrap();
    let e = end_algebra(&acyclic.restrict(w(-1, 0)).unwrap()).unwrap();
    assert!(e.validate().is_valid());
}

fn random_complex(field: Field, dims: &[usize], seed: &[i64]) -> Complex {
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for (n, &k) in dims.iter().enumerate() {
        for i in 0..k {
            names.push(format!("b{n}_{i}"));
            degrees.push(n as i32);
        }
    }
    let mut it = seed.iter().cycle();
    let mut d = vec![SparseVec::new(); names.len()];
    let mut start = 0;
    for n in 0..dims.len().saturating_sub(1) {
        let next = start + dims[n];
        if n == 0 {
            for col in d.iter_mut().skip(start).take(dims[n]) {
                *col = SparseVec::from_pairs(
                    (0..dims[1]).map(|r| (next + r, field.int(*it.next().unwrap()))),
                );
            }
        }
        start = next;
    }
    flat_complex(field, &names, &degrees, &d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_cohomology_over_the_ground_field(
        a in prop::collection::vec(0usize..3, 1..4),
        b in prop::collection::vec(0usize..3, 1..4),
        seed in prop::collection::vec(-2i64..3, 1..10),
    ) {
        let x = random_complex(q(), &a, &seed);
        let y = random_complex(q(), &b, &seed);
        let hs = hom_space(&x, &y).unwrap();
        let c = flat_complex(q(), &hs.names, &hs.degrees, &hs.d).unwrap();
        let window = DegreeWindow::new(-6, 6).unwrap();
        let hx = x.cohomology(DegreeWindow::new(-8, 8).unwrap()).unwrap().dims();
        let hy = y.cohomology(DegreeWindow::new(-8, 8).unwrap()).unwrap().dims();
        let hom = c.cohomology(window).unwrap().dims();
        for n in window.interior() {
            let expected: usize = hx.iter().map(|(p, dx)| dx * hy.get(&(p + n)).copied().unwrap_or(0)).sum();
            prop_assert_eq!(hom.get(&n).copied().unwrap_or(0), expected);
        }
    }
}
