use std::collections::BTreeMap;

use dgres_core::catalog::*;
use dgres_core::twisted::{check_algebra_action, dual_suffix_action, left_action, right_action};
use dgres_core::*;

fn q() -> Field {
    Field::Rational
}

fn w(lo: i32, hi: i32) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn resolvable() -> Vec<(&'static str, Augmentation)> {
    vec![
        ("kx2", truncated_polynomial_aug(q(), 2)),
        ("kx5", truncated_polynomial_aug(q(), 5)),
        ("trunc2", truncated_tensor_aug(q(), 2)),
        ("z2", cyclic_group_aug(Field::prime(2).unwrap(), 2)),
        ("z3", cyclic_group_aug(Field::prime(3).unwrap(), 3)),
        ("cubic", koszul_cubic_aug(q())),
    ]
}

fn point() -> BTreeMap<i32, usize> {
    BTreeMap::from([(0, 1)])
}

#[test]
fn bar_complexes_resolve_the_ground_field() {
    for (name, aug) in resolvable() {
        let win = if name == "kx5" { w(-3, 1) } else { w(-4, 1) };
        let r = twisted_tensor_right(&aug, win).unwrap();
        assert_eq!(r.complex.cohomology(win).unwrap().nonzero(), point(), "{name} right");
        let l = twisted_tensor_left(&aug, win).unwrap();
        assert_eq!(l.complex.cohomology(win).unwrap().nonzero(), point(), "{name} left");
    }
}

#[test]
fn ground_field_cases() {
    let k = Augmentation::ground(q());
    let r = twisted_tensor_right(&k, w(-2, 2)).unwrap();
    assert_eq!(r.complex.total_dim(), 1);
    assert!(r.complex.zero_below() && r.complex.zero_above());
    assert_eq!(twisted_tensor_left(&k, w(-2, 2)).unwrap().complex.total_dim(), 1);
    assert_eq!(two_sided_bar(&k, w(-2, 2)).unwrap().complex.total_dim(), 1);
    let nu = nu_and_dual(&k, w(-2, 2)).unwrap();
    assert!(nu.holds());
    let ext = ext_comparison(&k, w(-2, 2)).unwrap();
    assert_eq!(ext.ext_dims.get(&0), Some(&1));
    assert!(ext.holds());
}

#[test]
fn two_sided_bar_counts() {
    let t = two_sided_bar(&truncated_polynomial_aug(q(), 2), w(-3, 1)).unwrap();
    // one word per degree: (i, j) word lengths with a ∈ {1, x}
    let expected = |n: i32| -> usize {
        let n = (-n) as usize;
        2 * (n + 1)
    };
    for n in -3..=0 {
        assert_eq!(t.complex.dim(n), Some(expected(n)), "degree {n}");
    }
    t.complex.check_square_zero().unwrap();
}

#[test]
fn nu_is_a_quasi_isomorphism() {
    for (name, aug, win) in [
        ("kx2", truncated_polynomial_aug(q(), 2), w(-3, 3)),
        ("trunc2", truncated_tensor_aug(q(), 2), w(-3, 1)),
        ("kx5", truncated_polynomial_aug(q(), 5), w(-2, 1)),
        ("cubic", koszul_cubic_aug(q()), w(-3, 1)),
    ] {
        let r = nu_and_dual(&aug, win).unwrap();
        assert!(r.retraction_identity, "{name}");
        assert!(r.nu_chain_map, "{name}");
        assert!(r.nu_quasi_iso.is_quasi_iso(), "{name}: {:?}", r.nu_quasi_iso.failures);
        assert!(r.nu_star_quasi_iso.is_quasi_iso(), "{name}");
        assert!(r.comodule_compatible, "{name}");
    }
}

#[test]
fn nu_needs_the_hypotheses() {
    assert!(matches!(
        nu_and_dual(&idempotent_aug(q()), w(-2, 2)),
        Err(Error::HypothesesUnmet(_))
    ));
}

#[test]
fn algebra_actions_satisfy_leibniz() {
    for (name, aug) in resolvable() {
        let norm = aug.normalize().unwrap();
        let a = norm.algebra().clone();
        let r = twisted_tensor_right(&norm, w(-3, 1)).unwrap();
        let problems = check_algebra_action(&r, &a, |k, b| right_action(&r, k, b));
        assert!(problems.is_empty(), "{name}: {:?}", &problems[..problems.len().min(3)]);
        let l = twisted_tensor_left(&norm, w(-3, 1)).unwrap();
        let op = a.opposite();
        let f = a.field();
        let problems = check_algebra_action(&l, &op, |k, b| {
            let deg = a.degree(k.0) + norm_word_degree(&l, &k.1);
            let s = f.sign((a.degree(b) * deg) as i64);
            left_action(&l, b, k).into_iter().map(|(k, c)| (k, &s * &c)).collect()
        });
        assert!(problems.is_empty(), "{name}: {:?}", &problems[..problems.len().min(3)]);
    }
}

fn norm_word_degree(t: &Twisted<(usize, Word)>, u: &[usize]) -> i32 {
    t.bar.word_degree(u)
}

#[test]
fn dual_acts_on_the_left_twisted_complex() {
    for (name, aug) in resolvable() {
        let norm = aug.normalize().unwrap();
        let l = twisted_tensor_left(&norm, w(-3, 1)).unwrap();
        let kd = koszul_dual(&norm, 4).unwrap();
        let op = kd.algebra.opposite();
        let problems = check_algebra_action(&l, &op, |k, i| dual_suffix_action(&kd, k, i));
        assert!(problems.is_empty(), "{name}: {:?}", &problems[..problems.len().min(3)]);
    }
}

#[test]
fn koszul_functor_examples() {
    let aug = truncated_polynomial_aug(q(), 2);
    let a = aug.algebra();
    let win = w(-5, 2);
    let free = DGModule::free(a, &[0]);
    let ka = koszul_functor(&aug, &free, win).unwrap();
    assert_eq!(ka.complex.cohomology(win).unwrap().nonzero(), point());

    let two = DGModule::free(a, &[0, 1]);
    let k2 = koszul_functor(&aug, &two, win).unwrap();
    assert_eq!(
        k2.complex.cohomology(win).unwrap().nonzero(),
        BTreeMap::from([(-1, 1), (0, 1)])
    );

    let k = DGModule::trivial(&aug);
    let kk = koszul_functor(&aug, &k, win).unwrap();
    let h = kk.complex.cohomology(win).unwrap().dims();
    assert!(win.interior().all(|n| h[&n] == usize::from(n <= 0)));
}

#[test]
fn koszul_functor_modules_validate() {
    let aug = truncated_polynomial_aug(q(), 3);
    for m in [DGModule::free(aug.algebra(), &[0]), DGModule::trivial(&aug)] {
        let (km, kd) = koszul_functor_module(&aug, &m, -3).unwrap();
        assert_eq!(km.algebra(), &kd.algebra.opposite());
        let r = km.validate();
        assert!(r.is_valid(), "{:?}", r.violations.first());
    }
    let cubic = koszul_cubic_aug(q());
    let (km, _) = koszul_functor_module(&cubic, &DGModule::free(cubic.algebra(), &[0]), -2).unwrap();
    let r = km.validate();
    assert!(r.is_valid(), "{:?}", r.violations.first());
}

#[test]
fn ext_comparison_matches_the_algebra() {
    let ext = ext_comparison(&truncated_polynomial_aug(q(), 2), w(-3, 3)).unwrap();
    assert!(ext.holds(), "{:?}", ext.mismatches);
    assert_eq!(ext.ext_dims.values().sum::<usize>(), 2);
    assert_eq!(ext.ext_dims.get(&0), Some(&2));

    let ext = ext_comparison(&truncated_tensor_aug(q(), 2), w(-2, 2)).unwrap();
    assert!(ext.holds());
    assert_eq!(ext.ext_dims.get(&0), Some(&3));

    let ext = ext_comparison(&koszul_cubic_aug(q()), w(-3, 2)).unwrap();
    assert!(ext.holds(), "{:?}", ext.mismatches);
    assert_eq!(ext.ext_dims.get(&-1), Some(&2));

    assert!(matches!(
        ext_comparison(&idempotent_aug(q()), w(-2, 2)),
        Err(Error::HypothesesUnmet(_))
    ));
}
