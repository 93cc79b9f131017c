use std::collections::BTreeMap;

use dgres_core::catalog::*;
use dgres_core::*;

fn q() -> Field {
    Field::Rational
}

fn w(lo: i32, hi: i32) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn corpus() -> Vec<(&'static str, Augmentation)> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    vec![
        ("kx2", truncated_polynomial_aug(q(), 2)),
        ("kx5", truncated_polynomial_aug(q(), 5)),
        ("trunc2", truncated_tensor_aug(q(), 2)),
        ("z2", cyclic_group_aug(f2, 2)),
        ("z3", cyclic_group_aug(f3, 3)),
        ("cubic", koszul_cubic_aug(q())),
        ("exterior", Augmentation::standard(exterior(q(), -1)).unwrap()),
        ("pair", Augmentation::standard(contractible_pair(q())).unwrap()),
        ("idempotent", idempotent_aug(q())),
    ]
}

#[test]
fn word_counts() {
    let b = BarCoalgebra::new(&truncated_polynomial_aug(q(), 2), w(-4, 0)).unwrap();
    assert_eq!(b.dims(), BTreeMap::from([(-4, 1), (-3, 1), (-2, 1), (-1, 1), (0, 1)]));
    assert!(b.complex().d(-2).unwrap().is_zero());

    let b = BarCoalgebra::new(&truncated_tensor_aug(q(), 2), w(-3, 0)).unwrap();
    assert_eq!(b.dims(), BTreeMap::from([(-3, 8), (-2, 4), (-1, 2), (0, 1)]));
    assert!((-3..0).all(|n| b.complex().d(n).unwrap().is_zero()));

    let b = BarCoalgebra::new(&truncated_polynomial_aug(q(), 5), w(-2, 0)).unwrap();
    assert_eq!(b.dims(), BTreeMap::from([(-2, 16), (-1, 4), (0, 1)]));
    let xx = b.words(-2).iter().position(|u| u == &vec![1, 1]).unwrap();
    let dxx = b.complex().apply_d(-2, &SparseVec::unit(xx, q()));
    let x2 = b.words(-1).iter().position(|u| u == &vec![2]).unwrap();
    assert_eq!(dxx.nnz(), 1);
    assert!(dxx.get(x2).is_some());
}

#[test]
fn positive_letters_are_not_representable() {
    let aug = Augmentation::standard(exterior(q(), 1)).unwrap();
    assert!(matches!(BarCoalgebra::new(&aug, w(-2, 0)), Err(Error::NotRepresentable(_))));
}

#[test]
fn ground_field_bar_is_k() {
    let b = BarCoalgebra::new(&Augmentation::ground(q()), w(-3, 1)).unwrap();
    assert_eq!(b.complex().total_dim(), 1);
    assert_eq!(b.complex().cohomology(w(-3, 1)).unwrap().nonzero(), BTreeMap::from([(0, 1)]));
}

#[test]
fn bar_is_a_coalgebra_and_square_zero() {
    for (name, aug) in corpus() {
        let b = BarCoalgebra::new(&aug, w(-3, 0)).unwrap();
        b.complex().check_square_zero().unwrap();
        assert!(b.check_coalgebra(), "{name}");
    }
}

#[test]
fn universal_cochain_is_maurer_cartan() {
    for (name, aug) in corpus() {
        let b = BarCoalgebra::new(&aug, w(-4, 0)).unwrap();
        let tau = universal_twisting_cochain(&b);
        let r = check_maurer_cartan(&tau, w(-4, 0));
        assert!(r.holds, "{name}: {:?}", r.violation);
        assert!(check_maurer_cartan(&TwistingCochain::zero(&b), w(-4, 0)).holds);
    }
}

#[test]
fn universal_cochain_values() {
    let b = BarCoalgebra::new(&truncated_polynomial_aug(q(), 5), w(-3, 0)).unwrap();
    let tau = universal_twisting_cochain(&b);
    assert_eq!(tau.eval(&[1]), SparseVec::unit(1, q()));
    assert!(tau.eval(&[1, 1]).is_zero());
    assert!(tau.eval(&[]).is_zero());
}

#[test]
fn perturbed_cochain_fails() {
    let b = BarCoalgebra::new(&truncated_polynomial_aug(q(), 5), w(-3, 0)).unwrap();
    let tau = universal_twisting_cochain(&b);
    let bent = tau
        .with_value(vec![1], SparseVec::from_pairs([(1, q().one()), (2, q().one())]))
        .unwrap();
    let r = check_maurer_cartan(&bent, w(-3, 0));
    assert!(!r.holds);
    let (word, value) = r.violation.unwrap();
    assert_eq!(word, "[x|x]");
    assert_eq!(value, "-2·x^3 - x^4");
}

#[test]
fn bar_cohomology_of_dual_numbers() {
    let b = BarCoalgebra::new(&truncated_polynomial_aug(q(), 2), w(-9, 0)).unwrap();
    let h = b.complex().cohomology_in(-8..=0).unwrap().dims();
    assert!(h.values().all(|&d| d == 1));
}

#[test]
fn koszul_dual_of_truncated_tensor_algebra() {
    let kd = koszul_dual(&truncated_tensor_aug(q(), 2), 5).unwrap();
    assert_eq!(
        kd.dims(),
        BTreeMap::from([(0, 1), (1, 2), (2, 4), (3, 8), (4, 16), (5, 32)])
    );
    let a = &kd.algebra;
    assert!((0..a.dim()).all(|i| a.d_basis(i).is_zero()));
    assert!(a.validate().is_valid());
    // rescaling u' by (-1)^{n(n-1)/2}, n = length, turns the product into concatenation
    let f = q();
    let scale = |i: usize| {
        let n = kd.word(i).len() as i64;
        f.sign(n * (n - 1) / 2)
    };
    let basis: Vec<SparseVec> = (0..a.dim()).map(|i| SparseVec::single(i, scale(i))).collect();
    let t = a.change_basis(&basis, a.names().to_vec()).unwrap();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut uv = kd.word(i).clone();
            uv.extend_from_slice(kd.word(j));
            let expected = kd.index_of(&uv).map(|k| SparseVec::unit(k, f)).unwrap_or_default();
            assert_eq!(t.mul_basis(i, j), &expected);
        }
    }
}

#[test]
fn koszul_dual_small_cases() {
    let kd = koszul_dual(&Augmentation::ground(q()), 4).unwrap();
    assert_eq!(kd.algebra.dim(), 1);
    let kd = koszul_dual(&truncated_polynomial_aug(q(), 2), 6).unwrap();
    assert!(kd.dims().values().all(|&d| d == 1));
    let y = SparseVec::unit(1, q());
    let mut p = y.clone();
    for _ in 2..=6 {
        p = kd.algebra.mul(&p, &y);
        assert!(!p.is_zero());
    }
    assert!(kd.require_degree(7).is_err());
}

#[test]
fn koszul_duals_validate() {
    for (name, aug) in corpus() {
        let kd = koszul_dual(&aug, 4).unwrap();
        let r = kd.algebra.validate();
        assert!(r.is_valid(), "{name}: {:?}", r.violations.first());
    }
}

#[test]
fn sigma_on_words() {
    let b = BarCoalgebra::new(&truncated_polynomial_aug(q(), 5), w(-4, 0)).unwrap();
    let (r, s) = dgres_core::koszul::sigma_word(b.algebra(), &[1]);
    assert_eq!((r, s), (vec![1], -q().one()));
    for (name, aug) in corpus() {
        let b = BarCoalgebra::new(&aug, w(-4, 0)).unwrap();
        let rep = sigma_iso(&b).unwrap();
        assert!(rep.chain_map, "{name}: chain map");
        assert!(rep.invertible && rep.comultiplicative && rep.involutive, "{name}");
    }
}

#[test]
fn dual_sigma_is_an_algebra_isomorphism() {
    for (name, aug) in corpus() {
        let h = dual_sigma(&aug, 4).unwrap();
        let problems = h.check(true);
        assert!(problems.is_empty(), "{name}: {:?}", &problems[..problems.len().min(3)]);
        assert_eq!(h.matrix.rank(), h.matrix.cols());
    }
}
