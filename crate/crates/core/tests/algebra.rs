use dgres_core::catalog::*;
use dgres_core::{Augmentation, DGAlgebra, Field, Matrix, Nilpotency, SparseVec, ViolationKind};

const Q: Field = Field::Rational;

#[test]
fn catalog_algebras_validate() {
    let algebras: Vec<DGAlgebra> = vec![
        DGAlgebra::ground(Q),
        truncated_polynomial(Q, 2, 0),
        truncated_polynomial(Q, 5, 0),
        truncated_polynomial(Q, 4, -2),
        truncated_tensor(Q, 2, 0),
        cyclic_group(Field::Prime(3), 3),
        a2_path(Q),
        exterior(Q, 1),
        exterior(Q, -1),
        koszul_cubic(Q).unwrap(),
        contractible_pair(Q),
        idempotent_aug(Q).algebra().clone(),
    ];
    for a in algebras {
        let r = a.validate();
        assert!(r.is_valid(), "{:?}: {:?}", a.names(), r.violations);
        assert!(a.opposite().validate().is_valid());
        assert_eq!(a.opposite().opposite(), a);
    }
}

#[test]
fn differential_hitting_unit_is_rejected() {
    let a = truncated_polynomial(Q, 2, 0);
    let bad = a.with_differential(vec![SparseVec::new(), SparseVec::unit(0, Q)]);
    assert!(matches!(bad, Err(dgres_core::Error::NotHomogeneous(_))));
}

#[test]
fn leibniz_violation_is_reported() {
    // k[x]/x³ with |x| = -1 and dx = 1: d(x·x²) = 0 but (dx)x² - x·d(x²) = x².
    let base = truncated_polynomial(Q, 3, -1);
    let d = vec![SparseVec::new(), SparseVec::unit(0, Q), SparseVec::new()];
    let bad = base.with_differential(d).unwrap();
    let r = bad.validate();
    assert!(r.has(ViolationKind::Leibniz), "{:?}", r.violations);
    assert!(r.violations.iter().all(|v| !v.tuple.is_empty()));
}

#[test]
fn opposite_of_a2_is_transpose() {
    let a = a2_path(Q);
    let op = a.opposite();
    assert!(op.validate().is_valid());
    // n·eB = n in A, so eB·n = n in the opposite.
    assert_eq!(op.mul_basis(0, 1), &SparseVec::unit(1, Q));
    assert!(op.mul_basis(1, 0).is_zero());
}

#[test]
fn tensor_dimensions_and_validity() {
    let a = truncated_polynomial(Q, 2, 0);
    let t = a.tensor(&a).unwrap();
    assert_eq!(t.dim(), 4);
    assert!(t.validate().is_valid());
    let a2 = a2_path(Q);
    let env = a2.opposite().tensor(&a2).unwrap();
    assert_eq!(env.dim(), 9);
    assert!(env.validate().is_valid());
    let e = exterior(Q, 1);
    let ee = e.tensor(&e).unwrap();
    assert!(ee.validate().is_valid());
    let k = DGAlgebra::ground(Q);
    let ak = a.tensor(&k).unwrap();
    assert_eq!(ak.dim(), 2);
    assert_eq!(ak.mul_basis(1, 1), a.mul_basis(1, 1));
}

#[test]
fn signed_swap_identifies_opposite_tensor() {
    let a = exterior(Q, 1);
    let b = koszul_cubic(Q).unwrap();
    let lhs = a.tensor(&b).unwrap().opposite();
    let rhs = b.opposite().tensor(&a.opposite()).unwrap();
    let (na, nb) = (a.dim(), b.dim());
    let mut cols = vec![SparseVec::new(); na * nb];
    for i in 0..na {
        for j in 0..nb {
            let s = Q.sign((a.degree(i) * b.degree(j)) as i64);
            cols[i * nb + j] = SparseVec::single(j * na + i, s);
        }
    }
    let m = Matrix::from_columns(Q, na * nb, cols).unwrap();
    let hom = dgres_core::DGAlgebraHom::new(lhs, rhs, m).unwrap();
    assert!(hom.check(true).is_empty(), "{:?}", hom.check(true));
}

#[test]
fn nilpotency_indices() {
    assert_eq!(truncated_polynomial_aug(Q, 2).nilpotency_index(None), Nilpotency::Index(2));
    assert_eq!(truncated_polynomial_aug(Q, 5).nilpotency_index(None), Nilpotency::Index(5));
    assert_eq!(
        truncated_polynomial_aug(Q, 10).nilpotency_index(Some(4)),
        Nilpotency::NotWithin(4)
    );
    assert!(!idempotent_aug(Q).nilpotency_index(None).is_nilpotent());
}

#[test]
fn augmentation_ideal_of_group_algebra() {
    let f = Field::Prime(2);
    let aug = cyclic_group_aug(f, 2);
    let ideal = aug.augmentation_ideal();
    assert_eq!(ideal.dim(), 1);
    let norm = aug.normalize().unwrap();
    assert!(norm.is_normalized());
    assert_eq!(norm.algebra().names(), &["1".to_string(), "g-1".to_string()]);
    assert!(norm.algebra().validate().is_valid());
    assert_eq!(norm.nilpotency_index(None), Nilpotency::Index(2));
}

#[test]
fn augmentation_must_be_multiplicative() {
    let a = a2_path(Q);
    // e_A + e_B = 1 forces ε(e_A) + ε(e_B) = 1; the map onto e_B works, and the sum map does not.
    assert!(Augmentation::new(a.clone(), vec![Q.one(), Q.zero(), Q.zero()]).is_ok());
    assert!(Augmentation::new(a, vec![Q.one(), Q.one(), Q.zero()]).is_err());
}

#[test]
fn hypothesis_reports() {
    let r = truncated_polynomial_aug(Q, 2).resolution_hypotheses();
    assert!(r.all_hold());
    let pos = Augmentation::standard(exterior(Q, 1)).unwrap();
    assert_eq!(pos.resolution_hypotheses().get("concentrated in degrees ≤ 0"), Some(false));
    assert!(pos.connective_hypotheses().all_hold());
    assert!(truncated_tensor_aug(Q, 2).resolution_hypotheses().all_hold());
    let l = truncated_polynomial_aug(Q, 2).connective_hypotheses();
    assert_eq!(l.get("A⁰ = k"), Some(false));
    assert!(Augmentation::ground(Q).connective_hypotheses().all_hold());
}

#[test]
fn underlying_complex_of_koszul_cubic() {
    let a = koszul_cubic(Q).unwrap();
    let c = a.complex().unwrap();
    let h = c.cohomology_in(-1..=0).unwrap();
    assert_eq!(h.dims().get(&0), Some(&2));
    assert_eq!(h.dims().get(&-1), Some(&2));
}
