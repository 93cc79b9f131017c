use dgres_core::zigzag::{zigzag_examples, ZigzagInstance};
use dgres_core::*;

fn run(i: &ZigzagInstance) -> ZigzagReport {
    verify_zigzag_hypotheses(&i.f, &i.x, &i.y, &i.phi).unwrap()
}

#[test]
fn zigzag_algebras_validate() {
    for i in zigzag_examples(Field::Rational).unwrap() {
        let z = zigzag_algebra(&i.f, &i.x, &i.y, &i.phi).unwrap();
        let r = z.algebra.validate();
        assert!(r.is_valid(), "{}: {:?}", i.name, r.violations.first());
        assert!(z.p_a.check(true).is_empty(), "{}: {:?}", i.name, z.p_a.check(true));
        assert!(z.p_y.check(true).is_empty(), "{}: {:?}", i.name, z.p_y.check(true));
    }
}

#[test]
fn projections_are_quasi_isomorphisms_under_the_hypotheses() {
    let all = zigzag_examples(Field::Rational).unwrap();
    let mut passing = 0;
    for i in &all {
        let r = run(i);
        if r.hypotheses.all_hold() {
            passing += 1;
            assert!(r.projections_quasi_iso(), "{}", i.name);
        }
    }
    assert_eq!(passing, 11);
}

#[test]
fn failing_hypotheses_are_reported() {
    let all = zigzag_examples(Field::Rational).unwrap();
    let r = run(&all[11]);
    assert_eq!(r.hypotheses.get("End(Y) → Hom(X, Y) quasi-isomorphism"), Some(false));
    let r = run(&all[12]);
    assert_eq!(r.hypotheses.get("A → Hom(X, Y) quasi-isomorphism"), Some(false));
    assert!(!r.p_y.is_quasi_iso());
    for i in &all[13..] {
        assert_eq!(run(i).hypotheses.get("A → Hom(X, Y) quasi-isomorphism"), Some(false));
    }
}

#[test]
fn zigzag_dimensions() {
    let all = zigzag_examples(Field::Rational).unwrap();
    let z = zigzag_algebra(&all[3].f, &all[3].x, &all[3].y, &all[3].phi).unwrap();
    // End(Y) 3x3, Hom(X[1], Y) 3x1, A = k
    assert_eq!(z.summands, [9, 3, 1]);
    assert_eq!(z.algebra.dim(), 13);
}

#[test]
fn rejects_non_chain_maps_and_bad_actions() {
    let all = zigzag_examples(Field::Rational).unwrap();
    let padded = &all[10].x;
    let point = &all[0].x;
    let q = Field::Rational;
    assert!(dgres_core::zigzag::flat_map(
        padded,
        padded,
        vec![SparseVec::unit(2, q), SparseVec::new(), SparseVec::new()],
    )
    .is_err());
    // b ↦ e is not a chain map since d a = b
    let bad = dgres_core::zigzag::flat_map(
        padded,
        padded,
        vec![SparseVec::new(), SparseVec::unit(2, q), SparseVec::new()],
    )
    .unwrap();
    assert!(zigzag_algebra(&bad, padded, padded, &all[10].phi).is_err());
    assert!(zigzag_algebra(&all[0].f, point, point, &all[10].phi).is_err());
}
