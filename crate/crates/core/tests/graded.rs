use std::collections::BTreeMap;

use dgres_core::{
    verify_quasi_iso, Complex, DegreeWindow, Error, Field, GradedMap, GradedSpace, Matrix,
};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn w(lo: i32, hi: i32) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

/// `k --id--> k` in degrees 0, 1.
fn identity_cone() -> Complex {
    let mut s = GradedSpace::new();
    s.push(0, "a");
    s.push(1, "b");
    let mut d = BTreeMap::new();
    d.insert(0, Matrix::identity(Q, 1));
    Complex::finite(Q, s, d).unwrap()
}

/// Three-term complex with random-ish integer differentials satisfying d² = 0.
fn three_term(a: &[i64], b: &[i64]) -> Complex {
    // d0: k^1 -> k^2 given by a, d1: k^2 -> k^1 given by b with b·a = 0 after projection.
    let mut s = GradedSpace::new();
    s.push(-1, "u");
    s.push(0, "v1");
    s.push(0, "v2");
    s.push(1, "w");
    let d0 = Matrix::from_i64_rows(Q, &[&[a[0]], &[a[1]]]);
    let d1 = Matrix::from_i64_rows(Q, &[&[b[0] * a[1], -b[0] * a[0]]]);
    let mut d = BTreeMap::new();
    d.insert(-1, d0);
    d.insert(0, d1);
    Complex::finite(Q, s, d).unwrap()
}

#[test]
fn point_cohomology() {
    let k = Complex::concentrated(Q, 0, 1);
    let h = k.cohomology(w(-2, 2)).unwrap();
    assert_eq!(h.nonzero(), BTreeMap::from([(0, 1)]));
    assert!(identity_cone().is_acyclic(w(-1, 2)).unwrap());
    assert!(matches!(
        k.cohomology(w(0, 1)),
        Err(Error::WindowTooSmall { .. })
    ));
}

#[test]
fn unknown_degrees_are_refused() {
    let mut s = GradedSpace::new();
    s.push(0, "a");
    let c = Complex::new(Q, w(0, 0), s, BTreeMap::new(), false, true).unwrap();
    assert!(matches!(
        c.cohomology(w(-1, 1)),
        Err(Error::WindowInsufficient(_))
    ));
}

#[test]
fn square_zero_is_enforced() {
    let mut s = GradedSpace::new();
    s.push(0, "a");
    s.push(1, "b");
    s.push(2, "c");
    let mut d = BTreeMap::new();
    d.insert(0, Matrix::identity(Q, 1));
    d.insert(1, Matrix::identity(Q, 1));
    assert!(matches!(
        Complex::finite(Q, s, d),
        Err(Error::DifferentialNotSquareZero { degree: 0 })
    ));
}

#[test]
fn shift_and_dual() {
    let k = Complex::concentrated(Q, 0, 1);
    assert_eq!(k.shift(1).dims(), BTreeMap::from([(-1, 1)]));
    let c = identity_cone();
    assert_eq!(c.shift(1).shift(-1), c);
    assert_eq!(c.shift(3), c.shift(1).shift(2));
    let kd = Complex::concentrated(Q, -3, 1).graded_dual();
    assert_eq!(kd.dims(), BTreeMap::from([(3, 1)]));
    let dd = c.graded_dual().graded_dual();
    assert_eq!(dd.dims(), c.dims());
    let f = c.bidual_map();
    assert!(verify_quasi_iso(&c, &dd, &f, w(-1, 2)).unwrap().is_quasi_iso());
}

#[test]
fn tensor_counts_and_unit() {
    let mut s = GradedSpace::new();
    s.push(0, "1");
    s.push(-1, "e");
    let c = Complex::finite(Q, s, BTreeMap::new()).unwrap();
    let t = c.tensor(&c, w(-2, 0)).unwrap();
    assert_eq!(t.dims(), BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]));
    let k = Complex::concentrated(Q, 0, 1);
    let kc = k.tensor(&identity_cone(), w(0, 1)).unwrap();
    assert_eq!(kc.dims(), identity_cone().dims());
    assert_eq!(kc.d(0), identity_cone().d(0));
}

#[test]
fn quasi_iso_examples() {
    let k = Complex::concentrated(Q, 0, 1);
    let id = GradedMap::identity(&k);
    assert!(verify_quasi_iso(&k, &k, &id, w(-1, 1)).unwrap().is_quasi_iso());
    let zero = GradedMap::zero();
    let r = verify_quasi_iso(&k, &k, &zero, w(-1, 1)).unwrap();
    assert!(!r.is_quasi_iso());
    assert_eq!(r.failures, vec![0]);
}

#[test]
fn non_chain_map_is_reported() {
    let c = identity_cone();
    let mut f = GradedMap::new(0);
    f.set_block(0, Matrix::identity(Q, 1));
    assert!(matches!(
        verify_quasi_iso(&c, &c, &f, w(-1, 2)),
        Err(Error::NotChainMap { degree: 0 })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_moves_cohomology(a0 in -3i64..4, a1 in -3i64..4, b in -3i64..4, n in -3i32..4) {
        let c = three_term(&[a0, a1], &[b]);
        let h = c.cohomology(w(-2, 2)).unwrap().dims();
        let hs = c.shift(n).cohomology(w(-2 - n, 2 - n)).unwrap().dims();
        for deg in -1..=1 {
            prop_assert_eq!(h[&deg], hs[&(deg - n)]);
        }
    }

    #[test]
    fn kunneth_dimensions(a0 in -2i64..3, a1 in -2i64..3, b in -2i64..3, c0 in -2i64..3, c1 in -2i64..3) {
        let x = three_term(&[a0, a1], &[b]);
        let y = three_term(&[c0, c1], &[1]);
        let t = x.tensor(&y, w(-3, 3)).unwrap();
        let hx = x.cohomology(w(-2, 2)).unwrap().dims();
        let hy = y.cohomology(w(-2, 2)).unwrap().dims();
        let ht = t.cohomology(w(-3, 3)).unwrap().dims();
        for n in -2..=2 {
            let expected: usize = (-1..=1)
                .filter(|p| (-1..=1).contains(&(n - p)))
                .map(|p| hx[&p] * hy[&(n - p)])
                .sum();
            prop_assert_eq!(ht[&n], expected);
        }
    }

    #[test]
    fn dual_preserves_cohomology(a0 in -3i64..4, a1 in -3i64..4, b in -3i64..4) {
        let c = three_term(&[a0, a1], &[b]);
        let h = c.cohomology(w(-2, 2)).unwrap().dims();
        let hd = c.graded_dual().cohomology(w(-2, 2)).unwrap().dims();
        for deg in -1..=1 {
            prop_assert_eq!(h[&deg], hd[&(-deg)]);
        }
    }
}
