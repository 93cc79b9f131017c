use std::time::Instant;

use dgres_core::catalog::*;
use dgres_core::gluing::ground_bimodule;
use dgres_core::resolve::CHECKS;
use dgres_core::smooth::{a2_resolution, free_rank_one, ground_resolution};
use dgres_core::*;

fn q() -> Field {
    Field::Rational
}

fn w(lo: i32, hi: i32) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

#[test]
fn pipeline_passes_on_the_corpus() {
    for (name, aug, win) in [
        ("kx2", truncated_polynomial_aug(q(), 2), w(-6, 4)),
        ("kx5", truncated_polynomial_aug(q(), 5), w(-3, 2)),
        ("trunc2", truncated_tensor_aug(q(), 2), w(-4, 2)),
        ("z2", cyclic_group_aug(Field::prime(2).unwrap(), 2), w(-5, 2)),
        ("z3", cyclic_group_aug(Field::prime(3).unwrap(), 3), w(-4, 2)),
        ("cubic", koszul_cubic_aug(q()), w(-3, 2)),
    ] {
        let t = Instant::now();
        let r = resolution_report(&aug, win).unwrap();
        assert!(r.passed(), "{name}: {}", r.verdict());
        assert_eq!(r.checks.len(), CHECKS.len());
        assert_eq!(r.verdict(), format!("categorical-resolution evidence complete on window {win}"));
        eprintln!("{name}: {:?}", t.elapsed());
    }
}

#[test]
fn pipeline_reports_unmet_hypotheses() {
    let r = resolution_report(&idempotent_aug(q()), w(-2, 2)).unwrap();
    assert!(!r.passed());
    assert!(r.checks.iter().all(|c| !c.passed && c.detail.starts_with("skipped")));
    assert!(r.verdict().starts_with("failed: hypothesis"));
}

#[test]
fn path_algebra_glued_from_points_is_smooth() {
    let k = DGAlgebra::ground(q());
    let one = [q().one()];
    let n = ground_bimodule(&k, &one, &k, &one).unwrap();
    let ga = glue(&k, &k, &n).unwrap();
    let cert_n = free_rank_one(&n, SparseVec::unit(0, q()));
    let g = ground_resolution(q()).unwrap();
    let s = glued_smoothness(&ga, &g, &g, &cert_n, w(-2, 2)).unwrap();
    assert!(s.verified());
    assert_eq!(s.verdict(), "smooth (glued)");

    // the glued algebra's own diagonal has a direct certificate as well
    let path = a2_path(q());
    assert!((0..3).all(|i| (0..3).all(|j| ga.c.mul_basis(i, j) == path.mul_basis(i, j))));
    assert!(verify_free_resolution(&a2_resolution(q()).unwrap(), w(-3, 2)).unwrap().certified());
}

#[test]
fn glued_smoothness_needs_every_certificate() {
    let k = DGAlgebra::ground(q());
    let one = [q().one()];
    let n = ground_bimodule(&k, &one, &k, &one).unwrap();
    let ga = glue(&k, &k, &n).unwrap();
    let bad_n = free_rank_one(&n, SparseVec::new());
    let g = ground_resolution(q()).unwrap();
    let s = glued_smoothness(&ga, &g, &g, &bad_n, w(-2, 2)).unwrap();
    assert!(!s.verified());
    assert!(s.verdict().contains("N: not certified"));

    let kx2 = truncated_polynomial(q(), 2, 0);
    let ga2 = glue(&kx2, &k, &ground_bimodule(&kx2, &[q().one(), q().zero()], &k, &one).unwrap()).unwrap();
    assert!(glued_smoothness(&ga2, &g, &g, &bad_n, w(-2, 2)).is_err());
}
