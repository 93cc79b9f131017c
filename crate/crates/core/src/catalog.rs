//! Small algebras used throughout the tests, samples and reports.

use crate::algebra::{Augmentation, DGAlgebra};
use crate::error::Result;
use crate::linalg::SparseVec;
use crate::scalar::Field;

/// `k[x]/x^n` with `x` in degree `degree`; basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(field: Field, n: usize, degree: i32) -> DGAlgebra {
    assert!(n >= 1);
    let basis = (0..n)
        .map(|i| {
            let name = match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            (name, degree * i as i32)
        })
        .collect();
    DGAlgebra::from_fn(
        field,
        basis,
        SparseVec::unit(0, field),
        vec![SparseVec::new(); n],
        |i, j| {
            if i + j < n {
                SparseVec::unit(i + j, field)
            } else {
                SparseVec::new()
            }
        },
    )
    .expect("truncated polynomial algebra")
}

pub fn truncated_polynomial_aug(field: Field, n: usize) -> Augmentation {
    Augmentation::standard(truncated_polynomial(field, n, 0)).expect("standard augmentation")
}

/// `T(V)/V^{⊗2}` with `dim V = m` and `V` in degree `degree`: all products of generators vanish.
pub fn truncated_tensor(field: Field, m: usize, degree: i32) -> DGAlgebra {
    let mut basis = vec![("1".to_string(), 0)];
    basis.extend((1..=m).map(|i| (format!("v{i}"), degree)));
    DGAlgebra::from_fn(
        field,
        basis,
        SparseVec::unit(0, field),
        vec![SparseVec::new(); m + 1],
        |i, j| match (i, j) {
            (0, j) => SparseVec::unit(j, field),
            (i, 0) => SparseVec::unit(i, field),
            _ => SparseVec::new(),
        },
    )
    .expect("truncated tensor algebra")
}

pub fn truncated_tensor_aug(field: Field, m: usize) -> Augmentation {
    Augmentation::standard(truncated_tensor(field, m, 0)).expect("standard augmentation")
}

/// Group algebra of `Z/n` on the basis `1, g, …, g^{n-1}`.
pub fn cyclic_group(field: Field, n: usize) -> DGAlgebra {
    let basis = (0..n)
        .map(|i| {
            let name = match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            (name, 0)
        })
        .collect();
    DGAlgebra::from_fn(
        field,
        basis,
        SparseVec::unit(0, field),
        vec![SparseVec::new(); n],
        |i, j| SparseVec::unit((i + j) % n, field),
    )
    .expect("group algebra")
}

/// Augmentation `g ↦ 1`.
pub fn cyclic_group_aug(field: Field, n: usize) -> Augmentation {
    Augmentation::new(cyclic_group(field, n), vec![field.one(); n]).expect("trivial character")
}

/// Path algebra of `•→•`, written as lower-triangular matrices: basis
/// `e_B, n, e_A` with `n = e_A · n · e_B`.
pub fn a2_path(field: Field) -> DGAlgebra {
    let basis = vec![("eB".to_string(), 0), ("n".to_string(), 0), ("eA".to_string(), 0)];
    let unit = SparseVec::from_pairs([(0, field.one()), (2, field.one())]);
    DGAlgebra::from_fn(field, basis, unit, vec![SparseVec::new(); 3], |i, j| match (i, j) {
        (0, 0) => SparseVec::unit(0, field),
        (1, 0) => SparseVec::unit(1, field),
        (2, 1) => SparseVec::unit(1, field),
        (2, 2) => SparseVec::unit(2, field),
        _ => SparseVec::new(),
    })
    .expect("A2 path algebra")
}

/// `k[e]/e²` with `e` in degree `degree` and zero differential.
pub fn exterior(field: Field, degree: i32) -> DGAlgebra {
    let basis = vec![("1".to_string(), 0), ("e".to_string(), degree)];
    DGAlgebra::from_fn(field, basis, SparseVec::unit(0, field), vec![SparseVec::new(); 2], |i, j| {
        match (i, j) {
            (0, j) => SparseVec::unit(j, field),
            (i, 0) => SparseVec::unit(i, field),
            _ => SparseVec::new(),
        }
    })
    .expect("exterior algebra")
}

/// `k[y]/(y² - y)` augmented by `y ↦ 0`: the ideal is spanned by an idempotent.
pub fn idempotent_aug(field: Field) -> Augmentation {
    let basis = vec![("1".to_string(), 0), ("y".to_string(), 0)];
    let a = DGAlgebra::from_fn(field, basis, SparseVec::unit(0, field), vec![SparseVec::new(); 2], |i, j| {
        match (i, j) {
            (0, j) => SparseVec::unit(j, field),
            (i, 0) => SparseVec::unit(i, field),
            _ => SparseVec::unit(1, field),
        }
    })
    .expect("split algebra");
    Augmentation::standard(a).expect("standard augmentation")
}

/// `k[x]/x³ ⊗ Λ(t)` with `|t| = -1` and `dt = x²`; basis
/// `1, t, x, xt, x^2, x^2t`. Cohomology is `k[x]/x²` in degree 0 and
/// `span{xt, x²t}` in degree -1.
pub fn koszul_cubic(field: Field) -> Result<DGAlgebra> {
    let poly = truncated_polynomial(field, 3, 0);
    let ext = exterior(field, -1);
    let t = poly.tensor(&ext)?;
    let names = ["1", "t", "x", "xt", "x^2", "x^2t"];
    let t = t.renamed(names.iter().map(|s| s.to_string()).collect())?;
    let mut d = vec![SparseVec::new(); 6];
    d[1] = SparseVec::unit(4, field);
    t.with_differential(d)
}

pub fn koszul_cubic_aug(field: Field) -> Augmentation {
    Augmentation::standard(koszul_cubic(field).expect("koszul cubic")).expect("standard augmentation")
}

/// `k⟨s, t⟩` with `|t| = -1`, `|s| = 0`, `dt = s` and all products of
/// generators zero. Acyclic augmentation ideal.
pub fn contractible_pair(field: Field) -> DGAlgebra {
    let basis = vec![("1".to_string(), 0), ("t".to_string(), -1), ("s".to_string(), 0)];
    let mut d = vec![SparseVec::new(); 3];
    d[1] = SparseVec::unit(2, field);
    DGAlgebra::from_fn(field, basis, SparseVec::unit(0, field), d, |i, j| match (i, j) {
        (0, j) => SparseVec::unit(j, field),
        (i, 0) => SparseVec::unit(i, field),
        _ => SparseVec::new(),
    })
    .expect("contractible pair")
}
