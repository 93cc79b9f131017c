//! The zigzag algebra of a map of complexes: for `f: X → Y` and an action
//! `φ: A → End(X)`, the algebra `End(Y) ⊕ Hom(X[1], Y) ⊕ A` sitting inside
//! `End(Cone f)` together with its projections to `A` and `End(Y)`.

use std::collections::HashMap;

use crate::algebra::{DGAlgebra, DGAlgebraHom, HypothesisReport};
use crate::error::{Error, Result};
use crate::graded::{check_chain_map, verify_quasi_iso, Complex, DegreeWindow, GradedMap, QuasiIsoReport};
use crate::linalg::{Matrix, SparseVec};
use crate::module::{complex_basis, end_algebra, flat_complex, flat_graded_map, hom_space};
use crate::scalar::Field;

/// A finite complex on one flat basis, with `d` as a square matrix.
struct Flat {
    degrees: Vec<i32>,
    names: Vec<String>,
    d: Vec<SparseVec>,
    index: HashMap<(i32, usize), usize>,
}

impl Flat {
    fn new(c: &Complex) -> Flat {
        let basis = complex_basis(c);
        let index: HashMap<(i32, usize), usize> =
            basis.iter().enumerate().map(|(k, b)| ((b.0, b.1), k)).collect();
        let d = basis
            .iter()
            .map(|&(n, p, _)| {
                c.d(n)
                    .map(|m| m.column(p).remap(|r| index[&(n + 1, r)]))
                    .unwrap_or_default()
            })
            .collect();
        Flat {
            degrees: basis.iter().map(|b| b.0).collect(),
            names: basis.into_iter().map(|b| b.2).collect(),
            d,
            index,
        }
    }

    fn dim(&self) -> usize {
        self.degrees.len()
    }
}

fn require_finite(c: &Complex, what: &str) -> Result<()> {
    if c.zero_below() && c.zero_above() {
        Ok(())
    } else {
        Err(Error::WindowInsufficient(format!("{what} must be a finite complex")))
    }
}

/// Square matrices stored sparsely as `row * n + col`.
struct Units {
    n: usize,
    field: Field,
}

impl Units {
    fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut rows: HashMap<usize, Vec<(usize, &crate::scalar::Scalar)>> = HashMap::new();
        for (p, c) in y.iter() {
            rows.entry(p / self.n).or_default().push((p % self.n, c));
        }
        let mut out = SparseVec::new();
        for (p, c) in x.iter() {
            let (i, j) = (p / self.n, p % self.n);
            if let Some(r) = rows.get(&j) {
                for (k, e) in r {
                    out.add_scaled(&(c * e), &SparseVec::unit(i * self.n + k, self.field));
                }
            }
        }
        out
    }

    /// `D M = d M - (-1)^{deg} M d`.
    fn commutator(&self, d: &SparseVec, m: &SparseVec, degree: i32) -> SparseVec {
        let mut out = self.mul(d, m);
        out.add_scaled(&-self.field.sign(degree as i64), &self.mul(m, d));
        out
    }
}

/// The zigzag algebra with its two projections.
#[derive(Debug, Clone)]
pub struct Zigzag {
    pub algebra: DGAlgebra,
    pub p_a: DGAlgebraHom,
    pub p_y: DGAlgebraHom,
    /// Sizes of the `End(Y)`, `Hom(X[1], Y)` and `A` summands, in basis order.
    pub summands: [usize; 3],
}

/// Builds `End(Y) ⊕ Hom(X[1], Y) ⊕ A` with product
/// `(u,h,a)(u',h',a') = (uu', uh' + h·ψφ(a'), aa')`, where `ψφ(a) = (-1)^{|a|}φ(a)`
/// acts on `X[1]`, and the differential of `End(Cone f)` with
/// `d_C = [[d_Y, f], [0, -d_X]]`.
pub fn zigzag_algebra(f: &GradedMap, x: &Complex, y: &Complex, phi: &DGAlgebraHom) -> Result<Zigzag> {
    require_finite(x, "X")?;
    require_finite(y, "Y")?;
    let field = x.field();
    let wx = DegreeWindow::new(x.window().lo.min(y.window().lo) - 1, x.window().hi.max(y.window().hi) + 1)?;
    check_chain_map(x, y, f, wx)?;
    let ex = end_algebra(x)?;
    if phi.target != ex {
        return Err(Error::InvalidStructure("φ must take values in End(X)".into()));
    }
    if let Some(p) = phi.check(true).into_iter().next() {
        return Err(Error::NotHomomorphism(format!("φ: {p}")));
    }
    let a = &phi.source;
    let (fx, fy) = (Flat::new(x), Flat::new(y));
    let (nx, ny) = (fx.dim(), fy.dim());
    let n = nx + ny;
    let units = Units { n, field };

    let mut dc = SparseVec::new();
    for (s, v) in fy.d.iter().enumerate() {
        for (t, c) in v.iter() {
            dc.add_scaled(c, &SparseVec::unit(t * n + s, field));
        }
    }
    for (s, v) in fx.d.iter().enumerate() {
        for (t, c) in v.iter() {
            dc.add_scaled(&-c, &SparseVec::unit((ny + t) * n + ny + s, field));
        }
    }
    for (&deg, m) in f.blocks() {
        for (c, col) in m.columns().iter().enumerate() {
            let s = fx.index[&(deg, c)];
            for (r, e) in col.iter() {
                let t = fy.index[&(deg, r)];
                dc.add_scaled(e, &SparseVec::unit(t * n + ny + s, field));
            }
        }
    }

    // basis: End(Y) units, then Hom(X[1], Y) units, then A
    let mut basis = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for t in 0..ny {
        for s in 0..ny {
            slot.insert(t * n + s, basis.len());
            basis.push((format!("U[{}←{}]", fy.names[t], fy.names[s]), fy.degrees[t] - fy.degrees[s]));
        }
    }
    for t in 0..ny {
        for s in 0..nx {
            slot.insert(t * n + ny + s, basis.len());
            basis.push((
                format!("H[{}←{}[1]]", fy.names[t], fx.names[s]),
                fy.degrees[t] - fx.degrees[s] + 1,
            ));
        }
    }
    let m = basis.len();
    for i in 0..a.dim() {
        basis.push((a.name(i).to_string(), a.degree(i)));
    }
    let cone_unit = |k: usize| -> usize {
        if k < ny * ny {
            (k / ny) * n + k % ny
        } else {
            let k = k - ny * ny;
            (k / nx) * n + ny + k % nx
        }
    };
    let psi = |i: usize| -> SparseVec {
        let s = field.sign(a.degree(i) as i64);
        let mut out = SparseVec::new();
        for (p, c) in phi.matrix.column(i).iter() {
            let (t, u) = (p / nx, p % nx);
            out.add_scaled(&(&s * c), &SparseVec::unit((ny + t) * n + ny + u, field));
        }
        out
    };
    // upper blocks of a cone endomorphism back into the basis; the lower-right block is returned separately
    let split = |v: &SparseVec| -> Result<(SparseVec, SparseVec)> {
        let mut upper = SparseVec::new();
        let mut lower = SparseVec::new();
        for (p, c) in v.iter() {
            let (t, s) = (p / n, p % n);
            if t < ny {
                upper.add_scaled(c, &SparseVec::unit(slot[&p], field));
            } else if s >= ny {
                lower.add_scaled(c, &SparseVec::unit(p, field));
            } else {
                return Err(Error::InvalidStructure(
                    "endomorphism leaves the upper triangular part".into(),
                ));
            }
        }
        Ok((upper, lower))
    };

    let mut d = Vec::with_capacity(basis.len());
    for k in 0..m {
        let e = SparseVec::unit(cone_unit(k), field);
        let (up, low) = split(&units.commutator(&dc, &e, basis[k].1))?;
        debug_assert!(low.is_zero());
        d.push(up);
    }
    for i in 0..a.dim() {
        let (up, low) = split(&units.commutator(&dc, &psi(i), a.degree(i)))?;
        let mut expected = SparseVec::new();
        for (j, c) in a.d_basis(i).iter() {
            expected.add_scaled(c, &psi(j));
        }
        if low != expected {
            return Err(Error::NotChainMap { degree: a.degree(i) });
        }
        let mut v = up;
        v.add_scaled(&field.one(), &a.d_basis(i).shifted(m));
        d.push(v);
    }

    let mult = |i: usize, j: usize| -> SparseVec {
        match (i < m, j < m) {
            (true, true) => {
                let p = units.mul(
                    &SparseVec::unit(cone_unit(i), field),
                    &SparseVec::unit(cone_unit(j), field),
                );
                split(&p).expect("upper blocks are closed").0
            }
            (true, false) => {
                let p = units.mul(&SparseVec::unit(cone_unit(i), field), &psi(j - m));
                split(&p).expect("upper blocks are closed").0
            }
            (false, true) => SparseVec::new(),
            (false, false) => a.mul_basis(i - m, j - m).shifted(m),
        }
    };
    let mut unit = a.unit().shifted(m);
    for t in 0..ny {
        unit.add_scaled(&field.one(), &SparseVec::unit(t * ny + t, field));
    }
    let algebra = DGAlgebra::from_fn(field, basis, unit, d, mult)?;

    let pa_cols = (0..algebra.dim())
        .map(|k| if k < m { SparseVec::new() } else { SparseVec::unit(k - m, field) })
        .collect();
    let p_a = DGAlgebraHom::new(algebra.clone(), a.clone(), Matrix::from_columns(field, a.dim(), pa_cols)?)?;
    let ey = end_algebra(y)?;
    let py_cols = (0..algebra.dim())
        .map(|k| if k < ny * ny { SparseVec::unit(k, field) } else { SparseVec::new() })
        .collect();
    let p_y = DGAlgebraHom::new(algebra.clone(), ey.clone(), Matrix::from_columns(field, ey.dim(), py_cols)?)?;
    Ok(Zigzag {
        algebra,
        p_a,
        p_y,
        summands: [ny * ny, ny * nx, a.dim()],
    })
}

/// Window covering every degree of the given finite complexes with one spare degree on each side.
fn covering(cs: &[&Complex]) -> DegreeWindow {
    let lo = cs.iter().map(|c| c.window().lo).min().unwrap_or(0);
    let hi = cs.iter().map(|c| c.window().hi).max().unwrap_or(0);
    DegreeWindow { lo: lo - 1, hi: hi + 1 }
}

fn positions(degrees: &[i32]) -> Vec<(i32, usize)> {
    let mut count: HashMap<i32, usize> = HashMap::new();
    degrees
        .iter()
        .map(|&d| {
            let c = count.entry(d).or_insert(0);
            *c += 1;
            (d, *c - 1)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ZigzagReport {
    pub zigzag: Zigzag,
    pub hypotheses: HypothesisReport,
    pub restriction: QuasiIsoReport,
    pub action: QuasiIsoReport,
    pub p_a: QuasiIsoReport,
    pub p_y: QuasiIsoReport,
}

impl ZigzagReport {
    pub fn projections_quasi_iso(&self) -> bool {
        self.p_a.is_quasi_iso() && self.p_y.is_quasi_iso()
    }
}

/// Checks that `End(Y) → Hom(X, Y)`, `u ↦ u∘f`, and `A → Hom(X, Y)`,
/// `a ↦ f∘φ(a)`, are quasi-isomorphisms, and whether the projections of the
/// zigzag algebra are.
pub fn verify_zigzag_hypotheses(
    f: &GradedMap,
    x: &Complex,
    y: &Complex,
    phi: &DGAlgebraHom,
) -> Result<ZigzagReport> {
    let zigzag = zigzag_algebra(f, x, y, phi)?;
    let field = x.field();
    let a = &phi.source;
    let (fx, fy) = (Flat::new(x), Flat::new(y));
    let (nx, ny) = (fx.dim(), fy.dim());
    let hom = hom_space(x, y)?;
    let hom_c = flat_complex(field, &hom.names, &hom.degrees, &hom.d)?;
    let hom_pos = positions(&hom.degrees);

    let mut fm = vec![SparseVec::new(); nx];
    for (&deg, m) in f.blocks() {
        for (c, col) in m.columns().iter().enumerate() {
            fm[fx.index[&(deg, c)]] = col.remap(|r| fy.index[&(deg, r)]);
        }
    }
    // u ↦ u∘f on matrix units E[t←s] of End(Y)
    let ey = end_algebra(y)?;
    let mut cols = Vec::new();
    for t in 0..ny {
        for s in 0..ny {
            let mut v = SparseVec::new();
            for (c, col) in fm.iter().enumerate() {
                if let Some(e) = col.get(s) {
                    v.add_scaled(e, &SparseVec::unit(t * nx + c, field));
                }
            }
            cols.push(v);
        }
    }
    let restrict = Matrix::from_columns(field, hom.units.len(), cols)?;
    let ey_c = ey.complex()?;
    let w = covering(&[&ey_c, &hom_c]);
    let g = flat_graded_map(field, &ey.positions(), &hom_pos, &hom.degrees, 0, &restrict);
    let restriction = verify_quasi_iso(&ey_c, &hom_c, &g, w)?;

    let mut cols = Vec::new();
    for i in 0..a.dim() {
        let mut v = SparseVec::new();
        for (p, c) in phi.matrix.column(i).iter() {
            let (t, s) = (p / nx, p % nx);
            for (r, e) in fm[t].iter() {
                v.add_scaled(&(c * e), &SparseVec::unit(r * nx + s, field));
            }
        }
        cols.push(v);
    }
    let act = Matrix::from_columns(field, hom.units.len(), cols)?;
    let a_c = a.complex()?;
    let w = covering(&[&a_c, &hom_c]);
    let g = flat_graded_map(field, &a.positions(), &hom_pos, &hom.degrees, 0, &act);
    let action = verify_quasi_iso(&a_c, &hom_c, &g, w)?;

    let mut hypotheses = HypothesisReport::default();
    hypotheses.push(
        "End(Y) → Hom(X, Y) quasi-isomorphism",
        restriction.is_quasi_iso(),
        format!("failures in degrees {:?}", restriction.failures),
    );
    hypotheses.push(
        "A → Hom(X, Y) quasi-isomorphism",
        action.is_quasi_iso(),
        format!("failures in degrees {:?}", action.failures),
    );

    let z_c = zigzag.algebra.complex()?;
    let w = covering(&[&z_c, &a_c]);
    let p_a = verify_quasi_iso(&z_c, &a_c, &zigzag.p_a.graded_map(), w)?;
    let w = covering(&[&z_c, &ey_c]);
    let p_y = verify_quasi_iso(&z_c, &ey_c, &zigzag.p_y.graded_map(), w)?;
    Ok(ZigzagReport {
        zigzag,
        hypotheses,
        restriction,
        action,
        p_a,
        p_y,
    })
}

/// The unit map `k → End(X)`.
pub fn ground_action(x: &Complex) -> Result<DGAlgebraHom> {
    let e = end_algebra(x)?;
    let k = DGAlgebra::ground(x.field());
    let m = Matrix::from_columns(x.field(), e.dim(), vec![e.unit().clone()])?;
    DGAlgebraHom::new(k, e, m)
}

/// `End(X)` acting on `X` through the identity.
pub fn tautological_action(x: &Complex) -> Result<DGAlgebraHom> {
    let e = end_algebra(x)?;
    let m = Matrix::identity(x.field(), e.dim());
    DGAlgebraHom::new(e.clone(), e, m)
}

/// `A` acting on its underlying complex by left multiplication.
pub fn regular_action(a: &DGAlgebra) -> Result<(Complex, DGAlgebraHom)> {
    let x = a.complex()?;
    let e = end_algebra(&x)?;
    let fx = Flat::new(&x);
    let pos = a.positions();
    let flat: Vec<usize> = pos.iter().map(|p| fx.index[p]).collect();
    let n = a.dim();
    let field = a.field();
    let cols = (0..n)
        .map(|i| {
            let mut v = SparseVec::new();
            for j in 0..n {
                for (k, c) in a.mul_basis(i, j).iter() {
                    v.add_scaled(c, &SparseVec::unit(flat[k] * n + flat[j], field));
                }
            }
            v
        })
        .collect();
    let m = Matrix::from_columns(field, e.dim(), cols)?;
    Ok((x, DGAlgebraHom::new(a.clone(), e, m)?))
}

/// Finite complex from a list of `(degree, name)` and differential columns on that flat order.
pub fn small_complex(field: Field, basis: &[(i32, &str)], d: &[SparseVec]) -> Result<Complex> {
    let names: Vec<String> = basis.iter().map(|b| b.1.to_string()).collect();
    let degrees: Vec<i32> = basis.iter().map(|b| b.0).collect();
    flat_complex(field, &names, &degrees, d)
}

/// Degree-0 map between finite complexes from columns on the flat bases
/// (degree-sorted, in order of appearance within each degree).
pub fn flat_map(x: &Complex, y: &Complex, columns: Vec<SparseVec>) -> Result<GradedMap> {
    let (fx, fy) = (Flat::new(x), Flat::new(y));
    if columns.len() != fx.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} columns for a complex of dimension {}",
            columns.len(),
            fx.dim()
        )));
    }
    for (i, c) in columns.iter().enumerate() {
        if c.iter().any(|(j, _)| fy.degrees[j] != fx.degrees[i]) {
            return Err(Error::NotHomogeneous(format!("image of {}", fx.names[i])));
        }
    }
    let m = Matrix::from_columns(x.field(), fy.dim(), columns)?;
    let g = flat_graded_map(
        x.field(),
        &positions(&fx.degrees),
        &positions(&fy.degrees),
        &fy.degrees,
        0,
        &m,
    );
    Ok(g)
}

/// Input data for a zigzag algebra.
#[derive(Debug, Clone)]
pub struct ZigzagInstance {
    pub name: String,
    pub f: GradedMap,
    pub x: Complex,
    pub y: Complex,
    pub phi: DGAlgebraHom,
}

/// Small instances over `field`: the first eleven satisfy both quasi-isomorphism
/// conditions, the last four do not.
pub fn zigzag_examples(field: Field) -> Result<Vec<ZigzagInstance>> {
    let one = field.one();
    let e = |i: usize| SparseVec::unit(i, field);
    let point = small_complex(field, &[(0, "e")], &[SparseVec::new()])?;
    let high = small_complex(field, &[(3, "e")], &[SparseVec::new()])?;
    let plane = small_complex(field, &[(0, "e"), (0, "e'")], &[SparseVec::new(), SparseVec::new()])?;
    let pair = small_complex(field, &[(-1, "a"), (0, "b")], &[e(1), SparseVec::new()])?;
    let padded = small_complex(
        field,
        &[(-1, "a"), (0, "b"), (0, "e")],
        &[e(1), SparseVec::new(), SparseVec::new()],
    )?;
    let raised = small_complex(
        field,
        &[(0, "e"), (0, "a"), (1, "b")],
        &[SparseVec::new(), e(2), SparseVec::new()],
    )?;
    let split = small_complex(field, &[(0, "e"), (1, "f")], &[SparseVec::new(), SparseVec::new()])?;
    let id = |c: &Complex| GradedMap::identity(c);
    let inst = |name: &str, f: GradedMap, x: &Complex, y: &Complex, phi: DGAlgebraHom| ZigzagInstance {
        name: name.to_string(),
        f,
        x: x.clone(),
        y: y.clone(),
        phi,
    };
    let include = flat_map(&point, &padded, vec![SparseVec::single(2, one.clone())])?;
    let project = flat_map(&padded, &point, vec![SparseVec::new(), SparseVec::new(), e(0)])?;
    let pair_alg = crate::catalog::contractible_pair(field);
    let (pair_x, pair_phi) = regular_action(&pair_alg)?;
    let dual = crate::catalog::truncated_polynomial(field, 2, 0);
    let (dual_x, dual_phi) = regular_action(&dual)?;
    let zero = flat_map(&point, &point, vec![SparseVec::new()])?;
    Ok(vec![
        inst("point", id(&point), &point, &point, ground_action(&point)?),
        inst("shifted point", id(&high), &high, &high, ground_action(&high)?),
        inst("raised pair", id(&raised), &raised, &raised, ground_action(&raised)?),
        inst("inclusion", include, &point, &padded, ground_action(&point)?),
        inst("projection", project.clone(), &padded, &point, ground_action(&padded)?),
        inst("contractible", id(&pair), &pair, &pair, tautological_action(&pair)?),
        inst("matrices", id(&plane), &plane, &plane, tautological_action(&plane)?),
        inst("split", id(&split), &split, &split, tautological_action(&split)?),
        inst("endomorphisms onto a point", project, &padded, &point, tautological_action(&padded)?),
        inst("regular, unit cohomology", id(&pair_x), &pair_x, &pair_x, pair_phi),
        inst("padded point", id(&padded), &padded, &padded, ground_action(&padded)?),
        inst("zero map", zero, &point, &point, ground_action(&point)?),
        inst("regular dual numbers", id(&dual_x), &dual_x, &dual_x, dual_phi),
        inst("ground field on an acyclic complex", id(&pair), &pair, &pair, ground_action(&pair)?),
        inst("ground field on a plane", id(&plane), &plane, &plane, ground_action(&plane)?),
    ])
}
