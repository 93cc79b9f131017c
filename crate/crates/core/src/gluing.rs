//! Gluing two DG algebras along a bimodule: `C = [[B, 0], [N, A]]` on
//! `B ⊕ N ⊕ A`, the cone presentation of its diagonal and the description of
//! `C`-modules as triples.

use std::collections::HashMap;

use crate::algebra::{DGAlgebra, DGAlgebraHom};
use crate::error::{Error, Result};
use crate::graded::{check_chain_map, verify_quasi_iso, Complex, DegreeWindow, QuasiIsoReport};
use crate::linalg::{Insert, Matrix, Reducer, SparseVec};
use crate::module::{cone, diagonal, tensor_over, DGModule, ModuleMap, TensorOver};

#[derive(Debug, Clone)]
pub struct GluedAlgebra {
    pub a: DGAlgebra,
    pub b: DGAlgebra,
    /// Right `A^op ⊗ B`-module.
    pub n: DGModule,
    pub c: DGAlgebra,
}

impl GluedAlgebra {
    /// Offsets of the `B`, `N` and `A` blocks in the basis of `C`.
    pub fn offsets(&self) -> [usize; 3] {
        [0, self.b.dim(), self.b.dim() + self.n.dim()]
    }

    pub fn e_a(&self) -> SparseVec {
        self.a.unit().shifted(self.offsets()[2])
    }

    pub fn e_b(&self) -> SparseVec {
        self.b.unit().clone()
    }
}

/// `n·y` for `y ∈ B` and `x·n` for `x ∈ A`, read off the `A^op ⊗ B` action.
struct Actions<'a> {
    a: &'a DGAlgebra,
    b: &'a DGAlgebra,
    n: &'a DGModule,
}

impl Actions<'_> {
    fn env(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let nb = self.b.dim();
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                out.add_scaled(&(c * e), &SparseVec::unit(i * nb + j, self.a.field()));
            }
        }
        out
    }

    fn right(&self, m: usize, y: usize) -> SparseVec {
        let f = self.a.field();
        self.n.act(&SparseVec::unit(m, f), &self.env(self.a.unit(), &SparseVec::unit(y, f)))
    }

    fn left(&self, x: usize, m: usize) -> SparseVec {
        let f = self.a.field();
        let s = f.sign((self.a.degree(x) * self.n.degree(m)) as i64);
        self.n
            .act(&SparseVec::unit(m, f), &self.env(&SparseVec::unit(x, f), self.b.unit()))
            .scaled(&s)
    }
}

/// `C` on `B ⊕ N ⊕ A` with `(b, n, a)(b', n', a') = (bb', n·b' + a·n', aa')`.
pub fn glue(a: &DGAlgebra, b: &DGAlgebra, n: &DGModule) -> Result<GluedAlgebra> {
    let env = a.opposite().tensor(b)?;
    if n.algebra() != &env {
        return Err(Error::InvalidStructure(
            "the gluing bimodule must be a right A^op ⊗ B-module".into(),
        ));
    }
    let report = n.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidStructure(format!("bimodule: {v}")));
    }
    let field = a.field();
    let (nb, nn) = (b.dim(), n.dim());
    let oa = nb + nn;
    let act = Actions { a, b, n };
    let mut basis = Vec::new();
    for i in 0..nb {
        basis.push((format!("B:{}", b.name(i)), b.degree(i)));
    }
    for i in 0..nn {
        basis.push((format!("N:{}", n.names()[i]), n.degree(i)));
    }
    for i in 0..a.dim() {
        basis.push((format!("A:{}", a.name(i)), a.degree(i)));
    }
    let mut d: Vec<SparseVec> = (0..nb).map(|i| b.d_basis(i).clone()).collect();
    d.extend((0..nn).map(|i| n.d_basis(i).shifted(nb)));
    d.extend((0..a.dim()).map(|i| a.d_basis(i).shifted(oa)));
    let unit = b.unit().add(&a.unit().shifted(oa), field);
    let block = |i: usize| {
        if i < nb {
            0
        } else if i < oa {
            1
        } else {
            2
        }
    };
    let c = DGAlgebra::from_fn(field, basis, unit, d, |i, j| match (block(i), block(j)) {
        (0, 0) => b.mul_basis(i, j).clone(),
        (1, 0) => act.right(i - nb, j).shifted(nb),
        (2, 1) => act.left(i - oa, j - nb).shifted(nb),
        (2, 2) => a.mul_basis(i - oa, j - oa).shifted(oa),
        _ => SparseVec::new(),
    })?;
    let report = c.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidStructure(format!("glued algebra: {v}")));
    }
    Ok(GluedAlgebra {
        a: a.clone(),
        b: b.clone(),
        n: n.clone(),
        c,
    })
}

/// The zero bimodule over `A^op ⊗ B`.
pub fn zero_bimodule(a: &DGAlgebra, b: &DGAlgebra) -> Result<DGModule> {
    DGModule::from_parts(a.opposite().tensor(b)?, Vec::new(), Vec::new(), HashMap::new())
}

/// The ground field as an `A`-`B` bimodule, with both algebras acting through
/// the given augmentation values.
pub fn ground_bimodule(a: &DGAlgebra, eps_a: &[crate::scalar::Scalar], b: &DGAlgebra, eps_b: &[crate::scalar::Scalar]) -> Result<DGModule> {
    crate::module::bimodule(
        a,
        b,
        vec![("k".to_string(), 0)],
        vec![SparseVec::new()],
        |x, _| SparseVec::single(0, eps_a[x].clone()),
        |_, y| SparseVec::single(0, eps_b[y].clone()),
    )
}

/// The isomorphism `glue(A, B, 0) → A × B`.
pub fn product_comparison(ga: &GluedAlgebra) -> Result<DGAlgebraHom> {
    if ga.n.dim() != 0 {
        return Err(Error::InvalidStructure("the gluing bimodule is not zero".into()));
    }
    let field = ga.c.field();
    let target = ga.a.product(&ga.b)?;
    let (na, nb) = (ga.a.dim(), ga.b.dim());
    let cols = (0..ga.c.dim())
        .map(|i| {
            if i < nb {
                SparseVec::unit(na + i, field)
            } else {
                SparseVec::unit(i - nb, field)
            }
        })
        .collect();
    DGAlgebraHom::new(ga.c.clone(), target, Matrix::from_columns(field, na + nb, cols)?)
}

#[derive(Debug, Clone)]
pub struct DiagonalConeReport {
    /// The diagonal `C` as a right `C^op ⊗ C`-module.
    pub diagonal: DGModule,
    /// `Cone(N → (N ⊕ A) ⊕ (B ⊕ N))`, `n ↦ (n, -n)`.
    pub cone: DGModule,
    /// Cone → C, adding up the two ideals.
    pub sum: ModuleMap,
    pub sum_problems: Vec<String>,
    pub sum_quasi_iso: QuasiIsoReport,
    /// C → cone, sending `B` and `N ⊕ A` to their own summands.
    pub section: ModuleMap,
    pub section_chain_map: bool,
    pub section_bimodule_map: bool,
    pub section_quasi_iso: QuasiIsoReport,
    pub retraction_identity: bool,
}

impl DiagonalConeReport {
    pub fn verified(&self) -> bool {
        self.sum_problems.is_empty()
            && self.sum_quasi_iso.is_quasi_iso()
            && self.section_chain_map
            && self.section_quasi_iso.is_quasi_iso()
            && self.retraction_identity
    }
}

fn covering(cs: &[&Complex]) -> DegreeWindow {
    let lo = cs.iter().map(|c| c.window().lo).min().unwrap_or(0);
    let hi = cs.iter().map(|c| c.window().hi).max().unwrap_or(0);
    DegreeWindow { lo: lo - 1, hi: hi + 1 }
}

/// Presents the diagonal of `C` as the cone of `N → (N ⊕ A) ⊕ (B ⊕ N)`, where
/// `N ⊕ A = e_A C` and `B ⊕ N = C e_B` are the induced bimodules of `A` and `B`.
pub fn glued_diagonal_cone(ga: &GluedAlgebra) -> Result<DiagonalConeReport> {
    let c = &ga.c;
    let field = c.field();
    let diag = diagonal(c)?;
    let [_, on, oa] = ga.offsets();
    let (nb, nn, na) = (ga.b.dim(), ga.n.dim(), ga.a.dim());
    let units = |r: std::ops::Range<usize>| -> Vec<SparseVec> { r.map(|i| SparseVec::unit(i, field)).collect() };
    let names = |r: std::ops::Range<usize>| -> Vec<String> { r.map(|i| c.name(i).to_string()).collect() };
    let (ind_a, inc_a) = diag.submodule(&units(on..oa + na), names(on..oa + na))?;
    let (ind_b, inc_b) = diag.submodule(&units(0..on + nn), names(0..on + nn))?;
    let (ind_n, _) = diag.submodule(&units(on..on + nn), names(on..on + nn))?;
    let sum_target = ind_a.direct_sum(&ind_b)?;
    let la = ind_a.dim();
    let g_cols = (0..nn)
        .map(|k| {
            let mut v = SparseVec::unit(k, field);
            v.add_scaled(&-field.one(), &SparseVec::unit(la + nb + k, field));
            v
        })
        .collect();
    let g = ModuleMap::new(0, Matrix::from_columns(field, sum_target.dim(), g_cols)?);
    let cone_m = cone(&g, &ind_n, &sum_target)?;

    let mut sum_cols = vec![SparseVec::new(); nn];
    sum_cols.extend(inc_a.columns().iter().cloned());
    sum_cols.extend(inc_b.columns().iter().cloned());
    let sum = ModuleMap::new(0, Matrix::from_columns(field, c.dim(), sum_cols)?);
    let sum_problems = sum.check(&cone_m, &diag, true);
    let cone_c = cone_m.complex()?;
    let diag_c = diag.complex()?;
    let w = covering(&[&cone_c, &diag_c]);
    let sum_quasi_iso = verify_quasi_iso(&cone_c, &diag_c, &sum.graded_map(&cone_m, &diag), w)?;

    let sec_cols = (0..c.dim())
        .map(|i| {
            if i < on {
                SparseVec::unit(nn + la + i, field)
            } else {
                SparseVec::unit(nn + (i - on), field)
            }
        })
        .collect();
    let section = ModuleMap::new(0, Matrix::from_columns(field, cone_m.dim(), sec_cols)?);
    let sec_map = section.graded_map(&diag, &cone_m);
    let section_chain_map = check_chain_map(&diag_c, &cone_c, &sec_map, w).is_ok();
    let section_bimodule_map = section.check(&diag, &cone_m, true).is_empty();
    let section_quasi_iso = if section_chain_map {
        verify_quasi_iso(&diag_c, &cone_c, &sec_map, w)?
    } else {
        crate::graded::QuasiIsoReport {
            induced: Default::default(),
            failures: w.interior().collect(),
        }
    };
    let retraction_identity = sum.matrix.checked_mul(&section.matrix)? == Matrix::identity(field, c.dim());
    Ok(DiagonalConeReport {
        diagonal: diag,
        cone: cone_m,
        sum,
        sum_problems,
        sum_quasi_iso,
        section,
        section_chain_map,
        section_bimodule_map,
        section_quasi_iso,
        retraction_identity,
    })
}

/// A module over `C` split as `(S_A, S_B, φ: S_A ⊗_A N → S_B)`.
#[derive(Debug, Clone)]
pub struct ModuleTriple {
    /// `S e_A` as a right `A`-module, with its basis in `S`.
    pub s_a: DGModule,
    pub s_a_basis: Vec<SparseVec>,
    /// `S e_B` as a right `B`-module, with its basis in `S`.
    pub s_b: DGModule,
    pub s_b_basis: Vec<SparseVec>,
    pub tensor: TensorOver,
    /// `φ(s ⊗ n)` in the basis of `S_B`, for basis elements `s` of `S_A` and `n` of `N`.
    pub phi: HashMap<(usize, usize), SparseVec>,
    /// `φ` kills the relations of `S_A ⊗_A N`.
    pub phi_well_defined: bool,
    /// The module rebuilt from the triple.
    pub rebuilt: DGModule,
    /// Problems with the basis map `rebuilt → S` as an isomorphism of `C`-modules.
    pub round_trip_problems: Vec<String>,
}

impl ModuleTriple {
    pub fn round_trips(&self) -> bool {
        self.phi_well_defined && self.round_trip_problems.is_empty()
    }
}

fn corner(
    s: &DGModule,
    idempotent: &SparseVec,
    algebra: &DGAlgebra,
    offset: usize,
) -> Result<(DGModule, Vec<SparseVec>, Reducer)> {
    let field = s.field();
    let mut r = Reducer::with_tracking(field, s.dim());
    let mut basis = Vec::new();
    for i in 0..s.dim() {
        let v = s.act(&SparseVec::unit(i, field), idempotent);
        if v.is_zero() {
            continue;
        }
        if let Insert::Independent = r.insert_tagged(v.clone(), basis.len()) {
            basis.push(v);
        }
    }
    let coords = |v: &SparseVec| {
        r.express(v)
            .ok_or_else(|| Error::InvalidStructure(format!("{} leaves the corner", s.show(v))))
    };
    let mut names = Vec::new();
    let mut d = Vec::new();
    for v in &basis {
        names.push((s.show(v), s.degree_of(v).unwrap_or(0)));
        d.push(coords(&s.d(v))?);
    }
    let mut act = HashMap::new();
    for (k, v) in basis.iter().enumerate() {
        for x in 0..algebra.dim() {
            let w = s.act(v, &SparseVec::unit(offset + x, field));
            if !w.is_zero() {
                act.insert((k, x), coords(&w)?);
            }
        }
    }
    let m = DGModule::from_parts(algebra.clone(), names, d, act)?;
    Ok((m, basis, r))
}

/// Splits a `C`-module by the idempotents `e_A`, `e_B`, computes `φ` on
/// `S_A ⊗_A N`, rebuilds a `C`-module from the triple and compares it with `S`.
pub fn module_triple_check(ga: &GluedAlgebra, s: &DGModule) -> Result<ModuleTriple> {
    let c = &ga.c;
    if s.algebra() != c {
        return Err(Error::InvalidStructure("module over a different algebra".into()));
    }
    let field = c.field();
    for i in 0..s.dim() {
        let v = SparseVec::unit(i, field);
        if s.act(&v, c.unit()) != v {
            return Err(Error::InvalidStructure(format!(
                "not unital: {}·1 ≠ {}",
                s.names()[i],
                s.names()[i]
            )));
        }
    }
    let [_, on, oa] = ga.offsets();
    let (s_a, s_a_basis, _) = corner(s, &ga.e_a(), &ga.a, oa)?;
    let (s_b, s_b_basis, rb) = corner(s, &ga.e_b(), &ga.b, 0)?;

    // N as a right A^op-module: n·x = n·(x ⊗ 1)
    let env = ga.n.algebra();
    let nb = ga.b.dim();
    let cols = (0..ga.a.dim())
        .map(|x| {
            let mut v = SparseVec::new();
            for (j, e) in ga.b.unit().iter() {
                v.add_scaled(e, &SparseVec::unit(x * nb + j, field));
            }
            v
        })
        .collect();
    let embed = DGAlgebraHom::new(ga.a.opposite(), env.clone(), Matrix::from_columns(field, env.dim(), cols)?)?;
    let n_op = ga.n.restrict_scalars(&embed)?;
    let lo = s_a.degree_range().map_or(0, |r| r.0) + n_op.degree_range().map_or(0, |r| r.0);
    let hi = s_a.degree_range().map_or(0, |r| r.1) + n_op.degree_range().map_or(0, |r| r.1);
    let w = DegreeWindow::new(lo - 1, hi + 1)?;
    let tensor = tensor_over(&s_a, &n_op, w)?;

    let mut phi = HashMap::new();
    for (k, v) in s_a_basis.iter().enumerate() {
        for m in 0..ga.n.dim() {
            let out = s.act(v, &SparseVec::unit(on + m, field));
            let coords = rb.express(&out).ok_or_else(|| {
                Error::InvalidStructure(format!("{} is not in S e_B", s.show(&out)))
            })?;
            if !coords.is_zero() {
                phi.insert((k, m), coords);
            }
        }
    }
    // φ through the quotient: evaluate on lifted classes and compare with the pair values
    let mut phi_well_defined = true;
    for (deg, pairs) in &tensor.pairs {
        let q = &tensor.quotients[deg];
        let value = |pv: &SparseVec| {
            let mut out = SparseVec::new();
            for (p, c) in pv.iter() {
                if let Some(x) = phi.get(&pairs[p]) {
                    out.add_scaled(c, x);
                }
            }
            out
        };
        for p in 0..pairs.len() {
            let unit = SparseVec::unit(p, field);
            if value(&q.lift(&q.project(&unit))) != value(&unit) {
                phi_well_defined = false;
            }
        }
    }

    let la = s_a.dim();
    let mut basis = Vec::new();
    let mut d = Vec::new();
    for k in 0..la {
        basis.push((s_a.names()[k].clone(), s_a.degree(k)));
        d.push(s_a.d_basis(k).clone());
    }
    for k in 0..s_b.dim() {
        basis.push((s_b.names()[k].clone(), s_b.degree(k)));
        d.push(s_b.d_basis(k).shifted(la));
    }
    let rebuilt = DGModule::from_fn(c.clone(), basis, d, |i, x| {
        if i < la {
            if x >= oa {
                s_a.act_basis(i, x - oa)
            } else if x >= on {
                phi.get(&(i, x - on)).map(|v| v.shifted(la)).unwrap_or_default()
            } else {
                SparseVec::new()
            }
        } else if x < on {
            s_b.act_basis(i - la, x).shifted(la)
        } else {
            SparseVec::new()
        }
    })?;
    let mut cols = s_a_basis.clone();
    cols.extend(s_b_basis.iter().cloned());
    let iso = ModuleMap::new(0, Matrix::from_columns(field, s.dim(), cols)?);
    let mut round_trip_problems = iso.check(&rebuilt, s, true);
    if iso.matrix.rank() != s.dim() || iso.matrix.cols() != s.dim() {
        round_trip_problems.push(format!(
            "S_A ⊕ S_B has dimension {}, S has dimension {}",
            iso.matrix.cols(),
            s.dim()
        ));
    }
    Ok(ModuleTriple {
        s_a,
        s_a_basis,
        s_b,
        s_b_basis,
        tensor,
        phi,
        phi_well_defined,
        rebuilt,
        round_trip_problems,
    })
}
