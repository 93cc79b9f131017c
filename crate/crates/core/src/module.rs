//! Right DG modules, bimodules, Hom complexes, cones and tensor products.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{show_vector, Augmentation, DGAlgebra, ValidationReport, ViolationKind};
use crate::error::{Error, Result};
use crate::graded::{Complex, DegreeWindow, GradedMap, GradedSpace};
use crate::linalg::{Insert, Matrix, Quotient, Reducer, SparseVec};
use crate::scalar::{Field, Scalar};

/// Right DG module over a [`DGAlgebra`]; `act[(m, a)] = m·a`, absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGModule {
    algebra: DGAlgebra,
    names: Vec<String>,
    degrees: Vec<i32>,
    d: Vec<SparseVec>,
    act: HashMap<(usize, usize), SparseVec>,
}

impl DGModule {
    pub fn from_parts(
        algebra: DGAlgebra,
        basis: Vec<(String, i32)>,
        d: Vec<SparseVec>,
        act: HashMap<(usize, usize), SparseVec>,
    ) -> Result<DGModule> {
        let (names, degrees): (Vec<String>, Vec<i32>) = basis.into_iter().unzip();
        if d.len() != names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} differential entries for {} basis elements",
                d.len(),
                names.len()
            )));
        }
        let act = act.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let m = DGModule {
            algebra,
            names,
            degrees,
            d,
            act,
        };
        for i in 0..m.dim() {
            m.check_vector(&m.d[i], m.degrees[i] + 1, &format!("d({})", m.names[i]))?;
        }
        for ((i, a), v) in &m.act {
            if *i >= m.dim() || *a >= m.algebra.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "action entry ({i}, {a}) out of range"
                )));
            }
            m.check_vector(
                v,
                m.degrees[*i] + m.algebra.degree(*a),
                &format!("{}·{}", m.names[*i], m.algebra.name(*a)),
            )?;
        }
        Ok(m)
    }

    pub fn from_fn(
        algebra: DGAlgebra,
        basis: Vec<(String, i32)>,
        d: Vec<SparseVec>,
        act: impl Fn(usize, usize) -> SparseVec,
    ) -> Result<DGModule> {
        let mut table = HashMap::new();
        for i in 0..basis.len() {
            for a in 0..algebra.dim() {
                let v = act(i, a);
                if !v.is_zero() {
                    table.insert((i, a), v);
                }
            }
        }
        DGModule::from_parts(algebra, basis, d, table)
    }

    fn check_vector(&self, v: &SparseVec, degree: i32, what: &str) -> Result<()> {
        for (i, c) in v.iter() {
            if i >= self.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "{what} refers to basis index {i} of {}",
                    self.dim()
                )));
            }
            if c.field() != self.field() {
                return Err(Error::FieldMismatch {
                    expected: self.field(),
                    found: c.field(),
                });
            }
            if self.degrees[i] != degree {
                return Err(Error::NotHomogeneous(format!(
                    "{what} contains {} of degree {}, expected {degree}",
                    self.names[i], self.degrees[i]
                )));
            }
        }
        Ok(())
    }

    /// `⊕ A[n_i]`: copy `i` of a basis element `a` sits in degree `|a| - n_i`.
    pub fn free(algebra: &DGAlgebra, shifts: &[i32]) -> DGModule {
        let f = algebra.field();
        let na = algebra.dim();
        let mut basis = Vec::new();
        let mut d = Vec::new();
        for (c, &s) in shifts.iter().enumerate() {
            for a in 0..na {
                let name = if shifts.len() == 1 && s == 0 {
                    algebra.name(a).to_string()
                } else {
                    format!("{}[{s}]#{c}", algebra.name(a))
                };
                basis.push((name, algebra.degree(a) - s));
                d.push(algebra.d_basis(a).scaled(&f.sign(s as i64)).shifted(c * na));
            }
        }
        DGModule::from_fn(algebra.clone(), basis, d, |i, b| {
            let (c, a) = (i / na, i % na);
            algebra.mul_basis(a, b).shifted(c * na)
        })
        .expect("free module")
    }

    /// The ground field in degree 0, acted on through the augmentation.
    pub fn trivial(aug: &Augmentation) -> DGModule {
        let a = aug.algebra();
        DGModule::from_fn(a.clone(), vec![("k".into(), 0)], vec![SparseVec::new()], |_, b| {
            SparseVec::single(0, aug.values()[b].clone())
        })
        .expect("trivial module")
    }

    pub fn algebra(&self) -> &DGAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn act_basis(&self, m: usize, a: usize) -> SparseVec {
        self.act.get(&(m, a)).cloned().unwrap_or_default()
    }

    pub fn action_table(&self) -> &HashMap<(usize, usize), SparseVec> {
        &self.act
    }

    pub fn act(&self, v: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            for (a, e) in x.iter() {
                if let Some(w) = self.act.get(&(i, a)) {
                    out.add_scaled(&(c * e), w);
                }
            }
        }
        out
    }

    pub fn d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(c, &self.d[i]);
        }
        out
    }

    pub fn degree_of(&self, v: &SparseVec) -> Option<i32> {
        let mut it = v.iter().map(|(i, _)| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn show(&self, v: &SparseVec) -> String {
        show_vector(v, &self.names)
    }

    pub fn has_degree(&self, n: i32) -> bool {
        self.degrees.contains(&n)
    }

    pub fn basis_in_degree(&self, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    pub fn positions(&self) -> Vec<(i32, usize)> {
        let mut count: BTreeMap<i32, usize> = BTreeMap::new();
        self.degrees
            .iter()
            .map(|&deg| {
                let c = count.entry(deg).or_insert(0);
                *c += 1;
                (deg, *c - 1)
            })
            .collect()
    }

    pub fn space(&self) -> GradedSpace {
        let mut s = GradedSpace::new();
        for (name, deg) in self.names.iter().zip(&self.degrees) {
            s.push(*deg, name.clone());
        }
        s
    }

    pub fn complex(&self) -> Result<Complex> {
        flat_complex(self.field(), &self.names, &self.degrees, &self.d)
    }

    /// Unitality, associativity, Leibniz and `d² = 0` on basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let a = &self.algebra;
        let f = self.field();
        let mut alg_by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for x in 0..a.dim() {
            alg_by_degree.entry(a.degree(x)).or_default().push(x);
        }
        let own_degrees: std::collections::BTreeSet<i32> = self.degrees.iter().copied().collect();
        for m in 0..self.dim() {
            let e = SparseVec::unit(m, f);
            let dd = self.d(&self.d[m]);
            if !dd.is_zero() {
                report.push(ViolationKind::SquareZero, vec![self.names[m].clone()], self.show(&dd));
            }
            let u = self.act(&e, a.unit());
            if u != e {
                report.push(
                    ViolationKind::Unit,
                    vec![self.names[m].clone()],
                    format!("m·1 = {}", self.show(&u)),
                );
            }
            for x in 0..a.dim() {
                let mx = self.act_basis(m, x);
                let lhs = self.d(&mx);
                let mut rhs = self.act(&self.d[m], &SparseVec::unit(x, f));
                rhs.add_scaled(&f.sign(self.degrees[m] as i64), &self.act(&e, a.d_basis(x)));
                if lhs != rhs {
                    report.push(
                        ViolationKind::Leibniz,
                        vec![self.names[m].clone(), a.name(x).to_string()],
                        format!("d(m·x) = {}, (dm)·x ± m·dx = {}", self.show(&lhs), self.show(&rhs)),
                    );
                }
                let dmx = self.degrees[m] + a.degree(x);
                for (&dy, ys) in &alg_by_degree {
                    if !own_degrees.contains(&(dmx + dy)) {
                        continue;
                    }
                    for &y in ys {
                        let xy = a.mul_basis(x, y);
                        if mx.is_zero() && xy.is_zero() {
                            continue;
                        }
                        let lhs = self.act(&mx, &SparseVec::unit(y, f));
                        let rhs = self.act(&e, xy);
                        if lhs != rhs {
                            report.push(
                                ViolationKind::Associativity,
                                vec![self.names[m].clone(), a.name(x).to_string(), a.name(y).to_string()],
                                format!("(m·x)·y = {}, m·(xy) = {}", self.show(&lhs), self.show(&rhs)),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// `M[n]`: degrees drop by `n`, `d` picks up `(-1)^n`, the action is unchanged.
    pub fn shift(&self, n: i32) -> DGModule {
        let s = self.field().sign(n as i64);
        DGModule {
            algebra: self.algebra.clone(),
            names: self.names.iter().map(|x| format!("{x}[{n}]")).collect(),
            degrees: self.degrees.iter().map(|d| d - n).collect(),
            d: self.d.iter().map(|v| v.scaled(&s)).collect(),
            act: self.act.clone(),
        }
    }

    pub fn direct_sum(&self, other: &DGModule) -> Result<DGModule> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidStructure(
                "direct sum of modules over different algebras".into(),
            ));
        }
        let n = self.dim();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut degrees = self.degrees.clone();
        degrees.extend(other.degrees.iter().copied());
        let mut d = self.d.clone();
        d.extend(other.d.iter().map(|v| v.shifted(n)));
        let mut act = self.act.clone();
        for ((i, a), v) in &other.act {
            act.insert((i + n, *a), v.shifted(n));
        }
        Ok(DGModule {
            algebra: self.algebra.clone(),
            names,
            degrees,
            d,
            act,
        })
    }

    /// Submodule spanned by homogeneous `basis` vectors; fails with a witness if
    /// the span is not closed under `d` and the action.
    pub fn submodule(&self, basis: &[SparseVec], names: Vec<String>) -> Result<(DGModule, Matrix)> {
        let f = self.field();
        let mut r = Reducer::with_tracking(f, self.dim());
        let mut degrees = Vec::new();
        for (k, v) in basis.iter().enumerate() {
            degrees.push(
                self.degree_of(v)
                    .ok_or_else(|| Error::NotHomogeneous(format!("submodule generator {}", names[k])))?,
            );
            if let Insert::Dependent(_) = r.insert_tagged(v.clone(), k) {
                return Err(Error::InvalidStructure(format!(
                    "submodule generator {} is dependent",
                    names[k]
                )));
            }
        }
        let coords = |v: &SparseVec, what: &str| {
            r.express(v).ok_or_else(|| {
                Error::InvalidStructure(format!("span not closed: {what} = {}", self.show(v)))
            })
        };
        let mut d = Vec::new();
        for (k, v) in basis.iter().enumerate() {
            d.push(coords(&self.d(v), &format!("d({})", names[k]))?);
        }
        let mut act = HashMap::new();
        for (k, v) in basis.iter().enumerate() {
            for a in 0..self.algebra.dim() {
                let w = self.act(v, &SparseVec::unit(a, f));
                if !w.is_zero() {
                    act.insert((k, a), coords(&w, &format!("{}·{}", names[k], self.algebra.name(a)))?);
                }
            }
        }
        let inclusion = Matrix::from_columns(f, self.dim(), basis.to_vec())?;
        let sub = DGModule::from_parts(
            self.algebra.clone(),
            names.into_iter().zip(degrees).collect(),
            d,
            act,
        )?;
        Ok((sub, inclusion))
    }

    /// Same underlying complex, acted on through an algebra map `φ: B → A`.
    pub fn restrict_scalars(&self, phi: &crate::algebra::DGAlgebraHom) -> Result<DGModule> {
        if phi.target != self.algebra {
            return Err(Error::InvalidStructure(
                "restriction along a map into a different algebra".into(),
            ));
        }
        let f = self.field();
        DGModule::from_fn(
            phi.source.clone(),
            self.names.iter().cloned().zip(self.degrees.iter().copied()).collect(),
            self.d.clone(),
            |m, b| self.act(&SparseVec::unit(m, f), phi.matrix.column(b)),
        )
    }
}

/// Complex on a flat homogeneous basis with given differential columns.
pub fn flat_complex(field: Field, names: &[String], degrees: &[i32], d: &[SparseVec]) -> Result<Complex> {
    let mut pos = Vec::with_capacity(names.len());
    let mut count: BTreeMap<i32, usize> = BTreeMap::new();
    let mut space = GradedSpace::new();
    for (name, &deg) in names.iter().zip(degrees) {
        let c = count.entry(deg).or_insert(0);
        pos.push((deg, *c));
        *c += 1;
        space.push(deg, name.clone());
    }
    let mut cols: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
    let lo = degrees.iter().copied().min().unwrap_or(0);
    let hi = degrees.iter().copied().max().unwrap_or(0);
    for n in lo..hi {
        cols.insert(n, vec![SparseVec::new(); space.dim(n)]);
    }
    for (i, v) in d.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let deg = degrees[i];
        let col = cols.get_mut(&deg).ok_or_else(|| {
            Error::InvalidStructure(format!("d({}) leaves the support", names[i]))
        })?;
        col[pos[i].1] = v.remap(|j| pos[j].1);
    }
    let blocks = cols
        .into_iter()
        .map(|(n, c)| Ok((n, Matrix::from_columns(field, space.dim(n + 1), c)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Complex::finite(field, space, blocks)
}

/// Homogeneous module map of degree `degree`, as a matrix in the flat bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub degree: i32,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(degree: i32, matrix: Matrix) -> ModuleMap {
        ModuleMap { degree, matrix }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(v)
    }

    /// Problems with degree, linearity over the algebra and (if `closed`) `d f = (-1)^{|f|} f d`.
    pub fn check(&self, source: &DGModule, target: &DGModule, closed: bool) -> Vec<String> {
        let f = source.field();
        let mut problems = Vec::new();
        if self.matrix.rows() != target.dim() || self.matrix.cols() != source.dim() {
            problems.push("matrix shape does not match the modules".into());
            return problems;
        }
        for m in 0..source.dim() {
            let img = self.matrix.column(m);
            if let Some(deg) = target.degree_of(img) {
                if deg != source.degree(m) + self.degree {
                    problems.push(format!("{} lands in degree {deg}", source.names()[m]));
                }
            } else if !img.is_zero() {
                problems.push(format!("image of {} is not homogeneous", source.names()[m]));
            }
            if closed {
                let lhs = target.d(img);
                let rhs = self.apply(source.d_basis(m)).scaled(&f.sign(self.degree as i64));
                if lhs != rhs {
                    problems.push(format!("does not commute with d on {}", source.names()[m]));
                }
            }
            for a in 0..source.algebra().dim() {
                let lhs = self.apply(&source.act_basis(m, a));
                let rhs = target.act(img, &SparseVec::unit(a, f));
                if lhs != rhs {
                    problems.push(format!(
                        "f({}·{}) ≠ f({})·{}",
                        source.names()[m],
                        source.algebra().name(a),
                        source.names()[m],
                        source.algebra().name(a)
                    ));
                }
            }
        }
        problems
    }

    /// The degree-0 map as a graded map between the underlying complexes.
    pub fn graded_map(&self, source: &DGModule, target: &DGModule) -> GradedMap {
        flat_graded_map(
            source.field(),
            &source.positions(),
            &target.positions(),
            target.degrees(),
            self.degree,
            &self.matrix,
        )
    }
}

pub fn flat_graded_map(
    field: Field,
    spos: &[(i32, usize)],
    tpos: &[(i32, usize)],
    tdegrees: &[i32],
    shift: i32,
    matrix: &Matrix,
) -> GradedMap {
    let mut cols: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
    let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
    for &deg in tdegrees {
        *counts.entry(deg).or_insert(0) += 1;
    }
    for (i, (deg, _)) in spos.iter().enumerate() {
        cols.entry(*deg)
            .or_default()
            .push(matrix.column(i).remap(|j| tpos[j].1));
    }
    let mut g = GradedMap::new(shift);
    for (n, c) in cols {
        let rows = counts.get(&(n + shift)).copied().unwrap_or(0);
        g.set_block(n, Matrix::from_columns(field, rows, c).expect("homogeneous map"));
    }
    g
}

/// `Cone(f) = M₁[1] ⊕ M₂` with `d(m₁, m₂) = (-d m₁, f(m₁) + d m₂)`.
pub fn cone(f: &ModuleMap, source: &DGModule, target: &DGModule) -> Result<DGModule> {
    if f.degree != 0 {
        return Err(Error::InvalidStructure(format!(
            "cone needs a degree-0 map, got degree {}",
            f.degree
        )));
    }
    if let Some(p) = f.check(source, target, true).into_iter().next() {
        return Err(Error::InvalidStructure(format!("cone of a non-closed map: {p}")));
    }
    let fld = source.field();
    let n1 = source.dim();
    let mut basis = Vec::new();
    let mut d = Vec::new();
    for m in 0..n1 {
        basis.push((format!("{}[1]", source.names()[m]), source.degree(m) - 1));
        let mut v = source.d_basis(m).neg();
        v.add_scaled(&fld.one(), &f.matrix.column(m).shifted(n1));
        d.push(v);
    }
    for m in 0..target.dim() {
        basis.push((target.names()[m].clone(), target.degree(m)));
        d.push(target.d_basis(m).shifted(n1));
    }
    DGModule::from_fn(source.algebra().clone(), basis, d, |i, a| {
        if i < n1 {
            source.act_basis(i, a)
        } else {
            target.act_basis(i - n1, a).shifted(n1)
        }
    })
}

/// Hom complex between two modules over the same algebra.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub complex: Complex,
    /// Per degree: the variables `(source basis, target basis)` and a basis of
    /// linear maps in those coordinates.
    pub variables: BTreeMap<i32, Vec<(usize, usize)>>,
    pub bases: BTreeMap<i32, Vec<SparseVec>>,
    source_dim: usize,
    target_dim: usize,
    field: Field,
}

impl HomComplex {
    /// `k`-th basis map of degree `n` as a [`ModuleMap`].
    pub fn map(&self, n: i32, k: usize) -> ModuleMap {
        self.to_map(n, &self.bases[&n][k])
    }

    pub fn to_map(&self, n: i32, v: &SparseVec) -> ModuleMap {
        let vars = &self.variables[&n];
        let mut cols = vec![Vec::new(); self.source_dim];
        for (idx, c) in v.iter() {
            let (m, t) = vars[idx];
            cols[m].push((t, c.clone()));
        }
        ModuleMap::new(
            n,
            Matrix::from_columns(
                self.field,
                self.target_dim,
                cols.into_iter().map(SparseVec::from_pairs).collect(),
            )
            .expect("hom variables in range"),
        )
    }

    /// Coordinates of a map in the degree-`n` basis of the Hom complex.
    pub fn coordinates(&self, n: i32, f: &ModuleMap) -> Option<SparseVec> {
        let vars = self.variables.get(&n)?;
        let mut r = Reducer::with_tracking(self.field, vars.len());
        for (k, b) in self.bases[&n].iter().enumerate() {
            r.insert_tagged(b.clone(), k);
        }
        let index: HashMap<(usize, usize), usize> =
            vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut pairs = Vec::new();
        for m in 0..self.source_dim {
            for (t, c) in f.matrix.column(m).iter() {
                pairs.push((*index.get(&(m, t))?, c.clone()));
            }
        }
        r.express(&SparseVec::from_pairs(pairs))
    }
}

/// `Hom^n(M, N)` = homogeneous degree-`n` maps commuting with the action,
/// with `D f = d_N f - (-1)^n f d_M`, on the degrees of `w`.
pub fn hom_complex(m: &DGModule, n: &DGModule, w: DegreeWindow) -> Result<HomComplex> {
    if m.algebra() != n.algebra() {
        return Err(Error::InvalidStructure("Hom between modules over different algebras".into()));
    }
    let field = m.field();
    let ranges = m.degree_range().zip(n.degree_range());
    let empty = ranges.is_none_or(|((mlo, mhi), (nlo, nhi))| w.lo.max(nlo - mhi) > w.hi.min(nhi - mlo));
    if empty {
        let complex = Complex::new(
            field,
            w,
            GradedSpace::new(),
            BTreeMap::new(),
            true,
            true,
        )?;
        return Ok(HomComplex {
            complex,
            variables: BTreeMap::new(),
            bases: BTreeMap::new(),
            source_dim: m.dim(),
            target_dim: n.dim(),
            field,
        });
    }
    let ((mlo, mhi), (nlo, nhi)) = ranges.expect("nonempty modules");
    let (hlo, hhi) = (nlo - mhi, nhi - mlo);
    let lo = w.lo.max(hlo);
    let hi = w.hi.min(hhi);
    let alg = m.algebra();
    let mut inverse: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); m.dim()];
    for ((mm, a), v) in m.action_table() {
        for (i, c) in v.iter() {
            inverse[i].push((*mm, *a, c.clone()));
        }
    }
    let n_by_degree: BTreeMap<i32, Vec<usize>> = (nlo..=nhi).map(|d| (d, n.basis_in_degree(d))).collect();
    let mut variables = BTreeMap::new();
    let mut bases = BTreeMap::new();
    for deg in lo..=hi + 1 {
        let mut vars = Vec::new();
        for mm in 0..m.dim() {
            if let Some(ts) = n_by_degree.get(&(m.degree(mm) + deg)) {
                for &t in ts {
                    vars.push((mm, t));
                }
            }
        }
        let mut rows: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut row_of = |key: (usize, usize, usize)| {
            let len = rows.len();
            *rows.entry(key).or_insert(len)
        };
        let mut cols = Vec::with_capacity(vars.len());
        for &(mm, t) in &vars {
            let mut col = Vec::new();
            for (src, a, c) in &inverse[mm] {
                col.push((row_of((*src, *a, t)), c.clone()));
            }
            for a in 0..alg.dim() {
                for (t2, c) in n.act_basis(t, a).iter() {
                    col.push((row_of((mm, a, t2)), -c));
                }
            }
            cols.push(SparseVec::from_pairs(col));
        }
        let nrows = rows.len();
        let constraints = Matrix::from_columns(field, nrows, cols)?;
        bases.insert(deg, constraints.kernel_basis());
        variables.insert(deg, vars);
    }
    let mut space = GradedSpace::new();
    let mut blocks = BTreeMap::new();
    let hc_tmp = HomComplex {
        complex: Complex::concentrated(field, 0, 0),
        variables: variables.clone(),
        bases: bases.clone(),
        source_dim: m.dim(),
        target_dim: n.dim(),
        field,
    };
    for deg in lo..=hi {
        space.set_component(
            deg,
            (0..bases[&deg].len()).map(|k| format!("f{deg}_{k}")).collect(),
        );
    }
    for deg in lo..hi {
        let mut r = Reducer::with_tracking(field, variables[&(deg + 1)].len());
        for (k, b) in bases[&(deg + 1)].iter().enumerate() {
            r.insert_tagged(b.clone(), k);
        }
        let index: HashMap<(usize, usize), usize> = variables[&(deg + 1)]
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i))
            .collect();
        let sign = field.sign(deg as i64);
        let mut cols = Vec::new();
        for b in &bases[&deg] {
            let f = hc_tmp.to_map(deg, b);
            let mut pairs = Vec::new();
            for mm in 0..m.dim() {
                let mut img = n.d(f.matrix.column(mm));
                img.add_scaled(&-&sign, &f.apply(m.d_basis(mm)));
                for (t, c) in img.iter() {
                    pairs.push((index[&(mm, t)], c.clone()));
                }
            }
            let v = SparseVec::from_pairs(pairs);
            cols.push(r.express(&v).ok_or_else(|| {
                Error::InvalidStructure("differential of a module map is not linear over the algebra".into())
            })?);
        }
        blocks.insert(deg, Matrix::from_columns(field, bases[&(deg + 1)].len(), cols)?);
    }
    let window = DegreeWindow::new(lo, hi)?;
    let complex = Complex::new(
        field,
        window,
        space,
        blocks,
        w.lo <= hlo,
        w.hi >= hhi,
    )?;
    Ok(HomComplex {
        complex,
        variables,
        bases,
        source_dim: m.dim(),
        target_dim: n.dim(),
        field,
    })
}

/// `M ⊗_A N` for a right module `M` over `A` and a left module `N`, given as
/// a right module over `A^op` (`a·n = (-1)^{|a||n|} n·a`).
#[derive(Debug, Clone)]
pub struct TensorOver {
    pub complex: Complex,
    /// Per degree: the pairs `(m, n)` spanning `M⊗N` and the quotient onto the complex component.
    pub pairs: BTreeMap<i32, Vec<(usize, usize)>>,
    pub quotients: BTreeMap<i32, Quotient>,
}

impl TensorOver {
    /// Class of `m ⊗ n` in the component of degree `|m| + |n|`.
    pub fn class(&self, degree: i32, m: usize, n: usize) -> Option<SparseVec> {
        let idx = self.pairs.get(&degree)?.iter().position(|p| *p == (m, n))?;
        let q = &self.quotients[&degree];
        Some(q.project(&SparseVec::unit(idx, q.field())))
    }
}

pub fn tensor_over(m: &DGModule, n: &DGModule, w: DegreeWindow) -> Result<TensorOver> {
    if n.algebra() != &m.algebra().opposite() {
        return Err(Error::InvalidStructure(
            "tensor_over needs a right A-module and a right A^op-module".into(),
        ));
    }
    let field = m.field();
    let alg = m.algebra();
    let mut pairs: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..m.dim() {
        for j in 0..n.dim() {
            let deg = m.degree(i) + n.degree(j);
            if w.contains(deg) {
                pairs.entry(deg).or_default().push((i, j));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(k, p)| (*p, k)))
        .collect();
    let pair_vec = |x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.push((index[&(i, j)], a * b));
            }
        }
        SparseVec::from_pairs(out)
    };
    let mut quotients = BTreeMap::new();
    for (&deg, ps) in &pairs {
        let mut relations = Vec::new();
        for i in 0..m.dim() {
            for a in 0..alg.dim() {
                for j in 0..n.dim() {
                    if m.degree(i) + alg.degree(a) + n.degree(j) != deg {
                        continue;
                    }
                    let ma = m.act_basis(i, a);
                    let an = n
                        .act_basis(j, a)
                        .scaled(&field.sign((alg.degree(a) * n.degree(j)) as i64));
                    let mut rel = pair_vec(&ma, &SparseVec::unit(j, field));
                    rel.add_scaled(&-field.one(), &pair_vec(&SparseVec::unit(i, field), &an));
                    if !rel.is_zero() {
                        relations.push(rel);
                    }
                }
            }
        }
        quotients.insert(deg, Quotient::new(field, ps.len(), relations));
    }
    let mut space = GradedSpace::new();
    for deg in w.degrees() {
        let names = match (pairs.get(&deg), quotients.get(&deg)) {
            (Some(ps), Some(q)) => q
                .complement()
                .iter()
                .map(|&k| format!("{}⊗{}", m.names()[ps[k].0], n.names()[ps[k].1]))
                .collect(),
            _ => Vec::new(),
        };
        space.set_component(deg, names);
    }
    let mut blocks = BTreeMap::new();
    for deg in w.lo..w.hi {
        let (Some(ps), Some(q)) = (pairs.get(&deg), quotients.get(&deg)) else {
            continue;
        };
        let (Some(_), Some(q1)) = (pairs.get(&(deg + 1)), quotients.get(&(deg + 1))) else {
            continue;
        };
        let cols = q
            .complement()
            .iter()
            .map(|&k| {
                let (i, j) = ps[k];
                let mut v = pair_vec(m.d_basis(i), &SparseVec::unit(j, field));
                v.add_scaled(
                    &field.sign(m.degree(i) as i64),
                    &pair_vec(&SparseVec::unit(i, field), n.d_basis(j)),
                );
                q1.project(&v)
            })
            .collect();
        blocks.insert(deg, Matrix::from_columns(field, q1.dim(), cols)?);
    }
    let (mlo, mhi) = m.degree_range().unwrap_or((0, 0));
    let (nlo, nhi) = n.degree_range().unwrap_or((0, 0));
    let complex = Complex::new(
        field,
        w,
        space,
        blocks,
        w.lo <= mlo + nlo,
        w.hi >= mhi + nhi,
    )?;
    Ok(TensorOver {
        complex,
        pairs,
        quotients,
    })
}

/// Builds the right `A^op ⊗ B`-module of an `A`-`B` bimodule from its two
/// actions: `n·(x⊗y) = (-1)^{|x||n|} (x·n)·y`.
pub fn bimodule(
    left_algebra: &DGAlgebra,
    right_algebra: &DGAlgebra,
    basis: Vec<(String, i32)>,
    d: Vec<SparseVec>,
    left: impl Fn(usize, usize) -> SparseVec,
    right: impl Fn(usize, usize) -> SparseVec,
) -> Result<DGModule> {
    let env = left_algebra.opposite().tensor(right_algebra)?;
    let field = env.field();
    let nb = right_algebra.dim();
    let degrees: Vec<i32> = basis.iter().map(|(_, d)| *d).collect();
    let apply_right = |v: &SparseVec, y: usize| -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(c, &right(i, y));
        }
        out
    };
    DGModule::from_fn(env, basis, d, |i, p| {
        let (x, y) = (p / nb, p % nb);
        let s = field.sign((left_algebra.degree(x) * degrees[i]) as i64);
        apply_right(&left(x, i), y).scaled(&s)
    })
}

/// `A` as a bimodule over itself, i.e. a right `A^op ⊗ A`-module.
pub fn diagonal(a: &DGAlgebra) -> Result<DGModule> {
    let f = a.field();
    bimodule(
        a,
        a,
        a.names().iter().cloned().zip(a.degrees().iter().copied()).collect(),
        (0..a.dim()).map(|i| a.d_basis(i).clone()).collect(),
        |x, n| a.mul_basis(x, n).clone(),
        |n, y| a.mul(&SparseVec::unit(n, f), &SparseVec::unit(y, f)),
    )
}

/// Basis-level description of a complex used to build endomorphism algebras.
pub(crate) fn complex_basis(x: &Complex) -> Vec<(i32, usize, String)> {
    let mut out = Vec::new();
    for n in x.window().degrees() {
        for (i, name) in x.space().names(n).iter().enumerate() {
            out.push((n, i, name.clone()));
        }
    }
    out
}

/// `Hom(X, Y)` as a complex on matrix units `E[y←x]`, with
/// `D f = d_Y f - (-1)^{|f|} f d_X`. Both complexes must be finite.
pub struct HomSpace {
    pub source: Vec<(i32, usize, String)>,
    pub target: Vec<(i32, usize, String)>,
    /// Matrix unit `(target index, source index)` for each basis element.
    pub units: Vec<(usize, usize)>,
    pub degrees: Vec<i32>,
    pub names: Vec<String>,
    pub d: Vec<SparseVec>,
}

pub fn hom_space(x: &Complex, y: &Complex) -> Result<HomSpace> {
    if !(x.zero_below() && x.zero_above() && y.zero_below() && y.zero_above()) {
        return Err(Error::WindowInsufficient(
            "Hom of complexes needs finite complexes".into(),
        ));
    }
    let field = x.field();
    let sx = complex_basis(x);
    let sy = complex_basis(y);
    let mut units = Vec::new();
    let mut degrees = Vec::new();
    let mut names = Vec::new();
    let mut index = HashMap::new();
    for (ti, t) in sy.iter().enumerate() {
        for (si, s) in sx.iter().enumerate() {
            index.insert((ti, si), units.len());
            units.push((ti, si));
            degrees.push(t.0 - s.0);
            names.push(format!("E[{}←{}]", t.2, s.2));
        }
    }
    let xpos: HashMap<(i32, usize), usize> = sx.iter().enumerate().map(|(k, s)| ((s.0, s.1), k)).collect();
    let ypos: HashMap<(i32, usize), usize> = sy.iter().enumerate().map(|(k, s)| ((s.0, s.1), k)).collect();
    let mut d = Vec::new();
    for (k, &(ti, si)) in units.iter().enumerate() {
        let (tdeg, tpos) = (sy[ti].0, sy[ti].1);
        let (sdeg, spos) = (sx[si].0, sx[si].1);
        let mut terms = Vec::new();
        // d_Y ∘ E[t←s] = Σ_r (d_Y)_{r,t} E[r←s]
        if let Some(m) = y.d(tdeg) {
            for (r, c) in m.column(tpos).iter() {
                terms.push((index[&(ypos[&(tdeg + 1, r)], si)], c.clone()));
            }
        }
        // E[t←s] ∘ d_X = Σ_q (d_X)_{s,q} E[t←q] over q in degree sdeg-1
        if let Some(m) = x.d(sdeg - 1) {
            let sign = -field.sign(degrees[k] as i64);
            let mt = m.transpose();
            for (q, c) in mt.column(spos).iter() {
                terms.push((index[&(ti, xpos[&(sdeg - 1, q)])], &sign * c));
            }
        }
        d.push(SparseVec::from_pairs(terms));
    }
    Ok(HomSpace {
        source: sx,
        target: sy,
        units,
        degrees,
        names,
        d,
    })
}

/// `End(X)` with composition as product; the unit is the sum of the diagonal matrix units.
pub fn end_algebra(x: &Complex) -> Result<DGAlgebra> {
    let h = hom_space(x, x)?;
    let field = x.field();
    let n = h.source.len();
    let unit = SparseVec::from_pairs((0..n).map(|i| (i * n + i, field.one())));
    DGAlgebra::from_fn(
        field,
        h.names.into_iter().zip(h.degrees).collect(),
        unit,
        h.d,
        |p, q| {
            let (a, b) = (p / n, p % n);
            let (c, e) = (q / n, q % n);
            if b == c {
                SparseVec::unit(a * n + e, field)
            } else {
                SparseVec::new()
            }
        },
    )
}
