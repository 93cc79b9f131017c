//! Finite-dimensional DG algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{Complex, GradedMap, GradedSpace};
use crate::linalg::{Matrix, Reducer, SparseVec, Subspace};
use crate::scalar::{Field, Scalar};

/// DG algebra on a flat homogeneous basis.
///
/// The unit is stored as a vector because several constructions (matrix
/// algebras, gluings) have a unit that is a sum of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGAlgebra {
    field: Field,
    names: Vec<String>,
    degrees: Vec<i32>,
    unit: SparseVec,
    d: Vec<SparseVec>,
    mult: Vec<Vec<SparseVec>>,
}

impl DGAlgebra {
    /// Checks shapes and homogeneity; the algebra axioms are left to [`DGAlgebra::validate`].
    pub fn from_parts(
        field: Field,
        basis: Vec<(String, i32)>,
        unit: SparseVec,
        d: Vec<SparseVec>,
        mult: Vec<Vec<SparseVec>>,
    ) -> Result<DGAlgebra> {
        let n = basis.len();
        let (names, degrees): (Vec<String>, Vec<i32>) = basis.into_iter().unzip();
        if d.len() != n || mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "structure tables do not match the {n} basis elements"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(Error::InvalidStructure(format!("duplicate basis name {name}")));
            }
        }
        let a = DGAlgebra {
            field,
            names,
            degrees,
            unit,
            d,
            mult,
        };
        a.check_vector(&a.unit, 0, "unit")?;
        for i in 0..n {
            a.check_vector(&a.d[i], a.degrees[i] + 1, &format!("d({})", a.names[i]))?;
            for j in 0..n {
                a.check_vector(
                    &a.mult[i][j],
                    a.degrees[i] + a.degrees[j],
                    &format!("{}·{}", a.names[i], a.names[j]),
                )?;
            }
        }
        Ok(a)
    }

    pub fn from_fn(
        field: Field,
        basis: Vec<(String, i32)>,
        unit: SparseVec,
        d: Vec<SparseVec>,
        mult: impl Fn(usize, usize) -> SparseVec,
    ) -> Result<DGAlgebra> {
        let n = basis.len();
        let table = (0..n).map(|i| (0..n).map(|j| mult(i, j)).collect()).collect();
        DGAlgebra::from_parts(field, basis, unit, d, table)
    }

    fn check_vector(&self, v: &SparseVec, degree: i32, what: &str) -> Result<()> {
        for (i, c) in v.iter() {
            if i >= self.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "{what} refers to basis index {i} of {}",
                    self.dim()
                )));
            }
            if c.field() != self.field {
                return Err(Error::FieldMismatch {
                    expected: self.field,
                    found: c.field(),
                });
            }
            if self.degrees[i] != degree {
                return Err(Error::NotHomogeneous(format!(
                    "{what} contains {} of degree {}, expected degree {degree}",
                    self.names[i], self.degrees[i]
                )));
            }
        }
        Ok(())
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> DGAlgebra {
        DGAlgebra {
            field,
            names: vec!["1".into()],
            degrees: vec![0],
            unit: SparseVec::unit(0, field),
            d: vec![SparseVec::new()],
            mult: vec![vec![SparseVec::unit(0, field)]],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.mult[i][j]);
            }
        }
        out
    }

    pub fn d(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            out.add_scaled(a, &self.d[i]);
        }
        out
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, v: &SparseVec) -> Option<i32> {
        let mut it = v.iter().map(|(i, _)| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn basis_in_degree(&self, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    pub fn has_degree(&self, n: i32) -> bool {
        self.degrees.contains(&n)
    }

    pub fn space(&self) -> GradedSpace {
        let mut s = GradedSpace::new();
        for (name, deg) in self.names.iter().zip(&self.degrees) {
            s.push(*deg, name.clone());
        }
        s
    }

    /// Flat index → (degree, position within that degree).
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

    /// Splits a flat vector into its per-degree pieces.
    pub fn split_by_degree(&self, v: &SparseVec) -> BTreeMap<i32, SparseVec> {
        let pos = self.positions();
        let mut out: BTreeMap<i32, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, c) in v.iter() {
            out.entry(pos[i].0).or_default().push((pos[i].1, c.clone()));
        }
        out.into_iter()
            .map(|(k, p)| (k, SparseVec::from_pairs(p)))
            .collect()
    }

    /// Degree-`n` component vector (positions) back to flat coordinates.
    pub fn flatten(&self, n: i32, v: &SparseVec) -> SparseVec {
        let idx = self.basis_in_degree(n);
        v.remap(|k| idx[k])
    }

    /// Underlying cochain complex with the basis grouped by degree.
    pub fn complex(&self) -> Result<Complex> {
        let pos = self.positions();
        let space = self.space();
        let mut blocks: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
        if let Some((lo, hi)) = self.degree_range() {
            for n in lo..hi {
                blocks.insert(n, vec![SparseVec::new(); space.dim(n)]);
            }
        }
        for i in 0..self.dim() {
            let deg = self.degrees[i];
            if let Some(col) = blocks.get_mut(&deg) {
                col[pos[i].1] = self.d[i].remap(|j| pos[j].1);
            }
        }
        let d = blocks
            .into_iter()
            .map(|(n, cols)| {
                (
                    n,
                    Matrix::from_columns(self.field, space.dim(n + 1), cols)
                        .expect("homogeneous differential"),
                )
            })
            .collect();
        Complex::finite(self.field, space, d)
    }

    /// Same product and unit with a replaced differential.
    pub fn with_differential(&self, d: Vec<SparseVec>) -> Result<DGAlgebra> {
        DGAlgebra::from_parts(
            self.field,
            self.names.iter().cloned().zip(self.degrees.iter().copied()).collect(),
            self.unit.clone(),
            d,
            self.mult.clone(),
        )
    }

    pub fn renamed(&self, names: Vec<String>) -> Result<DGAlgebra> {
        DGAlgebra::from_parts(
            self.field,
            names.into_iter().zip(self.degrees.iter().copied()).collect(),
            self.unit.clone(),
            self.d.clone(),
            self.mult.clone(),
        )
    }

    /// Exhaustive check of the DG algebra axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let f = self.field;
        let n = self.dim();
        let one = &self.unit;
        if one.is_zero() {
            report.push(ViolationKind::Unit, vec!["1".into()], "unit is zero".into());
        }
        if !self.d(one).is_zero() {
            report.push(ViolationKind::DifferentialOfUnit, vec!["1".into()], format!("d(1) = {}", self.show(&self.d(one))));
        }
        for i in 0..n {
            let e = SparseVec::unit(i, f);
            let dd = self.d(&self.d[i]);
            if !dd.is_zero() {
                report.push(ViolationKind::SquareZero, vec![self.names[i].clone()], format!("d²= {}", self.show(&dd)));
            }
            let l = self.mul(one, &e);
            let r = self.mul(&e, one);
            if l != e || r != e {
                report.push(
                    ViolationKind::Unit,
                    vec![self.names[i].clone()],
                    format!("1·x = {}, x·1 = {}", self.show(&l), self.show(&r)),
                );
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xy = &self.mult[i][j];
                let lhs = self.d(xy);
                let mut rhs = self.mul(&self.d[i], &SparseVec::unit(j, f));
                rhs.add_scaled(
                    &f.sign(self.degrees[i] as i64),
                    &self.mul(&SparseVec::unit(i, f), &self.d[j]),
                );
                if lhs != rhs {
                    report.push(
                        ViolationKind::Leibniz,
                        vec![self.names[i].clone(), self.names[j].clone()],
                        format!("d(xy) = {}, (dx)y ± x(dy) = {}", self.show(&lhs), self.show(&rhs)),
                    );
                }
            }
        }
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (k, &deg) in self.degrees.iter().enumerate() {
            by_degree.entry(deg).or_default().push(k);
        }
        for i in 0..n {
            for j in 0..n {
                let xy = &self.mult[i][j];
                let dij = self.degrees[i] + self.degrees[j];
                for (&dk, ks) in &by_degree {
                    if !by_degree.contains_key(&(dij + dk)) {
                        continue;
                    }
                    for &k in ks {
                        let yz = &self.mult[j][k];
                        if xy.is_zero() && yz.is_zero() {
                            continue;
                        }
                        let lhs = self.mul(xy, &SparseVec::unit(k, f));
                        let rhs = self.mul(&SparseVec::unit(i, f), yz);
                        if lhs != rhs {
                            report.push(
                                ViolationKind::Associativity,
                                vec![self.names[i].clone(), self.names[j].clone(), self.names[k].clone()],
                                format!("(xy)z = {}, x(yz) = {}", self.show(&lhs), self.show(&rhs)),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    pub fn show(&self, v: &SparseVec) -> String {
        show_vector(v, &self.names)
    }

    /// `m_op(x, y) = (-1)^{|x||y|} m(y, x)`.
    pub fn opposite(&self) -> DGAlgebra {
        let n = self.dim();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.mult[j][i]
                            .scaled(&self.field.sign((self.degrees[i] * self.degrees[j]) as i64))
                    })
                    .collect()
            })
            .collect();
        DGAlgebra {
            mult,
            ..self.clone()
        }
    }

    /// `A ⊗ B` with `(x⊗y)(x'⊗y') = (-1)^{|y||x'|} xx' ⊗ yy'`; basis index `i·dim B + j`.
    pub fn tensor(&self, other: &DGAlgebra) -> Result<DGAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let f = self.field;
        let (na, nb) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * nb + j;
        let pair = |x: &SparseVec, y: &SparseVec| -> SparseVec {
            let mut out = Vec::new();
            for (i, a) in x.iter() {
                for (j, b) in y.iter() {
                    out.push((idx(i, j), a * b));
                }
            }
            SparseVec::from_pairs(out)
        };
        let mut basis = Vec::with_capacity(na * nb);
        let mut d = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                basis.push((
                    format!("({},{})", self.names[i], other.names[j]),
                    self.degrees[i] + other.degrees[j],
                ));
                let mut v = pair(&self.d[i], &SparseVec::unit(j, f));
                v.add_scaled(
                    &f.sign(self.degrees[i] as i64),
                    &pair(&SparseVec::unit(i, f), &other.d[j]),
                );
                d.push(v);
            }
        }
        let unit = pair(&self.unit, &other.unit);
        DGAlgebra::from_fn(f, basis, unit, d, |p, q| {
            let (i, j) = (p / nb, p % nb);
            let (k, l) = (q / nb, q % nb);
            let s = f.sign((other.degrees[j] * self.degrees[k]) as i64);
            pair(&self.mult[i][k], &other.mult[j][l]).scaled(&s)
        })
    }

    /// Product algebra `A × B` (basis of `A` first).
    pub fn product(&self, other: &DGAlgebra) -> Result<DGAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let na = self.dim();
        let mut basis: Vec<(String, i32)> = self
            .names
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| (format!("{n}_1"), *d))
            .collect();
        basis.extend(
            other
                .names
                .iter()
                .zip(&other.degrees)
                .map(|(n, d)| (format!("{n}_2"), *d)),
        );
        let mut d: Vec<SparseVec> = self.d.clone();
        d.extend(other.d.iter().map(|v| v.shifted(na)));
        let unit = self.unit.add(&other.unit.shifted(na), self.field);
        DGAlgebra::from_fn(self.field, basis, unit, d, |i, j| match (i < na, j < na) {
            (true, true) => self.mult[i][j].clone(),
            (false, false) => other.mult[i - na][j - na].shifted(na),
            _ => SparseVec::new(),
        })
    }

    /// Re-expresses the structure in a new homogeneous basis given in old coordinates.
    pub fn change_basis(&self, basis: &[SparseVec], names: Vec<String>) -> Result<DGAlgebra> {
        if basis.len() != self.dim() || names.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "new basis has {} vectors for an algebra of dimension {}",
                basis.len(),
                self.dim()
            )));
        }
        let mut r = Reducer::with_tracking(self.field, self.dim());
        let mut degrees = Vec::new();
        for (k, v) in basis.iter().enumerate() {
            let deg = self
                .degree_of(v)
                .ok_or_else(|| Error::NotHomogeneous(format!("new basis vector {}", names[k])))?;
            degrees.push(deg);
            if let crate::linalg::Insert::Dependent(_) = r.insert_tagged(v.clone(), k) {
                return Err(Error::InvalidStructure(format!(
                    "new basis vector {} is dependent on earlier ones",
                    names[k]
                )));
            }
        }
        let coords = |v: &SparseVec| r.express(v).expect("full-rank basis");
        let unit = coords(&self.unit);
        let d = basis.iter().map(|v| coords(&self.d(v))).collect();
        let mult = basis
            .iter()
            .map(|x| basis.iter().map(|y| coords(&self.mul(x, y))).collect())
            .collect();
        DGAlgebra::from_parts(
            self.field,
            names.into_iter().zip(degrees).collect(),
            unit,
            d,
            mult,
        )
    }

    /// The span of `(A⁺)`-style products of two subspaces.
    pub fn product_span(&self, x: &[SparseVec], y: &[SparseVec]) -> Subspace {
        let mut vs = Vec::new();
        for a in x {
            for b in y {
                let p = self.mul(a, b);
                if !p.is_zero() {
                    vs.push(p);
                }
            }
        }
        Subspace::new(self.field, self.dim(), vs)
    }
}

pub fn show_vector(v: &SparseVec, names: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('·');
        }
        out.push_str(&names[i]);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    Unit,
    DifferentialOfUnit,
    SquareZero,
    Leibniz,
    Associativity,
    Action,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Unit => "unit",
            ViolationKind::DifferentialOfUnit => "d(1)",
            ViolationKind::SquareZero => "d²",
            ViolationKind::Leibniz => "Leibniz",
            ViolationKind::Associativity => "associativity",
            ViolationKind::Action => "action",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub tuple: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({}): {}", self.kind, self.tuple.join(", "), self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: ViolationKind, tuple: Vec<String>, detail: String) {
        self.violations.push(Violation { kind, tuple, detail });
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidStructure(v.to_string())),
        }
    }
}

/// Algebra map `ε: A → k`, stored by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    algebra: DGAlgebra,
    eps: Vec<Scalar>,
}

impl Augmentation {
    pub fn new(algebra: DGAlgebra, eps: Vec<Scalar>) -> Result<Augmentation> {
        if eps.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "augmentation has {} values for an algebra of dimension {}",
                eps.len(),
                algebra.dim()
            )));
        }
        let aug = Augmentation { algebra, eps };
        aug.check()?;
        Ok(aug)
    }

    /// `ε` on a basis with the unit first and `ε = 0` on every other element.
    pub fn standard(algebra: DGAlgebra) -> Result<Augmentation> {
        let f = algebra.field();
        let mut eps = vec![f.zero(); algebra.dim()];
        if algebra.unit() != &SparseVec::unit(0, f) {
            return Err(Error::NotAugmentation(
                "the first basis element is not the unit".into(),
            ));
        }
        eps[0] = f.one();
        Augmentation::new(algebra, eps)
    }

    pub fn ground(field: Field) -> Augmentation {
        Augmentation {
            algebra: DGAlgebra::ground(field),
            eps: vec![field.one()],
        }
    }

    fn check(&self) -> Result<()> {
        let a = &self.algebra;
        for (i, e) in self.eps.iter().enumerate() {
            if !e.is_zero() && a.degree(i) != 0 {
                return Err(Error::NotAugmentation(format!(
                    "ε({}) ≠ 0 but {} has degree {}",
                    a.name(i),
                    a.name(i),
                    a.degree(i)
                )));
            }
        }
        if !self.eval(a.unit()).is_one() {
            return Err(Error::NotAugmentation("ε(1) ≠ 1".into()));
        }
        for i in 0..a.dim() {
            if !self.eval(a.d_basis(i)).is_zero() {
                return Err(Error::NotAugmentation(format!("ε(d{}) ≠ 0", a.name(i))));
            }
            for j in 0..a.dim() {
                if self.eval(a.mul_basis(i, j)) != &self.eps[i] * &self.eps[j] {
                    return Err(Error::NotAugmentation(format!(
                        "ε({}·{}) ≠ ε({})ε({})",
                        a.name(i),
                        a.name(j),
                        a.name(i),
                        a.name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &DGAlgebra {
        &self.algebra
    }

    pub fn values(&self) -> &[Scalar] {
        &self.eps
    }

    pub fn eval(&self, v: &SparseVec) -> Scalar {
        let mut acc = self.algebra.field().zero();
        for (i, c) in v.iter() {
            acc += &(c * &self.eps[i]);
        }
        acc
    }

    pub fn is_normalized(&self) -> bool {
        let f = self.algebra.field();
        self.algebra.unit() == &SparseVec::unit(0, f)
            && self.eps[0].is_one()
            && self.eps[1..].iter().all(|e| e.is_zero())
    }

    /// Same augmentation in a basis `1, a₁, …, a_m` with `a_i` spanning `A⁺`.
    pub fn normalize(&self) -> Result<Augmentation> {
        if self.is_normalized() {
            return Ok(self.clone());
        }
        let a = &self.algebra;
        let f = a.field();
        let unit = a.unit().clone();
        let mut basis = vec![unit.clone()];
        let mut names = vec![match unit.iter().collect::<Vec<_>>().as_slice() {
            [(i, c)] if c.is_one() => a.name(*i).to_string(),
            _ => "1".to_string(),
        }];
        let mut r = Reducer::new(f, a.dim());
        r.insert(unit.clone());
        for i in 0..a.dim() {
            let e = &self.eps[i];
            let mut v = SparseVec::unit(i, f);
            v.add_scaled(&-e, &unit);
            if r.insert(v.clone()) {
                basis.push(v);
                names.push(if e.is_zero() {
                    a.name(i).to_string()
                } else if e.is_one() {
                    format!("{}-1", a.name(i))
                } else {
                    format!("{}-{}", a.name(i), e)
                });
            }
        }
        let mut taken = std::collections::HashSet::new();
        for n in names.iter_mut() {
            while !taken.insert(n.clone()) {
                n.push('\'');
            }
        }
        let b = a.change_basis(&basis, names)?;
        Augmentation::standard(b)
    }

    /// Basis of `ker ε` in the algebra's coordinates.
    pub fn ideal_basis(&self) -> Vec<SparseVec> {
        let a = &self.algebra;
        let row = Matrix::from_columns(
            a.field(),
            1,
            self.eps
                .iter()
                .map(|e| SparseVec::single(0, e.clone()))
                .collect(),
        )
        .expect("augmentation row");
        row.kernel_basis()
    }

    pub fn augmentation_ideal(&self) -> AugmentationIdeal {
        let basis = self.ideal_basis();
        let a = &self.algebra;
        let names = basis.iter().map(|v| a.show(v)).collect();
        let degrees = basis.iter().map(|v| a.degree_of(v).unwrap_or(0)).collect();
        AugmentationIdeal {
            basis,
            names,
            degrees,
        }
    }

    /// Bases of `(A⁺)^j` for `j = 1, 2, …` until the power vanishes, stabilises,
    /// or `bound` is reached.
    pub fn ideal_powers(&self, bound: usize) -> Vec<Subspace> {
        let a = &self.algebra;
        let ideal = self.ideal_basis();
        let mut powers = vec![Subspace::new(a.field(), a.dim(), ideal.clone())];
        while powers.len() < bound {
            let last = powers.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let next = a.product_span(last.basis(), &ideal);
            let stuck = next.dim() == last.dim();
            powers.push(next);
            if stuck {
                break;
            }
        }
        powers
    }

    /// Least `N` with `(A⁺)^N = 0`, searched up to `bound` (default: `dim A`).
    pub fn nilpotency_index(&self, bound: Option<usize>) -> Nilpotency {
        let bound = bound.unwrap_or(self.algebra.dim().max(1));
        let powers = self.ideal_powers(bound + 1);
        match powers.iter().position(|p| p.dim() == 0) {
            Some(k) if k < bound => Nilpotency::Index(k + 1),
            _ => Nilpotency::NotWithin(bound),
        }
    }

    pub fn resolution_hypotheses(&self) -> HypothesisReport {
        let a = &self.algebra;
        let mut r = HypothesisReport::default();
        r.push("finite-dimensional", true, format!("dim A = {}", a.dim()));
        let top = a.degrees().iter().copied().max().unwrap_or(0);
        r.push(
            "concentrated in degrees ≤ 0",
            top <= 0,
            format!("top degree {top}"),
        );
        let nil = self.nilpotency_index(None);
        r.push("A⁺ nilpotent", nil.is_nilpotent(), nil.to_string());
        r
    }

    pub fn connective_hypotheses(&self) -> HypothesisReport {
        let a = &self.algebra;
        let mut r = HypothesisReport::default();
        let low = a.degrees().iter().copied().min().unwrap_or(0);
        r.push("A^{<0} = 0", low >= 0, format!("lowest degree {low}"));
        let d0 = a.basis_in_degree(0).len();
        r.push("A⁰ = k", d0 == 1, format!("dim A⁰ = {d0}"));
        r.push(
            "each Aⁱ finite-dimensional",
            true,
            format!("{:?}", a.space().dims()),
        );
        r
    }

    pub fn opposite(&self) -> Augmentation {
        Augmentation {
            algebra: self.algebra.opposite(),
            eps: self.eps.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationIdeal {
    pub basis: Vec<SparseVec>,
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
}

impl AugmentationIdeal {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    Index(usize),
    NotWithin(usize),
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Index(_))
    }
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Index(n) => write!(f, "(A⁺)^{n} = 0"),
            Nilpotency::NotWithin(b) => write!(f, "not nilpotent within bound {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HypothesisReport {
    pub items: Vec<Hypothesis>,
}

impl HypothesisReport {
    pub fn push(&mut self, name: &str, holds: bool, detail: String) {
        self.items.push(Hypothesis {
            name: name.into(),
            holds,
            detail,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|h| h.holds)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.items.iter().find(|h| h.name == name).map(|h| h.holds)
    }
}

/// Degree-preserving linear map between DG algebras, as a matrix in the flat bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGAlgebraHom {
    pub source: DGAlgebra,
    pub target: DGAlgebra,
    pub matrix: Matrix,
}

impl DGAlgebraHom {
    pub fn new(source: DGAlgebra, target: DGAlgebra, matrix: Matrix) -> Result<DGAlgebraHom> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(DGAlgebraHom {
            source,
            target,
            matrix,
        })
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(v)
    }

    /// Problems with degree, differential, multiplicativity and (if asked) the unit.
    pub fn check(&self, unital: bool) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut problems = Vec::new();
        for i in 0..s.dim() {
            let img = self.matrix.column(i);
            if let Some(deg) = t.degree_of(img) {
                if deg != s.degree(i) {
                    problems.push(format!("{} changes degree", s.name(i)));
                }
            } else if !img.is_zero() {
                problems.push(format!("image of {} is not homogeneous", s.name(i)));
            }
            if self.apply(s.d_basis(i)) != t.d(img) {
                problems.push(format!("does not commute with d on {}", s.name(i)));
            }
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(s.mul_basis(i, j));
                let rhs = t.mul(self.matrix.column(i), self.matrix.column(j));
                if lhs != rhs {
                    problems.push(format!(
                        "f({}·{}) ≠ f({})·f({})",
                        s.name(i),
                        s.name(j),
                        s.name(i),
                        s.name(j)
                    ));
                }
            }
        }
        if unital && self.apply(s.unit()) != *t.unit() {
            problems.push("f(1) ≠ 1".into());
        }
        problems
    }

    pub fn is_homomorphism(&self, unital: bool) -> bool {
        self.check(unital).is_empty()
    }

    /// The map as a graded map between the underlying complexes.
    pub fn graded_map(&self) -> GradedMap {
        let (s, t) = (&self.source, &self.target);
        let spos = s.positions();
        let tpos = t.positions();
        let mut cols: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
        for i in 0..s.dim() {
            cols.entry(spos[i].0).or_default().push(
                self.matrix
                    .column(i)
                    .remap(|j| tpos[j].1),
            );
        }
        let mut g = GradedMap::new(0);
        for (n, c) in cols {
            g.set_block(
                n,
                Matrix::from_columns(s.field(), t.basis_in_degree(n).len(), c)
                    .expect("degree-preserving map"),
            );
        }
        g
    }
}
