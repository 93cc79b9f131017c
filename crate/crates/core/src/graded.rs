//! Graded spaces, homogeneous maps and cochain complexes on finite degree
//! windows.
//!
//! A [`Complex`] stores components for every degree of its window. Outside
//! the window a component is either known to vanish (`zero_below` /
//! `zero_above`) or unknown, and cohomology is only reported where both
//! neighbouring differentials are known.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Reducer, SparseVec};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub lo: i32,
    pub hi: i32,
}

impl DegreeWindow {
    pub fn new(lo: i32, hi: i32) -> Result<DegreeWindow> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn degrees(&self) -> RangeInclusive<i32> {
        self.lo..=self.hi
    }

    /// Degrees with both neighbours inside the window.
    pub fn interior(&self) -> RangeInclusive<i32> {
        self.lo + 1..=self.hi - 1
    }

    pub fn contains(&self, n: i32) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn require_interior(&self) -> Result<()> {
        if self.hi - self.lo < 2 {
            return Err(Error::WindowTooSmall {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }

    pub fn reflect(&self) -> DegreeWindow {
        DegreeWindow {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn shifted(&self, n: i32) -> DegreeWindow {
        DegreeWindow {
            lo: self.lo + n,
            hi: self.hi + n,
        }
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl FromStr for DegreeWindow {
    type Err = Error;

    /// `LO:HI`, e.g. `-6:4`.
    fn from_str(s: &str) -> Result<DegreeWindow> {
        let bad = || Error::InvalidStructure(format!("window {s:?} is not of the form LO:HI"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        DegreeWindow::new(lo, hi)
    }
}

/// Degreewise finite graded space with named basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSpace {
    components: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> GradedSpace {
        GradedSpace::default()
    }

    pub fn push(&mut self, degree: i32, name: impl Into<String>) -> usize {
        let c = self.components.entry(degree).or_default();
        c.push(name.into());
        c.len() - 1
    }

    pub fn set_component(&mut self, degree: i32, names: Vec<String>) {
        self.components.insert(degree, names);
    }

    pub fn dim(&self, n: i32) -> usize {
        self.components.get(&n).map_or(0, |c| c.len())
    }

    pub fn names(&self, n: i32) -> &[String] {
        self.components.get(&n).map_or(&[], |c| c.as_slice())
    }

    /// Degrees carrying a nonzero component.
    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.components
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(n, _)| *n)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|c| c.len()).sum()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.components
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(n, c)| (*n, c.len()))
            .collect()
    }
}

/// Homogeneous linear map of degree `shift`: block `n` sends component `n`
/// to component `n + shift`. Missing blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn new(shift: i32) -> GradedMap {
        GradedMap {
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn set_block(&mut self, n: i32, m: Matrix) {
        self.blocks.insert(n, m);
    }

    pub fn block(&self, n: i32) -> Option<&Matrix> {
        self.blocks.get(&n)
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    /// Block `n` padded to the given shape when absent.
    pub fn block_or_zero(&self, field: Field, n: i32, rows: usize, cols: usize) -> Matrix {
        self.blocks
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(field, rows, cols))
    }

    pub fn apply(&self, n: i32, v: &SparseVec) -> SparseVec {
        match self.blocks.get(&n) {
            Some(m) => m.apply(v),
            None => SparseVec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        let mut out = GradedMap::new(self.shift + other.shift);
        for (n, inner) in &other.blocks {
            if let Some(outer) = self.blocks.get(&(n + other.shift)) {
                out.blocks.insert(*n, outer.checked_mul(inner)?);
            }
        }
        Ok(out)
    }

    pub fn identity(c: &Complex) -> GradedMap {
        let mut out = GradedMap::new(0);
        for n in c.window.degrees() {
            out.blocks.insert(n, Matrix::identity(c.field, c.space.dim(n)));
        }
        out
    }

    pub fn zero() -> GradedMap {
        GradedMap::new(0)
    }

    pub fn transpose_dual(&self) -> GradedMap {
        let mut out = GradedMap::new(self.shift);
        for (n, m) in &self.blocks {
            out.blocks.insert(-n - self.shift, m.transpose());
        }
        out
    }
}

/// Degreewise finite cochain complex on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    field: Field,
    window: DegreeWindow,
    space: GradedSpace,
    d: BTreeMap<i32, Matrix>,
    zero_below: bool,
    zero_above: bool,
}

impl Complex {
    /// `d` holds blocks `n → n+1` for `n` in `[lo, hi-1]`; missing blocks are
    /// zero. Fails if some composite `d∘d` is nonzero.
    pub fn new(
        field: Field,
        window: DegreeWindow,
        space: GradedSpace,
        d: BTreeMap<i32, Matrix>,
        zero_below: bool,
        zero_above: bool,
    ) -> Result<Complex> {
        let mut c = Complex {
            field,
            window,
            space,
            d: BTreeMap::new(),
            zero_below,
            zero_above,
        };
        for n in window.lo..window.hi {
            let (r, k) = (c.space.dim(n + 1), c.space.dim(n));
            let m = d
                .get(&n)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(field, r, k));
            if m.rows() != r || m.cols() != k {
                return Err(Error::DimensionMismatch(format!(
                    "differential in degree {n} is {}x{}, expected {r}x{k}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: m.field(),
                });
            }
            c.d.insert(n, m);
        }
        for n in d.keys() {
            if !(window.lo..window.hi).contains(n) && !d[n].is_zero() {
                return Err(Error::InvalidStructure(format!(
                    "differential block in degree {n} lies outside the window {window}"
                )));
            }
        }
        c.check_square_zero()?;
        Ok(c)
    }

    /// Complex with no differential and no unknown degrees.
    pub fn finite(field: Field, space: GradedSpace, d: BTreeMap<i32, Matrix>) -> Result<Complex> {
        let lo = space.support().min().unwrap_or(0);
        let hi = space.support().max().unwrap_or(0);
        Complex::new(field, DegreeWindow { lo, hi }, space, d, true, true)
    }

    /// `k^dim` in a single degree.
    pub fn concentrated(field: Field, degree: i32, dim: usize) -> Complex {
        let mut space = GradedSpace::new();
        for i in 0..dim {
            space.push(degree, format!("e{i}"));
        }
        Complex {
            field,
            window: DegreeWindow {
                lo: degree,
                hi: degree,
            },
            space,
            d: BTreeMap::new(),
            zero_below: true,
            zero_above: true,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn zero_below(&self) -> bool {
        self.zero_below
    }

    pub fn zero_above(&self) -> bool {
        self.zero_above
    }

    /// Dimension in degree `n`, or `None` when the degree is not materialised.
    pub fn dim(&self, n: i32) -> Option<usize> {
        if self.window.contains(n) {
            Some(self.space.dim(n))
        } else if (n < self.window.lo && self.zero_below) || (n > self.window.hi && self.zero_above)
        {
            Some(0)
        } else {
            None
        }
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.window
            .degrees()
            .map(|n| (n, self.space.dim(n)))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.space.total_dim()
    }

    /// Differential `C^n → C^{n+1}` when both sides are known.
    pub fn d(&self, n: i32) -> Option<Matrix> {
        if let Some(m) = self.d.get(&n) {
            return Some(m.clone());
        }
        let (src, tgt) = (self.dim(n)?, self.dim(n + 1)?);
        if src == 0 || tgt == 0 {
            Some(Matrix::zeros(self.field, tgt, src))
        } else {
            None
        }
    }

    pub fn apply_d(&self, n: i32, v: &SparseVec) -> SparseVec {
        self.d.get(&n).map_or_else(SparseVec::new, |m| m.apply(v))
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for n in self.window.lo..self.window.hi - 1 {
            let (a, b) = (&self.d[&n], &self.d[&(n + 1)]);
            if !b.checked_mul(a)?.is_zero() {
                return Err(Error::DifferentialNotSquareZero { degree: n });
            }
        }
        Ok(())
    }

    /// Degrees in which cohomology is determined by the stored data.
    pub fn reliable(&self, n: i32) -> bool {
        self.d(n - 1).is_some() && self.d(n).is_some()
    }

    /// Cohomology in the interior of `w`.
    pub fn cohomology(&self, w: DegreeWindow) -> Result<Cohomology> {
        w.require_interior()?;
        self.cohomology_in(w.interior())
    }

    /// Cohomology on an explicit range of degrees, each of which must be reliable.
    pub fn cohomology_in(&self, degrees: RangeInclusive<i32>) -> Result<Cohomology> {
        let mut groups = BTreeMap::new();
        for n in degrees {
            groups.insert(n, self.cohomology_at(n)?);
        }
        Ok(Cohomology {
            field: self.field,
            groups,
        })
    }

    pub fn cohomology_at(&self, n: i32) -> Result<CohomologyGroup> {
        let (Some(before), Some(after)) = (self.d(n - 1), self.d(n)) else {
            return Err(Error::WindowInsufficient(format!(
                "cohomology in degree {n} needs components {}..={} but the complex is stored on {}",
                n - 1,
                n + 1,
                self.window
            )));
        };
        let cycles = after.kernel_basis();
        let mut reducer = Reducer::with_tracking(self.field, after.cols());
        let mut tag = 0;
        for b in before.columns() {
            reducer.insert_tagged(b.clone(), tag);
            tag += 1;
        }
        let offset = tag;
        let mut reps = Vec::new();
        for z in cycles {
            if let crate::linalg::Insert::Independent = reducer.insert_tagged(z.clone(), tag) {
                reps.push(z);
                tag += 1;
            }
        }
        Ok(CohomologyGroup {
            degree: n,
            representatives: reps,
            reducer,
            offset,
            names: self.space.names(n).to_vec(),
        })
    }

    pub fn is_acyclic(&self, w: DegreeWindow) -> Result<bool> {
        Ok(self.cohomology(w)?.dims().values().all(|&d| d == 0))
    }

    /// Component `d` of the result is component `d + n` of `self`; the
    /// differential is multiplied by `(-1)^n`.
    pub fn shift(&self, n: i32) -> Complex {
        let sign = self.field.sign(n as i64);
        let mut space = GradedSpace::new();
        for deg in self.window.degrees() {
            space.set_component(deg - n, self.space.names(deg).to_vec());
        }
        Complex {
            field: self.field,
            window: self.window.shifted(-n),
            space,
            d: self
                .d
                .iter()
                .map(|(k, m)| (k - n, m.scaled(&sign)))
                .collect(),
            zero_below: self.zero_below,
            zero_above: self.zero_above,
        }
    }

    /// Degree `n` is the dual of degree `-n`; `d^n = (-1)^{n+1} (d^{-n-1})^T`.
    pub fn graded_dual(&self) -> Complex {
        let mut space = GradedSpace::new();
        for deg in self.window.degrees() {
            space.set_component(
                -deg,
                self.space.names(deg).iter().map(|s| format!("{s}'")).collect(),
            );
        }
        let d = self
            .d
            .iter()
            .map(|(k, m)| {
                let n = -k - 1;
                (n, m.transpose().scaled(&self.field.sign(n as i64 + 1)))
            })
            .collect();
        Complex {
            field: self.field,
            window: self.window.reflect(),
            space,
            d,
            zero_below: self.zero_above,
            zero_above: self.zero_below,
        }
    }

    /// Canonical map `C → C**`, `x ↦ (-1)^{|x|} x''`.
    pub fn bidual_map(&self) -> GradedMap {
        let mut f = GradedMap::new(0);
        for n in self.window.degrees() {
            f.set_block(
                n,
                Matrix::identity(self.field, self.space.dim(n)).scaled(&self.field.sign(n as i64)),
            );
        }
        f
    }

    /// Koszul-signed tensor product on the window `w`.
    pub fn tensor(&self, other: &Complex, w: DegreeWindow) -> Result<Complex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let mut basis: KeyedBasis<(i32, i32, usize, usize)> = KeyedBasis::new();
        for n in w.degrees() {
            for p in self.tensor_range(other, n)? {
                let (a, b) = (self.dim(p).unwrap(), other.dim(n - p).unwrap());
                for i in 0..a {
                    for j in 0..b {
                        basis.push(n, (p, n - p, i, j));
                    }
                }
            }
        }
        let zero_below = self.zero_below
            && other.zero_below
            && w.lo <= self.window.lo + other.window.lo;
        let zero_above = self.zero_above
            && other.zero_above
            && w.hi >= self.window.hi + other.window.hi;
        let field = self.field;
        let dx: HashMap<i32, Matrix> = (w.lo - other.window.hi - 1..=w.hi - other.window.lo)
            .filter_map(|p| self.d(p).map(|m| (p, m)))
            .collect();
        let dy: HashMap<i32, Matrix> = (w.lo - self.window.hi - 1..=w.hi - self.window.lo)
            .filter_map(|q| other.d(q).map(|m| (q, m)))
            .collect();
        complex_from_keys(
            field,
            w,
            &basis,
            |&(p, q, i, j)| format!("({},{})", self.space.names(p)[i], other.space.names(q)[j]),
            |_, &(p, q, i, j)| {
                let mut out = Vec::new();
                if let Some(m) = dx.get(&p) {
                    for (r, c) in m.column(i).iter() {
                        out.push(((p + 1, q, r, j), c.clone()));
                    }
                }
                if let Some(m) = dy.get(&q) {
                    let s = field.sign(p as i64);
                    for (r, c) in m.column(j).iter() {
                        out.push(((p, q + 1, i, r), &s * c));
                    }
                }
                out
            },
            zero_below,
            zero_above,
        )
    }

    fn tensor_range(&self, other: &Complex, n: i32) -> Result<RangeInclusive<i32>> {
        let insufficient = || {
            Error::WindowInsufficient(format!(
                "tensor degree {n} needs components outside {} ⊗ {}",
                self.window, other.window
            ))
        };
        let lo = match (self.zero_below, other.zero_above) {
            (true, true) => self.window.lo.max(n - other.window.hi),
            (true, false) => self.window.lo,
            (false, true) => n - other.window.hi,
            (false, false) => return Err(insufficient()),
        };
        let hi = match (self.zero_above, other.zero_below) {
            (true, true) => self.window.hi.min(n - other.window.lo),
            (true, false) => self.window.hi,
            (false, true) => n - other.window.lo,
            (false, false) => return Err(insufficient()),
        };
        for p in lo..=hi {
            if self.dim(p).is_none() || other.dim(n - p).is_none() {
                return Err(insufficient());
            }
        }
        Ok(lo..=hi)
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        let lo = self.window.lo.min(other.window.lo);
        let hi = self.window.hi.max(other.window.hi);
        let w = DegreeWindow { lo, hi };
        let mut space = GradedSpace::new();
        let mut d = BTreeMap::new();
        for n in w.degrees() {
            let (Some(a), Some(b)) = (self.dim(n), other.dim(n)) else {
                return Err(Error::WindowInsufficient(format!(
                    "direct sum of complexes on {} and {}",
                    self.window, other.window
                )));
            };
            let mut names = self.space.names(n).to_vec();
            names.extend(other.space.names(n).iter().cloned());
            debug_assert_eq!(names.len(), a + b);
            space.set_component(n, names);
            if n < hi {
                let (Some(x), Some(y)) = (self.d(n), other.d(n)) else {
                    return Err(Error::WindowInsufficient(format!(
                        "direct sum of complexes on {} and {}",
                        self.window, other.window
                    )));
                };
                d.insert(n, x.direct_sum(&y));
            }
        }
        Complex::new(
            self.field,
            w,
            space,
            d,
            self.zero_below && other.zero_below,
            self.zero_above && other.zero_above,
        )
    }

    /// Sub-window of `self`; the restriction forgets vanishing outside `w`
    /// unless `w` reaches the stored edge.
    pub fn restrict(&self, w: DegreeWindow) -> Result<Complex> {
        if w.lo < self.window.lo || w.hi > self.window.hi {
            return Err(Error::WindowInsufficient(format!(
                "cannot restrict {} to {w}",
                self.window
            )));
        }
        let mut space = GradedSpace::new();
        for n in w.degrees() {
            space.set_component(n, self.space.names(n).to_vec());
        }
        Ok(Complex {
            field: self.field,
            window: w,
            space,
            d: (w.lo..w.hi).map(|n| (n, self.d[&n].clone())).collect(),
            zero_below: self.zero_below && w.lo == self.window.lo,
            zero_above: self.zero_above && w.hi == self.window.hi,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub degree: i32,
    representatives: Vec<SparseVec>,
    reducer: Reducer,
    offset: usize,
    names: Vec<String>,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Cocycles whose classes form a basis.
    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Coordinates of the class of a cocycle; `None` if `z` is not a cocycle.
    pub fn class_of(&self, z: &SparseVec) -> Option<SparseVec> {
        let combo = self.reducer.express(z)?;
        Some(SparseVec::from_pairs(
            combo
                .iter()
                .filter(|(t, _)| *t >= self.offset)
                .map(|(t, c)| (t - self.offset, c.clone())),
        ))
    }

    /// Human-readable representative names, e.g. `x + 2·y`.
    pub fn describe(&self) -> Vec<String> {
        self.representatives
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(i, c)| {
                        if c.is_one() {
                            self.names[i].clone()
                        } else {
                            format!("{c}·{}", self.names[i])
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Cohomology {
    pub field: Field,
    groups: BTreeMap<i32, CohomologyGroup>,
}

impl Cohomology {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.groups.iter().map(|(n, g)| (*n, g.dim())).collect()
    }

    /// Degrees with nonzero cohomology.
    pub fn nonzero(&self) -> BTreeMap<i32, usize> {
        self.dims().into_iter().filter(|(_, d)| *d > 0).collect()
    }

    pub fn group(&self, n: i32) -> Option<&CohomologyGroup> {
        self.groups.get(&n)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.groups.keys().copied()
    }
}

/// Outcome of a quasi-isomorphism check: the induced matrix per degree.
#[derive(Debug, Clone)]
pub struct QuasiIsoReport {
    pub induced: BTreeMap<i32, Matrix>,
    pub failures: Vec<i32>,
}

impl QuasiIsoReport {
    pub fn is_quasi_iso(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `f` is a chain map on `w` and that it induces isomorphisms
/// in the interior of `w`.
pub fn verify_quasi_iso(
    source: &Complex,
    target: &Complex,
    f: &GradedMap,
    w: DegreeWindow,
) -> Result<QuasiIsoReport> {
    w.require_interior()?;
    check_chain_map(source, target, f, w)?;
    let hs = source.cohomology(w)?;
    let ht = target.cohomology(w)?;
    let mut induced = BTreeMap::new();
    let mut failures = Vec::new();
    for n in w.interior() {
        let (gs, gt) = (hs.group(n).unwrap(), ht.group(n).unwrap());
        let cols: Vec<SparseVec> = gs
            .representatives()
            .iter()
            .map(|z| {
                gt.class_of(&f.apply(n, z))
                    .expect("chain maps send cocycles to cocycles")
            })
            .collect();
        let m = Matrix::from_columns(source.field(), gt.dim(), cols)?;
        if gs.dim() != gt.dim() || m.rank() != gs.dim() {
            failures.push(n);
        }
        induced.insert(n, m);
    }
    Ok(QuasiIsoReport { induced, failures })
}

/// `d_T f = f d_S` on every degree of `w` where both sides are known.
pub fn check_chain_map(source: &Complex, target: &Complex, f: &GradedMap, w: DegreeWindow) -> Result<()> {
    if f.shift != 0 {
        return Err(Error::InvalidStructure(format!(
            "chain map must have degree 0, got {}",
            f.shift
        )));
    }
    let field = source.field();
    for n in w.lo..w.hi {
        let (Some(ds), Some(dt)) = (source.d(n), target.d(n)) else {
            continue;
        };
        let (Some(sn), Some(sn1), Some(tn), Some(tn1)) = (
            source.dim(n),
            source.dim(n + 1),
            target.dim(n),
            target.dim(n + 1),
        ) else {
            continue;
        };
        let fn0 = f.block_or_zero(field, n, tn, sn);
        let fn1 = f.block_or_zero(field, n + 1, tn1, sn1);
        if dt.checked_mul(&fn0)? != fn1.checked_mul(&ds)? {
            return Err(Error::NotChainMap { degree: n });
        }
    }
    Ok(())
}

/// Basis indexed by structured keys, grouped by degree.
#[derive(Debug, Clone)]
pub struct KeyedBasis<K: Clone + Eq + Hash> {
    keys: BTreeMap<i32, Vec<K>>,
    index: HashMap<K, (i32, usize)>,
}

impl<K: Clone + Eq + Hash> Default for KeyedBasis<K> {
    fn default() -> Self {
        KeyedBasis {
            keys: BTreeMap::new(),
            index: HashMap::new(),
        }
    }
}

impl<K: Clone + Eq + Hash> KeyedBasis<K> {
    pub fn new() -> KeyedBasis<K> {
        KeyedBasis::default()
    }

    pub fn push(&mut self, degree: i32, key: K) -> usize {
        let v = self.keys.entry(degree).or_default();
        self.index.insert(key.clone(), (degree, v.len()));
        v.push(key);
        v.len() - 1
    }

    pub fn dim(&self, n: i32) -> usize {
        self.keys.get(&n).map_or(0, |v| v.len())
    }

    pub fn keys(&self, n: i32) -> &[K] {
        self.keys.get(&n).map_or(&[], |v| v.as_slice())
    }

    pub fn locate(&self, key: &K) -> Option<(i32, usize)> {
        self.index.get(key).copied()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.keys.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.index.len()
    }

    /// Vector in degree `n` from keyed terms; terms with unknown keys fail.
    pub fn vector(&self, n: i32, terms: impl IntoIterator<Item = (K, Scalar)>) -> Result<SparseVec>
    where
        K: fmt::Debug,
    {
        let mut pairs = Vec::new();
        for (k, c) in terms {
            match self.index.get(&k) {
                Some((deg, i)) if *deg == n => pairs.push((*i, c)),
                Some((deg, _)) => {
                    return Err(Error::NotHomogeneous(format!(
                        "{k:?} has degree {deg}, expected {n}"
                    )))
                }
                None => {
                    return Err(Error::InvalidStructure(format!(
                        "{k:?} is not a basis element in degree {n}"
                    )))
                }
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn space(&self, name: impl Fn(&K) -> String) -> GradedSpace {
        let mut s = GradedSpace::new();
        for (n, ks) in &self.keys {
            s.set_component(*n, ks.iter().map(&name).collect());
        }
        s
    }
}

/// Builds a complex on `window` from a keyed basis and a differential given
/// on basis keys. In the top degree the differential must vanish when
/// `zero_above` is set; otherwise it is not evaluated there.
pub fn complex_from_keys<K, N, D>(
    field: Field,
    window: DegreeWindow,
    basis: &KeyedBasis<K>,
    name: N,
    d: D,
    zero_below: bool,
    zero_above: bool,
) -> Result<Complex>
where
    K: Clone + Eq + Hash + fmt::Debug,
    N: Fn(&K) -> String,
    D: Fn(i32, &K) -> Vec<(K, Scalar)>,
{
    let mut space = GradedSpace::new();
    for n in window.degrees() {
        space.set_component(n, basis.keys(n).iter().map(&name).collect());
    }
    let mut blocks = BTreeMap::new();
    for n in window.degrees() {
        if n == window.hi {
            if zero_above {
                for k in basis.keys(n) {
                    let mut sums: HashMap<K, Scalar> = HashMap::new();
                    for (key, c) in d(n, k) {
                        *sums.entry(key).or_insert_with(|| field.zero()) += &c;
                    }
                    if sums.values().any(|c| !c.is_zero()) {
                        return Err(Error::InvalidStructure(format!(
                            "differential of {k:?} leaves the window {window}"
                        )));
                    }
                }
            }
            continue;
        }
        let cols = basis
            .keys(n)
            .iter()
            .map(|k| basis.vector(n + 1, d(n, k)))
            .collect::<Result<Vec<_>>>()?;
        blocks.insert(n, Matrix::from_columns(field, basis.dim(n + 1), cols)?);
    }
    Complex::new(field, window, space, blocks, zero_below, zero_above)
}

/// Degree-`shift` map between keyed bases, evaluated on `degrees`.
pub fn map_from_keys<K, L, F>(
    field: Field,
    source: &KeyedBasis<K>,
    target: &KeyedBasis<L>,
    shift: i32,
    degrees: RangeInclusive<i32>,
    f: F,
) -> Result<GradedMap>
where
    K: Clone + Eq + Hash,
    L: Clone + Eq + Hash + fmt::Debug,
    F: Fn(i32, &K) -> Vec<(L, Scalar)>,
{
    let mut out = GradedMap::new(shift);
    for n in degrees {
        let cols = source
            .keys(n)
            .iter()
            .map(|k| target.vector(n + shift, f(n, k)))
            .collect::<Result<Vec<_>>>()?;
        out.set_block(n, Matrix::from_columns(field, target.dim(n + shift), cols)?);
    }
    Ok(out)
}
