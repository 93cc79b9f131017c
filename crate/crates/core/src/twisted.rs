//! Twisted tensor products with the universal twisting cochain: `BA⊗_τA`,
//! `M⊗_τBA` (the Koszul functor, `A⊗_τBA` for `M = A`), the two-sided bar
//! `BA⊗_τA⊗_τBA`, the map `ν` and its dual, and the Ext comparison.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::algebra::{Augmentation, DGAlgebra};
use crate::bar::{word_name, BarCoalgebra, Word};
use crate::error::{Error, Result};
use crate::graded::{
    check_chain_map, complex_from_keys, map_from_keys, verify_quasi_iso, Complex, DegreeWindow,
    GradedMap, KeyedBasis, QuasiIsoReport,
};
use crate::koszul::{koszul_dual, KoszulDual};
use crate::linalg::{Matrix, Reducer, SparseVec};
use crate::module::DGModule;
use crate::scalar::{Field, Scalar};

/// A complex on a keyed basis together with the bar words it was built from.
#[derive(Debug, Clone)]
pub struct Twisted<K: Clone + Eq + Hash> {
    pub bar: BarCoalgebra,
    pub basis: KeyedBasis<K>,
    pub complex: Complex,
}

impl<K: Clone + Eq + Hash + fmt::Debug> Twisted<K> {
    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn vector(&self, n: i32, terms: Vec<(K, Scalar)>) -> Result<SparseVec> {
        self.basis.vector(n, terms)
    }
}

/// Key of `w ⊗ a` in `BA⊗_τA`.
pub type RightKey = (Word, usize);
/// Key of `m ⊗ w` in `M⊗_τBA`.
pub type LeftKey = (usize, Word);
/// Key of `w₁ ⊗ a ⊗ w₂` in `BA⊗_τA⊗_τBA`.
pub type TwoSidedKey = (Word, usize, Word);

fn degree_span(degrees: &[i32]) -> (i32, i32) {
    (
        degrees.iter().copied().min().unwrap_or(0),
        degrees.iter().copied().max().unwrap_or(0),
    )
}

/// Bar words with degrees in `[lo, hi]` (clamped to be a valid window).
fn bar_words(aug: &Augmentation, lo: i32, hi: i32) -> Result<BarCoalgebra> {
    let lo = lo.min(0);
    BarCoalgebra::new(aug, DegreeWindow::new(lo, hi.max(lo))?)
}

fn is_finite_bar(bar: &BarCoalgebra) -> bool {
    bar.algebra().dim() == 1
}

fn all_words(bar: &BarCoalgebra) -> impl Iterator<Item = (i32, &Word)> + '_ {
    bar.window()
        .degrees()
        .flat_map(move |n| bar.words(n).iter().map(move |w| (n, w)))
}

/// `BA⊗_τA` with `d(w⊗a) = dw⊗a + (-1)^{|w|} w⊗da + (-1)^{|w'|} w'⊗aₙa` for `w = w'aₙ`.
pub fn twisted_tensor_right(aug: &Augmentation, w: DegreeWindow) -> Result<Twisted<RightKey>> {
    let norm = aug.normalize()?;
    let a = norm.algebra();
    let (amin, amax) = degree_span(a.degrees());
    let bar = bar_words(&norm, w.lo - amax, w.hi - amin)?;
    let mut basis = KeyedBasis::new();
    for (n, word) in all_words(&bar) {
        for x in 0..a.dim() {
            if w.contains(n + a.degree(x)) {
                basis.push(n + a.degree(x), (word.clone(), x));
            }
        }
    }
    let f = a.field();
    let complex = complex_from_keys(
        f,
        w,
        &basis,
        |(u, x)| format!("{}⊗{}", bar.name(u), a.name(*x)),
        |_, (u, x)| right_differential(&bar, a, u, *x),
        is_finite_bar(&bar) && w.lo <= amin,
        w.hi >= amax,
    )?;
    Ok(Twisted {
        bar,
        basis,
        complex,
    })
}

fn right_differential(bar: &BarCoalgebra, a: &DGAlgebra, u: &Word, x: usize) -> Vec<(RightKey, Scalar)> {
    let f = a.field();
    let mut out = Vec::new();
    for (v, c) in bar.differential(u) {
        out.push(((v, x), c));
    }
    let s = f.sign(bar.word_degree(u) as i64);
    for (y, c) in a.d_basis(x).iter() {
        out.push(((u.clone(), y), &s * c));
    }
    if let Some((&last, rest)) = u.split_last() {
        let s = f.sign(bar.word_degree(rest) as i64);
        for (y, c) in a.mul_basis(last, x).iter() {
            out.push(((rest.to_vec(), y), &s * c));
        }
    }
    out
}

/// `M⊗_τBA` for a right DG module `M` over `A`:
/// `d(m⊗[a₁|…]) = dm⊗w + (-1)^{|m|} m⊗dw - (-1)^{|m|} m·a₁⊗[a₂|…]`.
pub fn koszul_functor(aug: &Augmentation, m: &DGModule, w: DegreeWindow) -> Result<Twisted<LeftKey>> {
    let (norm, m) = normalized_module(aug, m)?;
    let a = norm.algebra();
    let (mmin, mmax) = degree_span(m.degrees());
    let bar = bar_words(&norm, w.lo - mmax, w.hi - mmin)?;
    let mut basis = KeyedBasis::new();
    for (n, word) in all_words(&bar) {
        for x in 0..m.dim() {
            if w.contains(n + m.degree(x)) {
                basis.push(n + m.degree(x), (x, word.clone()));
            }
        }
    }
    let f = a.field();
    let complex = complex_from_keys(
        f,
        w,
        &basis,
        |(x, u)| format!("{}⊗{}", m.names()[*x], bar.name(u)),
        |_, (x, u)| left_differential(&bar, &m, *x, u),
        is_finite_bar(&bar) && w.lo <= mmin,
        w.hi >= mmax,
    )?;
    Ok(Twisted {
        bar,
        basis,
        complex,
    })
}

/// The normalized augmentation and `m` restricted to its algebra.
fn normalized_module(aug: &Augmentation, m: &DGModule) -> Result<(Augmentation, DGModule)> {
    let norm = aug.normalize()?;
    if m.algebra() == norm.algebra() {
        return Ok((norm, m.clone()));
    }
    if m.algebra() != aug.algebra() {
        return Err(Error::InvalidStructure(
            "module is not over the augmented algebra".into(),
        ));
    }
    let basis = change_to_normalized(aug, &norm)?;
    let phi = crate::algebra::DGAlgebraHom::new(norm.algebra().clone(), aug.algebra().clone(), basis)?;
    let restricted = m.restrict_scalars(&phi)?;
    Ok((norm, restricted))
}

/// Matrix of the identity from the normalized basis to the original one.
fn change_to_normalized(aug: &Augmentation, norm: &Augmentation) -> Result<Matrix> {
    let (a, b) = (aug.algebra(), norm.algebra());
    let f = a.field();
    let unit = a.unit().clone();
    let mut cols = vec![unit.clone()];
    let mut r = Reducer::new(f, a.dim());
    r.insert(unit.clone());
    for i in 0..a.dim() {
        let mut v = SparseVec::unit(i, f);
        v.add_scaled(&-&aug.values()[i], &unit);
        if r.insert(v.clone()) {
            cols.push(v);
        }
    }
    if cols.len() != b.dim() {
        return Err(Error::InvalidStructure("normalized basis has the wrong size".into()));
    }
    Matrix::from_columns(f, a.dim(), cols)
}

fn left_differential(bar: &BarCoalgebra, m: &DGModule, x: usize, u: &Word) -> Vec<(LeftKey, Scalar)> {
    let f = m.field();
    let s = f.sign(m.degree(x) as i64);
    let mut out = Vec::new();
    for (y, c) in m.d_basis(x).iter() {
        out.push(((y, u.clone()), c.clone()));
    }
    for (v, c) in bar.differential(u) {
        out.push(((x, v), &s * &c));
    }
    if let Some((&first, rest)) = u.split_first() {
        for (y, c) in m.act_basis(x, first).iter() {
            out.push(((y, rest.to_vec()), -(&s * c)));
        }
    }
    out
}

/// `A⊗_τBA`, the Koszul functor applied to the free module `A`.
pub fn twisted_tensor_left(aug: &Augmentation, w: DegreeWindow) -> Result<Twisted<LeftKey>> {
    let norm = aug.normalize()?;
    koszul_functor(&norm, &DGModule::free(norm.algebra(), &[0]), w)
}

/// `BA⊗_τA⊗_τBA` with the five-term differential
/// `dw₁⊗a⊗w₂ + (-1)^{|w₁|} w₁⊗da⊗w₂ + (-1)^{|w₁|+|a|} w₁⊗a⊗dw₂ + t_τ(w₁⊗a)⊗w₂ + (-1)^{|w₁|} w₁⊗s_{-τ}(a⊗w₂)`.
pub fn two_sided_bar(aug: &Augmentation, w: DegreeWindow) -> Result<Twisted<TwoSidedKey>> {
    let norm = aug.normalize()?;
    let a = norm.algebra();
    let (amin, amax) = degree_span(a.degrees());
    let bar = bar_words(&norm, w.lo - amax, w.hi - amin)?;
    let words: Vec<(i32, Word)> = all_words(&bar).map(|(n, u)| (n, u.clone())).collect();
    let mut basis = KeyedBasis::new();
    for (n1, u1) in &words {
        for x in 0..a.dim() {
            for (n2, u2) in &words {
                let deg = n1 + a.degree(x) + n2;
                if w.contains(deg) {
                    basis.push(deg, (u1.clone(), x, u2.clone()));
                }
            }
        }
    }
    let f = a.field();
    let names = a.names().to_vec();
    let complex = complex_from_keys(
        f,
        w,
        &basis,
        |(u1, x, u2)| format!("{}⊗{}⊗{}", word_name(u1, &names), names[*x], word_name(u2, &names)),
        |_, key| two_sided_differential(&bar, a, key),
        is_finite_bar(&bar) && w.lo <= amin,
        w.hi >= amax,
    )?;
    Ok(Twisted {
        bar,
        basis,
        complex,
    })
}

fn two_sided_differential(bar: &BarCoalgebra, a: &DGAlgebra, key: &TwoSidedKey) -> Vec<(TwoSidedKey, Scalar)> {
    let (u1, x, u2) = key;
    let f = a.field();
    let d1 = bar.word_degree(u1) as i64;
    let dx = a.degree(*x) as i64;
    let mut out = Vec::new();
    for (v, c) in bar.differential(u1) {
        out.push(((v, *x, u2.clone()), c));
    }
    let s = f.sign(d1);
    for (y, c) in a.d_basis(*x).iter() {
        out.push(((u1.clone(), y, u2.clone()), &s * c));
    }
    let s = f.sign(d1 + dx);
    for (v, c) in bar.differential(u2) {
        out.push(((u1.clone(), *x, v), &s * &c));
    }
    if let Some((&last, rest)) = u1.split_last() {
        let s = f.sign(bar.word_degree(rest) as i64);
        for (y, c) in a.mul_basis(last, *x).iter() {
            out.push(((rest.to_vec(), y, u2.clone()), &s * c));
        }
    }
    if let Some((&first, rest)) = u2.split_first() {
        let s = -f.sign(d1 + dx);
        for (y, c) in a.mul_basis(*x, first).iter() {
            out.push(((u1.clone(), y, rest.to_vec()), &s * c));
        }
    }
    out
}

/// Right action of a DG algebra on `BA⊗_τA`: `(w⊗a)·b = w⊗ab`.
pub fn right_action(t: &Twisted<RightKey>, key: &RightKey, b: usize) -> Vec<(RightKey, Scalar)> {
    let a = t.bar.algebra();
    a.mul_basis(key.1, b)
        .iter()
        .map(|(y, c)| ((key.0.clone(), y), c.clone()))
        .collect()
}

/// Left action on `A⊗_τBA`: `b·(a⊗w) = ba⊗w`.
pub fn left_action(t: &Twisted<LeftKey>, b: usize, key: &LeftKey) -> Vec<(LeftKey, Scalar)> {
    let a = t.bar.algebra();
    a.mul_basis(b, key.0)
        .iter()
        .map(|(y, c)| ((y, key.1.clone()), c.clone()))
        .collect()
}

/// Removes `u` from the front of `w`, if it is a prefix.
pub fn strip_prefix(w: &[usize], u: &[usize]) -> Option<Word> {
    w.strip_prefix(u).map(|r| r.to_vec())
}

/// Removes `u` from the back of `w`, if it is a suffix.
pub fn strip_suffix(w: &[usize], u: &[usize]) -> Option<Word> {
    w.strip_suffix(u).map(|r| r.to_vec())
}

/// Leibniz and associativity of a basis-level action on a twisted complex,
/// checked wherever every term lies in the window. Returns the failures.
pub fn check_algebra_action<K>(
    t: &Twisted<K>,
    algebra: &DGAlgebra,
    act: impl Fn(&K, usize) -> Vec<(K, Scalar)>,
) -> Vec<String>
where
    K: Clone + Eq + Hash + fmt::Debug,
{
    let f = t.field();
    let w = t.complex.window();
    let apply_act = |n: i32, v: &SparseVec, b: usize| -> Option<SparseVec> {
        let target = n + algebra.degree(b);
        if !w.contains(target) {
            return None;
        }
        let mut terms = Vec::new();
        for (i, c) in v.iter() {
            for (k, e) in act(&t.basis.keys(n)[i], b) {
                terms.push((k, c * &e));
            }
        }
        t.basis.vector(target, terms).ok()
    };
    let apply_vec = |n: i32, v: &SparseVec, x: &SparseVec| -> Option<SparseVec> {
        let mut out = SparseVec::new();
        for (b, c) in x.iter() {
            out.add_scaled(c, &apply_act(n, v, b)?);
        }
        Some(out)
    };
    let mut problems = Vec::new();
    for n in w.degrees() {
        for (i, key) in t.basis.keys(n).iter().enumerate() {
            let e = SparseVec::unit(i, f);
            if apply_vec(n, &e, algebra.unit()) != Some(e.clone()) {
                problems.push(format!("unit fails on {key:?}"));
            }
            for b in 0..algebra.dim() {
                let db = algebra.d_basis(b);
                let nb = n + algebra.degree(b);
                if n < w.hi && nb < w.hi && w.contains(nb) && t.complex.reliable(n) && t.complex.reliable(nb) {
                    let lhs = apply_act(n, &e, b).map(|v| t.complex.apply_d(nb, &v));
                    let de = t.complex.apply_d(n, &e);
                    let rhs = apply_act(n + 1, &de, b).and_then(|mut v| {
                        let extra = apply_vec(n, &e, db)?;
                        v.add_scaled(&f.sign(n as i64), &extra);
                        Some(v)
                    });
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            problems.push(format!("Leibniz fails on {key:?}·{}", algebra.name(b)));
                        }
                    }
                }
                for c in 0..algebra.dim() {
                    let Some(eb) = apply_act(n, &e, b) else { continue };
                    let Some(lhs) = apply_act(nb, &eb, c) else { continue };
                    let Some(rhs) = apply_vec(n, &e, algebra.mul_basis(b, c)) else { continue };
                    if lhs != rhs {
                        problems.push(format!(
                            "associativity fails on {key:?}·{}·{}",
                            algebra.name(b),
                            algebra.name(c)
                        ));
                    }
                }
            }
        }
    }
    problems
}

/// Right action of `Ǎ^op` on `M⊗_τBA` by suffix removal: `(m⊗vu)·u' = (-1)^{|u|} m⊗v`.
pub fn dual_suffix_action(kd: &KoszulDual, key: &LeftKey, i: usize) -> Vec<(LeftKey, Scalar)> {
    let u = kd.word(i);
    match strip_suffix(&key.1, u) {
        Some(v) => vec![((key.0, v), kd.field().sign(kd.bar.word_degree(u) as i64))],
        None => Vec::new(),
    }
}

/// Result of [`nu_and_dual`].
#[derive(Debug, Clone)]
pub struct NuReport {
    pub window: DegreeWindow,
    pub nu: GradedMap,
    pub nu_chain_map: bool,
    /// `(η⊗ε⊗1)∘ν = id` as an exact matrix identity.
    pub retraction_identity: bool,
    pub nu_quasi_iso: QuasiIsoReport,
    pub nu_star_quasi_iso: QuasiIsoReport,
    /// `ν` commutes with removing a letter from the front of `w₁` and from the back of `w₂`.
    pub comodule_compatible: bool,
}

impl NuReport {
    pub fn holds(&self) -> bool {
        self.nu_chain_map
            && self.retraction_identity
            && self.nu_quasi_iso.is_quasi_iso()
            && self.nu_star_quasi_iso.is_quasi_iso()
            && self.comodule_compatible
    }
}

/// `ν(w) = Σ w[..i]⊗1⊗w[i..]` from `BA` into the two-sided bar, and its graded dual.
pub fn nu_and_dual(aug: &Augmentation, w: DegreeWindow) -> Result<NuReport> {
    w.require_interior()?;
    let hyp = aug.resolution_hypotheses();
    if !hyp.all_hold() {
        let failed: Vec<String> = hyp.items.iter().filter(|h| !h.holds).map(|h| h.name.clone()).collect();
        return Err(Error::HypothesesUnmet(failed.join(", ")));
    }
    let norm = aug.normalize()?;
    let bar = BarCoalgebra::new(&norm, w)?;
    let two = two_sided_bar(&norm, w)?;
    let f = bar.field();
    let nu = map_from_keys(f, bar.basis(), &two.basis, 0, w.degrees(), |_, u| {
        (0..=u.len())
            .map(|i| ((u[..i].to_vec(), 0, u[i..].to_vec()), f.one()))
            .collect()
    })?;
    let a = norm.algebra();
    let eps = norm.values().to_vec();
    let retract = map_from_keys(f, &two.basis, bar.basis(), 0, w.degrees(), |_, (u1, x, u2)| {
        if u1.is_empty() && !eps[*x].is_zero() && bar.basis().locate(u2).is_some() {
            vec![(u2.clone(), eps[*x].clone())]
        } else {
            Vec::new()
        }
    })?;
    let composite = retract.compose(&nu)?;
    let retraction_identity = w
        .degrees()
        .all(|n| composite.block_or_zero(f, n, bar.basis().dim(n), bar.basis().dim(n)) == Matrix::identity(f, bar.basis().dim(n)));
    let nu_chain_map = check_chain_map(bar.complex(), &two.complex, &nu, w).is_ok();
    let nu_quasi_iso = verify_quasi_iso(bar.complex(), &two.complex, &nu, w)?;
    let nu_star = nu.transpose_dual();
    let nu_star_quasi_iso = verify_quasi_iso(
        &two.complex.graded_dual(),
        &bar.complex().graded_dual(),
        &nu_star,
        w.reflect(),
    )?;
    let mut comodule_compatible = true;
    let letters: Vec<Word> = (1..a.dim()).map(|l| vec![l]).collect();
    for n in w.degrees() {
        for u in bar.words(n) {
            let image: HashMap<TwoSidedKey, ()> =
                (0..=u.len()).map(|i| ((u[..i].to_vec(), 0, u[i..].to_vec()), ())).collect();
            for l in &letters {
                let front: Vec<TwoSidedKey> = image
                    .keys()
                    .filter_map(|(u1, x, u2)| strip_prefix(u1, l).map(|v| (v, *x, u2.clone())))
                    .collect();
                let expected_front: Vec<TwoSidedKey> = strip_prefix(u, l)
                    .map(|v| (0..=v.len()).map(|i| (v[..i].to_vec(), 0, v[i..].to_vec())).collect())
                    .unwrap_or_default();
                let back: Vec<TwoSidedKey> = image
                    .keys()
                    .filter_map(|(u1, x, u2)| strip_suffix(u2, l).map(|v| (u1.clone(), *x, v)))
                    .collect();
                let expected_back: Vec<TwoSidedKey> = strip_suffix(u, l)
                    .map(|v| (0..=v.len()).map(|i| (v[..i].to_vec(), 0, v[i..].to_vec())).collect())
                    .unwrap_or_default();
                if sorted(front) != sorted(expected_front) || sorted(back) != sorted(expected_back) {
                    comodule_compatible = false;
                }
            }
        }
    }
    Ok(NuReport {
        window: w,
        nu,
        nu_chain_map,
        retraction_identity,
        nu_quasi_iso,
        nu_star_quasi_iso,
        comodule_compatible,
    })
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// Per-degree comparison of `H(A)` with `H Hom_{Ǎ^op}(k, A⊗_τBA)`.
#[derive(Debug, Clone)]
pub struct ExtComparison {
    pub window: DegreeWindow,
    pub algebra_dims: BTreeMap<i32, usize>,
    pub ext_dims: BTreeMap<i32, usize>,
    pub mismatches: Vec<i32>,
    /// `a ↦ a⊗[]` induces an isomorphism on the interior of the window.
    pub inclusion_quasi_iso: bool,
    pub hom_complex: Complex,
    pub notes: Vec<String>,
}

impl ExtComparison {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.inclusion_quasi_iso
    }
}

/// Computes `Hom_{Ǎ^op}(k, A⊗_τBA)` as the elements killed by every dual
/// letter (acting by suffix removal) and compares its cohomology with `H(A)`.
pub fn ext_comparison(aug: &Augmentation, w: DegreeWindow) -> Result<ExtComparison> {
    w.require_interior()?;
    let hyp = aug.resolution_hypotheses();
    if !hyp.all_hold() {
        let failed: Vec<String> = hyp.items.iter().filter(|h| !h.holds).map(|h| h.name.clone()).collect();
        return Err(Error::HypothesesUnmet(failed.join(", ")));
    }
    let norm = aug.normalize()?;
    let a = norm.algebra();
    let x = twisted_tensor_left(&norm, w)?;
    let f = a.field();
    let letters: Vec<usize> = (1..a.dim()).collect();
    let mut space = crate::graded::GradedSpace::new();
    let mut kernels: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
    for n in w.degrees() {
        let keys = x.basis.keys(n);
        let mut rows: HashMap<(usize, LeftKey), usize> = HashMap::new();
        let mut cols = Vec::with_capacity(keys.len());
        for key in keys {
            let mut col = Vec::new();
            for (li, &l) in letters.iter().enumerate() {
                if let Some(v) = strip_suffix(&key.1, &[l]) {
                    let r = rows.len();
                    let row = *rows.entry((li, (key.0, v))).or_insert(r);
                    col.push((row, f.one()));
                }
            }
            cols.push(SparseVec::from_pairs(col));
        }
        let m = Matrix::from_columns(f, rows.len(), cols)?;
        let ker = m.kernel_basis();
        space.set_component(n, (0..ker.len()).map(|k| format!("h{n}_{k}")).collect());
        kernels.insert(n, ker);
    }
    let mut blocks = BTreeMap::new();
    for n in w.lo..w.hi {
        let Some(d) = x.complex.d(n) else { continue };
        let mut r = Reducer::with_tracking(f, x.basis.dim(n + 1));
        for (k, v) in kernels[&(n + 1)].iter().enumerate() {
            r.insert_tagged(v.clone(), k);
        }
        let cols = kernels[&n]
            .iter()
            .map(|v| {
                r.express(&d.apply(v)).ok_or_else(|| {
                    Error::InvalidStructure(format!("Hom subcomplex not closed under d in degree {n}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.insert(n, Matrix::from_columns(f, kernels[&(n + 1)].len(), cols)?);
    }
    let hom_complex = Complex::new(
        f,
        w,
        space,
        blocks,
        x.complex.zero_below(),
        x.complex.zero_above(),
    )?;
    let ha = a.complex()?;
    let hw = DegreeWindow::new(
        w.lo.min(ha.window().lo - 1),
        w.hi.max(ha.window().hi + 1),
    )?;
    let h = pad(&ha, hw)?.cohomology(hw)?.dims();
    let algebra_dims: BTreeMap<i32, usize> =
        w.interior().map(|n| (n, h.get(&n).copied().unwrap_or(0))).collect();
    let ext = hom_complex.cohomology(w)?;
    let ext_dims: BTreeMap<i32, usize> = ext.dims();
    let mismatches = w
        .interior()
        .filter(|n| algebra_dims.get(n) != ext_dims.get(n))
        .collect();
    let a_complex = pad(&ha, w)?;
    let mut incl = GradedMap::new(0);
    for n in w.degrees() {
        let hom_basis = &kernels[&n];
        let mut r = Reducer::with_tracking(f, x.basis.dim(n));
        for (k, v) in hom_basis.iter().enumerate() {
            r.insert_tagged(v.clone(), k);
        }
        let cols = a
            .basis_in_degree(n)
            .into_iter()
            .map(|i| {
                let v = x.basis.vector(n, vec![((i, Vec::new()), f.one())])?;
                r.express(&v).ok_or_else(|| Error::InvalidStructure("a⊗[] is not in the Hom subcomplex".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        incl.set_block(n, Matrix::from_columns(f, hom_basis.len(), cols)?);
    }
    let inclusion_quasi_iso = verify_quasi_iso(&a_complex, &hom_complex, &incl, w)?.is_quasi_iso();
    Ok(ExtComparison {
        window: w,
        algebra_dims,
        ext_dims,
        mismatches,
        inclusion_quasi_iso,
        hom_complex,
        notes: vec![
            "ring structure: transported along a ↦ a⊗[]; compared only through the degree-0 part (informational)".into(),
        ],
    })
}

/// A finite complex re-presented on a (larger or equal) window, zero outside its support.
fn pad(c: &Complex, w: DegreeWindow) -> Result<Complex> {
    let mut space = crate::graded::GradedSpace::new();
    let mut blocks = BTreeMap::new();
    for n in w.degrees() {
        let names = if c.window().contains(n) {
            c.space().names(n).to_vec()
        } else {
            Vec::new()
        };
        space.set_component(n, names);
        if n < w.hi {
            if let Some(d) = c.d(n).filter(|_| c.window().contains(n) && c.window().contains(n + 1)) {
                blocks.insert(n, d);
            }
        }
    }
    Complex::new(c.field(), w, space, blocks, true, true)
}

/// Koszul dual large enough to act on a complex living in degrees `[lo, hi]`.
pub fn dual_for_window(aug: &Augmentation, lo: i32, hi: i32) -> Result<KoszulDual> {
    koszul_dual(aug, (hi - lo).max(0))
}

/// `M⊗_τBA` truncated to degrees `≥ w.lo` as a right DG module over
/// `Ǎ^op / Ǎ^{>N}`, `N = top - w.lo`, where `top` is the top degree of `M`.
pub fn koszul_functor_module(aug: &Augmentation, m: &DGModule, lo: i32) -> Result<(DGModule, KoszulDual)> {
    let (norm, m) = normalized_module(aug, m)?;
    let m = &m;
    let (_, mmax) = degree_span(m.degrees());
    let w = DegreeWindow::new(lo.min(mmax), mmax)?;
    let t = koszul_functor(&norm, m, w)?;
    let kd = dual_for_window(&norm, w.lo, w.hi)?;
    let op = kd.algebra.opposite();
    let mut flat: Vec<(i32, LeftKey)> = Vec::new();
    for n in w.degrees() {
        for k in t.basis.keys(n) {
            flat.push((n, k.clone()));
        }
    }
    let index: HashMap<LeftKey, usize> = flat.iter().enumerate().map(|(i, (_, k))| (k.clone(), i)).collect();
    let names = flat
        .iter()
        .map(|(_, (x, u))| format!("{}⊗{}", m.names()[*x], t.bar.name(u)))
        .collect::<Vec<_>>();
    let d = flat
        .iter()
        .map(|(n, k)| {
            if *n == w.hi {
                return SparseVec::new();
            }
            let terms: Vec<(usize, Scalar)> = left_differential(&t.bar, m, k.0, &k.1)
                .into_iter()
                .map(|(key, c)| (index[&key], c))
                .collect();
            SparseVec::from_pairs(terms)
        })
        .collect();
    let module = DGModule::from_fn(
        op,
        names.into_iter().zip(flat.iter().map(|(n, _)| *n)).collect(),
        d,
        |i, b| {
            let key = &flat[i].1;
            SparseVec::from_pairs(
                dual_suffix_action(&kd, key, b)
                    .into_iter()
                    .map(|(k, c)| (index[&k], c)),
            )
        },
    )?;
    Ok((module, kd))
}
