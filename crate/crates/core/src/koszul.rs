//! The Koszul dual `Ǎ = (BA)*` up to a maximal degree, and the signed reversal `σ`.

use std::collections::HashMap;

use crate::algebra::{Augmentation, DGAlgebra, DGAlgebraHom};
use crate::bar::{word_degree, BarCoalgebra, Word};
use crate::error::{Error, Result};
use crate::graded::{check_chain_map, map_from_keys, DegreeWindow, GradedMap};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::{Field, Scalar};

/// `Ǎ / Ǎ^{>N}`: basis element `u'` in degree `-|u|` for each bar word `u` with `|u| ≥ -N`.
#[derive(Debug, Clone)]
pub struct KoszulDual {
    pub algebra: DGAlgebra,
    pub augmentation: Augmentation,
    pub bar: BarCoalgebra,
    pub max_degree: i32,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl KoszulDual {
    pub fn new(aug: &Augmentation, max_degree: i32) -> Result<KoszulDual> {
        if max_degree < 0 {
            return Err(Error::InvalidWindow {
                lo: -max_degree,
                hi: 0,
            });
        }
        let bar = BarCoalgebra::new(aug, DegreeWindow::new(-max_degree, 0)?)?;
        let field = bar.field();
        let a = bar.algebra().clone();
        let mut words = Vec::new();
        for n in (-max_degree..=0).rev() {
            words.extend(bar.words(n).iter().cloned());
        }
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let basis: Vec<(String, i32)> = words
            .iter()
            .map(|w| (format!("{}'", bar.name(w)), -word_degree(&a, w)))
            .collect();
        let mut d = vec![SparseVec::new(); words.len()];
        for v in &words {
            let deg = -word_degree(&a, v);
            if deg == 0 {
                continue;
            }
            // (d u')(v) = (-1)^{|u'|+1} u'(dv) with |u'| = deg - 1
            let s = field.sign(deg as i64);
            for (u, c) in bar.differential(v) {
                let iu = index[&u];
                d[iu].add_scaled(&(&s * &c), &SparseVec::unit(index[v], field));
            }
        }
        let mult = |i: usize, j: usize| {
            let (u, v) = (&words[i], &words[j]);
            let (du, dv) = (word_degree(&a, u), word_degree(&a, v));
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            match index.get(&uv) {
                Some(&k) => SparseVec::single(k, field.sign((du * dv) as i64)),
                None => SparseVec::new(),
            }
        };
        let algebra = DGAlgebra::from_fn(field, basis, SparseVec::unit(0, field), d, mult)?;
        let augmentation = Augmentation::standard(algebra.clone())?;
        Ok(KoszulDual {
            algebra,
            augmentation,
            bar,
            max_degree,
            words,
            index,
        })
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn dims(&self) -> std::collections::BTreeMap<i32, usize> {
        self.algebra.space().dims()
    }

    /// Errors if `degree` lies beyond the stored truncation.
    pub fn require_degree(&self, degree: i32) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::WindowInsufficient(format!(
                "the Koszul dual is stored up to degree {}, degree {degree} was requested",
                self.max_degree
            )));
        }
        Ok(())
    }
}

pub fn koszul_dual(aug: &Augmentation, max_degree: i32) -> Result<KoszulDual> {
    KoszulDual::new(aug, max_degree)
}

/// Sign of `σ(b₁⊗…⊗bₙ) = (-1)^{Σ_{i<j} b̄ᵢb̄ⱼ + n} bₙ⊗…⊗b₁`, where `b̄` is the bar degree.
pub fn sigma_sign(a: &DGAlgebra, w: &[usize]) -> Scalar {
    let bars: Vec<i64> = w.iter().map(|&l| (a.degree(l) - 1) as i64).collect();
    let mut e = bars.len() as i64;
    let mut before = 0i64;
    for b in &bars {
        e += before * b;
        before += b;
    }
    a.field().sign(e)
}

pub fn sigma_word(a: &DGAlgebra, w: &[usize]) -> (Word, Scalar) {
    let mut r = w.to_vec();
    r.reverse();
    (r, sigma_sign(a, w))
}

#[derive(Debug, Clone)]
pub struct SigmaReport {
    pub map: GradedMap,
    pub chain_map: bool,
    pub invertible: bool,
    pub comultiplicative: bool,
    pub involutive: bool,
    pub target: BarCoalgebra,
}

impl SigmaReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.invertible && self.comultiplicative && self.involutive
    }
}

/// `σ: BA → B(A^op)` on the window of `ba`, with the checks that it is an
/// isomorphism of complexes onto the coopposite coalgebra.
pub fn sigma_iso(ba: &BarCoalgebra) -> Result<SigmaReport> {
    let a = ba.algebra();
    let field = ba.field();
    let op_aug = ba.augmentation().opposite();
    let target = BarCoalgebra::new(&op_aug, ba.window())?;
    let w = ba.window();
    let map = map_from_keys(field, ba.basis(), target.basis(), 0, w.degrees(), |_, word| {
        vec![sigma_word(a, word)]
    })?;
    let chain_map = check_chain_map(ba.complex(), target.complex(), &map, w).is_ok();
    let invertible = map
        .blocks()
        .values()
        .all(|m| m.rows() == m.cols() && m.rank() == m.cols());
    let mut comultiplicative = true;
    let mut involutive = true;
    for n in w.degrees() {
        for word in ba.words(n) {
            let s = sigma_sign(a, word);
            for (w1, w2) in ba.coproduct(word) {
                let k = field.sign((word_degree(a, &w1) * word_degree(a, &w2)) as i64);
                if s != &(&sigma_sign(a, &w1) * &sigma_sign(a, &w2)) * &k {
                    comultiplicative = false;
                }
            }
            let (r, s1) = sigma_word(a, word);
            let (back, s2) = sigma_word(target.algebra(), &r);
            if back != *word || !(&s1 * &s2).is_one() {
                involutive = false;
            }
        }
    }
    Ok(SigmaReport {
        map,
        chain_map,
        invertible,
        comultiplicative,
        involutive,
        target,
    })
}

/// Dual of `σ` as an algebra map `koszul_dual(A^op) → koszul_dual(A)^op`,
/// `u' ↦ sign(reverse u)·(reverse u)'`.
pub fn dual_sigma(aug: &Augmentation, max_degree: i32) -> Result<DGAlgebraHom> {
    let kd = koszul_dual(aug, max_degree)?;
    let kd_op = koszul_dual(&aug.normalize()?.opposite(), max_degree)?;
    let a = kd.bar.algebra();
    let field = kd.field();
    let cols = (0..kd_op.algebra.dim())
        .map(|i| {
            let (r, _) = sigma_word(a, kd_op.word(i));
            let s = sigma_sign(a, &r);
            SparseVec::single(kd.index_of(&r).expect("reversed word in the window"), s)
        })
        .collect();
    let m = Matrix::from_columns(field, kd.algebra.dim(), cols)?;
    DGAlgebraHom::new(kd_op.algebra, kd.algebra.opposite(), m)
}
