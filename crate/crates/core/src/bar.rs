//! Reduced bar construction `T(A⁺[1])`, twisting cochains and the Maurer–Cartan equation.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Augmentation, DGAlgebra};
use crate::error::{Error, Result};
use crate::graded::{complex_from_keys, Complex, DegreeWindow, KeyedBasis};
use crate::linalg::SparseVec;
use crate::scalar::{Field, Scalar};

/// Tensor word of letters; a letter is the index of a basis element of `A⁺`
/// in the normalized algebra (never 0, which is the unit).
pub type Word = Vec<usize>;

/// `BA` on a degree window, with the word basis and its differential.
#[derive(Debug, Clone)]
pub struct BarCoalgebra {
    aug: Augmentation,
    window: DegreeWindow,
    basis: KeyedBasis<Word>,
    complex: Complex,
}

impl BarCoalgebra {
    pub fn new(aug: &Augmentation, window: DegreeWindow) -> Result<BarCoalgebra> {
        let aug = aug.normalize()?;
        let a = aug.algebra();
        let letters: Vec<usize> = (1..a.dim()).collect();
        if let Some(&l) = letters.iter().find(|&&l| a.degree(l) >= 1) {
            return Err(Error::NotRepresentable(format!(
                "{} has degree {} > 0, so bar components are infinite-dimensional",
                a.name(l),
                a.degree(l)
            )));
        }
        let mut basis = KeyedBasis::new();
        let mut stack: Vec<(Word, i32)> = vec![(Vec::new(), 0)];
        let mut found = Vec::new();
        while let Some((w, deg)) = stack.pop() {
            if deg <= window.hi {
                found.push((deg, w.clone()));
            }
            for &l in &letters {
                let nd = deg + a.degree(l) - 1;
                if nd >= window.lo {
                    let mut nw = w.clone();
                    nw.push(l);
                    stack.push((nw, nd));
                }
            }
        }
        found.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.len().cmp(&y.1.len())).then(x.1.cmp(&y.1)));
        for (deg, w) in found {
            basis.push(deg, w);
        }
        let field = a.field();
        let names: Vec<String> = a.names().to_vec();
        let complex = complex_from_keys(
            field,
            window,
            &basis,
            |w| word_name(w, &names),
            |_, w| bar_differential(a, w),
            letters.is_empty(),
            window.hi >= 0,
        )?;
        Ok(BarCoalgebra {
            aug,
            window,
            basis,
            complex,
        })
    }

    /// The normalized augmentation the bar construction was built from.
    pub fn augmentation(&self) -> &Augmentation {
        &self.aug
    }

    pub fn algebra(&self) -> &DGAlgebra {
        self.aug.algebra()
    }

    pub fn field(&self) -> Field {
        self.algebra().field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn basis(&self) -> &KeyedBasis<Word> {
        &self.basis
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn words(&self, n: i32) -> &[Word] {
        self.basis.keys(n)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.window.degrees().map(|n| (n, self.basis.dim(n))).collect()
    }

    pub fn letter_degree(&self, l: usize) -> i32 {
        self.algebra().degree(l) - 1
    }

    pub fn word_degree(&self, w: &[usize]) -> i32 {
        word_degree(self.algebra(), w)
    }

    pub fn name(&self, w: &[usize]) -> String {
        word_name(w, self.algebra().names())
    }

    pub fn differential(&self, w: &[usize]) -> Vec<(Word, Scalar)> {
        bar_differential(self.algebra(), w)
    }

    /// Deconcatenation `Δ(w) = Σ w[..i] ⊗ w[i..]`.
    pub fn coproduct(&self, w: &[usize]) -> Vec<(Word, Word)> {
        (0..=w.len()).map(|i| (w[..i].to_vec(), w[i..].to_vec())).collect()
    }

    /// Coassociativity and counitality of deconcatenation on every word of the window.
    pub fn check_coalgebra(&self) -> bool {
        self.window.degrees().all(|n| {
            self.words(n).iter().all(|w| {
                let left: Vec<(Word, Word, Word)> = self
                    .coproduct(w)
                    .into_iter()
                    .flat_map(|(x, y)| {
                        self.coproduct(&x)
                            .into_iter()
                            .map(move |(p, q)| (p, q, y.clone()))
                    })
                    .collect();
                let mut right: Vec<(Word, Word, Word)> = self
                    .coproduct(w)
                    .into_iter()
                    .flat_map(|(x, y)| {
                        self.coproduct(&y)
                            .into_iter()
                            .map(move |(p, q)| (x.clone(), p, q))
                    })
                    .collect();
                let mut left = left;
                left.sort();
                right.sort();
                let counit = self.coproduct(w).into_iter().filter(|(x, y)| x.is_empty() || y.is_empty()).count();
                left == right && counit == if w.is_empty() { 1 } else { 2 }
            })
        })
    }
}

pub fn word_degree(a: &DGAlgebra, w: &[usize]) -> i32 {
    w.iter().map(|&l| a.degree(l) - 1).sum()
}

pub fn word_name(w: &[usize], names: &[String]) -> String {
    let parts: Vec<&str> = w.iter().map(|&l| names[l].as_str()).collect();
    format!("[{}]", parts.join("|"))
}

/// `d[a₁|…|aₙ] = -Σ (-1)^{ε_{i-1}} […|daᵢ|…] + Σ (-1)^{ε_{i-1}+|aᵢ|} […|aᵢa_{i+1}|…]`
/// with `ε_i = Σ_{j≤i} (|a_j| - 1)`.
pub fn bar_differential(a: &DGAlgebra, w: &[usize]) -> Vec<(Word, Scalar)> {
    let f = a.field();
    let mut out = Vec::new();
    let mut eps = 0i64;
    for i in 0..w.len() {
        let s = f.sign(eps);
        for (l, c) in a.d_basis(w[i]).iter() {
            let mut nw = w.to_vec();
            nw[i] = l;
            out.push((nw, -(&s * c)));
        }
        if i + 1 < w.len() {
            let s2 = f.sign(eps + a.degree(w[i]) as i64);
            for (l, c) in a.mul_basis(w[i], w[i + 1]).iter() {
                let mut nw = w[..i].to_vec();
                nw.push(l);
                nw.extend_from_slice(&w[i + 2..]);
                out.push((nw, &s2 * c));
            }
        }
        eps += (a.degree(w[i]) - 1) as i64;
    }
    debug_assert!(out.iter().all(|(w, _)| !w.contains(&0)));
    out
}

/// Degree-1 map `α: BA → A`, stored on the words of the bar window.
#[derive(Debug, Clone)]
pub struct TwistingCochain {
    pub bar: BarCoalgebra,
    values: HashMap<Word, SparseVec>,
}

impl TwistingCochain {
    pub fn new(bar: &BarCoalgebra, values: HashMap<Word, SparseVec>) -> Result<TwistingCochain> {
        let a = bar.algebra();
        for (w, v) in &values {
            if let Some(deg) = a.degree_of(v) {
                if deg != bar.word_degree(w) + 1 {
                    return Err(Error::NotHomogeneous(format!(
                        "α({}) has degree {deg}, expected {}",
                        bar.name(w),
                        bar.word_degree(w) + 1
                    )));
                }
            }
        }
        Ok(TwistingCochain {
            bar: bar.clone(),
            values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    pub fn zero(bar: &BarCoalgebra) -> TwistingCochain {
        TwistingCochain {
            bar: bar.clone(),
            values: HashMap::new(),
        }
    }

    pub fn eval(&self, w: &[usize]) -> SparseVec {
        self.values.get(w).cloned().unwrap_or_default()
    }

    /// Same cochain with `α(w)` replaced.
    pub fn with_value(&self, w: Word, v: SparseVec) -> Result<TwistingCochain> {
        let mut values = self.values.clone();
        values.insert(w, v);
        TwistingCochain::new(&self.bar, values)
    }
}

/// `τ([a]) = a` on length-one words and zero elsewhere.
pub fn universal_twisting_cochain(bar: &BarCoalgebra) -> TwistingCochain {
    let f = bar.field();
    let mut values = HashMap::new();
    for l in 1..bar.algebra().dim() {
        values.insert(vec![l], SparseVec::unit(l, f));
    }
    TwistingCochain {
        bar: bar.clone(),
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McReport {
    pub holds: bool,
    pub checked: usize,
    /// First word (in degree order) where `dα + α∗α` is nonzero, with its value.
    pub violation: Option<(String, String)>,
}

/// Evaluates `d_A α(w) + α(dw) + Σ (-1)^{|w₁|} α(w₁)α(w₂)` on every word of `w`.
pub fn check_maurer_cartan(tc: &TwistingCochain, w: DegreeWindow) -> McReport {
    let bar = &tc.bar;
    let a = bar.algebra();
    let f = a.field();
    let mut checked = 0;
    for n in w.degrees().rev() {
        if !bar.window().contains(n) {
            continue;
        }
        for word in bar.words(n) {
            checked += 1;
            let mut v = a.d(&tc.eval(word));
            for (u, c) in bar.differential(word) {
                v.add_scaled(&c, &tc.eval(&u));
            }
            for (w1, w2) in bar.coproduct(word) {
                let (x, y) = (tc.eval(&w1), tc.eval(&w2));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                v.add_scaled(&f.sign(bar.word_degree(&w1) as i64), &a.mul(&x, &y));
            }
            if !v.is_zero() {
                return McReport {
                    holds: false,
                    checked,
                    violation: Some((bar.name(word), a.show(&v))),
                };
            }
        }
    }
    McReport {
        holds: true,
        checked,
        violation: None,
    }
}
