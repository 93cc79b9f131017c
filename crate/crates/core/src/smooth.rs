//! Smoothness certificates and the Tor obstruction: filtrations of the two-sided
//! bar complex with free subquotients, explicit finite free bimodule
//! resolutions, and Tor over degree-0 algebras.

use std::collections::BTreeMap;

use crate::algebra::{Augmentation, DGAlgebra};
use crate::bar::{BarCoalgebra, Word};
use crate::error::{Error, Result};
use crate::graded::{verify_quasi_iso, DegreeWindow, QuasiIsoReport};
use crate::linalg::{Insert, Matrix, Quotient, Reducer, SparseVec, Subspace};
use crate::module::{DGModule, ModuleMap};
use crate::scalar::Field;
use crate::twisted::two_sided_bar;

/// `dim Tor_n^A(k, k)` for `n = 0..=max_n`, from the reduced bar complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorReport {
    pub dims: Vec<usize>,
    pub max_n: usize,
}

impl TorReport {
    /// `Tor_{max_n} ≠ 0`: no vanishing tail was seen.
    pub fn obstruction(&self) -> bool {
        self.dims.last().is_some_and(|&d| d > 0)
    }

    pub fn verdict(&self) -> String {
        if self.obstruction() {
            format!("obstruction present up to {}", self.max_n)
        } else {
            format!("no obstruction up to {}", self.max_n)
        }
    }
}

pub fn tor_obstruction(aug: &Augmentation, max_n: usize) -> Result<TorReport> {
    let a = aug.algebra();
    if a.degrees().iter().any(|&d| d != 0) {
        return Err(Error::HypothesesUnmet("A is not concentrated in degree 0".into()));
    }
    let top = max_n as i32;
    let bar = BarCoalgebra::new(aug, DegreeWindow::new(-top - 1, 0)?)?;
    let h = bar.complex().cohomology_in(-top..=0)?;
    let dims = (0..=top).map(|n| h.dims()[&-n]).collect();
    Ok(TorReport { dims, max_n })
}

/// A finite filtration `0 ⊂ F₁ ⊂ … ⊂ F_r = A` of the algebra by subspaces,
/// inducing `BA ⊗ Fᵢ ⊗ BA` on the two-sided bar complex, with homogeneous
/// representatives of each `Fᵢ/Fᵢ₋₁`. Each representative `u` claims a free
/// summand `BA ⊗ k·u ⊗ BA` of the subquotient.
#[derive(Debug, Clone)]
pub struct FiltrationCertificate {
    pub augmentation: Augmentation,
    pub steps: Vec<Vec<SparseVec>>,
    pub representatives: Vec<Vec<SparseVec>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationVerdict {
    pub certified: bool,
    pub window: DegreeWindow,
    /// Degrees of the representatives of each step, i.e. the shifts of the free summands.
    pub shifts: Vec<Vec<i32>>,
    pub witness: Option<String>,
}

impl FiltrationVerdict {
    pub fn summary(&self) -> String {
        if self.certified {
            format!("perfect (certified) on window {}", self.window)
        } else {
            format!(
                "rejected: {}",
                self.witness.as_deref().unwrap_or("malformed certificate")
            )
        }
    }
}

/// Checks nesting, that each `BA ⊗ Fᵢ ⊗ BA` is closed under the differential,
/// and that modulo `BA ⊗ Fᵢ₋₁ ⊗ BA` the differential on `BA ⊗ u ⊗ BA` is
/// `dw₁⊗u⊗w₂ + (-1)^{|w₁|+|u|} w₁⊗u⊗dw₂`.
pub fn verify_filtration_certificate(cert: &FiltrationCertificate, w: DegreeWindow) -> Result<FiltrationVerdict> {
    w.require_interior()?;
    let aug = cert.augmentation.normalize()?;
    let a = aug.algebra().clone();
    let field = a.field();
    if cert.steps.len() != cert.representatives.len() {
        return Err(Error::InvalidStructure(
            "one list of representatives per step is required".into(),
        ));
    }
    for (i, v) in cert.steps.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |v| (i, v))) {
        if a.degree_of(v).is_none() {
            return Err(Error::NotHomogeneous(format!("element {} of step {}", a.show(v), i + 1)));
        }
    }
    let mut shifts = Vec::new();
    for (i, reps) in cert.representatives.iter().enumerate() {
        let degs = reps
            .iter()
            .map(|v| {
                a.degree_of(v).ok_or_else(|| {
                    Error::NotHomogeneous(format!("representative {} of step {}", a.show(v), i + 1))
                })
            })
            .collect::<Result<Vec<i32>>>()?;
        shifts.push(degs);
    }
    let reject = |witness: String| {
        Ok(FiltrationVerdict {
            certified: false,
            window: w,
            shifts: shifts.clone(),
            witness: Some(witness),
        })
    };
    let spaces: Vec<Subspace> = cert
        .steps
        .iter()
        .map(|b| Subspace::new(field, a.dim(), b.iter().cloned()))
        .collect();
    let zero = Subspace::new(field, a.dim(), Vec::new());
    for (i, s) in spaces.iter().enumerate() {
        let prev = if i == 0 { &zero } else { &spaces[i - 1] };
        if let Some(v) = prev.basis().iter().find(|v| !s.contains(v)) {
            return reject(format!("step {} does not contain {}", i + 1, a.show(v)));
        }
        let mut r = prev.reducer();
        for u in &cert.representatives[i] {
            if !s.contains(u) {
                return reject(format!("representative {} lies outside step {}", a.show(u), i + 1));
            }
            if !r.insert(u.clone()) {
                return reject(format!("representative {} is dependent modulo step {}", a.show(u), i));
            }
        }
        if r.rank() != s.dim() {
            return reject(format!("representatives do not span step {} modulo step {i}", i + 1));
        }
    }
    if spaces.last().map_or(0, |s| s.dim()) != a.dim() {
        return reject("the last step is not the whole algebra".into());
    }

    let t = two_sided_bar(&aug, w)?;
    let bar = &t.bar;
    // d of w₁⊗v⊗w₂ grouped by the outer words, as algebra vectors
    let d_of = |n: i32, w1: &Word, v: &SparseVec, w2: &Word| -> BTreeMap<(Word, Word), SparseVec> {
        let vec = SparseVec::from_pairs(v.iter().map(|(x, c)| {
            let (_, p) = t.basis.locate(&(w1.clone(), x, w2.clone())).expect("triple in the window");
            (p, c.clone())
        }));
        let img = t.complex.apply_d(n, &vec);
        let out_keys = t.basis.keys(n + 1);
        let mut out: BTreeMap<(Word, Word), SparseVec> = BTreeMap::new();
        for (k, c) in img.iter() {
            let (u1, x, u2) = &out_keys[k];
            out.entry((u1.clone(), u2.clone()))
                .or_default()
                .add_scaled(c, &SparseVec::unit(*x, field));
        }
        out
    };
    let show = |w1: &Word, v: &SparseVec, w2: &Word| format!("{}⊗({})⊗{}", bar.name(w1), a.show(v), bar.name(w2));
    let outer: Vec<(i32, Word, Word)> = {
        let mut v = Vec::new();
        for n in w.degrees() {
            for (w1, _, w2) in t.basis.keys(n) {
                v.push((n, w1.clone(), w2.clone()));
            }
        }
        v.sort();
        v.dedup();
        v
    };
    for (i, s) in spaces.iter().enumerate() {
        let prev = if i == 0 { &zero } else { &spaces[i - 1] };
        for (n, w1, w2) in &outer {
            if *n >= w.hi {
                continue;
            }
            let inner = n - bar.word_degree(w1) - bar.word_degree(w2);
            for v in s.basis().iter().filter(|v| a.degree_of(v) == Some(inner)) {
                for ((u1, u2), x) in d_of(*n, w1, v, w2) {
                    if !s.contains(&x) {
                        return reject(format!(
                            "step {} is not closed: d({}) has component {} outside it",
                            i + 1,
                            show(w1, v, w2),
                            show(&u1, &x, &u2)
                        ));
                    }
                }
            }
            for u in cert.representatives[i].iter().filter(|u| a.degree_of(u) == Some(inner)) {
                let mut diff = d_of(*n, w1, u, w2);
                let mut model: BTreeMap<(Word, Word), SparseVec> = BTreeMap::new();
                for (v1, c) in bar.differential(w1) {
                    model.entry((v1, w2.clone())).or_default().add_scaled(&c, u);
                }
                let s2 = field.sign((bar.word_degree(w1) + inner) as i64);
                for (v2, c) in bar.differential(w2) {
                    model
                        .entry((w1.clone(), v2))
                        .or_default()
                        .add_scaled(&(&s2 * &c), u);
                }
                for (k, m) in model {
                    diff.entry(k).or_default().add_scaled(&-field.one(), &m);
                }
                for ((u1, u2), x) in diff {
                    if !x.is_zero() && !prev.contains(&x) {
                        return reject(format!(
                            "subquotient {} is not free on {}: d({}) has extra component {}",
                            i + 1,
                            a.show(u),
                            show(w1, u, w2),
                            show(&u1, &x, &u2)
                        ));
                    }
                }
            }
        }
    }
    Ok(FiltrationVerdict {
        certified: true,
        window: w,
        shifts,
        witness: None,
    })
}

/// Powers `(A⁺)^j` refined by `{x ∈ (A⁺)^j : dx ∈ (A⁺)^{j+1}}`, with
/// representatives extending each step's predecessor.
pub fn auto_filtration(aug: &Augmentation) -> Result<FiltrationCertificate> {
    let hyp = aug.resolution_hypotheses();
    if !hyp.all_hold() {
        let failed: Vec<String> = hyp.items.iter().filter(|h| !h.holds).map(|h| h.name.clone()).collect();
        return Err(Error::HypothesesUnmet(failed.join(", ")));
    }
    let aug = aug.normalize()?;
    let a = aug.algebra();
    let field = a.field();
    let all = Subspace::new(field, a.dim(), (0..a.dim()).map(|i| SparseVec::unit(i, field)));
    let mut powers = vec![all];
    powers.extend(aug.ideal_powers(a.dim() + 1));
    if powers.last().is_none_or(|p| p.dim() != 0) {
        powers.push(Subspace::new(field, a.dim(), Vec::new()));
    }
    let top = powers.len() - 1;
    let mut chain: Vec<Vec<SparseVec>> = Vec::new();
    let mut last = 0;
    for j in (0..top).rev() {
        for s in [refine(a, &powers[j], &powers[j + 1]), powers[j].basis().to_vec()] {
            if s.len() > last {
                last = s.len();
                chain.push(s);
            }
        }
    }
    let mut representatives = Vec::new();
    let mut r = Reducer::new(field, a.dim());
    for s in &chain {
        let mut reps = Vec::new();
        for v in s {
            if r.insert(v.clone()) {
                reps.push(v.clone());
            }
        }
        representatives.push(reps);
    }
    Ok(FiltrationCertificate {
        augmentation: aug,
        steps: chain,
        representatives,
    })
}

/// `{x ∈ G : dx ∈ H}`, computed degree by degree so the basis stays homogeneous.
fn refine(a: &DGAlgebra, g: &Subspace, h: &Subspace) -> Vec<SparseVec> {
    let field = a.field();
    let q = Quotient::new(field, a.dim(), h.basis().iter().cloned());
    let mut by_degree: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
    for v in g.basis() {
        by_degree.entry(a.degree_of(v).unwrap_or(0)).or_default().push(v.clone());
    }
    let mut out = Vec::new();
    for vs in by_degree.values() {
        let cols = vs.iter().map(|v| q.project(&a.d(v))).collect();
        let m = Matrix::from_columns(field, q.dim(), cols).expect("quotient coordinates");
        for k in m.kernel_basis() {
            let mut x = SparseVec::new();
            for (i, c) in k.iter() {
                x.add_scaled(c, &vs[i]);
            }
            out.push(x);
        }
    }
    out
}

/// A generator `e·E[shift]` of a resolution: `e` an idempotent of the acting algebra.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub shift: i32,
    pub idempotent: SparseVec,
}

/// A finite complex of sums of projective summands `e·E` of the acting algebra
/// `E`, with an augmentation to `target`. `differential[g]` lists `(h, c)` with
/// `d(g) = Σ h·c`, `c ∈ e_h E e_g`; `augmentation[g]` is the image of `g`.
#[derive(Debug, Clone)]
pub struct FreeResolutionCertificate {
    pub target: DGModule,
    pub generators: Vec<Generator>,
    pub differential: Vec<Vec<(usize, SparseVec)>>,
    pub augmentation: Vec<SparseVec>,
}

#[derive(Debug, Clone)]
pub struct ResolutionVerdict {
    pub resolution: Option<DGModule>,
    pub problems: Vec<String>,
    pub quasi_iso: Option<QuasiIsoReport>,
    pub window: DegreeWindow,
}

impl ResolutionVerdict {
    pub fn certified(&self) -> bool {
        self.problems.is_empty() && self.quasi_iso.as_ref().is_some_and(|q| q.is_quasi_iso())
    }

    pub fn summary(&self) -> String {
        if self.certified() {
            format!("smooth (certified up to window {})", self.window)
        } else if let Some(p) = self.problems.first() {
            format!("not certified: {p}")
        } else {
            "not certified: the augmentation is not a quasi-isomorphism".into()
        }
    }
}

/// Builds the resolution as a module, checks that it is a complex of modules,
/// that the augmentation is a module chain map and that it is a quasi-isomorphism on `w`.
pub fn verify_free_resolution(cert: &FreeResolutionCertificate, w: DegreeWindow) -> Result<ResolutionVerdict> {
    w.require_interior()?;
    let target = &cert.target;
    let e = target.algebra();
    let field = e.field();
    let ng = cert.generators.len();
    if cert.differential.len() != ng || cert.augmentation.len() != ng {
        return Err(Error::InvalidStructure(
            "differential and augmentation need one entry per generator".into(),
        ));
    }
    let mut problems = Vec::new();
    let verdict = |problems: Vec<String>| ResolutionVerdict {
        resolution: None,
        problems,
        quasi_iso: None,
        window: w,
    };
    let mul = |x: &SparseVec, y: &SparseVec| e.mul(x, y);
    for g in &cert.generators {
        let i = &g.idempotent;
        if e.degree_of(i).is_some_and(|d| d != 0) || mul(i, i) != *i || !e.d(i).is_zero() || i.is_zero() {
            problems.push(format!("{} is not a closed degree-0 idempotent", g.name));
        }
    }
    if !problems.is_empty() {
        return Ok(verdict(problems));
    }
    // basis of each summand e·E
    let mut offsets = Vec::new();
    let mut summands: Vec<(Vec<SparseVec>, Reducer)> = Vec::new();
    let mut basis = Vec::new();
    for g in &cert.generators {
        offsets.push(basis.len());
        let mut r = Reducer::with_tracking(field, e.dim());
        let mut vs = Vec::new();
        for x in 0..e.dim() {
            let v = mul(&g.idempotent, &SparseVec::unit(x, field));
            if !v.is_zero() {
                if let Insert::Independent = r.insert_tagged(v.clone(), vs.len()) {
                    vs.push(v);
                }
            }
        }
        for v in &vs {
            basis.push((format!("{}·({})", g.name, e.show(v)), e.degree_of(v).unwrap_or(0) - g.shift));
        }
        summands.push((vs, r));
    }
    let place = |g: usize, v: &SparseVec| -> Option<SparseVec> {
        summands[g].1.express(v).map(|c| c.shifted(offsets[g]))
    };
    for (g, terms) in cert.differential.iter().enumerate() {
        for (h, c) in terms {
            let (eg, eh) = (&cert.generators[g].idempotent, &cert.generators[*h].idempotent);
            if mul(eh, c) != *c || mul(c, eg) != *c {
                problems.push(format!(
                    "coefficient {} of {} in d({}) is not in e_h E e_g",
                    e.show(c),
                    cert.generators[*h].name,
                    cert.generators[g].name
                ));
            }
        }
    }
    for (g, img) in cert.augmentation.iter().enumerate() {
        if target.act(img, &cert.generators[g].idempotent) != *img {
            problems.push(format!("augmentation of {} is not fixed by its idempotent", cert.generators[g].name));
        }
    }
    if !problems.is_empty() {
        return Ok(verdict(problems));
    }
    let mut d = Vec::new();
    for (g, gen) in cert.generators.iter().enumerate() {
        let sign = field.sign(gen.shift as i64);
        for v in &summands[g].0 {
            let mut out = place(g, &e.d(v)).expect("d preserves e·E").scaled(&sign);
            for (h, c) in &cert.differential[g] {
                let x = mul(c, v);
                match place(*h, &x) {
                    Some(p) => out.add_scaled(&field.one(), &p),
                    None => problems.push(format!("{} is not in the summand of {}", e.show(&x), cert.generators[*h].name)),
                }
            }
            d.push(out);
        }
    }
    if !problems.is_empty() {
        return Ok(verdict(problems));
    }
    let resolution = DGModule::from_fn(e.clone(), basis, d, |i, y| {
        let g = offsets.iter().rposition(|&o| o <= i).expect("offset");
        let v = &summands[g].0[i - offsets[g]];
        place(g, &mul(v, &SparseVec::unit(y, field))).expect("e·E is a right ideal")
    });
    let resolution = match resolution {
        Ok(r) => r,
        Err(err) => return Ok(verdict(vec![err.to_string()])),
    };
    for v in resolution.validate().violations {
        problems.push(format!("resolution: {v}"));
    }
    let mut cols = Vec::new();
    for (g, img) in cert.augmentation.iter().enumerate() {
        for v in &summands[g].0 {
            cols.push(target.act(img, v));
        }
    }
    let eps = ModuleMap::new(0, Matrix::from_columns(field, target.dim(), cols)?);
    problems.extend(eps.check(&resolution, target, true).into_iter().map(|p| format!("augmentation: {p}")));
    let quasi_iso = if problems.is_empty() {
        let (pc, tc) = (resolution.complex()?, target.complex()?);
        Some(verify_quasi_iso(&pc, &tc, &eps.graded_map(&resolution, target), w)?)
    } else {
        None
    };
    Ok(ResolutionVerdict {
        resolution: Some(resolution),
        problems,
        quasi_iso,
        window: w,
    })
}

/// `target ≅ E` through `1 ↦ image`: a single free generator in degree 0.
pub fn free_rank_one(target: &DGModule, image: SparseVec) -> FreeResolutionCertificate {
    FreeResolutionCertificate {
        target: target.clone(),
        generators: vec![Generator {
            name: "g".into(),
            shift: 0,
            idempotent: target.algebra().unit().clone(),
        }],
        differential: vec![Vec::new()],
        augmentation: vec![image],
    }
}

/// The diagonal of the ground field, resolved by itself.
pub fn ground_resolution(field: Field) -> Result<FreeResolutionCertificate> {
    let diag = crate::module::diagonal(&DGAlgebra::ground(field))?;
    Ok(free_rank_one(&diag, SparseVec::unit(0, field)))
}

/// The two-term resolution `P₁ → P₀ → A` of the diagonal of the path algebra
/// of `•→•` (basis `e_B, n, e_A`) by projective summands of `A^op ⊗ A`:
/// `P₀ = (e_B⊗e_B)E ⊕ (e_A⊗e_A)E`, `P₁ = (e_A⊗e_B)E` and
/// `d(g_n) = g_B·(n⊗e_B) - g_A·(e_A⊗n)`.
pub fn a2_resolution(field: Field) -> Result<FreeResolutionCertificate> {
    let a = crate::catalog::a2_path(field);
    let diag = crate::module::diagonal(&a)?;
    let idx = |x: usize, y: usize| x * 3 + y;
    let (eb, n, ea) = (0, 1, 2);
    let one = field.one();
    let gen = |name: &str, shift: i32, x: usize, y: usize| Generator {
        name: name.into(),
        shift,
        idempotent: SparseVec::unit(idx(x, y), field),
    };
    Ok(FreeResolutionCertificate {
        target: diag,
        generators: vec![gen("gB", 0, eb, eb), gen("gA", 0, ea, ea), gen("gn", 1, ea, eb)],
        differential: vec![
            Vec::new(),
            Vec::new(),
            vec![
                (0, SparseVec::single(idx(n, eb), one.clone())),
                (1, SparseVec::single(idx(ea, n), -one.clone())),
            ],
        ],
        augmentation: vec![
            SparseVec::unit(eb, field),
            SparseVec::unit(ea, field),
            SparseVec::new(),
        ],
    })
}

/// Smoothness of a glued algebra from certificates for its pieces: resolutions
/// of the diagonals of `A` and `B`, a resolution of `N` over `A^op ⊗ B`, and the
/// cone presentation of the diagonal of `C`.
#[derive(Debug, Clone)]
pub struct GluedSmoothness {
    pub a: ResolutionVerdict,
    pub b: ResolutionVerdict,
    pub n: ResolutionVerdict,
    pub cone: crate::gluing::DiagonalConeReport,
}

impl GluedSmoothness {
    pub fn verified(&self) -> bool {
        self.a.certified() && self.b.certified() && self.n.certified() && self.cone.verified()
    }

    pub fn verdict(&self) -> String {
        if self.verified() {
            return "smooth (glued)".into();
        }
        let mut missing = Vec::new();
        for (name, v) in [("A", &self.a), ("B", &self.b), ("N", &self.n)] {
            if !v.certified() {
                missing.push(format!("{name}: {}", v.summary()));
            }
        }
        if !self.cone.verified() {
            missing.push("diagonal cone not verified".into());
        }
        format!("not established: {}", missing.join("; "))
    }
}

pub fn glued_smoothness(
    ga: &crate::gluing::GluedAlgebra,
    cert_a: &FreeResolutionCertificate,
    cert_b: &FreeResolutionCertificate,
    cert_n: &FreeResolutionCertificate,
    w: DegreeWindow,
) -> Result<GluedSmoothness> {
    let expect = |cert: &FreeResolutionCertificate, target: &DGModule, what: &str| {
        if cert.target != *target {
            return Err(Error::InvalidStructure(format!("the {what} certificate resolves a different module")));
        }
        Ok(())
    };
    expect(cert_a, &crate::module::diagonal(&ga.a)?, "A")?;
    expect(cert_b, &crate::module::diagonal(&ga.b)?, "B")?;
    expect(cert_n, &ga.n, "N")?;
    Ok(GluedSmoothness {
        a: verify_free_resolution(cert_a, w)?,
        b: verify_free_resolution(cert_b, w)?,
        n: verify_free_resolution(cert_n, w)?,
        cone: crate::gluing::glued_diagonal_cone(ga)?,
    })
}
