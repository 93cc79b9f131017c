//! Line-oriented presentation files.
//!
//! ```text
//! field Q
//! algebra A
//! gen 1 0
//! gen x 0
//! unit 1
//! mul x x = 0
//! aug x = 0
//!
//! module M over A
//! gen m 0
//! act m x = 0
//!
//! bimodule N over A B
//! gen n 0
//! act left x n = 0
//! act right n y = n
//!
//! complex X over A
//! gen u 0
//! gen v 1
//! d u = v
//! act x u = 0
//!
//! map f X Y
//! image u = w
//! ```
//!
//! Linear combinations are written `2 x - 1/2*y + z` or `0`. Outside
//! `--strict`, unspecified products, differentials, actions and images are
//! zero, and a unit basis element acts as the identity.

use std::collections::{BTreeMap, BTreeSet};

use dgres_core::module::flat_complex;
use dgres_core::{
    bimodule, end_algebra, Augmentation, Complex, DGAlgebra, DGAlgebraHom, DGModule, Field, GradedMap, Matrix,
    Scalar, SparseVec,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Basis {
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn pairs(&self) -> Vec<(String, i32)> {
        self.names.iter().cloned().zip(self.degrees.iter().copied()).collect()
    }

    fn from_pairs(pairs: Vec<(String, i32)>) -> Basis {
        let (names, degrees) = pairs.into_iter().map(|(n, d)| (sanitize(&n), d)).unzip();
        Basis { names, degrees }
    }

    /// Position of each basis element in the degree-sorted order.
    fn flat_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.dim()).collect();
        idx.sort_by_key(|&i| self.degrees[i]);
        let mut out = vec![0; self.dim()];
        for (pos, i) in idx.into_iter().enumerate() {
            out[i] = pos;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub basis: Basis,
    pub unit: SparseVec,
    pub d: BTreeMap<usize, SparseVec>,
    pub mul: BTreeMap<(usize, usize), SparseVec>,
    pub aug: Option<Vec<Scalar>>,
}

/// Right module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub over: String,
    pub basis: Basis,
    pub d: BTreeMap<usize, SparseVec>,
    /// `(m, a) ↦ m·a`
    pub act: BTreeMap<(usize, usize), SparseVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleSpec {
    pub name: String,
    pub left: String,
    pub right: String,
    pub basis: Basis,
    pub d: BTreeMap<usize, SparseVec>,
    /// `(a, n) ↦ a·n`
    pub left_act: BTreeMap<(usize, usize), SparseVec>,
    /// `(n, b) ↦ n·b`
    pub right_act: BTreeMap<(usize, usize), SparseVec>,
}

/// Finite complex, optionally with a left action of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSpec {
    pub name: String,
    pub over: Option<String>,
    pub basis: Basis,
    pub d: BTreeMap<usize, SparseVec>,
    /// `(a, x) ↦ a·x`
    pub act: BTreeMap<(usize, usize), SparseVec>,
}

/// Degree-0 map between complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: BTreeMap<usize, SparseVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Section {
    Algebra(AlgebraSpec),
    Module(ModuleSpec),
    Bimodule(BimoduleSpec),
    Complex(ComplexSpec),
    Map(MapSpec),
}

impl Section {
    pub fn name(&self) -> &str {
        match self {
            Section::Algebra(s) => &s.name,
            Section::Module(s) => &s.name,
            Section::Bimodule(s) => &s.name,
            Section::Complex(s) => &s.name,
            Section::Map(s) => &s.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Section::Algebra(_) => "algebra",
            Section::Module(_) => "module",
            Section::Bimodule(_) => "bimodule",
            Section::Complex(_) => "complex",
            Section::Map(_) => "map",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    pub strict: bool,
    /// Replaces the field declared in the file.
    pub field: Option<Field>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(['=', '*', '#']) && !matches!(s, "+" | "-") && !s.starts_with(['+', '-'])
}

fn sanitize(s: &str) -> String {
    let mut out: String = s
        .chars()
        .map(|c| if c.is_whitespace() || matches!(c, '=' | '*' | '#') { '_' } else { c })
        .collect();
    if out.starts_with(['+', '-']) {
        out.insert(0, '_');
    }
    if out.is_empty() {
        out.push('_');
    }
    out
}

/// Pending section state: the spec plus which entries were written explicitly.
enum Open {
    Algebra(AlgebraSpec, BTreeSet<usize>, BTreeSet<(usize, usize)>, BTreeSet<usize>, bool),
    Module(ModuleSpec, BTreeSet<usize>, BTreeSet<(usize, usize)>),
    Bimodule(BimoduleSpec, BTreeSet<usize>, BTreeSet<(usize, usize)>, BTreeSet<(usize, usize)>),
    Complex(ComplexSpec, BTreeSet<usize>, BTreeSet<(usize, usize)>),
    Map(MapSpec, BTreeSet<usize>),
}

struct Parser {
    field: Field,
    field_fixed: bool,
    inherited: Option<Field>,
    declared_field: bool,
    options: ParseOptions,
    sections: Vec<Section>,
    open: Option<(usize, Open)>,
}

type PResult<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> PResult<T> {
    Err(ParseError { line, column, message: message.into() })
}

impl Parser {
    fn algebra(&self, name: &str) -> Option<&AlgebraSpec> {
        self.sections.iter().find_map(|s| match s {
            Section::Algebra(a) if a.name == name => Some(a),
            _ => None,
        })
    }

    fn complex(&self, name: &str) -> Option<&ComplexSpec> {
        self.sections.iter().find_map(|s| match s {
            Section::Complex(c) if c.name == name => Some(c),
            _ => None,
        })
    }

    fn scalar(&self, line: usize, t: &Token) -> PResult<Scalar> {
        Scalar::parse(self.field, t.text).or_else(|_| err(line, t.column, format!("invalid scalar {:?}", t.text)))
    }

    fn degree(line: usize, t: &Token) -> PResult<i32> {
        t.text.parse().or_else(|_| err(line, t.column, format!("invalid degree {:?}", t.text)))
    }

    /// Parses a linear combination over `basis` whose terms must all have degree `degree`.
    fn combo(&self, line: usize, tokens: &[Token], basis: &Basis, degree: Option<i32>) -> PResult<SparseVec> {
        let mut pieces: Vec<(String, usize)> = Vec::new();
        for t in tokens {
            let mut col = t.column;
            for (k, part) in t.text.split('*').enumerate() {
                if k > 0 {
                    pieces.push(("*".into(), col));
                    col += 1;
                }
                if !part.is_empty() {
                    pieces.push((part.to_string(), col));
                }
                col += part.chars().count();
            }
        }
        if pieces.is_empty() {
            return err(line, tokens.first().map_or(1, |t| t.column), "missing right-hand side");
        }
        let one = self.field.one();
        let mut out = SparseVec::new();
        let mut sign = one.clone();
        let mut coef: Option<Scalar> = None;
        let mut after_term = false;
        let mut i = 0;
        while i < pieces.len() {
            let (text, col) = (&pieces[i].0, pieces[i].1);
            i += 1;
            if text == "*" {
                if coef.is_none() {
                    return err(line, col, "'*' must follow a coefficient");
                }
                continue;
            }
            if text == "+" || text == "-" {
                if coef.is_some() {
                    return err(line, col, "coefficient without a basis element");
                }
                if text == "-" {
                    sign = -sign;
                }
                after_term = false;
                continue;
            }
            if after_term {
                return err(line, col, format!("expected '+' or '-' before {text:?}"));
            }
            let (neg, bare) = match text.strip_prefix('-') {
                Some(rest) if basis.index(text).is_none() && basis.index(rest).is_some() => (true, rest),
                _ => (false, text.as_str()),
            };
            if let Some(k) = basis.index(bare) {
                if let Some(deg) = degree {
                    if basis.degrees[k] != deg {
                        return err(
                            line,
                            col,
                            format!("{bare} has degree {}, expected degree {deg}", basis.degrees[k]),
                        );
                    }
                }
                let mut c = coef.take().unwrap_or_else(|| one.clone());
                c = &c * &sign;
                if neg {
                    c = -c;
                }
                out.add_scaled(&c, &SparseVec::unit(k, self.field));
                sign = one.clone();
                after_term = true;
                continue;
            }
            match Scalar::parse(self.field, text) {
                Ok(s) if coef.is_none() => {
                    let next_is_name = pieces.get(i).is_some_and(|(t, _)| t != "+" && t != "-");
                    if !next_is_name {
                        if !s.is_zero() {
                            return err(line, col, format!("constant {text} needs a basis element"));
                        }
                        after_term = true;
                    } else {
                        coef = Some(s);
                    }
                }
                Ok(_) => return err(line, col, "two coefficients in a row"),
                Err(_) => return err(line, col, format!("undeclared name {text:?}")),
            }
        }
        if coef.is_some() || !after_term {
            return err(line, pieces.last().map_or(1, |p| p.1), "incomplete linear combination");
        }
        Ok(out)
    }

    fn basis_of_open(&self) -> Option<&Basis> {
        match &self.open {
            Some((_, Open::Algebra(s, ..))) => Some(&s.basis),
            Some((_, Open::Module(s, ..))) => Some(&s.basis),
            Some((_, Open::Bimodule(s, ..))) => Some(&s.basis),
            Some((_, Open::Complex(s, ..))) => Some(&s.basis),
            _ => None,
        }
    }

    fn close(&mut self) -> PResult<()> {
        let Some((line, open)) = self.open.take() else { return Ok(()) };
        let strict = self.options.strict;
        let f = self.field;
        let section = match open {
            Open::Algebra(mut s, d_seen, mul_seen, aug_seen, unit_seen) => {
                if !unit_seen {
                    return err(line, 1, format!("algebra {} has no unit line", s.name));
                }
                let n = s.basis.dim();
                if strict {
                    if let Some(i) = (0..n).find(|i| !d_seen.contains(i)) {
                        return err(line, 1, format!("strict: d({}) not given", s.basis.names[i]));
                    }
                    for i in 0..n {
                        for j in 0..n {
                            if !mul_seen.contains(&(i, j)) {
                                return err(
                                    line,
                                    1,
                                    format!("strict: product {} {} not given", s.basis.names[i], s.basis.names[j]),
                                );
                            }
                        }
                    }
                    if s.aug.is_some() {
                        if let Some(i) = (0..n).find(|i| !aug_seen.contains(i)) {
                            return err(line, 1, format!("strict: aug {} not given", s.basis.names[i]));
                        }
                    }
                } else if let Some(u) = unit_index(&s.unit, f) {
                    for i in 0..n {
                        for (key, val) in [((u, i), i), ((i, u), i)] {
                            if !mul_seen.contains(&key) {
                                s.mul.insert(key, SparseVec::unit(val, f));
                            }
                        }
                    }
                }
                Section::Algebra(s)
            }
            Open::Module(mut s, d_seen, act_seen) => {
                let a = self.algebra(&s.over).expect("checked at the header").clone();
                if strict {
                    check_all(line, &s.basis, &d_seen, &act_seen, &a.basis, false)?;
                } else if let Some(u) = unit_index(&a.unit, f) {
                    for m in 0..s.basis.dim() {
                        if !act_seen.contains(&(m, u)) {
                            s.act.insert((m, u), SparseVec::unit(m, f));
                        }
                    }
                }
                Section::Module(s)
            }
            Open::Bimodule(mut s, d_seen, left_seen, right_seen) => {
                let a = self.algebra(&s.left).expect("checked at the header").clone();
                let b = self.algebra(&s.right).expect("checked at the header").clone();
                if strict {
                    check_all(line, &s.basis, &d_seen, &left_seen, &a.basis, true)?;
                    check_all(line, &s.basis, &d_seen, &right_seen, &b.basis, false)?;
                } else {
                    if let Some(u) = unit_index(&a.unit, f) {
                        for m in 0..s.basis.dim() {
                            if !left_seen.contains(&(u, m)) {
                                s.left_act.insert((u, m), SparseVec::unit(m, f));
                            }
                        }
                    }
                    if let Some(u) = unit_index(&b.unit, f) {
                        for m in 0..s.basis.dim() {
                            if !right_seen.contains(&(m, u)) {
                                s.right_act.insert((m, u), SparseVec::unit(m, f));
                            }
                        }
                    }
                }
                Section::Bimodule(s)
            }
            Open::Complex(mut s, d_seen, act_seen) => {
                if let Some(over) = &s.over {
                    let a = self.algebra(over).expect("checked at the header").clone();
                    if strict {
                        check_all(line, &s.basis, &d_seen, &act_seen, &a.basis, true)?;
                    } else if let Some(u) = unit_index(&a.unit, f) {
                        for m in 0..s.basis.dim() {
                            if !act_seen.contains(&(u, m)) {
                                s.act.insert((u, m), SparseVec::unit(m, f));
                            }
                        }
                    }
                } else if strict {
                    check_all(line, &s.basis, &d_seen, &act_seen, &Basis::default(), true)?;
                }
                Section::Complex(s)
            }
            Open::Map(s, seen) => {
                if strict {
                    let src = self.complex(&s.source).expect("checked at the header");
                    if let Some(i) = (0..src.basis.dim()).find(|i| !seen.contains(i)) {
                        return err(line, 1, format!("strict: image of {} not given", src.basis.names[i]));
                    }
                }
                Section::Map(s)
            }
        };
        self.sections.push(strip_zeros(section));
        Ok(())
    }

    fn require_new_name(&self, line: usize, t: &Token) -> PResult<()> {
        if !valid_name(t.text) {
            return err(line, t.column, format!("invalid name {:?}", t.text));
        }
        if self.sections.iter().any(|s| s.name() == t.text) {
            return err(line, t.column, format!("{} is already defined", t.text));
        }
        Ok(())
    }

    fn line(&mut self, line: usize, tokens: &[Token]) -> PResult<()> {
        let kw = &tokens[0];
        let arg = |k: usize| -> PResult<&Token> {
            tokens.get(k).ok_or_else(|| ParseError {
                line,
                column: tokens.last().map_or(1, |t| t.column + t.text.chars().count()),
                message: format!("{} needs more arguments", kw.text),
            })
        };
        let expect_end = |k: usize| -> PResult<()> {
            match tokens.get(k) {
                Some(t) => err(line, t.column, format!("unexpected {:?}", t.text)),
                None => Ok(()),
            }
        };
        let eq_at = |k: usize| -> PResult<()> {
            let t = arg(k)?;
            if t.text != "=" {
                return err(line, t.column, format!("expected '=', found {:?}", t.text));
            }
            Ok(())
        };
        match kw.text {
            "field" => {
                if self.declared_field {
                    return err(line, kw.column, "field declared twice");
                }
                let t = arg(1)?;
                let f: Field = t.text.parse().or_else(|_| err(line, t.column, format!("unknown field {:?}", t.text)))?;
                expect_end(2)?;
                if self.open.is_some() || (self.inherited.is_none() && !self.sections.is_empty()) {
                    return err(line, kw.column, "field must precede every section");
                }
                if !self.field_fixed && self.inherited.is_some_and(|g| g != f) {
                    return err(line, t.column, format!("field {f} differs from the earlier field {}", self.field));
                }
                if !self.field_fixed {
                    self.field = f;
                }
                self.declared_field = true;
            }
            "algebra" => {
                self.close()?;
                let t = arg(1)?;
                self.require_new_name(line, t)?;
                expect_end(2)?;
                self.open = Some((
                    line,
                    Open::Algebra(
                        AlgebraSpec {
                            name: t.text.into(),
                            basis: Basis::default(),
                            unit: SparseVec::new(),
                            d: BTreeMap::new(),
                            mul: BTreeMap::new(),
                            aug: None,
                        },
                        BTreeSet::new(),
                        BTreeSet::new(),
                        BTreeSet::new(),
                        false,
                    ),
                ));
            }
            "module" | "bimodule" | "complex" => {
                self.close()?;
                let t = arg(1)?;
                self.require_new_name(line, t)?;
                let name = t.text.to_string();
                let mut over = Vec::new();
                if let Some(o) = tokens.get(2) {
                    if o.text != "over" {
                        return err(line, o.column, format!("expected 'over', found {:?}", o.text));
                    }
                    let count = if kw.text == "bimodule" { 2 } else { 1 };
                    for k in 3..3 + count {
                        let a = arg(k)?;
                        if self.algebra(a.text).is_none() {
                            return err(line, a.column, format!("undeclared algebra {:?}", a.text));
                        }
                        over.push(a.text.to_string());
                    }
                    expect_end(3 + count)?;
                } else if kw.text != "complex" {
                    return err(line, kw.column + kw.text.len(), format!("{} needs 'over <algebra>'", kw.text));
                }
                let open = match kw.text {
                    "module" => Open::Module(
                        ModuleSpec {
                            name,
                            over: over[0].clone(),
                            basis: Basis::default(),
                            d: BTreeMap::new(),
                            act: BTreeMap::new(),
                        },
                        BTreeSet::new(),
                        BTreeSet::new(),
                    ),
                    "bimodule" => Open::Bimodule(
                        BimoduleSpec {
                            name,
                            left: over[0].clone(),
                            right: over[1].clone(),
                            basis: Basis::default(),
                            d: BTreeMap::new(),
                            left_act: BTreeMap::new(),
                            right_act: BTreeMap::new(),
                        },
                        BTreeSet::new(),
                        BTreeSet::new(),
                        BTreeSet::new(),
                    ),
                    _ => Open::Complex(
                        ComplexSpec {
                            name,
                            over: over.first().cloned(),
                            basis: Basis::default(),
                            d: BTreeMap::new(),
                            act: BTreeMap::new(),
                        },
                        BTreeSet::new(),
                        BTreeSet::new(),
                    ),
                };
                self.open = Some((line, open));
            }
            "map" => {
                self.close()?;
                let t = arg(1)?;
                self.require_new_name(line, t)?;
                let (x, y) = (arg(2)?, arg(3)?);
                for c in [x, y] {
                    if self.complex(c.text).is_none() {
                        return err(line, c.column, format!("undeclared complex {:?}", c.text));
                    }
                }
                expect_end(4)?;
                self.open = Some((
                    line,
                    Open::Map(
                        MapSpec {
                            name: t.text.into(),
                            source: x.text.into(),
                            target: y.text.into(),
                            images: BTreeMap::new(),
                        },
                        BTreeSet::new(),
                    ),
                ));
            }
            "gen" => {
                let t = arg(1)?;
                let deg = Self::degree(line, arg(2)?)?;
                expect_end(3)?;
                if !valid_name(t.text) {
                    return err(line, t.column, format!("invalid name {:?}", t.text));
                }
                let basis = match &mut self.open {
                    Some((_, Open::Algebra(s, ..))) => &mut s.basis,
                    Some((_, Open::Module(s, ..))) => &mut s.basis,
                    Some((_, Open::Bimodule(s, ..))) => &mut s.basis,
                    Some((_, Open::Complex(s, ..))) => &mut s.basis,
                    _ => return err(line, kw.column, "gen outside an algebra, module or complex"),
                };
                if basis.index(t.text).is_some() {
                    return err(line, t.column, format!("{} declared twice", t.text));
                }
                basis.names.push(t.text.into());
                basis.degrees.push(deg);
            }
            "unit" => {
                let Some((_, Open::Algebra(s, .., unit_seen))) = &self.open else {
                    return err(line, kw.column, "unit outside an algebra");
                };
                if *unit_seen {
                    return err(line, kw.column, "unit given twice");
                }
                let v = self.combo(line, &tokens[1..], &s.basis, Some(0))?;
                if let Some((_, Open::Algebra(s, .., unit_seen))) = &mut self.open {
                    s.unit = v;
                    *unit_seen = true;
                }
            }
            "d" => {
                let basis = self.basis_of_open().ok_or(ParseError {
                    line,
                    column: kw.column,
                    message: "d outside an algebra, module or complex".into(),
                })?;
                let t = arg(1)?;
                let i = basis
                    .index(t.text)
                    .ok_or_else(|| ParseError { line, column: t.column, message: format!("undeclared name {:?}", t.text) })?;
                eq_at(2)?;
                let v = self.combo(line, &tokens[3..], basis, Some(basis.degrees[i] + 1))?;
                let (d, seen) = match &mut self.open {
                    Some((_, Open::Algebra(s, seen, ..))) => (&mut s.d, seen),
                    Some((_, Open::Module(s, seen, _))) => (&mut s.d, seen),
                    Some((_, Open::Bimodule(s, seen, ..))) => (&mut s.d, seen),
                    Some((_, Open::Complex(s, seen, _))) => (&mut s.d, seen),
                    _ => unreachable!(),
                };
                if !seen.insert(i) {
                    return err(line, t.column, format!("d({}) given twice", t.text));
                }
                d.insert(i, v);
            }
            "mul" => {
                let Some((_, Open::Algebra(s, ..))) = &self.open else {
                    return err(line, kw.column, "mul outside an algebra");
                };
                let (x, y) = (arg(1)?, arg(2)?);
                let i = lookup(line, x, &s.basis)?;
                let j = lookup(line, y, &s.basis)?;
                eq_at(3)?;
                let v = self.combo(line, &tokens[4..], &s.basis, Some(s.basis.degrees[i] + s.basis.degrees[j]))?;
                if let Some((_, Open::Algebra(s, _, seen, ..))) = &mut self.open {
                    if !seen.insert((i, j)) {
                        return err(line, x.column, format!("product {} {} given twice", x.text, y.text));
                    }
                    s.mul.insert((i, j), v);
                }
            }
            "aug" => {
                let Some((_, Open::Algebra(s, ..))) = &self.open else {
                    return err(line, kw.column, "aug outside an algebra");
                };
                let t = arg(1)?;
                let i = lookup(line, t, &s.basis)?;
                eq_at(2)?;
                let v = self.scalar(line, arg(3)?)?;
                expect_end(4)?;
                if !v.is_zero() && s.basis.degrees[i] != 0 {
                    return err(line, tokens[3].column, format!("aug of {} must be 0: it has nonzero degree", t.text));
                }
                let f = self.field;
                if let Some((_, Open::Algebra(s, _, _, seen, _))) = &mut self.open {
                    if !seen.insert(i) {
                        return err(line, t.column, format!("aug {} given twice", t.text));
                    }
                    let n = s.basis.dim();
                    let aug = s.aug.get_or_insert_with(|| vec![f.zero(); n]);
                    aug.resize(n, f.zero());
                    aug[i] = v;
                }
            }
            "act" => self.act(line, tokens)?,
            "image" => {
                let Some((_, Open::Map(s, _))) = &self.open else {
                    return err(line, kw.column, "image outside a map");
                };
                let src = &self.complex(&s.source).expect("declared").basis;
                let tgt = &self.complex(&s.target).expect("declared").basis;
                let t = arg(1)?;
                let i = lookup(line, t, src)?;
                eq_at(2)?;
                let v = self.combo(line, &tokens[3..], tgt, Some(src.degrees[i]))?;
                if let Some((_, Open::Map(s, seen))) = &mut self.open {
                    if !seen.insert(i) {
                        return err(line, t.column, format!("image of {} given twice", t.text));
                    }
                    s.images.insert(i, v);
                }
            }
            other => return err(line, kw.column, format!("unknown keyword {other:?}")),
        }
        Ok(())
    }

    fn act(&mut self, line: usize, tokens: &[Token]) -> PResult<()> {
        let kw = &tokens[0];
        let arg = |k: usize| -> PResult<&Token> {
            tokens.get(k).ok_or_else(|| ParseError {
                line,
                column: tokens.last().map_or(1, |t| t.column + t.text.chars().count()),
                message: "act needs more arguments".into(),
            })
        };
        let eq_at = |k: usize| -> PResult<()> {
            let t = arg(k)?;
            if t.text != "=" {
                return err(line, t.column, format!("expected '=', found {:?}", t.text));
            }
            Ok(())
        };
        match &self.open {
            Some((_, Open::Module(s, ..))) => {
                let a = &self.algebra(&s.over).expect("declared").basis;
                let (m, x) = (arg(1)?, arg(2)?);
                let (i, j) = (lookup(line, m, &s.basis)?, lookup(line, x, a)?);
                eq_at(3)?;
                let v = self.combo(line, &tokens[4..], &s.basis, Some(s.basis.degrees[i] + a.degrees[j]))?;
                if let Some((_, Open::Module(s, _, seen))) = &mut self.open {
                    if !seen.insert((i, j)) {
                        return err(line, m.column, "action given twice");
                    }
                    s.act.insert((i, j), v);
                }
            }
            Some((_, Open::Complex(s, ..))) => {
                let Some(over) = &s.over else {
                    return err(line, kw.column, "act in a complex without 'over <algebra>'");
                };
                let a = &self.algebra(over).expect("declared").basis;
                let (x, m) = (arg(1)?, arg(2)?);
                let (j, i) = (lookup(line, x, a)?, lookup(line, m, &s.basis)?);
                eq_at(3)?;
                let v = self.combo(line, &tokens[4..], &s.basis, Some(s.basis.degrees[i] + a.degrees[j]))?;
                if let Some((_, Open::Complex(s, _, seen))) = &mut self.open {
                    if !seen.insert((j, i)) {
                        return err(line, x.column, "action given twice");
                    }
                    s.act.insert((j, i), v);
                }
            }
            Some((_, Open::Bimodule(s, ..))) => {
                let side = arg(1)?;
                let left = match side.text {
                    "left" => true,
                    "right" => false,
                    other => return err(line, side.column, format!("expected 'left' or 'right', found {other:?}")),
                };
                let (p, q) = (arg(2)?, arg(3)?);
                let (key, deg) = if left {
                    let a = &self.algebra(&s.left).expect("declared").basis;
                    let (j, i) = (lookup(line, p, a)?, lookup(line, q, &s.basis)?);
                    ((j, i), a.degrees[j] + s.basis.degrees[i])
                } else {
                    let b = &self.algebra(&s.right).expect("declared").basis;
                    let (i, j) = (lookup(line, p, &s.basis)?, lookup(line, q, b)?);
                    ((i, j), s.basis.degrees[i] + b.degrees[j])
                };
                eq_at(4)?;
                let v = self.combo(line, &tokens[5..], &s.basis, Some(deg))?;
                if let Some((_, Open::Bimodule(s, _, ls, rs))) = &mut self.open {
                    let (seen, table) = if left { (ls, &mut s.left_act) } else { (rs, &mut s.right_act) };
                    if !seen.insert(key) {
                        return err(line, p.column, "action given twice");
                    }
                    table.insert(key, v);
                }
            }
            _ => return err(line, kw.column, "act outside a module, bimodule or complex"),
        }
        Ok(())
    }
}

fn lookup(line: usize, t: &Token, basis: &Basis) -> PResult<usize> {
    basis
        .index(t.text)
        .ok_or_else(|| ParseError { line, column: t.column, message: format!("undeclared name {:?}", t.text) })
}

fn unit_index(unit: &SparseVec, f: Field) -> Option<usize> {
    match unit.iter().collect::<Vec<_>>().as_slice() {
        [(i, c)] if **c == f.one() => Some(*i),
        _ => None,
    }
}

/// Strict mode: every differential and every action entry must be written.
fn check_all(
    line: usize,
    basis: &Basis,
    d_seen: &BTreeSet<usize>,
    act_seen: &BTreeSet<(usize, usize)>,
    algebra: &Basis,
    algebra_first: bool,
) -> PResult<()> {
    if let Some(i) = (0..basis.dim()).find(|i| !d_seen.contains(i)) {
        return err(line, 1, format!("strict: d({}) not given", basis.names[i]));
    }
    for m in 0..basis.dim() {
        for a in 0..algebra.dim() {
            let key = if algebra_first { (a, m) } else { (m, a) };
            if !act_seen.contains(&key) {
                return err(
                    line,
                    1,
                    format!("strict: action of {} on {} not given", algebra.names[a], basis.names[m]),
                );
            }
        }
    }
    Ok(())
}

fn strip_zeros(mut s: Section) -> Section {
    fn strip<K: Ord>(m: &mut BTreeMap<K, SparseVec>) {
        m.retain(|_, v| !v.is_zero());
    }
    match &mut s {
        Section::Algebra(a) => {
            strip(&mut a.d);
            strip(&mut a.mul);
        }
        Section::Module(m) => {
            strip(&mut m.d);
            strip(&mut m.act);
        }
        Section::Bimodule(b) => {
            strip(&mut b.d);
            strip(&mut b.left_act);
            strip(&mut b.right_act);
        }
        Section::Complex(c) => {
            strip(&mut c.d);
            strip(&mut c.act);
        }
        Section::Map(m) => strip(&mut m.images),
    }
    s
}

pub fn parse(text: &str, options: ParseOptions) -> PResult<Presentation> {
    parse_after(text, options, None)
}

/// Parses `text` with the sections of `base` already in scope, so a file may
/// refer to algebras declared in an earlier one.
pub fn parse_after(text: &str, options: ParseOptions, base: Option<Presentation>) -> PResult<Presentation> {
    let inherited = base.as_ref().map(|b| b.field);
    let mut p = Parser {
        field: options.field.or(inherited).unwrap_or(Field::Rational),
        field_fixed: options.field.is_some(),
        inherited,
        declared_field: false,
        options,
        sections: base.map(|b| b.sections).unwrap_or_default(),
        open: None,
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        if tokens[0].text != "field" && !p.declared_field && options.strict && options.field.is_none() && p.inherited.is_none() {
            return err(line, 1, "strict: the file must start with a field declaration");
        }
        p.line(line, &tokens)?;
    }
    p.close()?;
    Ok(Presentation { field: p.field, sections: p.sections })
}

fn combo_text(v: &SparseVec, basis: &Basis) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&basis.names[i]);
    }
    out
}

/// Canonical text: every nonzero entry written out, so parsing the result
/// gives back the same presentation.
pub fn emit(p: &Presentation) -> String {
    let mut out = format!("field {}\n", p.field);
    let algebra = |name: &str| {
        p.sections.iter().find_map(|s| match s {
            Section::Algebra(a) if a.name == name => Some(&a.basis),
            _ => None,
        })
    };
    let complex = |name: &str| {
        p.sections.iter().find_map(|s| match s {
            Section::Complex(c) if c.name == name => Some(&c.basis),
            _ => None,
        })
    };
    let gens = |out: &mut String, b: &Basis| {
        for (n, d) in b.names.iter().zip(&b.degrees) {
            out.push_str(&format!("gen {n} {d}\n"));
        }
    };
    let ds = |out: &mut String, b: &Basis, d: &BTreeMap<usize, SparseVec>| {
        for (i, v) in d {
            out.push_str(&format!("d {} = {}\n", b.names[*i], combo_text(v, b)));
        }
    };
    for s in &p.sections {
        out.push('\n');
        match s {
            Section::Algebra(a) => {
                out.push_str(&format!("algebra {}\n", a.name));
                gens(&mut out, &a.basis);
                out.push_str(&format!("unit {}\n", combo_text(&a.unit, &a.basis)));
                ds(&mut out, &a.basis, &a.d);
                for ((i, j), v) in &a.mul {
                    out.push_str(&format!(
                        "mul {} {} = {}\n",
                        a.basis.names[*i],
                        a.basis.names[*j],
                        combo_text(v, &a.basis)
                    ));
                }
                if let Some(aug) = &a.aug {
                    for (n, v) in a.basis.names.iter().zip(aug) {
                        out.push_str(&format!("aug {n} = {v}\n"));
                    }
                }
            }
            Section::Module(m) => {
                out.push_str(&format!("module {} over {}\n", m.name, m.over));
                gens(&mut out, &m.basis);
                ds(&mut out, &m.basis, &m.d);
                let a = algebra(&m.over).expect("module over a declared algebra");
                for ((i, j), v) in &m.act {
                    out.push_str(&format!(
                        "act {} {} = {}\n",
                        m.basis.names[*i],
                        a.names[*j],
                        combo_text(v, &m.basis)
                    ));
                }
            }
            Section::Bimodule(b) => {
                out.push_str(&format!("bimodule {} over {} {}\n", b.name, b.left, b.right));
                gens(&mut out, &b.basis);
                ds(&mut out, &b.basis, &b.d);
                let (la, ra) = (algebra(&b.left).expect("declared"), algebra(&b.right).expect("declared"));
                for ((j, i), v) in &b.left_act {
                    out.push_str(&format!(
                        "act left {} {} = {}\n",
                        la.names[*j],
                        b.basis.names[*i],
                        combo_text(v, &b.basis)
                    ));
                }
                for ((i, j), v) in &b.right_act {
                    out.push_str(&format!(
                        "act right {} {} = {}\n",
                        b.basis.names[*i],
                        ra.names[*j],
                        combo_text(v, &b.basis)
                    ));
                }
            }
            Section::Complex(c) => {
                match &c.over {
                    Some(a) => out.push_str(&format!("complex {} over {a}\n", c.name)),
                    None => out.push_str(&format!("complex {}\n", c.name)),
                }
                gens(&mut out, &c.basis);
                ds(&mut out, &c.basis, &c.d);
                if let Some(a) = c.over.as_deref().and_then(algebra) {
                    for ((j, i), v) in &c.act {
                        out.push_str(&format!(
                            "act {} {} = {}\n",
                            a.names[*j],
                            c.basis.names[*i],
                            combo_text(v, &c.basis)
                        ));
                    }
                }
            }
            Section::Map(m) => {
                out.push_str(&format!("map {} {} {}\n", m.name, m.source, m.target));
                let (x, y) = (complex(&m.source).expect("declared"), complex(&m.target).expect("declared"));
                for (i, v) in &m.images {
                    out.push_str(&format!("image {} = {}\n", x.names[*i], combo_text(v, y)));
                }
            }
        }
    }
    out
}

impl AlgebraSpec {
    pub fn build(&self, field: Field) -> dgres_core::Result<DGAlgebra> {
        let n = self.basis.dim();
        DGAlgebra::from_fn(
            field,
            self.basis.pairs(),
            self.unit.clone(),
            (0..n).map(|i| self.d.get(&i).cloned().unwrap_or_default()).collect(),
            |i, j| self.mul.get(&(i, j)).cloned().unwrap_or_default(),
        )
    }

    /// The written augmentation, or `ε = 0` off a unit basis element listed first.
    pub fn augmentation(&self, field: Field) -> dgres_core::Result<Augmentation> {
        let a = self.build(field)?;
        match &self.aug {
            Some(eps) => Augmentation::new(a, eps.clone()),
            None => Augmentation::standard(a),
        }
    }

    pub fn from_algebra(name: &str, a: &DGAlgebra, aug: Option<&Augmentation>) -> AlgebraSpec {
        let n = a.dim();
        let mut d = BTreeMap::new();
        let mut mul = BTreeMap::new();
        for i in 0..n {
            if !a.d_basis(i).is_zero() {
                d.insert(i, a.d_basis(i).clone());
            }
            for j in 0..n {
                if !a.mul_basis(i, j).is_zero() {
                    mul.insert((i, j), a.mul_basis(i, j).clone());
                }
            }
        }
        let basis = Basis::from_pairs(a.names().iter().cloned().zip(a.degrees().iter().copied()).collect());
        AlgebraSpec {
            name: sanitize(name),
            basis: dedupe(basis),
            unit: a.unit().clone(),
            d,
            mul,
            aug: aug.map(|e| e.values().to_vec()),
        }
    }
}

fn dedupe(mut b: Basis) -> Basis {
    let mut seen = BTreeSet::new();
    for n in b.names.iter_mut() {
        while !seen.insert(n.clone()) {
            n.push('\'');
        }
    }
    b
}

impl ModuleSpec {
    pub fn build(&self, algebra: &DGAlgebra) -> dgres_core::Result<DGModule> {
        let n = self.basis.dim();
        DGModule::from_fn(
            algebra.clone(),
            self.basis.pairs(),
            (0..n).map(|i| self.d.get(&i).cloned().unwrap_or_default()).collect(),
            |m, a| self.act.get(&(m, a)).cloned().unwrap_or_default(),
        )
    }
}

impl BimoduleSpec {
    /// The right `A^op ⊗ B`-module.
    pub fn build(&self, left: &DGAlgebra, right: &DGAlgebra) -> dgres_core::Result<DGModule> {
        let n = self.basis.dim();
        bimodule(
            left,
            right,
            self.basis.pairs(),
            (0..n).map(|i| self.d.get(&i).cloned().unwrap_or_default()).collect(),
            |a, m| self.left_act.get(&(a, m)).cloned().unwrap_or_default(),
            |m, b| self.right_act.get(&(m, b)).cloned().unwrap_or_default(),
        )
    }
}

impl ComplexSpec {
    pub fn build(&self, field: Field) -> dgres_core::Result<Complex> {
        let n = self.basis.dim();
        let d: Vec<SparseVec> = (0..n).map(|i| self.d.get(&i).cloned().unwrap_or_default()).collect();
        flat_complex(field, &self.basis.names, &self.basis.degrees, &d)
    }

    /// `a ↦ (x ↦ a·x)` into the endomorphism algebra of the complex.
    pub fn action(&self, algebra: &DGAlgebra, x: &Complex) -> dgres_core::Result<DGAlgebraHom> {
        let e = end_algebra(x)?;
        let field = algebra.field();
        let n = self.basis.dim();
        let flat = self.basis.flat_order();
        let cols = (0..algebra.dim())
            .map(|a| {
                let mut v = SparseVec::new();
                for s in 0..n {
                    if let Some(img) = self.act.get(&(a, s)) {
                        for (t, c) in img.iter() {
                            v.add_scaled(c, &SparseVec::unit(flat[t] * n + flat[s], field));
                        }
                    }
                }
                v
            })
            .collect();
        DGAlgebraHom::new(algebra.clone(), e.clone(), Matrix::from_columns(field, e.dim(), cols)?)
    }
}

impl MapSpec {
    pub fn build(&self, source: &ComplexSpec, x: &Complex, target: &ComplexSpec, y: &Complex) -> dgres_core::Result<GradedMap> {
        let (fs, ft) = (source.basis.flat_order(), target.basis.flat_order());
        let mut cols = vec![SparseVec::new(); source.basis.dim()];
        for (i, v) in &self.images {
            cols[fs[*i]] = v.remap(|j| ft[j]);
        }
        dgres_core::zigzag::flat_map(x, y, cols)
    }
}

impl Presentation {
    pub fn algebras(&self) -> impl Iterator<Item = &AlgebraSpec> {
        self.sections.iter().filter_map(|s| match s {
            Section::Algebra(a) => Some(a),
            _ => None,
        })
    }

    pub fn algebra(&self, name: &str) -> Option<&AlgebraSpec> {
        self.algebras().find(|a| a.name == name)
    }

    pub fn complex(&self, name: &str) -> Option<&ComplexSpec> {
        self.sections.iter().find_map(|s| match s {
            Section::Complex(c) if c.name == name => Some(c),
            _ => None,
        })
    }

    pub fn bimodules(&self) -> impl Iterator<Item = &BimoduleSpec> {
        self.sections.iter().filter_map(|s| match s {
            Section::Bimodule(b) => Some(b),
            _ => None,
        })
    }

    pub fn maps(&self) -> impl Iterator<Item = &MapSpec> {
        self.sections.iter().filter_map(|s| match s {
            Section::Map(m) => Some(m),
            _ => None,
        })
    }
}
