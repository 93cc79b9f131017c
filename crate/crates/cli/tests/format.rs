use std::path::PathBuf;

use dgres::format::Section;
use dgres::{emit, parse, parse_after, ParseOptions};
use dgres_core::{Field, Scalar, SparseVec};

fn sample(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "samples", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn lenient() -> ParseOptions {
    ParseOptions::default()
}

fn strict() -> ParseOptions {
    ParseOptions { strict: true, field: None }
}

#[test]
fn samples_parse_and_build() {
    for (file, dim) in [("kx2.alg", 2), ("kx5.alg", 5), ("trunc2.alg", 3), ("z2-group.alg", 2), ("zp-group.alg", 3)] {
        let p = parse(&sample(file), lenient()).unwrap();
        let spec = p.algebras().next().unwrap();
        let a = spec.build(p.field).unwrap();
        assert_eq!(a.dim(), dim, "{file}");
        assert!(a.validate().is_valid(), "{file}");
        spec.augmentation(p.field).unwrap();
    }
}

#[test]
fn unit_products_default_to_the_identity() {
    let p = parse(&sample("kx2.alg"), lenient()).unwrap();
    let a = p.algebra("kx2").unwrap().build(p.field).unwrap();
    let f = Field::Rational;
    assert_eq!(a.mul_basis(0, 1), &SparseVec::unit(1, f));
    assert_eq!(a.mul_basis(1, 0), &SparseVec::unit(1, f));
    assert!(a.mul_basis(1, 1).is_zero());
}

#[test]
fn combinations_with_rational_coefficients() {
    let text = "field Q\nalgebra A\ngen 1 0\ngen x 0\ngen y 0\nunit 1\nmul x x = 2 x - 1/2*y + 1\n";
    let p = parse(text, lenient()).unwrap();
    let Section::Algebra(s) = &p.sections[0] else { panic!() };
    let f = Field::Rational;
    let want = SparseVec::from_pairs([
        (0, f.one()),
        (1, f.int(2)),
        (2, Scalar::from_ratio(f, -1, 2).unwrap()),
    ]);
    assert_eq!(s.mul[&(1, 1)], want);
}

#[test]
fn undeclared_names_are_located() {
    let text = "field Q\nalgebra A\ngen 1 0\ngen x 0\nunit 1\nmul x x = 3 z\n";
    let e = parse(text, lenient()).unwrap_err();
    assert_eq!((e.line, e.column), (6, 13));
    assert!(e.message.contains("undeclared name \"z\""), "{e}");
}

#[test]
fn degree_mismatches_are_rejected() {
    let text = "field Q\nalgebra A\ngen 1 0\ngen x 1\nunit 1\nmul x x = x\n";
    let e = parse(text, lenient()).unwrap_err();
    assert_eq!(e.line, 6);
    assert!(e.message.contains("expected degree 2"), "{e}");
}

#[test]
fn duplicates_and_missing_units_are_rejected() {
    let dup = "field Q\nalgebra A\ngen 1 0\ngen 1 0\nunit 1\n";
    assert!(parse(dup, lenient()).unwrap_err().message.contains("declared twice"));
    let twice = "field Q\nalgebra A\ngen 1 0\ngen x 0\nunit 1\nmul x x = 0\nmul x x = x\n";
    assert_eq!(parse(twice, lenient()).unwrap_err().line, 7);
    let no_unit = "field Q\nalgebra A\ngen 1 0\n";
    assert!(parse(no_unit, lenient()).unwrap_err().message.contains("no unit line"));
}

#[test]
fn strict_mode_requires_every_entry() {
    let e = parse(&sample("kx2.alg"), strict()).unwrap_err();
    assert!(e.message.starts_with("strict:"), "{e}");
    let full = "field Q\nalgebra A\ngen 1 0\ngen x 0\nunit 1\n\
                d 1 = 0\nd x = 0\nmul 1 1 = 1\nmul 1 x = x\nmul x 1 = x\nmul x x = 0\naug 1 = 1\naug x = 0\n";
    parse(full, strict()).unwrap();
    let no_field = "algebra A\ngen 1 0\nunit 1\n";
    assert!(parse(no_field, strict()).unwrap_err().message.contains("field declaration"));
    assert!(parse(no_field, lenient()).is_ok());
}

#[test]
fn field_override_and_inheritance() {
    let p = parse(&sample("kx2.alg"), ParseOptions { strict: false, field: Some(Field::prime(5).unwrap()) }).unwrap();
    assert_eq!(p.field, Field::prime(5).unwrap());
    let base = parse(&sample("zp-group.alg"), lenient()).unwrap();
    let more = "algebra B\ngen 1 0\nunit 1\n";
    let p = parse_after(more, lenient(), Some(base.clone())).unwrap();
    assert_eq!(p.field, base.field);
    assert_eq!(p.algebras().count(), 2);
    assert!(parse_after(&sample("kx2.alg"), lenient(), Some(base)).is_err());
}

#[test]
fn scalars_reduce_mod_p() {
    let text = "field Fp:3\nalgebra A\ngen 1 0\ngen g 0\nunit 1\nmul g g = 4 1\n";
    let p = parse(text, lenient()).unwrap();
    let Section::Algebra(s) = &p.sections[0] else { panic!() };
    assert_eq!(s.mul[&(1, 1)], SparseVec::unit(0, p.field));
    let bad = "field Fp:3\nalgebra A\ngen 1 0\ngen g 0\nunit 1\nmul g g = 1/3 1\n";
    assert!(parse(bad, lenient()).is_err());
}

#[test]
fn emit_round_trips_every_sample() {
    for file in [
        "kx2.alg",
        "kx5.alg",
        "trunc2.alg",
        "z2-group.alg",
        "zp-group.alg",
        "a2-glue.alg",
        "a2-path.alg",
        "kx2-glue.alg",
        "zigzag-padded.alg",
    ] {
        let p = parse(&sample(file), lenient()).unwrap();
        let text = emit(&p);
        let back = parse(&text, lenient()).unwrap_or_else(|e| panic!("{file}: {e}\n{text}"));
        assert_eq!(back, p, "{file}");
        assert_eq!(emit(&back), text, "{file}");
    }
}
