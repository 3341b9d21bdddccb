use hilbaut::algebra::CyclotomicNumber;
use hilbaut::surface::{
    datum_warnings, lefschetz_on_surface, parse_document, parse_value, preset, to_document, validate, Rule,
    PRESET_NAMES,
};

fn k3_doc(h2: &str, order: u32) -> String {
    format!(
        r#"{{"surface": {{"betti": [1, 0, 22, 0, 1]}},
            "automorphism": {{"order": {order}, "spectrum": {{"0": [[0, 1]], "2": {h2}, "4": [[0, 1]]}}}}}}"#
    )
}

#[test]
fn presets_are_valid_and_lefschetz_matches_the_datum() {
    for name in PRESET_NAMES {
        let (spec, datum) = preset(name).unwrap();
        assert!(validate(&spec).is_empty(), "{name}");
        assert!(datum_warnings(&datum, &spec).is_empty(), "{name}");
        let curves: i64 = datum.fixed_curves.iter().map(|c| c.euler).sum();
        let l = lefschetz_on_surface(&spec).as_i64().unwrap();
        assert_eq!(l, datum.isolated_points.len() as i64 + curves, "{name}");
    }
}

#[test]
fn preset_examples() {
    let (spec, _) = preset("k3-symplectic-3").unwrap();
    let h2 = spec.exact_spectrum().unwrap().degree(2);
    let count = |k| h2.iter().filter(|v| **v == CyclotomicNumber::root_of_unity(k, 3)).count();
    assert_eq!((count(0), count(1), count(2)), (10, 6, 6));
    assert_eq!(preset("torus-involution").unwrap().1.isolated_points.len(), 16);
    assert_eq!(preset("k3-symplectic-5").unwrap().1.isolated_points.len(), 4);
    assert_eq!(lefschetz_on_surface(&preset("k3-symplectic-5").unwrap().0).as_i64(), Some(4));
    assert_eq!(lefschetz_on_surface(&preset("k3-identity").unwrap().0).as_i64(), Some(24));
    assert!(preset("k3-symplectic-11").is_err());
}

#[test]
fn validation_examples() {
    let too_many = parse_document(&k3_doc(r#"[{"root": [0, 1], "mult": 23}]"#, 1)).unwrap();
    let v = validate(&too_many.spec);
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].rule, v[0].degree), (Rule::MultisetSize, Some(2)));

    let wrong_order = parse_document(&k3_doc(r#"[{"root": [0, 1], "mult": 21}, [1, 3]]"#, 2)).unwrap();
    let v = validate(&wrong_order.spec);
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].rule, v[0].degree), (Rule::EigenvalueOrder, Some(2)));
}

#[test]
fn documents_round_trip() {
    for name in PRESET_NAMES {
        let (spec, datum) = preset(name).unwrap();
        let back = parse_value(&to_document(&spec, &datum)).unwrap();
        assert_eq!((back.spec, back.datum), (spec, datum), "{name}");
    }
    let float = r#"{"surface": {"betti": [1, 0, 2, 0, 1]},
        "automorphism": {"order": "infinite", "spectrum": {"0": [[1.0, 0.0]], "2": [[2.5, 0.0], [0.4, 0.0]], "4": [[1.0, 0.0]]}}}"#;
    let input = parse_document(float).unwrap();
    let back = parse_value(&to_document(&input.spec, &input.datum)).unwrap();
    assert_eq!(back.spec, input.spec);
}

#[test]
fn parse_errors_name_the_field() {
    let e = parse_document(r#"{"surface": {"betti": [1, 0]}, "automorphism": {"order": 1, "spectrum": {}}}"#)
        .unwrap_err()
        .to_string();
    assert!(e.contains("betti"), "{e}");
    let e = parse_document(r#"{"preset": "k3-symplectic-5", "surface": {}}"#).unwrap_err().to_string();
    assert!(e.contains("surface"), "{e}");
}
