//! Parser round-trip over a corpus of spec strings: parsing the
//! canonical rendering reproduces the spec, and parsing is insensitive
//! to whitespace.

use glcomm_cli::parse::{parse_ideal_list, parse_ring_spec};
use glcomm_core::build_ring;
use proptest::prelude::*;

/// (input text, canonical form)
const CORPUS: &[(&str, &str)] = &[
    ("Z/2", "Z/2"),
    ("Z/3", "Z/3"),
    ("Z/4", "Z/4"),
    ("Z/6", "Z/6"),
    ("Z/8", "Z/8"),
    ("Z/16", "Z/16"),
    ("Z/32", "Z/32"),
    (" Z/9 ", "Z/9"),
    ("Z/2[x]/(x^2)", "Z/2[x]/(x^2)"),
    ("Z/2[x]/(x^3)", "Z/2[x]/(x^3)"),
    ("Z/2[x]/(1+x+x^2)", "Z/2[x]/(1+x+x^2)"),
    ("Z/3[x]/(1+x^2)", "Z/3[x]/(1+x^2)"),
    ("Z/2[x]/( 1 + x + x^2 )", "Z/2[x]/(1+x+x^2)"),
    ("Z/5[x]/(2+x)", "Z/5[x]/(2+x)"),
    ("Z/2 x Z/2", "Z/2 x Z/2"),
    ("Z/2 x Z/4", "Z/2 x Z/4"),
    ("Z/2xZ/2xZ/2", "Z/2 x Z/2 x Z/2"),
    ("Z/4 x Z/2[x]/(x^2)", "Z/4 x Z/2[x]/(x^2)"),
    ("UT2(Z/2)", "UT2(Z/2)"),
    ("UT2( Z/4 )", "UT2(Z/4)"),
    ("UT3(Z/2)", "UT3(Z/2)"),
    ("M2(Z/2)", "M2(Z/2)"),
    ("UT2(Z/2 x Z/2)", "UT2(Z/2 x Z/2)"),
];

#[test]
fn corpus_round_trips() {
    assert!(CORPUS.len() >= 20);
    for (input, canonical) in CORPUS {
        let spec = parse_ring_spec(input)
            .unwrap_or_else(|e| panic!("failed to parse {input:?}: {e}"));
        assert_eq!(&spec.render(), canonical, "canonical form of {input:?}");
        // canonical text re-parses to the same spec
        let again = parse_ring_spec(canonical).unwrap();
        assert_eq!(spec, again);
    }
}

#[test]
fn corpus_ideal_round_trips() {
    let cases: &[(&str, &str, &str)] = &[
        ("Z/8", "(2)", "(2)"),
        ("Z/8", "( 2 , 4 )", "(2,4)"),
        ("Z/8", "(0)", "(0)"),
        ("Z/8", "(1)", "(1)"),
        ("Z/16", "(2),(4),(8)", "(2)|(4)|(8)"),
        ("Z/2[x]/(x^3)", "(x)", "(x)"),
        ("Z/2[x]/(x^3)", "(x^2)", "(x^2)"),
        ("UT2(Z/2)", "(E12)", "([0,1;0,0])"),
        ("Z/2 x Z/4", "((1,0))", "((1,0))"),
        ("Z/2 x Z/4", "((1,0)),((0,2))", "((1,0))|((0,2))"),
    ];
    for (ring_text, ideal_text, expected) in cases {
        let ring = build_ring(&parse_ring_spec(ring_text).unwrap()).unwrap();
        let ideals = parse_ideal_list(ideal_text, &ring).unwrap();
        let rendered: Vec<String> = ideals.iter().map(|i| i.render()).collect();
        assert_eq!(&rendered.join("|"), expected, "ideals {ideal_text:?} over {ring_text}");
        // render(parse(text)) is a fixed point
        for r in &rendered {
            let again = parse_ideal_list(r, &ring).unwrap();
            assert_eq!(again.len(), 1);
            assert_eq!(&again[0].render(), r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn modular_specs_round_trip(m in 2u64..64) {
        let text = format!("Z/{m}");
        let spec = parse_ring_spec(&text).unwrap();
        prop_assert_eq!(spec.render(), text);
    }

    #[test]
    fn whitespace_insensitivity(pad in " *", m in 2u64..10, k in 2u64..5) {
        let text = format!("{pad}Z/{m}{pad}x{pad}Z/{k}{pad}");
        let spec = parse_ring_spec(&text).unwrap();
        prop_assert_eq!(spec.render(), format!("Z/{m} x Z/{k}"));
    }
}
