use super::*;
use crate::rational::ratio;

const RUNNING: &str = "\
# running example
space p { x0: 1/2, x1: 1/2 }
space q { y0: 3/4, y1: 1/4 }
map f : p -> q { y0 | x0 = 1, y0 | x1 = 1/2, y1 | x1 = 1/2 }
";

#[test]
fn parses_running_example() {
    let doc = parse_document(RUNNING).unwrap();
    let p = doc.space("p").unwrap();
    assert_eq!(p.probs(), &[ratio(1, 2), ratio(1, 2)]);
    let f = doc.morphism("f").unwrap();
    assert_eq!(f.tgt().probs(), &[ratio(3, 4), ratio(1, 4)]);
    assert_eq!(f.map().entry(1, 0), &ratio(0, 1));
    assert_eq!(doc.map("f").unwrap().tgt, "q");
}

#[test]
fn text_round_trip() {
    let doc = parse_document(RUNNING).unwrap();
    let printed = to_text(&doc);
    assert_eq!(parse_document(&printed).unwrap(), doc);
}

#[test]
fn json_round_trip() {
    let doc = parse_document(RUNNING).unwrap();
    let text = serde_json::to_string_pretty(&to_json(&doc)).unwrap();
    assert_eq!(parse_document(&text).unwrap(), doc);
}

#[test]
fn odd_labels_are_quoted() {
    let mut doc = Document::new();
    let m = crate::structure::bloom_morphism(&crate::fixtures::running());
    doc.insert_morphism("b", &m);
    let printed = to_text(&doc);
    assert!(printed.contains("\"(x0,y0)\""));
    assert_eq!(parse_document(&printed).unwrap(), doc);
}

#[test]
fn quoted_escapes() {
    let src = "space p { \"a \\\"b\\\" \\\\\": 1 }";
    let doc = parse_document(src).unwrap();
    assert_eq!(doc.space("p").unwrap().labels()[0].as_str(), "a \"b\" \\");
    assert_eq!(parse_document(&to_text(&doc)).unwrap(), doc);
}

#[test]
fn arrow_without_spaces() {
    let doc = parse_document("space p { a: 1 }\nmap i : p->p { a | a = 1 }").unwrap();
    assert!(doc.morphism("i").is_some());
}

#[test]
fn column_summing_to_five_sixths_is_invalid() {
    let src = "space p { a: 1 }\nspace q { u: 1/2, v: 1/2 }\nmap f : p -> q { u | a = 1/2, v | a = 1/3 }";
    match parse_document(src).unwrap_err() {
        DocError::Validation { line, col, source, .. } => {
            assert_eq!((line, col), (3, 5));
            assert!(matches!(source, CoreError::ColumnNotNormalized { .. }));
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn target_must_be_the_pushforward() {
    let src = "space p { a: 1/2, b: 1/2 }\nmap f : p -> p { a | a = 1, a | b = 1 }";
    let e = parse_document(src).unwrap_err();
    assert!(matches!(e, DocError::Validation { source: CoreError::NotMeasurePreserving { .. }, .. }));
}

#[test]
fn undeclared_space_is_unresolved() {
    let src = "space p { a: 1 }\nmap f : p -> nowhere { a | a = 1 }";
    assert_eq!(
        parse_document(src).unwrap_err(),
        DocError::Unresolved { line: 2, col: 14, name: "nowhere".into() }
    );
}

#[test]
fn syntax_errors_carry_positions() {
    let e = parse_document("space p {\n  a 1 }").unwrap_err();
    assert!(matches!(e, DocError::Syntax { .. }));
    assert_eq!(e.position(), (2, 5));
    let e = parse_document("space p { a: 1/0 }").unwrap_err();
    assert_eq!(e.position(), (1, 14));
    let e = parse_document("space p { a: 1 } $").unwrap_err();
    assert_eq!(e.position(), (1, 18));
    let e = parse_document("space p { \"a: 1 }").unwrap_err();
    assert_eq!(e.position(), (1, 11));
}

#[test]
fn unknown_label_and_duplicates() {
    let e = parse_document("space p { a: 1 }\nmap f : p -> p { b | a = 1 }").unwrap_err();
    assert!(matches!(e, DocError::Validation { source: CoreError::UnknownLabel(_), .. }));
    let e = parse_document("space p { a: 1 }\nspace p { a: 1 }").unwrap_err();
    assert_eq!(e.position(), (2, 7));
    let e = parse_document("space p { a: 1 }\nmap f : p -> p { a | a = 1, a | a = 1 }").unwrap_err();
    assert!(matches!(e, DocError::Syntax { .. }));
}

#[test]
fn json_errors() {
    let e = parse_document("{\"spaces\": {\"p\": {\"a\": \"1\"}},\n \"maps\": {\"f\": {\"src\": \"p\", \"tgt\": \"r\", \"entries\": []}}}").unwrap_err();
    assert!(matches!(e, DocError::Unresolved { ref name, .. } if name == "r"));
    let e = parse_document("{\"spaces\": {\"p\": {\"a\": \"1\"}\n").unwrap_err();
    assert!(matches!(e, DocError::Syntax { line: 2, .. }));
    let doc = parse_document("{\"spaces\": {\"p\": {\"a\": 1}}}").unwrap();
    assert_eq!(doc.space("p").unwrap().len(), 1);
}
