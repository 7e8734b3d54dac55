use std::process::Command;

use schutzen::cli::docs::{HomotopyBaseDoc, PresentationDoc};
use schutzen::engine::Limits;
use schutzen::schutz::{build_presentation, choose_representatives, Monoid};
use schutzen::squier::base::{critical_base, group_base};
use schutzen::squier::canonical::CanonicalPaths;
use schutzen::squier::PathCaps;
use schutzen::words::{parse_presentation, Word};

const CORPUS: [&str; 6] = ["idempotent", "cyclic3", "a6a3", "z4", "right_zero", "nonregular"];

fn text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/corpus/{name}.txt", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn monoid(name: &str) -> Monoid {
    Monoid::new(parse_presentation(&text(name)).unwrap(), Limits::default(), 10_000).unwrap()
}

#[test]
fn presentation_documents_round_trip() {
    for name in CORPUS {
        let m = monoid(name);
        for h in 0..m.green.h_classes.len() {
            let d = choose_representatives(&m, &m.presentation, h, &Word::empty()).unwrap();
            let q = build_presentation(&d).unwrap();
            let (relations, trivial) = PresentationDoc::relations_of(&q);
            let doc = PresentationDoc {
                h_class: vec![],
                h: String::new(),
                e: String::new(),
                generators: q.alphabet().names().to_vec(),
                relations,
                trivial,
                verification: Default::default(),
            };
            let json = serde_json::to_string(&doc).unwrap();
            let back: PresentationDoc = serde_json::from_str(&json).unwrap();
            assert_eq!(back, doc);
            let rebuilt = back.to_presentation().unwrap();
            assert_eq!(rebuilt.relations, q.relations, "{name} class {h}");
            assert_eq!(rebuilt.trivial, q.trivial, "{name} class {h}");
            assert_eq!(rebuilt.presentation, q.presentation, "{name} class {h}");
        }
    }
}

#[test]
fn homotopy_base_documents_round_trip() {
    for name in CORPUS {
        let m = monoid(name);
        let pc = m.system.presentation();
        let x = critical_base(&m.system).unwrap();
        for h in 0..m.green.h_classes.len() {
            let d = choose_representatives(&m, pc, h, &Word::empty()).unwrap();
            let q = build_presentation(&d).unwrap();
            let cp = CanonicalPaths::build(&d, &q, PathCaps::default()).unwrap();
            let y = group_base(&cp, &x).unwrap();
            let doc = HomotopyBaseDoc::new(pc, vec![], &q, &x, &y);
            assert!(doc.audit.all_closed && doc.audit.all_valid);
            let json = serde_json::to_string_pretty(&doc).unwrap();
            let back: HomotopyBaseDoc = serde_json::from_str(&json).unwrap();
            assert_eq!(back, doc);
            let (pc2, x2, q2, y2) = back.to_bases().unwrap();
            assert_eq!(&pc2, pc);
            assert_eq!(x2, x);
            assert_eq!(q2.presentation, q.presentation);
            assert_eq!(y2, y, "{name} class {h}");
        }
    }
}

#[test]
fn emitted_json_parses_back() {
    let path = format!("{}/tests/corpus/z4.txt", env!("CARGO_MANIFEST_DIR"));
    for cmd in ["schutz-pres", "homotopy-base"] {
        let out = Command::new(env!("CARGO_BIN_EXE_schutzen"))
            .args([cmd, "--input", &path, "--h-class", "a", "--format", "json", "--verbose"])
            .output()
            .unwrap();
        assert!(out.status.success());
        let s = String::from_utf8(out.stdout).unwrap();
        if cmd == "schutz-pres" {
            let doc: PresentationDoc = serde_json::from_str(&s).unwrap();
            doc.to_presentation().unwrap();
            assert_eq!(serde_json::to_string_pretty(&doc).unwrap().trim(), s.trim());
        } else {
            let doc: HomotopyBaseDoc = serde_json::from_str(&s).unwrap();
            doc.to_bases().unwrap();
            assert_eq!(serde_json::to_string_pretty(&doc).unwrap().trim(), s.trim());
        }
    }
}
