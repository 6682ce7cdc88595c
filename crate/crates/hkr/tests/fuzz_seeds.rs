use std::fs;
use std::path::Path;

use hkr::cech::input::parse_twist;
use hkr::cech::nerve::parse_nerve;
use hkr::hkr::model::parse_model;
use hkr::poly::{parse_poly, standard_names};
use hkr::rational::parse_q;
use hkr::report::parse_config;

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir).unwrap().map(|e| fs::read_to_string(e.unwrap().path()).unwrap()).collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn every_corpus_seed_is_accepted_by_its_parser() {
    let names = standard_names(2, 2);
    for s in seeds("poly") {
        assert!(parse_poly(&s, &names).is_ok(), "{s}");
    }
    for s in seeds("rational") {
        assert!(parse_q(&s).is_ok(), "{s}");
    }
    for s in seeds("model") {
        assert!(parse_model(&s).is_ok(), "{s}");
    }
    for s in seeds("nerve") {
        assert!(parse_nerve(&s).is_ok(), "{s}");
    }
    for s in seeds("twist") {
        assert!(parse_twist(&s).is_ok(), "{s}");
    }
    for s in seeds("config") {
        assert!(parse_config(&s).is_ok(), "{s}");
    }
}
