//! Runs the bodies of the fuzz targets over their checked-in seed corpora, so
//! the parsers are exercised on every test run without a fuzzing toolchain.

use std::fs;
use std::path::PathBuf;

use weightforge::actions::AutomorphismFile;
use weightforge::chartab::TableFile;
use weightforge::cyclo::Cyclotomic;
use weightforge::perm::{GroupFile, Permutation, PermutationGroup};
use weightforge_cli::atlas::parse_index;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(data: &[u8]) -> &str {
    std::str::from_utf8(data).unwrap()
}

#[test]
fn group_file_seeds() {
    for (name, data) in seeds("group_file") {
        let f = GroupFile::parse(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let g = f.build().unwrap();
        assert!(g.order() > 1, "{name}");
    }
}

#[test]
fn cycles_seeds() {
    for (name, data) in seeds("cycles") {
        let degree = 1 + data[0] as usize % 64;
        let p = Permutation::parse_cycles(text(&data[1..]), degree).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Permutation::parse_cycles(&p.to_string(), degree).unwrap(), p);
    }
}

#[test]
fn table_file_seeds() {
    for (name, data) in seeds("table_file") {
        let t = TableFile::parse(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(TableFile::parse(&t.to_json()).unwrap().to_json(), t.to_json());
    }
}

#[test]
fn automorphism_file_seeds() {
    let gens = ["(1,2,3)", "(1,2,3,4,5)"].iter().map(|c| Permutation::parse_cycles(c, 5).unwrap()).collect();
    let a5 = PermutationGroup::from_generators(5, gens).unwrap();
    for (name, data) in seeds("automorphism_file") {
        let f = AutomorphismFile::parse(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let checked = f.validate(&a5);
        if name == "A5.json" {
            assert!(checked.is_ok());
        } else {
            assert!(checked.is_err(), "{name} accepted for A5");
        }
    }
}

#[test]
fn cyclotomic_seeds() {
    for (name, data) in seeds("cyclotomic_json") {
        let x = Cyclotomic::from_json_str(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Cyclotomic::from_json_str(&serde_json::to_string(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn atlas_index_seeds() {
    for (name, data) in seeds("atlas_index") {
        assert!(!parse_index(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}")).is_empty());
    }
}
