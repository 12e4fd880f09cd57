//! Runs every corpus problem and compares against its expected report.
//! Set `HK_BLESS=1` to rewrite the fixtures.

use std::fs;
use std::path::Path;

use hilbert_kunz::cli::{parse_problem, run_text, Report, RunFlags, Subcommand};

const CASES: &[(&str, Subcommand)] = &[
    ("regular", Subcommand::Fit),
    ("regular", Subcommand::OracleCheck),
    ("monsky_p2", Subcommand::Fit),
    ("monsky_p3", Subcommand::Fit),
    ("monsky_p7", Subcommand::Fit),
    ("hanmonsky", Subcommand::Fit),
    ("hanmonsky", Subcommand::Compute),
    ("determinantal", Subcommand::Fit),
    ("omega", Subcommand::Tau),
    ("additive", Subcommand::AdditiveError),
];

fn corpus() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[test]
fn reports_match_fixtures() {
    let bless = std::env::var_os("HK_BLESS").is_some();
    for (name, sub) in CASES {
        let text = fs::read_to_string(corpus().join(format!("{name}.hk"))).unwrap();
        let report = run_text(*sub, &text, &RunFlags::default()).without_timing();
        assert!(report.error.is_none(), "{name} {}: {:?}", sub.name(), report.error);
        let path = corpus().join(format!("{name}.{}.json", sub.name()));
        if bless {
            fs::write(&path, report.to_json()).unwrap();
            continue;
        }
        let expected = Report::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(report, expected, "{name} {}", sub.name());
        assert_eq!(report.to_json(), expected.to_json(), "{name} {}", sub.name());
    }
}

#[test]
fn corpus_files_round_trip() {
    for entry in fs::read_dir(corpus()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "hk") {
            let text = fs::read_to_string(&path).unwrap();
            let a = parse_problem(&text).unwrap();
            let b = parse_problem(&a.to_text()).unwrap();
            assert_eq!(a, b, "{}", path.display());
            assert_eq!(a.to_text(), b.to_text());
        }
    }
}

#[test]
fn hanmonsky_file_shape() {
    let text = fs::read_to_string(corpus().join("hanmonsky.hk")).unwrap();
    let pf = parse_problem(&text).unwrap();
    assert_eq!(pf.ring.nvars(), 4);
    assert_eq!(pf.ring_relations.len(), 1);
    assert_eq!(pf.ring_relations[0].degree(), 4);
    assert!(pf.ring_relations[0].is_homogeneous());
    let ring = pf.ring_spec().unwrap();
    assert!(pf.ideal_spec().is_m_primary(&ring).unwrap());
}

#[test]
fn csv_of_tau_run() {
    let text = fs::read_to_string(corpus().join("omega.hk")).unwrap();
    let csv = run_text(Subcommand::Tau, &text, &RunFlags::default()).to_csv();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1], "0,1,2,2,,1,1");
}
