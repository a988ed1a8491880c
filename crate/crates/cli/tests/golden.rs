use std::path::PathBuf;

use kleppner_cli::catalog::SCENARIOS;
use kleppner_cli::run::{analyze_batch, analyze_source, Overrides, EXIT_OK};
use kleppner_cli::spec::ReportFormat;

fn json() -> Overrides {
    Overrides { report: Some(ReportFormat::Json), ..Overrides::default() }
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

#[test]
fn catalog_matches_golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for s in SCENARIOS {
        let out = analyze_source(s.spec, &json());
        assert_eq!(out.code, EXIT_OK, "{}: {}", s.name, out.output);
        let path = golden_path(s.name);
        if update {
            std::fs::write(&path, &out.output).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
        assert_eq!(out.output, expected, "{} drifted from its golden report", s.name);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for s in SCENARIOS {
        let a = analyze_source(s.spec, &json()).output;
        let b = analyze_source(s.spec, &json()).output;
        assert_eq!(a, b, "{}", s.name);
    }
}

#[test]
fn batch_matches_single_runs() {
    let dir = tempfile::tempdir().unwrap();
    for s in SCENARIOS {
        std::fs::write(dir.path().join(format!("{}.toml", s.name)), s.spec).unwrap();
    }
    let results = analyze_batch(dir.path(), &json()).unwrap();
    assert_eq!(results.len(), SCENARIOS.len());
    for (path, outcome) in results {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let s = kleppner_cli::catalog::find(stem).unwrap();
        assert_eq!(outcome.output, analyze_source(s.spec, &json()).output, "{stem}");
    }
}
