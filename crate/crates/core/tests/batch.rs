use std::path::PathBuf;

use curve_obstruct::pipeline::{batch, PipelineConfig};
use curve_obstruct::{Error, Verdict};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn fano_then_cubic() {
    let paths = [data("fano.txt"), data("smooth_cubic.txt")];
    let out = batch(&paths, &PipelineConfig::default(), 2);
    let summaries: Vec<Verdict> = out.iter().map(|i| i.result.as_ref().unwrap().summary).collect();
    assert_eq!(summaries, [Verdict::Obstructed, Verdict::Pass]);
}

#[test]
fn empty_batch() {
    assert!(batch(&[], &PipelineConfig::default(), 4).is_empty());
}

#[test]
fn one_malformed_file_is_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "kind: arrangement\nlines: 4\npoints: [[1,2,9]]\n").unwrap();
    let paths = [data("cuspidal_cubic.txt"), bad.clone(), data("six_lines_apart.txt")];
    for jobs in [1, 3] {
        let out = batch(&paths, &PipelineConfig::default(), jobs);
        assert_eq!(out.len(), 3);
        assert_eq!(out[1].path, bad);
        assert!(matches!(out[1].result, Err(Error::Parse { line: 3, .. })));
        assert!(out[0].result.is_ok() && out[2].result.is_ok());
    }
}

#[test]
fn every_sample_parses_and_matches_expectation() {
    let expected = [
        ("fano.txt", Verdict::Obstructed),
        ("smooth_cubic.txt", Verdict::Pass),
        ("cuspidal_cubic.txt", Verdict::Pass),
        ("tricuspidal_quartic.txt", Verdict::Pass),
        ("quintic_six_cusps.json", Verdict::Obstructed),
        ("quintic_four_cusps_and_t25.txt", Verdict::Obstructed),
        ("six_lines_shared.txt", Verdict::Pass),
        ("six_lines_apart.txt", Verdict::Pass),
    ];
    let paths: Vec<PathBuf> = expected.iter().map(|(n, _)| data(n)).collect();
    for (item, (name, verdict)) in batch(&paths, &PipelineConfig::default(), 4).iter().zip(expected) {
        assert_eq!(item.result.as_ref().unwrap().summary, verdict, "{name}");
    }
}
