mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn scholnet(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scholnet"))
        .args(args)
        .arg("--config")
        .arg(config)
        .output()
        .unwrap()
}

/// Copies a fixture into a scratch directory so outputs stay out of the tree.
fn stage(fixture: &str) -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(common::fixture_dir(fixture)).unwrap() {
        let path = entry.unwrap().path();
        if path.is_file() {
            fs::copy(&path, dir.path().join(path.file_name().unwrap())).unwrap();
        }
    }
    let config = dir.path().join("config.toml");
    (dir, config)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn csv_column(path: &Path, column: &str) -> Vec<String> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let idx = rdr
        .headers()
        .unwrap()
        .iter()
        .position(|h| h == column)
        .unwrap();
    rdr.records().map(|r| r.unwrap()[idx].to_string()).collect()
}

#[test]
fn resolve_collapses_variants() {
    let (dir, config) = stage("variants");
    let out = scholnet(&["resolve"], &config);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let summary: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("out/resolve_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["raw_strings"], 20);
    assert_eq!(summary["canonical_ids"], 5);
    assert_eq!(summary["reduction"], "20 -> 5");
    let ids = csv_column(&dir.path().join("out/resolution_map.csv"), "canonical_id");
    assert_eq!(ids.len(), 20);
}

#[test]
fn triangle_clustering_is_one() {
    let (dir, config) = stage("triangle");
    let out = scholnet(&["metrics"], &config);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let clustering = csv_column(&dir.path().join("out/metrics.csv"), "clustering");
    assert_eq!(clustering.len(), 3);
    assert!(
        clustering.iter().all(|c| c.parse::<f64>().unwrap() == 1.0),
        "{clustering:?}"
    );
    let betweenness = csv_column(&dir.path().join("out/metrics.csv"), "betweenness");
    assert!(betweenness.iter().all(|b| b.parse::<f64>().unwrap() == 0.0));
}

#[test]
fn build_is_byte_identical_across_runs() {
    let (dir, config) = stage("variants");
    let read = |name: &str| fs::read(dir.path().join("out").join(name)).unwrap();
    assert_eq!(scholnet(&["build"], &config).status.code(), Some(0));
    let first = (
        read("manifest.json"),
        read("collaboration.gexf"),
        read("snapshots/summary.csv"),
    );
    assert_eq!(scholnet(&["build"], &config).status.code(), Some(0));
    let second = (
        read("manifest.json"),
        read("collaboration.gexf"),
        read("snapshots/summary.csv"),
    );
    assert_eq!(first, second);
    assert!(!dir.path().join("out/.scholnet.lock").exists());

    let manifest: serde_json::Value = serde_json::from_slice(&first.0).unwrap();
    assert_eq!(manifest["subcommand"], "build");
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 2);
    let years = csv_column(&dir.path().join("out/snapshots/summary.csv"), "year");
    assert_eq!(years.len(), 8);
}

#[test]
fn years_flag_sets_snapshots_for_build() {
    let (dir, config) = stage("variants");
    let out = scholnet(&["build", "--years", "2001..2002"], &config);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(dir
        .path()
        .join("out/snapshots/collaboration_2001.csv")
        .exists());
    assert!(!dir
        .path()
        .join("out/snapshots/collaboration_2000.csv")
        .exists());
}

#[test]
fn hubs_respect_top() {
    let (dir, config) = stage("variants");
    let out = scholnet(&["hubs", "--top", "2"], &config);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let nodes = csv_column(&dir.path().join("out/hubs.csv"), "node");
    assert_eq!(nodes, ["iisc", "hri"]);
}

#[test]
fn distance_with_category_filter() {
    let (dir, config) = stage("variants");
    let out = scholnet(&["distance", "--category", "INI,NRI"], &config);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let summary: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("out/distance_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["filter"], "INI-NRI");
    assert_eq!(summary["total_pairs"], 4);
}

#[test]
fn config_errors_exit_3() {
    let (_dir, config) = stage("variants");
    for args in [
        &["resolve", "--threshold", "1.5"][..],
        &["distance", "--category", "XYZ"],
        &["build", "--years", "2005..2001"],
        &["metrics", "--top", "0"],
        &["explode"],
    ] {
        let out = scholnet(args, &config);
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", stderr(&out));
        assert!(
            stderr(&out).starts_with("error code=3 kind="),
            "{}",
            stderr(&out)
        );
    }
    let out = scholnet(&["resolve"], Path::new("/nonexistent/config.toml"));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn locked_output_is_a_config_error() {
    let (dir, config) = stage("variants");
    fs::create_dir_all(dir.path().join("out")).unwrap();
    fs::write(dir.path().join("out/.scholnet.lock"), "").unwrap();
    let out = scholnet(&["resolve"], &config);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("locked"));
}

#[test]
fn bad_records_exit_2() {
    let (dir, config) = stage("triangle");
    let records = dir.path().join("records.jsonl");
    fs::write(&records, "{\"paper_id\": \"x\", \"year\": 2000}\n").unwrap();
    let out = scholnet(&["resolve"], &config);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("kind=schema_violation"),
        "{}",
        stderr(&out)
    );

    fs::write(&records, "not json\n").unwrap();
    let out = scholnet(&["resolve"], &config);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("kind=malformed_line"));

    fs::write(&records, "\n").unwrap();
    assert_eq!(scholnet(&["resolve"], &config).status.code(), Some(2));
}

#[test]
fn countries_counts_foreign_partners() {
    let dir = tempfile::tempdir().unwrap();
    let config = common::synthetic_corpus(11).write_to(dir.path());
    let out = scholnet(&["countries"], &config);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let countries = csv_column(&dir.path().join("out/countries.csv"), "country");
    assert!(!countries.is_empty());
    assert!(countries
        .iter()
        .all(|c| ["usa", "germany", "japan", "france"].contains(&c.as_str())));
}
