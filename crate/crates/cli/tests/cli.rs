use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use action_algebra::equivariance::files::{save_decomposition, save_eta, save_structure};
use action_algebra::equivariance::StateMapEta;
use action_algebra::testkit::{
    grid_decomposition, grid_row_map, grid_row_quotient, grid_structure,
};

fn actalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actalg"))
        .args(args)
        .output()
        .expect("actalg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn list_names_every_gallery_world() {
    let out = actalg(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in [
        "cyclical-2x2",
        "wall-identity",
        "block-1d4",
        "consumable-identity",
        "wall-masked",
        "consumable-masked",
    ] {
        assert!(text.contains(key), "{key}");
    }
}

#[test]
fn unknown_world_is_an_input_error() {
    let out = actalg(&["show", "--world", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nosuch"));
    assert_eq!(actalg(&["show"]).status.code(), Some(2));
    assert_eq!(
        actalg(&["analyze", "--world", "cyclical-2x2", "--format", "dot"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn show_renders_every_format() {
    let md = stdout(&actalg(&["show", "--world", "block-1d4"]));
    assert!(md.starts_with('|'));
    let dot = stdout(&actalg(&[
        "show",
        "--world",
        "block-1d4",
        "--format",
        "dot",
    ]));
    assert!(dot.starts_with("digraph"));
    let toml = stdout(&actalg(&[
        "show",
        "--world",
        "block-1d4",
        "--format",
        "structured",
    ]));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("block.toml");
    std::fs::write(&file, toml).unwrap();
    let again = actalg(&["show", "--file", s(&file)]);
    assert!(again.status.success());
    assert_eq!(stdout(&again), md);
}

/// Rows of the first Markdown table after `## state table`.
fn state_table_rows(text: &str) -> Vec<&str> {
    text.split("## state table")
        .nth(1)
        .unwrap()
        .lines()
        .skip_while(|l| !l.starts_with('|'))
        .skip(2)
        .take_while(|l| l.starts_with('|'))
        .collect()
}

#[test]
fn cayley_tables_have_the_algebra_size() {
    let wall = stdout(&actalg(&["cayley", "--world", "wall-identity"]));
    assert!(wall.starts_with("# wall-identity from w0: 26 elements"));
    let rows = state_table_rows(&wall);
    assert_eq!(rows.len(), 26);
    assert!(rows.iter().all(|r| r.matches('|').count() == 28));

    let consumable = stdout(&actalg(&["cayley", "--world", "consumable-masked"]));
    let rows = state_table_rows(&consumable);
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().any(|r| r.contains('⊥')));
}

#[test]
fn cayley_csv_writes_one_file_per_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    let run = actalg(&[
        "cayley",
        "--world",
        "consumable-masked",
        "--format",
        "csv",
        "--out",
        s(&out),
    ]);
    assert!(run.status.success());
    let state = std::fs::read_to_string(out.join("state_table.csv")).unwrap();
    assert!(state.starts_with("undefined=empty,1,"));
    assert_eq!(state.lines().count(), 21);
    assert!(out.join("action_table.csv").exists());
    assert!(out.join("classes.csv").exists());
}

#[test]
fn analyze_reports_properties() {
    let text = stdout(&actalg(&["analyze", "--world", "cyclical-2x2"]));
    assert!(text.contains("commutative group"));
    assert!(text.contains("| Inverse     | Y     |"));
    let text = stdout(&actalg(&["analyze", "--world", "wall-identity"]));
    assert!(text.contains("| Inverse     | N     |"));
    assert!(text.contains("non-commuting pair"));
}

#[test]
fn verify_matches_on_the_gallery() {
    for key in [
        "cyclical-2x2",
        "wall-identity",
        "wall-masked",
        "consumable-masked",
    ] {
        let out = actalg(&["verify", "--world", key]);
        assert!(out.status.success(), "{key}: {}", stdout(&out));
        assert!(stdout(&out).ends_with("match\n"));
    }
}

#[test]
fn verify_names_the_misplaced_word() {
    let fx = fixture("corrupted-classes.toml");
    let out = actalg(&["verify", "--world", "cyclical-2x2", "--classes", s(&fx)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("mismatch at `U`"));
}

#[test]
fn low_cap_stops_with_status_one() {
    let out = actalg(&[
        "cayley",
        "--world",
        "consumable-identity",
        "--max-elements",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("capped"));
}

#[test]
fn conditions_report_witnesses() {
    let grid = actalg(&["conditions", "--world", "cyclical-2x2"]);
    assert!(grid.status.success());
    let wall = actalg(&["conditions", "--world", "wall-identity", "--format", "csv"]);
    assert_eq!(wall.status.code(), Some(1));
    let text = stdout(&wall);
    assert!(text.contains("WC1,PASS"));
    assert!(text.contains("WC2,FAIL"));
    assert!(text.contains("WC3,FAIL"));
    let masked = stdout(&actalg(&["conditions", "--world", "wall-masked"]));
    assert!(masked.contains("undefined at"));
}

#[test]
fn identity_map_is_equivariant_and_quotients_to_itself() {
    let dir = tempfile::tempdir().unwrap();
    let structure = dir.path().join("wall.toml");
    let made = actalg(&[
        "structure",
        "--world",
        "wall-identity",
        "--out",
        s(&structure),
    ]);
    assert!(made.status.success());
    let loaded = action_algebra::equivariance::files::load_structure(&structure).unwrap();
    let eta = dir.path().join("id.toml");
    save_eta(&StateMapEta::identity(&loaded.carrier), &eta).unwrap();

    let out = actalg(&[
        "equivariance",
        "--domain",
        s(&structure),
        "--codomain",
        s(&structure),
        "--eta",
        s(&eta),
        "--strict",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS"));

    let tau = dir.path().join("tau.toml");
    let q = actalg(&[
        "quotient",
        "--domain",
        s(&structure),
        "--eta",
        s(&eta),
        "--out",
        s(&tau),
    ]);
    assert!(q.status.success());
    let back = action_algebra::equivariance::files::load_structure(&tau).unwrap();
    assert_eq!(back.act, loaded.act);
}

#[test]
fn collapsing_map_is_not_a_congruence() {
    let dir = tempfile::tempdir().unwrap();
    let structure = dir.path().join("wall.toml");
    let made = actalg(&[
        "structure",
        "--world",
        "wall-identity",
        "--out",
        s(&structure),
    ]);
    assert!(made.status.success());
    let wall = action_algebra::equivariance::files::load_structure(&structure).unwrap();
    // w0 and w1 sit on either side of the wall, so merging them cannot be respected
    let images = wall
        .carrier
        .iter()
        .map(|w| {
            if w == "w1" {
                0
            } else {
                wall.carrier.iter().position(|x| x == w).unwrap()
            }
        })
        .collect::<Vec<_>>();
    let eta = StateMapEta::new(wall.carrier.clone(), wall.carrier.clone(), images).unwrap();
    let eta_path = dir.path().join("eta.toml");
    save_eta(&eta, &eta_path).unwrap();
    let out = actalg(&["quotient", "--domain", s(&structure), "--eta", s(&eta_path)]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("not a congruence"));
}

#[test]
fn disentangle_checks_the_grid_and_its_row_map() {
    let dir = tempfile::tempdir().unwrap();
    let grid = grid_structure();
    let dec = grid_decomposition(&grid);
    let (tau, tau_dec, components) = grid_row_quotient();
    let paths: Vec<PathBuf> = ["grid", "grid-dec", "tau", "tau-dec", "eta", "c0", "c1"]
        .iter()
        .map(|n| dir.path().join(format!("{n}.toml")))
        .collect();
    save_structure(&grid, &paths[0]).unwrap();
    save_decomposition(&dec, &grid, &paths[1]).unwrap();
    save_structure(&tau, &paths[2]).unwrap();
    save_decomposition(&tau_dec, &tau, &paths[3]).unwrap();
    save_eta(&grid_row_map(&grid), &paths[4]).unwrap();
    save_eta(&components[0], &paths[5]).unwrap();
    save_eta(&components[1], &paths[6]).unwrap();

    let out = actalg(&[
        "disentangle",
        "--structure",
        s(&paths[0]),
        "--decomposition",
        s(&paths[1]),
        "--codomain",
        s(&paths[2]),
        "--codomain-decomposition",
        s(&paths[3]),
        "--component",
        s(&paths[5]),
        "--component",
        s(&paths[6]),
        "--eta",
        s(&paths[4]),
    ]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("decomposition: PASS"));
    assert!(text.contains("componentwise equivariance: PASS"));
}
