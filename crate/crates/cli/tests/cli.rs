use std::process::{Command, Output};

use quadfrieze::enumerate::{CensusRecord, CensusResult};
use quadfrieze::eta::TraceRecord;
use quadfrieze::orders::{UnitCertificate, UnitCertificateRecord};
use quadfrieze::ReductionTrace;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadfrieze"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_csv_has_four_rows() {
    let o = run(&["enumerate", "--d=-5", "--height=1", "--bound-sq=16"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,height,quiddity,class"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.contains(&"-5,1,1;2;1;2,ConwayCoxeter"));
    assert!(rows.contains(&"-5,1,-2;-1;-2;-1,TwistedConwayCoxeter"));
}

#[test]
fn class_number_minus_thirteen() {
    let o = run(&["class-number", "--d=-13"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
    let o = run(&["class-number", "--d", "-23"]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn verify_paper_passes() {
    let o = run(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().count() >= 15);
    assert!(!text.contains("FAIL"));
}

#[test]
fn bound_relative_census_exits_two_and_still_emits() {
    let o = run(&["enumerate", "--d=-3", "--height=1", "--bound-sq=9", "--format=json"]);
    assert_eq!(o.status.code(), Some(2));
    let rec: CensusRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!rec.complete);
    assert_eq!(rec.friezes.len(), 12);
}

#[test]
fn census_json_round_trips_through_library() {
    let o = run(&["enumerate", "--height=3", "--format=json", "--workers=2"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: CensusRecord = serde_json::from_slice(&o.stdout).unwrap();
    let census = CensusResult::from_record(&rec).unwrap();
    assert_eq!(census.to_record(), rec);
    assert_eq!(census.friezes.len(), 28);
}

#[test]
fn output_independent_of_workers() {
    let one = run(&["enumerate", "--d=-7", "--height=2", "--bound-sq=9", "--workers=1", "--format=json"]);
    let many = run(&["enumerate", "--d=-7", "--height=2", "--bound-sq=9", "--workers=6", "--format=json"]);
    assert_eq!(one.status.code(), many.status.code());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("quadfrieze-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.csv");
    let o = run(&["enumerate", "--height=1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["enumerate", "--d=-4", "--height=1"][..],
        &["enumerate", "--height=1", "--bound-sq=abc"],
        &["enumerate", "--height=1", "--workers=0"],
        &["classify", "--quiddity", "1,2,x"],
        &["classify", "--quiddity", "1,1,2"],
        &["unit-search", "--d=-13", "--alpha=(-2+5*tau)/47", "--power-budget=1"],
        &["no-such-command"],
        &["class-number"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn unit_search_json_certificate_verifies() {
    let o = run(&["unit-search", "--d=-13", "--alpha=(-2+5*tau)/47", "--format=json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: UnitCertificateRecord = serde_json::from_slice(&o.stdout).unwrap();
    let cert = UnitCertificate::from_record(&rec).unwrap();
    assert_eq!(cert.k, 3);
    cert.verify().unwrap();
}

#[test]
fn reduce_json_replays() {
    let o = run(&["reduce", "--quiddity", "1,3,1,3,1,3", "--format=json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: TraceRecord = serde_json::from_slice(&o.stdout).unwrap();
    let trace = ReductionTrace::from_record(&rec).unwrap();
    assert_eq!(trace.replay().unwrap(), trace.terminal);
}

#[test]
fn quiddity_check_and_triangulations() {
    let o = run(&["quiddity-check", "--d=-2", "--quiddity", "w,-w,w,-w"]);
    assert!(stdout(&o).contains("quiddity cycle: yes"));
    let o = run(&["quiddity-check", "--quiddity", "1,2,3"]);
    assert!(stdout(&o).contains("quiddity cycle: no"));
    let o = run(&["triangulations", "--n-gon=6", "--format=csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 14);
}
