//! The seven acceptance criteria. Each test prints one PASS/FAIL line straight
//! to stderr so the verdicts show up in plain `cargo test` output.

use std::io::Write;
use std::time::{Duration, Instant};

use edge_ends::presentation::{EndStructure, Presentation};
use edge_ends::suites::{run_suite, Suite, SuiteConfig, SuiteReport};

const SEED: u64 = 1;

fn verdict(n: u32, name: &str, pass: bool, detail: &str, elapsed: Duration, limit: Duration) -> bool {
    let pass = pass && elapsed <= limit;
    let line = format!(
        "acceptance {n} [{name}]: {} ({detail}; {:.2?} of {:?} allowed)\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    pass
}

fn suite(n: u32, name: &str, kind: Suite, cfg: SuiteConfig, expected: usize, limit: Duration) {
    let start = Instant::now();
    let r: SuiteReport = run_suite(kind, &cfg);
    let elapsed = start.elapsed();
    let detail = format!(
        "{} instances, {} checks, {} skipped, {} failures",
        r.instances,
        r.checks,
        r.skipped,
        r.failures.len()
    );
    let pass = verdict(n, name, r.passed() && r.instances >= expected, &detail, elapsed, limit);
    assert!(pass, "{detail}; first failures: {:?}", r.failures.iter().take(3).collect::<Vec<_>>());
}

#[test]
fn criterion_1_figure1_has_one_end() {
    let start = Instant::now();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/figure1.json")).unwrap();
    let p = Presentation::from_json(&text).unwrap();
    let ends = EndStructure::new(&p).unwrap();
    let elapsed = start.elapsed();
    let dominators: Vec<String> = ends.classes.iter().flat_map(|c| c.dominators.iter().map(|&d| p.core.label(d))).collect();
    let pass = ends.classes.len() == 1 && dominators == ["v_inf"];
    let detail = format!("{} classes, dominators {dominators:?}", ends.classes.len());
    assert!(verdict(1, "figure 1", pass, &detail, elapsed, Duration::from_secs(1)), "{detail}");
}

#[test]
fn criterion_2_finite_menger_exhaustive() {
    let mut cfg = SuiteConfig::defaults(Suite::MengerDuality, SEED);
    cfg.max_v = 6;
    // connected labeled graphs on 2..=6 vertices
    suite(2, "finite Menger", Suite::MengerDuality, cfg, 1 + 4 + 38 + 728 + 26704, Duration::from_secs(300));
}

#[test]
fn criterion_3_lovasz_cherkassky_count() {
    let cfg = SuiteConfig::defaults(Suite::PackingCount, SEED);
    assert_eq!((cfg.count, cfg.max_v, cfg.max_e), (200, 12, 30));
    suite(3, "T-path packing", Suite::PackingCount, cfg, 200, Duration::from_secs(600));
}

#[test]
fn criterion_4_end_classes_match_flows() {
    let cfg = SuiteConfig::defaults(Suite::EndsEquivalence, SEED);
    suite(4, "edge-end classes", Suite::EndsEquivalence, cfg, 100, Duration::from_secs(600));
}

#[test]
fn criterion_5_end_duality() {
    let cfg = SuiteConfig::defaults(Suite::EndsDuality, SEED);
    suite(5, "edge-end Menger duality", Suite::EndsDuality, cfg, 100, Duration::from_secs(900));
}

#[test]
fn criterion_6_end_packing() {
    let cfg = SuiteConfig::defaults(Suite::LcEnds, SEED);
    suite(6, "edge-end T-path packing", Suite::LcEnds, cfg, 100, Duration::from_secs(900));
}

#[test]
fn criterion_7_line_graph_round_trip() {
    let cfg = SuiteConfig::defaults(Suite::LineRoundTrip, SEED);
    suite(7, "line-graph round trip", Suite::LineRoundTrip, cfg, 500, Duration::from_secs(60));
}
