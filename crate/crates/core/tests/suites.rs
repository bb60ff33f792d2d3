use stackfill::verify::{row_multisets, run_suite, stack_orderings, RunReport, Suite, VerifyParams};
use stackfill::Shard;

fn small() -> VerifyParams {
    VerifyParams { max_cells: 7, linked_max_n: 4, random_samples: 20, ..VerifyParams::default() }
}

#[test]
fn every_suite_except_the_conjecture_passes_at_small_size() {
    for s in Suite::ALL {
        let rep = run_suite(s, &small());
        if s == Suite::Conjecture {
            continue;
        }
        assert!(rep.passed(), "{s}: {:?}", rep.failures().collect::<Vec<_>>());
        assert!(!rep.checks.is_empty(), "{s} ran no checks");
    }
}

#[test]
fn conjecture_report_separates_hard_and_informational_checks() {
    let rep = run_suite(Suite::Conjecture, &VerifyParams::default());
    let get = |id: &str| rep.checks.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("missing {id}"));
    assert!(get("moon-family-equal").passed);
    assert!(!get("moon-family-equal").informational);
    assert!(get("moon-family-printed").informational);
    for name in ["exceptional-row", "exceptional-column"] {
        assert!(!get(&format!("almost-moon-asymmetric/{name}")).informational);
        assert!(get(&format!("almost-moon-printed/{name}")).informational);
    }
}

#[test]
fn shards_cover_the_row_multisets() {
    let all = row_multisets(8);
    assert_eq!(all.len(), [1, 2, 3, 5, 7, 11, 15, 22].iter().sum::<usize>());
    let shapes: usize = all.iter().map(|m| stack_orderings(m).len()).sum();
    let mut seen = 0;
    for index in 0..3 {
        let p = VerifyParams { max_cells: 8, shard: Shard { index, count: 3 }, ..VerifyParams::default() };
        let rep = run_suite(Suite::Symmetry, &p);
        assert!(rep.passed());
        let detail = &rep.checks[0].detail;
        seen += detail.split_whitespace().next().unwrap().parse::<usize>().unwrap();
    }
    assert_eq!(seen, shapes);
}

#[test]
fn fail_fast_stops_after_the_first_hard_failure() {
    let p = VerifyParams { fail_fast: true, ..VerifyParams::default() };
    let rep = run_suite(Suite::Conjecture, &p);
    assert!(rep.stopped_early);
    let last = rep.checks.last().unwrap();
    assert!(!last.passed && !last.informational);
    assert_eq!(rep.failures().count(), 1);
}

#[test]
fn report_round_trips_through_json() {
    let rep = run_suite(Suite::Figures, &VerifyParams::default());
    let text = serde_json::to_string(&rep).unwrap();
    let back: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
    assert!(text.contains("\"suite\":\"figures\""));
}
