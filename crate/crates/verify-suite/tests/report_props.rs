use proptest::prelude::*;
use serde_json::json;
use verify_suite::{overall, parse_report, render_report, ClaimResult, Format, RowReport, Scope, Verdict};

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![Just(Verdict::Pass), Just(Verdict::Fail), Just(Verdict::Unknown)]
}

fn claim() -> impl Strategy<Value = ClaimResult> {
    ("[a-z/()0-9_]{1,12}", verdict(), ".{0,200}", 0u64..10_000).prop_map(|(id, verdict, s, millis)| {
        ClaimResult { id, verdict, artifact: json!({ "summary": s }), millis }
    })
}

fn report() -> impl Strategy<Value = RowReport> {
    ("[A-Za-z/^]{1,10}", any::<bool>(), prop::collection::vec(claim(), 0..6)).prop_map(|(row, exact, claims)| {
        RowReport { row, scope: if exact { Scope::Exact } else { Scope::FiniteWitness }, claims }
    })
}

proptest! {
    #[test]
    fn json_round_trips(reports in prop::collection::vec(report(), 0..4)) {
        let json = render_report(&reports, Format::Json);
        prop_assert_eq!(parse_report(&json).unwrap(), reports);
    }

    #[test]
    fn text_line_count_and_verdicts(reports in prop::collection::vec(report(), 0..4)) {
        let text = render_report(&reports, Format::Text);
        let expected: usize = reports.iter().map(|r| 1 + r.claims.len()).sum();
        prop_assert_eq!(text.lines().count(), expected);
        // Claim lines: indent, padded verdict, id, then at most 120 summary characters.
        for line in text.lines().filter(|l| l.starts_with("  ")) {
            prop_assert!(line.chars().count() <= 2 + 8 + 12 + 2 + 120);
        }
    }

    #[test]
    fn overall_is_worst_verdict(vs in prop::collection::vec(verdict(), 0..8)) {
        let o = overall(vs.clone());
        if vs.contains(&Verdict::Fail) {
            prop_assert_eq!(o, Verdict::Fail);
        } else if vs.contains(&Verdict::Unknown) {
            prop_assert_eq!(o, Verdict::Unknown);
        } else {
            prop_assert_eq!(o, Verdict::Pass);
        }
    }
}
