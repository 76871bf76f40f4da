//! Acceptance gate: runs the full verification suite and prints one
//! pass/fail line per criterion. Tolerances are pinned inside the suite.

use wpa::verify;

#[test]
fn acceptance_criteria() {
    let results = verify::run(None).expect("verification suite must run");
    assert_eq!(results.len(), 11, "expected all 11 criteria to execute");
    let mut all_pass = true;
    for r in &results {
        println!(
            "[{:2}] {}  {:<18} ({:7.2} s)  {}",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.slug,
            r.seconds,
            if r.pass { r.name.to_string() } else { r.detail.clone() },
        );
        all_pass &= r.pass;
    }
    assert!(all_pass, "acceptance criteria failed; see the lines above");
}
