//! Minutes-scale checks, excluded from the default suite.
//! Run with: cargo test -p graycount --test long_running -- --ignored

use graycount::enumerator::{histogram, verify_shuffle_theorem_on, SEQUENCE_TOTALS};
use graycount::parity::{scan, ScanMode};

#[test]
#[ignore]
fn histogram_k5_total_and_shuffle_theorem() {
    let start = std::time::Instant::now();
    let hist = histogram(5, 4).unwrap();
    eprintln!("histogram(5) in {:?}", start.elapsed());
    assert_eq!(hist.total(), SEQUENCE_TOTALS[4]);
    let report = verify_shuffle_theorem_on(&hist).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
#[ignore]
fn e_one_five_is_tight() {
    // E(1, 5) = 2^{5-2} + 1 = 9, via orbit parities over the full
    // histogram; the stabilizer acts freely on delta sequences.
    let hist = histogram(5, 4).unwrap();
    let outcome = scan(1, 5, ScanMode::Equivalent, &hist, 4).unwrap();
    assert_eq!(outcome.value, 9);
}
