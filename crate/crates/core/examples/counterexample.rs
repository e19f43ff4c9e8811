//! The one-dimensional matrix `A = [0]` on which the `wu_plus` and
//! `wu_minus` conditions hold although `−|x| = −1` has two solutions.
//!
//! Run with `cargo run --example counterexample`.

fn main() {
    let report = avecert::demonstrate_counterexample();
    println!("{report}");
    assert!(report.wu_plus().holds() && !report.certificate.is_unique());
}
