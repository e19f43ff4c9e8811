//! Runs a seeded campaign and writes the per-sample CSV report.
//!
//! Run with `cargo run --release --example ensemble_campaign [out.csv]`.

use avecert::{run_campaign, write_report, ConditionId, EnsembleKind, EnsembleSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "campaign.csv".into());
    let spec = EnsembleSpec::new(EnsembleKind::ShiftedGaussian { shift: 2.0 }, 4, 500, 42);
    let campaign = run_campaign(&spec)?;
    let summary = &campaign.summary;

    println!(
        "{} samples, {} certified unique",
        summary.samples, summary.oracle_unique
    );
    for id in ConditionId::ALL {
        let tally = summary.tally(id);
        println!(
            "{:<12} fired {:>4}  sound {:>4}  marginal {:>2}  [{}]",
            id.name(),
            tally.fired,
            tally.sound_fired,
            tally.marginal,
            id.soundness()
        );
    }
    write_report(&campaign, out.as_ref())?;
    println!("wrote {out}");
    Ok(())
}
