//! Score rankings against stemmed reference lists: precision@k and
//! per-source match counts.
//!
//! Run with: `cargo run --example evaluate_precision`

use std::path::Path;

use mwt::config::PipelineConfig;
use mwt::pipeline::{load_references, PipelineData};
use mwt::{evaluate_all, precision_at_k};

fn main() -> mwt::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let config = PipelineConfig::load(&fixtures.join("pipeline.toml"))?;
    let data = PipelineData::prepare(&config)?;
    let scorer = data.scorer(&config);
    let references = load_references(&config)?;

    for reference in &references {
        println!("{}: {} stemmed keys", reference.label, reference.keys.len());
    }

    let tables: Vec<_> = config
        .rank
        .measures
        .iter()
        .map(|&m| scorer.rank(m))
        .collect();
    let report = evaluate_all(&tables, &data.terms, &references, &config.evaluate.k)?;

    println!("\nprecision matrix ({} candidates):", report.n_candidates);
    print!("{:>8}", "measure");
    for k in &report.ks {
        print!("{:>10}", format!("p@{k}"));
    }
    println!();
    for row in &report.measures {
        print!("{:>8}", row.measure.name());
        for cell in &row.cells {
            print!("{:>10.3}", cell.precision);
        }
        println!();
    }

    // A single cell, computed directly.
    let nlc = tables.last().expect("measures configured");
    let p10 = precision_at_k(nlc, &data.terms, &references, 10)?;
    println!("\nprecision@10 under {} = {p10:.3}", nlc.measure);
    Ok(())
}
