//! Rank the fixture corpus under all six measures and compare the
//! resulting top lists.
//!
//! Run with: `cargo run --example rank_terms`

use std::path::Path;

use mwt::config::PipelineConfig;
use mwt::pipeline::PipelineData;
use mwt::MeasureId;

fn main() -> mwt::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let config = PipelineConfig::load(&fixtures.join("pipeline.toml"))?;
    let data = PipelineData::prepare(&config)?;
    let scorer = data.scorer(&config);

    for measure in MeasureId::ALL {
        let table = scorer.rank(measure);
        println!("top 5 by {measure}:");
        for entry in &table.entries[..5.min(table.len())] {
            let term = &data.terms[entry.term];
            println!(
                "  {}. {:>12.6}  f={} [{}]",
                entry.rank, entry.score, term.freq, term.key
            );
        }
    }

    // The same term under every measure.
    let target = data
        .terms
        .iter()
        .position(|t| t.key.to_string() == "تلوث هواء")
        .expect("air pollution is in the fixture corpus");
    println!("\nscores of [تلوث هواء]:");
    println!("  C    = {:.6}", scorer.c_value(target));
    println!("  N    = {:.6}", scorer.n_value(target));
    println!("  NC   = {:.6}", scorer.nc_value(target));
    println!("  NTC  = {:.6}", scorer.ntc_value(target));
    println!("  LLR  = {:.6}", scorer.min_llr(target));
    println!("  LC   = {:.6}", scorer.lc_value(target));
    println!("  NLC  = {:.6}", scorer.nlc_value(target));
    Ok(())
}
