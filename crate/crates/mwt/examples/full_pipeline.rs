//! End-to-end run over the bundled fixture corpus, writing every
//! artifact (candidate TSV, stats TSV, six ranking TSVs, evaluation
//! matrix, manifest) into a temp directory.
//!
//! Run with: `cargo run --example full_pipeline`

use std::path::Path;

use mwt::config::PipelineConfig;
use mwt::run_pipeline;

fn main() -> mwt::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let config = PipelineConfig::load(&fixtures.join("pipeline.toml"))?;

    let out = std::env::temp_dir().join("mwt_full_pipeline_example");
    let manifest = run_pipeline(&config, Some(&out))?;

    println!(
        "corpus: {} tokens in {} sentences",
        manifest.token_count, manifest.sentence_count
    );
    println!(
        "candidates: {} occurrences -> {} merged terms",
        manifest.occurrence_count, manifest.term_count
    );
    println!("artifacts in {}:", out.display());
    for name in &manifest.artifacts {
        println!("  {name}");
    }
    for (stage, duration) in &manifest.stage_timings {
        println!("{stage}: {duration:?}");
    }
    Ok(())
}
