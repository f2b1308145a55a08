//! Run the linguistic filter over the bundled environment corpus and
//! print every pattern match, including nested ones.
//!
//! Run with: `cargo run --example extract_candidates`

use std::path::Path;

use mwt::config::PipelineConfig;
use mwt::pipeline::load_corpus;

fn main() -> mwt::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let config = PipelineConfig::load(&fixtures.join("pipeline.toml"))?;
    let corpus = load_corpus(&config)?;

    let occurrences = mwt::extract_candidates(&corpus, config.extract.l_max);
    println!(
        "{} occurrences in {} sentences (l_max = {})",
        occurrences.len(),
        corpus.sentence_count(),
        config.extract.l_max
    );

    // A noun run like "ثاني اكسيد الكربون" yields the trigram plus both
    // nested bigrams; the statistics depend on having all of them.
    for occ in occurrences.iter().filter(|o| o.sent_idx == 7) {
        println!(
            "  sent {} start {} len {} {}: {}",
            occ.sent_idx,
            occ.start_idx,
            occ.len(),
            occ.pattern,
            occ.surface()
        );
    }
    Ok(())
}
