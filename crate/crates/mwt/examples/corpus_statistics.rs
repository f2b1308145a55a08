//! The count structures behind the measures: nesting sets, context
//! profiles, bigram probabilities, and contingency tables.
//!
//! Run with: `cargo run --example corpus_statistics`

use std::path::Path;

use mwt::config::PipelineConfig;
use mwt::pipeline::{load_corpus, PipelineData};
use mwt::{build_contingency, llr};

fn main() -> mwt::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let config = PipelineConfig::load(&fixtures.join("pipeline.toml"))?;
    let data = PipelineData::prepare(&config)?;

    println!(
        "{} tokens, {} candidate terms",
        load_corpus(&config)?.token_count(),
        data.terms.len()
    );

    // The most nested term and its containers.
    let (idx, term) = data
        .terms
        .iter()
        .enumerate()
        .max_by_key(|(i, _)| data.nesting.cardinality(*i))
        .expect("corpus has terms");
    println!("\nmost nested term: [{}] f={}", term.key, term.freq);
    for &j in data.nesting.containers_of(idx) {
        println!("  contained in [{}] f={}", data.terms[j].key, data.terms[j].freq);
    }

    // Its context profile.
    println!("context words of [{}]:", term.key);
    for (stem, count) in data.profiles.context_of(idx) {
        println!("  {stem}: f_a={count}, t={}", data.profiles.weight(stem));
    }

    // Corpus bigram probabilities feed the T-score.
    let p = data.bigrams.p_pair("تلوث", "هواء");
    println!("\np(تلوث, هواء) = {p:.6}");
    println!("p(تلوث) = {:.6}", data.bigrams.p_word("تلوث"));

    // Term-level contingency table feeds the LLR.
    let table = build_contingency("تلوث", "هواء", &data.terms);
    println!(
        "contingency(تلوث, هواء): both={} first={} second={} neither={}  LLR={:.4}",
        table.both,
        table.only_first,
        table.only_second,
        table.neither,
        llr(&table)
    );
    Ok(())
}
