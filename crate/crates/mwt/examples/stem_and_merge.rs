//! Normalization, light stemming, and variant merging.
//!
//! Shows how spelling variants (الكيميائى/الكيميائي), inflectional
//! variants (المحيط/المحيطات), and morpho-syntactic variants
//! (برميل نفطي / برميل من النفط) land on one stem key.
//!
//! Run with: `cargo run --example stem_and_merge`

use mwt::{
    extract_candidates, find_syntactic_variants, group_variants, normalize_graphical,
    parse_tagged_corpus, stem_word, TagsetMap,
};

fn main() -> mwt::Result<()> {
    for word in ["الكيميائى", "التلوث", "المحيطات", "نفطي", "المياه"] {
        println!(
            "{word}  normalized: {}  stem: {}",
            normalize_graphical(word),
            stem_word(word)
        );
    }

    let text = "\
برميل/noun نفطي/adjective
برميل/noun من/preposition النفط/noun
تلوث/noun المحيط/noun
تلوث/noun المحيطات/noun
تلوث/noun الهواء/noun
تلوث/noun الهواء/noun الخطير/adjective";
    let corpus = parse_tagged_corpus(text, &TagsetMap::canonical())?;
    let occurrences = extract_candidates(&corpus, 3);
    let terms = group_variants(&occurrences)?;

    println!("\n{} occurrences merged into {} terms:", occurrences.len(), terms.len());
    for term in &terms {
        println!(
            "  [{}] f={} surfaces: {}",
            term.key,
            term.freq,
            term.surfaces.iter().cloned().collect::<Vec<_>>().join(" | ")
        );
    }

    println!("\nsyntactic variants (longer terms containing a shorter one):");
    for term in &terms {
        for (variant, added) in find_syntactic_variants(term, &terms) {
            println!(
                "  [{}] extends [{}], adding: {}",
                variant.key,
                term.key,
                added.join(" ")
            );
        }
    }
    Ok(())
}
