//! Parse a `surface/TAG` corpus and inspect the token stream.
//!
//! Run with: `cargo run --example parse_corpus`

use mwt::{parse_tagged_corpus, PosCategory, TagsetMap};

fn main() -> mwt::Result<()> {
    let mut tagset = TagsetMap::new(PosCategory::Other);
    tagset.insert("NN", PosCategory::Noun);
    tagset.insert("JJ", PosCategory::Adjective);
    tagset.insert("IN", PosCategory::Preposition);
    tagset.insert("VB", PosCategory::Verb);

    let text = "تلوث/NN الهواء/NN يهدد/VB صحة/NN السكان/NN\n\
                برميل/NN من/IN النفط/NN تسرب/VB";
    let corpus = parse_tagged_corpus(text, &tagset)?;

    println!(
        "{} sentences, {} tokens",
        corpus.sentence_count(),
        corpus.token_count()
    );
    for sentence in corpus.sentences() {
        for token in sentence {
            println!(
                "  doc {} sent {} tok {}: {} [{}]",
                token.doc_id, token.sent_idx, token.tok_idx, token.surface, token.pos
            );
        }
    }

    // Unmapped tags fall back to the default category.
    let fallback = parse_tagged_corpus("غدا/ADV", &tagset)?;
    println!(
        "unmapped tag ADV maps to: {}",
        fallback.sentences()[0][0].pos
    );
    Ok(())
}
