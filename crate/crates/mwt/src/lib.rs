//! Hybrid multi-word term extraction for Arabic corpora.
//!
//! The pipeline has two halves. A linguistic filter scans POS-tagged
//! text for noun-headed patterns and folds spelling, inflection, and
//! morpho-syntactic variants together via graphical normalization and
//! light stemming. A statistical filter then ranks the merged candidates
//! with a family of termhood/unithood/context measures: C-value,
//! NC-value, NTC-value, LLR, LLR+C-value, and NLC-value, which combines
//! the log-likelihood-ratio-reweighted C-value with contextual evidence.
//! A precision@k harness scores rankings against stemmed reference
//! lists.
//!
//! Start with the runnable examples (`cargo run --example full_pipeline`)
//! or the `mwt` binary, which exposes each stage as a subcommand.

pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod filter;
pub mod fmt;
pub mod measures;
pub mod normalize;
pub mod pipeline;
pub mod stats;

pub use config::{validate_config, PipelineConfig};
pub use corpus::{map_tagset, parse_tagged_corpus, Corpus, PosCategory, TaggedToken, TagsetMap};
pub use error::{Error, Result};
pub use eval::{
    evaluate_all, load_reference, match_candidate, precision_at_k, EvalReport, ReferenceList,
};
pub use filter::{extract_candidates, CandidateOccurrence, PatternId};
pub use measures::{
    c_value, llr, n_value, nc_value, reweighted_freq_llr, reweighted_freq_t, t_score,
    CombinationWeights, MeasureId, ScoreEntry, ScoreTable, Scorer,
};
pub use normalize::{
    candidate_key, find_syntactic_variants, group_variants, light_stem, normalize_graphical,
    stem_word, CandidateTerm, StemKey, TermOccurrence,
};
pub use pipeline::{run_pipeline, PipelineData, RunManifest};
pub use stats::{
    build_bigram_stats, build_contingency, build_context_profiles, build_nesting_index,
    BigramStats, ContextProfiles, ContingencyTable, NestingIndex,
};
