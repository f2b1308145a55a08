//! Linguistic filter: extract candidate term occurrences matching the
//! syntactic patterns.
//!
//! Two patterns are supported. P1 is a noun head followed by nouns or
//! adjectives, up to `l_max` tokens in total; P2 is exactly
//! noun-preposition-noun. Every matching contiguous slice is emitted,
//! including nested and overlapping ones, because the nested-term
//! statistics need the substrings as candidates in their own right.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::corpus::{Corpus, PosCategory, TaggedToken};
use crate::error::Error;

/// Identifier of a syntactic pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternId {
    /// Noun followed by 1..`l_max`-1 tokens, each a noun or adjective.
    P1,
    /// Noun, preposition, noun (always length 3).
    P2,
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternId::P1 => "P1",
            PatternId::P2 => "P2",
        })
    }
}

impl FromStr for PatternId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "P1" | "p1" => Ok(PatternId::P1),
            "P2" | "p2" => Ok(PatternId::P2),
            _ => Err(Error::InvalidInput(format!("unknown pattern id `{s}`"))),
        }
    }
}

/// One pattern match: a contiguous token slice within a single sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateOccurrence {
    pub doc_id: usize,
    pub sent_idx: usize,
    pub start_idx: usize,
    pub tokens: Vec<TaggedToken>,
    pub pattern: PatternId,
}

impl CandidateOccurrence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Surface forms joined by single spaces.
    pub fn surface(&self) -> String {
        self.tokens
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn sort_key(&self) -> (usize, usize, usize, usize, PatternId) {
        (
            self.doc_id,
            self.sent_idx,
            self.start_idx,
            self.tokens.len(),
            self.pattern,
        )
    }
}

fn is_p1_continuation(pos: PosCategory) -> bool {
    matches!(pos, PosCategory::Noun | PosCategory::Adjective)
}

/// Extract every pattern match of length 2..=`l_max` from the corpus.
///
/// All occurrences are returned, including nested and overlapping ones;
/// the result is ordered by (doc, sentence, start, length, pattern)
/// regardless of how sentences were processed. P2 matches have length 3
/// and therefore only appear when `l_max >= 3`.
///
/// Panics if `l_max < 2`.
pub fn extract_candidates(corpus: &Corpus, l_max: usize) -> Vec<CandidateOccurrence> {
    assert!(l_max >= 2, "l_max must be at least 2");
    let mut occurrences: Vec<CandidateOccurrence> = corpus
        .sentences()
        .par_iter()
        .map(|sentence| scan_sentence(sentence, l_max))
        .flatten()
        .collect();
    // Sentences are already visited in order, but the contract is a total
    // order on positions, so make it explicit.
    occurrences.sort_by_key(|o| o.sort_key());
    occurrences
}

fn scan_sentence(sentence: &[TaggedToken], l_max: usize) -> Vec<CandidateOccurrence> {
    let mut found = Vec::new();
    for start in 0..sentence.len() {
        if sentence[start].pos != PosCategory::Noun {
            continue;
        }
        // P1: extend through nouns/adjectives up to l_max tokens.
        let mut end = start + 1;
        while end < sentence.len()
            && end - start < l_max
            && is_p1_continuation(sentence[end].pos)
        {
            end += 1;
            found.push(CandidateOccurrence {
                doc_id: sentence[start].doc_id,
                sent_idx: sentence[start].sent_idx,
                start_idx: start,
                tokens: sentence[start..end].to_vec(),
                pattern: PatternId::P1,
            });
        }
        // P2: noun, preposition, noun.
        if l_max >= 3
            && start + 2 < sentence.len()
            && sentence[start + 1].pos == PosCategory::Preposition
            && sentence[start + 2].pos == PosCategory::Noun
        {
            found.push(CandidateOccurrence {
                doc_id: sentence[start].doc_id,
                sent_idx: sentence[start].sent_idx,
                start_idx: start,
                tokens: sentence[start..start + 3].to_vec(),
                pattern: PatternId::P2,
            });
        }
    }
    found
}
