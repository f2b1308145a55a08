//! Graphical normalization, light stemming, and variant merging.
//!
//! Candidate occurrences that differ only by orthography (hamza seats,
//! final ya/alef-maqsura, ta-marbuta), inflection (definite article,
//! number suffixes) or morpho-syntactic alternation (nisba adjectives,
//! prepositional paraphrases) are folded onto a shared [`StemKey`] and
//! merged into one [`CandidateTerm`]. The stemmer is a light10-style
//! affix stripper: it removes at most one prefix (remainder >= 2 chars)
//! and at most one suffix (remainder >= 3 chars), longest applicable
//! affix first, and never touches non-Arabic text.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::filter::{CandidateOccurrence, PatternId};
use crate::corpus::PosCategory;

/// Diacritics and tatweel removed by [`normalize_graphical`]:
/// U+064B..=U+065F (tanwin, short vowels, shadda, sukun and the rarer
/// combining marks), U+0670 (superscript alef) and U+0640 (tatweel).
fn is_stripped_mark(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{065F}' | '\u{0670}' | '\u{0640}')
}

/// Prefixes stripped by [`light_stem`], longest first. A prefix is
/// removed only if at least two characters remain.
const PREFIXES: [&str; 7] = ["وال", "فال", "بال", "كال", "ال", "لل", "و"];

/// Suffixes stripped by [`light_stem`], longest first, at most one. A
/// suffix is removed only if at least three characters remain. `ية` can
/// only fire on unnormalized input since normalization rewrites a final
/// ta-marbuta to `ه`.
const SUFFIXES: [&str; 9] = ["ها", "ان", "ات", "ون", "ين", "يه", "ية", "ه", "ي"];

/// Normalize the orthographic variation classes: strip diacritics and
/// tatweel, unify the hamza-carrying alef forms on plain alef, rewrite a
/// final alef-maqsura to ya and a final ta-marbuta to ha. Text without
/// Arabic letters passes through unchanged.
pub fn normalize_graphical(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    for c in word.chars() {
        if is_stripped_mark(c) {
            continue;
        }
        out.push(match c {
            '\u{0623}' | '\u{0625}' | '\u{0622}' => '\u{0627}', // أ إ آ -> ا
            other => other,
        });
    }
    match out.pop() {
        Some('\u{0649}') => out.push('\u{064A}'), // final ى -> ي
        Some('\u{0629}') => out.push('\u{0647}'), // final ة -> ه
        Some(last) => out.push(last),
        None => {}
    }
    out
}

/// Light-stem an already normalized word: strip at most one prefix from
/// [`PREFIXES`] (keeping >= 2 characters) and then at most one suffix
/// from [`SUFFIXES`] (keeping >= 3 characters). Affixes are tried
/// longest first and an affix that would leave too short a remainder is
/// skipped in favor of the next applicable one.
pub fn light_stem(word: &str) -> String {
    let mut stem = word;
    let mut chars = stem.chars().count();
    for prefix in PREFIXES {
        if let Some(rest) = stem.strip_prefix(prefix) {
            let prefix_chars = prefix.chars().count();
            if chars - prefix_chars >= 2 {
                stem = rest;
                chars -= prefix_chars;
                break;
            }
        }
    }
    for suffix in SUFFIXES {
        if let Some(rest) = stem.strip_suffix(suffix) {
            let suffix_chars = suffix.chars().count();
            if chars - suffix_chars >= 3 {
                stem = rest;
                break;
            }
        }
    }
    stem.to_string()
}

/// Full single-word pipeline: graphical normalization followed by light
/// stemming. This is the function candidate keys, reference lists, and
/// corpus-level word statistics all share.
pub fn stem_word(word: &str) -> String {
    light_stem(&normalize_graphical(word))
}

/// Ordered sequence of content-word stems identifying a candidate term.
/// Keys are the identity used for merging, nesting, and reference
/// matching.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StemKey(Vec<String>);

impl StemKey {
    /// Build a key from stems. Empty keys and empty stems are rejected.
    pub fn new(stems: Vec<String>) -> Result<StemKey> {
        if stems.is_empty() {
            return Err(Error::InvalidInput("stem key must not be empty".into()));
        }
        if stems.iter().any(String::is_empty) {
            return Err(Error::InvalidInput(
                "stem key must not contain empty stems".into(),
            ));
        }
        Ok(StemKey(stems))
    }

    pub fn stems(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the first occurrence of `needle` as a contiguous
    /// subsequence of this key.
    pub fn find_contiguous(&self, needle: &StemKey) -> Option<usize> {
        if needle.len() > self.len() {
            return None;
        }
        (0..=self.len() - needle.len())
            .find(|&start| self.0[start..start + needle.len()] == needle.0[..])
    }

    pub fn contains_contiguous(&self, needle: &StemKey) -> bool {
        self.find_contiguous(needle).is_some()
    }

    pub fn contains_stem(&self, stem: &str) -> bool {
        self.0.iter().any(|s| s == stem)
    }
}

impl fmt::Display for StemKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

/// Position of one merged occurrence, kept so context windows can be
/// recovered after merging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermOccurrence {
    pub doc_id: usize,
    pub sent_idx: usize,
    pub start_idx: usize,
    pub token_len: usize,
}

/// A merged equivalence class of candidate occurrences sharing one
/// [`StemKey`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTerm {
    pub key: StemKey,
    /// All distinct surface forms observed for this key.
    pub surfaces: BTreeSet<String>,
    /// Occurrence count `f(a)` after merging.
    pub freq: u64,
    pub patterns: BTreeSet<PatternId>,
    pub occurrences: Vec<TermOccurrence>,
}

impl CandidateTerm {
    /// Term length `|a|`: the number of stems in the key.
    pub fn len(&self) -> usize {
        self.key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.key.is_empty()
    }

    /// A deterministic representative surface form (the lexicographically
    /// smallest observed one).
    pub fn sample_surface(&self) -> &str {
        self.surfaces
            .iter()
            .next()
            .map(String::as_str)
            .unwrap_or("")
    }
}

/// Compute the stem key of an occurrence: prepositions are dropped, the
/// remaining surfaces are normalized and light-stemmed in order.
pub fn candidate_key(occ: &CandidateOccurrence) -> Result<StemKey> {
    let stems: Vec<String> = occ
        .tokens
        .iter()
        .filter(|t| t.pos != PosCategory::Preposition)
        .map(|t| stem_word(&t.surface))
        .collect();
    StemKey::new(stems).map_err(|_| {
        Error::InvalidInput(format!(
            "occurrence `{}` has no content words",
            occ.surface()
        ))
    })
}

/// Merge occurrences with equal stem keys into [`CandidateTerm`]s.
/// The result is sorted by key, and within each term the occurrence list
/// keeps extraction order.
pub fn group_variants(occs: &[CandidateOccurrence]) -> Result<Vec<CandidateTerm>> {
    let mut grouped: BTreeMap<StemKey, CandidateTerm> = BTreeMap::new();
    for occ in occs {
        let key = candidate_key(occ)?;
        let entry = grouped.entry(key.clone()).or_insert_with(|| CandidateTerm {
            key,
            surfaces: BTreeSet::new(),
            freq: 0,
            patterns: BTreeSet::new(),
            occurrences: Vec::new(),
        });
        entry.freq += 1;
        entry.surfaces.insert(occ.surface());
        entry.patterns.insert(occ.pattern);
        entry.occurrences.push(TermOccurrence {
            doc_id: occ.doc_id,
            sent_idx: occ.sent_idx,
            start_idx: occ.start_idx,
            token_len: occ.tokens.len(),
        });
    }
    Ok(grouped.into_values().collect())
}

/// Find the syntactic variants of `a`: every longer term whose key
/// contains `a`'s key contiguously, paired with the stems that were
/// added. Those added stems feed the context model.
pub fn find_syntactic_variants<'t>(
    a: &CandidateTerm,
    all: &'t [CandidateTerm],
) -> Vec<(&'t CandidateTerm, Vec<String>)> {
    let mut variants = Vec::new();
    for b in all {
        if b.len() <= a.len() || b.key == a.key {
            continue;
        }
        if let Some(at) = b.key.find_contiguous(&a.key) {
            let added: Vec<String> = b
                .key
                .stems()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i < at || *i >= at + a.len())
                .map(|(_, s)| s.clone())
                .collect();
            variants.push((b, added));
        }
    }
    variants
}
