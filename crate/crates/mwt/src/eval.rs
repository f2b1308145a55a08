//! Reference-list matching and precision@k reporting.
//!
//! Reference terms run through the same normalize/stem pipeline as the
//! candidates, with a configurable preposition stop-list standing in for
//! the POS-based preposition drop. A candidate counts as attested when
//! some reference key has the same number of stems and the same stem
//! sequence; lists are consulted in order and the first match decides
//! the source label.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{MeasureId, ScoreTable};
use crate::normalize::{light_stem, normalize_graphical, CandidateTerm, StemKey};

/// Prepositions dropped from reference terms before stemming. They are
/// compared after graphical normalization, so both `إلى` and `الى`
/// spellings are covered.
pub const DEFAULT_PREPOSITION_STOP_WORDS: &[&str] = &[
    "من", "في", "على", "الى", "إلى", "عن", "مع", "بين", "عند", "حول", "تحت", "فوق", "امام",
    "أمام", "خلف", "بعد", "قبل", "ضد", "نحو", "لدى", "عبر", "منذ", "حتى",
];

/// A stemmed reference list with its source label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceList {
    pub label: String,
    pub keys: BTreeSet<StemKey>,
}

impl ReferenceList {
    pub fn contains(&self, key: &StemKey) -> bool {
        self.keys.contains(key)
    }
}

/// Normalize a stop-word list for comparison against normalized words.
fn normalized_stop_set(stop_words: &[String]) -> BTreeSet<String> {
    stop_words.iter().map(|w| normalize_graphical(w)).collect()
}

/// Turn one reference line into a stem key: normalize each word, drop
/// stop words, stem the rest. Returns `None` when nothing is left.
fn reference_key(line: &str, stops: &BTreeSet<String>) -> Option<StemKey> {
    let stems: Vec<String> = line
        .split_whitespace()
        .map(normalize_graphical)
        .filter(|w| !w.is_empty() && !stops.contains(w))
        .map(|w| light_stem(&w))
        .collect();
    StemKey::new(stems).ok()
}

/// Load a reference list: one term per line, words space-separated,
/// duplicates collapsed. Blank lines are skipped; an empty file (or one
/// with only blank lines) is an error.
pub fn load_reference(path: &Path, label: &str, stop_words: &[String]) -> Result<ReferenceList> {
    let text = std::fs::read_to_string(path)?;
    load_reference_from_str(&text, label, stop_words)
}

/// As [`load_reference`], from already-read text.
pub fn load_reference_from_str(
    text: &str,
    label: &str,
    stop_words: &[String],
) -> Result<ReferenceList> {
    let stops = normalized_stop_set(stop_words);
    let mut keys = BTreeSet::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(key) = reference_key(line, &stops) {
            keys.insert(key);
        }
    }
    if keys.is_empty() {
        return Err(Error::InvalidInput(format!(
            "reference list `{label}` is empty"
        )));
    }
    Ok(ReferenceList {
        label: label.to_string(),
        keys,
    })
}

/// Match a candidate against the reference cascade: the first list
/// containing a key of equal length and equal stem sequence wins.
pub fn match_candidate<'r>(key: &StemKey, refs: &'r [ReferenceList]) -> Option<&'r str> {
    refs.iter()
        .find(|r| r.contains(key))
        .map(|r| r.label.as_str())
}

fn effective_k(k: usize, available: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if k > available {
        log::warn!("precision@{k} requested but only {available} candidates exist; using {available}");
        Ok(available)
    } else {
        Ok(k)
    }
}

/// Fraction of the top-k ranked candidates attested in any reference
/// list. When `k` exceeds the number of candidates the precision is
/// computed over all of them (with a warning).
pub fn precision_at_k(
    table: &ScoreTable,
    terms: &[CandidateTerm],
    refs: &[ReferenceList],
    k: usize,
) -> Result<f64> {
    let eff = effective_k(k, table.len())?;
    if eff == 0 {
        return Ok(0.0);
    }
    let matched = table.entries[..eff]
        .iter()
        .filter(|e| match_candidate(&terms[e.term].key, refs).is_some())
        .count();
    Ok(matched as f64 / eff as f64)
}

/// Precision and per-source match counts for one measure at one cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalCell {
    pub k: usize,
    /// Number of candidates actually considered (min of k and the
    /// candidate count).
    pub evaluated: usize,
    /// Number of attested candidates among them.
    pub matched: usize,
    pub precision: f64,
    /// Matched counts per source label; values sum to `matched`.
    pub per_source: BTreeMap<String, usize>,
}

/// Rows of the precision matrix for one measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub measure: MeasureId,
    pub cells: Vec<EvalCell>,
}

/// The full evaluation report: a measures-by-cutoffs precision matrix
/// plus per-source match counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub ks: Vec<usize>,
    pub n_candidates: usize,
    pub sources: Vec<String>,
    pub measures: Vec<MeasureReport>,
}

/// Evaluate every score table at every cutoff.
pub fn evaluate_all(
    tables: &[ScoreTable],
    terms: &[CandidateTerm],
    refs: &[ReferenceList],
    ks: &[usize],
) -> Result<EvalReport> {
    let mut measures = Vec::with_capacity(tables.len());
    for table in tables {
        let mut cells = Vec::with_capacity(ks.len());
        for &k in ks {
            let eff = effective_k(k, table.len())?;
            let mut per_source: BTreeMap<String, usize> = BTreeMap::new();
            for entry in &table.entries[..eff] {
                if let Some(label) = match_candidate(&terms[entry.term].key, refs) {
                    *per_source.entry(label.to_string()).or_insert(0) += 1;
                }
            }
            let matched: usize = per_source.values().sum();
            cells.push(EvalCell {
                k,
                evaluated: eff,
                matched,
                precision: if eff == 0 {
                    0.0
                } else {
                    matched as f64 / eff as f64
                },
                per_source,
            });
        }
        measures.push(MeasureReport {
            measure: table.measure,
            cells,
        });
    }
    Ok(EvalReport {
        ks: ks.to_vec(),
        n_candidates: terms.len(),
        sources: refs.iter().map(|r| r.label.clone()).collect(),
        measures,
    })
}
