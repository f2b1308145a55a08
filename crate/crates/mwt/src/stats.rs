//! Global count structures feeding the association measures: the
//! nesting index `T_a`, context-word profiles, corpus bigram
//! probabilities, and term-level contingency tables.

use std::collections::{BTreeMap, HashMap};

use crate::corpus::{Corpus, PosCategory};
use crate::error::{Error, Result};
use crate::normalize::{find_syntactic_variants, stem_word, CandidateTerm};

/// For each candidate, the set `T_a` of longer candidates whose key
/// contains its key contiguously. Terms are addressed by their index in
/// the (key-sorted) term slice the index was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestingIndex {
    containers: Vec<Vec<usize>>,
}

impl NestingIndex {
    /// Indices of the terms containing term `i`, ascending.
    pub fn containers_of(&self, i: usize) -> &[usize] {
        &self.containers[i]
    }

    /// `|T_a|` for term `i`.
    pub fn cardinality(&self, i: usize) -> usize {
        self.containers[i].len()
    }

    pub fn len(&self) -> usize {
        self.containers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.containers.is_empty()
    }
}

/// Build the exact containment sets by pairwise key comparison. Keys are
/// assumed distinct (which [`group_variants`] guarantees), so only
/// strictly longer terms can contain a given one.
///
/// [`group_variants`]: crate::normalize::group_variants
pub fn build_nesting_index(terms: &[CandidateTerm]) -> NestingIndex {
    let mut containers = vec![Vec::new(); terms.len()];
    for (i, a) in terms.iter().enumerate() {
        for (j, b) in terms.iter().enumerate() {
            if b.len() > a.len() && b.key.contains_contiguous(&a.key) {
                containers[i].push(j);
            }
        }
    }
    NestingIndex { containers }
}

/// Context-word profiles: per candidate the stems seen near its
/// occurrences (plus the stems added by its syntactic variants), and the
/// global weight `t(b)` = number of candidates having `b` in context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextProfiles {
    per_term: Vec<BTreeMap<String, u64>>,
    global_t: BTreeMap<String, u64>,
    n_terms: usize,
}

impl ContextProfiles {
    /// `f_a(b)` counts for term `i`, keyed by context stem.
    pub fn context_of(&self, i: usize) -> &BTreeMap<String, u64> {
        &self.per_term[i]
    }

    /// Number of distinct context stems of term `i` (`|C_a|`).
    pub fn context_size(&self, i: usize) -> usize {
        self.per_term[i].len()
    }

    /// `t(b)`: number of distinct candidates with `b` in their context.
    pub fn weight(&self, stem: &str) -> u64 {
        self.global_t.get(stem).copied().unwrap_or(0)
    }

    /// Total number of candidate terms (`n`).
    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// The contextual N-value of term `i`: sum of `f_a(b) * t(b) / n`
    /// over its context stems; 0 for an empty context.
    pub fn n_value(&self, i: usize) -> f64 {
        if self.per_term[i].is_empty() {
            return 0.0;
        }
        let n = self.n_terms as f64;
        self.per_term[i]
            .iter()
            .map(|(stem, &f)| (f as f64) * (self.weight(stem) as f64) / n)
            .sum()
    }
}

/// Categories whose tokens count as context words.
fn is_context_pos(pos: PosCategory) -> bool {
    matches!(
        pos,
        PosCategory::Noun | PosCategory::Adjective | PosCategory::Verb
    )
}

/// Collect context profiles: for every occurrence of every candidate,
/// the noun/adjective/verb tokens within `window` tokens on either side
/// of the occurrence span (inside the same sentence) contribute their
/// stems; additionally each syntactic variant contributes its added
/// stems, weighted by the variant's frequency.
pub fn build_context_profiles(
    corpus: &Corpus,
    terms: &[CandidateTerm],
    window: usize,
) -> ContextProfiles {
    assert!(window >= 1, "context window must be at least 1");
    let mut sentence_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (idx, sent) in corpus.sentences().iter().enumerate() {
        if let Some(first) = sent.first() {
            sentence_index.insert((first.doc_id, first.sent_idx), idx);
        }
    }
    let mut stem_cache: HashMap<&str, String> = HashMap::new();

    let mut per_term: Vec<BTreeMap<String, u64>> = Vec::with_capacity(terms.len());
    for term in terms {
        let mut context: BTreeMap<String, u64> = BTreeMap::new();
        for occ in &term.occurrences {
            let Some(&sent_pos) = sentence_index.get(&(occ.doc_id, occ.sent_idx)) else {
                continue;
            };
            let sentence = &corpus.sentences()[sent_pos];
            let left = occ.start_idx.saturating_sub(window);
            let end = occ.start_idx + occ.token_len;
            let right = (end + window).min(sentence.len());
            let around = (left..occ.start_idx).chain(end..right);
            for tok_pos in around {
                let token = &sentence[tok_pos];
                if !is_context_pos(token.pos) {
                    continue;
                }
                let stem = stem_cache
                    .entry(token.surface.as_str())
                    .or_insert_with(|| stem_word(&token.surface));
                *context.entry(stem.clone()).or_insert(0) += 1;
            }
        }
        for (variant, added) in find_syntactic_variants(term, terms) {
            for stem in added {
                *context.entry(stem).or_insert(0) += variant.freq;
            }
        }
        per_term.push(context);
    }

    let mut global_t: BTreeMap<String, u64> = BTreeMap::new();
    for context in &per_term {
        for stem in context.keys() {
            *global_t.entry(stem.clone()).or_insert(0) += 1;
        }
    }

    ContextProfiles {
        per_term,
        global_t,
        n_terms: terms.len(),
    }
}

/// Corpus-level unigram and adjacent-pair statistics over stems.
///
/// Pairs never cross sentence boundaries, so the pair denominator is
/// `N_w` minus the number of sentences. Words are keyed by their
/// normalized stem so that variant forms pool their evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct BigramStats {
    unigrams: HashMap<String, u64>,
    pairs: HashMap<(String, String), u64>,
    token_count: u64,
    pair_denominator: u64,
}

impl BigramStats {
    /// Total tokens in the corpus (`N_w`).
    pub fn token_count(&self) -> u64 {
        self.token_count
    }

    /// Probability of observing `stem` in the corpus.
    pub fn p_word(&self, stem: &str) -> f64 {
        let count = self.unigrams.get(stem).copied().unwrap_or(0);
        count as f64 / self.token_count as f64
    }

    /// Probability of observing the adjacent pair, 0 if never adjacent.
    pub fn p_pair(&self, left: &str, right: &str) -> f64 {
        if self.pair_denominator == 0 {
            return 0.0;
        }
        let count = self
            .pairs
            .get(&(left.to_string(), right.to_string()))
            .copied()
            .unwrap_or(0);
        count as f64 / self.pair_denominator as f64
    }
}

/// Count unigram and adjacent-pair stem frequencies over the corpus.
/// Errors on corpora with fewer than two tokens.
pub fn build_bigram_stats(corpus: &Corpus) -> Result<BigramStats> {
    if corpus.token_count() < 2 {
        return Err(Error::InvalidInput(
            "bigram statistics need a corpus of at least 2 tokens".into(),
        ));
    }
    let mut unigrams: HashMap<String, u64> = HashMap::new();
    let mut pairs: HashMap<(String, String), u64> = HashMap::new();
    let mut stem_cache: HashMap<&str, String> = HashMap::new();
    for sentence in corpus.sentences() {
        let stems: Vec<String> = sentence
            .iter()
            .map(|t| {
                stem_cache
                    .entry(t.surface.as_str())
                    .or_insert_with(|| stem_word(&t.surface))
                    .clone()
            })
            .collect();
        for stem in &stems {
            *unigrams.entry(stem.clone()).or_insert(0) += 1;
        }
        for pair in stems.windows(2) {
            *pairs
                .entry((pair[0].clone(), pair[1].clone()))
                .or_insert(0) += 1;
        }
    }
    let token_count = corpus.token_count() as u64;
    Ok(BigramStats {
        unigrams,
        pairs,
        token_count,
        pair_denominator: token_count - corpus.sentence_count() as u64,
    })
}

/// 2x2 co-occurrence table over the extracted terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContingencyTable {
    /// Terms containing both stems.
    pub both: u64,
    /// Terms containing only the first stem.
    pub only_first: u64,
    /// Terms containing only the second stem.
    pub only_second: u64,
    /// Terms containing neither stem.
    pub neither: u64,
}

impl ContingencyTable {
    pub fn new(both: u64, only_first: u64, only_second: u64, neither: u64) -> Self {
        ContingencyTable {
            both,
            only_first,
            only_second,
            neither,
        }
    }

    /// Total number of terms.
    pub fn total(&self) -> u64 {
        self.both + self.only_first + self.only_second + self.neither
    }
}

/// Count, over the candidate terms, how many contain both stems, either
/// one alone, or neither. Membership means the stem occurs anywhere in
/// the term's key.
pub fn build_contingency(w_i: &str, w_j: &str, terms: &[CandidateTerm]) -> ContingencyTable {
    let mut table = ContingencyTable::new(0, 0, 0, 0);
    for term in terms {
        let has_i = term.key.contains_stem(w_i);
        let has_j = term.key.contains_stem(w_j);
        match (has_i, has_j) {
            (true, true) => table.both += 1,
            (true, false) => table.only_first += 1,
            (false, true) => table.only_second += 1,
            (false, false) => table.neither += 1,
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_tagged_corpus, TagsetMap};
    use crate::filter::extract_candidates;
    use crate::normalize::{group_variants, StemKey};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn term(stems: &[&str], freq: u64) -> CandidateTerm {
        CandidateTerm {
            key: StemKey::new(stems.iter().map(|s| s.to_string()).collect()).unwrap(),
            surfaces: BTreeSet::from([stems.join(" ")]),
            freq,
            patterns: BTreeSet::new(),
            occurrences: Vec::new(),
        }
    }

    #[test]
    fn nesting_two_terms() {
        let terms = vec![term(&["X", "Y"], 5), term(&["X", "Y", "Z"], 2)];
        let idx = build_nesting_index(&terms);
        assert_eq!(idx.containers_of(0), &[1]);
        assert!(idx.containers_of(1).is_empty());
    }

    #[test]
    fn nesting_single_term_is_empty() {
        let terms = vec![term(&["X", "Y"], 1)];
        let idx = build_nesting_index(&terms);
        assert!(idx.containers_of(0).is_empty());
    }

    #[test]
    fn nesting_shared_container() {
        let terms = vec![
            term(&["X", "Y"], 1),
            term(&["Y", "Z"], 1),
            term(&["X", "Y", "Z"], 1),
        ];
        let idx = build_nesting_index(&terms);
        assert_eq!(idx.containers_of(0), &[2]);
        assert_eq!(idx.containers_of(1), &[2]);
        assert!(idx.containers_of(2).is_empty());
    }

    fn pipeline(text: &str) -> (Corpus, Vec<CandidateTerm>) {
        let corpus = parse_tagged_corpus(text, &TagsetMap::canonical()).unwrap();
        let occs = extract_candidates(&corpus, 3);
        let terms = group_variants(&occs).unwrap();
        (corpus, terms)
    }

    #[test]
    fn window_context_filters_by_pos() {
        let (corpus, terms) = pipeline("big/adjective X/noun Y/noun now/other");
        // candidate (X, Y) plus the noisy (big X) bigram never forms: big is Adj.
        assert_eq!(terms.len(), 1);
        let profiles = build_context_profiles(&corpus, &terms, 5);
        let ctx = profiles.context_of(0);
        assert_eq!(ctx.len(), 1);
        assert_eq!(ctx.get("big"), Some(&1));
    }

    #[test]
    fn candidate_spanning_sentence_has_window_free_context() {
        let (corpus, terms) = pipeline("X/noun Y/noun");
        let profiles = build_context_profiles(&corpus, &terms, 5);
        assert_eq!(profiles.context_size(0), 0);
        assert_eq!(profiles.n_value(0), 0.0);
    }

    #[test]
    fn variant_additions_count_with_variant_frequency() {
        let text = "X/noun Y/noun W/noun\nX/noun Y/noun W/noun";
        let (corpus, terms) = pipeline(text);
        // terms sorted by key: (X,Y), (X,Y,W), (Y,W)
        let keys: Vec<String> = terms.iter().map(|t| t.key.to_string()).collect();
        let xy = keys.iter().position(|k| k == "X Y").unwrap();
        let profiles = build_context_profiles(&corpus, &terms, 5);
        // W appears twice as window context and twice as variant addition.
        assert!(profiles.context_of(xy).get("W").copied().unwrap_or(0) >= 2);
    }

    #[test]
    fn global_weight_counts_distinct_candidates() {
        let text = "A/noun B/noun ctx/noun\nC/noun D/noun ctx/noun";
        let (corpus, terms) = pipeline(text);
        let profiles = build_context_profiles(&corpus, &terms, 5);
        // exactly the (A,B) and (C,D) bigrams see `ctx` near an occurrence
        assert_eq!(profiles.weight("ctx"), 2);
        let recount = (0..terms.len())
            .filter(|&i| profiles.context_of(i).contains_key("ctx"))
            .count() as u64;
        assert_eq!(profiles.weight("ctx"), recount);
    }

    #[test]
    fn bigram_probabilities_single_sentence() {
        // one two-token sentence: p(A,B) = 1
        let corpus = parse_tagged_corpus("A/noun B/noun", &TagsetMap::canonical()).unwrap();
        let stats = build_bigram_stats(&corpus).unwrap();
        assert_eq!(stats.p_pair("A", "B"), 1.0);
        assert_eq!(stats.p_word("A"), 0.5);
        assert_eq!(stats.p_pair("B", "A"), 0.0);
    }

    #[test]
    fn bigram_pair_denominator_excludes_sentence_breaks() {
        // 100 tokens in one sentence: denominator 99.
        let words: Vec<String> = (0..100)
            .map(|i| format!("w{}/noun", i % 25))
            .collect();
        let corpus =
            parse_tagged_corpus(&words.join(" "), &TagsetMap::canonical()).unwrap();
        let stats = build_bigram_stats(&corpus).unwrap();
        assert_eq!(stats.token_count(), 100);
        // w0 w1 adjacent 4 times (pattern repeats every 25 tokens)
        assert!((stats.p_pair("w0", "w1") - 4.0 / 99.0).abs() < 1e-12);
        assert!((stats.p_word("w0") - 4.0 / 100.0).abs() < 1e-12);
    }

    #[test]
    fn bigram_stats_reject_tiny_corpus() {
        let corpus = parse_tagged_corpus("", &TagsetMap::canonical()).unwrap();
        assert!(build_bigram_stats(&corpus).is_err());
        let corpus = parse_tagged_corpus("a/noun", &TagsetMap::canonical()).unwrap();
        assert!(build_bigram_stats(&corpus).is_err());
    }

    #[test]
    fn contingency_example() {
        let terms = vec![term(&["X", "Y"], 1), term(&["X", "Z"], 1), term(&["Q", "R"], 1)];
        let t = build_contingency("X", "Y", &terms);
        assert_eq!((t.both, t.only_first, t.only_second, t.neither), (1, 1, 0, 1));
        assert_eq!(t.total(), 3);
    }

    #[test]
    fn contingency_degenerate_same_stem() {
        let terms = vec![term(&["X", "Y"], 1)];
        let t = build_contingency("X", "X", &terms);
        assert_eq!((t.both, t.only_first, t.only_second, t.neither), (1, 0, 0, 0));
    }

    #[test]
    fn contingency_absent_stems() {
        let terms = vec![term(&["X", "Y"], 1), term(&["Q", "R"], 1)];
        let t = build_contingency("no", "pe", &terms);
        assert_eq!((t.both, t.only_first, t.only_second, t.neither), (0, 0, 0, 2));
    }

    /// Brute-force pairwise containment used as the nesting oracle.
    fn brute_force_nesting(terms: &[CandidateTerm]) -> Vec<Vec<usize>> {
        terms
            .iter()
            .map(|a| {
                terms
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| {
                        b.len() > a.len() && b.key.contains_contiguous(&a.key)
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect()
    }

    fn random_terms() -> impl Strategy<Value = Vec<CandidateTerm>> {
        let stem = prop::sample::select(vec!["a", "b", "c", "d"]);
        let key = proptest::collection::vec(stem, 2..5);
        proptest::collection::btree_set(key, 1..40).prop_map(|keys| {
            keys.into_iter()
                .map(|stems| {
                    let strs: Vec<&str> = stems.iter().map(|s| &**s).collect();
                    term(&strs, 1)
                })
                .collect()
        })
    }

    #[test]
    fn profiles_follow_term_slice_order() {
        let text = "big/adjective X/noun Y/noun\nY/noun Z/noun big/adjective";
        let (corpus, mut terms) = pipeline(text);
        let baseline: Vec<(String, u64)> = {
            let p = build_context_profiles(&corpus, &terms, 5);
            terms
                .iter()
                .enumerate()
                .map(|(i, t)| (t.key.to_string(), p.context_of(i).values().sum()))
                .collect()
        };
        terms.rotate_left(1);
        let rotated = build_context_profiles(&corpus, &terms, 5);
        for (i, t) in terms.iter().enumerate() {
            let total: u64 = rotated.context_of(i).values().sum();
            let (_, expected) = baseline
                .iter()
                .find(|(k, _)| *k == t.key.to_string())
                .unwrap();
            assert_eq!(total, *expected);
        }
    }

    proptest! {
        #[test]
        fn nesting_matches_brute_force(terms in random_terms()) {
            let idx = build_nesting_index(&terms);
            let oracle = brute_force_nesting(&terms);
            for (i, expected) in oracle.iter().enumerate() {
                prop_assert_eq!(idx.containers_of(i), &expected[..]);
            }
        }

        #[test]
        fn contingency_cells_sum_to_total(terms in random_terms()) {
            let t = build_contingency("a", "b", &terms);
            prop_assert_eq!(t.total(), terms.len() as u64);
        }
    }
}
