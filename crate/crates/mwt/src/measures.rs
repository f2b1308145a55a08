//! Association measures and ranking.
//!
//! The termhood side is the C-value family: `log2(|a|) * f(a)` for a
//! term that is nested in no longer candidate, and
//! `log2(|a|) * (f(a) - g(a))` otherwise, where `g(a)` averages the
//! frequencies of the containing terms. The frequency slot is pluggable:
//! substituting the T-score-reweighted `F(a)` yields the TC-value and
//! substituting the LLR-reweighted `FL(a)` yields the LC-value. Each of
//! those combines with the contextual N-value as
//! `0.8 * termhood + 0.2 * N-value`, giving the NC-, NTC- and NLC-value
//! rankings. LLR itself ranks a term by the minimum log-likelihood ratio
//! over its constituent stem bigrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalize::CandidateTerm;
use crate::stats::{
    build_contingency, BigramStats, ContextProfiles, ContingencyTable, NestingIndex,
};

/// The rankable measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    Llr,
    C,
    Nc,
    Ntc,
    LlrC,
    Nlc,
}

impl MeasureId {
    /// All measures, in report order.
    pub const ALL: [MeasureId; 6] = [
        MeasureId::Llr,
        MeasureId::C,
        MeasureId::Nc,
        MeasureId::Ntc,
        MeasureId::LlrC,
        MeasureId::Nlc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::Llr => "llr",
            MeasureId::C => "c",
            MeasureId::Nc => "nc",
            MeasureId::Ntc => "ntc",
            MeasureId::LlrC => "llr_c",
            MeasureId::Nlc => "nlc",
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "llr" => Ok(MeasureId::Llr),
            "c" => Ok(MeasureId::C),
            "nc" => Ok(MeasureId::Nc),
            "ntc" => Ok(MeasureId::Ntc),
            "llr_c" | "llr+c" => Ok(MeasureId::LlrC),
            "nlc" => Ok(MeasureId::Nlc),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

/// Weights of the termhood/context combination. The defaults are the
/// 0.8/0.2 split the NC-value family hard-codes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombinationWeights {
    pub term: f64,
    pub context: f64,
}

impl Default for CombinationWeights {
    fn default() -> Self {
        CombinationWeights {
            term: 0.8,
            context: 0.2,
        }
    }
}

impl CombinationWeights {
    pub fn combine(&self, termhood: f64, n_value: f64) -> f64 {
        self.term * termhood + self.context * n_value
    }
}

/// The C-value shell: `log2(len) * freq` for an un-nested term, else
/// `log2(len) * (freq - mean(nested_freqs))`. May go negative when the
/// containers outweigh the term itself.
pub fn c_value(key_len: usize, freq: f64, container_freqs: &[f64]) -> f64 {
    debug_assert!(key_len >= 2, "candidate terms have at least two stems");
    let base = (key_len as f64).log2();
    if container_freqs.is_empty() {
        base * freq
    } else {
        let g = container_freqs.iter().sum::<f64>() / container_freqs.len() as f64;
        base * (freq - g)
    }
}

/// Contextual N-value from `(f_a(b), t(b))` pairs: sum of
/// `f_a(b) * t(b) / n`. Zero for an empty context.
pub fn n_value<I>(context: I, n: f64) -> f64
where
    I: IntoIterator<Item = (f64, f64)>,
{
    context.into_iter().map(|(f, t)| f * t / n).sum()
}

/// NC-style combination with explicit weights.
pub fn nc_value(c: f64, n: f64, weights: CombinationWeights) -> f64 {
    weights.combine(c, n)
}

/// T-score of an adjacent stem pair. Pairs never observed adjacently get
/// negative infinity, which ranks below everything and lands in the
/// non-positive branch of [`reweighted_freq_t`].
pub fn t_score(p_pair: f64, p_first: f64, p_second: f64, token_count: f64) -> f64 {
    if p_pair <= 0.0 {
        return f64::NEG_INFINITY;
    }
    (p_pair - p_first * p_second) / (p_pair / token_count).sqrt()
}

/// T-score looked up from corpus statistics.
pub fn t_score_of(first: &str, second: &str, stats: &BigramStats) -> f64 {
    t_score(
        stats.p_pair(first, second),
        stats.p_word(first),
        stats.p_word(second),
        stats.token_count() as f64,
    )
}

/// `F(a)`: frequency reweighted by the minimum T-score over the term's
/// constituent bigrams. Non-positive minima leave the frequency as is.
pub fn reweighted_freq_t(freq: f64, min_t_score: f64) -> f64 {
    if min_t_score <= 0.0 {
        freq
    } else {
        freq * (2.0 + min_t_score).ln()
    }
}

fn x_ln_x(x: u64) -> f64 {
    if x == 0 {
        0.0
    } else {
        (x as f64) * (x as f64).ln()
    }
}

/// Log-likelihood ratio of a 2x2 contingency table, natural log, with
/// the `0 ln 0 = 0` convention. Non-negative for every valid table.
pub fn llr(table: &ContingencyTable) -> f64 {
    let (a, b, c, d) = (
        table.both,
        table.only_first,
        table.only_second,
        table.neither,
    );
    let n = table.total();
    x_ln_x(a) + x_ln_x(b) + x_ln_x(c) + x_ln_x(d) - x_ln_x(a + b) - x_ln_x(a + c)
        - x_ln_x(b + d)
        - x_ln_x(c + d)
        + x_ln_x(n)
}

/// `FL(a)`: frequency reweighted by the minimum bigram LLR. LLR is
/// non-negative, so the factor `ln(2 + min)` is always positive.
pub fn reweighted_freq_llr(freq: f64, min_llr: f64) -> f64 {
    freq * (2.0 + min_llr).ln()
}

/// Ranked scores of one measure. Ranks are 1-based and form a bijection
/// onto `1..=n`: ties are broken by higher frequency, then shorter key,
/// then lexicographic key order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub measure: MeasureId,
    pub entries: Vec<ScoreEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreEntry {
    /// Index into the term slice the [`Scorer`] was built over.
    pub term: usize,
    pub score: f64,
    pub rank: usize,
}

impl ScoreTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Scoring engine over a frozen term list and its statistics.
///
/// The per-term minimum T-scores and minimum bigram LLRs are computed at
/// construction; [`Scorer::from_parts`] accepts them directly, which is
/// how synthetic reweightings are injected in tests and experiments.
#[derive(Debug, Clone)]
pub struct Scorer<'t> {
    terms: &'t [CandidateTerm],
    nesting: &'t NestingIndex,
    n_values: Vec<f64>,
    min_t_scores: Vec<f64>,
    min_llrs: Vec<f64>,
    weights: CombinationWeights,
}

impl<'t> Scorer<'t> {
    /// Assemble the engine from corpus-derived statistics.
    pub fn new(
        terms: &'t [CandidateTerm],
        nesting: &'t NestingIndex,
        profiles: &ContextProfiles,
        bigrams: &BigramStats,
        weights: CombinationWeights,
    ) -> Scorer<'t> {
        let n_values = (0..terms.len()).map(|i| profiles.n_value(i)).collect();
        let min_t_scores = terms
            .iter()
            .map(|t| {
                key_bigrams(t)
                    .map(|(a, b)| t_score_of(a, b, bigrams))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let min_llrs = terms
            .iter()
            .map(|t| {
                key_bigrams(t)
                    .map(|(a, b)| llr(&build_contingency(a, b, terms)))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        Scorer {
            terms,
            nesting,
            n_values,
            min_t_scores,
            min_llrs,
            weights,
        }
    }

    /// Build from precomputed per-term inputs. Panics if the slices
    /// disagree in length.
    pub fn from_parts(
        terms: &'t [CandidateTerm],
        nesting: &'t NestingIndex,
        n_values: Vec<f64>,
        min_t_scores: Vec<f64>,
        min_llrs: Vec<f64>,
        weights: CombinationWeights,
    ) -> Scorer<'t> {
        assert_eq!(terms.len(), nesting.len());
        assert_eq!(terms.len(), n_values.len());
        assert_eq!(terms.len(), min_t_scores.len());
        assert_eq!(terms.len(), min_llrs.len());
        Scorer {
            terms,
            nesting,
            n_values,
            min_t_scores,
            min_llrs,
            weights,
        }
    }

    pub fn terms(&self) -> &[CandidateTerm] {
        self.terms
    }

    fn c_like(&self, i: usize, freq_of: &dyn Fn(usize) -> f64) -> f64 {
        let container_freqs: Vec<f64> = self
            .nesting
            .containers_of(i)
            .iter()
            .map(|&j| freq_of(j))
            .collect();
        c_value(self.terms[i].len(), freq_of(i), &container_freqs)
    }

    fn raw_freq(&self, i: usize) -> f64 {
        self.terms[i].freq as f64
    }

    pub fn min_t_score(&self, i: usize) -> f64 {
        self.min_t_scores[i]
    }

    pub fn min_llr(&self, i: usize) -> f64 {
        self.min_llrs[i]
    }

    pub fn n_value(&self, i: usize) -> f64 {
        self.n_values[i]
    }

    pub fn c_value(&self, i: usize) -> f64 {
        self.c_like(i, &|j| self.raw_freq(j))
    }

    pub fn nc_value(&self, i: usize) -> f64 {
        self.weights.combine(self.c_value(i), self.n_values[i])
    }

    /// `F(a)` for term `i`.
    pub fn reweighted_freq_t(&self, i: usize) -> f64 {
        reweighted_freq_t(self.raw_freq(i), self.min_t_scores[i])
    }

    pub fn tc_value(&self, i: usize) -> f64 {
        self.c_like(i, &|j| self.reweighted_freq_t(j))
    }

    pub fn ntc_value(&self, i: usize) -> f64 {
        self.weights.combine(self.tc_value(i), self.n_values[i])
    }

    /// `FL(a)` for term `i`.
    pub fn reweighted_freq_llr(&self, i: usize) -> f64 {
        reweighted_freq_llr(self.raw_freq(i), self.min_llrs[i])
    }

    pub fn lc_value(&self, i: usize) -> f64 {
        self.c_like(i, &|j| self.reweighted_freq_llr(j))
    }

    pub fn nlc_value(&self, i: usize) -> f64 {
        self.weights.combine(self.lc_value(i), self.n_values[i])
    }

    /// The LLR + C-value combination, realized as the LC-value: the
    /// termhood/unithood pairing without the contextual component.
    pub fn llr_c_value(&self, i: usize) -> f64 {
        self.lc_value(i)
    }

    pub fn score(&self, measure: MeasureId, i: usize) -> f64 {
        match measure {
            MeasureId::Llr => self.min_llrs[i],
            MeasureId::C => self.c_value(i),
            MeasureId::Nc => self.nc_value(i),
            MeasureId::Ntc => self.ntc_value(i),
            MeasureId::LlrC => self.llr_c_value(i),
            MeasureId::Nlc => self.nlc_value(i),
        }
    }

    /// Rank every term under `measure`, descending by score with the
    /// deterministic tie-break chain.
    pub fn rank(&self, measure: MeasureId) -> ScoreTable {
        let scores: Vec<f64> = (0..self.terms.len())
            .map(|i| self.score(measure, i))
            .collect();
        let order = rank_order(&scores, self.terms);
        let entries = order
            .into_iter()
            .enumerate()
            .map(|(pos, term)| ScoreEntry {
                term,
                score: scores[term],
                rank: pos + 1,
            })
            .collect();
        ScoreTable { measure, entries }
    }
}

/// Adjacent stem pairs of a term's key.
fn key_bigrams(term: &CandidateTerm) -> impl Iterator<Item = (&str, &str)> {
    term.key
        .stems()
        .windows(2)
        .map(|w| (w[0].as_str(), w[1].as_str()))
}

/// Deterministic ranking order: descending score, then descending
/// frequency, then ascending key length, then lexicographic key.
pub fn rank_order(scores: &[f64], terms: &[CandidateTerm]) -> Vec<usize> {
    assert_eq!(scores.len(), terms.len());
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by(|&x, &y| {
        scores[y]
            .total_cmp(&scores[x])
            .then_with(|| terms[y].freq.cmp(&terms[x].freq))
            .then_with(|| terms[x].len().cmp(&terms[y].len()))
            .then_with(|| terms[x].key.cmp(&terms[y].key))
    });
    order
}
