//! Tagged-corpus model: a token stream parsed from `surface/TAG` lines.
//!
//! The input format is deliberately minimal so that the output of any POS
//! tagger can be converted to it: one sentence per line, tokens separated
//! by whitespace, each token written as `surface/TAG`. The item is split
//! on its *last* slash, so surfaces containing `/` survive. Raw tags are
//! mapped onto a closed five-way category set through a [`TagsetMap`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coarse part-of-speech category. Every raw tag maps to exactly one of
/// these; the extraction patterns and the context filter need no finer
/// distinction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosCategory {
    Noun,
    Adjective,
    Preposition,
    Verb,
    Other,
}

impl PosCategory {
    /// Canonical lowercase name, used in config files and serialization.
    pub fn name(self) -> &'static str {
        match self {
            PosCategory::Noun => "noun",
            PosCategory::Adjective => "adjective",
            PosCategory::Preposition => "preposition",
            PosCategory::Verb => "verb",
            PosCategory::Other => "other",
        }
    }
}

impl fmt::Display for PosCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PosCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "noun" => Ok(PosCategory::Noun),
            "adjective" | "adj" => Ok(PosCategory::Adjective),
            "preposition" | "prep" => Ok(PosCategory::Preposition),
            "verb" => Ok(PosCategory::Verb),
            "other" => Ok(PosCategory::Other),
            _ => Err(Error::InvalidInput(format!(
                "unknown POS category `{s}` (expected noun, adjective, preposition, verb or other)"
            ))),
        }
    }
}

/// One surface word with its category and position in the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub surface: String,
    pub pos: PosCategory,
    pub doc_id: usize,
    pub sent_idx: usize,
    pub tok_idx: usize,
}

/// Mapping from raw tagger output to [`PosCategory`].
///
/// Raw tags are case-sensitive; anything unmapped falls back to the
/// default category, making the mapping a total function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagsetMap {
    map: BTreeMap<String, PosCategory>,
    default: PosCategory,
}

impl TagsetMap {
    pub fn new(default: PosCategory) -> Self {
        TagsetMap {
            map: BTreeMap::new(),
            default,
        }
    }

    /// Map where each category name maps to itself (`Noun` -> Noun, ...).
    /// This is the tagset used when a corpus is serialized back to text.
    pub fn canonical() -> Self {
        let mut m = TagsetMap::new(PosCategory::Other);
        for cat in [
            PosCategory::Noun,
            PosCategory::Adjective,
            PosCategory::Preposition,
            PosCategory::Verb,
            PosCategory::Other,
        ] {
            m.insert(cat.name(), cat);
        }
        m
    }

    pub fn insert(&mut self, raw: impl Into<String>, category: PosCategory) {
        self.map.insert(raw.into(), category);
    }

    pub fn default_category(&self) -> PosCategory {
        self.default
    }

    /// Look a raw tag up, falling back to the default category.
    pub fn lookup(&self, raw: &str) -> PosCategory {
        self.map.get(raw).copied().unwrap_or(self.default)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, PosCategory)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// Map a raw tag through a [`TagsetMap`].
pub fn map_tagset(raw: &str, map: &TagsetMap) -> PosCategory {
    map.lookup(raw)
}

/// An immutable, position-indexed token stream.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    sentences: Vec<Vec<TaggedToken>>,
    token_count: usize,
}

impl Corpus {
    /// Sentences in ingestion order.
    pub fn sentences(&self) -> &[Vec<TaggedToken>] {
        &self.sentences
    }

    /// Total number of tokens (`N_w`).
    pub fn token_count(&self) -> usize {
        self.token_count
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_count == 0
    }

    /// Assemble a corpus from per-document tagged text, numbering the
    /// documents in the order given. Sentence indices restart at 0 for
    /// every document.
    pub fn from_documents<'a, I>(documents: I, map: &TagsetMap) -> Result<Corpus>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut sentences = Vec::new();
        let mut token_count = 0usize;
        for (doc_id, text) in documents.into_iter().enumerate() {
            let doc = parse_document(doc_id, text, map)?;
            for sent in doc {
                token_count += sent.len();
                sentences.push(sent);
            }
        }
        Ok(Corpus {
            sentences,
            token_count,
        })
    }

    /// Serialize back to one `surface/CATEGORY` line per sentence, using
    /// canonical category names as tags. Re-parsing the joined lines with
    /// [`TagsetMap::canonical`] reproduces a single-document corpus
    /// exactly.
    pub fn to_tagged_lines(&self) -> Vec<String> {
        self.sentences
            .iter()
            .map(|sent| {
                sent.iter()
                    .map(|t| format!("{}/{}", t.surface, t.pos.name()))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// Parse tagged text as a single document (`doc_id` 0).
///
/// Each non-empty line becomes one sentence; blank lines are skipped.
/// Empty input parses to an empty corpus. A token without a slash is a
/// parse error naming its line and column.
pub fn parse_tagged_corpus(input: &str, map: &TagsetMap) -> Result<Corpus> {
    Corpus::from_documents([input], map)
}

fn parse_document(
    doc_id: usize,
    text: &str,
    map: &TagsetMap,
) -> Result<Vec<Vec<TaggedToken>>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut sentences = Vec::new();
    let mut sent_idx = 0usize;
    for (line_no, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut tokens = Vec::new();
        for (col, item) in split_items(line) {
            let token = parse_item(item, line_no + 1, col)?;
            tokens.push(TaggedToken {
                surface: token.0.to_string(),
                pos: map.lookup(token.1),
                doc_id,
                sent_idx,
                tok_idx: tokens.len(),
            });
        }
        sentences.push(tokens);
        sent_idx += 1;
    }
    Ok(sentences)
}

/// Split a line into whitespace-separated items, keeping the 1-based
/// character column where each item starts.
fn split_items(line: &str) -> Vec<(usize, &str)> {
    let mut items = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (char column, byte offset)
    let mut col = 0usize;
    for (byte_idx, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((item_col, item_start)) = start.take() {
                items.push((item_col, &line[item_start..byte_idx]));
            }
        } else if start.is_none() {
            start = Some((col, byte_idx));
        }
    }
    if let Some((item_col, item_start)) = start {
        items.push((item_col, &line[item_start..]));
    }
    items
}

fn parse_item(item: &str, line: usize, column: usize) -> Result<(&str, &str)> {
    let slash = item.rfind('/').ok_or_else(|| Error::Parse {
        line,
        column,
        message: format!("token `{item}` has no `/TAG` separator"),
    })?;
    let (surface, tag) = (&item[..slash], &item[slash + 1..]);
    if surface.is_empty() {
        return Err(Error::Parse {
            line,
            column,
            message: format!("token `{item}` has an empty surface form"),
        });
    }
    Ok((surface, tag))
}
