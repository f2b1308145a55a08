//! Pipeline configuration: a TOML file with one section per stage.
//!
//! ```toml
//! [corpus]
//! path = "corpus.txt"            # file, or directory of *.txt documents
//!
//! [tagset]
//! default = "other"
//! [tagset.map]
//! NN = "noun"
//! JJ = "adjective"
//! IN = "preposition"
//! VB = "verb"
//!
//! [extract]
//! l_max = 3
//!
//! [context]
//! window = 5
//!
//! [weights]
//! term = 0.8
//! context = 0.2
//!
//! [rank]
//! measures = ["llr", "c", "nc", "ntc", "llr_c", "nlc"]
//!
//! [evaluate]
//! k = [100, 200, 300]
//! [[evaluate.reference]]
//! path = "agrovoc.txt"
//! label = "agrovoc"
//!
//! [output]
//! dir = "out"
//! ```
//!
//! Relative paths are resolved against the config file's directory.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{PosCategory, TagsetMap};
use crate::error::{Error, Result};
use crate::eval::DEFAULT_PREPOSITION_STOP_WORDS;
use crate::measures::{CombinationWeights, MeasureId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub corpus: CorpusSection,
    #[serde(default)]
    pub tagset: TagsetSection,
    #[serde(default)]
    pub extract: ExtractSection,
    #[serde(default)]
    pub context: ContextSection,
    #[serde(default)]
    pub weights: CombinationWeights,
    #[serde(default)]
    pub rank: RankSection,
    #[serde(default)]
    pub evaluate: EvaluateSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSection {
    /// Tagged-corpus file, or a directory whose `*.txt` files are read
    /// as separate documents in filename order.
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TagsetSection {
    /// Category for unmapped raw tags.
    #[serde(default = "default_category")]
    pub default: String,
    /// `raw_tag = category` pairs.
    #[serde(default)]
    pub map: std::collections::BTreeMap<String, String>,
}

fn default_category() -> String {
    "other".to_string()
}

impl Default for TagsetSection {
    fn default() -> Self {
        TagsetSection {
            default: default_category(),
            map: Default::default(),
        }
    }
}

impl TagsetSection {
    /// Compile into a [`TagsetMap`], validating category names.
    pub fn compile(&self) -> Result<TagsetMap> {
        let default = PosCategory::from_str(&self.default)?;
        let mut map = TagsetMap::new(default);
        for (raw, category) in &self.map {
            map.insert(raw.clone(), PosCategory::from_str(category)?);
        }
        Ok(map)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractSection {
    #[serde(default = "default_l_max")]
    pub l_max: usize,
}

fn default_l_max() -> usize {
    3
}

impl Default for ExtractSection {
    fn default() -> Self {
        ExtractSection { l_max: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSection {
    #[serde(default = "default_window")]
    pub window: usize,
}

fn default_window() -> usize {
    5
}

impl Default for ContextSection {
    fn default() -> Self {
        ContextSection { window: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankSection {
    #[serde(default = "all_measures")]
    pub measures: Vec<MeasureId>,
}

fn all_measures() -> Vec<MeasureId> {
    MeasureId::ALL.to_vec()
}

impl Default for RankSection {
    fn default() -> Self {
        RankSection {
            measures: all_measures(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateSection {
    #[serde(default = "default_ks")]
    pub k: Vec<usize>,
    #[serde(default)]
    pub reference: Vec<ReferenceSpec>,
    /// Stop words dropped from reference terms; defaults to a list of
    /// common Arabic prepositions.
    #[serde(default = "default_stop_words")]
    pub stop_words: Vec<String>,
}

fn default_ks() -> Vec<usize> {
    vec![100, 200, 300]
}

fn default_stop_words() -> Vec<String> {
    DEFAULT_PREPOSITION_STOP_WORDS
        .iter()
        .map(|s| s.to_string())
        .collect()
}

impl Default for EvaluateSection {
    fn default() -> Self {
        EvaluateSection {
            k: default_ks(),
            reference: Vec::new(),
            stop_words: default_stop_words(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    pub path: PathBuf,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_out_dir")]
    pub dir: PathBuf,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: default_out_dir(),
        }
    }
}

impl PipelineConfig {
    /// Read and deserialize a config file, resolving relative paths
    /// against the file's directory.
    pub fn load(path: &Path) -> Result<PipelineConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let mut config: PipelineConfig = toml::from_str(&text).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if let Some(dir) = path.parent() {
            config.resolve_paths(dir);
        }
        Ok(config)
    }

    fn resolve_paths(&mut self, base: &Path) {
        if self.corpus.path.is_relative() {
            self.corpus.path = base.join(&self.corpus.path);
        }
        for spec in &mut self.evaluate.reference {
            if spec.path.is_relative() {
                spec.path = base.join(&spec.path);
            }
        }
        if self.output.dir.is_relative() {
            self.output.dir = base.join(&self.output.dir);
        }
    }

    /// Default configuration around a corpus path.
    pub fn with_corpus(path: impl Into<PathBuf>) -> PipelineConfig {
        PipelineConfig {
            corpus: CorpusSection { path: path.into() },
            tagset: Default::default(),
            extract: Default::default(),
            context: Default::default(),
            weights: Default::default(),
            rank: Default::default(),
            evaluate: Default::default(),
            output: Default::default(),
        }
    }
}

/// Check every invariant the config promises; returns a human-readable
/// violation per broken one, empty when the config is valid.
pub fn validate_config(config: &PipelineConfig) -> Vec<String> {
    let mut violations = Vec::new();
    if config.corpus.path.as_os_str().is_empty() {
        violations.push("corpus.path must not be empty".to_string());
    }
    if config.extract.l_max < 2 {
        violations.push(format!(
            "extract.l_max must be at least 2, got {}",
            config.extract.l_max
        ));
    }
    if config.context.window < 1 {
        violations.push("context.window must be at least 1".to_string());
    }
    let weight_sum = config.weights.term + config.weights.context;
    if (weight_sum - 1.0).abs() > 1e-9 {
        violations.push(format!(
            "weights.term + weights.context must equal 1, got {weight_sum}"
        ));
    }
    if config.weights.term < 0.0 || config.weights.context < 0.0 {
        violations.push("combination weights must be non-negative".to_string());
    }
    if config.rank.measures.is_empty() {
        violations.push("rank.measures must not be empty".to_string());
    }
    if config.evaluate.k.is_empty() {
        violations.push("evaluate.k must not be empty".to_string());
    }
    if config.evaluate.k.contains(&0) {
        violations.push("evaluate.k values must be positive".to_string());
    }
    if config.evaluate.k.windows(2).any(|w| w[0] >= w[1]) {
        violations.push("evaluate.k values must be strictly ascending".to_string());
    }
    if let Err(e) = config.tagset.compile() {
        violations.push(e.to_string());
    }
    let mut labels: Vec<&str> = config
        .evaluate
        .reference
        .iter()
        .map(|r| r.label.as_str())
        .collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != config.evaluate.reference.len() {
        violations.push("reference labels must be distinct".to_string());
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let config = PipelineConfig::with_corpus("corpus.txt");
        assert!(validate_config(&config).is_empty());
        assert_eq!(config.extract.l_max, 3);
        assert_eq!(config.context.window, 5);
        assert_eq!(config.evaluate.k, vec![100, 200, 300]);
        assert_eq!(config.rank.measures.len(), 6);
    }

    #[test]
    fn bad_weights_is_one_violation() {
        let mut config = PipelineConfig::with_corpus("corpus.txt");
        config.weights = CombinationWeights {
            term: 0.9,
            context: 0.2,
        };
        let violations = validate_config(&config);
        assert_eq!(violations.len(), 1);
        assert!(violations[0].contains("weights"));
    }

    #[test]
    fn l_max_one_is_one_violation() {
        let mut config = PipelineConfig::with_corpus("corpus.txt");
        config.extract.l_max = 1;
        let violations = validate_config(&config);
        assert_eq!(violations.len(), 1);
        assert!(violations[0].contains("l_max"));
    }

    #[test]
    fn descending_k_is_rejected() {
        let mut config = PipelineConfig::with_corpus("corpus.txt");
        config.evaluate.k = vec![100, 50];
        assert_eq!(validate_config(&config).len(), 1);
    }

    #[test]
    fn toml_roundtrip_with_tagset() {
        let text = r#"
[corpus]
path = "c.txt"

[tagset]
default = "other"

[tagset.map]
NN = "noun"
JJ = "adjective"

[extract]
l_max = 3

[evaluate]
k = [10, 20]

[[evaluate.reference]]
path = "refs.txt"
label = "agrovoc"
"#;
        let config: PipelineConfig = toml::from_str(text).unwrap();
        assert!(validate_config(&config).is_empty());
        let map = config.tagset.compile().unwrap();
        assert_eq!(map.lookup("NN"), PosCategory::Noun);
        assert_eq!(map.lookup("XYZ"), PosCategory::Other);
        assert_eq!(config.evaluate.reference[0].label, "agrovoc");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = "[corpus]\npath = \"c.txt\"\ntypo = 1\n";
        assert!(toml::from_str::<PipelineConfig>(text).is_err());
    }
}
