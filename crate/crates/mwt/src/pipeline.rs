//! End-to-end pipeline: ingest, extract, merge, count, rank, evaluate,
//! and write report artifacts.
//!
//! Every artifact is deterministic: identical inputs and config produce
//! byte-identical files, which the test suite checks across repeated
//! runs and thread counts. Stage timings are collected in the returned
//! [`RunManifest`] but deliberately left out of `manifest.json` so the
//! written artifacts stay reproducible.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::config::PipelineConfig;
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::eval::{evaluate_all, load_reference, EvalReport, ReferenceList};
use crate::filter::{extract_candidates, CandidateOccurrence};
use crate::fmt::{round_sig9, sig9};
use crate::measures::{MeasureId, ScoreTable, Scorer};
use crate::normalize::{group_variants, CandidateTerm};
use crate::stats::{
    build_bigram_stats, build_context_profiles, build_nesting_index, BigramStats,
    ContextProfiles, NestingIndex,
};

/// Everything the statistical filter needs, frozen after construction.
#[derive(Debug)]
pub struct PipelineData {
    pub corpus: Corpus,
    pub occurrences: Vec<CandidateOccurrence>,
    pub terms: Vec<CandidateTerm>,
    pub nesting: NestingIndex,
    pub profiles: ContextProfiles,
    pub bigrams: BigramStats,
}

impl PipelineData {
    /// Run ingest through statistics. Errors carry the failing stage.
    pub fn prepare(config: &PipelineConfig) -> Result<PipelineData> {
        let corpus = load_corpus(config).map_err(|e| Error::stage("ingest", e))?;
        if corpus.is_empty() {
            return Err(Error::Stage {
                stage: "extract",
                message: "corpus contains no tokens".into(),
            });
        }
        let occurrences = extract_candidates(&corpus, config.extract.l_max);
        if occurrences.is_empty() {
            return Err(Error::Stage {
                stage: "extract",
                message: "no candidate occurrences matched the patterns".into(),
            });
        }
        let terms =
            group_variants(&occurrences).map_err(|e| Error::stage("normalize", e))?;
        let nesting = build_nesting_index(&terms);
        let profiles = build_context_profiles(&corpus, &terms, config.context.window);
        let bigrams = build_bigram_stats(&corpus).map_err(|e| Error::stage("stats", e))?;
        Ok(PipelineData {
            corpus,
            occurrences,
            terms,
            nesting,
            profiles,
            bigrams,
        })
    }

    pub fn scorer(&self, config: &PipelineConfig) -> Scorer<'_> {
        Scorer::new(
            &self.terms,
            &self.nesting,
            &self.profiles,
            &self.bigrams,
            config.weights,
        )
    }
}

/// Read the corpus behind `config.corpus.path`: a single tagged file, or
/// a directory whose `*.txt` entries are parsed as one document each, in
/// filename order.
pub fn load_corpus(config: &PipelineConfig) -> Result<Corpus> {
    let path = &config.corpus.path;
    let map = config.tagset.compile()?;
    let meta = std::fs::metadata(path)?;
    if meta.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
            .collect();
        files.sort();
        let mut documents = Vec::with_capacity(files.len());
        for file in files {
            documents.push(std::fs::read_to_string(file)?);
        }
        Corpus::from_documents(documents.iter().map(String::as_str), &map)
    } else {
        let text = std::fs::read_to_string(path)?;
        crate::corpus::parse_tagged_corpus(&text, &map)
    }
}

/// Load the configured reference lists, in config order.
pub fn load_references(config: &PipelineConfig) -> Result<Vec<ReferenceList>> {
    config
        .evaluate
        .reference
        .iter()
        .map(|spec| load_reference(&spec.path, &spec.label, &config.evaluate.stop_words))
        .collect()
}

/// Reproducibility record of one pipeline run. Stage timings are kept on
/// the struct for display but skipped during serialization.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub config: PipelineConfig,
    pub token_count: usize,
    pub sentence_count: usize,
    /// Candidate occurrences before variant merging.
    pub occurrence_count: usize,
    /// Candidate terms after variant merging.
    pub term_count: usize,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub stage_timings: Vec<(String, Duration)>,
}

struct StageClock {
    timings: Vec<(String, Duration)>,
    last: Instant,
}

impl StageClock {
    fn start() -> Self {
        StageClock {
            timings: Vec::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push((stage.to_string(), now - self.last));
        self.last = now;
    }
}

/// Run the whole pipeline and write all artifacts into the output
/// directory (the config's `output.dir` unless overridden).
///
/// Written files: `candidates.tsv`, `stats.tsv`, one `rank.<measure>.tsv`
/// per configured measure, `eval.tsv` + `eval.json` when reference lists
/// are configured, and `manifest.json`.
pub fn run_pipeline(
    config: &PipelineConfig,
    out_override: Option<&Path>,
) -> Result<RunManifest> {
    let out_dir = out_override.unwrap_or(&config.output.dir);
    let mut clock = StageClock::start();

    let data = PipelineData::prepare(config)?;
    clock.lap("prepare");

    let scorer = data.scorer(config);
    let tables: Vec<ScoreTable> = config
        .rank
        .measures
        .iter()
        .map(|&m| scorer.rank(m))
        .collect();
    clock.lap("rank");

    let report = if config.evaluate.reference.is_empty() {
        None
    } else {
        let refs = load_references(config).map_err(|e| Error::stage("evaluate", e))?;
        let mut report = evaluate_all(&tables, &data.terms, &refs, &config.evaluate.k)
            .map_err(|e| Error::stage("evaluate", e))?;
        for measure in &mut report.measures {
            for cell in &mut measure.cells {
                cell.precision = round_sig9(cell.precision);
            }
        }
        Some(report)
    };
    clock.lap("evaluate");

    std::fs::create_dir_all(out_dir)?;
    let mut artifacts = Vec::new();
    let mut write = |name: String, contents: String| -> Result<()> {
        std::fs::write(out_dir.join(&name), contents)?;
        artifacts.push(name);
        Ok(())
    };

    write("candidates.tsv".into(), candidates_tsv(&data.occurrences))?;
    write(
        "stats.tsv".into(),
        stats_tsv(&data.terms, &data.nesting, &data.profiles),
    )?;
    for table in &tables {
        write(
            format!("rank.{}.tsv", table.measure),
            rank_tsv(table, &data.terms, None),
        )?;
    }
    if let Some(report) = &report {
        write("eval.tsv".into(), eval_tsv(report))?;
        let json = serde_json::to_string_pretty(report)
            .map_err(|e| Error::Stage {
                stage: "report",
                message: e.to_string(),
            })?;
        write("eval.json".into(), json + "\n")?;
    }
    clock.lap("report");

    let mut manifest = RunManifest {
        config: config.clone(),
        token_count: data.corpus.token_count(),
        sentence_count: data.corpus.sentence_count(),
        occurrence_count: data.occurrences.len(),
        term_count: data.terms.len(),
        artifacts,
        stage_timings: Vec::new(),
    };
    let manifest_json =
        serde_json::to_string_pretty(&manifest).map_err(|e| Error::Stage {
            stage: "report",
            message: e.to_string(),
        })?;
    std::fs::write(out_dir.join("manifest.json"), manifest_json + "\n")?;
    manifest.artifacts.push("manifest.json".into());
    manifest.stage_timings = clock.timings;
    Ok(manifest)
}

/// TSV of candidate occurrences: doc, sentence, start, length, pattern,
/// space-joined surface.
pub fn candidates_tsv(occurrences: &[CandidateOccurrence]) -> String {
    let mut out = String::from("doc\tsentence\tstart\tlength\tpattern\tsurface\n");
    for occ in occurrences {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            occ.doc_id,
            occ.sent_idx,
            occ.start_idx,
            occ.len(),
            occ.pattern,
            occ.surface()
        ));
    }
    out
}

/// TSV of per-term counts: key, f(a), |T_a|, |C_a|.
pub fn stats_tsv(
    terms: &[CandidateTerm],
    nesting: &NestingIndex,
    profiles: &ContextProfiles,
) -> String {
    let mut out = String::from("key\tf\tnested_in\tcontext_words\n");
    for (i, term) in terms.iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            term.key,
            term.freq,
            nesting.cardinality(i),
            profiles.context_size(i)
        ));
    }
    out
}

/// TSV of one ranking: rank, score, f, length, key, sample surface.
/// `top` truncates to the best `top` rows when given.
pub fn rank_tsv(table: &ScoreTable, terms: &[CandidateTerm], top: Option<usize>) -> String {
    let mut out = String::from("rank\tscore\tf\tlength\tkey\tsurface\n");
    let limit = top.unwrap_or(table.len()).min(table.len());
    for entry in &table.entries[..limit] {
        let term = &terms[entry.term];
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            entry.rank,
            sig9(entry.score),
            term.freq,
            term.len(),
            term.key,
            term.sample_surface()
        ));
    }
    out
}

/// TSV rendering of an evaluation report: the measure-by-k precision
/// matrix, a blank line, then per-source match counts.
pub fn eval_tsv(report: &EvalReport) -> String {
    let mut out = String::from("measure");
    for k in &report.ks {
        out.push_str(&format!("\tp@{k}"));
    }
    out.push('\n');
    for m in &report.measures {
        out.push_str(m.measure.name());
        for cell in &m.cells {
            out.push('\t');
            out.push_str(&sig9(cell.precision));
        }
        out.push('\n');
    }
    out.push('\n');
    out.push_str("source\tmeasure");
    for k in &report.ks {
        out.push_str(&format!("\tmatched@{k}"));
    }
    out.push('\n');
    for source in &report.sources {
        for m in &report.measures {
            out.push_str(&format!("{source}\t{}", m.measure.name()));
            for cell in &m.cells {
                out.push_str(&format!(
                    "\t{}",
                    cell.per_source.get(source).copied().unwrap_or(0)
                ));
            }
            out.push('\n');
        }
    }
    out
}

/// Convenience used by the CLI `rank` subcommand.
pub fn rank_one(
    data: &PipelineData,
    config: &PipelineConfig,
    measure: MeasureId,
) -> ScoreTable {
    data.scorer(config).rank(measure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    fn tiny_corpus() -> &'static str {
        "تلوث/NN الهواء/NN يهدد/VB البيئة/NN\n\
         تلوث/NN الهواء/NN الخطير/JJ\n\
         برميل/NN من/IN النفط/NN\n\
         برميل/NN نفطي/JJ\n"
    }

    fn config_in(dir: &Path) -> PipelineConfig {
        let corpus = write_file(dir, "corpus.txt", tiny_corpus());
        let mut config = PipelineConfig::with_corpus(corpus);
        config.tagset.map.insert("NN".into(), "noun".into());
        config.tagset.map.insert("JJ".into(), "adjective".into());
        config.tagset.map.insert("IN".into(), "preposition".into());
        config.tagset.map.insert("VB".into(), "verb".into());
        config.output.dir = dir.join("out");
        config
    }

    #[test]
    fn pipeline_writes_expected_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let refs = write_file(dir.path(), "refs.txt", "تلوث الهواء\nبرميل نفطي\n");
        let mut config = config_in(dir.path());
        config.evaluate.reference.push(crate::config::ReferenceSpec {
            path: refs,
            label: "agrovoc".into(),
        });
        config.evaluate.k = vec![1, 2, 3];
        let manifest = run_pipeline(&config, None).unwrap();

        let out = &config.output.dir;
        assert!(out.join("candidates.tsv").exists());
        assert!(out.join("stats.tsv").exists());
        for m in MeasureId::ALL {
            assert!(out.join(format!("rank.{m}.tsv")).exists());
        }
        assert!(out.join("eval.tsv").exists());
        assert!(out.join("eval.json").exists());
        assert!(out.join("manifest.json").exists());

        // manifest counts match emitted file row counts
        let candidates = std::fs::read_to_string(out.join("candidates.tsv")).unwrap();
        assert_eq!(candidates.lines().count(), manifest.occurrence_count + 1);
        let stats = std::fs::read_to_string(out.join("stats.tsv")).unwrap();
        assert_eq!(stats.lines().count(), manifest.term_count + 1);
        // the nisba and prepositional barrel forms merged
        assert!(manifest.term_count < manifest.occurrence_count);
    }

    #[test]
    fn single_measure_config_writes_single_ranking() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = config_in(dir.path());
        config.rank.measures = vec![MeasureId::Nc];
        run_pipeline(&config, None).unwrap();
        let rank_files: Vec<_> = std::fs::read_dir(&config.output.dir)
            .unwrap()
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .filter(|n| n.starts_with("rank."))
            .collect();
        assert_eq!(rank_files, vec!["rank.nc.tsv".to_string()]);
    }

    #[test]
    fn empty_corpus_fails_at_extract_stage() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = write_file(dir.path(), "empty.txt", "");
        let mut config = PipelineConfig::with_corpus(corpus);
        config.output.dir = dir.path().join("out");
        let err = run_pipeline(&config, None).unwrap_err();
        match err {
            Error::Stage { stage, .. } => assert_eq!(stage, "extract"),
            other => panic!("expected stage error, got {other:?}"),
        }
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let config = config_in(dir.path());
        run_pipeline(&config, None).unwrap();
        let first: Vec<(String, Vec<u8>)> = read_dir_sorted(&config.output.dir);
        run_pipeline(&config, None).unwrap();
        let second = read_dir_sorted(&config.output.dir);
        assert_eq!(first, second);
    }

    fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
        let mut entries: Vec<_> = std::fs::read_dir(dir)
            .unwrap()
            .filter_map(|e| e.ok())
            .map(|e| {
                (
                    e.file_name().to_string_lossy().into_owned(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        entries.sort();
        entries
    }

    #[test]
    fn directory_corpus_reads_documents_in_filename_order() {
        let dir = tempfile::tempdir().unwrap();
        let corpus_dir = dir.path().join("docs");
        std::fs::create_dir(&corpus_dir).unwrap();
        write_file(&corpus_dir, "b.txt", "X/noun Y/noun");
        write_file(&corpus_dir, "a.txt", "A/noun B/noun");
        write_file(&corpus_dir, "ignored.dat", "Z/noun Z/noun");
        let mut config = PipelineConfig::with_corpus(&corpus_dir);
        config.tagset.default = "noun".into();
        let corpus = load_corpus(&config).unwrap();
        assert_eq!(corpus.token_count(), 4);
        assert_eq!(corpus.sentences()[0][0].surface, "A");
        assert_eq!(corpus.sentences()[1][0].doc_id, 1);
    }
}
