//! Scoring of translations against gold completions.
//!
//! Axiom-level metrics compare canonical sets, so ordering and operand order
//! never matter. Token accuracy compares surface text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::gateway::PromptExample;
use crate::ofs::{canonical_set, parse_axiom, parse_lines, serialize, Axiom, CanonicalSet};

/// Splits OFS text into tokens: parentheses stand alone, everything else is
/// separated by whitespace.
pub fn tokens(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() || c == '(' || c == ')' {
            if let Some(s) = start.take() {
                out.push(&text[s..i]);
            }
            if !c.is_whitespace() {
                out.push(&text[i..i + 1]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    out
}

fn lcs_len(a: &[&str], b: &[&str]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Longest common token subsequence divided by the longer sequence length.
/// Two empty texts score 1.
pub fn token_accuracy(gold: &str, predicted: &str) -> f64 {
    let g = tokens(gold);
    let p = tokens(predicted);
    let longest = g.len().max(p.len());
    if longest == 0 {
        return 1.0;
    }
    lcs_len(&g, &p) as f64 / longest as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub exact: bool,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub token_accuracy: f64,
    /// No line of the prediction parsed, or the backend failed.
    pub parse_failed: bool,
}

impl PairScore {
    fn failed(token_accuracy: f64) -> Self {
        PairScore {
            exact: false,
            precision: 0.0,
            recall: 0.0,
            f1: 0.0,
            token_accuracy,
            parse_failed: true,
        }
    }
}

fn strip_framing(raw: &str) -> String {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && *l != "END")
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_prediction(text: &str) -> Option<CanonicalSet> {
    let parsed: Vec<Axiom> = text.lines().filter_map(|l| parse_axiom(l).ok()).collect();
    if parsed.is_empty() {
        None
    } else {
        Some(canonical_set(&parsed))
    }
}

/// Scores a raw prediction against a gold completion.
///
/// # Panics
/// If the gold text does not parse.
pub fn score_pair(gold: &str, raw: &str) -> PairScore {
    let gold_set = canonical_set(&parse_lines(gold).expect("gold completion must parse"));
    let predicted = strip_framing(raw);
    let acc = token_accuracy(gold, &predicted);
    let Some(pred_set) = parse_prediction(&predicted) else {
        return PairScore::failed(acc);
    };
    let hits = gold_set.intersection(&pred_set).count() as f64;
    let precision = hits / pred_set.len() as f64;
    let recall = if gold_set.is_empty() {
        1.0
    } else {
        hits / gold_set.len() as f64
    };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    PairScore {
        exact: gold_set == pred_set,
        precision,
        recall,
        f1,
        token_accuracy: acc,
        parse_failed: false,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub prompt: String,
    pub gold: String,
    pub predicted: Option<String>,
    pub error: Option<String>,
    pub score: PairScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub exact_match_rate: f64,
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub mean_f1: f64,
    pub mean_token_accuracy: f64,
    pub parse_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub summary: Summary,
    pub rows: Vec<EvalRow>,
}

impl EvalReport {
    fn from_rows(rows: Vec<EvalRow>) -> Self {
        let n = rows.len();
        let mean = |f: fn(&PairScore) -> f64| {
            if n == 0 {
                0.0
            } else {
                rows.iter().map(|r| f(&r.score)).sum::<f64>() / n as f64
            }
        };
        let summary = Summary {
            count: n,
            exact_match_rate: mean(|s| if s.exact { 1.0 } else { 0.0 }),
            mean_precision: mean(|s| s.precision),
            mean_recall: mean(|s| s.recall),
            mean_f1: mean(|s| s.f1),
            mean_token_accuracy: mean(|s| s.token_accuracy),
            parse_failures: rows.iter().filter(|r| r.score.parse_failed).count(),
        };
        EvalReport { summary, rows }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report always serializes")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<4} {:<5} {:>6} {:>6} {:>6} {:>6}  sentence",
            "#", "exact", "P", "R", "F1", "tok"
        )
        .unwrap();
        for (i, r) in self.rows.iter().enumerate() {
            let s = &r.score;
            let exact = if s.parse_failed {
                "FAIL"
            } else if s.exact {
                "yes"
            } else {
                "no"
            };
            writeln!(
                out,
                "{:<4} {:<5} {:>6.3} {:>6.3} {:>6.3} {:>6.3}  {}",
                i + 1,
                exact,
                s.precision,
                s.recall,
                s.f1,
                s.token_accuracy,
                r.prompt
            )
            .unwrap();
        }
        let m = &self.summary;
        writeln!(
            out,
            "\n{} pairs  exact {:.3}  P {:.3}  R {:.3}  F1 {:.3}  tok {:.3}  parse failures {}",
            m.count,
            m.exact_match_rate,
            m.mean_precision,
            m.mean_recall,
            m.mean_f1,
            m.mean_token_accuracy,
            m.parse_failures
        )
        .unwrap();
        out
    }
}

fn score_example<B>(ex: &PromptExample, backend: &B) -> EvalRow
where
    B: Fn(&str) -> Result<String, String> + ?Sized,
{
    match backend(&ex.prompt) {
        Ok(raw) => EvalRow {
            score: score_pair(&ex.completion, &raw),
            prompt: ex.prompt.clone(),
            gold: ex.completion.clone(),
            predicted: Some(raw),
            error: None,
        },
        Err(e) => EvalRow {
            score: PairScore::failed(token_accuracy(&ex.completion, "")),
            prompt: ex.prompt.clone(),
            gold: ex.completion.clone(),
            predicted: None,
            error: Some(e),
        },
    }
}

pub fn evaluate_sequential<B>(dataset: &[PromptExample], backend: &B) -> EvalReport
where
    B: Fn(&str) -> Result<String, String> + Sync + ?Sized,
{
    EvalReport::from_rows(
        dataset
            .iter()
            .map(|ex| score_example(ex, backend))
            .collect(),
    )
}

#[cfg(feature = "parallel")]
pub fn evaluate_parallel<B>(dataset: &[PromptExample], backend: &B) -> EvalReport
where
    B: Fn(&str) -> Result<String, String> + Sync + ?Sized,
{
    use rayon::prelude::*;
    EvalReport::from_rows(
        dataset
            .par_iter()
            .map(|ex| score_example(ex, backend))
            .collect(),
    )
}

/// Runs `backend` over every prompt and scores the result. Uses all cores
/// when the `parallel` feature is on. Row order follows the dataset.
pub fn evaluate<B>(dataset: &[PromptExample], backend: &B) -> EvalReport
where
    B: Fn(&str) -> Result<String, String> + Sync + ?Sized,
{
    #[cfg(feature = "parallel")]
    {
        evaluate_parallel(dataset, backend)
    }
    #[cfg(not(feature = "parallel"))]
    {
        evaluate_sequential(dataset, backend)
    }
}

/// The rule-based translator as an evaluation backend.
pub fn pattern_backend(sentence: &str) -> Result<String, String> {
    crate::translator::translate(sentence)
        .map(|r| serialize(&r.axioms, false))
        .map_err(|e| e.to_string())
}
