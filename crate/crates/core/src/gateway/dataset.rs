use serde::{Deserialize, Serialize};

use super::GatewayError;
use crate::ofs::parse_lines;

/// Appended to every prompt so the model knows where the sentence ends.
pub const PROMPT_SUFFIX: &str = "\n\n###\n\n";
/// Every completion starts with a single space.
pub const COMPLETION_PREFIX: &str = " ";
/// Stop sequence closing every completion.
pub const COMPLETION_STOP: &str = "\nEND";

/// A sentence and its translation, one axiom per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptExample {
    pub prompt: String,
    pub completion: String,
}

impl PromptExample {
    pub fn new(prompt: impl Into<String>, completion: impl Into<String>) -> Self {
        PromptExample {
            prompt: prompt.into(),
            completion: completion.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Line {
    prompt: String,
    completion: String,
}

/// Writes examples as fine-tuning JSON lines with the prompt suffix and
/// completion framing applied.
pub fn export_dataset(examples: &[PromptExample]) -> Result<Vec<u8>, GatewayError> {
    let mut out = Vec::new();
    for (index, ex) in examples.iter().enumerate() {
        parse_lines(&ex.completion)
            .map_err(|error| GatewayError::InvalidExample { index, error })?;
        let line = Line {
            prompt: format!("{}{PROMPT_SUFFIX}", ex.prompt),
            completion: format!("{COMPLETION_PREFIX}{}{COMPLETION_STOP}", ex.completion),
        };
        serde_json::to_writer(&mut out, &line).expect("strings always serialize");
        out.push(b'\n');
    }
    Ok(out)
}

/// Reads JSON lines back into examples, removing the framing when present.
pub fn import_dataset(bytes: &[u8]) -> Result<Vec<PromptExample>, GatewayError> {
    let text = std::str::from_utf8(bytes).map_err(|e| GatewayError::MalformedDataset {
        line: 0,
        message: e.to_string(),
    })?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let line: Line = serde_json::from_str(raw).map_err(|e| GatewayError::MalformedDataset {
            line: i + 1,
            message: e.to_string(),
        })?;
        let prompt = line
            .prompt
            .strip_suffix(PROMPT_SUFFIX)
            .unwrap_or(&line.prompt)
            .to_string();
        let completion = line
            .completion
            .strip_prefix(COMPLETION_PREFIX)
            .unwrap_or(&line.completion);
        let completion = completion
            .strip_suffix(COMPLETION_STOP)
            .unwrap_or(completion)
            .to_string();
        parse_lines(&completion).map_err(|error| GatewayError::InvalidExample {
            index: out.len(),
            error,
        })?;
        out.push(PromptExample { prompt, completion });
    }
    Ok(out)
}
