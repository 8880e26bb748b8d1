use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dataset::{PromptExample, COMPLETION_PREFIX, COMPLETION_STOP, PROMPT_SUFFIX};
use super::GatewayError;

/// Environment variable holding the API key.
pub const API_KEY_ENV: &str = "ONTOFORGE_LLM_API_KEY";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    ZeroShot,
    FewShot { examples: Vec<PromptExample> },
    FineTuned { model: String },
}

fn default_endpoint() -> String {
    "https://api.openai.com/v1/completions".into()
}
fn default_model() -> String {
    "davinci-002".into()
}
fn default_max_tokens() -> u32 {
    256
}
fn default_key_env() -> String {
    API_KEY_ENV.into()
}
fn default_text_path() -> String {
    "/choices/0/text".into()
}
fn default_timeout() -> u64 {
    30
}

/// Remote backend settings, usually read from a JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendConfig {
    pub strategy: Strategy,
    #[serde(default = "default_endpoint")]
    pub endpoint: String,
    /// Model used by the zero- and few-shot strategies.
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "default_max_tokens")]
    pub max_tokens: u32,
    /// Name of the environment variable that holds the API key.
    #[serde(default = "default_key_env")]
    pub api_key_env: String,
    /// Key stored in the config file itself; the environment wins if both exist.
    #[serde(default, skip_serializing)]
    pub api_key: Option<String>,
    /// JSON pointer to the completion text in the response body.
    #[serde(default = "default_text_path")]
    pub response_text_path: String,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig {
            strategy: Strategy::ZeroShot,
            endpoint: default_endpoint(),
            model: default_model(),
            temperature: 0.0,
            max_tokens: default_max_tokens(),
            api_key_env: default_key_env(),
            api_key: None,
            response_text_path: default_text_path(),
            timeout_secs: default_timeout(),
        }
    }
}

impl BackendConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        BackendConfig {
            strategy,
            ..Self::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GatewayError> {
        let config: BackendConfig =
            serde_json::from_str(text).map_err(|e| GatewayError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, GatewayError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GatewayError::InvalidConfig(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), GatewayError> {
        if !(0.0..=1.0).contains(&self.temperature) {
            return Err(GatewayError::InvalidConfig(format!(
                "temperature {} is outside [0, 1]",
                self.temperature
            )));
        }
        if let Strategy::FewShot { examples } = &self.strategy {
            if examples.is_empty() {
                return Err(GatewayError::InvalidConfig(
                    "few-shot strategy needs at least one example".into(),
                ));
            }
        }
        if self.timeout_secs == 0 {
            return Err(GatewayError::InvalidConfig(
                "timeout must be positive".into(),
            ));
        }
        Ok(())
    }

    /// API key from the environment, falling back to the config file.
    pub fn api_key(&self) -> Option<String> {
        std::env::var(&self.api_key_env)
            .ok()
            .filter(|k| !k.is_empty())
            .or_else(|| self.api_key.clone())
    }
}

/// JSON body sent to the completions endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub model: String,
    pub prompt: String,
    pub temperature: f64,
    pub max_tokens: u32,
    pub stop: Vec<String>,
}

const FEW_SHOT_HEADER: &str =
    "Translate each English sentence into OWL Functional Syntax axioms, one axiom per line.\n\n";

/// Builds the request for `sentence` under the configured strategy.
pub fn build_prompt(
    sentence: &str,
    config: &BackendConfig,
) -> Result<CompletionRequest, GatewayError> {
    let sentence = sentence.trim();
    if sentence.is_empty() {
        return Err(GatewayError::EmptySentence);
    }
    let (model, prompt) = match &config.strategy {
        Strategy::ZeroShot => (
            config.model.clone(),
            format!("Translate '{sentence}' into Functional Syntax"),
        ),
        Strategy::FewShot { examples } => {
            let mut prompt = String::from(FEW_SHOT_HEADER);
            for ex in examples {
                prompt.push_str(&ex.prompt);
                prompt.push_str(PROMPT_SUFFIX);
                prompt.push_str(COMPLETION_PREFIX);
                prompt.push_str(&ex.completion);
                prompt.push_str(COMPLETION_STOP);
                prompt.push_str("\n\n");
            }
            prompt.push_str(sentence);
            prompt.push_str(PROMPT_SUFFIX);
            (config.model.clone(), prompt)
        }
        Strategy::FineTuned { model } => (model.clone(), format!("{sentence}{PROMPT_SUFFIX}")),
    };
    Ok(CompletionRequest {
        model,
        prompt,
        temperature: config.temperature,
        max_tokens: config.max_tokens,
        stop: vec![COMPLETION_STOP.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::export_dataset;
    use crate::gold::gold_examples;

    #[test]
    fn zero_shot_wraps_the_sentence_in_an_instruction() {
        let req = build_prompt("Anna is a girl", &BackendConfig::default()).unwrap();
        assert!(req
            .prompt
            .contains("Translate 'Anna is a girl' into Functional Syntax"));
        assert_eq!(req.stop, vec!["\nEND"]);
        assert_eq!(req.temperature, 0.0);
    }

    #[test]
    fn fine_tuned_prompt_matches_the_dataset_framing() {
        let config = BackendConfig::with_strategy(Strategy::FineTuned {
            model: "ft:davinci:onto".into(),
        });
        let req = build_prompt("Anna is a girl", &config).unwrap();
        assert_eq!(req.prompt, "Anna is a girl\n\n###\n\n");
        assert_eq!(req.model, "ft:davinci:onto");

        // the exported training prompt for the same sentence carries the same text
        let exported = String::from_utf8(export_dataset(&gold_examples()[..1]).unwrap()).unwrap();
        let line: serde_json::Value = serde_json::from_str(exported.trim()).unwrap();
        assert_eq!(line["prompt"], req.prompt);
    }

    #[test]
    fn few_shot_lists_examples_before_the_target() {
        let config = BackendConfig::with_strategy(Strategy::FewShot {
            examples: gold_examples()[..1].to_vec(),
        });
        let req = build_prompt("Lana is a girl", &config).unwrap();
        let ex_at = req.prompt.find("Anna is a girl\n\n###\n\n ").unwrap();
        let target_at = req.prompt.rfind("Lana is a girl\n\n###\n\n").unwrap();
        assert!(ex_at < target_at);
        assert!(req.prompt.ends_with("Lana is a girl\n\n###\n\n"));
        assert!(req.prompt.contains("ClassAssertion(:girl :Anna)\nEND"));

        assert_eq!(build_prompt("", &config), Err(GatewayError::EmptySentence));
        assert_eq!(
            build_prompt("  ", &config),
            Err(GatewayError::EmptySentence)
        );
    }

    #[test]
    fn request_body_has_the_expected_fields() {
        let req = build_prompt("x", &BackendConfig::default()).unwrap();
        let v = serde_json::to_value(&req).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["max_tokens", "model", "prompt", "stop", "temperature"]
        );
    }

    #[test]
    fn config_validation() {
        let cfg = BackendConfig::from_json(r#"{"strategy":{"kind":"zero_shot"}}"#).unwrap();
        assert_eq!(cfg.temperature, 0.0);
        assert_eq!(cfg.timeout_secs, 30);
        assert_eq!(cfg.api_key_env, API_KEY_ENV);
        assert!(
            BackendConfig::from_json(r#"{"strategy":{"kind":"few_shot","examples":[]}}"#).is_err()
        );
        assert!(
            BackendConfig::from_json(r#"{"strategy":{"kind":"zero_shot"},"temperature":1.5}"#)
                .is_err()
        );
        let ft = BackendConfig::from_json(
            r#"{"strategy":{"kind":"fine_tuned","model":"m"},"endpoint":"http://localhost:1/v1"}"#,
        )
        .unwrap();
        assert_eq!(ft.strategy, Strategy::FineTuned { model: "m".into() });
    }

    #[test]
    fn config_key_is_never_written_back() {
        let cfg = BackendConfig {
            api_key: Some("secret".into()),
            ..Default::default()
        };
        assert!(!serde_json::to_string(&cfg).unwrap().contains("secret"));
    }
}
