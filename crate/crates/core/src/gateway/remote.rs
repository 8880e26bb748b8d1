use std::time::Duration;

use super::prompt::{build_prompt, BackendConfig, CompletionRequest};
use super::validate::{validate_completion, Verdict};
use super::GatewayError;
use crate::store::Ontology;
use crate::translator::{Backend, TranslationResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransportError {
    /// Connection failure or timeout.
    Network(String),
    Status {
        code: u16,
        body: String,
    },
    /// The response arrived but had no completion text at the configured path.
    Decode(String),
}

impl TransportError {
    fn is_transient(&self) -> bool {
        match self {
            TransportError::Network(_) => true,
            TransportError::Status { code, .. } => *code == 429 || *code >= 500,
            TransportError::Decode(_) => false,
        }
    }

    fn into_gateway(self) -> GatewayError {
        match self {
            TransportError::Status {
                code: 401 | 403,
                body,
            } => GatewayError::Auth(body),
            TransportError::Status { code, body } => {
                GatewayError::Network(format!("HTTP {code}: {body}"))
            }
            TransportError::Network(m) => GatewayError::Network(m),
            TransportError::Decode(m) => GatewayError::Network(format!("bad response: {m}")),
        }
    }
}

/// Sends one completion request and returns the raw completion text.
pub trait CompletionTransport: Send + Sync {
    fn complete(&self, request: &CompletionRequest) -> Result<String, TransportError>;
}

/// Blocking HTTP transport for OpenAI-style completion endpoints.
pub struct HttpTransport {
    client: reqwest::blocking::Client,
    endpoint: String,
    api_key: String,
    text_path: String,
}

impl HttpTransport {
    pub fn from_config(config: &BackendConfig) -> Result<Self, GatewayError> {
        let api_key = config.api_key().ok_or_else(|| {
            GatewayError::Auth(format!(
                "no API key: set {} or add api_key to the config file",
                config.api_key_env
            ))
        })?;
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs))
            .build()
            .map_err(|e| GatewayError::Network(e.to_string()))?;
        Ok(HttpTransport {
            client,
            endpoint: config.endpoint.clone(),
            api_key,
            text_path: config.response_text_path.clone(),
        })
    }
}

impl CompletionTransport for HttpTransport {
    fn complete(&self, request: &CompletionRequest) -> Result<String, TransportError> {
        let response = self
            .client
            .post(&self.endpoint)
            .bearer_auth(&self.api_key)
            .json(request)
            .send()
            .map_err(|e| TransportError::Network(e.to_string()))?;
        let status = response.status();
        let body = response
            .text()
            .map_err(|e| TransportError::Network(e.to_string()))?;
        if !status.is_success() {
            return Err(TransportError::Status {
                code: status.as_u16(),
                body,
            });
        }
        let value: serde_json::Value =
            serde_json::from_str(&body).map_err(|e| TransportError::Decode(e.to_string()))?;
        value
            .pointer(&self.text_path)
            .and_then(|v| v.as_str())
            .map(str::to_string)
            .ok_or_else(|| TransportError::Decode(format!("no string at {}", self.text_path)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub max_retries: u32,
    pub initial_backoff: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_retries: 3,
            initial_backoff: Duration::from_secs(1),
        }
    }
}

impl RetryPolicy {
    pub fn immediate(max_retries: u32) -> Self {
        RetryPolicy {
            max_retries,
            initial_backoff: Duration::ZERO,
        }
    }

    fn send(
        &self,
        transport: &dyn CompletionTransport,
        request: &CompletionRequest,
    ) -> Result<String, GatewayError> {
        let mut delay = self.initial_backoff;
        let mut attempt = 0;
        loop {
            match transport.complete(request) {
                Ok(text) => return Ok(text),
                Err(e) if e.is_transient() && attempt < self.max_retries => {
                    attempt += 1;
                    std::thread::sleep(delay);
                    delay *= 2;
                }
                Err(e) => return Err(e.into_gateway()),
            }
        }
    }
}

/// Translates through the HTTP endpoint named in `config`.
pub fn translate_remote(
    sentence: &str,
    config: &BackendConfig,
    ontology: &Ontology,
) -> Result<TranslationResult, GatewayError> {
    let request = build_prompt(sentence, config)?;
    let transport = HttpTransport::from_config(config)?;
    run(
        sentence,
        request,
        ontology,
        &transport,
        &RetryPolicy::default(),
    )
}

/// Same as [`translate_remote`] with an explicit transport and retry policy.
pub fn translate_remote_with(
    sentence: &str,
    config: &BackendConfig,
    ontology: &Ontology,
    transport: &dyn CompletionTransport,
    retry: &RetryPolicy,
) -> Result<TranslationResult, GatewayError> {
    let request = build_prompt(sentence, config)?;
    run(sentence, request, ontology, transport, retry)
}

fn run(
    sentence: &str,
    request: CompletionRequest,
    ontology: &Ontology,
    transport: &dyn CompletionTransport,
    retry: &RetryPolicy,
) -> Result<TranslationResult, GatewayError> {
    let raw = retry.send(transport, &request)?;
    if raw.trim().is_empty() {
        return Err(GatewayError::EmptyCompletion);
    }
    let outcome = validate_completion(&raw, ontology);
    if outcome.verdict == Verdict::Unusable {
        return Err(GatewayError::UnusableCompletion(outcome));
    }
    Ok(TranslationResult {
        sentence: sentence.trim().to_string(),
        axioms: outcome.valid_axioms,
        backend: Backend::Llm,
        pattern_id: None,
        raw_completion: Some(raw),
        rejected: outcome.rejected,
    })
}
