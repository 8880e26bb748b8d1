//! Everything needed to use a remote completion model as a translator:
//! prompt construction for zero-shot, few-shot and fine-tuned strategies,
//! JSON-lines dataset export, and line-by-line validation of completions.

mod dataset;
mod prompt;
mod remote;
mod validate;

use thiserror::Error;

use crate::ofs::ParseError;

pub use dataset::{
    export_dataset, import_dataset, PromptExample, COMPLETION_PREFIX, COMPLETION_STOP,
    PROMPT_SUFFIX,
};
pub use prompt::{build_prompt, BackendConfig, CompletionRequest, Strategy, API_KEY_ENV};
pub use remote::{
    translate_remote, translate_remote_with, CompletionTransport, HttpTransport, RetryPolicy,
    TransportError,
};
pub use validate::{
    check_axiom, validate_completion, RejectReason, Rejection, ValidationOutcome, Verdict,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GatewayError {
    #[error("sentence is empty")]
    EmptySentence,
    #[error("invalid backend configuration: {0}")]
    InvalidConfig(String),
    #[error("example {index} has an unparsable completion: {error}")]
    InvalidExample { index: usize, error: ParseError },
    #[error("dataset line {line}: {message}")]
    MalformedDataset { line: usize, message: String },
    #[error("network error: {0}")]
    Network(String),
    #[error("authentication failed: {0}")]
    Auth(String),
    #[error("the model returned an empty completion")]
    EmptyCompletion,
    #[error("the completion contained no usable axiom ({} lines rejected)", .0.rejected.len())]
    UnusableCompletion(ValidationOutcome),
}
