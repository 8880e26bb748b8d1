//! Sessions and the translate / decide operations behind both the HTTP API
//! and the CLI.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use ontoforge_core::gateway::{
    translate_remote_with, BackendConfig, CompletionTransport, GatewayError, HttpTransport,
    RetryPolicy,
};
use ontoforge_core::store::{commit, stage, MergeReport, Ontology, StagedChange, StoreError};
use ontoforge_core::translator::{translate, TranslateError, TranslationResult};
use ontoforge_core::Axiom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BackendChoice {
    #[default]
    Auto,
    Pattern,
    Llm,
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("unknown stage `{0}`")]
    UnknownStage(String),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Gateway(#[from] GatewayError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("no language-model backend is configured")]
    LlmUnavailable,
    #[error("invalid ontology document: {0}")]
    BadOntology(StoreError),
}

impl ServiceError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::UnknownSession(_) => "unknown_session",
            ServiceError::UnknownStage(_) => "unknown_stage",
            ServiceError::Translate(TranslateError::EmptySentence) => "empty_sentence",
            ServiceError::Translate(TranslateError::NoPatternMatch(_)) => "no_pattern_match",
            ServiceError::Translate(TranslateError::Lexicon(_)) => "unrepresentable_name",
            ServiceError::Gateway(e) => match e {
                GatewayError::EmptySentence => "empty_sentence",
                GatewayError::InvalidConfig(_) => "invalid_config",
                GatewayError::InvalidExample { .. } | GatewayError::MalformedDataset { .. } => {
                    "invalid_dataset"
                }
                GatewayError::Network(_) => "network_error",
                GatewayError::Auth(_) => "auth_error",
                GatewayError::EmptyCompletion => "empty_completion",
                GatewayError::UnusableCompletion(_) => "unusable_completion",
            },
            ServiceError::Store(e) => match e {
                StoreError::StaleStage { .. } => "stale_stage",
                StoreError::IllegalAccept { .. } => "illegal_accept",
                StoreError::KindConflict(_) => "kind_conflict",
                StoreError::Parse(_) => "parse_error",
            },
            ServiceError::LlmUnavailable => "llm_unavailable",
            ServiceError::BadOntology(_) => "bad_ontology",
        }
    }

    /// True for failures of the remote backend rather than of the input.
    pub fn is_backend_failure(&self) -> bool {
        matches!(
            self,
            ServiceError::LlmUnavailable
                | ServiceError::Gateway(
                    GatewayError::Network(_)
                        | GatewayError::Auth(_)
                        | GatewayError::EmptyCompletion
                        | GatewayError::UnusableCompletion(_)
                        | GatewayError::InvalidConfig(_)
                )
        )
    }
}

/// A configured remote model.
#[derive(Clone)]
pub struct LlmBackend {
    pub config: BackendConfig,
    pub transport: Arc<dyn CompletionTransport>,
    pub retry: RetryPolicy,
}

impl LlmBackend {
    pub fn from_config(config: BackendConfig) -> Result<Self, GatewayError> {
        config.validate()?;
        let transport = HttpTransport::from_config(&config)?;
        Ok(LlmBackend {
            config,
            transport: Arc::new(transport),
            retry: RetryPolicy::default(),
        })
    }

    pub fn translate(
        &self,
        sentence: &str,
        ontology: &Ontology,
    ) -> Result<TranslationResult, GatewayError> {
        translate_remote_with(
            sentence,
            &self.config,
            ontology,
            self.transport.as_ref(),
            &self.retry,
        )
    }
}

/// Runs the chosen backend. `auto` tries the rules first and falls back to
/// the model only when no rule matches.
pub fn run_backend(
    sentence: &str,
    choice: BackendChoice,
    ontology: &Ontology,
    llm: Option<&LlmBackend>,
) -> Result<TranslationResult, ServiceError> {
    let remote = || -> Result<TranslationResult, ServiceError> {
        let llm = llm.ok_or(ServiceError::LlmUnavailable)?;
        Ok(llm.translate(sentence, ontology)?)
    };
    match choice {
        BackendChoice::Pattern => Ok(translate(sentence)?),
        BackendChoice::Llm => remote(),
        BackendChoice::Auto => match translate(sentence) {
            Err(TranslateError::NoPatternMatch(_)) if llm.is_some() => remote(),
            other => Ok(other?),
        },
    }
}

/// Translation metadata returned alongside a new stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageResponse {
    pub stage: StagedChange,
    pub translation: TranslationResult,
}

pub struct Session {
    pub id: String,
    pub ontology: Ontology,
    pub pending: BTreeMap<String, StagedChange>,
}

impl Session {
    pub fn new(ontology: Ontology) -> Self {
        Session {
            id: uuid::Uuid::new_v4().to_string(),
            ontology,
            pending: BTreeMap::new(),
        }
    }

    /// Stages an already computed translation. Never touches the ontology.
    pub fn stage_translation(&mut self, translation: TranslationResult) -> StageResponse {
        let staged = stage(&self.ontology, &translation.axioms, &translation.sentence);
        self.pending.insert(staged.id.clone(), staged.clone());
        StageResponse {
            stage: staged,
            translation,
        }
    }

    pub fn handle_translate(
        &mut self,
        sentence: &str,
        choice: BackendChoice,
        llm: Option<&LlmBackend>,
    ) -> Result<StageResponse, ServiceError> {
        let translation = run_backend(sentence, choice, &self.ontology, llm)?;
        Ok(self.stage_translation(translation))
    }

    /// Commits the accepted items of a pending stage and removes it. A
    /// failed commit leaves the stage pending.
    pub fn handle_decision(
        &mut self,
        stage_id: &str,
        accept: &BTreeSet<usize>,
    ) -> Result<MergeReport, ServiceError> {
        let staged = self
            .pending
            .get(stage_id)
            .ok_or_else(|| ServiceError::UnknownStage(stage_id.to_string()))?;
        let (ontology, report) = commit(&self.ontology, staged, accept)?;
        self.ontology = ontology;
        self.pending.remove(stage_id);
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyAssertionView {
    pub property: String,
    pub subject: String,
    pub object: String,
}

/// Signature plus the relations a tree view needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureView {
    pub revision: u64,
    pub classes: Vec<String>,
    pub object_properties: Vec<String>,
    pub individuals: Vec<String>,
    /// Named class to the individuals asserted to belong to it.
    pub class_members: BTreeMap<String, Vec<String>>,
    /// Named subclass to named superclasses.
    pub superclasses: BTreeMap<String, Vec<String>>,
    pub property_assertions: Vec<PropertyAssertionView>,
}

impl SignatureView {
    pub fn of(ontology: &Ontology) -> Self {
        use ontoforge_core::ClassExpression::Named;
        let sig = ontology.signature();
        let mut class_members: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut superclasses: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut property_assertions = Vec::new();
        for axiom in ontology.axioms() {
            match axiom {
                Axiom::ClassAssertion {
                    class: Named(c),
                    individual,
                } => class_members
                    .entry(c.local().to_string())
                    .or_default()
                    .push(individual.local().to_string()),
                Axiom::SubClassOf {
                    sub: Named(a),
                    sup: Named(b),
                } => superclasses
                    .entry(a.local().to_string())
                    .or_default()
                    .push(b.local().to_string()),
                Axiom::ObjectPropertyAssertion {
                    property,
                    subject,
                    object,
                } => property_assertions.push(PropertyAssertionView {
                    property: property.local().to_string(),
                    subject: subject.local().to_string(),
                    object: object.local().to_string(),
                }),
                _ => {}
            }
        }
        for v in class_members.values_mut().chain(superclasses.values_mut()) {
            v.sort();
        }
        SignatureView {
            revision: ontology.revision(),
            classes: sig.classes,
            object_properties: sig.object_properties,
            individuals: sig.individuals,
            class_members,
            superclasses,
            property_assertions,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ontoforge_core::gateway::{Strategy, TransportError};
    use ontoforge_core::gold::SCENARIO;
    use ontoforge_core::store::ItemStatus;

    fn all(n: usize) -> BTreeSet<usize> {
        (0..n).collect()
    }

    #[test]
    fn s2_after_s1_has_one_duplicate() {
        let mut s = Session::new(Ontology::new());
        let r1 = s
            .handle_translate(SCENARIO[0], BackendChoice::Pattern, None)
            .unwrap();
        assert_eq!(r1.stage.count(ItemStatus::New), 3);
        let report = s.handle_decision(&r1.stage.id, &all(3)).unwrap();
        assert_eq!(report.added, 3);
        assert!(s.pending.is_empty());

        let r2 = s
            .handle_translate(SCENARIO[1], BackendChoice::Pattern, None)
            .unwrap();
        assert_eq!(r2.stage.count(ItemStatus::Duplicate), 1);
        assert_eq!(r2.stage.count(ItemStatus::New), 2);
    }

    #[test]
    fn accepting_nothing_changes_nothing() {
        let mut s = Session::new(Ontology::new());
        let r = s
            .handle_translate(SCENARIO[0], BackendChoice::Pattern, None)
            .unwrap();
        let report = s.handle_decision(&r.stage.id, &BTreeSet::new()).unwrap();
        assert_eq!(report.added, 0);
        assert!(s.ontology.is_empty());
        assert_eq!(s.ontology.revision(), 0);
    }

    #[test]
    fn unknown_stage_and_unmatched_sentence() {
        let mut s = Session::new(Ontology::new());
        let e = s.handle_decision("nope", &BTreeSet::new()).unwrap_err();
        assert_eq!(e.code(), "unknown_stage");
        let e = s
            .handle_translate(
                "colorless green ideas sleep furiously",
                BackendChoice::Pattern,
                None,
            )
            .unwrap_err();
        assert_eq!(e.code(), "no_pattern_match");
        let e = s
            .handle_translate(
                "colorless green ideas sleep furiously",
                BackendChoice::Auto,
                None,
            )
            .unwrap_err();
        assert_eq!(e.code(), "no_pattern_match");
        let e = s
            .handle_translate("Anna is a girl", BackendChoice::Llm, None)
            .unwrap_err();
        assert_eq!(e.code(), "llm_unavailable");
        assert!(e.is_backend_failure());
    }

    struct Canned(&'static str);
    impl CompletionTransport for Canned {
        fn complete(
            &self,
            _: &ontoforge_core::gateway::CompletionRequest,
        ) -> Result<String, TransportError> {
            Ok(self.0.to_string())
        }
    }

    #[test]
    fn auto_falls_back_to_the_model() {
        let llm = LlmBackend {
            config: BackendConfig::with_strategy(Strategy::ZeroShot),
            transport: Arc::new(Canned("Declaration(Class(:idea))")),
            retry: RetryPolicy::immediate(0),
        };
        let mut s = Session::new(Ontology::new());
        let r = s
            .handle_translate(
                "colorless green ideas sleep furiously",
                BackendChoice::Auto,
                Some(&llm),
            )
            .unwrap();
        assert_eq!(
            r.translation.backend,
            ontoforge_core::translator::Backend::Llm
        );
        assert_eq!(r.stage.items.len(), 1);
        // rules still win when they match
        let r = s
            .handle_translate("Anna is a girl", BackendChoice::Auto, Some(&llm))
            .unwrap();
        assert_eq!(
            r.translation.backend,
            ontoforge_core::translator::Backend::Pattern
        );
    }

    #[test]
    fn signature_view_lists_members_and_assertions() {
        let mut s = Session::new(Ontology::new());
        for sentence in &SCENARIO[2..4] {
            let r = s
                .handle_translate(sentence, BackendChoice::Pattern, None)
                .unwrap();
            s.handle_decision(&r.stage.id, &all(r.stage.items.len()))
                .unwrap();
        }
        let v = SignatureView::of(&s.ontology);
        assert_eq!(v.class_members["girl"], ["Anna", "Lana"]);
        assert_eq!(v.property_assertions.len(), 2);
        assert_eq!(v.object_properties, ["has_sister"]);
    }
}
