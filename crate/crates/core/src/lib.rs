//! Core of ontoforge: turns English sentences into OWL Functional Syntax
//! axioms and merges them into an ontology under human review.
//!
//! - [`ofs`]: parser, serializer and structural equality for the axiom subset.
//! - [`store`]: the active ontology, staging and commit.
//! - [`translator`]: deterministic rule-based sentence translator.
//! - [`gateway`]: prompt building, dataset export and completion validation
//!   for remote language-model backends.
//! - [`eval`]: set-based and token-level scoring against a gold dataset.
//! - [`gold`]: the bundled gold corpus and the family scenario script.

pub mod ofs;

pub use ofs::{Axiom, ClassExpression, EntityKind, EntityName, OntologyDocument, ParseError};
pub mod eval;
pub mod gateway;
pub mod gold;
pub mod store;
pub mod translator;
