use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ofs::{parse_axiom, Axiom, EntityKind};
use crate::store::Ontology;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "message", rename_all = "snake_case")]
pub enum RejectReason {
    Syntax(String),
    IllTyped(String),
    Undeclared(String),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::Syntax(m) => write!(f, "syntax: {m}"),
            RejectReason::IllTyped(m) => write!(f, "ill-typed: {m}"),
            RejectReason::Undeclared(m) => write!(f, "undeclared: {m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub line: String,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Clean,
    Partial,
    Unusable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationOutcome {
    pub valid_axioms: Vec<Axiom>,
    pub rejected: Vec<Rejection>,
    pub verdict: Verdict,
}

/// Checks that every name in a logical axiom is declared with the kind its
/// position requires. Declarations always pass.
pub fn check_axiom(
    axiom: &Axiom,
    lookup: &dyn Fn(&str) -> Option<EntityKind>,
) -> Result<(), RejectReason> {
    if axiom.is_declaration() {
        return Ok(());
    }
    let mut undeclared = Vec::new();
    for e in axiom.entities() {
        match lookup(e.local()) {
            Some(k) if k != e.kind() => {
                return Err(RejectReason::IllTyped(format!(
                    "`{}` is used as {} but declared as {k}",
                    e.local(),
                    e.kind()
                )))
            }
            Some(_) => {}
            None => undeclared.push(e.local()),
        }
    }
    match undeclared.first() {
        None => Ok(()),
        Some(name) => Err(RejectReason::Undeclared(format!(
            "`{name}` is not declared"
        ))),
    }
}

/// Parses a raw completion line by line and keeps the well-formed,
/// well-typed axioms. Names resolve against the ontology first, then
/// against declarations appearing in the completion itself.
pub fn validate_completion(raw: &str, ontology: &Ontology) -> ValidationOutcome {
    let mut parsed: Vec<(String, Axiom)> = Vec::new();
    let mut rejected = Vec::new();
    for line in raw.lines().map(str::trim) {
        if line.is_empty() || line == "END" {
            continue;
        }
        match parse_axiom(line) {
            Ok(axiom) => parsed.push((line.to_string(), axiom)),
            Err(e) => rejected.push(Rejection {
                line: line.to_string(),
                reason: RejectReason::Syntax(e.to_string()),
            }),
        }
    }

    let mut local: BTreeMap<&str, EntityKind> = BTreeMap::new();
    for (_, axiom) in &parsed {
        if let Some(e) = axiom.declared_entity() {
            local.entry(e.local()).or_insert(e.kind());
        }
    }
    let lookup = |name: &str| ontology.kind_of(name).or_else(|| local.get(name).copied());

    let mut valid_axioms = Vec::new();
    for (line, axiom) in &parsed {
        match check_axiom(axiom, &lookup) {
            Ok(()) => valid_axioms.push(axiom.clone()),
            Err(reason) => rejected.push(Rejection {
                line: line.clone(),
                reason,
            }),
        }
    }

    let verdict = match (valid_axioms.is_empty(), rejected.is_empty()) {
        (true, _) => Verdict::Unusable,
        (false, true) => Verdict::Clean,
        (false, false) => Verdict::Partial,
    };
    ValidationOutcome {
        valid_axioms,
        rejected,
        verdict,
    }
}
