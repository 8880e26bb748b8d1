//! The active ontology plus staging and commit of translated axioms.
//!
//! Translated axioms are first staged: each one is classified against the
//! current ontology without touching it. A reviewer then accepts a subset of
//! the items and [`commit`] merges them, skipping anything already present.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gateway::check_axiom;
use crate::ofs::{
    parse_document, serialize_document, Axiom, EntityKind, OntologyDocument, ParseError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("stage was built against revision {staged}, ontology is now at {current} and item {index} is no longer acceptable")]
    StaleStage {
        staged: u64,
        current: u64,
        index: usize,
    },
    #[error("item {index} cannot be accepted: {reason}")]
    IllegalAccept { index: usize, reason: String },
    #[error("`{0}` is declared with more than one kind")]
    KindConflict(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Declared names grouped by kind, each list sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub classes: Vec<String>,
    pub object_properties: Vec<String>,
    pub individuals: Vec<String>,
}

/// A deduplicated axiom set with its declared-name index.
#[derive(Debug, Clone, Default)]
pub struct Ontology {
    axioms: BTreeSet<Axiom>,
    signature: BTreeMap<String, EntityKind>,
    revision: u64,
    prefixes: Vec<(String, String)>,
    iri: Option<String>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_iri(iri: impl Into<String>) -> Self {
        Ontology {
            iri: Some(iri.into()),
            ..Self::default()
        }
    }

    pub fn axioms(&self) -> &BTreeSet<Axiom> {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn iri(&self) -> Option<&str> {
        self.iri.as_deref()
    }

    /// Kind under which `local` is declared, if any.
    pub fn kind_of(&self, local: &str) -> Option<EntityKind> {
        self.signature.get(local).copied()
    }

    pub fn signature(&self) -> Signature {
        signature_of(self)
    }

    /// Inserts without any checks beyond kind uniqueness.
    fn insert(&mut self, axiom: Axiom) -> Result<bool, StoreError> {
        if let Axiom::Declaration(e) = &axiom {
            match self.signature.get(e.local()) {
                Some(k) if *k != e.kind() => {
                    return Err(StoreError::KindConflict(e.local().to_string()))
                }
                Some(_) => {}
                None => {
                    self.signature.insert(e.local().to_string(), e.kind());
                }
            }
        }
        Ok(self.axioms.insert(axiom))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ItemStatus {
    New,
    Duplicate,
    Conflict,
    Invalid,
}

impl ItemStatus {
    pub fn acceptable(self) -> bool {
        matches!(self, ItemStatus::New | ItemStatus::Duplicate)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagedItem {
    pub axiom: Axiom,
    pub status: ItemStatus,
    pub detail: String,
}

/// Axioms for one sentence, classified and awaiting a decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagedChange {
    pub id: String,
    pub sentence: String,
    pub base_revision: u64,
    pub items: Vec<StagedItem>,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

impl StagedChange {
    pub fn count(&self, status: ItemStatus) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> {
        self.items.iter().map(|i| &i.axiom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeReport {
    pub added: usize,
    pub skipped_duplicates: usize,
    pub rejected: usize,
    pub new_revision: u64,
}

fn classify(ontology: &Ontology, axioms: &[Axiom]) -> Vec<(ItemStatus, String)> {
    let mut local: BTreeMap<&str, EntityKind> = BTreeMap::new();
    let mut out = Vec::with_capacity(axioms.len());
    for axiom in axioms {
        if ontology.contains(axiom) {
            out.push((ItemStatus::Duplicate, "already in the ontology".to_string()));
            continue;
        }
        if let Axiom::Declaration(e) = axiom {
            let existing = ontology
                .kind_of(e.local())
                .map(|k| (k, "the ontology"))
                .or_else(|| local.get(e.local()).map(|k| (*k, "this stage")));
            match existing {
                Some((k, place)) if k != e.kind() => out.push((
                    ItemStatus::Conflict,
                    format!("`{}` is already a {k} in {place}", e.local()),
                )),
                _ => {
                    local.insert(e.local(), e.kind());
                    out.push((ItemStatus::New, String::new()));
                }
            }
            continue;
        }
        let lookup = |name: &str| ontology.kind_of(name).or_else(|| local.get(name).copied());
        match check_axiom(axiom, &lookup) {
            Ok(()) => out.push((ItemStatus::New, String::new())),
            Err(reason) => out.push((ItemStatus::Invalid, reason.to_string())),
        }
    }
    out
}

fn now_secs() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Classifies `axioms` against `ontology`. Never mutates the ontology.
pub fn stage(ontology: &Ontology, axioms: &[Axiom], sentence: &str) -> StagedChange {
    let items = axioms
        .iter()
        .cloned()
        .zip(classify(ontology, axioms))
        .map(|(axiom, (status, detail))| StagedItem {
            axiom,
            status,
            detail,
        })
        .collect();
    StagedChange {
        id: uuid::Uuid::new_v4().to_string(),
        sentence: sentence.to_string(),
        base_revision: ontology.revision(),
        items,
        created_at: now_secs(),
    }
}

/// Merges the accepted items of `staged` into a copy of `ontology`.
///
/// If the ontology moved on since staging, the items are reclassified first;
/// items that have become duplicates are skipped, while an accepted item that
/// is no longer acceptable fails with [`StoreError::StaleStage`].
pub fn commit(
    ontology: &Ontology,
    staged: &StagedChange,
    accepted: &BTreeSet<usize>,
) -> Result<(Ontology, MergeReport), StoreError> {
    if let Some(&index) = accepted.iter().find(|&&i| i >= staged.items.len()) {
        return Err(StoreError::IllegalAccept {
            index,
            reason: format!("stage has only {} items", staged.items.len()),
        });
    }
    let statuses: Vec<(ItemStatus, String)> = if ontology.revision() == staged.base_revision {
        staged
            .items
            .iter()
            .map(|i| (i.status, i.detail.clone()))
            .collect()
    } else {
        let axioms: Vec<Axiom> = staged.axioms().cloned().collect();
        let fresh = classify(ontology, &axioms);
        for &index in accepted {
            if staged.items[index].status.acceptable() && !fresh[index].0.acceptable() {
                return Err(StoreError::StaleStage {
                    staged: staged.base_revision,
                    current: ontology.revision(),
                    index,
                });
            }
        }
        fresh
    };

    for &index in accepted {
        let (status, detail) = &statuses[index];
        if !status.acceptable() {
            return Err(StoreError::IllegalAccept {
                index,
                reason: format!("{status:?}: {detail}"),
            });
        }
    }

    // every accepted logical axiom must only use names that end up declared
    let declared_here: BTreeMap<&str, EntityKind> = accepted
        .iter()
        .filter_map(|&i| staged.items[i].axiom.declared_entity())
        .map(|e| (e.local(), e.kind()))
        .collect();
    for &index in accepted {
        let axiom = &staged.items[index].axiom;
        if axiom.is_declaration() {
            continue;
        }
        if let Some(missing) = axiom.entities().into_iter().find(|e| {
            ontology.kind_of(e.local()).is_none() && !declared_here.contains_key(e.local())
        }) {
            return Err(StoreError::IllegalAccept {
                index,
                reason: format!("declaration of `{}` was not accepted", missing.local()),
            });
        }
    }

    let mut next = ontology.clone();
    let mut report = MergeReport {
        added: 0,
        skipped_duplicates: 0,
        rejected: 0,
        new_revision: ontology.revision(),
    };
    for (index, item) in staged.items.iter().enumerate() {
        if !accepted.contains(&index) {
            report.rejected += 1;
        } else if next.insert(item.axiom.clone())? {
            report.added += 1;
        } else {
            report.skipped_duplicates += 1;
        }
    }
    if report.added > 0 {
        next.revision += 1;
    }
    report.new_revision = next.revision;
    Ok((next, report))
}

/// Declared names by kind, sorted alphabetically.
pub fn signature_of(ontology: &Ontology) -> Signature {
    let mut sig = Signature::default();
    for (name, kind) in &ontology.signature {
        let list = match kind {
            EntityKind::Class => &mut sig.classes,
            EntityKind::ObjectProperty => &mut sig.object_properties,
            EntityKind::NamedIndividual => &mut sig.individuals,
        };
        list.push(name.clone());
    }
    sig
}

/// Canonical `.ofn` text for the ontology.
pub fn save_document(ontology: &Ontology) -> String {
    let doc = OntologyDocument {
        prefixes: ontology.prefixes.clone(),
        ontology_iri: ontology.iri.clone(),
        axioms: ontology.axioms.iter().cloned().collect(),
    };
    serialize_document(&doc, true)
}

/// Parses `.ofn` text into an ontology at revision 0, dropping duplicates.
pub fn load_document(text: &str) -> Result<Ontology, StoreError> {
    let doc = parse_document(text)?;
    let mut ontology = Ontology {
        prefixes: doc.prefixes,
        iri: doc.ontology_iri,
        ..Ontology::default()
    };
    for axiom in doc.axioms {
        ontology.insert(axiom)?;
    }
    Ok(ontology)
}
