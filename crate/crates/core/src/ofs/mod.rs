//! The OWL Functional Syntax subset handled by ontoforge.
//!
//! Every axiom is a constructor application over default-prefixed names
//! (`:girl`, `:has_sister`, `:Anna`). The grammar covers declarations,
//! class and property assertions, subsumption, disjointness, equivalence,
//! domain/range, property hierarchy and (a)symmetry. Anything else is
//! rejected by the parser.
//!
//! Structural equality on [`Axiom`] ignores the operand order of
//! `DisjointClasses` and `EquivalentClasses`; serialization keeps the order
//! the operands were stored in.

mod lexer;
mod parser;
mod serialize;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parser::{parse_axiom, parse_document, parse_lines};
pub use serialize::{canonical_order, canonical_set, serialize, serialize_document, CanonicalSet};

/// Largest cardinality literal accepted by the parser.
pub const MAX_CARDINALITY: u32 = i32::MAX as u32;

/// Default namespace written for the `:` prefix when a document has none.
pub const DEFAULT_PREFIX_IRI: &str = "http://example.org/ontoforge#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unsupported constructor `{name}` at offset {position}")]
    UnknownConstructor { position: usize, name: String },
    #[error("document has no Ontology(...) block")]
    MissingOntologyWrapper,
}

impl ParseError {
    pub(crate) fn syntax(position: usize, expected: impl Into<String>) -> Self {
        ParseError::Syntax {
            position,
            expected: expected.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    NamedIndividual,
}

impl EntityKind {
    pub const ALL: [EntityKind; 3] = [
        EntityKind::Class,
        EntityKind::ObjectProperty,
        EntityKind::NamedIndividual,
    ];

    /// The constructor keyword used inside `Declaration(...)`.
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a valid entity name")]
pub struct InvalidName(pub String);

/// A default-prefixed entity name together with its kind.
///
/// The stored local part never includes the leading colon.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityName {
    kind: EntityKind,
    local: String,
}

impl EntityName {
    pub fn new(local: impl Into<String>, kind: EntityKind) -> Result<Self, InvalidName> {
        let local = local.into();
        if is_valid_local(&local) {
            Ok(EntityName { kind, local })
        } else {
            Err(InvalidName(local))
        }
    }

    pub fn class(local: &str) -> Self {
        Self::new(local, EntityKind::Class).expect("valid class name")
    }

    pub fn property(local: &str) -> Self {
        Self::new(local, EntityKind::ObjectProperty).expect("valid property name")
    }

    pub fn individual(local: &str) -> Self {
        Self::new(local, EntityKind::NamedIndividual).expect("valid individual name")
    }

    pub fn local(&self) -> &str {
        &self.local
    }

    pub fn kind(&self) -> EntityKind {
        self.kind
    }
}

impl fmt::Display for EntityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ":{}", self.local)
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_valid_local(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpression {
    Named(EntityName),
    ComplementOf(Box<ClassExpression>),
    IntersectionOf(Vec<ClassExpression>),
    SomeValuesFrom {
        property: EntityName,
        filler: Box<ClassExpression>,
    },
    AllValuesFrom {
        property: EntityName,
        filler: Box<ClassExpression>,
    },
    ExactCardinality {
        n: u32,
        property: EntityName,
        filler: Option<Box<ClassExpression>>,
    },
    MinCardinality {
        n: u32,
        property: EntityName,
        filler: Option<Box<ClassExpression>>,
    },
    MaxCardinality {
        n: u32,
        property: EntityName,
        filler: Option<Box<ClassExpression>>,
    },
}

impl ClassExpression {
    pub fn named(local: &str) -> Self {
        ClassExpression::Named(EntityName::class(local))
    }

    pub fn complement(ce: ClassExpression) -> Self {
        ClassExpression::ComplementOf(Box::new(ce))
    }

    pub fn some(property: &str, filler: ClassExpression) -> Self {
        ClassExpression::SomeValuesFrom {
            property: EntityName::property(property),
            filler: Box::new(filler),
        }
    }

    pub fn only(property: &str, filler: ClassExpression) -> Self {
        ClassExpression::AllValuesFrom {
            property: EntityName::property(property),
            filler: Box::new(filler),
        }
    }

    pub fn exactly(n: u32, property: &str, filler: ClassExpression) -> Self {
        ClassExpression::ExactCardinality {
            n,
            property: EntityName::property(property),
            filler: Some(Box::new(filler)),
        }
    }

    pub fn at_least(n: u32, property: &str, filler: ClassExpression) -> Self {
        ClassExpression::MinCardinality {
            n,
            property: EntityName::property(property),
            filler: Some(Box::new(filler)),
        }
    }

    pub fn at_most(n: u32, property: &str, filler: ClassExpression) -> Self {
        ClassExpression::MaxCardinality {
            n,
            property: EntityName::property(property),
            filler: Some(Box::new(filler)),
        }
    }

    /// Calls `f` on every entity name mentioned in the expression.
    pub fn visit_entities<'a>(&'a self, f: &mut impl FnMut(&'a EntityName)) {
        match self {
            ClassExpression::Named(n) => f(n),
            ClassExpression::ComplementOf(ce) => ce.visit_entities(f),
            ClassExpression::IntersectionOf(ops) => ops.iter().for_each(|ce| ce.visit_entities(f)),
            ClassExpression::SomeValuesFrom { property, filler }
            | ClassExpression::AllValuesFrom { property, filler } => {
                f(property);
                filler.visit_entities(f);
            }
            ClassExpression::ExactCardinality {
                property, filler, ..
            }
            | ClassExpression::MinCardinality {
                property, filler, ..
            }
            | ClassExpression::MaxCardinality {
                property, filler, ..
            } => {
                f(property);
                if let Some(filler) = filler {
                    filler.visit_entities(f);
                }
            }
        }
    }

    /// Nesting depth; a named class has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            ClassExpression::Named(_) => 1,
            ClassExpression::ComplementOf(ce) => 1 + ce.depth(),
            ClassExpression::IntersectionOf(ops) => {
                1 + ops.iter().map(ClassExpression::depth).max().unwrap_or(0)
            }
            ClassExpression::SomeValuesFrom { filler, .. }
            | ClassExpression::AllValuesFrom { filler, .. } => 1 + filler.depth(),
            ClassExpression::ExactCardinality { filler, .. }
            | ClassExpression::MinCardinality { filler, .. }
            | ClassExpression::MaxCardinality { filler, .. } => {
                1 + filler.as_ref().map_or(0, |f| f.depth())
            }
        }
    }
}

/// One OWL axiom from the supported subset.
#[derive(Debug, Clone)]
pub enum Axiom {
    Declaration(EntityName),
    ClassAssertion {
        class: ClassExpression,
        individual: EntityName,
    },
    SubClassOf {
        sub: ClassExpression,
        sup: ClassExpression,
    },
    DisjointClasses(Vec<ClassExpression>),
    EquivalentClasses(Vec<ClassExpression>),
    ObjectPropertyAssertion {
        property: EntityName,
        subject: EntityName,
        object: EntityName,
    },
    NegativeObjectPropertyAssertion {
        property: EntityName,
        subject: EntityName,
        object: EntityName,
    },
    ObjectPropertyDomain {
        property: EntityName,
        class: ClassExpression,
    },
    ObjectPropertyRange {
        property: EntityName,
        class: ClassExpression,
    },
    SubObjectPropertyOf {
        sub: EntityName,
        sup: EntityName,
    },
    SymmetricObjectProperty(EntityName),
    AsymmetricObjectProperty(EntityName),
}

impl Axiom {
    pub fn declare(local: &str, kind: EntityKind) -> Self {
        Axiom::Declaration(EntityName::new(local, kind).expect("valid entity name"))
    }

    pub fn class_assertion(class: ClassExpression, individual: &str) -> Self {
        Axiom::ClassAssertion {
            class,
            individual: EntityName::individual(individual),
        }
    }

    pub fn property_assertion(property: &str, subject: &str, object: &str) -> Self {
        Axiom::ObjectPropertyAssertion {
            property: EntityName::property(property),
            subject: EntityName::individual(subject),
            object: EntityName::individual(object),
        }
    }

    /// The constructor keyword, e.g. `SubClassOf`.
    pub fn constructor(&self) -> &'static str {
        match self {
            Axiom::Declaration(_) => "Declaration",
            Axiom::ClassAssertion { .. } => "ClassAssertion",
            Axiom::SubClassOf { .. } => "SubClassOf",
            Axiom::DisjointClasses(_) => "DisjointClasses",
            Axiom::EquivalentClasses(_) => "EquivalentClasses",
            Axiom::ObjectPropertyAssertion { .. } => "ObjectPropertyAssertion",
            Axiom::NegativeObjectPropertyAssertion { .. } => "NegativeObjectPropertyAssertion",
            Axiom::ObjectPropertyDomain { .. } => "ObjectPropertyDomain",
            Axiom::ObjectPropertyRange { .. } => "ObjectPropertyRange",
            Axiom::SubObjectPropertyOf { .. } => "SubObjectPropertyOf",
            Axiom::SymmetricObjectProperty(_) => "SymmetricObjectProperty",
            Axiom::AsymmetricObjectProperty(_) => "AsymmetricObjectProperty",
        }
    }

    /// Position of the variant in the canonical ordering of axiom kinds.
    pub fn rank(&self) -> u8 {
        match self {
            Axiom::Declaration(_) => 0,
            Axiom::ClassAssertion { .. } => 1,
            Axiom::SubClassOf { .. } => 2,
            Axiom::DisjointClasses(_) => 3,
            Axiom::EquivalentClasses(_) => 4,
            Axiom::ObjectPropertyAssertion { .. } => 5,
            Axiom::NegativeObjectPropertyAssertion { .. } => 6,
            Axiom::ObjectPropertyDomain { .. } => 7,
            Axiom::ObjectPropertyRange { .. } => 8,
            Axiom::SubObjectPropertyOf { .. } => 9,
            Axiom::SymmetricObjectProperty(_) => 10,
            Axiom::AsymmetricObjectProperty(_) => 11,
        }
    }

    pub fn is_declaration(&self) -> bool {
        matches!(self, Axiom::Declaration(_))
    }

    pub fn declared_entity(&self) -> Option<&EntityName> {
        match self {
            Axiom::Declaration(e) => Some(e),
            _ => None,
        }
    }

    /// Calls `f` on every entity name the axiom mentions, declarations included.
    pub fn visit_entities<'a>(&'a self, f: &mut impl FnMut(&'a EntityName)) {
        match self {
            Axiom::Declaration(e)
            | Axiom::SymmetricObjectProperty(e)
            | Axiom::AsymmetricObjectProperty(e) => f(e),
            Axiom::ClassAssertion { class, individual } => {
                class.visit_entities(f);
                f(individual);
            }
            Axiom::SubClassOf { sub, sup } => {
                sub.visit_entities(f);
                sup.visit_entities(f);
            }
            Axiom::DisjointClasses(ops) | Axiom::EquivalentClasses(ops) => {
                ops.iter().for_each(|ce| ce.visit_entities(f))
            }
            Axiom::ObjectPropertyAssertion {
                property,
                subject,
                object,
            }
            | Axiom::NegativeObjectPropertyAssertion {
                property,
                subject,
                object,
            } => {
                f(property);
                f(subject);
                f(object);
            }
            Axiom::ObjectPropertyDomain { property, class }
            | Axiom::ObjectPropertyRange { property, class } => {
                f(property);
                class.visit_entities(f);
            }
            Axiom::SubObjectPropertyOf { sub, sup } => {
                f(sub);
                f(sup);
            }
        }
    }

    pub fn entities(&self) -> Vec<&EntityName> {
        let mut out = Vec::new();
        self.visit_entities(&mut |e| out.push(e));
        out
    }

    /// Copy with n-ary operands sorted by their serialized form.
    pub fn normalized(&self) -> Axiom {
        match self {
            Axiom::DisjointClasses(ops) => Axiom::DisjointClasses(sorted_operands(ops)),
            Axiom::EquivalentClasses(ops) => Axiom::EquivalentClasses(sorted_operands(ops)),
            other => other.clone(),
        }
    }
}

fn sorted_operands(ops: &[ClassExpression]) -> Vec<ClassExpression> {
    let mut keyed: Vec<(String, &ClassExpression)> =
        ops.iter().map(|ce| (ce.to_string(), ce)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, ce)| ce.clone()).collect()
}

fn operand_refs(ops: &[ClassExpression]) -> Vec<&ClassExpression> {
    let mut refs: Vec<&ClassExpression> = ops.iter().collect();
    refs.sort();
    refs
}

impl Ord for Axiom {
    fn cmp(&self, other: &Self) -> Ordering {
        use Axiom::*;
        self.rank()
            .cmp(&other.rank())
            .then_with(|| match (self, other) {
                (Declaration(a), Declaration(b))
                | (SymmetricObjectProperty(a), SymmetricObjectProperty(b))
                | (AsymmetricObjectProperty(a), AsymmetricObjectProperty(b)) => a.cmp(b),
                (
                    ClassAssertion {
                        class: c1,
                        individual: i1,
                    },
                    ClassAssertion {
                        class: c2,
                        individual: i2,
                    },
                ) => (c1, i1).cmp(&(c2, i2)),
                (SubClassOf { sub: a1, sup: b1 }, SubClassOf { sub: a2, sup: b2 }) => {
                    (a1, b1).cmp(&(a2, b2))
                }
                (DisjointClasses(a), DisjointClasses(b))
                | (EquivalentClasses(a), EquivalentClasses(b)) => {
                    operand_refs(a).cmp(&operand_refs(b))
                }
                (
                    ObjectPropertyAssertion {
                        property: p1,
                        subject: s1,
                        object: o1,
                    },
                    ObjectPropertyAssertion {
                        property: p2,
                        subject: s2,
                        object: o2,
                    },
                )
                | (
                    NegativeObjectPropertyAssertion {
                        property: p1,
                        subject: s1,
                        object: o1,
                    },
                    NegativeObjectPropertyAssertion {
                        property: p2,
                        subject: s2,
                        object: o2,
                    },
                ) => (p1, s1, o1).cmp(&(p2, s2, o2)),
                (
                    ObjectPropertyDomain {
                        property: p1,
                        class: c1,
                    },
                    ObjectPropertyDomain {
                        property: p2,
                        class: c2,
                    },
                )
                | (
                    ObjectPropertyRange {
                        property: p1,
                        class: c1,
                    },
                    ObjectPropertyRange {
                        property: p2,
                        class: c2,
                    },
                ) => (p1, c1).cmp(&(p2, c2)),
                (
                    SubObjectPropertyOf { sub: a1, sup: b1 },
                    SubObjectPropertyOf { sub: a2, sup: b2 },
                ) => (a1, b1).cmp(&(a2, b2)),
                _ => unreachable!("equal ranks imply equal variants"),
            })
    }
}

impl PartialOrd for Axiom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Axiom {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Axiom {}

impl Hash for Axiom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        use Axiom::*;
        self.rank().hash(state);
        match self {
            Declaration(e) | SymmetricObjectProperty(e) | AsymmetricObjectProperty(e) => {
                e.hash(state)
            }
            ClassAssertion { class, individual } => (class, individual).hash(state),
            SubClassOf { sub, sup } => (sub, sup).hash(state),
            DisjointClasses(ops) | EquivalentClasses(ops) => operand_refs(ops).hash(state),
            ObjectPropertyAssertion {
                property,
                subject,
                object,
            }
            | NegativeObjectPropertyAssertion {
                property,
                subject,
                object,
            } => (property, subject, object).hash(state),
            ObjectPropertyDomain { property, class } | ObjectPropertyRange { property, class } => {
                (property, class).hash(state)
            }
            SubObjectPropertyOf { sub, sup } => (sub, sup).hash(state),
        }
    }
}

impl Serialize for Axiom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Axiom {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_axiom(&text).map_err(serde::de::Error::custom)
    }
}

/// A parsed `.ofn` document: prefix table, optional ontology IRI, axioms in
/// file order (duplicates kept).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OntologyDocument {
    pub prefixes: Vec<(String, String)>,
    pub ontology_iri: Option<String>,
    pub axioms: Vec<Axiom>,
}
