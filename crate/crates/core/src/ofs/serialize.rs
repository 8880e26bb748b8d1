use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use super::{Axiom, ClassExpression, EntityKind, OntologyDocument, DEFAULT_PREFIX_IRI};

/// Axioms deduplicated under structural equality, operands normalized.
pub type CanonicalSet = BTreeSet<Axiom>;

fn write_list(f: &mut fmt::Formatter<'_>, ops: &[ClassExpression]) -> fmt::Result {
    for (i, ce) in ops.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{ce}")?;
    }
    Ok(())
}

impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpression::Named(n) => write!(f, "{n}"),
            ClassExpression::ComplementOf(ce) => write!(f, "ObjectComplementOf({ce})"),
            ClassExpression::IntersectionOf(ops) => {
                f.write_str("ObjectIntersectionOf(")?;
                write_list(f, ops)?;
                f.write_char(')')
            }
            ClassExpression::SomeValuesFrom { property, filler } => {
                write!(f, "ObjectSomeValuesFrom({property} {filler})")
            }
            ClassExpression::AllValuesFrom { property, filler } => {
                write!(f, "ObjectAllValuesFrom({property} {filler})")
            }
            ClassExpression::ExactCardinality {
                n,
                property,
                filler,
            }
            | ClassExpression::MinCardinality {
                n,
                property,
                filler,
            }
            | ClassExpression::MaxCardinality {
                n,
                property,
                filler,
            } => {
                let ctor = match self {
                    ClassExpression::ExactCardinality { .. } => "ObjectExactCardinality",
                    ClassExpression::MinCardinality { .. } => "ObjectMinCardinality",
                    _ => "ObjectMaxCardinality",
                };
                write!(f, "{ctor}({n} {property}")?;
                if let Some(filler) = filler {
                    write!(f, " {filler}")?;
                }
                f.write_char(')')
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctor = self.constructor();
        match self {
            Axiom::Declaration(e) => write!(f, "Declaration({}({e}))", e.kind().keyword()),
            Axiom::ClassAssertion { class, individual } => {
                write!(f, "{ctor}({class} {individual})")
            }
            Axiom::SubClassOf { sub, sup } => write!(f, "{ctor}({sub} {sup})"),
            Axiom::DisjointClasses(ops) | Axiom::EquivalentClasses(ops) => {
                write!(f, "{ctor}(")?;
                write_list(f, ops)?;
                f.write_char(')')
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
            } => write!(f, "{ctor}({property} {subject} {object})"),
            Axiom::ObjectPropertyDomain { property, class }
            | Axiom::ObjectPropertyRange { property, class } => {
                write!(f, "{ctor}({property} {class})")
            }
            Axiom::SubObjectPropertyOf { sub, sup } => write!(f, "{ctor}({sub} {sup})"),
            Axiom::SymmetricObjectProperty(p) | Axiom::AsymmetricObjectProperty(p) => {
                write!(f, "{ctor}({p})")
            }
        }
    }
}

/// Deduplicates under structural equality and normalizes n-ary operands.
pub fn canonical_set<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> CanonicalSet {
    axioms.into_iter().map(Axiom::normalized).collect()
}

fn canonical_key(axiom: &Axiom) -> (u8, String) {
    match axiom {
        Axiom::Declaration(e) => {
            let group = EntityKind::ALL
                .iter()
                .position(|k| *k == e.kind())
                .expect("every kind is listed") as u8;
            (group, e.local().to_string())
        }
        other => (
            EntityKind::ALL.len() as u8 + other.rank(),
            other.to_string(),
        ),
    }
}

/// Canonical axiom order: class, property and individual declarations (each
/// alphabetical), then logical axioms by kind and serialized text.
pub fn canonical_order<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Vec<Axiom> {
    let mut keyed: Vec<((u8, String), Axiom)> = canonical_set(axioms)
        .into_iter()
        .map(|a| (canonical_key(&a), a))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, a)| a).collect()
}

/// One axiom per line. `canonical` sorts, deduplicates and normalizes;
/// otherwise the input order and operand order are kept verbatim.
pub fn serialize(axioms: &[Axiom], canonical: bool) -> String {
    let lines: Vec<String> = if canonical {
        canonical_order(axioms)
            .iter()
            .map(Axiom::to_string)
            .collect()
    } else {
        axioms.iter().map(Axiom::to_string).collect()
    };
    lines.join("\n")
}

/// Renders a full `.ofn` document. The default `:` prefix is always written.
pub fn serialize_document(doc: &OntologyDocument, canonical: bool) -> String {
    let mut out = String::new();
    if !doc.prefixes.iter().any(|(p, _)| p.is_empty()) {
        let _ = writeln!(out, "Prefix(:=<{DEFAULT_PREFIX_IRI}>)");
    }
    for (prefix, iri) in &doc.prefixes {
        let _ = writeln!(out, "Prefix({prefix}:=<{iri}>)");
    }
    out.push('\n');
    match &doc.ontology_iri {
        Some(iri) => {
            let _ = writeln!(out, "Ontology(<{iri}>");
        }
        None => out.push_str("Ontology(\n"),
    }
    let body = serialize(&doc.axioms, canonical);
    if !body.is_empty() {
        out.push_str(&body);
        out.push('\n');
    }
    out.push_str(")\n");
    out
}
