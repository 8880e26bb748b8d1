use std::collections::BTreeSet;

use ontoforge_core::eval::{score_pair, token_accuracy};
use ontoforge_core::gateway::{export_dataset, import_dataset, validate_completion, PromptExample};
use ontoforge_core::ofs::{canonical_set, parse_axiom, parse_lines, serialize, MAX_CARDINALITY};
use ontoforge_core::store::{commit, load_document, save_document, stage, ItemStatus, Ontology};
use ontoforge_core::translator::translate;
use ontoforge_core::{Axiom, ClassExpression, EntityKind, EntityName};
use proptest::prelude::*;

fn class_name() -> impl Strategy<Value = EntityName> {
    "c[a-z0-9_]{0,5}".prop_map(|s| EntityName::class(&s))
}
fn prop_name() -> impl Strategy<Value = EntityName> {
    "p[a-z_]{0,5}".prop_map(|s| EntityName::property(&s))
}
fn ind_name() -> impl Strategy<Value = EntityName> {
    "[A-Z][a-z0-9]{0,5}".prop_map(|s| EntityName::individual(&s))
}

fn count() -> impl Strategy<Value = u32> {
    prop_oneof![0u32..5, Just(MAX_CARDINALITY), 0..=MAX_CARDINALITY]
}

fn class_expr() -> impl Strategy<Value = ClassExpression> {
    let leaf = class_name().prop_map(ClassExpression::Named);
    leaf.prop_recursive(3, 24, 3, |inner| {
        let filler = proptest::option::of(inner.clone().prop_map(Box::new));
        prop_oneof![
            inner
                .clone()
                .prop_map(|c| ClassExpression::ComplementOf(Box::new(c))),
            proptest::collection::vec(inner.clone(), 2..4)
                .prop_map(ClassExpression::IntersectionOf),
            (prop_name(), inner.clone()).prop_map(|(property, f)| {
                ClassExpression::SomeValuesFrom {
                    property,
                    filler: Box::new(f),
                }
            }),
            (prop_name(), inner.clone()).prop_map(|(property, f)| ClassExpression::AllValuesFrom {
                property,
                filler: Box::new(f)
            }),
            (count(), prop_name(), filler.clone()).prop_map(|(n, property, filler)| {
                ClassExpression::ExactCardinality {
                    n,
                    property,
                    filler,
                }
            }),
            (count(), prop_name(), filler.clone()).prop_map(|(n, property, filler)| {
                ClassExpression::MinCardinality {
                    n,
                    property,
                    filler,
                }
            }),
            (count(), prop_name(), filler).prop_map(|(n, property, filler)| {
                ClassExpression::MaxCardinality {
                    n,
                    property,
                    filler,
                }
            }),
        ]
    })
}

fn axiom() -> impl Strategy<Value = Axiom> {
    prop_oneof![
        prop_oneof![class_name(), prop_name(), ind_name()].prop_map(Axiom::Declaration),
        (class_expr(), ind_name())
            .prop_map(|(class, individual)| Axiom::ClassAssertion { class, individual }),
        (class_expr(), class_expr()).prop_map(|(sub, sup)| Axiom::SubClassOf { sub, sup }),
        proptest::collection::vec(class_expr(), 2..4).prop_map(Axiom::DisjointClasses),
        proptest::collection::vec(class_expr(), 2..4).prop_map(Axiom::EquivalentClasses),
        (prop_name(), ind_name(), ind_name()).prop_map(|(property, subject, object)| {
            Axiom::ObjectPropertyAssertion {
                property,
                subject,
                object,
            }
        }),
        (prop_name(), ind_name(), ind_name()).prop_map(|(property, subject, object)| {
            Axiom::NegativeObjectPropertyAssertion {
                property,
                subject,
                object,
            }
        }),
        (prop_name(), class_expr())
            .prop_map(|(property, class)| Axiom::ObjectPropertyDomain { property, class }),
        (prop_name(), class_expr())
            .prop_map(|(property, class)| Axiom::ObjectPropertyRange { property, class }),
        (prop_name(), prop_name()).prop_map(|(sub, sup)| Axiom::SubObjectPropertyOf { sub, sup }),
        prop_name().prop_map(Axiom::SymmetricObjectProperty),
        prop_name().prop_map(Axiom::AsymmetricObjectProperty),
    ]
}

/// Adds a declaration for every entity the axioms mention.
fn closed(axioms: Vec<Axiom>) -> Vec<Axiom> {
    let mut decls = BTreeSet::new();
    for a in &axioms {
        for e in a.entities() {
            decls.insert(Axiom::Declaration(e.clone()));
        }
    }
    decls.into_iter().chain(axioms).collect()
}

fn is_closed(ontology: &Ontology) -> bool {
    ontology
        .axioms()
        .iter()
        .flat_map(|a| a.entities())
        .all(|e| ontology.kind_of(e.local()) == Some(e.kind()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialize_then_parse_is_identity(a in axiom()) {
        let text = a.to_string();
        prop_assert_eq!(parse_axiom(&text).unwrap(), a.clone());
        // the printed form is a fixed point
        prop_assert_eq!(parse_axiom(&text).unwrap().to_string(), text);
    }

    #[test]
    fn canonical_output_ignores_order(mut axioms in proptest::collection::vec(axiom(), 0..12), seed in any::<u64>()) {
        let before = serialize(&axioms, true);
        let n = axioms.len();
        if n > 1 {
            axioms.rotate_left((seed as usize) % n);
            axioms.swap(0, n - 1);
        }
        prop_assert_eq!(serialize(&axioms, true), before);
    }

    #[test]
    fn equal_canonical_sets_serialize_identically(axioms in proptest::collection::vec(axiom(), 0..10)) {
        let text = serialize(&axioms, true);
        let reparsed = if text.is_empty() { Vec::new() } else { parse_lines(&text).unwrap() };
        prop_assert_eq!(canonical_set(&reparsed), canonical_set(&axioms));
        prop_assert_eq!(serialize(&reparsed, true), text);
    }

    #[test]
    fn commit_preserves_closure_and_is_idempotent(
        base in proptest::collection::vec(axiom(), 0..6),
        extra in proptest::collection::vec(axiom(), 0..6),
    ) {
        let start = load_document(&format!("Ontology({})", serialize(&closed(base), true))).unwrap();
        prop_assert!(is_closed(&start));
        let batch = closed(extra);
        let staged = stage(&start, &batch, "s");
        prop_assert_eq!(staged.items.len(), batch.len());
        let accept: BTreeSet<usize> = staged
            .items
            .iter()
            .enumerate()
            .filter(|(_, i)| i.status == ItemStatus::New)
            .map(|(k, _)| k)
            .collect();
        let (after, report) = commit(&start, &staged, &accept).unwrap();
        prop_assert!(start.axioms().is_subset(after.axioms()));
        prop_assert!(is_closed(&after));
        prop_assert_eq!(after.len(), start.len() + report.added);

        let (again, second) = commit(&after, &staged, &accept).unwrap();
        prop_assert_eq!(second.added, 0);
        prop_assert_eq!(again.axioms(), after.axioms());

        let reloaded = load_document(&save_document(&after)).unwrap();
        prop_assert_eq!(reloaded.axioms(), after.axioms());
    }

    #[test]
    fn validator_never_invents_axioms(lines in proptest::collection::vec(
        prop_oneof![axiom().prop_map(|a| a.to_string()), "[ -~]{0,30}"], 0..8)
    ) {
        let raw = lines.join("\n");
        let out = validate_completion(&raw, &Ontology::new());
        let parsed: Vec<Axiom> = lines.iter().filter_map(|l| parse_axiom(l.trim()).ok()).collect();
        for a in &out.valid_axioms {
            prop_assert!(parsed.contains(a));
        }
        let nonblank = lines.iter().filter(|l| !l.trim().is_empty() && l.trim() != "END").count();
        prop_assert_eq!(out.valid_axioms.len() + out.rejected.len(), nonblank);
    }

    #[test]
    fn metrics_stay_in_range(gold in proptest::collection::vec(axiom(), 1..5), pred in proptest::collection::vec(axiom(), 0..5)) {
        let g = serialize(&gold, false);
        let p = serialize(&pred, false);
        let s = score_pair(&g, &p);
        for v in [s.precision, s.recall, s.f1, s.token_accuracy] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert_eq!(token_accuracy(&g, &p), token_accuracy(&p, &g));
        prop_assert!(score_pair(&g, &g).exact);
        prop_assert_eq!(score_pair(&g, &serialize(&gold, true)).f1, 1.0);
    }

    #[test]
    fn dataset_round_trips(rows in proptest::collection::vec(("[ -~]{1,40}", proptest::collection::vec(axiom(), 1..4)), 0..6)) {
        let examples: Vec<PromptExample> = rows
            .into_iter()
            .map(|(p, axioms)| PromptExample::new(p, serialize(&axioms, false)))
            .collect();
        let bytes = export_dataset(&examples).unwrap();
        prop_assert_eq!(import_dataset(&bytes).unwrap(), examples.clone());
        prop_assert_eq!(export_dataset(&examples).unwrap(), bytes);
    }

    #[test]
    fn translator_output_is_closed(
        who in "[A-Z][a-z]{2,8}",
        what in "[a-z]{3,8}",
    ) {
        let sentence = format!("{who} is a {what}");
        if let Ok(r) = translate(&sentence) {
            let declared: BTreeSet<&EntityName> = r.axioms.iter().filter_map(Axiom::declared_entity).collect();
            for a in &r.axioms {
                for e in a.entities() {
                    prop_assert!(declared.contains(e));
                }
            }
            let asserts = r.axioms.iter().any(|a| matches!(a, Axiom::ClassAssertion { .. }));
            prop_assert!(asserts);
            prop_assert!(r.axioms.iter().filter_map(Axiom::declared_entity).any(|e| e.kind() == EntityKind::NamedIndividual));
        }
    }
}
