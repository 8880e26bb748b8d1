use std::collections::BTreeSet;

use ontoforge_core::eval::{evaluate, pattern_backend};
use ontoforge_core::gateway::{export_dataset, import_dataset};
use ontoforge_core::gold::{gold_axioms, gold_examples, GOLD_PAIRS, SCENARIO};
use ontoforge_core::ofs::{canonical_set, parse_document, serialize};
use ontoforge_core::store::{commit, stage, ItemStatus, Ontology, StoreError};
use ontoforge_core::translator::translate;
use ontoforge_core::{Axiom, EntityKind};

fn accept_new(staged: &ontoforge_core::store::StagedChange) -> BTreeSet<usize> {
    staged
        .items
        .iter()
        .enumerate()
        .filter(|(_, i)| i.status == ItemStatus::New)
        .map(|(k, _)| k)
        .collect()
}

fn enrich(mut ontology: Ontology, sentences: &[&str]) -> Ontology {
    for s in sentences {
        let r = translate(s).unwrap();
        let staged = stage(&ontology, &r.axioms, s);
        let accept = accept_new(&staged);
        ontology = commit(&ontology, &staged, &accept).unwrap().0;
    }
    ontology
}

#[test]
fn scenario_builds_the_family_ontology() {
    let o = enrich(Ontology::new(), &SCENARIO);
    let sig = o.signature();
    assert_eq!(sig.individuals, ["Anna", "Lana", "Nola"]);
    assert_eq!(sig.classes, ["girl"]);
    assert_eq!(sig.object_properties, ["has_cousin", "has_sister"]);
}

#[test]
fn plural_sentence_equals_two_singulars() {
    let a = enrich(Ontology::new(), &SCENARIO[..2]);
    let b = enrich(Ontology::new(), &SCENARIO[2..3]);
    assert_eq!(a.axioms(), b.axioms());
}

#[test]
fn repeating_a_sentence_stages_only_duplicates() {
    let o = enrich(Ontology::new(), &SCENARIO[..1]);
    let r = translate(SCENARIO[0]).unwrap();
    let staged = stage(&o, &r.axioms, SCENARIO[0]);
    assert_eq!(staged.count(ItemStatus::Duplicate), 3);
    assert_eq!(staged.count(ItemStatus::New), 0);
}

#[test]
fn stage_goes_stale_when_a_name_changes_kind() {
    let o = Ontology::new();
    let staged = stage(&o, &translate(SCENARIO[0]).unwrap().axioms, SCENARIO[0]);
    let other = stage(
        &o,
        &[Axiom::declare("girl", EntityKind::NamedIndividual)],
        "other",
    );
    let (moved, _) = commit(&o, &other, &BTreeSet::from([0])).unwrap();
    assert!(matches!(
        commit(&moved, &staged, &accept_new(&staged)),
        Err(StoreError::StaleStage { .. })
    ));

    // an unrelated change only reclassifies
    let other = stage(&o, &translate("Nola is a girl").unwrap().axioms, "n");
    let (moved, _) = commit(&o, &other, &accept_new(&other)).unwrap();
    let (done, report) = commit(&moved, &staged, &accept_new(&staged)).unwrap();
    assert_eq!(report.added, 2);
    assert_eq!(report.skipped_duplicates, 1);
    assert!(done.revision() > moved.revision());
}

#[test]
fn gold_corpus_round_trips_and_evaluates() {
    for i in 0..GOLD_PAIRS.len() {
        let axioms = gold_axioms(i);
        let text = serialize(&axioms, true);
        let doc = parse_document(&format!("Ontology({text})")).unwrap();
        assert_eq!(canonical_set(&doc.axioms), canonical_set(&axioms));
    }
    let bytes = export_dataset(&gold_examples()).unwrap();
    assert_eq!(import_dataset(&bytes).unwrap(), gold_examples());
    let bundled = include_bytes!("../../../data/gold.jsonl");
    assert_eq!(&bytes[..], &bundled[..]);

    let report = evaluate(&gold_examples(), &pattern_backend);
    assert_eq!(report.summary.exact_match_rate, 1.0);
}
