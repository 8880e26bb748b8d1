//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use axum::http::StatusCode;
use ontoforge_core::eval::{evaluate, pattern_backend, score_pair};
use ontoforge_core::gateway::{
    export_dataset, import_dataset, validate_completion, RejectReason, Verdict,
};
use ontoforge_core::gold::{gold_axioms, gold_examples, GOLD_PAIRS, SCENARIO};
use ontoforge_core::ofs::{canonical_set, parse_axiom, parse_lines, MAX_CARDINALITY};
use ontoforge_core::store::{commit, load_document, stage, ItemStatus, Ontology};
use ontoforge_core::translator::translate;
use ontoforge_core::{Axiom, ClassExpression, EntityName};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::Api;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gold_reproduction() -> Outcome {
    for (i, (prompt, _)) in GOLD_PAIRS.iter().enumerate() {
        let got = translate(prompt).map_err(|e| format!("`{prompt}`: {e}"))?;
        check(
            canonical_set(&got.axioms) == canonical_set(&gold_axioms(i)),
            || format!("`{prompt}` differs from gold"),
        )?;
    }
    let report = evaluate(&gold_examples(), &pattern_backend);
    check(report.summary.exact_match_rate == 1.0, || {
        format!("exact-match rate {}", report.summary.exact_match_rate)
    })?;
    Ok(format!(
        "{} prompts, exact-match rate 1.0",
        report.summary.count
    ))
}

struct Gen(ChaCha8Rng);

impl Gen {
    fn pick(&mut self, alphabet: &[u8], len: usize) -> String {
        (0..len)
            .map(|_| alphabet[self.0.random_range(0..alphabet.len())] as char)
            .collect()
    }

    fn local(&mut self, first: &[u8]) -> String {
        let len = self.0.random_range(0..6);
        let mut s = self.pick(first, 1);
        s.push_str(&self.pick(
            b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_",
            len,
        ));
        s
    }

    fn class(&mut self) -> EntityName {
        EntityName::class(&self.local(b"abcdefghijklmnopqrstuvwxyz"))
    }
    fn property(&mut self) -> EntityName {
        EntityName::property(&self.local(b"abcdefghijklmnopqrstuvwxyz"))
    }
    fn individual(&mut self) -> EntityName {
        EntityName::individual(&self.local(b"ABCDEFGHIJKLMNOPQRSTUVWXYZ"))
    }

    fn count(&mut self) -> u32 {
        match self.0.random_range(0..3) {
            0 => self.0.random_range(0..10),
            1 => MAX_CARDINALITY,
            _ => self.0.random_range(0..=MAX_CARDINALITY),
        }
    }

    /// A class expression of depth at most `depth`.
    fn expr(&mut self, depth: usize) -> ClassExpression {
        if depth <= 1 || self.0.random_bool(0.3) {
            return ClassExpression::Named(self.class());
        }
        let d = depth - 1;
        match self.0.random_range(0..7) {
            0 => ClassExpression::ComplementOf(Box::new(self.expr(d))),
            1 => {
                let n = self.0.random_range(2..4);
                ClassExpression::IntersectionOf((0..n).map(|_| self.expr(d)).collect())
            }
            2 => ClassExpression::SomeValuesFrom {
                property: self.property(),
                filler: Box::new(self.expr(d)),
            },
            3 => ClassExpression::AllValuesFrom {
                property: self.property(),
                filler: Box::new(self.expr(d)),
            },
            k => {
                let n = self.count();
                let property = self.property();
                let filler = self.0.random_bool(0.7).then(|| Box::new(self.expr(d)));
                match k {
                    4 => ClassExpression::ExactCardinality {
                        n,
                        property,
                        filler,
                    },
                    5 => ClassExpression::MinCardinality {
                        n,
                        property,
                        filler,
                    },
                    _ => ClassExpression::MaxCardinality {
                        n,
                        property,
                        filler,
                    },
                }
            }
        }
    }

    fn exprs(&mut self) -> Vec<ClassExpression> {
        let n = self.0.random_range(2..5);
        (0..n).map(|_| self.expr(4)).collect()
    }

    fn axiom(&mut self) -> Axiom {
        match self.0.random_range(0..14) {
            0 => Axiom::Declaration(self.class()),
            1 => Axiom::Declaration(self.property()),
            2 => Axiom::Declaration(self.individual()),
            3 => Axiom::ClassAssertion {
                class: self.expr(4),
                individual: self.individual(),
            },
            4 => Axiom::SubClassOf {
                sub: self.expr(4),
                sup: self.expr(4),
            },
            5 => Axiom::DisjointClasses(self.exprs()),
            6 => Axiom::EquivalentClasses(self.exprs()),
            7 => Axiom::ObjectPropertyAssertion {
                property: self.property(),
                subject: self.individual(),
                object: self.individual(),
            },
            8 => Axiom::NegativeObjectPropertyAssertion {
                property: self.property(),
                subject: self.individual(),
                object: self.individual(),
            },
            9 => Axiom::ObjectPropertyDomain {
                property: self.property(),
                class: self.expr(4),
            },
            10 => Axiom::ObjectPropertyRange {
                property: self.property(),
                class: self.expr(4),
            },
            11 => Axiom::SubObjectPropertyOf {
                sub: self.property(),
                sup: self.property(),
            },
            12 => Axiom::SymmetricObjectProperty(self.property()),
            _ => Axiom::AsymmetricObjectProperty(self.property()),
        }
    }
}

fn max_depth(a: &Axiom) -> usize {
    match a {
        Axiom::ClassAssertion { class, .. }
        | Axiom::ObjectPropertyDomain { class, .. }
        | Axiom::ObjectPropertyRange { class, .. } => class.depth(),
        Axiom::SubClassOf { sub, sup } => sub.depth().max(sup.depth()),
        Axiom::DisjointClasses(v) | Axiom::EquivalentClasses(v) => {
            v.iter().map(ClassExpression::depth).max().unwrap_or(0)
        }
        _ => 0,
    }
}

fn parser_round_trip() -> Outcome {
    let mut g = Gen(ChaCha8Rng::seed_from_u64(0x0f5));
    let mut deepest = 0;
    for i in 0..1000 {
        let a = g.axiom();
        deepest = deepest.max(max_depth(&a));
        check(max_depth(&a) <= 4, || {
            format!("generator exceeded depth 4 at #{i}")
        })?;
        let text = a.to_string();
        let back = parse_axiom(&text).map_err(|e| format!("#{i} `{text}`: {e}"))?;
        check(back == a, || {
            format!("#{i} `{text}` parsed to a different axiom")
        })?;
    }
    let mut gold = 0;
    for (_, completion) in GOLD_PAIRS {
        for line in completion.lines() {
            let a = parse_axiom(line).map_err(|e| format!("gold `{line}`: {e}"))?;
            check(parse_axiom(&a.to_string()).as_ref() == Ok(&a), || {
                format!("gold `{line}`")
            })?;
            gold += 1;
        }
    }
    Ok(format!(
        "1000 random axioms (max depth {deepest}) and {gold} gold axioms"
    ))
}

const FINAL_SCENARIO: &str = "\
Declaration(Class(:girl))
Declaration(ObjectProperty(:has_cousin))
Declaration(ObjectProperty(:has_sister))
Declaration(NamedIndividual(:Anna))
Declaration(NamedIndividual(:Lana))
Declaration(NamedIndividual(:Nola))
ClassAssertion(:girl :Anna)
ClassAssertion(:girl :Lana)
ObjectPropertyAssertion(:has_sister :Anna :Lana)
ObjectPropertyAssertion(:has_sister :Lana :Anna)
ObjectPropertyAssertion(:has_cousin :Nola :Anna)
ObjectPropertyAssertion(:has_cousin :Anna :Nola)";

async fn ontology_of(api: &Api, session: &str) -> Result<Ontology, String> {
    let (status, text) = api.text(&format!("/sessions/{session}/ontology")).await;
    check(status == StatusCode::OK, || {
        format!("GET ontology: {status}")
    })?;
    load_document(&text).map_err(|e| e.to_string())
}

async fn scenario_replay() -> Outcome {
    let api = Api::new(None);
    let id = api.new_session(None).await;
    for s in SCENARIO {
        api.enrich(&id, s).await;
    }
    let got = ontology_of(&api, &id).await?;
    let want = canonical_set(&parse_lines(FINAL_SCENARIO).unwrap());
    check(got.axioms() == &want, || {
        let extra: Vec<String> = got
            .axioms()
            .difference(&want)
            .map(Axiom::to_string)
            .collect();
        let missing: Vec<String> = want
            .difference(got.axioms())
            .map(Axiom::to_string)
            .collect();
        format!("extra {extra:?}, missing {missing:?}")
    })?;

    let split = api.new_session(None).await;
    api.enrich(&split, SCENARIO[0]).await;
    api.enrich(&split, SCENARIO[1]).await;
    let joint = api.new_session(None).await;
    api.enrich(&joint, SCENARIO[2]).await;
    let a = ontology_of(&api, &split).await?;
    let b = ontology_of(&api, &joint).await?;
    check(a.axioms() == b.axioms(), || {
        "s3 differs from s1 then s2".into()
    })?;
    Ok(format!("s1..s5 gives {} axioms; s3 == s1+s2", got.len()))
}

async fn duplicate_suppression() -> Outcome {
    let mut ontology = Ontology::new();
    let mut stages = 0;
    for s in SCENARIO {
        let staged = stage(&ontology, &translate(s).unwrap().axioms, s);
        let all: BTreeSet<usize> = (0..staged.items.len()).collect();
        let (next, _) = commit(&ontology, &staged, &all).map_err(|e| e.to_string())?;
        let (again, report) = commit(&next, &staged, &all).map_err(|e| e.to_string())?;
        check(report.added == 0 && again.axioms() == next.axioms(), || {
            format!("recommit of `{s}` added {}", report.added)
        })?;
        ontology = next;
        stages += 1;
    }

    let api = Api::new(None);
    let id = api.new_session(None).await;
    api.enrich(&id, SCENARIO[0]).await;
    let (_, staged) = api.translate(&id, SCENARIO[1]).await;
    let dups = staged["stage"]["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["status"] == serde_json::json!(ItemStatus::Duplicate))
        .count();
    check(dups == 1, || format!("s2 after s1 had {dups} duplicates"))?;
    Ok(format!(
        "{stages} recommits added 0; s2 after s1 has 1 duplicate"
    ))
}

fn validator_rejections() -> Outcome {
    let out = validate_completion("is(Anna, girl)", &Ontology::new());
    check(out.verdict == Verdict::Unusable, || {
        format!("free-form relation gave {:?}", out.verdict)
    })?;

    let raw = format!(
        "{}\nObjectPropertyAssertion(:married_to :Anna :girl)",
        GOLD_PAIRS[0].1
    );
    let out = validate_completion(&raw, &Ontology::new());
    check(out.verdict == Verdict::Partial, || {
        format!("ill-typed completion gave {:?}", out.verdict)
    })?;
    check(
        out.rejected.len() == 1
            && matches!(out.rejected[0].reason, RejectReason::IllTyped(_))
            && out.rejected[0].line == "ObjectPropertyAssertion(:married_to :Anna :girl)",
        || format!("rejections {:?}", out.rejected),
    )?;
    check(
        canonical_set(&out.valid_axioms) == canonical_set(&gold_axioms(0)),
        || "well-typed lines were not preserved".into(),
    )?;
    Ok("Unusable and Partial verdicts as expected".into())
}

fn metric_sanity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut permutations = 0;
    for (_, gold) in GOLD_PAIRS {
        let s = score_pair(gold, gold);
        check(s.f1 == 1.0 && s.token_accuracy == 1.0, || {
            format!("self-score {s:?}")
        })?;
        let mut lines: Vec<&str> = gold.lines().collect();
        let drop_last = lines.len() > 1;
        for _ in 0..20 {
            lines.shuffle(&mut rng);
            let partial = if drop_last { &lines[1..] } else { &lines[..] };
            let base = score_pair(gold, &partial.join("\n")).f1;
            let mut shuffled = partial.to_vec();
            shuffled.shuffle(&mut rng);
            let again = score_pair(gold, &shuffled.join("\n")).f1;
            check(base == again, || {
                format!("permutation changed f1 {base} -> {again}")
            })?;
            permutations += 1;
        }
    }
    let gold = GOLD_PAIRS[0].1;
    let two: Vec<&str> = gold.lines().take(2).collect();
    let f1 = score_pair(gold, &two.join("\n")).f1;
    check((f1 - 0.8).abs() < 1e-12, || format!("2-of-3 f1 = {f1}"))?;
    Ok(format!(
        "self f1 1.0, 2-of-3 f1 {f1}, {permutations} permutations stable"
    ))
}

fn dataset_round_trip() -> Outcome {
    let first = export_dataset(&gold_examples()).map_err(|e| e.to_string())?;
    let second = export_dataset(&gold_examples()).map_err(|e| e.to_string())?;
    check(first == second, || "two exports differ".into())?;
    let back = import_dataset(&first).map_err(|e| e.to_string())?;
    check(back == gold_examples(), || "reimport differs".into())?;
    let reexport = export_dataset(&back).map_err(|e| e.to_string())?;
    check(reexport == first, || "re-export differs".into())?;
    Ok(format!("{} bytes, byte-stable", first.len()))
}

fn report(name: &str, outcome: &Outcome, failures: &mut Vec<String>) {
    match outcome {
        Ok(detail) => println!("PASS  {name}: {detail}"),
        Err(why) => {
            println!("FAIL  {name}: {why}");
            failures.push(name.to_string());
        }
    }
}

#[tokio::test]
async fn acceptance() {
    let start = Instant::now();
    let mut failures = Vec::new();
    report(
        "gold-corpus reproduction",
        &gold_reproduction(),
        &mut failures,
    );
    report("parser round-trip", &parser_round_trip(), &mut failures);
    report("scenario replay", &scenario_replay().await, &mut failures);
    report(
        "duplicate suppression",
        &duplicate_suppression().await,
        &mut failures,
    );
    report(
        "validator rejections",
        &validator_rejections(),
        &mut failures,
    );
    report("metric sanity", &metric_sanity(), &mut failures);
    report("dataset round-trip", &dataset_round_trip(), &mut failures);
    let elapsed = start.elapsed();
    let timing = if elapsed < Duration::from_secs(60) {
        Ok(format!("{:.2}s", elapsed.as_secs_f64()))
    } else {
        Err(format!("{:.2}s", elapsed.as_secs_f64()))
    };
    report("total runtime under 60 s", &timing, &mut failures);
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
