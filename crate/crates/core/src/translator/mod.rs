//! Deterministic English → axiom translation.
//!
//! A fixed, ordered catalog of sentence shapes; the first shape that matches
//! produces the axioms. Names follow the usual editor conventions: words are
//! joined with underscores, class and property names are lowercase, and
//! individuals keep their capitalization. A capitalized subject is read as an
//! individual and a lowercase one as a class.
//!
//! Every result declares each entity it mentions, so it can be merged into
//! an empty ontology as-is.

mod lexicon;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lexicon::{
    looks_third_person, normalize_entity_name, parse_count, singularize, third_person, LexiconError,
};

use crate::gateway::Rejection;
use crate::ofs::{canonical_order, Axiom, ClassExpression, EntityKind, EntityName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Pattern,
    Llm,
}

/// Axioms produced for one sentence, with where they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationResult {
    pub sentence: String,
    pub axioms: Vec<Axiom>,
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_completion: Option<String>,
    /// Completion lines dropped by validation (remote backend only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<Rejection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("sentence is empty")]
    EmptySentence,
    #[error("no pattern matches `{0}`")]
    NoPatternMatch(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

type Outcome = Option<Result<Vec<Axiom>, LexiconError>>;

/// One entry of the rule catalog.
pub struct PatternRule {
    pub id: &'static str,
    pub template: &'static str,
    apply: fn(&[&str]) -> Outcome,
}

impl std::fmt::Debug for PatternRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PatternRule")
            .field("id", &self.id)
            .field("template", &self.template)
            .finish()
    }
}

/// The catalog, most specific first.
pub static RULES: [PatternRule; 20] = [
    PatternRule { id: "P1", template: "<I> is a <C> [<C> ...]", apply: p1_instance_of },
    PatternRule { id: "P2", template: "every <C> is a <C> | all <Cs> are <Cs> | <Cs> are a type of <C> | <c1s>, <c2s> ... are <Cs>", apply: p2_subclass },
    PatternRule { id: "P3", template: "<I1> and <I2> are <Cs>", apply: p3_collective_instances },
    PatternRule { id: "P4", template: "no <C1> is a <C2>", apply: p4_disjoint },
    PatternRule { id: "P5", template: "<I> is not a <C>", apply: p5_complement },
    PatternRule { id: "P6", template: "<I1> and <I2> are each other's <rels>", apply: p6_mutual_relation },
    PatternRule { id: "P7", template: "<I> <verb>s <n> <Cs>", apply: p7_exact_count },
    PatternRule { id: "P8", template: "<I> <verb>s <Cs>", apply: p8_some_values },
    PatternRule { id: "P9", template: "<C1s> <verb> only <C2s>", apply: p9_only },
    PatternRule { id: "P10", template: "all <C1s> <verb> exactly|at least|at most <n> <C2>", apply: p10_counted_definition },
    PatternRule { id: "P11", template: "a <C> is a <C2> who <verb>s at least <n> <C3>", apply: p11_intersection_definition },
    PatternRule { id: "P12", template: "<I1>'s <rel> is <I2>", apply: p12_possessive },
    PatternRule { id: "P13", template: "<I1> does not <verb> <I2>", apply: p13_negative_assertion },
    PatternRule { id: "P14", template: "<I1> <verb phrase> <I2>", apply: p14_assertion },
    PatternRule { id: "P15", template: "<I1> and <I2> <verb> each other", apply: p15_reciprocal },
    PatternRule { id: "P16", template: "anyone who is a <rel> is <C>", apply: p16_range },
    PatternRule { id: "P17", template: "anybody who has a <rel1> has a <rel2>", apply: p17_subproperty },
    PatternRule { id: "P18", template: "if X <prop> Y then Y <prop> X", apply: p18_symmetric },
    PatternRule { id: "P19", template: "if X <prop> Y then Y does not <prop> X", apply: p19_asymmetric },
    PatternRule { id: "P20", template: "anyone who <verb>s something is a <C>", apply: p20_domain },
];

const LEADING_KEYWORDS: &[&str] = &[
    "a",
    "an",
    "all",
    "any",
    "anybody",
    "anyone",
    "every",
    "everybody",
    "everyone",
    "if",
    "no",
];

const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "and", "are", "each", "is", "not", "of", "only", "or", "other's", "that", "the",
    "who", "which", "with",
];

/// Splits a sentence into words; commas become separate tokens and trailing
/// punctuation is dropped.
fn tokenize(sentence: &str) -> Vec<String> {
    let trimmed = sentence
        .trim()
        .trim_end_matches(['.', '!', '?', ';'])
        .replace('\u{2019}', "'");
    let mut out = Vec::new();
    for raw in trimmed.split_whitespace() {
        let (word, comma) = match raw.strip_suffix(',') {
            Some(w) => (w, true),
            None => (raw, false),
        };
        if !word.is_empty() {
            out.push(word.to_string());
        }
        if comma {
            out.push(",".to_string());
        }
    }
    if let Some(first) = out.first_mut() {
        let lower = first.to_lowercase();
        if LEADING_KEYWORDS.contains(&lower.as_str()) {
            *first = lower;
        }
    }
    out
}

/// Translates one sentence with the first matching rule.
pub fn translate(sentence: &str) -> Result<TranslationResult, TranslateError> {
    let tokens = tokenize(sentence);
    if tokens.is_empty() {
        return Err(TranslateError::EmptySentence);
    }
    let words: Vec<&str> = tokens.iter().map(String::as_str).collect();
    for rule in &RULES {
        if let Some(outcome) = (rule.apply)(&words) {
            let axioms = outcome?;
            return Ok(TranslationResult {
                sentence: sentence.to_string(),
                axioms,
                backend: Backend::Pattern,
                pattern_id: Some(rule.id.to_string()),
                raw_completion: None,
                rejected: Vec::new(),
            });
        }
    }
    Err(TranslateError::NoPatternMatch(sentence.to_string()))
}

// --- result assembly -------------------------------------------------------

#[derive(Default)]
struct Builder {
    axioms: Vec<Axiom>,
}

impl Builder {
    fn declare(&mut self, phrase: &str, kind: EntityKind) -> Result<EntityName, LexiconError> {
        let name = normalize_entity_name(phrase, kind)?;
        self.axioms.push(Axiom::Declaration(name.clone()));
        Ok(name)
    }

    fn class(&mut self, phrase: &str) -> Result<ClassExpression, LexiconError> {
        Ok(ClassExpression::Named(
            self.declare(phrase, EntityKind::Class)?,
        ))
    }

    fn property(&mut self, phrase: &str) -> Result<EntityName, LexiconError> {
        self.declare(phrase, EntityKind::ObjectProperty)
    }

    fn individual(&mut self, phrase: &str) -> Result<EntityName, LexiconError> {
        self.declare(phrase, EntityKind::NamedIndividual)
    }

    fn push(&mut self, axiom: Axiom) {
        self.axioms.push(axiom);
    }

    fn assert_both_ways(&mut self, property: &EntityName, a: &EntityName, b: &EntityName) {
        for (s, o) in [(a, b), (b, a)] {
            self.push(Axiom::ObjectPropertyAssertion {
                property: property.clone(),
                subject: s.clone(),
                object: o.clone(),
            });
        }
    }

    fn finish(self) -> Outcome {
        Some(Ok(canonical_order(&self.axioms)))
    }
}

/// Runs a fallible construction; the rule has already matched at this point.
fn build(f: impl FnOnce(&mut Builder) -> Result<(), LexiconError>) -> Outcome {
    let mut b = Builder::default();
    match f(&mut b) {
        Ok(()) => b.finish(),
        Err(e) => Some(Err(e)),
    }
}

// --- token classification --------------------------------------------------

fn is_capitalized(w: &str) -> bool {
    w.starts_with(|c: char| c.is_uppercase())
}

fn is_content_lower(w: &str) -> bool {
    !w.is_empty()
        && w.chars()
            .all(|c| c.is_lowercase() || c.is_ascii_digit() || c == '-')
        && w.starts_with(|c: char| c.is_lowercase())
        && !FUNCTION_WORDS.contains(&w)
}

fn is_article(w: &str) -> bool {
    matches!(w, "a" | "an")
}

/// A run of capitalized words naming an individual.
fn individual_phrase(words: &[&str]) -> Option<String> {
    (!words.is_empty() && words.iter().all(|w| is_capitalized(w))).then(|| words.join(" "))
}

/// A run of lowercase content words naming a class or property.
fn lower_phrase(words: &[&str]) -> Option<String> {
    (!words.is_empty() && words.iter().all(|w| is_content_lower(w))).then(|| words.join(" "))
}

/// Lowercase phrase whose head noun is plural; returns it singularized.
fn plural_phrase(words: &[&str]) -> Option<String> {
    let (last, init) = words.split_last()?;
    if !init
        .iter()
        .chain(std::iter::once(last))
        .all(|w| is_content_lower(w))
    {
        return None;
    }
    let mut parts: Vec<String> = init.iter().map(|w| w.to_string()).collect();
    parts.push(singularize(last));
    Some(parts.join(" "))
}

/// Splits on `,` and `and` into non-empty segments; None if any is empty.
fn split_list<'a, 'b>(words: &'b [&'a str]) -> Option<Vec<&'b [&'a str]>> {
    let parts: Vec<&[&str]> = words.split(|w| *w == "," || *w == "and").collect();
    parts.iter().all(|p| !p.is_empty()).then_some(parts)
}

fn position(words: &[&str], target: &str) -> Option<usize> {
    words.iter().position(|w| *w == target)
}

fn cardinality(
    quantifier: &[&str],
    n: u32,
    property: &EntityName,
    filler: ClassExpression,
) -> Option<ClassExpression> {
    let filler = Some(Box::new(filler));
    let property = property.clone();
    match quantifier {
        ["exactly"] => Some(ClassExpression::ExactCardinality {
            n,
            property,
            filler,
        }),
        ["at", "least"] => Some(ClassExpression::MinCardinality {
            n,
            property,
            filler,
        }),
        ["at", "most"] => Some(ClassExpression::MaxCardinality {
            n,
            property,
            filler,
        }),
        _ => None,
    }
}

/// Splits `exactly <n> ...`, `at least <n> ...`, `at most <n> ...`.
fn split_quantifier<'a, 'b>(words: &'b [&'a str]) -> Option<(&'b [&'a str], u32, &'b [&'a str])> {
    let qlen = match words {
        ["exactly", ..] => 1,
        ["at", "least", ..] | ["at", "most", ..] => 2,
        _ => return None,
    };
    let n = parse_count(words.get(qlen)?).ok()?;
    Some((&words[..qlen], n, &words[qlen + 1..]))
}

fn verb_to_property(verb: &str) -> String {
    if looks_third_person(verb) {
        verb.to_string()
    } else {
        third_person(verb)
    }
}

// --- rules -----------------------------------------------------------------

fn p1_instance_of(t: &[&str]) -> Outcome {
    let is = position(t, "is")?;
    let who = individual_phrase(&t[..is])?;
    let rest = &t[is + 1..];
    let (article, classes) = rest.split_first()?;
    if !is_article(article) || classes.is_empty() || classes.len() > 3 {
        return None;
    }
    if !classes.iter().all(|w| is_content_lower(w)) {
        return None;
    }
    build(|b| {
        let ind = b.individual(&who)?;
        for c in classes {
            let class = b.class(c)?;
            b.push(Axiom::ClassAssertion {
                class,
                individual: ind.clone(),
            });
        }
        Ok(())
    })
}

fn subclass_pairs(b: &mut Builder, subs: &[String], sup: &str) -> Result<(), LexiconError> {
    let sup = b.class(sup)?;
    for s in subs {
        let sub = b.class(s)?;
        b.push(Axiom::SubClassOf {
            sub,
            sup: sup.clone(),
        });
    }
    Ok(())
}

fn p2_subclass(t: &[&str]) -> Outcome {
    // every <C> is a <C>
    if t.first() == Some(&"every") {
        let is = position(t, "is")?;
        let sub = lower_phrase(&t[1..is])?;
        let (article, sup) = t[is + 1..].split_first()?;
        if !is_article(article) {
            return None;
        }
        let sup = lower_phrase(sup)?;
        return build(|b| subclass_pairs(b, &[sub], &sup));
    }
    let subject = if t.first() == Some(&"all") {
        &t[1..]
    } else {
        t
    };
    let are = position(subject, "are")?;
    let subs: Vec<String> = split_list(&subject[..are])?
        .into_iter()
        .map(plural_phrase)
        .collect::<Option<_>>()?;
    let object = &subject[are + 1..];
    let sup = match object {
        [a, kind, "of", rest @ ..] if is_article(a) && matches!(*kind, "type" | "kind") => {
            if rest.first().is_some_and(|w| is_article(w)) {
                lower_phrase(&rest[1..])?
            } else {
                lower_phrase(rest)?
            }
        }
        _ => plural_phrase(object)?,
    };
    build(|b| subclass_pairs(b, &subs, &sup))
}

fn p3_collective_instances(t: &[&str]) -> Outcome {
    let are = position(t, "are")?;
    let members: Vec<String> = split_list(&t[..are])?
        .into_iter()
        .map(individual_phrase)
        .collect::<Option<_>>()?;
    if members.len() < 2 {
        return None;
    }
    let class = plural_phrase(&t[are + 1..])?;
    build(|b| {
        let class = b.class(&class)?;
        for m in &members {
            let individual = b.individual(m)?;
            b.push(Axiom::ClassAssertion {
                class: class.clone(),
                individual,
            });
        }
        Ok(())
    })
}

fn p4_disjoint(t: &[&str]) -> Outcome {
    if t.first() != Some(&"no") {
        return None;
    }
    let is = position(t, "is")?;
    let first = lower_phrase(&t[1..is])?;
    let (article, second) = t[is + 1..].split_first()?;
    if !is_article(article) {
        return None;
    }
    let second = lower_phrase(second)?;
    build(|b| {
        let a = b.class(&first)?;
        let c = b.class(&second)?;
        b.push(Axiom::DisjointClasses(vec![a, c]));
        Ok(())
    })
}

fn p5_complement(t: &[&str]) -> Outcome {
    let is = position(t, "is")?;
    let who = individual_phrase(&t[..is])?;
    let [not, article, class] = &t[is + 1..] else {
        return None;
    };
    if *not != "not" || !is_article(article) || !is_content_lower(class) {
        return None;
    }
    build(|b| {
        let ind = b.individual(&who)?;
        let class = b.class(class)?;
        b.push(Axiom::ClassAssertion {
            class: ClassExpression::ComplementOf(Box::new(class)),
            individual: ind,
        });
        Ok(())
    })
}

fn two_individuals(words: &[&str]) -> Option<(String, String)> {
    let and = position(words, "and")?;
    Some((
        individual_phrase(&words[..and])?,
        individual_phrase(&words[and + 1..])?,
    ))
}

fn p6_mutual_relation(t: &[&str]) -> Outcome {
    let are = position(t, "are")?;
    let (a, c) = two_individuals(&t[..are])?;
    let ["each", "other's", rel @ ..] = &t[are + 1..] else {
        return None;
    };
    let rel = plural_phrase(rel)?;
    build(|b| {
        let property = b.property(&format!("has {rel}"))?;
        let a = b.individual(&a)?;
        let c = b.individual(&c)?;
        b.assert_both_ways(&property, &a, &c);
        Ok(())
    })
}

/// `<I> <verb>s ...` with a capitalized subject and a third-person verb.
fn subject_and_verb<'a, 'b>(t: &'b [&'a str]) -> Option<(String, &'a str, &'b [&'a str])> {
    let split = t.iter().position(|w| !is_capitalized(w))?;
    let who = individual_phrase(&t[..split])?;
    let verb = t[split];
    if matches!(verb, "is" | "does" | "and") || !is_content_lower(verb) || !looks_third_person(verb)
    {
        return None;
    }
    Some((who, verb, &t[split + 1..]))
}

fn p7_exact_count(t: &[&str]) -> Outcome {
    let (who, verb, rest) = subject_and_verb(t)?;
    let (count, object) = rest.split_first()?;
    let n = parse_count(count).ok()?;
    let class = plural_phrase(object)?;
    build(|b| {
        let class = b.class(&class)?;
        let property = b.property(verb)?;
        let ind = b.individual(&who)?;
        b.push(Axiom::ClassAssertion {
            class: ClassExpression::ExactCardinality {
                n,
                property,
                filler: Some(Box::new(class)),
            },
            individual: ind,
        });
        Ok(())
    })
}

fn p8_some_values(t: &[&str]) -> Outcome {
    let (who, verb, rest) = subject_and_verb(t)?;
    let object = match rest.first() {
        Some(a) if is_article(a) => &rest[1..],
        _ => rest,
    };
    let class = plural_phrase(object)?;
    build(|b| {
        let class = b.class(&class)?;
        let property = b.property(verb)?;
        let ind = b.individual(&who)?;
        b.push(Axiom::ClassAssertion {
            class: ClassExpression::SomeValuesFrom {
                property,
                filler: Box::new(class),
            },
            individual: ind,
        });
        Ok(())
    })
}

fn p9_only(t: &[&str]) -> Outcome {
    let t = if t.first() == Some(&"all") {
        &t[1..]
    } else {
        t
    };
    let only = position(t, "only")?;
    if only < 2 {
        return None;
    }
    let subject = plural_phrase(&t[..only - 1])?;
    let verb = t[only - 1];
    if !is_content_lower(verb) {
        return None;
    }
    let object = plural_phrase(&t[only + 1..])?;
    build(|b| {
        let sub = b.class(&subject)?;
        let filler = b.class(&object)?;
        let property = b.property(&third_person(verb))?;
        b.push(Axiom::SubClassOf {
            sub,
            sup: ClassExpression::AllValuesFrom {
                property,
                filler: Box::new(filler),
            },
        });
        Ok(())
    })
}

fn p10_counted_definition(t: &[&str]) -> Outcome {
    let ["all", rest @ ..] = t else {
        return None;
    };
    let q = rest.iter().position(|w| matches!(*w, "exactly" | "at"))?;
    if q < 2 {
        return None;
    }
    let subject = plural_phrase(&rest[..q - 1])?;
    let verb = rest[q - 1];
    if !is_content_lower(verb) {
        return None;
    }
    let (quantifier, n, object) = split_quantifier(&rest[q..])?;
    let object = plural_phrase(object)?;
    build(|b| {
        let defined = b.class(&subject)?;
        let filler = b.class(&object)?;
        let property = b.property(&third_person(verb))?;
        let restriction =
            cardinality(quantifier, n, &property, filler).expect("quantifier already split");
        b.push(Axiom::EquivalentClasses(vec![defined, restriction]));
        Ok(())
    })
}

fn p11_intersection_definition(t: &[&str]) -> Outcome {
    let [a1, defined, "is", a2, genus, relative, verb, rest @ ..] = t else {
        return None;
    };
    if !is_article(a1) || !is_article(a2) || !matches!(*relative, "who" | "that" | "which") {
        return None;
    }
    if !is_content_lower(defined) || !is_content_lower(genus) || !is_content_lower(verb) {
        return None;
    }
    let (quantifier, n, object) = split_quantifier(rest)?;
    let object = plural_phrase(object)?;
    build(|b| {
        let defined = b.class(defined)?;
        let genus = b.class(genus)?;
        let filler = b.class(&object)?;
        let property = b.property(&verb_to_property(verb))?;
        let restriction =
            cardinality(quantifier, n, &property, filler).expect("quantifier already split");
        b.push(Axiom::EquivalentClasses(vec![
            defined,
            ClassExpression::IntersectionOf(vec![genus, restriction]),
        ]));
        Ok(())
    })
}

fn p12_possessive(t: &[&str]) -> Outcome {
    let owner_end = t.iter().position(|w| w.ends_with("'s"))?;
    let mut owner: Vec<&str> = t[..=owner_end].to_vec();
    let last = owner.pop()?.strip_suffix("'s")?;
    owner.push(last);
    let owner = individual_phrase(&owner)?;
    let rest = &t[owner_end + 1..];
    let is = position(rest, "is")?;
    let rel = lower_phrase(&rest[..is])?;
    let other = individual_phrase(&rest[is + 1..])?;
    build(|b| {
        let property = b.property(&format!("has {rel}"))?;
        let subject = b.individual(&owner)?;
        let object = b.individual(&other)?;
        b.push(Axiom::ObjectPropertyAssertion {
            property,
            subject,
            object,
        });
        Ok(())
    })
}

fn p13_negative_assertion(t: &[&str]) -> Outcome {
    let split = t.iter().position(|w| !is_capitalized(w))?;
    let subject = individual_phrase(&t[..split])?;
    let rest = match &t[split..] {
        ["does", "not", rest @ ..] | ["doesn't", rest @ ..] => rest,
        _ => return None,
    };
    let obj_start = rest.iter().position(|w| is_capitalized(w))?;
    let (verb, tail) = rest[..obj_start].split_first()?;
    if !is_content_lower(verb) || !tail.iter().all(|w| is_content_lower(w) || is_article(w)) {
        return None;
    }
    let object = individual_phrase(&rest[obj_start..])?;
    let mut phrase = vec![third_person(verb)];
    phrase.extend(tail.iter().map(|w| w.to_string()));
    let phrase = phrase.join(" ");
    build(|b| {
        let property = b.property(&phrase)?;
        let s = b.individual(&subject)?;
        let o = b.individual(&object)?;
        b.push(Axiom::NegativeObjectPropertyAssertion {
            property,
            subject: s,
            object: o,
        });
        Ok(())
    })
}

fn p14_assertion(t: &[&str]) -> Outcome {
    let split = t.iter().position(|w| !is_capitalized(w))?;
    let subject = individual_phrase(&t[..split])?;
    let obj_start = split + t[split..].iter().position(|w| is_capitalized(w))?;
    let verb_phrase = &t[split..obj_start];
    let object = individual_phrase(&t[obj_start..])?;
    let allowed = |w: &&str| {
        w.chars().all(|c| c.is_lowercase() || c == '-') && !matches!(*w, "and" | "or" | "not")
    };
    if verb_phrase.is_empty() || !verb_phrase.iter().all(allowed) {
        return None;
    }
    let phrase = verb_phrase.join(" ");
    build(|b| {
        let property = b.property(&phrase)?;
        let s = b.individual(&subject)?;
        let o = b.individual(&object)?;
        b.push(Axiom::ObjectPropertyAssertion {
            property,
            subject: s,
            object: o,
        });
        Ok(())
    })
}

fn p15_reciprocal(t: &[&str]) -> Outcome {
    let [head @ .., verb, "each", "other"] = t else {
        return None;
    };
    let (a, c) = two_individuals(head)?;
    if !is_content_lower(verb) {
        return None;
    }
    build(|b| {
        let property = b.property(&third_person(verb))?;
        let a = b.individual(&a)?;
        let c = b.individual(&c)?;
        b.assert_both_ways(&property, &a, &c);
        Ok(())
    })
}

fn anyone(w: &str) -> bool {
    matches!(w, "anyone" | "anybody" | "everyone" | "everybody")
}

fn p16_range(t: &[&str]) -> Outcome {
    let [someone, "who", "is", article, rel, "is", class @ ..] = t else {
        return None;
    };
    if !anyone(someone) || !is_article(article) || !is_content_lower(rel) {
        return None;
    }
    let class = match class {
        [a, rest @ ..] if is_article(a) => rest,
        _ => class,
    };
    let class = lower_phrase(class)?;
    build(|b| {
        let range = b.class(&class)?;
        let property = b.property(&format!("has {rel}"))?;
        b.push(Axiom::ObjectPropertyRange {
            property,
            class: range,
        });
        Ok(())
    })
}

fn p17_subproperty(t: &[&str]) -> Outcome {
    let [someone, "who", "has", a1, rel1, "has", a2, rel2] = t else {
        return None;
    };
    if !anyone(someone) || !is_article(a1) || !is_article(a2) {
        return None;
    }
    if !is_content_lower(rel1) || !is_content_lower(rel2) {
        return None;
    }
    build(|b| {
        let sub = b.property(&format!("has {rel1}"))?;
        let sup = b.property(&format!("has {rel2}"))?;
        b.push(Axiom::SubObjectPropertyOf { sub, sup });
        Ok(())
    })
}

fn is_variable(w: &str) -> bool {
    w.len() == 1 && w.chars().all(|c| c.is_ascii_uppercase())
}

/// `if X <prop> Y then Y <second> X`, returning (`prop`, `second`).
fn conditional<'a, 'b>(t: &'b [&'a str]) -> Option<(&'b [&'a str], &'b [&'a str])> {
    let ["if", x, rest @ ..] = t else {
        return None;
    };
    let then = position(rest, "then")?;
    let [prop @ .., y] = &rest[..then] else {
        return None;
    };
    let [y2, second @ .., x2] = &rest[then + 1..] else {
        return None;
    };
    if !is_variable(x) || !is_variable(y) || x == y || y2 != y || x2 != x {
        return None;
    }
    if prop.is_empty() || !prop.iter().all(|w| is_content_lower(w)) {
        return None;
    }
    Some((prop, second))
}

fn p18_symmetric(t: &[&str]) -> Outcome {
    let (prop, second) = conditional(t)?;
    if prop != second {
        return None;
    }
    let phrase = prop.join(" ");
    build(|b| {
        let p = b.property(&phrase)?;
        b.push(Axiom::SymmetricObjectProperty(p));
        Ok(())
    })
}

fn p19_asymmetric(t: &[&str]) -> Outcome {
    let (prop, second) = conditional(t)?;
    let base = match second {
        ["does", "not", base @ ..] | ["doesn't", base @ ..] => base,
        _ => return None,
    };
    let (verb, tail) = base.split_first()?;
    let (pverb, ptail) = prop.split_first()?;
    if third_person(verb) != *pverb || tail != ptail {
        return None;
    }
    let phrase = prop.join(" ");
    build(|b| {
        let p = b.property(&phrase)?;
        b.push(Axiom::AsymmetricObjectProperty(p));
        Ok(())
    })
}

fn p20_domain(t: &[&str]) -> Outcome {
    let [someone, "who", verb, "something", "is", article, class @ ..] = t else {
        return None;
    };
    if !anyone(someone) || !is_article(article) || !is_content_lower(verb) {
        return None;
    }
    let class = lower_phrase(class)?;
    build(|b| {
        let domain = b.class(&class)?;
        let property = b.property(&verb_to_property(verb))?;
        b.push(Axiom::ObjectPropertyDomain {
            property,
            class: domain,
        });
        Ok(())
    })
}
