//! Bundled gold corpus: nineteen sentences with their reference translations,
//! plus the five-sentence family scenario used to exercise staging.
//!
//! The reference translation of "Jenna is a fan of Britney Spears" in the
//! original listing also contained `Declaration(Class(:movie))`. Nothing in
//! the sentence mentions a movie, so the corpus omits that line.

use crate::gateway::PromptExample;
use crate::ofs::{parse_lines, Axiom};

/// `(sentence, reference translation)` pairs, one axiom per line.
pub const GOLD_PAIRS: [(&str, &str); 19] = [
    (
        "Anna is a girl",
        "Declaration(Class(:girl))\n\
         Declaration(NamedIndividual(:Anna))\n\
         ClassAssertion(:girl :Anna)",
    ),
    (
        "every rose is a flower",
        "Declaration(Class(:flower))\n\
         Declaration(Class(:rose))\n\
         SubClassOf(:rose :flower)",
    ),
    (
        "Brandon is a male artist",
        "Declaration(Class(:male))\n\
         Declaration(Class(:artist))\n\
         Declaration(NamedIndividual(:Brandon))\n\
         ClassAssertion(:male :Brandon)\n\
         ClassAssertion(:artist :Brandon)",
    ),
    (
        "no woman is a man",
        "Declaration(Class(:man))\n\
         Declaration(Class(:woman))\n\
         DisjointClasses(:man :woman)",
    ),
    (
        "Tina is not a cat",
        "Declaration(Class(:cat))\n\
         Declaration(NamedIndividual(:Tina))\n\
         ClassAssertion(ObjectComplementOf(:cat) :Tina)",
    ),
    (
        "Sarah and Anna are each other's sisters",
        "Declaration(ObjectProperty(:has_sister))\n\
         Declaration(NamedIndividual(:Anna))\n\
         Declaration(NamedIndividual(:Sarah))\n\
         ObjectPropertyAssertion(:has_sister :Anna :Sarah)\n\
         ObjectPropertyAssertion(:has_sister :Sarah :Anna)",
    ),
    (
        "Mia owns 2 bikes",
        "Declaration(Class(:bike))\n\
         Declaration(ObjectProperty(:owns))\n\
         Declaration(NamedIndividual(:Mia))\n\
         ClassAssertion(ObjectExactCardinality(2 :owns :bike) :Mia)",
    ),
    (
        "Michael owns tractors",
        "Declaration(Class(:tractor))\n\
         Declaration(ObjectProperty(:owns))\n\
         Declaration(NamedIndividual(:Michael))\n\
         ClassAssertion(ObjectSomeValuesFrom(:owns :tractor) :Michael)",
    ),
    (
        "rabbits eat only carrots",
        "Declaration(Class(:carrot))\n\
         Declaration(Class(:rabbit))\n\
         Declaration(ObjectProperty(:eats))\n\
         SubClassOf(:rabbit ObjectAllValuesFrom(:eats :carrot))",
    ),
    (
        "all animals have exactly one tail",
        "Declaration(Class(:animal))\n\
         Declaration(Class(:tail))\n\
         Declaration(ObjectProperty(:has))\n\
         EquivalentClasses(:animal ObjectExactCardinality(1 :has :tail))",
    ),
    (
        "a mother is a female who has at least 1 child",
        "Declaration(Class(:child))\n\
         Declaration(Class(:female))\n\
         Declaration(Class(:mother))\n\
         Declaration(ObjectProperty(:has))\n\
         EquivalentClasses(:mother ObjectIntersectionOf(:female ObjectMinCardinality(1 :has :child)))",
    ),
    (
        "Penn's mother is Sonia",
        "Declaration(ObjectProperty(:has_mother))\n\
         Declaration(NamedIndividual(:Penn))\n\
         Declaration(NamedIndividual(:Sonia))\n\
         ObjectPropertyAssertion(:has_mother :Penn :Sonia)",
    ),
    (
        "Anna does not know Sabina",
        "Declaration(ObjectProperty(:knows))\n\
         Declaration(NamedIndividual(:Anna))\n\
         Declaration(NamedIndividual(:Sabina))\n\
         NegativeObjectPropertyAssertion(:knows :Anna :Sabina)",
    ),
    (
        "Jenna is a fan of Britney Spears",
        "Declaration(ObjectProperty(:is_a_fan_of))\n\
         Declaration(NamedIndividual(:Britney_Spears))\n\
         Declaration(NamedIndividual(:Jenna))\n\
         ObjectPropertyAssertion(:is_a_fan_of :Jenna :Britney_Spears)",
    ),
    (
        "Cora and Meena hate each other",
        "Declaration(ObjectProperty(:hates))\n\
         Declaration(NamedIndividual(:Cora))\n\
         Declaration(NamedIndividual(:Meena))\n\
         ObjectPropertyAssertion(:hates :Cora :Meena)\n\
         ObjectPropertyAssertion(:hates :Meena :Cora)",
    ),
    (
        "anyone who is a sister is female",
        "Declaration(Class(:female))\n\
         Declaration(ObjectProperty(:has_sister))\n\
         ObjectPropertyRange(:has_sister :female)",
    ),
    (
        "anybody who has a brother has a sibling",
        "Declaration(ObjectProperty(:has_brother))\n\
         Declaration(ObjectProperty(:has_sibling))\n\
         SubObjectPropertyOf(:has_brother :has_sibling)",
    ),
    (
        "if X has friend Y then Y has friend X",
        "Declaration(ObjectProperty(:has_friend))\n\
         SymmetricObjectProperty(:has_friend)",
    ),
    (
        "if X has mother Y then Y does not have mother X",
        "Declaration(ObjectProperty(:has_mother))\n\
         AsymmetricObjectProperty(:has_mother)",
    ),
];

/// The family scenario, in order: two single assertions, their collective
/// restatement, then two symmetric relations.
pub const SCENARIO: [&str; 5] = [
    "Anna is a girl",
    "Lana is a girl",
    "Anna and Lana are girls",
    "Anna and Lana are each other's sisters",
    "Nola and Anna are each other's cousins",
];

/// The gold corpus as prompt/completion pairs.
pub fn gold_examples() -> Vec<PromptExample> {
    GOLD_PAIRS
        .iter()
        .map(|(p, c)| PromptExample::new(*p, *c))
        .collect()
}

/// Parsed reference axioms for one gold row.
pub fn gold_axioms(index: usize) -> Vec<Axiom> {
    parse_lines(GOLD_PAIRS[index].1).expect("gold corpus parses")
}
