//! Word-level helpers: name normalization, plural stripping, number words
//! and verb agreement.

use thiserror::Error;

use crate::ofs::{EntityKind, EntityName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("`{0}` cannot be turned into an entity name")]
    UnrepresentableName(String),
    #[error("`{0}` is not a number")]
    NotANumber(String),
}

/// Joins words with underscores; classes and properties are lowercased,
/// individuals keep their capitalization. Hyphens become underscores.
pub fn normalize_entity_name(phrase: &str, kind: EntityKind) -> Result<EntityName, LexiconError> {
    let unrepresentable = || LexiconError::UnrepresentableName(phrase.to_string());
    if phrase
        .chars()
        .any(|c| !(c.is_ascii_alphanumeric() || c == ' ' || c == '-'))
    {
        return Err(unrepresentable());
    }
    let joined = phrase
        .split([' ', '-'])
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join("_");
    let local = match kind {
        EntityKind::NamedIndividual => joined,
        EntityKind::Class | EntityKind::ObjectProperty => joined.to_lowercase(),
    };
    EntityName::new(local, kind).map_err(|_| unrepresentable())
}

const IRREGULAR_PLURALS: &[(&str, &str)] = &[
    ("children", "child"),
    ("people", "person"),
    ("men", "man"),
    ("women", "woman"),
    ("mice", "mouse"),
    ("feet", "foot"),
    ("teeth", "tooth"),
    ("geese", "goose"),
];

const VES_PLURALS: &[(&str, &str)] = &[
    ("calves", "calf"),
    ("elves", "elf"),
    ("halves", "half"),
    ("knives", "knife"),
    ("leaves", "leaf"),
    ("lives", "life"),
    ("loaves", "loaf"),
    ("shelves", "shelf"),
    ("thieves", "thief"),
    ("wives", "wife"),
    ("wolves", "wolf"),
];

/// Singular form of an English noun; unknown shapes are returned unchanged.
pub fn singularize(noun: &str) -> String {
    let lower = noun.to_ascii_lowercase();
    let lookup = |table: &[(&str, &'static str)]| {
        table
            .iter()
            .find(|(plural, _)| *plural == lower)
            .map(|(_, single)| *single)
    };
    if let Some(single) = lookup(IRREGULAR_PLURALS).or_else(|| lookup(VES_PLURALS)) {
        return match_case(noun, single);
    }
    let n = noun.len();
    if lower.ends_with("ies") && n > 4 {
        return format!("{}y", &noun[..n - 3]);
    }
    for suffix in ["sses", "xes", "zes", "ches", "shes"] {
        if lower.ends_with(suffix) {
            return noun[..n - 2].to_string();
        }
    }
    if lower.ends_with("ss") || lower.ends_with("us") || lower.ends_with("is") || n < 3 {
        return noun.to_string();
    }
    match lower.strip_suffix('s') {
        Some(_) => noun[..n - 1].to_string(),
        None => noun.to_string(),
    }
}

fn match_case(original: &str, replacement: &str) -> String {
    if original.starts_with(|c: char| c.is_ascii_uppercase()) {
        let mut chars = replacement.chars();
        chars
            .next()
            .map(|c| c.to_ascii_uppercase().to_string() + chars.as_str())
            .unwrap_or_default()
    } else {
        replacement.to_string()
    }
}

const NUMBER_WORDS: [&str; 21] = [
    "zero",
    "one",
    "two",
    "three",
    "four",
    "five",
    "six",
    "seven",
    "eight",
    "nine",
    "ten",
    "eleven",
    "twelve",
    "thirteen",
    "fourteen",
    "fifteen",
    "sixteen",
    "seventeen",
    "eighteen",
    "nineteen",
    "twenty",
];

/// Decimal numeral or an English number word from zero to twenty.
pub fn parse_count(token: &str) -> Result<u32, LexiconError> {
    let not_a_number = || LexiconError::NotANumber(token.to_string());
    if !token.is_empty() && token.bytes().all(|b| b.is_ascii_digit()) {
        return token
            .parse::<u32>()
            .ok()
            .filter(|n| *n <= crate::ofs::MAX_CARDINALITY)
            .ok_or_else(not_a_number);
    }
    let lower = token.to_ascii_lowercase();
    NUMBER_WORDS
        .iter()
        .position(|w| *w == lower)
        .map(|i| i as u32)
        .ok_or_else(not_a_number)
}

/// Third-person singular present: `eat` → `eats`, `have` → `has`.
pub fn third_person(verb: &str) -> String {
    match verb {
        "have" => return "has".into(),
        "be" | "are" => return "is".into(),
        "do" => return "does".into(),
        _ => {}
    }
    let bytes = verb.as_bytes();
    let n = bytes.len();
    if verb.ends_with('y') && n >= 2 && !b"aeiou".contains(&bytes[n - 2]) {
        return format!("{}ies", &verb[..n - 1]);
    }
    if ["s", "x", "z", "ch", "sh", "o"]
        .iter()
        .any(|s| verb.ends_with(s))
    {
        return format!("{verb}es");
    }
    format!("{verb}s")
}

/// Rough check that a word is a third-person singular verb form.
pub fn looks_third_person(word: &str) -> bool {
    word.len() > 2 && word.ends_with('s') && !word.ends_with("ss")
}
