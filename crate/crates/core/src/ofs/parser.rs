use super::lexer::{Lexer, Token, TokenKind};
use super::{
    is_valid_local, Axiom, ClassExpression, EntityKind, EntityName, OntologyDocument, ParseError,
    MAX_CARDINALITY,
};

const MAX_NESTING: usize = 128;

/// OWL 2 constructors that exist in the standard but not in our subset.
const UNSUPPORTED: &[&str] = &[
    "Annotation",
    "AnnotationAssertion",
    "AnnotationProperty",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
    "DataAllValuesFrom",
    "DataComplementOf",
    "DataExactCardinality",
    "DataHasValue",
    "DataIntersectionOf",
    "DataMaxCardinality",
    "DataMinCardinality",
    "DataOneOf",
    "DataProperty",
    "DataPropertyAssertion",
    "DataPropertyDomain",
    "DataPropertyRange",
    "DataSomeValuesFrom",
    "DataUnionOf",
    "Datatype",
    "DatatypeDefinition",
    "DatatypeRestriction",
    "DifferentIndividuals",
    "DisjointDataProperties",
    "DisjointObjectProperties",
    "DisjointUnion",
    "EquivalentDataProperties",
    "EquivalentObjectProperties",
    "FunctionalDataProperty",
    "FunctionalObjectProperty",
    "HasKey",
    "Import",
    "InverseFunctionalObjectProperty",
    "InverseObjectProperties",
    "IrreflexiveObjectProperty",
    "NegativeDataPropertyAssertion",
    "ObjectHasSelf",
    "ObjectHasValue",
    "ObjectInverseOf",
    "ObjectOneOf",
    "ObjectPropertyChain",
    "ObjectUnionOf",
    "ReflexiveObjectProperty",
    "SameIndividual",
    "SubAnnotationPropertyOf",
    "SubDataPropertyOf",
    "TransitiveObjectProperty",
];

fn describe(kind: &TokenKind<'_>) -> String {
    match kind {
        TokenKind::LParen => "`(`".into(),
        TokenKind::RParen => "`)`".into(),
        TokenKind::Equals => "`=`".into(),
        TokenKind::Iri(i) => format!("`<{i}>`"),
        TokenKind::Prefixed { prefix, local } => format!("`{prefix}:{local}`"),
        TokenKind::Integer(n) => format!("`{n}`"),
        TokenKind::Ident(w) => format!("`{w}`"),
        TokenKind::Eof => "end of input".into(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            lexer: Lexer::new(src),
            depth: 0,
        }
    }

    fn unexpected(tok: &Token<'_>, expected: &str) -> ParseError {
        ParseError::syntax(
            tok.offset,
            format!("{expected}, found {}", describe(&tok.kind)),
        )
    }

    fn expect_lparen(&mut self) -> Result<(), ParseError> {
        let tok = self.lexer.next_token()?;
        match tok.kind {
            TokenKind::LParen => Ok(()),
            _ => Err(Self::unexpected(&tok, "`(`")),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let tok = self.lexer.next_token()?;
        match tok.kind {
            TokenKind::RParen => Ok(()),
            _ => Err(Self::unexpected(&tok, "`)`")),
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        let tok = self.lexer.next_token()?;
        match tok.kind {
            TokenKind::Eof => Ok(()),
            _ => Err(Self::unexpected(&tok, "end of input")),
        }
    }

    fn peek_is_rparen(&mut self) -> Result<bool, ParseError> {
        Ok(matches!(self.lexer.peek()?.kind, TokenKind::RParen))
    }

    fn name(&mut self, kind: EntityKind) -> Result<EntityName, ParseError> {
        let tok = self.lexer.next_token()?;
        let what = match kind {
            EntityKind::Class => "class name",
            EntityKind::ObjectProperty => "object property name",
            EntityKind::NamedIndividual => "individual name",
        };
        match tok.kind {
            TokenKind::Prefixed { prefix: "", local } if is_valid_local(local) => {
                Ok(EntityName::new(local, kind).expect("charset checked"))
            }
            _ => Err(Self::unexpected(&tok, &format!("default-prefixed {what}"))),
        }
    }

    fn cardinality(&mut self) -> Result<u32, ParseError> {
        let tok = self.lexer.next_token()?;
        match tok.kind {
            TokenKind::Integer(digits) => digits
                .parse::<u64>()
                .ok()
                .filter(|n| *n <= MAX_CARDINALITY as u64)
                .map(|n| n as u32)
                .ok_or_else(|| {
                    ParseError::syntax(tok.offset, format!("cardinality at most {MAX_CARDINALITY}"))
                }),
            _ => Err(Self::unexpected(&tok, "non-negative integer")),
        }
    }

    fn enter(&mut self, offset: usize) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::syntax(
                offset,
                format!("expression nested at most {MAX_NESTING} levels"),
            ));
        }
        Ok(())
    }

    fn class_expression(&mut self) -> Result<ClassExpression, ParseError> {
        let tok = self.lexer.next_token()?;
        let word = match tok.kind {
            TokenKind::Prefixed { prefix: "", local } if is_valid_local(local) => {
                return Ok(ClassExpression::Named(
                    EntityName::new(local, EntityKind::Class).expect("charset checked"),
                ));
            }
            TokenKind::Ident(word) => word,
            _ => return Err(Self::unexpected(&tok, "class expression")),
        };
        if UNSUPPORTED.contains(&word) {
            return Err(ParseError::UnknownConstructor {
                position: tok.offset,
                name: word.to_string(),
            });
        }
        self.enter(tok.offset)?;
        let ce = match word {
            "ObjectComplementOf" => {
                self.expect_lparen()?;
                ClassExpression::ComplementOf(Box::new(self.class_expression()?))
            }
            "ObjectIntersectionOf" => {
                self.expect_lparen()?;
                ClassExpression::IntersectionOf(self.operands(tok.offset)?)
            }
            "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                self.expect_lparen()?;
                let property = self.name(EntityKind::ObjectProperty)?;
                let filler = Box::new(self.class_expression()?);
                if word == "ObjectSomeValuesFrom" {
                    ClassExpression::SomeValuesFrom { property, filler }
                } else {
                    ClassExpression::AllValuesFrom { property, filler }
                }
            }
            "ObjectExactCardinality" | "ObjectMinCardinality" | "ObjectMaxCardinality" => {
                self.expect_lparen()?;
                let n = self.cardinality()?;
                let property = self.name(EntityKind::ObjectProperty)?;
                let filler = if self.peek_is_rparen()? {
                    None
                } else {
                    Some(Box::new(self.class_expression()?))
                };
                match word {
                    "ObjectExactCardinality" => ClassExpression::ExactCardinality {
                        n,
                        property,
                        filler,
                    },
                    "ObjectMinCardinality" => ClassExpression::MinCardinality {
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
            _ => return Err(Self::unexpected(&tok, "class expression")),
        };
        self.expect_rparen()?;
        self.depth -= 1;
        Ok(ce)
    }

    /// Two or more class expressions up to (not including) the closing paren.
    fn operands(&mut self, offset: usize) -> Result<Vec<ClassExpression>, ParseError> {
        let mut ops = vec![self.class_expression()?];
        while !self.peek_is_rparen()? {
            ops.push(self.class_expression()?);
        }
        if ops.len() < 2 {
            return Err(ParseError::syntax(offset, "at least two operands"));
        }
        Ok(ops)
    }

    fn axiom(&mut self) -> Result<Axiom, ParseError> {
        let tok = self.lexer.next_token()?;
        let word = match tok.kind {
            TokenKind::Ident(word) => word,
            _ => return Err(Self::unexpected(&tok, "axiom constructor")),
        };
        if UNSUPPORTED.contains(&word) {
            return Err(ParseError::UnknownConstructor {
                position: tok.offset,
                name: word.to_string(),
            });
        }
        let known = [
            "Declaration",
            "ClassAssertion",
            "SubClassOf",
            "DisjointClasses",
            "EquivalentClasses",
            "ObjectPropertyAssertion",
            "NegativeObjectPropertyAssertion",
            "ObjectPropertyDomain",
            "ObjectPropertyRange",
            "SubObjectPropertyOf",
            "SymmetricObjectProperty",
            "AsymmetricObjectProperty",
        ];
        if !known.contains(&word) {
            return Err(ParseError::syntax(
                tok.offset,
                format!("axiom constructor, found unknown constructor `{word}`"),
            ));
        }
        self.expect_lparen()?;
        let axiom = match word {
            "Declaration" => {
                let kw = self.lexer.next_token()?;
                let kind = match kw.kind {
                    TokenKind::Ident(k) => match EntityKind::from_keyword(k) {
                        Some(kind) => kind,
                        None if UNSUPPORTED.contains(&k) => {
                            return Err(ParseError::UnknownConstructor {
                                position: kw.offset,
                                name: k.to_string(),
                            })
                        }
                        None => return Err(Self::unexpected(&kw, "entity kind")),
                    },
                    _ => return Err(Self::unexpected(&kw, "entity kind")),
                };
                self.expect_lparen()?;
                let name = self.name(kind)?;
                self.expect_rparen()?;
                Axiom::Declaration(name)
            }
            "ClassAssertion" => Axiom::ClassAssertion {
                class: self.class_expression()?,
                individual: self.name(EntityKind::NamedIndividual)?,
            },
            "SubClassOf" => Axiom::SubClassOf {
                sub: self.class_expression()?,
                sup: self.class_expression()?,
            },
            "DisjointClasses" => Axiom::DisjointClasses(self.operands(tok.offset)?),
            "EquivalentClasses" => Axiom::EquivalentClasses(self.operands(tok.offset)?),
            "ObjectPropertyAssertion" | "NegativeObjectPropertyAssertion" => {
                let property = self.name(EntityKind::ObjectProperty)?;
                let subject = self.name(EntityKind::NamedIndividual)?;
                let object = self.name(EntityKind::NamedIndividual)?;
                if word == "ObjectPropertyAssertion" {
                    Axiom::ObjectPropertyAssertion {
                        property,
                        subject,
                        object,
                    }
                } else {
                    Axiom::NegativeObjectPropertyAssertion {
                        property,
                        subject,
                        object,
                    }
                }
            }
            "ObjectPropertyDomain" => Axiom::ObjectPropertyDomain {
                property: self.name(EntityKind::ObjectProperty)?,
                class: self.class_expression()?,
            },
            "ObjectPropertyRange" => Axiom::ObjectPropertyRange {
                property: self.name(EntityKind::ObjectProperty)?,
                class: self.class_expression()?,
            },
            "SubObjectPropertyOf" => Axiom::SubObjectPropertyOf {
                sub: self.name(EntityKind::ObjectProperty)?,
                sup: self.name(EntityKind::ObjectProperty)?,
            },
            "SymmetricObjectProperty" => {
                Axiom::SymmetricObjectProperty(self.name(EntityKind::ObjectProperty)?)
            }
            "AsymmetricObjectProperty" => {
                Axiom::AsymmetricObjectProperty(self.name(EntityKind::ObjectProperty)?)
            }
            _ => unreachable!("checked against the known list"),
        };
        self.expect_rparen()?;
        Ok(axiom)
    }

    fn document(&mut self) -> Result<OntologyDocument, ParseError> {
        let mut doc = OntologyDocument::default();
        loop {
            let tok = self.lexer.next_token()?;
            match tok.kind {
                TokenKind::Ident("Prefix") => {
                    self.expect_lparen()?;
                    let name = self.lexer.next_token()?;
                    let prefix = match name.kind {
                        TokenKind::Prefixed { prefix, local: "" } => prefix.to_string(),
                        _ => return Err(Self::unexpected(&name, "prefix name ending in `:`")),
                    };
                    let eq = self.lexer.next_token()?;
                    if eq.kind != TokenKind::Equals {
                        return Err(Self::unexpected(&eq, "`=`"));
                    }
                    let iri = self.lexer.next_token()?;
                    let TokenKind::Iri(iri) = iri.kind else {
                        return Err(Self::unexpected(&iri, "IRI"));
                    };
                    self.expect_rparen()?;
                    doc.prefixes.push((prefix, iri.to_string()));
                }
                TokenKind::Ident("Ontology") => break,
                _ => return Err(ParseError::MissingOntologyWrapper),
            }
        }
        self.expect_lparen()?;
        if let TokenKind::Iri(iri) = self.lexer.peek()?.kind {
            doc.ontology_iri = Some(iri.to_string());
            self.lexer.next_token()?;
            // optional version IRI
            if let TokenKind::Iri(_) = self.lexer.peek()?.kind {
                self.lexer.next_token()?;
            }
        }
        while !self.peek_is_rparen()? {
            if self.lexer.peek()?.kind == TokenKind::Eof {
                let tok = self.lexer.next_token()?;
                return Err(Self::unexpected(&tok, "`)` closing the ontology"));
            }
            doc.axioms.push(self.axiom()?);
        }
        self.expect_rparen()?;
        self.expect_eof()?;
        Ok(doc)
    }
}

/// Parses exactly one axiom; surrounding whitespace is allowed.
pub fn parse_axiom(text: &str) -> Result<Axiom, ParseError> {
    let mut p = Parser::new(text);
    let axiom = p.axiom()?;
    p.expect_eof()?;
    Ok(axiom)
}

/// Parses a `Prefix(...)* Ontology(...)` document.
pub fn parse_document(text: &str) -> Result<OntologyDocument, ParseError> {
    Parser::new(text).document()
}

/// Parses one axiom per non-blank line. Error offsets are relative to `text`.
pub fn parse_lines(text: &str) -> Result<Vec<Axiom>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    for line in text.split_inclusive('\n') {
        if !line.trim().is_empty() {
            let axiom = parse_axiom(line).map_err(|e| match e {
                ParseError::Syntax { position, expected } => ParseError::Syntax {
                    position: position + start,
                    expected,
                },
                ParseError::UnknownConstructor { position, name } => {
                    ParseError::UnknownConstructor {
                        position: position + start,
                        name,
                    }
                }
                other => other,
            })?;
            out.push(axiom);
        }
        start += line.len();
    }
    Ok(out)
}
