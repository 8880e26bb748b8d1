use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind<'a> {
    LParen,
    RParen,
    Equals,
    /// `<...>` with the brackets stripped.
    Iri(&'a str),
    /// A word containing a colon, split at the first one.
    Prefixed {
        prefix: &'a str,
        local: &'a str,
    },
    Integer(&'a str),
    Ident(&'a str),
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub kind: TokenKind<'a>,
    pub offset: usize,
}

/// On-demand tokenizer; errors surface only when the offending token is
/// actually requested.
pub(crate) struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<Token<'a>>,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '=' | '<' | '>')
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            peeked: None,
        }
    }

    pub fn peek(&mut self) -> Result<&Token<'a>, ParseError> {
        if self.peeked.is_none() {
            let tok = self.scan()?;
            self.peeked = Some(tok);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    pub fn next_token(&mut self) -> Result<Token<'a>, ParseError> {
        match self.peeked.take() {
            Some(tok) => Ok(tok),
            None => self.scan(),
        }
    }

    fn scan(&mut self) -> Result<Token<'a>, ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let offset = self.pos;
        let Some(c) = trimmed.chars().next() else {
            return Ok(Token {
                kind: TokenKind::Eof,
                offset,
            });
        };
        let kind = match c {
            '(' => {
                self.pos += 1;
                TokenKind::LParen
            }
            ')' => {
                self.pos += 1;
                TokenKind::RParen
            }
            '=' => {
                self.pos += 1;
                TokenKind::Equals
            }
            '<' => {
                let end = trimmed
                    .find('>')
                    .ok_or_else(|| ParseError::syntax(offset, "closing `>` of IRI"))?;
                let iri = &trimmed[1..end];
                if iri.chars().any(char::is_whitespace) {
                    return Err(ParseError::syntax(offset, "IRI without whitespace"));
                }
                self.pos += end + 1;
                TokenKind::Iri(iri)
            }
            '>' => return Err(ParseError::syntax(offset, "a token, found stray `>`")),
            _ => {
                let len = trimmed.find(is_delimiter).unwrap_or(trimmed.len());
                let word = &trimmed[..len];
                self.pos += len;
                if let Some((prefix, local)) = word.split_once(':') {
                    TokenKind::Prefixed { prefix, local }
                } else if word.bytes().all(|b| b.is_ascii_digit()) {
                    TokenKind::Integer(word)
                } else {
                    TokenKind::Ident(word)
                }
            }
        };
        Ok(Token { kind, offset })
    }
}
