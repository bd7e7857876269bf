//! Tokens of the workspace language. `#` starts a comment to end of line.

use crate::error::{ParseError, ParseErrorKind, Position};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Number(String),
    Semicolon,
    Equals,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Slash,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Number(s) => format!("`{s}`"),
            TokenKind::Semicolon => "`;`".into(),
            TokenKind::Equals => "`=`".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Not => "`~`".into(),
            TokenKind::And => "`&`".into(),
            TokenKind::Or => "`|`".into(),
            TokenKind::Implies => "`->`".into(),
            TokenKind::Iff => "`<->`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub position: Position,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let position = Position { line, column };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                advance(&mut chars);
            }
            continue;
        }
        let kind = if c.is_ascii_alphabetic() || c == '_' || c.is_ascii_digit() {
            let mut word = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                word.push(advance(&mut chars));
            }
            if word.chars().all(|c| c.is_ascii_digit()) {
                TokenKind::Number(word)
            } else if word.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(ParseError::new(
                    position,
                    ParseErrorKind::Lexical,
                    format!("`{word}` is neither a number nor an identifier"),
                ));
            } else {
                TokenKind::Ident(word)
            }
        } else {
            advance(&mut chars);
            match c {
                ';' => TokenKind::Semicolon,
                '=' => TokenKind::Equals,
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ',' => TokenKind::Comma,
                ':' => TokenKind::Colon,
                '/' => TokenKind::Slash,
                '.' => TokenKind::Dot,
                '~' => TokenKind::Not,
                '&' => TokenKind::And,
                '|' => TokenKind::Or,
                '-' if chars.peek() == Some(&'>') => {
                    advance(&mut chars);
                    TokenKind::Implies
                }
                '<' if chars.peek() == Some(&'-') => {
                    advance(&mut chars);
                    if chars.peek() != Some(&'>') {
                        return Err(ParseError::new(
                            position,
                            ParseErrorKind::Lexical,
                            "expected `<->`",
                        ));
                    }
                    advance(&mut chars);
                    TokenKind::Iff
                }
                other => {
                    return Err(ParseError::new(
                        position,
                        ParseErrorKind::Lexical,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
        };
        tokens.push(Token { kind, position });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        position: Position { line, column },
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text)
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    #[test]
    fn operators_and_words() {
        assert_eq!(
            kinds("x1 <-> ~a -> 0 # note\n|&"),
            vec![
                TokenKind::Ident("x1".into()),
                TokenKind::Iff,
                TokenKind::Not,
                TokenKind::Ident("a".into()),
                TokenKind::Implies,
                TokenKind::Number("0".into()),
                TokenKind::Or,
                TokenKind::And,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn positions_and_errors() {
        let tokens = tokenize("a\n  b").unwrap();
        assert_eq!(tokens[1].position, Position { line: 2, column: 3 });
        let err = tokenize("a $").unwrap_err();
        assert_eq!(err.position, Position { line: 1, column: 3 });
        assert_eq!(err.kind, ParseErrorKind::Lexical);
        assert!(tokenize("<-").is_err());
        assert!(tokenize("2x").is_err());
    }
}
