//! Tokenizer for the OpenQASM 2.0 subset.

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Ident(String),
    Int(usize),
    Real(f64),
    Str(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    /// `==`; only ever seen inside the unsupported `if` statement, lexed so
    /// the parser can report that statement instead of a stray character.
    EqEq,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub token: Token,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = source.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '/' => {
                bump!();
                if chars.peek() == Some(&'/') {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        bump!();
                    }
                } else {
                    tokens.push(Spanned {
                        token: Token::Slash,
                        line: tline,
                        col: tcol,
                    });
                }
            }
            '[' | ']' | '(' | ')' | ',' | ';' | '+' | '*' => {
                bump!();
                let token = match c {
                    '[' => Token::LBracket,
                    ']' => Token::RBracket,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    ';' => Token::Semicolon,
                    '+' => Token::Plus,
                    '*' => Token::Star,
                    _ => unreachable!(),
                };
                tokens.push(Spanned {
                    token,
                    line: tline,
                    col: tcol,
                });
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    tokens.push(Spanned {
                        token: Token::Arrow,
                        line: tline,
                        col: tcol,
                    });
                } else {
                    tokens.push(Spanned {
                        token: Token::Minus,
                        line: tline,
                        col: tcol,
                    });
                }
            }
            '=' => {
                bump!();
                if chars.peek() == Some(&'=') {
                    bump!();
                    tokens.push(Spanned {
                        token: Token::EqEq,
                        line: tline,
                        col: tcol,
                    });
                } else {
                    return Err(ParseError::new(
                        tline,
                        tcol,
                        ParseErrorKind::Syntax("unexpected character `=`".into()),
                    ));
                }
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some(c) => s.push(c),
                        None => {
                            return Err(ParseError::new(
                                tline,
                                tcol,
                                ParseErrorKind::Syntax("unterminated string literal".into()),
                            ))
                        }
                    }
                }
                tokens.push(Spanned {
                    token: Token::Str(s),
                    line: tline,
                    col: tcol,
                });
            }
            '0'..='9' | '.' => {
                let mut text = String::new();
                let mut is_real = false;
                while let Some(&c) = chars.peek() {
                    match c {
                        '0'..='9' => {
                            text.push(c);
                            bump!();
                        }
                        '.' => {
                            is_real = true;
                            text.push(c);
                            bump!();
                        }
                        'e' | 'E' => {
                            is_real = true;
                            text.push(c);
                            bump!();
                            if let Some(&sign @ ('+' | '-')) = chars.peek() {
                                text.push(sign);
                                bump!();
                            }
                        }
                        _ => break,
                    }
                }
                let token = if is_real {
                    let value: f64 = text.parse().map_err(|_| {
                        ParseError::new(
                            tline,
                            tcol,
                            ParseErrorKind::Syntax(format!("invalid number `{text}`")),
                        )
                    })?;
                    Token::Real(value)
                } else {
                    let value: usize = text.parse().map_err(|_| {
                        ParseError::new(
                            tline,
                            tcol,
                            ParseErrorKind::Syntax(format!("invalid integer `{text}`")),
                        )
                    })?;
                    Token::Int(value)
                };
                tokens.push(Spanned {
                    token,
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        text.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Spanned {
                    token: Token::Ident(text),
                    line: tline,
                    col: tcol,
                });
            }
            other => {
                return Err(ParseError::new(
                    tline,
                    tcol,
                    ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                ))
            }
        }
    }

    Ok(tokens)
}
