use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    Number,
    Plus,
    Minus,
    Star,
    Dagger,
    Tilde,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset of the first character.
    pub pos: usize,
}

/// Splits `text` into tokens, skipping whitespace.
///
/// A parenthesized complex literal without inner whitespace, such as
/// `(0+1i)` or `(-2)`, is a single number token.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().expect("in bounds");
        let start = i;
        let single = |kind| Token {
            kind,
            text: c.to_string(),
            pos: start,
        };
        match c {
            c if c.is_whitespace() => {
                i += c.len_utf8();
                continue;
            }
            '+' => out.push(single(TokenKind::Plus)),
            '-' => out.push(single(TokenKind::Minus)),
            '*' => out.push(single(TokenKind::Star)),
            '~' => out.push(single(TokenKind::Tilde)),
            ')' => out.push(single(TokenKind::RParen)),
            '†' | '\'' => out.push(single(TokenKind::Dagger)),
            '(' => {
                if let Some(end) = paren_literal(bytes, i) {
                    out.push(Token {
                        kind: TokenKind::Number,
                        text: text[i..end].to_string(),
                        pos: start,
                    });
                    i = end;
                    continue;
                }
                out.push(single(TokenKind::LParen));
            }
            c if c.is_ascii_digit() || c == '.' => {
                let Some(end) = number_end(bytes, i) else {
                    return Err(Error::Syntax {
                        offset: start,
                        message: "malformed number".into(),
                    });
                };
                let end = if bytes.get(end) == Some(&b'i') { end + 1 } else { end };
                out.push(Token {
                    kind: TokenKind::Number,
                    text: text[i..end].to_string(),
                    pos: start,
                });
                i = end;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = i;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    end += 1;
                }
                out.push(Token {
                    kind: TokenKind::Ident,
                    text: text[i..end].to_string(),
                    pos: start,
                });
                i = end;
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += c.len_utf8();
    }
    Ok(out)
}

/// End of an unsigned decimal number starting at `i` (no imaginary suffix).
fn number_end(b: &[u8], mut i: usize) -> Option<usize> {
    let digits = |i: &mut usize| {
        let s = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - s
    };
    let mut n = digits(&mut i);
    if i < b.len() && b[i] == b'.' {
        i += 1;
        n += digits(&mut i);
    }
    if n == 0 {
        return None;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if digits(&mut j) > 0 {
            i = j;
        }
    }
    Some(i)
}

/// Matches `([sign]num[i][sign num i])` at `i` with no inner whitespace,
/// returning the end offset.
fn paren_literal(b: &[u8], i: usize) -> Option<usize> {
    let sign = |j: usize| j < b.len() && (b[j] == b'+' || b[j] == b'-');
    let mut j = i + 1;
    if sign(j) {
        j += 1;
    }
    j = number_end(b, j)?;
    let first_imag = b.get(j) == Some(&b'i');
    if first_imag {
        j += 1;
    } else if sign(j) {
        j = number_end(b, j + 1)?;
        if b.get(j) != Some(&b'i') {
            return None;
        }
        j += 1;
    }
    (b.get(j) == Some(&b')')).then_some(j + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(kinds("a† * ~(b)"), [Ident, Dagger, Star, Tilde, LParen, Ident, RParen]);
        let t = tokenize("(0+1i) a").unwrap();
        assert_eq!(t[0].kind, Number);
        assert_eq!(t[0].text, "(0+1i)");
        assert_eq!(t[1].kind, Ident);
        assert_eq!(t[1].pos, 7);
        assert_eq!(tokenize("a $ b"), Err(Error::Syntax { offset: 2, message: "unexpected character `$`".into() }));
    }

    #[test]
    fn numbers() {
        assert_eq!(kinds("3i b"), [Number, Ident]);
        assert_eq!(tokenize("2.5e-3").unwrap()[0].text, "2.5e-3");
        assert_eq!(kinds("2e b"), [Number, Ident, Ident]);
        assert_eq!(kinds("(-2)"), [Number]);
        assert_eq!(kinds("(-1.5-2i)"), [Number]);
        assert_eq!(kinds("(2 + 3i)"), [LParen, Number, Plus, Number, RParen]);
        assert_eq!(kinds("(2 + 3)"), [LParen, Number, Plus, Number, RParen]);
        assert_eq!(kinds("(2 a)"), [LParen, Number, Ident, RParen]);
        assert_eq!(kinds("a'"), [Ident, Dagger]);
    }

    #[test]
    fn positions_increase() {
        let t = tokenize("a† ~(b)† - (2-1i) a").unwrap();
        assert!(t.windows(2).all(|w| w[0].pos < w[1].pos));
        // the dagger is three bytes wide
        assert_eq!(t[2].pos, 5);
    }
}
