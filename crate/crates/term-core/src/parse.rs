use crate::signature::is_variable_name;
use crate::{Signature, Term, TermError};

/// Parses a term in prefix form.
///
/// Accepted forms: `(f t1 … tn)`, a bare constant `c` (or `(c)`), a variable
/// `x<k>` with `k ≥ 1`, and the shorthand `f/<width>[i1,…,in]` for `f(x_{i1},…,x_{in})`.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, TermError> {
    parse_term_with_width(text, sig).map(|(t, _)| t)
}

/// As [`parse_term`], also returning the width declared by a top-level shorthand.
pub fn parse_term_with_width(
    text: &str,
    sig: &Signature,
) -> Result<(Term, Option<usize>), TermError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        sig,
    };
    p.skip_ws();
    let (term, width) = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok((term, width))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> TermError {
        TermError::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn number(&mut self) -> Result<usize, TermError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number too large"))
    }

    fn expect(&mut self, c: u8) -> Result<(), TermError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn apply(&self, symbol: &str, children: Vec<Term>) -> Result<Term, TermError> {
        let arity = self
            .sig
            .arity(symbol)
            .ok_or_else(|| TermError::UnknownSymbol(symbol.to_string()))?;
        if arity != children.len() {
            return Err(TermError::Arity {
                symbol: symbol.to_string(),
                expected: arity,
                found: children.len(),
            });
        }
        Ok(Term::App(symbol.to_string(), children))
    }

    fn term(&mut self) -> Result<(Term, Option<usize>), TermError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let symbol = self.word().to_string();
                if symbol.is_empty() {
                    return Err(self.error("expected an operation symbol"));
                }
                if is_variable_name(&symbol) {
                    return Err(self.error("a variable cannot be applied"));
                }
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.error("unclosed `(`")),
                        _ => children.push(self.term()?.0),
                    }
                }
                Ok((self.apply(&symbol, children)?, None))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let word = self.word().to_string();
                if is_variable_name(&word) {
                    let index: usize = word[1..]
                        .parse()
                        .map_err(|_| self.error("variable index too large"))?;
                    if index == 0 {
                        return Err(TermError::ZeroVariable);
                    }
                    return Ok((Term::Var(index), None));
                }
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let width = self.number()?;
                    self.expect(b'[')?;
                    let mut indices = Vec::new();
                    self.skip_ws();
                    if self.peek() != Some(b']') {
                        loop {
                            self.skip_ws();
                            indices.push(self.number()?);
                            self.skip_ws();
                            if self.peek() == Some(b',') {
                                self.pos += 1;
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(b']')?;
                    if width == 0 {
                        return Err(self.error("declared width must be positive"));
                    }
                    let t = crate::indexed_term(&word, self.sig, width, &indices)?;
                    return Ok((t, Some(width)));
                }
                Ok((self.apply(&word, Vec::new())?, None))
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render_term;

    fn lat() -> Signature {
        Signature::new([
            ("join", 2),
            ("meet", 2),
            ("neg", 1),
            ("zero", 0),
            ("one", 0),
        ])
        .unwrap()
    }

    #[test]
    fn parses_sexpr() {
        let t = parse_term("(join x1 x3)", &lat()).unwrap();
        assert_eq!(t, Term::app("join", vec![Term::var(1), Term::var(3)]));
    }

    #[test]
    fn parses_shorthand_with_width() {
        let (t, w) = parse_term_with_width("join/4[1,3]", &lat()).unwrap();
        assert_eq!(t, parse_term("(join x1 x3)", &lat()).unwrap());
        assert_eq!(w, Some(4));
        let t = parse_term("(neg join/4[2, 4])", &lat()).unwrap();
        assert_eq!(render_term(&t), "(neg (join x2 x4))");
    }

    #[test]
    fn constants_bare_or_parenthesised() {
        assert_eq!(parse_term("zero", &lat()).unwrap(), Term::constant("zero"));
        assert_eq!(parse_term("(zero)", &lat()).unwrap(), Term::constant("zero"));
        assert_eq!(parse_term(" ( meet  zero one ) ", &lat()).unwrap().span(), 0);
    }

    #[test]
    fn errors() {
        let sig = lat();
        assert!(matches!(
            parse_term("(join x1)", &sig),
            Err(TermError::Arity { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            parse_term("(frob x1)", &sig),
            Err(TermError::UnknownSymbol(_))
        ));
        assert!(matches!(parse_term("x0", &sig), Err(TermError::ZeroVariable)));
        assert!(matches!(
            parse_term("(join x1 x2", &sig),
            Err(TermError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("(join x1 x2))", &sig),
            Err(TermError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("join/2[1,3]", &sig),
            Err(TermError::OutOfRange { .. })
        ));
        assert!(matches!(parse_term("", &sig), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_term("(x1 x2)", &sig), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_term("join", &sig), Err(TermError::Arity { .. })));
    }

    #[test]
    fn syntax_error_reports_column() {
        match parse_term("(join x1 #)", &lat()) {
            Err(TermError::Syntax { column, .. }) => assert_eq!(column, 10),
            other => panic!("unexpected {other:?}"),
        }
    }
}
