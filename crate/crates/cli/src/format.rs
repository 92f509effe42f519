//! The `.ideal` input format.
//!
//! ```text
//! field 32003        # or: field QQ
//! ring x0 x1 x2
//! ideal x0*x1, x0*x2,
//!       x1*x2
//! ```
//!
//! Generators are comma- or newline-separated expressions in the ring
//! variables with `+ - * ^`, integer literals, and parentheses. `#`
//! starts a comment. The file is parsed into an untyped syntax tree so
//! the coefficient field can be chosen (or overridden) afterwards.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, col {}: {}",
            self.pos.line, self.pos.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug)]
pub struct IdealFile {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub generators: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Newline,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = li + 1;
        let body = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let mut chars = body.char_indices().peekable();
        while let Some(&(ci, ch)) = chars.peek() {
            let pos = Pos { line, col: ci + 1 };
            match ch {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '+' => {
                    out.push((Tok::Plus, pos));
                    chars.next();
                }
                '-' | '\u{2212}' => {
                    out.push((Tok::Minus, pos));
                    chars.next();
                }
                '*' => {
                    out.push((Tok::Star, pos));
                    chars.next();
                }
                '^' => {
                    out.push((Tok::Caret, pos));
                    chars.next();
                }
                '(' => {
                    out.push((Tok::LParen, pos));
                    chars.next();
                }
                ')' => {
                    out.push((Tok::RParen, pos));
                    chars.next();
                }
                ',' => {
                    out.push((Tok::Comma, pos));
                    chars.next();
                }
                c if c.is_ascii_digit() => {
                    let mut value: i64 = 0;
                    while let Some(&(_, d)) = chars.peek() {
                        if let Some(dv) = d.to_digit(10) {
                            value = value
                                .checked_mul(10)
                                .and_then(|v| v.checked_add(dv as i64))
                                .ok_or(ParseError {
                                    pos,
                                    message: "integer literal too large".into(),
                                })?;
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Int(value), pos));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut name = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            name.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Ident(name), pos));
                }
                other => {
                    return err(pos, format!("unexpected character '{other}'"));
                }
            }
        }
        out.push((
            Tok::Newline,
            Pos {
                line,
                col: body.len() + 1,
            },
        ));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
    variables: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.at)
    }

    fn bump(&mut self) -> Option<&(Tok, Pos)> {
        let t = self.toks.get(self.at);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn last_pos(&self) -> Pos {
        self.toks
            .last()
            .map(|(_, p)| *p)
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Some((Tok::Newline, _))) {
            self.at += 1;
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<Pos, ParseError> {
        self.skip_newlines();
        match self.bump() {
            Some((Tok::Ident(w), p)) if w == word => Ok(*p),
            Some((t, p)) => err(*p, format!("expected '{word}', found {t:?}")),
            None => err(self.last_pos(), format!("expected '{word}', found end of file")),
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    // expr := term (("+"|"-") term)*
    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.at += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some((Tok::Minus, _)) => {
                    self.at += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ("*" factor)*
    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some((Tok::Star, _))) {
            self.at += 1;
            let rhs = self.parse_factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // factor := "-" factor | atom ("^" int)?
    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some((Tok::Minus, _))) {
            self.at += 1;
            let inner = self.parse_factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let mut atom = self.parse_atom()?;
        if matches!(self.peek(), Some((Tok::Caret, _))) {
            self.at += 1;
            match self.bump() {
                Some((Tok::Int(e), p)) => {
                    if *e < 0 || *e > u16::MAX as i64 {
                        return err(*p, "exponent out of range");
                    }
                    atom = Expr::Pow(Box::new(atom), *e as u32);
                }
                Some((t, p)) => return err(*p, format!("expected exponent, found {t:?}")),
                None => return err(self.last_pos(), "expected exponent, found end of file"),
            }
        }
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump().cloned() {
            Some((Tok::Int(v), _)) => Ok(Expr::Int(v)),
            Some((Tok::Ident(name), p)) => match self.var_index(&name) {
                Some(i) => Ok(Expr::Var(i)),
                None => err(p, format!("unknown variable '{name}'")),
            },
            Some((Tok::LParen, p)) => {
                let inner = self.parse_expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => err(p, "unclosed parenthesis"),
                }
            }
            Some((t, p)) => err(p, format!("expected a polynomial atom, found {t:?}")),
            None => err(self.last_pos(), "unexpected end of file"),
        }
    }
}

impl Parser<'_> {
    fn bump_cloned(&mut self) -> Option<(Tok, Pos)> {
        self.bump().cloned()
    }
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        variables: Vec::new(),
    };

    // field <p|QQ>
    p.expect_keyword("field")?;
    let field = match p.bump_cloned() {
        Some((Tok::Int(v), pos)) => {
            if v < 2 {
                return err(pos, "field characteristic must be a prime >= 2");
            }
            FieldSpec::Prime(v as u64)
        }
        Some((Tok::Ident(w), pos)) => {
            if w == "QQ" {
                FieldSpec::Rational
            } else {
                return err(pos, format!("unsupported field '{w}' (use a prime or QQ)"));
            }
        }
        Some((t, pos)) => return err(pos, format!("expected field spec, found {t:?}")),
        None => return err(p.last_pos(), "expected field spec"),
    };

    // ring x0 x1 ... xn
    p.expect_keyword("ring")?;
    let mut variables = Vec::new();
    loop {
        match p.peek().cloned() {
            Some((Tok::Ident(name), pos)) => {
                p.at += 1;
                if variables.contains(&name) {
                    return err(pos, format!("duplicate variable '{name}'"));
                }
                if name.starts_with('y') {
                    return err(
                        pos,
                        "y-variables are implicit; name the ring in x-variables only",
                    );
                }
                variables.push(name);
            }
            Some((Tok::Newline, _)) | None => break,
            Some((t, pos)) => return err(pos, format!("expected variable name, found {t:?}")),
        }
    }
    if variables.len() < 2 {
        return err(
            p.last_pos(),
            "the ring needs at least two variables (n >= 1)",
        );
    }
    p.variables = variables.clone();

    // ideal <expr> (,|newline <expr>)*
    p.expect_keyword("ideal")?;
    let mut generators = Vec::new();
    loop {
        // skip separators
        while matches!(p.peek(), Some((Tok::Comma, _)) | Some((Tok::Newline, _))) {
            p.at += 1;
        }
        if p.peek().is_none() {
            break;
        }
        let e = p.parse_expr()?;
        generators.push(e);
        match p.peek().cloned() {
            Some((Tok::Comma, _)) | Some((Tok::Newline, _)) | None => {}
            Some((t, pos)) => {
                return err(pos, format!("expected ',' or end of line after a generator, found {t:?}"))
            }
        }
    }
    if generators.is_empty() {
        return err(p.last_pos(), "the ideal section lists no generators");
    }
    Ok(IdealFile {
        field,
        variables,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_coordinate_points_file() {
        let text = "field 32003\nring x0 x1 x2\nideal x0*x1, x0*x2, x1*x2\n";
        let f = parse_ideal_file(text).unwrap();
        assert_eq!(f.field, FieldSpec::Prime(32003));
        assert_eq!(f.variables, vec!["x0", "x1", "x2"]);
        assert_eq!(f.generators.len(), 3);
    }

    #[test]
    fn parses_quartic_with_negations_and_powers() {
        let text = "field QQ\nring x0 x1 x2 x3\nideal -x2^3*x3 + x3^4, -x2^4 - x3^4\n  -x1*x3^3 - x3^4\n  x2^2*x3^2 + x3^4\n";
        let f = parse_ideal_file(text).unwrap();
        assert_eq!(f.field, FieldSpec::Rational);
        assert_eq!(f.generators.len(), 4);
    }

    #[test]
    fn reports_line_and_col() {
        let text = "field 32003\nring x0 x1\nideal x0*z1\n";
        let e = parse_ideal_file(text).unwrap_err();
        assert_eq!(e.pos.line, 3);
        assert!(e.message.contains("unknown variable 'z1'"));
    }

    #[test]
    fn rejects_y_named_ring() {
        let text = "field 7\nring y0 y1\nideal y0*y1\n";
        assert!(parse_ideal_file(text).is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# points\nfield 101\n\nring x0 x1 x2  # three vars\nideal\n x0*x1 # one\n, x0*x2\n x1*x2\n";
        let f = parse_ideal_file(text).unwrap();
        assert_eq!(f.generators.len(), 3);
    }
}
