//! S-expression reader with source positions. Atoms are lower-cased, as PDDL
//! names are case-insensitive; `;` starts a comment.

use super::PddlError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SexpKind {
    Atom(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sexp {
    pub kind: SexpKind,
    pub line: usize,
    pub col: usize,
}

impl Sexp {
    pub fn atom(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(a) => Some(a),
            SexpKind::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            SexpKind::List(items) => Some(items),
            SexpKind::Atom(_) => None,
        }
    }

    pub fn expect_atom(&self, expected: &str) -> Result<&str, PddlError> {
        self.atom().ok_or_else(|| self.error(expected))
    }

    pub fn expect_list(&self, expected: &str) -> Result<&[Sexp], PddlError> {
        self.list().ok_or_else(|| self.error(expected))
    }

    /// The list's leading atom, if any.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|items| items.first()).and_then(Sexp::atom)
    }

    pub fn error(&self, expected: &str) -> PddlError {
        PddlError::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_string(),
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn syntax(&self, expected: &str) -> PddlError {
        PddlError::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Sexp, PddlError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        match self.chars.peek() {
            None => Err(self.syntax("expression")),
            Some(')') => Err(self.syntax("expression, found `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(self.syntax("`)`")),
                        Some(')') => {
                            self.bump();
                            break;
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
                Ok(Sexp {
                    kind: SexpKind::List(items),
                    line,
                    col,
                })
            }
            Some(_) => {
                let mut atom = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.extend(c.to_lowercase());
                    self.bump();
                }
                Ok(Sexp {
                    kind: SexpKind::Atom(atom),
                    line,
                    col,
                })
            }
        }
    }
}

/// Reads exactly one top-level expression.
pub fn parse(text: &str) -> Result<Sexp, PddlError> {
    let mut reader = Reader {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let expr = reader.expr()?;
    reader.skip_trivia();
    if reader.chars.peek().is_some() {
        return Err(reader.syntax("end of input"));
    }
    Ok(expr)
}
