//! Concrete syntax for `.skc` programs.
//!
//! ```text
//! program  := (decl)* "main" "=" term
//! decl     := "def" IDENT "=" term | "event" IDENT "=" IDENT
//! term     := lambda | "if" term "then" term "else" term
//!           | "let" ["rec"] binder "=" term "in" term | app
//! lambda   := "\" binder "." term | "\(" IDENT "," IDENT ")." term
//! binder   := IDENT | "_"
//! app      := atom+                        left-associative
//! atom     := IDENT | "()" | "True" | "False" | "(" term ")"
//!           | "(" term "," term ")" | "async" atom | "fst" atom
//!           | "snd" atom | "take" IDENT | "set" atom atom
//! ```
//!
//! `#` starts a line comment. Identifiers are ASCII, start with a lowercase
//! letter or `_`, and may contain letters, digits, `_` and `-`. An
//! identifier bound by an enclosing binder is a variable; every other
//! identifier is a function name. Future tokens `$c1` exist only at runtime:
//! the term parser accepts them so printed terms re-parse, the program
//! parser rejects them.
//!
//! All sugar is eliminated here: `let x = M in M'` becomes `(\x.M') M`,
//! `let rec x = M in M'` becomes `let x = fix \x.M in M'`, `\(x,y).M`
//! becomes `\z.(\x.\y.M) (fst z) (snd z)`, a pair expression over non-values
//! becomes `(\p.\q.(p,q)) M N`, and `callHandler` applied to a bare function
//! name wraps it as `callHandler \_.f`.

use std::fmt;

use crate::names::{FnName, VarName};
use crate::term::{is_value, Term};

/// A parsed program: the initial definitions, event bindings, and the term
/// the runtime will evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub defs: Vec<(FnName, Term)>,
    pub events: Vec<(FnName, FnName)>,
    pub main: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { found: String, expected: String },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEof { expected: String },
    #[error("future tokens are not allowed in source programs")]
    FutureInSource,
    #[error("wildcard `_` is only allowed in binder position")]
    WildcardTerm,
    #[error("`take` needs a function name, but `{0}` is bound as a variable here")]
    TakeBoundVariable(String),
    #[error("duplicate definition of `{0}`")]
    DuplicateDef(String),
    #[error("duplicate event `{0}`")]
    DuplicateEvent(String),
    #[error("event `{0}` collides with a definition of the same name")]
    EventCollidesWithDef(String),
    #[error("event handler `{0}` is not defined")]
    UndefinedHandler(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.kind)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    FutureTok(String),
    Def,
    Event,
    Main,
    Let,
    Rec,
    In,
    If,
    Then,
    Else,
    Async,
    Fst,
    Snd,
    Set,
    Take,
    True,
    False,
    Backslash,
    Dot,
    LParen,
    RParen,
    Comma,
    Eq,
    Underscore,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::FutureTok(s) => format!("future token `${s}`"),
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Underscore => "`_`".into(),
            kw => format!("`{}`", keyword_text(kw)),
        }
    }
}

fn keyword_text(t: &Tok) -> &'static str {
    match t {
        Tok::Def => "def",
        Tok::Event => "event",
        Tok::Main => "main",
        Tok::Let => "let",
        Tok::Rec => "rec",
        Tok::In => "in",
        Tok::If => "if",
        Tok::Then => "then",
        Tok::Else => "else",
        Tok::Async => "async",
        Tok::Fst => "fst",
        Tok::Snd => "snd",
        Tok::Set => "set",
        Tok::Take => "take",
        Tok::True => "True",
        Tok::False => "False",
        _ => "",
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
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
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '\\' => {
                bump!();
                tokens.push(Token { tok: Tok::Backslash, line: tline, col: tcol });
            }
            '.' => {
                bump!();
                tokens.push(Token { tok: Tok::Dot, line: tline, col: tcol });
            }
            '(' => {
                bump!();
                tokens.push(Token { tok: Tok::LParen, line: tline, col: tcol });
            }
            ')' => {
                bump!();
                tokens.push(Token { tok: Tok::RParen, line: tline, col: tcol });
            }
            ',' => {
                bump!();
                tokens.push(Token { tok: Tok::Comma, line: tline, col: tcol });
            }
            '=' => {
                bump!();
                tokens.push(Token { tok: Tok::Eq, line: tline, col: tcol });
            }
            '$' => {
                bump!();
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_continue(c) {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        kind: ParseErrorKind::UnexpectedChar('$'),
                    });
                }
                tokens.push(Token { tok: Tok::FutureTok(name), line: tline, col: tcol });
            }
            c if c.is_ascii_lowercase() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_continue(c) {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "_" => Tok::Underscore,
                    "def" => Tok::Def,
                    "event" => Tok::Event,
                    "main" => Tok::Main,
                    "let" => Tok::Let,
                    "rec" => Tok::Rec,
                    "in" => Tok::In,
                    "if" => Tok::If,
                    "then" => Tok::Then,
                    "else" => Tok::Else,
                    "async" => Tok::Async,
                    "fst" => Tok::Fst,
                    "snd" => Tok::Snd,
                    "set" => Tok::Set,
                    "take" => Tok::Take,
                    _ => Tok::Ident(name),
                };
                tokens.push(Token { tok, line: tline, col: tcol });
            }
            c if c.is_ascii_uppercase() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_continue(c) {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "True" => Tok::True,
                    "False" => Tok::False,
                    _ => {
                        return Err(ParseError {
                            line: tline,
                            col: tcol,
                            kind: ParseErrorKind::UnexpectedToken {
                                found: format!("`{name}`"),
                                expected: "`True`, `False`, or a lowercase identifier".into(),
                            },
                        })
                    }
                };
                tokens.push(Token { tok, line: tline, col: tcol });
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    scopes: Vec<String>,
    fresh: u64,
    allow_futures: bool,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn new(src: &str, allow_futures: bool) -> Result<Parser, ParseError> {
        let tokens = lex(src)?;
        let end_line = src.lines().count().max(1);
        let end_col = src.lines().last().map_or(1, |l| l.chars().count() + 1);
        Ok(Parser { tokens, pos: 0, scopes: Vec::new(), fresh: 0, allow_futures, end_line, end_col })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or((self.end_line, self.end_col), |t| (t.line, t.col))
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, kind }
    }

    fn eof(&self, expected: &str) -> ParseError {
        self.err(ParseErrorKind::UnexpectedEof { expected: expected.into() })
    }

    fn next(&mut self, expected: &str) -> Result<Token, ParseError> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| self.eof(expected))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<(), ParseError> {
        let t = self.next(expected)?;
        if t.tok == want {
            Ok(())
        } else {
            Err(ParseError {
                line: t.line,
                col: t.col,
                kind: ParseErrorKind::UnexpectedToken {
                    found: t.tok.describe(),
                    expected: expected.into(),
                },
            })
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<String, ParseError> {
        let t = self.next(expected)?;
        match t.tok {
            Tok::Ident(s) => Ok(s),
            other => Err(ParseError {
                line: t.line,
                col: t.col,
                kind: ParseErrorKind::UnexpectedToken {
                    found: other.describe(),
                    expected: expected.into(),
                },
            }),
        }
    }

    fn fresh_name(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("_{stem}{}", self.fresh)
    }

    fn resolve(&self, name: String) -> Term {
        if self.scopes.iter().any(|s| *s == name) {
            Term::Var(VarName(name))
        } else {
            Term::FnName(FnName(name))
        }
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        let t = self.next("a binder")?;
        match t.tok {
            Tok::Ident(s) => Ok(s),
            Tok::Underscore => Ok(self.fresh_name("w")),
            other => Err(ParseError {
                line: t.line,
                col: t.col,
                kind: ParseErrorKind::UnexpectedToken {
                    found: other.describe(),
                    expected: "a binder".into(),
                },
            }),
        }
    }

    fn scoped<T>(
        &mut self,
        names: &[String],
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        for n in names {
            self.scopes.push(n.clone());
        }
        let r = f(self);
        for _ in names {
            self.scopes.pop();
        }
        r
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Backslash) => self.lambda(),
            Some(Tok::If) => {
                self.pos += 1;
                let cond = self.term()?;
                self.expect(Tok::Then, "`then`")?;
                let then = self.term()?;
                self.expect(Tok::Else, "`else`")?;
                let els = self.term()?;
                Ok(Term::ite(cond, then, els))
            }
            Some(Tok::Let) => {
                self.pos += 1;
                let recursive = matches!(self.peek(), Some(Tok::Rec));
                if recursive {
                    self.pos += 1;
                }
                let name = self.binder()?;
                self.expect(Tok::Eq, "`=`")?;
                let bound = if recursive {
                    // let rec x = M in M'  is  let x = fix \x.M in M'
                    let body = self.scoped(&[name.clone()], |p| p.term())?;
                    Term::app(Term::fn_name("fix"), Term::lam(name.clone(), body))
                } else {
                    self.term()?
                };
                self.expect(Tok::In, "`in`")?;
                let rest = self.scoped(&[name.clone()], |p| p.term())?;
                Ok(Term::app(Term::lam(name, rest), bound))
            }
            Some(_) => self.app(),
            None => Err(self.eof("a term")),
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        self.expect(Tok::Backslash, "`\\`")?;
        if matches!(self.peek(), Some(Tok::LParen)) {
            // \(x,y).M  is  \z.(\x.\y.M) (fst z) (snd z)
            self.pos += 1;
            let x = self.expect_ident("an identifier")?;
            self.expect(Tok::Comma, "`,`")?;
            let y = self.expect_ident("an identifier")?;
            self.expect(Tok::RParen, "`)`")?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.scoped(&[x.clone(), y.clone()], |p| p.term())?;
            let z = self.fresh_name("z");
            let inner = Term::lam(x, Term::lam(y, body));
            Ok(Term::lam(
                z.clone(),
                Term::app(
                    Term::app(inner, Term::Fst(Box::new(Term::var(z.clone())))),
                    Term::Snd(Box::new(Term::var(z))),
                ),
            ))
        } else {
            let name = self.binder()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.scoped(&[name.clone()], |p| p.term())?;
            Ok(Term::lam(name, body))
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::Ident(_)
                    | Tok::FutureTok(_)
                    | Tok::LParen
                    | Tok::True
                    | Tok::False
                    | Tok::Async
                    | Tok::Fst
                    | Tok::Snd
                    | Tok::Take
                    | Tok::Set
            )
        )
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            acc = apply(acc, arg, &mut self.fresh);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let t = self.next("a term")?;
        match t.tok {
            Tok::Ident(name) => Ok(self.resolve(name)),
            Tok::Underscore => Err(ParseError {
                line: t.line,
                col: t.col,
                kind: ParseErrorKind::WildcardTerm,
            }),
            Tok::FutureTok(name) => {
                if self.allow_futures {
                    Ok(Term::future(name))
                } else {
                    Err(ParseError {
                        line: t.line,
                        col: t.col,
                        kind: ParseErrorKind::FutureInSource,
                    })
                }
            }
            Tok::True => Ok(Term::True),
            Tok::False => Ok(Term::False),
            Tok::Async => Ok(Term::Async(Box::new(self.atom()?))),
            Tok::Fst => Ok(Term::Fst(Box::new(self.atom()?))),
            Tok::Snd => Ok(Term::Snd(Box::new(self.atom()?))),
            Tok::Take => {
                let (line, col) = self.here();
                let name = self.expect_ident("a function name")?;
                if self.scopes.iter().any(|s| *s == name) {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::TakeBoundVariable(name),
                    });
                }
                Ok(Term::Take(FnName(name)))
            }
            Tok::Set => {
                let target = self.atom()?;
                let body = self.atom()?;
                Ok(Term::Set(Box::new(target), Box::new(body)))
            }
            Tok::LParen => {
                if matches!(self.peek(), Some(Tok::RParen)) {
                    self.pos += 1;
                    return Ok(Term::Unit);
                }
                let first = self.term()?;
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.pos += 1;
                        let second = self.term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(self.pair_expr(first, second))
                    }
                    _ => {
                        self.expect(Tok::RParen, "`)` or `,`")?;
                        Ok(first)
                    }
                }
            }
            other => Err(ParseError {
                line: t.line,
                col: t.col,
                kind: ParseErrorKind::UnexpectedToken {
                    found: other.describe(),
                    expected: "a term".into(),
                },
            }),
        }
    }

    /// `(V, V')` over syntactic values is already a value; anything else
    /// becomes `(\p.\q.(p,q)) M N`.
    fn pair_expr(&mut self, a: Term, b: Term) -> Term {
        if is_value(&a) && is_value(&b) {
            Term::pair(a, b)
        } else {
            let p = self.fresh_name("p");
            let q = self.fresh_name("q");
            let build = Term::lam(
                p.clone(),
                Term::lam(q.clone(), Term::pair(Term::var(p), Term::var(q))),
            );
            Term::app(Term::app(build, a), b)
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut defs: Vec<(FnName, Term)> = Vec::new();
        let mut events: Vec<(FnName, FnName)> = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Def) => {
                    self.pos += 1;
                    let (line, col) = self.here();
                    let name = self.expect_ident("a definition name")?;
                    if defs.iter().any(|(f, _)| f.0 == name) {
                        return Err(ParseError {
                            line,
                            col,
                            kind: ParseErrorKind::DuplicateDef(name),
                        });
                    }
                    self.expect(Tok::Eq, "`=`")?;
                    let body = self.term()?;
                    defs.push((FnName(name), body));
                }
                Some(Tok::Event) => {
                    self.pos += 1;
                    let (line, col) = self.here();
                    let event = self.expect_ident("an event name")?;
                    if events.iter().any(|(e, _)| e.0 == event) {
                        return Err(ParseError {
                            line,
                            col,
                            kind: ParseErrorKind::DuplicateEvent(event),
                        });
                    }
                    if defs.iter().any(|(f, _)| f.0 == event) {
                        return Err(ParseError {
                            line,
                            col,
                            kind: ParseErrorKind::EventCollidesWithDef(event),
                        });
                    }
                    self.expect(Tok::Eq, "`=`")?;
                    let (hline, hcol) = self.here();
                    let handler = self.expect_ident("a handler name")?;
                    if !defs.iter().any(|(f, _)| f.0 == handler) {
                        return Err(ParseError {
                            line: hline,
                            col: hcol,
                            kind: ParseErrorKind::UndefinedHandler(handler),
                        });
                    }
                    events.push((FnName(event), FnName(handler)));
                }
                Some(Tok::Main) => {
                    self.pos += 1;
                    self.expect(Tok::Eq, "`=`")?;
                    let main = self.term()?;
                    if let Some(t) = self.tokens.get(self.pos) {
                        return Err(ParseError {
                            line: t.line,
                            col: t.col,
                            kind: ParseErrorKind::UnexpectedToken {
                                found: t.tok.describe(),
                                expected: "end of input".into(),
                            },
                        });
                    }
                    return Ok(Program { defs, events, main });
                }
                Some(_) => {
                    let t = self.tokens[self.pos].clone();
                    return Err(ParseError {
                        line: t.line,
                        col: t.col,
                        kind: ParseErrorKind::UnexpectedToken {
                            found: t.tok.describe(),
                            expected: "`def`, `event`, or `main`".into(),
                        },
                    });
                }
                None => return Err(self.eof("`def`, `event`, or `main`")),
            }
        }
    }
}

/// Build an application, wrapping a bare function name handed to
/// `callHandler` so it is not expanded before the handler is invoked.
fn apply(f: Term, a: Term, fresh: &mut u64) -> Term {
    if matches!(&f, Term::FnName(n) if n.0 == "callHandler") {
        if let Term::FnName(_) = a {
            *fresh += 1;
            let w = format!("_w{fresh}");
            return Term::app(f, Term::lam(w, a));
        }
    }
    Term::app(f, a)
}

/// Parse a single term. Future tokens are accepted, so text produced by the
/// printer for runtime terms parses back.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, true)?;
    let t = p.term()?;
    if let Some(tok) = p.tokens.get(p.pos) {
        return Err(ParseError {
            line: tok.line,
            col: tok.col,
            kind: ParseErrorKind::UnexpectedToken {
                found: tok.tok.describe(),
                expected: "end of input".into(),
            },
        });
    }
    Ok(t)
}

/// Parse a whole program. Future tokens are rejected everywhere.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    Parser::new(src, false)?.program()
}

/// Render a program in source syntax; re-parsing gives an alpha-equivalent
/// program.
pub fn program_text(p: &Program) -> String {
    let mut out = String::new();
    for (f, body) in &p.defs {
        out.push_str(&format!("def {f} = {}\n", crate::pretty::term(body)));
    }
    for (e, h) in &p.events {
        out.push_str(&format!("event {e} = {h}\n"));
    }
    out.push_str(&format!("main = {}\n", crate::pretty::term(&p.main)));
    out
}
