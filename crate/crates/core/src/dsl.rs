//! Query language for sets and measures.
//!
//! ```text
//! query   := expr (("==" | "<=") expr)?
//! expr    := union ("\" union)*
//! union   := inter ("|" inter)*
//! inter   := atom ("&" atom)*
//! atom    := interval | "{" numbers? "}" | "empty" | "diag"
//!          | name "(" args ")" | "(" expr ")"
//! number  := "-"? INT ("/" INT)?
//! ```
//!
//! `inf` may appear only as an interval endpoint. A `(` directly followed by
//! a number, `-` or `inf` starts an interval literal. `[a,a]` denotes `{a}`.
//!
//! Parsing produces a typed [`Query`]; [`evaluate`] runs it exactly and
//! [`Query`]'s `Display` prints it back with minimal parentheses.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ExtReal, Rational};
use crate::measures::{eta, eta_family, pi_outer, rho_cld, xi};
use crate::set1d::{Endpoint, Interval, Set1D};
use crate::set2d::Set2D;

/// Largest `N` accepted by `diag_approx(N)`.
pub const DIAG_APPROX_MAX: u32 = 64;

/// Byte range in the source, with the 1-based line and column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    fn to(self, other: Span) -> Span {
        Span { end: other.end, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Syntax,
    Type,
    Domain,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Type => "type error",
            ErrorKind::Domain => "domain error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{kind} at {}:{}: {message}", span.line, span.col)]
pub struct DslError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: Span,
}

impl DslError {
    fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> Self {
        DslError { kind, message: message.into(), span }
    }

    /// The message followed by the offending source line and a caret marker.
    pub fn render(&self, source: &str) -> String {
        let line = source.lines().nth(self.span.line.saturating_sub(1)).unwrap_or("");
        let width = source[self.span.start.min(source.len())..self.span.end.min(source.len())]
            .chars()
            .take_while(|&c| c != '\n')
            .count()
            .max(1);
        format!("{self}\n  {line}\n  {}{}", " ".repeat(self.span.col.saturating_sub(1)), "^".repeat(width))
    }
}

/// AST node; equality ignores the span.
#[derive(Debug, Clone)]
pub struct Node<T> {
    pub kind: T,
    pub span: Span,
}

impl<T: PartialEq> PartialEq for Node<T> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl<T: Eq> Eq for Node<T> {}

impl<T> Node<T> {
    pub fn new(kind: T, span: Span) -> Self {
        Node { kind, span }
    }

    /// Node with a default span, for building ASTs in code.
    pub fn bare(kind: T) -> Self {
        Node { kind, span: Span::default() }
    }
}

pub type Set1 = Node<Set1Kind>;
pub type Set2 = Node<Set2Kind>;
pub type Measure = Node<MeasureKind>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
}

impl SetOp {
    fn precedence(self) -> u8 {
        match self {
            SetOp::Difference => 1,
            SetOp::Union => 2,
            SetOp::Intersect => 3,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            SetOp::Union => "|",
            SetOp::Intersect => "&",
            SetOp::Difference => "\\",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Set1Kind {
    Interval { lo: Endpoint, hi: Endpoint, lo_closed: bool, hi_closed: bool },
    Points(Vec<Rational>),
    Empty,
    Shift(Box<Set1>, Rational),
    Binary(SetOp, Box<Set1>, Box<Set1>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Set2Kind {
    Rect(Box<Set1>, Box<Set1>),
    Diag,
    Graph(Rational, Box<Set1>),
    DiagApprox(u32),
    VShift(Box<Set2>, Rational),
    Binary(SetOp, Box<Set2>, Box<Set2>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureKind {
    Mu(Set1),
    Nu(Set1),
    Pi(Set2),
    Rho(Set2),
    Xi(Set2),
    Eta(Set2),
    EtaT(Rational, Set2),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CompareOp {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Measure(Measure),
    Compare(CompareOp, Box<Measure>, Box<Measure>),
}

// ---------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Pipe,
    Amp,
    Backslash,
    EqEq,
    Le,
    Minus,
    Slash,
    Int(BigInt),
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Backslash => f.write_str("`\\`"),
            Tok::EqEq => f.write_str("`==`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Int(n) => write!(f, "number `{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        let at = Span { start, end: start + c.len_utf8(), line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let single = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Pipe),
            '&' => Some(Tok::Amp),
            '\\' => Some(Tok::Backslash),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push((tok, at));
            continue;
        }
        if c == '=' || c == '<' {
            chars.next();
            if chars.peek().map(|&(_, d)| d) == Some('=') {
                chars.next();
                col += 2;
                out.push((if c == '=' { Tok::EqEq } else { Tok::Le }, Span { end: start + 2, ..at }));
                continue;
            }
            return Err(DslError::new(ErrorKind::Syntax, at, format!("unexpected `{c}`; did you mean `{c}=`?")));
        }
        if c.is_ascii_digit() || c.is_alphabetic() || c == '_' {
            let mut end = start;
            let numeric = c.is_ascii_digit();
            while let Some(&(i, d)) = chars.peek() {
                let ok = if numeric { d.is_ascii_digit() } else { d.is_alphanumeric() || d == '_' };
                if !ok {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
                col += 1;
            }
            let text = &src[start..end];
            let span = Span { end, ..at };
            if numeric {
                if chars.peek().is_some_and(|&(_, d)| d == '.') {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        span,
                        "decimal literals are not supported; write a fraction p/q",
                    ));
                }
                out.push((Tok::Int(text.parse().expect("ascii digits")), span));
            } else {
                out.push((Tok::Ident(text.to_string()), span));
            }
            continue;
        }
        return Err(DslError::new(ErrorKind::Syntax, at, format!("unexpected character `{c}`")));
    }
    let end = src.len();
    out.push((Tok::Eof, Span { start: end, end, line, col }));
    Ok(out)
}

// --------------------------------------------------------------- parser

/// Untyped parse tree; [`Typer`] turns it into a [`Query`].
#[derive(Debug, Clone)]
enum Raw {
    Num(Rational),
    Interval { lo: Endpoint, hi: Endpoint, lo_closed: bool, hi_closed: bool },
    Points(Vec<Rational>),
    Name(String),
    Call(String, Vec<Node<Raw>>),
    Binary(SetOp, Box<Node<Raw>>, Box<Node<Raw>>),
}

/// Left side and optional comparison of a parsed query.
type RawQuery = (Node<Raw>, Option<(CompareOp, Span, Node<Raw>)>);

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> DslError {
        DslError::new(ErrorKind::Syntax, self.span(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Span, DslError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(expected))
        }
    }

    /// Closing delimiter; a missing one is reported against its opener.
    fn close(&mut self, tok: Tok, opener: Span) -> Result<Span, DslError> {
        if *self.peek() == tok {
            return Ok(self.bump().1);
        }
        let what = format!("{tok}");
        if *self.peek() == Tok::Eof {
            return Err(DslError::new(ErrorKind::Syntax, opener, format!("unbalanced parenthesis: missing {what}")));
        }
        Err(self.unexpected(&what))
    }

    fn query(&mut self) -> Result<RawQuery, DslError> {
        let lhs = self.expr()?;
        let cmp = match self.peek() {
            Tok::EqEq | Tok::Le => {
                let (tok, span) = self.bump();
                let op = if tok == Tok::EqEq { CompareOp::Eq } else { CompareOp::Le };
                Some((op, span, self.expr()?))
            }
            _ => None,
        };
        if *self.peek() == Tok::RParen {
            return Err(DslError::new(ErrorKind::Syntax, self.span(), "unbalanced parenthesis: unexpected `)`"));
        }
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("an operator or end of input"));
        }
        Ok((lhs, cmp))
    }

    fn expr(&mut self) -> Result<Node<Raw>, DslError> {
        self.level(1)
    }

    fn level(&mut self, prec: u8) -> Result<Node<Raw>, DslError> {
        if prec > 3 {
            return self.atom();
        }
        let mut lhs = self.level(prec + 1)?;
        loop {
            let op = match self.peek() {
                Tok::Backslash if prec == 1 => SetOp::Difference,
                Tok::Pipe if prec == 2 => SetOp::Union,
                Tok::Amp if prec == 3 => SetOp::Intersect,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.level(prec + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Node::new(Raw::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn number(&mut self) -> Result<(Rational, Span), DslError> {
        let start = self.span();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.unexpected("a number"));
        };
        self.bump();
        let mut d = BigInt::from(1);
        if *self.peek() == Tok::Slash {
            self.bump();
            let Tok::Int(den) = self.peek().clone() else {
                return Err(self.unexpected("a denominator"));
            };
            if den == BigInt::from(0) {
                return Err(DslError::new(ErrorKind::Syntax, self.span(), "zero denominator"));
            }
            self.bump();
            d = den;
        }
        let n = if negative { -n } else { n };
        let q = Rational::from_big(n, d).expect("nonzero denominator");
        Ok((q, start.to(self.prev_span())))
    }

    fn is_inf(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Ident(s) if s == "inf")
    }

    fn endpoint(&mut self) -> Result<Endpoint, DslError> {
        if self.is_inf(0) {
            self.bump();
            return Ok(Endpoint::PosInf);
        }
        if *self.peek() == Tok::Minus && self.is_inf(1) {
            self.bump();
            self.bump();
            return Ok(Endpoint::NegInf);
        }
        Ok(Endpoint::Fin(self.number()?.0))
    }

    fn interval(&mut self) -> Result<Node<Raw>, DslError> {
        let (open_tok, open) = self.bump();
        let lo = self.endpoint()?;
        self.expect(Tok::Comma, "`,` between interval endpoints")?;
        let hi = self.endpoint()?;
        let hi_closed = match self.peek() {
            Tok::RBracket => true,
            Tok::RParen => false,
            Tok::Eof => {
                return Err(DslError::new(ErrorKind::Syntax, open, "unbalanced bracket: interval is not closed"))
            }
            _ => return Err(self.unexpected("`]` or `)`")),
        };
        let close = self.bump().1;
        let kind = Raw::Interval { lo, hi, lo_closed: open_tok == Tok::LBracket, hi_closed };
        Ok(Node::new(kind, open.to(close)))
    }

    fn atom(&mut self) -> Result<Node<Raw>, DslError> {
        match self.peek().clone() {
            Tok::LBracket => self.interval(),
            Tok::LParen => {
                if matches!(self.peek_at(1), Tok::Int(_) | Tok::Minus) || self.is_inf(1) {
                    return self.interval();
                }
                let open = self.bump().1;
                let inner = self.expr()?;
                let close = self.close(Tok::RParen, open)?;
                Ok(Node::new(inner.kind, open.to(close)))
            }
            Tok::LBrace => {
                let open = self.bump().1;
                let mut pts = Vec::new();
                if *self.peek() != Tok::RBrace {
                    loop {
                        pts.push(self.number()?.0);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                let close = self.close(Tok::RBrace, open)?;
                Ok(Node::new(Raw::Points(pts), open.to(close)))
            }
            Tok::Int(_) | Tok::Minus => {
                let (q, span) = self.number()?;
                Ok(Node::new(Raw::Num(q), span))
            }
            Tok::Ident(name) => {
                let span = self.bump().1;
                if name == "inf" {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        span,
                        "`inf` is only allowed as an interval endpoint",
                    ));
                }
                if *self.peek() != Tok::LParen {
                    return Ok(Node::new(Raw::Name(name), span));
                }
                let open = self.bump().1;
                let mut args = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                let close = self.close(Tok::RParen, open)?;
                Ok(Node::new(Raw::Call(name, args), span.to(close)))
            }
            Tok::RParen | Tok::RBracket | Tok::RBrace => Err(DslError::new(
                ErrorKind::Syntax,
                self.span(),
                format!("unbalanced parenthesis: unexpected {}", self.peek()),
            )),
            _ => Err(self.unexpected("a set, measure or number")),
        }
    }
}

// ---------------------------------------------------------------- typer

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ty {
    Num,
    Set1,
    Set2,
    Measure,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ty::Num => "a number",
            Ty::Set1 => "a 1-D set",
            Ty::Set2 => "a 2-D set",
            Ty::Measure => "a measure value",
        })
    }
}

struct Typer<'a> {
    src: &'a str,
}

const SET2_CALLS: [&str; 4] = ["rect", "graph", "diag_approx", "vshift"];
const MEASURE_CALLS: [&str; 7] = ["mu", "nu", "pi", "rho", "xi", "eta", "eta_t"];

impl Typer<'_> {
    fn text(&self, span: Span) -> &str {
        &self.src[span.start..span.end]
    }

    fn ty(&self, raw: &Node<Raw>) -> Result<Ty, DslError> {
        Ok(match &raw.kind {
            Raw::Num(_) => Ty::Num,
            Raw::Interval { .. } | Raw::Points(_) => Ty::Set1,
            Raw::Name(n) if n == "empty" => Ty::Set1,
            Raw::Name(n) if n == "diag" => Ty::Set2,
            Raw::Name(n)
                if SET2_CALLS.contains(&n.as_str()) || MEASURE_CALLS.contains(&n.as_str()) || n == "shift1" =>
            {
                return Err(DslError::new(
                    ErrorKind::Syntax,
                    raw.span,
                    format!("`{n}` needs arguments in parentheses"),
                ));
            }
            Raw::Name(n) => return Err(DslError::new(ErrorKind::Syntax, raw.span, format!("unknown name `{n}`"))),
            Raw::Call(n, _) if n == "shift1" => Ty::Set1,
            Raw::Call(n, _) if SET2_CALLS.contains(&n.as_str()) => Ty::Set2,
            Raw::Call(n, _) if MEASURE_CALLS.contains(&n.as_str()) => Ty::Measure,
            Raw::Call(n, _) => {
                return Err(DslError::new(ErrorKind::Syntax, raw.span, format!("unknown function `{n}`")))
            }
            Raw::Binary(_, l, _) => self.ty(l)?,
        })
    }

    fn mismatch(&self, raw: &Node<Raw>, want: Ty, found: Ty, context: &str) -> DslError {
        DslError::new(
            ErrorKind::Type,
            raw.span,
            format!("{context} expects {want}, but `{}` is {found}", self.text(raw.span)),
        )
    }

    fn expect_ty(&self, raw: &Node<Raw>, want: Ty, context: &str) -> Result<(), DslError> {
        let found = self.ty(raw)?;
        if found == want {
            Ok(())
        } else {
            Err(self.mismatch(raw, want, found, context))
        }
    }

    fn arity<'r>(
        &self,
        raw: &Node<Raw>,
        name: &str,
        args: &'r [Node<Raw>],
        n: usize,
    ) -> Result<&'r [Node<Raw>], DslError> {
        if args.len() == n {
            Ok(args)
        } else {
            let plural = if n == 1 { "" } else { "s" };
            Err(DslError::new(
                ErrorKind::Type,
                raw.span,
                format!("`{name}` takes {n} argument{plural}, got {}", args.len()),
            ))
        }
    }

    fn num(&self, raw: &Node<Raw>, context: &str) -> Result<Rational, DslError> {
        match &raw.kind {
            Raw::Num(q) => Ok(q.clone()),
            _ => Err(self.mismatch(raw, Ty::Num, self.ty(raw)?, context)),
        }
    }

    fn set1(&self, raw: &Node<Raw>, context: &str) -> Result<Set1, DslError> {
        self.expect_ty(raw, Ty::Set1, context)?;
        let kind = match &raw.kind {
            Raw::Interval { lo, hi, lo_closed, hi_closed } => {
                Set1Kind::Interval { lo: lo.clone(), hi: hi.clone(), lo_closed: *lo_closed, hi_closed: *hi_closed }
            }
            Raw::Points(p) => Set1Kind::Points(p.clone()),
            Raw::Name(_) => Set1Kind::Empty,
            Raw::Call(name, args) => {
                let args = self.arity(raw, name, args, 2)?;
                Set1Kind::Shift(Box::new(self.set1(&args[0], "`shift1`")?), self.num(&args[1], "`shift1`")?)
            }
            Raw::Binary(op, l, r) => {
                let ctx = format!("`{}`", op.symbol());
                Set1Kind::Binary(*op, Box::new(self.set1(l, &ctx)?), Box::new(self.set1(r, &ctx)?))
            }
            Raw::Num(_) => unreachable!("typed as a set"),
        };
        Ok(Node::new(kind, raw.span))
    }

    fn set2(&self, raw: &Node<Raw>, context: &str) -> Result<Set2, DslError> {
        self.expect_ty(raw, Ty::Set2, context)?;
        let kind = match &raw.kind {
            Raw::Name(_) => Set2Kind::Diag,
            Raw::Call(name, args) => match name.as_str() {
                "rect" => {
                    let a = self.arity(raw, name, args, 2)?;
                    Set2Kind::Rect(Box::new(self.set1(&a[0], "`rect`")?), Box::new(self.set1(&a[1], "`rect`")?))
                }
                "graph" => {
                    let a = self.arity(raw, name, args, 2)?;
                    Set2Kind::Graph(self.num(&a[0], "`graph`")?, Box::new(self.set1(&a[1], "`graph`")?))
                }
                "diag_approx" => {
                    let a = self.arity(raw, name, args, 1)?;
                    let n = self.num(&a[0], "`diag_approx`")?;
                    let n = n
                        .to_i64()
                        .filter(|_| n.is_integer())
                        .and_then(|v| u32::try_from(v).ok())
                        .filter(|v| (1..=DIAG_APPROX_MAX).contains(v))
                        .ok_or_else(|| {
                            DslError::new(
                                ErrorKind::Domain,
                                a[0].span,
                                format!("`diag_approx` needs an integer N with 1 <= N <= {DIAG_APPROX_MAX}, got {n}"),
                            )
                        })?;
                    Set2Kind::DiagApprox(n)
                }
                _ => {
                    let a = self.arity(raw, name, args, 2)?;
                    Set2Kind::VShift(Box::new(self.set2(&a[0], "`vshift`")?), self.num(&a[1], "`vshift`")?)
                }
            },
            Raw::Binary(op, l, r) => {
                let ctx = format!("`{}`", op.symbol());
                Set2Kind::Binary(*op, Box::new(self.set2(l, &ctx)?), Box::new(self.set2(r, &ctx)?))
            }
            _ => unreachable!("typed as a 2-D set"),
        };
        Ok(Node::new(kind, raw.span))
    }

    fn measure(&self, raw: &Node<Raw>, context: &str) -> Result<Measure, DslError> {
        self.expect_ty(raw, Ty::Measure, context)?;
        let (name, args) = match &raw.kind {
            Raw::Call(name, args) => (name.as_str(), args),
            Raw::Binary(op, ..) => {
                return Err(DslError::new(
                    ErrorKind::Type,
                    raw.span,
                    format!(
                        "`{}` combines sets, but `{}` applies it to measure values",
                        op.symbol(),
                        self.text(raw.span)
                    ),
                ))
            }
            _ => unreachable!("typed as a measure"),
        };
        let ctx = format!("`{name}`");
        let kind = if name == "eta_t" {
            let a = self.arity(raw, name, args, 2)?;
            MeasureKind::EtaT(self.num(&a[0], &ctx)?, self.set2(&a[1], &ctx)?)
        } else {
            let a = self.arity(raw, name, args, 1)?;
            match name {
                "mu" => MeasureKind::Mu(self.set1(&a[0], &ctx)?),
                "nu" => MeasureKind::Nu(self.set1(&a[0], &ctx)?),
                "pi" => MeasureKind::Pi(self.set2(&a[0], &ctx)?),
                "rho" => MeasureKind::Rho(self.set2(&a[0], &ctx)?),
                "xi" => MeasureKind::Xi(self.set2(&a[0], &ctx)?),
                _ => MeasureKind::Eta(self.set2(&a[0], &ctx)?),
            }
        };
        Ok(Node::new(kind, raw.span))
    }
}

/// Parses and type-checks a query.
pub fn parse(input: &str) -> Result<Query, DslError> {
    let toks = lex(input)?;
    let mut parser = Parser { toks, pos: 0 };
    let (lhs, cmp) = parser.query()?;
    let typer = Typer { src: input };
    match cmp {
        None => {
            let ty = typer.ty(&lhs)?;
            if ty != Ty::Measure {
                return Err(DslError::new(
                    ErrorKind::Type,
                    lhs.span,
                    format!(
                        "a query must be a measure application or a comparison, but `{}` is {ty}",
                        typer.text(lhs.span)
                    ),
                ));
            }
            Ok(Query::Measure(typer.measure(&lhs, "a query")?))
        }
        Some((op, _, rhs)) => {
            let ctx = if op == CompareOp::Eq { "`==`" } else { "`<=`" };
            Ok(Query::Compare(op, Box::new(typer.measure(&lhs, ctx)?), Box::new(typer.measure(&rhs, ctx)?)))
        }
    }
}

// ------------------------------------------------------------ evaluation

/// Result of a query: a measure value or a comparison verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Number(ExtReal),
    Bool(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(v) => v.fmt(f),
            Value::Bool(b) => b.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalOutcome {
    pub value: Value,
    /// Canonical pretty-print of the query.
    pub echo: String,
    pub diagnostics: Vec<String>,
}

fn domain(span: Span, message: impl Into<String>) -> DslError {
    DslError::new(ErrorKind::Domain, span, message)
}

pub fn eval_set1(s: &Set1) -> Result<Set1D, DslError> {
    Ok(match &s.kind {
        Set1Kind::Interval { lo, hi, lo_closed, hi_closed } => {
            if let (Endpoint::Fin(a), Endpoint::Fin(b)) = (lo, hi) {
                if a == b && *lo_closed && *hi_closed {
                    return Ok(Set1D::point(a.clone()));
                }
            }
            let iv = Interval::new(lo.clone(), hi.clone(), *lo_closed, *hi_closed)
                .map_err(|e| domain(s.span, e.to_string()))?;
            Set1D::from_interval(iv)
        }
        Set1Kind::Points(p) => Set1D::points(p.iter().cloned()),
        Set1Kind::Empty => Set1D::empty(),
        Set1Kind::Shift(a, c) => eval_set1(a)?.shift(c),
        Set1Kind::Binary(op, l, r) => {
            let (l, r) = (eval_set1(l)?, eval_set1(r)?);
            match op {
                SetOp::Union => l.union(&r),
                SetOp::Intersect => l.intersect(&r),
                SetOp::Difference => l.difference(&r),
            }
        }
    })
}

pub fn eval_set2(s: &Set2) -> Result<Set2D, DslError> {
    Ok(match &s.kind {
        Set2Kind::Rect(a, b) => Set2D::rect(eval_set1(a)?, eval_set1(b)?).map_err(|e| domain(a.span, e.to_string()))?,
        Set2Kind::Diag => Set2D::diagonal(),
        Set2Kind::Graph(c, d) => Set2D::graph(c.clone(), eval_set1(d)?).map_err(|e| domain(d.span, e.to_string()))?,
        Set2Kind::DiagApprox(n) => Set2D::diagonal_approx(*n).map_err(|e| domain(s.span, e.to_string()))?,
        Set2Kind::VShift(e, c) => eval_set2(e)?.vshift(c),
        Set2Kind::Binary(op, l, r) => {
            let (l, r) = (eval_set2(l)?, eval_set2(r)?);
            match op {
                SetOp::Union => l.union(&r),
                SetOp::Intersect => l.intersect(&r),
                SetOp::Difference => l.difference(&r),
            }
        }
    })
}

pub fn eval_measure(m: &Measure) -> Result<ExtReal, DslError> {
    Ok(match &m.kind {
        MeasureKind::Mu(a) => eval_set1(a)?.counting().map_err(|e| domain(a.span, e.to_string()))?,
        MeasureKind::Nu(a) => eval_set1(a)?.lebesgue(),
        MeasureKind::Pi(e) => pi_outer(&eval_set2(e)?),
        MeasureKind::Rho(e) => rho_cld(&eval_set2(e)?),
        MeasureKind::Xi(e) => xi(&eval_set2(e)?),
        MeasureKind::Eta(e) => eta(&eval_set2(e)?),
        MeasureKind::EtaT(t, e) => {
            let set = eval_set2(e)?;
            eta_family(t, &set).map_err(|err| domain(m.span, err.to_string()))?
        }
    })
}

fn set_of(m: &Measure) -> Option<&Set2> {
    match &m.kind {
        MeasureKind::Pi(e)
        | MeasureKind::Rho(e)
        | MeasureKind::Xi(e)
        | MeasureKind::Eta(e)
        | MeasureKind::EtaT(_, e) => Some(e),
        MeasureKind::Mu(_) | MeasureKind::Nu(_) => None,
    }
}

fn measure_notes(m: &Measure, value: &ExtReal, notes: &mut Vec<String>) -> Result<(), DslError> {
    if let Some(e) = set_of(m) {
        let set = eval_set2(e)?;
        notes.push(format!("{} normalizes to {set}", Printer(e)));
    }
    notes.push(format!("{} = {value}", Printer(m)));
    Ok(())
}

/// Evaluates a query exactly.
pub fn evaluate(q: &Query) -> Result<EvalOutcome, DslError> {
    let mut diagnostics = Vec::new();
    let value = match q {
        Query::Measure(m) => {
            let v = eval_measure(m)?;
            measure_notes(m, &v, &mut diagnostics)?;
            Value::Number(v)
        }
        Query::Compare(op, l, r) => {
            let (a, b) = (eval_measure(l)?, eval_measure(r)?);
            measure_notes(l, &a, &mut diagnostics)?;
            measure_notes(r, &b, &mut diagnostics)?;
            Value::Bool(match op {
                CompareOp::Eq => a == b,
                CompareOp::Le => a <= b,
            })
        }
    };
    Ok(EvalOutcome { value, echo: q.to_string(), diagnostics })
}

/// Parses then evaluates.
pub fn run(input: &str) -> Result<EvalOutcome, DslError> {
    evaluate(&parse(input)?)
}

// -------------------------------------------------------------- printing

struct Printer<'a, T>(&'a T);

fn write_binary<T, F>(f: &mut fmt::Formatter<'_>, op: SetOp, l: &T, r: &T, prec_of: F) -> fmt::Result
where
    F: Fn(&T) -> u8,
    for<'a> Printer<'a, T>: fmt::Display,
{
    let p = op.precedence();
    let wrap = |f: &mut fmt::Formatter<'_>, child: &T, needs: bool| {
        if needs {
            write!(f, "({})", Printer(child))
        } else {
            write!(f, "{}", Printer(child))
        }
    };
    wrap(f, l, prec_of(l) < p)?;
    write!(f, " {} ", op.symbol())?;
    wrap(f, r, prec_of(r) <= p)
}

fn prec1(s: &Set1) -> u8 {
    match &s.kind {
        Set1Kind::Binary(op, ..) => op.precedence(),
        _ => u8::MAX,
    }
}

fn prec2(s: &Set2) -> u8 {
    match &s.kind {
        Set2Kind::Binary(op, ..) => op.precedence(),
        _ => u8::MAX,
    }
}

impl fmt::Display for Printer<'_, Set1> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Set1Kind::Interval { lo, hi, lo_closed, hi_closed } => {
                let end = |e: &Endpoint| match e {
                    Endpoint::NegInf => "-inf".to_string(),
                    Endpoint::PosInf => "inf".to_string(),
                    Endpoint::Fin(q) => q.to_string(),
                };
                let (o, c) = (if *lo_closed { '[' } else { '(' }, if *hi_closed { ']' } else { ')' });
                write!(f, "{o}{}, {}{c}", end(lo), end(hi))
            }
            Set1Kind::Points(p) => {
                let items: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            Set1Kind::Empty => f.write_str("empty"),
            Set1Kind::Shift(a, c) => write!(f, "shift1({}, {c})", Printer(a.as_ref())),
            Set1Kind::Binary(op, l, r) => write_binary(f, *op, l.as_ref(), r.as_ref(), prec1),
        }
    }
}

impl fmt::Display for Printer<'_, Set2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Set2Kind::Rect(a, b) => write!(f, "rect({}, {})", Printer(a.as_ref()), Printer(b.as_ref())),
            Set2Kind::Diag => f.write_str("diag"),
            Set2Kind::Graph(c, d) => write!(f, "graph({c}, {})", Printer(d.as_ref())),
            Set2Kind::DiagApprox(n) => write!(f, "diag_approx({n})"),
            Set2Kind::VShift(e, c) => write!(f, "vshift({}, {c})", Printer(e.as_ref())),
            Set2Kind::Binary(op, l, r) => write_binary(f, *op, l.as_ref(), r.as_ref(), prec2),
        }
    }
}

impl fmt::Display for Printer<'_, Measure> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            MeasureKind::Mu(a) => write!(f, "mu({})", Printer(a)),
            MeasureKind::Nu(a) => write!(f, "nu({})", Printer(a)),
            MeasureKind::Pi(e) => write!(f, "pi({})", Printer(e)),
            MeasureKind::Rho(e) => write!(f, "rho({})", Printer(e)),
            MeasureKind::Xi(e) => write!(f, "xi({})", Printer(e)),
            MeasureKind::Eta(e) => write!(f, "eta({})", Printer(e)),
            MeasureKind::EtaT(t, e) => write!(f, "eta_t({t}, {})", Printer(e)),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Measure(m) => Printer(m).fmt(f),
            Query::Compare(op, l, r) => {
                let sym = if *op == CompareOp::Eq { "==" } else { "<=" };
                write!(f, "{} {sym} {}", Printer(l.as_ref()), Printer(r.as_ref()))
            }
        }
    }
}

impl fmt::Display for Set1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer(self).fmt(f)
    }
}

impl fmt::Display for Set2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer(self).fmt(f)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer(self).fmt(f)
    }
}
