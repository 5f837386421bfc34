//! Expression grammars for classical and quantum formulas.
//!
//! Classical grammar: generators `h`, `ep`, `em`; Poisson bracket `{f, g}`;
//! scalars (integers, rationals, `i`) and the six parameter names; `+`, `-`,
//! `*`, `^` with the usual precedence; parentheses for grouping. Quantum
//! grammar: letters `H`, `Ep`, `Em`, `I`; commutator `[a, b]`; symmetrized
//! product `(a, b)`; same scalars. Whitespace is insignificant.

use crate::exactnum::{GaussRational, Param, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grammar {
    Classical,
    Quantum,
}

/// Parse tree over either grammar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprAst {
    Scalar(GaussRational),
    Param(Param),
    GenH,
    GenEPlus,
    GenEMinus,
    /// The identity letter `I` (quantum grammar only).
    Identity,
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    /// Classical Poisson bracket `{f, g}`.
    Bracket(Box<ExprAst>, Box<ExprAst>),
    /// Quantum commutator `[a, b]`.
    Commutator(Box<ExprAst>, Box<ExprAst>),
    /// Quantum symmetrized product `(a, b)`.
    Sym(Box<ExprAst>, Box<ExprAst>),
}

impl ExprAst {
    pub fn scalar_int(n: i64) -> ExprAst {
        ExprAst::Scalar(GaussRational::from_int(n))
    }

    pub fn scalar_ratio(num: i64, den: i64) -> ExprAst {
        ExprAst::Scalar(GaussRational::from_ratio(num, den))
    }

    pub fn add(a: ExprAst, b: ExprAst) -> ExprAst {
        ExprAst::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: ExprAst, b: ExprAst) -> ExprAst {
        ExprAst::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ExprAst, b: ExprAst) -> ExprAst {
        ExprAst::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: ExprAst) -> ExprAst {
        ExprAst::Neg(Box::new(a))
    }

    pub fn pow(a: ExprAst, k: u32) -> ExprAst {
        ExprAst::Pow(Box::new(a), k)
    }

    pub fn bracket(a: ExprAst, b: ExprAst) -> ExprAst {
        ExprAst::Bracket(Box::new(a), Box::new(b))
    }

    pub fn commutator(a: ExprAst, b: ExprAst) -> ExprAst {
        ExprAst::Commutator(Box::new(a), Box::new(b))
    }

    pub fn sym(a: ExprAst, b: ExprAst) -> ExprAst {
        ExprAst::Sym(Box::new(a), Box::new(b))
    }

    pub fn contains_bracket(&self) -> bool {
        match self {
            ExprAst::Scalar(_)
            | ExprAst::Param(_)
            | ExprAst::GenH
            | ExprAst::GenEPlus
            | ExprAst::GenEMinus
            | ExprAst::Identity => false,
            ExprAst::Neg(a) | ExprAst::Pow(a, _) => a.contains_bracket(),
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) => {
                a.contains_bracket() || b.contains_bracket()
            }
            ExprAst::Bracket(_, _) | ExprAst::Commutator(_, _) | ExprAst::Sym(_, _) => true,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at line {line}, column {column}: {message} (expected {})", expected.join(" | "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(n) => format!("number {}", n),
            Token::Ident(s) => format!("identifier {}", s),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::Comma => "','".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBrace => "'{'".into(),
            Token::RBrace => "'}'".into(),
            Token::LBracket => "'['".into(),
            Token::RBracket => "']'".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            chars: input.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else {
                out.push(Spanned {
                    token: Token::Eof,
                    line,
                    column,
                });
                return Ok(out);
            };
            let token = match c {
                '+' => {
                    self.bump();
                    Token::Plus
                }
                '-' => {
                    self.bump();
                    Token::Minus
                }
                '*' => {
                    self.bump();
                    Token::Star
                }
                '/' => {
                    self.bump();
                    Token::Slash
                }
                '^' => {
                    self.bump();
                    Token::Caret
                }
                ',' => {
                    self.bump();
                    Token::Comma
                }
                '(' => {
                    self.bump();
                    Token::LParen
                }
                ')' => {
                    self.bump();
                    Token::RParen
                }
                '{' => {
                    self.bump();
                    Token::LBrace
                }
                '}' => {
                    self.bump();
                    Token::RBrace
                }
                '[' => {
                    self.bump();
                    Token::LBracket
                }
                ']' => {
                    self.bump();
                    Token::RBracket
                }
                c if c.is_ascii_digit() => {
                    let mut digits = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                        digits.push(self.bump().unwrap());
                    }
                    Token::Number(digits.parse().expect("digit run parses"))
                }
                c if c.is_ascii_alphabetic() => {
                    let mut name = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_alphanumeric() || *d == '_')
                    {
                        name.push(self.bump().unwrap());
                    }
                    Token::Ident(name)
                }
                other => {
                    return Err(ParseError {
                        line,
                        column,
                        message: format!("unexpected character '{}'", other),
                        expected: vec!["expression".into()],
                    })
                }
            };
            out.push(Spanned {
                token,
                line,
                column,
            });
        }
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    grammar: Grammar,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> &Spanned {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        let at = self.peek();
        ParseError {
            line: at.line,
            column: at.column,
            message: message.into(),
            expected,
        }
    }

    fn expect(&mut self, token: Token) -> Result<(), ParseError> {
        if self.peek().token == token {
            self.advance();
            Ok(())
        } else {
            let found = self.peek().token.describe();
            Err(self.error(format!("found {}", found), vec![token.describe()]))
        }
    }

    fn parse_sum(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek().token {
                Token::Plus => {
                    self.advance();
                    acc = ExprAst::add(acc, self.parse_term()?);
                }
                Token::Minus => {
                    self.advance();
                    acc = ExprAst::sub(acc, self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.parse_unary()?;
        while self.peek().token == Token::Star {
            self.advance();
            acc = ExprAst::mul(acc, self.parse_unary()?);
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek().token == Token::Minus {
            self.advance();
            return Ok(ExprAst::neg(self.parse_unary()?));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<ExprAst, ParseError> {
        let mut base = self.parse_primary()?;
        // Fold `p/q` scalar literals before exponentiation so `1/6*x`
        // means `(1/6)*x`.
        if self.peek().token == Token::Slash {
            let ExprAst::Scalar(num) = &base else {
                return Err(self.error(
                    "'/' is only supported between scalar literals",
                    vec!["'*'".into(), "'+'".into(), "'-'".into(), "'^'".into()],
                ));
            };
            let num = num.clone();
            self.advance();
            let den_expr = self.parse_primary()?;
            let ExprAst::Scalar(den) = den_expr else {
                return Err(self.error("expected a scalar denominator", vec!["number".into()]));
            };
            let Some(folded) = num.checked_div(&den) else {
                return Err(self.error(
                    "division by zero in scalar literal",
                    vec!["nonzero number".into()],
                ));
            };
            base = ExprAst::Scalar(folded);
        }
        if self.peek().token == Token::Caret {
            self.advance();
            let exponent = match &self.peek().token {
                Token::Number(n) => {
                    if n.is_negative() || n > &BigInt::from(u32::MAX) {
                        return Err(
                            self.error("exponent out of range", vec!["nonnegative integer".into()])
                        );
                    }
                    let k: u32 = n.to_string().parse().expect("checked range");
                    self.advance();
                    k
                }
                other => {
                    let found = other.describe();
                    return Err(self.error(
                        format!("found {}", found),
                        vec!["nonnegative integer exponent".into()],
                    ));
                }
            };
            base = ExprAst::pow(base, exponent);
        }
        Ok(base)
    }

    fn resolve_ident(&self, name: &str) -> Option<ExprAst> {
        if name == "i" {
            return Some(ExprAst::Scalar(GaussRational::i()));
        }
        let gen = match (self.grammar, name) {
            (Grammar::Classical, "h") => Some(ExprAst::GenH),
            (Grammar::Classical, "ep") => Some(ExprAst::GenEPlus),
            (Grammar::Classical, "em") => Some(ExprAst::GenEMinus),
            (Grammar::Quantum, "H") => Some(ExprAst::GenH),
            (Grammar::Quantum, "Ep") => Some(ExprAst::GenEPlus),
            (Grammar::Quantum, "Em") => Some(ExprAst::GenEMinus),
            (Grammar::Quantum, "I") => Some(ExprAst::Identity),
            _ => None,
        };
        if gen.is_some() {
            return gen;
        }
        Param::from_name(name).map(ExprAst::Param)
    }

    fn expected_atoms(&self) -> Vec<String> {
        let mut out: Vec<String> = match self.grammar {
            Grammar::Classical => vec!["h", "ep", "em", "'{'"],
            Grammar::Quantum => vec!["H", "Ep", "Em", "I", "'['"],
        }
        .into_iter()
        .map(String::from)
        .collect();
        out.extend(["number", "parameter", "'('"].map(String::from));
        out
    }

    fn parse_primary(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek().token.clone() {
            Token::Number(n) => {
                self.advance();
                Ok(ExprAst::Scalar(GaussRational::from_rational(
                    Rational::from_integer(n),
                )))
            }
            Token::Ident(name) => match self.resolve_ident(&name) {
                Some(ast) => {
                    self.advance();
                    Ok(ast)
                }
                None => Err(self.error(
                    format!("unknown identifier '{}'", name),
                    self.expected_atoms(),
                )),
            },
            Token::LBrace => {
                if self.grammar != Grammar::Classical {
                    return Err(self.error(
                        "'{...}' brackets belong to the classical grammar",
                        self.expected_atoms(),
                    ));
                }
                self.advance();
                let a = self.parse_sum()?;
                self.expect(Token::Comma)?;
                let b = self.parse_sum()?;
                self.expect(Token::RBrace)?;
                Ok(ExprAst::bracket(a, b))
            }
            Token::LBracket => {
                if self.grammar != Grammar::Quantum {
                    return Err(self.error(
                        "'[...]' commutators belong to the quantum grammar",
                        self.expected_atoms(),
                    ));
                }
                self.advance();
                let a = self.parse_sum()?;
                self.expect(Token::Comma)?;
                let b = self.parse_sum()?;
                self.expect(Token::RBracket)?;
                Ok(ExprAst::commutator(a, b))
            }
            Token::LParen => {
                self.advance();
                let a = self.parse_sum()?;
                if self.peek().token == Token::Comma {
                    if self.grammar != Grammar::Quantum {
                        return Err(self.error(
                            "'(a, b)' products belong to the quantum grammar",
                            vec!["')'".into()],
                        ));
                    }
                    self.advance();
                    let b = self.parse_sum()?;
                    self.expect(Token::RParen)?;
                    Ok(ExprAst::sym(a, b))
                } else {
                    self.expect(Token::RParen)?;
                    Ok(a)
                }
            }
            other => Err(self.error(format!("found {}", other.describe()), self.expected_atoms())),
        }
    }
}

/// Parse `input` under the given grammar.
pub fn parse(input: &str, grammar: Grammar) -> Result<ExprAst, ParseError> {
    let tokens = Lexer::new(input).tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        grammar,
    };
    let ast = parser.parse_sum()?;
    if parser.peek().token != Token::Eof {
        let found = parser.peek().token.describe();
        return Err(parser.error(format!("found {}", found), vec!["end of input".into()]));
    }
    Ok(ast)
}

// Printing precedence levels; higher binds tighter.
const PREC_SUM: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn scalar_is_atom(value: &GaussRational) -> bool {
    // Values the lexer can produce as a single primary: nonnegative
    // rationals and the bare imaginary unit.
    (value.im().is_zero() && !value.re().is_negative())
        || (value.re().is_zero() && value.im() == &Rational::from_integer(BigInt::from(1)))
}

fn precedence_of(ast: &ExprAst) -> u8 {
    match ast {
        ExprAst::Scalar(v) => {
            if scalar_is_atom(v) {
                PREC_ATOM
            } else {
                PREC_SUM
            }
        }
        ExprAst::Param(_)
        | ExprAst::GenH
        | ExprAst::GenEPlus
        | ExprAst::GenEMinus
        | ExprAst::Identity
        | ExprAst::Bracket(_, _)
        | ExprAst::Commutator(_, _)
        | ExprAst::Sym(_, _) => PREC_ATOM,
        ExprAst::Pow(_, _) => PREC_POW,
        ExprAst::Neg(_) => PREC_NEG,
        ExprAst::Mul(_, _) => PREC_MUL,
        ExprAst::Add(_, _) | ExprAst::Sub(_, _) => PREC_SUM,
    }
}

fn print_at(ast: &ExprAst, grammar: Grammar, min_prec: u8, out: &mut String) {
    let prec = precedence_of(ast);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match ast {
        ExprAst::Scalar(v) => {
            if v.is_real() {
                out.push_str(&v.re().to_string());
            } else {
                out.push_str(&v.to_string());
            }
        }
        ExprAst::Param(p) => out.push_str(p.name()),
        ExprAst::GenH => out.push_str(match grammar {
            Grammar::Classical => "h",
            Grammar::Quantum => "H",
        }),
        ExprAst::GenEPlus => out.push_str(match grammar {
            Grammar::Classical => "ep",
            Grammar::Quantum => "Ep",
        }),
        ExprAst::GenEMinus => out.push_str(match grammar {
            Grammar::Classical => "em",
            Grammar::Quantum => "Em",
        }),
        ExprAst::Identity => out.push('I'),
        ExprAst::Neg(a) => {
            out.push('-');
            print_at(a, grammar, PREC_NEG + 1, out);
        }
        ExprAst::Add(a, b) => {
            print_at(a, grammar, PREC_SUM, out);
            out.push_str(" + ");
            print_at(b, grammar, PREC_SUM + 1, out);
        }
        ExprAst::Sub(a, b) => {
            print_at(a, grammar, PREC_SUM, out);
            out.push_str(" - ");
            print_at(b, grammar, PREC_SUM + 1, out);
        }
        ExprAst::Mul(a, b) => {
            print_at(a, grammar, PREC_MUL, out);
            out.push('*');
            print_at(b, grammar, PREC_MUL + 1, out);
        }
        ExprAst::Pow(a, k) => {
            print_at(a, grammar, PREC_ATOM, out);
            out.push('^');
            out.push_str(&k.to_string());
        }
        ExprAst::Bracket(a, b) => {
            out.push('{');
            print_at(a, grammar, 0, out);
            out.push_str(", ");
            print_at(b, grammar, 0, out);
            out.push('}');
        }
        ExprAst::Commutator(a, b) => {
            out.push('[');
            print_at(a, grammar, 0, out);
            out.push_str(", ");
            print_at(b, grammar, 0, out);
            out.push(']');
        }
        ExprAst::Sym(a, b) => {
            out.push('(');
            print_at(a, grammar, 0, out);
            out.push_str(", ");
            print_at(b, grammar, 0, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

/// Canonical text for an AST under the given grammar. Parsing the output
/// reproduces the tree the output itself parses to (printing is stable).
pub fn print(ast: &ExprAst, grammar: Grammar) -> String {
    let mut out = String::new();
    print_at(ast, grammar, 0, &mut out);
    out
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grammar::Classical => write!(f, "classical"),
            Grammar::Quantum => write!(f, "quantum"),
        }
    }
}
