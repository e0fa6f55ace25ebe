//! Text front end for characteristics, operator words and word relations.
//!
//! Expressions:
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := primary ('^' int)?
//! primary:= rational | x | y | z | t | U[xyzt]* | '(' expr ')'
//! ```
//!
//! so `2t*Ux + x*U`, `4t^2 Uxx` and `(x^2 + 2t)*U` all parse. Word
//! combinations look like `-R1 R8 + 1/2 R2 R6`, and relations join two
//! combinations with `==`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ParseError, ParseErrorKind};
use crate::exact::Var;
use crate::jet::DerivIndex;
use crate::symmetry::{OperatorWord, WordCombination, WordRelation};
use crate::{DiffFunction, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(Var),
    Deriv(DerivIndex),
    Op(u32),
    Identity,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => r.to_string(),
            Tok::Var(v) => v.to_string(),
            Tok::Deriv(d) => d.to_string(),
            Tok::Op(i) => format!("R{i}"),
            Tok::Identity => "I".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Eq => "==".into(),
        }
    }
}

fn err(pos: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { pos, kind }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let end = digits_end(i);
                let num: BigInt = src[i..end].parse().expect("digits");
                i = end;
                let mut value = Rational::from_integer(num);
                if i < bytes.len() && bytes[i] == b'/' {
                    let dstart = i + 1;
                    let dend = digits_end(dstart);
                    if dend == dstart {
                        return Err(err(i, ParseErrorKind::UnexpectedChar('/')));
                    }
                    let den: BigInt = src[dstart..dend].parse().expect("digits");
                    if den.is_zero() {
                        return Err(err(
                            dstart,
                            ParseErrorKind::UnknownSymbol("division by zero".into()),
                        ));
                    }
                    value = Rational::new(value.to_integer(), den);
                    i = dend;
                }
                out.push((start, Tok::Num(value)));
                continue;
            }
            'U' => {
                i += 1;
                while i < bytes.len() && matches!(bytes[i], b'x' | b'y' | b'z' | b't') {
                    i += 1;
                }
                let d = DerivIndex::from_letters(&src[start + 1..i]).expect("letters checked");
                out.push((start, Tok::Deriv(d)));
                continue;
            }
            'R' => {
                let end = digits_end(i + 1);
                let name = &src[start..end.max(i + 1)];
                let idx: Option<u32> = src[i + 1..end].parse().ok();
                match idx {
                    Some(k) if (1..=9).contains(&k) => out.push((start, Tok::Op(k))),
                    _ => return Err(err(start, ParseErrorKind::InvalidOperator(name.into()))),
                }
                i = end;
                continue;
            }
            'I' => out.push((start, Tok::Identity)),
            'x' | 'y' | 'z' | 't' => out.push((
                start,
                Tok::Var(Var::from_symbol(c).expect("variable letter")),
            )),
            '+' => out.push((start, Tok::Plus)),
            '-' | '\u{2212}' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 1;
                }
                out.push((start, Tok::Eq));
            }
            c if c.is_alphabetic() => {
                let mut end = i;
                while end < bytes.len() && (bytes[end] as char).is_alphanumeric() {
                    end += 1;
                }
                return Err(err(
                    start,
                    ParseErrorKind::UnknownSymbol(src[start..end].into()),
                ));
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(err(start, ParseErrorKind::UnexpectedChar(ch)));
            }
        }
        i += src[i..].chars().next().map_or(1, char::len_utf8);
    }
    Ok(out)
}

/// Parse tree node with the byte offset it starts at.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprAst {
    pub pos: usize,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(Rational),
    Var(Var),
    Deriv(DerivIndex),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [(usize, Tok)], src_len: usize) -> Self {
        Parser {
            toks,
            at: 0,
            end: src_len,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => err(
                self.pos(),
                ParseErrorKind::UnexpectedToken {
                    found: t.describe(),
                    expected,
                },
            ),
            None => err(self.end, ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.pos();
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let t = self.term()?;
                ExprAst {
                    pos,
                    kind: ExprKind::Neg(Box::new(t)),
                }
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = ExprAst {
                        pos,
                        kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                    };
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = ExprAst {
                        pos,
                        kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_factor(t: Option<&Tok>) -> bool {
        matches!(
            t,
            Some(Tok::Num(_) | Tok::Var(_) | Tok::Deriv(_) | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let pos = self.pos();
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else if !Self::starts_factor(self.peek()) {
                return Ok(lhs);
            }
            let rhs = self.factor()?;
            lhs = ExprAst {
                pos,
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some((_, Tok::Num(r))) if r.is_integer() => {
                let k: u32 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| err(pos, ParseErrorKind::BadExponent(r.to_string())))?;
                Ok(ExprAst {
                    pos: base.pos,
                    kind: ExprKind::Pow(Box::new(base), k),
                })
            }
            Some((_, t)) => Err(err(pos, ParseErrorKind::BadExponent(t.describe()))),
            None => Err(err(
                self.end,
                ParseErrorKind::UnexpectedEnd {
                    expected: "exponent",
                },
            )),
        }
    }

    fn primary(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.pos();
        let kind = match self.peek() {
            Some(Tok::Num(r)) => ExprKind::Num(r.clone()),
            Some(Tok::Var(v)) => ExprKind::Var(*v),
            Some(Tok::Deriv(d)) => ExprKind::Deriv(*d),
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                return Ok(inner);
            }
            _ => return Err(self.unexpected("number, variable, U-derivative or '('")),
        };
        self.bump();
        Ok(ExprAst { pos, kind })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    // Word combinations.

    fn word(&mut self) -> Result<OperatorWord, ParseError> {
        if self.peek() == Some(&Tok::Identity) {
            self.bump();
            return Ok(OperatorWord::identity());
        }
        let mut idx = Vec::new();
        while let Some(Tok::Op(k)) = self.peek() {
            idx.push(*k as u8);
            self.bump();
        }
        if idx.is_empty() {
            return Err(self.unexpected("operator word such as R1 R8"));
        }
        Ok(OperatorWord::new(idx))
    }

    fn word_term(&mut self) -> Result<(Rational, OperatorWord), ParseError> {
        let mut coeff = Rational::one();
        if let Some(Tok::Num(r)) = self.peek() {
            coeff = r.clone();
            self.bump();
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            }
        }
        Ok((coeff, self.word()?))
    }

    fn combination(&mut self) -> Result<WordCombination, ParseError> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.bump();
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let (c, w) = self.word_term()?;
            terms.push((sign * c, w));
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                _ => return Ok(WordCombination::new(terms)),
            }
            self.bump();
        }
    }
}

pub fn parse_expr(src: &str) -> Result<ExprAst, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

enum Value {
    Poly(Polynomial),
    Diff(DiffFunction),
}

fn lower(e: &ExprAst) -> Result<Value, ParseError> {
    Ok(match &e.kind {
        ExprKind::Num(r) => Value::Poly(Polynomial::constant(r.clone())),
        ExprKind::Var(v) => Value::Poly(Polynomial::var(*v)),
        ExprKind::Deriv(d) => Value::Diff(DiffFunction::jet(*d)),
        ExprKind::Neg(a) => match lower(a)? {
            Value::Poly(p) => Value::Poly(-p),
            Value::Diff(f) => Value::Diff(-&f),
        },
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let sub = matches!(e.kind, ExprKind::Sub(..));
            let (la, lb) = (lower(a)?, lower(b)?);
            match (la, lb) {
                (Value::Poly(p), Value::Poly(q)) => {
                    Value::Poly(if sub { &p - &q } else { &p + &q })
                }
                (Value::Diff(f), Value::Diff(g)) => {
                    Value::Diff(if sub { &f - &g } else { &f + &g })
                }
                (Value::Diff(f), Value::Poly(p)) if p.is_zero() => Value::Diff(f),
                (Value::Poly(p), Value::Diff(g)) if p.is_zero() => {
                    Value::Diff(if sub { -&g } else { g })
                }
                _ => return Err(err(e.pos, ParseErrorKind::Inhomogeneous)),
            }
        }
        ExprKind::Mul(a, b) => match (lower(a)?, lower(b)?) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(&p * &q),
            (Value::Poly(p), Value::Diff(f)) | (Value::Diff(f), Value::Poly(p)) => {
                Value::Diff(f.mul_poly(&p))
            }
            (Value::Diff(_), Value::Diff(_)) => return Err(err(e.pos, ParseErrorKind::Nonlinear)),
        },
        ExprKind::Pow(a, k) => match (lower(a)?, *k) {
            (Value::Poly(p), k) => Value::Poly(p.pow(k)),
            (Value::Diff(_), 0) => Value::Poly(Polynomial::one()),
            (Value::Diff(f), 1) => Value::Diff(f),
            (Value::Diff(_), _) => return Err(err(e.pos, ParseErrorKind::Nonlinear)),
        },
    })
}

impl ExprAst {
    /// Lowers to a differential function; a U-free result is only accepted
    /// when it is identically zero.
    pub fn to_diff(&self) -> Result<DiffFunction, ParseError> {
        match lower(self)? {
            Value::Diff(f) => Ok(f),
            Value::Poly(p) if p.is_zero() => Ok(DiffFunction::zero()),
            Value::Poly(_) => Err(err(self.pos, ParseErrorKind::Inhomogeneous)),
        }
    }

    /// Lowers to a polynomial; fails if any U-term is present.
    pub fn to_poly(&self) -> Result<Polynomial, ParseError> {
        match lower(self)? {
            Value::Poly(p) => Ok(p),
            Value::Diff(_) => Err(err(self.pos, ParseErrorKind::Inhomogeneous)),
        }
    }
}

/// Parses and lowers a characteristic such as `2t*Ux + x*U`.
pub fn parse_diff(src: &str) -> Result<DiffFunction, ParseError> {
    parse_expr(src)?.to_diff()
}

pub fn parse_poly(src: &str) -> Result<Polynomial, ParseError> {
    parse_expr(src)?.to_poly()
}

/// Parses a single word such as `R1 R8` (or `I` for the empty word).
pub fn parse_word(src: &str) -> Result<OperatorWord, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    if toks.is_empty() {
        return Ok(OperatorWord::identity());
    }
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parses `-R1 R8 + R2 R6`.
pub fn parse_combination(src: &str) -> Result<WordCombination, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    let c = p.combination()?;
    p.finish()?;
    Ok(c)
}

/// Parses `R4 == -R1 R8 + R2 R6`.
pub fn parse_relation(src: &str) -> Result<WordRelation, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    let lhs = p.combination()?;
    if p.peek() != Some(&Tok::Eq) {
        return Err(p.unexpected("'=='"));
    }
    p.bump();
    let rhs = p.combination()?;
    p.finish()?;
    Ok(WordRelation::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::MonomialExp;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn jet(s: &str) -> DiffFunction {
        DiffFunction::jet(DerivIndex::from_letters(s).unwrap())
    }

    #[test]
    fn first_order_characteristic() {
        let f = parse_diff("2t*Ux + x*U").unwrap();
        let expect = &jet("x").mul_poly(&Polynomial::var(Var::T).scale(&q(2)))
            + &DiffFunction::u().mul_poly(&Polynomial::var(Var::X));
        assert_eq!(f, expect);
    }

    #[test]
    fn seed_and_juxtaposition() {
        assert_eq!(parse_diff("U").unwrap(), DiffFunction::u());
        let f = parse_diff("2t Uxz + z Ux").unwrap();
        let expect = &jet("xz").mul_poly(&Polynomial::var(Var::T).scale(&q(2)))
            + &jet("x").mul_poly(&Polynomial::var(Var::Z));
        assert_eq!(f, expect);
    }

    #[test]
    fn powers_and_parens() {
        let f = parse_diff("4t^2*Uxx + (x^2 + 2t) U").unwrap();
        assert_eq!(
            f.coeff(&DerivIndex::new(2, 0, 0, 0)),
            Polynomial::monomial(q(4), MonomialExp::new(0, 0, 0, 2))
        );
        assert_eq!(parse_poly("1/2 x^2 - x*x").unwrap().to_string(), "-1/2x^2");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_diff("2t*Ux + w").unwrap_err();
        assert_eq!(e.pos, 8);
        assert!(matches!(e.kind, ParseErrorKind::UnknownSymbol(_)));
        let e = parse_diff("Ux*Uy").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Nonlinear);
        let e = parse_diff("Ux + 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Inhomogeneous);
        let e = parse_diff("(Ux").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnexpectedEnd { .. }));
        assert!(parse_diff("").is_err());
    }

    #[test]
    fn ut_is_accepted_on_input() {
        assert_eq!(parse_diff("Ut").unwrap(), jet("t"));
    }

    #[test]
    fn words_and_relations() {
        assert_eq!(parse_word("R1 R8").unwrap().indices(), &[1, 8]);
        assert_eq!(parse_word("I").unwrap().len(), 0);
        assert!(parse_word("R10").is_err());
        let c = parse_combination("-R1 R8 + R2 R6").unwrap();
        assert_eq!(c.terms().len(), 2);
        assert_eq!(c.terms()[0].0, q(-1));
        let r = parse_relation("R4 == -R1 R8 + R2 R6").unwrap();
        assert_eq!(r.lhs.terms()[0].1.indices(), &[4]);
        let c = parse_combination("1/2 R3 - 2*R1 R1").unwrap();
        assert_eq!(c.terms()[0].0, Rational::new(1.into(), 2.into()));
        assert_eq!(c.terms()[1].0, q(-2));
    }
}
