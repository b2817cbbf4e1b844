//! Expressions over the generators of a graded space.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ([op] factor)*          op: '*' '⊗' 'ox' '·'
//! factor := number ['/' number] | name | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so printed elements such as `1/2 x⊗y - z`
//! parse back unchanged. `−` is accepted for `-`.

use std::fmt;
use std::sync::Arc;

use formal_pbw::lie::LiePresentation;
use formal_pbw::{GradedSpace, LinComb, Scalar, TensorElement, Vector, Word};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Scalar),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// An upper bound on the tensor order of the value, so that reading an
    /// expression at this truncation loses nothing.
    pub fn order_bound(&self) -> usize {
        match self {
            Expr::Number(_) => 0,
            Expr::Name(_) => 1,
            Expr::Neg(a) => a.order_bound(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.order_bound().max(b.order_bound()),
            Expr::Mul(a, b) | Expr::Bracket(a, b) => a.order_bound() + b.order_bound(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at character {}", self.message, self.position + 1)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(num_bigint::BigInt),
    Ident(String),
    Plus,
    Minus,
    Times,
    Slash,
    Comma,
    Equals,
    LBracket,
    RBracket,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Token::Number(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.push((
                    start,
                    if name == "ox" {
                        Token::Times
                    } else {
                        Token::Ident(name)
                    },
                ));
                continue;
            }
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '⊗' | '·' => Token::Times,
            '/' => Token::Slash,
            ',' => Token::Comma,
            '=' => Token::Equals,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(ParseError {
                    message: format!("unexpected character '{other}'"),
                    position: start,
                })
            }
        };
        out.push((start, token));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(src)?,
            pos: 0,
            end: src.chars().count(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            message: message.into(),
            position: self.here(),
        })
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Token, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat(&Token::Minus) {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat(&Token::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Token::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let explicit = self.eat(&Token::Times);
            let starts_factor = matches!(
                self.peek(),
                Some(Token::Number(_) | Token::Ident(_) | Token::LBracket | Token::LParen)
            );
            if !starts_factor {
                return if explicit {
                    self.error("expected a factor")
                } else {
                    Ok(acc)
                };
            }
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                let mut value = Scalar::from_integer(n);
                if self.eat(&Token::Slash) {
                    match self.peek().cloned() {
                        Some(Token::Number(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Scalar::from_integer(d);
                        }
                        Some(Token::Number(_)) => return self.error("zero denominator"),
                        _ => return self.error("expected a denominator"),
                    }
                }
                Ok(Expr::Number(value))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Name(name))
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(&Token::Comma, "','")?;
                let b = self.expr()?;
                self.expect(&Token::RBracket, "']'")?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Token::RParen, "')'")?;
                Ok(e)
            }
            _ => self.error("expected a number, a name, '[' or '('"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `[a, b] = expr`, the form of a bracket table entry.
pub fn parse_relation(src: &str) -> Result<(String, String, Expr), ParseError> {
    let mut p = Parser::new(src)?;
    p.expect(&Token::LBracket, "'['")?;
    let name = |p: &mut Parser| match p.peek().cloned() {
        Some(Token::Ident(n)) => {
            p.pos += 1;
            Ok(n)
        }
        _ => p.error("expected a generator name"),
    };
    let a = name(&mut p)?;
    p.expect(&Token::Comma, "','")?;
    let b = name(&mut p)?;
    p.expect(&Token::RBracket, "']'")?;
    p.expect(&Token::Equals, "'='")?;
    let rhs = p.expr()?;
    p.finish()?;
    Ok((a, b, rhs))
}

/// How `[a, b]` is interpreted during evaluation.
#[derive(Clone, Copy)]
pub enum BracketMode<'a> {
    /// The bracket of a Lie algebra on order-one arguments.
    Algebra(&'a LiePresentation),
    /// The graded commutator in the tensor algebra.
    Commutator,
    Forbidden,
}

pub fn evaluate(
    e: &Expr,
    space: &Arc<GradedSpace>,
    truncation: usize,
    mode: BracketMode<'_>,
) -> Result<TensorElement, String> {
    let rec = |x: &Expr| evaluate(x, space, truncation, mode);
    let lib = |r: formal_pbw::Result<TensorElement>| r.map_err(|e| e.to_string());
    match e {
        Expr::Number(c) => Ok(TensorElement::one(space.clone(), truncation).scale(c)),
        Expr::Name(n) => {
            let i = space
                .index_of(n)
                .ok_or_else(|| format!("unknown generator '{n}'"))?;
            lib(TensorElement::truncating(
                space.clone(),
                truncation,
                LinComb::from_term(Word::letter(i), Scalar::one()),
            ))
        }
        Expr::Neg(a) => Ok(rec(a)?.neg()),
        Expr::Add(a, b) => lib(rec(a)?.checked_add(&rec(b)?)),
        Expr::Sub(a, b) => lib(rec(a)?.checked_sub(&rec(b)?)),
        Expr::Mul(a, b) => lib(rec(a)?.multiply(&rec(b)?)),
        Expr::Bracket(a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            match mode {
                BracketMode::Commutator => lib(x.commutator(&y)),
                BracketMode::Forbidden => Err("brackets are not allowed here".into()),
                BracketMode::Algebra(p) => {
                    let v = p
                        .bracket(&as_vector(&x)?, &as_vector(&y)?)
                        .map_err(|e| e.to_string())?;
                    lib(TensorElement::truncating(
                        space.clone(),
                        truncation,
                        from_vector(&v),
                    ))
                }
            }
        }
    }
}

/// Reads an order-one tensor as a vector of the underlying space.
pub fn as_vector(t: &TensorElement) -> Result<Vector, String> {
    let mut v = Vector::new();
    for (w, c) in t.terms() {
        if w.order() != 1 {
            return Err(format!(
                "expected an algebra element of tensor order 1, found a term of order {}",
                w.order()
            ));
        }
        v.add_term(w[0], c.clone());
    }
    Ok(v)
}

pub fn from_vector(v: &Vector) -> LinComb<Word> {
    v.map_keys(|&i| Word::letter(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use formal_pbw::envelope::{normal_form, PbwMonomial, UElement};
    use formal_pbw::lie::{make_example, ExampleKind};
    use proptest::prelude::*;

    fn h3() -> Arc<LiePresentation> {
        Arc::new(make_example(ExampleKind::Heisenberg).unwrap())
    }

    fn eval(src: &str, p: &LiePresentation, n: usize) -> TensorElement {
        evaluate(&parse(src).unwrap(), p.space(), n, BracketMode::Algebra(p)).unwrap()
    }

    fn coeff() -> impl Strategy<Value = Scalar> {
        (-9i64..=9, 1i64..=6).prop_map(|(a, b)| Scalar::new(a.into(), b.into()))
    }

    #[test]
    fn operators_and_precedence() {
        let p = h3();
        let a = eval("x ox y - y ox x - [x,y]", &p, 3);
        assert!(normal_form(&a, &p).unwrap().is_zero());
        let b = eval("(x)*(y) − 1/2 x⊗y", &p, 3);
        assert_eq!(b, eval("1/2 x·y", &p, 3));
        assert_eq!(eval("2 (x + y) z", &p, 3), eval("2 x z + 2 y z", &p, 3));
        assert_eq!(eval("-x + y", &p, 3), eval("y - x", &p, 3));
        assert_eq!(eval("x x x x", &p, 3), eval("0", &p, 3));
        assert_eq!(eval("[x, y + z]", &p, 3), eval("z", &p, 3));
        assert_eq!(parse("2 x + [x, y z] - (1)").unwrap().order_bound(), 3);
    }

    #[test]
    fn parse_errors_point_at_the_problem() {
        assert_eq!(parse("x + ").unwrap_err().position, 4);
        assert_eq!(parse("x $ y").unwrap_err().position, 2);
        assert!(parse("1/0").is_err());
        assert!(parse("[x y]").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("x ox").is_err());
        let p = h3();
        assert!(evaluate(&parse("w").unwrap(), p.space(), 2, BracketMode::Algebra(&p)).is_err());
        assert!(evaluate(
            &parse("[x ox y, z]").unwrap(),
            p.space(),
            3,
            BracketMode::Algebra(&p)
        )
        .is_err());
        assert!(evaluate(
            &parse("[x, y]").unwrap(),
            p.space(),
            3,
            BracketMode::Forbidden
        )
        .is_err());
    }

    #[test]
    fn relations_parse() {
        let (a, b, rhs) = parse_relation("[x, y] = 1/2 z - x").unwrap();
        assert_eq!((a.as_str(), b.as_str()), ("x", "y"));
        assert_eq!(rhs, parse("1/2 z - x").unwrap());
        assert!(parse_relation("[x, y] z").is_err());
        assert!(parse_relation("[x ox y, y] = z").is_err());
    }

    #[test]
    fn commutator_mode_matches_graded_commutator() {
        let space = Arc::new(GradedSpace::even(&["a", "b"]).unwrap());
        let t = evaluate(
            &parse("[a, [a, b]]").unwrap(),
            &space,
            3,
            BracketMode::Commutator,
        )
        .unwrap();
        let u = evaluate(
            &parse("a a b - 2 a b a + b a a").unwrap(),
            &space,
            3,
            BracketMode::Commutator,
        )
        .unwrap();
        assert_eq!(t, u);
    }

    proptest! {
        #[test]
        fn printed_tensors_parse_back(terms in prop::collection::vec((prop::collection::vec(0usize..3, 0..=3), coeff()), 0..6)) {
            let p = h3();
            let mut lc = LinComb::new();
            for (w, c) in terms {
                lc.add_term(Word::new(w), c);
            }
            let t = TensorElement::from_terms(p.space().clone(), 3, lc).unwrap();
            prop_assert_eq!(eval(&t.render(), &p, 3), t);
        }

        #[test]
        fn printed_normal_forms_parse_back(terms in prop::collection::vec((prop::collection::vec(0usize..3, 0..=3), coeff()), 0..6)) {
            let p = h3();
            let mut lc = LinComb::new();
            for (mut w, c) in terms {
                w.sort_unstable();
                lc.add_term(PbwMonomial::new(Word::new(w), &p).unwrap(), c);
            }
            let u = UElement::from_terms(p.clone(), 3, lc).unwrap();
            prop_assert_eq!(normal_form(&eval(&u.render(), &p, 3), &p).unwrap(), u);
        }
    }
}
