//! Parser for third-order linear ODEs with rational coefficients. Grammar in
//! `docs/grammar.ebnf`.

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{Rat, RatFn};
use crate::ode::Ode3;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient is not a rational function of x: `{0}`")]
    NonRationalCoefficient(String),
    #[error("symbolic parameter `{0}`: instantiate it with a rational value")]
    SymbolicParameter(String),
    #[error("exponent must be an integer constant")]
    NonIntegerExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the equation is not linear in y")]
    NotLinear,
    #[error("the equation is not homogeneous")]
    NotHomogeneous,
    #[error("the equation has no y''' term")]
    MissingThirdDerivative,
    #[error("invalid input document: {0}")]
    Document(String),
}

/// Either the three coefficients or a whole equation.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum OdeInputDoc {
    Coefficients { c2: String, c1: String, c0: String },
    Equation { equation: String },
}

/// `Σ coeffs[j] y^(j) + free`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Lin {
    coeffs: [RatFn; 4],
    free: RatFn,
}

impl Lin {
    fn scalar(f: RatFn) -> Lin {
        Lin {
            coeffs: Default::default(),
            free: f,
        }
    }

    fn deriv(j: usize) -> Lin {
        let mut l = Lin::scalar(RatFn::zero());
        l.coeffs[j] = RatFn::one();
        l
    }

    fn as_scalar(&self) -> Option<&RatFn> {
        self.coeffs.iter().all(RatFn::is_zero).then_some(&self.free)
    }

    fn map(&self, f: impl Fn(&RatFn) -> RatFn) -> Lin {
        Lin {
            coeffs: [0, 1, 2, 3].map(|j| f(&self.coeffs[j])),
            free: f(&self.free),
        }
    }

    fn add(&self, o: &Lin) -> Lin {
        Lin {
            coeffs: [0, 1, 2, 3].map(|j| &self.coeffs[j] + &o.coeffs[j]),
            free: &self.free + &o.free,
        }
    }

    fn neg(&self) -> Lin {
        self.map(|f| -f)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const FUNCTIONS: &[&str] = &[
    "sin", "cos", "tan", "exp", "log", "ln", "sqrt", "sinh", "cosh", "tanh", "abs",
];

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.src[start..self.pos].to_string()
    }

    fn expr(&mut self) -> Result<Lin, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Lin, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = mul(&acc, &rhs)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let d = rhs.as_scalar().ok_or(ParseError::NotLinear)?;
                if d.is_zero() {
                    return Err(ParseError::DivisionByZero);
                }
                let inv = d.recip();
                acc = acc.map(|f| f * &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Lin, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Lin, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.unary()?;
        let n = e
            .as_scalar()
            .and_then(RatFn::as_constant)
            .filter(|c| c.is_integer())
            .ok_or(ParseError::NonIntegerExponent)?;
        let n: i32 = n
            .to_integer()
            .try_into()
            .map_err(|_| ParseError::NonIntegerExponent)?;
        let b = base.as_scalar().ok_or(ParseError::NotLinear)?;
        if b.is_zero() && n < 0 {
            return Err(ParseError::DivisionByZero);
        }
        Ok(Lin::scalar(b.pow(n)))
    }

    fn number(&mut self) -> Result<Rat, ParseError> {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int: Rat = self.src[start..self.pos]
            .parse::<num_bigint::BigInt>()
            .map(Rat::from_integer)
            .or_else(|_| self.err("bad number"))?;
        if self.src[self.pos..].starts_with('.') {
            self.pos += 1;
            let fs = self.pos;
            while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits = &self.src[fs..self.pos];
            if digits.is_empty() {
                return Ok(int);
            }
            let frac: num_bigint::BigInt = digits.parse().unwrap();
            let scale = num_bigint::BigInt::from(10u32).pow(digits.len() as u32);
            return Ok(int + Rat::new(frac, scale));
        }
        Ok(int)
    }

    /// `y`, `y(x)`, `y'`..., with the primes already positioned after `y`.
    fn y_primes(&mut self) -> Result<Lin, ParseError> {
        let mut n = 0;
        while self.src[self.pos..].starts_with('\'') {
            self.pos += 1;
            n += 1;
        }
        if n == 0 && self.src[self.pos..].trim_start().starts_with('(') {
            let save = self.pos;
            self.expect('(')?;
            if self.ident() == "x" && self.eat(')') {
                return Ok(Lin::deriv(0));
            }
            self.pos = save;
            return self.err("expected `y(x)`");
        }
        if n > 3 {
            return self.err("derivative order above 3");
        }
        Ok(Lin::deriv(n))
    }

    /// `diff(y(x), x, x)` or `diff(y(x), x$3)`.
    fn diff(&mut self) -> Result<Lin, ParseError> {
        self.expect('(')?;
        if self.ident() != "y" {
            return self.err("diff expects y(x)");
        }
        self.expect('(')?;
        if self.ident() != "x" {
            return self.err("expected `x`");
        }
        self.expect(')')?;
        let mut n = 0;
        while self.eat(',') {
            if self.ident() != "x" {
                return self.err("expected `x`");
            }
            if self.eat('$') {
                self.skip_ws();
                let k = self.number()?;
                if !k.is_integer() {
                    return self.err("bad derivative order");
                }
                n += k.to_integer().try_into().unwrap_or(99usize);
            } else {
                n += 1;
            }
        }
        self.expect(')')?;
        if n > 3 {
            return self.err("derivative order above 3");
        }
        Ok(Lin::deriv(n))
    }

    fn atom(&mut self) -> Result<Lin, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Lin::scalar(RatFn::constant(self.number()?))),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident();
                match name.as_str() {
                    "x" => Ok(Lin::scalar(RatFn::x())),
                    "y" => self.y_primes(),
                    "diff" => self.diff(),
                    _ if FUNCTIONS.contains(&name.as_str()) || self.peek() == Some('(') => {
                        Err(ParseError::NonRationalCoefficient(name))
                    }
                    _ => Err(ParseError::SymbolicParameter(name)),
                }
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn mul(a: &Lin, b: &Lin) -> Result<Lin, ParseError> {
    if let Some(s) = a.as_scalar() {
        Ok(b.map(|f| f * s))
    } else if let Some(s) = b.as_scalar() {
        Ok(a.map(|f| f * s))
    } else {
        Err(ParseError::NotLinear)
    }
}

fn full_expr(src: &str) -> Result<Lin, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A rational function of `x`.
pub fn parse_rational(src: &str) -> Result<RatFn, ParseError> {
    let e = full_expr(src)?;
    e.as_scalar().cloned().ok_or(ParseError::NotLinear)
}

/// An equation `lhs = rhs` linear and homogeneous in `y`, normalized to a
/// unit `y'''` coefficient. A bare expression is read as `expr = 0`.
pub fn parse_equation(src: &str) -> Result<Ode3, ParseError> {
    let (lhs, rhs) = match src.find('=') {
        Some(i) => (&src[..i], &src[i + 1..]),
        None => (src, "0"),
    };
    let l = full_expr(lhs)?;
    let r = full_expr(rhs).map_err(|e| match e {
        ParseError::Syntax { pos, msg } => ParseError::Syntax {
            pos: pos + lhs.len() + 1,
            msg,
        },
        other => other,
    })?;
    let d = l.add(&r.neg());
    if !d.free.is_zero() {
        return Err(ParseError::NotHomogeneous);
    }
    if d.coeffs[3].is_zero() {
        return Err(ParseError::MissingThirdDerivative);
    }
    let lead = d.coeffs[3].recip();
    Ok(Ode3::new(
        &d.coeffs[2] * &lead,
        &d.coeffs[1] * &lead,
        &d.coeffs[0] * &lead,
    ))
}

pub fn parse_ode(doc: &OdeInputDoc) -> Result<Ode3, ParseError> {
    match doc {
        OdeInputDoc::Coefficients { c2, c1, c0 } => Ok(Ode3::new(
            parse_rational(c2)?,
            parse_rational(c1)?,
            parse_rational(c0)?,
        )),
        OdeInputDoc::Equation { equation } => parse_equation(equation),
    }
}

/// JSON document (`{"c2": .., "c1": .., "c0": ..}` or `{"equation": ..}`)
/// or plain equation text.
pub fn parse_input(text: &str) -> Result<Ode3, ParseError> {
    let t = text.trim();
    if t.starts_with('{') {
        let doc: OdeInputDoc =
            serde_json::from_str(t).map_err(|e| ParseError::Document(e.to_string()))?;
        parse_ode(&doc)
    } else {
        parse_equation(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_text() {
        let ode = parse_equation("y''' = -(1/x^2)*y' + ((x+1)/x^3)*y").unwrap();
        assert!(ode.c2.is_zero());
        assert_eq!(ode.c1.to_string(), "1/x^2");
        assert_eq!(ode.c0.to_string(), "(-x - 1)/x^3");
    }

    #[test]
    fn rejects() {
        assert_eq!(
            parse_equation("y''' + sin(x)*y = 0"),
            Err(ParseError::NonRationalCoefficient("sin".into()))
        );
        assert_eq!(
            parse_equation("y''' + mu*y = 0"),
            Err(ParseError::SymbolicParameter("mu".into()))
        );
        assert_eq!(
            parse_equation("y''' + y*y' = 0"),
            Err(ParseError::NotLinear)
        );
        assert_eq!(
            parse_equation("y''' + y = 1"),
            Err(ParseError::NotHomogeneous)
        );
        assert_eq!(
            parse_equation("y'' + y = 0"),
            Err(ParseError::MissingThirdDerivative)
        );
        assert_eq!(
            parse_equation("y''' + x^(1/2)*y = 0"),
            Err(ParseError::NonIntegerExponent)
        );
        assert!(matches!(
            parse_equation("y''' + (x*y = 0"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn diff_synonyms() {
        let a = parse_equation("diff(y(x),x,x,x) + 3/x*diff(y(x),x$2) - y(x)/x^2 = 0").unwrap();
        let b = parse_equation("y''' + (3/x)*y'' + (-1/x^2)*y = 0").unwrap();
        assert_eq!(a, b);
        let c = parse_equation("2*x*y''' = 6*y'' - 2*y").unwrap();
        assert_eq!(c.c2.to_string(), "-3/x");
    }

    #[test]
    fn coefficient_document() {
        let ode = parse_input(r#"{"c2": "3/x", "c1": "1/x^2", "c0": "-1/x^2"}"#).unwrap();
        assert_eq!(ode.c2.to_string(), "3/x");
        let e = parse_input(r#"{"equation": "y''' = y"}"#).unwrap();
        assert_eq!(e.c0, RatFn::from_int(-1));
    }

    #[test]
    fn render_round_trip() {
        let ode = parse_equation("y''' + (x^2+1)/(x-1)^2*y'' - 3/2*y' + 7*x*y = 0").unwrap();
        assert_eq!(parse_equation(&ode.to_string()).unwrap(), ode);
    }
}
