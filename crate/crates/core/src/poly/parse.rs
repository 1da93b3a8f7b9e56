//! Text grammar for polynomials and polynomial documents.
//!
//! A document is a sequence of `key: value` header lines followed by body
//! lines, one polynomial per line. `#` starts a comment. Recognized headers:
//!
//! ```text
//! vars: x,y,z,w
//! field: a; minpoly: a^4+a^3+a^2+a+1
//! ```
//!
//! Any other header is kept verbatim for the caller (`ambient:`, `order:`,
//! `weights:` ...). A polynomial may continue on the next line when the line
//! ends in an operator or leaves a parenthesis open.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::{FieldElement, NumberField};
use super::monomial::MonomialOrder;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(s.parse().expect("digits")));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::parse(line, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a Arc<Ring>,
    line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, msg)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division only by nonzero constants"));
                    }
                    let inv = self.ring.field().inv(&d.constant_term())?;
                    acc = acc.scale(&inv);
                }
                // juxtaposition is multiplication
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Num(n)) => {
                let q = BigRational::from_integer(n);
                Ok(Polynomial::constant(self.ring, self.ring.field().from_rational(q)))
            }
            Some(Token::Ident(name)) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if !self.ring.field().is_rational() && name == self.ring.field().name() {
                    Ok(Polynomial::constant(self.ring, self.ring.field().generator()))
                } else {
                    Err(self.err(format!("unknown symbol {name:?}")))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses one polynomial expression in `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    parse_polynomial_at(text, ring, 1)
}

pub(crate) fn parse_polynomial_at(text: &str, ring: &Arc<Ring>, line: usize) -> Result<Polynomial> {
    let tokens = tokenize(text, line)?;
    if tokens.is_empty() {
        return Err(Error::parse(line, "empty polynomial"));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        ring,
        line,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::parse(line, format!("trailing input after position {}", p.pos)));
    }
    Ok(out)
}

/// Parses a univariate rational polynomial in `name`, returning coefficients low to high.
pub fn parse_univariate_rational(text: &str, name: &str, line: usize) -> Result<Vec<BigRational>> {
    let ring = Ring::rational(&[name]);
    let p = parse_polynomial_at(text, &ring, line)?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponent(0) as usize] = c.as_rational().expect("rational ring").clone();
    }
    Ok(coeffs)
}

/// A parsed polynomial document.
#[derive(Clone, Debug)]
pub struct PolyDocument {
    pub ring: Arc<Ring>,
    /// Headers other than `vars`, `field` and `minpoly`, in file order.
    pub headers: Vec<(String, String)>,
    pub polynomials: Vec<Polynomial>,
}

impl PolyDocument {
    pub fn header(&self, key: &str) -> Option<&str> {
        self.headers.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn single(&self) -> Result<&Polynomial> {
        match self.polynomials.as_slice() {
            [p] => Ok(p),
            ps => Err(Error::parse(
                0,
                format!("expected exactly one polynomial, found {}", ps.len()),
            )),
        }
    }
}

/// Splits a header line `key: value`. Keys are lowercase identifiers.
pub(crate) fn split_header(line: &str) -> Option<(String, String)> {
    let (key, value) = line.split_once(':')?;
    let key = key.trim();
    if key.is_empty()
        || !key
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
    {
        return None;
    }
    Some((key.to_string(), value.trim().to_string()))
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn continues(buf: &str) -> bool {
    let t = buf.trim_end();
    let open = t.chars().filter(|&c| c == '(').count();
    let close = t.chars().filter(|&c| c == ')').count();
    open > close || t.ends_with(['+', '-', '*', '/', '^', '('])
}

/// Builds the ring described by `vars:` and optional `field:`/`minpoly:` headers.
pub fn ring_from_headers(vars: &str, field: Option<&str>, line: usize) -> Result<Arc<Ring>> {
    let names: Vec<String> = vars
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Error::parse(line, "vars: header lists no variables"));
    }
    for (i, n) in names.iter().enumerate() {
        if !n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Error::parse(line, format!("invalid variable name {n:?}")));
        }
        if names[..i].contains(n) {
            return Err(Error::parse(line, format!("duplicate variable {n:?}")));
        }
    }
    let field = match field {
        None => NumberField::rationals(),
        Some(spec) => {
            // `a; minpoly: a^4+...`
            let (name, rest) = spec
                .split_once(';')
                .ok_or_else(|| Error::parse(line, "field header must read `field: NAME; minpoly: POLY`"))?;
            let name = name.trim();
            let (key, poly) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(line, "missing minpoly"))?;
            if key.trim() != "minpoly" {
                return Err(Error::parse(line, "expected `minpoly:` after the field name"));
            }
            if names.iter().any(|v| v == name) {
                return Err(Error::parse(line, "field generator clashes with a variable"));
            }
            let coeffs = parse_univariate_rational(poly, name, line)?;
            NumberField::new(name, coeffs)?
        }
    };
    Ok(Ring::new(names, field))
}

/// Parses a full document.
pub fn parse_document(text: &str) -> Result<PolyDocument> {
    let mut vars: Option<(String, usize)> = None;
    let mut field: Option<String> = None;
    let mut headers = Vec::new();
    let mut body: Vec<(usize, String)> = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some((start, mut buf)) = pending.take() {
            buf.push(' ');
            buf.push_str(line);
            if continues(&buf) {
                pending = Some((start, buf));
            } else {
                body.push((start, buf));
            }
            continue;
        }
        if let Some((key, value)) = split_header(line) {
            if !body.is_empty() {
                return Err(Error::parse(line_no, "header after polynomial body"));
            }
            match key.as_str() {
                "vars" => vars = Some((value, line_no)),
                "field" => field = Some(value),
                _ => headers.push((key, value)),
            }
            continue;
        }
        if continues(line) {
            pending = Some((line_no, line.to_string()));
        } else {
            body.push((line_no, line.to_string()));
        }
    }
    if let Some((start, _)) = pending {
        return Err(Error::parse(start, "unterminated polynomial"));
    }
    let (vars, vars_line) = vars.ok_or_else(|| Error::parse(1, "missing vars: header"))?;
    let ring = ring_from_headers(&vars, field.as_deref(), vars_line)?;
    let polynomials = body
        .iter()
        .map(|(line, text)| parse_polynomial_at(text, &ring, *line))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyDocument {
        ring,
        headers,
        polynomials,
    })
}

/// `vars:` and, for proper extensions, `field:` header lines.
pub fn ring_headers(ring: &Ring) -> String {
    let mut s = format!("vars: {}\n", ring.vars().join(","));
    let field = ring.field();
    if !field.is_rational() {
        let gen = field.name();
        let minpoly = FieldElementText(field.minimal_polynomial(), gen);
        s.push_str(&format!("field: {gen}; minpoly: {minpoly}\n"));
    }
    s
}

struct FieldElementText<'a>(&'a [BigRational], &'a str);

impl std::fmt::Display for FieldElementText<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // print as a rational univariate polynomial, highest degree first
        let ring = Ring::rational(&[self.1]);
        let field = ring.field().clone();
        let p = Polynomial::from_terms(
            &ring,
            self.0.iter().enumerate().map(|(i, c)| {
                (
                    super::Monomial::var_power(1, 0, i as u32),
                    field.from_rational(c.clone()),
                )
            }),
        );
        write!(f, "{p}")
    }
}

/// Canonical serialization: ring headers, extra headers, then one polynomial per line.
pub fn write_document(
    ring: &Ring,
    headers: &[(String, String)],
    polys: &[Polynomial],
    order: &MonomialOrder,
) -> String {
    let mut s = ring_headers(ring);
    for (k, v) in headers {
        s.push_str(&format!("{k}: {v}\n"));
    }
    for p in polys {
        s.push_str(&p.to_text(order));
        s.push('\n');
    }
    s
}

/// Convenience for tests and fixtures: `x^2 - y` in a rational ring.
pub fn poly(ring: &Arc<Ring>, text: &str) -> Polynomial {
    parse_polynomial(text, ring).unwrap_or_else(|e| panic!("bad polynomial {text:?}: {e}"))
}

/// Field element parsed from an expression in the generator symbol.
pub fn parse_field_element(text: &str, field: &Arc<NumberField>) -> Result<FieldElement> {
    let ring = Ring::new(Vec::new(), field.clone());
    let p = parse_polynomial(text, &ring)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_features() {
        let r = Ring::rational(&["x", "y"]);
        let a = poly(&r, "3/2*x^2y - (x+y)^2 + 2 x");
        let b = poly(&r, "1/2*x^2 - 2*x*y - y^2 + 2*x");
        assert_eq!(a.sub(&b), poly(&r, "3/2x^2y - 3/2x^2"));
        assert!(parse_polynomial("x + q", &r).is_err());
        assert!(parse_polynomial("x / y", &r).is_err());
        assert!(parse_polynomial("x / 0", &r).is_err());
        assert!(parse_polynomial("(x + y", &r).is_err());
    }

    #[test]
    fn field_generator_in_coefficients() {
        let doc = parse_document("vars: z,w\nfield: e; minpoly: e^4+e^3+e^2+e+1\n(z - w)*(z - e*w)\n").unwrap();
        let p = doc.single().unwrap();
        assert_eq!(p.num_terms(), 3);
        let text = write_document(&doc.ring, &[], &doc.polynomials, &MonomialOrder::degrevlex(2));
        assert_eq!(
            text,
            "vars: z,w\nfield: e; minpoly: e^4 + e^3 + e^2 + e + 1\nz^2 + (-e - 1)*z*w + (e)*w^2\n"
        );
    }

    #[test]
    fn continuation_lines_and_headers() {
        let doc = parse_document("# comment\nvars: x,y\nambient: affine 2\nx^2 +\n  y^2\nx*y\n").unwrap();
        assert_eq!(doc.header("ambient"), Some("affine 2"));
        assert_eq!(doc.polynomials.len(), 2);
        assert!(parse_document("x^2\n").is_err());
        assert!(parse_document("vars: x,x\nx\n").is_err());
    }
}
