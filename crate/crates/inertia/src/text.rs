//! Text format for scalars and forms: display and round-trip parsing.
//!
//! Scalars: `3`, `1/2`, `z3` (the primitive root of unity ζ_3), sums,
//! products, powers and parentheses. Forms: `2*x1^1 dx2`,
//! `(1+z3)*z1 dz̄1`; adjacency, `*` and `∧` all mean (wedge) multiplication,
//! and `zb1` is accepted as an ASCII spelling of `z̄1`. When parsing a form
//! on `ComplexPairs(m)`, `zK` with K ≤ m names the coordinate z_K, and with
//! K > m it names ζ_K; on real spaces `zK` is always ζ_K.

use std::fmt::Write as _;

use num::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{CoordinateSpace, PolyForm};
use crate::scalar::{Rat, Scalar};

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a scalar. Cyclotomic values come out as sums like `1+z3` or
/// `-1/2*z4`; callers that embed the result in a product should consult
/// `scalar_needs_parens`.
pub fn scalar_string(s: &Scalar) -> String {
    match s {
        Scalar::Rational(r) => rat_string(r),
        Scalar::Cyclotomic { order, coeffs } => {
            let mut out = String::new();
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let mag = c.abs();
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push(if neg { '-' } else { '+' });
                }
                if i == 0 {
                    let _ = write!(out, "{}", rat_string(&mag));
                } else {
                    if !mag.is_one() {
                        let _ = write!(out, "{}*", rat_string(&mag));
                    }
                    let _ = write!(out, "z{}", order);
                    if i > 1 {
                        let _ = write!(out, "^{}", i);
                    }
                }
            }
            if out.is_empty() {
                out.push('0');
            }
            out
        }
    }
}

fn scalar_needs_parens(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Cyclotomic { coeffs, .. } => {
            let nonzero = coeffs.iter().filter(|c| !c.is_zero()).count();
            nonzero > 1 || coeffs.iter().any(|c| c.is_negative())
        }
    }
}

/// Canonical textual rendering of a form, e.g. `2*x1^1 dx2 + (1+z3)*z1 dz̄1`.
pub fn form_string(f: &PolyForm) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for ((exps, idx), coeff) in &f.terms {
        let mut t = String::new();
        if scalar_needs_parens(coeff) {
            let _ = write!(t, "({})", scalar_string(coeff));
        } else {
            t.push_str(&scalar_string(coeff));
        }
        for (v, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let _ = write!(t, "*{}^{}", f.space.var_name(v), e);
        }
        if !idx.is_empty() {
            t.push(' ');
            let dparts: Vec<String> = idx
                .iter()
                .map(|&v| format!("d{}", f.space.var_name(v)))
                .collect();
            t.push_str(&dparts.join("∧"));
        }
        parts.push(t);
    }
    parts.join(" + ")
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num::BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '∧' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<num::BigInt>()
                    .map_err(|e| Error::Parse(e.to_string()))?;
                toks.push(Tok::Int(n));
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '\u{0304}')
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push(Tok::Ident(s));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{}'", other)));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    space: CoordinateSpace,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<PolyForm> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Product level: explicit `*`/`∧`, `/` by a constant, and adjacency.
    fn term(&mut self) -> Result<PolyForm> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.wedge(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let s = as_constant(&rhs)?;
                    acc = acc.scale(&s.inv()?);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.wedge(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyForm> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyForm> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let Some(Tok::Int(n)) = self.bump() else {
                return Err(Error::Parse("expected integer exponent".into()));
            };
            let exp: u32 = n
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            let mut acc = PolyForm::constant(self.space, Scalar::one());
            for _ in 0..exp {
                acc = acc.wedge(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyForm> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(PolyForm::constant(
                self.space,
                Scalar::from_rat(BigRational::from(n)),
            )),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("expected ')'".into())),
                }
            }
            Some(Tok::Ident(name)) => self.resolve_ident(&name),
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }

    fn resolve_ident(&self, name: &str) -> Result<PolyForm> {
        let (is_d, body) = match name.strip_prefix('d') {
            Some(rest) if !rest.is_empty() && !rest.starts_with(|c: char| c.is_ascii_digit()) => {
                (true, rest)
            }
            _ => (false, name),
        };
        let (kind, digits) = split_var(body)?;
        let k: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in '{}'", name)))?;
        if k == 0 {
            return Err(Error::Parse(format!("variable index 0 in '{}'", name)));
        }
        match (kind, self.space) {
            ("x", CoordinateSpace::Real(d)) => {
                if k > d {
                    return Err(Error::Parse(format!("variable {} out of range", name)));
                }
                Ok(self.var_or_dvar(k - 1, is_d))
            }
            ("x", _) => Err(Error::Parse(format!(
                "real variable '{}' on a complex space",
                name
            ))),
            ("z", CoordinateSpace::ComplexPairs(m)) if k <= m => {
                Ok(self.var_or_dvar(k - 1, is_d))
            }
            ("z", _) => {
                if is_d {
                    return Err(Error::Parse(format!("variable {} out of range", name)));
                }
                let root = Scalar::root_of_unity(k as u64, 1)?;
                Ok(PolyForm::constant(self.space, root))
            }
            ("zb", CoordinateSpace::ComplexPairs(m)) => {
                if k > m {
                    return Err(Error::Parse(format!("variable {} out of range", name)));
                }
                Ok(self.var_or_dvar(m + k - 1, is_d))
            }
            ("zb", _) => Err(Error::Parse(format!(
                "conjugate variable '{}' on a real space",
                name
            ))),
            _ => Err(Error::Parse(format!("unknown identifier '{}'", name))),
        }
    }

    fn var_or_dvar(&self, idx: usize, is_d: bool) -> PolyForm {
        if is_d {
            PolyForm::d_var(self.space, idx)
        } else {
            PolyForm::var(self.space, idx)
        }
    }
}

/// Split a variable body into its letter kind and digit suffix; `z̄` and
/// `zb` both map to the kind "zb".
fn split_var(body: &str) -> Result<(&'static str, &str)> {
    for prefix in ["z\u{0304}", "zb", "x", "z"] {
        if let Some(rest) = body.strip_prefix(prefix) {
            if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
                let kind = if prefix == "z\u{0304}" { "zb" } else { prefix };
                return Ok((kind, rest));
            }
        }
    }
    Err(Error::Parse(format!("unknown identifier '{}'", body)))
}

fn as_constant(f: &PolyForm) -> Result<Scalar> {
    if f.is_zero() {
        return Ok(Scalar::zero());
    }
    if f.terms.len() == 1 {
        let ((e, idx), c) = f.terms.iter().next().unwrap();
        if idx.is_empty() && e.iter().all(|&x| x == 0) {
            return Ok(c.clone());
        }
    }
    Err(Error::Parse("expected a constant scalar".into()))
}

/// Parse a form over the given coordinate space.
pub fn parse_form(input: &str, space: CoordinateSpace) -> Result<PolyForm> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        space,
    };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(f)
}

/// Parse a scalar expression (`1/2`, `z3^2`, sums, parens).
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let f = parse_form(input, CoordinateSpace::Real(0))?;
    as_constant(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::graded_basis;

    #[test]
    fn scalar_round_trips() {
        for s in ["1/2", "3", "-5/7", "z3", "z3^2", "1+z3", "(1+z4)*(1-z4)"] {
            let v = parse_scalar(s).unwrap();
            let again = parse_scalar(&scalar_string(&v)).unwrap();
            assert_eq!(v, again, "round trip failed for {}", s);
        }
        assert_eq!(parse_scalar("1/2+1/3").unwrap(), Scalar::ratio(5, 6));
        assert_eq!(
            parse_scalar("z4^2").unwrap(),
            Scalar::from_int(-1)
        );
    }

    #[test]
    fn form_examples_parse() {
        let r2 = CoordinateSpace::Real(2);
        let f = parse_form("2*x1^1 dx2", r2).unwrap();
        let expect = PolyForm::monomial(r2, vec![1, 0], vec![1], Scalar::from_int(2));
        assert_eq!(f, expect);

        let c1 = CoordinateSpace::ComplexPairs(1);
        let g = parse_form("(1+z3)*z1 dz̄1", c1).unwrap();
        let coeff = Scalar::one().add(&Scalar::root_of_unity(3, 1).unwrap());
        let expect = PolyForm::monomial(c1, vec![1, 0], vec![1], coeff);
        assert_eq!(g, expect);
        // ASCII spelling parses to the same form.
        assert_eq!(parse_form("(1+z3)*z1 dzb1", c1).unwrap(), g);
    }

    #[test]
    fn wedge_notation_and_signs() {
        let r2 = CoordinateSpace::Real(2);
        let a = parse_form("dx1∧dx2", r2).unwrap();
        let b = parse_form("dx2 dx1", r2).unwrap();
        assert_eq!(a, b.neg());
        assert!(parse_form("dx1 dx1", r2).unwrap().is_zero());
        assert_eq!(parse_form("x1 - x1", r2).unwrap(), PolyForm::zero(r2));
    }

    #[test]
    fn display_round_trips_monomial_bases() {
        for space in [
            CoordinateSpace::Real(3),
            CoordinateSpace::ComplexPairs(2),
        ] {
            for k in 0..=2 {
                for n in k..=3 {
                    for f in graded_basis(space, k, n) {
                        let s = form_string(&f);
                        let back = parse_form(&s, space).unwrap();
                        assert_eq!(f, back, "round trip failed for {}", s);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_errors() {
        let r2 = CoordinateSpace::Real(2);
        assert!(parse_form("x3", r2).is_err());
        assert!(parse_form("", r2).is_err());
        assert!(parse_form("2*", r2).is_err());
        assert!(parse_form("(1+2", r2).is_err());
        assert!(parse_scalar("x1").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
