//! Text format: terms `c * v1^e1 v2^e2` joined by ` + ` and ` - `.
//! A unit coefficient is left out, so `x y^2 - 3/2 * z` is canonical.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Polynomial};
use crate::Q;

/// Ordered, named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unexpected `{found}` at offset {offset}")]
    Unexpected { found: String, offset: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("bad number `{0}`")]
    BadNumber(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Star,
    Caret,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '*' => {
                i += 1;
                Tok::Star
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                    i += 1;
                }
                Tok::Num(s[start..i].to_string())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(s[start..i].to_string())
            }
            _ => {
                return Err(ParseError::Unexpected {
                    found: s[start..]
                        .chars()
                        .next()
                        .map(String::from)
                        .unwrap_or_default(),
                    offset: start,
                })
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Num(s) => s.clone(),
        Tok::Star => "*".into(),
        Tok::Caret => "^".into(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
    }
}

impl VariableSet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        VariableSet {
            names: names.into_iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        self.index_of(name).map(|i| Polynomial::var(self.len(), i))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Canonical text, terms from largest to smallest under `ord`.
    pub fn format(&self, p: &Polynomial, ord: &MonomialOrder) -> String {
        let mut out = String::new();
        for (k, (m, c)) in p.sorted_terms(ord).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                out.push_str(&format!("{} * {}", a, self.format_monomial(m)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, ParseError> {
        let toks = tokenize(s)?;
        let mut pos = 0;
        let mut out = Polynomial::zero(self.len());
        let mut first = true;
        loop {
            let mut sign = Q::one();
            match toks.get(pos) {
                None if first => return Err(ParseError::UnexpectedEnd),
                None => break,
                Some((Tok::Plus, _)) => pos += 1,
                Some((Tok::Minus, _)) => {
                    sign = -sign;
                    pos += 1;
                }
                Some((t, off)) if !first => {
                    return Err(ParseError::Unexpected {
                        found: describe(t),
                        offset: *off,
                    })
                }
                Some(_) => {}
            }
            first = false;
            let (c, m) = self.parse_term(&toks, &mut pos)?;
            out.add_term(sign * c, m);
        }
        Ok(out)
    }

    fn parse_term(
        &self,
        toks: &[(Tok, usize)],
        pos: &mut usize,
    ) -> Result<(Q, Monomial), ParseError> {
        let mut coef = Q::one();
        let mut exps = vec![0u32; self.len()];
        let mut seen_factor = false;
        if let Some((Tok::Num(n), _)) = toks.get(*pos) {
            coef = parse_rational(n)?;
            *pos += 1;
            match toks.get(*pos) {
                Some((Tok::Star, _)) => *pos += 1,
                Some((Tok::Ident(_), _)) => {}
                _ => return Ok((coef, Monomial::from_exponents(exps))),
            }
        }
        loop {
            match toks.get(*pos) {
                Some((Tok::Ident(name), _)) => {
                    let i = self
                        .index_of(name)
                        .ok_or_else(|| ParseError::UnknownVariable(name.clone()))?;
                    *pos += 1;
                    let mut e = 1u32;
                    if let Some((Tok::Caret, _)) = toks.get(*pos) {
                        *pos += 1;
                        match toks.get(*pos) {
                            Some((Tok::Num(n), _)) => {
                                e = n.parse().map_err(|_| ParseError::BadNumber(n.clone()))?;
                                *pos += 1;
                            }
                            Some((t, off)) => {
                                return Err(ParseError::Unexpected {
                                    found: describe(t),
                                    offset: *off,
                                })
                            }
                            None => return Err(ParseError::UnexpectedEnd),
                        }
                    }
                    exps[i] += e;
                    seen_factor = true;
                    if let Some((Tok::Star, _)) = toks.get(*pos) {
                        *pos += 1;
                        seen_factor = false;
                    }
                }
                Some((Tok::Plus | Tok::Minus, _)) | None if seen_factor => break,
                Some((t, off)) => {
                    return Err(ParseError::Unexpected {
                        found: describe(t),
                        offset: *off,
                    })
                }
                None => return Err(ParseError::UnexpectedEnd),
            }
        }
        Ok((coef, Monomial::from_exponents(exps)))
    }
}

/// Parses `n` or `n/d`.
pub(crate) fn parse_rational(s: &str) -> Result<Q, ParseError> {
    let bad = || ParseError::BadNumber(s.to_string());
    let q: Q = s.parse().map_err(|_| bad())?;
    if s.ends_with('/') || (s.contains('/') && q.denom().is_zero()) {
        return Err(bad());
    }
    Ok(q)
}
