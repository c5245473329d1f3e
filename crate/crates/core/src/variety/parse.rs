//! Text format for varieties:
//!
//! ```text
//! field p=5
//! ambient projective dim=2 vardim=1
//! poly X1^2*X2 - X0^3 + X0*X2^2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Ambient, SparsePoly, VarietySpec};
use crate::error::{Error, Result};

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str, line: usize, offset: usize, nvars: usize) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = offset + i + 1;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("digits");
                out.push((Tok::Int(v), col));
            }
            'X' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(line, col, "variable name needs an index, e.g. X0"));
                }
                let idx: usize = src[start..i]
                    .parse()
                    .map_err(|_| err(line, col, "variable index out of range"))?;
                if idx >= nvars {
                    return Err(err(
                        line,
                        col,
                        format!("variable X{idx} outside X0..X{}", nvars.saturating_sub(1)),
                    ));
                }
                out.push((Tok::Var(idx), col));
            }
            other => {
                return Err(err(line, col, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

type Terms = BTreeMap<Vec<u32>, BigInt>;

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    nvars: usize,
    end_col: usize,
}

fn add_terms(a: &mut Terms, b: Terms, sign: i32) {
    for (k, v) in b {
        let e = a.entry(k).or_insert_with(BigInt::zero);
        if sign >= 0 {
            *e += v;
        } else {
            *e -= v;
        }
    }
    a.retain(|_, v| !v.is_zero());
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *out.entry(k).or_insert_with(BigInt::zero) += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn constant(&self, v: BigInt) -> Terms {
        let mut t = Terms::new();
        if !v.is_zero() {
            t.insert(vec![0; self.nvars], v);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let sign = match t {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            add_terms(&mut acc, rhs, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = mul_terms(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Terms> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            let mut out = Terms::new();
            add_terms(&mut out, inner, -1);
            return Ok(out);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| err(self.line, col, "exponent too large"))?;
                    let mut acc = self.constant(BigInt::one());
                    for _ in 0..e {
                        acc = mul_terms(&acc, &base);
                    }
                    Ok(acc)
                }
                _ => Err(err(self.line, col, "expected an integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Terms> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(self.constant(v))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                let mut e = vec![0u32; self.nvars];
                e[i] = 1;
                let mut t = Terms::new();
                t.insert(e, BigInt::one());
                Ok(t)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(err(self.line, self.col(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(err(self.line, col, format!("unexpected token {t:?}"))),
            None => Err(err(self.line, col, "unexpected end of expression")),
        }
    }
}

/// Parses one polynomial expression in `nvars` variables, reducing mod `p`.
pub fn parse_poly(src: &str, nvars: usize, p: u64) -> Result<SparsePoly> {
    parse_poly_at(src, nvars, p, 1, 0)
}

fn parse_poly_at(src: &str, nvars: usize, p: u64, line: usize, offset: usize) -> Result<SparsePoly> {
    let toks = tokenize(src, line, offset, nvars)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        line,
        nvars,
        end_col: offset + src.len() + 1,
    };
    let terms = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(err(line, parser.col(), "unexpected trailing input"));
    }
    Ok(SparsePoly::from_big_terms(nvars, terms, p))
}

fn key_value<'a>(word: &'a str, key: &str, line: usize, col: usize) -> Result<&'a str> {
    word.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| err(line, col, format!("expected {key}=<value>, found '{word}'")))
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, col: usize) -> Result<T> {
    s.parse()
        .map_err(|_| err(line, col, format!("invalid number '{s}'")))
}

/// Column (1-based) of the `n`-th whitespace-separated word in `line`.
fn word_col(line: &str, n: usize) -> usize {
    let mut count = 0;
    let mut in_word = false;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            in_word = false;
        } else if !in_word {
            if count == n {
                return i + 1;
            }
            count += 1;
            in_word = true;
        }
    }
    line.len() + 1
}

pub fn parse_variety(text: &str) -> Result<VarietySpec> {
    let mut p: Option<u64> = None;
    let mut ambient: Option<(Ambient, usize)> = None;
    let mut polys = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        let indent = line.len() - trimmed.len();
        let col = |n: usize| indent + word_col(trimmed, n);
        match words[0] {
            "field" => {
                if p.is_some() {
                    return Err(err(line_no, col(0), "duplicate field line"));
                }
                if words.len() != 2 {
                    return Err(err(line_no, col(0), "expected `field p=<prime>`"));
                }
                let v = key_value(words[1], "p", line_no, col(1))?;
                let prime: u64 = parse_num(v, line_no, col(1))?;
                if !crate::arith::is_prime(prime) || prime > crate::arith::MAX_PRIME {
                    return Err(err(line_no, col(1), format!("{prime} is not a supported prime")));
                }
                p = Some(prime);
            }
            "ambient" => {
                if p.is_none() {
                    return Err(err(line_no, col(0), "ambient line must follow the field line"));
                }
                if ambient.is_some() {
                    return Err(err(line_no, col(0), "duplicate ambient line"));
                }
                if words.len() != 4 {
                    return Err(err(
                        line_no,
                        col(0),
                        "expected `ambient projective|affine dim=<N> vardim=<n>`",
                    ));
                }
                let dim: usize = parse_num(key_value(words[2], "dim", line_no, col(2))?, line_no, col(2))?;
                let vardim: usize =
                    parse_num(key_value(words[3], "vardim", line_no, col(3))?, line_no, col(3))?;
                let amb = match words[1] {
                    "projective" => Ambient::Projective(dim),
                    "affine" => Ambient::Affine(dim),
                    other => {
                        return Err(err(
                            line_no,
                            col(1),
                            format!("unknown ambient kind '{other}'"),
                        ))
                    }
                };
                ambient = Some((amb, vardim));
            }
            "poly" => {
                let (Some(prime), Some((amb, _))) = (p, ambient) else {
                    return Err(err(line_no, col(0), "poly lines must follow field and ambient"));
                };
                let start = indent + "poly".len();
                let body = &line[start..];
                polys.push(parse_poly_at(body, amb.num_vars(), prime, line_no, start)?);
            }
            other => {
                return Err(err(line_no, col(0), format!("unknown directive '{other}'")));
            }
        }
    }
    let p = p.ok_or_else(|| err(last_line.max(1), 1, "missing field line"))?;
    let (ambient, dim) = ambient.ok_or_else(|| err(last_line.max(1), 1, "missing ambient line"))?;
    VarietySpec::new(p, ambient, polys, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_elliptic_curve_file() {
        let v = parse_variety(
            "field p=5\nambient projective dim=2 vardim=1\npoly X1^2*X2 - X0^3 + X0*X2^2\n",
        )
        .unwrap();
        assert_eq!(v.p(), 5);
        assert_eq!(v.ambient(), Ambient::Projective(2));
        assert_eq!(v.polys().len(), 1);
        // -X0^3 reduces to 4 X0^3
        assert_eq!(v.polys()[0].coeff(&[3, 0, 0]), 4);
    }

    #[test]
    fn order_independent_canonical_form() {
        let a = parse_poly("X0*X1 + 3 - X1^2", 2, 7).unwrap();
        let b = parse_poly("-X1*X1 + X1*X0 + 10", 2, 7).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("(X0 + X1)^2 - X0^2 - X1^2", 2, 2).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_variety("field p=5\nambient affine dim=1 vardim=0\npoly X0 $ 1\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                column: 9,
                message: "unexpected character '$'".into()
            }
        );
        let e = parse_variety("field p=6\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 7, .. }));
        let e = parse_variety("field p=5\nambient affine dim=1 vardim=0\npoly X3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 6, .. }));
        let e = parse_variety("field p=5\nambient sphere dim=1 vardim=0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 9, .. }));
        let e = parse_variety("field p=5\nambient affine dim=1 vardim=0\npoly X0 +\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn projective_input_must_be_homogeneous() {
        let e = parse_variety("field p=5\nambient projective dim=2 vardim=1\npoly X0^2 + X1\n")
            .unwrap_err();
        assert_eq!(e, Error::NotHomogeneous { index: 0 });
    }
}
