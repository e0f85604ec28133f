//! Text formats: ring specs ("x:4,y:2,z:4"), polynomials, and derivation
//! coefficient lists ("-2*y; 2*x; 0" or "dx: -2*y, dy: 2*x").

use num_bigint::BigInt;
use num_traits::Zero;

use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::poly::{Poly, Q};
use crate::ring::{GradedRing, RingRef};

pub fn parse_ring(spec: &str) -> Result<RingRef> {
    let mut vars = Vec::new();
    let mut weights = Vec::new();
    for (k, part) in spec.split(',').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Parse {
                col: k + 1,
                msg: "empty ring entry".into(),
            });
        }
        let (name, w) = match part.split_once(':') {
            None => (part, 1i64),
            Some((name, wtext)) => {
                let w = wtext.trim().parse::<i64>().map_err(|_| Error::Parse {
                    col: k + 1,
                    msg: format!("bad weight {wtext:?}"),
                })?;
                (name.trim(), w)
            }
        };
        if !is_valid_var(name) {
            return Err(Error::Parse {
                col: k + 1,
                msg: format!("bad variable name {name:?}"),
            });
        }
        vars.push(name.to_string());
        weights.push(w);
    }
    GradedRing::new(vars, weights)
}

fn is_valid_var(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

/// Token stream with 1-based source columns for error reporting.
struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                toks.push((col, Tok::Int(digits.parse().unwrap())));
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    col,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        toks.push((col, tok));
        i += 1;
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end_col: chars.len() + 1,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Poly> {
    let mut lx = lex(text)?;
    let p = parse_sum(&mut lx, ring)?;
    if lx.peek().is_some() {
        return Err(Error::Parse {
            col: lx.col(),
            msg: "trailing input".into(),
        });
    }
    Ok(p)
}

fn parse_sum(lx: &mut Lexer, ring: &RingRef) -> Result<Poly> {
    let mut neg = false;
    if lx.eat(&Tok::Minus) {
        neg = true;
    } else {
        lx.eat(&Tok::Plus);
    }
    let first = parse_term(lx, ring)?;
    let mut acc = if neg { first.neg() } else { first };
    loop {
        if lx.eat(&Tok::Plus) {
            let t = parse_term(lx, ring)?;
            acc = acc.add(&t)?;
        } else if lx.eat(&Tok::Minus) {
            let t = parse_term(lx, ring)?;
            acc = acc.sub(&t)?;
        } else {
            break;
        }
    }
    Ok(acc)
}

fn parse_term(lx: &mut Lexer, ring: &RingRef) -> Result<Poly> {
    let mut acc = parse_factor(lx, ring)?;
    loop {
        // explicit "*" or juxtaposition like "2x" / "2(x+y)"
        if lx.eat(&Tok::Star) {
            acc = acc.mul(&parse_factor(lx, ring)?)?;
        } else if matches!(lx.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen)) {
            acc = acc.mul(&parse_factor(lx, ring)?)?;
        } else {
            break;
        }
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer, ring: &RingRef) -> Result<Poly> {
    let col = lx.col();
    match lx.next() {
        Some(Tok::Int(n)) => {
            // optional "/ uint" forms a rational coefficient
            if lx.eat(&Tok::Slash) {
                let dcol = lx.col();
                match lx.next() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        Ok(Poly::constant(ring, Q::new(n, d)))
                    }
                    _ => Err(Error::Parse {
                        col: dcol,
                        msg: "expected nonzero denominator".into(),
                    }),
                }
            } else {
                Ok(Poly::constant(ring, Q::from_integer(n)))
            }
        }
        Some(Tok::Ident(name)) => {
            let i = ring
                .var_index(&name)
                .ok_or(Error::UnknownVariable(name))?;
            let e = parse_opt_exponent(lx)?;
            Ok(Poly::var(ring, i).pow(e))
        }
        Some(Tok::LParen) => {
            let inner = parse_sum(lx, ring)?;
            if !lx.eat(&Tok::RParen) {
                return Err(Error::Parse {
                    col: lx.col(),
                    msg: "expected ')'".into(),
                });
            }
            let e = parse_opt_exponent(lx)?;
            Ok(inner.pow(e))
        }
        other => Err(Error::Parse {
            col,
            msg: match other {
                None => "unexpected end of input".into(),
                Some(t) => format!("unexpected token {t:?}"),
            },
        }),
    }
}

fn parse_opt_exponent(lx: &mut Lexer) -> Result<u32> {
    if !lx.eat(&Tok::Caret) {
        return Ok(1);
    }
    let col = lx.col();
    match lx.next() {
        Some(Tok::Int(n)) => n.try_into().map_err(|_| Error::Parse {
            col,
            msg: "exponent too large".into(),
        }),
        _ => Err(Error::Parse {
            col,
            msg: "expected exponent".into(),
        }),
    }
}

/// Dense form: semicolon-separated coefficients aligned with ring variable
/// order. Sparse form: "dx: ..., dy: ..." entries keyed by "d" + variable.
pub fn parse_derivation(text: &str, ring: &RingRef) -> Result<Derivation> {
    if text.contains(':') {
        let mut coeffs = vec![Poly::zero(ring); ring.num_vars()];
        for (k, entry) in text.split(',').enumerate() {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (key, val) = entry.split_once(':').ok_or(Error::Parse {
                col: k + 1,
                msg: format!("expected 'd<var>: poly' in {entry:?}"),
            })?;
            let key = key.trim();
            let name = key.strip_prefix('d').ok_or(Error::Parse {
                col: k + 1,
                msg: format!("derivation key {key:?} must start with 'd'"),
            })?;
            let i = ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            coeffs[i] = parse_poly(val, ring)?;
        }
        Derivation::new(ring, coeffs)
    } else {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != ring.num_vars() {
            return Err(Error::DerivationCount {
                expected: ring.num_vars(),
                got: parts.len(),
            });
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_poly(p, ring))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(ring, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        assert_eq!(r.weights(), &[4, 2, 4]);
        let r2 = parse_ring("x,y").unwrap();
        assert_eq!(r2.weights(), &[1, 1]);
        assert!(parse_ring("x:0,y:1").is_err());
        assert!(parse_ring("x,x").is_err());
    }

    #[test]
    fn whitney_poly() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let f = parse_poly("x^2 - y^2*z", &r).unwrap();
        assert_eq!(f.to_string(), "-y^2*z + x^2");
    }

    #[test]
    fn expansion() {
        let r = parse_ring("x,y,z").unwrap();
        let f = parse_poly("(x+y)*(x+y+z)", &r).unwrap();
        let g = parse_poly("x^2 + 2*x*y + x*z + y^2 + y*z", &r).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn syntax_error_position() {
        let r = parse_ring("x,y").unwrap();
        match parse_poly("x + * y", &r) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rational_coefficients() {
        let r = parse_ring("x").unwrap();
        let f = parse_poly("1/2*x + 3", &r).unwrap();
        assert_eq!(f.to_string(), "1/2*x + 3");
        assert!(parse_poly("1/0*x", &r).is_err());
    }

    #[test]
    fn derivation_forms() {
        let r = parse_ring("x,y,z").unwrap();
        let dense = parse_derivation("-2*y; 2*x; 0", &r).unwrap();
        let sparse = parse_derivation("dx: -2*y, dy: 2*x", &r).unwrap();
        assert_eq!(dense, sparse);
        assert!(parse_derivation("x; y", &r).is_err());
        assert!(parse_derivation("dw: x", &r).is_err());
    }
}
