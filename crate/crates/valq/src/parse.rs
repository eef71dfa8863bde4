//! Text grammar for polynomials with exact rational coefficients, optionally
//! mentioning the field generator t: sums of terms like `3`, `-1/2*x^4`,
//! `x`, `t`, `(1/2*t + 3)*x^2`. Whitespace is insignificant; exponents are
//! nonnegative integers. No decimals: rationals are `a` or `a/b` only.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numfield::{NfElement, NumberField};
use crate::poly::Poly;
use crate::rat::{rat, Rat};

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    X,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>, // (token, 1-based column)
    pos: usize,
}

fn lex(s: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            'x' => {
                toks.push((Tok::X, col));
                i += 1;
            }
            't' => {
                toks.push((Tok::T, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &s[start..i];
                let n: i128 = text.parse().map_err(|_| Error::Parse {
                    col,
                    msg: format!("integer out of range: {text}"),
                })?;
                toks.push((Tok::Num(n), col));
            }
            other => {
                return Err(Error::Parse {
                    col,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(_, c)| c + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(Error::Parse {
                col: self.col(),
                msg: "trailing input".into(),
            })
        }
    }
}

/// Polynomial in x and t with rational coefficients: xt[i][j] multiplies
/// x^i t^j. The parse target before a coefficient domain is chosen.
#[derive(Clone, Debug, PartialEq)]
struct BiPoly {
    xt: Vec<Vec<Rat>>,
}

impl BiPoly {
    fn zero() -> Self {
        BiPoly { xt: Vec::new() }
    }

    fn constant(r: Rat) -> Self {
        if r.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { xt: vec![vec![r]] }
    }

    fn var_x() -> Self {
        BiPoly {
            xt: vec![vec![], vec![rat(1, 1)]],
        }
    }

    fn var_t() -> Self {
        BiPoly {
            xt: vec![vec![rat(0, 1), rat(1, 1)]],
        }
    }

    fn get(&self, i: usize, j: usize) -> Rat {
        self.xt
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or_else(Rat::zero)
    }

    fn set(&mut self, i: usize, j: usize, v: Rat) {
        while self.xt.len() <= i {
            self.xt.push(Vec::new());
        }
        while self.xt[i].len() <= j {
            self.xt[i].push(Rat::zero());
        }
        self.xt[i][j] = v;
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (i, row) in rhs.xt.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.set(i, j, out.get(i, j) + v);
                }
            }
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in out.xt.iter_mut() {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (i, row) in self.xt.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rrow) in rhs.xt.iter().enumerate() {
                    for (l, b) in rrow.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i + k, j + l, out.get(i + k, j + l) + a * b);
                    }
                }
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = BiPoly::constant(rat(1, 1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn x_degree(&self) -> usize {
        self.xt
            .iter()
            .rposition(|row| row.iter().any(|v| !v.is_zero()))
            .map_or(0, |i| i)
    }

    fn t_degree(&self) -> usize {
        let mut d = 0;
        for row in &self.xt {
            if let Some(j) = row.iter().rposition(|v| !v.is_zero()) {
                d = d.max(j);
            }
        }
        d
    }
}

// expr := term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := atom ('^' nat)?
// atom := ['-'] (number ['/' number] | 'x' | 't' | '(' expr ')')
fn parse_expr(lx: &mut Lexer) -> Result<BiPoly> {
    let mut acc = parse_term(lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.bump();
                acc = acc.add(&parse_term(lx)?);
            }
            Some(Tok::Minus) => {
                lx.bump();
                acc = acc.add(&parse_term(lx)?.neg());
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<BiPoly> {
    let mut acc = parse_factor(lx)?;
    while matches!(lx.peek(), Some(Tok::Star)) {
        lx.bump();
        acc = acc.mul(&parse_factor(lx)?);
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer) -> Result<BiPoly> {
    let base = parse_atom(lx)?;
    if matches!(lx.peek(), Some(Tok::Caret)) {
        lx.bump();
        let col = lx.col();
        match lx.bump() {
            Some(Tok::Num(n)) if n >= 0 && n <= i128::from(MAX_EXPONENT) => {
                return Ok(base.pow(n as u32));
            }
            Some(Tok::Num(n)) => {
                return Err(Error::Parse {
                    col,
                    msg: format!("exponent {n} outside 0..={MAX_EXPONENT}"),
                });
            }
            _ => {
                return Err(Error::Parse {
                    col,
                    msg: "expected a nonnegative integer exponent".into(),
                })
            }
        }
    }
    Ok(base)
}

fn parse_atom(lx: &mut Lexer) -> Result<BiPoly> {
    let col = lx.col();
    match lx.bump() {
        Some(Tok::Minus) => Ok(parse_factor(lx)?.neg()),
        Some(Tok::Num(n)) => {
            if matches!(lx.peek(), Some(Tok::Slash)) {
                lx.bump();
                let col2 = lx.col();
                match lx.bump() {
                    Some(Tok::Num(d)) if d != 0 => Ok(BiPoly::constant(rat(n, d))),
                    Some(Tok::Num(_)) => Err(Error::Parse {
                        col: col2,
                        msg: "zero denominator".into(),
                    }),
                    _ => Err(Error::Parse {
                        col: col2,
                        msg: "expected a denominator".into(),
                    }),
                }
            } else {
                Ok(BiPoly::constant(rat(n, 1)))
            }
        }
        Some(Tok::X) => Ok(BiPoly::var_x()),
        Some(Tok::T) => Ok(BiPoly::var_t()),
        Some(Tok::LParen) => {
            let inner = parse_expr(lx)?;
            let col2 = lx.col();
            match lx.bump() {
                Some(Tok::RParen) => Ok(inner),
                _ => Err(Error::Parse {
                    col: col2,
                    msg: "expected ')'".into(),
                }),
            }
        }
        Some(other) => Err(Error::Parse {
            col,
            msg: format!("unexpected token {other:?}"),
        }),
        None => Err(Error::Parse {
            col,
            msg: "unexpected end of input".into(),
        }),
    }
}

fn parse_bipoly(text: &str) -> Result<BiPoly> {
    let mut lx = lex(text)?;
    if lx.toks.is_empty() {
        return Err(Error::Parse {
            col: 1,
            msg: "empty input".into(),
        });
    }
    let out = parse_expr(&mut lx)?;
    lx.expect_end()?;
    Ok(out)
}

/// Parses a polynomial over Q; the generator t is rejected.
pub fn parse_qpoly(text: &str) -> Result<Poly<Rat>> {
    let b = parse_bipoly(text)?;
    if b.t_degree() > 0 {
        return Err(Error::Parse {
            col: 1,
            msg: "the generator t needs a number-field context".into(),
        });
    }
    let coeffs: Vec<Rat> = (0..=b.x_degree()).map(|i| b.get(i, 0)).collect();
    Ok(Poly::new(coeffs))
}

/// Parses a polynomial over the given number field.
pub fn parse_nfpoly(text: &str, field: &NumberField) -> Result<Poly<NfElement>> {
    let b = parse_bipoly(text)?;
    let mut coeffs = Vec::new();
    for i in 0..=b.x_degree() {
        let t_coeffs: Vec<Rat> = b.xt.get(i).cloned().unwrap_or_default();
        coeffs.push(field.element(&t_coeffs));
    }
    Ok(Poly::new(coeffs))
}

/// Parses a single field element (no x allowed).
pub fn parse_nfelement(text: &str, field: &NumberField) -> Result<NfElement> {
    let b = parse_bipoly(text)?;
    if b.x_degree() > 0 {
        return Err(Error::Parse {
            col: 1,
            msg: "expected a field element, found the indeterminate x".into(),
        });
    }
    let t_coeffs: Vec<Rat> = b.xt.first().cloned().unwrap_or_default();
    Ok(field.element(&t_coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Coeff;
    use crate::rat::rat_int;

    #[test]
    fn basic_polynomials() {
        assert_eq!(parse_qpoly("x^2 - 2").unwrap(), Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(parse_qpoly("x").unwrap(), Poly::from_ints(&[0, 1]));
        assert_eq!(parse_qpoly("0").unwrap(), Poly::zero());
        assert_eq!(
            parse_qpoly("-1/2*x^3 + x - 7").unwrap(),
            Poly::new(vec![rat(-7, 1), rat(1, 1), rat(0, 1), rat(-1, 2)])
        );
        assert_eq!(parse_qpoly(" x ^ 2 -2 ").unwrap(), Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(parse_qpoly("3 - x").unwrap(), Poly::new(vec![rat(3, 1), rat(-1, 1)]));
    }

    #[test]
    fn error_positions() {
        match parse_qpoly("x^^2") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_qpoly("").is_err());
        assert!(parse_qpoly("x + ").is_err());
        assert!(parse_qpoly("x^2 - 2)").is_err());
        assert!(parse_qpoly("1.5").is_err());
        assert!(parse_qpoly("y").is_err());
        assert!(parse_qpoly("t + 1").is_err());
        assert!(parse_qpoly("1/0").is_err());
    }

    #[test]
    fn field_coefficients() {
        let (field, _) = NumberField::new(&Poly::from_ints(&[-2, 0, 1]), 2).unwrap();
        // (1/2*t + 3)*x^2 - t: coefficients [-t, 0, t/2 + 3]
        let f = parse_nfpoly("(1/2*t + 3)*x^2 - t", &field).unwrap();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.coeff(0).unwrap(), field.element(&[rat(0, 1), rat(-1, 1)]));
        assert!(Coeff::is_zero(&f.coeff(1).unwrap()));
        assert_eq!(
            f.coeff(2).unwrap(),
            field.element(&[rat(3, 1), rat(1, 2)])
        );
        // t^2 reduces to 2
        let g = parse_nfelement("t^2", &field).unwrap();
        assert_eq!(g.to_rat(), Some(rat_int(2)));
        assert!(parse_nfelement("x + t", &field).is_err());
    }

    #[test]
    fn display_round_trip_over_field() {
        let (field, _) = NumberField::new(&Poly::from_ints(&[-2, 0, 1]), 2).unwrap();
        for text in [
            "(1/2*t + 3)*x^2 - t",
            "x^3 + t*x - 2",
            "(t + 1)*x + 1/2",
            "-t*x^2 + x",
        ] {
            let f = parse_nfpoly(text, &field).unwrap();
            let printed = crate::numfield::fmt_nfpoly(&f);
            let reparsed = parse_nfpoly(&printed, &field).unwrap();
            assert_eq!(reparsed, f, "text {text:?} printed {printed:?}");
        }
    }
}
