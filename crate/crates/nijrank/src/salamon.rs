//! Salamon tuple notation for Lie algebras, e.g.
//! `(0, 0, 12, 13, 14 + 23, 34 - 25)`: entry `a` is `de^a`, with `jk`
//! standing for `e^j ^ e^k`. Single-digit indices cap the dimension at 9;
//! larger algebras go through the JSON structure-constant format instead.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{KForm, LieAlgebra};
use crate::scalar::{GaussianRational, Rational};

/// Syntax diagnostic with the byte offset in the original input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor {
            input,
            chars: input.char_indices().collect(),
            at: 0,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.get(self.at) {
            if c.is_whitespace() {
                self.at += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| {
            if c == '\u{2212}' {
                '-'
            } else {
                c
            }
        })
    }

    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.chars
            .get(self.at)
            .map(|&(p, _)| p)
            .unwrap_or(self.input.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        Some(c)
    }

    fn expect(&mut self, want: char) -> std::result::Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            got => Err(ParseError {
                pos,
                msg: match got {
                    Some(c) => format!("expected {want:?}, found {c:?}"),
                    None => format!("expected {want:?}, found end of input"),
                },
            }),
        }
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }
}

struct RawTerm {
    coeff: Rational,
    i: u8,
    j: u8,
    index_pos: usize,
}

fn parse_uint(cur: &mut Cursor) -> std::result::Result<BigInt, ParseError> {
    let mut digits = String::new();
    while let Some(c) = cur.peek() {
        if c.is_ascii_digit() {
            digits.push(c);
            cur.at += 1;
        } else {
            break;
        }
    }
    if digits.is_empty() {
        return cur.err("expected a digit");
    }
    Ok(digits.parse().expect("digits form an integer"))
}

/// term := [rational '*']? index index
fn parse_term(cur: &mut Cursor) -> std::result::Result<RawTerm, ParseError> {
    let start = cur.pos();
    let first = parse_uint(cur)?;
    let mut coeff = Rational::one();
    let (i, j, index_pos);
    match cur.peek() {
        Some('/') | Some('*') => {
            if cur.peek() == Some('/') {
                cur.bump();
                let den = parse_uint(cur)?;
                if den.is_zero() {
                    return Err(ParseError {
                        pos: start,
                        msg: "zero denominator".into(),
                    });
                }
                coeff = Rational::new(first, den);
            } else {
                coeff = Rational::from_integer(first);
            }
            cur.expect('*')?;
            index_pos = cur.pos();
            (i, j) = parse_index_pair(cur)?;
        }
        _ => {
            // `first` was the two index digits, e.g. "12".
            let s = first.to_string();
            if s.len() != 2 {
                return Err(ParseError {
                    pos: start,
                    msg: format!("expected two index digits, found {:?}", s),
                });
            }
            index_pos = start;
            let b = s.as_bytes();
            (i, j) = (b[0] - b'0', b[1] - b'0');
            check_index_pair(i, j, index_pos)?;
        }
    }
    Ok(RawTerm {
        coeff,
        i,
        j,
        index_pos,
    })
}

fn parse_index_pair(cur: &mut Cursor) -> std::result::Result<(u8, u8), ParseError> {
    let pos = cur.pos();
    let mut take = || -> std::result::Result<u8, ParseError> {
        match cur.bump() {
            Some(c) if c.is_ascii_digit() => Ok(c as u8 - b'0'),
            _ => Err(ParseError {
                pos,
                msg: "expected an index digit".into(),
            }),
        }
    };
    let i = take()?;
    let j = take()?;
    check_index_pair(i, j, pos)?;
    Ok((i, j))
}

fn check_index_pair(i: u8, j: u8, pos: usize) -> std::result::Result<(), ParseError> {
    if i == 0 || j == 0 {
        return Err(ParseError {
            pos,
            msg: "index 0 is not valid; indices run from 1".into(),
        });
    }
    if i == j {
        return Err(ParseError {
            pos,
            msg: format!("repeated index in term ({i}{j})"),
        });
    }
    if i > j {
        return Err(ParseError {
            pos,
            msg: format!("indices must be strictly increasing within a term ({i}{j})"),
        });
    }
    Ok(())
}

/// entry := '0' | ['-'] term (('+'|'-') term)*
fn parse_entry(cur: &mut Cursor) -> std::result::Result<Vec<(bool, RawTerm)>, ParseError> {
    if cur.peek() == Some('0') {
        // lone zero entry: the next significant char must close the entry
        let save = cur.at;
        cur.bump();
        match cur.peek() {
            Some(',') | Some(')') | None => return Ok(Vec::new()),
            _ => cur.at = save,
        }
    }
    let mut terms = Vec::new();
    let mut neg = false;
    if cur.peek() == Some('-') {
        cur.bump();
        neg = true;
    }
    loop {
        let t = parse_term(cur)?;
        terms.push((neg, t));
        match cur.peek() {
            Some('+') => {
                cur.bump();
                neg = false;
            }
            Some('-') => {
                cur.bump();
                neg = true;
            }
            _ => break,
        }
    }
    Ok(terms)
}

/// Parses a Salamon tuple into a validated [`LieAlgebra`] (including the
/// Jacobi check). The number of entries is the dimension.
pub fn parse_salamon(input: &str) -> Result<LieAlgebra> {
    let mut cur = Cursor::new(input);
    cur.expect('(')?;
    let mut entries = Vec::new();
    loop {
        entries.push(parse_entry(&mut cur)?);
        match cur.peek() {
            Some(',') => {
                cur.bump();
            }
            Some(')') => {
                cur.bump();
                break;
            }
            _ => return Err(cur.err::<()>("expected ',' or ')'").unwrap_err().into()),
        }
    }
    cur.skip_ws();
    if cur.at != cur.chars.len() {
        return Err(ParseError {
            pos: cur.pos(),
            msg: "trailing input after tuple".into(),
        }
        .into());
    }

    let dim = entries.len();
    if dim > 9 {
        return Err(Error::Unsupported(format!(
            "Salamon notation supports at most 9 dimensions, got {dim}"
        )));
    }
    let mut diffs = Vec::with_capacity(dim);
    for terms in &entries {
        let mut form = KForm::zero(dim, 2);
        for (neg, t) in terms {
            if t.i as usize > dim || t.j as usize > dim {
                return Err(ParseError {
                    pos: t.index_pos,
                    msg: format!(
                        "index {} out of range for a {dim}-dimensional algebra",
                        t.i.max(t.j)
                    ),
                }
                .into());
            }
            let c = if *neg {
                -t.coeff.clone()
            } else {
                t.coeff.clone()
            };
            let term = KForm::term(dim, &[t.i, t.j], GaussianRational::from_rational(c))?;
            form = form.add(&term)?;
        }
        diffs.push(form);
    }
    LieAlgebra::new(dim, diffs)
}

fn fmt_coeff(c: &Rational, out: &mut String) {
    if c.denom().is_one() {
        out.push_str(&c.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
    out.push('*');
}

/// Canonical Salamon form: terms in index order, unit coefficients
/// suppressed, no spaces. `parse_salamon(format_salamon(g)) == g` exactly.
pub fn format_salamon(g: &LieAlgebra) -> Result<String> {
    if g.dim() > 9 {
        return Err(Error::Unsupported(format!(
            "Salamon notation supports at most 9 dimensions, got {}",
            g.dim()
        )));
    }
    let mut out = String::from("(");
    for a in 1..=g.dim() as u8 {
        if a > 1 {
            out.push(',');
        }
        let d = g.diff_of_basis(a)?;
        if d.is_zero() {
            out.push('0');
            continue;
        }
        let mut first = true;
        for (key, c) in d.terms() {
            let c = c.re().clone();
            if c.is_negative() {
                out.push('-');
            } else if !first {
                out.push('+');
            }
            first = false;
            let abs = c.abs();
            if !abs.is_one() {
                fmt_coeff(&abs, &mut out);
            }
            out.push((b'0' + key[0]) as char);
            out.push((b'0' + key[1]) as char);
        }
    }
    out.push(')');
    Ok(out)
}

/// Convenience display wrapper.
pub struct Salamon<'a>(pub &'a LieAlgebra);

impl fmt::Display for Salamon<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match format_salamon(self.0) {
            Ok(s) => write!(f, "{s}"),
            Err(_) => write!(f, "<dim {} algebra>", self.0.dim()),
        }
    }
}
