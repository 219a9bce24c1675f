//! Text syntax for algebra and tensor elements.
//!
//! A sum of terms such as `3*x^2 - 1/2*y*e`. Inside a term, `|` separates
//! tensor slots: `1|e - e|1` is `1⊗e - e⊗1`. Numbers may appear in any slot
//! and multiply the term's coefficient. Factors are multiplied left to right
//! with Koszul signs, so `e2*e1` means `-e1*e2`.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{AlgElement, DGAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::tensor::{tensor_of, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Bar,
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { column, message: message.into() }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().unwrap()), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '|' => Tok::Bar,
            _ => return Err(parse_err(col, format!("unexpected character {c:?}"))),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

/// A generator power `name^exp` at a source column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub exp: u32,
    pub column: usize,
}

/// One parsed term: a rational coefficient and the factors of each slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub num: BigInt,
    pub den: BigInt,
    pub slots: Vec<Vec<Factor>>,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn number(&mut self) -> Result<BigInt> {
        let col = self.col();
        match self.next() {
            Some((Tok::Num(n), _)) => Ok(n),
            _ => Err(parse_err(col, "expected a number")),
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        let mut term = Term {
            num: if negative { -BigInt::one() } else { BigInt::one() },
            den: BigInt::one(),
            slots: vec![Vec::new()],
        };
        loop {
            self.factor(&mut term)?;
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Bar) => {
                    self.pos += 1;
                    term.slots.push(Vec::new());
                }
                _ => return Ok(term),
            }
        }
    }

    fn factor(&mut self, term: &mut Term) -> Result<()> {
        let col = self.col();
        match self.next() {
            Some((Tok::Num(n), _)) => {
                term.num *= n;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dcol = self.col();
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return Err(parse_err(dcol, "division by zero"));
                    }
                    term.den *= d;
                }
                Ok(())
            }
            Some((Tok::Ident(name), _)) => {
                let mut exp = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let ecol = self.col();
                    let e = self.number()?;
                    exp = u32::try_from(e).map_err(|_| parse_err(ecol, "exponent too large"))?;
                }
                term.slots.last_mut().unwrap().push(Factor { name, exp, column: col });
                Ok(())
            }
            Some((t, _)) => Err(parse_err(col, format!("unexpected {}", describe(&t)))),
            None => Err(parse_err(col, "unexpected end of expression")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "name",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::Bar => "'|'",
    }
}

/// Parses a signed sum of terms. `0` parses to an empty sum.
pub fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end_col: s.chars().count() + 1 };
    if p.peek().is_none() {
        return Err(parse_err(1, "empty expression"));
    }
    let mut terms = Vec::new();
    let mut negative = match p.peek() {
        Some(Tok::Minus) => {
            p.pos += 1;
            true
        }
        Some(Tok::Plus) => {
            p.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        terms.push(p.term(negative)?);
        let col = p.col();
        match p.next() {
            None => break,
            Some((Tok::Plus, _)) => negative = false,
            Some((Tok::Minus, _)) => negative = true,
            Some((t, _)) => return Err(parse_err(col, format!("unexpected {}", describe(&t)))),
        }
    }
    Ok(terms)
}

/// Evaluates the factors of one slot as a product in `alg`.
pub fn eval_slot(alg: &DGAlgebra, factors: &[Factor]) -> Result<AlgElement> {
    let mut acc = alg.one();
    for f in factors {
        let g = alg
            .generator(&f.name)
            .map_err(|_| parse_err(f.column, format!("unknown generator {:?}", f.name)))?;
        for _ in 0..f.exp {
            acc = alg.multiply(&acc, &g);
        }
    }
    Ok(acc)
}

pub fn term_coefficient(alg: &DGAlgebra, t: &Term) -> Result<Scalar> {
    alg.field().ratio(&t.num, &t.den)
}

/// Parses an element of the algebra.
pub fn parse_element(alg: &DGAlgebra, s: &str) -> Result<AlgElement> {
    let mut out = AlgElement::zero();
    for t in parse_terms(s)? {
        if t.slots.len() != 1 {
            let col = t.slots[1].first().map_or(1, |f| f.column);
            return Err(parse_err(col, "tensor separator '|' in an algebra element"));
        }
        let c = term_coefficient(alg, &t)?;
        out.add_assign(&eval_slot(alg, &t.slots[0])?.scale(&c));
    }
    Ok(out)
}

/// Parses an element of `B^{⊗_A arity}`; slots are separated by `|`. A
/// lone `0` is the zero tensor of any arity.
pub fn parse_tensor(alg: &DGAlgebra, s: &str, arity: usize) -> Result<TensorElement> {
    let mut out = TensorElement::zero(arity);
    for t in parse_terms(s)? {
        let c = term_coefficient(alg, &t)?;
        if c.is_zero() && t.slots.len() == 1 && t.slots[0].is_empty() {
            continue;
        }
        if t.slots.len() != arity {
            let col = t.slots.iter().flatten().next().map_or(1, |f| f.column);
            return Err(parse_err(col, format!("term has {} slots, expected {arity}", t.slots.len())));
        }
        let factors = t.slots.iter().map(|f| eval_slot(alg, f)).collect::<Result<Vec<_>>>()?;
        out.add_scaled(&tensor_of(alg, &factors), &c);
    }
    Ok(out)
}
