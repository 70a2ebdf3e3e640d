//! Text grammar for polynomials.
//!
//! ```text
//! poly   := term (('+'|'-') term)*        (a leading sign is accepted)
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?                 (dual input also takes var '^' '[' nat ']')
//! coeff  := integer | integer '/' integer
//! var    := [a-zA-Z][a-zA-Z0-9_]*
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dual::{divided_multiply, monomial_factorial, DualPoly};
use super::monomial::Monomial;
use super::polynomial::Poly;
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^[]".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[derive(Debug)]
struct Factor {
    var: String,
    column: usize,
    exp: u16,
    divided: bool,
}

#[derive(Debug)]
struct Term {
    coeff: BigRational,
    factors: Vec<Factor>,
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u16> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                u16::try_from(n).map_err(|_| err(col, "exponent too large"))
            }
            _ => Err(err(col, "expected a natural number")),
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let column = self.col();
        let var = match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                s
            }
            _ => return Err(err(column, "expected a variable")),
        };
        let (mut exp, mut divided) = (1, false);
        if self.eat('^') {
            if self.eat('[') {
                exp = self.nat()?;
                divided = true;
                if !self.eat(']') {
                    return Err(err(self.col(), "expected `]`"));
                }
            } else {
                exp = self.nat()?;
            }
        }
        Ok(Factor {
            var,
            column,
            exp,
            divided,
        })
    }

    fn term(&mut self, sign: bool) -> Result<Term> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        if let Some(Tok::Int(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut q = BigRational::from_integer(n);
            if self.eat('/') {
                let col = self.col();
                match self.peek().cloned() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        self.pos += 1;
                        q /= BigRational::from_integer(d);
                    }
                    Some(Tok::Int(_)) => return Err(err(col, "zero denominator")),
                    _ => return Err(err(col, "expected a denominator")),
                }
            }
            coeff = q;
            while self.eat('*') {
                factors.push(self.factor()?);
            }
        } else {
            factors.push(self.factor()?);
            while self.eat('*') {
                factors.push(self.factor()?);
            }
        }
        if sign {
            coeff = -coeff;
        }
        Ok(Term { coeff, factors })
    }

    fn poly(&mut self) -> Result<Vec<Term>> {
        if self.toks.is_empty() {
            return Err(err(1, "empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            terms.push(self.term(neg)?);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else if self.pos == self.toks.len() {
                break;
            } else {
                return Err(err(self.col(), "expected `+`, `-` or end of input"));
            }
        }
        Ok(terms)
    }
}

fn parse_terms(text: &str) -> Result<Vec<Term>> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    p.poly()
}

fn resolve(names: &[String], f: &Factor) -> Result<usize> {
    names
        .iter()
        .position(|n| *n == f.var)
        .ok_or_else(|| Error::UnknownVariable(f.var.clone()))
}

fn field_coeff(field: FieldSpec, q: &BigRational) -> Result<Scalar> {
    field.from_rational(q)
}

/// Parses an element of R over the named variables.
pub fn parse_poly(text: &str, names: &[String], field: FieldSpec) -> Result<Poly> {
    let n = names.len();
    let mut out = Vec::new();
    for t in parse_terms(text)? {
        let mut e = vec![0u16; n];
        for f in &t.factors {
            if f.divided {
                return Err(err(f.column, "divided powers belong to dual polynomials"));
            }
            let i = resolve(names, f)?;
            e[i] = e[i]
                .checked_add(f.exp)
                .ok_or_else(|| err(f.column, "exponent too large"))?;
        }
        out.push((Monomial::new(&e), field_coeff(field, &t.coeff)?));
    }
    Ok(Poly::from_terms(n, field, out))
}

/// Upper-cased names used for the dual variables.
pub fn dual_names(names: &[String]) -> Vec<String> {
    names.iter().map(|s| s.to_uppercase()).collect()
}

/// Parses an element of R*. `X^k` is an ordinary power (= k!·X^[k]),
/// `X^[k]` a divided power.
pub fn parse_dual(text: &str, names: &[String], field: FieldSpec) -> Result<DualPoly> {
    let n = names.len();
    let upper = dual_names(names);
    let mut acc = DualPoly::zero(n, field);
    for t in parse_terms(text)? {
        let mut term = DualPoly::from_divided(Poly::constant(n, field_coeff(field, &t.coeff)?));
        for f in &t.factors {
            let i = resolve(&upper, f)?;
            let mut e = vec![0u16; n];
            e[i] = f.exp;
            let m = Monomial::new(&e);
            let c = if f.divided {
                field.one()
            } else {
                let c = monomial_factorial(field, &m);
                if c.is_zero() {
                    return Err(err(
                        f.column,
                        format!("{}^{} vanishes in characteristic {}; write {}^[{}]", f.var, f.exp, field.characteristic(), f.var, f.exp),
                    ));
                }
                c
            };
            let factor = DualPoly::from_divided(Poly::term(m, c));
            term = divided_multiply(&term, &factor)?;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Variable names appearing in `text`, rejecting mixed naming schemes
/// (indexed names such as `x1` together with plain ones, or mixed case).
pub fn infer_variables(text: &str) -> Result<Vec<String>> {
    let mut seen: Vec<(String, usize)> = Vec::new();
    for (tok, col) in tokenize(text)? {
        if let Tok::Ident(s) = tok {
            if !seen.iter().any(|(t, _)| *t == s) {
                seen.push((s, col));
            }
        }
    }
    let indexed = |s: &str| s.chars().last().is_some_and(|c| c.is_ascii_digit());
    let upper = |s: &str| s.chars().next().is_some_and(|c| c.is_ascii_uppercase());
    if let Some((first, _)) = seen.first() {
        for (s, col) in &seen {
            if indexed(s) != indexed(first) || upper(s) != upper(first) {
                return Err(err(
                    *col,
                    format!("mixed variable naming: `{first}` and `{s}`"),
                ));
            }
        }
    }
    let mut names: Vec<String> = seen.into_iter().map(|(s, _)| s).collect();
    names.sort_by(|a, b| natural_key(a).cmp(&natural_key(b)));
    Ok(names)
}

fn natural_key(s: &str) -> (String, u64) {
    let digits: String = s.chars().rev().take_while(|c| c.is_ascii_digit()).collect();
    let prefix = &s[..s.len() - digits.len()];
    let idx = digits.chars().rev().collect::<String>().parse().unwrap_or(0);
    (prefix.to_string(), idx)
}

fn write_terms(terms: impl Iterator<Item = (Vec<(String, u16, bool)>, Scalar)>) -> String {
    let mut out = String::new();
    for (k, (factors, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -&c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = factors
            .iter()
            .map(|(name, e, divided)| match (e, divided) {
                (1, _) => name.clone(),
                (e, true) => format!("{name}^[{e}]"),
                (e, false) => format!("{name}^{e}"),
            })
            .collect();
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{}*{}", abs, mono.join("*")));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn factors_of(m: &Monomial, names: &[String], divided: bool) -> Vec<(String, u16, bool)> {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (names[i].clone(), e, divided))
        .collect()
}

pub fn format_poly(p: &Poly, names: &[String]) -> String {
    write_terms(
        p.terms()
            .iter()
            .map(|(m, c)| (factors_of(m, names, false), c.clone())),
    )
}

/// Ordinary notation in characteristic 0, divided monomials otherwise.
pub fn format_dual(f: &DualPoly, names: &[String]) -> String {
    let upper = dual_names(names);
    if f.field().is_rational() {
        let ord = f.to_ordinary().expect("factorials invertible over QQ");
        return write_terms(
            ord.terms()
                .iter()
                .map(|(m, c)| (factors_of(m, &upper, false), c.clone())),
        );
    }
    write_terms(
        f.terms()
            .iter()
            .map(|(m, c)| (factors_of(m, &upper, true), c.clone())),
    )
}
