//! Recursive-descent parser for the polynomial / matrix expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := 'x'digit | 'E(' nat ')' | rational | '(' expr ')'
//! ```
//! A leading `-` is accepted on any term. Whitespace is ignored.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::exactnum::{Cyclotomic, Rational};

use super::exponent::{Exponent, MAX_VARS};
use super::matrix::SquareMatrix;
use super::poly::Polynomial;
use super::PolyError;

#[derive(Debug, Clone)]
enum Ast {
    Var(usize),
    Root(u64),
    Num(Rational),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| PolyError::Syntax {
            pos: start,
            msg: "number too large".into(),
        })
    }

    fn expr(&mut self) -> Result<Ast, PolyError> {
        let mut lhs = self.signed_term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.signed_term()?;
                lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn signed_term(&mut self) -> Result<Ast, PolyError> {
        if self.eat(b'-') {
            Ok(Ast::Neg(Box::new(self.term()?)))
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Ast, PolyError> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Ast, PolyError> {
        let base = self.base()?;
        if self.eat(b'^') {
            let pos = self.pos;
            let k = self.nat()?;
            let k = u32::try_from(k).map_err(|_| PolyError::Syntax { pos, msg: "exponent too large".into() })?;
            return Ok(Ast::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Ast, PolyError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                match self.s.get(self.pos) {
                    Some(d @ b'1'..=b'9') => {
                        self.pos += 1;
                        Ok(Ast::Var((d - b'1') as usize))
                    }
                    _ => Err(self.err("expected variable index 1-9 after `x`")),
                }
            }
            Some(b'E') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return Err(self.err("expected `(` after `E`"));
                }
                let n = self.nat()?;
                if n == 0 {
                    return Err(self.err("E(0) is undefined"));
                }
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(Ast::Root(n))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.nat_text()?;
                let mut r: Rational = num.parse().map_err(|_| PolyError::Syntax { pos: start, msg: "bad integer".into() })?;
                // a '/' directly after an integer literal is part of the rational
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let dpos = self.pos;
                    let den = self.nat_text()?;
                    let d: Rational = den.parse().map_err(|_| PolyError::Syntax { pos: dpos, msg: "bad integer".into() })?;
                    if d.is_zero() {
                        return Err(PolyError::Syntax { pos: dpos, msg: "zero denominator".into() });
                    }
                    r = &r / &d;
                }
                Ok(Ast::Num(r))
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn nat_text(&mut self) -> Result<String, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }
}

fn parse_ast(text: &str) -> Result<Ast, PolyError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(ast)
}

fn collect_roots(a: &Ast, acc: &mut u64, max_var: &mut usize) {
    match a {
        Ast::Var(i) => *max_var = (*max_var).max(*i + 1),
        Ast::Root(n) => *acc = acc.lcm(n),
        Ast::Num(_) => {}
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => {
            collect_roots(x, acc, max_var);
            collect_roots(y, acc, max_var);
        }
        Ast::Neg(x) | Ast::Pow(x, _) => collect_roots(x, acc, max_var),
    }
}

/// Sparse, not necessarily homogeneous, polynomial used during evaluation.
type Sparse = BTreeMap<Exponent, Cyclotomic>;

fn sparse_add(a: &mut Sparse, b: Sparse, sign: i64) {
    for (e, c) in b {
        let c = if sign < 0 { -c } else { c };
        match a.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    a.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                a.insert(e, c);
            }
        }
    }
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let mut t = Sparse::new();
            t.insert(e1.mul(e2), c1 * c2);
            sparse_add(&mut out, t, 1);
        }
    }
    out
}

fn constant(n: usize, c: Cyclotomic) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert(Exponent::zero(n), c);
    }
    s
}

fn eval(a: &Ast, n: usize, m: u64) -> Result<Sparse, PolyError> {
    Ok(match a {
        Ast::Var(i) => {
            if *i >= n {
                return Err(PolyError::VariableOutOfRange { var: i + 1, nvars: n });
            }
            let mut s = Sparse::new();
            s.insert(Exponent::var_power(n, *i, 1), Cyclotomic::one(m));
            s
        }
        Ast::Root(k) => constant(n, Cyclotomic::root_of_unity(*k, 1).at(m)),
        Ast::Num(r) => constant(n, Cyclotomic::from_rational(r.clone(), m)),
        Ast::Add(x, y) => {
            let mut l = eval(x, n, m)?;
            sparse_add(&mut l, eval(y, n, m)?, 1);
            l
        }
        Ast::Sub(x, y) => {
            let mut l = eval(x, n, m)?;
            sparse_add(&mut l, eval(y, n, m)?, -1);
            l
        }
        Ast::Neg(x) => {
            let mut z = Sparse::new();
            sparse_add(&mut z, eval(x, n, m)?, -1);
            z
        }
        Ast::Mul(x, y) => sparse_mul(&eval(x, n, m)?, &eval(y, n, m)?),
        Ast::Pow(x, k) => {
            let b = eval(x, n, m)?;
            if b.len() == 1 && b.keys().next().unwrap().degree() == 0 {
                let c = b.values().next().unwrap().pow(*k as i64);
                return Ok(constant(n, c));
            }
            if *k > 255 {
                return Err(PolyError::Syntax { pos: 0, msg: "polynomial exponent too large".into() });
            }
            let mut acc = constant(n, Cyclotomic::one(m));
            for _ in 0..*k {
                acc = sparse_mul(&acc, &b);
            }
            acc
        }
    })
}

fn to_poly(s: Sparse, n: usize, m: u64) -> Result<Polynomial, PolyError> {
    let degs: Vec<u32> = s.keys().map(|e| e.degree()).collect();
    let d = degs.first().copied().unwrap_or(0);
    if degs.iter().any(|&x| x != d) {
        return Err(PolyError::NotHomogeneous);
    }
    Polynomial::from_terms(n, d, m, s)
}

/// Parses a homogeneous polynomial in `nvars` variables with coefficients in Q(ζ_m).
pub fn parse_poly(text: &str, nvars: usize, ambient_conductor: u64) -> Result<Polynomial, PolyError> {
    if !(1..=MAX_VARS).contains(&nvars) {
        return Err(PolyError::DimensionMismatch(format!("{nvars} variables (supported: 1..={MAX_VARS})")));
    }
    let ast = parse_ast(text)?;
    let (mut need, mut maxv) = (1u64, 0usize);
    collect_roots(&ast, &mut need, &mut maxv);
    if !ambient_conductor.is_multiple_of(need) {
        return Err(PolyError::ConductorTooSmall { needed: need, ambient: ambient_conductor });
    }
    to_poly(eval(&ast, nvars, ambient_conductor)?, nvars, ambient_conductor)
}

/// Parses with the conductor inferred as the lcm of the roots E(n) that appear.
pub fn parse_poly_auto(text: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    parse_poly(text, nvars, conductor_of(text)?)
}

/// lcm of the orders n of all E(n) occurring in an expression.
pub fn conductor_of(text: &str) -> Result<u64, PolyError> {
    let ast = parse_ast(text)?;
    let (mut need, mut maxv) = (1u64, 0usize);
    collect_roots(&ast, &mut need, &mut maxv);
    Ok(need)
}

/// Number of variables x1..xk referenced by the expression (largest index).
pub fn max_variable(text: &str) -> Result<usize, PolyError> {
    let ast = parse_ast(text)?;
    let (mut need, mut maxv) = (1u64, 0usize);
    collect_roots(&ast, &mut need, &mut maxv);
    Ok(maxv)
}

/// Parses a variable-free expression as a cyclotomic number at its natural conductor.
pub fn parse_scalar(text: &str) -> Result<Cyclotomic, PolyError> {
    let ast = parse_ast(text)?;
    let (mut need, mut maxv) = (1u64, 0usize);
    collect_roots(&ast, &mut need, &mut maxv);
    if maxv > 0 {
        return Err(PolyError::Syntax { pos: 0, msg: "matrix entries may not contain variables".into() });
    }
    let s = eval(&ast, 1, need)?;
    Ok(s.into_values().next().unwrap_or_else(|| Cyclotomic::zero(need)))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a matrix list: rows one per line, entries comma-separated, matrices separated by blank lines.
///
/// All matrices are lifted to one common conductor. `#` starts a comment.
pub fn parse_matrices(text: &str) -> Result<Vec<SquareMatrix>, PolyError> {
    let mut blocks: Vec<Vec<Vec<Cyclotomic>>> = Vec::new();
    let mut cur: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut offset = 0usize;
    for raw in text.split('\n') {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            if !cur.is_empty() {
                blocks.push(std::mem::take(&mut cur));
            }
        } else {
            let mut row = Vec::new();
            let mut col_off = raw.find(line).unwrap_or(0);
            for entry in line.split(',') {
                let v = parse_scalar(entry).map_err(|e| match e {
                    PolyError::Syntax { pos, msg } => PolyError::Syntax { pos: offset + col_off + pos, msg },
                    other => other,
                })?;
                row.push(v);
                col_off += entry.len() + 1;
            }
            cur.push(row);
        }
        offset += raw.len() + 1;
    }
    if !cur.is_empty() {
        blocks.push(cur);
    }
    let m = blocks.iter().flatten().flatten().fold(1u64, |acc, x| acc.lcm(&x.conductor()));
    blocks
        .into_iter()
        .map(|rows| SquareMatrix::from_rows(rows).map(|a| a.at(m)))
        .collect()
}
