//! Expression syntax shared by rational functions, operators and differential
//! polynomials: `+ - * / ^`, parentheses, integer literals and names.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{err, Cursor, Tok};
use crate::error::Error;
use crate::ore::OrePoly;
use crate::scalars::RatFun;
use crate::variety::DiffPoly;

#[derive(Clone, Debug)]
pub(crate) enum Expr {
    Int(BigInt),
    Ident {
        name: String,
        marker: Option<Vec<u32>>,
        primes: bool,
        line: usize,
        column: usize,
    },
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, usize, usize),
    Pow(Box<Expr>, i64, usize, usize),
}

pub(crate) fn parse_expr(c: &mut Cursor) -> Result<Expr, Error> {
    let mut lhs = parse_term(c)?;
    while c.is_sym('+') || c.is_sym('-') {
        let t = c.next().expect("peeked");
        let Tok::Sym(op) = t.tok else { unreachable!() };
        let rhs = parse_term(c)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), t.line, t.column);
    }
    Ok(lhs)
}

fn parse_term(c: &mut Cursor) -> Result<Expr, Error> {
    let mut lhs = parse_unary(c)?;
    while c.is_sym('*') || c.is_sym('/') {
        let t = c.next().expect("peeked");
        let Tok::Sym(op) = t.tok else { unreachable!() };
        let rhs = parse_unary(c)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), t.line, t.column);
    }
    Ok(lhs)
}

fn parse_unary(c: &mut Cursor) -> Result<Expr, Error> {
    if c.is_sym('-') {
        c.next();
        return Ok(Expr::Neg(Box::new(parse_unary(c)?)));
    }
    if c.is_sym('+') {
        c.next();
        return parse_unary(c);
    }
    parse_power(c)
}

fn parse_power(c: &mut Cursor) -> Result<Expr, Error> {
    let base = parse_atom(c)?;
    if !c.is_sym('^') {
        return Ok(base);
    }
    let t = c.next().expect("peeked");
    let paren = c.is_sym('(');
    if paren {
        c.next();
    }
    let neg = c.is_sym('-');
    if neg {
        c.next();
    }
    let k = match c.next() {
        Some(tok) => match &tok.tok {
            Tok::Int(n) => n
                .to_i64()
                .ok_or_else(|| err(tok.line, tok.column, "exponent too large"))?,
            _ => return Err(err(tok.line, tok.column, "expected an integer exponent")),
        },
        None => return Err(c.error("expected an integer exponent")),
    };
    if paren {
        c.expect_sym(')')?;
    }
    Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }, t.line, t.column))
}

fn parse_atom(c: &mut Cursor) -> Result<Expr, Error> {
    let Some(t) = c.peek() else {
        return Err(c.error("unexpected end of expression"));
    };
    match &t.tok {
        Tok::Int(n) => {
            c.next();
            Ok(Expr::Int(n.clone()))
        }
        Tok::Ident(name, marker, primes) => {
            c.next();
            Ok(Expr::Ident {
                name: name.clone(),
                marker: marker.clone(),
                primes: *primes,
                line: t.line,
                column: t.column,
            })
        }
        Tok::Sym('(') => {
            c.next();
            let e = parse_expr(c)?;
            c.expect_sym(')')?;
            Ok(e)
        }
        Tok::Sym(s) => Err(err(t.line, t.column, format!("unexpected '{s}'"))),
    }
}

/// Ring operations needed to evaluate an expression.
pub(crate) trait Algebra: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `Some` for elements of the base field.
    fn scalar(&self) -> Option<RatFun>;
}

impl Algebra for RatFun {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scalar(&self) -> Option<RatFun> {
        Some(self.clone())
    }
}

impl Algebra for OrePoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scalar(&self) -> Option<RatFun> {
        self.as_scalar()
    }
}

impl Algebra for DiffPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scalar(&self) -> Option<RatFun> {
        if self.is_zero() {
            return Some(RatFun::zero());
        }
        let mut terms = self.terms();
        let (m, c) = terms.next()?;
        (m.is_empty() && terms.next().is_none()).then(|| c.clone())
    }
}

/// Resolves a name (with its derivative marker) at a given position.
pub(crate) struct Leaf<'a> {
    pub name: &'a str,
    pub marker: Option<&'a [u32]>,
    pub primes: bool,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn eval<T: Algebra>(
    e: &Expr,
    lift: &dyn Fn(RatFun) -> T,
    leaf: &dyn Fn(&Leaf) -> Result<T, Error>,
) -> Result<T, Error> {
    Ok(match e {
        Expr::Int(n) => lift(RatFun::from_bigint(n.clone())),
        Expr::Ident {
            name,
            marker,
            primes,
            line,
            column,
        } => leaf(&Leaf {
            name,
            marker: marker.as_deref(),
            primes: *primes,
            line: *line,
            column: *column,
        })?,
        Expr::Neg(a) => eval(a, lift, leaf)?.neg(),
        Expr::Bin(op, a, b, line, column) => {
            let a = eval(a, lift, leaf)?;
            let b = eval(b, lift, leaf)?;
            match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                '*' => a.mul(&b),
                '/' => {
                    let s = b
                        .scalar()
                        .ok_or_else(|| err(*line, *column, "division by a non-scalar"))?;
                    let inv = s.inv().map_err(|_| err(*line, *column, "division by zero"))?;
                    a.mul(&lift(inv))
                }
                _ => unreachable!("operator {op}"),
            }
        }
        Expr::Pow(a, k, line, column) => {
            let a = eval(a, lift, leaf)?;
            if *k < 0 {
                let s = a
                    .scalar()
                    .ok_or_else(|| err(*line, *column, "negative power of a non-scalar"))?;
                lift(s.pow(*k).map_err(|_| err(*line, *column, "division by zero"))?)
            } else {
                let mut out = lift(RatFun::one());
                for _ in 0..*k {
                    out = out.mul(&a);
                }
                out
            }
        }
    })
}
