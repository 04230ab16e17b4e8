use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{self, Dense};

/// Exponent vector of a monomial in `t1, t2, ...`.
///
/// Trailing zeros are always trimmed, so a monomial has exactly one
/// representation regardless of how many variables the field declares.
/// Ordering of the vectors is lexicographic with `t1` most significant.
pub type Exponent = Vec<u32>;

fn trim(mut e: Exponent) -> Exponent {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_get(e: &Exponent, var: usize) -> u32 {
    e.get(var).copied().unwrap_or(0)
}

fn exp_add(a: &Exponent, b: &Exponent) -> Exponent {
    let len = a.len().max(b.len());
    let v = (0..len).map(|i| exp_get(a, i) + exp_get(b, i)).collect();
    trim(v)
}

fn exp_divides(a: &Exponent, b: &Exponent) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_sub(b: &Exponent, a: &Exponent) -> Exponent {
    let v = (0..b.len()).map(|i| exp_get(b, i) - exp_get(a, i)).collect();
    trim(v)
}

fn exp_set(e: &Exponent, var: usize, value: u32) -> Exponent {
    let mut v = e.clone();
    if v.len() <= var {
        v.resize(var + 1, 0);
    }
    v[var] = value;
    trim(v)
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The variable `t_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::monomial(exp_set(&Vec::new(), var, 1), BigRational::one())
    }

    pub fn monomial(exp: Exponent, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(trim(exp), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Vec::new())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Returns the value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Number of variable slots actually used (one past the highest variable index).
    pub fn num_vars_used(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| exp_get(e, var))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| exp_get(e, var) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    fn mul_monomial(&self, exp: &Exponent, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (exp_add(e, exp), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `t_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = exp_get(e, var);
            if k > 0 {
                let ne = exp_set(e, var, k - 1);
                out.add_term(ne, c * BigRational::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of `var^k`,
    /// a polynomial not involving `var`.
    fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let k = exp_get(e, var) as usize;
            out[k].add_term(exp_set(e, var, 0), c.clone());
        }
        out
    }

    fn leading_coeff_in(&self, var: usize) -> MPoly {
        let d = self.degree_in(var);
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if exp_get(e, var) == d {
                out.add_term(exp_set(e, var, 0), c.clone());
            }
        }
        out
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        assert!(!other.is_zero(), "exact division by the zero polynomial");
        let (le, lc) = other.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if !exp_divides(&le, &e) {
                return None;
            }
            let qe = exp_sub(&e, &le);
            let qc = c / &lc;
            rem = &rem - &other.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Scales so that the lex-leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Rescales by a rational unit so the coefficients are coprime integers with
    /// a positive leading coefficient.
    fn integer_primitive(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = num_integer::Integer::lcm(&den, c.denom());
            num = num_integer::Integer::gcd(&num, c.numer());
        }
        let mut factor = BigRational::new(den, num);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Greatest common divisor, normalized monic (zero if both inputs are zero).
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.num_vars_used() <= 1 && other.num_vars_used() <= 1 {
            return univariate_gcd(self, other);
        }
        gcd_from(self, other, 0).monic()
    }
}

/// Integer coefficients (after clearing denominators) of a polynomial in `t1` only.
fn to_dense(p: &MPoly) -> Dense {
    let mut den = BigInt::one();
    for c in p.terms.values() {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let mut out = vec![BigInt::zero(); p.degree_in(0) as usize + 1];
    for (e, c) in &p.terms {
        out[exp_get(e, 0) as usize] = (c * BigRational::from_integer(den.clone())).to_integer();
    }
    out
}

fn univariate_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let g = upoly::gcd(to_dense(a), to_dense(b));
    MPoly::from_terms(
        g.into_iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], BigRational::from_integer(c))),
    )
    .monic()
}

/// Content with respect to `var`: gcd of the coefficients of powers of `var`.
fn content_in(p: &MPoly, var: usize) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            c.integer_primitive()
        } else {
            gcd_from(&g, &c, var + 1)
        };
        if g.as_constant().is_some() {
            return MPoly::one();
        }
    }
    g
}

fn primitive_part(p: &MPoly, var: usize) -> MPoly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").integer_primitive()
}

fn pseudo_rem(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let db = b.degree_in(var);
    let lb = b.leading_coeff_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var);
        let shift = MPoly::monomial(exp_set(&Vec::new(), var, dr - db), BigRational::one());
        r = (&(&r * &lb) - &(&(&lr * &shift) * b)).integer_primitive();
    }
    r
}

/// Largest monomial dividing every term of both inputs.
fn common_monomial(a: &MPoly, b: &MPoly) -> Exponent {
    let mut it = a.terms.keys().chain(b.terms.keys());
    let mut acc = match it.next() {
        Some(e) => e.clone(),
        None => return Vec::new(),
    };
    for e in it {
        acc.truncate(e.len());
        for (x, y) in acc.iter_mut().zip(e) {
            *x = (*x).min(*y);
        }
        if acc.iter().all(|&k| k == 0) {
            return Vec::new();
        }
    }
    trim(acc)
}

/// Substitutes small integers for every variable other than `var` and returns
/// the univariate image, written in the first variable slot.
fn specialize(p: &MPoly, var: usize, point: &[i64]) -> MPoly {
    let mut out = MPoly::zero();
    for (e, c) in &p.terms {
        let mut value = c.clone();
        for (i, &k) in e.iter().enumerate() {
            if i != var && k > 0 {
                value *= BigRational::from_integer(BigInt::from(point[i]).pow(k));
            }
        }
        out.add_term(trim(vec![exp_get(e, var)]), value);
    }
    out
}

/// Sufficient test for coprimality of two polynomials that are primitive in
/// `var`: if an image under a specialization preserving both degrees in `var`
/// has a constant gcd, any common factor cannot involve `var`, and primitive
/// inputs then share no factor at all.
fn specialized_coprime(a: &MPoly, b: &MPoly, var: usize) -> bool {
    let used = a.num_vars_used().max(b.num_vars_used());
    let (la, lb) = (a.leading_coeff_in(var), b.leading_coeff_in(var));
    for attempt in 0..3i64 {
        let point: Vec<i64> = (0..used)
            .map(|i| 2 + attempt * 7 + 3 * i as i64)
            .collect();
        let sa = specialize(&la, var, &point);
        let sb = specialize(&lb, var, &point);
        if sa.is_zero() || sb.is_zero() {
            continue;
        }
        let ia = specialize(a, var, &point);
        let ib = specialize(b, var, &point);
        return univariate_gcd(&ia, &ib).as_constant().is_some();
    }
    false
}

/// Recursive gcd where no variable below `start` occurs in either input.
/// The result is correct up to a rational unit.
fn gcd_from(a: &MPoly, b: &MPoly, start: usize) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let mono = common_monomial(a, b);
    if !mono.is_empty() {
        let one = BigRational::one();
        let a = a.div_exact(&MPoly::monomial(mono.clone(), one.clone())).expect("monomial divides");
        let b = b.div_exact(&MPoly::monomial(mono.clone(), one.clone())).expect("monomial divides");
        return gcd_from(&a, &b, start).mul_monomial(&mono, &one);
    }
    let used = a.num_vars_used().max(b.num_vars_used());
    let var = match (start..used).find(|&v| a.involves(v) || b.involves(v)) {
        Some(v) => v,
        None => return MPoly::one(),
    };
    if !a.involves(var) {
        return gcd_from(a, &content_in(b, var), var + 1);
    }
    if !b.involves(var) {
        return gcd_from(&content_in(a, var), b, var + 1);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let content = gcd_from(&ca, &cb, var + 1);
    let pa = a.div_exact(&ca).expect("content divides").integer_primitive();
    let pb = b.div_exact(&cb).expect("content divides").integer_primitive();
    if specialized_coprime(&pa, &pb, var) {
        return content;
    }
    let (mut r0, mut r1) = if pa.degree_in(var) >= pb.degree_in(var) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&r0, &r1, var);
        if r.is_zero() {
            break;
        }
        if !r.involves(var) {
            r1 = MPoly::one();
            break;
        }
        r0 = r1;
        r1 = primitive_part(&r, var);
    }
    (&primitive_part(&r1, var) * &content).integer_primitive()
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(exp_add(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Formats a rational literal: `3`, `-2/5`.
pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn var_name(var: usize, single: bool) -> String {
    if single {
        "t".to_string()
    } else {
        format!("t{}", var + 1)
    }
}

fn fmt_monomial(e: &Exponent, single: bool) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(var_name(i, single)),
            _ => parts.push(format!("{}^{}", var_name(i, single), k)),
        }
    }
    parts.join("*")
}

impl MPoly {
    /// Renders terms in decreasing lex order. Variables print as `t` when only
    /// `t1` occurs, otherwise `t1, t2, ...`; the parser accepts `t` as `t1`.
    pub(crate) fn render(&self, single: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(e, single);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.num_vars_used() <= 1))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
