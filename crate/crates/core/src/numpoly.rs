//! Integer-valued numerical polynomials and staircase counting.
//!
//! Polynomials are stored in the binomial basis `C(t+i, i)`, `i = 0..=deg`.
//! Counting uses inclusion-exclusion over subsets of each leader set, which is
//! exponential in the size of a set; fine for a dozen leaders per component.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::fmt_rational;

/// `x (x-1) ... (x-k+1) / k!` for any integer `x`.
fn binom(x: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= x - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// `phi(t) = sum a_i C(t+i, i)`, equal to its counting function for `t >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalPolynomial {
    coeffs: Vec<BigInt>,
    valid_from: i64,
}

impl NumericalPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<BigInt>, valid_from: i64) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, valid_from }
    }

    pub fn from_i64(coeffs: &[i64], valid_from: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), valid_from)
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), 0)
    }

    /// Binomial-basis coefficients `a_0, ..., a_deg`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * binom(&(&t + BigInt::from(i)), i))
            .sum()
    }

    /// `phi(t) - phi(t-1)`; since `C(t+i,i) - C(t+i-1,i) = C(t+i-1,i-1)` the
    /// coefficients just shift.
    pub fn difference(&self) -> Self {
        Self::new(
            self.coeffs.iter().skip(1).cloned().collect(),
            self.valid_from + 1,
        )
    }

    /// Ordinary coefficients `c_0, ..., c_deg` of `sum c_k t^k`.
    pub fn to_monomial(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            // C(t+i, i) = prod_{j=1..i} (t + j) / i!
            let mut p = vec![BigInt::one()];
            let mut fact = BigInt::one();
            for j in 1..=i {
                let mut next = vec![BigInt::zero(); p.len() + 1];
                for (k, c) in p.iter().enumerate() {
                    next[k] += c * BigInt::from(j);
                    next[k + 1] += c;
                }
                p = next;
                fact *= BigInt::from(j);
            }
            for (k, c) in p.into_iter().enumerate() {
                out[k] += BigRational::new(a * c, fact.clone());
            }
        }
        out
    }

    /// `{"binomial_coeffs": [...], "valid_from": t0}` with exact integers.
    pub fn to_json(&self) -> Value {
        json!({
            "binomial_coeffs": self.coeffs.iter().map(bigint_json).collect::<Vec<_>>(),
            "valid_from": self.valid_from,
        })
    }
}

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
pub(crate) fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

impl fmt::Display for NumericalPolynomial {
    /// Monomial basis, highest degree first: `2*t + 1`, `1/2*t^2 + 3/2*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = self.to_monomial();
        let mut out = String::new();
        for (k, c) in mono.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{}*{var}", fmt_rational(&mag)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Per-component sets of pairwise incomparable exponent vectors in `N^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain {
    num_derivations: usize,
    sets: Vec<Vec<Vec<u32>>>,
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Antichain {
    pub fn new(num_derivations: usize, sets: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        for set in &sets {
            for (i, a) in set.iter().enumerate() {
                if a.len() != num_derivations {
                    return Err(Error::InvalidConfig(format!(
                        "exponent vector {a:?} does not have length {num_derivations}"
                    )));
                }
                if set[..i].iter().any(|b| leq(a, b) || leq(b, a)) {
                    return Err(Error::NotAntichain);
                }
            }
        }
        Ok(Self {
            num_derivations,
            sets,
        })
    }

    pub fn num_derivations(&self) -> usize {
        self.num_derivations
    }

    pub fn num_components(&self) -> usize {
        self.sets.len()
    }

    pub fn component(&self, i: usize) -> &[Vec<u32>] {
        &self.sets[i]
    }
}

/// Sums `sign * C(t - |lcm S| + m, m)` over subsets `S` by depth-first search.
fn inclusion_exclusion(
    set: &[Vec<u32>],
    start: usize,
    lcm: &mut Vec<u32>,
    sign: i64,
    terms: &mut Vec<(i64, i64)>,
) {
    for i in start..set.len() {
        let saved = lcm.clone();
        for (x, y) in lcm.iter_mut().zip(&set[i]) {
            *x = (*x).max(*y);
        }
        let s: i64 = lcm.iter().map(|&x| x as i64).sum();
        terms.push((-sign, s));
        inclusion_exclusion(set, i + 1, lcm, -sign, terms);
        *lcm = saved;
    }
}

/// The numerical polynomial counting exponent vectors of order `<= t` lying
/// above no element of the antichain, summed over components.
pub fn count_cofilter(e: &Antichain) -> NumericalPolynomial {
    let m = e.num_derivations;
    // (sign, |lcm S|) for every subset of every component, empty subsets included
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for set in &e.sets {
        terms.push((1, 0));
        inclusion_exclusion(set, 0, &mut vec![0; m], 1, &mut terms);
    }
    let valid_from = terms.iter().map(|&(_, s)| s).max().unwrap_or(0);
    let poly_at = |t: i64| -> BigInt {
        terms
            .iter()
            .map(|&(sign, s)| BigInt::from(sign) * binom(&BigInt::from(t - s + m as i64), m))
            .sum()
    };
    // Recover binomial coefficients from values at -1, -2, ...:
    // a_j = sum_l (-1)^l C(j, l) P(-1-l).
    let values: Vec<BigInt> = (0..=m as i64).map(|l| poly_at(-1 - l)).collect();
    let coeffs = (0..=m)
        .map(|j| {
            (0..=j)
                .map(|l| {
                    let c = binom(&BigInt::from(j), l) * &values[l];
                    if l % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .sum()
        })
        .collect();
    NumericalPolynomial::new(coeffs, valid_from)
}

/// Direct enumeration of the set counted by [`count_cofilter`] at `t`.
pub fn brute_count(e: &Antichain, t: u32) -> u64 {
    fn walk(prefix: &mut Vec<u32>, m: usize, budget: u32, set: &[Vec<u32>], count: &mut u64) {
        if prefix.len() == m {
            if !set.iter().any(|a| leq(a, prefix)) {
                *count += 1;
            }
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            walk(prefix, m, budget - k, set, count);
            prefix.pop();
        }
    }
    let mut count = 0;
    for set in &e.sets {
        walk(&mut Vec::new(), e.num_derivations, t, set, &mut count);
    }
    count
}

/// Differential type `l`, typical height `d_l = l! * (leading t^l coefficient)`
/// and differential dimension `d_m = m! * (t^m coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAndHeights {
    /// `None` for the zero polynomial.
    pub diff_type: Option<usize>,
    pub typical_height: BigInt,
    pub diff_height: BigInt,
}

/// In the binomial basis `l! * (t^l coefficient)` is just `a_l`.
pub fn type_and_heights(p: &NumericalPolynomial, m: usize) -> Result<TypeAndHeights> {
    if p.degree().map_or(false, |d| d > m) {
        return Err(Error::InvalidConfig(format!(
            "numerical polynomial of degree {} exceeds {m}",
            p.degree().unwrap_or(0)
        )));
    }
    let diff_type = p.degree();
    Ok(TypeAndHeights {
        diff_type,
        typical_height: diff_type.map(|l| p.coeff(l)).unwrap_or_default(),
        diff_height: p.coeff(m),
    })
}
