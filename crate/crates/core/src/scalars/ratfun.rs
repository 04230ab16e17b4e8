use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Element of `Q(t1, ..., tv)` in canonical form.
///
/// Numerator and denominator are coprime and the denominator is monic in
/// lex order, so equal values have identical representations and the
/// derived `PartialEq` is value equality. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        Self {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MPoly::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(MPoly::constant(q))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self {
            num: p,
            den: MPoly::one(),
        }
    }

    /// The variable `t_{var+1}` as a field element.
    pub fn var(var: usize) -> Self {
        Self::from_poly(MPoly::var(var))
    }

    /// Builds `num/den` in canonical form.
    pub fn normalize(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Ok(Self { num, den })
        } else {
            let inv = lc.recip();
            Ok(Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    /// Applies only the denominator sign convention; caller guarantees coprimality.
    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns the value if this is a rational constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn num_vars_used(&self) -> usize {
        self.num.num_vars_used().max(self.den.num_vars_used())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            let n = n as u32;
            Ok(Self {
                num: self.num.pow(n),
                den: self.den.pow(n),
            }
            .renormalized())
        } else {
            self.inv()?.pow(-n)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    fn renormalized(self) -> Self {
        Self::normalize(self.num, self.den).expect("nonzero denominator")
    }

    /// Partial derivative with respect to `t_{var+1}` (quotient rule).
    pub fn partial(&self, var: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.derivative(var);
        if self.den.as_constant().is_some() {
            return Self::from_coprime(dn, self.den.clone());
        }
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::normalize(dn, self.den.clone()).expect("nonzero denominator");
        }
        // (n'd - nd')/d^2 = (n'(d/g) - n(d'/g)) / (d (d/g)) with g = gcd(d, d');
        // any factor left in common divides d.
        let g = self.den.gcd(&dd);
        let dg = self.den.div_exact(&g).expect("gcd divides");
        let ddg = dd.div_exact(&g).expect("gcd divides");
        let mut num = &(&dn * &dg) - &(&self.num * &ddg);
        let mut den = &self.den * &dg;
        if num.is_zero() {
            return Self::zero();
        }
        let mut probe = self.den.clone();
        loop {
            let h = num.gcd(&probe).gcd(&den);
            if h.as_constant().is_some() {
                break;
            }
            num = num.div_exact(&h).expect("gcd divides");
            den = den.div_exact(&h).expect("gcd divides");
            probe = h;
        }
        Self::from_coprime(num, den)
    }

    /// Text form, naming variables `t` when only the first one is used.
    pub(crate) fn render(&self, single: bool) -> String {
        if self.den.is_one() {
            return self.num.render(single);
        }
        let num = self.num.render(single);
        let num = if self.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = self.den.render(single);
        let den_simple = self.den.num_terms() == 1
            && self
                .den
                .leading()
                .map(|(e, _)| e.iter().filter(|&&k| k > 0).count() <= 1)
                .unwrap_or(true);
        if den_simple {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    /// True when the text form needs parentheses as a factor in a product.
    pub(crate) fn needs_parens(&self) -> bool {
        self.num.num_terms() > 1
    }

    /// True when the numerator is a single term with negative coefficient.
    pub(crate) fn is_negative_term(&self) -> bool {
        self.num.num_terms() == 1 && self.num.leading_coeff().is_negative()
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalize(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        if self.den.is_one() || rhs.den.is_one() {
            // a + c/d with c/d canonical is already coprime
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::from_coprime(num, &self.den * &rhs.den);
        }
        // Henrici: with g = gcd(b, d), only g can share factors with the new numerator.
        let g = self.den.gcd(&rhs.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RatFun::zero();
        }
        let h = if g.is_one() { g.clone() } else { num.gcd(&g) };
        let (num, den) = if h.is_one() {
            (num, &(&b * &d) * &g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                &(&b * &d) * &g.div_exact(&h).expect("gcd divides"),
            )
        };
        RatFun::from_coprime(num, den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel: (a/b)(c/d) = (a/g1)(c/g2) / ((b/g2)(d/g1))
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: &MPoly, g: &MPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RatFun::from_coprime(num, den)
    }
}

/// Panics on division by zero; use [`RatFun::checked_div`] for a fallible form.
impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.num_vars_used() <= 1))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
