//! Linear differential operators `K[d1, ..., dm]`.
//!
//! Operators are written with coefficients on the left, `sum c_theta * theta`,
//! and multiply according to `d_i * a = a * d_i + d_i(a)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{DiffFieldConfig, RatFun};

/// A derivative operator `theta = d1^k1 ... dm^km`, stored as its exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivMonomial(Vec<u32>);

impl DerivMonomial {
    pub fn identity(m: usize) -> Self {
        Self(vec![0; m])
    }

    /// `d_{i+1}` in a ring with `m` derivations.
    pub fn delta(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        Self(v)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Whether `self` divides `other`, i.e. `other = sigma * self` for some `sigma`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_incremented(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        Self(v)
    }

    pub(crate) fn render(&self) -> String {
        let single = self.0.len() == 1;
        let mut parts = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            let name = if single {
                "d".to_string()
            } else {
                format!("d{}", i + 1)
            };
            match k {
                0 => {}
                1 => parts.push(name),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for DerivMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("1")
        } else {
            f.write_str(&self.render())
        }
    }
}

/// An element of `K[d1, ..., dm]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrePoly {
    cfg: DiffFieldConfig,
    terms: BTreeMap<DerivMonomial, RatFun>,
}

impl OrePoly {
    pub fn zero(cfg: DiffFieldConfig) -> Self {
        Self {
            cfg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cfg: DiffFieldConfig) -> Self {
        Self::scalar(cfg, RatFun::one())
    }

    pub fn scalar(cfg: DiffFieldConfig, a: RatFun) -> Self {
        Self::term(cfg, DerivMonomial::identity(cfg.num_derivations()), a)
    }

    /// The operator `d_{i+1}`.
    pub fn delta(cfg: DiffFieldConfig, i: usize) -> Self {
        Self::term(
            cfg,
            DerivMonomial::delta(cfg.num_derivations(), i),
            RatFun::one(),
        )
    }

    pub fn term(cfg: DiffFieldConfig, theta: DerivMonomial, c: RatFun) -> Self {
        assert_eq!(theta.len(), cfg.num_derivations(), "monomial length");
        let mut p = Self::zero(cfg);
        p.add_term(theta, c);
        p
    }

    pub fn from_terms(
        cfg: DiffFieldConfig,
        terms: impl IntoIterator<Item = (DerivMonomial, RatFun)>,
    ) -> Self {
        let mut p = Self::zero(cfg);
        for (theta, c) in terms {
            assert_eq!(theta.len(), cfg.num_derivations(), "monomial length");
            p.add_term(theta, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, theta: DerivMonomial, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(theta) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn config(&self) -> DiffFieldConfig {
        self.cfg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DerivMonomial, &RatFun)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, theta: &DerivMonomial) -> RatFun {
        self.terms.get(theta).cloned().unwrap_or_default()
    }

    /// Highest order of a term, `None` for the zero operator.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.order()).max()
    }

    /// Leading coefficient with respect to a single derivation.
    fn leading_coeff_ordinary(&self) -> RatFun {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Whether this is a nonzero element of `K`.
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn as_scalar(&self) -> Option<RatFun> {
        match self.degree() {
            None => Some(RatFun::zero()),
            Some(0) => Some(self.coeff(&DerivMonomial::identity(self.cfg.num_derivations()))),
            _ => None,
        }
    }

    /// Left multiplication by a field element.
    pub fn scale_left(&self, a: &RatFun) -> Self {
        if a.is_zero() {
            return Self::zero(self.cfg);
        }
        Self {
            cfg: self.cfg,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), a * c))
                .collect(),
        }
    }

    /// `d_{i+1} * self`.
    pub fn delta_left(&self, i: usize) -> Self {
        let mut out = Self::zero(self.cfg);
        for (theta, c) in &self.terms {
            out.add_term(theta.with_incremented(i), c.clone());
            let dc = self.cfg.derive_unchecked(c, i);
            out.add_term(theta.clone(), dc);
        }
        out
    }

    /// `theta * self`, by repeated single-derivation commutation.
    pub fn monomial_left(&self, theta: &DerivMonomial) -> Self {
        let mut out = self.clone();
        for (i, &k) in theta.exponents().iter().enumerate() {
            for _ in 0..k {
                out = out.delta_left(i);
            }
        }
        out
    }

    /// Product in `K[Delta]`; errors if the operands live over different fields.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cfg != other.cfg {
            return Err(Error::ConfigMismatch(format!(
                "{:?} vs {:?}",
                self.cfg, other.cfg
            )));
        }
        let mut out = Self::zero(self.cfg);
        let mut cache: BTreeMap<DerivMonomial, OrePoly> = BTreeMap::new();
        cache.insert(DerivMonomial::identity(self.cfg.num_derivations()), other.clone());
        for (theta, c) in &self.terms {
            let prod = derivative_of(theta, &mut cache);
            for (t, x) in &prod.terms {
                out.add_term(t.clone(), c * x);
            }
        }
        Ok(out)
    }

    /// The formal adjoint `sum (-1)^|theta| theta * c_theta`, an anti-automorphism:
    /// `(p q)^* = q^* p^*`. It turns right submodules into left ones.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.cfg);
        for (theta, c) in &self.terms {
            let c = if theta.order() % 2 == 0 { c.clone() } else { -c };
            for (t, x) in &Self::scalar(self.cfg, c).monomial_left(theta).terms {
                out.add_term(t.clone(), x.clone());
            }
        }
        out
    }

    /// Applies the operator to a field element: `sum c_theta * theta(a)`.
    pub fn apply(&self, a: &RatFun) -> RatFun {
        let mut out = RatFun::zero();
        for (theta, c) in &self.terms {
            let da = self.cfg.derive_multi(a, theta.exponents());
            out = &out + &(c * &da);
        }
        out
    }

    /// Euclidean division for a single derivation.
    ///
    /// `Side::Right` returns `(q, r)` with `self = q*g + r`; `Side::Left` returns
    /// `self = g*q + r`. In both cases `deg r < deg g`.
    pub fn divmod(&self, g: &Self, side: Side) -> Result<(Self, Self)> {
        if self.cfg != g.cfg {
            return Err(Error::ConfigMismatch(format!(
                "{:?} vs {:?}",
                self.cfg, g.cfg
            )));
        }
        if self.cfg.num_derivations() != 1 {
            return Err(Error::UnsupportedForPartial);
        }
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lg_inv = g.leading_coeff_ordinary().inv()?;
        let mut q = Self::zero(self.cfg);
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let c = &r.leading_coeff_ordinary() * &lg_inv;
            let t = Self::term(self.cfg, DerivMonomial(vec![dr - dg]), c);
            let sub = match side {
                Side::Right => &t * g,
                Side::Left => g * &t,
            };
            r = &r - &sub;
            q = &q + &t;
        }
        Ok((q, r))
    }

    /// Text form with coefficients on the left: `t*d^2 - d + 1/t`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let single = self.cfg.single_var_names()
            && self.terms.values().all(|c| c.num_vars_used() <= 1);
        let mut out = String::new();
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| b.order().cmp(&a.order()).then(b.cmp(a)));
        for (idx, (theta, c)) in keys.into_iter().enumerate() {
            render_term(&mut out, idx == 0, c, &theta.render(), single);
        }
        out
    }
}

/// Appends `c * mono` to a sum being rendered.
pub(crate) fn render_term(out: &mut String, first: bool, c: &RatFun, mono: &str, single: bool) {
    let (neg, mag) = if c.is_negative_term() {
        (true, -c)
    } else {
        (false, c.clone())
    };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        if mag.needs_parens() && !first {
            out.push_str(&format!("({})", mag.render(single)));
        } else {
            out.push_str(&mag.render(single));
        }
    } else if mag.is_one() {
        out.push_str(mono);
    } else if mag.needs_parens() {
        out.push_str(&format!("({})*{}", mag.render(single), mono));
    } else {
        out.push_str(&format!("{}*{}", mag.render(single), mono));
    }
}

fn derivative_of(
    theta: &DerivMonomial,
    cache: &mut BTreeMap<DerivMonomial, OrePoly>,
) -> OrePoly {
    if let Some(p) = cache.get(theta) {
        return p.clone();
    }
    let i = theta
        .exponents()
        .iter()
        .position(|&k| k > 0)
        .expect("identity is always cached");
    let mut prev = theta.exponents().to_vec();
    prev[i] -= 1;
    let p = derivative_of(&DerivMonomial(prev), cache).delta_left(i);
    cache.insert(theta.clone(), p.clone());
    p
}

/// Side of Euclidean division.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        assert_eq!(self.cfg, rhs.cfg, "operators over different fields");
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        assert_eq!(self.cfg, rhs.cfg, "operators over different fields");
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly {
            cfg: self.cfg,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }
}

/// Panics on mismatched configurations; [`OrePoly::checked_mul`] is the fallible form.
impl Mul for &OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        self.checked_mul(rhs).expect("operators over different fields")
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
