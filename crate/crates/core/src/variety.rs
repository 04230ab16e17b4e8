//! Differential polynomials over `K`, `K`-rational points, linearization and
//! the tangent-space pipeline.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::diffmodule::{characteristic_set, CharSet, ModElement, ModTerm, Ranking, RankingKind};
use crate::dimension::DimensionReport;
use crate::error::{Error, Result};
use crate::normalform::{classify_tangent, OreMatrix, TangentClass};
use crate::ore::{render_term, DerivMonomial};
use crate::scalars::{DiffFieldConfig, RatFun};

/// A power product of indeterminates `theta y_i`.
pub type DiffMonomial = BTreeMap<ModTerm, u32>;

/// An element of `K{y_1, ..., y_n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    cfg: DiffFieldConfig,
    rank: usize,
    terms: BTreeMap<DiffMonomial, RatFun>,
}

impl DiffPoly {
    pub fn zero(cfg: DiffFieldConfig, rank: usize) -> Self {
        Self {
            cfg,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(cfg: DiffFieldConfig, rank: usize, c: RatFun) -> Self {
        let mut p = Self::zero(cfg, rank);
        p.add_term(DiffMonomial::new(), c);
        p
    }

    /// The indeterminate `theta y_{i+1}`.
    pub fn indeterminate(cfg: DiffFieldConfig, rank: usize, u: ModTerm) -> Self {
        assert!(u.component < rank, "indeterminate outside the rank");
        assert_eq!(u.theta.len(), cfg.num_derivations(), "monomial length");
        let mut p = Self::zero(cfg, rank);
        p.add_term(DiffMonomial::from([(u, 1)]), RatFun::one());
        p
    }

    /// `y_{i+1}` itself.
    pub fn var(cfg: DiffFieldConfig, rank: usize, i: usize) -> Self {
        Self::indeterminate(
            cfg,
            rank,
            ModTerm::new(i, DerivMonomial::identity(cfg.num_derivations())),
        )
    }

    fn add_term(&mut self, mono: DiffMonomial, c: RatFun) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn config(&self) -> DiffFieldConfig {
        self.cfg
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &RatFun)> {
        self.terms.iter()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.cfg, self.rank, RatFun::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = Self::zero(self.cfg, self.rank);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), c * x);
        }
        out
    }

    fn check_point(&self, x: &VarietyPoint) -> Result<()> {
        if x.coords.len() != self.rank {
            return Err(Error::ConfigMismatch(format!(
                "point has {} coordinates, expected {}",
                x.coords.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// Substitutes `theta y_i -> theta(x_i)`.
    pub fn eval(&self, x: &VarietyPoint) -> Result<RatFun> {
        self.check_point(x)?;
        let mut cache = BTreeMap::new();
        let mut out = RatFun::zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for (u, &e) in mono {
                let xu = x.derivative(self.cfg, u, &mut cache);
                v = &v * &xu.pow(e as i64)?;
            }
            out = &out + &v;
        }
        Ok(out)
    }

    /// Applies `d_{i+1}` by the Leibniz rule.
    pub fn formal_derive(&self, i: usize) -> Result<Self> {
        if i >= self.cfg.num_derivations() {
            return Err(Error::BadDerivation {
                index: i,
                count: self.cfg.num_derivations(),
            });
        }
        let mut out = Self::zero(self.cfg, self.rank);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), self.cfg.derive_unchecked(c, i));
            for (u, &e) in mono {
                let mut m = mono.clone();
                if e == 1 {
                    m.remove(u);
                } else {
                    m.insert(u.clone(), e - 1);
                }
                let du = ModTerm::new(u.component, u.theta.with_incremented(i));
                *m.entry(du).or_default() += 1;
                out.add_term(m, c.scale(&num_rational::BigRational::from_integer(e.into())));
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to the indeterminate `u`.
    pub fn partial(&self, u: &ModTerm) -> Self {
        let mut out = Self::zero(self.cfg, self.rank);
        for (mono, c) in &self.terms {
            if let Some(&e) = mono.get(u) {
                let mut m = mono.clone();
                if e == 1 {
                    m.remove(u);
                } else {
                    m.insert(u.clone(), e - 1);
                }
                out.add_term(m, c.scale(&num_rational::BigRational::from_integer(e.into())));
            }
        }
        out
    }

    /// Indeterminates occurring in the polynomial.
    pub fn indeterminates(&self) -> Vec<ModTerm> {
        let mut v: Vec<ModTerm> = self.terms.keys().flat_map(|m| m.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `df` at `x`: the coefficient of `theta e_i` is `(df / d(theta y_i))(x)`.
    pub fn linearize_at(&self, x: &VarietyPoint) -> Result<ModElement> {
        self.check_point(x)?;
        let mut out = ModElement::zero(self.cfg, self.rank);
        for u in self.indeterminates() {
            let c = self.partial(&u).eval(x)?;
            out = &out + &ModElement::term(self.cfg, self.rank, u, c);
        }
        Ok(out)
    }

    /// Text form using the given variable names: `z*y' - y`, `y_(1,2)`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let single = self.cfg.single_var_names()
            && self.terms.values().all(|c| c.num_vars_used() <= 1);
        let mut out = String::new();
        // total degree first, then the monomial order, both descending
        let mut terms: Vec<_> = self.terms.iter().collect();
        let degree = |m: &DiffMonomial| m.values().sum::<u32>();
        terms.sort_by(|(a, _), (b, _)| degree(b).cmp(&degree(a)).then(b.cmp(a)));
        for (idx, (mono, c)) in terms.into_iter().enumerate() {
            let factors: Vec<String> = mono
                .iter()
                .map(|(u, &e)| {
                    let base = render_indeterminate(u, &names[u.component]);
                    if e == 1 {
                        base
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            render_term(&mut out, idx == 0, c, &factors.join("*"), single);
        }
        out
    }
}

/// `y`, `y'`, `y''` for one derivation; `y_(a,b)` otherwise.
pub fn render_indeterminate(u: &ModTerm, name: &str) -> String {
    let exps = u.theta.exponents();
    if u.theta.is_identity() {
        name.to_string()
    } else if exps.len() == 1 {
        format!("{name}{}", "'".repeat(exps[0] as usize))
    } else {
        let parts: Vec<String> = exps.iter().map(|k| k.to_string()).collect();
        format!("{name}_({})", parts.join(","))
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        assert_eq!((self.cfg, self.rank), (rhs.cfg, rhs.rank), "incompatible differential polynomials");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            cfg: self.cfg,
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self + &(-rhs)
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        assert_eq!((self.cfg, self.rank), (rhs.cfg, rhs.rank), "incompatible differential polynomials");
        let mut out = DiffPoly::zero(self.cfg, self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut m = a.clone();
                for (u, e) in b {
                    *m.entry(u.clone()).or_default() += e;
                }
                out.add_term(m, x * y);
            }
        }
        out
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.rank).map(|i| format!("y{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// A point of `K^n`; derivatives of coordinates come from the field derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPoint {
    coords: Vec<RatFun>,
}

impl VarietyPoint {
    pub fn new(coords: Vec<RatFun>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[RatFun] {
        &self.coords
    }

    fn derivative(
        &self,
        cfg: DiffFieldConfig,
        u: &ModTerm,
        cache: &mut BTreeMap<ModTerm, RatFun>,
    ) -> RatFun {
        cache
            .entry(u.clone())
            .or_insert_with(|| cfg.derive_multi(&self.coords[u.component], u.theta.exponents()))
            .clone()
    }
}

/// Everything computed about the tangent module at a point.
#[derive(Clone, Debug)]
pub struct TangentReport {
    /// The linearizations `df_j` at the point.
    pub linearizations: Vec<ModElement>,
    /// Characteristic set under the requested ranking.
    pub charset: CharSet,
    pub dimension: DimensionReport,
    /// `None` with more than one derivation.
    pub tangent: Option<TangentClass>,
}

/// Linearizes `eqs` at `x`, completes the result to a characteristic set and
/// classifies the quotient module. The dimension report always uses the orderly
/// ranking with the requested component order.
pub fn tangent_pipeline(eqs: &[DiffPoly], x: &VarietyPoint, rk: &Ranking) -> Result<TangentReport> {
    let n = x.coords().len();
    let cfg = match eqs.first() {
        Some(f) => f.config(),
        None => {
            return Err(Error::InvalidConfig("no equations given".into()));
        }
    };
    for (index, f) in eqs.iter().enumerate() {
        if f.config() != cfg {
            return Err(Error::ConfigMismatch("equations over different fields".into()));
        }
        let v = f.eval(x)?;
        if !v.is_zero() {
            return Err(Error::PointNotOnVariety {
                index,
                value: cfg.fmt_scalar(&v),
            });
        }
    }
    let lin = eqs
        .iter()
        .map(|f| f.linearize_at(x))
        .collect::<Result<Vec<_>>>()?;
    let charset = characteristic_set(&lin, rk)?;
    let dimension = if rk.is_orderly() {
        DimensionReport::new(&charset, cfg)?
    } else {
        let orderly = Ranking::with_order(RankingKind::Orderly, rk.component_order().to_vec())?;
        DimensionReport::new(&characteristic_set(&lin, &orderly)?, cfg)?
    };
    let tangent = if cfg.num_derivations() == 1 {
        Some(classify_tangent(&OreMatrix::from_columns(cfg, n, &lin)?)?)
    } else {
        None
    };
    Ok(TangentReport {
        linearizations: lin,
        charset,
        dimension,
        tangent,
    })
}
