use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::ore::{DerivMonomial, OrePoly};
use crate::scalars::{DiffFieldConfig, RatFun};

/// The derivative term `theta e_i` (component index is zero-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModTerm {
    pub component: usize,
    pub theta: DerivMonomial,
}

impl ModTerm {
    pub fn new(component: usize, theta: DerivMonomial) -> Self {
        Self { component, theta }
    }

    /// Whether `self` is a derivative of `other` (the identity included).
    pub fn is_derivative_of(&self, other: &ModTerm) -> bool {
        self.component == other.component && other.theta.divides(&self.theta)
    }

    pub fn order(&self) -> u32 {
        self.theta.order()
    }
}

impl fmt::Debug for ModTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta.is_identity() {
            write!(f, "e{}", self.component + 1)
        } else {
            write!(f, "{:?}e{}", self.theta, self.component + 1)
        }
    }
}

/// An element of the free module `K[Delta]^n`: one operator per basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModElement {
    cfg: DiffFieldConfig,
    comps: Vec<OrePoly>,
}

impl ModElement {
    pub fn zero(cfg: DiffFieldConfig, rank: usize) -> Self {
        Self {
            cfg,
            comps: vec![OrePoly::zero(cfg); rank],
        }
    }

    /// The basis vector `e_{i+1}`.
    pub fn basis(cfg: DiffFieldConfig, rank: usize, i: usize) -> Self {
        Self::term(cfg, rank, ModTerm::new(i, DerivMonomial::identity(cfg.num_derivations())), RatFun::one())
    }

    pub fn term(cfg: DiffFieldConfig, rank: usize, term: ModTerm, c: RatFun) -> Self {
        let mut out = Self::zero(cfg, rank);
        out.comps[term.component] = OrePoly::term(cfg, term.theta, c);
        out
    }

    /// Builds an element from its component operators.
    pub fn from_components(comps: Vec<OrePoly>) -> Result<Self> {
        let cfg = comps
            .first()
            .map(|p| p.config())
            .ok_or_else(|| Error::ConfigMismatch("module of rank zero".into()))?;
        if comps.iter().any(|p| p.config() != cfg) {
            return Err(Error::ConfigMismatch(
                "components over different fields".into(),
            ));
        }
        Ok(Self { cfg, comps })
    }

    pub fn config(&self) -> DiffFieldConfig {
        self.cfg
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[OrePoly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &OrePoly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (ModTerm, &RatFun)> + '_ {
        self.comps.iter().enumerate().flat_map(|(i, p)| {
            p.terms()
                .map(move |(theta, c)| (ModTerm::new(i, theta.clone()), c))
        })
    }

    pub fn coeff(&self, term: &ModTerm) -> RatFun {
        self.comps[term.component].coeff(&term.theta)
    }

    /// Highest order of any term.
    pub fn order(&self) -> Option<u32> {
        self.comps.iter().filter_map(|p| p.degree()).max()
    }

    pub fn scale_left(&self, a: &RatFun) -> Self {
        Self {
            cfg: self.cfg,
            comps: self.comps.iter().map(|p| p.scale_left(a)).collect(),
        }
    }

    /// Left action of an operator: `f * (w_1, ..., w_n) = (f w_1, ..., f w_n)`.
    pub fn mul_left(&self, f: &OrePoly) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .map(|p| f.checked_mul(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cfg: self.cfg,
            comps,
        })
    }

    /// `theta * self`.
    pub fn monomial_left(&self, theta: &DerivMonomial) -> Self {
        Self {
            cfg: self.cfg,
            comps: self.comps.iter().map(|p| p.monomial_left(theta)).collect(),
        }
    }

    /// Evaluates the linear differential function at a point: `sum_i w_i(x_i)`.
    pub fn eval_point(&self, x: &[RatFun]) -> Result<RatFun> {
        if x.len() != self.rank() {
            return Err(Error::ConfigMismatch(format!(
                "point has {} coordinates, module has rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(self
            .comps
            .iter()
            .zip(x)
            .fold(RatFun::zero(), |acc, (p, xi)| &acc + &p.apply(xi)))
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.cfg, other.cfg, "module elements over different fields");
        assert_eq!(self.rank(), other.rank(), "module elements of different rank");
    }

    /// Vector form `[op_1, ..., op_n]`, accepted back by the input grammar.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.render()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Add for &ModElement {
    type Output = ModElement;
    fn add(self, rhs: &ModElement) -> ModElement {
        self.check_compatible(rhs);
        ModElement {
            cfg: self.cfg,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ModElement {
    type Output = ModElement;
    fn sub(self, rhs: &ModElement) -> ModElement {
        self.check_compatible(rhs);
        ModElement {
            cfg: self.cfg,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ModElement {
    type Output = ModElement;
    fn neg(self) -> ModElement {
        ModElement {
            cfg: self.cfg,
            comps: self.comps.iter().map(|p| -p).collect(),
        }
    }
}

impl fmt::Display for ModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
