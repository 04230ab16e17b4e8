//! Differential dimension polynomials of `K[Delta]^n / N`, read off the leaders
//! of a characteristic set of `N` under an orderly ranking.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::diffmodule::CharSet;
use crate::error::{Error, Result};
use crate::numpoly::{bigint_json, count_cofilter, type_and_heights, Antichain, NumericalPolynomial};
use crate::scalars::DiffFieldConfig;

fn check(c: &CharSet, cfg: DiffFieldConfig) -> Result<()> {
    if !c.ranking().is_orderly() {
        return Err(Error::OrderlyRequired);
    }
    if c.elements().iter().any(|e| e.config() != cfg) {
        return Err(Error::ConfigMismatch(
            "characteristic set over a different field".into(),
        ));
    }
    Ok(())
}

/// Leader exponents grouped by component.
pub fn leader_antichain(c: &CharSet, cfg: DiffFieldConfig) -> Result<Antichain> {
    let mut sets = vec![Vec::new(); c.rank()];
    for u in c.leaders() {
        sets[u.component].push(u.theta.exponents().to_vec());
    }
    Antichain::new(cfg.num_derivations(), sets)
}

/// `phi(k) = dim_K M_k`, counting the terms of order `<= k` below no leader.
pub fn dimension_polynomial(c: &CharSet, cfg: DiffFieldConfig) -> Result<NumericalPolynomial> {
    check(c, cfg)?;
    Ok(count_cofilter(&leader_antichain(c, cfg)?))
}

/// Components carrying no leader, i.e. a differentially free part.
fn unled_components(c: &CharSet) -> Vec<usize> {
    (0..c.rank())
        .filter(|&i| c.leaders().iter().all(|u| u.component != i))
        .collect()
}

/// The differential dimension, computed both as the top binomial coefficient
/// of `phi` and as the number of components without leaders.
pub fn diff_dimension(c: &CharSet, cfg: DiffFieldConfig) -> Result<usize> {
    let phi = dimension_polynomial(c, cfg)?;
    let from_poly = phi.coeff(cfg.num_derivations());
    let from_leaders = unled_components(c).len();
    if from_poly != BigInt::from(from_leaders) {
        return Err(Error::Internal(format!(
            "differential dimension mismatch: {from_poly} vs {from_leaders}"
        )));
    }
    Ok(from_leaders)
}

/// For one derivation: the free generators and the number `B` of terms strictly
/// below the leaders, which is the `K`-dimension of the quotient by the free part.
pub fn free_split(c: &CharSet, cfg: DiffFieldConfig) -> Result<(Vec<usize>, usize)> {
    if cfg.num_derivations() != 1 {
        return Err(Error::UnsupportedForPartial);
    }
    check(c, cfg)?;
    let below = c.leaders().iter().map(|u| u.order() as usize).sum();
    Ok((unled_components(c), below))
}

/// Everything the dimension module knows about `K[Delta]^n / N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dimpoly: NumericalPolynomial,
    pub diff_dimension: usize,
    /// Degree of `phi`; `None` when `phi = 0`.
    pub diff_type: Option<usize>,
    pub typical_height: BigInt,
    /// Zero-based indices of the components without leaders.
    pub free_components: Vec<usize>,
    /// `B`, one derivation only.
    pub below_leader_count: Option<usize>,
    /// The constant term `r` of `phi` in the monomial basis, one derivation only.
    pub free_term: Option<BigInt>,
}

impl DimensionReport {
    pub fn new(c: &CharSet, cfg: DiffFieldConfig) -> Result<Self> {
        let dimpoly = dimension_polynomial(c, cfg)?;
        let diff_dimension = diff_dimension(c, cfg)?;
        let th = type_and_heights(&dimpoly, cfg.num_derivations())?;
        let (free_components, below_leader_count, free_term) = if cfg.num_derivations() == 1 {
            let (free, b) = free_split(c, cfg)?;
            // phi(t) = d (t + 1) + B
            let r = dimpoly.coeff(0) + dimpoly.coeff(1);
            if dimpoly.coeff(0) != BigInt::from(b) {
                return Err(Error::Internal(format!(
                    "phi = {dimpoly} disagrees with B = {b}"
                )));
            }
            (free, Some(b), Some(r))
        } else {
            (unled_components(c), None, None)
        };
        Ok(Self {
            dimpoly,
            diff_dimension,
            diff_type: th.diff_type,
            typical_height: th.typical_height,
            free_components,
            below_leader_count,
            free_term,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension_polynomial": self.dimpoly.to_json(),
            "diff_dimension": self.diff_dimension,
            "type": self.diff_type,
            "typical_height": bigint_json(&self.typical_height),
            "free_components": self.free_components.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "below_leader_count": self.below_leader_count,
            "free_term": self.free_term.as_ref().map(bigint_json),
        })
    }

    /// `r` as a machine integer, when defined.
    pub fn free_term_i64(&self) -> Option<i64> {
        self.free_term.as_ref().and_then(|r| r.to_i64())
    }
}
