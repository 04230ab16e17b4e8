//! The differential base field `K = Q(t1, ..., tv)`.
//!
//! `K` carries `m` commuting derivations; derivation `i` acts as `d/dt_{i+1}`
//! when `i < v` and as zero otherwise, so `v = 0` gives a field of constants.

mod mpoly;
mod ratfun;
mod upoly;

pub use mpoly::{Exponent, MPoly};
pub use ratfun::RatFun;

#[allow(unused_imports)]
pub(crate) use mpoly::fmt_rational;

use crate::error::{Error, Result};

/// Number of derivations `m` and number of field variables `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiffFieldConfig {
    num_derivations: usize,
    num_vars: usize,
}

impl DiffFieldConfig {
    pub fn new(num_derivations: usize, num_vars: usize) -> Result<Self> {
        if num_derivations == 0 {
            return Err(Error::InvalidConfig(
                "at least one derivation is required".into(),
            ));
        }
        if num_vars > num_derivations {
            return Err(Error::InvalidConfig(format!(
                "{num_vars} field variables but only {num_derivations} derivations"
            )));
        }
        Ok(Self {
            num_derivations,
            num_vars,
        })
    }

    /// `Q(t)` with `d = d/dt`.
    pub fn ordinary() -> Self {
        Self {
            num_derivations: 1,
            num_vars: 1,
        }
    }

    pub fn num_derivations(&self) -> usize {
        self.num_derivations
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Applies derivation `i` (zero-based).
    pub fn derive(&self, a: &RatFun, i: usize) -> Result<RatFun> {
        if i >= self.num_derivations {
            return Err(Error::BadDerivation {
                index: i,
                count: self.num_derivations,
            });
        }
        Ok(self.derive_unchecked(a, i))
    }

    pub(crate) fn derive_unchecked(&self, a: &RatFun, i: usize) -> RatFun {
        if i >= self.num_vars {
            RatFun::zero()
        } else {
            a.partial(i)
        }
    }

    /// Applies `d1^k1 ... dm^km`.
    pub(crate) fn derive_multi(&self, a: &RatFun, exps: &[u32]) -> RatFun {
        let mut out = a.clone();
        for (i, &k) in exps.iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = self.derive_unchecked(&out, i);
            }
        }
        out
    }

    /// Whether variables print as the single name `t`.
    pub(crate) fn single_var_names(&self) -> bool {
        self.num_vars <= 1
    }

    pub fn fmt_scalar(&self, a: &RatFun) -> String {
        a.render(self.single_var_names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn config_validation() {
        assert!(DiffFieldConfig::new(0, 0).is_err());
        assert!(DiffFieldConfig::new(1, 2).is_err());
        assert!(DiffFieldConfig::new(2, 0).is_ok());
    }

    #[test]
    fn derivation_examples() {
        let cfg = DiffFieldConfig::new(2, 2).unwrap();
        let t1 = RatFun::var(0);
        assert!(cfg.derive(&t1, 1).unwrap().is_zero());
        assert!(cfg.derive(&t1, 0).unwrap().is_one());
        assert_eq!(
            cfg.derive(&t1, 2),
            Err(Error::BadDerivation { index: 2, count: 2 })
        );
        let constants = DiffFieldConfig::new(1, 0).unwrap();
        assert!(constants.derive(&t1, 0).unwrap().is_zero());
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..4).prop_map(|terms| {
            MPoly::from_terms(terms.into_iter().map(|((a, b), c)| {
                (
                    vec![a, b],
                    num_rational::BigRational::from_integer(c.into()),
                )
            }))
        })
    }

    fn small_ratfun() -> impl Strategy<Value = RatFun> {
        (small_poly(), small_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFun::normalize(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn derivation_axioms(a in small_ratfun(), b in small_ratfun()) {
            let cfg = DiffFieldConfig::new(2, 2).unwrap();
            for i in 0..2 {
                let d = |x: &RatFun| cfg.derive(x, i).unwrap();
                prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
                prop_assert_eq!(d(&(&a * &b)), &(&a * &d(&b)) + &(&b * &d(&a)));
            }
            let d01 = cfg.derive(&cfg.derive(&a, 0).unwrap(), 1).unwrap();
            let d10 = cfg.derive(&cfg.derive(&a, 1).unwrap(), 0).unwrap();
            prop_assert_eq!(d01, d10);
        }
    }
}
