//! Free differential modules `K[Delta]^n`, rankings, reduction and
//! characteristic sets of finitely generated submodules.

mod charset;
mod element;
mod ranking;
mod reduce;

pub use charset::{characteristic_set, rank_le, CharSet};
pub use element::{ModElement, ModTerm};
pub use ranking::{Ranking, RankingKind};
pub use reduce::{autoreduce, compare_autoreduced, reduce, reduce_with_cofactors, AutoreducedSet};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{DerivMonomial, OrePoly};
    use crate::scalars::{DiffFieldConfig, RatFun};
    use std::cmp::Ordering;

    fn cfg() -> DiffFieldConfig {
        DiffFieldConfig::ordinary()
    }

    fn d(k: u32) -> DerivMonomial {
        DerivMonomial::from_exponents(vec![k])
    }

    /// `c * d^k e_i` in rank `n`.
    fn tm(n: usize, i: usize, k: u32, c: RatFun) -> ModElement {
        ModElement::term(cfg(), n, ModTerm::new(i, d(k)), c)
    }

    fn one() -> RatFun {
        RatFun::one()
    }

    fn t() -> RatFun {
        RatFun::var(0)
    }

    fn sum(xs: &[ModElement]) -> ModElement {
        xs.iter().skip(1).fold(xs[0].clone(), |a, b| &a + b)
    }

    #[test]
    fn leader_examples() {
        let rk = Ranking::orderly(2);
        let w = sum(&[tm(2, 1, 1, t()), tm(2, 0, 0, one())]);
        assert_eq!(rk.leader(&w).unwrap(), ModTerm::new(1, d(1)));
        let w = sum(&[tm(2, 0, 0, one()), tm(2, 1, 0, one())]);
        assert_eq!(rk.leader(&w).unwrap(), ModTerm::new(1, d(0)));
        let el = Ranking::elimination(2);
        let w = sum(&[tm(2, 0, 3, one()), tm(2, 1, 0, one())]);
        assert_eq!(el.leader(&w).unwrap(), ModTerm::new(1, d(0)));
        assert_eq!(
            rk.leader(&ModElement::zero(cfg(), 2)),
            Err(crate::Error::ZeroElement)
        );
    }

    #[test]
    fn reduce_examples() {
        let rk = Ranking::orderly(2);
        let g = &tm(2, 0, 1, one()) - &tm(2, 1, 0, one());
        let w = sum(&[tm(2, 0, 2, one()), tm(2, 0, 0, one())]);
        let r = reduce(&w, &[g.clone()], &rk).unwrap();
        assert_eq!(r, sum(&[tm(2, 1, 1, one()), tm(2, 0, 0, one())]));
        // cofactor is d
        let (r2, cof) = reduce_with_cofactors(&w, &[g.clone()], &rk).unwrap();
        assert_eq!(r2, r);
        assert_eq!(cof[0], OrePoly::delta(cfg(), 0));
        assert!(reduce(&g, &[g.clone()], &rk).unwrap().is_zero());
        let e2 = tm(2, 1, 0, one());
        assert_eq!(reduce(&e2, &[tm(2, 1, 1, one())], &rk).unwrap(), e2);
    }

    #[test]
    fn autoreduce_examples() {
        let rk = Ranking::orderly(2);
        let g = &tm(2, 0, 1, one()) - &tm(2, 1, 0, one());
        let a = autoreduce(&[g.clone(), tm(2, 0, 2, one())], &rk).unwrap();
        assert_eq!(a.elements(), &[g, tm(2, 1, 1, one())]);
        assert!(a.is_autoreduced());
        let a = autoreduce(&[tm(1, 0, 0, one())], &Ranking::orderly(1)).unwrap();
        assert_eq!(a.elements(), &[tm(1, 0, 0, one())]);
        let a = autoreduce(
            &[tm(1, 0, 0, RatFun::from_int(2)), tm(1, 0, 0, RatFun::from_int(3))],
            &Ranking::orderly(1),
        )
        .unwrap();
        assert_eq!(a.elements(), &[tm(1, 0, 0, one())]);
        assert!(autoreduce(&[], &rk).unwrap().is_empty());
    }

    #[test]
    fn compare_examples() {
        let rk = Ranking::orderly(2);
        let set = |v: &[ModElement]| autoreduce(v, &rk).unwrap();
        let a = set(&[tm(2, 0, 0, one())]);
        let b = set(&[tm(2, 0, 1, one())]);
        assert_eq!(compare_autoreduced(&a, &b).unwrap(), Ordering::Less);
        let a2 = set(&[tm(2, 0, 0, one()), tm(2, 1, 1, one())]);
        assert_eq!(compare_autoreduced(&a2, &a).unwrap(), Ordering::Less);
        assert_eq!(compare_autoreduced(&a, &a2).unwrap(), Ordering::Greater);
        let a3 = set(&[sum(&[tm(2, 0, 0, one()), tm(2, 1, 0, t())])]);
        // leader of e1 + t e2 is e2 under this ranking; compare with {e2}
        let b3 = set(&[tm(2, 1, 0, one())]);
        assert_eq!(compare_autoreduced(&a3, &b3).unwrap(), Ordering::Equal);
        let other = autoreduce(&[tm(2, 0, 0, one())], &Ranking::elimination(2)).unwrap();
        assert!(compare_autoreduced(&a, &other).is_err());
    }

    #[test]
    fn characteristic_set_examples() {
        // components (z, y) = (e1, e2); relation t*dy' + dz - dy
        let rk = Ranking::orderly(2);
        let g = sum(&[
            tm(2, 1, 1, t()),
            tm(2, 0, 0, one()),
            tm(2, 1, 0, RatFun::from_int(-1)),
        ]);
        let cs = characteristic_set(&[g], &rk).unwrap();
        let inv_t = t().inv().unwrap();
        let expected = sum(&[
            tm(2, 1, 1, one()),
            tm(2, 0, 0, inv_t.clone()),
            tm(2, 1, 0, -&inv_t),
        ]);
        assert_eq!(cs.elements(), &[expected]);
        assert!(cs.is_complete());

        let rk1 = Ranking::orderly(1);
        let a = &tm(1, 0, 1, one()) - &tm(1, 0, 0, one());
        let b = &tm(1, 0, 1, one()) + &tm(1, 0, 0, one());
        let cs = characteristic_set(&[a, b], &rk1).unwrap();
        assert_eq!(cs.elements(), &[tm(1, 0, 0, one())]);

        assert!(characteristic_set(&[], &rk).unwrap().is_empty());
    }

    #[test]
    fn eval_point_examples() {
        let xi = ModElement::from_components(vec![
            OrePoly::delta(cfg(), 0),
            OrePoly::scalar(cfg(), RatFun::from_int(-1)),
        ])
        .unwrap();
        assert!(xi.eval_point(&[t(), one()]).unwrap().is_zero());
        assert!(ModElement::zero(cfg(), 2)
            .eval_point(&[t(), one()])
            .unwrap()
            .is_zero());
        assert!(xi.eval_point(&[t()]).is_err());
        // (1, t*d - 1) at (y - t*y', y) with y = t^2
        let y = &t() * &t();
        let x = vec![&y - &(&t() * &y.partial(0)), y.clone()];
        let tangent = ModElement::from_components(vec![
            OrePoly::one(cfg()),
            &OrePoly::term(cfg(), d(1), t()) - &OrePoly::one(cfg()),
        ])
        .unwrap();
        assert!(tangent.eval_point(&x).unwrap().is_zero());
    }

    #[test]
    fn member_examples() {
        let rk = Ranking::orderly(2);
        let g = &tm(2, 0, 1, one()) - &tm(2, 1, 0, one());
        let cs = characteristic_set(&[g], &rk).unwrap();
        assert!(cs.member(&(&tm(2, 0, 2, one()) - &tm(2, 1, 1, one()))).unwrap());
        let cs = characteristic_set(&[tm(2, 0, 1, one())], &rk).unwrap();
        assert!(!cs.member(&tm(2, 0, 0, one())).unwrap());
        // {de1 - e2, de2 + e1}: e1 is not a member (the quotient has dimension 2)
        let a = &tm(2, 0, 1, one()) - &tm(2, 1, 0, one());
        let b = &tm(2, 1, 1, one()) + &tm(2, 0, 0, one());
        let cs = characteristic_set(&[a, b], &rk).unwrap();
        assert!(!cs.member(&tm(2, 0, 0, one())).unwrap());
    }
}
