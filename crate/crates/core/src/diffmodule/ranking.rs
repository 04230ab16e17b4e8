use std::cmp::Ordering;

use super::{ModElement, ModTerm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankingKind {
    /// Order first, then component, then exponents.
    Orderly,
    /// Component first, then order, then exponents.
    Elimination,
}

/// A ranking of the derivative terms `theta e_i` of a rank-`n` free module.
///
/// `component_order` lists the components from lowest to highest; remaining ties
/// are broken lexicographically on the exponent vector of `theta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    kind: RankingKind,
    component_order: Vec<usize>,
    position: Vec<usize>,
}

impl Ranking {
    /// Orderly ranking with `e_1 < e_2 < ... < e_n` as tie-break.
    pub fn orderly(n: usize) -> Self {
        Self::with_order(RankingKind::Orderly, (0..n).collect()).expect("identity permutation")
    }

    /// Elimination ranking with `e_1 << e_2 << ... << e_n`.
    pub fn elimination(n: usize) -> Self {
        Self::with_order(RankingKind::Elimination, (0..n).collect()).expect("identity permutation")
    }

    /// `component_order` is a permutation of `0..n`, lowest component first.
    pub fn with_order(kind: RankingKind, component_order: Vec<usize>) -> Result<Self> {
        let n = component_order.len();
        let mut position = vec![usize::MAX; n];
        for (pos, &c) in component_order.iter().enumerate() {
            if c >= n || position[c] != usize::MAX {
                return Err(Error::InvalidConfig(format!(
                    "component order {component_order:?} is not a permutation"
                )));
            }
            position[c] = pos;
        }
        Ok(Self {
            kind,
            component_order,
            position,
        })
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn is_orderly(&self) -> bool {
        self.kind == RankingKind::Orderly
    }

    pub fn num_components(&self) -> usize {
        self.position.len()
    }

    pub fn component_order(&self) -> &[usize] {
        &self.component_order
    }

    pub fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        let comp = self.position[a.component].cmp(&self.position[b.component]);
        let ord = a.order().cmp(&b.order());
        let lex = a.theta.exponents().cmp(b.theta.exponents());
        match self.kind {
            RankingKind::Orderly => ord.then(comp).then(lex),
            RankingKind::Elimination => comp.then(ord).then(lex),
        }
    }

    /// The highest-ranked term of `w` together with its coefficient.
    pub fn leader(&self, w: &ModElement) -> Result<ModTerm> {
        self.check_rank(w)?;
        self.leader_unchecked(w).ok_or(Error::ZeroElement)
    }

    pub(crate) fn leader_unchecked(&self, w: &ModElement) -> Option<ModTerm> {
        w.terms()
            .map(|(t, _)| t)
            .max_by(|a, b| self.cmp_terms(a, b))
    }

    pub(crate) fn check_rank(&self, w: &ModElement) -> Result<()> {
        if w.rank() != self.num_components() {
            return Err(Error::ConfigMismatch(format!(
                "element of rank {} under a ranking of {} components",
                w.rank(),
                self.num_components()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::DerivMonomial;
    use proptest::prelude::*;

    fn term(c: usize, e: Vec<u32>) -> ModTerm {
        ModTerm::new(c, DerivMonomial::from_exponents(e))
    }

    fn arb_term(n: usize, m: usize) -> impl Strategy<Value = ModTerm> {
        (0..n, prop::collection::vec(0u32..4, m)).prop_map(|(c, e)| term(c, e))
    }

    fn arb_ranking() -> impl Strategy<Value = Ranking> {
        (any::<bool>(), Just(vec![0usize, 1, 2]).prop_shuffle()).prop_map(|(orderly, perm)| {
            let kind = if orderly {
                RankingKind::Orderly
            } else {
                RankingKind::Elimination
            };
            Ranking::with_order(kind, perm).unwrap()
        })
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Ranking::with_order(RankingKind::Orderly, vec![0, 0]).is_err());
        assert!(Ranking::with_order(RankingKind::Orderly, vec![2, 0]).is_err());
    }

    proptest! {
        #[test]
        fn ranking_axioms(
            rk in arb_ranking(),
            u in arb_term(3, 2),
            v in arb_term(3, 2),
            th in prop::collection::vec(0u32..3, 2),
        ) {
            let theta = DerivMonomial::from_exponents(th);
            let tu = ModTerm::new(u.component, theta.mul(&u.theta));
            let tv = ModTerm::new(v.component, theta.mul(&v.theta));
            prop_assert!(rk.cmp_terms(&u, &tu) != Ordering::Greater);
            if rk.cmp_terms(&u, &v) != Ordering::Greater {
                prop_assert!(rk.cmp_terms(&tu, &tv) != Ordering::Greater);
            }
            if rk.is_orderly() && u.order() < v.order() {
                prop_assert_eq!(rk.cmp_terms(&u, &v), Ordering::Less);
            }
            prop_assert_eq!(rk.cmp_terms(&u, &v) == Ordering::Equal, u == v);
        }
    }
}
