use std::cmp::Ordering;

use super::reduce::{autoreduce, reduce};
use super::{AutoreducedSet, ModElement, ModTerm, Ranking};
use crate::error::Result;

/// A characteristic set of the submodule generated by `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSet {
    set: AutoreducedSet,
    generators: Vec<ModElement>,
    complete: bool,
}

impl CharSet {
    pub fn autoreduced(&self) -> &AutoreducedSet {
        &self.set
    }

    pub fn elements(&self) -> &[ModElement] {
        self.set.elements()
    }

    pub fn leaders(&self) -> &[ModTerm] {
        self.set.leaders()
    }

    pub fn ranking(&self) -> &Ranking {
        self.set.ranking()
    }

    pub fn generators(&self) -> &[ModElement] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.ranking().num_components()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Every S-pair and every generator reduces to zero.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn reduce(&self, w: &ModElement) -> Result<ModElement> {
        self.set.reduce(w)
    }

    /// Whether `w` lies in the submodule.
    pub fn member(&self, w: &ModElement) -> Result<bool> {
        Ok(self.reduce(w)?.is_zero())
    }
}

/// The S-pair of two elements whose leaders share a component, formed at the lcm.
fn s_pair(f: &ModElement, g: &ModElement, rk: &Ranking) -> ModElement {
    let u = rk.leader_unchecked(f).expect("nonzero");
    let v = rk.leader_unchecked(g).expect("nonzero");
    let l = u.theta.lcm(&v.theta);
    let a = f.monomial_left(&u.theta.quotient(&l)).scale_left(&f.coeff(&u).inv().expect("nonzero"));
    let b = g.monomial_left(&v.theta.quotient(&l)).scale_left(&g.coeff(&v).inv().expect("nonzero"));
    &a - &b
}

fn lcm_term(f: &ModElement, g: &ModElement, rk: &Ranking) -> Option<ModTerm> {
    let u = rk.leader_unchecked(f)?;
    let v = rk.leader_unchecked(g)?;
    (u.component == v.component).then(|| ModTerm::new(u.component, u.theta.lcm(&v.theta)))
}

/// Completes `gens` to a characteristic set: S-pairs are processed in increasing
/// rank of their lcm term, nonzero remainders are added, and the result is
/// interreduced and made monic.
pub fn characteristic_set(gens: &[ModElement], rk: &Ranking) -> Result<CharSet> {
    for g in gens {
        rk.check_rank(g)?;
    }
    let mut basis: Vec<ModElement> = autoreduce(gens, rk)?.elements().to_vec();
    let mut pairs: Vec<(ModTerm, usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            if let Some(l) = lcm_term(&basis[i], &basis[j], rk) {
                pairs.push((l, i, j));
            }
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                rk.cmp_terms(&pairs[a].0, &pairs[b].0)
                    .then((pairs[a].1, pairs[a].2).cmp(&(pairs[b].1, pairs[b].2)))
            })
            .expect("nonempty");
        let (_, i, j) = pairs.swap_remove(best);
        let s = s_pair(&basis[i], &basis[j], rk);
        let r = reduce(&s, &basis, rk)?;
        if r.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            if let Some(l) = lcm_term(&basis[i], &basis[k], rk) {
                pairs.push((l, i, k));
            }
        }
    }
    let set = autoreduce(&basis, rk)?;
    let complete = check_complete(&set, gens)?;
    if !complete {
        return Err(crate::Error::Internal(
            "completion did not produce a complete set".into(),
        ));
    }
    Ok(CharSet {
        set,
        generators: gens.to_vec(),
        complete,
    })
}

fn check_complete(set: &AutoreducedSet, gens: &[ModElement]) -> Result<bool> {
    let rk = set.ranking();
    let els = set.elements();
    for j in 0..els.len() {
        for i in 0..j {
            if lcm_term(&els[i], &els[j], rk).is_some()
                && !set.reduce(&s_pair(&els[i], &els[j], rk))?.is_zero()
            {
                return Ok(false);
            }
        }
    }
    for g in gens {
        if !set.reduce(g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(set.is_autoreduced())
}

/// Whether `a` has rank at most that of `b`.
pub fn rank_le(a: &AutoreducedSet, b: &AutoreducedSet) -> Result<bool> {
    Ok(super::compare_autoreduced(a, b)? != Ordering::Greater)
}
