use std::cmp::Ordering;

use super::{ModElement, ModTerm, Ranking};
use crate::error::{Error, Result};
use crate::ore::OrePoly;

/// Normal form of `w` modulo `basis`.
///
/// Repeatedly cancels the highest term of the remainder that is a derivative
/// (identity included) of some basis leader. Elements are tried in list order.
pub fn reduce(w: &ModElement, basis: &[ModElement], rk: &Ranking) -> Result<ModElement> {
    Ok(reduce_impl(w, basis, rk, None)?)
}

/// Like [`reduce`], also returning cofactors `c_j` with `w = sum c_j * basis_j + r`.
pub fn reduce_with_cofactors(
    w: &ModElement,
    basis: &[ModElement],
    rk: &Ranking,
) -> Result<(ModElement, Vec<OrePoly>)> {
    let mut cof = vec![OrePoly::zero(w.config()); basis.len()];
    let r = reduce_impl(w, basis, rk, Some(&mut cof))?;
    Ok((r, cof))
}

fn reduce_impl(
    w: &ModElement,
    basis: &[ModElement],
    rk: &Ranking,
    mut cofactors: Option<&mut Vec<OrePoly>>,
) -> Result<ModElement> {
    rk.check_rank(w)?;
    let mut heads = Vec::with_capacity(basis.len());
    for f in basis {
        rk.check_rank(f)?;
        if f.config() != w.config() {
            return Err(Error::ConfigMismatch("basis over a different field".into()));
        }
        let u = rk.leader_unchecked(f).ok_or(Error::ZeroElement)?;
        let lc_inv = f.coeff(&u).inv()?;
        heads.push((u, lc_inv));
    }

    let mut r = w.clone();
    // Terms strictly above `ceiling` are known to be irreducible.
    let mut ceiling: Option<ModTerm> = None;
    loop {
        let mut terms: Vec<ModTerm> = r
            .terms()
            .map(|(t, _)| t)
            .filter(|t| {
                ceiling
                    .as_ref()
                    .map_or(true, |c| rk.cmp_terms(t, c) != Ordering::Greater)
            })
            .collect();
        terms.sort_by(|a, b| rk.cmp_terms(b, a));
        let hit = terms.into_iter().find_map(|t| {
            heads
                .iter()
                .position(|(u, _)| t.is_derivative_of(u))
                .map(|j| (t, j))
        });
        let Some((t, j)) = hit else { break };
        let (u, lc_inv) = &heads[j];
        let theta = u.theta.quotient(&t.theta);
        let c = &r.coeff(&t) * lc_inv;
        let sub = basis[j].monomial_left(&theta).scale_left(&c);
        r = &r - &sub;
        if let Some(cof) = cofactors.as_deref_mut() {
            cof[j] = &cof[j] + &OrePoly::term(w.config(), theta, c);
        }
        ceiling = Some(t);
    }
    Ok(r)
}

/// A pairwise-reduced, monic set sorted by increasing leader.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoreducedSet {
    elements: Vec<ModElement>,
    leaders: Vec<ModTerm>,
    ranking: Ranking,
}

impl AutoreducedSet {
    pub fn empty(ranking: Ranking) -> Self {
        Self {
            elements: Vec::new(),
            leaders: Vec::new(),
            ranking,
        }
    }

    pub fn elements(&self) -> &[ModElement] {
        &self.elements
    }

    pub fn leaders(&self) -> &[ModTerm] {
        &self.leaders
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn reduce(&self, w: &ModElement) -> Result<ModElement> {
        reduce(w, &self.elements, &self.ranking)
    }

    /// Checks the defining properties: monic, sorted, pairwise reduced.
    pub fn is_autoreduced(&self) -> bool {
        let rk = &self.ranking;
        for (i, f) in self.elements.iter().enumerate() {
            let u = &self.leaders[i];
            if rk.leader_unchecked(f).as_ref() != Some(u) || !f.coeff(u).is_one() {
                return false;
            }
            if i > 0 && rk.cmp_terms(&self.leaders[i - 1], u) != Ordering::Less {
                return false;
            }
            for (j, v) in self.leaders.iter().enumerate() {
                if i != j && f.terms().any(|(t, _)| t.is_derivative_of(v)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Autoreduces `set` into a monic, pairwise-reduced set spanning the same submodule.
pub fn autoreduce(set: &[ModElement], rk: &Ranking) -> Result<AutoreducedSet> {
    // Phase 1: make the leaders an antichain.
    let mut queue: Vec<ModElement> = set.iter().rev().cloned().collect();
    let mut kept: Vec<ModElement> = Vec::new();
    while let Some(w) = queue.pop() {
        let r = reduce(&w, &kept, rk)?;
        let Some(u) = rk.leader_unchecked(&r) else {
            continue;
        };
        let mut i = 0;
        while i < kept.len() {
            let v = rk.leader_unchecked(&kept[i]).expect("nonzero");
            if v.is_derivative_of(&u) {
                queue.push(kept.remove(i));
            } else {
                i += 1;
            }
        }
        kept.push(r);
    }
    // Phase 2: tail reduction; leaders are fixed now so one pass suffices.
    sort_by_leader(&mut kept, rk);
    for i in 0..kept.len() {
        let others: Vec<ModElement> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| f.clone())
            .collect();
        kept[i] = reduce(&kept[i], &others, rk)?;
    }
    from_reduced(kept, rk.clone())
}

fn sort_by_leader(v: &mut [ModElement], rk: &Ranking) {
    v.sort_by(|a, b| {
        rk.cmp_terms(
            &rk.leader_unchecked(a).expect("nonzero"),
            &rk.leader_unchecked(b).expect("nonzero"),
        )
    });
}

/// Makes already pairwise-reduced elements monic and records their leaders.
pub(crate) fn from_reduced(mut elements: Vec<ModElement>, ranking: Ranking) -> Result<AutoreducedSet> {
    sort_by_leader(&mut elements, &ranking);
    let mut leaders = Vec::with_capacity(elements.len());
    for f in elements.iter_mut() {
        let u = ranking.leader_unchecked(f).ok_or(Error::ZeroElement)?;
        let inv = f.coeff(&u).inv()?;
        if !inv.is_one() {
            *f = f.scale_left(&inv);
        }
        leaders.push(u);
    }
    Ok(AutoreducedSet {
        elements,
        leaders,
        ranking,
    })
}

/// Rank comparison of autoreduced sets; `Less` means `a` has lower rank.
pub fn compare_autoreduced(a: &AutoreducedSet, b: &AutoreducedSet) -> Result<Ordering> {
    if a.ranking != b.ranking {
        return Err(Error::ConfigMismatch(
            "autoreduced sets under different rankings".into(),
        ));
    }
    for (u, v) in a.leaders.iter().zip(&b.leaders) {
        match a.ranking.cmp_terms(u, v) {
            Ordering::Equal => {}
            o => return Ok(o),
        }
    }
    // A longer set with the same prefix of leaders has lower rank.
    Ok(b.len().cmp(&a.len()))
}
