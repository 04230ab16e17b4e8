//! Shared test support: seeded random instances and an exact linear-algebra
//! oracle for `dim_K M_k`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use lindiff::diffmodule::{ModElement, ModTerm};
use lindiff::ore::{DerivMonomial, OrePoly};
use lindiff::scalars::{DiffFieldConfig, MPoly, RatFun};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_poly(rng: &mut ChaCha8Rng, v: usize, max_deg: u32, max_terms: usize) -> MPoly {
    let terms = rng.gen_range(1..=max_terms);
    MPoly::from_terms((0..terms).map(|_| {
        let e: Vec<u32> = (0..v).map(|_| rng.gen_range(0..=max_deg)).collect();
        (e, BigRational::from_integer(rng.gen_range(-3i64..=3).into()))
    }))
}

/// A random scalar: mostly small integers and polynomials, sometimes a fraction.
pub fn scalar(rng: &mut ChaCha8Rng, cfg: DiffFieldConfig) -> RatFun {
    let v = cfg.num_vars();
    if v == 0 || rng.gen_bool(0.4) {
        return RatFun::from_int(rng.gen_range(-3..=3));
    }
    let num = small_poly(rng, v, 2, 2);
    if rng.gen_bool(0.8) {
        return RatFun::from_poly(num);
    }
    let den = loop {
        let d = small_poly(rng, v, 1, 2);
        if !d.is_zero() {
            break d;
        }
    };
    RatFun::normalize(num, den).expect("nonzero denominator")
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng, cfg: DiffFieldConfig) -> RatFun {
    loop {
        let a = scalar(rng, cfg);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn monomial(rng: &mut ChaCha8Rng, m: usize, max_order: u32) -> DerivMonomial {
    let mut e = vec![0u32; m];
    let ord = rng.gen_range(0..=max_order);
    for _ in 0..ord {
        e[rng.gen_range(0..m)] += 1;
    }
    DerivMonomial::from_exponents(e)
}

pub fn operator(rng: &mut ChaCha8Rng, cfg: DiffFieldConfig, max_order: u32, max_terms: usize) -> OrePoly {
    let terms = rng.gen_range(0..=max_terms);
    OrePoly::from_terms(
        cfg,
        (0..terms).map(|_| (monomial(rng, cfg.num_derivations(), max_order), scalar(rng, cfg))),
    )
}

pub fn nonzero_operator(rng: &mut ChaCha8Rng, cfg: DiffFieldConfig, max_order: u32) -> OrePoly {
    loop {
        let p = operator(rng, cfg, max_order, 3);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random nonzero element of `K[Delta]^n` with at most `terms` terms.
pub fn element(rng: &mut ChaCha8Rng, cfg: DiffFieldConfig, n: usize, max_order: u32, terms: usize) -> ModElement {
    loop {
        let mut w = ModElement::zero(cfg, n);
        for _ in 0..rng.gen_range(1..=terms) {
            let u = ModTerm::new(rng.gen_range(0..n), monomial(rng, cfg.num_derivations(), max_order));
            w = &w + &ModElement::term(cfg, n, u, nonzero_scalar(rng, cfg));
        }
        if !w.is_zero() {
            return w;
        }
    }
}

/// A random submodule presentation.
#[derive(Clone, Debug)]
pub struct Instance {
    pub cfg: DiffFieldConfig,
    pub n: usize,
    pub gens: Vec<ModElement>,
}

/// One derivation over `Q(t)`: `n <= 3`, at most 3 generators of order `<= 3`.
pub fn ordinary_instance(rng: &mut ChaCha8Rng) -> Instance {
    let cfg = DiffFieldConfig::ordinary();
    let n = rng.gen_range(1..=3);
    let count = rng.gen_range(0..=3);
    let gens = (0..count).map(|_| element(rng, cfg, n, 3, 3)).collect();
    Instance { cfg, n, gens }
}

/// Two derivations, the first acting on `t` when `v = 1`: `n <= 2`, at most two
/// generators of order `<= 2`.
pub fn partial_instance(rng: &mut ChaCha8Rng) -> Instance {
    let v = rng.gen_range(0..=1);
    let cfg = DiffFieldConfig::new(2, v).unwrap();
    let n = rng.gen_range(1..=2);
    let count = rng.gen_range(1..=2);
    let gens = (0..count).map(|_| element(rng, cfg, n, 2, 2)).collect();
    Instance { cfg, n, gens }
}

/// All derivative operators of order at most `k`.
pub fn monomials_up_to(m: usize, k: u32) -> Vec<DerivMonomial> {
    fn rec(prefix: &mut Vec<u32>, m: usize, budget: u32, out: &mut Vec<DerivMonomial>) {
        if prefix.len() == m {
            out.push(DerivMonomial::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, m, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), m, k, &mut out);
    out
}

/// Column key sorting higher orders first, so echelon pivots are highest terms.
type Col = (std::cmp::Reverse<u32>, usize, DerivMonomial);

fn col(u: &ModTerm) -> Col {
    (std::cmp::Reverse(u.order()), u.component, u.theta.clone())
}

/// `dim_K (span{theta g : ord theta + ord g <= k + slack} ∩ L_k)` by exact
/// Gaussian elimination, where `L_k` is spanned by the terms of order `<= k`.
pub fn truncated_submodule_dim(gens: &[ModElement], m: usize, k: u32, slack: u32) -> usize {
    let bound = k + slack;
    let mut rows: Vec<BTreeMap<Col, RatFun>> = Vec::new();
    for g in gens {
        let Some(og) = g.order() else { continue };
        if og > bound {
            continue;
        }
        for theta in monomials_up_to(m, bound - og) {
            let w = g.monomial_left(&theta);
            rows.push(w.terms().map(|(u, c)| (col(&u), c.clone())).collect());
        }
    }
    // Row echelon form; each pivot row is the unique row with that leading column.
    let mut pivots: BTreeMap<Col, BTreeMap<Col, RatFun>> = BTreeMap::new();
    for mut r in rows {
        while let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            match pivots.get(&lead) {
                None => {
                    let inv = c.inv().unwrap();
                    for x in r.values_mut() {
                        *x = &*x * &inv;
                    }
                    pivots.insert(lead, r);
                    break;
                }
                Some(p) => {
                    for (key, x) in p {
                        let e = r.entry(key.clone()).or_default();
                        *e = &*e - &(&c * x);
                    }
                    r.retain(|_, x| !x.is_zero());
                }
            }
        }
    }
    pivots.keys().filter(|(o, _, _)| o.0 <= k).count()
}

/// Number of derivative terms of order `<= k` in rank `n`.
pub fn free_dim(n: usize, m: usize, k: u32) -> usize {
    n * monomials_up_to(m, k).len()
}

/// `dim_K M_k` for `M = K[Delta]^n / N`, increasing the slack until two
/// consecutive values agree. Smaller slacks can only undercount `N ∩ L_k`.
pub fn brute_quotient_dim(inst: &Instance, k: u32) -> usize {
    let m = inst.cfg.num_derivations();
    let max_ord = inst.gens.iter().filter_map(|g| g.order()).max().unwrap_or(0);
    let mut slack = max_ord * inst.n as u32;
    let mut prev = truncated_submodule_dim(&inst.gens, m, k, slack);
    loop {
        slack += 2;
        let next = truncated_submodule_dim(&inst.gens, m, k, slack);
        if next == prev {
            return free_dim(inst.n, m, k) - next;
        }
        prev = next;
    }
}
