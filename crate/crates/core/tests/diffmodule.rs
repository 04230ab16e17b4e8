mod common;

use std::cmp::Ordering;

use common::{brute_quotient_dim, element, ordinary_instance, partial_instance, rng, Instance};
use lindiff::diffmodule::{
    autoreduce, characteristic_set, compare_autoreduced, reduce, reduce_with_cofactors, ModElement, Ranking,
    RankingKind,
};
use lindiff::dimension::dimension_polynomial;
use num_bigint::BigInt;
use rand::Rng;

fn leader_dim(inst: &Instance, k: u32) -> BigInt {
    let cs = characteristic_set(&inst.gens, &Ranking::orderly(inst.n)).unwrap();
    assert!(cs.is_complete());
    let phi = dimension_polynomial(&cs, inst.cfg).unwrap();
    // phi agrees with the count of standard terms from valid_from on; below
    // that, count the standard terms directly.
    let m = inst.cfg.num_derivations();
    let direct = (0..inst.n)
        .flat_map(|i| common::monomials_up_to(m, k).into_iter().map(move |th| (i, th)))
        .filter(|(i, th)| {
            !cs.leaders()
                .iter()
                .any(|u| u.component == *i && u.theta.divides(th))
        })
        .count();
    if k as i64 >= phi.valid_from() {
        assert_eq!(phi.eval(k as i64), BigInt::from(direct));
    }
    BigInt::from(direct)
}

#[test]
fn completeness_against_linear_algebra_ordinary() {
    let mut r = rng(11);
    for _ in 0..25 {
        let inst = ordinary_instance(&mut r);
        for k in 0..=6 {
            assert_eq!(leader_dim(&inst, k), BigInt::from(brute_quotient_dim(&inst, k)), "{inst:?} k={k}");
        }
    }
}

#[test]
fn completeness_against_linear_algebra_partial() {
    let mut r = rng(12);
    for _ in 0..10 {
        let inst = partial_instance(&mut r);
        for k in 0..=4 {
            assert_eq!(leader_dim(&inst, k), BigInt::from(brute_quotient_dim(&inst, k)), "{inst:?} k={k}");
        }
    }
}

/// `w - reduce(w)` is re-multiplied exactly from the cofactors.
#[test]
fn normal_form_soundness() {
    let mut r = rng(13);
    for _ in 0..30 {
        let inst = ordinary_instance(&mut r);
        let rk = Ranking::orderly(inst.n);
        let cs = characteristic_set(&inst.gens, &rk).unwrap();
        let w = element(&mut r, inst.cfg, inst.n, 4, 4);
        let (nf, cof) = reduce_with_cofactors(&w, cs.elements(), &rk).unwrap();
        let mut acc = nf.clone();
        for (c, f) in cof.iter().zip(cs.elements()) {
            acc = &acc + &f.mul_left(c).unwrap();
        }
        assert_eq!(acc, w);
        assert_eq!(cs.reduce(&nf).unwrap(), nf, "idempotence");
        // normal form has no derivative of any leader
        for (u, _) in nf.terms() {
            assert!(cs.leaders().iter().all(|l| !u.is_derivative_of(l)));
        }
    }
}

/// Membership does not depend on the chosen generators of the submodule.
#[test]
fn membership_is_presentation_independent() {
    let mut r = rng(14);
    for _ in 0..20 {
        let inst = ordinary_instance(&mut r);
        if inst.gens.is_empty() {
            continue;
        }
        let rk = Ranking::orderly(inst.n);
        let cs = characteristic_set(&inst.gens, &rk).unwrap();
        let mut gens2 = inst.gens.clone();
        let mut combo = ModElement::zero(inst.cfg, inst.n);
        for g in &inst.gens {
            let c = common::operator(&mut r, inst.cfg, 2, 2);
            combo = &combo + &g.mul_left(&c).unwrap();
        }
        gens2.push(combo.clone());
        gens2.rotate_left(1);
        let cs2 = characteristic_set(&gens2, &rk).unwrap();
        assert_eq!(cs.leaders(), cs2.leaders());
        assert!(cs.member(&combo).unwrap());
        for _ in 0..3 {
            let w = element(&mut r, inst.cfg, inst.n, 3, 3);
            assert_eq!(cs.member(&w).unwrap(), cs2.member(&w).unwrap());
            assert_eq!(cs.reduce(&w).unwrap(), cs2.reduce(&w).unwrap(), "reduced normal forms are unique");
        }
    }
}

#[test]
fn charset_rank_is_at_most_autoreduced_rank() {
    let mut r = rng(15);
    for _ in 0..30 {
        let inst = ordinary_instance(&mut r);
        let kind = if r.gen_bool(0.5) { RankingKind::Orderly } else { RankingKind::Elimination };
        let rk = Ranking::with_order(kind, (0..inst.n).rev().collect()).unwrap();
        let cs = characteristic_set(&inst.gens, &rk).unwrap();
        let a = autoreduce(&inst.gens, &rk).unwrap();
        assert_ne!(compare_autoreduced(cs.autoreduced(), &a).unwrap(), Ordering::Greater);
        assert!(cs.autoreduced().is_autoreduced());
        for g in &inst.gens {
            assert!(reduce(g, cs.elements(), &rk).unwrap().is_zero());
        }
    }
}

#[test]
fn elimination_and_orderly_agree_on_membership() {
    let mut r = rng(16);
    for _ in 0..20 {
        let inst = ordinary_instance(&mut r);
        let a = characteristic_set(&inst.gens, &Ranking::orderly(inst.n)).unwrap();
        let b = characteristic_set(&inst.gens, &Ranking::elimination(inst.n)).unwrap();
        for _ in 0..3 {
            let w = element(&mut r, inst.cfg, inst.n, 3, 3);
            assert_eq!(a.member(&w).unwrap(), b.member(&w).unwrap());
        }
    }
}

/// The membership example whose answer is decided by the oracle.
#[test]
fn member_example_against_oracle() {
    use lindiff::diffmodule::ModTerm;
    use lindiff::ore::DerivMonomial;
    use lindiff::scalars::{DiffFieldConfig, RatFun};
    let cfg = DiffFieldConfig::ordinary();
    let tm = |i, k| ModElement::term(cfg, 2, ModTerm::new(i, DerivMonomial::from_exponents(vec![k])), RatFun::one());
    let gens = vec![&tm(0, 1) - &tm(1, 0), &tm(1, 1) + &tm(0, 0)];
    let cs = characteristic_set(&gens, &Ranking::orderly(2)).unwrap();
    let e1 = tm(0, 0);
    let with_e1 = Instance { cfg, n: 2, gens: [gens.clone(), vec![e1.clone()]].concat() };
    let without = Instance { cfg, n: 2, gens };
    // e1 is a member iff adding it does not change any truncated dimension
    let same = (0..=6).all(|k| brute_quotient_dim(&with_e1, k) == brute_quotient_dim(&without, k));
    assert_eq!(cs.member(&e1).unwrap(), same);
    assert!(!same);
}
