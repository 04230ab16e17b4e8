mod common;

use common::{element, nonzero_scalar, operator, ordinary_instance, rng, Instance};
use lindiff::diffmodule::{characteristic_set, ModElement, Ranking};
use lindiff::dimension::DimensionReport;
use lindiff::normalform::{classify_tangent, diagonalize, OreMatrix, TangentClass};
use lindiff::ore::OrePoly;
use lindiff::scalars::DiffFieldConfig;
use lindiff::Error;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn classify(inst: &Instance) -> TangentClass {
    classify_tangent(&OreMatrix::from_columns(inst.cfg, inst.n, &inst.gens).unwrap()).unwrap()
}

/// Entries of order `<= 1`: Euclidean remainder sequences over `Q(t)` grow
/// quickly beyond that.
fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> OreMatrix {
    let cfg = DiffFieldConfig::ordinary();
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| operator(r, cfg, 1, 2)).collect())
        .collect();
    OreMatrix::from_rows(cfg, entries).unwrap()
}

#[test]
fn diagonalization_verifies() {
    let mut r = rng(31);
    for _ in 0..60 {
        let (rows, cols) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let m = random_matrix(&mut r, rows, cols);
        let dg = diagonalize(&m).unwrap();
        assert!(dg.verify(&m).unwrap(), "{m:?}");
    }
}

#[test]
fn classification_agrees_with_dimension() {
    let mut r = rng(32);
    for _ in 0..60 {
        let inst = ordinary_instance(&mut r);
        let tc = classify(&inst);
        let cs = characteristic_set(&inst.gens, &Ranking::orderly(inst.n)).unwrap();
        let rep = DimensionReport::new(&cs, inst.cfg).unwrap();
        assert_eq!(tc.d, rep.diff_dimension, "{inst:?}");
        let b = rep.below_leader_count.unwrap();
        assert!(tc.k <= b, "{inst:?}");
        assert!(tc.k as i64 <= rep.free_term_i64().unwrap());
        assert_eq!(tc.k, tc.torsion_degrees.iter().map(|&x| x as usize).sum::<usize>());
    }
}

/// `(d, k)` read off a diagonalization of the transpose, an independent route.
fn classify_by_diagonalization(inst: &Instance) -> (usize, usize) {
    let r = OreMatrix::from_columns(inst.cfg, inst.n, &inst.gens).unwrap();
    let dg = diagonalize(&r.transpose()).unwrap();
    assert!(dg.verify(&r.transpose()).unwrap());
    let degs: Vec<u32> = dg.d.diagonal().iter().filter_map(|p| p.degree()).collect();
    (inst.n - degs.len(), degs.iter().map(|&x| x as usize).sum())
}

#[test]
fn classification_agrees_with_diagonalization() {
    let mut r = rng(35);
    let cfg = DiffFieldConfig::ordinary();
    for _ in 0..60 {
        let n = r.gen_range(1..=3);
        let gens = (0..r.gen_range(0..=3)).map(|_| element(&mut r, cfg, n, 1, 3)).collect();
        let inst = Instance { cfg, n, gens };
        let tc = classify(&inst);
        assert_eq!((tc.d, tc.k), classify_by_diagonalization(&inst), "{inst:?}");
    }
}

/// Elementary changes of generators keep the module, hence `(d, k)`.
#[test]
fn invariant_under_change_of_generators() {
    let mut r = rng(33);
    for _ in 0..40 {
        let inst = ordinary_instance(&mut r);
        let tc = classify(&inst);
        let mut gens = inst.gens.clone();
        let s = gens.len();
        if s >= 2 {
            // g_i += c g_j, then rescale and swap
            for _ in 0..2 {
                let i = r.gen_range(0..s);
                let j = (i + r.gen_range(1..s)) % s;
                let c = operator(&mut r, inst.cfg, 1, 2);
                gens[i] = &gens[i] + &gens[j].mul_left(&c).unwrap();
                gens[j] = gens[j].scale_left(&nonzero_scalar(&mut r, inst.cfg));
                gens.swap(i, j);
            }
        }
        if s >= 1 {
            let mut extra = ModElement::zero(inst.cfg, inst.n);
            for g in &inst.gens {
                extra = &extra + &g.mul_left(&operator(&mut r, inst.cfg, 1, 2)).unwrap();
            }
            gens.push(extra);
        }
        let other = Instance { gens, ..inst.clone() };
        let tc2 = classify(&other);
        assert_eq!((tc.d, tc.k), (tc2.d, tc2.k), "{inst:?}");
    }
}

/// `K[d]/K[d]p` has dimension `deg p` over `K`.
#[test]
fn cyclic_torsion() {
    let mut r = rng(34);
    let cfg = DiffFieldConfig::ordinary();
    for _ in 0..30 {
        let p = loop {
            let p = operator(&mut r, cfg, 4, 3);
            if !p.is_zero() {
                break p;
            }
        };
        let g = ModElement::from_components(vec![p.clone()]).unwrap();
        let tc = classify(&Instance { cfg, n: 1, gens: vec![g] });
        assert_eq!(tc.d, 0);
        assert_eq!(tc.k as u32, p.degree().unwrap());
    }
}

#[test]
fn partial_is_unsupported() {
    let cfg = DiffFieldConfig::new(2, 0).unwrap();
    let m = OreMatrix::identity(cfg, 2);
    assert!(matches!(diagonalize(&m), Err(Error::UnsupportedForPartial)));
    assert!(matches!(classify_tangent(&m), Err(Error::UnsupportedForPartial)));
    let _ = OrePoly::one(cfg);
}
