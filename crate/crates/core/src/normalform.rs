//! Diagonalization of matrices over `K[d]` (one derivation) by elementary row
//! and column operations, and the `K^d x C^k` classification of the module
//! they present.

use std::fmt;

use serde_json::{json, Value};

use crate::diffmodule::{characteristic_set, ModElement, Ranking};
use crate::error::{Error, Result};
use crate::ore::{OrePoly, Side};
use crate::scalars::{DiffFieldConfig, RatFun};

/// A dense `rows x cols` matrix of operators, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OreMatrix {
    cfg: DiffFieldConfig,
    rows: usize,
    cols: usize,
    entries: Vec<OrePoly>,
}

impl OreMatrix {
    pub fn zero(cfg: DiffFieldConfig, rows: usize, cols: usize) -> Self {
        Self {
            cfg,
            rows,
            cols,
            entries: vec![OrePoly::zero(cfg); rows * cols],
        }
    }

    pub fn identity(cfg: DiffFieldConfig, n: usize) -> Self {
        let mut m = Self::zero(cfg, n, n);
        for i in 0..n {
            m.set(i, i, OrePoly::one(cfg));
        }
        m
    }

    /// Builds a matrix from its rows; all rows must have the same length.
    pub fn from_rows(cfg: DiffFieldConfig, rows: Vec<Vec<OrePoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidConfig("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|p| p.config() != cfg) {
            return Err(Error::ConfigMismatch("matrix entries over different fields".into()));
        }
        let n = rows.len();
        Ok(Self {
            cfg,
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The `n x s` matrix whose columns are the given module elements.
    pub fn from_columns(cfg: DiffFieldConfig, n: usize, cols: &[ModElement]) -> Result<Self> {
        let mut m = Self::zero(cfg, n, cols.len());
        for (j, g) in cols.iter().enumerate() {
            if g.rank() != n || g.config() != cfg {
                return Err(Error::ConfigMismatch("generator does not fit the matrix".into()));
            }
            for i in 0..n {
                m.set(i, j, g.component(i).clone());
            }
        }
        Ok(m)
    }

    pub fn config(&self) -> DiffFieldConfig {
        self.cfg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &OrePoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: OrePoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cfg, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cfg != other.cfg || self.cols != other.rows {
            return Err(Error::ConfigMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.cfg, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = OrePoly::zero(self.cfg);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &a.checked_mul(b)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Only the `(i, i)` entries may be nonzero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<OrePoly> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_i += q * row_p`.
    fn row_add_left(&mut self, i: usize, p: usize, q: &OrePoly) {
        for j in 0..self.cols {
            let x = self.get(p, j);
            if !x.is_zero() {
                let v = self.get(i, j) + &(q * x);
                self.set(i, j, v);
            }
        }
    }

    /// `col_j += col_p * q`.
    fn col_add_right(&mut self, j: usize, p: usize, q: &OrePoly) {
        for i in 0..self.rows {
            let x = self.get(i, p);
            if !x.is_zero() {
                let v = self.get(i, j) + &(x * q);
                self.set(i, j, v);
            }
        }
    }

    /// `row_i = c * row_i` for a scalar `c`.
    fn row_scale_left(&mut self, i: usize, c: &RatFun) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale_left(c);
            self.set(i, j, v);
        }
    }

    /// `col_j = col_j * q`.
    fn col_mul_right(&mut self, j: usize, q: &OrePoly) {
        for i in 0..self.rows {
            let v = self.get(i, j) * q;
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for OreMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `U * R * V = D` with `D` diagonal; the inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub u: OreMatrix,
    pub u_inv: OreMatrix,
    pub d: OreMatrix,
    pub v: OreMatrix,
    pub v_inv: OreMatrix,
}

impl Diagonalization {
    /// Re-multiplies everything exactly.
    pub fn verify(&self, r: &OreMatrix) -> Result<bool> {
        let cfg = r.config();
        let urv = self.u.checked_mul(r)?.checked_mul(&self.v)?;
        let iu = OreMatrix::identity(cfg, r.rows());
        let iv = OreMatrix::identity(cfg, r.cols());
        Ok(urv == self.d
            && self.d.is_diagonal()
            && self.u.checked_mul(&self.u_inv)? == iu
            && self.u_inv.checked_mul(&self.u)? == iu
            && self.v.checked_mul(&self.v_inv)? == iv
            && self.v_inv.checked_mul(&self.v)? == iv)
    }
}

struct Work {
    a: OreMatrix,
    u: OreMatrix,
    u_inv: OreMatrix,
    v: OreMatrix,
    v_inv: OreMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row_i -= q * row_p`; the inverse picks up `col_p += col_i * q`.
    fn row_sub(&mut self, i: usize, p: usize, q: &OrePoly) {
        let neg = -q;
        self.a.row_add_left(i, p, &neg);
        self.u.row_add_left(i, p, &neg);
        self.u_inv.col_add_right(p, i, q);
    }

    /// `col_j -= col_p * q`; the inverse picks up `row_p += q * row_j`.
    fn col_sub(&mut self, j: usize, p: usize, q: &OrePoly) {
        let neg = -q;
        self.a.col_add_right(j, p, &neg);
        self.v.col_add_right(j, p, &neg);
        self.v_inv.row_add_left(p, j, q);
    }

    /// `row_i = c * row_i`; the inverse column is multiplied by `c^{-1}` on the right.
    fn scale_row(&mut self, i: usize, c: &RatFun) -> Result<()> {
        let cfg = self.a.config();
        self.a.row_scale_left(i, c);
        self.u.row_scale_left(i, c);
        self.u_inv.col_mul_right(i, &OrePoly::scalar(cfg, c.inv()?));
        Ok(())
    }
}

/// Diagonalizes `r` over `K[d]`: rows are combined with left coefficients, columns
/// with right coefficients. Each round either clears the pivot's row and column
/// or moves a remainder of strictly smaller degree into the pivot. Nonzero
/// diagonal entries are made monic; no divisibility chain is enforced.
pub fn diagonalize(r: &OreMatrix) -> Result<Diagonalization> {
    let cfg = r.config();
    if cfg.num_derivations() != 1 {
        return Err(Error::UnsupportedForPartial);
    }
    let mut w = Work {
        a: r.clone(),
        u: OreMatrix::identity(cfg, r.rows()),
        u_inv: OreMatrix::identity(cfg, r.rows()),
        v: OreMatrix::identity(cfg, r.cols()),
        v_inv: OreMatrix::identity(cfg, r.cols()),
    };
    let (rows, cols) = (r.rows(), r.cols());
    for t in 0..rows.min(cols) {
        // smallest-degree entry of the trailing block becomes the pivot
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| w.a.get(i, j).degree().map(|d| (d, i, j)))
            .min();
        let Some((_, i, j)) = best else { break };
        w.swap_rows(t, i);
        w.swap_cols(t, j);
        loop {
            let pivot = w.a.get(t, t).clone();
            for i in t + 1..rows {
                if !w.a.get(i, t).is_zero() {
                    let (q, _) = w.a.get(i, t).divmod(&pivot, Side::Right)?;
                    w.row_sub(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !w.a.get(t, j).is_zero() {
                    let (q, _) = w.a.get(t, j).divmod(&pivot, Side::Left)?;
                    w.col_sub(j, t, &q);
                }
            }
            let in_col = (t + 1..rows).filter_map(|i| w.a.get(i, t).degree().map(|d| (d, i))).min();
            let in_row = (t + 1..cols).filter_map(|j| w.a.get(t, j).degree().map(|d| (d, j))).min();
            match (in_col, in_row) {
                (None, None) => break,
                (Some((dc, i)), Some((dr, _))) if dc <= dr => w.swap_rows(t, i),
                (Some((_, i)), None) => w.swap_rows(t, i),
                (_, Some((_, j))) => w.swap_cols(t, j),
            }
        }
        let lc = leading_coeff(w.a.get(t, t));
        if !lc.is_one() {
            w.scale_row(t, &lc.inv()?)?;
        }
    }
    Ok(Diagonalization {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
        v_inv: w.v_inv,
    })
}

fn leading_coeff(p: &OrePoly) -> RatFun {
    p.terms().next_back().map(|(_, c)| c.clone()).unwrap_or_default()
}

/// Tangent space `K^d x C^k`: `d` free directions and a torsion part of
/// `K`-dimension `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentClass {
    pub d: usize,
    pub k: usize,
    /// Diagonal degrees of a triangular presentation of the torsion part; they
    /// depend on the presentation, only their sum `k` is invariant.
    pub torsion_degrees: Vec<u32>,
}

impl TangentClass {
    pub fn to_json(&self) -> Value {
        json!({"d": self.d, "k": self.k, "torsion_degrees": self.torsion_degrees})
    }
}

/// Classifies `K[d]^n / N` where `N` is generated by the columns of the `n x s`
/// matrix `r`.
///
/// With `G = r^T` (rows are the generators), the right module spanned by the
/// columns of `G` is free; a characteristic set of its adjoint gives a basis
/// `L` (`s x rank`), so `G V = [L | 0]` for an invertible `V` and
/// `M = K[d]^(n - rank) + K[d]^rank / rowspace(L)`. The second summand is
/// finite-dimensional and its dimension is the sum of the leader orders of a
/// characteristic set of the rows of `L`. Unlike [`diagonalize`], this never
/// runs a Euclidean remainder sequence on whole matrices, which keeps the
/// coefficients small.
pub fn classify_tangent(r: &OreMatrix) -> Result<TangentClass> {
    let cfg = r.config();
    if cfg.num_derivations() != 1 {
        return Err(Error::UnsupportedForPartial);
    }
    let (n, s) = (r.rows(), r.cols());
    if s == 0 {
        return Ok(TangentClass { d: n, k: 0, torsion_degrees: Vec::new() });
    }
    let adj_cols = (0..n)
        .map(|i| ModElement::from_components((0..s).map(|j| r.get(i, j).adjoint()).collect()))
        .collect::<Result<Vec<_>>>()?;
    let basis = characteristic_set(&adj_cols, &Ranking::orderly(s))?;
    let rank = basis.len();
    if rank == 0 {
        return Ok(TangentClass { d: n, k: 0, torsion_degrees: Vec::new() });
    }
    let rows = (0..s)
        .map(|a| ModElement::from_components(basis.elements().iter().map(|b| b.component(a).adjoint()).collect()))
        .collect::<Result<Vec<_>>>()?;
    let tri = characteristic_set(&rows, &Ranking::orderly(rank))?;
    if tri.len() != rank {
        return Err(Error::Internal(format!(
            "torsion part has {} leaders for rank {rank}",
            tri.len()
        )));
    }
    let torsion_degrees: Vec<u32> = tri.leaders().iter().map(|u| u.order()).filter(|&o| o > 0).collect();
    Ok(TangentClass {
        d: n - rank,
        k: torsion_degrees.iter().map(|&x| x as usize).sum(),
        torsion_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::DerivMonomial;

    fn cfg() -> DiffFieldConfig {
        DiffFieldConfig::ordinary()
    }

    fn op(terms: &[(u32, RatFun)]) -> OrePoly {
        OrePoly::from_terms(
            cfg(),
            terms
                .iter()
                .map(|(k, c)| (DerivMonomial::from_exponents(vec![*k]), c.clone())),
        )
    }

    fn int(n: i64) -> RatFun {
        RatFun::from_int(n)
    }

    fn column(entries: Vec<OrePoly>) -> OreMatrix {
        OreMatrix::from_rows(cfg(), entries.into_iter().map(|p| vec![p]).collect()).unwrap()
    }

    #[test]
    fn diagonalize_examples() {
        let r = column(vec![OrePoly::zero(cfg()), op(&[(1, int(1)), (0, int(-1))])]);
        let dg = diagonalize(&r).unwrap();
        assert!(dg.verify(&r).unwrap());
        assert_eq!(dg.d.get(0, 0), &op(&[(1, int(1)), (0, int(-1))]));
        assert!(dg.d.get(1, 0).is_zero());

        let dd = OreMatrix::from_rows(
            cfg(),
            vec![
                vec![op(&[(1, int(1))]), OrePoly::zero(cfg())],
                vec![OrePoly::zero(cfg()), op(&[(1, int(1))])],
            ],
        )
        .unwrap();
        let dg = diagonalize(&dd).unwrap();
        assert!(dg.verify(&dd).unwrap());
        assert_eq!(dg.d, dd);

        let r = column(vec![OrePoly::one(cfg()), op(&[(1, RatFun::var(0)), (0, int(-1))])]);
        let dg = diagonalize(&r).unwrap();
        assert!(dg.verify(&r).unwrap());
        assert_eq!(dg.d, column(vec![OrePoly::one(cfg()), OrePoly::zero(cfg())]));
    }

    #[test]
    fn diagonalize_needs_degree_descent() {
        // [[d^2, d + t], [t*d, 1]]
        let t = RatFun::var(0);
        let r = OreMatrix::from_rows(
            cfg(),
            vec![
                vec![op(&[(2, int(1))]), op(&[(1, int(1)), (0, t.clone())])],
                vec![op(&[(1, t.clone())]), op(&[(0, int(1))])],
            ],
        )
        .unwrap();
        let dg = diagonalize(&r).unwrap();
        assert!(dg.verify(&r).unwrap());
    }

    #[test]
    fn classify_examples() {
        let dm1 = op(&[(1, int(1)), (0, int(-1))]);
        let r = column(vec![OrePoly::zero(cfg()), dm1]);
        let tc = classify_tangent(&r).unwrap();
        assert_eq!((tc.d, tc.k), (1, 1));
        assert_eq!(tc.torsion_degrees, vec![1]);

        let r = column(vec![OrePoly::one(cfg()), op(&[(1, RatFun::var(0)), (0, int(-1))])]);
        let tc = classify_tangent(&r).unwrap();
        assert_eq!((tc.d, tc.k), (1, 0));

        let empty = OreMatrix::zero(cfg(), 2, 0);
        let tc = classify_tangent(&empty).unwrap();
        assert_eq!((tc.d, tc.k), (2, 0));
        assert_eq!(tc.to_json().to_string(), r#"{"d":2,"k":0,"torsion_degrees":[]}"#);

        let partial = OreMatrix::zero(DiffFieldConfig::new(2, 1).unwrap(), 1, 1);
        assert_eq!(classify_tangent(&partial), Err(Error::UnsupportedForPartial));
        assert!(diagonalize(&partial).is_err());
    }
}
