//! The deformed CMS integrals.
//!
//! The partial operators are defined recursively: the order-1 operator on
//! variable `i` is `k^{p(i)} x_i d/dx_i`, and for `p > 1`
//!
//! ```text
//! D_i^(p) = D_i^(1) D_i^(p-1)
//!           - sum_{j != i} k^{1-p(j)} * x_i/(x_i - x_j) * (D_i^(p-1) - D_j^(p-1))
//! ```
//!
//! with integrals `L_p = sum_i k^{-p(i)} D_i^(p)`. In strict mode every
//! coefficient `x_i/(x_i - x_j)` must cancel exactly (which holds on
//! quasi-invariant inputs); in localized mode uncancelled factors accumulate
//! in a [`LocalizedFn`] denominator, so arbitrary Laurent inputs are allowed.
//!
//! All operators are homogeneous of degree zero in the grading by total
//! exponent sum.

use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::localized::LocalizedFn;
use crate::params::DeformedParams;
use crate::rat::Rat;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OpError {
    /// `(D_i^(p-1) - D_j^(p-1)) f` was not divisible by `(x_i - x_j)` after
    /// clearing `x_i`; the input is not quasi-invariant (variable indices are
    /// 0-based).
    #[error("division obstruction at variables ({i}, {j}) while building order {order}")]
    DivisionObstruction { i: usize, j: usize, order: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Strict,
    Localized,
}

/// Either kind of operator output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CmsFn {
    Poly(LaurentPoly),
    Localized(LocalizedFn),
}

/// The scalar operations the recursion needs, implemented by both the strict
/// and the localized representation.
pub trait CmsRing: Clone {
    fn euler(&self, idx: usize) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    /// Multiplication by `x_i / (x_i - x_j)`; `None` signals a strict-mode
    /// division obstruction.
    fn xi_over_diff(&self, i: usize, j: usize) -> Option<Self>;
}

impl CmsRing for LaurentPoly {
    fn euler(&self, idx: usize) -> Self {
        self.euler_deriv(idx)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn scale(&self, c: &Rat) -> Self {
        LaurentPoly::scale(self, c)
    }
    fn xi_over_diff(&self, i: usize, j: usize) -> Option<Self> {
        self.laurent_divide_exact(i, j)
    }
}

impl CmsRing for LocalizedFn {
    fn euler(&self, idx: usize) -> Self {
        self.euler_deriv(idx)
    }
    fn add(&self, other: &Self) -> Self {
        LocalizedFn::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LocalizedFn::sub(self, other)
    }
    fn scale(&self, c: &Rat) -> Self {
        LocalizedFn::scale(self, c)
    }
    fn xi_over_diff(&self, i: usize, j: usize) -> Option<Self> {
        Some(self.mul_xi_over_diff(i, j))
    }
}

/// All partial applications `D_i^(q) f` for `q = 1..=pmax` and every
/// variable, memoized bottom-up: `table[q-1][i] = D_i^(q) f`. The recursion
/// reuses every entry of row `q-1` for each entry of row `q`, so building the
/// whole table costs `O(nvars^2 * pmax)` ring operations.
pub fn partial_table<T: CmsRing>(
    pmax: u32,
    f: &T,
    params: &DeformedParams,
) -> Result<Vec<Vec<T>>, OpError> {
    assert!(pmax >= 1);
    let nv = params.nvars();
    let mut table: Vec<Vec<T>> = Vec::with_capacity(pmax as usize);
    let first: Vec<T> = (0..nv).map(|i| f.euler(i).scale(&params.k_parity(i))).collect();
    table.push(first);
    for q in 2..=pmax {
        let prev = &table[(q - 2) as usize];
        let mut row: Vec<T> = Vec::with_capacity(nv);
        for i in 0..nv {
            let gi = &prev[i];
            let mut acc = gi.euler(i).scale(&params.k_parity(i));
            for j in 0..nv {
                if j == i {
                    continue;
                }
                let h = gi.sub(&prev[j]);
                let g = h
                    .xi_over_diff(i, j)
                    .ok_or(OpError::DivisionObstruction { i, j, order: q })?;
                acc = acc.sub(&g.scale(&params.k_cross(j)));
            }
            row.push(acc);
        }
        table.push(row);
    }
    Ok(table)
}

/// `D_i^(p) f`.
pub fn apply_partial<T: CmsRing>(
    i: usize,
    p: u32,
    f: &T,
    params: &DeformedParams,
) -> Result<T, OpError> {
    assert!(i < params.nvars());
    let table = partial_table(p, f, params)?;
    Ok(table[(p - 1) as usize][i].clone())
}

/// `L_p f`.
pub fn apply_integral<T: CmsRing>(p: u32, f: &T, params: &DeformedParams) -> Result<T, OpError> {
    let table = partial_table(p, f, params)?;
    Ok(integral_from_table(&table, p, params))
}

/// `L_1 f, ..., L_pmax f` from a single table pass.
pub fn integrals_up_to<T: CmsRing>(
    pmax: u32,
    f: &T,
    params: &DeformedParams,
) -> Result<Vec<T>, OpError> {
    let table = partial_table(pmax, f, params)?;
    Ok((1..=pmax).map(|p| integral_from_table(&table, p, params)).collect())
}

fn integral_from_table<T: CmsRing>(table: &[Vec<T>], p: u32, params: &DeformedParams) -> T {
    let row = &table[(p - 1) as usize];
    let mut acc = row[0].scale(&params.k_parity_inv(0));
    for (i, entry) in row.iter().enumerate().skip(1) {
        acc = acc.add(&entry.scale(&params.k_parity_inv(i)));
    }
    acc
}

/// Mode-dispatching wrapper used by the command-line surface.
pub fn apply_integral_mode(
    p: u32,
    f: &LaurentPoly,
    params: &DeformedParams,
    mode: Mode,
) -> Result<CmsFn, OpError> {
    match mode {
        Mode::Strict => apply_integral(p, f, params).map(CmsFn::Poly),
        Mode::Localized => {
            apply_integral(p, &LocalizedFn::from_poly(f.clone()), params).map(CmsFn::Localized)
        }
    }
}

/// Mode-dispatching wrapper for a single partial operator.
pub fn apply_partial_mode(
    i: usize,
    p: u32,
    f: &LaurentPoly,
    params: &DeformedParams,
    mode: Mode,
) -> Result<CmsFn, OpError> {
    match mode {
        Mode::Strict => apply_partial(i, p, f, params).map(CmsFn::Poly),
        Mode::Localized => {
            apply_partial(i, p, &LocalizedFn::from_poly(f.clone()), params).map(CmsFn::Localized)
        }
    }
}

/// `[L_p, L_q] f` in the localized ring; defined for arbitrary Laurent `f`.
pub fn commutator_localized(
    p: u32,
    q: u32,
    f: &LaurentPoly,
    params: &DeformedParams,
) -> LocalizedFn {
    let f = LocalizedFn::from_poly(f.clone());
    let lp = apply_integral(p, &f, params).expect("localized mode cannot fail");
    let lq = apply_integral(q, &f, params).expect("localized mode cannot fail");
    let pq = apply_integral(p, &lq, params).expect("localized mode cannot fail");
    let qp = apply_integral(q, &lp, params).expect("localized mode cannot fail");
    pq.sub(&qp)
}
