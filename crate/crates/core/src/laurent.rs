//! Multivariate Laurent polynomials over exact rationals.
//!
//! An exponent vector has fixed length `n + m`: the first `n` entries are the
//! powers of the x-variables, the remaining `m` the powers of the y-variables.
//! Entries may be negative. Terms are kept in a `BTreeMap`, so iteration order,
//! equality and the JSON encoding are all canonical. No zero coefficient is
//! ever stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{parse_rat, rat_to_string, Rat};

pub type Exponent = Vec<i64>;

/// Dominance (prefix-sum) partial order: `mu <= la` iff every prefix sum of
/// `mu` is bounded by the corresponding prefix sum of `la`.
pub fn dominance_leq(mu: &[i64], la: &[i64]) -> bool {
    assert_eq!(mu.len(), la.len(), "dominance_leq: length mismatch");
    let mut sm = 0i64;
    let mut sl = 0i64;
    for (a, b) in mu.iter().zip(la.iter()) {
        sm += a;
        sl += b;
        if sm > sl {
            return false;
        }
    }
    true
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    m: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl LaurentPoly {
    pub fn zero(n: usize, m: usize) -> Self {
        LaurentPoly { n, m, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, m: usize, c: Rat) -> Self {
        let mut p = Self::zero(n, m);
        p.add_term(vec![0; n + m], c);
        p
    }

    pub fn one(n: usize, m: usize) -> Self {
        Self::constant(n, m, Rat::one())
    }

    pub fn monomial(n: usize, m: usize, exp: Exponent, c: Rat) -> Self {
        assert_eq!(exp.len(), n + m, "monomial: exponent length mismatch");
        let mut p = Self::zero(n, m);
        p.add_term(exp, c);
        p
    }

    /// The single variable `x_idx` (0-based over the combined x,y list).
    pub fn var(n: usize, m: usize, idx: usize) -> Self {
        let mut exp = vec![0i64; n + m];
        exp[idx] = 1;
        Self::monomial(n, m, exp, Rat::one())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn nvars(&self) -> usize {
        self.n + self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Adds `c * x^exp`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, exp: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        assert_eq!(exp.len(), self.nvars(), "add_term: exponent length mismatch");
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn assert_same_shape(&self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.m);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = Self::zero(self.n, self.m);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exp: Exponent = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiplies by the monomial `c * x^delta`.
    pub fn mul_monomial(&self, delta: &[i64], c: &Rat) -> Self {
        assert_eq!(delta.len(), self.nvars());
        let mut out = Self::zero(self.n, self.m);
        for (e, v) in self.terms() {
            let exp: Exponent = e.iter().zip(delta.iter()).map(|(a, b)| a + b).collect();
            out.add_term(exp, v.clone() * c.clone());
        }
        out
    }

    /// Multiplies by `x_idx^by`.
    pub fn shift_var(&self, idx: usize, by: i64) -> Self {
        let mut out = Self::zero(self.n, self.m);
        for (e, v) in self.terms() {
            let mut exp = e.clone();
            exp[idx] += by;
            out.add_term(exp, v.clone());
        }
        out
    }

    /// Euler derivative `x_idx d/dx_idx`: multiplies each term by its exponent.
    pub fn euler_deriv(&self, idx: usize) -> Self {
        assert!(idx < self.nvars());
        let mut out = Self::zero(self.n, self.m);
        for (e, v) in self.terms() {
            if e[idx] != 0 {
                out.add_term(e.clone(), v.clone() * Rat::from_integer(e[idx].into()));
            }
        }
        out
    }

    /// Swaps the two variables in every exponent.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.n, self.m);
        for (e, v) in self.terms() {
            let mut exp = e.clone();
            exp.swap(a, b);
            out.add_term(exp, v.clone());
        }
        out
    }

    /// Applies a permutation of the variables: new exponent `p` has
    /// `p[perm[t]] = e[t]` (variable `t` is renamed to `perm[t]`).
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars());
        let mut out = Self::zero(self.n, self.m);
        for (e, v) in self.terms() {
            let mut exp = vec![0i64; e.len()];
            for (t, &img) in perm.iter().enumerate() {
                exp[img] = e[t];
            }
            out.add_term(exp, v.clone());
        }
        out
    }

    /// Restriction to the hyperplane `x_j = x_i`: folds the exponent of
    /// variable `j` into variable `i`. The shape is kept; variable `j` carries
    /// exponent 0 in every term of the result.
    pub fn substitute_equal(&self, i: usize, j: usize) -> Self {
        assert_ne!(i, j, "substitute_equal: i == j");
        assert!(i < self.nvars() && j < self.nvars());
        let mut out = Self::zero(self.n, self.m);
        for (e, v) in self.terms() {
            let mut exp = e.clone();
            exp[i] += exp[j];
            exp[j] = 0;
            out.add_term(exp, v.clone());
        }
        out
    }

    /// Exact division by the linear factor `(x_i - x_j)`: returns `g` with
    /// `self = g * (x_i - x_j)`, or `None` when no Laurent quotient exists.
    pub fn divide_linear_exact(&self, i: usize, j: usize) -> Option<Self> {
        assert_ne!(i, j, "divide_linear_exact: i == j");
        if self.is_zero() {
            return Some(Self::zero(self.n, self.m));
        }
        // Collect self as a polynomial in x_i with Laurent coefficients in the
        // remaining variables (variable i zeroed inside each coefficient).
        let mut coeffs: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, v) in self.terms() {
            let d = e[i];
            let mut rest = e.clone();
            rest[i] = 0;
            coeffs
                .entry(d)
                .or_insert_with(|| Self::zero(self.n, self.m))
                .add_term(rest, v.clone());
        }
        let lo = *coeffs.keys().next().unwrap();
        let hi = *coeffs.keys().last().unwrap();
        // Synthetic division from the top degree down:
        //   q_{e-1} = c_e + x_j * q_e,   remainder = c_lo + x_j * q_lo.
        let zero = Self::zero(self.n, self.m);
        let mut quip: Vec<(i64, LaurentPoly)> = Vec::new();
        let mut carry = zero.clone();
        for e in (lo..=hi).rev() {
            let ce = coeffs.get(&e).unwrap_or(&zero);
            let q = ce.add_ref(&carry);
            if e == lo {
                if !q.is_zero() {
                    return None;
                }
            } else {
                carry = q.shift_var(j, 1);
                quip.push((e - 1, q));
            }
        }
        let mut out = Self::zero(self.n, self.m);
        for (d, q) in quip {
            for (e, v) in q.terms() {
                let mut exp = e.clone();
                exp[i] += d;
                out.add_term(exp, v.clone());
            }
        }
        Some(out)
    }

    /// Removes the coefficient `x_i / (x_i - x_j)`: returns `g` such that
    /// `self * x_i = g * (x_i - x_j)` when such a Laurent polynomial exists.
    pub fn laurent_divide_exact(&self, i: usize, j: usize) -> Option<Self> {
        self.shift_var(i, 1).divide_linear_exact(i, j)
    }

    /// Total degrees occurring among the terms.
    pub fn total_degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|e| e.iter().sum()).collect()
    }

    /// Maximal elements of the support under the dominance order.
    /// Panics on the zero polynomial.
    pub fn max_exponents(&self) -> Vec<Exponent> {
        assert!(!self.is_zero(), "max_exponents: zero polynomial");
        let pts: Vec<&Exponent> = self.terms.keys().collect();
        let mut out = Vec::new();
        'outer: for p in &pts {
            for q in &pts {
                if p != q && dominance_leq(p, q) && !dominance_leq(q, p) {
                    continue 'outer;
                }
            }
            out.push((*p).clone());
        }
        out
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            n: self.n,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { exp: e.clone(), coef: rat_to_string(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self, String> {
        let mut p = Self::zero(j.n, j.m);
        for t in &j.terms {
            if t.exp.len() != j.n + j.m {
                return Err(format!("term exponent {:?} has wrong length", t.exp));
            }
            p.add_term(t.exp.clone(), parse_rat(&t.coef)?);
        }
        Ok(p)
    }
}

/// Serialized form: terms sorted lexicographically by exponent, coefficients
/// as canonical `p/q` strings.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LaurentJson {
    pub n: usize,
    pub m: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: String,
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Largest exponent first reads like handwritten polynomials.
        for (e, c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*x^{:?}", rat_to_string(c), e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    fn xp(n: usize, m: usize, exp: Vec<i64>) -> LaurentPoly {
        LaurentPoly::monomial(n, m, exp, Rat::one())
    }

    #[test]
    fn laurent_divide_recovers_unit() {
        // f = 1 - x2/x1, so f * x1 = x1 - x2 and the quotient is 1.
        let mut f = LaurentPoly::one(1, 1);
        f.add_term(vec![-1, 1], rat_int(-1));
        let g = f.laurent_divide_exact(0, 1).expect("divisible");
        assert_eq!(g, LaurentPoly::one(1, 1));
    }

    #[test]
    fn laurent_divide_linear_case() {
        // f = x1 - x2: f * x1 = x1^2 - x1 x2 = x1 (x1 - x2), quotient x1.
        let f = &xp(2, 0, vec![1, 0]) - &xp(2, 0, vec![0, 1]);
        let g = f.laurent_divide_exact(0, 1).expect("divisible");
        assert_eq!(g, xp(2, 0, vec![1, 0]));
    }

    #[test]
    fn laurent_divide_obstruction() {
        // f = x1 + x2. Independent oracle: if f*x1 = g*(x1-x2) had a Laurent
        // solution, substituting x1 = x2 would give 2*x2^2 = 0. So None.
        let f = &xp(2, 0, vec![1, 0]) + &xp(2, 0, vec![0, 1]);
        let substituted = f.shift_var(0, 1).substitute_equal(0, 1);
        assert!(!substituted.is_zero());
        assert!(f.laurent_divide_exact(0, 1).is_none());
    }

    #[test]
    fn substitute_examples() {
        // x1 - y1 -> 0 on the hyperplane.
        let f = &xp(1, 1, vec![1, 0]) - &xp(1, 1, vec![0, 1]);
        assert!(f.substitute_equal(0, 1).is_zero());
        // x1*y1 -> x1^2.
        let f = xp(1, 1, vec![1, 1]);
        assert_eq!(f.substitute_equal(0, 1), xp(1, 1, vec![2, 0]));
        // x1^2 y1^{-1} + y1 -> 2 x1.
        let f = &xp(1, 1, vec![2, -1]) + &xp(1, 1, vec![0, 1]);
        assert_eq!(
            f.substitute_equal(0, 1),
            LaurentPoly::monomial(1, 1, vec![1, 0], rat_int(2))
        );
    }

    #[test]
    fn max_exponent_examples() {
        let f = &xp(1, 1, vec![2, 1]) + &xp(1, 1, vec![0, 3]);
        assert_eq!(f.max_exponents(), vec![vec![2, 1]]);
        let f = &xp(1, 1, vec![1, 0]) + &xp(1, 1, vec![0, 1]);
        assert_eq!(f.max_exponents(), vec![vec![1, 0]]);
        let f = &xp(1, 1, vec![1, -1]) + &xp(1, 1, vec![-1, 1]);
        assert_eq!(f.max_exponents(), vec![vec![1, -1]]);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&[0, 3], &[2, 1]));
        assert!(!dominance_leq(&[3, 0], &[2, 1]));
        assert!(dominance_leq(&[1, 1], &[1, 1]));
    }

    #[test]
    fn json_roundtrip() {
        let f = LaurentPoly::monomial(1, 1, vec![2, -1], rat(4, 3));
        let f = &f + &LaurentPoly::monomial(1, 1, vec![0, 1], rat(-1, 2));
        let j = f.to_json();
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), f);
        let s = serde_json::to_string(&j).unwrap();
        let j2: LaurentJson = serde_json::from_str(&s).unwrap();
        assert_eq!(j2, j);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        // Shape (2,1), up to 4 terms, small exponents and coefficients.
        proptest::collection::vec(
            (
                proptest::collection::vec(-3i64..=3, 3),
                -5i64..=5,
                1i64..=3,
            ),
            0..4,
        )
        .prop_map(|ts| {
            let mut p = LaurentPoly::zero(2, 1);
            for (e, num, den) in ts {
                p.add_term(e, rat(num, den));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn divide_roundtrip(f in arb_poly(), pair in 0usize..3) {
            // f * (x_i - x_j) * x_i^{-1} divided back must recover f.
            let (i, j) = [(0usize, 1usize), (0, 2), (1, 2)][pair];
            let lin = &LaurentPoly::var(2, 1, i) - &LaurentPoly::var(2, 1, j);
            let prod = f.mul_ref(&lin).shift_var(i, -1);
            let back = prod.laurent_divide_exact(i, j).expect("constructed to divide");
            prop_assert_eq!(back, f);
        }

        #[test]
        fn substitute_is_ring_hom(f in arb_poly(), g in arb_poly()) {
            let fg = f.mul_ref(&g);
            prop_assert_eq!(
                fg.substitute_equal(0, 2),
                f.substitute_equal(0, 2).mul_ref(&g.substitute_equal(0, 2))
            );
            let sum = f.add_ref(&g);
            prop_assert_eq!(
                sum.substitute_equal(0, 2),
                &f.substitute_equal(0, 2) + &g.substitute_equal(0, 2)
            );
        }
    }
}
