//! Laurent polynomials localized at the pairwise differences `(x_a - x_b)`.
//!
//! A `LocalizedFn` is a Laurent polynomial numerator over a denominator that
//! is a product of factors `(x_a - x_b)` with `a < b`. The representation is
//! always reduced — no factor with positive exponent divides the numerator —
//! which makes it canonical, so derived equality is value equality.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentJson, LaurentPoly};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct LocalizedFn {
    num: LaurentPoly,
    den: BTreeMap<(usize, usize), u32>,
}

impl LocalizedFn {
    pub fn from_poly(p: LaurentPoly) -> Self {
        LocalizedFn { num: p, den: BTreeMap::new() }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(n, m))
    }

    pub fn shape(&self) -> (usize, usize) {
        self.num.shape()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a plain Laurent polynomial, when the denominator is empty.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_empty() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let pairs: Vec<(usize, usize)> = self.den.keys().cloned().collect();
        for (a, b) in pairs {
            while *self.den.get(&(a, b)).unwrap_or(&0) > 0 {
                match self.num.divide_linear_exact(a, b) {
                    Some(q) => {
                        self.num = q;
                        let e = self.den.get_mut(&(a, b)).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.den.remove(&(a, b));
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// The linear factor `(x_a - x_b)` as a polynomial, for `a < b`.
    fn factor(&self, a: usize, b: usize) -> LaurentPoly {
        let (n, m) = self.shape();
        &LaurentPoly::var(n, m, a) - &LaurentPoly::var(n, m, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        // Common denominator: pairwise max exponents.
        let mut den: BTreeMap<(usize, usize), u32> = self.den.clone();
        for (p, e) in &other.den {
            let entry = den.entry(*p).or_insert(0);
            *entry = (*entry).max(*e);
        }
        let scale_up = |f: &Self| -> LaurentPoly {
            let mut num = f.num.clone();
            for (&(a, b), &target) in &den {
                let have = *f.den.get(&(a, b)).unwrap_or(&0);
                for _ in have..target {
                    num = num.mul_ref(&self.factor(a, b));
                }
            }
            num
        };
        let num = &scale_up(self) + &scale_up(other);
        LocalizedFn { num, den }.reduce()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LocalizedFn { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            let (n, m) = self.shape();
            return Self::zero(n, m);
        }
        LocalizedFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        LocalizedFn { num: self.num.mul_ref(p), den: self.den.clone() }.reduce()
    }

    /// Multiplication by `x_i / (x_i - x_j)`; the denominator pair is stored
    /// with ascending indices, flipping the sign when `i > j`.
    pub fn mul_xi_over_diff(&self, i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let mut num = self.num.shift_var(i, 1);
        if sign < 0 {
            num = num.neg_ref();
        }
        let mut den = self.den.clone();
        *den.entry((a, b)).or_insert(0) += 1;
        LocalizedFn { num, den }.reduce()
    }

    /// Division by the bare linear factor `(x_a - x_b)`, `a < b`.
    pub fn div_linear(&self, a: usize, b: usize) -> Self {
        assert!(a < b);
        let mut den = self.den.clone();
        *den.entry((a, b)).or_insert(0) += 1;
        LocalizedFn { num: self.num.clone(), den }.reduce()
    }

    /// Euler derivative `x_c d/dx_c` via the quotient rule.
    pub fn euler_deriv(&self, c: usize) -> Self {
        let mut out = LocalizedFn { num: self.num.euler_deriv(c), den: self.den.clone() };
        for (&(a, b), &e) in &self.den {
            if c != a && c != b {
                continue;
            }
            // d/dc of (x_a - x_b)^{-e} contributes -e * (+-x_c) / (x_a - x_b).
            let coeff = Rat::from_integer((-(e as i64)).into());
            let mut num = self.num.shift_var(c, 1).scale(&coeff);
            if c == b {
                num = num.neg_ref();
            }
            let mut den = self.den.clone();
            *den.entry((a, b)).or_insert(0) += 1;
            out = out.add(&LocalizedFn { num, den }.reduce());
        }
        out.reduce()
    }

    pub fn to_json(&self) -> LocalizedJson {
        LocalizedJson {
            num: self.num.to_json(),
            den: self
                .den
                .iter()
                .map(|(&(a, b), &e)| DenFactorJson { pair: [a, b], power: e })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LocalizedJson {
    pub num: LaurentJson,
    pub den: Vec<DenFactorJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DenFactorJson {
    pub pair: [usize; 2],
    pub power: u32,
}

impl fmt::Debug for LocalizedFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.num)?;
        for (&(a, b), &e) in &self.den {
            write!(f, " / (x{a}-x{b})^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn mono(e: Vec<i64>) -> LaurentPoly {
        LaurentPoly::monomial(1, 1, e, Rat::from_integer(1.into()))
    }

    #[test]
    fn reduction_cancels_constructed_factor() {
        // (x - y) * x / (x - y) reduces back to x.
        let f = LocalizedFn::from_poly(&mono(vec![1, 0]) - &mono(vec![0, 1]));
        let g = f.mul_xi_over_diff(0, 1);
        assert_eq!(g.to_poly().unwrap(), mono(vec![1, 0]));
    }

    #[test]
    fn flipped_pair_gets_sign() {
        // y/(y - x) applied to (x - y): (x-y)*y/(y-x) = -y.
        let f = LocalizedFn::from_poly(&mono(vec![1, 0]) - &mono(vec![0, 1]));
        let g = f.mul_xi_over_diff(1, 0);
        assert_eq!(g.to_poly().unwrap(), mono(vec![0, 1]).neg_ref());
    }

    #[test]
    fn add_with_common_denominator() {
        // x/(x-y) + y/(y-x) = (x - y)/(x - y) = 1.
        let one = LocalizedFn::from_poly(LaurentPoly::one(1, 1));
        let a = one.mul_xi_over_diff(0, 1);
        let b = one.mul_xi_over_diff(1, 0);
        let s = a.add(&b);
        assert_eq!(s.to_poly().unwrap(), LaurentPoly::one(1, 1));
    }

    #[test]
    fn euler_quotient_rule() {
        // f = 1/(x - y). x d/dx f = -x/(x-y)^2.
        let one = LaurentPoly::one(1, 1);
        let f = LocalizedFn {
            num: one,
            den: [((0usize, 1usize), 1u32)].into_iter().collect(),
        };
        let d = f.euler_deriv(0);
        assert_eq!(d.num(), &mono(vec![1, 0]).scale(&rat_int(-1)));
        assert_eq!(d.den().get(&(0, 1)), Some(&2));
        // Cross-check against the closed form by clearing denominators:
        // d * (x-y)^2 must equal -x.
        let lin = &mono(vec![1, 0]) - &mono(vec![0, 1]);
        let cleared = d.mul_poly(&lin.mul_ref(&lin));
        assert_eq!(cleared.to_poly().unwrap(), mono(vec![1, 0]).scale(&rat(-1, 1)));
    }
}
