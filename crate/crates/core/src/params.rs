//! Shape and deformation parameter of the system: `n` x-variables, `m`
//! y-variables and the nonzero parameter `k`. The y-variables are indexed
//! after the x-variables, so variable `n + j` is `y_{j+1}`.

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::{parse_rat, rat, rat_to_string, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeformedParams {
    pub n: usize,
    pub m: usize,
    pub k: Rat,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("need at least one variable (n + m >= 1)")]
    NoVariables,
    #[error("deformation parameter k must be nonzero")]
    ZeroK,
    #[error("invalid parameter value: {0}")]
    Invalid(String),
}

impl DeformedParams {
    pub fn new(n: usize, m: usize, k: Rat) -> Result<Self, ParamError> {
        if n + m == 0 {
            return Err(ParamError::NoVariables);
        }
        if k.is_zero() {
            return Err(ParamError::ZeroK);
        }
        Ok(DeformedParams { n, m, k })
    }

    /// The symmetric-pair value `k = -1/2`.
    pub fn standard(n: usize, m: usize) -> Self {
        Self::new(n, m, rat(-1, 2)).expect("valid standard parameters")
    }

    pub fn nvars(&self) -> usize {
        self.n + self.m
    }

    /// Parity of variable `i` (0-based): 0 for x-variables, 1 for y-variables.
    pub fn parity(&self, i: usize) -> u32 {
        debug_assert!(i < self.nvars());
        u32::from(i >= self.n)
    }

    /// `k^{p(i)}`.
    pub fn k_parity(&self, i: usize) -> Rat {
        if self.parity(i) == 0 {
            Rat::from_integer(1.into())
        } else {
            self.k.clone()
        }
    }

    /// `k^{-p(i)}`.
    pub fn k_parity_inv(&self, i: usize) -> Rat {
        if self.parity(i) == 0 {
            Rat::from_integer(1.into())
        } else {
            self.k.recip()
        }
    }

    /// `k^{1-p(j)}` (the cross-term weight in the operator recursion).
    pub fn k_cross(&self, j: usize) -> Rat {
        if self.parity(j) == 0 {
            self.k.clone()
        } else {
            Rat::from_integer(1.into())
        }
    }

    /// Default generator bound for character separation.
    pub fn pmax_default(&self) -> u32 {
        2 * (self.nvars() as u32)
    }

    /// Whether `k` is the symmetric-pair value `-1/2` that the weight
    /// combinatorics applies to.
    pub fn is_symmetric_value(&self) -> bool {
        self.k == rat(-1, 2)
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson { n: self.n, m: self.m, k: rat_to_string(&self.k) }
    }

    pub fn from_json(j: &ParamsJson) -> Result<Self, ParamError> {
        let k = parse_rat(&j.k).map_err(ParamError::Invalid)?;
        Self::new(j.n, j.m, k)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ParamsJson {
    pub n: usize,
    pub m: usize,
    pub k: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(DeformedParams::new(0, 0, rat(1, 2)), Err(ParamError::NoVariables));
        assert_eq!(DeformedParams::new(1, 1, rat(0, 5)), Err(ParamError::ZeroK));
        assert!(DeformedParams::new(0, 2, rat(3, 1)).is_ok());
    }

    #[test]
    fn parity_weights() {
        let p = DeformedParams::standard(1, 1);
        assert_eq!(p.k_parity(0), rat(1, 1));
        assert_eq!(p.k_parity(1), rat(-1, 2));
        assert_eq!(p.k_parity_inv(1), rat(-2, 1));
        assert_eq!(p.k_cross(0), rat(-1, 2));
        assert_eq!(p.k_cross(1), rat(1, 1));
        assert_eq!(p.pmax_default(), 4);
        assert!(p.is_symmetric_value());
    }
}
