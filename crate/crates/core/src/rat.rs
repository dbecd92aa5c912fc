//! Scalar layer: arbitrary-precision rationals plus seeded sampling helpers.
//!
//! `Rat` is always stored reduced with a positive denominator (guaranteed by
//! `num`), so exact equality of values is exact equality of representations.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rat = BigRational;

/// Default seed for every reproducible sampling path.
pub const DEFAULT_SEED: u64 = 1729;

pub fn rat_int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

/// `p/q`, reduced. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|e| format!("bad rational {s:?}: {e}")),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().map_err(|e| format!("bad numerator {p:?}: {e}"))?;
            let q = q.trim().parse::<BigInt>().map_err(|e| format!("bad denominator {q:?}: {e}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational with numerator in `[-bound, bound]` and denominator in `[1, den_bound]`.
pub fn random_rat(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> Rat {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=den_bound);
    rat(p, q)
}

/// Random nonzero rational, suitable as a deformation parameter.
pub fn random_nonzero_rat(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> Rat {
    loop {
        let r = random_rat(rng, bound, den_bound);
        if !r.is_zero() {
            return r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
        assert_eq!(rat_to_string(&rat(-1, 2)), "-1/2");
        assert_eq!(rat_to_string(&rat(1, -2)), "-1/2");
        assert_eq!(rat_to_string(&rat_int(0)), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "5", "-7", "3/4", "-1/2", "10/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&rat_to_string(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let mut a = seeded_rng(DEFAULT_SEED);
        let mut b = seeded_rng(DEFAULT_SEED);
        for _ in 0..10 {
            assert_eq!(random_rat(&mut a, 9, 9), random_rat(&mut b, 9, 9));
        }
    }
}
