//! Highest-weight combinatorics for the symmetric pair behind the deformed
//! system: admissible weights, the (A, B) set calculus, central-character
//! equivalence, class enumeration, spherical typicality, Kac flags, and odd
//! reflections.
//!
//! Admissible weights live in the length `n + 2m` convention: the first `n`
//! entries are even, and the last `2m` entries come in equal consecutive
//! pairs. The `sharp` bijection maps them to the length `n + m` dominant
//! weights that label leading exponents on the Laurent side.

use std::collections::BTreeSet;

use num::Zero;
use thiserror::Error;

use crate::hc::rho_k;
use crate::params::DeformedParams;
use crate::rat::{rat, Rat};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("weight is not admissible: {0}")]
    NotAdmissible(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("pair violates the admissible-set conditions: {0}")]
    NotInT(String),
    #[error("A and B intersect; the equivalence class is infinite")]
    InfiniteClass,
    #[error("A and B intersect; the pair is not reduced")]
    NotReduced,
    #[error("weight is not spherically typical")]
    NotTypical,
    #[error("class enumeration produced an invalid member: {0}")]
    EnumerationInvalid(String),
}

/// Is `la` (length `n + 2m`) admissible: even x-block, equal consecutive
/// pairs in the y-block?
pub fn is_admissible(la: &[i64], n: usize, m: usize) -> bool {
    la.len() == n + 2 * m
        && la[..n].iter().all(|v| v % 2 == 0)
        && (0..m).all(|j| la[n + 2 * j] == la[n + 2 * j + 1])
}

/// Is `la` additionally weakly decreasing on the x-block and on the y-block?
pub fn is_dominant_admissible(la: &[i64], n: usize, m: usize) -> bool {
    is_admissible(la, n, m)
        && la[..n].windows(2).all(|w| w[0] >= w[1])
        && la[n..].windows(2).all(|w| w[0] >= w[1])
}

fn require_dominant_admissible(la: &[i64], n: usize, m: usize) -> Result<(), WeightError> {
    if !is_admissible(la, n, m) {
        return Err(WeightError::NotAdmissible(format!("{la:?}")));
    }
    if !is_dominant_admissible(la, n, m) {
        return Err(WeightError::NotDominant(format!("{la:?}")));
    }
    Ok(())
}

/// Halves the x-block and collapses the equal pairs of the y-block:
/// `(2a_1, ..., 2a_n, c_1, c_1, ..., c_m, c_m) -> (a_1, ..., a_n, c_1, ..., c_m)`.
pub fn sharp(la: &[i64], n: usize, m: usize) -> Result<Vec<i64>, WeightError> {
    if !is_admissible(la, n, m) {
        return Err(WeightError::NotAdmissible(format!("{la:?}")));
    }
    let mut out = Vec::with_capacity(n + m);
    for v in &la[..n] {
        out.push(v / 2);
    }
    for j in 0..m {
        out.push(la[n + 2 * j]);
    }
    Ok(out)
}

/// Inverse of [`sharp`]: doubles the x-block and duplicates the y-entries.
pub fn sharp_inverse(v: &[i64], n: usize, m: usize) -> Vec<i64> {
    assert_eq!(v.len(), n + m);
    let mut out = Vec::with_capacity(n + 2 * m);
    for x in &v[..n] {
        out.push(2 * x);
    }
    for y in &v[n..] {
        out.push(*y);
        out.push(*y);
    }
    out
}

/// Integer-set encoding of a dominant admissible weight. Both sequences are
/// stored strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ABPair {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl ABPair {
    pub fn new(mut a: Vec<i64>, mut b: Vec<i64>) -> Self {
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        assert!(a.windows(2).all(|w| w[0] > w[1]), "A has repeats");
        assert!(b.windows(2).all(|w| w[0] > w[1]), "B has repeats");
        ABPair { a, b }
    }

    pub fn a_set(&self) -> BTreeSet<i64> {
        self.a.iter().copied().collect()
    }

    pub fn b_set(&self) -> BTreeSet<i64> {
        self.b.iter().copied().collect()
    }

    /// `B u (B - 1)`.
    pub fn c_set(&self) -> BTreeSet<i64> {
        let mut c = self.b_set();
        c.extend(self.b.iter().map(|v| v - 1));
        c
    }

    /// Conditions cut out by the weight correspondence: consecutive elements
    /// of `A` differ by an odd integer and `B` avoids its own shift
    /// (`B n (B-1)` empty, i.e. gaps of at least 2).
    pub fn in_t(&self) -> bool {
        self.a.windows(2).all(|w| (w[0] - w[1]) % 2 != 0)
            && self.b.windows(2).all(|w| w[0] - w[1] >= 2)
    }

    /// [`Self::in_t`] plus the parity anchor `a_1` even, which pins the pair
    /// to an actual admissible weight (the x-entries must be even).
    pub fn is_weight_pair(&self) -> bool {
        self.in_t() && self.a.first().is_none_or(|v| v % 2 == 0)
    }
}

/// `A = {la_i + 1 - i}`, `B = {-la_{n+2j} - n + 2j}` (1-based formulas).
pub fn to_ab(la: &[i64], n: usize, m: usize) -> Result<ABPair, WeightError> {
    require_dominant_admissible(la, n, m)?;
    let a: Vec<i64> = (1..=n as i64).map(|i| la[(i - 1) as usize] + 1 - i).collect();
    let b: Vec<i64> =
        (1..=m as i64).map(|j| -la[n + 2 * j as usize - 1] - n as i64 + 2 * j).collect();
    let pair = ABPair::new(a, b);
    if !pair.is_weight_pair() {
        return Err(WeightError::NotInT(format!("{pair:?}")));
    }
    Ok(pair)
}

/// Inverse of [`to_ab`] on weight pairs.
pub fn from_ab(pair: &ABPair, n: usize, m: usize) -> Result<Vec<i64>, WeightError> {
    if !pair.is_weight_pair() {
        return Err(WeightError::NotInT(format!("{pair:?}")));
    }
    let la = ab_to_weight_raw(pair, n, m);
    require_dominant_admissible(&la, n, m)?;
    Ok(la)
}

/// The weight formula without admissibility checks; used for dominance
/// comparisons of arbitrary pairs.
fn ab_to_weight_raw(pair: &ABPair, n: usize, m: usize) -> Vec<i64> {
    assert_eq!(pair.a.len(), n);
    assert_eq!(pair.b.len(), m);
    let mut la = vec![0i64; n + 2 * m];
    for (idx, &a) in pair.a.iter().enumerate() {
        let i = idx as i64 + 1;
        la[idx] = a - 1 + i;
    }
    // Stored descending; the defining formula indexes B ascending.
    for j in 1..=m as i64 {
        let b = pair.b[m - j as usize];
        let v = -b - n as i64 + 2 * j;
        la[n + 2 * j as usize - 2] = v;
        la[n + 2 * j as usize - 1] = v;
    }
    la
}

/// The pair of difference sets `(A \ C, C \ A)` with `C = B u (B-1)`;
/// central characters agree exactly when these keys agree.
pub fn equivalence_key(pair: &ABPair) -> (Vec<i64>, Vec<i64>) {
    let a = pair.a_set();
    let c = pair.c_set();
    (
        a.difference(&c).copied().collect(),
        c.difference(&a).copied().collect(),
    )
}

pub fn equivalent(p: &ABPair, q: &ABPair) -> bool {
    equivalence_key(p) == equivalence_key(q)
}

/// `s = |A n (B - 1)|` for a reduced pair (`A n B` empty).
pub fn atypicality_degree(pair: &ABPair) -> Result<usize, WeightError> {
    let a = pair.a_set();
    let b = pair.b_set();
    if !a.is_disjoint(&b) {
        return Err(WeightError::NotReduced);
    }
    let b_minus_1: BTreeSet<i64> = b.iter().map(|v| v - 1).collect();
    Ok(a.intersection(&b_minus_1).count())
}

/// Maximal integer segments of a finite set, ascending.
fn segments(set: &BTreeSet<i64>) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for &v in set {
        match out.last_mut() {
            Some((_, d)) if *d + 1 == v => *d = v,
            _ => out.push((v, v)),
        }
    }
    out
}

/// Rebuilds `B` from `C = B u (B-1)`: every maximal segment must have even
/// length and contributes its upper alternating elements.
fn rebuild_b(c: &BTreeSet<i64>) -> Result<Vec<i64>, WeightError> {
    let mut b = Vec::new();
    for (lo, hi) in segments(c) {
        let len = hi - lo + 1;
        if len % 2 != 0 {
            return Err(WeightError::EnumerationInvalid(format!(
                "segment [{lo},{hi}] has odd length"
            )));
        }
        let mut v = hi;
        while v > lo {
            b.push(v);
            v -= 2;
        }
    }
    b.sort_unstable_by(|x, y| y.cmp(x));
    Ok(b)
}

/// The full central-character equivalence class of a reduced pair, smallest
/// (dominance-least) member first.
///
/// The class is generated by independent keep/split choices on the maximal
/// segments of `B u (B-1)` that contain an element of `A n (B-1)`: splitting
/// the segment `[c, d]` at `a` replaces it by `[c, a-1] u [a+1, d+1]` and
/// replaces `a` by `d + 1` in `A`. Every produced member is validated against
/// the set conditions and equivalence; the count is exactly `2^s`.
pub fn enumerate_class(pair: &ABPair) -> Result<Vec<ABPair>, WeightError> {
    if !pair.in_t() {
        return Err(WeightError::NotInT(format!("{pair:?}")));
    }
    if !pair.a_set().is_disjoint(&pair.b_set()) {
        return Err(WeightError::InfiniteClass);
    }
    let c = pair.c_set();
    let segs = segments(&c);
    let a_set = pair.a_set();
    // Locate the marked segments: each holds at most one element of A.
    let mut marked: Vec<(usize, i64)> = Vec::new();
    for (idx, &(lo, hi)) in segs.iter().enumerate() {
        let inside: Vec<i64> = a_set.iter().copied().filter(|&v| v >= lo && v <= hi).collect();
        match inside.len() {
            0 => {}
            1 => marked.push((idx, inside[0])),
            _ => {
                return Err(WeightError::EnumerationInvalid(format!(
                    "segment [{lo},{hi}] holds {} elements of A",
                    inside.len()
                )))
            }
        }
    }
    let s = atypicality_degree(pair)?;
    if marked.len() != s {
        return Err(WeightError::EnumerationInvalid(format!(
            "found {} marked segments for atypicality degree {s}",
            marked.len()
        )));
    }
    let key = equivalence_key(pair);

    let mut members: Vec<ABPair> = Vec::new();
    for mask in 0u32..(1 << s) {
        let mut new_c: BTreeSet<i64> = BTreeSet::new();
        let mut new_a = a_set.clone();
        let split: BTreeSet<usize> = (0..s).filter(|t| mask & (1 << t) != 0).map(|t| marked[t].0).collect();
        for (idx, &(lo, hi)) in segs.iter().enumerate() {
            if split.contains(&idx) {
                let a = marked.iter().find(|(i, _)| *i == idx).unwrap().1;
                new_c.extend(lo..a);
                new_c.extend((a + 1)..=(hi + 1));
                if !new_a.remove(&a) || !new_a.insert(hi + 1) {
                    return Err(WeightError::EnumerationInvalid(format!(
                        "split of [{lo},{hi}] at {a} collides inside A"
                    )));
                }
            } else {
                new_c.extend(lo..=hi);
            }
        }
        let new_b = rebuild_b(&new_c)?;
        let member = ABPair::new(new_a.iter().rev().copied().collect(), new_b);
        if !member.in_t() {
            return Err(WeightError::EnumerationInvalid(format!("{member:?} leaves the set")));
        }
        if equivalence_key(&member) != key {
            return Err(WeightError::EnumerationInvalid(format!("{member:?} is not equivalent")));
        }
        members.push(member);
    }
    members.sort_by_key(|p| prefix_sums(&ab_to_weight_raw(p, pair.a.len(), pair.b.len())));
    members.dedup();
    if members.len() != 1 << s {
        return Err(WeightError::EnumerationInvalid(format!(
            "expected {} distinct members, got {}",
            1 << s,
            members.len()
        )));
    }
    if members[0] != *pair {
        return Err(WeightError::EnumerationInvalid(
            "input pair is not the least member".to_string(),
        ));
    }
    Ok(members)
}

fn prefix_sums(v: &[i64]) -> Vec<i64> {
    let mut acc = 0;
    v.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// Brute-force oracle: all dominant admissible weights within the coordinate
/// box of the given radius that share the central character of `la`.
/// Sorted like [`enumerate_class`] (dominance-compatible, least first).
pub fn class_by_search(
    la: &[i64],
    n: usize,
    m: usize,
    radius: i64,
) -> Result<Vec<Vec<i64>>, WeightError> {
    require_dominant_admissible(la, n, m)?;
    let key = equivalence_key(&to_ab(la, n, m)?);
    let mut out: Vec<Vec<i64>> = Vec::new();
    // Weakly decreasing even x-block, one value per position, inside the box.
    let mut xs: Vec<Vec<i64>> = vec![vec![]];
    for i in 0..n {
        let mut next = Vec::new();
        for prefix in &xs {
            let hi0 = la[i] + radius;
            let hi = prefix.last().map_or(hi0, |&p| hi0.min(p));
            let mut v = la[i] - radius;
            if v % 2 != 0 {
                v += 1;
            }
            while v <= hi {
                let mut e = prefix.clone();
                e.push(v);
                next.push(e);
                v += 2;
            }
        }
        xs = next;
    }
    // Weakly decreasing y-values (each then duplicated).
    let mut ys: Vec<Vec<i64>> = vec![vec![]];
    for j in 0..m {
        let base = la[n + 2 * j];
        let mut next = Vec::new();
        for prefix in &ys {
            let hi = prefix.last().map_or(base + radius, |&p| (base + radius).min(p));
            for v in (base - radius)..=hi {
                let mut e = prefix.clone();
                e.push(v);
                next.push(e);
            }
        }
        ys = next;
    }
    for x in &xs {
        for y in &ys {
            let mut w = x.clone();
            for v in y {
                w.push(*v);
                w.push(*v);
            }
            if !is_dominant_admissible(&w, n, m) {
                continue;
            }
            if equivalence_key(&to_ab(&w, n, m)?) == key {
                out.push(w);
            }
        }
    }
    out.sort_by_key(|w| prefix_sums(w));
    Ok(out)
}

/// The super Weyl vector in the length `n + 2m` convention.
pub fn rho2(n: usize, m: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n + 2 * m);
    for i in 1..=n as i64 {
        out.push(rat(n as i64 - 2 * m as i64 - 2 * i + 1, 2));
    }
    for j in 1..=2 * m as i64 {
        out.push(rat(2 * m as i64 + n as i64 - 2 * j + 1, 2));
    }
    out
}

/// Spherical typicality via the product of `(la + rho, eps_i - delta_{2j})`
/// over all (x, y) index pairs, with the superalgebra form
/// `(eps, eps) = 1`, `(delta, delta) = -1`; nonzero product means typical.
/// Agrees with `A n B` being empty.
pub fn is_spherically_typical(la: &[i64], n: usize, m: usize) -> Result<bool, WeightError> {
    require_dominant_admissible(la, n, m)?;
    let rho = rho2(n, m);
    for i in 0..n {
        for j in 0..m {
            let vi = rat(la[i], 1) + &rho[i];
            let vj = rat(la[n + 2 * j + 1], 1) + &rho[n + 2 * j + 1];
            if (vi + vj).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The same typicality condition written through the restricted root system:
/// the product of `(la^sharp + rho(k), alpha) - (alpha, alpha)/2` over the
/// positive restricted roots at `k = -1/2`, with `(e_x, e_x) = 1` and
/// `(e_y, e_y) = k`.
pub fn typicality_invariant_form(la: &[i64], n: usize, m: usize) -> Result<bool, WeightError> {
    require_dominant_admissible(la, n, m)?;
    let params = DeformedParams::standard(n, m);
    let k = &params.k;
    let sharp_la = sharp(la, n, m)?;
    let rho = rho_k(&params);
    let v: Vec<Rat> =
        sharp_la.iter().zip(rho.iter()).map(|(c, r)| rat(*c, 1) + r).collect();
    // x-x roots: (v_i - v_j) - 1.
    for i in 0..n {
        for j in (i + 1)..n {
            if (&v[i] - &v[j] - rat(1, 1)).is_zero() {
                return Ok(false);
            }
        }
    }
    // y-y roots: k (v_i - v_j) - k.
    for i in 0..m {
        for j in (i + 1)..m {
            if (k * (&v[n + i] - &v[n + j]) - k).is_zero() {
                return Ok(false);
            }
        }
    }
    // x-y roots: (v_i - k v_j) - (1 + k)/2.
    let half = (Rat::from_integer(1.into()) + k) * rat(1, 2);
    for i in 0..n {
        for j in 0..m {
            if (&v[i] - &(k * &v[n + j]) - &half).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Kac-flag quotients of the projective cover attached to a spherically
/// typical dominant admissible weight: exactly its equivalence class, each
/// member once, dominance-least (the weight itself) first.
pub fn kac_flag(la: &[i64], n: usize, m: usize) -> Result<Vec<Vec<i64>>, WeightError> {
    if !is_spherically_typical(la, n, m)? {
        return Err(WeightError::NotTypical);
    }
    let pair = to_ab(la, n, m)?;
    let members = enumerate_class(&pair)?;
    let mut out = Vec::with_capacity(members.len());
    for p in &members {
        out.push(from_ab(p, n, m)?);
    }
    Ok(out)
}

/// Moves every element of `a` (starting from the last) through `b` by the
/// odd-reflection rule: passing `x` over `y` leaves both unchanged when
/// `x != y` and increments both when `x == y`. Returns the transformed
/// `(b, a)`.
pub fn odd_reflection_f(a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut b_out = b.to_vec();
    let mut a_out = a.to_vec();
    for idx in (0..a_out.len()).rev() {
        let mut x = a_out[idx];
        for y in b_out.iter_mut() {
            if x == *y {
                *y += 1;
                x += 1;
            }
        }
        a_out[idx] = x;
    }
    (b_out, a_out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp(&[0, 0, 0], 1, 1).unwrap(), vec![0, 0]);
        assert_eq!(sharp(&[4, -3, -3], 1, 1).unwrap(), vec![2, -3]);
        assert!(sharp(&[1, 0, 0], 1, 1).is_err());
        // Round trip over a grid.
        for a in -3..=3i64 {
            for c in -3..=3i64 {
                let v = vec![a, c];
                assert_eq!(sharp(&sharp_inverse(&v, 1, 1), 1, 1).unwrap(), v);
            }
        }
    }

    #[test]
    fn to_ab_examples() {
        // (2i, j, j) -> ({2i}, {1 - j}).
        for i in -3..=3i64 {
            for j in -3..=3i64 {
                let pair = to_ab(&[2 * i, j, j], 1, 1).unwrap();
                assert_eq!(pair.a, vec![2 * i]);
                assert_eq!(pair.b, vec![1 - j]);
            }
        }
        let pair = to_ab(&[0, 0, 0], 1, 1).unwrap();
        assert_eq!((pair.a.clone(), pair.b.clone()), (vec![0], vec![1]));
    }

    #[test]
    fn ab_roundtrip_grid() {
        for n in 1..=2usize {
            for m in 1..=2usize {
                // Walk a small grid of dominant admissible weights.
                let las = grid_weights(n, m, 4);
                assert!(!las.is_empty());
                for la in las {
                    let pair = to_ab(&la, n, m).unwrap();
                    assert!(pair.is_weight_pair());
                    assert_eq!(from_ab(&pair, n, m).unwrap(), la);
                }
            }
        }
    }

    /// All dominant admissible weights with entries in [-r, r].
    fn grid_weights(n: usize, m: usize, r: i64) -> Vec<Vec<i64>> {
        let mut xs: Vec<Vec<i64>> = vec![vec![]];
        for i in 0..n {
            let mut next = Vec::new();
            for p in &xs {
                let hi = p.last().map_or(r, |&v| v.min(r));
                let mut v = -r;
                if v % 2 != 0 {
                    v += 1;
                }
                while v <= hi {
                    let mut e = p.clone();
                    e.push(v);
                    next.push(e);
                    v += 2;
                }
            }
            let _ = i;
            xs = next;
        }
        let mut ys: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..m {
            let mut next = Vec::new();
            for p in &ys {
                let hi = p.last().map_or(r, |&v| v.min(r));
                for v in -r..=hi {
                    let mut e = p.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            ys = next;
        }
        let mut out = Vec::new();
        for x in &xs {
            for y in &ys {
                let mut w = x.clone();
                for v in y {
                    w.push(*v);
                    w.push(*v);
                }
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn equivalence_examples() {
        let p = ABPair::new(vec![0], vec![2]);
        assert!(equivalent(&p, &p));
        // (a, a) ~ (a-2, a-1) for even a.
        for a in [-4i64, -2, 0, 2, 4] {
            let lhs = ABPair::new(vec![a], vec![a]);
            let rhs = ABPair::new(vec![a - 2], vec![a - 1]);
            assert!(equivalent(&lhs, &rhs), "a = {a}");
        }
        let q = ABPair::new(vec![2], vec![2]);
        assert!(!equivalent(&p, &q));
    }

    #[test]
    fn equivalence_is_an_equivalence_relation() {
        let pairs = [
            ABPair::new(vec![0], vec![1]),
            ABPair::new(vec![2], vec![2]),
            ABPair::new(vec![0], vec![2]),
            ABPair::new(vec![-2], vec![-1]),
            ABPair::new(vec![0], vec![0]),
        ];
        for p in &pairs {
            assert!(equivalent(p, p));
            for q in &pairs {
                assert_eq!(equivalent(p, q), equivalent(q, p));
                for r in &pairs {
                    if equivalent(p, q) && equivalent(q, r) {
                        assert!(equivalent(p, r));
                    }
                }
            }
        }
    }

    #[test]
    fn atypicality_examples() {
        assert_eq!(atypicality_degree(&ABPair::new(vec![0], vec![2])).unwrap(), 0);
        assert_eq!(atypicality_degree(&ABPair::new(vec![1], vec![2])).unwrap(), 1);
        assert_eq!(
            atypicality_degree(&ABPair::new(vec![0], vec![0])),
            Err(WeightError::NotReduced)
        );
    }

    #[test]
    fn enumerate_typical_class_is_singleton() {
        let p = ABPair::new(vec![0], vec![2]);
        assert_eq!(enumerate_class(&p).unwrap(), vec![p]);
    }

    #[test]
    fn enumerate_two_element_class() {
        let p = ABPair::new(vec![-2], vec![-1]);
        let class = enumerate_class(&p).unwrap();
        assert_eq!(class, vec![p, ABPair::new(vec![0], vec![0])]);
    }

    #[test]
    fn enumerate_s2_class_has_four_members() {
        // A = {4, 1}, B = {5, 2}: both elements of A sit in B - 1.
        let p = ABPair::new(vec![4, 1], vec![5, 2]);
        assert_eq!(atypicality_degree(&p).unwrap(), 2);
        let class = enumerate_class(&p).unwrap();
        assert_eq!(class.len(), 4);
        assert_eq!(class[0], p);
        let expected: BTreeSet<ABPair> = [
            ABPair::new(vec![4, 1], vec![5, 2]),
            ABPair::new(vec![6, 1], vec![6, 2]),
            ABPair::new(vec![4, 3], vec![5, 3]),
            ABPair::new(vec![6, 3], vec![6, 3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(class.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn enumerate_rejects_infinite_class() {
        let p = ABPair::new(vec![0], vec![0]);
        assert_eq!(enumerate_class(&p), Err(WeightError::InfiniteClass));
    }

    #[test]
    fn search_oracle_examples() {
        // Typical weight: the class is the weight alone.
        let la = vec![2, 3, 3];
        assert_eq!(class_by_search(&la, 1, 1, 5).unwrap(), vec![la.clone()]);
        // The (0,0,0) class has exactly two members within radius 4.
        let class = class_by_search(&[0, 0, 0], 1, 1, 4).unwrap();
        assert_eq!(class, vec![vec![0, 0, 0], vec![2, -1, -1]]);
    }

    #[test]
    fn enumerate_agrees_with_search_on_small_grid() {
        // Exhaustive cross-check of the class enumeration against the
        // brute-force oracle over a small weight box.
        for (n, m) in [(1usize, 1usize), (2, 1)] {
            for la in grid_weights(n, m, 2) {
                let pair = to_ab(&la, n, m).unwrap();
                if !pair.a_set().is_disjoint(&pair.b_set()) {
                    continue;
                }
                let enumerated: Vec<Vec<i64>> = enumerate_class(&pair)
                    .unwrap()
                    .iter()
                    .map(|p| from_ab(p, n, m).unwrap())
                    .collect();
                let searched = class_by_search(&la, n, m, 6).unwrap();
                assert_eq!(enumerated, searched, "la = {la:?} (n, m) = ({n}, {m})");
            }
        }
    }

    #[test]
    fn typicality_examples() {
        assert!(is_spherically_typical(&[0, 0, 0], 1, 1).unwrap());
        assert!(!is_spherically_typical(&[0, 1, 1], 1, 1).unwrap());
        // At (1, 1) typicality fails exactly on 2i + j = 1.
        for i in -3..=3i64 {
            for j in -3..=3i64 {
                let expect = 2 * i + j != 1;
                assert_eq!(
                    is_spherically_typical(&[2 * i, j, j], 1, 1).unwrap(),
                    expect,
                    "(i, j) = ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn invariant_form_mirrors_star_product() {
        for la in [vec![0i64, 0, 0], vec![0, 1, 1], vec![4, -3, -3]] {
            assert_eq!(
                typicality_invariant_form(&la, 1, 1).unwrap(),
                is_spherically_typical(&la, 1, 1).unwrap(),
                "la = {la:?}"
            );
        }
    }

    #[test]
    fn typicality_triple_equivalence_small_grid() {
        for (n, m) in [(1usize, 1usize), (2, 1), (1, 2)] {
            for la in grid_weights(n, m, 3) {
                let star = is_spherically_typical(&la, n, m).unwrap();
                let pair = to_ab(&la, n, m).unwrap();
                let disjoint = pair.a_set().is_disjoint(&pair.b_set());
                let inv = typicality_invariant_form(&la, n, m).unwrap();
                assert_eq!(star, disjoint, "star vs A n B at {la:?}");
                assert_eq!(star, inv, "star vs invariant form at {la:?}");
            }
        }
    }

    #[test]
    fn kac_flag_examples() {
        // Typical, s = 0: the flag is the weight alone.
        assert_eq!(kac_flag(&[2, 3, 3], 1, 1).unwrap(), vec![vec![2, 3, 3]]);
        // s = 1: two quotients, least first.
        assert_eq!(
            kac_flag(&[0, 0, 0], 1, 1).unwrap(),
            vec![vec![0, 0, 0], vec![2, -1, -1]]
        );
        // Atypical weights are rejected.
        assert_eq!(kac_flag(&[0, 1, 1], 1, 1), Err(WeightError::NotTypical));
    }

    #[test]
    fn odd_reflection_examples() {
        // The worked three-by-four example.
        assert_eq!(
            odd_reflection_f(&[3, 2, 5], &[3, 1, 2, 4]),
            (vec![4, 1, 3, 5], vec![5, 3, 5])
        );
        // Single-element rule.
        assert_eq!(odd_reflection_f(&[7], &[2]), (vec![2], vec![7]));
        assert_eq!(odd_reflection_f(&[1], &[1]), (vec![2], vec![2]));
    }
}
