//! Harish-Chandra images of the deformed CMS integrals.
//!
//! The image of the partial operator on variable `i` is a polynomial
//! `d_i^(p)` in `xi_1, ..., xi_{n+m}` obeying the one-sided recursion
//!
//! ```text
//! d_i^(1) = k^{p(i)} xi_i,
//! d_i^(p) = d_i^(1) d_i^(p-1) - sum_{j > i} k^{1-p(j)} (d_i^(p-1) - d_j^(p-1))
//! ```
//!
//! (only `j > i` contributes, unlike the operator recursion itself). The
//! image of `L_p` is the weighted sum over `i`. The homomorphism is
//! injective, so equality of images certifies operator identities, and its
//! image is characterized by two conditions tested here exactly: symmetry in
//! the variables shifted by the deformed Weyl vector, and invariance under
//! `xi -> xi - e_i + e_j` on the hyperplanes
//! `(xi + rho(k), e_i - e_j) = (1 + k)/2` with the parity-weighted bilinear
//! form `(e_i, e_i) = 1` (x-block), `(e_j, e_j) = k` (y-block).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::params::DeformedParams;
use crate::rat::{parse_rat, rat, rat_to_string, seeded_rng, Rat};

/// Sparse polynomial in the Harish-Chandra variables, `k` already
/// substituted as a rational.
#[derive(Clone, PartialEq, Eq)]
pub struct HcPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl HcPoly {
    pub fn zero(nvars: usize) -> Self {
        HcPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut d = vec![0u32; nvars];
        d[idx] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(d, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, deg: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        assert_eq!(deg.len(), self.nvars);
        match self.terms.entry(deg) {
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (da, ca) in self.terms() {
            for (db, cb) in other.terms() {
                let d: Vec<u32> = da.iter().zip(db.iter()).map(|(a, b)| a + b).collect();
                out.add_term(d, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (d, c) in self.terms() {
            let mut t = c.clone();
            for (e, x) in d.iter().zip(point.iter()) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes each variable by an affine image: variable `t` becomes
    /// `xi_{perm[t]} + shift[t]`.
    pub fn compose_affine(&self, perm: &[usize], shift: &[Rat]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        assert_eq!(shift.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (d, c) in self.terms() {
            let mut term = Self::constant(self.nvars, c.clone());
            for t in 0..self.nvars {
                if d[t] == 0 {
                    continue;
                }
                let mut lin = Self::var(self.nvars, perm[t]);
                lin.add_term(vec![0; self.nvars], shift[t].clone());
                for _ in 0..d[t] {
                    term = term.mul(&lin);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn to_json(&self) -> HcPolyJson {
        HcPolyJson {
            vars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| HcTermJson { exp: d.clone(), coef: rat_to_string(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &HcPolyJson) -> Result<Self, String> {
        let mut p = Self::zero(j.vars);
        for t in &j.terms {
            if t.exp.len() != j.vars {
                return Err(format!("term degree {:?} has wrong length", t.exp));
            }
            p.add_term(t.exp.clone(), parse_rat(&t.coef)?);
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HcPolyJson {
    pub vars: usize,
    pub terms: Vec<HcTermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HcTermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl fmt::Debug for HcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*xi^{:?}", rat_to_string(c), d)?;
        }
        Ok(())
    }
}

/// The table `d_i^(q)` for `q = 1..=pmax` and all variables:
/// `table[q-1][i] = d_i^(q)`.
pub fn hc_partial_table(pmax: u32, params: &DeformedParams) -> Vec<Vec<HcPoly>> {
    assert!(pmax >= 1);
    let nv = params.nvars();
    let first: Vec<HcPoly> =
        (0..nv).map(|i| HcPoly::var(nv, i).scale(&params.k_parity(i))).collect();
    let mut table = vec![first];
    for q in 2..=pmax {
        let prev = &table[(q - 2) as usize];
        let row: Vec<HcPoly> = (0..nv)
            .map(|i| {
                let mut acc = table[0][i].mul(&prev[i]);
                for j in (i + 1)..nv {
                    let diff = prev[i].sub(&prev[j]);
                    acc = acc.sub(&diff.scale(&params.k_cross(j)));
                }
                acc
            })
            .collect();
        table.push(row);
    }
    table
}

/// `d_i^(p)` (0-based variable index).
pub fn hc_partial(i: usize, p: u32, params: &DeformedParams) -> HcPoly {
    assert!(i < params.nvars());
    hc_partial_table(p, params)[(p - 1) as usize][i].clone()
}

/// The image of the integral `L_p`.
pub fn hc_integral(p: u32, params: &DeformedParams) -> HcPoly {
    let table = hc_partial_table(p, params);
    let row = &table[(p - 1) as usize];
    let mut acc = HcPoly::zero(params.nvars());
    for (i, d) in row.iter().enumerate() {
        acc = acc.add(&d.scale(&params.k_parity_inv(i)));
    }
    acc
}

/// The eigenvalue of `L_p` on the leading term labelled by the dominant
/// weight `la`.
pub fn chi_eval(la: &[i64], p: u32, params: &DeformedParams) -> Rat {
    assert_eq!(la.len(), params.nvars());
    let point: Vec<Rat> = la.iter().map(|&v| Rat::from_integer(v.into())).collect();
    hc_integral(p, params).eval(&point)
}

/// `(chi(L_1), ..., chi(L_pmax))` for grouping by character.
pub fn character_vector(la: &[i64], pmax: u32, params: &DeformedParams) -> Vec<Rat> {
    let point: Vec<Rat> = la.iter().map(|&v| Rat::from_integer(v.into())).collect();
    let table = hc_partial_table(pmax, params);
    (1..=pmax)
        .map(|p| {
            let row = &table[(p - 1) as usize];
            let mut acc = Rat::zero();
            for (i, d) in row.iter().enumerate() {
                acc += d.eval(&point) * params.k_parity_inv(i);
            }
            acc
        })
        .collect()
}

/// The deformed Weyl vector: entry `i < n` is `(k(2(i+1) - n - 1) - m)/2`,
/// entry `n + j` is `(k^{-1}(2(j+1) - m - 1) + n)/2`.
pub fn rho_k(params: &DeformedParams) -> Vec<Rat> {
    let (n, m) = (params.n, params.m);
    let mut out = Vec::with_capacity(n + m);
    for i in 1..=n as i64 {
        let v = (&params.k * rat(2 * i - n as i64 - 1, 1) - rat(m as i64, 1)) * rat(1, 2);
        out.push(v);
    }
    for j in 1..=m as i64 {
        let v = (params.k.recip() * rat(2 * j - m as i64 - 1, 1) + rat(n as i64, 1)) * rat(1, 2);
        out.push(v);
    }
    out
}

/// Report from the image-membership test; empty failure lists mean pass.
#[derive(Clone, Debug, Default)]
pub struct MembershipReport {
    /// Adjacent transpositions (0-based position, per block) that break the
    /// shifted symmetry.
    pub symmetry_failures: Vec<(usize, usize)>,
    /// `(i, j, sample point)` triples where the hyperplane identity fails.
    pub hyperplane_failures: Vec<(usize, usize, Vec<Rat>)>,
}

impl MembershipReport {
    pub fn pass(&self) -> bool {
        self.symmetry_failures.is_empty() && self.hyperplane_failures.is_empty()
    }
}

/// Tests membership in the Harish-Chandra image.
///
/// Shifted symmetry is checked as an exact polynomial identity for every
/// adjacent transposition `w`: `f(w(xi + rho) - rho) = f(xi)`. The hyperplane
/// translation condition is checked on `samples` exact rational points per
/// (x, y) variable pair, drawn from the seeded generator.
pub fn check_image_membership(
    f: &HcPoly,
    params: &DeformedParams,
    samples: usize,
    seed: u64,
) -> MembershipReport {
    let nv = params.nvars();
    assert_eq!(f.nvars(), nv);
    let rho = rho_k(params);
    let mut report = MembershipReport::default();

    let check_swap = |a: usize, b: usize| -> bool {
        let mut perm: Vec<usize> = (0..nv).collect();
        perm.swap(a, b);
        let shift: Vec<Rat> = (0..nv).map(|t| &rho[perm[t]] - &rho[t]).collect();
        f.compose_affine(&perm, &shift) == *f
    };
    for a in 0..params.n.saturating_sub(1) {
        if !check_swap(a, a + 1) {
            report.symmetry_failures.push((a, a + 1));
        }
    }
    for b in 0..params.m.saturating_sub(1) {
        let (a, c) = (params.n + b, params.n + b + 1);
        if !check_swap(a, c) {
            report.symmetry_failures.push((a, c));
        }
    }

    let mut rng = seeded_rng(seed);
    let half = (Rat::one() + &params.k) * rat(1, 2);
    for i in 0..params.n {
        for j in params.n..nv {
            for _ in 0..samples {
                let mut xi: Vec<Rat> =
                    (0..nv).map(|_| crate::rat::random_rat(&mut rng, 6, 4)).collect();
                // Solve (xi_i + rho_i) - k (xi_j + rho_j) = (1 + k)/2 for xi_i.
                xi[i] = &half + &(&params.k * (&xi[j] + &rho[j])) - &rho[i];
                let mut translated = xi.clone();
                translated[i] = &translated[i] - &Rat::one();
                translated[j] = &translated[j] + &Rat::one();
                if f.eval(&translated) != f.eval(&xi) {
                    report.hyperplane_failures.push((i, j - params.n, xi));
                    break;
                }
            }
        }
    }
    report
}

/// The image of a linear combination of products of integrals:
/// each term `(c, [p1, p2, ...])` contributes `c * phi(L_p1) ... phi(L_pr)`.
pub fn hc_combination(terms: &[(Rat, Vec<u32>)], params: &DeformedParams) -> HcPoly {
    let nv = params.nvars();
    let pmax = terms.iter().flat_map(|(_, ps)| ps.iter().copied()).max().unwrap_or(1);
    let table = hc_partial_table(pmax, params);
    let integral = |p: u32| -> HcPoly {
        let row = &table[(p - 1) as usize];
        let mut acc = HcPoly::zero(nv);
        for (i, d) in row.iter().enumerate() {
            acc = acc.add(&d.scale(&params.k_parity_inv(i)));
        }
        acc
    };
    let mut out = HcPoly::zero(nv);
    for (c, ps) in terms {
        let mut prod = HcPoly::constant(nv, c.clone());
        for &p in ps {
            prod = prod.mul(&integral(p));
        }
        out = out.add(&prod);
    }
    out
}

/// Equality of two operator combinations, certified through the injective
/// Harish-Chandra homomorphism (the image algebra is commutative, so products
/// of integrals are well defined).
pub fn certify_operator_identity(
    lhs: &[(Rat, Vec<u32>)],
    rhs: &[(Rat, Vec<u32>)],
    params: &DeformedParams,
) -> bool {
    hc_combination(lhs, params) == hc_combination(rhs, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn std11() -> DeformedParams {
        DeformedParams::standard(1, 1)
    }

    /// Generic-k parameters for hand-expansion checks.
    fn with_k(n: usize, m: usize, k: Rat) -> DeformedParams {
        DeformedParams::new(n, m, k).unwrap()
    }

    #[test]
    fn partial_images_hand_expanded() {
        let k = rat(3, 7);
        let p = with_k(1, 1, k.clone());
        // d_1^(1) = xi_1.
        assert_eq!(hc_partial(0, 1, &p), HcPoly::var(2, 0));
        // d_2^(2) = k^2 xi_2^2 (no j > 2 terms).
        let mut expect = HcPoly::zero(2);
        expect.add_term(vec![0, 2], &k * &k);
        assert_eq!(hc_partial(1, 2, &p), expect);
        // d_1^(2) = xi_1^2 - xi_1 + k xi_2.
        let mut expect = HcPoly::zero(2);
        expect.add_term(vec![2, 0], Rat::one());
        expect.add_term(vec![1, 0], -Rat::one());
        expect.add_term(vec![0, 1], k.clone());
        assert_eq!(hc_partial(0, 2, &p), expect);
    }

    #[test]
    fn integral_images() {
        let k = rat(-5, 3);
        let p = with_k(1, 1, k.clone());
        // p = 1: sum of the variables.
        let expect = HcPoly::var(2, 0).add(&HcPoly::var(2, 1));
        assert_eq!(hc_integral(1, &p), expect);
        // p = 2: xi_1^2 - xi_1 + k xi_2 + k xi_2^2.
        let mut expect = HcPoly::zero(2);
        expect.add_term(vec![2, 0], Rat::one());
        expect.add_term(vec![1, 0], -Rat::one());
        expect.add_term(vec![0, 1], k.clone());
        expect.add_term(vec![0, 2], k.clone());
        assert_eq!(hc_integral(2, &p), expect);
    }

    #[test]
    fn chi_matches_closed_forms() {
        let p = std11();
        // chi(L_1) is the total weight.
        assert_eq!(chi_eval(&[0, 0], 1, &p), rat_int(0));
        assert_eq!(chi_eval(&[3, -1], 1, &p), rat_int(2));
        // chi(L_2) at (i, j) is i(i-1) - j(j+1)/2.
        for i in -5..=5i64 {
            for j in -5..=5i64 {
                let expect = rat(i * (i - 1), 1) - rat(j * (j + 1), 2);
                assert_eq!(chi_eval(&[i, j], 2, &p), expect);
            }
        }
        assert_eq!(chi_eval(&[1, -2], 2, &p), rat_int(-1));
        // chi(L_3) at (i, j): hand-expanded cubic.
        for i in -4..=4i64 {
            for j in -4..=4i64 {
                let expect = rat(i * i * i - 2 * i * i + i, 1) - rat(i * j, 2)
                    + rat(j, 2)
                    + rat(j * j, 4)
                    + rat(j * j * j, 4);
                assert_eq!(chi_eval(&[i, j], 3, &p), expect);
            }
        }
    }

    #[test]
    fn rho_k_values() {
        assert_eq!(rho_k(&std11()), vec![rat(-1, 2), rat(1, 2)]);
        let p = with_k(2, 0, rat_int(1));
        assert_eq!(rho_k(&p), vec![rat(-1, 2), rat(1, 2)]);
        let p = with_k(1, 2, rat(-1, 2));
        assert_eq!(rho_k(&p), vec![rat_int(-1), rat(3, 2), rat(-1, 2)]);
    }

    #[test]
    fn membership_passes_on_integrals() {
        let p = std11();
        for order in 1..=4 {
            let f = hc_integral(order, &p);
            assert!(check_image_membership(&f, &p, 20, 11).pass(), "order {order}");
        }
        // A generic-k spot check at (2, 1).
        let p = with_k(2, 1, rat(2, 3));
        let f = hc_integral(3, &p);
        assert!(check_image_membership(&f, &p, 10, 12).pass());
    }

    #[test]
    fn membership_rejects_bare_variable() {
        let p = std11();
        let f = HcPoly::var(2, 0);
        let rep = check_image_membership(&f, &p, 5, 13);
        assert!(!rep.pass());
        assert!(!rep.hyperplane_failures.is_empty());
    }

    #[test]
    fn certify_examples() {
        let p = std11();
        let one = Rat::one();
        // L_1 L_2 = L_2 L_1 trivially in the commutative image.
        assert!(certify_operator_identity(
            &[(one.clone(), vec![1, 2])],
            &[(one.clone(), vec![2, 1])],
            &p
        ));
        // L_2 != L_1^2.
        assert!(!certify_operator_identity(
            &[(one.clone(), vec![2])],
            &[(one, vec![1, 1])],
            &p
        ));
    }
}
