//! The algebra of quasi-invariant Laurent polynomials.
//!
//! A Laurent polynomial in `n` x-variables and `m` y-variables is
//! quasi-invariant when it is invariant under permutations within each block
//! and, for every pair `(i, j)`, the combination
//! `(x_i d/dx_i - k y_j d/dy_j) f` vanishes on the hyperplane `x_i = y_j`.
//!
//! The module builds the finite-dimensional invariant subspaces cut out by a
//! support constraint (these are modules over the whole integrals algebra)
//! and the Schur-product generators with a prescribed top term.

use std::collections::BTreeSet;

use num::One;

use crate::hull::hull_lattice_points;
use crate::laurent::{Exponent, LaurentPoly};
use crate::matrix::ExactMatrix;
use crate::params::DeformedParams;
use crate::rat::Rat;

/// Outcome of a quasi-invariance check; failures carry the violated
/// transposition or hyperplane pair (all indices 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiWitness {
    /// Not invariant under swapping x-variables `pos` and `pos + 1`.
    SymmetryX(usize),
    /// Not invariant under swapping y-variables `pos` and `pos + 1`.
    SymmetryY(usize),
    /// The hyperplane condition fails for x-variable `i` and y-variable `j`.
    Pair { i: usize, j: usize },
}

/// Checks quasi-invariance, returning the first violation found.
pub fn is_quasi_invariant(f: &LaurentPoly, params: &DeformedParams) -> Result<(), QuasiWitness> {
    let (n, m) = f.shape();
    assert_eq!((n, m), (params.n, params.m), "shape mismatch with params");
    for a in 0..n.saturating_sub(1) {
        if f.swap_vars(a, a + 1) != *f {
            return Err(QuasiWitness::SymmetryX(a));
        }
    }
    for b in 0..m.saturating_sub(1) {
        if f.swap_vars(n + b, n + b + 1) != *f {
            return Err(QuasiWitness::SymmetryY(b));
        }
    }
    for i in 0..n {
        for j in 0..m {
            let g = f.euler_deriv(i).sub_ref(&f.euler_deriv(n + j).scale(&params.k));
            if !g.substitute_equal(i, n + j).is_zero() {
                return Err(QuasiWitness::Pair { i, j });
            }
        }
    }
    Ok(())
}

/// Sorts the x-block and y-block of an exponent into weakly decreasing order.
pub fn dominant_rep(exp: &[i64], n: usize, m: usize) -> Exponent {
    assert_eq!(exp.len(), n + m);
    let mut out = exp.to_vec();
    out[..n].sort_unstable_by(|a, b| b.cmp(a));
    out[n..].sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn is_dominant(exp: &[i64], n: usize, m: usize) -> bool {
    dominant_rep(exp, n, m) == exp
}

/// The orbit of an exponent under independent permutations of the two blocks.
pub fn orbit(exp: &[i64], n: usize, m: usize) -> BTreeSet<Exponent> {
    assert_eq!(exp.len(), n + m);
    fn perms(vals: &[i64]) -> BTreeSet<Vec<i64>> {
        if vals.is_empty() {
            return [vec![]].into_iter().collect();
        }
        let mut out = BTreeSet::new();
        let mut sorted = vals.to_vec();
        sorted.sort_unstable();
        // Heap-free unique permutation generation over small blocks.
        fn rec(remaining: &mut Vec<i64>, prefix: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
            if remaining.is_empty() {
                out.insert(prefix.clone());
                return;
            }
            let mut last: Option<i64> = None;
            for idx in 0..remaining.len() {
                let v = remaining[idx];
                if last == Some(v) {
                    continue;
                }
                last = Some(v);
                remaining.remove(idx);
                prefix.push(v);
                rec(remaining, prefix, out);
                prefix.pop();
                remaining.insert(idx, v);
            }
        }
        rec(&mut sorted, &mut Vec::new(), &mut out);
        out
    }
    let mut set = BTreeSet::new();
    for xs in perms(&exp[..n]) {
        for ys in perms(&exp[n..]) {
            let mut e = xs.clone();
            e.extend(ys.iter());
            set.insert(e);
        }
    }
    set
}

/// The monomial symmetric function of the orbit of `la` (each orbit monomial
/// with coefficient 1).
pub fn orbit_sum(la: &[i64], n: usize, m: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n, m);
    for e in orbit(la, n, m) {
        p.add_term(e, Rat::one());
    }
    p
}

/// A finite-dimensional subspace of the quasi-invariant algebra cut out by a
/// support constraint, together with the parameters it was built for.
///
/// `support` is closed under the hull-lattice operation and the block
/// permutation action; `elements` is a canonical basis of all quasi-invariants
/// supported inside it. The subspace is invariant under every integral `L_p`.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub support: BTreeSet<Exponent>,
    pub elements: Vec<LaurentPoly>,
    pub params: DeformedParams,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Dominant exponents contained in the support, largest first.
    pub fn dominant_support(&self) -> Vec<Exponent> {
        let (n, m) = (self.params.n, self.params.m);
        let mut v: Vec<Exponent> =
            self.support.iter().filter(|e| is_dominant(e, n, m)).cloned().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Builds the invariant subspace spanned by all quasi-invariants whose
/// support lies in the hull/symmetry closure of `support_seed`.
pub fn invariant_subspace_basis(
    support_seed: &BTreeSet<Exponent>,
    params: &DeformedParams,
) -> SubspaceBasis {
    assert!(!support_seed.is_empty(), "empty support seed");
    let (n, m) = (params.n, params.m);
    // Close under the group action first so the hull is symmetric too.
    let mut symmetric: BTreeSet<Exponent> = BTreeSet::new();
    for e in support_seed {
        symmetric.extend(orbit(e, n, m));
    }
    let support = hull_lattice_points(&symmetric.iter().cloned().collect::<Vec<_>>());

    let reps: Vec<Exponent> = {
        let mut v: Vec<Exponent> =
            support.iter().filter(|e| is_dominant(e, n, m)).cloned().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let sums: Vec<LaurentPoly> = reps.iter().map(|r| orbit_sum(r, n, m)).collect();

    let elements = if n == 0 || m == 0 {
        // No hyperplane conditions: the orbit sums themselves are the basis.
        sums
    } else {
        // By symmetry it is enough to impose the condition for the first
        // x-variable against the first y-variable; the remaining pairs follow
        // by conjugation and are re-checked per element below.
        let constraints: Vec<LaurentPoly> = sums
            .iter()
            .map(|s| {
                s.euler_deriv(0)
                    .sub_ref(&s.euler_deriv(n).scale(&params.k))
                    .substitute_equal(0, n)
            })
            .collect();
        let mut rows: BTreeSet<Exponent> = BTreeSet::new();
        for c in &constraints {
            rows.extend(c.support());
        }
        let rows: Vec<Exponent> = rows.into_iter().collect();
        let mut mat = ExactMatrix::zero(rows.len(), reps.len());
        for (col, c) in constraints.iter().enumerate() {
            for (row, e) in rows.iter().enumerate() {
                mat.set(row, col, c.coeff(e));
            }
        }
        let mut elements: Vec<LaurentPoly> = mat
            .nullspace()
            .into_iter()
            .map(|coeffs| {
                let mut f = LaurentPoly::zero(n, m);
                for (c, s) in coeffs.iter().zip(sums.iter()) {
                    f = f.add_ref(&s.scale(c));
                }
                f
            })
            .collect();
        // Canonical order: leading (lexicographically largest maximal)
        // exponent descending, ties broken on the full term list.
        elements.sort_by(|a, b| {
            let ka = a.max_exponents().into_iter().max().unwrap();
            let kb = b.max_exponents().into_iter().max().unwrap();
            kb.cmp(&ka).then_with(|| {
                let ta: Vec<_> = a.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
                let tb: Vec<_> = b.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
                ta.cmp(&tb)
            })
        });
        elements
    };

    let basis = SubspaceBasis { support, elements, params: params.clone() };
    debug_assert!(basis
        .elements
        .iter()
        .all(|f| is_quasi_invariant(f, params).is_ok()));
    basis
}

/// Schur polynomial (possibly Laurent, for weakly decreasing integer `mu`)
/// in the variable block `[offset, offset + d)` of the full ring, via the
/// bialternant ratio of alternants.
fn schur_block(mu: &[i64], n: usize, m: usize, offset: usize) -> LaurentPoly {
    let d = mu.len();
    if d == 0 {
        return LaurentPoly::one(n, m);
    }
    assert!(mu.windows(2).all(|w| w[0] >= w[1]), "non-dominant block {mu:?}");
    let shift = *mu.last().unwrap();
    // alpha + delta with alpha the shifted partition, delta = (d-1, ..., 0).
    let powers: Vec<i64> =
        mu.iter().enumerate().map(|(t, &v)| v - shift + (d - 1 - t) as i64).collect();
    // Alternant: sum over permutations sigma of sign * prod x_t^{powers[sigma(t)]}.
    let mut alternant = LaurentPoly::zero(n, m);
    let mut idx: Vec<usize> = (0..d).collect();
    permute_with_sign(&mut idx, 0, 1, &mut |perm, sign| {
        let mut exp = vec![0i64; n + m];
        for t in 0..d {
            exp[offset + t] = powers[perm[t]];
        }
        alternant.add_term(exp, Rat::from_integer(sign.into()));
    });
    // Divide by the Vandermonde determinant of the block.
    let mut q = alternant;
    for a in 0..d {
        for b in (a + 1)..d {
            q = q
                .divide_linear_exact(offset + a, offset + b)
                .expect("alternant is divisible by the Vandermonde factors");
        }
    }
    // Restore the Laurent shift.
    let mut delta = vec![0i64; n + m];
    for t in 0..d {
        delta[offset + t] = shift;
    }
    q.mul_monomial(&delta, &Rat::one())
}

fn permute_with_sign(
    idx: &mut Vec<usize>,
    from: usize,
    sign: i64,
    visit: &mut impl FnMut(&[usize], i64),
) {
    if from == idx.len() {
        visit(idx, sign);
        return;
    }
    for t in from..idx.len() {
        let s = if t == from { sign } else { -sign };
        idx.swap(from, t);
        permute_with_sign(idx, from + 1, s, visit);
        idx.swap(from, t);
    }
}

/// The quasi-invariant generator `s_mu(x) s_nu(y) prod (1 - y_j/x_i)^2` with
/// unique dominance-maximal exponent `la` (and coefficient 1 there). The
/// construction is quasi-invariant for every nonzero `k`.
pub fn schur_generator(la: &[i64], params: &DeformedParams) -> LaurentPoly {
    let (n, m) = (params.n, params.m);
    assert_eq!(la.len(), n + m, "weight length mismatch");
    assert!(is_dominant(la, n, m), "weight {la:?} is not dominant");
    let sx = schur_block(&la[..n], n, m, 0);
    let sy = schur_block(&la[n..], n, m, n);
    let mut g = sx.mul_ref(&sy);
    for i in 0..n {
        for j in 0..m {
            // (1 - y_j / x_i)^2 = 1 - 2 x_i^-1 y_j + x_i^-2 y_j^2.
            let mut f = LaurentPoly::one(n, m);
            let mut e1 = vec![0i64; n + m];
            e1[i] = -1;
            e1[n + j] = 1;
            f.add_term(e1, Rat::from_integer((-2).into()));
            let mut e2 = vec![0i64; n + m];
            e2[i] = -2;
            e2[n + j] = 2;
            f.add_term(e2, Rat::one());
            g = g.mul_ref(&f);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int, random_nonzero_rat, seeded_rng};

    fn std11() -> DeformedParams {
        DeformedParams::standard(1, 1)
    }

    fn mono(n: usize, m: usize, e: Vec<i64>) -> LaurentPoly {
        LaurentPoly::monomial(n, m, e, Rat::one())
    }

    #[test]
    fn constants_are_quasi_invariant() {
        assert_eq!(is_quasi_invariant(&LaurentPoly::one(1, 1), &std11()), Ok(()));
    }

    #[test]
    fn phi_20_is_quasi_invariant() {
        // x^2 - (4/3) x y passes the hyperplane condition at k = -1/2.
        let f = &mono(1, 1, vec![2, 0]) - &mono(1, 1, vec![1, 1]).scale(&rat(4, 3));
        assert_eq!(is_quasi_invariant(&f, &std11()), Ok(()));
    }

    #[test]
    fn plain_x_fails_with_witness() {
        let f = mono(1, 1, vec![1, 0]);
        assert_eq!(is_quasi_invariant(&f, &std11()), Err(QuasiWitness::Pair { i: 0, j: 0 }));
    }

    #[test]
    fn asymmetric_input_fails_symmetry() {
        let p = DeformedParams::standard(2, 0);
        let f = mono(2, 0, vec![1, 0]);
        assert_eq!(is_quasi_invariant(&f, &p), Err(QuasiWitness::SymmetryX(0)));
    }

    #[test]
    fn subspace_of_constant_seed() {
        let basis =
            invariant_subspace_basis(&[vec![0, 0]].into_iter().collect(), &std11());
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.elements[0], LaurentPoly::one(1, 1));
    }

    #[test]
    fn subspace_of_psi0_seed() {
        // Seed with the support of psi_0 = x y^-1 + x^-1 y; the subspace is
        // two-dimensional and contains both psi_0 and the constants.
        let seed: BTreeSet<Exponent> = [vec![1, -1], vec![-1, 1]].into_iter().collect();
        let basis = invariant_subspace_basis(&seed, &std11());
        assert_eq!(basis.dim(), 2);
        assert_eq!(
            basis.support,
            [vec![1, -1], vec![0, 0], vec![-1, 1]].into_iter().collect()
        );
        let psi = &mono(1, 1, vec![1, -1]) + &mono(1, 1, vec![-1, 1]);
        assert!(basis.elements.contains(&psi));
        assert!(basis.elements.contains(&LaurentPoly::one(1, 1)));
        // Canonical order puts the larger leading exponent first.
        assert_eq!(basis.elements[0], psi);
    }

    #[test]
    fn subspace_of_diag_generator_seed() {
        // Seed from the generator for (1, -2); the basis contains x y^{-2}
        // up to scale.
        let params = std11();
        let g = schur_generator(&[1, -2], &params);
        let seed: BTreeSet<Exponent> = g.support().into_iter().collect();
        let basis = invariant_subspace_basis(&seed, &params);
        let target = mono(1, 1, vec![1, -2]);
        assert!(
            basis.elements.iter().any(|f| f == &target || f == &target.neg_ref()),
            "basis {:?} should contain x y^-2",
            basis.elements
        );
    }

    #[test]
    fn schur_generator_examples() {
        let params = std11();
        // (0 | 0): both Schur factors are 1, leaving (1 - y/x)^2.
        let g = schur_generator(&[0, 0], &params);
        let mut expect = LaurentPoly::one(1, 1);
        expect.add_term(vec![-1, 1], rat_int(-2));
        expect.add_term(vec![-2, 2], rat_int(1));
        assert_eq!(g, expect);
        assert_eq!(g.max_exponents(), vec![vec![0, 0]]);
        assert_eq!(g.coeff(&[0, 0]), rat_int(1));
        // (2 | 1): x^2 y (1 - y/x)^2 = x^2 y - 2 x y^2 + y^3.
        let g = schur_generator(&[2, 1], &params);
        let expect = &(&mono(1, 1, vec![2, 1]) - &mono(1, 1, vec![1, 2]).scale(&rat_int(2)))
            + &mono(1, 1, vec![0, 3]);
        assert_eq!(g, expect);
    }

    #[test]
    fn schur_block_matches_known_expansions() {
        // s_{(1,0)}(x1, x2) = x1 + x2 embedded in shape (2, 1).
        let s = schur_block(&[1, 0], 2, 1, 0);
        let expect = &mono(2, 1, vec![1, 0, 0]) + &mono(2, 1, vec![0, 1, 0]);
        assert_eq!(s, expect);
        // s_{(2,1)}(x1, x2) = x1^2 x2 + x1 x2^2.
        let s = schur_block(&[2, 1], 2, 0, 0);
        let expect = &mono(2, 0, vec![2, 1]) + &mono(2, 0, vec![1, 2]);
        assert_eq!(s, expect);
        // Laurent shift: s_{(0,-1)}(x1, x2) = x1^-1 + x2^-1.
        let s = schur_block(&[0, -1], 2, 0, 0);
        let expect = &mono(2, 0, vec![-1, 0]) + &mono(2, 0, vec![0, -1]);
        assert_eq!(s, expect);
    }

    #[test]
    fn schur_generators_are_quasi_invariant_for_generic_k() {
        let mut rng = seeded_rng(7);
        for (n, m) in [(1usize, 1usize), (2, 1)] {
            for la in [vec![1i64; n + m], {
                let mut v: Vec<i64> = (0..(n + m) as i64).rev().collect();
                v[n..].sort_unstable_by(|a, b| b.cmp(a));
                v
            }] {
                let la = dominant_rep(&la, n, m);
                for _ in 0..3 {
                    let k = random_nonzero_rat(&mut rng, 7, 5);
                    let params = DeformedParams::new(n, m, k).unwrap();
                    let g = schur_generator(&la, &params);
                    assert_eq!(is_quasi_invariant(&g, &params), Ok(()));
                    assert_eq!(g.max_exponents(), vec![la.clone()]);
                    assert_eq!(g.coeff(&la), rat_int(1));
                }
            }
        }
    }

    #[test]
    fn orbit_sum_is_symmetric() {
        let s = orbit_sum(&[2, 0, 1], 2, 1);
        assert_eq!(s, s.swap_vars(0, 1));
        assert_eq!(s.num_terms(), 2);
    }
}
