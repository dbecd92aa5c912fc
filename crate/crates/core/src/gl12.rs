//! The one-x, one-y system worked out completely: explicit basis functions,
//! the explicit third-order integral, the Jordan-block table and the full
//! spectral decomposition, all at `k = -1/2`.
//!
//! The quasi-invariant algebra at shape (1, 1) has a basis
//!
//! ```text
//! phi_{i,j} = x^i y^j - (2i+j)/(2i+j-1) x^{i-1} y^{j+1},   2i + j != 1,
//! psi_i     = x^{i+1} y^{-1-2i} + x^{i-1} y^{1-2i},
//! ```
//!
//! with `phi_i = phi_{i,-2i} = x^i y^{-2i}`. The integrals act diagonally on
//! the `phi` family and with a rank-one Jordan tail on each `psi_i`, so the
//! spectrum splits into one-dimensional eigenspaces and two-dimensional
//! Jordan blocks spanned by `(phi_i, psi_i)`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::laurent::LaurentPoly;
use crate::localized::LocalizedFn;
use crate::operators::{apply_integral, OpError};
use crate::params::DeformedParams;
use crate::quasi::invariant_subspace_basis;
use crate::rat::{rat, rat_int, Rat};
use crate::spectral::{decompose, SpectralError};

/// The explicit basis functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gl12Basis {
    /// `phi_{i,j}`; requires `2i + j != 1`.
    Phi { i: i64, j: i64 },
    /// `phi_i = x^i y^{-2i}`.
    PhiDiag { i: i64 },
    /// `psi_i`.
    Psi { i: i64 },
}

impl Gl12Basis {
    pub fn value(self) -> LaurentPoly {
        match self {
            Gl12Basis::Phi { i, j } => phi(i, j),
            Gl12Basis::PhiDiag { i } => phi_diag(i),
            Gl12Basis::Psi { i } => psi(i),
        }
    }
}

/// `phi_{i,j} = x^i y^j - (2i+j)/(2i+j-1) x^{i-1} y^{j+1}`; panics on the
/// excluded line `2i + j = 1`.
pub fn phi(i: i64, j: i64) -> LaurentPoly {
    assert_ne!(2 * i + j, 1, "phi is undefined on 2i + j = 1");
    let mut p = LaurentPoly::monomial(1, 1, vec![i, j], Rat::from_integer(1.into()));
    let c = rat(2 * i + j, 2 * i + j - 1);
    p.add_term(vec![i - 1, j + 1], -c);
    p
}

/// `phi_i = x^i y^{-2i}` (the `2i + j = 0` diagonal, where the correction
/// coefficient of `phi_{i,j}` vanishes).
pub fn phi_diag(i: i64) -> LaurentPoly {
    LaurentPoly::monomial(1, 1, vec![i, -2 * i], Rat::from_integer(1.into()))
}

/// `psi_i = x^{i+1} y^{-1-2i} + x^{i-1} y^{1-2i}`.
pub fn psi(i: i64) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(1, 1, vec![i + 1, -1 - 2 * i], Rat::from_integer(1.into()));
    p.add_term(vec![i - 1, 1 - 2 * i], Rat::from_integer(1.into()));
    p
}

/// `lambda_{ij} = i(i-1) - j(j+1)/2`, the second-integral eigenvalue.
pub fn lambda_eigen(i: i64, j: i64) -> Rat {
    rat(i * (i - 1), 1) - rat(j * (j + 1), 2)
}

/// `mu_{ij} = i^3 + j^3/4 - (3/2)(i^2 - j^2/4) + (3/4)(i + j/2)`, the
/// third-integral eigenvalue.
pub fn mu_eigen(i: i64, j: i64) -> Rat {
    rat(i * i * i, 1) + rat(j * j * j, 4) - (rat(i * i, 1) - rat(j * j, 4)) * rat(3, 2)
        + (rat(i, 1) + rat(j, 2)) * rat(3, 4)
}

/// The explicit third-order integral
/// `Dx^3 + Dy^3/4 - (3/2) (x+y)/(x-y) (Dx^2 - Dy^2/4)
///  + (3/4) (x^2+4xy+y^2)/(x-y)^2 (Dx + Dy/2)`.
///
/// The two singular terms are only jointly polynomial, so everything is
/// assembled over the common denominator `(x - y)^2` and divided out in two
/// exact stages; a failed division means the input is not quasi-invariant.
pub fn l3_explicit(f: &LaurentPoly) -> Result<LaurentPoly, OpError> {
    assert_eq!(f.shape(), (1, 1));
    let dx = |g: &LaurentPoly| g.euler_deriv(0);
    let dy = |g: &LaurentPoly| g.euler_deriv(1);
    let lin = &LaurentPoly::var(1, 1, 0) - &LaurentPoly::var(1, 1, 1);
    let x_plus_y = {
        let mut p = LaurentPoly::monomial(1, 1, vec![1, 0], rat_int(1));
        p.add_term(vec![0, 1], rat_int(1));
        p
    };
    let quad = {
        let mut p = LaurentPoly::monomial(1, 1, vec![2, 0], rat_int(1));
        p.add_term(vec![1, 1], rat_int(4));
        p.add_term(vec![0, 2], rat_int(1));
        p
    };

    let t1 = dx(&dx(&dx(f))).add_ref(&dy(&dy(&dy(f))).scale(&rat(1, 4)));
    let h2 = dx(&dx(f)).sub_ref(&dy(&dy(f)).scale(&rat(1, 4)));
    let h1 = dx(f).add_ref(&dy(f).scale(&rat(1, 2)));

    let num = lin
        .mul_ref(&lin)
        .mul_ref(&t1)
        .sub_ref(&lin.mul_ref(&x_plus_y).mul_ref(&h2).scale(&rat(3, 2)))
        .add_ref(&quad.mul_ref(&h1).scale(&rat(3, 4)));
    num.divide_linear_exact(0, 1)
        .and_then(|g| g.divide_linear_exact(0, 1))
        .ok_or(OpError::DivisionObstruction { i: 0, j: 1, order: 3 })
}

/// Localized-mode variant of [`l3_explicit`]; total on all inputs.
pub fn l3_explicit_localized(f: &LocalizedFn) -> LocalizedFn {
    assert_eq!(f.shape(), (1, 1));
    let dx = |g: &LocalizedFn| g.euler_deriv(0);
    let dy = |g: &LocalizedFn| g.euler_deriv(1);
    let x_plus_y = {
        let mut p = LaurentPoly::monomial(1, 1, vec![1, 0], rat_int(1));
        p.add_term(vec![0, 1], rat_int(1));
        p
    };
    let quad = {
        let mut p = LaurentPoly::monomial(1, 1, vec![2, 0], rat_int(1));
        p.add_term(vec![1, 1], rat_int(4));
        p.add_term(vec![0, 2], rat_int(1));
        p
    };
    let t1 = dx(&dx(&dx(f))).add(&dy(&dy(&dy(f))).scale(&rat(1, 4)));
    let h2 = dx(&dx(f)).sub(&dy(&dy(f)).scale(&rat(1, 4)));
    let t2 = h2.mul_poly(&x_plus_y).div_linear(0, 1);
    let h1 = dx(f).add(&dy(f).scale(&rat(1, 2)));
    let t3 = h1.mul_poly(&quad).div_linear(0, 1).div_linear(0, 1);
    t1.sub(&t2.scale(&rat(3, 2))).add(&t3.scale(&rat(3, 4)))
}

/// The explicit second-order integral
/// `Dx^2 - Dy^2/2 - (x+y)/(x-y) (Dx + Dy/2)`; an independent code path that
/// must agree with the recursion at `k = -1/2`.
pub fn l2_explicit(f: &LaurentPoly) -> Result<LaurentPoly, OpError> {
    assert_eq!(f.shape(), (1, 1));
    let dx = |g: &LaurentPoly| g.euler_deriv(0);
    let dy = |g: &LaurentPoly| g.euler_deriv(1);
    let x_plus_y = {
        let mut p = LaurentPoly::monomial(1, 1, vec![1, 0], rat_int(1));
        p.add_term(vec![0, 1], rat_int(1));
        p
    };
    let t1 = dx(&dx(f)).sub_ref(&dy(&dy(f)).scale(&rat(1, 2)));
    let h = dx(f).add_ref(&dy(f).scale(&rat(1, 2)));
    let t2 = x_plus_y
        .mul_ref(&h)
        .divide_linear_exact(0, 1)
        .ok_or(OpError::DivisionObstruction { i: 0, j: 1, order: 2 })?;
    Ok(t1.sub_ref(&t2))
}

/// Outcome of the table verification: number of identities checked and the
/// first failing identity, if any.
#[derive(Clone, Debug)]
pub struct JordanReport {
    pub checks: usize,
    pub first_failure: Option<String>,
}

impl JordanReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn expect_eq(
    report: &mut JordanReport,
    label: impl Fn() -> String,
    got: &LaurentPoly,
    want: &LaurentPoly,
) {
    report.checks += 1;
    if got != want && report.first_failure.is_none() {
        report.first_failure = Some(format!("{}: got {:?}, want {:?}", label(), got, want));
    }
}

/// Checks the full eigenvalue/Jordan table on the explicit basis for all
/// `|i|, |j| <= r`: the `phi` family diagonalizes the first three integrals
/// with eigenvalues `i + j`, `lambda_{ij}`, `mu_{ij}`, while each `psi_i`
/// picks up the rank-one tail `-phi_i` under `L_2` and `-3i phi_i` under
/// `L_3`. `L_1` and `L_2` come from the recursion and `L_3` from the
/// explicit operator, so the table ties the two code paths together.
///
/// The `L_3` tail coefficient is forced to be `-3i`: the explicit operator
/// equals `L_3 + L_2/4 + L_1^2/4` in the integrals algebra (same
/// Harish-Chandra image, and an element of the algebra is determined by its
/// eigenvalues on the one-dimensional eigenspaces), the recursion's own tail
/// on `psi_i` is `1/4 - 3i`, and `L_2` contributes `-1/4`.
pub fn verify_jordan_table(r: i64) -> Result<JordanReport, OpError> {
    assert!(r >= 1);
    let params = DeformedParams::standard(1, 1);
    let mut report = JordanReport { checks: 0, first_failure: None };
    for i in -r..=r {
        for j in -r..=r {
            if 2 * i + j == 1 {
                continue;
            }
            let f = phi(i, j);
            let l1 = apply_integral(1, &f, &params)?;
            expect_eq(&mut report, || format!("L1 phi({i},{j})"), &l1, &f.scale(&rat_int(i + j)));
            let l2 = apply_integral(2, &f, &params)?;
            expect_eq(&mut report, || format!("L2 phi({i},{j})"), &l2, &f.scale(&lambda_eigen(i, j)));
            let l3 = l3_explicit(&f)?;
            expect_eq(&mut report, || format!("L3 phi({i},{j})"), &l3, &f.scale(&mu_eigen(i, j)));
        }
        // The Jordan pair at 2i + j = 0.
        let p = phi_diag(i);
        let s = psi(i);
        let l1 = apply_integral(1, &s, &params)?;
        expect_eq(&mut report, || format!("L1 psi({i})"), &l1, &s.scale(&rat_int(-i)));
        let l1 = apply_integral(1, &p, &params)?;
        expect_eq(&mut report, || format!("L1 phi_diag({i})"), &l1, &p.scale(&rat_int(-i)));
        let l2 = apply_integral(2, &s, &params)?;
        let want = s.scale(&rat_int(-i * i)).sub_ref(&p);
        expect_eq(&mut report, || format!("L2 psi({i})"), &l2, &want);
        let l2 = apply_integral(2, &p, &params)?;
        expect_eq(&mut report, || format!("L2 phi_diag({i})"), &l2, &p.scale(&rat_int(-i * i)));
        let l3 = l3_explicit(&s)?;
        let want = s.scale(&rat_int(-i * i * i)).sub_ref(&p.scale(&rat_int(3 * i)));
        expect_eq(&mut report, || format!("L3 psi({i})"), &l3, &want);
        let l3 = l3_explicit(&p)?;
        expect_eq(&mut report, || format!("L3 phi_diag({i})"), &l3, &p.scale(&rat_int(-i * i * i)));
    }
    Ok(report)
}

/// Per-degree outcome of the decomposition demo.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub degree: i64,
    pub subspace_dim: usize,
    pub blocks: usize,
    pub jordan_pair_dim: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub degrees: Vec<DegreeReport>,
}

impl DemoReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.failures.is_empty())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.degrees {
            let _ = writeln!(
                out,
                "degree {:>3}: dim {:>2}, {} blocks, jordan pair dim {} -> {}",
                d.degree,
                d.subspace_dim,
                d.blocks,
                d.jordan_pair_dim,
                if d.failures.is_empty() { "ok" } else { "FAIL" }
            );
            for f in &d.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
        out
    }
}

/// For each total degree `d` in the window, builds the subspace spanned by
/// every explicit basis function of that degree inside a coordinate box,
/// decomposes it, and checks the block structure: one-dimensional eigenspaces
/// away from the `2i + j` in `{0, 1}` pair, and one two-dimensional block
/// with a genuine `L_2` Jordan cell.
pub fn spectral_demo(window: RangeInclusive<i64>) -> Result<DemoReport, SpectralError> {
    let params = DeformedParams::standard(1, 1);
    let mut degrees = Vec::new();
    for d in window {
        let bound = 2 * d.abs() + 4;
        let lo = (-bound).max(d - bound);
        let hi = bound.min(d + bound);
        let mut seed = std::collections::BTreeSet::new();
        for i in lo..=hi {
            seed.insert(vec![i, d - i]);
        }
        let basis = invariant_subspace_basis(&seed, &params);
        let blocks = decompose(&basis, params.pmax_default())?;
        let mut failures = Vec::new();
        let mut check = |ok: bool, msg: String| {
            if !ok {
                failures.push(msg);
            }
        };
        let r = (hi - lo + 1) as usize;
        check(basis.dim() == r - 1, format!("dim {} != {}", basis.dim(), r - 1));
        check(blocks.len() == r - 1, format!("{} blocks != {}", blocks.len(), r - 1));
        let mut jordan_pair_dim = 0;
        for block in &blocks {
            check(
                block.character.first() == Some(&rat_int(d)),
                format!("block {:?} has wrong degree character", block.representatives),
            );
            if block.representatives.len() == 2 {
                // The (phi_i, psi_i) pair at i = -d.
                let i = -d;
                jordan_pair_dim = block.dim();
                check(
                    block.representatives == vec![vec![1 - d, 2 * d - 1], vec![-d, 2 * d]],
                    format!("unexpected pair representatives {:?}", block.representatives),
                );
                check(block.dim() == 2, format!("pair block dim {}", block.dim()));
                check(
                    block.nilpotency.get(&2) == Some(&2),
                    format!("pair nilpotency {:?}", block.nilpotency),
                );
                check(
                    block.character.get(1) == Some(&rat_int(-i * i)),
                    "pair block eigenvalue mismatch".to_string(),
                );
            } else {
                check(
                    block.representatives.len() == 1,
                    format!("unexpected grouping {:?}", block.representatives),
                );
                let rep = &block.representatives[0];
                let (i, j) = (rep[0], rep[1]);
                let expect_dim = usize::from(i > lo);
                check(
                    block.dim() == expect_dim,
                    format!("block ({i},{j}) dim {} != {expect_dim}", block.dim()),
                );
                if block.dim() == 1 {
                    check(
                        block.is_true_eigenspace(),
                        format!("block ({i},{j}) is not a true eigenspace"),
                    );
                    check(
                        block.character.get(1) == Some(&lambda_eigen(i, j)),
                        format!("block ({i},{j}) eigenvalue mismatch"),
                    );
                }
            }
        }
        degrees.push(DegreeReport {
            degree: d,
            subspace_dim: basis.dim(),
            blocks: blocks.len(),
            jordan_pair_dim,
            failures,
        });
    }
    Ok(DemoReport { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::is_quasi_invariant;

    #[test]
    fn l3_on_constants() {
        assert!(l3_explicit(&LaurentPoly::one(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn l3_eigenvalue_on_phi20() {
        // mu_{2,0} = 8 - 6 + 3/2 = 7/2.
        let f = phi(2, 0);
        assert_eq!(mu_eigen(2, 0), rat(7, 2));
        assert_eq!(l3_explicit(&f).unwrap(), f.scale(&rat(7, 2)));
    }

    #[test]
    fn l3_jordan_tails_scale_with_the_index() {
        // The tail on psi_i is -3i phi_i; in particular psi_0 (degree 0,
        // where all three eigenvalues vanish) is annihilated outright.
        assert!(l3_explicit(&psi(0)).unwrap().is_zero());
        let out = l3_explicit(&psi(1)).unwrap();
        assert_eq!(out, psi(1).scale(&rat_int(-1)).sub_ref(&phi_diag(1).scale(&rat_int(3))));
        let out = l3_explicit(&psi(-2)).unwrap();
        assert_eq!(out, psi(-2).scale(&rat_int(8)).add_ref(&phi_diag(-2).scale(&rat_int(6))));
    }

    #[test]
    fn l3_rejects_non_quasi_invariant() {
        let f = LaurentPoly::monomial(1, 1, vec![1, 0], rat_int(1));
        assert!(l3_explicit(&f).is_err());
    }

    #[test]
    fn explicit_l2_matches_recursion_on_basis() {
        let params = DeformedParams::standard(1, 1);
        for i in -2..=2i64 {
            for j in -2..=2i64 {
                if 2 * i + j == 1 {
                    continue;
                }
                let f = phi(i, j);
                assert_eq!(
                    l2_explicit(&f).unwrap(),
                    apply_integral(2, &f, &params).unwrap(),
                    "phi({i},{j})"
                );
            }
            let s = psi(i);
            assert_eq!(l2_explicit(&s).unwrap(), apply_integral(2, &s, &params).unwrap());
        }
    }

    #[test]
    fn basis_functions_are_quasi_invariant() {
        let params = DeformedParams::standard(1, 1);
        for i in -3..=3i64 {
            for j in -3..=3i64 {
                if 2 * i + j != 1 {
                    assert_eq!(is_quasi_invariant(&phi(i, j), &params), Ok(()));
                }
            }
            assert_eq!(is_quasi_invariant(&psi(i), &params), Ok(()));
            assert_eq!(is_quasi_invariant(&phi_diag(i), &params), Ok(()));
        }
    }

    #[test]
    fn jordan_table_small_radius() {
        let report = verify_jordan_table(2).unwrap();
        assert!(report.pass(), "{:?}", report.first_failure);
        assert!(report.checks > 50);
    }

    #[test]
    fn corrupted_phi_is_caught() {
        // Mutation check: flipping the correction coefficient's sign must
        // break the eigen relation and be reported.
        let params = DeformedParams::standard(1, 1);
        let mut bad = LaurentPoly::monomial(1, 1, vec![2, 0], rat_int(1));
        bad.add_term(vec![1, 1], rat(4, 3)); // should be -4/3
        let img = apply_integral(2, &bad, &params);
        match img {
            Err(_) => {}
            Ok(img) => assert_ne!(img, bad.scale(&lambda_eigen(2, 0))),
        }
    }

    #[test]
    fn demo_window_zero() {
        let report = spectral_demo(0..=0).unwrap();
        assert!(report.pass(), "{}", report.render());
        assert_eq!(report.degrees[0].jordan_pair_dim, 2);
    }

    #[test]
    fn demo_window_three() {
        let report = spectral_demo(3..=3).unwrap();
        assert!(report.pass(), "{}", report.render());
    }

    #[test]
    fn localized_l3_agrees_with_strict() {
        let f = phi(1, 2);
        let strict = l3_explicit(&f).unwrap();
        let loc = l3_explicit_localized(&LocalizedFn::from_poly(f));
        assert_eq!(loc.to_poly().unwrap(), strict);
    }
}
