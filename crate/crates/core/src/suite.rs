//! End-to-end verification suite: every headline property of the engine as a
//! numbered criterion with a pass/fail report, shared by the `acceptance`
//! test target and the command-line `verify` subcommand.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use num::{One, Zero};
use rand_chacha::ChaCha8Rng;

use crate::gl12;
use crate::hc::{
    certify_operator_identity, check_image_membership, chi_eval, hc_combination, hc_integral,
};
use crate::laurent::{Exponent, LaurentPoly};
use crate::matrix::ExactMatrix;
use crate::operators::commutator_localized;
use crate::params::DeformedParams;
use crate::quasi::{invariant_subspace_basis, is_quasi_invariant, schur_generator};
use crate::rat::{
    random_nonzero_rat, rat, rat_int, seeded_rng, Rat, DEFAULT_SEED,
};
use crate::spectral::{commutator_on_subspace, decompose};
use crate::weights::{
    class_by_search, enumerate_class, from_ab, is_spherically_typical, kac_flag, odd_reflection_f,
    sharp, sharp_inverse, to_ab, typicality_invariant_form,
};

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn render_line(&self) -> String {
        format!(
            "{} [{:>2}] {:<28} {:>7.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.details
        )
    }
}

pub const ALL_CRITERIA: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Wall-clock budget per criterion, in seconds.
pub fn budget_seconds(id: u32) -> f64 {
    match id {
        1 => 60.0,
        2 => 5.0,
        3 => 300.0,
        4 => 120.0,
        5 => 600.0,
        6 => 120.0,
        7 => 5.0,
        8 => 30.0,
        9 => 30.0,
        10 => 60.0,
        _ => panic!("unknown criterion {id}"),
    }
}

/// Named sub-suites for the command line.
pub fn suite_named(name: &str) -> Option<Vec<u32>> {
    match name {
        "all" => Some(ALL_CRITERIA.to_vec()),
        "gl12" => Some(vec![1, 2, 9]),
        "commute" => Some(vec![3]),
        "hc" => Some(vec![4]),
        "spectral" => Some(vec![5]),
        "weights" => Some(vec![6, 7, 8]),
        "quasi" => Some(vec![10]),
        _ => None,
    }
}

pub fn run_suite(ids: &[u32]) -> Vec<CriterionReport> {
    ids.iter().map(|&id| run_criterion(id)).collect()
}

pub fn run_criterion(id: u32) -> CriterionReport {
    let start = Instant::now();
    let (name, result) = match id {
        1 => ("jordan table", criterion_jordan_table()),
        2 => ("character cross-check", criterion_character_crosscheck()),
        3 => ("commutativity", criterion_commutativity()),
        4 => ("hc image membership", criterion_hc_membership()),
        5 => ("spectral vs combinatorics", criterion_spectral_agreement()),
        6 => ("typicality equivalence", criterion_typicality()),
        7 => ("odd reflection", criterion_odd_reflection()),
        8 => ("kac flags", criterion_kac_flags()),
        9 => ("operator bridge", criterion_operator_bridge()),
        10 => ("generator quasi-invariance", criterion_generator_quasi_invariance()),
        _ => panic!("unknown criterion {id}"),
    };
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(details) => CriterionReport { id, name, passed: true, details, seconds },
        Err(details) => CriterionReport { id, name, passed: false, details, seconds },
    }
}

type CriterionResult = Result<String, String>;

/// Seeded weakly-decreasing weight blocks with entries in `[-bound, bound]`.
fn random_dominant_weight(rng: &mut ChaCha8Rng, n: usize, m: usize, bound: i64) -> Vec<i64> {
    use rand::Rng as _;
    let mut la: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    la.sort_unstable_by(|a, b| b.cmp(a));
    let mut ys: Vec<i64> = (0..m).map(|_| rng.gen_range(-bound..=bound)).collect();
    ys.sort_unstable_by(|a, b| b.cmp(a));
    la.extend(ys);
    la
}

/// All dominant weights (length n + m) with entries in `[-bound, bound]`.
fn dominant_weight_box(n: usize, m: usize, bound: i64) -> Vec<Vec<i64>> {
    fn blocks(len: usize, bound: i64) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &out {
                let hi = p.last().map_or(bound, |&v| v);
                for v in -bound..=hi {
                    let mut e = p.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }
    let mut all = Vec::new();
    for x in blocks(n, bound) {
        for y in blocks(m, bound) {
            let mut w = x.clone();
            w.extend(y.iter());
            all.push(w);
        }
    }
    all
}

fn criterion_jordan_table() -> CriterionResult {
    let report = gl12::verify_jordan_table(4).map_err(|e| e.to_string())?;
    if report.pass() {
        Ok(format!(
            "{} identities verified (psi tails follow L3 psi_i = -i^3 psi_i - 3i phi_i)",
            report.checks
        ))
    } else {
        Err(report.first_failure.unwrap_or_default())
    }
}

fn criterion_character_crosscheck() -> CriterionResult {
    let params = DeformedParams::standard(1, 1);
    let mut count = 0;
    for i in -5..=5i64 {
        for j in -5..=5i64 {
            let expect = rat(i * (i - 1), 1) - rat(j * (j + 1), 2);
            let got = chi_eval(&[i, j], 2, &params);
            if got != expect {
                return Err(format!("chi((({i},{j})), 2) = {got} != {expect}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} weights matched lambda_ij"))
}

fn criterion_commutativity() -> CriterionResult {
    let mut rng = seeded_rng(DEFAULT_SEED);
    let mut matrix_checks = 0;
    for (n, m) in [(1usize, 1usize), (2, 1), (1, 2)] {
        let k_values = {
            let mut ks = vec![rat(-1, 2)];
            ks.push(random_nonzero_rat(&mut rng, 5, 4));
            ks.push(random_nonzero_rat(&mut rng, 5, 4));
            ks
        };
        let weights: Vec<Vec<i64>> =
            (0..5).map(|_| random_dominant_weight(&mut rng, n, m, 2)).collect();
        for k in &k_values {
            let params = DeformedParams::new(n, m, k.clone()).unwrap();
            for la in &weights {
                let g = schur_generator(la, &params);
                let seed: BTreeSet<Exponent> = g.support().into_iter().collect();
                let basis = invariant_subspace_basis(&seed, &params);
                for (p, q) in [(1u32, 2u32), (1, 3), (2, 3)] {
                    let c = commutator_on_subspace(p, q, &basis)
                        .map_err(|e| format!("({n},{m}) la={la:?} k={k}: {e}"))?;
                    if !c.is_zero() {
                        return Err(format!(
                            "[L_{p}, L_{q}] != 0 on V(schur({la:?})) at ({n},{m}), k = {k}"
                        ));
                    }
                    matrix_checks += 1;
                }
            }
        }
    }
    // Localized-mode fuzz: arbitrary Laurent inputs at (2, 1).
    use rand::Rng as _;
    let params = DeformedParams::standard(2, 1);
    let mut localized_checks = 0;
    while localized_checks < 20 {
        let mut f = LaurentPoly::zero(2, 1);
        let terms = rng.gen_range(1..=3);
        for _ in 0..terms {
            let e: Vec<i64> = (0..3).map(|_| rng.gen_range(-2i64..=2)).collect();
            f.add_term(e, rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)));
        }
        if f.is_zero() {
            continue;
        }
        let c = commutator_localized(2, 3, &f, &params);
        if !c.is_zero() {
            return Err(format!("localized [L_2, L_3] f != 0 for f = {f:?}"));
        }
        localized_checks += 1;
    }
    Ok(format!(
        "{matrix_checks} commutator matrices vanished, {localized_checks} localized fuzz cases"
    ))
}

fn criterion_hc_membership() -> CriterionResult {
    let mut rng = seeded_rng(DEFAULT_SEED ^ 0x6863);
    let mut checks = 0;
    for n in 0..=4usize {
        for m in 0..=(4 - n) {
            if n + m == 0 {
                continue;
            }
            let mut ks = vec![rat(-1, 2)];
            for _ in 0..3 {
                ks.push(random_nonzero_rat(&mut rng, 5, 4));
            }
            for k in ks {
                let params = DeformedParams::new(n, m, k.clone()).unwrap();
                for p in 1..=4u32 {
                    let f = hc_integral(p, &params);
                    let report = check_image_membership(&f, &params, 20, DEFAULT_SEED + p as u64);
                    if !report.pass() {
                        return Err(format!(
                            "phi(L_{p}) fails membership at ({n},{m}), k = {k}: {report:?}"
                        ));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} integral images in the characterized subalgebra"))
}

fn criterion_spectral_agreement() -> CriterionResult {
    let mut classes_checked = 0;
    let mut weights_covered = 0;
    let mut jordan_blocks = 0;
    for (n, m) in [(1usize, 1usize), (2, 1)] {
        let params = DeformedParams::standard(n, m);
        let pmax = params.pmax_default();
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        for la in dominant_weight_box(n, m, 3) {
            let adm = sharp_inverse(&la, n, m);
            let pair = to_ab(&adm, n, m).map_err(|e| e.to_string())?;
            if !pair.a_set().is_disjoint(&pair.b_set()) {
                continue; // infinite class
            }
            let s = crate::weights::atypicality_degree(&pair).map_err(|e| e.to_string())?;
            let class = enumerate_class(&pair).map_err(|e| e.to_string())?;
            let members: Vec<Vec<i64>> = class
                .iter()
                .map(|p| sharp(&from_ab(p, n, m)?, n, m))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            weights_covered += 1;
            if !seen.insert(members.clone()) {
                continue; // class already decomposed through another member
            }
            let searched = class_by_search(&adm, n, m, 6).map_err(|e| e.to_string())?;
            if searched.len() != class.len() || (1usize << s) != class.len() {
                return Err(format!(
                    "class sizes disagree at {la:?}: 2^{s}, enumerate {}, search {}",
                    class.len(),
                    searched.len()
                ));
            }
            let mut seed: BTreeSet<Exponent> = BTreeSet::new();
            for mu in &members {
                seed.extend(schur_generator(mu, &params).support());
            }
            let basis = invariant_subspace_basis(&seed, &params);
            let blocks = decompose(&basis, pmax).map_err(|e| format!("{la:?}: {e}"))?;
            let member_set: BTreeSet<Vec<i64>> = members.iter().cloned().collect();
            let block = blocks
                .iter()
                .find(|b| b.representatives.contains(&la))
                .ok_or_else(|| format!("no block lists {la:?}"))?;
            let rep_set: BTreeSet<Vec<i64>> = block.representatives.iter().cloned().collect();
            if rep_set != member_set {
                return Err(format!(
                    "block representatives {rep_set:?} != class {member_set:?}"
                ));
            }
            if block.dim() != 1 << s {
                return Err(format!(
                    "block of {la:?} has dim {} != 2^{s}",
                    block.dim()
                ));
            }
            if s == 0 && !block.is_true_eigenspace() {
                return Err(format!("singleton block of {la:?} is not a true eigenspace"));
            }
            if (n, m) == (1, 1) && s == 1 {
                if block.nilpotency.get(&2) != Some(&2) {
                    return Err(format!(
                        "pair block of {la:?} has L_2 nilpotency {:?}, want 2",
                        block.nilpotency.get(&2)
                    ));
                }
                jordan_blocks += 1;
            }
            classes_checked += 1;
        }
    }
    Ok(format!(
        "{classes_checked} classes decomposed ({weights_covered} weights, {jordan_blocks} Jordan pairs)"
    ))
}

fn criterion_typicality() -> CriterionResult {
    let mut checks = 0;
    let mut findings = Vec::new();
    for (n, m) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
        for la in admissible_weight_box(n, m, 6) {
            let star = is_spherically_typical(&la, n, m).map_err(|e| e.to_string())?;
            let pair = to_ab(&la, n, m).map_err(|e| e.to_string())?;
            let disjoint = pair.a_set().is_disjoint(&pair.b_set());
            let inv = typicality_invariant_form(&la, n, m).map_err(|e| e.to_string())?;
            if star != disjoint {
                return Err(format!("star product vs A n B disagree at {la:?} ({n},{m})"));
            }
            if inv != star {
                findings.push(format!("invariant-form leg disagrees at {la:?} ({n},{m})"));
            }
            checks += 1;
        }
    }
    if findings.is_empty() {
        Ok(format!("{checks} weights, all three conditions agree"))
    } else {
        // Counterexamples to the invariant-form leg are reported loudly, not
        // silently passed.
        Err(format!("open-question finding: {}", findings.join("; ")))
    }
}

/// Dominant admissible weights (length n + 2m) with entries in [-r, r].
fn admissible_weight_box(n: usize, m: usize, r: i64) -> Vec<Vec<i64>> {
    fn even_blocks(len: usize, r: i64) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &out {
                let hi = p.last().map_or(r, |&v| v);
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
            out = next;
        }
        out
    }
    fn y_blocks(len: usize, r: i64) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &out {
                let hi = p.last().map_or(r, |&v| v);
                for v in -r..=hi {
                    let mut e = p.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }
    let mut all = Vec::new();
    for x in even_blocks(n, r) {
        for y in y_blocks(m, r) {
            let mut w = x.clone();
            for v in &y {
                w.push(*v);
                w.push(*v);
            }
            all.push(w);
        }
    }
    all
}

fn criterion_odd_reflection() -> CriterionResult {
    let got = odd_reflection_f(&[3, 2, 5], &[3, 1, 2, 4]);
    if got != (vec![4, 1, 3, 5], vec![5, 3, 5]) {
        return Err(format!("F((3,2,5),(3,1,2,4)) = {got:?}"));
    }
    if odd_reflection_f(&[7], &[2]) != (vec![2], vec![7]) {
        return Err("single-element pass-through failed".into());
    }
    if odd_reflection_f(&[1], &[1]) != (vec![2], vec![2]) {
        return Err("single-element collision rule failed".into());
    }
    Ok("worked example and both one-element rules".into())
}

fn criterion_kac_flags() -> CriterionResult {
    // (degree of atypicality, weight, shape, oracle radius)
    let cases: [(usize, Vec<i64>, (usize, usize), i64); 3] = [
        (0, vec![2, 3, 3], (1, 1), 5),
        (1, vec![0, 0, 0], (1, 1), 4),
        (2, vec![4, 2, -2, -2, -3, -3], (2, 2), 6),
    ];
    let mut details = String::new();
    for (s, la, (n, m), radius) in cases {
        let flag = kac_flag(&la, n, m).map_err(|e| format!("{la:?}: {e}"))?;
        if flag.len() != 1 << s {
            return Err(format!("flag of {la:?} has {} quotients, want {}", flag.len(), 1 << s));
        }
        if flag[0] != la {
            return Err(format!("flag of {la:?} does not start with the weight itself"));
        }
        let oracle = class_by_search(&la, n, m, radius).map_err(|e| e.to_string())?;
        if oracle != flag {
            return Err(format!("flag {flag:?} != oracle {oracle:?}"));
        }
        let _ = write!(details, "s={s}: {} quotients; ", flag.len());
    }
    Ok(details.trim_end_matches("; ").to_string())
}

fn criterion_operator_bridge() -> CriterionResult {
    let params = DeformedParams::standard(1, 1);
    // Observe eigenvalues of the explicit operator on one-dimensional
    // eigenspaces, then solve exactly for the combination
    //   mu(i,j) = chi_3 + alpha chi_2 + beta chi_1^2 + gamma chi_1 + delta.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let mut samples: Vec<(i64, i64, Rat)> = Vec::new();
    for i in -3..=3i64 {
        for j in -3..=3i64 {
            if 2 * i + j == 0 || 2 * i + j == 1 {
                continue;
            }
            let f = gl12::phi(i, j);
            let image = gl12::l3_explicit(&f).map_err(|e| e.to_string())?;
            let mu = image.coeff(&[i, j]) / f.coeff(&[i, j]);
            if image != f.scale(&mu) {
                return Err(format!("phi({i},{j}) is not an eigenvector of the explicit operator"));
            }
            samples.push((i, j, mu));
        }
    }
    for (i, j, mu) in &samples {
        let chi1 = chi_eval(&[*i, *j], 1, &params);
        let chi2 = chi_eval(&[*i, *j], 2, &params);
        let chi3 = chi_eval(&[*i, *j], 3, &params);
        rows.push(vec![chi2, &chi1 * &chi1, chi1, Rat::one()]);
        rhs.push(mu - chi3);
    }
    let solver = crate::matrix::LinearSolver::new(&ExactMatrix::from_rows(rows.clone()))
        .ok_or("rank-deficient fit for the bridge coefficients")?;
    let coeffs = solver.solve(&rhs).ok_or("no exact combination reproduces the eigenvalues")?;
    let expect = [rat(1, 4), rat(1, 4), Rat::zero(), Rat::zero()];
    if coeffs != expect {
        return Err(format!("fitted coefficients {coeffs:?}, want (1/4, 1/4, 0, 0)"));
    }
    // The fitted combination certifies the identity through the injective
    // Harish-Chandra homomorphism.
    let combo = vec![
        (Rat::one(), vec![3u32]),
        (coeffs[0].clone(), vec![2]),
        (coeffs[1].clone(), vec![1, 1]),
    ];
    if !certify_operator_identity(
        &combo,
        &[(Rat::one(), vec![3]), (rat(1, 4), vec![2]), (rat(1, 4), vec![1, 1])],
        &params,
    ) {
        return Err("certified combination differs from L_3 + L_2/4 + L_1^2/4".into());
    }
    let image = hc_combination(&combo, &params);
    for (i, j, mu) in &samples {
        if image.eval(&[rat_int(*i), rat_int(*j)]) != *mu {
            return Err(format!("combined image disagrees with mu at ({i},{j})"));
        }
    }
    // Both sides applied to every basis element in the window.
    let mut applied = 0;
    let bridge = |f: &LaurentPoly| -> Result<LaurentPoly, String> {
        let l3 = crate::operators::apply_integral(3, f, &params).map_err(|e| e.to_string())?;
        let l2 = crate::operators::apply_integral(2, f, &params).map_err(|e| e.to_string())?;
        let l1 = crate::operators::apply_integral(1, f, &params).map_err(|e| e.to_string())?;
        let l1l1 = crate::operators::apply_integral(1, &l1, &params).map_err(|e| e.to_string())?;
        Ok(l3.add_ref(&l2.scale(&rat(1, 4))).add_ref(&l1l1.scale(&rat(1, 4))))
    };
    for i in -3..=3i64 {
        for j in -3..=3i64 {
            if 2 * i + j != 1 {
                let f = gl12::phi(i, j);
                if gl12::l3_explicit(&f).map_err(|e| e.to_string())? != bridge(&f)? {
                    return Err(format!("bridge identity fails on phi({i},{j})"));
                }
                applied += 1;
            }
        }
        for f in [gl12::psi(i), gl12::phi_diag(i)] {
            if gl12::l3_explicit(&f).map_err(|e| e.to_string())? != bridge(&f)? {
                return Err(format!("bridge identity fails on a (psi/phi_diag)({i})"));
            }
            applied += 1;
        }
    }
    Ok(format!(
        "coefficients re-derived as (1/4, 1/4); identity certified and applied to {applied} elements"
    ))
}

fn criterion_generator_quasi_invariance() -> CriterionResult {
    let mut rng = seeded_rng(DEFAULT_SEED ^ 0x9e37);
    let mut checks = 0;
    for (n, m) in [(1usize, 1usize), (2, 1), (2, 2)] {
        let mut ks = vec![rat(-1, 2)];
        for _ in 0..3 {
            ks.push(random_nonzero_rat(&mut rng, 5, 4));
        }
        let weights: Vec<Vec<i64>> =
            (0..10).map(|_| random_dominant_weight(&mut rng, n, m, 2)).collect();
        for la in &weights {
            for k in &ks {
                let params = DeformedParams::new(n, m, k.clone()).unwrap();
                let g = schur_generator(la, &params);
                if let Err(w) = is_quasi_invariant(&g, &params) {
                    return Err(format!(
                        "schur({la:?}) fails quasi-invariance at ({n},{m}), k={k}: {w:?}"
                    ));
                }
                if g.max_exponents() != vec![la.clone()] || g.coeff(la) != Rat::one() {
                    return Err(format!("schur({la:?}) has wrong leading structure"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} generators quasi-invariant with unit leading term"))
}
