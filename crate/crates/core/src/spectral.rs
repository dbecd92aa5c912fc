//! Exact joint generalized-eigenspace decomposition of the integrals acting
//! on a finite-dimensional invariant subspace.
//!
//! Weights are grouped into candidate characters two independent ways — by
//! evaluating the Harish-Chandra images for `p <= pmax`, and (at `k = -1/2`)
//! by the central-character equivalence of the weight combinatorics — and any
//! disagreement is an error, never silently resolved. Per character the block
//! is the intersection of stabilized kernels of `(A_p - chi(p) I)^N`, and the
//! blocks must sum to the whole space.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::hc::character_vector;
use crate::laurent::{Exponent, LaurentPoly};
use crate::matrix::{ExactMatrix, LinearSolver};
use crate::operators::{integrals_up_to, OpError};
use crate::params::DeformedParams;
use crate::quasi::SubspaceBasis;
use crate::rat::Rat;
use crate::weights::{equivalence_key, sharp_inverse, to_ab, WeightError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("integral L_{p} maps basis element {element} outside the span")]
    ClosureViolation { element: usize, p: u32 },
    #[error("character groupings disagree: {0}")]
    GroupingMismatch(String),
    #[error("blocks span {found} dimensions of {expected}")]
    DecompositionGap { expected: usize, found: usize },
    #[error("block is not invariant under L_{p}")]
    BlockNotInvariant { p: u32 },
    #[error(transparent)]
    Operator(#[from] OpError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Expresses Laurent polynomials in the coordinates of a subspace basis.
pub struct BasisExpander {
    exps: Vec<Exponent>,
    solver: LinearSolver,
}

impl BasisExpander {
    pub fn new(basis: &SubspaceBasis) -> Self {
        let mut all: std::collections::BTreeSet<Exponent> = Default::default();
        for f in &basis.elements {
            all.extend(f.support());
        }
        let exps: Vec<Exponent> = all.into_iter().collect();
        let mut mat = ExactMatrix::zero(exps.len(), basis.elements.len());
        for (col, f) in basis.elements.iter().enumerate() {
            for (row, e) in exps.iter().enumerate() {
                mat.set(row, col, f.coeff(e));
            }
        }
        let solver = LinearSolver::new(&mat).expect("basis elements are linearly independent");
        BasisExpander { exps, solver }
    }

    /// Coordinates of `f` over the basis; `None` when `f` leaves the span.
    pub fn expand(&self, f: &LaurentPoly) -> Option<Vec<Rat>> {
        // Any support outside the recorded exponents is already a failure.
        if f.terms().any(|(e, _)| !self.exps.contains(e)) {
            return None;
        }
        let b: Vec<Rat> = self.exps.iter().map(|e| f.coeff(e)).collect();
        self.solver.solve(&b)
    }
}

/// The exact matrix of `L_p` on the basis (columns are images in basis
/// coordinates).
pub fn action_matrix(basis: &SubspaceBasis, p: u32) -> Result<ExactMatrix, SpectralError> {
    Ok(action_matrices(basis, p)?.pop().expect("pmax >= 1"))
}

/// Matrices of `L_1, ..., L_pmax`; the partial-operator table is shared per
/// basis element, so this costs no more than the single largest order.
pub fn action_matrices(
    basis: &SubspaceBasis,
    pmax: u32,
) -> Result<Vec<ExactMatrix>, SpectralError> {
    let expander = BasisExpander::new(basis);
    let dim = basis.elements.len();
    let mut mats = vec![ExactMatrix::zero(dim, dim); pmax as usize];
    for (col, f) in basis.elements.iter().enumerate() {
        let images = integrals_up_to(pmax, f, &basis.params)?;
        for (pi, img) in images.iter().enumerate() {
            let coords = expander.expand(img).ok_or(SpectralError::ClosureViolation {
                element: col,
                p: pi as u32 + 1,
            })?;
            for (row, v) in coords.into_iter().enumerate() {
                mats[pi].set(row, col, v);
            }
        }
    }
    Ok(mats)
}

/// `A_p A_q - A_q A_p` on the basis; zero exactly when the two integrals
/// commute on the subspace.
pub fn commutator_on_subspace(
    p: u32,
    q: u32,
    basis: &SubspaceBasis,
) -> Result<ExactMatrix, SpectralError> {
    let mats = action_matrices(basis, p.max(q))?;
    let ap = &mats[(p - 1) as usize];
    let aq = &mats[(q - 1) as usize];
    Ok(ap.mul(aq).sub(&aq.mul(ap)))
}

/// One generalized eigenspace of the integrals on a subspace.
#[derive(Clone, Debug)]
pub struct SpectralBlock {
    /// `chi(L_p)` for `p = 1..=pmax`.
    pub character: Vec<Rat>,
    /// Dominant support weights carrying this character, largest first.
    /// When the support contains every function of the character class the
    /// block dimension equals the number of representatives; representatives
    /// whose eigenfunctions stick outside the support do not contribute.
    pub representatives: Vec<Exponent>,
    /// Column-echelon basis of the block in ambient basis coordinates.
    pub block_basis: Vec<Vec<Rat>>,
    /// Smallest `N` with `(A_p - chi(p))^N = 0` on the block, per `p`.
    pub nilpotency: BTreeMap<u32, u32>,
}

impl SpectralBlock {
    pub fn dim(&self) -> usize {
        self.block_basis.len()
    }

    /// A block is a true eigenspace exactly when every nilpotency order is 1.
    pub fn is_true_eigenspace(&self) -> bool {
        self.nilpotency.values().all(|&n| n == 1)
    }
}

/// `M^N` for the smallest `N >= 1` at which `ker(M^N)` stabilizes.
fn stabilized_power(m: &ExactMatrix) -> ExactMatrix {
    let dim = m.rows();
    let mut power = m.clone();
    let mut kdim = dim - power.rank();
    loop {
        if kdim == dim {
            return power;
        }
        let next = power.mul(m);
        let next_kdim = dim - next.rank();
        if next_kdim == kdim {
            return power;
        }
        power = next;
        kdim = next_kdim;
    }
}

/// Intersects a subspace (columns of `space`) with `ker(m)`.
fn intersect_with_kernel(space: ExactMatrix, m: &ExactMatrix) -> ExactMatrix {
    let restricted = m.mul(&space);
    let inner = restricted.nullspace();
    if inner.is_empty() {
        return ExactMatrix::zero(space.rows(), 0);
    }
    let combo = ExactMatrix::from_cols(inner);
    space.mul(&combo)
}

/// Reduced column echelon form of the column space.
fn column_echelon(space: &ExactMatrix) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = (0..space.cols()).map(|c| space.column(c)).collect();
    if rows.is_empty() {
        return vec![];
    }
    let mut mat = ExactMatrix::from_rows(rows.drain(..).collect());
    let pivots = mat.rref();
    (0..pivots.len())
        .map(|r| (0..mat.cols()).map(|c| mat.get(r, c).clone()).collect())
        .collect()
}

/// Decomposes the subspace into joint generalized eigenspaces of
/// `L_1, ..., L_pmax`.
pub fn decompose(basis: &SubspaceBasis, pmax: u32) -> Result<Vec<SpectralBlock>, SpectralError> {
    let params = &basis.params;
    let dim = basis.elements.len();
    let mats = action_matrices(basis, pmax)?;
    let reps = basis.dominant_support();

    // Group the dominant support weights by Harish-Chandra character.
    let mut groups: BTreeMap<Vec<Rat>, Vec<Exponent>> = BTreeMap::new();
    for la in &reps {
        let chi = character_vector(la, pmax, params);
        groups.entry(chi).or_default().push(la.clone());
    }
    // Cross-validate against the combinatorial equivalence at the symmetric
    // value of k, where the weight calculus applies.
    if params.is_symmetric_value() {
        let mut comb: BTreeMap<(Vec<i64>, Vec<i64>), Vec<Exponent>> = BTreeMap::new();
        for la in &reps {
            let adm = sharp_inverse(la, params.n, params.m);
            let key = equivalence_key(&to_ab(&adm, params.n, params.m)?);
            comb.entry(key).or_default().push(la.clone());
        }
        let numeric_parts: std::collections::BTreeSet<Vec<Exponent>> =
            groups.values().cloned().collect();
        let comb_parts: std::collections::BTreeSet<Vec<Exponent>> =
            comb.values().cloned().collect();
        if numeric_parts != comb_parts {
            return Err(SpectralError::GroupingMismatch(format!(
                "character grouping {numeric_parts:?} vs combinatorial {comb_parts:?}"
            )));
        }
    }

    let mut blocks = Vec::new();
    let mut total = 0usize;
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    for (chi, mut members) in groups {
        members.sort_unstable_by(|a, b| b.cmp(a));
        let mut space = ExactMatrix::identity(dim);
        for (pi, chi_p) in chi.iter().enumerate() {
            let shifted = mats[pi].sub_scalar_identity(chi_p);
            space = intersect_with_kernel(space, &stabilized_power(&shifted));
            if space.cols() == 0 {
                break;
            }
        }
        let block_basis = column_echelon(&space);
        let bdim = block_basis.len();
        total += bdim;
        stacked.extend(block_basis.iter().cloned());

        let mut nilpotency = BTreeMap::new();
        if bdim > 0 {
            let block_mat = ExactMatrix::from_cols(block_basis.clone());
            let solver = LinearSolver::new(&block_mat).expect("echelon basis is independent");
            for (pi, chi_p) in chi.iter().enumerate() {
                let p = pi as u32 + 1;
                // Restrict A_p to the block.
                let image = mats[pi].mul(&block_mat);
                let mut restricted = ExactMatrix::zero(bdim, bdim);
                for c in 0..bdim {
                    let col = solver
                        .solve(&image.column(c))
                        .ok_or(SpectralError::BlockNotInvariant { p })?;
                    for (r, v) in col.into_iter().enumerate() {
                        restricted.set(r, c, v);
                    }
                }
                let shifted = restricted.sub_scalar_identity(chi_p);
                let mut order = 1u32;
                let mut power = shifted.clone();
                while !power.is_zero() {
                    order += 1;
                    if order > bdim as u32 {
                        return Err(SpectralError::BlockNotInvariant { p });
                    }
                    power = power.mul(&shifted);
                }
                nilpotency.insert(p, order);
            }
        }
        blocks.push(SpectralBlock {
            character: chi,
            representatives: members,
            block_basis,
            nilpotency,
        });
    }

    if total != dim {
        return Err(SpectralError::DecompositionGap { expected: dim, found: total });
    }
    if !stacked.is_empty() {
        let rank = ExactMatrix::from_rows(stacked).rank();
        if rank != dim {
            return Err(SpectralError::DecompositionGap { expected: dim, found: rank });
        }
    }
    Ok(blocks)
}

/// Predicted dimension `2^s` of the generalized eigenspace of a dominant
/// weight, from the combinatorial class size at the symmetric value
/// `k = -1/2`. Infinite classes are an error.
pub fn predicted_block_dimension(
    la: &[i64],
    params: &DeformedParams,
) -> Result<u64, WeightError> {
    assert!(
        params.is_symmetric_value(),
        "the combinatorial class prediction applies at k = -1/2 only"
    );
    let adm = sharp_inverse(la, params.n, params.m);
    let pair = to_ab(&adm, params.n, params.m)?;
    if !pair.a_set().is_disjoint(&pair.b_set()) {
        return Err(WeightError::InfiniteClass);
    }
    let s = crate::weights::atypicality_degree(&pair)?;
    Ok(1u64 << s)
}
