//! Dense exact-rational matrices: reduced row echelon form, nullspace bases,
//! linear solving and small matrix algebra.

use num::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        assert!(cols.iter().all(|x| x.len() == r), "ragged columns");
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(t, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// `self - c * I` for square matrices.
    pub fn sub_scalar_identity(&self, c: &Rat) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - c;
            out.set(i, i, v);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = Rat::one() / self.get(row, col).clone();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &(&f * self.get(row, c));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Exact basis of the right nullspace, ordered by ascending free column.
    /// Each vector is scaled to integer entries with content 1 and a positive
    /// leading (first nonzero) entry.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = -r.get(prow, free).clone();
            }
            basis.push(canonicalize_int_vector(vec));
        }
        basis
    }
}

/// Scales a rational vector to integer entries with content 1 and positive
/// leading entry.
pub fn canonicalize_int_vector(v: Vec<Rat>) -> Vec<Rat> {
    use num::bigint::BigInt;
    use num::Integer;
    let mut lcm = BigInt::one();
    for x in &v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &scaled {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v;
    }
    let lead_neg = scaled.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    let sign = if lead_neg { -BigInt::one() } else { BigInt::one() };
    scaled.into_iter().map(|x| Rat::from_integer(x * &sign / &g)).collect()
}

/// Reusable exact solver for `A x = b` where `A` has full column rank.
///
/// Row-reduces `[A | I]` once; solving a new right-hand side is then a single
/// matrix-vector product plus a consistency check.
pub struct LinearSolver {
    transform: ExactMatrix, // E with E*A = [I; 0]
    rows: usize,
    cols: usize,
}

impl LinearSolver {
    /// Returns `None` when `a` does not have full column rank.
    pub fn new(a: &ExactMatrix) -> Option<Self> {
        let rows = a.rows();
        let cols = a.cols();
        let mut aug = ExactMatrix::zero(rows, cols + rows);
        for r in 0..rows {
            for c in 0..cols {
                aug.set(r, c, a.get(r, c).clone());
            }
            aug.set(r, cols + r, Rat::one());
        }
        let pivots = aug.rref();
        let lead: Vec<usize> = pivots.into_iter().filter(|&c| c < cols).collect();
        if lead.len() != cols {
            return None;
        }
        // Full column rank forces the pivots to be exactly 0..cols in order.
        debug_assert!(lead.iter().copied().eq(0..cols));
        let mut transform = ExactMatrix::zero(rows, rows);
        for r in 0..rows {
            for c in 0..rows {
                transform.set(r, c, aug.get(r, cols + c).clone());
            }
        }
        Some(LinearSolver { transform, rows, cols })
    }

    /// Solves `A x = b`; `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let eb = self.transform.mul_vec(b);
        if eb[self.cols..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(eb[..self.cols].to_vec())
    }
}
