//! Lattice points of convex hulls, decided by exact rational linear
//! programming (phase-one simplex with Bland's rule).

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::laurent::Exponent;
use crate::rat::{rat_int, Rat};

/// All integer points in the convex hull of `points`, computed exactly.
/// Panics on empty input.
pub fn hull_lattice_points(points: &[Exponent]) -> BTreeSet<Exponent> {
    assert!(!points.is_empty(), "hull_lattice_points: empty input");
    let d = points[0].len();
    assert!(points.iter().all(|p| p.len() == d), "mixed dimensions");
    let input: BTreeSet<Exponent> = points.iter().cloned().collect();
    if input.len() == 1 {
        return input;
    }

    let lo: Vec<i64> = (0..d).map(|c| input.iter().map(|p| p[c]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|c| input.iter().map(|p| p[c]).max().unwrap()).collect();
    // Coordinate sums are preserved by convex combinations, so they bound the
    // candidates cheaply (our supports are usually degree-homogeneous).
    let sum_lo = input.iter().map(|p| p.iter().sum::<i64>()).min().unwrap();
    let sum_hi = input.iter().map(|p| p.iter().sum::<i64>()).max().unwrap();

    let mut out = BTreeSet::new();
    let mut z = lo.clone();
    loop {
        let s: i64 = z.iter().sum();
        if s >= sum_lo && s <= sum_hi {
            if input.contains(&z) || in_hull(&input, &z) {
                out.insert(z.clone());
            }
        }
        // Odometer over the bounding box.
        let mut c = 0;
        loop {
            if c == d {
                return out;
            }
            z[c] += 1;
            if z[c] <= hi[c] {
                break;
            }
            z[c] = lo[c];
            c += 1;
        }
    }
}

/// Is `z` a convex combination of `points`? Exact phase-one simplex
/// feasibility for `{ w >= 0 : sum w_t P_t = z, sum w_t = 1 }`.
fn in_hull(points: &BTreeSet<Exponent>, z: &[i64]) -> bool {
    let d = z.len();
    let pts: Vec<&Exponent> = points.iter().collect();
    let t = pts.len();
    let rows = d + 1;
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            (0..t)
                .map(|c| if r < d { rat_int(pts[c][r]) } else { Rat::one() })
                .collect()
        })
        .collect();
    let mut b: Vec<Rat> = (0..rows)
        .map(|r| if r < d { rat_int(z[r]) } else { Rat::one() })
        .collect();
    for r in 0..rows {
        if b[r].is_negative() {
            b[r] = -b[r].clone();
            for c in 0..t {
                a[r][c] = -a[r][c].clone();
            }
        }
    }
    simplex_phase_one_feasible(a, b)
}

/// Minimizes the sum of artificial variables for `A w = b`, `w >= 0`,
/// `b >= 0`; returns whether the optimum is zero. Bland's pivoting rule keeps
/// the iteration finite.
fn simplex_phase_one_feasible(a: Vec<Vec<Rat>>, b: Vec<Rat>) -> bool {
    let rows = a.len();
    let cols = a[0].len();
    let total = cols + rows; // structural + artificial variables
    // Tableau rows: [A | I | b]; cost row holds reduced costs for min(sum art).
    let mut tab: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = Vec::with_capacity(total + 1);
            row.extend(a[r].iter().cloned());
            for c in 0..rows {
                row.push(if c == r { Rat::one() } else { Rat::zero() });
            }
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (cols..total).collect();
    // Reduced cost row = sum of constraint rows over structural columns.
    let mut cost: Vec<Rat> = vec![Rat::zero(); total + 1];
    for r in 0..rows {
        for c in 0..total + 1 {
            if c < cols || c == total {
                cost[c] = &cost[c] + &tab[r][c];
            }
        }
    }
    loop {
        // Bland: smallest-index column with positive reduced cost.
        let Some(enter) = (0..total).find(|&c| cost[c].is_positive()) else {
            break;
        };
        // Ratio test; Bland tie-break on the leaving basis variable.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][total] / &tab[r][enter];
                let better = match &best {
                    None => true,
                    Some(cur) => {
                        ratio < *cur
                            || (ratio == *cur
                                && basis[r] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            // Unbounded phase-one cannot happen; treat as infeasible.
            return false;
        };
        pivot(&mut tab, &mut cost, lr, enter);
        basis[lr] = enter;
    }
    cost[total].is_zero()
}

fn pivot(tab: &mut [Vec<Rat>], cost: &mut [Rat], row: usize, col: usize) {
    let inv = Rat::one() / tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v = &*v * &inv;
    }
    let prow = tab[row].clone();
    for (r, trow) in tab.iter_mut().enumerate() {
        if r != row && !trow[col].is_zero() {
            let f = trow[col].clone();
            for (v, p) in trow.iter_mut().zip(prow.iter()) {
                *v = &*v - &(&f * p);
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(prow.iter()) {
            *v = &*v - &(&f * p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: Vec<Vec<i64>>) -> BTreeSet<Exponent> {
        v.into_iter().collect()
    }

    #[test]
    fn segment_fills_in() {
        let pts = vec![vec![0, 0], vec![2, 0]];
        assert_eq!(hull_lattice_points(&pts), set(vec![vec![0, 0], vec![1, 0], vec![2, 0]]));
    }

    #[test]
    fn singleton() {
        assert_eq!(hull_lattice_points(&[vec![0, 0]]), set(vec![vec![0, 0]]));
    }

    #[test]
    fn box_fills_in() {
        let pts = vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]];
        let expect: BTreeSet<Exponent> =
            (0..=2).flat_map(|a| (0..=2).map(move |b| vec![a, b])).collect();
        assert_eq!(hull_lattice_points(&pts), expect);
    }

    #[test]
    fn triangle_excludes_outside_corner() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2]];
        let got = hull_lattice_points(&pts);
        assert!(got.contains(&vec![1, 1]));
        assert!(!got.contains(&vec![2, 2]));
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn idempotent_and_monotone() {
        let pts = vec![vec![1, -1, 0], vec![-1, 1, 0], vec![0, 0, 0], vec![2, -1, -1]];
        let h1 = hull_lattice_points(&pts);
        let h2 = hull_lattice_points(&h1.iter().cloned().collect::<Vec<_>>());
        assert_eq!(h1, h2);
        let sub = hull_lattice_points(&pts[..2]);
        assert!(sub.is_subset(&h1));
    }

    #[test]
    fn negative_coordinates() {
        let pts = vec![vec![-3, 1], vec![1, -3]];
        let got = hull_lattice_points(&pts);
        assert_eq!(
            got,
            set(vec![vec![-3, 1], vec![-2, 0], vec![-1, -1], vec![0, -2], vec![1, -3]])
        );
    }
}
