//! Saturated integer kernel lattices.
//!
//! The radical of an integer bilinear form is the set of *integer* vectors
//! annihilating the Gram matrix, i.e. a saturated sublattice. Clearing the
//! denominators of a rational nullspace basis does not always produce a
//! saturated lattice, so kernels are computed with unimodular row operations
//! instead: reducing `[A | I]` with integer row operations leaves the
//! identity-part rows of the zero rows of `A` as a basis of the full kernel
//! lattice.

use num::{BigInt, BigRational, Signed, Zero};

/// Basis of `{ v in Z^r : v * mat = 0 }` for an `r x c` integer matrix.
///
/// The result is a basis of the saturated kernel lattice, deterministic for a
/// fixed input, with each vector's leading nonzero entry positive.
pub fn left_kernel(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    debug_assert!(mat.iter().all(|r| r.len() == cols));

    // Working rows [A | I].
    let mut work: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut row = mat[i].clone();
            row.extend((0..rows).map(|j| BigInt::from((i == j) as i64)));
            row
        })
        .collect();

    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclidean elimination in this column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for (r, row) in work.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if row[col].abs() < work[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            work.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if work[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&work[r][col], &work[pivot_row][col]);
                if !q.is_zero() {
                    for k in col..cols + rows {
                        let sub = &q * &work[pivot_row][k];
                        work[r][k] -= sub;
                    }
                }
                if !work[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !work[pivot_row][col].is_zero() {
            pivot_row += 1;
        }
    }

    let mut kernel: Vec<Vec<BigInt>> = work
        .into_iter()
        .filter(|row| row[..cols].iter().all(|v| v.is_zero()))
        .map(|row| row[cols..].to_vec())
        .collect();
    for v in &mut kernel {
        if let Some(lead) = v.iter().find(|x| !x.is_zero()) {
            if lead.is_negative() {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    kernel.sort();
    kernel
}

/// Basis of `{ v in Z^c : mat * v = 0 }`.
pub fn right_kernel(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    left_kernel(&transpose(mat))
}

pub fn transpose(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let cols = mat[0].len();
    (0..cols)
        .map(|c| mat.iter().map(|row| row[c].clone()).collect())
        .collect()
}

// Quotient rounding to nearest keeps entries small during elimination.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let r = BigRational::new(a.clone(), b.clone());
    r.round().to_integer()
}

/// Whether `v` lies in the rational row span of `basis` with *integer*
/// coordinates. Used to compare lattices: two bases span the same lattice
/// when each vector of one lies in the span of the other.
pub fn in_lattice_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let cols = v.len();
    // Solve x * basis = v by rational Gaussian elimination on basis^T | v^T.
    let mut aug: Vec<Vec<BigRational>> = (0..cols)
        .map(|c| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[c].clone()))
                .collect();
            row.push(BigRational::from_integer(v[c].clone()));
            row
        })
        .collect();
    let nvars = basis.len();
    let mut pivots: Vec<Option<usize>> = vec![None; nvars];
    let mut row = 0usize;
    for var in 0..nvars {
        let Some(p) = (row..aug.len()).find(|&r| !aug[r][var].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][var].clone();
        for k in var..=nvars {
            let val = &aug[row][k] / &inv;
            aug[row][k] = val;
        }
        for r in 0..aug.len() {
            if r != row && !aug[r][var].is_zero() {
                let f = aug[r][var].clone();
                for k in var..=nvars {
                    let sub = &f * &aug[row][k];
                    aug[r][k] -= sub;
                }
            }
        }
        pivots[var] = Some(row);
        row += 1;
    }
    // Inconsistent rows mean v is outside the rational span.
    for r in row..aug.len() {
        if !aug[r][nvars].is_zero() {
            return false;
        }
    }
    pivots
        .iter()
        .flatten()
        .all(|&r| aug[r][nvars].is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert!(left_kernel(&id).is_empty());
        assert!(right_kernel(&id).is_empty());
    }

    #[test]
    fn kernel_of_zero_row() {
        let a = m(&[&[1, 0], &[0, 0]]);
        let k = left_kernel(&a);
        assert_eq!(k, m(&[&[0, 1]]));
        let kr = right_kernel(&a);
        assert_eq!(kr, m(&[&[0, 1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        // Kernel of (a, b, c) -> a + b - 2c. The basis {(2,0,1), (0,2,1)}
        // spans the rational nullspace but only an index-2 sublattice;
        // (1, 1, 1) must still be reachable over the integers.
        let a = m(&[&[1], &[1], &[-2]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        assert!(in_lattice_span(&k, &m(&[&[1, 1, 1]])[0]));
        assert!(in_lattice_span(&k, &m(&[&[2, 0, 1]])[0]));
        assert!(!in_lattice_span(&k, &m(&[&[1, 0, 0]])[0]));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 5], &[3, 6, 14]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            for c in 0..3 {
                let dot: BigInt = v.iter().zip(a.iter()).map(|(x, row)| x * &row[c]).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn span_membership() {
        let basis = m(&[&[2, 0, 1], &[0, 2, 1]]);
        assert!(in_lattice_span(&basis, &m(&[&[2, 2, 2]])[0]));
        assert!(!in_lattice_span(&basis, &m(&[&[1, 1, 1]])[0]));
        assert!(!in_lattice_span(&basis, &m(&[&[1, 0, 0]])[0]));
        assert!(in_lattice_span(&basis, &m(&[&[0, 0, 0]])[0]));
    }
}
