//! Dense exact linear algebra over rationals.
//!
//! Matrices are small (at most ~8×8) throughout the crate, so everything is
//! plain fraction-free-enough Gaussian elimination on `Vec<Vec<Rat>>`.

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Determinant by Gaussian elimination with exact pivoting.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut result = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            result = -result;
        }
        let pv = a[col][col].clone();
        result *= pv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    result
}

/// Rank of a (possibly rectangular) matrix.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pv = a[r][col].clone();
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &pv;
            for c in col..cols {
                let sub = &f * &a[r][c];
                a[i][c] -= sub;
            }
        }
        r += 1;
    }
    r
}

/// Solve the square system `A x = b` exactly. Returns `None` when `A` is
/// singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let pv = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..=n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Some(
        (0..n)
            .map(|r| {
                let pv = m[r][r].clone();
                &m[r][n] / pv
            })
            .collect(),
    )
}

/// One nonzero vector spanning the kernel of a matrix with nullity one
/// (rows may be redundant). Returns `None` when the kernel is trivial or has
/// dimension greater than one.
pub fn kernel_vector(m: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    if m.is_empty() {
        return None;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pv = a[r][col].clone();
        for i in 0..rows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &pv;
            for c in 0..cols {
                let sub = &f * &a[r][c];
                a[i][c] -= sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut v = vec![Rat::zero(); cols];
    v[f] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        let pv = a[row][pc].clone();
        v[pc] = -&a[row][f] / pv;
    }
    Some(v)
}

/// Dot product of two rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Difference `a - b` of two rational vectors.
pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn det_3x3() {
        let m = vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(1), int(0)],
            vec![int(0), int(3), int(1)],
        ];
        assert_eq!(det(&m), int(5));
    }

    #[test]
    fn solve_2x2() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let b = vec![int(5), int(10)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![int(1), int(3)]);
    }

    #[test]
    fn rank_rectangular() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_of_rank_two_3x3() {
        // Rows span the plane z = x + y; kernel is (1, 1, -1) up to scale.
        let m = vec![
            vec![int(1), int(0), int(1)],
            vec![int(0), int(1), int(1)],
            vec![int(1), int(1), int(2)],
        ];
        let v = kernel_vector(&m).unwrap();
        assert_eq!(dot(&m[0], &v), int(0));
        assert_eq!(dot(&m[2], &v), int(0));
        assert_ne!(v, vec![int(0); 3]);
    }

    #[test]
    fn kernel_rejects_full_rank() {
        let m = vec![vec![int(1), int(0)], vec![rat(1, 2), int(1)]];
        assert!(kernel_vector(&m).is_none());
    }
}
