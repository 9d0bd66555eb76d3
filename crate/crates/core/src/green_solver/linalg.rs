use num::{Signed, Zero};

use crate::Rational;

/// Solves `matrix * x = rhs` exactly by Gaussian elimination.
///
/// Returns `None` if the matrix is singular.
pub(crate) fn solve_dense(mut matrix: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        // exact arithmetic: any nonzero pivot works, the smallest-magnitude
        // search just keeps intermediate sizes down a little
        let pivot = (col..n)
            .filter(|&r| !matrix[r][col].is_zero())
            .min_by(|&a, &b| matrix[a][col].abs().cmp(&matrix[b][col].abs()))?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            if matrix[row][col].is_zero() {
                continue;
            }
            let factor = &matrix[row][col] / &matrix[col][col];
            for k in col..n {
                let delta = &factor * &matrix[col][k];
                matrix[row][k] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[row] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for k in row + 1..n {
            acc -= &matrix[row][k] * &x[k];
        }
        x[row] = acc / &matrix[row][row];
    }
    Some(x)
}
