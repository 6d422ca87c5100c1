//! Direct solution of the 3×3 coefficient system by Gaussian elimination with
//! partial pivoting, with an infinity-norm condition estimate from the
//! explicitly formed inverse.

use crate::error::{Error, Result};

fn inf_norm(m: &[[f64; 3]; 3]) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `a · x = b`, returning the solution and the condition estimate
/// `‖A‖∞ · ‖A⁻¹‖∞`.
pub(crate) fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Result<([f64; 3], f64)> {
    // Augment with the right-hand side and the identity so that one
    // elimination pass yields both the solution and the inverse.
    let mut m = [[0.0f64; 7]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if !a[i][j].is_finite() {
                return Err(Error::SingularSystem(format!(
                    "entry ({i}, {j}) is not finite: {}",
                    a[i][j]
                )));
            }
            m[i][j] = a[i][j];
        }
        m[i][3] = b[i];
        m[i][4 + i] = 1.0;
    }

    for col in 0..3 {
        let pivot_row = (col..3)
            .max_by(|&r1, &r2| m[r1][col].abs().partial_cmp(&m[r2][col].abs()).unwrap())
            .unwrap();
        if m[pivot_row][col] == 0.0 {
            return Err(Error::SingularSystem(format!(
                "no usable pivot in column {col} (rows {col}..2 are linearly dependent)"
            )));
        }
        m.swap(col, pivot_row);
        let pivot = m[col][col];
        for v in &mut m[col][col..] {
            *v /= pivot;
        }
        let pivot_vals = m[col];
        for (row, values) in m.iter_mut().enumerate() {
            if row == col {
                continue;
            }
            let factor = values[col];
            if factor == 0.0 {
                continue;
            }
            for (v, p) in values[col..].iter_mut().zip(&pivot_vals[col..]) {
                *v -= factor * p;
            }
        }
    }

    let x = [m[0][3], m[1][3], m[2][3]];
    let mut inverse = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            inverse[i][j] = m[i][4 + j];
        }
    }
    let cond = inf_norm(&a) * inf_norm(&inverse);
    if !x.iter().all(|v| v.is_finite()) || !cond.is_finite() {
        return Err(Error::SingularSystem(
            "solution overflowed; the system is numerically singular".into(),
        ));
    }
    Ok((x, cond))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_well_conditioned_system() {
        let a = [[2.0, 1.0, -1.0], [-3.0, -1.0, 2.0], [-2.0, 1.0, 2.0]];
        let b = [8.0, -11.0, -3.0];
        let (x, cond) = solve3(a, b).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
        assert!((x[2] + 1.0).abs() < 1e-12);
        assert!(cond < 100.0);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        let (x, _) = solve3(a, [2.0, 1.0, 3.0]).unwrap();
        assert_eq!(x, [1.0, 2.0, 3.0]);
    }

    #[test]
    fn reports_singularity() {
        let a = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]];
        assert!(matches!(
            solve3(a, [1.0, 2.0, 3.0]),
            Err(Error::SingularSystem(_))
        ));
        let zero = [[0.0; 3]; 3];
        assert!(solve3(zero, [0.0; 3]).is_err());
    }

    #[test]
    fn condition_estimate_grows_for_near_dependent_rows() {
        let eps = 1e-13;
        let a = [[1.0, 1.0, 0.0], [1.0, 1.0 + eps, 0.0], [0.0, 0.0, 1.0]];
        let (_, cond) = solve3(a, [1.0, 1.0, 1.0]).unwrap();
        assert!(cond > 1e12, "cond {cond}");
    }
}
