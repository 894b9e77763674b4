//! Shared test support: an independent dense SVD oracle and corpus helpers.
//!
//! The oracle computes the largest singular value through a cyclic
//! two-sided Jacobi eigensolver on the Gram matrix. It shares no code with
//! the power-iteration path it is used to check.

use ndarray::Array2;
use num_complex::Complex64;

/// Largest singular value of a dense complex matrix via Jacobi iteration
/// on `B = AᴴA`.
pub fn svd_largest(matrix: &Array2<Complex64>) -> f64 {
    let (r, c) = matrix.dim();
    if r == 0 || c == 0 {
        return 0.0;
    }
    let m = c;
    // Gram matrix, Hermitian positive semidefinite.
    let mut b = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..r {
                acc += matrix[[k, i]].conj() * matrix[[k, j]];
            }
            b[i][j] = acc;
        }
    }

    for _sweep in 0..100 {
        let mut worst = 0.0f64;
        for p in 0..m {
            for q in (p + 1)..m {
                let bpq = b[p][q];
                let mag = bpq.norm();
                let scale = (b[p][p].re.abs() * b[q][q].re.abs()).sqrt().max(1e-300);
                worst = worst.max(mag / scale);
                if mag / scale <= 1e-15 {
                    continue;
                }
                // Complex Givens rotation annihilating b[p][q].
                let phase = bpq / mag;
                let tau = (b[q][q].re - b[p][p].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                // Column update: B <- B J.
                for i in 0..m {
                    let bip = b[i][p];
                    let biq = b[i][q];
                    b[i][p] = cs * bip - sn * phase.conj() * biq;
                    b[i][q] = sn * phase * bip + cs * biq;
                }
                // Row update: B <- Jᴴ B.
                for j in 0..m {
                    let bpj = b[p][j];
                    let bqj = b[q][j];
                    b[p][j] = cs * bpj - sn * phase * bqj;
                    b[q][j] = sn * phase.conj() * bpj + cs * bqj;
                }
            }
        }
        if worst <= 1e-15 {
            break;
        }
    }

    b.iter()
        .enumerate()
        .map(|(i, row)| row[i].re.max(0.0))
        .fold(0.0f64, f64::max)
        .sqrt()
}

#[cfg(test)]
mod oracle_self_checks {
    use super::*;
    use ndarray::arr2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oracle_on_known_matrices() {
        let anti = arr2(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
        assert!((svd_largest(&anti) - 1.0).abs() < 1e-12);

        let diag = arr2(&[
            [c(3.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(-5.0, 0.0)],
        ]);
        assert!((svd_largest(&diag) - 5.0).abs() < 1e-12);

        // 2x2 with singular values sqrt(2), 0: A = [[1, i], [i, -1]] has
        // AᴴA = 2 I ... use A = [[1, 1], [0, 0]] -> sigma = sqrt(2).
        let a = arr2(&[[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!((svd_largest(&a) - 2.0f64.sqrt()).abs() < 1e-12);

        // Unitary phase column scaling leaves singular values alone.
        let b = arr2(&[
            [c(0.0, 2.0), c(1.0, 1.0)],
            [c(1.0, -1.0), c(0.0, -2.0)],
        ]);
        // Frobenius bound sanity and invariance vs conjugate transpose.
        let bt = arr2(&[
            [c(0.0, -2.0), c(1.0, 1.0)],
            [c(1.0, -1.0), c(0.0, 2.0)],
        ]);
        let sb = svd_largest(&b);
        let sbt = svd_largest(&bt);
        assert!((sb - sbt).abs() < 1e-12);
        let frobenius = (b.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
        assert!(sb <= frobenius + 1e-12 && sb >= frobenius / 2.0f64.sqrt() - 1e-12);
    }
}
