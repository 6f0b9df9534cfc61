//! Cyclic Jacobi diagonalization for small complex Hermitian matrices.

use alloc::vec::Vec;

use crate::operator::{Operator, Spectrum, C64, ZERO};

const MAX_SWEEPS: usize = 64;

fn off_diagonal_norm(a: &Operator) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc
}

/// Diagonalizes `m`, which the caller has already checked is Hermitian.
pub(crate) fn jacobi(m: &Operator) -> Spectrum {
    let n = m.dim();
    let mut a = m.clone();
    // Symmetrize so roundoff in the input cannot leak into the rotations.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = Operator::identity(n);

    let scale: f64 = m.entries().iter().map(|z| z.norm_sqr()).sum();
    let threshold = f64::EPSILON * f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// Zeroes `a[p][q]` with the unitary `V = D R`, where `D` rotates the phase
/// of the pivot onto the real axis and `R` is a real Jacobi rotation.
fn rotate(a: &mut Operator, v: &mut Operator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let phase = apq / magnitude; // e^{i theta}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // Columns p, q of V.
    let vpp = C64::new(c, 0.0);
    let vpq = C64::new(s, 0.0);
    let vqp = -phase.conj() * s;
    let vqq = phase.conj() * c;

    let n = a.dim();
    // A <- A V
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    // A <- V^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app - t * magnitude, 0.0);
    a[(q, q)] = C64::new(aqq + t * magnitude, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::inner;

    fn hermitian_4x4() -> Operator {
        let raw = [
            [(1.0, 0.0), (0.3, -0.2), (0.0, 0.5), (-0.7, 0.1)],
            [(0.3, 0.2), (-0.4, 0.0), (0.25, 0.25), (0.0, -0.9)],
            [(0.0, -0.5), (0.25, -0.25), (0.6, 0.0), (0.05, 0.0)],
            [(-0.7, -0.1), (0.0, 0.9), (0.05, 0.0), (0.1, 0.0)],
        ];
        let rows: Vec<Vec<C64>> = raw
            .iter()
            .map(|r| r.iter().map(|&(re, im)| C64::new(re, im)).collect())
            .collect();
        Operator::from_rows(&rows).unwrap()
    }

    #[test]
    fn reconstructs_and_is_orthonormal() {
        let m = hermitian_4x4();
        let spec = jacobi(&m);
        assert!(spec.reconstruct().max_abs_diff(&m) < 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                let ip = inner(&spec.eigenvectors[i], &spec.eigenvectors[j]);
                assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
        assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn already_diagonal_input() {
        let m = Operator::diagonal(&[3.0, -1.0, 2.0]);
        let spec = jacobi(&m);
        assert_eq!(spec.eigenvalues, [-1.0, 2.0, 3.0]);
    }
}
