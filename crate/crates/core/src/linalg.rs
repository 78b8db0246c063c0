//! Small fixed-size linear algebra over `[[T; N]; N]` arrays.
//!
//! Everything here is sized for the 6-dimensional classifier space (plus the
//! 3x3 color matrices), so the implementations favor determinism and
//! simplicity over asymptotics: cyclic Jacobi for symmetric eigenproblems,
//! plain Cholesky for SPD solves and determinants.

use crate::num::Real;

pub fn dot<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    let mut s = T::zero();
    for i in 0..N {
        s += a[i] * b[i];
    }
    s
}

pub fn sub<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    let mut out = [T::zero(); N];
    for i in 0..N {
        out[i] = a[i] - b[i];
    }
    out
}

pub fn add<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    let mut out = [T::zero(); N];
    for i in 0..N {
        out[i] = a[i] + b[i];
    }
    out
}

pub fn scale<T: Real, const N: usize>(a: &[T; N], s: T) -> [T; N] {
    let mut out = *a;
    for x in out.iter_mut() {
        *x = *x * s;
    }
    out
}

pub fn norm<T: Real, const N: usize>(a: &[T; N]) -> T {
    dot(a, a).sqrt()
}

pub fn identity<T: Real, const N: usize>() -> [[T; N]; N] {
    let mut m = [[T::zero(); N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn mat_vec<T: Real, const N: usize>(m: &[[T; N]; N], v: &[T; N]) -> [T; N] {
    let mut out = [T::zero(); N];
    for i in 0..N {
        out[i] = dot(&m[i], v);
    }
    out
}

pub fn mat_mul<T: Real, const N: usize>(a: &[[T; N]; N], b: &[[T; N]; N]) -> [[T; N]; N] {
    let mut out = [[T::zero(); N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn transpose<T: Real, const N: usize>(m: &[[T; N]; N]) -> [[T; N]; N] {
    let mut out = [[T::zero(); N]; N];
    for i in 0..N {
        for j in 0..N {
            out[j][i] = m[i][j];
        }
    }
    out
}

/// `v^T M v`.
pub fn quad_form<T: Real, const N: usize>(m: &[[T; N]; N], v: &[T; N]) -> T {
    dot(v, &mat_vec(m, v))
}

/// Cholesky factorization of an SPD matrix: returns lower-triangular `L` with
/// `L L^T = m`, or `None` when a pivot is not strictly positive.
pub fn cholesky<T: Real, const N: usize>(m: &[[T; N]; N]) -> Option<[[T; N]; N]> {
    let mut l = [[T::zero(); N]; N];
    for i in 0..N {
        for j in 0..=i {
            let mut s = m[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= T::zero() || !s.is_finite() {
                    return None;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `L L^T x = b` given the Cholesky factor `L`.
pub fn chol_solve<T: Real, const N: usize>(l: &[[T; N]; N], b: &[T; N]) -> [T; N] {
    // Forward: L y = b
    let mut y = [T::zero(); N];
    for i in 0..N {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    // Backward: L^T x = y
    let mut x = [T::zero(); N];
    for i in (0..N).rev() {
        let mut s = y[i];
        for k in (i + 1)..N {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

/// `log det(m)` for SPD `m` given its Cholesky factor.
pub fn chol_log_det<T: Real, const N: usize>(l: &[[T; N]; N]) -> T {
    let mut s = T::zero();
    for i in 0..N {
        s += l[i][i].ln();
    }
    s + s
}

/// Inverse of an SPD matrix via its Cholesky factor.
pub fn spd_inverse<T: Real, const N: usize>(l: &[[T; N]; N]) -> [[T; N]; N] {
    let mut inv = [[T::zero(); N]; N];
    for j in 0..N {
        let mut e = [T::zero(); N];
        e[j] = T::one();
        let col = chol_solve(l, &e);
        for i in 0..N {
            inv[i][j] = col[i];
        }
    }
    // Symmetrize away the last-bit asymmetry from the column solves.
    for i in 0..N {
        for j in (i + 1)..N {
            let v = (inv[i][j] + inv[j][i]) * T::of(0.5);
            inv[i][j] = v;
            inv[j][i] = v;
        }
    }
    inv
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues in ascending order
/// and eigenvectors stored as columns: `vectors[i][j]` is component `i` of the
/// eigenvector for `values[j]`.
pub fn symmetric_eigen<T: Real, const N: usize>(m: &[[T; N]; N]) -> ([T; N], [[T; N]; N]) {
    let mut a = *m;
    let mut v: [[T; N]; N] = identity();

    let mut frob = T::zero();
    for row in a.iter() {
        for &x in row.iter() {
            frob += x * x;
        }
    }
    let tol = T::of(1e-30) * (frob + T::one());

    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..N {
            for q in (p + 1)..N {
                off += a[p][q] * a[p][q];
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if a[p][q].abs() <= T::of(1e-300) {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::of(2.0) * a[p][q]);
                let t = if theta.abs() > T::of(1e150) {
                    // Rotation angle ~ 1/(2 theta).
                    (T::of(0.5) / theta).tanh()
                } else {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                // Update A = J^T A J for the (p, q) rotation.
                let app = a[p][p];
                let aqq = a[q][q];
                let apq = a[p][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for i in 0..N {
                    if i != p && i != q {
                        let aip = a[i][p];
                        let aiq = a[i][q];
                        a[i][p] = c * aip - s * aiq;
                        a[p][i] = a[i][p];
                        a[i][q] = c * aiq + s * aip;
                        a[q][i] = a[i][q];
                    }
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - s * viq;
                    row[q] = c * viq + s * vip;
                }
            }
        }
    }

    let mut values = [T::zero(); N];
    for i in 0..N {
        values[i] = a[i][i];
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: [usize; N] = [0; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite eigenvalues"));

    let mut sorted_values = [T::zero(); N];
    let mut sorted_vectors = [[T::zero(); N]; N];
    for (dst, &src) in order.iter().enumerate() {
        sorted_values[dst] = values[src];
        for i in 0..N {
            sorted_vectors[i][dst] = v[i][src];
        }
    }
    (sorted_values, sorted_vectors)
}

/// Largest eigenvalue of a symmetric matrix.
pub fn max_eigenvalue<T: Real, const N: usize>(m: &[[T; N]; N]) -> T {
    let (vals, _) = symmetric_eigen(m);
    vals[N - 1]
}

/// 2-norm condition number of a (not necessarily symmetric) matrix, computed
/// from the eigenvalues of `M^T M`. Returns infinity for singular input.
pub fn condition_number<T: Real, const N: usize>(m: &[[T; N]; N]) -> T {
    let mt = transpose(m);
    let mtm = mat_mul(&mt, m);
    let (vals, _) = symmetric_eigen(&mtm);
    let smin = vals[0].max(T::zero()).sqrt();
    let smax = vals[N - 1].max(T::zero()).sqrt();
    if smin == T::zero() {
        T::infinity()
    } else {
        smax / smin
    }
}

/// Inverse of a general 3x3 matrix, or `None` when singular.
pub fn invert3<T: Real>(m: &[[T; 3]; 3]) -> Option<[[T; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det == T::zero() || !det.is_finite() {
        return None;
    }
    let inv_det = T::one() / det;
    let mut out = [[T::zero(); 3]; 3];
    out[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv_det;
    out[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv_det;
    out[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv_det;
    out[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv_det;
    out[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv_det;
    out[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv_det;
    out[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv_det;
    out[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv_det;
    out[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv_det;
    Some(out)
}
