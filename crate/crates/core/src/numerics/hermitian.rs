use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::HERMITIAN_REL_TOL;
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are real and sorted descending; column `j` of `eigenvectors`
/// pairs with `eigenvalues[j]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Hermitian eigendecomposition via Householder tridiagonalization followed
/// by implicit-shift QL on the real tridiagonal form.
///
/// The input is symmetrized internally; inputs whose Hermitian deviation
/// exceeds `1e-8 * ||h||_F` are rejected.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEig> {
    h.require_hermitian(HERMITIAN_REL_TOL)?;
    if !h.all_finite() {
        return Err(Error::NonFinite("hermitian_eig input"));
    }
    let n = h.rows();
    let a = h.hermitian_part();
    if n == 1 {
        return Ok(HermitianEig {
            eigenvalues: vec![a[(0, 0)].re],
            eigenvectors: ComplexMatrix::identity(1),
        });
    }

    let (mut d, mut e, mut z) = tridiagonalize(&a);
    ql_implicit(&mut d, &mut e, &mut z)?;

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap());
    let eigenvalues: Vec<f64> = idx.iter().map(|&i| d[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in idx.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new_j)] = z[(i, old_j)];
        }
    }
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Reduce Hermitian `a` to real symmetric tridiagonal form `Q^H a Q = T`.
///
/// Returns (diagonal, subdiagonal, Q) with the subdiagonal real non-negative
/// (complex phases are absorbed into the columns of Q). `e[i]` couples
/// entries `i` and `i+1`; `e[n-1]` is the QL sentinel zero.
fn tridiagonalize(a: &ComplexMatrix) -> (Vec<f64>, Vec<f64>, ComplexMatrix) {
    let n = a.rows();
    let mut a = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut w = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for i in (k + 1)..n {
            norm2 += a[(i, k)].norm_sqr();
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        // Reflector v = x - alpha*e1 with alpha chosen to avoid cancellation.
        let x0 = a[(k + 1, k)];
        let alpha = if x0 == zero {
            Complex64::new(-norm, 0.0)
        } else {
            -(x0 / x0.norm()) * norm
        };
        for item in v.iter_mut().take(k + 1) {
            *item = zero;
        }
        for i in (k + 1)..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = v[(k + 1)..n].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // Hermitian rank-2 update: A <- A - v w^H - w v^H
        // with p = tau*A*v, w = p - (tau/2)(v^H p) v.
        for i in 0..n {
            let row = a.row(i);
            let mut acc = zero;
            for j in (k + 1)..n {
                acc += row[j] * v[j];
            }
            w[i] = acc * tau;
        }
        let mut vhp = zero;
        for i in (k + 1)..n {
            vhp += v[i].conj() * w[i];
        }
        let kappa = 0.5 * tau * vhp.re;
        for i in (k + 1)..n {
            w[i] -= v[i] * kappa;
        }
        // v is zero below index k+1, so v w^H touches rows k+1.., w v^H cols k+1..
        for i in (k + 1)..n {
            let vi = v[i];
            let row = a.row_mut(i);
            for (j, wj) in w.iter().enumerate() {
                row[j] -= vi * wj.conj();
            }
        }
        for i in 0..n {
            let wi = w[i];
            let row = a.row_mut(i);
            for j in (k + 1)..n {
                row[j] -= wi * v[j].conj();
            }
        }
        // Q <- Q (I - tau v v^H)
        for i in 0..n {
            let row = q.row(i);
            let mut acc = zero;
            for j in (k + 1)..n {
                acc += row[j] * v[j];
            }
            let scale = acc * tau;
            let row = q.row_mut(i);
            for j in (k + 1)..n {
                row[j] -= scale * v[j].conj();
            }
        }
    }

    // Absorb subdiagonal phases into Q so the tridiagonal form is real.
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in 0..n {
        d[i] = a[(i, i)].re;
    }
    let mut phase = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..(n - 1) {
        let sub = a[(i + 1, i)];
        let mag = sub.norm();
        e[i] = mag;
        phase[i + 1] = if mag > 0.0 { sub * phase[i] / mag } else { phase[i] };
    }
    for j in 0..n {
        let p = phase[j];
        for i in 0..n {
            q[(i, j)] *= p;
        }
    }
    (d, e, q)
}

/// Implicit-shift QL on a real symmetric tridiagonal, rotations accumulated
/// into the complex transform `z`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut ComplexMatrix) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenConvergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..z.rows() {
                    f = z[(row, i + 1)].re;
                    let fi = z[(row, i + 1)].im;
                    let zi = z[(row, i)];
                    z[(row, i + 1)] = Complex64::new(s * zi.re + c * f, s * zi.im + c * fi);
                    z[(row, i)] = Complex64::new(c * zi.re - s * f, c * zi.im - s * fi);
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Solve `h x = b` for Hermitian positive (semi)definite `h` via Cholesky.
///
/// If the factorization hits a pivot that is singular to working precision,
/// retries once with diagonal loading `1e-10 * trace(h) / n`.
pub fn solve_hermitian(h: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    h.require_hermitian(HERMITIAN_REL_TOL)?;
    if h.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            context: "solve_hermitian",
            left: format!("{}x{}", h.rows(), h.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let a = h.hermitian_part();
    let l = match cholesky(&a, 0.0) {
        Ok(l) => l,
        Err(_) => {
            let load = 1e-10 * a.trace().re / a.rows() as f64;
            if !(load > 0.0) {
                return Err(Error::SingularSystem { context: "solve_hermitian" });
            }
            cholesky(&a, load)
                .map_err(|_| Error::SingularSystem { context: "solve_hermitian (loaded)" })?
        }
    };
    Ok(cholesky_solve(&l, b))
}

fn cholesky(a: &ComplexMatrix, loading: f64) -> Result<ComplexMatrix> {
    let n = a.rows();
    let mut l = ComplexMatrix::zeros(n, n);
    let max_diag = (0..n)
        .map(|i| a[(i, i)].re + loading)
        .fold(f64::MIN_POSITIVE, f64::max);
    let floor = 1e-13 * max_diag;
    for j in 0..n {
        let mut djj = a[(j, j)].re + loading;
        for k in 0..j {
            djj -= l[(j, k)].norm_sqr();
        }
        if !(djj > floor) {
            return Err(Error::SingularSystem { context: "cholesky pivot" });
        }
        let ljj = djj.sqrt();
        l[(j, j)] = Complex64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

fn cholesky_solve(l: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = l.rows();
    let nrhs = b.cols();
    let mut x = ComplexMatrix::zeros(n, nrhs);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for col in 0..nrhs {
        // L y = b
        for i in 0..n {
            let mut s = b[(i, col)];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)].re;
        }
        // L^H x = y
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l[(k, i)].conj() * y[k];
            }
            y[i] = s / l[(i, i)].re;
        }
        for i in 0..n {
            x[(i, col)] = y[i];
        }
    }
    x
}

/// Solve `a x = b` for a small general complex matrix by Gaussian
/// elimination with partial pivoting.
pub fn solve_general(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            context: "solve_general",
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let n = a.rows();
    let nrhs = b.cols();
    let mut m = a.clone();
    let mut rhs = b.clone();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[(col, col)].norm();
        for row in (col + 1)..n {
            let mag = m[(row, col)].norm();
            if mag > best {
                best = mag;
                piv = row;
            }
        }
        if best <= 1e-14 * scale {
            return Err(Error::SingularSystem { context: "solve_general pivot" });
        }
        if piv != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(piv, j)];
                m[(piv, j)] = tmp;
            }
            for j in 0..nrhs {
                let tmp = rhs[(col, j)];
                rhs[(col, j)] = rhs[(piv, j)];
                rhs[(piv, j)] = tmp;
            }
        }
        let inv = Complex64::new(1.0, 0.0) / m[(col, col)];
        for row in (col + 1)..n {
            let factor = m[(row, col)] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let sub = m[(col, j)] * factor;
                m[(row, j)] -= sub;
            }
            for j in 0..nrhs {
                let sub = rhs[(col, j)] * factor;
                rhs[(row, j)] -= sub;
            }
        }
    }
    let mut x = ComplexMatrix::zeros(n, nrhs);
    for col in 0..nrhs {
        for i in (0..n).rev() {
            let mut s = rhs[(i, col)];
            for k in (i + 1)..n {
                s -= m[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / m[(i, i)];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn reconstruct(eig: &HermitianEig) -> ComplexMatrix {
        let u = &eig.eigenvectors;
        let lam = ComplexMatrix::diag_real(&eig.eigenvalues);
        u.matmul(&lam).matmul(&u.adjoint())
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = hermitian_eig(&ComplexMatrix::identity(3)).unwrap();
        for &v in &eig.eigenvalues {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_matrix() {
        let h = ComplexMatrix::diag_real(&[3.0, 1.0]);
        let eig = hermitian_eig(&h).unwrap();
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
        // Eigenvectors are a permutation of the identity (up to phase).
        assert!((eig.eigenvectors[(0, 0)].norm() - 1.0).abs() < 1e-10);
        assert!((eig.eigenvectors[(1, 1)].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gram_plus_identity_spectrum() {
        for seed in 0..5u64 {
            let g = random_matrix(8, 17 + seed);
            let h = g.adjoint().matmul(&g).add(&ComplexMatrix::identity(8));
            let eig = hermitian_eig(&h).unwrap();
            for &v in &eig.eigenvalues {
                assert!(v >= 1.0 - 1e-9, "eigenvalue {v} below 1");
            }
            residual_check(&h, &eig);
        }
    }

    fn residual_check(h: &ComplexMatrix, eig: &HermitianEig) {
        let n = h.rows();
        let hnorm = h.fro_norm();
        for j in 0..n {
            let u = eig.eigenvectors.column(j);
            let hu = h.matvec(&u);
            let res: f64 = hu
                .iter()
                .zip(&u)
                .map(|(&a, &b)| (a - b * eig.eigenvalues[j]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-9 * hnorm, "residual {res:.3e} vs norm {hnorm:.3e}");
        }
        // Unitarity
        let uhu = eig.eigenvectors.adjoint().matmul(&eig.eigenvectors);
        let dev = uhu.sub(&ComplexMatrix::identity(n)).max_abs();
        assert!(dev <= 1e-10, "unitarity deviation {dev:.3e}");
    }

    #[test]
    fn eigenvalues_sorted_descending() {
        let g = random_matrix(12, 3);
        let h = g.adjoint().matmul(&g);
        let eig = hermitian_eig(&h).unwrap();
        for w in eig.eigenvalues.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut h = ComplexMatrix::identity(3);
        h[(0, 1)] = c(5.0, 1.0);
        assert!(matches!(hermitian_eig(&h), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rejects_non_square() {
        let h = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&h), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn solve_identity() {
        let b = random_matrix(5, 9);
        let x = solve_hermitian(&ComplexMatrix::identity(5), &b).unwrap();
        assert!(x.sub(&b).max_abs() < 1e-14);
    }

    #[test]
    fn solve_diagonal() {
        let h = ComplexMatrix::diag_real(&[2.0, 4.0]);
        let b = ComplexMatrix::column_vector(&[c(2.0, 0.0), c(4.0, 0.0)]);
        let x = solve_hermitian(&h, &b).unwrap();
        assert!((x[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((x[(1, 0)] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn solve_residual_bound() {
        for seed in 0..5u64 {
            let g = random_matrix(10, 100 + seed);
            let h = g
                .adjoint()
                .matmul(&g)
                .add(&ComplexMatrix::identity(10).scale_re(0.1));
            let b = random_matrix(10, 200 + seed);
            let x = solve_hermitian(&h, &b).unwrap();
            let res = h.matmul(&x).sub(&b).fro_norm();
            assert!(res <= 1e-8 * h.fro_norm() * x.fro_norm().max(1.0));
        }
    }

    #[test]
    fn solve_singular_applies_loading() {
        // Rank-1 PSD matrix; plain Cholesky fails, loading recovers.
        let v = ComplexMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 1.0), c(1.0, -1.0)]);
        let h = v.matmul(&v.adjoint());
        let b = v.clone();
        let x = solve_hermitian(&h, &b).unwrap();
        let res = h.matmul(&x).sub(&b).fro_norm();
        assert!(res <= 1e-6 * b.fro_norm(), "residual {res:.3e}");
    }

    #[test]
    fn solve_general_small() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as f64 + 1.0, (i as f64) - (j as f64)));
        let xt = random_matrix(3, 77).row_block(0, 3);
        let b = a.matmul(&xt);
        let x = solve_general(&a, &b).unwrap();
        assert!(x.sub(&xt).max_abs() < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        // U diag(lambda) U^H reconstructs the input.
        #[test]
        fn eig_reconstructs(seed in 0u64..1000) {
            let g = random_matrix(6, seed);
            let h = g.adjoint().matmul(&g);
            let eig = hermitian_eig(&h).unwrap();
            let rec = reconstruct(&eig);
            prop_assert!(rec.sub(&h).fro_norm() <= 1e-8 * h.fro_norm().max(1e-12));
        }

        // Solve then multiply recovers the right-hand side.
        #[test]
        fn solve_roundtrip(seed in 0u64..1000) {
            let g = random_matrix(6, seed);
            let h = g.adjoint().matmul(&g).add(&ComplexMatrix::identity(6).scale_re(0.5));
            let b = random_matrix(6, seed.wrapping_add(1));
            let x = solve_hermitian(&h, &b).unwrap();
            let res = h.matmul(&x).sub(&b).fro_norm();
            prop_assert!(res <= 1e-8 * h.fro_norm() * x.fro_norm().max(1.0));
        }
    }
}
