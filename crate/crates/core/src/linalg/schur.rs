use super::matrix::{ComplexMatrix, C64};
use super::multiset::EigenMultiset;
use crate::error::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Eigenvalues and unit eigenvectors of a general square matrix.
#[derive(Clone, Debug)]
pub struct GeneralEigen {
    pub values: Vec<C64>,
    /// Unit eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

/// Eigenvalues of a general complex matrix (Hessenberg reduction followed by
/// shifted QR).
pub fn eig_general(a: &ComplexMatrix) -> Result<EigenMultiset> {
    let (t, _) = schur(a, false)?;
    let values = (0..t.rows()).map(|i| t[(i, i)]).collect();
    Ok(EigenMultiset::new(values))
}

/// Eigenvalues together with eigenvectors recovered from the Schur form.
pub fn eig_general_with_vectors(a: &ComplexMatrix) -> Result<GeneralEigen> {
    let (t, z) = schur(a, true)?;
    let z = z.expect("Schur vectors requested");
    let n = t.rows();
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let tnorm = t.max_norm().max(f64::MIN_POSITIVE);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE * 1e10);
    let mut vectors = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        // back substitution for (T − λ_k I) x = 0 with x_k = 1
        let lambda = values[k];
        let mut x = vec![ZERO; n];
        x[k] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let rhs: C64 = (j + 1..=k).map(|i| t[(j, i)] * x[i]).sum();
            let mut d = t[(j, j)] - lambda;
            if d.norm() < smin {
                d = C64::new(smin, 0.0);
            }
            x[j] = -rhs / d;
            let big = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if big > 1e100 {
                for xi in x.iter_mut() {
                    *xi /= big;
                }
            }
        }
        let mut v: Vec<C64> = (0..n)
            .map(|i| (0..=k).map(|l| z[(i, l)] * x[l]).sum())
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in v.iter_mut() {
            *c /= norm;
        }
        for (i, c) in v.into_iter().enumerate() {
            vectors[(i, k)] = c;
        }
    }
    Ok(GeneralEigen { values, vectors })
}

/// Complex Schur decomposition `a = Z·T·Z*`. Returns `T` and, on request, `Z`.
fn schur(a: &ComplexMatrix, want_z: bool) -> Result<(ComplexMatrix, Option<ComplexMatrix>)> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut z = want_z.then(|| ComplexMatrix::identity(n));
    hessenberg(&mut h, z.as_mut());
    if n < 2 {
        return Ok((h, z));
    }

    let cap = 100 * n.max(10);
    let mut total = 0;
    let mut hi = n - 1;
    let mut since_deflation = 0;
    let anorm = h.max_norm().max(f64::MIN_POSITIVE);
    while hi > 0 {
        // locate the start of the unreduced block ending at `hi`
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = anorm;
            }
            if sub <= f64::EPSILON * diag {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(Error::NoConvergence(cap));
        }
        let shift = if since_deflation % 11 == 10 {
            // exceptional shift to break cycling
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.5 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, z.as_mut(), lo, hi, shift);
    }
    // clear the strictly lower part left behind by rounding
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, z))
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> C64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let r1 = mean + disc;
    let r2 = mean - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` (c real) mapping `(f, g)` to `(r, 0)`.
fn givens(f: C64, g: C64) -> (f64, C64) {
    let fa = f.norm();
    let ga = g.norm();
    if ga == 0.0 {
        return (1.0, ZERO);
    }
    if fa == 0.0 {
        return (0.0, (g / ga).conj());
    }
    let r = fa.hypot(ga);
    let c = fa / r;
    let s = (f / fa) * g.conj() / r;
    (c, s)
}

/// One explicit shifted QR step on the active block `lo..=hi`.
fn qr_sweep(h: &mut ComplexMatrix, mut z: Option<&mut ComplexMatrix>, lo: usize, hi: usize, mu: C64) {
    let n = h.rows();
    for k in lo..=hi {
        h[(k, k)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..n {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        let last = (k + 2).min(hi);
        for i in 0..=last {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
        if let Some(z) = z.as_deref_mut() {
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = x * c + y * s.conj();
                z[(i, k + 1)] = -x * s + y * c;
            }
        }
    }
    for k in lo..=hi {
        h[(k, k)] += mu;
    }
}

/// Householder reduction to upper Hessenberg form, accumulating into `z`.
fn hessenberg(h: &mut ComplexMatrix, mut z: Option<&mut ComplexMatrix>) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vnorm;
        }
        // h ← (I − 2vv*) h
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= *vi * dot * 2.0;
            }
        }
        // h ← h (I − 2vv*)
        for i in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(j, vj)| h[(i, k + 1 + j)] * vj)
                .sum();
            for (j, vj) in v.iter().enumerate() {
                h[(i, k + 1 + j)] -= dot * vj.conj() * 2.0;
            }
        }
        if let Some(z) = z.as_deref_mut() {
            for i in 0..n {
                let dot: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(j, vj)| z[(i, k + 1 + j)] * vj)
                    .sum();
                for (j, vj) in v.iter().enumerate() {
                    z[(i, k + 1 + j)] -= dot * vj.conj() * 2.0;
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}
