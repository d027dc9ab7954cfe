use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Real eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi eigensolver.
///
/// The input must be Hermitian within `1e-9` (relative to its largest entry);
/// it is symmetrised as `(a + a*)/2` before iterating.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigen-decomposition of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let scale = a.max_norm().max(1.0);
    let adj = a.conj_transpose();
    let skew = a.max_abs_diff(&adj);
    if skew > 1e-9 * scale {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (max |a - a*| = {skew:e})"
        )));
    }
    let mut h = a.add(&adj)?.scale(C64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let norm = h.frobenius_norm();
    let mut converged = n < 2 || norm == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        converged = off <= 1e-15 * norm;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.total_cmp(&h[(j, j)].re));
    let values = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `h[p][q]` with a unitary plane rotation `G` (`h ← G*·h·G`,
/// `v ← v·G`).
fn rotate(h: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = h[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let app = h[(p, p)].re;
    let aqq = h[(q, q)].re;
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = h.rows();
    for i in 0..n {
        let hip = h[(i, p)];
        let hiq = h[(i, q)];
        h[(i, p)] = hip * g_pp + hiq * g_qp;
        h[(i, q)] = hip * g_pq + hiq * g_qq;
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * g_pp + viq * g_qp;
        v[(i, q)] = vip * g_pq + viq * g_qq;
    }
    for j in 0..n {
        let hpj = h[(p, j)];
        let hqj = h[(q, j)];
        h[(p, j)] = g_pp.conj() * hpj + g_qp.conj() * hqj;
        h[(q, j)] = g_pq.conj() * hpj + g_qq.conj() * hqj;
    }
    h[(p, q)] = C64::new(0.0, 0.0);
    h[(q, p)] = C64::new(0.0, 0.0);
    h[(p, p)] = C64::new(h[(p, p)].re, 0.0);
    h[(q, q)] = C64::new(h[(q, q)].re, 0.0);
}
