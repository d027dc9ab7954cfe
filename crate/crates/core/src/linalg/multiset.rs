use super::matrix::C64;
use crate::error::{Error, Result};

/// Default distance under which two eigenvalues count as the same point.
pub const CLUSTER_TOL: f64 = 1e-7;

/// A multiset of complex eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenMultiset {
    values: Vec<C64>,
    tol: f64,
}

/// A group of eigenvalues within the clustering tolerance of each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    pub value: C64,
    pub multiplicity: usize,
}

/// Outcome of [`multiset_equal`].
#[derive(Clone, Debug)]
pub struct MatchReport {
    pub equal: bool,
    pub tolerance: f64,
    /// Largest distance over the matched pairs.
    pub max_distance: f64,
    /// `(index in a, index in b, distance)`, in matching order.
    pub pairs: Vec<(usize, usize, f64)>,
}

impl EigenMultiset {
    pub fn new(values: Vec<C64>) -> Self {
        Self {
            values,
            tol: CLUSTER_TOL,
        }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values sorted lexicographically by `(re, im)`.
    pub fn sorted(&self) -> Vec<C64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    /// Number of values within the clustering tolerance of `z`.
    pub fn count_near(&self, z: C64) -> usize {
        self.values.iter().filter(|v| (*v - z).norm() <= self.tol).count()
    }

    /// Single-linkage clusters at the multiset's tolerance, each represented
    /// by its mean and sorted by `(re, im)`.
    pub fn clusters(&self) -> Vec<Cluster> {
        let sorted = self.sorted();
        let n = sorted.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                if (sorted[i] - sorted[j]).norm() <= self.tol {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[b.max(a)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<(usize, C64, usize)> = Vec::new();
        for (i, &z) in sorted.iter().enumerate() {
            let root = find(&mut parent, i);
            match groups.iter_mut().find(|g| g.0 == root) {
                Some(g) => {
                    g.1 += z;
                    g.2 += 1;
                }
                None => groups.push((root, z, 1)),
            }
        }
        let mut clusters: Vec<Cluster> = groups
            .into_iter()
            .map(|(_, sum, k)| Cluster {
                value: sum / k as f64,
                multiplicity: k,
            })
            .collect();
        clusters.sort_by(|a, b| {
            a.value
                .re
                .total_cmp(&b.value.re)
                .then(a.value.im.total_cmp(&b.value.im))
        });
        clusters
    }
}

/// Order-free comparison of two eigenvalue multisets.
///
/// Pairs are chosen greedily by increasing distance over all candidate
/// pairs; the multisets are equal when every matched pair lies within `tol`.
pub fn multiset_equal(a: &EigenMultiset, b: &EigenMultiset, tol: f64) -> Result<MatchReport> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "multisets of size {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, x) in a.values.iter().enumerate() {
        for (j, y) in b.values.iter().enumerate() {
            candidates.push(((x - y).norm(), i, j));
        }
    }
    candidates.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut pairs = Vec::with_capacity(n);
    for (d, i, j) in candidates {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        pairs.push((i, j, d));
        if pairs.len() == n {
            break;
        }
    }
    let max_distance = pairs.iter().map(|p| p.2).fold(0.0, f64::max);
    Ok(MatchReport {
        equal: max_distance <= tol,
        tolerance: tol,
        max_distance,
        pairs,
    })
}
