use proptest::prelude::*;
use qwalk::linalg::{eig_general, eig_general_with_vectors, eig_hermitian};
use qwalk::operators::{
    discriminant_ap, discriminant_aq, grover_matrix, search_operators, search_two_path_oracle,
    sqw_operators, sqw_two_path_oracle, szegedy_isometries, szegedy_walk, two_path_oracle,
    WalkOperator,
};
use qwalk::search::spectral_gap;
use qwalk::{build_search_instance, sample, BipartiteGraph, ComplexMatrix, SearchInstance, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bipartite(seed: u64) -> BipartiteGraph {
    let mut r = rng(seed);
    let (m, n, extra) = (r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(0..6));
    sample::random_bipartite(&mut r, m, n, extra)
}

fn search_instance(seed: u64) -> SearchInstance {
    let mut r = rng(seed);
    let n = r.gen_range(2..=8);
    let extra = r.gen_range(0..6);
    let g = sample::random_multigraph(&mut r, n, extra, true);
    let m = r.gen_range(1..=n);
    let marked: Vec<usize> = (0..m).collect();
    let w = sample::random_weighting(&mut r, &g.duplication());
    build_search_instance(&g, w, &marked).unwrap()
}

fn assert_walk(w: &WalkOperator) {
    assert!(w.is_unitary(1e-9));
    if let Some((r0, r1)) = w.factors() {
        for r in [r0, r1] {
            assert!(r.is_hermitian(1e-9));
            let sq = r * r;
            assert!(sq.max_abs_diff(&ComplexMatrix::identity(r.rows())) <= 1e-9);
        }
    }
    for z in eig_general(w.matrix()).unwrap().values() {
        assert!((z.norm() - 1.0).abs() <= 1e-7);
    }
}

fn in_unit_interval(values: &[f64]) -> bool {
    values.iter().all(|&x| (-1e-9..=1.0 + 1e-9).contains(&x))
}

fn random_matrix(seed: u64, n: usize) -> ComplexMatrix {
    let mut r = rng(seed);
    ComplexMatrix::from_fn(n, n, |_, _| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn szegedy_walks_are_unitary(seed in any::<u64>()) {
        let bg = bipartite(seed);
        let w = sample::random_weighting(&mut rng(seed ^ 3), &bg);
        let (k, l) = szegedy_isometries(&bg, &w).unwrap();
        assert_walk(&szegedy_walk(&k, &l).unwrap());
        let ap = discriminant_ap(&k, &l).unwrap();
        prop_assert!(ap.matrix().max_abs_diff(&two_path_oracle(&bg, &w, true)) <= 1e-12);
        let aq = discriminant_aq(&k, &l).unwrap();
        prop_assert!(aq.matrix().max_abs_diff(&two_path_oracle(&bg, &w, false)) <= 1e-12);
        prop_assert!(in_unit_interval(&ap.eigenvalues().unwrap()));
        prop_assert!(in_unit_interval(&aq.eigenvalues().unwrap()));
    }

    #[test]
    fn staggered_walks_are_unitary(seed in any::<u64>()) {
        let h = bipartite(seed);
        let amps = sample::random_amplitudes(&mut rng(seed ^ 5), &h);
        let sqw = sqw_operators(&h, &amps).unwrap();
        assert_walk(&sqw.walk);
        prop_assert!(sqw.discriminant.matrix().is_hermitian(1e-12));
        prop_assert!(sqw.discriminant.matrix().max_abs_diff(&sqw_two_path_oracle(&h, &amps)) <= 1e-12);
        prop_assert!(in_unit_interval(&sqw.discriminant.eigenvalues().unwrap()));
    }

    #[test]
    fn search_walks_are_unitary(seed in any::<u64>()) {
        let si = search_instance(seed);
        let ops = search_operators(&si).unwrap();
        assert_walk(&ops.walk);
        prop_assert!(ops.discriminant.matrix().max_abs_diff(&search_two_path_oracle(&si)) <= 1e-12);
        prop_assert!(in_unit_interval(&ops.discriminant.eigenvalues().unwrap()));
        // marked-pair coordinates are fixed points of W′
        for &i in &si.marked_pair_edges() {
            for j in 0..ops.walk.dimension() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ops.walk.matrix()[(j, i)] - want).norm() <= 1e-9);
            }
        }
        // P and P′ are row-stochastic
        for p in [&ops.p, &ops.p_prime] {
            for row in 0..p.rows() {
                let s: f64 = p.row(row).iter().map(|z| z.re).sum();
                prop_assert!((s - 1.0).abs() <= 1e-12);
            }
        }
        let gap = spectral_gap(&ops.p_m).unwrap();
        prop_assert!(gap > 0.0 && gap <= 1.0 + 1e-9);
    }

    #[test]
    fn grover_walks_are_unitary(seed in any::<u64>(), n in 2usize..=8, extra in 1usize..6) {
        let g = sample::random_multigraph(&mut rng(seed), n, extra, true);
        assert_walk(&grover_matrix(&g).unwrap());
    }

    #[test]
    fn gram_matrices_are_psd(seed in any::<u64>(), n in 1usize..=12) {
        let m = random_matrix(seed, n);
        let gram = &m.conj_transpose() * &m;
        for x in eig_hermitian(&gram).unwrap().values {
            prop_assert!(x >= -1e-9);
        }
    }

    #[test]
    fn determinant_is_product_of_eigenvalues(seed in any::<u64>(), n in 1usize..=30) {
        let m = random_matrix(seed, n);
        let det = m.determinant().unwrap();
        let prod = eig_general(&m).unwrap().values().iter().fold(C64::new(1.0, 0.0), |acc, z| acc * z);
        prop_assert!((det - prod).norm() <= 1e-6 * det.norm().max(1e-300));
    }

    #[test]
    fn eigenpairs_have_small_residuals(seed in any::<u64>(), n in 1usize..=25) {
        let m = random_matrix(seed, n);
        let eig = eig_general_with_vectors(&m).unwrap();
        let scale = m.frobenius_norm();
        for (j, &lambda) in eig.values.iter().enumerate() {
            let v = eig.vectors.column(j);
            let av = m.mul_vec(&v).unwrap();
            let res = av.iter().zip(&v).map(|(a, x)| (a - lambda * x).norm()).fold(0.0, f64::max);
            prop_assert!(res <= 1e-7 * scale);
        }
    }

    #[test]
    fn unitaries_have_unit_determinant(seed in any::<u64>(), n in 1usize..=20) {
        let q = sample::random_isometry(&mut rng(seed), n, n);
        prop_assert!((q.determinant().unwrap().norm() - 1.0).abs() <= 1e-9);
    }
}
