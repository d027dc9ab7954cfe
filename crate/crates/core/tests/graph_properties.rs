use proptest::prelude::*;
use qwalk::{corpus, sample, uniform_search_weighting, build_search_instance, Multigraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn multigraph(seed: u64, n: usize, extra: usize) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extra = if n == 1 { extra.max(1) } else { extra };
    sample::random_multigraph(&mut rng, n, extra, true)
}

#[test]
fn arc_involution_on_corpus() {
    for (name, g) in corpus::small_connected().into_iter().chain(corpus::regular()) {
        let arcs = g.arcs();
        assert_eq!(arcs.len(), 2 * g.edge_count(), "{name}");
        for (i, a) in arcs.arcs().iter().enumerate() {
            let inv = arcs.get(a.inverse);
            assert_eq!(inv.inverse, i, "{name}");
            assert_eq!((inv.origin, inv.terminus), (a.terminus, a.origin), "{name}");
        }
    }
}

#[test]
fn star_line_graphs_are_complete() {
    for n in 1..=6 {
        let l = corpus::star(n).line_graph();
        // every pair of star edges meets exactly once, at the centre
        let mut want = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                want.push((i, j));
            }
        }
        assert_eq!(l.vertex_count(), n);
        assert_eq!(l.edges(), &want[..]);
    }
    let k3 = corpus::complete(3).line_graph();
    assert_eq!(k3.edge_count(), 3);
    assert_eq!(k3.regular_degree(), Some(2));
}

#[test]
fn k4_adjacency_spectrum() {
    let spec = qwalk::linalg::eig_hermitian(&corpus::complete(4).adjacency_matrix()).unwrap().values;
    for (got, want) in spec.iter().zip([-1.0, -1.0, -1.0, 3.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn random_walk_spectra() {
    use qwalk::linalg::eig_hermitian;
    // symmetrised through D^{1/2} T D^{-1/2}
    let k3 = eig_hermitian(&corpus::complete(3).normalized_adjacency().unwrap()).unwrap().values;
    for (got, want) in k3.iter().zip([-0.5, -0.5, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let c4 = eig_hermitian(&corpus::cycle(4).normalized_adjacency().unwrap()).unwrap().values;
    for (got, k) in c4.iter().zip([2.0, 1.0, 3.0, 0.0]) {
        let want = (2.0 * std::f64::consts::PI * k / 4.0).cos();
        assert!((got - want).abs() < 1e-12, "{c4:?}");
    }
}

#[test]
fn k3_two_marked_has_marked_pair_support() {
    let g = corpus::complete(3);
    let si = build_search_instance(&g, uniform_search_weighting(&g), &[1, 2]).unwrap();
    assert_eq!(si.marked_pair_edges().len(), 2);
    assert_eq!(si.epsilon_prime(), si.edges().len() - 2);
    assert_eq!(si.edges().len(), 2 * si.epsilon() + si.m());
}

proptest! {
    #[test]
    fn duplication_edge_count(seed in any::<u64>(), n in 1usize..=12, extra in 0usize..8) {
        let g = multigraph(seed, n, extra);
        let want: usize = g.edges().iter().map(|(u, v)| if u == v { 1 } else { 2 }).sum();
        let dup = g.duplication();
        prop_assert_eq!(dup.edge_count(), want);
        prop_assert_eq!(dup.graph().vertex_count(), 2 * n);
        for &(u, v) in g.edges() {
            prop_assert!(dup.graph().edges().contains(&(u, n + v)));
            prop_assert!(dup.graph().edges().contains(&(v, n + u)));
        }
    }

    #[test]
    fn random_walk_rows_sum_to_one(seed in any::<u64>(), n in 2usize..=12, extra in 0usize..8) {
        let g = multigraph(seed, n, extra);
        let t = g.random_walk_matrix().unwrap();
        for i in 0..n {
            let s: f64 = t.row(i).iter().map(|z| z.re).sum();
            prop_assert!((s - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn modified_weights_stay_stochastic(seed in any::<u64>(), n in 1usize..=10, extra in 0usize..6, mask in any::<u16>()) {
        let g = multigraph(seed, n, extra);
        let mut marked: Vec<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        if marked.is_empty() {
            marked.push(0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let w = sample::random_weighting(&mut rng, &g.duplication());
        let si = build_search_instance(&g, w, &marked).unwrap();
        let mut sp = vec![0.0; n];
        let mut sq = vec![0.0; n];
        for e in si.edges() {
            sp[e.v] += e.p;
            sq[e.w] += e.q;
        }
        for v in 0..n {
            prop_assert!((sp[v] - 1.0).abs() <= 1e-12);
            prop_assert!((sq[v] - 1.0).abs() <= 1e-12);
        }
        prop_assert_eq!(si.edges().len(), si.duplication().edge_count() + si.m());
        prop_assert_eq!(si.epsilon_prime(), si.edges().len() - si.marked_pair_edges().len());
    }
}
