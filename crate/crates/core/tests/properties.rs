use eh_certify::algorithms::{junior_search, path_grow, LevelParams, PathGrowResult};
use eh_certify::graph::{equipartition, make_caterpillar};
use eh_certify::oracle::verify_certificate;
use eh_certify::pipeline::{dichotomy, DichotomyOptions, PipelineError};
use eh_certify::rational;
use eh_certify::{CaterpillarShape, Graph};
use proptest::prelude::*;
use std::sync::Arc;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap_or(false) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn shape() -> impl Strategy<Value = CaterpillarShape> {
    (1usize..=3, 1usize..=2, 1usize..=2).prop_map(|(h, d, t)| CaterpillarShape::new(h, d, t).unwrap())
}

// A cycle with chords between vertices at distance two, capped at degree Δ.
fn chorded_cycle(n: usize, chords: &[bool], delta: usize) -> Graph {
    let mut deg = vec![2usize; n];
    let mut edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    for (v, &c) in chords.iter().enumerate().take(n) {
        let u = (v + 2) % n;
        if c && deg[v] < delta && deg[u] < delta && !edges.contains(&(u, v)) {
            edges.push((v, u));
            deg[v] += 1;
            deg[u] += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_emitted_certificate_verifies(g in graph(11), sh in shape(), seed in any::<u64>()) {
        let t = make_caterpillar(sh).unwrap().graph;
        match dichotomy(&g, &t, &DichotomyOptions { seed, ..DichotomyOptions::default() }) {
            Ok(run) => {
                prop_assert!(run.report.verified);
                prop_assert!(verify_certificate(&g, &run.certificate).unwrap().is_valid());
            }
            Err(PipelineError::Diagnostic { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn complemented_certificate_verifies_on_complement(g in graph(11), sh in shape()) {
        let t = make_caterpillar(sh).unwrap().graph;
        if let Ok(run) = dichotomy(&g, &t, &DichotomyOptions::default()) {
            let swapped = run.certificate.complemented();
            prop_assert!(verify_certificate(&g.complement(), &swapped).unwrap().is_valid());
        }
    }

    #[test]
    fn path_grow_contract(n in 20usize..80, chords in proptest::collection::vec(any::<bool>(), 80), t in 1usize..5, root in 0usize..80) {
        let delta = 3;
        prop_assume!(n > (t + 2) * delta);
        let g = chorded_cycle(n, &chords, delta);
        let v = root % n;
        match path_grow(&g, v, t, delta).unwrap() {
            PathGrowResult::Path(p) => {
                prop_assert_eq!(p.len(), t);
                prop_assert_eq!(p[0], v);
                for a in 0..t {
                    for b in a + 1..t {
                        prop_assert_eq!(g.has_edge(p[a], p[b]), b == a + 1);
                    }
                }
            }
            PathGrowResult::Pair(a, b) => {
                prop_assert!(a.len() >= delta && b.len() >= delta);
                prop_assert!(g.anti_adjacent(&a, &b));
            }
        }
    }
}

#[test]
fn junior_search_states_hold_on_random_dense_graphs() {
    use rand::{Rng, SeedableRng};
    for seed in 0..20u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 90;
        let edges: Vec<_> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.5)).collect();
        let g = Arc::new(Graph::from_edges(n, &edges).unwrap());
        let cg = equipartition(g, 3, seed).unwrap();
        let levels = [LevelParams { classes: 3, alpha: rational::ratio(1, 270) }];
        let mut seen = 0;
        let _ = junior_search(&cg, 1, 0, &levels, &mut |level_cg, s| {
            s.check(level_cg).unwrap();
            seen += 1;
        });
        assert!(seen >= 1);
    }
}

#[test]
fn planted_path_survives_relabelling() {
    let shape = CaterpillarShape::new(1, 1, 3).unwrap();
    let t = make_caterpillar(shape).unwrap().graph;
    for n in 8..30 {
        let run = dichotomy(&Graph::cycle(n), &t, &DichotomyOptions::default()).unwrap();
        assert!(run.report.verified);
    }
}
