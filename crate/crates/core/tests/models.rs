use std::collections::HashMap;

use num_rational::Rational64;
use proptest::prelude::*;

use linerig::events::{event_d_census, event_d_check, subset_stats};
use linerig::graphcore::{kernel_decompose, prune_to_subcubic, Multigraph};
use linerig::io::{graph_from_str, graph_to_string, model_l_from_str, model_l_to_string, StoredModelL};
use linerig::par::Execution;
use linerig::randmodels::{
    count_multigraphs, enumerate_multigraphs, gm_estimate, rng_from_seed, sample_model_l, sample_pairing, subdivide,
    KernelLaw, ModelParams,
};

/// Pairing draws on `(2, 2, 2)`: each of the 4 multigraphs has a known
/// number of the 15 perfect matchings behind it.
#[test]
fn pairing_frequencies_follow_matching_counts() {
    let all = enumerate_multigraphs(&[2, 2, 2], 24).unwrap();
    let weights: HashMap<Vec<(usize, usize)>, f64> = all
        .iter()
        .map(|g| {
            let mut e = g.edges().to_vec();
            e.sort_unstable();
            let loops = g.loop_count();
            let w = match loops {
                3 => 1.0,     // three loops
                1 => 2.0,     // one loop plus a double edge
                0 => 8.0,     // triangle
                _ => unreachable!(),
            };
            (e, w / 15.0)
        })
        .collect();
    assert!((weights.values().sum::<f64>() - 1.0).abs() < 1e-12);
    let draws = 60_000;
    let mut seen: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    let mut rng = rng_from_seed(42);
    for _ in 0..draws {
        let g = sample_pairing(&[2, 2, 2], &mut rng).unwrap();
        let mut e = g.edges().to_vec();
        e.sort_unstable();
        *seen.entry(e).or_default() += 1;
    }
    for (e, p) in &weights {
        let got = *seen.get(e).unwrap_or(&0) as f64;
        let sd = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((got - draws as f64 * p).abs() < 5.0 * sd, "{e:?}: {got} vs {}", draws as f64 * p);
    }
    assert_eq!(seen.len(), weights.len());
}

#[test]
fn estimate_tracks_exact_count_on_cubic_sequences() {
    // relative error shrinks as the sequence grows
    let err = |k: usize| {
        let d = vec![3; k];
        (gm_estimate(&d) / count_multigraphs(&d) as f64 - 1.0).abs()
    };
    let errs: Vec<f64> = (2..=7).map(|h| err(2 * h)).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[5] < 0.06);
}

#[test]
fn pruned_kernels_are_cubic() {
    let p = ModelParams::new(3000, Rational64::from_integer(3), 1).unwrap();
    let mut rng = rng_from_seed(1);
    for _ in 0..10 {
        let out = sample_model_l(&p, KernelLaw::Pairing, &mut rng).unwrap();
        let s = out.sample().unwrap();
        if let Some(d) = prune_to_subcubic(&s.decomposition).unwrap().decomposition() {
            assert!(d.kernel().degrees().iter().all(|&x| x == 3));
            d.check_invariants().unwrap();
            assert!(d.kernel().vertex_count() <= s.kernel.vertex_count());
        }
    }
}

#[test]
fn census_agrees_with_single_checks() {
    // lambda near 1 keeps kernels small enough for exhaustive checks
    let p = ModelParams::new(60, Rational64::new(3, 2), 2).unwrap();
    let mut rng = rng_from_seed(2);
    let mut done = 0;
    while done < 5 {
        let out = sample_model_l(&p, KernelLaw::Pairing, &mut rng).unwrap();
        let Some(s) = out.sample() else { continue };
        let d = &s.decomposition;
        let k = d.kernel().vertex_count();
        if k > 18 {
            continue;
        }
        done += 1;
        for beta in [Rational64::new(1, 4), Rational64::new(1, 2)] {
            let census = event_d_census(d, beta, 60, k, Execution::Parallel).unwrap();
            assert!(!census.any_truncated);
            for v in 0..k {
                let single = event_d_check(d, v, beta, 60, k).unwrap();
                assert_eq!(census.holding.contains(&v), single.holds, "v={v} beta={beta}");
            }
        }
    }
}

fn kernel_with_lengths() -> impl Strategy<Value = (Multigraph, Vec<usize>)> {
    (1usize..6)
        .prop_flat_map(|k| proptest::collection::vec(3usize..6, k))
        .prop_filter("even degree sum", |d| d.iter().sum::<usize>() % 2 == 0)
        .prop_flat_map(|d| (Just(d), any::<u64>()))
        .prop_flat_map(|(d, seed)| {
            let g = sample_pairing(&d, &mut rng_from_seed(seed)).unwrap();
            let m = g.edge_count();
            (Just(g), proptest::collection::vec(1usize..5, m))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subdivision_decomposes_back((kernel, lengths) in kernel_with_lengths()) {
        let (core, built) = subdivide(&kernel, &lengths).unwrap();
        built.check_invariants().unwrap();
        if core.is_connected() {
            let again = kernel_decompose(&core).unwrap();
            again.check_invariants().unwrap();
            let profile = |d: &linerig::graphcore::KernelDecomposition| {
                let mut v: Vec<_> = d.kernel().edges().iter().enumerate()
                    .map(|(e, &(a, b))| (a.min(b), a.max(b), d.path_length(e))).collect();
                v.sort_unstable();
                v
            };
            prop_assert_eq!(profile(&again), profile(&built));
        }
    }

    #[test]
    fn subset_stats_are_monotone((kernel, lengths) in kernel_with_lengths(), a in any::<u8>(), b in any::<u8>()) {
        let (_, d) = subdivide(&kernel, &lengths).unwrap();
        let k = kernel.vertex_count();
        let small: Vec<usize> = (0..k).filter(|&v| (a & b) >> v & 1 == 1).collect();
        let big: Vec<usize> = (0..k).filter(|&v| a >> v & 1 == 1).collect();
        let (s, t) = (subset_stats(&d, &small).unwrap(), subset_stats(&d, &big).unwrap());
        prop_assert!(s.big_d <= t.big_d && s.big_e <= t.big_e);
        prop_assert!(t.big_e >= t.big_d);
    }

    #[test]
    fn json_round_trips((kernel, lengths) in kernel_with_lengths()) {
        prop_assert_eq!(graph_from_str(&graph_to_string(&kernel)).unwrap(), kernel.clone());
        let (core, _) = subdivide(&kernel, &lengths).unwrap();
        let mut degseq = kernel.degrees().to_vec();
        degseq.extend([0, 0]);
        let stored = StoredModelL { degseq, kernel, path_lengths: lengths, core };
        prop_assert_eq!(model_l_from_str(&model_l_to_string(&stored)).unwrap(), stored);
    }
}
