//! End-to-end acceptance checks for the library. Each test covers one
//! numbered criterion and prints a single pass line on success (visible
//! with `cargo test -- --nocapture`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use wclust::closure::{closure, ClosurePattern, ClosureStyle, ClosureVariant};
use wclust::clustering::{local_clustering, local_intensities, Method};
use wclust::directed::{directed_clustering, directed_intensities, Mode};
use wclust::generators::{apply_weight_law, gen_core_periphery, gen_watts_strogatz_directed, WeightLaw};
use wclust::graph::BuildOptions;
use wclust::oracle::{closure_oracle, clustering_oracle, directed_oracle};
use wclust::perturb::{perturb_epsilon, shuffle_weights, ShuffleScope};
use wclust::weights::NormalizedWeights;
use wclust::WeightedDigraph;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn random_graph(seed: u64, directed: bool) -> WeightedDigraph {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = rng.gen_range(8..=60);
    let p = rng.gen_range(0.1..0.4);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || (!directed && j < i) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((i, j, rng.gen_range(1e-6..1.0)));
            }
        }
    }
    WeightedDigraph::from_edges(edges, directed, BuildOptions::default()).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = std::time::Instant::now();
    let tol = 1e-12;
    for seed in 0..30u64 {
        let g = random_graph(seed, false);
        let w = g.normalize().unwrap();
        for i in 0..g.n_nodes() {
            for method in Method::ALL {
                let fast = local_intensities(&w, i, method);
                let oracle = clustering_oracle(&w, i, method);
                assert!(
                    close(fast.triangle, oracle.triangle, tol)
                        && close(fast.triplet, oracle.triplet, tol),
                    "seed {seed} node {i} {method:?}: {fast:?} vs {oracle:?}"
                );
            }
            for style in [ClosureStyle::ZhangStyle, ClosureStyle::Continuous] {
                let v = ClosureVariant {
                    style,
                    pattern: ClosurePattern::Undirected,
                };
                let fast = closure(&w, i, v).unwrap();
                let (c, o) = closure_oracle(&w, i, v);
                let expected = if o > 0.0 { Some(c / o) } else { None };
                match (fast, expected) {
                    (Some(a), Some(b)) => assert!(close(a, b, tol), "closure {style:?}"),
                    (a, b) => assert_eq!(a, b, "closure definedness {style:?} node {i}"),
                }
            }
        }
    }
    for seed in 100..130u64 {
        let g = random_graph(seed, true);
        let w = g.normalize().unwrap();
        let methods = [
            Method::Binary,
            Method::Barrat,
            Method::Onnela,
            Method::Zhang,
            Method::Continuous,
        ];
        for i in 0..g.n_nodes() {
            for method in methods {
                for mode in Mode::ALL {
                    let fast = directed_intensities(&w, i, method, mode).unwrap();
                    let oracle = directed_oracle(&w, i, method, mode).unwrap();
                    assert!(
                        close(fast.triangle, oracle.triangle, tol)
                            && close(fast.triplet, oracle.triplet, tol),
                        "seed {seed} node {i} {method:?} {mode:?}: {fast:?} vs {oracle:?}"
                    );
                }
            }
            for style in [ClosureStyle::ZhangStyle, ClosureStyle::Continuous] {
                for pattern in ClosurePattern::ALL {
                    if pattern == ClosurePattern::Undirected {
                        continue;
                    }
                    let v = ClosureVariant { style, pattern };
                    let fast = closure(&w, i, v).unwrap();
                    let (c, o) = closure_oracle(&w, i, v);
                    let expected = if o > 0.0 { Some(c / o) } else { None };
                    match (fast, expected) {
                        (Some(a), Some(b)) => {
                            assert!(close(a, b, tol), "closure {style:?} {pattern:?}")
                        }
                        (a, b) => assert_eq!(a, b, "closure definedness {style:?} {pattern:?}"),
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60 s");
    println!("acceptance 1 (oracle equivalence, 60 graphs): pass");
}

fn unit_weight_graph(seed: u64, directed: bool) -> WeightedDigraph {
    let g = random_graph(seed, directed);
    let edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (e.source as usize, e.target as usize, 1.0))
        .collect();
    WeightedDigraph::from_edges(edges, directed, BuildOptions::default()).unwrap()
}

#[test]
fn criterion_2_binary_consistency() {
    let tol = 1e-12;
    for seed in 0..10u64 {
        let g = unit_weight_graph(seed, false);
        let w = g.normalize().unwrap();
        for i in 0..g.n_nodes() {
            let reference = local_clustering(&w, i, Method::Binary);
            for method in Method::ALL {
                let v = local_clustering(&w, i, method);
                match (v, reference) {
                    (Some(a), Some(b)) => assert!(close(a, b, tol), "{method:?} node {i}"),
                    (a, b) => assert_eq!(a, b, "{method:?} definedness node {i}"),
                }
            }
            let zs = closure(
                &w,
                i,
                ClosureVariant {
                    style: ClosureStyle::ZhangStyle,
                    pattern: ClosurePattern::Undirected,
                },
            )
            .unwrap();
            let co = closure(
                &w,
                i,
                ClosureVariant {
                    style: ClosureStyle::Continuous,
                    pattern: ClosurePattern::Undirected,
                },
            )
            .unwrap();
            match (zs, co) {
                (Some(a), Some(b)) => assert!(close(a, b, tol), "closure styles node {i}"),
                (a, b) => assert_eq!(a, b, "closure definedness node {i}"),
            }
        }
        let g = unit_weight_graph(seed + 50, true);
        let w = g.normalize().unwrap();
        let methods = [
            Method::Barrat,
            Method::Onnela,
            Method::Zhang,
            Method::Continuous,
        ];
        for i in 0..g.n_nodes() {
            for mode in Mode::ALL {
                let reference = directed_clustering(&w, i, Method::Binary, mode).unwrap();
                for method in methods {
                    let v = directed_clustering(&w, i, method, mode).unwrap();
                    match (v, reference) {
                        (Some(a), Some(b)) => {
                            assert!(close(a, b, tol), "{method:?} {mode:?} node {i}")
                        }
                        (a, b) => assert_eq!(a, b, "{method:?} {mode:?} definedness node {i}"),
                    }
                }
            }
        }
    }
    println!("acceptance 2 (binary consistency at unit weights): pass");
}

#[test]
fn criterion_3_corner_case_limits() {
    let eps = 1e-9;
    let g = WeightedDigraph::from_edges(
        [(0, 1, 1.0), (0, 2, 1.0), (1, 2, eps)],
        false,
        BuildOptions::default(),
    )
    .unwrap();
    let w = NormalizedWeights::from_graph_raw(&g).unwrap();
    let zhang = local_clustering(&w, 0, Method::Zhang).unwrap();
    assert!((zhang - eps).abs() < 1e-12, "zhang: {zhang}");
    let continuous = local_clustering(&w, 0, Method::Continuous).unwrap();
    assert!(continuous <= 2e-6, "continuous: {continuous}");
    let onnela = local_clustering(&w, 0, Method::Onnela).unwrap();
    assert!((onnela - eps.cbrt()).abs() < 1e-9, "onnela: {onnela}");
    let barrat = local_clustering(&w, 0, Method::Barrat).unwrap();
    assert_eq!(barrat, 1.0, "barrat: {barrat}");
    println!("acceptance 3 (corner-case limits at eps = 1e-9): pass");
}

/// Least-squares slope of ln(y) against ln(x).
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

#[test]
fn criterion_4_continuity_exponents() {
    let base = gen_watts_strogatz_directed(200, 10, 0.1, 1.0, 11).unwrap();
    let g = apply_weight_law(&base, WeightLaw::Uniform(0.2, 1.0), 11).to_undirected();

    // pick a node pair (i, v) that is non-adjacent and shares no
    // neighbor, so the new edge closes no triangle
    let mut pick = None;
    'outer: for i in 0..g.n_nodes() {
        for v in 0..g.n_nodes() {
            if v == i || g.has_edge(i, v) {
                continue;
            }
            let shares = (0..g.n_nodes()).any(|u| g.has_edge(i, u) && g.has_edge(v, u));
            if !shares {
                pick = Some((i, v));
                break 'outer;
            }
        }
    }
    let (i, v) = pick.expect("no isolated pair found");
    let w0 = g.normalize().unwrap();
    let d = w0.stats(i).d_out as f64;

    let mut deltas: Vec<(Method, Vec<(f64, f64)>)> =
        vec![(Method::Continuous, Vec::new()), (Method::Zhang, Vec::new())];
    for exp in 2..=8 {
        let eps = 10f64.powi(-exp);
        let p = perturb_epsilon(&g, i, v, eps).unwrap();
        let wp = p.normalize().unwrap();
        for (method, points) in deltas.iter_mut() {
            let c0 = local_clustering(&w0, i, *method).unwrap();
            let c1 = local_clustering(&wp, i, *method).unwrap();
            points.push((eps, (c1 - c0).abs()));
        }
    }
    for (method, points) in &deltas {
        let slope = loglog_slope(points);
        let expected = if *method == Method::Continuous { 0.5 } else { 1.0 };
        assert!(
            (slope - expected).abs() < 0.1,
            "{method:?}: slope {slope}, expected {expected}"
        );
    }

    let p = perturb_epsilon(&g, i, v, 1e-10).unwrap();
    let wp = p.normalize().unwrap();
    let c_on = local_clustering(&w0, i, Method::Onnela).unwrap();
    let c_on_p = local_clustering(&wp, i, Method::Onnela).unwrap();
    assert!(
        (c_on_p - (d - 1.0) / (d + 1.0) * c_on).abs() < 1e-6,
        "onnela limit: {c_on_p} vs {}",
        (d - 1.0) / (d + 1.0) * c_on
    );
    let c_ba = local_clustering(&w0, i, Method::Barrat).unwrap();
    let c_ba_p = local_clustering(&wp, i, Method::Barrat).unwrap();
    assert!(
        (c_ba_p - (d - 1.0) / d * c_ba).abs() < 1e-6,
        "barrat limit: {c_ba_p} vs {}",
        (d - 1.0) / d * c_ba
    );
    println!("acceptance 4 (continuity exponents and hybrid jump limits): pass");
}

#[test]
fn criterion_5_local_linearity() {
    let base = gen_watts_strogatz_directed(60, 6, 0.2, 1.0, 4).unwrap();
    let g = apply_weight_law(&base, WeightLaw::Uniform(0.1, 1.0), 4).to_undirected();
    let w = NormalizedWeights::from_graph_raw(&g).unwrap();
    for alpha in [0.1, 0.5] {
        for i in 0..g.n_nodes() {
            // scale edges incident to i and edges between neighbors of i
            let nbr: Vec<bool> = (0..g.n_nodes()).map(|u| g.has_edge(i, u)).collect();
            let edges: Vec<_> = g
                .edges()
                .iter()
                .map(|e| {
                    let (s, t) = (e.source as usize, e.target as usize);
                    let local = s == i || t == i || (nbr[s] && nbr[t]);
                    (s, t, if local { alpha * e.weight } else { e.weight })
                })
                .collect();
            let scaled =
                WeightedDigraph::from_edges(edges, false, BuildOptions::default()).unwrap();
            let ws = NormalizedWeights::from_graph_raw(&scaled).unwrap();
            for method in [Method::Onnela, Method::Zhang, Method::Continuous] {
                let c0 = local_clustering(&w, i, method);
                let c1 = local_clustering(&ws, i, method);
                match (c0, c1) {
                    (Some(a), Some(b)) => assert!(
                        close(alpha * a, b, 1e-12),
                        "{method:?} node {i} alpha {alpha}: {b} vs {}",
                        alpha * a
                    ),
                    (a, b) => assert_eq!(a.is_some(), b.is_some(), "{method:?} node {i}"),
                }
            }
        }
    }
    println!("acceptance 5 (local linearity under alpha scaling): pass");
}

fn quartiles(values: &mut Vec<f64>) -> (f64, f64, f64) {
    values.sort_by(f64::total_cmp);
    let q = |f: f64| {
        let pos = f * (values.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        values[lo] + (pos - lo as f64) * (values[hi] - values[lo])
    };
    (q(0.25), q(0.5), q(0.75))
}

#[test]
fn criterion_7_core_periphery_separation() {
    let mut groups: std::collections::BTreeMap<(Method, &str), Vec<f64>> = Default::default();
    let methods = [Method::Continuous, Method::Barrat, Method::Zhang];
    for seed in 0..10u64 {
        let g = gen_core_periphery(seed);
        let w = g.normalize().unwrap();
        for i in 0..g.n_nodes() {
            let label = g.node_label(i);
            let role = if label.starts_with("ccn") {
                "ccn"
            } else if label.starts_with("ocn") {
                "ocn"
            } else {
                "pn"
            };
            for method in methods {
                if let Some(c) = directed_clustering(&w, i, method, Mode::FanIn).unwrap() {
                    groups.entry((method, role)).or_default().push(c);
                }
            }
        }
    }
    let mut stats = |m: Method, r: &'static str| quartiles(groups.get_mut(&(m, r)).unwrap());
    let (_, med_ccn, _) = stats(Method::Continuous, "ccn");
    let (ocn_q1, med_ocn, _) = stats(Method::Continuous, "ocn");
    let (_, med_pn, pn_q3) = stats(Method::Continuous, "pn");
    assert!(
        med_ccn > med_ocn && med_ocn > med_pn,
        "continuous medians: {med_ccn} {med_ocn} {med_pn}"
    );
    assert!(
        ocn_q1 > pn_q3,
        "continuous OCN/PN IQRs overlap: q1 {ocn_q1} <= q3 {pn_q3}"
    );
    for method in [Method::Barrat, Method::Zhang] {
        let (ocn_q1, _, ocn_q3) = stats(method, "ocn");
        let (pn_q1, _, pn_q3) = stats(method, "pn");
        assert!(
            ocn_q1 <= pn_q3 && pn_q1 <= ocn_q3,
            "{method:?} OCN/PN IQRs unexpectedly disjoint"
        );
    }
    println!("acceptance 7 (core-periphery separation, 10 seeds): pass");
}

#[test]
fn criterion_8_null_model_invariants() {
    for seed in 0..10u64 {
        let base = gen_watts_strogatz_directed(50, 6, 0.2, 0.5, seed).unwrap();
        let g = apply_weight_law(&base, WeightLaw::Exponential(2.0), seed);

        let global = shuffle_weights(&g, ShuffleScope::Global, seed + 1);
        let mut orig: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
        let mut shuf: Vec<f64> = global.edges().iter().map(|e| e.weight).collect();
        orig.sort_by(f64::total_cmp);
        shuf.sort_by(f64::total_cmp);
        assert_eq!(orig, shuf, "global shuffle changed the weight multiset");

        let per_node = shuffle_weights(&g, ShuffleScope::PerNodeOut, seed + 1);
        for i in 0..g.n_nodes() {
            let mut a: Vec<f64> = g
                .edges()
                .iter()
                .filter(|e| e.source as usize == i)
                .map(|e| e.weight)
                .collect();
            let mut b: Vec<f64> = per_node
                .edges()
                .iter()
                .filter(|e| e.source as usize == i)
                .map(|e| e.weight)
                .collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            assert_eq!(a, b, "per-node-out shuffle changed node {i}'s weights");
        }
    }
    println!("acceptance 8 (null-model invariants): pass");
}

#[test]
fn criterion_9_generator_counts() {
    let ws = gen_watts_strogatz_directed(100, 20, 0.0, 1.0, 0).unwrap();
    assert_eq!(ws.n_edges(), 2000, "WS(100, 20, r=1, p=0) edge count");

    let cp = gen_core_periphery(0);
    assert_eq!(cp.n_nodes(), 31, "core-periphery node count");
    let mut ccn = 0;
    let mut ocn = 0;
    let mut pn = 0;
    for i in 0..cp.n_nodes() {
        let label = cp.node_label(i);
        if label.starts_with("ccn") {
            ccn += 1;
        } else if label.starts_with("ocn") {
            ocn += 1;
        } else if label.starts_with("pn") {
            pn += 1;
        }
    }
    assert_eq!((ccn, ocn, pn), (1, 10, 20), "core-periphery role counts");
    println!("acceptance 9 (generator counts): pass");
}
