//! Brute-force reference implementations.
//!
//! Every metric here is computed by enumerating ordered node pairs
//! `(j, k)` and summing the per-pair triplet and triangle terms
//! directly, with no sparse rows, node-sum caches, or shared helpers
//! from the fast paths. The test suite cross-checks the two routes to
//! 1e-12; a disagreement localizes a bug to one side.

use crate::clustering::{IntensityPair, Method};
use crate::closure::{ClosurePattern, ClosureStyle, ClosureVariant};
use crate::directed::Mode;
use crate::error::GraphError;
use crate::weights::NormalizedWeights;

fn hm(a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        0.0
    } else {
        2.0 * a * b / (a + b)
    }
}

/// Undirected clustering intensities of node `i` by pair enumeration.
pub fn clustering_oracle(w: &NormalizedWeights, i: usize, method: Method) -> IntensityPair {
    let n = w.n_nodes();
    let nbrs: Vec<usize> = (0..n).filter(|&j| j != i && w.has_edge(i, j)).collect();
    let mut triangle = 0.0;
    let mut triplet = 0.0;
    for &j in &nbrs {
        for &k in &nbrs {
            if j == k {
                continue;
            }
            let (w_ij, w_ik) = (w.weight(i, j), w.weight(i, k));
            triplet += match method {
                Method::Binary | Method::Onnela => 1.0,
                Method::Barrat => 0.5 * (w_ij + w_ik),
                Method::Zhang => w_ij * w_ik,
                Method::Continuous => (w_ij * w_ik).powf(0.5),
                Method::MiyajimaHm => hm(hm(w_ij, w_ik), 1.0),
            };
            if !w.has_edge(j, k) {
                continue;
            }
            let w_jk = w.weight(j, k);
            triangle += match method {
                Method::Binary => 1.0,
                Method::Barrat => 0.5 * (w_ij + w_ik),
                Method::Onnela => (w_ij * w_ik * w_jk).powf(1.0 / 3.0),
                Method::Zhang => w_ij * w_ik * w_jk,
                Method::Continuous => (w_ij * w_ik * w_jk).powf(2.0 / 3.0),
                Method::MiyajimaHm => hm(hm(w_ij, w_ik), w_jk),
            };
        }
    }
    IntensityPair { triangle, triplet }
}

/// Directed clustering intensities of node `i` by pair enumeration.
/// Uses the consistency-preserving Barrat fan denominator (the library
/// default). Miyajima has no directed form and is rejected.
pub fn directed_oracle(
    w: &NormalizedWeights,
    i: usize,
    method: Method,
    mode: Mode,
) -> Result<IntensityPair, GraphError> {
    if method == Method::MiyajimaHm {
        return Err(GraphError::InvalidParameter(
            "miyajima is only defined for undirected graphs".into(),
        ));
    }
    if let Mode::Total = mode {
        let mut triangle = 0.0;
        let mut triplet = 0.0;
        for m in Mode::PARTIAL {
            let p = directed_oracle(w, i, method, m)?;
            triangle += p.triangle;
            triplet += p.triplet;
        }
        return Ok(IntensityPair { triangle, triplet });
    }

    let n = w.n_nodes();
    let a = |x: usize, y: usize| -> f64 {
        if w.has_edge(x, y) {
            1.0
        } else {
            0.0
        }
    };
    // only onnela, zhang, and continuous reach the generic transform;
    // binary and barrat have dedicated match arms below
    let t = |x: f64| -> f64 {
        match method {
            Method::Onnela => x.powf(1.0 / 3.0),
            Method::Zhang => x,
            Method::Continuous => x.powf(2.0 / 3.0),
            _ => unreachable!(),
        }
    };

    let mut triangle = 0.0;
    let mut triplet = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j == i || k == i || j == k {
                continue;
            }
            let w_ij = w.weight(i, j);
            let w_ji = w.weight(j, i);
            let w_ik = w.weight(i, k);
            let w_ki = w.weight(k, i);
            let w_jk = w.weight(j, k);
            let w_kj = w.weight(k, j);

            triplet += match (method, mode) {
                (Method::Binary | Method::Onnela, Mode::Cycle | Mode::Middleman) => {
                    a(i, j) * a(k, i)
                }
                (Method::Binary | Method::Onnela, Mode::FanIn) => a(j, i) * a(k, i),
                (Method::Binary | Method::Onnela, Mode::FanOut) => a(i, j) * a(i, k),
                (Method::Barrat, Mode::Cycle | Mode::Middleman) => {
                    0.5 * (w_ij * a(k, i) + w_ki * a(i, j))
                }
                (Method::Barrat, Mode::FanIn) => 0.5 * (w_ji * a(k, i) + a(j, i) * w_ki),
                (Method::Barrat, Mode::FanOut) => 0.5 * (w_ij * a(i, k) + a(i, j) * w_ik),
                (Method::Zhang, Mode::Cycle | Mode::Middleman) => w_ij * w_ki,
                (Method::Zhang, Mode::FanIn) => w_ji * w_ki,
                (Method::Zhang, Mode::FanOut) => w_ij * w_ik,
                (Method::Continuous, Mode::Cycle | Mode::Middleman) => (w_ij * w_ki).powf(0.5),
                (Method::Continuous, Mode::FanIn) => (w_ji * w_ki).powf(0.5),
                (Method::Continuous, Mode::FanOut) => (w_ij * w_ik).powf(0.5),
                _ => unreachable!(),
            };

            triangle += match (method, mode) {
                (Method::Binary, Mode::Cycle) => a(i, j) * a(j, k) * a(k, i),
                (Method::Binary, Mode::Middleman) => a(i, j) * a(k, j) * a(k, i),
                (Method::Binary, Mode::FanIn) => a(j, i) * a(j, k) * a(k, i),
                (Method::Binary, Mode::FanOut) => a(i, j) * a(j, k) * a(i, k),
                (Method::Barrat, Mode::Cycle) => {
                    0.5 * (w_ij * a(j, k) * a(k, i) + a(i, j) * a(j, k) * w_ki)
                }
                (Method::Barrat, Mode::Middleman) => {
                    0.5 * (w_ij * a(k, j) * a(k, i) + w_ji * a(j, k) * a(i, k))
                }
                (Method::Barrat, Mode::FanIn) => 0.5 * w_ji * (a(j, k) + a(k, j)) * a(k, i),
                (Method::Barrat, Mode::FanOut) => 0.5 * w_ij * (a(j, k) + a(k, j)) * a(i, k),
                (_, Mode::Cycle) => t(w_ij) * t(w_jk) * t(w_ki) * a(i, j) * a(j, k) * a(k, i),
                (_, Mode::Middleman) => t(w_ij) * t(w_kj) * t(w_ki) * a(i, j) * a(k, j) * a(k, i),
                (_, Mode::FanIn) => t(w_ji) * t(w_jk) * t(w_ki) * a(j, i) * a(j, k) * a(k, i),
                (_, Mode::FanOut) => t(w_ij) * t(w_jk) * t(w_ik) * a(i, j) * a(j, k) * a(i, k),
                (_, Mode::Total) => unreachable!(),
            };
        }
    }
    Ok(IntensityPair { triangle, triplet })
}

/// Closure numerator and denominator of node `i` by pair enumeration.
/// Returns `(closed, open)` walk intensities; the coefficient is their
/// ratio when the denominator is positive.
pub fn closure_oracle(w: &NormalizedWeights, i: usize, variant: ClosureVariant) -> (f64, f64) {
    let n = w.n_nodes();
    let f = |x: f64| -> f64 {
        match variant.style {
            ClosureStyle::ZhangStyle => x,
            ClosureStyle::Continuous => x.powf(2.0 / 3.0),
        }
    };
    let g = |x: f64| -> f64 {
        match variant.style {
            ClosureStyle::ZhangStyle => x,
            ClosureStyle::Continuous => x.powf(0.5),
        }
    };
    let incoming = matches!(
        variant.pattern,
        ClosurePattern::CycleIn | ClosurePattern::FanIn
    );
    let fan = matches!(
        variant.pattern,
        ClosurePattern::FanOut | ClosurePattern::FanIn
    );
    let mut closed = 0.0;
    let mut open = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j == i || k == i || j == k {
                continue;
            }
            // the length-2 walk from the anchor through j to k,
            // reversed for the incoming patterns
            let walk = if incoming {
                w.weight(k, j) * w.weight(j, i)
            } else {
                w.weight(i, j) * w.weight(j, k)
            };
            open += g(walk);
            // on the working orientation the fan patterns close with
            // (anchor, k), the cycle patterns with (k, anchor)
            let closing = match (incoming, fan) {
                (false, false) => w.weight(k, i),
                (false, true) => w.weight(i, k),
                (true, false) => w.weight(i, k),
                (true, true) => w.weight(k, i),
            };
            closed += f(walk * closing);
        }
    }
    (closed, open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::closure;
    use crate::clustering::local_intensities;
    use crate::directed::directed_intensities;
    use crate::graph::{BuildOptions, WeightedDigraph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_graph(seed: u64, n: usize, density: f64, directed: bool) -> NormalizedWeights {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || (!directed && j < i) {
                    continue;
                }
                if rng.gen_bool(density) {
                    edges.push((i, j, rng.gen_range(0.0..2.0)));
                }
            }
        }
        edges.push((0, 1 % n.max(2), 1.0)); // ensure a positive max
        WeightedDigraph::from_records(
            n,
            edges
                .into_iter()
                .map(|(s, t, w)| crate::graph::EdgeRecord::new(s, t, w))
                .collect(),
            &[],
            None,
            directed,
            BuildOptions {
                duplicates: crate::graph::DuplicatePolicy::KeepFirst,
                ..Default::default()
            },
        )
        .unwrap()
        .normalize()
        .unwrap()
    }

    #[test]
    fn undirected_oracle_matches_fast_path() {
        for seed in 0..5u64 {
            let w = random_graph(seed, 14, 0.3, false);
            for i in 0..w.n_nodes() {
                for m in Method::ALL {
                    let fast = local_intensities(&w, i, m);
                    let slow = clustering_oracle(&w, i, m);
                    assert!(
                        (fast.triplet - slow.triplet).abs() < 1e-12,
                        "{m:?} triplet node {i} seed {seed}"
                    );
                    if fast.triplet > 0.0 {
                        assert!(
                            (fast.triangle - slow.triangle).abs() < 1e-12,
                            "{m:?} triangle node {i} seed {seed}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn directed_oracle_matches_fast_path() {
        for seed in 0..5u64 {
            let w = random_graph(seed, 12, 0.3, true);
            for i in 0..w.n_nodes() {
                for mode in Mode::ALL {
                    for m in [
                        Method::Binary,
                        Method::Barrat,
                        Method::Onnela,
                        Method::Zhang,
                        Method::Continuous,
                    ] {
                        let fast = directed_intensities(&w, i, m, mode).unwrap();
                        let slow = directed_oracle(&w, i, m, mode).unwrap();
                        assert!(
                            (fast.triplet - slow.triplet).abs() < 1e-12
                                && (fast.triangle - slow.triangle).abs() < 1e-12,
                            "{m:?} {mode:?} node {i} seed {seed}: fast {fast:?} slow {slow:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closure_oracle_matches_fast_path() {
        for seed in 0..5u64 {
            for directed in [false, true] {
                let w = random_graph(seed + 100, 12, 0.3, directed);
                for i in 0..w.n_nodes() {
                    for style in [ClosureStyle::ZhangStyle, ClosureStyle::Continuous] {
                        for pattern in ClosurePattern::ALL {
                            if (pattern == ClosurePattern::Undirected) == directed {
                                continue;
                            }
                            let v = ClosureVariant { style, pattern };
                            let fast = closure(&w, i, v).unwrap();
                            let (num, den) = closure_oracle(&w, i, v);
                            match fast {
                                None => assert!(
                                    den.abs() < 1e-12,
                                    "{style:?} {pattern:?} node {i}: undefined but den {den}"
                                ),
                                Some(h) => assert!(
                                    (h - num / den).abs() < 1e-12,
                                    "{style:?} {pattern:?} node {i}: {h} vs {}",
                                    num / den
                                ),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn directed_oracle_rejects_miyajima() {
        let w = random_graph(1, 5, 0.5, true);
        assert!(directed_oracle(&w, 0, Method::MiyajimaHm, Mode::Cycle).is_err());
    }
}
