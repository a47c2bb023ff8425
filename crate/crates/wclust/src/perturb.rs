//! Null models and perturbations: weight shuffles, noise overlays, and
//! the epsilon-edge harness.

use rand::seq::SliceRandom;

use crate::error::GraphError;
use crate::generators::{phase_rng, RngPhase, WeightLaw};
use crate::graph::{BuildOptions, EdgeRecord, WeightedDigraph};

/// Scope of a weight-shuffle null model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShuffleScope {
    /// Permute all weights across the whole edge set.
    Global,
    /// Permute weights only among edges sharing a source node, which
    /// preserves every out-strength (intended for directed graphs).
    PerNodeOut,
}

impl ShuffleScope {
    pub fn name(self) -> &'static str {
        match self {
            ShuffleScope::Global => "global",
            ShuffleScope::PerNodeOut => "per-node-out",
        }
    }

    pub fn parse(s: &str) -> Option<ShuffleScope> {
        match s {
            "global" => Some(ShuffleScope::Global),
            "per-node-out" | "per_node_out" => Some(ShuffleScope::PerNodeOut),
            _ => None,
        }
    }
}

/// Permute edge weights while keeping the topology fixed. Degrees are
/// always preserved; total strength is preserved globally, and
/// per-node out-strengths additionally under [`ShuffleScope::PerNodeOut`].
pub fn shuffle_weights(g: &WeightedDigraph, scope: ShuffleScope, seed: u64) -> WeightedDigraph {
    let mut rng = phase_rng(seed, RngPhase::Shuffle);
    let mut weights: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
    match scope {
        ShuffleScope::Global => weights.shuffle(&mut rng),
        ShuffleScope::PerNodeOut => {
            let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); g.n_nodes()];
            for (idx, e) in g.edges().iter().enumerate() {
                by_source[e.source as usize].push(idx);
            }
            for group in by_source {
                let mut ws: Vec<f64> = group.iter().map(|&i| weights[i]).collect();
                ws.shuffle(&mut rng);
                for (&i, w) in group.iter().zip(ws) {
                    weights[i] = w;
                }
            }
        }
    }
    let records: Vec<EdgeRecord> = g
        .edges()
        .iter()
        .zip(&weights)
        .map(|(e, &w)| EdgeRecord::new(e.source as usize, e.target as usize, w))
        .collect();
    WeightedDigraph::from_records(
        g.n_nodes(),
        records,
        &[],
        g.node_names().map(|n| n.to_vec()),
        g.directed(),
        BuildOptions::default(),
    )
    .expect("shuffling weights preserves validity")
}

/// Overlay spurious edges from a noise topology on a ground-truth
/// graph. Both graphs must share the node set and orientation. The
/// result carries a `spurious` attribute (0 for ground-truth edges,
/// 1 for overlay edges); on collisions the ground-truth edge wins.
/// Noise weights are drawn from `law` in noise edge order.
pub fn overlay_noise(
    gt: &WeightedDigraph,
    noise: &WeightedDigraph,
    law: WeightLaw,
    seed: u64,
) -> Result<WeightedDigraph, GraphError> {
    if gt.n_nodes() != noise.n_nodes() || gt.directed() != noise.directed() {
        return Err(GraphError::NodeSetMismatch {
            left: gt.n_nodes(),
            right: noise.n_nodes(),
        });
    }
    let mut rng = phase_rng(seed, RngPhase::Noise);
    let mut records: Vec<EdgeRecord> = Vec::with_capacity(gt.n_edges() + noise.n_edges());
    for e in gt.edges() {
        let mut r = EdgeRecord::new(e.source as usize, e.target as usize, e.weight);
        r.attrs.push(0.0);
        records.push(r);
    }
    for e in noise.edges() {
        // a draw per noise edge keeps the stream independent of collisions
        let w = law.sample(&mut rng);
        if gt.has_edge(e.source as usize, e.target as usize) {
            continue;
        }
        let mut r = EdgeRecord::new(e.source as usize, e.target as usize, w);
        r.attrs.push(1.0);
        records.push(r);
    }
    WeightedDigraph::from_records(
        gt.n_nodes(),
        records,
        &["spurious".to_string()],
        gt.node_names().map(|n| n.to_vec()),
        gt.directed(),
        BuildOptions::default(),
    )
}

/// Add one edge `(i, v)` whose normalized weight is `eps`, i.e. raw
/// weight `eps * max(w)`. Errors if the edge already exists. Attribute
/// columns are preserved; the new edge's attribute values are NaN.
pub fn perturb_epsilon(
    g: &WeightedDigraph,
    i: usize,
    v: usize,
    eps: f64,
) -> Result<WeightedDigraph, GraphError> {
    if i >= g.n_nodes() || v >= g.n_nodes() {
        return Err(GraphError::NodeOutOfRange {
            node: i.max(v),
            n_nodes: g.n_nodes(),
        });
    }
    if i == v {
        return Err(GraphError::SelfLoop {
            node: g.node_label(i),
        });
    }
    if g.has_edge(i, v) {
        return Err(GraphError::EdgeExists { src: i, dst: v });
    }
    let attr_names: Vec<String> = g.attr_names().map(|s| s.to_string()).collect();
    let cols: Vec<&[f64]> = attr_names.iter().map(|n| g.attr(n).unwrap()).collect();
    let mut records: Vec<EdgeRecord> = Vec::with_capacity(g.n_edges() + 1);
    for (idx, e) in g.edges().iter().enumerate() {
        let mut r = EdgeRecord::new(e.source as usize, e.target as usize, e.weight);
        r.attrs.extend(cols.iter().map(|c| c[idx]));
        records.push(r);
    }
    let raw = eps * g.max_weight().unwrap_or(1.0);
    records.push(EdgeRecord::new(i, v, raw));
    WeightedDigraph::from_records(
        g.n_nodes(),
        records,
        &attr_names,
        g.node_names().map(|n| n.to_vec()),
        g.directed(),
        BuildOptions::default(),
    )
}
