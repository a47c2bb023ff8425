//! Experiment drivers: spurious-edge sensitivity and weight-shuffle
//! null-model comparisons.

use std::collections::BTreeMap;

use wclust::clustering::{local_clustering, Method};
use wclust::directed::{directed_clustering, Mode};
use wclust::generators::{generate_topology, ScenarioConfig};
use wclust::perturb::{overlay_noise, shuffle_weights, ShuffleScope};
use wclust::{GraphError, WeightedDigraph};

use crate::report::compare;

/// Mean R-squared between ground-truth and measured clustering for one
/// method, over the noise realizations of a scenario.
#[derive(Debug, Clone)]
pub struct SpuriousOutcome {
    pub method: Method,
    pub mean_r_squared: f64,
    pub per_realization: Vec<f64>,
}

fn labelled(values: Vec<Option<f64>>) -> Vec<(String, Option<f64>)> {
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| (format!("{i:06}"), v))
        .collect()
}

/// Build the ground truth from `cfg`, overlay `cfg.realizations`
/// independent noise realizations, and report how well each method's
/// clustering on the measured graph correlates with the ground truth.
/// Graphs are collapsed to undirected form for measurement.
pub fn run_spurious_experiment(
    cfg: &ScenarioConfig,
    methods: &[Method],
) -> Result<Vec<SpuriousOutcome>, GraphError> {
    let noise = cfg.noise.as_ref().ok_or_else(|| {
        GraphError::InvalidParameter("scenario has no noise block".into())
    })?;
    let gt = cfg.generate()?;
    let gt_und = gt.to_undirected();
    let w_gt = gt_und.normalize()?;
    let gt_values: BTreeMap<Method, Vec<(String, Option<f64>)>> = methods
        .iter()
        .map(|&m| {
            let vals = (0..gt_und.n_nodes())
                .map(|i| local_clustering(&w_gt, i, m))
                .collect();
            (m, labelled(vals))
        })
        .collect();

    let mut per_method: BTreeMap<Method, Vec<f64>> = Default::default();
    for t in 0..cfg.realizations {
        let noise_seed = cfg.seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(t as u64 + 1));
        let mut params = noise.params.clone();
        params
            .entry("n".to_string())
            .or_insert(gt.n_nodes() as f64);
        let noise_topo = generate_topology(noise.generator, &params, noise_seed)?;
        let measured = overlay_noise(&gt, &noise_topo, noise.weight_law, noise_seed)?;
        let measured_und = measured.to_undirected();
        let w_m = measured_und.normalize()?;
        for &m in methods {
            let vals = labelled(
                (0..measured_und.n_nodes())
                    .map(|i| local_clustering(&w_m, i, m))
                    .collect(),
            );
            let rep = compare(&gt_values[&m], &vals, false)?;
            per_method.entry(m).or_default().push(rep.r_squared);
        }
    }

    Ok(methods
        .iter()
        .map(|&m| {
            let rs = per_method.remove(&m).unwrap_or_default();
            let mean = rs.iter().sum::<f64>() / rs.len().max(1) as f64;
            SpuriousOutcome {
                method: m,
                mean_r_squared: mean,
                per_realization: rs,
            }
        })
        .collect())
}

/// Per-node pairing of the original coefficient with its mean over
/// shuffled realizations.
#[derive(Debug, Clone)]
pub struct ShufflePoint {
    pub node: String,
    pub method: Method,
    pub mode: Mode,
    pub original: Option<f64>,
    pub shuffled_mean: Option<f64>,
}

/// Per-(method, mode) one-sided summary of a shuffle experiment.
#[derive(Debug, Clone)]
pub struct ShuffleSummary {
    pub method: Method,
    pub mode: Mode,
    /// Fraction of jointly defined nodes whose original value exceeds
    /// the shuffled mean.
    pub fraction_above: f64,
    pub n_nodes: usize,
    /// Significance label from the 75% and 95% one-sided thresholds.
    pub label: &'static str,
}

fn significance_label(frac: f64) -> &'static str {
    if frac >= 0.95 {
        "above-95"
    } else if frac >= 0.75 {
        "above-75"
    } else if frac <= 0.05 {
        "below-95"
    } else if frac <= 0.25 {
        "below-75"
    } else {
        "none"
    }
}

/// Compare each node's directed clustering against the mean over
/// `n_realizations` weight shuffles of the same graph.
pub fn run_shuffle_experiment(
    g: &WeightedDigraph,
    scope: ShuffleScope,
    n_realizations: usize,
    seed: u64,
    methods: &[Method],
    modes: &[Mode],
) -> Result<(Vec<ShufflePoint>, Vec<ShuffleSummary>), GraphError> {
    if !g.directed() {
        return Err(GraphError::InvalidParameter(
            "the shuffle experiment expects a directed graph".into(),
        ));
    }
    if n_realizations == 0 {
        return Err(GraphError::InvalidParameter(
            "need at least one shuffle realization".into(),
        ));
    }
    let w = g.normalize()?;
    let n = g.n_nodes();

    // sums of shuffled values per (method, mode, node); the topology is
    // fixed, so definedness never varies across realizations
    let mut sums: BTreeMap<(Method, Mode), Vec<f64>> = methods
        .iter()
        .flat_map(|&m| modes.iter().map(move |&mode| ((m, mode), vec![0.0; n])))
        .collect();
    for r in 0..n_realizations {
        let shuffled = shuffle_weights(g, scope, seed.wrapping_add(r as u64));
        let ws = shuffled.normalize()?;
        for &m in methods {
            for &mode in modes {
                let acc = sums.get_mut(&(m, mode)).unwrap();
                for (i, slot) in acc.iter_mut().enumerate() {
                    if let Some(v) = directed_clustering(&ws, i, m, mode)? {
                        *slot += v;
                    }
                }
            }
        }
    }

    let mut points = Vec::new();
    let mut summaries = Vec::new();
    for &m in methods {
        for &mode in modes {
            let acc = &sums[&(m, mode)];
            let mut above = 0usize;
            let mut joint = 0usize;
            for i in 0..n {
                let original = directed_clustering(&w, i, m, mode)?;
                let shuffled_mean = original.map(|_| acc[i] / n_realizations as f64);
                if let (Some(o), Some(s)) = (original, shuffled_mean) {
                    joint += 1;
                    if o > s {
                        above += 1;
                    }
                }
                points.push(ShufflePoint {
                    node: g.node_label(i),
                    method: m,
                    mode,
                    original,
                    shuffled_mean,
                });
            }
            let frac = if joint > 0 {
                above as f64 / joint as f64
            } else {
                0.5
            };
            summaries.push(ShuffleSummary {
                method: m,
                mode,
                fraction_above: frac,
                n_nodes: joint,
                label: significance_label(frac),
            });
        }
    }
    Ok((points, summaries))
}
