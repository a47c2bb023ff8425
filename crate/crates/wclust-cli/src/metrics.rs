//! Batch metric computation into [`MetricTable`]s.

use wclust::closure::{closure, ClosurePattern, ClosureStyle, ClosureVariant};
use wclust::clustering::{local_clustering, Method};
use wclust::directed::{directed_intensities_with, BarratDenominator, Mode};
use wclust::weights::NormalizedWeights;
use wclust::{GraphError, WeightedDigraph};

use crate::report::{MetricRow, MetricTable};

fn normalized(g: &WeightedDigraph, raw: bool) -> Result<NormalizedWeights, GraphError> {
    if raw {
        NormalizedWeights::from_graph_raw(g)
    } else {
        g.normalize()
    }
}

/// Clustering values for every node under each requested method and
/// mode. The `undirected` mode is only valid on undirected graphs and
/// the directed modes only on directed ones.
pub fn cluster_table(
    g: &WeightedDigraph,
    methods: &[Method],
    modes: &[Mode],
    undirected_mode: bool,
    raw: bool,
    barrat: BarratDenominator,
    seed: Option<u64>,
) -> Result<MetricTable, GraphError> {
    if undirected_mode && g.directed() {
        return Err(GraphError::InvalidParameter(
            "mode 'undirected' requires an undirected graph (pass --undirected)".into(),
        ));
    }
    if !undirected_mode && !g.directed() {
        return Err(GraphError::InvalidParameter(
            "directed modes require a directed graph (pass --directed)".into(),
        ));
    }
    let w = normalized(g, raw)?;
    let mut rows = Vec::new();
    for &method in methods {
        if undirected_mode {
            for i in 0..g.n_nodes() {
                rows.push(MetricRow {
                    node: g.node_label(i),
                    method: method.name().to_string(),
                    mode: "undirected".to_string(),
                    value: local_clustering(&w, i, method),
                });
            }
        } else {
            for &mode in modes {
                for i in 0..g.n_nodes() {
                    let value = directed_intensities_with(&w, i, method, mode, barrat)?
                        .coefficient();
                    rows.push(MetricRow {
                        node: g.node_label(i),
                        method: method.name().to_string(),
                        mode: mode.name().to_string(),
                        value,
                    });
                }
            }
        }
    }
    Ok(MetricTable {
        rows,
        fingerprint: g.fingerprint(),
        seed,
    })
}

/// Closure values for every node under each requested style and
/// pattern.
pub fn closure_table(
    g: &WeightedDigraph,
    styles: &[ClosureStyle],
    patterns: &[ClosurePattern],
    raw: bool,
    seed: Option<u64>,
) -> Result<MetricTable, GraphError> {
    let w = normalized(g, raw)?;
    let mut rows = Vec::new();
    for &style in styles {
        for &pattern in patterns {
            for i in 0..g.n_nodes() {
                let value = closure(&w, i, ClosureVariant { style, pattern })?;
                rows.push(MetricRow {
                    node: g.node_label(i),
                    method: style.name().to_string(),
                    mode: pattern.name().to_string(),
                    value,
                });
            }
        }
    }
    Ok(MetricTable {
        rows,
        fingerprint: g.fingerprint(),
        seed,
    })
}
