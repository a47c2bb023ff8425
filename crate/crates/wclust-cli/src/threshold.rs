//! Attribute-based edge filtering (e.g. p-value thresholding).

use wclust::graph::{BuildOptions, EdgeRecord};
use wclust::{GraphError, WeightedDigraph};

/// Keep only the edges whose `attr` value is strictly below
/// `max_value`. With `renormalize` the remaining weights are rescaled
/// so their maximum is 1; by default they are left untouched so that
/// coefficients stay comparable across threshold sweeps.
pub fn threshold(
    g: &WeightedDigraph,
    attr: &str,
    max_value: f64,
    renormalize: bool,
) -> Result<WeightedDigraph, GraphError> {
    let col = g.attr(attr).ok_or_else(|| GraphError::MissingAttribute {
        name: attr.to_string(),
    })?;
    if col.iter().any(|v| v.is_nan()) {
        return Err(GraphError::MissingAttribute {
            name: attr.to_string(),
        });
    }
    let attr_names: Vec<String> = g.attr_names().map(|s| s.to_string()).collect();
    let cols: Vec<&[f64]> = attr_names.iter().map(|n| g.attr(n).unwrap()).collect();

    let keep: Vec<usize> = (0..g.n_edges()).filter(|&i| col[i] < max_value).collect();
    let scale = if renormalize {
        let max = keep
            .iter()
            .map(|&i| g.edges()[i].weight)
            .fold(0.0_f64, f64::max);
        if max > 0.0 {
            max
        } else {
            1.0
        }
    } else {
        1.0
    };

    let records: Vec<EdgeRecord> = keep
        .iter()
        .map(|&i| {
            let e = g.edges()[i];
            let mut r = EdgeRecord::new(e.source as usize, e.target as usize, e.weight / scale);
            r.attrs.extend(cols.iter().map(|c| c[i]));
            r
        })
        .collect();
    WeightedDigraph::from_records(
        g.n_nodes(),
        records,
        &attr_names,
        g.node_names().map(|n| n.to_vec()),
        g.directed(),
        BuildOptions::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use wclust::graph::EdgeRecord;

    fn graph_with_pvalues() -> WeightedDigraph {
        let records = (0..10)
            .map(|i| {
                let mut r = EdgeRecord::new(i, (i + 1) % 11, 1.0 + i as f64);
                r.attrs.push(if i < 5 { 0.001 } else { 0.5 });
                r
            })
            .collect();
        WeightedDigraph::from_records(
            11,
            records,
            &["pvalue".to_string()],
            None,
            true,
            BuildOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn keeps_edges_below_threshold() {
        let g = graph_with_pvalues();
        let t = threshold(&g, "pvalue", 0.01, false).unwrap();
        assert_eq!(t.n_edges(), 5);
        // weights untouched by default
        assert_eq!(t.edges()[0].weight, 1.0);
    }

    #[test]
    fn infinite_threshold_is_identity() {
        let g = graph_with_pvalues();
        let t = threshold(&g, "pvalue", f64::INFINITY, false).unwrap();
        assert_eq!(t.n_edges(), g.n_edges());
        assert_eq!(t.edges(), g.edges());
    }

    #[test]
    fn renormalize_rescales_to_unit_max() {
        let g = graph_with_pvalues();
        let t = threshold(&g, "pvalue", 0.01, true).unwrap();
        assert_eq!(t.max_weight(), Some(1.0));
    }

    #[test]
    fn missing_attribute_is_an_error() {
        let g = graph_with_pvalues();
        assert!(matches!(
            threshold(&g, "distance", 0.5, false),
            Err(GraphError::MissingAttribute { .. })
        ));
    }

    #[test]
    fn matches_hand_built_subgraph() {
        use wclust::{local_clustering, Method};
        let g = graph_with_pvalues();
        let t = threshold(&g, "pvalue", 0.01, false).unwrap();
        let hand = WeightedDigraph::from_records(
            11,
            g.edges()
                .iter()
                .take(5)
                .map(|e| EdgeRecord::new(e.source as usize, e.target as usize, e.weight))
                .collect(),
            &[],
            None,
            true,
            BuildOptions::default(),
        )
        .unwrap();
        let (wt, wh) = (t.normalize().unwrap(), hand.normalize().unwrap());
        for i in 0..11 {
            assert_eq!(
                local_clustering(&wt, i, Method::Zhang),
                local_clustering(&wh, i, Method::Zhang)
            );
        }
    }
}
