//! Metric tables and comparison statistics.

use wclust::GraphError;

/// One computed value: node label, method (or closure style), mode (or
/// closure pattern), and the value when defined.
#[derive(Debug, Clone)]
pub struct MetricRow {
    pub node: String,
    pub method: String,
    pub mode: String,
    pub value: Option<f64>,
}

/// Per-node metric values plus the metadata needed to reproduce them.
#[derive(Debug, Clone)]
pub struct MetricTable {
    pub rows: Vec<MetricRow>,
    pub fingerprint: u64,
    pub seed: Option<u64>,
}

/// Comparison of two per-node value vectors: R-squared over the
/// jointly defined nodes, top-k retention, and per-group median ranks.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub n_joint: usize,
    pub r_squared: f64,
    /// Spearman rank correlation, when requested.
    pub spearman: Option<f64>,
    /// (k in percent, |topk(a) cap topk(b)| / |topk(a)|).
    pub topk_retention: Vec<(u8, f64)>,
    /// (group, median rank in a, median rank in b); groups are the
    /// leading alphabetic prefixes of the node labels.
    pub rank_table: Vec<(String, f64, f64)>,
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx <= 0.0 || vy <= 0.0 {
        return 0.0;
    }
    cov / (vx.sqrt() * vy.sqrt())
}

/// Indices sorted by value descending, ties broken by node label
/// ascending for determinism.
fn ranking(labels: &[&str], values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .unwrap()
            .then_with(|| labels[a].cmp(labels[b]))
    });
    idx
}

/// Rank (1-based) of each entry under [`ranking`].
fn ranks(labels: &[&str], values: &[f64]) -> Vec<f64> {
    let order = ranking(labels, values);
    let mut r = vec![0.0; values.len()];
    for (pos, &i) in order.iter().enumerate() {
        r[i] = (pos + 1) as f64;
    }
    r
}

fn median(sorted: &mut Vec<f64>) -> f64 {
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn group_of(label: &str) -> String {
    let prefix: String = label.chars().take_while(|c| c.is_alphabetic()).collect();
    if prefix.is_empty() {
        "all".to_string()
    } else {
        prefix
    }
}

/// Compare two per-node value vectors over the same node universe.
/// R-squared is the squared Pearson correlation over nodes where both
/// values are defined; it is symmetric. Top-k retention is directional:
/// the fraction of `a`'s top-k nodes that also rank in `b`'s top k.
pub fn compare(
    a: &[(String, Option<f64>)],
    b: &[(String, Option<f64>)],
    with_spearman: bool,
) -> Result<ComparisonReport, GraphError> {
    let mut b_map: std::collections::BTreeMap<&str, Option<f64>> = std::collections::BTreeMap::new();
    for (node, v) in b {
        b_map.insert(node.as_str(), *v);
    }
    let mut labels: Vec<&str> = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (node, va) in a {
        let vb = b_map.get(node.as_str()).ok_or_else(|| {
            GraphError::InvalidParameter(format!("node '{node}' missing from second input"))
        })?;
        if let (Some(x), Some(y)) = (va, vb) {
            labels.push(node.as_str());
            xs.push(*x);
            ys.push(*y);
        }
    }
    let n = xs.len();
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "only {n} jointly defined nodes; need at least 3"
        )));
    }

    let r = pearson(&xs, &ys);
    let spearman = if with_spearman {
        Some(pearson(&ranks(&labels, &xs), &ranks(&labels, &ys)))
    } else {
        None
    };

    let order_a = ranking(&labels, &xs);
    let order_b = ranking(&labels, &ys);
    let mut topk_retention = Vec::new();
    for k in [5u8, 10, 25, 100] {
        let take = ((k as f64 / 100.0 * n as f64).ceil() as usize).max(1);
        let top_a: std::collections::BTreeSet<usize> = order_a.iter().take(take).copied().collect();
        let hits = order_b
            .iter()
            .take(take)
            .filter(|i| top_a.contains(i))
            .count();
        topk_retention.push((k, hits as f64 / take as f64));
    }

    let ra = ranks(&labels, &xs);
    let rb = ranks(&labels, &ys);
    let mut groups: std::collections::BTreeMap<String, (Vec<f64>, Vec<f64>)> = Default::default();
    for (i, &label) in labels.iter().enumerate() {
        let e = groups.entry(group_of(label)).or_default();
        e.0.push(ra[i]);
        e.1.push(rb[i]);
    }
    let rank_table = groups
        .into_iter()
        .map(|(g, (mut a, mut b))| (g, median(&mut a), median(&mut b)))
        .collect();

    Ok(ComparisonReport {
        n_joint: n,
        r_squared: r * r,
        spearman,
        topk_retention,
        rank_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(vals: &[f64]) -> Vec<(String, Option<f64>)> {
        vals.iter()
            .enumerate()
            .map(|(i, &v)| (format!("n{i:03}"), Some(v)))
            .collect()
    }

    #[test]
    fn identical_vectors_are_perfect() {
        let a = vecs(&[0.1, 0.5, 0.9, 0.3, 0.7]);
        let rep = compare(&a, &a, true).unwrap();
        assert!((rep.r_squared - 1.0).abs() < 1e-12);
        assert!((rep.spearman.unwrap() - 1.0).abs() < 1e-12);
        for (_, f) in &rep.topk_retention {
            assert_eq!(*f, 1.0);
        }
    }

    #[test]
    fn full_retention_at_100_percent() {
        let a = vecs(&[0.1, 0.5, 0.9]);
        let b = vecs(&[0.9, 0.5, 0.1]);
        let rep = compare(&a, &b, false).unwrap();
        assert_eq!(rep.topk_retention.last().unwrap().1, 1.0);
    }

    #[test]
    fn independent_uniform_vectors_are_uncorrelated() {
        use rand::{Rng, SeedableRng};
        for seed in 0..10u64 {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let a = vecs(&(0..1000).map(|_| rng.gen::<f64>()).collect::<Vec<_>>());
            let b = vecs(&(0..1000).map(|_| rng.gen::<f64>()).collect::<Vec<_>>());
            let rep = compare(&a, &b, false).unwrap();
            assert!(rep.r_squared < 0.05, "seed {seed}: {}", rep.r_squared);
        }
    }

    #[test]
    fn r_squared_is_symmetric() {
        let a = vecs(&[0.2, 0.8, 0.4, 0.6, 0.1]);
        let b = vecs(&[0.3, 0.5, 0.9, 0.2, 0.4]);
        let ab = compare(&a, &b, false).unwrap();
        let ba = compare(&b, &a, false).unwrap();
        assert!((ab.r_squared - ba.r_squared).abs() < 1e-15);
    }

    #[test]
    fn undefined_nodes_are_dropped() {
        let mut a = vecs(&[0.1, 0.5, 0.9, 0.3]);
        let mut b = vecs(&[0.2, 0.6, 0.8, 0.4]);
        a.push(("n999".into(), None));
        b.push(("n999".into(), Some(1.0)));
        let rep = compare(&a, &b, false).unwrap();
        assert_eq!(rep.n_joint, 4);
    }

    #[test]
    fn too_few_joint_nodes_is_an_error() {
        let a = vecs(&[0.1, 0.2]);
        assert!(compare(&a, &a, false).is_err());
    }

    #[test]
    fn rank_table_groups_by_prefix() {
        let a: Vec<(String, Option<f64>)> = vec![
            ("core0".into(), Some(0.9)),
            ("core1".into(), Some(0.8)),
            ("pn0".into(), Some(0.1)),
            ("pn1".into(), Some(0.2)),
        ];
        let rep = compare(&a, &a, false).unwrap();
        let core = rep.rank_table.iter().find(|(g, _, _)| g == "core").unwrap();
        let pn = rep.rank_table.iter().find(|(g, _, _)| g == "pn").unwrap();
        assert!(core.1 < pn.1);
    }
}
