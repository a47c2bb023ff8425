//! Normalized sparse weights and per-node sums.
//!
//! [`NormalizedWeights`] holds the weight matrix divided by its global
//! maximum, stored in compressed row layout plus a transposed copy so
//! that both outgoing and incoming scans are cheap. [`NodeStats`]
//! gathers every node-level sum the metric formulas consume: degrees,
//! strengths, fractional strengths and the reciprocal sums.

use crate::error::GraphError;
use crate::graph::WeightedDigraph;
use crate::util::pairwise_sum;

/// `w^{1/3}`.
#[inline]
pub fn pow13(w: f64) -> f64 {
    w.cbrt()
}

/// `w^{2/3}`, computed as the squared cube root (0 for w = 0).
#[inline]
pub fn pow23(w: f64) -> f64 {
    let c = w.cbrt();
    c * c
}

/// Compressed sparse row storage with columns sorted per row.
#[derive(Debug, Clone)]
pub(crate) struct Csr {
    offsets: Vec<usize>,
    cols: Vec<u32>,
    weights: Vec<f64>,
}

impl Csr {
    fn from_triples(n: usize, mut triples: Vec<(u32, u32, f64)>) -> Csr {
        triples.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut offsets = vec![0usize; n + 1];
        for &(r, _, _) in &triples {
            offsets[r as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let cols = triples.iter().map(|&(_, c, _)| c).collect();
        let weights = triples.iter().map(|&(_, _, w)| w).collect();
        Csr {
            offsets,
            cols,
            weights,
        }
    }

    #[inline]
    fn row(&self, i: usize) -> (&[u32], &[f64]) {
        let (a, b) = (self.offsets[i], self.offsets[i + 1]);
        (&self.cols[a..b], &self.weights[a..b])
    }

    #[inline]
    fn weight(&self, i: usize, j: u32) -> f64 {
        let (cols, ws) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => ws[k],
            Err(_) => 0.0,
        }
    }
}

/// Weight matrix scaled so its maximum entry is exactly 1.
#[derive(Debug, Clone)]
pub struct NormalizedWeights {
    n: usize,
    directed: bool,
    max_raw: f64,
    out: Csr,
    inc: Csr,
}

impl NormalizedWeights {
    /// Normalize a graph's weights by their global maximum.
    pub fn from_graph(g: &WeightedDigraph) -> Result<Self, GraphError> {
        let max_raw = g.max_weight().unwrap_or(0.0);
        if max_raw <= 0.0 {
            return Err(GraphError::DegenerateWeights);
        }
        Ok(Self::build(g, max_raw))
    }

    /// Take a graph's weights as already being on the normalized scale
    /// (all entries must lie in [0, 1]). This is the entry point for
    /// computing metrics on raw, un-renormalized weights.
    pub fn from_graph_raw(g: &WeightedDigraph) -> Result<Self, GraphError> {
        if g.edges().iter().any(|e| e.weight > 1.0) {
            return Err(GraphError::InvalidParameter(
                "raw weights exceed 1; renormalize first".into(),
            ));
        }
        Ok(Self::build(g, 1.0))
    }

    fn build(g: &WeightedDigraph, max_raw: f64) -> Self {
        let n = g.n_nodes();
        let mut fwd = Vec::with_capacity(g.n_edges() * 2);
        let mut bwd = Vec::with_capacity(g.n_edges() * 2);
        for e in g.edges() {
            let w = e.weight / max_raw;
            fwd.push((e.source, e.target, w));
            bwd.push((e.target, e.source, w));
            if !g.directed() {
                fwd.push((e.target, e.source, w));
                bwd.push((e.source, e.target, w));
            }
        }
        NormalizedWeights {
            n,
            directed: g.directed(),
            max_raw,
            out: Csr::from_triples(n, fwd),
            inc: Csr::from_triples(n, bwd),
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    /// The raw maximum the weights were divided by.
    pub fn max_raw(&self) -> f64 {
        self.max_raw
    }

    /// Outgoing neighbors and weights of `i` (sorted by neighbor id).
    /// For undirected graphs this is the full symmetric neighborhood.
    #[inline]
    pub fn out_row(&self, i: usize) -> (&[u32], &[f64]) {
        self.out.row(i)
    }

    /// Incoming neighbors and weights of `i` (sorted by neighbor id).
    #[inline]
    pub fn in_row(&self, i: usize) -> (&[u32], &[f64]) {
        self.inc.row(i)
    }

    /// Normalized weight of edge `(i, j)`, 0 if absent.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.out.weight(i, j as u32)
    }

    /// Whether the edge `(i, j)` is present (including zero-weight edges).
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (cols, _) = self.out.row(i);
        cols.binary_search(&(j as u32)).is_ok()
    }

    /// Graph with all edge directions reversed (no-op when undirected).
    pub fn transpose(&self) -> NormalizedWeights {
        NormalizedWeights {
            n: self.n,
            directed: self.directed,
            max_raw: self.max_raw,
            out: self.inc.clone(),
            inc: self.out.clone(),
        }
    }

    /// Copy of `self` with one extra edge `(i, v)` of normalized weight
    /// `epsilon`; the perturbation harness of the continuity tests.
    pub fn with_extra_edge(
        &self,
        i: usize,
        v: usize,
        epsilon: f64,
    ) -> Result<NormalizedWeights, GraphError> {
        if i >= self.n || v >= self.n {
            return Err(GraphError::NodeOutOfRange {
                node: i.max(v),
                n_nodes: self.n,
            });
        }
        if i == v {
            return Err(GraphError::SelfLoop {
                node: i.to_string(),
            });
        }
        if self.has_edge(i, v) {
            return Err(GraphError::EdgeExists { src: i, dst: v });
        }
        let mut fwd = Vec::new();
        let mut bwd = Vec::new();
        for r in 0..self.n {
            let (cols, ws) = self.out.row(r);
            for (c, w) in cols.iter().zip(ws) {
                fwd.push((r as u32, *c, *w));
            }
            let (cols, ws) = self.inc.row(r);
            for (c, w) in cols.iter().zip(ws) {
                bwd.push((r as u32, *c, *w));
            }
        }
        fwd.push((i as u32, v as u32, epsilon));
        bwd.push((v as u32, i as u32, epsilon));
        if !self.directed {
            fwd.push((v as u32, i as u32, epsilon));
            bwd.push((i as u32, v as u32, epsilon));
        }
        Ok(NormalizedWeights {
            n: self.n,
            directed: self.directed,
            max_raw: self.max_raw,
            out: Csr::from_triples(self.n, fwd),
            inc: Csr::from_triples(self.n, bwd),
        })
    }

    /// All node-level sums for node `i`. Diagonal terms are excluded by
    /// construction (the graph stores no self-loops).
    pub fn stats(&self, i: usize) -> NodeStats {
        let (out_cols, out_w) = self.out.row(i);
        let (in_cols, in_w) = self.inc.row(i);

        let s_out = pairwise_sum(out_w);
        let s_in = pairwise_sum(in_w);
        let sum_map = |ws: &[f64], f: fn(f64) -> f64| -> f64 {
            let mapped: Vec<f64> = ws.iter().map(|&w| f(w)).collect();
            pairwise_sum(&mapped)
        };

        // Merge the sorted out/in rows to find reciprocated neighbors.
        let mut d_recip = 0usize;
        let mut s_recip = 0.0;
        let mut s_recip_sq = 0.0;
        let mut s_recip_barrat = 0.0;
        let (mut a, mut b) = (0usize, 0usize);
        while a < out_cols.len() && b < in_cols.len() {
            match out_cols[a].cmp(&in_cols[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    let (wij, wji) = (out_w[a], in_w[b]);
                    d_recip += 1;
                    s_recip += (wij * wji).sqrt();
                    s_recip_sq += wij * wji;
                    s_recip_barrat += 0.5 * (wij + wji);
                    a += 1;
                    b += 1;
                }
            }
        }

        NodeStats {
            d_in: in_cols.len(),
            d_out: out_cols.len(),
            d_tot: in_cols.len() + out_cols.len(),
            d_recip,
            s_in,
            s_out,
            s_tot: s_in + s_out,
            s_half_in: sum_map(in_w, f64::sqrt),
            s_half_out: sum_map(out_w, f64::sqrt),
            s_twothirds_in: sum_map(in_w, pow23),
            s_twothirds_out: sum_map(out_w, pow23),
            s_sq_in: sum_map(in_w, |w| w * w),
            s_sq_out: sum_map(out_w, |w| w * w),
            s_recip,
            s_recip_sq,
            s_recip_barrat,
        }
    }
}

/// Cached per-node degrees, strengths, and reciprocal sums.
///
/// For undirected graphs the in/out pairs coincide and every neighbor
/// counts as reciprocated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeStats {
    pub d_in: usize,
    pub d_out: usize,
    /// `d_in + d_out` (Fagiolo's total degree).
    pub d_tot: usize,
    /// Number of reciprocated neighbors.
    pub d_recip: usize,
    pub s_in: f64,
    pub s_out: f64,
    pub s_tot: f64,
    /// Fractional strength `sum_j w_ij^{1/2}` over incoming edges.
    pub s_half_in: f64,
    pub s_half_out: f64,
    pub s_twothirds_in: f64,
    pub s_twothirds_out: f64,
    /// `sum_j w_ji^2`.
    pub s_sq_in: f64,
    pub s_sq_out: f64,
    /// Reciprocal strength `sum_j sqrt(w_ij w_ji)`.
    pub s_recip: f64,
    /// `sum_j w_ij w_ji`.
    pub s_recip_sq: f64,
    /// `sum_j (w_ij + w_ji)/2` over reciprocated pairs.
    pub s_recip_barrat: f64,
}

impl NodeStats {
    /// Fractional strength over outgoing edges for the supported
    /// exponents 1/2, 2/3, 1 and 2.
    pub fn s_alpha_out(&self, alpha: f64) -> f64 {
        if alpha == 0.5 {
            self.s_half_out
        } else if alpha == 1.0 {
            self.s_out
        } else if alpha == 2.0 {
            self.s_sq_out
        } else {
            self.s_twothirds_out
        }
    }

    /// Fractional strength over incoming edges; see
    /// [`s_alpha_out`](Self::s_alpha_out).
    pub fn s_alpha_in(&self, alpha: f64) -> f64 {
        if alpha == 0.5 {
            self.s_half_in
        } else if alpha == 1.0 {
            self.s_in
        } else if alpha == 2.0 {
            self.s_sq_in
        } else {
            self.s_twothirds_in
        }
    }
}
