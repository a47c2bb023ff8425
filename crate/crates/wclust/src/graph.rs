//! Immutable weighted graph representation.
//!
//! [`WeightedDigraph`] is the single source of truth for a network: a
//! node set plus a deduplicated, self-loop-free weighted edge set with
//! optional per-edge attributes (e.g. p-value, distance). Undirected
//! graphs store each edge once with `source < target` and are treated
//! symmetrically everywhere downstream.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::GraphError;
use crate::util::Fnv1a;
use crate::weights::NormalizedWeights;

/// What to do with self-loops at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelfLoopPolicy {
    /// Silently drop self-loops (all metric sums exclude the diagonal).
    #[default]
    Drop,
    /// Reject the whole edge list if a self-loop is present.
    Reject,
}

/// What to do with repeated `(source, target)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// Reject on duplicates carrying a conflicting weight.
    #[default]
    Strict,
    /// Keep the first occurrence, drop the rest.
    KeepFirst,
}

/// Construction options for [`WeightedDigraph`].
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub self_loops: SelfLoopPolicy,
    pub duplicates: DuplicatePolicy,
}

/// A single stored edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: u32,
    pub target: u32,
    pub weight: f64,
}

/// An input edge record with optional attribute values (aligned with the
/// attribute names passed alongside).
#[derive(Debug, Clone)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    pub attrs: Vec<f64>,
}

impl EdgeRecord {
    pub fn new(source: usize, target: usize, weight: f64) -> Self {
        EdgeRecord {
            source,
            target,
            weight,
            attrs: Vec::new(),
        }
    }
}

/// Immutable weighted directed (or undirected) graph.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    /// Attribute columns, aligned with `edges`.
    attrs: BTreeMap<String, Vec<f64>>,
    node_names: Option<Vec<String>>,
}

impl WeightedDigraph {
    /// Build a graph from plain `(source, target, weight)` triples.
    /// The node count is inferred as `max id + 1`.
    pub fn from_edges<I>(edges: I, directed: bool, options: BuildOptions) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let records: Vec<EdgeRecord> = edges
            .into_iter()
            .map(|(s, t, w)| EdgeRecord::new(s, t, w))
            .collect();
        let n = records
            .iter()
            .map(|r| r.source.max(r.target) + 1)
            .max()
            .unwrap_or(0);
        Self::from_records(n, records, &[], None, directed, options)
    }

    /// Build a graph from edge records with attribute columns.
    pub fn from_records(
        n_nodes: usize,
        records: Vec<EdgeRecord>,
        attr_names: &[String],
        node_names: Option<Vec<String>>,
        directed: bool,
        options: BuildOptions,
    ) -> Result<Self, GraphError> {
        if let Some(names) = &node_names {
            if names.len() != n_nodes {
                return Err(GraphError::InvalidParameter(format!(
                    "{} node names for {} nodes",
                    names.len(),
                    n_nodes
                )));
            }
        }

        let label = |id: usize| -> String {
            match &node_names {
                Some(names) => names[id].clone(),
                None => id.to_string(),
            }
        };

        let mut edges: Vec<Edge> = Vec::with_capacity(records.len());
        let mut attrs: BTreeMap<String, Vec<f64>> = attr_names
            .iter()
            .map(|n| (n.clone(), Vec::with_capacity(records.len())))
            .collect();
        let mut seen: BTreeMap<(u32, u32), f64> = BTreeMap::new();

        for rec in records {
            if rec.source >= n_nodes {
                return Err(GraphError::NodeOutOfRange {
                    node: rec.source,
                    n_nodes,
                });
            }
            if rec.target >= n_nodes {
                return Err(GraphError::NodeOutOfRange {
                    node: rec.target,
                    n_nodes,
                });
            }
            if !rec.weight.is_finite() {
                return Err(GraphError::NonFiniteWeight {
                    src: label(rec.source),
                    dst: label(rec.target),
                });
            }
            if rec.weight < 0.0 {
                return Err(GraphError::NegativeWeight {
                    src: label(rec.source),
                    dst: label(rec.target),
                    weight: rec.weight,
                });
            }
            if rec.source == rec.target {
                match options.self_loops {
                    SelfLoopPolicy::Drop => continue,
                    SelfLoopPolicy::Reject => {
                        return Err(GraphError::SelfLoop {
                            node: label(rec.source),
                        })
                    }
                }
            }
            let (s, t) = if directed || rec.source < rec.target {
                (rec.source as u32, rec.target as u32)
            } else {
                (rec.target as u32, rec.source as u32)
            };
            if let Some(&w0) = seen.get(&(s, t)) {
                match options.duplicates {
                    DuplicatePolicy::Strict if w0 != rec.weight => {
                        return Err(GraphError::DuplicateEdge {
                            src: label(s as usize),
                            dst: label(t as usize),
                        });
                    }
                    _ => continue, // keep first
                }
            }
            seen.insert((s, t), rec.weight);
            edges.push(Edge {
                source: s,
                target: t,
                weight: rec.weight,
            });
            for (k, name) in attr_names.iter().enumerate() {
                let v = rec.attrs.get(k).copied().unwrap_or(f64::NAN);
                attrs.get_mut(name).unwrap().push(v);
            }
        }

        Ok(WeightedDigraph {
            n: n_nodes,
            directed,
            edges,
            attrs,
            node_names,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn attr_names(&self) -> impl Iterator<Item = &str> {
        self.attrs.keys().map(|s| s.as_str())
    }

    /// Attribute column aligned with [`edges`](Self::edges), if present.
    pub fn attr(&self, name: &str) -> Option<&[f64]> {
        self.attrs.get(name).map(|v| v.as_slice())
    }

    pub fn node_names(&self) -> Option<&[String]> {
        self.node_names.as_deref()
    }

    /// Label of a node: its name if the graph carries names, else its id.
    pub fn node_label(&self, i: usize) -> String {
        match &self.node_names {
            Some(names) => names[i].clone(),
            None => i.to_string(),
        }
    }

    /// Dense id of a node given its label.
    pub fn find_node(&self, label: &str) -> Option<usize> {
        match &self.node_names {
            Some(names) => names.iter().position(|n| n == label),
            None => label.parse::<usize>().ok().filter(|&i| i < self.n),
        }
    }

    /// Maximum raw edge weight, if the graph has edges.
    pub fn max_weight(&self) -> Option<f64> {
        self.edges
            .iter()
            .map(|e| e.weight)
            .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w))))
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        let (s, t) = if self.directed || source < target {
            (source, target)
        } else {
            (target, source)
        };
        self.edges
            .iter()
            .any(|e| e.source as usize == s && e.target as usize == t)
    }

    /// Normalize weights by the global maximum (see [`NormalizedWeights`]).
    pub fn normalize(&self) -> Result<NormalizedWeights, GraphError> {
        NormalizedWeights::from_graph(self)
    }

    /// Collapse a directed graph to an undirected one. Reciprocal edges
    /// are merged by averaging their weights; attributes are dropped.
    pub fn to_undirected(&self) -> WeightedDigraph {
        if !self.directed {
            return self.clone();
        }
        let mut merged: BTreeMap<(u32, u32), (f64, u32)> = BTreeMap::new();
        for e in &self.edges {
            let key = if e.source < e.target {
                (e.source, e.target)
            } else {
                (e.target, e.source)
            };
            let entry = merged.entry(key).or_insert((0.0, 0));
            entry.0 += e.weight;
            entry.1 += 1;
        }
        let edges = merged
            .into_iter()
            .map(|((s, t), (w, c))| Edge {
                source: s,
                target: t,
                weight: w / c as f64,
            })
            .collect();
        WeightedDigraph {
            n: self.n,
            directed: false,
            edges,
            attrs: BTreeMap::new(),
            node_names: self.node_names.clone(),
        }
    }

    /// Deterministic structural fingerprint (nodes, edges, weights,
    /// attributes), used in output metadata.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv1a::new();
        h.write_u64(self.n as u64);
        h.write_u64(self.directed as u64);
        for e in &self.edges {
            h.write_u64(e.source as u64);
            h.write_u64(e.target as u64);
            h.write_f64(e.weight);
        }
        for (name, col) in &self.attrs {
            h.write(name.as_bytes());
            for &v in col {
                h.write_f64(v);
            }
        }
        h.finish()
    }

    /// Parse the edge-list text format: a header line
    /// `source,target,weight[,attr...]` (comma- or tab-separated),
    /// one edge per line, `#` comment lines ignored. Node labels are
    /// mapped to dense ids in first-appearance order.
    pub fn parse_edge_list(
        text: &str,
        directed: bool,
        options: BuildOptions,
    ) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            msg: "empty edge list".into(),
        })?;
        let sep = if header.contains('\t') { '\t' } else { ',' };
        let cols: Vec<&str> = header.split(sep).map(|c| c.trim()).collect();
        if cols.len() < 3 || cols[0] != "source" || cols[1] != "target" || cols[2] != "weight" {
            return Err(GraphError::Parse {
                line: hline,
                msg: "header must start with source,target,weight".into(),
            });
        }
        let attr_names: Vec<String> = cols[3..].iter().map(|c| c.to_string()).collect();

        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut names: Vec<String> = Vec::new();
        let intern = |label: &str, names: &mut Vec<String>, ids: &mut BTreeMap<String, usize>| {
            if let Some(&id) = ids.get(label) {
                id
            } else {
                let id = names.len();
                names.push(label.to_string());
                ids.insert(label.to_string(), id);
                id
            }
        };

        let mut records = Vec::new();
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split(sep).map(|f| f.trim()).collect();
            if fields.len() != cols.len() {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("expected {} fields, got {}", cols.len(), fields.len()),
                });
            }
            let s = intern(fields[0], &mut names, &mut ids);
            let t = intern(fields[1], &mut names, &mut ids);
            let w: f64 = fields[2].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("bad weight '{}'", fields[2]),
            })?;
            let mut attrs = Vec::with_capacity(attr_names.len());
            for f in &fields[3..] {
                attrs.push(f.parse().map_err(|_| GraphError::Parse {
                    line: lineno,
                    msg: format!("bad attribute value '{f}'"),
                })?);
            }
            records.push(EdgeRecord {
                source: s,
                target: t,
                weight: w,
                attrs,
            });
        }

        let n = names.len();
        Self::from_records(n, records, &attr_names, Some(names), directed, options)
    }

    /// Serialize to the edge-list text format (inverse of
    /// [`parse_edge_list`](Self::parse_edge_list)). Floats use 17
    /// significant digits so the round-trip is exact.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut header = String::from("source,target,weight");
        for name in self.attrs.keys() {
            header.push(',');
            header.push_str(name);
        }
        out.push_str(&header);
        out.push('\n');
        for (idx, e) in self.edges.iter().enumerate() {
            let _ = write!(
                out,
                "{},{},{:.16e}",
                self.node_label(e.source as usize),
                self.node_label(e.target as usize),
                e.weight
            );
            for col in self.attrs.values() {
                let _ = write!(out, ",{:.16e}", col[idx]);
            }
            out.push('\n');
        }
        out
    }
}
