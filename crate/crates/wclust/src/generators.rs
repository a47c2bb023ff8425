//! Seeded synthetic graph generators and scenario configuration.
//!
//! All generators draw from a portable, seedable RNG (ChaCha12) with
//! one child stream per structural phase (topology, weights, rewiring,
//! noise, shuffling), so the same seed reproduces the same graph
//! byte-for-byte on any platform.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::GraphError;
use crate::graph::{BuildOptions, EdgeRecord, WeightedDigraph};

/// RNG stream per structural phase of a generation recipe.
#[derive(Debug, Clone, Copy)]
pub enum RngPhase {
    Topology = 0,
    Weights = 1,
    Rewire = 2,
    Noise = 3,
    Shuffle = 4,
}

/// Child RNG for one phase of a seeded recipe.
pub fn phase_rng(seed: u64, phase: RngPhase) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(phase as u64);
    rng
}

/// Edge-weight distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightLaw {
    Constant(f64),
    Uniform(f64, f64),
    /// Rate-parametrized: mean `1 / lambda`.
    Exponential(f64),
}

impl WeightLaw {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            WeightLaw::Constant(c) => c,
            WeightLaw::Uniform(a, b) => rng.gen_range(a..b),
            WeightLaw::Exponential(lambda) => {
                let u: f64 = rng.gen_range(0.0..1.0);
                -(1.0 - u).ln() / lambda
            }
        }
    }

    pub fn parse(s: &str) -> Option<WeightLaw> {
        let s = s.trim();
        let inner = |name: &str| -> Option<Vec<f64>> {
            let rest = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
            rest.split(',')
                .map(|p| p.trim().parse::<f64>().ok())
                .collect()
        };
        if let Some(v) = inner("constant") {
            if v.len() == 1 {
                return Some(WeightLaw::Constant(v[0]));
            }
        }
        if let Some(v) = inner("uniform") {
            if v.len() == 2 {
                return Some(WeightLaw::Uniform(v[0], v[1]));
            }
        }
        if let Some(v) = inner("exponential") {
            if v.len() == 1 {
                return Some(WeightLaw::Exponential(v[0]));
            }
        }
        None
    }

    pub fn to_config_string(&self) -> String {
        match *self {
            WeightLaw::Constant(c) => format!("constant({c})"),
            WeightLaw::Uniform(a, b) => format!("uniform({a},{b})"),
            WeightLaw::Exponential(l) => format!("exponential({l})"),
        }
    }
}

/// Which synthetic topology to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    CorePeriphery,
    WattsStrogatzDirected,
    ErdosRenyi,
    ScaleFree,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::CorePeriphery => "core_periphery",
            GeneratorKind::WattsStrogatzDirected => "watts_strogatz",
            GeneratorKind::ErdosRenyi => "erdos_renyi",
            GeneratorKind::ScaleFree => "scale_free",
        }
    }

    pub fn parse(s: &str) -> Option<GeneratorKind> {
        match s {
            "core_periphery" | "core-periphery" => Some(GeneratorKind::CorePeriphery),
            "watts_strogatz" | "watts-strogatz" | "watts_strogatz_directed" | "ws" => {
                Some(GeneratorKind::WattsStrogatzDirected)
            }
            "erdos_renyi" | "erdos-renyi" | "er" => Some(GeneratorKind::ErdosRenyi),
            "scale_free" | "scale-free" | "sf" => Some(GeneratorKind::ScaleFree),
        _ => None,
        }
    }
}

/// Noise overlay block of a scenario: spurious-edge topology and
/// weight law.
#[derive(Debug, Clone)]
pub struct NoiseBlock {
    pub generator: GeneratorKind,
    pub params: BTreeMap<String, f64>,
    pub weight_law: WeightLaw,
}

/// Reproducible experiment description: generator, parameters, weight
/// law, seed and optional noise block.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub generator: GeneratorKind,
    pub params: BTreeMap<String, f64>,
    pub weight_law: WeightLaw,
    pub seed: u64,
    pub realizations: usize,
    pub noise: Option<NoiseBlock>,
}

impl ScenarioConfig {
    /// Parse the flat `key=value` config format (one pair per line,
    /// `#` comments allowed).
    pub fn parse(text: &str) -> Result<ScenarioConfig, GraphError> {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(GraphError::Parse {
                line: lineno + 1,
                msg: "expected key=value".into(),
            })?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let bad = |msg: String| GraphError::InvalidParameter(msg);
        let generator = map
            .get("generator")
            .and_then(|s| GeneratorKind::parse(s))
            .ok_or_else(|| bad("missing or unknown generator".into()))?;
        let weight_law = map
            .get("weight_law")
            .and_then(|s| WeightLaw::parse(s))
            .ok_or_else(|| bad("missing or unparsable weight_law".into()))?;
        let seed = map
            .get("seed")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("missing or unparsable seed".into()))?;
        let realizations = match map.get("realizations") {
            Some(s) => s
                .parse()
                .map_err(|_| bad("unparsable realizations".into()))?,
            None => 10,
        };
        let mut params = BTreeMap::new();
        let mut noise_params = BTreeMap::new();
        for (k, v) in &map {
            if let Some(name) = k.strip_prefix("param.") {
                params.insert(
                    name.to_string(),
                    v.parse().map_err(|_| bad(format!("unparsable {k}")))?,
                );
            } else if let Some(name) = k.strip_prefix("noise.param.") {
                noise_params.insert(
                    name.to_string(),
                    v.parse().map_err(|_| bad(format!("unparsable {k}")))?,
                );
            }
        }
        let noise = match map.get("noise.generator") {
            Some(g) => Some(NoiseBlock {
                generator: GeneratorKind::parse(g)
                    .ok_or_else(|| bad(format!("unknown noise generator '{g}'")))?,
                params: noise_params,
                weight_law: map
                    .get("noise.weight_law")
                    .and_then(|s| WeightLaw::parse(s))
                    .ok_or_else(|| bad("missing or unparsable noise.weight_law".into()))?,
            }),
            None => None,
        };
        Ok(ScenarioConfig {
            generator,
            params,
            weight_law,
            seed,
            realizations,
            noise,
        })
    }

    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("generator={}\n", self.generator.name()));
        for (k, v) in &self.params {
            out.push_str(&format!("param.{k}={v}\n"));
        }
        out.push_str(&format!(
            "weight_law={}\n",
            self.weight_law.to_config_string()
        ));
        out.push_str(&format!("seed={}\n", self.seed));
        out.push_str(&format!("realizations={}\n", self.realizations));
        if let Some(noise) = &self.noise {
            out.push_str(&format!("noise.generator={}\n", noise.generator.name()));
            for (k, v) in &noise.params {
                out.push_str(&format!("noise.param.{k}={v}\n"));
            }
            out.push_str(&format!(
                "noise.weight_law={}\n",
                noise.weight_law.to_config_string()
            ));
        }
        out
    }

    fn param(&self, name: &str) -> Result<f64, GraphError> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::InvalidParameter(format!("missing param.{name}")))
    }

    /// Generate the ground-truth topology and apply the weight law.
    pub fn generate(&self) -> Result<WeightedDigraph, GraphError> {
        let g = generate_topology(self.generator, &self.params, self.seed)?;
        if self.generator == GeneratorKind::CorePeriphery {
            // weights are part of the core-periphery recipe
            return Ok(g);
        }
        Ok(apply_weight_law(&g, self.weight_law, self.seed))
    }

    /// Watts-Strogatz convenience accessors used by experiment drivers.
    pub fn n_nodes(&self) -> Result<usize, GraphError> {
        Ok(self.param("n")? as usize)
    }
}

/// Dispatch a topology generator by kind.
pub fn generate_topology(
    kind: GeneratorKind,
    params: &BTreeMap<String, f64>,
    seed: u64,
) -> Result<WeightedDigraph, GraphError> {
    let get = |name: &str| -> Result<f64, GraphError> {
        params
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::InvalidParameter(format!("missing param.{name}")))
    };
    match kind {
        GeneratorKind::CorePeriphery => Ok(gen_core_periphery(seed)),
        GeneratorKind::WattsStrogatzDirected => gen_watts_strogatz_directed(
            get("n")? as usize,
            get("k")? as usize,
            get("p")?,
            get("r")?,
            seed,
        ),
        GeneratorKind::ErdosRenyi => gen_erdos_renyi(get("n")? as usize, get("density")?, seed),
        GeneratorKind::ScaleFree => gen_scale_free(get("n")? as usize, get("m")? as usize, seed),
    }
}

/// Replace every edge weight by a draw from `law` (edge order fixed).
pub fn apply_weight_law(g: &WeightedDigraph, law: WeightLaw, seed: u64) -> WeightedDigraph {
    let mut rng = phase_rng(seed, RngPhase::Weights);
    let records: Vec<EdgeRecord> = g
        .edges()
        .iter()
        .map(|e| EdgeRecord::new(e.source as usize, e.target as usize, law.sample(&mut rng)))
        .collect();
    WeightedDigraph::from_records(
        g.n_nodes(),
        records,
        &[],
        g.node_names().map(|n| n.to_vec()),
        g.directed(),
        BuildOptions::default(),
    )
    .expect("rewriting weights preserves validity")
}

/// Core-periphery benchmark network: 1 central core node (CCN),
/// 10 outer-core nodes (OCN) on a ring with reciprocal links to their
/// 4 nearest neighbors plus reciprocal links to the CCN (weights
/// U(5, 10)); each PN connects to a block of 5 consecutive OCNs (so
/// every OCN receives a connection from half of the PNs, the block
/// start shifting with the PN index), reciprocated with probability
/// 0.5; PN pairs connect with Erdos-Renyi density 0.05. Periphery
/// weights are U(0.05, 0.5). Node roles are encoded in the node names
/// (`ccn`, `ocnXX`, `pnXX`).
pub fn gen_core_periphery(seed: u64) -> WeightedDigraph {
    const N_OCN: usize = 10;
    const N_PN: usize = 20;
    let ccn = 0usize;
    let ocn = |o: usize| 1 + o;
    let pn = |p: usize| 1 + N_OCN + p;
    let n = 1 + N_OCN + N_PN;

    let mut topo = phase_rng(seed, RngPhase::Topology);
    let mut weights = phase_rng(seed, RngPhase::Weights);

    let mut records: Vec<EdgeRecord> = Vec::new();
    let core_edge = |records: &mut Vec<EdgeRecord>, rng: &mut ChaCha12Rng, u: usize, v: usize| {
        records.push(EdgeRecord::new(u, v, rng.gen_range(5.0..10.0)));
        records.push(EdgeRecord::new(v, u, rng.gen_range(5.0..10.0)));
    };

    // OCN ring, reciprocal links to the 4 nearest neighbors.
    for o in 0..N_OCN {
        for d in 1..=2usize {
            let q = (o + d) % N_OCN;
            core_edge(&mut records, &mut weights, ocn(o), ocn(q));
        }
    }
    // OCN <-> CCN, reciprocal.
    for o in 0..N_OCN {
        core_edge(&mut records, &mut weights, ocn(o), ccn);
    }
    // PN -> OCN: a block of 5 consecutive OCNs per PN, so the PN's
    // outer-core neighborhood is densely interconnected on the ring;
    // reciprocated with probability 0.5.
    for p in 0..N_PN {
        for j in 0..5usize {
            let o = (p / 2 + j) % N_OCN;
            records.push(EdgeRecord::new(pn(p), ocn(o), weights.gen_range(0.05..0.5)));
            if topo.gen_bool(0.5) {
                records.push(EdgeRecord::new(ocn(o), pn(p), weights.gen_range(0.05..0.5)));
            }
        }
    }
    // PN -- PN Erdos-Renyi, density 0.05 per node pair.
    for p in 0..N_PN {
        for q in (p + 1)..N_PN {
            if topo.gen_bool(0.05) {
                records.push(EdgeRecord::new(pn(p), pn(q), weights.gen_range(0.05..0.5)));
            }
        }
    }

    let mut names = vec!["ccn".to_string()];
    names.extend((0..N_OCN).map(|o| format!("ocn{o:02}")));
    names.extend((0..N_PN).map(|p| format!("pn{p:02}")));

    WeightedDigraph::from_records(n, records, &[], Some(names), true, BuildOptions::default())
        .expect("core-periphery recipe emits a valid edge list")
}

/// Directed Watts-Strogatz: a ring lattice `L(N, k, r)` with
/// `N k / 2 * (1 + r)` edges (each of the `N k / 2` lattice pairs is
/// reciprocal with probability `r`), followed by rewiring each edge
/// with probability `p` to a uniformly chosen non-existing target.
/// Rewiring moves edges, never deletes them, so the edge count is
/// preserved. All weights are 1.
pub fn gen_watts_strogatz_directed(
    n: usize,
    k: usize,
    p: f64,
    r: f64,
    seed: u64,
) -> Result<WeightedDigraph, GraphError> {
    if k == 0 || k % 2 != 0 {
        return Err(GraphError::InvalidParameter(format!(
            "coordination number k must be even and positive, got {k}"
        )));
    }
    if k >= n {
        return Err(GraphError::InvalidParameter(format!("k = {k} >= N = {n}")));
    }
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&r) {
        return Err(GraphError::InvalidParameter(
            "p and r must lie in [0, 1]".into(),
        ));
    }

    let mut topo = phase_rng(seed, RngPhase::Topology);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n * k);
    let mut present: BTreeSet<(u32, u32)> = BTreeSet::new();
    let add = |edges: &mut Vec<(u32, u32)>, present: &mut BTreeSet<(u32, u32)>, u: u32, v: u32| {
        if present.insert((u, v)) {
            edges.push((u, v));
        }
    };
    for i in 0..n {
        for d in 1..=k / 2 {
            let j = (i + d) % n;
            let (u, v) = (i as u32, j as u32);
            let reciprocal = if r >= 1.0 {
                true
            } else if r <= 0.0 {
                false
            } else {
                topo.gen_bool(r)
            };
            if reciprocal {
                add(&mut edges, &mut present, u, v);
                add(&mut edges, &mut present, v, u);
            } else if topo.gen_bool(0.5) {
                add(&mut edges, &mut present, u, v);
            } else {
                add(&mut edges, &mut present, v, u);
            }
        }
    }

    let mut rewire = phase_rng(seed, RngPhase::Rewire);
    for idx in 0..edges.len() {
        if !rewire.gen_bool(p) {
            continue;
        }
        let (src, old) = edges[idx];
        // new target uniform among non-self, non-existing targets
        let mut tries = 0;
        loop {
            let t = rewire.gen_range(0..n as u32);
            if t != src && !present.contains(&(src, t)) {
                present.remove(&(src, old));
                present.insert((src, t));
                edges[idx] = (src, t);
                break;
            }
            tries += 1;
            if tries > 100 * n {
                break; // saturated out-neighborhood, keep the edge
            }
        }
    }

    WeightedDigraph::from_edges(
        edges.iter().map(|&(u, v)| (u as usize, v as usize, 1.0)),
        true,
        BuildOptions::default(),
    )
}

/// Directed Erdos-Renyi: every ordered pair present independently with
/// the given density. All weights are 1.
pub fn gen_erdos_renyi(n: usize, density: f64, seed: u64) -> Result<WeightedDigraph, GraphError> {
    if !(0.0 < density && density <= 1.0) {
        return Err(GraphError::InvalidParameter(format!(
            "density must lie in (0, 1], got {density}"
        )));
    }
    let mut topo = phase_rng(seed, RngPhase::Topology);
    let mut records = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && (density >= 1.0 || topo.gen_bool(density)) {
                records.push(EdgeRecord::new(i, j, 1.0));
            }
        }
    }
    WeightedDigraph::from_records(n, records, &[], None, true, BuildOptions::default())
}

/// Directed preferential attachment: each new node sends `m` out-edges
/// to distinct existing nodes chosen proportionally to total degree
/// plus one. All weights are 1.
pub fn gen_scale_free(n: usize, m: usize, seed: u64) -> Result<WeightedDigraph, GraphError> {
    if m == 0 || m >= n {
        return Err(GraphError::InvalidParameter(format!(
            "m must satisfy 1 <= m < N, got m = {m}, N = {n}"
        )));
    }
    let mut topo = phase_rng(seed, RngPhase::Topology);
    let mut records = Vec::new();
    let mut degree = vec![0usize; n];
    // seed clique among the first m + 1 nodes
    for i in 0..=m {
        for j in 0..=m {
            if i != j {
                records.push(EdgeRecord::new(i, j, 1.0));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    for i in (m + 1)..n {
        let mut targets: BTreeSet<usize> = BTreeSet::new();
        while targets.len() < m {
            // sample proportionally to degree + 1 among existing nodes
            let total: usize = degree[..i].iter().map(|&d| d + 1).sum();
            let mut pick = topo.gen_range(0..total);
            let mut chosen = 0;
            for (node, &d) in degree[..i].iter().enumerate() {
                let mass = d + 1;
                if pick < mass {
                    chosen = node;
                    break;
                }
                pick -= mass;
            }
            targets.insert(chosen);
        }
        for t in targets {
            records.push(EdgeRecord::new(i, t, 1.0));
            degree[i] += 1;
            degree[t] += 1;
        }
    }
    WeightedDigraph::from_records(n, records, &[], None, true, BuildOptions::default())
}
