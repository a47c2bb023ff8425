//! `wclust`: weighted clustering and closure analysis from the shell.
//!
//! Exit codes: 0 success, 2 input or configuration error, 3 degenerate
//! graph (no strictly positive weight).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wclust::closure::{ClosurePattern, ClosureStyle};
use wclust::clustering::Method;
use wclust::directed::{BarratDenominator, Mode};
use wclust::generators::{GeneratorKind, ScenarioConfig, WeightLaw};
use wclust::graph::BuildOptions;
use wclust::perturb::{perturb_epsilon, shuffle_weights, ShuffleScope};
use wclust::{GraphError, WeightedDigraph};

use wclust_cli::experiments::{run_shuffle_experiment, run_spurious_experiment};
use wclust_cli::export::{self, Format};
use wclust_cli::metrics::{closure_table, cluster_table};
use wclust_cli::report::compare;
use wclust_cli::threshold::threshold;

#[derive(Parser)]
#[command(name = "wclust", version, about = "Weighted clustering and closure analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file (header `source,target,weight[,attr...]`).
    #[arg(long)]
    input: PathBuf,
    /// Treat the input as a directed graph.
    #[arg(long, conflicts_with = "undirected")]
    directed: bool,
    /// Treat the input as an undirected graph (default).
    #[arg(long)]
    undirected: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Per-node clustering coefficients.
    Cluster {
        #[command(flatten)]
        input: InputArgs,
        /// Clustering definition (repeatable; default: all applicable).
        #[arg(long)]
        method: Vec<String>,
        /// Triangle mode (repeatable): undirected, cycle, middleman,
        /// fan-in, fan-out, total.
        #[arg(long)]
        mode: Vec<String>,
        /// Treat weights as already normalized (must lie in [0, 1]).
        #[arg(long)]
        raw: bool,
        /// Barrat fan denominator: default (consistency-preserving) or
        /// literal.
        #[arg(long = "barrat-denominator", default_value = "default")]
        barrat_denominator: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-node closure coefficients.
    Closure {
        #[command(flatten)]
        input: InputArgs,
        /// Closure style (repeatable): zhang, continuous. Default both.
        #[arg(long)]
        style: Vec<String>,
        /// Walk pattern (repeatable): undirected, cycle-out, cycle-in,
        /// fan-out, fan-in. Default: all applicable.
        #[arg(long)]
        pattern: Vec<String>,
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a synthetic graph and emit its edge list.
    Generate {
        /// Scenario config file (key=value lines).
        #[arg(long, conflicts_with_all = ["generator", "param"])]
        config: Option<PathBuf>,
        /// Generator name: core_periphery, watts_strogatz, erdos_renyi,
        /// scale_free.
        #[arg(long)]
        generator: Option<String>,
        /// Generator parameter as name=value (repeatable).
        #[arg(long)]
        param: Vec<String>,
        /// Weight law, e.g. uniform(0.5,1), constant(1), exponential(2).
        #[arg(long = "weight-law", default_value = "constant(1)")]
        weight_law: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Keep only edges whose attribute lies below a threshold.
    Threshold {
        #[command(flatten)]
        input: InputArgs,
        /// Attribute column to filter on (e.g. pvalue).
        #[arg(long)]
        attr: String,
        /// Keep edges with attribute strictly below this value.
        #[arg(long)]
        max: f64,
        /// Rescale the remaining weights so their maximum is 1.
        #[arg(long)]
        renormalize: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Add one epsilon-weight edge to the graph.
    Perturb {
        #[command(flatten)]
        input: InputArgs,
        /// Source node label.
        #[arg(long)]
        source: String,
        /// Target node label.
        #[arg(long)]
        target: String,
        /// Edge weight on the normalized scale.
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Shuffle edge weights (null model), or run the shuffle
    /// experiment when --realizations is given.
    Shuffle {
        #[command(flatten)]
        input: InputArgs,
        /// Shuffle scope: global or per-node-out.
        #[arg(long, default_value = "global")]
        scope: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the null-model experiment with this many shuffle
        /// realizations instead of emitting a shuffled graph.
        #[arg(long)]
        realizations: Option<usize>,
        /// Methods for the experiment (default: zhang, continuous).
        #[arg(long)]
        method: Vec<String>,
        /// Modes for the experiment (default: all directed modes).
        #[arg(long)]
        mode: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spurious-edge sensitivity experiment from a scenario config.
    Spurious {
        /// Scenario config file with a noise block.
        #[arg(long)]
        config: PathBuf,
        /// Methods to evaluate (default: barrat, onnela, zhang,
        /// continuous).
        #[arg(long)]
        method: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare two metric tables (R-squared, top-k retention, ranks).
    Compare {
        /// First metric CSV (reference).
        #[arg(long = "input-a")]
        input_a: PathBuf,
        /// Second metric CSV.
        #[arg(long = "input-b")]
        input_b: PathBuf,
        /// Restrict both tables to this method name.
        #[arg(long)]
        method: Option<String>,
        /// Restrict both tables to this mode name.
        #[arg(long)]
        mode: Option<String>,
        /// Also report the Spearman rank correlation.
        #[arg(long)]
        spearman: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::DegenerateWeights => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn bad(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn read_graph(input: &InputArgs) -> Result<WeightedDigraph, CliError> {
    let text = std::fs::read_to_string(&input.input)
        .map_err(|e| bad(format!("{}: {e}", input.input.display())))?;
    Ok(WeightedDigraph::parse_edge_list(
        &text,
        input.directed,
        BuildOptions::default(),
    )?)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| bad(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    Format::parse(s).ok_or_else(|| bad(format!("unknown format '{s}' (expected csv or json)")))
}

fn parse_methods(names: &[String], defaults: &[Method]) -> Result<Vec<Method>, CliError> {
    if names.is_empty() {
        return Ok(defaults.to_vec());
    }
    names
        .iter()
        .map(|n| Method::parse(n).ok_or_else(|| bad(format!("unknown method '{n}'"))))
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Cluster {
            input,
            method,
            mode,
            raw,
            barrat_denominator,
            seed,
            output,
        } => {
            let g = read_graph(&input)?;
            let format = parse_format(&output.format)?;
            let barrat = match barrat_denominator.as_str() {
                "default" | "consistency-preserving" => BarratDenominator::ConsistencyPreserving,
                "literal" => BarratDenominator::Literal,
                other => return Err(bad(format!("unknown barrat denominator '{other}'"))),
            };
            let default_methods: Vec<Method> = if g.directed() {
                Method::ALL
                    .into_iter()
                    .filter(|m| *m != Method::MiyajimaHm)
                    .collect()
            } else {
                Method::ALL.to_vec()
            };
            let methods = parse_methods(&method, &default_methods)?;
            let (undirected_mode, modes) = if mode.is_empty() {
                (!g.directed(), Mode::ALL.to_vec())
            } else if mode.iter().all(|m| m == "undirected") {
                (true, Vec::new())
            } else if mode.iter().any(|m| m == "undirected") {
                return Err(bad("mode 'undirected' cannot be mixed with directed modes"));
            } else {
                let parsed: Result<Vec<Mode>, CliError> = mode
                    .iter()
                    .map(|m| Mode::parse(m).ok_or_else(|| bad(format!("unknown mode '{m}'"))))
                    .collect();
                (false, parsed?)
            };
            let table = cluster_table(&g, &methods, &modes, undirected_mode, raw, barrat, seed)?;
            let text = match format {
                Format::Csv => export::metric_table_csv(&table),
                Format::Json => export::metric_table_json(&table),
            };
            write_output(output.output.as_deref(), &text)
        }
        Command::Closure {
            input,
            style,
            pattern,
            raw,
            seed,
            output,
        } => {
            let g = read_graph(&input)?;
            let format = parse_format(&output.format)?;
            let styles: Vec<ClosureStyle> = if style.is_empty() {
                vec![ClosureStyle::ZhangStyle, ClosureStyle::Continuous]
            } else {
                style
                    .iter()
                    .map(|s| {
                        ClosureStyle::parse(s).ok_or_else(|| bad(format!("unknown style '{s}'")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let patterns: Vec<ClosurePattern> = if pattern.is_empty() {
                if g.directed() {
                    ClosurePattern::ALL
                        .into_iter()
                        .filter(|p| *p != ClosurePattern::Undirected)
                        .collect()
                } else {
                    vec![ClosurePattern::Undirected]
                }
            } else {
                pattern
                    .iter()
                    .map(|p| {
                        ClosurePattern::parse(p)
                            .ok_or_else(|| bad(format!("unknown pattern '{p}'")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let table = closure_table(&g, &styles, &patterns, raw, seed)?;
            let text = match format {
                Format::Csv => export::metric_table_csv(&table),
                Format::Json => export::metric_table_json(&table),
            };
            write_output(output.output.as_deref(), &text)
        }
        Command::Generate {
            config,
            generator,
            param,
            weight_law,
            seed,
            output,
        } => {
            let cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| bad(format!("{}: {e}", path.display())))?;
                    ScenarioConfig::parse(&text)?
                }
                None => {
                    let kind = generator
                        .as_deref()
                        .and_then(GeneratorKind::parse)
                        .ok_or_else(|| bad("missing or unknown --generator"))?;
                    let mut params = BTreeMap::new();
                    for p in &param {
                        let (k, v) = p
                            .split_once('=')
                            .ok_or_else(|| bad(format!("bad --param '{p}', expected name=value")))?;
                        params.insert(
                            k.to_string(),
                            v.parse::<f64>()
                                .map_err(|_| bad(format!("bad --param value '{v}'")))?,
                        );
                    }
                    let law = WeightLaw::parse(&weight_law)
                        .ok_or_else(|| bad(format!("unparsable weight law '{weight_law}'")))?;
                    ScenarioConfig {
                        generator: kind,
                        params,
                        weight_law: law,
                        seed,
                        realizations: 1,
                        noise: None,
                    }
                }
            };
            let g = cfg.generate()?;
            write_output(output.output.as_deref(), &g.to_edge_list())
        }
        Command::Threshold {
            input,
            attr,
            max,
            renormalize,
            output,
        } => {
            let g = read_graph(&input)?;
            let t = threshold(&g, &attr, max, renormalize)?;
            write_output(output.output.as_deref(), &t.to_edge_list())
        }
        Command::Perturb {
            input,
            source,
            target,
            epsilon,
            output,
        } => {
            let g = read_graph(&input)?;
            let i = g
                .find_node(&source)
                .ok_or_else(|| bad(format!("unknown node '{source}'")))?;
            let v = g
                .find_node(&target)
                .ok_or_else(|| bad(format!("unknown node '{target}'")))?;
            if epsilon <= 0.0 {
                return Err(bad("epsilon must be positive"));
            }
            let p = perturb_epsilon(&g, i, v, epsilon)?;
            write_output(output.output.as_deref(), &p.to_edge_list())
        }
        Command::Shuffle {
            input,
            scope,
            seed,
            realizations,
            method,
            mode,
            output,
        } => {
            let g = read_graph(&input)?;
            let scope = ShuffleScope::parse(&scope)
                .ok_or_else(|| bad(format!("unknown scope '{scope}'")))?;
            match realizations {
                None => {
                    let s = shuffle_weights(&g, scope, seed);
                    write_output(output.output.as_deref(), &s.to_edge_list())
                }
                Some(n) => {
                    let methods =
                        parse_methods(&method, &[Method::Zhang, Method::Continuous])?;
                    let modes: Vec<Mode> = if mode.is_empty() {
                        Mode::ALL.to_vec()
                    } else {
                        mode.iter()
                            .map(|m| {
                                Mode::parse(m).ok_or_else(|| bad(format!("unknown mode '{m}'")))
                            })
                            .collect::<Result<_, _>>()?
                    };
                    let (points, summaries) =
                        run_shuffle_experiment(&g, scope, n, seed, &methods, &modes)?;
                    let mut text = format!(
                        "# graph_fingerprint={:016x}\n# seed={seed}\n# scope={}\n# realizations={n}\n",
                        g.fingerprint(),
                        scope.name()
                    );
                    for s in &summaries {
                        text.push_str(&format!(
                            "# summary method={} mode={} fraction_above={} n={} label={}\n",
                            s.method.name(),
                            s.mode.name(),
                            export::fmt_float(s.fraction_above),
                            s.n_nodes,
                            s.label
                        ));
                    }
                    text.push_str("node,method,mode,original,shuffled_mean\n");
                    for p in &points {
                        text.push_str(&format!(
                            "{},{},{},{},{}\n",
                            p.node,
                            p.method.name(),
                            p.mode.name(),
                            p.original.map(export::fmt_float).unwrap_or_default(),
                            p.shuffled_mean.map(export::fmt_float).unwrap_or_default(),
                        ));
                    }
                    write_output(output.output.as_deref(), &text)
                }
            }
        }
        Command::Spurious {
            config,
            method,
            output,
        } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| bad(format!("{}: {e}", config.display())))?;
            let cfg = ScenarioConfig::parse(&text)?;
            let methods = parse_methods(
                &method,
                &[
                    Method::Barrat,
                    Method::Onnela,
                    Method::Zhang,
                    Method::Continuous,
                ],
            )?;
            let outcomes = run_spurious_experiment(&cfg, &methods)?;
            let mut out = format!("# seed={}\n# realizations={}\n", cfg.seed, cfg.realizations);
            out.push_str("method,realization,r_squared\n");
            for o in &outcomes {
                for (t, r) in o.per_realization.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{t},{}\n",
                        o.method.name(),
                        export::fmt_float(*r)
                    ));
                }
                out.push_str(&format!(
                    "{},mean,{}\n",
                    o.method.name(),
                    export::fmt_float(o.mean_r_squared)
                ));
            }
            write_output(output.output.as_deref(), &out)
        }
        Command::Compare {
            input_a,
            input_b,
            method,
            mode,
            spearman,
            output,
        } => {
            let format = parse_format(&output.format)?;
            let load = |path: &Path| -> Result<Vec<(String, Option<f64>)>, CliError> {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| bad(format!("{}: {e}", path.display())))?;
                let rows = export::parse_metric_csv(&text).map_err(|e| bad(e))?;
                let filtered: Vec<_> = rows
                    .into_iter()
                    .filter(|(_, m, md, _)| {
                        method.as_deref().map_or(true, |f| f == m)
                            && mode.as_deref().map_or(true, |f| f == md)
                    })
                    .collect();
                let combos: std::collections::BTreeSet<(String, String)> = filtered
                    .iter()
                    .map(|(_, m, md, _)| (m.clone(), md.clone()))
                    .collect();
                if combos.len() > 1 {
                    return Err(bad(format!(
                        "{} holds {} method/mode combinations; select one with --method/--mode",
                        path.display(),
                        combos.len()
                    )));
                }
                Ok(filtered
                    .into_iter()
                    .map(|(node, _, _, v)| (node, v))
                    .collect())
            };
            let a = load(&input_a)?;
            let b = load(&input_b)?;
            let rep = compare(&a, &b, spearman)?;
            let text = match format {
                Format::Csv => export::report_csv(&rep, 0, None),
                Format::Json => export::report_json(&rep, 0, None),
            };
            write_output(output.output.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
