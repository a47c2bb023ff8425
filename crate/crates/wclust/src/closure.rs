//! Local closure coefficients: the fraction of open length-2 walks
//! anchored at a node that are closed into a triangle, weighted either
//! in the Zhang--Horvath style (plain weight products) or in the
//! continuous style (geometric-mean intensities).
//!
//! Directed variants follow the four walk patterns: cycle-out (CO),
//! cycle-in (CI), fan-out (FO), fan-in (FI). Incoming variants are the
//! outgoing ones on the transposed graph.

use crate::error::GraphError;
use crate::util::pairwise_sum;
use crate::weights::{pow23, NormalizedWeights};

/// Weighting style of the closure coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosureStyle {
    /// Plain weight products; fully weighted but not continuous.
    ZhangStyle,
    /// Geometric-mean intensities; continuous in vanishing weights.
    Continuous,
}

impl ClosureStyle {
    pub fn name(self) -> &'static str {
        match self {
            ClosureStyle::ZhangStyle => "zhang",
            ClosureStyle::Continuous => "continuous",
        }
    }

    pub fn parse(s: &str) -> Option<ClosureStyle> {
        match s {
            "zhang" | "zhang_style" => Some(ClosureStyle::ZhangStyle),
            "continuous" => Some(ClosureStyle::Continuous),
            _ => None,
        }
    }
}

/// Walk pattern of the closure coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosurePattern {
    Undirected,
    CycleOut,
    CycleIn,
    FanOut,
    FanIn,
}

impl ClosurePattern {
    pub const ALL: [ClosurePattern; 5] = [
        ClosurePattern::Undirected,
        ClosurePattern::CycleOut,
        ClosurePattern::CycleIn,
        ClosurePattern::FanOut,
        ClosurePattern::FanIn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosurePattern::Undirected => "undirected",
            ClosurePattern::CycleOut => "cycle-out",
            ClosurePattern::CycleIn => "cycle-in",
            ClosurePattern::FanOut => "fan-out",
            ClosurePattern::FanIn => "fan-in",
        }
    }

    pub fn parse(s: &str) -> Option<ClosurePattern> {
        match s {
            "undirected" => Some(ClosurePattern::Undirected),
            "cycle-out" | "co" => Some(ClosurePattern::CycleOut),
            "cycle-in" | "ci" => Some(ClosurePattern::CycleIn),
            "fan-out" | "fo" => Some(ClosurePattern::FanOut),
            "fan-in" | "fi" => Some(ClosurePattern::FanIn),
            _ => None,
        }
    }
}

/// A closure definition: style plus walk pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosureVariant {
    pub style: ClosureStyle,
    pub pattern: ClosurePattern,
}

#[inline]
fn intensity(style: ClosureStyle, product: f64) -> f64 {
    match style {
        ClosureStyle::ZhangStyle => product,
        ClosureStyle::Continuous => pow23(product),
    }
}

/// Numerator over outgoing walks `i -> j -> k` on the working graph,
/// closed by `(k, i)` (cycle) or `(i, k)` (fan).
fn closed_walks(w: &NormalizedWeights, i: usize, style: ClosureStyle, fan: bool) -> f64 {
    let mut terms = Vec::new();
    let (js, wij) = w.out_row(i);
    for (j, &w_ij) in js.iter().zip(wij) {
        let (ks, wjk) = w.out_row(*j as usize);
        for (k, &w_jk) in ks.iter().zip(wjk) {
            let k = *k as usize;
            if k == i {
                continue;
            }
            let closing = if fan { w.weight(i, k) } else { w.weight(k, i) };
            if closing > 0.0 {
                terms.push(intensity(style, w_ij * w_jk * closing));
            }
        }
    }
    pairwise_sum(&terms)
}

/// Denominator: intensity of all open walks `i -> j -> k`, `k != i`.
/// The `j != k != i` exclusion subtracts the return walks `i -> j -> i`.
fn open_walks(w: &NormalizedWeights, i: usize, style: ClosureStyle) -> f64 {
    // the return walk i -> j -> i is excluded by skipping k == i rather
    // than subtracting it, so a pure return neighborhood yields an
    // exact 0 denominator
    let (js, wij) = w.out_row(i);
    let mut terms = Vec::with_capacity(js.len());
    for (j, &w_ij) in js.iter().zip(wij) {
        let (ks, wjk) = w.out_row(*j as usize);
        let onward: Vec<f64> = ks
            .iter()
            .zip(wjk)
            .filter(|(k, _)| **k as usize != i)
            .map(|(_, &x)| match style {
                ClosureStyle::ZhangStyle => x,
                ClosureStyle::Continuous => x.sqrt(),
            })
            .collect();
        terms.push(
            match style {
                ClosureStyle::ZhangStyle => w_ij,
                ClosureStyle::Continuous => w_ij.sqrt(),
            } * pairwise_sum(&onward),
        );
    }
    pairwise_sum(&terms)
}

/// Local closure coefficient of node `i`; `None` where the node anchors
/// no open walk of the pattern.
pub fn closure(
    w: &NormalizedWeights,
    i: usize,
    variant: ClosureVariant,
) -> Result<Option<f64>, GraphError> {
    match variant.pattern {
        ClosurePattern::Undirected => {
            if w.directed() {
                return Err(GraphError::InvalidParameter(
                    "undirected closure requires an undirected graph".into(),
                ));
            }
            closure_on(w, i, variant.style, false)
        }
        ClosurePattern::CycleOut => closure_on(w, i, variant.style, false),
        ClosurePattern::FanOut => closure_on(w, i, variant.style, true),
        ClosurePattern::CycleIn => closure_on(&w.transpose(), i, variant.style, false),
        ClosurePattern::FanIn => closure_on(&w.transpose(), i, variant.style, true),
    }
}

fn closure_on(
    w: &NormalizedWeights,
    i: usize,
    style: ClosureStyle,
    fan: bool,
) -> Result<Option<f64>, GraphError> {
    let den = open_walks(w, i, style);
    if den <= 0.0 {
        return Ok(None);
    }
    Ok(Some(closed_walks(w, i, style, fan) / den))
}

/// Closure for every node.
pub fn closure_all(
    w: &NormalizedWeights,
    variant: ClosureVariant,
) -> Result<Vec<Option<f64>>, GraphError> {
    (0..w.n_nodes()).map(|i| closure(w, i, variant)).collect()
}
