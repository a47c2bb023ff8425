//! Directed clustering: the four Fagiolo modes plus total, for the
//! binary, Barrat, Onnela, Zhang--Horvath, and continuous definitions.
//!
//! Numerators are diagonal entries of sparse matrix products, computed
//! here by directed triangle walks; denominators come from node-level
//! sums ([`crate::weights::NodeStats`]). The independent pair-enumeration
//! route lives in [`crate::oracle`].

use crate::clustering::{IntensityPair, Method};
use crate::error::GraphError;
use crate::util::pairwise_sum;
use crate::weights::{pow13, pow23, NodeStats, NormalizedWeights};

/// Directed triangle pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Cycle,
    Middleman,
    FanIn,
    FanOut,
    /// Sum of the four partial modes (numerator and denominator each).
    Total,
}

impl Mode {
    pub const PARTIAL: [Mode; 4] = [Mode::Cycle, Mode::Middleman, Mode::FanIn, Mode::FanOut];
    pub const ALL: [Mode; 5] = [
        Mode::Cycle,
        Mode::Middleman,
        Mode::FanIn,
        Mode::FanOut,
        Mode::Total,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Cycle => "cycle",
            Mode::Middleman => "middleman",
            Mode::FanIn => "fan-in",
            Mode::FanOut => "fan-out",
            Mode::Total => "total",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "cycle" => Some(Mode::Cycle),
            "middleman" => Some(Mode::Middleman),
            "fan-in" | "fan_in" => Some(Mode::FanIn),
            "fan-out" | "fan_out" => Some(Mode::FanOut),
            "total" => Some(Mode::Total),
            _ => None,
        }
    }
}

/// Which denominator to use for Barrat's directed fan-in/fan-out.
///
/// The literal `s (s - 1)` form breaks consistency with the binary
/// definition whenever strengths are non-integer, so the form
/// `s * d - s` (which reduces to `d (d - 1)` on 0/1 weights) is the
/// default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BarratDenominator {
    #[default]
    ConsistencyPreserving,
    Literal,
}

#[inline]
fn transform(method: Method) -> fn(f64) -> f64 {
    match method {
        Method::Binary => |_| 1.0,
        Method::Onnela => pow13,
        Method::Zhang => |w| w,
        Method::Continuous => pow23,
        // callers reject Barrat/Miyajima before reaching here
        _ => unreachable!("no single weight transform for this method"),
    }
}

/// Walks realizing one directed mode at node `i`, yielding the three
/// weights `(first leg, second leg, closing edge)` of each pattern
/// instance (ordered pairs, so each geometric triangle contributes
/// twice across the relevant sums).
fn for_each_pattern<F: FnMut(f64, f64, f64)>(
    w: &NormalizedWeights,
    i: usize,
    mode: Mode,
    mut visit: F,
) {
    match mode {
        // (W W W)_ii = sum w_ij w_jk w_ki
        Mode::Cycle => {
            let (js, wij) = w.out_row(i);
            for (j, &w_ij) in js.iter().zip(wij) {
                let (ks, wjk) = w.out_row(*j as usize);
                for (k, &w_jk) in ks.iter().zip(wjk) {
                    let k = *k as usize;
                    if k != i && w.has_edge(k, i) {
                        visit(w_ij, w_jk, w.weight(k, i));
                    }
                }
            }
        }
        // (W W^T W)_ii = sum w_ij w_kj w_ki
        Mode::Middleman => {
            let (js, wij) = w.out_row(i);
            for (j, &w_ij) in js.iter().zip(wij) {
                let (ks, wkj) = w.in_row(*j as usize);
                for (k, &w_kj) in ks.iter().zip(wkj) {
                    let k = *k as usize;
                    if k != i && w.has_edge(k, i) {
                        visit(w_ij, w_kj, w.weight(k, i));
                    }
                }
            }
        }
        // (W^T W W)_ii = sum w_ji w_jk w_ki
        Mode::FanIn => {
            let (js, wji) = w.in_row(i);
            for (j, &w_ji) in js.iter().zip(wji) {
                let (ks, wjk) = w.out_row(*j as usize);
                for (k, &w_jk) in ks.iter().zip(wjk) {
                    let k = *k as usize;
                    if k != i && w.has_edge(k, i) {
                        visit(w_ji, w_jk, w.weight(k, i));
                    }
                }
            }
        }
        // (W W W^T)_ii = sum w_ij w_jk w_ik
        Mode::FanOut => {
            let (js, wij) = w.out_row(i);
            for (j, &w_ij) in js.iter().zip(wij) {
                let (ks, wjk) = w.out_row(*j as usize);
                for (k, &w_jk) in ks.iter().zip(wjk) {
                    let k = *k as usize;
                    if k != i && w.has_edge(i, k) {
                        visit(w_ij, w_jk, w.weight(i, k));
                    }
                }
            }
        }
        Mode::Total => unreachable!("Total handled by the caller"),
    }
}

fn numerator(w: &NormalizedWeights, i: usize, method: Method, mode: Mode) -> f64 {
    let mut terms = Vec::new();
    match method {
        Method::Barrat => barrat_numerator(w, i, mode, &mut terms),
        _ => {
            let f = transform(method);
            for_each_pattern(w, i, mode, |a, b, c| terms.push(f(a) * f(b) * f(c)));
        }
    }
    pairwise_sum(&terms)
}

/// Barrat triangle intensities mix one weight with two adjacency
/// indicators, so they do not fit the single-transform pattern above.
fn barrat_numerator(w: &NormalizedWeights, i: usize, mode: Mode, terms: &mut Vec<f64>) {
    match mode {
        // 1/2 [(W A^2)_ii + (A^2 W)_ii] = 1/2 sum (w_ij + w_ki) a_ij a_jk a_ki
        Mode::Cycle => for_each_pattern(w, i, Mode::Cycle, |w_ij, _, w_ki| {
            terms.push(0.5 * (w_ij + w_ki))
        }),
        // 1/2 [ (W A^T A)_ii + (W^T A A^T)_ii ]
        Mode::Middleman => {
            for_each_pattern(w, i, Mode::Middleman, |w_ij, _, _| terms.push(0.5 * w_ij));
            // (W^T A A^T)_ii = sum w_ji a_jk a_ik
            let (js, wji) = w.in_row(i);
            for (j, &w_ji) in js.iter().zip(wji) {
                let (ks, _) = w.out_row(*j as usize);
                for k in ks {
                    let k = *k as usize;
                    if k != i && w.has_edge(i, k) {
                        terms.push(0.5 * w_ji);
                    }
                }
            }
        }
        // 1/2 (W^T (A + A^T) A)_ii = 1/2 sum w_ji (a_jk + a_kj) a_ki
        Mode::FanIn => {
            for_each_pattern(w, i, Mode::FanIn, |w_ji, _, _| terms.push(0.5 * w_ji));
            // the a_kj half: k -> j, k -> i
            let (js, wji) = w.in_row(i);
            for (j, &w_ji) in js.iter().zip(wji) {
                let (ks, _) = w.in_row(*j as usize);
                for k in ks {
                    let k = *k as usize;
                    if k != i && w.has_edge(k, i) {
                        terms.push(0.5 * w_ji);
                    }
                }
            }
        }
        // 1/2 (W (A + A^T) A^T)_ii = 1/2 sum w_ij (a_jk + a_kj) a_ik
        Mode::FanOut => {
            for_each_pattern(w, i, Mode::FanOut, |w_ij, _, _| terms.push(0.5 * w_ij));
            let (js, wij) = w.out_row(i);
            for (j, &w_ij) in js.iter().zip(wij) {
                let (ks, _) = w.in_row(*j as usize);
                for k in ks {
                    let k = *k as usize;
                    if k != i && w.has_edge(i, k) {
                        terms.push(0.5 * w_ij);
                    }
                }
            }
        }
        Mode::Total => unreachable!(),
    }
}

fn denominator(st: &NodeStats, method: Method, mode: Mode, barrat: BarratDenominator) -> f64 {
    let (d_in, d_out) = (st.d_in as f64, st.d_out as f64);
    // When the binary pair count of the mode is 0 the weighted forms are
    // mathematically 0 too, but the closed forms carry rounding fuzz
    // like sqrt(a) sqrt(b) - sqrt(a b); keep the zero exact.
    let pairs = match mode {
        Mode::Cycle | Mode::Middleman => st.d_in * st.d_out - st.d_recip,
        Mode::FanIn => st.d_in.saturating_sub(1) * st.d_in,
        Mode::FanOut => st.d_out.saturating_sub(1) * st.d_out,
        Mode::Total => unreachable!(),
    };
    if pairs == 0 {
        return 0.0;
    }
    match (method, mode) {
        (Method::Binary | Method::Onnela, Mode::Cycle | Mode::Middleman) => {
            d_in * d_out - st.d_recip as f64
        }
        (Method::Binary | Method::Onnela, Mode::FanIn) => d_in * (d_in - 1.0),
        (Method::Binary | Method::Onnela, Mode::FanOut) => d_out * (d_out - 1.0),
        (Method::Barrat, Mode::Cycle | Mode::Middleman) => {
            0.5 * (st.s_in * d_out + st.s_out * d_in) - st.s_recip_barrat
        }
        (Method::Barrat, Mode::FanIn) => match barrat {
            BarratDenominator::ConsistencyPreserving => st.s_in * d_in - st.s_in,
            BarratDenominator::Literal => st.s_in * (st.s_in - 1.0),
        },
        (Method::Barrat, Mode::FanOut) => match barrat {
            BarratDenominator::ConsistencyPreserving => st.s_out * d_out - st.s_out,
            BarratDenominator::Literal => st.s_out * (st.s_out - 1.0),
        },
        (Method::Zhang, Mode::Cycle | Mode::Middleman) => st.s_in * st.s_out - st.s_recip_sq,
        (Method::Zhang, Mode::FanIn) => st.s_in * st.s_in - st.s_sq_in,
        (Method::Zhang, Mode::FanOut) => st.s_out * st.s_out - st.s_sq_out,
        (Method::Continuous, Mode::Cycle | Mode::Middleman) => {
            st.s_half_in * st.s_half_out - st.s_recip
        }
        (Method::Continuous, Mode::FanIn) => st.s_half_in * st.s_half_in - st.s_in,
        (Method::Continuous, Mode::FanOut) => st.s_half_out * st.s_half_out - st.s_out,
        _ => unreachable!("unsupported method/mode combination"),
    }
}

/// Triangle and triplet intensity of node `i` for one directed mode.
pub fn directed_intensities(
    w: &NormalizedWeights,
    i: usize,
    method: Method,
    mode: Mode,
) -> Result<IntensityPair, GraphError> {
    directed_intensities_with(w, i, method, mode, BarratDenominator::default())
}

/// As [`directed_intensities`], selecting the Barrat fan denominator.
pub fn directed_intensities_with(
    w: &NormalizedWeights,
    i: usize,
    method: Method,
    mode: Mode,
    barrat: BarratDenominator,
) -> Result<IntensityPair, GraphError> {
    if method == Method::MiyajimaHm {
        return Err(GraphError::InvalidParameter(
            "miyajima is only defined for undirected graphs".into(),
        ));
    }
    let st = w.stats(i);
    if let Mode::Total = mode {
        let mut triangle = 0.0;
        let mut triplet = 0.0;
        for m in Mode::PARTIAL {
            triangle += numerator(w, i, method, m);
            triplet += denominator(&st, method, m, barrat);
        }
        return Ok(IntensityPair { triangle, triplet });
    }
    Ok(IntensityPair {
        triangle: numerator(w, i, method, mode),
        triplet: denominator(&st, method, mode, barrat),
    })
}

/// Local directed clustering coefficient; `None` where the mode's
/// triplet intensity is 0.
pub fn directed_clustering(
    w: &NormalizedWeights,
    i: usize,
    method: Method,
    mode: Mode,
) -> Result<Option<f64>, GraphError> {
    Ok(directed_intensities(w, i, method, mode)?.coefficient())
}

/// Merged symmetric row of node `i`: neighbors of `i` in either
/// direction with `f(w_ij) + f(w_ji)`.
fn sym_row(w: &NormalizedWeights, i: usize, f: fn(f64) -> f64) -> Vec<(u32, f64)> {
    let (oc, ow) = w.out_row(i);
    let (ic, iw) = w.in_row(i);
    let mut row = Vec::with_capacity(oc.len() + ic.len());
    let (mut a, mut b) = (0usize, 0usize);
    while a < oc.len() || b < ic.len() {
        if b >= ic.len() || (a < oc.len() && oc[a] < ic[b]) {
            row.push((oc[a], f(ow[a])));
            a += 1;
        } else if a >= oc.len() || ic[b] < oc[a] {
            row.push((ic[b], f(iw[b])));
            b += 1;
        } else {
            row.push((oc[a], f(ow[a]) + f(iw[b])));
            a += 1;
            b += 1;
        }
    }
    row
}

/// `1/2 (F + F^T)^3_ii` for `F = f(W)` entrywise, by symmetric walks.
fn sym_triple_product(w: &NormalizedWeights, i: usize, f: fn(f64) -> f64) -> f64 {
    let mut terms = Vec::new();
    for (j, m_ij) in sym_row(w, i, f) {
        for (k, m_jk) in sym_row(w, j as usize, f) {
            let k = k as usize;
            if k == i {
                continue;
            }
            let m_ki = f(w.weight(k, i)) + f(w.weight(i, k));
            if m_ki > 0.0 {
                terms.push(m_ij * m_jk * m_ki);
            }
        }
    }
    0.5 * pairwise_sum(&terms)
}

/// Total directed Zhang--Horvath clustering from its closed form:
/// `1/2 (W + W^T)^3_ii / sum_{j != k} (w_ij + w_ji)(w_ik + w_ki)`.
/// Equals the sum-of-modes decomposition to 1e-12.
fn total_pair_count(st: &NodeStats) -> usize {
    2 * (st.d_in * st.d_out - st.d_recip)
        + st.d_in * st.d_in.saturating_sub(1)
        + st.d_out * st.d_out.saturating_sub(1)
}

pub fn total_clustering_zhang(w: &NormalizedWeights, i: usize) -> Option<f64> {
    if total_pair_count(&w.stats(i)) == 0 {
        return None;
    }
    let row = sym_row(w, i, |x| x);
    let s_tot: f64 = pairwise_sum(&row.iter().map(|&(_, m)| m).collect::<Vec<_>>());
    let sq: f64 = pairwise_sum(&row.iter().map(|&(_, m)| m * m).collect::<Vec<_>>());
    let triplet = s_tot * s_tot - sq;
    if triplet <= 0.0 {
        return None;
    }
    Some(sym_triple_product(w, i, |x| x) / triplet)
}

/// Total directed continuous clustering from its closed form:
/// numerator `1/2 (W^[2/3] + W^[2/3]T)^3_ii`, denominator
/// `(s^[1/2]_tot)^2 - s_tot - 2 s_recip`.
pub fn total_clustering_continuous(w: &NormalizedWeights, i: usize) -> Option<f64> {
    let st = w.stats(i);
    if total_pair_count(&st) == 0 {
        return None;
    }
    let s_half_tot = st.s_half_in + st.s_half_out;
    let triplet = s_half_tot * s_half_tot - st.s_tot - 2.0 * st.s_recip;
    if triplet <= 0.0 {
        return None;
    }
    Some(sym_triple_product(w, i, pow23) / triplet)
}

/// Global directed clustering for one mode: ratio of summed intensities
/// over all nodes. Only defined for zhang and continuous.
pub fn directed_global(
    w: &NormalizedWeights,
    method: Method,
    mode: Mode,
) -> Result<Option<f64>, GraphError> {
    if !matches!(method, Method::Zhang | Method::Continuous) {
        return Err(GraphError::InvalidParameter(format!(
            "global directed clustering is only defined for zhang and continuous, not {}",
            method.name()
        )));
    }
    let mut num = Vec::with_capacity(w.n_nodes());
    let mut den = Vec::with_capacity(w.n_nodes());
    for i in 0..w.n_nodes() {
        let p = directed_intensities(w, i, method, mode)?;
        num.push(p.triangle);
        den.push(p.triplet);
    }
    let den = pairwise_sum(&den);
    Ok(if den > 0.0 {
        Some(pairwise_sum(&num) / den)
    } else {
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BuildOptions, WeightedDigraph};

    fn directed(edges: &[(usize, usize, f64)]) -> NormalizedWeights {
        WeightedDigraph::from_edges(edges.iter().copied(), true, BuildOptions::default())
            .unwrap()
            .normalize()
            .unwrap()
    }

    fn three_cycle() -> NormalizedWeights {
        directed(&[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
    }

    fn reciprocal_triangle() -> NormalizedWeights {
        directed(&[
            (0, 1, 1.0),
            (1, 0, 1.0),
            (0, 2, 1.0),
            (2, 0, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
        ])
    }

    #[test]
    fn cycle_mode_on_three_cycle() {
        let w = three_cycle();
        let c = directed_clustering(&w, 0, Method::Binary, Mode::Cycle).unwrap();
        assert_eq!(c, Some(1.0));
    }

    #[test]
    fn fan_in_undefined_on_three_cycle() {
        let w = three_cycle();
        let c = directed_clustering(&w, 0, Method::Binary, Mode::FanIn).unwrap();
        assert_eq!(c, None);
    }

    #[test]
    fn middleman_zero_on_three_cycle() {
        let w = three_cycle();
        for m in [Method::Binary, Method::Zhang, Method::Continuous] {
            let c = directed_clustering(&w, 0, m, Mode::Middleman).unwrap();
            assert_eq!(c, Some(0.0), "{m:?}");
        }
    }

    #[test]
    fn reciprocal_triangle_total_is_one() {
        let w = reciprocal_triangle();
        for method in [
            Method::Binary,
            Method::Barrat,
            Method::Onnela,
            Method::Zhang,
            Method::Continuous,
        ] {
            for i in 0..3 {
                let c = directed_clustering(&w, i, method, Mode::Total)
                    .unwrap()
                    .unwrap();
                assert!((c - 1.0).abs() < 1e-14, "{method:?} node {i}: {c}");
            }
        }
        assert_eq!(total_clustering_zhang(&w, 0), Some(1.0));
        assert_eq!(total_clustering_continuous(&w, 0), Some(1.0));
    }

    #[test]
    fn total_closed_forms_match_mode_decomposition() {
        let w = directed(&[
            (0, 1, 0.7),
            (1, 0, 0.2),
            (1, 2, 0.9),
            (2, 0, 0.4),
            (0, 3, 0.8),
            (3, 1, 0.6),
            (2, 3, 0.1),
            (3, 2, 0.5),
        ]);
        for i in 0..4 {
            let pz = directed_intensities(&w, i, Method::Zhang, Mode::Total).unwrap();
            if let Some(direct) = total_clustering_zhang(&w, i) {
                let decomposed = pz.coefficient().unwrap();
                assert!((direct - decomposed).abs() < 1e-12, "zhang node {i}");
            }
            let pc = directed_intensities(&w, i, Method::Continuous, Mode::Total).unwrap();
            if let Some(direct) = total_clustering_continuous(&w, i) {
                let decomposed = pc.coefficient().unwrap();
                assert!((direct - decomposed).abs() < 1e-12, "continuous node {i}");
            }
        }
    }

    #[test]
    fn three_cycle_total_decomposition() {
        let w = three_cycle();
        let direct = total_clustering_zhang(&w, 0).unwrap();
        let dec = directed_intensities(&w, 0, Method::Zhang, Mode::Total)
            .unwrap()
            .coefficient()
            .unwrap();
        assert!((direct - dec).abs() < 1e-14);
    }

    #[test]
    fn binary_consistency_per_mode() {
        // 0/1 weights: every weighted method equals binary per mode.
        let w = directed(&[
            (0, 1, 1.0),
            (1, 0, 1.0),
            (1, 2, 1.0),
            (2, 0, 1.0),
            (0, 3, 1.0),
            (3, 1, 1.0),
            (3, 2, 1.0),
            (2, 3, 1.0),
        ]);
        for mode in Mode::ALL {
            for i in 0..4 {
                let bin = directed_clustering(&w, i, Method::Binary, mode).unwrap();
                for m in [
                    Method::Barrat,
                    Method::Onnela,
                    Method::Zhang,
                    Method::Continuous,
                ] {
                    let c = directed_clustering(&w, i, m, mode).unwrap();
                    match (bin, c) {
                        (Some(b), Some(v)) => {
                            assert!((b - v).abs() < 1e-12, "{m:?} {mode:?} node {i}")
                        }
                        (None, None) => {}
                        other => panic!("definedness mismatch {m:?} {mode:?} node {i}: {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn barrat_literal_denominator_differs_on_non_integer_strengths() {
        let w = directed(&[(1, 0, 0.5), (2, 0, 0.8), (1, 2, 0.9), (2, 1, 0.3)]);
        let def = directed_intensities_with(
            &w,
            0,
            Method::Barrat,
            Mode::FanIn,
            BarratDenominator::ConsistencyPreserving,
        )
        .unwrap();
        let lit = directed_intensities_with(
            &w,
            0,
            Method::Barrat,
            Mode::FanIn,
            BarratDenominator::Literal,
        )
        .unwrap();
        assert!((def.triplet - lit.triplet).abs() > 1e-6);
        let st = w.stats(0);
        assert!((def.triplet - (st.s_in * 2.0 - st.s_in)).abs() < 1e-15);
    }

    #[test]
    fn miyajima_rejected_for_directed_modes() {
        let w = three_cycle();
        assert!(directed_intensities(&w, 0, Method::MiyajimaHm, Mode::Cycle).is_err());
    }

    #[test]
    fn global_on_disjoint_reciprocal_triangles() {
        let w = directed(&[
            (0, 1, 1.0),
            (1, 0, 1.0),
            (0, 2, 1.0),
            (2, 0, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (3, 4, 1.0),
            (4, 3, 1.0),
            (3, 5, 1.0),
            (5, 3, 1.0),
            (4, 5, 1.0),
            (5, 4, 1.0),
        ]);
        for mode in Mode::ALL {
            for m in [Method::Zhang, Method::Continuous] {
                let g = directed_global(&w, m, mode).unwrap().unwrap();
                assert!((g - 1.0).abs() < 1e-14, "{m:?} {mode:?}");
            }
        }
    }

    #[test]
    fn transpose_duality() {
        let w = directed(&[
            (0, 1, 0.3),
            (1, 2, 0.9),
            (2, 0, 0.4),
            (0, 3, 0.8),
            (3, 1, 0.6),
            (1, 0, 0.2),
        ]);
        let t = w.transpose();
        // summation order differs between the two orientations, so
        // compare up to rounding
        let close = |a: Option<f64>, b: Option<f64>, what: &str| match (a, b) {
            (Some(x), Some(y)) => assert!((x - y).abs() < 1e-14, "{what}: {x} vs {y}"),
            (None, None) => {}
            other => panic!("definedness mismatch {what}: {other:?}"),
        };
        for i in 0..4 {
            for m in [Method::Binary, Method::Zhang, Method::Continuous, Method::Onnela] {
                let fi = directed_clustering(&w, i, m, Mode::FanIn).unwrap();
                let fo = directed_clustering(&t, i, m, Mode::FanOut).unwrap();
                close(fi, fo, &format!("{m:?} fan node {i}"));
                let c = directed_clustering(&w, i, m, Mode::Cycle).unwrap();
                let ct = directed_clustering(&t, i, m, Mode::Cycle).unwrap();
                close(c, ct, &format!("{m:?} cycle node {i}"));
            }
        }
    }
}
