//! Undirected local and global clustering coefficients.
//!
//! Each definition is the ratio of a triangle intensity to a triplet
//! intensity, summed over ordered neighbor pairs `(j, k)`, `j != k`.
//! The ordered convention counts every geometric triangle twice; the
//! factor cancels in all ratios.
//!
//! The fast paths here use node-level sums for the denominators and a
//! neighbor-walk enumeration for the numerators; the independent
//! pair-enumeration route lives in [`crate::oracle`].

use crate::error::GraphError;
use crate::util::pairwise_sum;
use crate::weights::{pow13, pow23, NormalizedWeights};

/// Clustering definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Binary,
    Barrat,
    Onnela,
    Zhang,
    Continuous,
    MiyajimaHm,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Binary,
        Method::Barrat,
        Method::Onnela,
        Method::Zhang,
        Method::Continuous,
        Method::MiyajimaHm,
    ];

    /// Both numerator and denominator built from weights only.
    pub fn fully_weighted(self) -> bool {
        matches!(
            self,
            Method::Zhang | Method::Continuous | Method::MiyajimaHm
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Binary => "binary",
            Method::Barrat => "barrat",
            Method::Onnela => "onnela",
            Method::Zhang => "zhang",
            Method::Continuous => "continuous",
            Method::MiyajimaHm => "miyajima",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "binary" => Some(Method::Binary),
            "barrat" => Some(Method::Barrat),
            "onnela" => Some(Method::Onnela),
            "zhang" => Some(Method::Zhang),
            "continuous" => Some(Method::Continuous),
            "miyajima" | "miyajima_hm" => Some(Method::MiyajimaHm),
            _ => None,
        }
    }
}

/// Per-node triangle and triplet intensity; the coefficient is their
/// ratio and the pair is the unit of global aggregation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityPair {
    pub triangle: f64,
    pub triplet: f64,
}

impl IntensityPair {
    /// `triangle / triplet`, undefined when the triplet intensity is 0.
    pub fn coefficient(&self) -> Option<f64> {
        if self.triplet > 0.0 {
            Some(self.triangle / self.triplet)
        } else {
            None
        }
    }
}

/// Harmonic mean with the zero-weight limit convention: any zero (or
/// negative) argument yields 0.
#[inline]
pub(crate) fn harmonic_mean(a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        0.0
    } else {
        2.0 * a * b / (a + b)
    }
}

/// Triangle-intensity term of `method` for the ordered pair `(j, k)`.
#[inline]
pub(crate) fn triangle_term(method: Method, w_ij: f64, w_ik: f64, w_jk: f64) -> f64 {
    match method {
        Method::Binary => 1.0,
        Method::Barrat => 0.5 * (w_ij + w_ik),
        Method::Onnela => pow13(w_ij * w_ik * w_jk),
        Method::Zhang => w_ij * w_ik * w_jk,
        Method::Continuous => pow23(w_ij * w_ik * w_jk),
        Method::MiyajimaHm => harmonic_mean(harmonic_mean(w_ij, w_ik), w_jk),
    }
}

/// Numerator of the undirected definitions: sum of the method's
/// triangle-intensity terms over ordered neighbor pairs closed by an
/// edge, enumerated by walking `i -> j -> k` and testing `(i, k)`.
fn triangle_intensity(w: &NormalizedWeights, i: usize, method: Method) -> f64 {
    let mut terms = Vec::new();
    let (nbrs, ws) = w.out_row(i);
    for (j, &w_ij) in nbrs.iter().zip(ws) {
        let (nbrs2, ws2) = w.out_row(*j as usize);
        for (k, &w_jk) in nbrs2.iter().zip(ws2) {
            if *k as usize == i {
                continue;
            }
            if !w.has_edge(i, *k as usize) {
                continue;
            }
            let w_ik = w.weight(i, *k as usize);
            terms.push(triangle_term(method, w_ij, w_ik, w_jk));
        }
    }
    pairwise_sum(&terms)
}

/// Triangle and triplet intensity of node `i` under `method`.
pub fn local_intensities(w: &NormalizedWeights, i: usize, method: Method) -> IntensityPair {
    let st = w.stats(i);
    let d = st.d_out as f64;
    let triplet = match method {
        Method::Binary | Method::Onnela => d * (d - 1.0),
        Method::Barrat => st.s_out * (d - 1.0),
        Method::Zhang => st.s_out * st.s_out - st.s_sq_out,
        Method::Continuous => {
            // the closed form is mathematically 0 for degree < 2 but
            // carries (sqrt(w))^2 - w rounding fuzz; keep it exact
            if st.d_out < 2 {
                0.0
            } else {
                st.s_half_out * st.s_half_out - st.s_out
            }
        }
        Method::MiyajimaHm => {
            // No closed node-sum form; enumerate ordered neighbor pairs.
            let (_, ws) = w.out_row(i);
            let mut terms = Vec::new();
            for &w_ij in ws {
                for &w_ik in ws {
                    terms.push(harmonic_mean(harmonic_mean(w_ij, w_ik), 1.0));
                }
                // remove the j == k diagonal term
                terms.push(-harmonic_mean(harmonic_mean(w_ij, w_ij), 1.0));
            }
            pairwise_sum(&terms)
        }
    };
    let triangle = if triplet > 0.0 {
        triangle_intensity(w, i, method)
    } else {
        0.0
    };
    IntensityPair { triangle, triplet }
}

/// Local clustering coefficient of node `i`; `None` where undefined
/// (triplet intensity 0, e.g. degree < 2).
pub fn local_clustering(w: &NormalizedWeights, i: usize, method: Method) -> Option<f64> {
    local_intensities(w, i, method).coefficient()
}

/// Local clustering for every node.
pub fn clustering_all(w: &NormalizedWeights, method: Method) -> Vec<Option<f64>> {
    (0..w.n_nodes())
        .map(|i| local_clustering(w, i, method))
        .collect()
}

/// Global clustering as the ratio of summed intensities. Only defined
/// for the intensity-ratio definitions (Zhang and continuous).
pub fn global_clustering(w: &NormalizedWeights, method: Method) -> Result<Option<f64>, GraphError> {
    if !matches!(method, Method::Zhang | Method::Continuous) {
        return Err(GraphError::InvalidParameter(format!(
            "global clustering is only defined for zhang and continuous, not {}",
            method.name()
        )));
    }
    let pairs: Vec<IntensityPair> = (0..w.n_nodes())
        .map(|i| local_intensities(w, i, method))
        .collect();
    let num = pairwise_sum(&pairs.iter().map(|p| p.triangle).collect::<Vec<_>>());
    let den = pairwise_sum(&pairs.iter().map(|p| p.triplet).collect::<Vec<_>>());
    Ok(if den > 0.0 { Some(num / den) } else { None })
}

/// Mean of the defined local values; a separate statistic from
/// [`global_clustering`], offered for every method.
pub fn mean_local_clustering(w: &NormalizedWeights, method: Method) -> Option<f64> {
    let vals: Vec<f64> = (0..w.n_nodes())
        .filter_map(|i| local_clustering(w, i, method))
        .collect();
    if vals.is_empty() {
        None
    } else {
        Some(pairwise_sum(&vals) / vals.len() as f64)
    }
}
