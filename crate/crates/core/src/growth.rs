//! Exchange-graph balls and growth classification.
//!
//! Vertices of the exchange graph are seeds up to permutation of cluster positions.
//! With principal coefficients a seed is determined by its C-matrix, so a seed is keyed
//! by its C-columns in sorted order, with `B` permuted to match.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::push_varint;
use crate::error::Result;
use crate::matrix::ExchangeMatrix;
use crate::seed::Seed;

/// Permutation-invariant identity of an exchange-graph vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexKey(pub Vec<u8>);

fn zigzag(x: i64) -> u64 {
    ((x << 1) ^ (x >> 63)) as u64
}

pub fn vertex_key(s: &Seed) -> VertexKey {
    let n = s.rank();
    let col = |j: usize| (0..n).map(move |i| s.c(i, j));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| col(x).cmp(col(y)));
    let mut out = Vec::with_capacity(2 * n * n + 1);
    push_varint(&mut out, n as u64);
    for &j in &order {
        for v in col(j) {
            push_varint(&mut out, zigzag(v));
        }
    }
    for &i in &order {
        for &j in &order {
            push_varint(&mut out, zigzag(s.b.get(i, j)));
        }
    }
    VertexKey(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Classification {
    Finite,
    Linear,
    Polynomial { degree: u32 },
    Exponential { ratio: f64 },
    Inconclusive,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Finite => write!(f, "Finite"),
            Classification::Linear => write!(f, "Linear"),
            Classification::Polynomial { degree } => write!(f, "Polynomial({degree})"),
            Classification::Exponential { ratio } => write!(f, "Exponential({ratio:.4})"),
            Classification::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Thresholds of the growth classifier.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GrowthParams {
    /// Minimum geometric-mean excess of successive ratios for exponential growth.
    pub delta: f64,
    /// Maximum variance of the tail log-ratios for exponential growth.
    pub variance: f64,
    /// Maximum distance of the log-log slope from an integer.
    pub slope_tolerance: f64,
    /// Fewer radii than this are inconclusive.
    pub min_radii: usize,
    /// Maximum coefficient of variation of a "constant" finite difference.
    pub flatness: f64,
    /// Highest polynomial degree tried by the difference test.
    pub max_degree: u32,
}

impl Default for GrowthParams {
    fn default() -> Self {
        Self { delta: 0.05, variance: 0.01, slope_tolerance: 0.25, min_radii: 6, flatness: 0.1, max_degree: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub family: Option<String>,
    pub radius: usize,
    /// `counts[r]` = distinct vertices at distance at most `r`.
    pub counts: Vec<u64>,
    pub classification: Classification,
    pub saturated: bool,
    /// Set when `max_vertices` stopped the search; `counts` then covers complete radii only.
    pub truncated: bool,
    pub vertices_visited: u64,
    pub wall_time_ms: u64,
    pub params: GrowthParams,
}

/// Counts of the ball of radius `radius` around the initial seed of `b`.
pub fn exchange_graph_ball(b: &ExchangeMatrix, radius: usize, max_vertices: usize) -> Result<GrowthReport> {
    exchange_graph_ball_with(b, radius, max_vertices, &GrowthParams::default())
}

pub fn exchange_graph_ball_with(
    b: &ExchangeMatrix,
    radius: usize,
    max_vertices: usize,
    params: &GrowthParams,
) -> Result<GrowthReport> {
    let start = Instant::now();
    let n = b.rank();
    let init = Seed::initial(b.clone());
    let mut seen: HashSet<VertexKey> = HashSet::new();
    seen.insert(vertex_key(&init));
    let mut frontier = vec![init];
    let mut counts = vec![1u64];
    let mut saturated = false;
    let mut truncated = false;

    for _ in 0..radius {
        if frontier.is_empty() {
            saturated = true;
            break;
        }
        let expand = |s: &Seed| -> Result<Vec<(VertexKey, Seed)>> {
            (1..=n)
                .map(|k| {
                    let t = s.mutate(k)?;
                    Ok((vertex_key(&t), t))
                })
                .collect()
        };
        let expanded: Vec<Vec<(VertexKey, Seed)>> = if frontier.len() >= 64 {
            frontier.par_iter().map(expand).collect::<Result<_>>()?
        } else {
            frontier.iter().map(expand).collect::<Result<_>>()?
        };
        let mut next = Vec::new();
        for (key, seed) in expanded.into_iter().flatten() {
            if seen.contains(&key) {
                continue;
            }
            if seen.len() >= max_vertices {
                truncated = true;
                break;
            }
            seen.insert(key);
            next.push(seed);
        }
        if truncated {
            break;
        }
        counts.push(seen.len() as u64);
        frontier = next;
    }
    if !truncated && frontier.is_empty() {
        saturated = true;
    }
    if saturated {
        // a saturated ball is constant from here on
        while counts.len() <= radius {
            counts.push(seen.len() as u64);
        }
    }
    Ok(GrowthReport {
        family: None,
        radius,
        classification: classify_growth_with(&counts, saturated, params),
        counts,
        saturated,
        truncated,
        vertices_visited: seen.len() as u64,
        wall_time_ms: start.elapsed().as_millis() as u64,
        params: *params,
    })
}

pub fn classify_growth(counts: &[u64], saturated: bool) -> Classification {
    classify_growth_with(counts, saturated, &GrowthParams::default())
}

/// Least-squares slope and residual sum of squares of `ys` against `xs`.
fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let rss = xs.iter().zip(ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    (slope, rss)
}

/// Smallest `d` whose `d`-th differences are positive and flat (coefficient of variation
/// at most `flatness`) over the window. Lower-order terms bias log-log slopes badly at
/// radii below 30; exact differences do not care about them.
fn difference_degree(window: &[u64], p: &GrowthParams) -> Option<u32> {
    let mut diffs: Vec<f64> = window.iter().map(|&c| c as f64).collect();
    for d in 1..=p.max_degree {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        if diffs.len() < 3 {
            return None;
        }
        let m = diffs.iter().sum::<f64>() / diffs.len() as f64;
        if m <= 0.0 {
            return None;
        }
        let sd = (diffs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / diffs.len() as f64).sqrt();
        if sd / m <= p.flatness {
            return Some(d);
        }
    }
    None
}

/// Tail-window classification. Exponential needs a steady ratio above `1 + delta` and a
/// log-linear fit that beats the log-log fit. Otherwise the degree is the order of the
/// first flat finite difference, falling back to the rounded log-log slope.
pub fn classify_growth_with(counts: &[u64], saturated: bool, p: &GrowthParams) -> Classification {
    if saturated {
        return Classification::Finite;
    }
    if counts.len() < p.min_radii || counts.contains(&0) {
        return Classification::Inconclusive;
    }
    let last = counts.len() - 1;
    let lo = (last / 2).max(1);
    let radii: Vec<usize> = (lo..=last).collect();
    let logc: Vec<f64> = radii.iter().map(|&r| (counts[r] as f64).ln()).collect();

    let log_ratios: Vec<f64> = logc.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = log_ratios.iter().sum::<f64>() / log_ratios.len() as f64;
    let var = log_ratios.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / log_ratios.len() as f64;
    let rs: Vec<f64> = radii.iter().map(|&r| r as f64).collect();
    let logr: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
    let (_, rss_exp) = fit(&rs, &logc);
    let (slope, rss_poly) = fit(&logr, &logc);

    let ratio = mean.exp();
    if ratio >= 1.0 + p.delta && var <= p.variance && rss_exp < rss_poly {
        return Classification::Exponential { ratio };
    }
    if let Some(degree) = difference_degree(&counts[lo..], p) {
        return if degree == 1 {
            Classification::Linear
        } else {
            Classification::Polynomial { degree }
        };
    }
    let degree = slope.round();
    if degree >= 1.0 && (slope - degree).abs() <= p.slope_tolerance {
        return if degree == 1.0 {
            Classification::Linear
        } else {
            Classification::Polynomial { degree: degree as u32 }
        };
    }
    Classification::Inconclusive
}
