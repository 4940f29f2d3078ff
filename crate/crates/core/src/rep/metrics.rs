use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::orbit::{edge_letter, index_range, orbit_path};
use super::Representation;
use crate::error::{Error, Result};
use crate::h3::{
    axis, classify_with, displacement, dist_to_geodesic, is_near_parabolic, loxodromic_length, H3Point, IsometryClass,
    ProductAccumulator, DEFAULT_TOL_PARABOLIC,
};
use crate::whitehead::enumerate_primitive_classes_with;
use crate::word::CyclicWord;

/// Orbit points sampled per class: `R` is the least integer with
/// `R >= MIN_REPETITIONS` and `m R >= MIN_PATH_EDGES`.
pub const MIN_PATH_EDGES: usize = 60;
pub const MIN_REPETITIONS: usize = 4;
pub const DEFAULT_WINDOW: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct PsParams {
    /// `None` picks the default for each word length.
    pub repetitions: Option<usize>,
    /// Minimum index separation for the slope estimate.
    pub window: usize,
    pub base_point: H3Point,
    pub tol_parabolic: f64,
    pub include_inversion: bool,
}

impl Default for PsParams {
    fn default() -> Self {
        PsParams {
            repetitions: None,
            window: DEFAULT_WINDOW,
            base_point: H3Point::origin(),
            tol_parabolic: DEFAULT_TOL_PARABOLIC,
            include_inversion: true,
        }
    }
}

impl PsParams {
    pub fn repetitions_for(&self, word_length: usize) -> usize {
        self.repetitions
            .unwrap_or_else(|| MIN_REPETITIONS.max(MIN_PATH_EDGES.div_ceil(word_length.max(1))))
    }
}

/// Quasi-geodesic diagnostics of one primitive line.
///
/// With vertices `p_j` of the orbit path, the line is `(K, δ)`-good when
/// `|i-j|/K - δ <= d(p_i, p_j) <= K |i-j| + δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsMetrics {
    #[serde(serialize_with = "as_string")]
    pub class: CyclicWord,
    pub word_length: usize,
    pub trace_class: IsometryClass,
    pub near_parabolic: bool,
    #[serde(serialize_with = "as_pair")]
    pub trace: Complex64,
    /// Zero unless `ρ(w)` is loxodromic.
    pub translation_length: f64,
    /// `min d(p_i, p_j) / |i-j|` over pairs with `|i-j| >= window`.
    pub slope_lower: f64,
    /// `max (|i-j| - d(p_i, p_j))` clamped at 0: the additive constant for
    /// `K = 1`.
    pub additive_defect: f64,
    /// Max distance of a vertex to the axis of `ρ(w)`; infinite when
    /// degenerate.
    #[serde(serialize_with = "finite_or_inf")]
    pub axis_margin: f64,
    /// Largest single-letter displacement of the base point, a valid upper
    /// `K` with `δ = 0`.
    pub slope_upper: f64,
    pub degenerate: bool,
    pub repetitions: usize,
}

fn as_string<S: serde::Serializer>(c: &CyclicWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn as_pair<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub(crate) fn finite_or_inf<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

pub fn ps_metrics(rho: &Representation, c: &CyclicWord, params: &PsParams) -> Result<PsMetrics> {
    let m = c.len();
    let repetitions = params.repetitions_for(m);
    let base = &params.base_point;
    let path = orbit_path(rho, c, repetitions, base)?;
    let (lo, hi) = index_range(m, repetitions);
    if params.window == 0 || params.window as i64 > hi - lo {
        return Err(Error::InvalidParameter(format!(
            "window {} must lie in 1..={} for this path",
            params.window,
            hi - lo
        )));
    }

    let holonomy = rho.evaluate(&c.to_word())?;
    let trace_class = classify_with(&holonomy, params.tol_parabolic);
    let degenerate = trace_class != IsometryClass::Loxodromic;

    // Pairs (i, j) and (i + m, j + m) are isometric images of each other, so
    // left endpoints in one period cover every separation the path offers.
    // Each distance is the displacement of the base point by the subword
    // between the two vertices, which stays accurate far from the base point.
    let mut slope_lower = f64::INFINITY;
    let mut additive_defect = 0.0f64;
    for i in lo..(lo + m as i64).min(hi) {
        let mut acc = ProductAccumulator::new();
        for j in i + 1..=hi {
            let g = acc.push(rho.image(edge_letter(c, j - 1)))?;
            let d = displacement(g, base);
            let sep = (j - i) as f64;
            if j - i >= params.window as i64 {
                slope_lower = slope_lower.min(d / sep);
            }
            additive_defect = additive_defect.max(sep - d);
        }
    }

    // the axis is ρ(w)-invariant, so one period of vertices attains the max
    let axis_margin = if degenerate {
        f64::INFINITY
    } else {
        let geodesic = axis(&holonomy)?;
        let mut margin = 0.0f64;
        for j in 0..m as i64 {
            let p = path.vertex(j).expect("period lies inside the path");
            margin = margin.max(dist_to_geodesic(p, &geodesic)?);
        }
        margin
    };

    let slope_upper = c
        .letters()
        .iter()
        .map(|&l| displacement(rho.image(l), base))
        .fold(0.0, f64::max);

    Ok(PsMetrics {
        class: c.clone(),
        word_length: m,
        trace_class,
        near_parabolic: is_near_parabolic(&holonomy),
        trace: holonomy.trace(),
        translation_length: if degenerate { 0.0 } else { loxodromic_length(&holonomy) },
        slope_lower,
        additive_defect,
        axis_margin,
        slope_upper,
        degenerate,
        repetitions,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsEntry {
    pub class: CyclicWord,
    pub outcome: std::result::Result<PsMetrics, Error>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthTrend {
    pub length: usize,
    pub classes: usize,
    pub min_slope: f64,
    #[serde(serialize_with = "finite_or_inf")]
    pub max_margin: f64,
    pub degenerate: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsSummary {
    pub classes: usize,
    pub min_slope: f64,
    #[serde(serialize_with = "finite_or_inf")]
    pub max_margin: f64,
    pub degenerate_count: usize,
    pub overflow_count: usize,
    pub by_length: Vec<LengthTrend>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsReport {
    pub rank: usize,
    pub max_length: usize,
    pub entries: Vec<PsEntry>,
    pub summary: PsSummary,
}

impl PsReport {
    pub fn metrics(&self) -> impl Iterator<Item = &PsMetrics> {
        self.entries.iter().filter_map(|e| e.outcome.as_ref().ok())
    }

    pub fn get(&self, class: &str) -> Option<&PsEntry> {
        self.entries.iter().find(|e| e.class.to_string() == class)
    }
}

/// Metrics for every primitive class up to `max_length`, in canonical
/// order. Classes are evaluated in parallel on the current rayon pool.
/// Numeric failures (overflow) are kept per entry.
pub fn ps_report(rho: &Representation, max_length: usize, params: &PsParams) -> Result<PsReport> {
    let classes = enumerate_primitive_classes_with(rho.rank(), max_length, params.include_inversion)?;
    let entries: Vec<PsEntry> = classes
        .into_par_iter()
        .map(|class| {
            let outcome = ps_metrics(rho, &class, params);
            PsEntry { class, outcome }
        })
        .collect();
    if let Some(PsEntry {
        outcome: Err(e @ Error::InvalidParameter(_)),
        ..
    }) = entries.first()
    {
        return Err(e.clone());
    }
    let summary = summarize(&entries);
    Ok(PsReport {
        rank: rho.rank(),
        max_length,
        entries,
        summary,
    })
}

fn summarize(entries: &[PsEntry]) -> PsSummary {
    let mut by_length: BTreeMap<usize, LengthTrend> = BTreeMap::new();
    let mut summary = PsSummary {
        classes: entries.len(),
        min_slope: f64::INFINITY,
        max_margin: 0.0,
        degenerate_count: 0,
        overflow_count: 0,
        by_length: Vec::new(),
    };
    for e in entries {
        let trend = by_length.entry(e.class.len()).or_insert(LengthTrend {
            length: e.class.len(),
            classes: 0,
            min_slope: f64::INFINITY,
            max_margin: 0.0,
            degenerate: 0,
        });
        trend.classes += 1;
        match &e.outcome {
            Ok(m) => {
                summary.min_slope = summary.min_slope.min(m.slope_lower);
                summary.max_margin = summary.max_margin.max(m.axis_margin);
                trend.min_slope = trend.min_slope.min(m.slope_lower);
                trend.max_margin = trend.max_margin.max(m.axis_margin);
                if m.degenerate {
                    summary.degenerate_count += 1;
                    trend.degenerate += 1;
                }
            }
            Err(_) => summary.overflow_count += 1,
        }
    }
    summary.by_length = by_length.into_values().collect();
    summary
}
