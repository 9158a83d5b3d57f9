//! Numerical invariants read off a rectangle barcode, with a brute-force
//! cross-check of the spread through comparison-map ranks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::barcode::{RectType, RectangleBarcode};
use crate::complex::{FilteredComplex, Window};
use crate::interlevel::{critical_values, Interlevel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("no rectangle is witnessed by generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0:?} witnesses {1} rectangles")]
    AmbiguousGenerator(String, usize),
}

/// Corners of the type-S rectangles, sorted and deduplicated.
pub fn spectral_invariant_set(rb: &RectangleBarcode) -> Vec<f64> {
    let mut v: Vec<f64> = rb
        .rectangles()
        .iter()
        .filter(|r| r.rtype == RectType::S)
        .map(|r| r.c)
        .collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Largest finite `ell2` among type-B rectangles; 0 when there are none.
pub fn boundary_depth(rb: &RectangleBarcode) -> f64 {
    rb.rectangles()
        .iter()
        .filter(|r| r.rtype == RectType::B)
        .map(|r| r.ell2)
        .fold(0.0, f64::max)
}

/// Largest finite `ell1` among type-N rectangles; 0 when there are none.
pub fn non_cycle_depth(rb: &RectangleBarcode) -> f64 {
    rb.rectangles()
        .iter()
        .filter(|r| r.rtype == RectType::N)
        .map(|r| r.ell1)
        .fold(0.0, f64::max)
}

pub fn spectral_spread_generator(
    rb: &RectangleBarcode,
    generator: &str,
) -> Result<f64, InvariantError> {
    let hits: Vec<_> = rb
        .rectangles()
        .iter()
        .filter(|r| r.generator == generator)
        .collect();
    match hits.as_slice() {
        [] => Err(InvariantError::UnknownGenerator(generator.to_string())),
        [r] => Ok(r.min_length()),
        many => Err(InvariantError::AmbiguousGenerator(
            generator.to_string(),
            many.len(),
        )),
    }
}

/// Largest `min(ell1, ell2)`; 0 for the empty barcode.
pub fn spectral_spread(rb: &RectangleBarcode) -> f64 {
    rb.rectangles()
        .iter()
        .map(|r| r.min_length())
        .fold(0.0, f64::max)
}

/// Same as [`spectral_spread`] restricted to degree `k`.
pub fn spectral_spread_in_degree(rb: &RectangleBarcode, k: i32) -> f64 {
    rb.in_degree(k).map(|r| r.min_length()).fold(0.0, f64::max)
}

/// Supremum of the shifts `d` for which some comparison map `(a, b] → (a + d, b + d]`
/// in `H_k` is nonzero, found without the barcode.
///
/// Ranks are piecewise constant in `d` with jumps only at differences of
/// critical values, so each candidate `D` is probed just below itself.
pub fn spread_bruteforce(c: &FilteredComplex, k: i32) -> f64 {
    let values = critical_values(c);
    let (Some(&lo), Some(&hi)) = (values.first(), values.last()) else {
        return 0.0;
    };
    let il = Interlevel::new(c);
    let windows: Vec<Window> = std::iter::once(f64::NEG_INFINITY)
        .chain(values.iter().copied())
        .flat_map(|a| {
            values
                .iter()
                .filter(move |&&b| a < b)
                .map(move |&b| Window::new(a, b))
        })
        .collect();
    let presentations: Vec<_> = windows.iter().map(|w| il.homology(k, *w)).collect();
    let nonzero_at = |d: f64| {
        windows.iter().zip(&presentations).any(|(w, h)| {
            h.dimension > 0 && {
                let shifted = il.homology(k, Window::new(w.a + d, w.b + d));
                il.map_rank(h, &shifted) > 0
            }
        })
    };

    if nonzero_at(hi - lo + 1.0) {
        return f64::INFINITY;
    }
    let mut candidates: Vec<f64> = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        for &y in &values[i + 1..] {
            candidates.push(y - x);
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let gap = std::iter::once(0.0)
        .chain(candidates.iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .map(|p| p[1] - p[0])
        .fold(f64::INFINITY, f64::min);
    let eta = gap / 2.0;
    candidates
        .iter()
        .rev()
        .copied()
        .find(|&big_d| nonzero_at(big_d - eta))
        .unwrap_or(0.0)
}

/// All invariants of one barcode as a flat document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub spectral_set: Vec<f64>,
    #[serde(with = "crate::extended")]
    pub boundary_depth: f64,
    #[serde(with = "crate::extended")]
    pub non_cycle_depth: f64,
    #[serde(with = "crate::extended")]
    pub spread_global: f64,
    /// Keyed by generator name; names witnessing rectangles in several
    /// degrees are keyed `name@k`.
    #[serde(with = "crate::extended::map")]
    pub spread_per_generator: BTreeMap<String, f64>,
}

impl InvariantReport {
    pub fn new(rb: &RectangleBarcode) -> Self {
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        for r in rb.rectangles() {
            *count.entry(r.generator.as_str()).or_default() += 1;
        }
        let spread_per_generator = rb
            .rectangles()
            .iter()
            .map(|r| {
                let key = if count[r.generator.as_str()] > 1 {
                    format!("{}@{}", r.generator, r.degree)
                } else {
                    r.generator.clone()
                };
                (key, r.min_length())
            })
            .collect();
        InvariantReport {
            spectral_set: spectral_invariant_set(rb),
            boundary_depth: boundary_depth(rb),
            non_cycle_depth: non_cycle_depth(rb),
            spread_global: spectral_spread(rb),
            spread_per_generator,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
