//! Checks a rectangle barcode against brute-force interlevel homology.

use std::fmt;

use rayon::prelude::*;

use super::RectangleBarcode;
use crate::complex::{FilteredComplex, Window};
use crate::extended::fmt_ext;
use crate::interlevel::{critical_grid, Interlevel, RankBudget};

#[derive(Debug, Clone, PartialEq)]
pub enum VerificationFailure {
    /// `dim H_k` of a grid window differs from the number of rectangles containing it.
    Dimension {
        degree: i32,
        a: f64,
        b: f64,
        expected: usize,
        counted: usize,
    },
    /// A structure-map rank differs from the number of rectangles containing both windows.
    MapRank {
        degree: i32,
        from: Window,
        to: Window,
        expected: usize,
        counted: usize,
    },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationFailure::Dimension {
                degree,
                a,
                b,
                expected,
                counted,
            } => write!(
                f,
                "degree {degree}, grid point ({}, {}): expected dim {expected}, counted {counted}",
                fmt_ext(*a),
                fmt_ext(*b)
            ),
            VerificationFailure::MapRank {
                degree,
                from,
                to,
                expected,
                counted,
            } => write!(
                f,
                "degree {degree}, map {from} -> {to}: expected rank {expected}, counted {counted}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub degrees_checked: usize,
    pub dims_checked: usize,
    pub maps_checked: usize,
    /// Every mismatch, dimensions first, in grid order per degree.
    pub failures: Vec<VerificationFailure>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_decomposition(c: &FilteredComplex, rb: &RectangleBarcode) -> VerificationReport {
    verify_decomposition_with(c, rb, &RankBudget::default())
}

pub fn verify_decomposition_with(
    c: &FilteredComplex,
    rb: &RectangleBarcode,
    budget: &RankBudget,
) -> VerificationReport {
    let mut degrees: Vec<i32> = c.degrees().chain(rb.degrees()).collect();
    degrees.sort();
    degrees.dedup();
    let il = Interlevel::new(c);
    let grid = critical_grid(c);

    let per_degree: Vec<VerificationReport> = degrees
        .par_iter()
        .map(|&k| {
            let table = il.rank_table(k, grid.clone(), budget);
            let mut report = VerificationReport {
                degrees_checked: 1,
                dims_checked: table.dims.len(),
                maps_checked: table.hmap_ranks.len(),
                failures: Vec::new(),
            };
            for d in &table.dims {
                let counted = rb.count_containing(k, d.window.a, d.window.b);
                if counted != d.dim {
                    report.failures.push(VerificationFailure::Dimension {
                        degree: k,
                        a: d.window.a,
                        b: d.window.b,
                        expected: d.dim,
                        counted,
                    });
                }
            }
            for m in &table.hmap_ranks {
                let counted = rb
                    .in_degree(k)
                    .filter(|r| r.contains(m.from.a, m.from.b) && r.contains(m.to.a, m.to.b))
                    .count();
                if counted != m.rank {
                    report.failures.push(VerificationFailure::MapRank {
                        degree: k,
                        from: m.from,
                        to: m.to,
                        expected: m.rank,
                        counted,
                    });
                }
            }
            report
        })
        .collect();

    per_degree
        .into_iter()
        .fold(VerificationReport::default(), |mut acc, r| {
            acc.degrees_checked += r.degrees_checked;
            acc.dims_checked += r.dims_checked;
            acc.maps_checked += r.maps_checked;
            acc.failures.extend(r.failures);
            acc
        })
}
