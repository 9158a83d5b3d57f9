//! Interlevel filtered homology `H_k^{(a,b]} = H_k(C^b / C^a)` by brute force.
//!
//! Because the filtration of a chain is the maximum over its support, the
//! quotient `C^{(a,b]}` has the generators with `a < ℓ(x) ≤ b` as a basis and
//! its boundary is the restriction of `D`. All vectors here live in the
//! global coordinates of one degree; a window acts as a coordinate mask.
//! The structure map between windows `w1 ≤ w2` is then the mask of `w2`
//! (identity on surviving generators, zero on those that fell below `a2`).

mod exactness;
mod rank_table;
mod sweep;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{FilteredComplex, Window};
use crate::gf2::{BitMatrix, BitVec, Span};

pub use exactness::{
    check_middle_exactness, check_weak_exactness, ExactnessCondition, ExactnessError,
    ExactnessFailure, Quad,
};
pub use rank_table::{critical_grid, rank_table, MapRank, RankBudget, RankTable, WindowDim};
pub use sweep::{exactness_sweep, ExactnessSweep};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterlevelError {
    #[error("windows {from} and {to} are not comparable")]
    NotComparable { from: Window, to: Window },
    #[error("comparison shift must be non-negative, got {0}")]
    NegativeShift(f64),
}

/// Presentation of `H_k` of one window.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    pub window: Window,
    pub degree: i32,
    /// Basis of the cycles of `C_k^{(a,b]}`, in degree-`k` coordinates.
    pub cycle_basis: Vec<BitVec>,
    /// Boundaries `∂ C_{k+1}^{(a,b]}` restricted to the window.
    pub boundary_span: Span,
    pub dimension: usize,
}

#[derive(Debug, Clone)]
struct DegreeData {
    filtration: Vec<f64>,
    lower_filtration: Vec<f64>,
    upper_filtration: Vec<f64>,
    /// `D_k`, `n_{k-1} × n_k`.
    down: BitMatrix,
    /// `D_{k+1}`, `n_k × n_{k+1}`.
    up: BitMatrix,
}

fn mask_of(filtration: &[f64], w: &Window) -> BitVec {
    BitVec::from_indices(
        filtration.len(),
        filtration
            .iter()
            .enumerate()
            .filter(|(_, &t)| w.contains(t))
            .map(|(i, _)| i),
    )
}

/// A complex prepared for repeated interlevel queries.
#[derive(Debug, Clone)]
pub struct Interlevel {
    degrees: BTreeMap<i32, DegreeData>,
}

impl Interlevel {
    pub fn new(c: &FilteredComplex) -> Self {
        let mut degrees = BTreeMap::new();
        let ks: Vec<i32> = c.degrees().collect();
        if let (Some(&lo), Some(&hi)) = (ks.first(), ks.last()) {
            for k in lo..=hi + 1 {
                degrees.insert(
                    k,
                    DegreeData {
                        filtration: c.filtrations(k),
                        lower_filtration: c.filtrations(k - 1),
                        upper_filtration: c.filtrations(k + 1),
                        down: c.boundary(k),
                        up: c.boundary(k + 1),
                    },
                );
            }
        }
        Interlevel { degrees }
    }

    fn data(&self, k: i32) -> Option<&DegreeData> {
        self.degrees.get(&k)
    }

    /// Number of degree-`k` generators (the ambient length of chain vectors).
    pub fn rank(&self, k: i32) -> usize {
        self.data(k).map_or(0, |d| d.filtration.len())
    }

    /// Coordinates of degree-`k` generators inside `w`.
    pub fn mask(&self, k: i32, w: &Window) -> BitVec {
        match self.data(k) {
            Some(d) => mask_of(&d.filtration, w),
            None => BitVec::zeros(0),
        }
    }

    pub fn homology(&self, k: i32, w: Window) -> HomologyPresentation {
        let Some(d) = self.data(k) else {
            return HomologyPresentation {
                window: w,
                degree: k,
                cycle_basis: Vec::new(),
                boundary_span: Span::new(0),
                dimension: 0,
            };
        };
        let n = d.filtration.len();
        let inside: Vec<usize> = (0..n).filter(|&j| w.contains(d.filtration[j])).collect();
        let lower_mask = mask_of(&d.lower_filtration, &w);
        let restricted = BitMatrix::from_columns(
            d.down.rows(),
            inside
                .iter()
                .map(|&j| d.down.column(j).masked(&lower_mask))
                .collect(),
        )
        .expect("restricted columns keep the row count");
        let cycle_basis: Vec<BitVec> = restricted
            .kernel_basis()
            .into_iter()
            .map(|v| BitVec::from_indices(n, v.ones().map(|t| inside[t])))
            .collect();
        let mask = mask_of(&d.filtration, &w);
        let mut boundary_span = Span::new(n);
        for (j, &t) in d.upper_filtration.iter().enumerate() {
            if w.contains(t) {
                boundary_span.insert(&d.up.column(j).masked(&mask));
            }
        }
        let dimension = cycle_basis.len().saturating_sub(boundary_span.dim());
        HomologyPresentation {
            window: w,
            degree: k,
            cycle_basis,
            boundary_span,
            dimension,
        }
    }

    /// Cycles of `from`, pushed into the chain coordinates of `to`.
    pub fn push_cycles(&self, from: &HomologyPresentation, to: &Window) -> Vec<BitVec> {
        let mask = self.mask(from.degree, to);
        from.cycle_basis.iter().map(|z| z.masked(&mask)).collect()
    }

    /// Rank of `H_k^{from} → H_k^{to}`; the caller guarantees comparability.
    pub fn map_rank(&self, from: &HomologyPresentation, to: &HomologyPresentation) -> usize {
        let mut span = to.boundary_span.clone();
        self.push_cycles(from, &to.window)
            .iter()
            .filter(|z| span.insert(z))
            .count()
    }

    pub fn structure_map_rank(
        &self,
        k: i32,
        w1: Window,
        w2: Window,
    ) -> Result<usize, InterlevelError> {
        if !w1.le(&w2) {
            return Err(InterlevelError::NotComparable { from: w1, to: w2 });
        }
        let h1 = self.homology(k, w1);
        let h2 = self.homology(k, w2);
        Ok(self.map_rank(&h1, &h2))
    }
}

/// Sorted, deduplicated filtration values of all generators.
pub fn critical_values(c: &FilteredComplex) -> Vec<f64> {
    let mut v: Vec<f64> = c.all_generators().map(|g| g.filtration).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

pub fn interlevel_homology(c: &FilteredComplex, k: i32, w: Window) -> HomologyPresentation {
    Interlevel::new(c).homology(k, w)
}

pub fn structure_map_rank(
    c: &FilteredComplex,
    k: i32,
    w1: Window,
    w2: Window,
) -> Result<usize, InterlevelError> {
    Interlevel::new(c).structure_map_rank(k, w1, w2)
}

/// Rank of the comparison map `(a, b] → (a + d, b + d]`.
pub fn comparison_rank(
    c: &FilteredComplex,
    k: i32,
    w: Window,
    d: f64,
) -> Result<usize, InterlevelError> {
    if d < 0.0 || d.is_nan() {
        return Err(InterlevelError::NegativeShift(d));
    }
    Interlevel::new(c).structure_map_rank(k, w, Window::new(w.a + d, w.b + d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{fixture_h_sphere, fixture_heart_circle, fixture_torus, FilteredComplex};

    const NEG: f64 = f64::NEG_INFINITY;
    const POS: f64 = f64::INFINITY;

    fn w(a: f64, b: f64) -> Window {
        Window::new(a, b)
    }

    #[test]
    fn critical_value_examples() {
        assert_eq!(critical_values(&fixture_torus()), vec![1.0, 2.0, 3.0, 4.0]);
        assert!(critical_values(&FilteredComplex::zero()).is_empty());
        let c = FilteredComplex::builder()
            .generator("a", 0, 7.0)
            .generator("b", 1, 7.0)
            .build()
            .unwrap();
        assert_eq!(critical_values(&c), vec![7.0]);
    }

    #[test]
    fn homology_examples() {
        let heart = fixture_heart_circle();
        assert_eq!(interlevel_homology(&heart, 0, w(1.5, 2.5)).dimension, 1);
        for c in [fixture_torus(), heart.clone(), fixture_h_sphere()] {
            for k in 0..3 {
                assert_eq!(interlevel_homology(&c, k, w(3.0, 2.0)).dimension, 0);
            }
        }
        assert_eq!(
            interlevel_homology(&fixture_torus(), 1, w(NEG, POS)).dimension,
            2
        );
    }

    #[test]
    fn structure_map_examples() {
        let heart = fixture_heart_circle();
        let h = interlevel_homology(&heart, 0, w(1.5, 2.5));
        assert_eq!(
            structure_map_rank(&heart, 0, w(1.5, 2.5), w(1.5, 2.5)).unwrap(),
            h.dimension
        );
        assert_eq!(
            structure_map_rank(&heart, 0, w(1.5, 2.5), w(2.5, 3.5)).unwrap(),
            0
        );
        assert_eq!(
            structure_map_rank(&fixture_torus(), 0, w(NEG, 1.0), w(NEG, 4.0)).unwrap(),
            1
        );
        assert!(matches!(
            structure_map_rank(&heart, 0, w(1.0, 3.0), w(0.0, 4.0)),
            Err(InterlevelError::NotComparable { .. })
        ));
    }

    #[test]
    fn comparison_examples() {
        let heart = fixture_heart_circle();
        let dim = interlevel_homology(&heart, 0, w(1.5, 2.5)).dimension;
        assert_eq!(comparison_rank(&heart, 0, w(1.5, 2.5), 0.0).unwrap(), dim);
        assert_eq!(comparison_rank(&heart, 0, w(1.5, 2.5), 0.4).unwrap(), 1);
        assert_eq!(comparison_rank(&heart, 0, w(1.5, 2.5), 1.0).unwrap(), 0);
        assert!(comparison_rank(&heart, 0, w(1.5, 2.5), -0.1).is_err());
    }

    #[test]
    fn h_sphere_degree_one_window() {
        assert_eq!(
            interlevel_homology(&fixture_h_sphere(), 1, w(2.5, 3.5)).dimension,
            1
        );
    }
}
