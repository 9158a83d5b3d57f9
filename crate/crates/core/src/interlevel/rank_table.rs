//! Dimensions and structure-map ranks over the critical grid.
//!
//! Every summand of the module is supported on a rectangle whose edges sit at
//! critical values (or at infinity) and is closed on its lower-left sides, so
//! dimensions and ranks are constant on the half-open cells of the critical
//! values. The grid samples each cell: the critical values themselves,
//! midpoints, one point below the minimum and one above the maximum, plus the
//! infinite ends `a = -∞` and `b = +∞`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{critical_values, HomologyPresentation, Interlevel};
use crate::complex::{FilteredComplex, Window};

/// Limits the number of window pairs whose map ranks are tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBudget {
    /// All comparable pairs are used when the grid has at most this many points.
    pub full_grid_limit: usize,
    /// Otherwise this many pairs are sampled.
    pub sample_pairs: usize,
    pub seed: u64,
}

impl Default for RankBudget {
    fn default() -> Self {
        RankBudget {
            full_grid_limit: 25,
            sample_pairs: 2000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowDim {
    pub window: Window,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapRank {
    pub from: Window,
    pub to: Window,
    pub rank: usize,
}

/// The rank invariant of `H_k` sampled on the critical grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub degree: i32,
    pub grid: Vec<f64>,
    pub dims: Vec<WindowDim>,
    pub hmap_ranks: Vec<MapRank>,
}

/// `[-∞, min-1, v0, (v0+v1)/2, v1, …, vn, max+1, +∞]`.
pub fn critical_grid(c: &FilteredComplex) -> Vec<f64> {
    let values = critical_values(c);
    let mut grid = vec![f64::NEG_INFINITY];
    if let (Some(&lo), Some(&hi)) = (values.first(), values.last()) {
        grid.push(lo - 1.0);
        for (i, &v) in values.iter().enumerate() {
            if i > 0 {
                grid.push((values[i - 1] + v) / 2.0);
            }
            grid.push(v);
        }
        grid.push(hi + 1.0);
    }
    grid.push(f64::INFINITY);
    grid
}

/// Non-empty windows `(a, b]` with both ends on the grid.
pub(crate) fn grid_windows(grid: &[f64]) -> Vec<Window> {
    let mut out = Vec::new();
    for &a in grid.iter().filter(|a| **a < f64::INFINITY) {
        for &b in grid.iter().filter(|b| **b > f64::NEG_INFINITY) {
            if a < b {
                out.push(Window::new(a, b));
            }
        }
    }
    out
}

/// Index pairs `(i, j)` with `windows[i] ≤ windows[j]`, `i ≠ j`, within the budget.
pub(crate) fn comparable_pairs(
    windows: &[Window],
    grid_len: usize,
    budget: &RankBudget,
) -> Vec<(usize, usize)> {
    let above: Vec<Vec<usize>> = windows
        .iter()
        .enumerate()
        .map(|(i, w)| {
            (0..windows.len())
                .filter(|&j| j != i && w.le(&windows[j]))
                .collect()
        })
        .collect();
    if grid_len <= budget.full_grid_limit {
        return above
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let sources: Vec<usize> = (0..windows.len())
        .filter(|&i| !above[i].is_empty())
        .collect();
    let mut out = Vec::with_capacity(budget.sample_pairs);
    while out.len() < budget.sample_pairs && !sources.is_empty() {
        let i = *sources.choose(&mut rng).expect("non-empty");
        let j = above[i][rng.gen_range(0..above[i].len())];
        out.push((i, j));
    }
    out
}

/// Presentations of every grid window, in the order of [`grid_windows`].
pub(crate) fn presentations(
    il: &Interlevel,
    k: i32,
    windows: &[Window],
) -> Vec<HomologyPresentation> {
    windows.par_iter().map(|w| il.homology(k, *w)).collect()
}

pub fn rank_table(c: &FilteredComplex, k: i32, budget: &RankBudget) -> RankTable {
    Interlevel::new(c).rank_table(k, critical_grid(c), budget)
}

impl Interlevel {
    /// The rank table of `H_k` over a precomputed grid.
    pub fn rank_table(&self, k: i32, grid: Vec<f64>, budget: &RankBudget) -> RankTable {
        let windows = grid_windows(&grid);
        let pres = presentations(self, k, &windows);
        let dims = windows
            .iter()
            .zip(&pres)
            .map(|(w, p)| WindowDim {
                window: *w,
                dim: p.dimension,
            })
            .collect();
        let hmap_ranks = comparable_pairs(&windows, grid.len(), budget)
            .into_par_iter()
            .map(|(i, j)| MapRank {
                from: windows[i],
                to: windows[j],
                rank: self.map_rank(&pres[i], &pres[j]),
            })
            .collect();
        RankTable {
            degree: k,
            grid,
            dims,
            hmap_ranks,
        }
    }
}

impl RankTable {
    pub fn dim(&self, w: &Window) -> Option<usize> {
        self.dims.iter().find(|d| d.window == *w).map(|d| d.dim)
    }
}
