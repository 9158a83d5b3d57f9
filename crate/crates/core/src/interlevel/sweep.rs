//! Exactness checks over every square of the critical grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    critical_grid, ExactnessError, ExactnessFailure, HomologyPresentation, Interlevel, Quad,
};
use crate::complex::{FilteredComplex, Window};

/// Squares per degree checked exhaustively; larger grids are sampled.
const EXHAUSTIVE_QUADS: usize = 20_000;
const SAMPLED_QUADS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExactnessSweep {
    pub weak_checked: usize,
    pub middle_checked: usize,
    pub failures: Vec<ExactnessFailure>,
}

impl ExactnessSweep {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Grid index quadruples `(a, a', b, b')` with `a ≤ a'` and `b ≤ b'`.
fn grid_quads(len: usize, seed: u64) -> Vec<[usize; 4]> {
    let pairs: Vec<(usize, usize)> = (0..len)
        .flat_map(|i| (i..len).map(move |j| (i, j)))
        .collect();
    if pairs.len() * pairs.len() <= EXHAUSTIVE_QUADS {
        return pairs
            .iter()
            .flat_map(|&(a, a2)| pairs.iter().map(move |&(b, b2)| [a, a2, b, b2]))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLED_QUADS)
        .map(|_| {
            let (a, a2) = pairs[rng.gen_range(0..pairs.len())];
            let (b, b2) = pairs[rng.gen_range(0..pairs.len())];
            [a, a2, b, b2]
        })
        .collect()
}

fn failure_of(r: Result<(), ExactnessError>) -> Option<ExactnessFailure> {
    match r {
        Err(ExactnessError::Failure(f)) => Some(f),
        _ => None,
    }
}

/// Weak exactness on every grid square and middle exactness on the admissible ones, in every degree.
pub fn exactness_sweep(c: &FilteredComplex, seed: u64) -> ExactnessSweep {
    let il = Interlevel::new(c);
    let grid = critical_grid(c);
    let g = grid.len();
    let quads = grid_quads(g, seed);
    let mut out = ExactnessSweep::default();
    for k in c.degrees() {
        let table: Vec<HomologyPresentation> = (0..g * g)
            .into_par_iter()
            .map(|i| il.homology(k, Window::new(grid[i / g], grid[i % g])))
            .collect();
        let at = |a: usize, b: usize| &table[a * g + b];
        let results: Vec<(bool, Vec<ExactnessFailure>)> = quads
            .par_iter()
            .map(|&[a, a2, b, b2]| {
                let quad = Quad::new(grid[a], grid[a2], grid[b], grid[b2]);
                let square = [at(a, b), at(a2, b), at(a, b2), at(a2, b2)];
                let mut failures: Vec<ExactnessFailure> =
                    failure_of(il.weak_exactness_of(k, &quad, square))
                        .into_iter()
                        .collect();
                let middle = a2 <= b;
                if middle {
                    failures.extend(failure_of(il.middle_exactness_of(k, &quad, square)));
                }
                (middle, failures)
            })
            .collect();
        out.weak_checked += results.len();
        for (middle, failures) in results {
            out.middle_checked += usize::from(middle);
            out.failures.extend(failures);
        }
    }
    out
}
