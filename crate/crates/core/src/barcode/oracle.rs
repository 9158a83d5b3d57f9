//! Rectangle multiplicities from structure-map ranks alone.
//!
//! For a module that splits into rectangles `[a1, a2) × [b1, b2)`, the rank of
//! the map from `x` to `y ≥ x` counts the rectangles with `(a1, b1) ≤ x` and
//! `y < (a2, b2)`. Each of the four edges is isolated by differencing across
//! it, one grid cell inside versus one outside, giving sixteen signed terms.

use std::collections::HashMap;

use crate::complex::{FilteredComplex, Window};
use crate::interlevel::{critical_values, HomologyPresentation, Interlevel};

/// Multiplicity queries for one degree of one complex, with cached presentations.
pub struct MultiplicityOracle {
    il: Interlevel,
    degree: i32,
    values: Vec<f64>,
    cache: HashMap<(u64, u64), HomologyPresentation>,
}

impl MultiplicityOracle {
    pub fn new(c: &FilteredComplex, degree: i32) -> Self {
        MultiplicityOracle {
            il: Interlevel::new(c),
            degree,
            values: critical_values(c),
            cache: HashMap::new(),
        }
    }

    /// A point strictly between `v` and the next critical value below it.
    fn below(&self, v: f64) -> f64 {
        if v == f64::INFINITY {
            return self.values.last().map_or(0.0, |m| m + 1.0);
        }
        match self.values.iter().rev().find(|&&p| p < v) {
            Some(&p) => (p + v) / 2.0,
            None => v - 1.0,
        }
    }

    fn presentation(&mut self, w: Window) -> &HomologyPresentation {
        let key = (w.a.to_bits(), w.b.to_bits());
        let (il, k) = (&self.il, self.degree);
        self.cache.entry(key).or_insert_with(|| il.homology(k, w))
    }

    fn rank(&mut self, x: Window, y: Window) -> i64 {
        if x.is_empty() || y.is_empty() {
            return 0;
        }
        let hx = self.presentation(x).clone();
        let hy = self.presentation(y).clone();
        self.il.map_rank(&hx, &hy) as i64
    }

    /// Multiplicity of `[left, corner) × [corner, top)`; `left` may be `-∞` and `top` `+∞`.
    pub fn multiplicity(&mut self, corner: f64, left: f64, top: f64) -> i64 {
        let l_out = self.below(left);
        let c_out = self.below(corner);
        let u_in = self.below(top);
        let mut total = 0;
        for mask in 0u32..16 {
            let step_left = mask & 1 != 0;
            let step_bottom = mask & 2 != 0;
            let step_right = mask & 4 != 0;
            let step_top = mask & 8 != 0;
            if (step_left && left == f64::NEG_INFINITY) || (step_top && top == f64::INFINITY) {
                continue;
            }
            let x = Window::new(
                if step_left { l_out } else { left },
                if step_bottom { c_out } else { corner },
            );
            let y = Window::new(
                if step_right { corner } else { c_out },
                if step_top { top } else { u_in },
            );
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            total += sign * self.rank(x, y);
        }
        total
    }
}

/// Multiplicity of `R(corner; corner - left, top - corner)` in `H_k`.
pub fn rectangle_multiplicity_oracle(
    c: &FilteredComplex,
    k: i32,
    corner: f64,
    left: f64,
    top: f64,
) -> i64 {
    MultiplicityOracle::new(c, k).multiplicity(corner, left, top)
}
