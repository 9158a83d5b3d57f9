//! Decides δ-interleaving of two rectangle modules on a finite lattice.
//!
//! Unknowns are the scalars `F_x : I_x → J_{x+δ}` and `G_y : J_y → I_{y+δ}` at
//! lattice points where both ends are nonzero. Naturality along each lattice
//! step equates two unknowns or forces one to vanish, so it is solved by
//! union-find. The two triangle identities then read `F_x G_{x+δ} = [x, x+2δ ∈ I]`
//! and `G_y F_{y+δ} = [y, y+2δ ∈ J]`. Products required to be 1 force both
//! factors; setting every other component to 0 satisfies the remaining
//! products if anything does, so feasibility is decided exactly.

use thiserror::Error;

use crate::barcode::Rectangle;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("insufficient grid: {0}")]
    InsufficientGrid(String),
}

fn finite_endpoints(r1: &Rectangle, r2: &Rectangle) -> Vec<f64> {
    [r1, r2]
        .iter()
        .flat_map(|r| [r.left(), r.c, r.top()])
        .filter(|x| x.is_finite())
        .collect()
}

const TOLERANCE: f64 = 1e-9;
const MAX_POINTS: usize = 2048;

/// `x / h` when it is an integer up to rounding.
fn steps(x: f64, h: f64) -> Option<i64> {
    let q = (x / h).round();
    ((q * h - x).abs() <= TOLERANCE * x.abs().max(1.0)).then_some(q as i64)
}

/// A uniform lattice fine enough to decide δ-interleaving of `r1` and `r2`.
///
/// The step is the largest `2^j / q` (`q ≤ 64`) dividing δ and every finite
/// endpoint.
pub fn interleaving_grid(r1: &Rectangle, r2: &Rectangle, delta: f64) -> Vec<f64> {
    let ends = finite_endpoints(r1, r2);
    let mut h = f64::NAN;
    'search: for j in (-24..=10).rev() {
        for q in 1..=64 {
            let cand = 2f64.powi(j) / f64::from(q);
            if ends
                .iter()
                .chain([delta].iter())
                .all(|&x| steps(x, cand).is_some())
            {
                if h.is_nan() || h < cand {
                    h = cand;
                }
                if q == 1 {
                    break 'search;
                }
            }
        }
    }
    if h.is_nan() {
        h = 2f64.powi(-24);
    }
    let lo = ends.iter().copied().fold(f64::INFINITY, f64::min) - 2.0 * delta - h;
    let hi = ends.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 2.0 * delta + h;
    let n = ((hi - lo) / h).round() as usize;
    (0..=n).map(|i| lo + i as f64 * h).collect()
}

/// A rectangle in lattice coordinates; `None` edges are infinite.
struct LatticeRect {
    left: Option<i64>,
    corner: i64,
    top: Option<i64>,
}

impl LatticeRect {
    fn contains(&self, i: i64, j: i64) -> bool {
        self.left.is_none_or(|l| l <= i)
            && i < self.corner
            && self.corner <= j
            && self.top.is_none_or(|t| j < t)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Whether `r1` and `r2` are δ-interleaved, decided on `grid`.
///
/// The grid must be uniform, contain every finite endpoint, have δ as a
/// multiple of its step and extend more than 2δ past the endpoints.
pub fn grid_interleaving_oracle(
    r1: &Rectangle,
    r2: &Rectangle,
    delta: f64,
    grid: &[f64],
) -> Result<bool, OracleError> {
    let insufficient = |why: &str| Err(OracleError::InsufficientGrid(why.to_string()));
    if grid.len() < 2 {
        return insufficient("fewer than two points");
    }
    if grid.len() > MAX_POINTS {
        return insufficient("grid is too fine");
    }
    let lo = grid[0];
    let h = grid[1] - grid[0];
    if h.is_nan()
        || h <= 0.0
        || grid
            .iter()
            .enumerate()
            .any(|(i, &g)| steps(g - lo, h) != Some(i as i64))
    {
        return insufficient("grid is not uniform");
    }
    let Some(s) = (delta >= 0.0).then(|| steps(delta, h)).flatten() else {
        return insufficient("delta is not a multiple of the grid step");
    };
    let ends = finite_endpoints(r1, r2);
    let index_of = |x: f64| steps(x - lo, h).filter(|&i| i >= 0 && (i as usize) < grid.len());
    if ends.iter().any(|&e| index_of(e).is_none()) {
        return insufficient("an endpoint is missing from the grid");
    }
    let last = grid.len() as i64 - 1;
    let min_e = ends
        .iter()
        .map(|&e| index_of(e).unwrap())
        .min()
        .unwrap_or(0);
    let max_e = ends
        .iter()
        .map(|&e| index_of(e).unwrap())
        .max()
        .unwrap_or(0);
    if !(min_e - 2 * s > 0 && max_e + 2 * s <= last) {
        return insufficient("grid does not extend 2δ past the endpoints");
    }
    if r1.degree != r2.degree {
        return Ok(false);
    }
    let lattice = |r: &Rectangle| LatticeRect {
        left: r.left().is_finite().then(|| index_of(r.left()).unwrap()),
        corner: index_of(r.c).unwrap(),
        top: r.top().is_finite().then(|| index_of(r.top()).unwrap()),
    };
    let (q1, q2) = (lattice(r1), lattice(r2));

    let n = grid.len();
    let s = s as usize;
    let idx = |i: usize, j: usize| i * n + j;
    let in_i: Vec<bool> = (0..n * n)
        .map(|p| q1.contains((p / n) as i64, (p % n) as i64))
        .collect();
    let in_j: Vec<bool> = (0..n * n)
        .map(|p| q2.contains((p / n) as i64, (p % n) as i64))
        .collect();
    let shift =
        |i: usize, j: usize, by: usize| (i + by < n && j + by < n).then(|| (i + by, j + by));

    // Unknowns: F at idx, G at n² + idx.
    let exists = |src: &[bool], dst: &[bool], i: usize, j: usize| {
        src[idx(i, j)] && shift(i, j, s).is_some_and(|(a, b)| dst[idx(a, b)])
    };
    let f_exists = |i, j| exists(&in_i, &in_j, i, j);
    let g_exists = |i, j| exists(&in_j, &in_i, i, j);
    let mut uf = UnionFind::new(2 * n * n);
    let mut zero = vec![false; 2 * n * n];

    for (offset, src, dst, has) in [
        (0, &in_i, &in_j, &f_exists as &dyn Fn(usize, usize) -> bool),
        (n * n, &in_j, &in_i, &g_exists),
    ] {
        for i in 0..n {
            for j in 0..n {
                for (yi, yj) in [(i + 1, j), (i, j + 1)] {
                    let Some((si, sj)) = shift(yi, yj, s) else {
                        continue;
                    };
                    let left = src[idx(i, j)] && src[idx(yi, yj)] && has(yi, yj);
                    let right = has(i, j) && dst[idx(si, sj)];
                    match (left, right) {
                        (true, true) => uf.union(offset + idx(i, j), offset + idx(yi, yj)),
                        (true, false) => zero[offset + idx(yi, yj)] = true,
                        (false, true) => zero[offset + idx(i, j)] = true,
                        (false, false) => {}
                    }
                }
            }
        }
    }

    let total = 2 * n * n;
    let mut root_zero = vec![false; total];
    for (v, _) in zero.iter().enumerate().filter(|(_, z)| **z) {
        let r = uf.find(v);
        root_zero[r] = true;
    }
    let mut root_one = vec![false; total];
    let mut must_not_both: Vec<(usize, usize)> = Vec::new();
    for (first_off, second_off, first_has, second_has, src) in [
        (
            0,
            n * n,
            &f_exists as &dyn Fn(usize, usize) -> bool,
            &g_exists as &dyn Fn(usize, usize) -> bool,
            &in_i,
        ),
        (n * n, 0, &g_exists, &f_exists, &in_j),
    ] {
        for i in 0..n {
            for j in 0..n {
                let Some((ti, tj)) = shift(i, j, 2 * s) else {
                    continue;
                };
                let (mi, mj) = (i + s, j + s);
                let target = src[idx(i, j)] && src[idx(ti, tj)];
                let both = first_has(i, j) && second_has(mi, mj);
                if target {
                    if !both {
                        return Ok(false);
                    }
                    let a = uf.find(first_off + idx(i, j));
                    let b = uf.find(second_off + idx(mi, mj));
                    if root_zero[a] || root_zero[b] {
                        return Ok(false);
                    }
                    root_one[a] = true;
                    root_one[b] = true;
                } else if both {
                    let a = uf.find(first_off + idx(i, j));
                    let b = uf.find(second_off + idx(mi, mj));
                    must_not_both.push((a, b));
                }
            }
        }
    }
    Ok(must_not_both
        .iter()
        .all(|&(a, b)| !(root_one[a] && root_one[b])))
}
