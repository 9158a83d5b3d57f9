use rayon::prelude::*;
use rectbar::barcode::Rectangle;
use rectbar::distance::{are_delta_interleaved, grid_interleaving_oracle, interleaving_grid};

const INF: f64 = f64::INFINITY;

/// Every S/B/N rectangle with corner and finite edges in `0..=5`.
pub fn battery() -> Vec<Rectangle> {
    let mut out = Vec::new();
    for c in 0..=5 {
        let c = f64::from(c);
        out.push(Rectangle::new(0, c, INF, INF, "s").unwrap());
        for top in (c as i32 + 1)..=5 {
            out.push(Rectangle::new(0, c, INF, f64::from(top) - c, "b").unwrap());
        }
        for left in 0..(c as i32) {
            out.push(Rectangle::new(0, c, c - f64::from(left), INF, "n").unwrap());
        }
    }
    out
}

/// `0, 0.25, …, 3`.
pub fn battery_deltas() -> Vec<f64> {
    (0..=12).map(|i| f64::from(i) * 0.25).collect()
}

/// Cases where the closed form and the grid oracle disagree, and the number of cases checked.
pub fn battery_disagreements() -> (Vec<String>, usize) {
    let rects = battery();
    let deltas = battery_deltas();
    let disagreements = rects
        .par_iter()
        .flat_map_iter(|r1| {
            let rects = &rects;
            let deltas = &deltas;
            rects.iter().flat_map(move |r2| {
                deltas.iter().filter_map(move |&d| {
                    let grid = interleaving_grid(r1, r2, d);
                    match grid_interleaving_oracle(r1, r2, d, &grid) {
                        Ok(oracle) => (oracle != are_delta_interleaved(r1, r2, d))
                            .then(|| format!("{r1} vs {r2} at {d}: oracle {oracle}")),
                        Err(e) => Some(format!("{r1} vs {r2} at {d}: {e}")),
                    }
                })
            })
        })
        .collect();
    (disagreements, rects.len() * rects.len() * deltas.len())
}
