//! Interleaving of diagonal-anchored rectangles and bottleneck distances.

mod matching;
mod oracle;
mod stability;

use std::collections::BTreeMap;

use crate::barcode::{Bar, Rectangle, RectangleBarcode};

pub use matching::{perfect_matching, Assignment};
pub use oracle::{grid_interleaving_oracle, interleaving_grid, OracleError};
pub use stability::{stability_experiment, ShiftMode, StabilityReport, TrialRecord};

/// Whether no point `x` of the rectangle has `x + (δ, δ)` in it as well.
pub fn is_delta_trivial(r: &Rectangle, delta: f64) -> bool {
    r.min_length() <= delta
}

/// `|x - y|` in the extended reals, with equal infinities at distance 0.
fn ext_diff(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs()
    }
}

/// Largest difference between corresponding edges of two rectangles.
pub fn edge_distance(r1: &Rectangle, r2: &Rectangle) -> f64 {
    ext_diff(r1.left(), r2.left())
        .max(ext_diff(r1.c, r2.c))
        .max(ext_diff(r1.top(), r2.top()))
}

/// Whether the interval modules of two rectangles are δ-interleaved.
///
/// Holds when the edges move by at most δ, or when both rectangles are
/// 2δ-trivial so the zero maps interleave them.
pub fn are_delta_interleaved(r1: &Rectangle, r2: &Rectangle, delta: f64) -> bool {
    r1.degree == r2.degree
        && ((is_delta_trivial(r1, 2.0 * delta) && is_delta_trivial(r2, 2.0 * delta))
            || edge_distance(r1, r2) <= delta)
}

/// A δ-matching between two barcodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(Rectangle, Rectangle)>,
    pub unmatched_left: Vec<Rectangle>,
    pub unmatched_right: Vec<Rectangle>,
    pub delta: f64,
}

/// A δ-matching of one degree's rectangles, if one exists.
fn match_rectangles(left: &[&Rectangle], right: &[&Rectangle], delta: f64) -> Option<Assignment> {
    perfect_matching(
        left.len(),
        right.len(),
        |i, j| are_delta_interleaved(left[i], right[j], delta),
        |i| is_delta_trivial(left[i], 2.0 * delta),
        |j| is_delta_trivial(right[j], 2.0 * delta),
    )
}

/// A δ-matching between `b1` and `b2`, degree by degree.
pub fn find_matching(b1: &RectangleBarcode, b2: &RectangleBarcode, delta: f64) -> Option<Matching> {
    let mut out = Matching {
        pairs: Vec::new(),
        unmatched_left: Vec::new(),
        unmatched_right: Vec::new(),
        delta,
    };
    for k in degrees_of(b1, b2) {
        let left: Vec<&Rectangle> = b1.in_degree(k).collect();
        let right: Vec<&Rectangle> = b2.in_degree(k).collect();
        let a = match_rectangles(&left, &right, delta)?;
        let mut matched_right = vec![false; right.len()];
        for (i, partner) in a.left.iter().enumerate() {
            match partner {
                Some(j) => {
                    matched_right[*j] = true;
                    out.pairs.push((left[i].clone(), right[*j].clone()));
                }
                None => out.unmatched_left.push(left[i].clone()),
            }
        }
        for (j, m) in matched_right.iter().enumerate() {
            if !m {
                out.unmatched_right.push(right[j].clone());
            }
        }
    }
    Some(out)
}

fn degrees_of(b1: &RectangleBarcode, b2: &RectangleBarcode) -> Vec<i32> {
    let mut d = b1.degrees();
    d.extend(b2.degrees());
    d.sort();
    d.dedup();
    d
}

/// Smallest candidate admitting a matching; candidates are tried in increasing order.
fn smallest_feasible(mut candidates: Vec<f64>, feasible: impl Fn(f64) -> bool) -> f64 {
    candidates.push(0.0);
    candidates.retain(|x| x.is_finite() && *x >= 0.0);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    candidates
        .into_iter()
        .find(|&d| feasible(d))
        .unwrap_or(f64::INFINITY)
}

fn pairwise_differences(endpoints: &[f64]) -> Vec<f64> {
    let finite: Vec<f64> = endpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite())
        .collect();
    let mut out = Vec::with_capacity(finite.len() * finite.len());
    for (i, x) in finite.iter().enumerate() {
        for y in &finite[i..] {
            out.push((x - y).abs());
        }
    }
    out
}

fn degree_distance(left: &[&Rectangle], right: &[&Rectangle]) -> f64 {
    let endpoints: Vec<f64> = left
        .iter()
        .chain(right)
        .flat_map(|r| [r.left(), r.c, r.top()])
        .collect();
    let mut candidates = pairwise_differences(&endpoints);
    candidates.extend(left.iter().chain(right).map(|r| r.min_length() / 2.0));
    smallest_feasible(candidates, |d| match_rectangles(left, right, d).is_some())
}

/// Bottleneck distance in each degree present in either barcode.
pub fn bottleneck_by_degree(b1: &RectangleBarcode, b2: &RectangleBarcode) -> BTreeMap<i32, f64> {
    degrees_of(b1, b2)
        .into_iter()
        .map(|k| {
            let left: Vec<&Rectangle> = b1.in_degree(k).collect();
            let right: Vec<&Rectangle> = b2.in_degree(k).collect();
            (k, degree_distance(&left, &right))
        })
        .collect()
}

/// Smallest δ admitting a δ-matching; `∞` when none exists.
pub fn bottleneck_distance(b1: &RectangleBarcode, b2: &RectangleBarcode) -> f64 {
    bottleneck_by_degree(b1, b2)
        .into_values()
        .fold(0.0, f64::max)
}

/// Standard bottleneck distance between bar multisets, degree by degree.
pub fn bottleneck_distance_1d(s1: &[Bar], s2: &[Bar]) -> f64 {
    let mut degrees: Vec<i32> = s1.iter().chain(s2).map(|b| b.degree).collect();
    degrees.sort();
    degrees.dedup();
    let mut total: f64 = 0.0;
    for k in degrees {
        let left: Vec<&Bar> = s1.iter().filter(|b| b.degree == k).collect();
        let right: Vec<&Bar> = s2.iter().filter(|b| b.degree == k).collect();
        let endpoints: Vec<f64> = left
            .iter()
            .chain(&right)
            .flat_map(|b| [b.birth, b.death])
            .collect();
        let mut candidates = pairwise_differences(&endpoints);
        candidates.extend(left.iter().chain(&right).map(|b| b.length() / 2.0));
        let cost = |x: &Bar, y: &Bar| ext_diff(x.birth, y.birth).max(ext_diff(x.death, y.death));
        let d = smallest_feasible(candidates, |d| {
            perfect_matching(
                left.len(),
                right.len(),
                |i, j| cost(left[i], right[j]) <= d,
                |i| left[i].length() <= 2.0 * d,
                |j| right[j].length() <= 2.0 * d,
            )
            .is_some()
        });
        total = total.max(d);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::rectangle_barcode;
    use crate::complex::{fixture_heart_circle, fixture_torus, FilteredComplex};

    const INF: f64 = f64::INFINITY;

    fn rect(c: f64, l1: f64, l2: f64) -> Rectangle {
        Rectangle::new(0, c, l1, l2, "g").unwrap()
    }

    fn bar(birth: f64, death: f64) -> Bar {
        Bar {
            degree: 0,
            birth,
            death,
            birth_generator: "b".into(),
            death_generator: (death < INF).then(|| "d".into()),
        }
    }

    #[test]
    fn triviality_examples() {
        assert!(is_delta_trivial(&rect(2.0, INF, 1.0), 1.0));
        assert!(!is_delta_trivial(&rect(2.0, INF, 1.0), 0.5));
        assert!(!is_delta_trivial(&rect(2.0, INF, INF), 1e12));
    }

    #[test]
    fn triviality_matches_point_enumeration() {
        let grid: Vec<f64> = (-40..=40).map(|i| f64::from(i) * 0.25).collect();
        for r in [
            rect(2.0, INF, 1.0),
            rect(3.0, 1.0, INF),
            rect(1.0, INF, INF),
            rect(0.0, 2.5, INF),
        ] {
            for delta in [0.0, 0.25, 0.5, 1.0, 1.5, 2.5, 3.0] {
                let witness = grid.iter().any(|&a| {
                    grid.iter()
                        .any(|&b| r.contains(a, b) && r.contains(a + delta, b + delta))
                });
                assert_eq!(is_delta_trivial(&r, delta), !witness, "{r} at {delta}");
            }
        }
    }

    #[test]
    fn interleaving_examples() {
        let r = rect(2.0, INF, 1.0);
        assert!(are_delta_interleaved(&r, &r, 0.0));
        assert!(are_delta_interleaved(&r, &rect(2.0, INF, 1.5), 0.5));
        assert!(!are_delta_interleaved(
            &rect(1.0, INF, INF),
            &rect(4.0, INF, INF),
            1.0
        ));
        let mut other_degree = r.clone();
        other_degree.degree = 1;
        assert!(!are_delta_interleaved(&r, &other_degree, 10.0));
    }

    #[test]
    fn bottleneck_examples() {
        let heart = rectangle_barcode(&fixture_heart_circle()).unwrap();
        assert_eq!(bottleneck_distance(&heart, &heart), 0.0);
        let shifted = rectangle_barcode(&fixture_heart_circle().shift(0.3)).unwrap();
        let d = bottleneck_distance(&heart, &shifted);
        assert!(d <= 0.3 + 1e-12, "{d}");
        let single = RectangleBarcode::new(vec![rect(0.0, INF, INF)]);
        assert_eq!(
            bottleneck_distance(&single, &RectangleBarcode::default()),
            INF
        );
        let torus = rectangle_barcode(&fixture_torus()).unwrap();
        let zero = rectangle_barcode(&FilteredComplex::zero()).unwrap();
        assert_eq!(bottleneck_distance(&torus, &zero), INF);
    }

    #[test]
    fn shifted_heart_distance_is_frozen() {
        let heart = rectangle_barcode(&fixture_heart_circle()).unwrap();
        let shifted = rectangle_barcode(&fixture_heart_circle().shift(0.3)).unwrap();
        let d = bottleneck_distance(&heart, &shifted);
        assert!((d - 0.3).abs() < 1e-12, "{d}");
    }

    #[test]
    fn matching_respects_triviality() {
        let b1 = RectangleBarcode::new(vec![rect(2.0, INF, 1.0)]);
        let m = find_matching(&b1, &RectangleBarcode::default(), 0.5).unwrap();
        assert_eq!(m.unmatched_left.len(), 1);
        assert!(find_matching(&b1, &RectangleBarcode::default(), 0.4).is_none());
        assert_eq!(bottleneck_distance(&b1, &RectangleBarcode::default()), 0.5);
    }

    #[test]
    fn one_dimensional_examples() {
        let s = vec![bar(0.0, 1.0), bar(2.0, INF)];
        assert_eq!(bottleneck_distance_1d(&s, &s), 0.0);
        assert_eq!(bottleneck_distance_1d(&[bar(0.0, 1.0)], &[]), 0.5);
        assert_eq!(
            bottleneck_distance_1d(&[bar(0.0, INF)], &[bar(1.0, INF)]),
            1.0
        );
    }
}
