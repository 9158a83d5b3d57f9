//! Morse complexes of three small surfaces, with critical values `f(p_i) = i`.

use super::FilteredComplex;

/// Torus with one minimum, two saddles, one maximum; all boundaries vanish.
pub fn fixture_torus() -> FilteredComplex {
    FilteredComplex::builder()
        .generator("p1", 0, 1.0)
        .generator("p2", 1, 2.0)
        .generator("p3", 1, 3.0)
        .generator("p4", 2, 4.0)
        .build()
        .expect("torus fixture is well formed")
}

/// Heart-shaped circle: two minima, two maxima, `∂p3 = ∂p4 = p1 + p2`.
pub fn fixture_heart_circle() -> FilteredComplex {
    FilteredComplex::builder()
        .generator("p1", 0, 1.0)
        .generator("p2", 0, 2.0)
        .generator("p3", 1, 3.0)
        .generator("p4", 1, 4.0)
        .boundary(1, "p3", &["p1", "p2"])
        .boundary(1, "p4", &["p1", "p2"])
        .build()
        .expect("heart fixture is well formed")
}

/// H-shaped sphere: `∂p3 = p1 + p2`, `∂p4 = 0`, `∂p5 = ∂p6 = p4`.
pub fn fixture_h_sphere() -> FilteredComplex {
    FilteredComplex::builder()
        .generator("p1", 0, 1.0)
        .generator("p2", 0, 2.0)
        .generator("p3", 1, 3.0)
        .generator("p4", 1, 4.0)
        .generator("p5", 2, 5.0)
        .generator("p6", 2, 6.0)
        .boundary(1, "p3", &["p1", "p2"])
        .boundary(2, "p5", &["p4"])
        .boundary(2, "p6", &["p4"])
        .build()
        .expect("H-sphere fixture is well formed")
}
