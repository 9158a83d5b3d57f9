//! Filtered chain complexes over GF(2).
//!
//! A complex is a graded set of named generators, each carrying a finite
//! filtration value, together with boundary matrices `D_k` sending degree `k`
//! to degree `k - 1`. The filtration of a chain is the maximum over its
//! support, so the Floer-type condition `ℓ(∂x) ≤ ℓ(x)` reduces to a check
//! on basis elements.

mod fixtures;
mod io;
mod random;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::gf2::BitMatrix;

pub use fixtures::{fixture_h_sphere, fixture_heart_circle, fixture_torus};
pub use io::{parse, serialize};
pub use random::{random_complex, RandomComplexParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub filtration: f64,
}

/// Identifies a generator: names are unique within a degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorKey {
    pub degree: i32,
    pub name: String,
}

impl GeneratorKey {
    pub fn new(degree: i32, name: impl Into<String>) -> Self {
        GeneratorKey {
            degree,
            name: name.into(),
        }
    }
}

impl Generator {
    pub fn key(&self) -> GeneratorKey {
        GeneratorKey::new(self.degree, self.name.clone())
    }
}

/// The half-open action window `(a, b]`. Either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub a: f64,
    pub b: f64,
}

impl Window {
    pub fn new(a: f64, b: f64) -> Self {
        Window { a, b }
    }

    pub fn is_empty(&self) -> bool {
        self.a >= self.b
    }

    pub fn contains(&self, t: f64) -> bool {
        self.a < t && t <= self.b
    }

    /// Product order: both ends move up.
    pub fn le(&self, other: &Window) -> bool {
        self.a <= other.a && self.b <= other.b
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}]",
            crate::extended::fmt_ext(self.a),
            crate::extended::fmt_ext(self.b)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported coefficient field {0:?}; only \"GF2\" is accepted")]
    UnsupportedField(String),
    #[error("degree {0} is listed more than once")]
    DuplicateDegree(i32),
    #[error("duplicate generator name {name:?} in degree {degree}")]
    DuplicateGenerator { degree: i32, name: String },
    #[error("unknown generator {name:?} in degree {degree}")]
    UnknownGenerator { degree: i32, name: String },
    #[error("generator {name:?} has non-finite filtration {value}")]
    NonFiniteFiltration { name: String, value: f64 },
    #[error("boundary of {source_name:?} lists target {target:?} twice")]
    DuplicateTarget { source_name: String, target: String },
    #[error("column {source_name:?} appears twice in the boundaries of degree {degree}")]
    DuplicateColumn { degree: i32, source_name: String },
    #[error("boundary D_{degree} has shape {found:?}, expected {expected:?}")]
    DimensionMismatch {
        degree: i32,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("scale factor must be positive, got {0}")]
    InvalidScale(f64),
    #[error("complex violates the filtered-complex axioms: {}", display_violations(.0))]
    Invalid(Vec<Violation>),
}

fn display_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A failed axiom, with a witness.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `∂∂(source)` has a nonzero coefficient on `target` (two degrees down).
    BoundarySquared {
        degree: i32,
        source: String,
        target: String,
    },
    /// `target` appears in `∂(source)` with a larger filtration value.
    FiltrationIncrease {
        degree: i32,
        source: String,
        source_filtration: f64,
        target: String,
        target_filtration: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundarySquared {
                degree,
                source,
                target,
            } => write!(
                f,
                "D_{} D_{} != 0: boundary of boundary of {source} contains {target}",
                degree - 1,
                degree
            ),
            Violation::FiltrationIncrease {
                degree,
                source,
                source_filtration,
                target,
                target_filtration,
            } => write!(
                f,
                "filtration increases along the boundary in degree {degree}: \
                 {source} ({source_filtration}) -> {target} ({target_filtration})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Block {
    generators: Vec<Generator>,
    /// `D_k`: rows index degree `k - 1`, columns index this degree.
    boundary: BitMatrix,
}

/// A graded GF(2) chain complex with a filtration on its standard basis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FilteredComplex {
    blocks: BTreeMap<i32, Block>,
}

impl FilteredComplex {
    pub fn zero() -> Self {
        FilteredComplex::default()
    }

    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    /// Degrees carrying at least one generator, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.blocks.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn generators(&self, degree: i32) -> &[Generator] {
        self.blocks
            .get(&degree)
            .map_or(&[][..], |b| b.generators.as_slice())
    }

    pub fn all_generators(&self) -> impl Iterator<Item = &Generator> {
        self.blocks.values().flat_map(|b| b.generators.iter())
    }

    pub fn num_generators(&self) -> usize {
        self.blocks.values().map(|b| b.generators.len()).sum()
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.generators(degree).len()
    }

    /// `D_k` as an `n_{k-1} × n_k` matrix (zero when either side is empty).
    pub fn boundary(&self, degree: i32) -> BitMatrix {
        match self.blocks.get(&degree) {
            Some(b) => b.boundary.clone(),
            None => BitMatrix::zeros(self.rank(degree - 1), 0),
        }
    }

    pub fn generator_index(&self, degree: i32, name: &str) -> Option<usize> {
        self.generators(degree).iter().position(|g| g.name == name)
    }

    pub fn filtrations(&self, degree: i32) -> Vec<f64> {
        self.generators(degree)
            .iter()
            .map(|g| g.filtration)
            .collect()
    }

    /// Checks `∂² = 0` and filtration monotonicity, reporting every violation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&k, block) in &self.blocks {
            let lower = self.generators(k - 1);
            for (j, col) in block.boundary.columns().iter().enumerate() {
                let src = &block.generators[j];
                for i in col.ones() {
                    let tgt = &lower[i];
                    if tgt.filtration > src.filtration {
                        violations.push(Violation::FiltrationIncrease {
                            degree: k,
                            source: src.name.clone(),
                            source_filtration: src.filtration,
                            target: tgt.name.clone(),
                            target_filtration: tgt.filtration,
                        });
                    }
                }
            }
            if self.blocks.contains_key(&(k - 1)) {
                let lower_d = self.boundary(k - 1);
                let square = lower_d
                    .mul(&block.boundary)
                    .expect("boundary shapes are checked at construction");
                let bottom = self.generators(k - 2);
                for (j, col) in square.columns().iter().enumerate() {
                    if let Some(i) = col.lowest_one() {
                        violations.push(Violation::BoundarySquared {
                            degree: k,
                            source: block.generators[j].name.clone(),
                            target: bottom[i].name.clone(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Fails with [`ComplexError::Invalid`] unless [`validate`](Self::validate) is clean.
    pub fn validated(self) -> Result<Self, ComplexError> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(ComplexError::Invalid(report.violations))
        }
    }

    fn map_filtrations(&self, f: impl Fn(&Generator) -> f64) -> FilteredComplex {
        let mut out = self.clone();
        for block in out.blocks.values_mut() {
            for g in &mut block.generators {
                g.filtration = f(g);
            }
        }
        out
    }

    /// Adds a per-generator shift (missing keys shift by 0) and re-validates.
    ///
    /// Shifts that break filtration monotonicity are rejected with the witness pair.
    pub fn perturb(&self, shifts: &HashMap<GeneratorKey, f64>) -> Result<Perturbed, ComplexError> {
        let shift_of = |g: &Generator| shifts.get(&g.key()).copied().unwrap_or(0.0);
        let mut sup_norm: f64 = 0.0;
        for g in self.all_generators() {
            let s = shift_of(g);
            if !(g.filtration + s).is_finite() {
                return Err(ComplexError::NonFiniteFiltration {
                    name: g.name.clone(),
                    value: g.filtration + s,
                });
            }
            sup_norm = sup_norm.max(s.abs());
        }
        let complex = self
            .map_filtrations(|g| g.filtration + shift_of(g))
            .validated()?;
        Ok(Perturbed { complex, sup_norm })
    }

    /// Multiplies every filtration value by `lambda > 0`.
    pub fn scale(&self, lambda: f64) -> Result<FilteredComplex, ComplexError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(ComplexError::InvalidScale(lambda));
        }
        Ok(self.map_filtrations(|g| g.filtration * lambda))
    }

    /// Adds the constant `s` to every filtration value.
    pub fn shift(&self, s: f64) -> FilteredComplex {
        self.map_filtrations(|g| g.filtration + s)
    }
}

/// Result of [`FilteredComplex::perturb`].
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbed {
    pub complex: FilteredComplex,
    pub sup_norm: f64,
}

/// Incremental construction with name resolution.
#[derive(Debug, Default)]
pub struct ComplexBuilder {
    generators: BTreeMap<i32, Vec<Generator>>,
    columns: Vec<(i32, String, Vec<String>)>,
}

impl ComplexBuilder {
    pub fn generator(
        &mut self,
        name: impl Into<String>,
        degree: i32,
        filtration: f64,
    ) -> &mut Self {
        self.generators.entry(degree).or_default().push(Generator {
            name: name.into(),
            degree,
            filtration,
        });
        self
    }

    /// Sets `∂(source)` (in `degree`) to the sum of `targets` (in `degree - 1`).
    pub fn boundary<S: AsRef<str>>(
        &mut self,
        degree: i32,
        source: &str,
        targets: &[S],
    ) -> &mut Self {
        self.columns.push((
            degree,
            source.to_string(),
            targets.iter().map(|t| t.as_ref().to_string()).collect(),
        ));
        self
    }

    pub fn build(&self) -> Result<FilteredComplex, ComplexError> {
        let mut index: HashMap<(i32, &str), usize> = HashMap::new();
        for (&k, gens) in &self.generators {
            for (i, g) in gens.iter().enumerate() {
                if !g.filtration.is_finite() {
                    return Err(ComplexError::NonFiniteFiltration {
                        name: g.name.clone(),
                        value: g.filtration,
                    });
                }
                if index.insert((k, g.name.as_str()), i).is_some() {
                    return Err(ComplexError::DuplicateGenerator {
                        degree: k,
                        name: g.name.clone(),
                    });
                }
            }
        }
        let rank = |k: i32| self.generators.get(&k).map_or(0, Vec::len);
        let mut matrices: BTreeMap<i32, BitMatrix> = self
            .generators
            .iter()
            .filter(|(_, g)| !g.is_empty())
            .map(|(&k, g)| (k, BitMatrix::zeros(rank(k - 1), g.len())))
            .collect();
        let mut seen_columns = std::collections::HashSet::new();
        for (k, source, targets) in &self.columns {
            let j = *index.get(&(*k, source.as_str())).ok_or_else(|| {
                ComplexError::UnknownGenerator {
                    degree: *k,
                    name: source.clone(),
                }
            })?;
            if !seen_columns.insert((*k, source.as_str())) {
                return Err(ComplexError::DuplicateColumn {
                    degree: *k,
                    source_name: source.clone(),
                });
            }
            let m = matrices
                .get_mut(k)
                .expect("degree with a source has a matrix");
            for t in targets {
                let i = *index.get(&(*k - 1, t.as_str())).ok_or_else(|| {
                    ComplexError::UnknownGenerator {
                        degree: *k - 1,
                        name: t.clone(),
                    }
                })?;
                if m.get(i, j) {
                    return Err(ComplexError::DuplicateTarget {
                        source_name: source.clone(),
                        target: t.clone(),
                    });
                }
                m.set(i, j, true);
            }
        }
        let blocks = self
            .generators
            .iter()
            .filter(|(_, g)| !g.is_empty())
            .map(|(&k, g)| {
                (
                    k,
                    Block {
                        generators: g.clone(),
                        boundary: matrices.remove(&k).expect("matrix per degree"),
                    },
                )
            })
            .collect();
        Ok(FilteredComplex { blocks })
    }
}

/// Builds a complex from explicit boundary matrices, checking shapes.
pub fn from_matrices(
    generators: Vec<Generator>,
    boundaries: BTreeMap<i32, BitMatrix>,
) -> Result<FilteredComplex, ComplexError> {
    let mut builder = FilteredComplex::builder();
    for g in &generators {
        builder.generator(g.name.clone(), g.degree, g.filtration);
    }
    let skeleton = builder.build()?;
    let mut blocks = skeleton.blocks;
    for (k, m) in boundaries {
        let expected = (
            blocks.get(&(k - 1)).map_or(0, |b| b.generators.len()),
            blocks.get(&k).map_or(0, |b| b.generators.len()),
        );
        if (m.rows(), m.cols()) != expected {
            return Err(ComplexError::DimensionMismatch {
                degree: k,
                expected,
                found: (m.rows(), m.cols()),
            });
        }
        if let Some(block) = blocks.get_mut(&k) {
            block.boundary = m;
        }
    }
    Ok(FilteredComplex { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heart_with_raised_minimum_is_rejected() {
        let c = fixture_heart_circle();
        let mut shifts = HashMap::new();
        shifts.insert(GeneratorKey::new(0, "p1"), 4.0);
        let err = c.perturb(&shifts).unwrap_err();
        match err {
            ComplexError::Invalid(v) => assert!(v.iter().any(|x| matches!(
                x,
                Violation::FiltrationIncrease { source, target, target_filtration, .. }
                    if source == "p3" && target == "p1" && *target_filtration == 5.0
            ))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn boundary_squared_nonzero_reports_witness() {
        let mut b = FilteredComplex::builder();
        b.generator("v", 0, 0.0)
            .generator("e", 1, 1.0)
            .generator("f", 2, 2.0)
            .boundary(1, "e", &["v"])
            .boundary(2, "f", &["e"]);
        let report = b.build().unwrap().validate();
        assert_eq!(
            report.violations,
            vec![Violation::BoundarySquared {
                degree: 2,
                source: "f".into(),
                target: "v".into()
            }]
        );
    }

    #[test]
    fn perturb_examples() {
        let torus = fixture_torus();
        let same = torus.perturb(&HashMap::new()).unwrap();
        assert_eq!(same.complex, torus);
        assert_eq!(same.sup_norm, 0.0);

        let shifts: HashMap<_, _> = torus.all_generators().map(|g| (g.key(), 1.0)).collect();
        let up = torus.perturb(&shifts).unwrap();
        let f: Vec<f64> = up.complex.all_generators().map(|g| g.filtration).collect();
        assert_eq!(f, vec![2.0, 3.0, 4.0, 5.0]);
        assert_eq!(up.sup_norm, 1.0);

        let heart = fixture_heart_circle();
        let mut shifts = HashMap::new();
        shifts.insert(GeneratorKey::new(1, "p3"), -2.5);
        match heart.perturb(&shifts).unwrap_err() {
            ComplexError::Invalid(v) => assert!(v.iter().any(|x| matches!(
                x,
                Violation::FiltrationIncrease { source, target, .. } if source == "p3" && target == "p1"
            ))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scale_examples() {
        let heart = fixture_heart_circle();
        assert_eq!(heart.scale(1.0).unwrap(), heart);
        let f: Vec<f64> = heart
            .scale(2.0)
            .unwrap()
            .all_generators()
            .map(|g| g.filtration)
            .collect();
        assert_eq!(f, vec![2.0, 4.0, 6.0, 8.0]);
        let f: Vec<f64> = fixture_torus()
            .scale(3.0)
            .unwrap()
            .all_generators()
            .map(|g| g.filtration)
            .collect();
        assert_eq!(f, vec![3.0, 6.0, 9.0, 12.0]);
        assert!(matches!(
            heart.scale(0.0),
            Err(ComplexError::InvalidScale(_))
        ));
        assert!(matches!(
            heart.scale(-1.0),
            Err(ComplexError::InvalidScale(_))
        ));
    }

    #[test]
    fn builder_rejects_bad_names() {
        let mut b = FilteredComplex::builder();
        b.generator("x", 0, 0.0).generator("x", 0, 1.0);
        assert!(matches!(
            b.build(),
            Err(ComplexError::DuplicateGenerator { .. })
        ));

        let mut b = FilteredComplex::builder();
        b.generator("x", 0, 0.0)
            .generator("y", 1, 1.0)
            .boundary(1, "y", &["q9"]);
        match b.build() {
            Err(ComplexError::UnknownGenerator { name, .. }) => assert_eq!(name, "q9"),
            other => panic!("unexpected {other:?}"),
        }

        let mut b = FilteredComplex::builder();
        b.generator("x", 0, f64::INFINITY);
        assert!(matches!(
            b.build(),
            Err(ComplexError::NonFiniteFiltration { .. })
        ));
    }

    #[test]
    fn matrix_shapes_are_checked() {
        let gens = vec![
            Generator {
                name: "a".into(),
                degree: 0,
                filtration: 0.0,
            },
            Generator {
                name: "b".into(),
                degree: 1,
                filtration: 1.0,
            },
        ];
        let mut m = BTreeMap::new();
        m.insert(1, BitMatrix::zeros(2, 1));
        assert!(matches!(
            from_matrices(gens.clone(), m),
            Err(ComplexError::DimensionMismatch { degree: 1, .. })
        ));
        let mut m = BTreeMap::new();
        m.insert(1, BitMatrix::from_rows(&[&[1]]));
        let c = from_matrices(gens, m).unwrap();
        assert!(c.validate().is_ok());
        assert!(c.boundary(1).get(0, 0));
    }

    #[test]
    fn window_basics() {
        assert!(Window::new(3.0, 2.0).is_empty());
        assert!(Window::new(1.0, 1.0).is_empty());
        let w = Window::new(f64::NEG_INFINITY, 2.0);
        assert!(w.contains(2.0) && w.contains(-1e300) && !w.contains(2.5));
        assert!(Window::new(1.0, 2.0).le(&Window::new(1.5, 2.0)));
        assert!(!Window::new(1.0, 2.0).le(&Window::new(0.5, 3.0)));
        assert_eq!(Window::new(f64::NEG_INFINITY, 2.0).to_string(), "(-inf, 2]");
    }
}
