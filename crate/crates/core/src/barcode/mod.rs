//! Sublevel bars and the rectangle barcode of the interlevel module.
//!
//! A finite bar `[c, d)` in degree `k` splits into a type-B rectangle at `c`
//! in degree `k` and a type-N rectangle at `d` in degree `k + 1`; an infinite
//! bar becomes a type-S rectangle. Every derived barcode is checked against
//! brute-force interlevel homology before it is returned.

mod oracle;
mod sublevel;
mod verify;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, FilteredComplex};
use crate::extended::fmt_ext;

pub use oracle::{rectangle_multiplicity_oracle, MultiplicityOracle};
pub use sublevel::sublevel_barcode;
pub use verify::{
    verify_decomposition, verify_decomposition_with, VerificationFailure, VerificationReport,
};

/// A half-open interval `[birth, death)` of the sublevel module in one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    pub degree: i32,
    pub birth: f64,
    pub death: f64,
    pub birth_generator: String,
    pub death_generator: Option<String>,
}

impl Bar {
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RectType {
    S,
    B,
    N,
}

impl RectType {
    /// The type forced by which lengths are infinite; `None` for two finite lengths.
    pub fn from_lengths(ell1: f64, ell2: f64) -> Option<RectType> {
        match (ell1 == f64::INFINITY, ell2 == f64::INFINITY) {
            (true, true) => Some(RectType::S),
            (true, false) => Some(RectType::B),
            (false, true) => Some(RectType::N),
            (false, false) => None,
        }
    }
}

impl fmt::Display for RectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RectType::S => "S",
            RectType::B => "B",
            RectType::N => "N",
        })
    }
}

/// `[c - ell1, c) × [c, c + ell2)` in the `(a, b)` plane, anchored on the diagonal at `(c, c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    pub degree: i32,
    pub c: f64,
    pub ell1: f64,
    pub ell2: f64,
    pub rtype: RectType,
    pub generator: String,
}

/// Rounding allowance for comparing `x` with a derived edge `e`.
fn edge_slack(x: f64, e: f64) -> f64 {
    if x.is_finite() {
        8.0 * f64::EPSILON * x.abs().max(e.abs()).max(1.0)
    } else {
        0.0
    }
}

impl Rectangle {
    /// Builds a rectangle, inferring the type; `None` when both lengths are finite.
    pub fn new(
        degree: i32,
        c: f64,
        ell1: f64,
        ell2: f64,
        generator: impl Into<String>,
    ) -> Option<Self> {
        Some(Rectangle {
            degree,
            c,
            ell1,
            ell2,
            rtype: RectType::from_lengths(ell1, ell2)?,
            generator: generator.into(),
        })
    }

    pub fn left(&self) -> f64 {
        self.c - self.ell1
    }

    pub fn top(&self) -> f64 {
        self.c + self.ell2
    }

    pub fn min_length(&self) -> f64 {
        self.ell1.min(self.ell2)
    }

    /// Whether the module point `(a, b)`, i.e. the window `(a, b]`, lies in the rectangle.
    ///
    /// The left and top edges are recomputed from the corner and lengths, so
    /// they may be off from the original critical values by a rounding
    /// error; comparisons against them absorb a few ulps.
    pub fn contains(&self, a: f64, b: f64) -> bool {
        (self.ell1 == f64::INFINITY || self.left() <= a + edge_slack(a, self.left()))
            && a < self.c
            && self.c <= b
            && (self.ell2 == f64::INFINITY || b + edge_slack(b, self.top()) < self.top())
    }

    /// The same rectangle with its generator forgotten, for multiset comparisons.
    pub fn shape(&self) -> (i32, f64, f64, f64, RectType) {
        (self.degree, self.c, self.ell1, self.ell2, self.rtype)
    }

    fn canonical_cmp(&self, other: &Rectangle) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then(self.c.total_cmp(&other.c))
            .then(self.ell1.total_cmp(&other.ell1))
            .then(self.ell2.total_cmp(&other.ell2))
            .then_with(|| self.generator.cmp(&other.generator))
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R({}; {}, {})",
            fmt_ext(self.c),
            fmt_ext(self.ell1),
            fmt_ext(self.ell2)
        )
    }
}

/// All rectangles of all degrees, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RectangleBarcode {
    rectangles: Vec<Rectangle>,
}

impl RectangleBarcode {
    pub fn new(mut rectangles: Vec<Rectangle>) -> Self {
        rectangles.sort_by(Rectangle::canonical_cmp);
        RectangleBarcode { rectangles }
    }

    pub fn rectangles(&self) -> &[Rectangle] {
        &self.rectangles
    }

    pub fn len(&self) -> usize {
        self.rectangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rectangles.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.rectangles.iter().map(|r| r.degree).collect();
        d.dedup();
        d
    }

    pub fn in_degree(&self, k: i32) -> impl Iterator<Item = &Rectangle> {
        self.rectangles.iter().filter(move |r| r.degree == k)
    }

    /// Number of degree-`k` rectangles containing the module point `(a, b)`.
    pub fn count_containing(&self, k: i32, a: f64, b: f64) -> usize {
        self.in_degree(k).filter(|r| r.contains(a, b)).count()
    }

    /// Every `c` and `ell` multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> RectangleBarcode {
        RectangleBarcode::new(
            self.rectangles
                .iter()
                .map(|r| Rectangle {
                    c: r.c * lambda,
                    ell1: r.ell1 * lambda,
                    ell2: r.ell2 * lambda,
                    ..r.clone()
                })
                .collect(),
        )
    }

    /// Every corner moved by `s` along the diagonal.
    pub fn shifted(&self, s: f64) -> RectangleBarcode {
        RectangleBarcode::new(
            self.rectangles
                .iter()
                .map(|r| Rectangle {
                    c: r.c + s,
                    ..r.clone()
                })
                .collect(),
        )
    }

    /// One line per rectangle: `deg k: R(c; ell1, ell2) [T] <generator>`.
    pub fn to_text(&self, degree: Option<i32>) -> String {
        let mut out = String::new();
        for r in self
            .rectangles
            .iter()
            .filter(|r| degree.is_none_or(|k| r.degree == k))
        {
            out.push_str(&format!(
                "deg {}: {} [{}] {}\n",
                r.degree, r, r.rtype, r.generator
            ));
        }
        out
    }

    pub fn to_document(&self, degree: Option<i32>) -> BarcodeDocument {
        BarcodeDocument {
            degrees: self
                .degrees()
                .into_iter()
                .filter(|k| degree.is_none_or(|d| d == *k))
                .map(|k| DegreeRectangles {
                    degree: k,
                    rectangles: self
                        .in_degree(k)
                        .map(|r| RectangleDoc {
                            c: r.c,
                            ell1: r.ell1,
                            ell2: r.ell2,
                            rtype: r.rtype,
                            generator: r.generator.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self, degree: Option<i32>) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document(degree))
            .expect("barcode documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &[u8]) -> Result<Self, BarcodeError> {
        let doc: BarcodeDocument =
            serde_json::from_slice(text).map_err(|e| BarcodeError::Document(e.to_string()))?;
        let mut rects = Vec::new();
        for d in doc.degrees {
            for r in d.rectangles {
                if RectType::from_lengths(r.ell1, r.ell2) != Some(r.rtype) || !r.c.is_finite() {
                    return Err(BarcodeError::Document(format!(
                        "rectangle R({}; {}, {}) cannot have type {}",
                        fmt_ext(r.c),
                        fmt_ext(r.ell1),
                        fmt_ext(r.ell2),
                        r.rtype
                    )));
                }
                rects.push(Rectangle {
                    degree: d.degree,
                    c: r.c,
                    ell1: r.ell1,
                    ell2: r.ell2,
                    rtype: r.rtype,
                    generator: r.generator,
                });
            }
        }
        Ok(RectangleBarcode::new(rects))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarcodeDocument {
    pub degrees: Vec<DegreeRectangles>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRectangles {
    pub degree: i32,
    pub rectangles: Vec<RectangleDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectangleDoc {
    pub c: f64,
    #[serde(with = "crate::extended")]
    pub ell1: f64,
    #[serde(with = "crate::extended")]
    pub ell2: f64,
    #[serde(rename = "type")]
    pub rtype: RectType,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarsDocument {
    pub degrees: Vec<DegreeBars>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeBars {
    pub degree: i32,
    pub bars: Vec<BarDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarDoc {
    pub birth: f64,
    #[serde(with = "crate::extended")]
    pub death: f64,
    pub birth_generator: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub death_generator: Option<String>,
}

pub fn bars_document(bars: &[Bar], degree: Option<i32>) -> BarsDocument {
    let mut degrees: Vec<i32> = bars.iter().map(|b| b.degree).collect();
    degrees.sort();
    degrees.dedup();
    BarsDocument {
        degrees: degrees
            .into_iter()
            .filter(|k| degree.is_none_or(|d| d == *k))
            .map(|k| DegreeBars {
                degree: k,
                bars: bars
                    .iter()
                    .filter(|b| b.degree == k)
                    .map(|b| BarDoc {
                        birth: b.birth,
                        death: b.death,
                        birth_generator: b.birth_generator.clone(),
                        death_generator: b.death_generator.clone(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// One line per bar: `deg k: [birth, death) <birth generator> [<death generator>]`.
pub fn bars_text(bars: &[Bar], degree: Option<i32>) -> String {
    let mut out = String::new();
    for b in bars.iter().filter(|b| degree.is_none_or(|k| b.degree == k)) {
        out.push_str(&format!(
            "deg {}: [{}, {}) {}",
            b.degree,
            fmt_ext(b.birth),
            fmt_ext(b.death),
            b.birth_generator
        ));
        if let Some(d) = &b.death_generator {
            out.push(' ');
            out.push_str(d);
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BarcodeError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("rectangle barcode failed verification: {0}")]
    Verification(VerificationFailure),
    #[error("malformed barcode document: {0}")]
    Document(String),
}

/// Rectangles read off the sublevel bars, without verification.
pub fn derive_rectangles(bars: &[Bar]) -> RectangleBarcode {
    let mut rects = Vec::with_capacity(2 * bars.len());
    for bar in bars {
        match &bar.death_generator {
            None => rects.push(Rectangle {
                degree: bar.degree,
                c: bar.birth,
                ell1: f64::INFINITY,
                ell2: f64::INFINITY,
                rtype: RectType::S,
                generator: bar.birth_generator.clone(),
            }),
            Some(killer) => {
                let len = bar.length();
                rects.push(Rectangle {
                    degree: bar.degree,
                    c: bar.birth,
                    ell1: f64::INFINITY,
                    ell2: len,
                    rtype: RectType::B,
                    generator: bar.birth_generator.clone(),
                });
                rects.push(Rectangle {
                    degree: bar.degree + 1,
                    c: bar.death,
                    ell1: len,
                    ell2: f64::INFINITY,
                    rtype: RectType::N,
                    generator: killer.clone(),
                });
            }
        }
    }
    RectangleBarcode::new(rects)
}

/// The verified rectangle barcode of a valid complex.
pub fn rectangle_barcode(c: &FilteredComplex) -> Result<RectangleBarcode, BarcodeError> {
    let report = c.validate();
    if !report.is_ok() {
        return Err(ComplexError::Invalid(report.violations).into());
    }
    let rb = derive_rectangles(&sublevel_barcode(c));
    let verification = verify_decomposition(c, &rb);
    match verification.failures.into_iter().next() {
        Some(f) => Err(BarcodeError::Verification(f)),
        None => Ok(rb),
    }
}
