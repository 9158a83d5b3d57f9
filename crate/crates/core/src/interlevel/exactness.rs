//! Weak and middle exactness of the commuting squares of the interlevel module.
//!
//! A quad `(a, a', b, b')` names the square
//!
//! ```text
//!   (a', b) ──→ (a', b')
//!     ↑            ↑
//!   (a,  b) ──→ (a,  b')
//! ```
//!
//! with source `s = (a, b)`, sides `p = (a', b)`, `q = (a, b')` and target
//! `t = (a', b')`. Subspaces of homology are represented by their lifts to
//! chains, so every comparison is a span membership test in chain coordinates.

use std::fmt;

use thiserror::Error;

use super::{HomologyPresentation, Interlevel};
use crate::complex::{FilteredComplex, Window};
use crate::gf2::{intersection_basis, BitMatrix, BitVec, Span};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub a: f64,
    pub a2: f64,
    pub b: f64,
    pub b2: f64,
}

impl Quad {
    pub fn new(a: f64, a2: f64, b: f64, b2: f64) -> Self {
        Quad { a, a2, b, b2 }
    }

    pub fn source(&self) -> Window {
        Window::new(self.a, self.b)
    }

    pub fn upper(&self) -> Window {
        Window::new(self.a2, self.b)
    }

    pub fn right(&self) -> Window {
        Window::new(self.a, self.b2)
    }

    pub fn target(&self) -> Window {
        Window::new(self.a2, self.b2)
    }

    fn is_square(&self) -> bool {
        self.a <= self.a2 && self.b <= self.b2
    }

    fn is_middle(&self) -> bool {
        self.a <= self.a2 && self.a2 <= self.b && self.b <= self.b2
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::extended::fmt_ext;
        write!(
            f,
            "({}, {}, {}, {})",
            fmt_ext(self.a),
            fmt_ext(self.a2),
            fmt_ext(self.b),
            fmt_ext(self.b2)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactnessCondition {
    /// The image of the diagonal is the intersection of the side images.
    Image,
    /// The kernel of the diagonal is the sum of the side kernels.
    Kernel,
    /// `H_s → H_p ⊕ H_q → H_t` is exact in the middle.
    Middle,
}

impl fmt::Display for ExactnessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactnessCondition::Image => "image",
            ExactnessCondition::Kernel => "kernel",
            ExactnessCondition::Middle => "middle",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessFailure {
    pub condition: ExactnessCondition,
    pub quad: Quad,
    pub degree: i32,
    /// A chain vector lying in one side of the failed equality but not the other.
    pub witness: BitVec,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactnessError {
    #[error("quad {0} is not admissible for this check")]
    Inadmissible(Quad),
    #[error("{} exactness fails in degree {} at quad {}", .0.condition, .0.degree, .0.quad)]
    Failure(ExactnessFailure),
}

fn combine(basis: &[BitVec], len: usize, coeffs: impl Iterator<Item = usize>) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in coeffs {
        v.xor_assign(&basis[i]);
    }
    v
}

/// First vector of `vs` outside `span`.
fn escapee<'a>(span: &Span, vs: impl IntoIterator<Item = &'a BitVec>) -> Option<BitVec> {
    vs.into_iter().find(|v| !span.contains(v)).cloned()
}

/// Cycles `z` of `s` whose image in `x` is a boundary.
fn kernel_lift(il: &Interlevel, s: &HomologyPresentation, x: &HomologyPresentation) -> Vec<BitVec> {
    let n = il.rank(s.degree);
    let pushed = il.push_cycles(s, &x.window);
    let m = pushed.len();
    let columns: Vec<BitVec> = pushed
        .into_iter()
        .chain(x.boundary_span.basis().iter().cloned())
        .collect();
    let mat = BitMatrix::from_columns(n, columns).expect("chain vectors share a length");
    mat.kernel_basis()
        .iter()
        .map(|k| combine(&s.cycle_basis, n, k.ones().filter(|&i| i < m)))
        .collect()
}

fn failure(
    condition: ExactnessCondition,
    quad: Quad,
    degree: i32,
    witness: BitVec,
) -> ExactnessError {
    ExactnessError::Failure(ExactnessFailure {
        condition,
        quad,
        degree,
        witness,
    })
}

impl Interlevel {
    fn square(&self, k: i32, quad: &Quad) -> [HomologyPresentation; 4] {
        [
            self.homology(k, quad.source()),
            self.homology(k, quad.upper()),
            self.homology(k, quad.right()),
            self.homology(k, quad.target()),
        ]
    }

    pub fn check_weak_exactness(&self, k: i32, quad: &Quad) -> Result<(), ExactnessError> {
        if !quad.is_square() {
            return Err(ExactnessError::Inadmissible(*quad));
        }
        let [s, p, q, t] = self.square(k, quad);
        self.weak_exactness_of(k, quad, [&s, &p, &q, &t])
    }

    /// Same as [`Interlevel::check_weak_exactness`] with precomputed presentations `[s, p, q, t]`.
    pub fn weak_exactness_of(
        &self,
        k: i32,
        quad: &Quad,
        [s, p, q, t]: [&HomologyPresentation; 4],
    ) -> Result<(), ExactnessError> {
        let n = self.rank(k);

        let image_lift = |x: &HomologyPresentation| -> Vec<BitVec> {
            let mut v = t.boundary_span.basis().to_vec();
            v.extend(self.push_cycles(x, &t.window));
            v
        };
        let (us, up, uq) = (image_lift(s), image_lift(p), image_lift(q));
        let span_s = Span::from_vectors(n, &us);
        let span_p = Span::from_vectors(n, &up);
        let span_q = Span::from_vectors(n, &uq);
        let image_fail = escapee(&span_p, &us)
            .or_else(|| escapee(&span_q, &us))
            .or_else(|| escapee(&span_s, &intersection_basis(n, &up, &uq)));
        if let Some(w) = image_fail {
            return Err(failure(ExactnessCondition::Image, *quad, k, w));
        }

        let kt = kernel_lift(self, s, t);
        let kp = kernel_lift(self, s, p);
        let kq = kernel_lift(self, s, q);
        let sum = Span::from_vectors(n, kp.iter().chain(&kq));
        let kernel_fail = escapee(&sum, &kt).or_else(|| {
            let span_t = Span::from_vectors(n, &kt);
            escapee(&span_t, kp.iter().chain(&kq))
        });
        if let Some(w) = kernel_fail {
            return Err(failure(ExactnessCondition::Kernel, *quad, k, w));
        }
        Ok(())
    }

    pub fn check_middle_exactness(&self, k: i32, quad: &Quad) -> Result<(), ExactnessError> {
        if !quad.is_middle() {
            return Err(ExactnessError::Inadmissible(*quad));
        }
        let [s, p, q, t] = self.square(k, quad);
        self.middle_exactness_of(k, quad, [&s, &p, &q, &t])
    }

    /// Same as [`Interlevel::check_middle_exactness`] with precomputed presentations `[s, p, q, t]`.
    pub fn middle_exactness_of(
        &self,
        k: i32,
        quad: &Quad,
        [s, p, q, t]: [&HomologyPresentation; 4],
    ) -> Result<(), ExactnessError> {
        let n = self.rank(k);
        let zero = BitVec::zeros(n);

        // Chains of H_p ⊕ H_q live in coordinates of length 2n.
        let mut image: Vec<BitVec> = Vec::new();
        let to_p = self.push_cycles(s, &p.window);
        let to_q = self.push_cycles(s, &q.window);
        image.extend(to_p.iter().zip(&to_q).map(|(x, y)| x.concat(y)));
        image.extend(p.boundary_span.basis().iter().map(|b| b.concat(&zero)));
        image.extend(q.boundary_span.basis().iter().map(|b| zero.concat(b)));
        let image_span = Span::from_vectors(2 * n, &image);

        let zp = self.push_cycles(p, &t.window);
        let zq = self.push_cycles(q, &t.window);
        let (np, nq) = (zp.len(), zq.len());
        let columns: Vec<BitVec> = zp
            .into_iter()
            .chain(zq)
            .chain(t.boundary_span.basis().iter().cloned())
            .collect();
        let mat = BitMatrix::from_columns(n, columns).expect("chain vectors share a length");
        let kernel: Vec<BitVec> = mat
            .kernel_basis()
            .iter()
            .map(|c| {
                let left = combine(&p.cycle_basis, n, c.ones().filter(|&i| i < np));
                let right = combine(
                    &q.cycle_basis,
                    n,
                    c.ones().filter(|&i| i >= np && i < np + nq).map(|i| i - np),
                );
                left.concat(&right)
            })
            .collect();

        if let Some(w) = escapee(&image_span, &kernel) {
            return Err(failure(ExactnessCondition::Middle, *quad, k, w));
        }
        // Image inside kernel: the composite sends each image vector to a boundary of t.
        let bt = &t.boundary_span;
        let mask_t = self.mask(k, &t.window);
        for v in &image {
            let sum = v.slice(0, n).xor(&v.slice(n, 2 * n)).masked(&mask_t);
            if !bt.contains(&sum) {
                return Err(failure(ExactnessCondition::Middle, *quad, k, v.clone()));
            }
        }
        Ok(())
    }
}

pub fn check_weak_exactness(
    c: &FilteredComplex,
    k: i32,
    quad: &Quad,
) -> Result<(), ExactnessError> {
    Interlevel::new(c).check_weak_exactness(k, quad)
}

pub fn check_middle_exactness(
    c: &FilteredComplex,
    k: i32,
    quad: &Quad,
) -> Result<(), ExactnessError> {
    Interlevel::new(c).check_middle_exactness(k, quad)
}
