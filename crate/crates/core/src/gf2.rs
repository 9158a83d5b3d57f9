//! Exact linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words. Matrices are stored column-major,
//! since every map we build (boundary operators, inclusions of cycle bases)
//! is naturally described by the images of basis vectors.
//!
//! Elimination is column-ordered with the lowest set bit as the pivot, so
//! returned bases are a deterministic function of the input.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dimension mismatch: expected length {expected}, got {found}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b & 1 == 1)
                .map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Index of the highest set bit.
    pub fn highest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// Iterator over the indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + t)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in and");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Entrywise product: keeps only the coordinates set in `mask`.
    pub fn masked(&self, mask: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.and_assign(mask);
        out
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The coordinates `range` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        assert!(start <= end && end <= self.len);
        BitVec::from_indices(
            end - start,
            self.ones()
                .filter(|&i| i >= start && i < end)
                .map(|i| i - start),
        )
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVec({s})")
    }
}

/// A dense matrix over GF(2), stored by columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    columns: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            columns: vec![BitVec::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            rows: n,
            columns: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Result<Self, DimensionMismatch> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(DimensionMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        Ok(BitMatrix { rows, columns })
    }

    /// Builds a matrix from row-major 0/1 entries; all rows must have equal length.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, e & 1 == 1);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.columns[col].set(row, value);
    }

    pub fn column(&self, col: usize) -> &BitVec {
        &self.columns[col]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols(), self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for i in col.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, DimensionMismatch> {
        if v.len() != self.cols() {
            return Err(DimensionMismatch {
                expected: self.cols(),
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for j in v.ones() {
            out.xor_assign(&self.columns[j]);
        }
        Ok(out)
    }

    /// The product `self · rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, DimensionMismatch> {
        let columns = rhs
            .columns
            .iter()
            .map(|c| self.mul_vec(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitMatrix {
            rows: self.rows,
            columns,
        })
    }

    pub fn rank(&self) -> usize {
        let mut span = Span::new(self.rows);
        self.columns.iter().filter(|c| span.insert(c)).count()
    }

    /// A basis of `{v : self · v = 0}`, of size `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut elim = Elimination::new(self.rows, self.cols());
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            if let Some(combo) = elim.push(col.clone(), BitVec::unit(self.cols(), j)) {
                kernel.push(combo);
            }
        }
        kernel
    }

    /// Some `x` with `self · x = b`, or `None` when `b` is not in the column space.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, DimensionMismatch> {
        if b.len() != self.rows {
            return Err(DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut elim = Elimination::new(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            elim.push(col.clone(), BitVec::unit(self.cols(), j));
        }
        Ok(elim.express(b))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols())?;
        for i in 0..self.rows {
            let row: String = (0..self.cols())
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Column elimination that remembers, for each reduced column, which input
/// columns were summed to produce it.
struct Elimination {
    pivot_slot: Vec<Option<usize>>,
    reduced: Vec<(BitVec, BitVec)>,
    combo_len: usize,
}

impl Elimination {
    fn new(rows: usize, combo_len: usize) -> Self {
        Elimination {
            pivot_slot: vec![None; rows],
            reduced: Vec::new(),
            combo_len,
        }
    }

    /// Reduces `(v, combo)`; returns the combination if `v` reduced to zero.
    fn push(&mut self, mut v: BitVec, mut combo: BitVec) -> Option<BitVec> {
        while let Some(p) = v.lowest_one() {
            match self.pivot_slot[p] {
                Some(slot) => {
                    let (rv, rc) = &self.reduced[slot];
                    v.xor_assign(rv);
                    combo.xor_assign(rc);
                }
                None => {
                    self.pivot_slot[p] = Some(self.reduced.len());
                    self.reduced.push((v, combo));
                    return None;
                }
            }
        }
        Some(combo)
    }

    fn express(&self, b: &BitVec) -> Option<BitVec> {
        let mut v = b.clone();
        let mut combo = BitVec::zeros(self.combo_len);
        while let Some(p) = v.lowest_one() {
            let slot = self.pivot_slot[p]?;
            let (rv, rc) = &self.reduced[slot];
            v.xor_assign(rv);
            combo.xor_assign(rc);
        }
        Some(combo)
    }
}

/// An echelon basis of a subspace of GF(2)^n answering membership queries.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    pivot_slot: Vec<Option<usize>>,
    basis: Vec<BitVec>,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Span {
            len,
            pivot_slot: vec![None; len],
            basis: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a BitVec>>(len: usize, vectors: I) -> Self {
        let mut span = Span::new(len);
        for v in vectors {
            span.insert(v);
        }
        span
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// Residue of `v` after eliminating every pivot of the span; zero iff `v` is a member.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.len, "span query of wrong length");
        // A basis vector with pivot p only touches bits >= p, so one ascending sweep suffices.
        let mut r = v.clone();
        let mut from = 0;
        loop {
            let next = r
                .ones()
                .filter(|&i| i >= from)
                .find_map(|i| self.pivot_slot[i].map(|s| (i, s)));
            let Some((p, slot)) = next else { break };
            r.xor_assign(&self.basis[slot]);
            from = p + 1;
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.len, "span insert of wrong length");
        let mut r = v.clone();
        while let Some(p) = r.lowest_one() {
            match self.pivot_slot[p] {
                Some(slot) => r.xor_assign(&self.basis[slot]),
                None => {
                    self.pivot_slot[p] = Some(self.basis.len());
                    self.basis.push(r);
                    return true;
                }
            }
        }
        false
    }
}

/// Reduced representation of `span(generators)` supporting membership queries.
pub fn image_membership_matrix(len: usize, generators: &[BitVec]) -> Span {
    Span::from_vectors(len, generators)
}

/// A basis of `span(a) ∩ span(b)`; all vectors must share one length.
pub fn intersection_basis(len: usize, a: &[BitVec], b: &[BitVec]) -> Vec<BitVec> {
    let columns: Vec<BitVec> = a.iter().chain(b.iter()).cloned().collect();
    let m = BitMatrix::from_columns(len, columns).expect("intersection inputs share a length");
    let mut out = Span::new(len);
    for k in m.kernel_basis() {
        let mut v = BitVec::zeros(len);
        for i in k.ones().filter(|&i| i < a.len()) {
            v.xor_assign(&a[i]);
        }
        out.insert(&v);
    }
    out.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(BitMatrix::identity(2).rank(), 2);
        assert_eq!(BitMatrix::from_rows(&[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(2).kernel_basis().is_empty());
        let k = BitMatrix::from_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![BitVec::from_bits(&[1, 1])]);
        let k = BitMatrix::zeros(0, 3).kernel_basis();
        assert_eq!(k, (0..3).map(|i| BitVec::unit(3, i)).collect::<Vec<_>>());
    }

    #[test]
    fn solve_examples() {
        let x = BitMatrix::identity(2)
            .solve(&BitVec::from_bits(&[1, 0]))
            .unwrap();
        assert_eq!(x, Some(BitVec::from_bits(&[1, 0])));

        let m = BitMatrix::from_rows(&[&[1, 1]]);
        let x = m.solve(&BitVec::from_bits(&[1])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), BitVec::from_bits(&[1]));

        let z = BitMatrix::zeros(1, 1);
        assert_eq!(z.solve(&BitVec::from_bits(&[1])).unwrap(), None);
        assert!(z.solve(&BitVec::zeros(2)).is_err());
    }

    #[test]
    fn membership_examples() {
        let span = image_membership_matrix(2, &[BitVec::from_bits(&[1, 0])]);
        assert!(span.contains(&BitVec::from_bits(&[1, 0])));
        assert!(!span.contains(&BitVec::from_bits(&[0, 1])));
        assert_eq!(span.dim(), 1);
        let empty = image_membership_matrix(3, &[]);
        assert!(empty.contains(&BitVec::zeros(3)));
        assert_eq!(empty.dim(), 0);
    }

    #[test]
    fn span_reduce_clears_all_pivots() {
        // Pivot 0 from (1,1,0), pivot 2 from (0,0,1); (0,1,1) reduces via pivot 2 only.
        let span = Span::from_vectors(
            3,
            &[BitVec::from_bits(&[1, 1, 0]), BitVec::from_bits(&[0, 0, 1])],
        );
        let r = span.reduce(&BitVec::from_bits(&[0, 1, 1]));
        assert_eq!(r, BitVec::from_bits(&[0, 1, 0]));
        assert!(span.contains(&BitVec::from_bits(&[1, 1, 1])));
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let e = |i| BitVec::unit(3, i);
        let basis = intersection_basis(3, &[e(0), e(1)], &[e(1), e(2)]);
        assert_eq!(basis, vec![e(1)]);
    }

    #[test]
    fn bit_helpers() {
        let v = BitVec::from_indices(70, [3, 65, 69]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 65, 69]);
        assert_eq!(v.lowest_one(), Some(3));
        assert_eq!(v.highest_one(), Some(69));
        assert_eq!(v.count_ones(), 3);
        let w = v.concat(&BitVec::from_bits(&[1]));
        assert_eq!(w.len(), 71);
        assert!(w.get(70));
        assert_eq!(w.slice(65, 71).ones().collect::<Vec<_>>(), vec![0, 4, 5]);
    }
}
