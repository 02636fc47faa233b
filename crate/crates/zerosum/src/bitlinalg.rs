//! Linear algebra over F_2 on word-packed bit-matrices.
//!
//! Rows are `u64` bitvectors (column j = bit j, up to 64 columns). The
//! canonical form used everywhere is the reduced row echelon form with
//! pivot columns strictly increasing, pivots being the lowest set bit of
//! each row. Equal subspaces therefore compare bit-identical, which is what
//! the census deduplication and certificate normalization rely on.

use crate::gf2n::{FieldElement, FieldSpec};
use crate::{Error, Result};

/// Default cap on exhaustive element iteration (2^26 elements).
pub const DEFAULT_ITER_CAP_LOG2: u32 = 26;

/// A rows x cols matrix over F_2, row-major, cols <= 64.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<u64>,
    cols: u32,
}

/// Result of reducing a matrix: RREF, rank, and a kernel basis.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub rref: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<u32>,
    /// Rows spanning { x : m . x = 0 }, in RREF.
    pub kernel_basis: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: Vec<u64>, cols: u32) -> BitMatrix {
        assert!(cols <= 64);
        if cols < 64 {
            let mask = (1u64 << cols) - 1;
            assert!(rows.iter().all(|r| r & !mask == 0), "row bits beyond cols");
        }
        BitMatrix { rows, cols }
    }

    pub fn zero(nrows: usize, cols: u32) -> BitMatrix {
        BitMatrix::new(vec![0; nrows], cols)
    }

    pub fn identity(n: u32) -> BitMatrix {
        BitMatrix::new((0..n).map(|i| 1u64 << i).collect(), n)
    }

    /// Builds the matrix whose j-th column is `columns[j]` (each a bitvector
    /// of `nrows` entries).
    pub fn from_columns(columns: &[u64], nrows: u32) -> BitMatrix {
        let mut rows = vec![0u64; nrows as usize];
        for (j, &col) in columns.iter().enumerate() {
            let mut c = col;
            while c != 0 {
                let i = c.trailing_zeros();
                rows[i as usize] |= 1 << j;
                c &= c - 1;
            }
        }
        BitMatrix::new(rows, columns.len() as u32)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> u32 {
        self.cols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Matrix-vector product over F_2; bit i of the result is the parity of
    /// `row_i & x`.
    pub fn mul_vec(&self, x: u64) -> u64 {
        let mut y = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            y |= (((row & x).count_ones() & 1) as u64) << i;
        }
        y
    }

    /// Gaussian elimination to RREF, with rank and kernel basis.
    pub fn reduce(&self) -> Reduction {
        let mut rows = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        rows.truncate(rank);

        // One kernel vector per free column: 1 at the free column, plus the
        // free column's entries down the pivot rows.
        let mut kernel = Vec::new();
        for col in 0..self.cols {
            if pivot_cols.contains(&col) {
                continue;
            }
            let mut v = 1u64 << col;
            for (r, &p) in pivot_cols.iter().enumerate() {
                if rows[r] & (1 << col) != 0 {
                    v |= 1 << p;
                }
            }
            kernel.push(v);
        }
        rref_in_place(&mut kernel);

        Reduction {
            rref: BitMatrix::new(rows, self.cols),
            rank,
            pivot_cols,
            kernel_basis: kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduce().rank
    }

    /// Solves `m . x = rhs` (bit i of rhs = equation i). Returns the
    /// solution with all free variables zero, or `None` if inconsistent.
    pub fn solve(&self, rhs: u64) -> Result<Option<u64>> {
        if self.nrows() < 64 && rhs >> self.nrows() != 0 {
            return Err(Error::DimensionMismatch);
        }
        // Augment each row with its rhs bit at column `cols`.
        let mut rows: Vec<u64> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| r as u64 | (((rhs >> i) & 1) << self.cols))
            .collect();
        let mut pivots: Vec<(usize, u32)> = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let aug = 1u64 << self.cols;
        if rows[rank..].iter().any(|&r| r & aug != 0) {
            return Ok(None);
        }
        let mut x = 0u64;
        for &(r, c) in &pivots {
            if rows[r] & aug != 0 {
                x |= 1 << c;
            }
        }
        Ok(Some(x))
    }
}

/// In-place RREF of a set of row vectors (lowest-set-bit pivots, rows sorted
/// by pivot, zero rows dropped). The result is the canonical basis of the
/// row space.
pub(crate) fn rref_in_place(rows: &mut Vec<u64>) {
    let mut out: Vec<u64> = Vec::new();
    for &r in rows.iter() {
        let mut v = r;
        for &b in &out {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            // Clear the new pivot from existing rows.
            let pivot = v & v.wrapping_neg();
            for b in out.iter_mut() {
                if *b & pivot != 0 {
                    *b ^= v;
                }
            }
            out.push(v);
        }
    }
    out.sort_unstable_by_key(|r| r.trailing_zeros());
    *rows = out;
}

/// Membership test against an RREF basis.
pub(crate) fn rref_contains(rows: &[u64], v: u64) -> bool {
    let mut v = v;
    for &b in rows {
        if v & (b & b.wrapping_neg()) != 0 {
            v ^= b;
        }
    }
    v == 0
}

/// Echelon form with *highest*-bit pivots, used for coset minimization.
pub(crate) fn high_echelon(rows: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &out {
            if b != 0 && (v >> (63 - b.leading_zeros())) & 1 != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let lead = 63 - v.leading_zeros();
            for b in out.iter_mut() {
                if (*b >> lead) & 1 != 0 {
                    *b ^= v;
                }
            }
            out.push(v);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Minimum (as integer encoding) of the coset `w + span(high_rows)`.
/// `high_rows` must come from [`high_echelon`].
pub(crate) fn coset_min(mut w: u64, high_rows: &[u64]) -> u64 {
    for &b in high_rows {
        let lead = 63 - b.leading_zeros();
        if (w >> lead) & 1 != 0 {
            w ^= b;
        }
    }
    w
}

/// Smallest element (integer encoding) of F_2^n not in the span of `rows`.
/// Every value below a power of two 2^m lies in the span iff all lower
/// powers do, so the answer is always the first basis monomial outside.
pub(crate) fn smallest_outside(rows: &[u64], n: u32) -> Option<u64> {
    (0..n).map(|m| 1u64 << m).find(|&p| !rref_contains(rows, p))
}

/// An F_2-subspace of F_{2^n} in canonical RREF basis form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    spec: FieldSpec,
    rows: Vec<u64>,
}

impl Subspace {
    /// Canonicalizes the span of the given vectors; duplicates and dependent
    /// inputs are absorbed.
    pub fn from_vectors(spec: &FieldSpec, vs: &[FieldElement]) -> Subspace {
        let mut rows: Vec<u64> = vs.iter().map(|v| v.bits()).collect();
        debug_assert!(rows.iter().all(|&r| spec.contains_bits(r)));
        rref_in_place(&mut rows);
        Subspace { spec: *spec, rows }
    }

    pub(crate) fn from_rref_rows(spec: &FieldSpec, rows: Vec<u64>) -> Subspace {
        debug_assert!({
            let mut check = rows.clone();
            rref_in_place(&mut check);
            check == rows
        });
        Subspace { spec: *spec, rows }
    }

    pub fn zero(spec: &FieldSpec) -> Subspace {
        Subspace { spec: *spec, rows: Vec::new() }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn dim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        self.rows.iter().map(|&r| FieldElement::new(r)).collect()
    }

    pub fn contains(&self, v: FieldElement) -> bool {
        rref_contains(&self.rows, v.bits())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|&r| rref_contains(&other.rows, r))
    }

    /// All 2^k elements in Gray-code order (consecutive elements differ by
    /// one basis vector), starting at zero. Errors once 2^k would exceed the
    /// default iteration cap.
    pub fn elements(&self) -> Result<GrayElements<'_>> {
        self.elements_with_cap(DEFAULT_ITER_CAP_LOG2)
    }

    pub fn elements_with_cap(&self, cap_log2: u32) -> Result<GrayElements<'_>> {
        if self.dim() > cap_log2 {
            return Err(Error::BudgetExceeded);
        }
        Ok(GrayElements {
            rows: &self.rows,
            total: 1u64 << self.dim(),
            idx: 0,
            current: 0,
        })
    }
}

/// Gray-code iterator over the elements of a subspace.
pub struct GrayElements<'a> {
    rows: &'a [u64],
    total: u64,
    idx: u64,
    current: u64,
}

impl Iterator for GrayElements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.idx == self.total {
            return None;
        }
        if self.idx > 0 {
            let flip = self.idx.trailing_zeros() as usize;
            self.current ^= self.rows[flip];
        }
        self.idx += 1;
        Some(FieldElement::new(self.current))
    }
}

/// The subfield F_{2^l} of F_{2^n} (for l | n) as an F_2-subspace: the
/// kernel of the linear map x -> x^(2^l) + x.
pub fn subfield_subspace(spec: &FieldSpec, l: u32) -> Result<Subspace> {
    let n = spec.n();
    if l == 0 || n % l != 0 {
        return Err(Error::NotADivisor { l, n });
    }
    let columns: Vec<u64> = (0..n)
        .map(|i| {
            let e = FieldElement::new(1u64 << i);
            (spec.frob(e, l % n) + e).bits()
        })
        .collect();
    let kernel = BitMatrix::from_columns(&columns, n).reduce().kernel_basis;
    let sub = Subspace::from_rref_rows(spec, kernel);
    debug_assert_eq!(sub.dim(), l);
    Ok(sub)
}

/// Number of k-dimensional subspaces of F_2^n (Gaussian binomial), or
/// `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    // Recurrence gb(n,k) = gb(n-1,k-1) + 2^k gb(n-1,k).
    let mut prev: Vec<u128> = vec![1];
    for row in 1..=n {
        let mut cur = vec![1u128; (row + 1) as usize];
        for j in 1..row {
            let a = prev[(j - 1) as usize];
            let b = prev[j as usize];
            cur[j as usize] = a.checked_add(b.checked_mul(1u128 << j)?)?;
        }
        prev = cur;
    }
    Some(prev[k as usize])
}

/// Streams every k-dimensional subspace of F_{2^n} exactly once, in a
/// deterministic order: echelon pivot patterns in lexicographic order, free
/// entries as a binary counter. Practical for n up to ~10.
pub fn enumerate_k_subspaces(spec: &FieldSpec, k: u32) -> Result<SubspaceEnumerator> {
    let n = spec.n();
    if k > n {
        return Err(Error::IndexOutOfRange);
    }
    let max_free = k * (n - k);
    if max_free > 63 {
        return Err(Error::CapExceeded);
    }
    Ok(SubspaceEnumerator {
        spec: *spec,
        n,
        k,
        pivots: (0..k).collect(),
        counter: 0,
        free_slots: Vec::new(),
        fresh_pattern: true,
        done: false,
    })
}

pub struct SubspaceEnumerator {
    spec: FieldSpec,
    n: u32,
    k: u32,
    pivots: Vec<u32>,
    counter: u64,
    free_slots: Vec<(usize, u32)>,
    fresh_pattern: bool,
    done: bool,
}

impl SubspaceEnumerator {
    fn compute_free_slots(&mut self) {
        self.free_slots.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free_slots.push((i, c));
                }
            }
        }
    }

    fn advance_pattern(&mut self) -> bool {
        // Next lexicographic k-combination of {0..n-1}.
        let k = self.k as usize;
        if k == 0 {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.pivots[i] < self.n - (k - i) as u32 {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        if self.fresh_pattern {
            self.compute_free_slots();
            self.fresh_pattern = false;
        }
        let mut rows: Vec<u64> = self.pivots.iter().map(|&p| 1u64 << p).collect();
        for (slot, &(row, col)) in self.free_slots.iter().enumerate() {
            if self.counter >> slot & 1 != 0 {
                rows[row] |= 1 << col;
            }
        }
        let result = Subspace::from_rref_rows(&self.spec, rows);

        self.counter += 1;
        if self.counter >> self.free_slots.len() != 0 {
            self.counter = 0;
            self.fresh_pattern = true;
            if !self.advance_pattern() {
                self.done = true;
            }
        }
        Some(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn f16() -> FieldSpec {
        FieldSpec::new(4).unwrap()
    }

    #[test]
    fn reduce_identity_and_zero() {
        let id = BitMatrix::identity(3);
        let r = id.reduce();
        assert_eq!(r.rank, 3);
        assert!(r.kernel_basis.is_empty());

        let z = BitMatrix::zero(3, 3);
        let r = z.reduce();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis.len(), 3);
    }

    #[test]
    fn reduce_rank_two_example() {
        // Rows (1,1,0), (0,1,1), (1,0,1) over three columns: rank 2 and the
        // kernel is spanned by (1,1,1).
        let m = BitMatrix::new(vec![0b011, 0b110, 0b101], 3);
        let r = m.reduce();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel_basis, vec![0b111]);
        for &v in &r.kernel_basis {
            assert_eq!(m.mul_vec(v), 0);
        }
        assert_eq!(r.rank + r.kernel_basis.len(), 3);
    }

    #[test]
    fn solve_examples() {
        let id = BitMatrix::identity(4);
        assert_eq!(id.solve(0b1010).unwrap(), Some(0b1010));

        let z = BitMatrix::zero(2, 2);
        assert_eq!(z.solve(0b01).unwrap(), None);

        // Equations x0+x1 = 1, x1 = 1 -> x = (0,1).
        let m = BitMatrix::new(vec![0b11, 0b10], 2);
        assert_eq!(m.solve(0b11).unwrap(), Some(0b10));
    }

    #[test]
    fn solve_prefers_zero_free_variables() {
        // Single equation x0 + x2 = 1 over three unknowns.
        let m = BitMatrix::new(vec![0b101], 3);
        assert_eq!(m.solve(0b1).unwrap(), Some(0b001));
    }

    #[test]
    fn subspace_canonicalization_examples() {
        let f = f16();
        let s = Subspace::from_vectors(&f, &[]);
        assert_eq!(s.dim(), 0);

        let a = f.element(0xb);
        let s = Subspace::from_vectors(&f, &[a, a]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.rows(), &[0xb]);

        let s = Subspace::from_vectors(&f, &[f.element(0x1), f.element(0x6), f.element(0x7)]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.rows(), &[0x1, 0x6]);
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let f = FieldSpec::new(9).unwrap();
        let mut rng = Rng::new(11);
        for _ in 0..100 {
            let vs: Vec<_> = (0..4).map(|_| rng.element(&f)).collect();
            let s1 = Subspace::from_vectors(&f, &vs);
            // Mix the generating set: sums and repeats span the same space.
            let mixed = vec![
                vs[0] + vs[1],
                vs[2],
                vs[1],
                vs[3] + vs[0],
                vs[3],
                vs[0],
            ];
            let s2 = Subspace::from_vectors(&f, &mixed);
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn membership_matches_rank_extension() {
        let f = FieldSpec::new(8).unwrap();
        let mut rng = Rng::new(5);
        for _ in 0..200 {
            let vs: Vec<_> = (0..3).map(|_| rng.element(&f)).collect();
            let s = Subspace::from_vectors(&f, &vs);
            let v = rng.element(&f);
            let mut extended = vs.clone();
            extended.push(v);
            let grown = Subspace::from_vectors(&f, &extended);
            assert_eq!(s.contains(v), grown.dim() == s.dim());
        }
    }

    #[test]
    fn gray_elements_cover_span_exactly_once() {
        let f = f16();
        let s = Subspace::from_vectors(&f, &[f.element(0x1), f.element(0x6)]);
        let mut got: Vec<u64> = s.elements().unwrap().map(|e| e.bits()).collect();
        got.sort_unstable();
        assert_eq!(got, vec![0x0, 0x1, 0x6, 0x7]);

        let zero = Subspace::zero(&f);
        let got: Vec<u64> = zero.elements().unwrap().map(|e| e.bits()).collect();
        assert_eq!(got, vec![0]);
    }

    #[test]
    fn elements_budget_guard() {
        let f = FieldSpec::new(40).unwrap();
        let vs: Vec<_> = (0..30).map(|i| f.element(1u64 << i)).collect();
        let s = Subspace::from_vectors(&f, &vs);
        assert!(matches!(s.elements(), Err(Error::BudgetExceeded)));
        assert!(s.elements_with_cap(30).is_ok());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1), Some(3));
        assert_eq!(gaussian_binomial(4, 2), Some(35));
        for n in 2..=8u32 {
            let f = FieldSpec::new(n).unwrap();
            for k in 0..=n {
                let count = enumerate_k_subspaces(&f, k).unwrap().count() as u128;
                assert_eq!(count, gaussian_binomial(n, k).unwrap(), "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn enumeration_yields_distinct_canonical_subspaces() {
        let f = f16();
        let all: Vec<Subspace> = enumerate_k_subspaces(&f, 2).unwrap().collect();
        assert_eq!(all.len(), 35);
        for s in &all {
            assert_eq!(s.dim(), 2);
        }
        let mut rows: Vec<Vec<u64>> = all.iter().map(|s| s.rows().to_vec()).collect();
        rows.sort();
        rows.dedup();
        assert_eq!(rows.len(), 35);
    }

    #[test]
    fn enumeration_k_zero() {
        let f = FieldSpec::new(6).unwrap();
        let all: Vec<Subspace> = enumerate_k_subspaces(&f, 0).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].dim(), 0);
    }

    #[test]
    fn subfield_examples() {
        let f = f16();
        let prime = subfield_subspace(&f, 1).unwrap();
        assert_eq!(prime.rows(), &[0x1]);

        let f4 = subfield_subspace(&f, 2).unwrap();
        assert_eq!(f4.rows(), &[0x1, 0x6]);

        let full = subfield_subspace(&f, 4).unwrap();
        assert_eq!(full.dim(), 4);

        assert!(matches!(
            subfield_subspace(&f, 3),
            Err(Error::NotADivisor { l: 3, n: 4 })
        ));
    }

    #[test]
    fn subfields_are_multiplicatively_closed() {
        for (n, l) in [(6u32, 2u32), (6, 3), (12, 4), (10, 5)] {
            let f = FieldSpec::new(n).unwrap();
            let sub = subfield_subspace(&f, l).unwrap();
            assert_eq!(sub.dim(), l);
            let elems: Vec<_> = sub.elements().unwrap().collect();
            assert_eq!(elems.len(), 1 << l);
            for &a in &elems {
                for &b in &elems {
                    assert!(sub.contains(f.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn coset_and_complement_helpers() {
        let rows = vec![0x1u64, 0x6];
        let high = high_echelon(&rows);
        // Coset of 0x7 over span{1,6}: minimum is 0.
        assert_eq!(coset_min(0x7, &high), 0x0);
        assert_eq!(smallest_outside(&rows, 4), Some(0x2));
        let full: Vec<u64> = (0..4).map(|i| 1u64 << i).collect();
        assert_eq!(smallest_outside(&full, 4), None);
    }

}
