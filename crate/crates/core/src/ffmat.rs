//! Exact dense linear algebra over the prime fields F_p.
//!
//! Operations: `rref`, `kernel`, `solve` on [`FpMatrix`], and the streaming
//! [`Echelon`] accumulator for huge row-generated systems (rows are inserted
//! one at a time; at most `cols` pivot rows are ever retained, so a matrix
//! with billions of rows is never materialized).
//!
//! Representation: rows are packed into machine words. For p = 2 each column
//! is one bit; for odd p each column is one byte lane (eight lanes per u64),
//! kept reduced to [0, p). Lane arithmetic is carry-free because p <= 13.
//!
//! Determinism: all elimination picks the leftmost nonzero column as pivot
//! and scans rows in insertion order, so results depend only on the input.

use std::fmt;

/// Largest supported field characteristic. The lane-wise compare used during
/// reduction needs p^2 - 2p <= 127 so no intermediate crosses a byte boundary.
pub const MAX_PRIME: u32 = 11;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("characteristic {0} is not a prime in 2..={MAX_PRIME}")]
    BadPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("entry {0} out of range for F_{1}")]
    BadEntry(u32, u32),
}

#[must_use]
pub fn is_supported_prime(p: u32) -> bool {
    (2..=MAX_PRIME).contains(&p) && (2..p).all(|d| p % d != 0)
}

/// Multiplicative inverse in F_p, p prime, 0 < a < p.
#[must_use]
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a != 0 && a < p);
    (1..p).find(|&x| (a as u32 * x as u32) % p as u32 == 1).unwrap()
}

// === packed vectors ===

const HI: u64 = 0x8080_8080_8080_8080;
const LO: u64 = 0x0101_0101_0101_0101;

/// Dense vector over F_p with word-packed storage.
///
/// p = 2: one bit per entry. Odd p: one byte per entry, always reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpVec {
    p: u8,
    len: usize,
    words: Vec<u64>,
}

impl fmt::Debug for FpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpVec(p={}, [", self.p)?;
        for i in 0..self.len.min(40) {
            write!(f, "{}", self.get(i))?;
        }
        if self.len > 40 {
            write!(f, "...")?;
        }
        write!(f, "])")
    }
}

impl FpVec {
    #[must_use]
    pub fn zero(p: u8, len: usize) -> Self {
        let nwords = if p == 2 { len.div_ceil(64) } else { len.div_ceil(8) };
        FpVec { p, len, words: vec![0; nwords] }
    }

    #[must_use]
    pub fn from_entries(p: u8, entries: &[u8]) -> Self {
        let mut v = FpVec::zero(p, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            debug_assert!(e < p);
            v.set(i, e);
        }
        v
    }

    #[must_use]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        if self.p == 2 {
            ((self.words[i / 64] >> (i % 64)) & 1) as u8
        } else {
            (self.words[i / 8] >> ((i % 8) * 8)) as u8
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u8) {
        debug_assert!(i < self.len && v < self.p);
        if self.p == 2 {
            let (w, b) = (i / 64, i % 64);
            self.words[w] = (self.words[w] & !(1 << b)) | ((v as u64) << b);
        } else {
            let (w, s) = (i / 8, (i % 8) * 8);
            self.words[w] = (self.words[w] & !(0xff << s)) | ((v as u64) << s);
        }
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, v: u8) {
        let cur = self.get(i);
        self.set(i, ((cur as u32 + v as u32) % self.p as u32) as u8);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Leftmost nonzero column at or after `from`, with its value.
    #[must_use]
    pub fn leading(&self, from: usize) -> Option<(usize, u8)> {
        if from >= self.len {
            return None;
        }
        if self.p == 2 {
            let mut w = from / 64;
            let mut word = self.words[w] & ((!0u64) << (from % 64));
            loop {
                if word != 0 {
                    let c = w * 64 + word.trailing_zeros() as usize;
                    return if c < self.len { Some((c, 1)) } else { None };
                }
                w += 1;
                if w >= self.words.len() {
                    return None;
                }
                word = self.words[w];
            }
        } else {
            let mut w = from / 8;
            let shift = (from % 8) * 8;
            let mut word = if shift == 0 { self.words[w] } else { self.words[w] >> shift << shift };
            loop {
                if word != 0 {
                    let byte = word.trailing_zeros() as usize / 8;
                    let c = w * 8 + byte;
                    return if c < self.len { Some((c, (word >> (byte * 8)) as u8)) } else { None };
                }
                w += 1;
                if w >= self.words.len() {
                    return None;
                }
                word = self.words[w];
            }
        }
    }

    /// self += c * other. Lanes stay reduced.
    pub fn axpy(&mut self, c: u8, other: &FpVec) {
        debug_assert_eq!(self.p, other.p);
        debug_assert_eq!(self.len, other.len);
        if c == 0 {
            return;
        }
        let p = self.p;
        if p == 2 {
            for (d, s) in self.words.iter_mut().zip(&other.words) {
                *d ^= s;
            }
        } else {
            // max lane after the fused multiply-add is (p-1) + (p-1)^2 = p(p-1),
            // so p-1 conditional-subtract rounds restore every lane to [0, p)
            let rounds = p as u32 - 1;
            let thresh = LO.wrapping_mul((0x80 - p) as u64);
            for (d, s) in self.words.iter_mut().zip(&other.words) {
                let mut t = d.wrapping_add(s.wrapping_mul(c as u64));
                for _ in 0..rounds {
                    // per-lane flag for value >= p, then subtract p from those lanes
                    let ge = (t.wrapping_add(thresh) & HI) >> 7;
                    t = t.wrapping_sub(ge.wrapping_mul(p as u64));
                }
                *d = t;
            }
        }
    }

    /// self *= c, c nonzero.
    pub fn scale(&mut self, c: u8) {
        debug_assert!(c != 0 && c < self.p);
        if c == 1 {
            return;
        }
        let p = self.p;
        // max lane after the multiply is (p-1)^2
        let rounds = ((p as u32 - 1) * (p as u32 - 1) / p as u32).max(1);
        let thresh = LO.wrapping_mul((0x80 - p) as u64);
        for d in &mut self.words {
            let mut t = d.wrapping_mul(c as u64);
            for _ in 0..rounds {
                let ge = (t.wrapping_add(thresh) & HI) >> 7;
                t = t.wrapping_sub(ge.wrapping_mul(p as u64));
            }
            *d = t;
        }
    }

    /// Overwrite with a copy of `other`, reusing storage. Same shape only.
    pub fn copy_from(&mut self, other: &FpVec) {
        debug_assert_eq!(self.p, other.p);
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    #[must_use]
    pub fn to_entries(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

// === streaming echelon accumulator ===

/// Incremental row-echelon form for systems whose rows arrive one at a time.
///
/// Holds at most `cols` pivot rows regardless of how many rows are inserted;
/// `insert` returns whether the row increased the rank. Pivot rows keep a
/// leading coefficient of 1. `kernel_basis` back-reduces in place first.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u8,
    cols: usize,
    /// pivot_of[c] = index into rows of the pivot row with leading column c.
    pivot_of: Vec<u32>,
    rows: Vec<FpVec>,
    back_reduced: bool,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    #[must_use]
    pub fn new(p: u8, cols: usize) -> Self {
        Echelon { p, cols, pivot_of: vec![NO_PIVOT; cols], rows: Vec::new(), back_reduced: true }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduce `v` against the current pivot rows in place. Afterwards every
    /// remaining nonzero of `v` sits in a pivot-free column.
    pub fn reduce(&self, v: &mut FpVec) {
        let mut from = 0;
        while let Some((c, val)) = v.leading(from) {
            let r = self.pivot_of[c];
            if r == NO_PIVOT {
                from = c + 1;
                continue;
            }
            let coef = (self.p - val) % self.p;
            v.axpy(coef, &self.rows[r as usize]);
            from = c; // the axpy zeroed column c and touched nothing left of it
        }
    }

    /// Insert a row; returns true iff it was independent of the rows so far.
    pub fn insert(&mut self, mut v: FpVec) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut from = 0;
        loop {
            match v.leading(from) {
                None => return false,
                Some((c, val)) => {
                    let r = self.pivot_of[c];
                    if r == NO_PIVOT {
                        if val != 1 {
                            v.scale(inv_mod(val, self.p));
                        }
                        self.pivot_of[c] = self.rows.len() as u32;
                        self.rows.push(v);
                        self.back_reduced = false;
                        return true;
                    }
                    let coef = (self.p - val) % self.p;
                    v.axpy(coef, &self.rows[r as usize]);
                    from = c;
                }
            }
        }
    }

    /// Pivot columns in ascending order.
    #[must_use]
    pub fn pivot_cols(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_of[c] != NO_PIVOT).collect()
    }

    /// Pivot rows whose leading column is ≥ `c`, ascending by pivot column.
    /// With columns split into a value block and a tag block, these are the
    /// rows supported on the tag block alone.
    #[must_use]
    pub fn rows_from_col(&self, c: usize) -> Vec<&FpVec> {
        (c..self.cols)
            .filter_map(|j| {
                let r = self.pivot_of[j];
                if r == NO_PIVOT {
                    None
                } else {
                    Some(&self.rows[r as usize])
                }
            })
            .collect()
    }

    fn back_reduce(&mut self) {
        if self.back_reduced {
            return;
        }
        let pivots = self.pivot_cols();
        // eliminate above each pivot, right to left
        for &c in pivots.iter().rev() {
            let src = self.pivot_of[c] as usize;
            let src_row = self.rows[src].clone();
            for r in 0..self.rows.len() {
                if r == src {
                    continue;
                }
                let val = self.rows[r].get(c);
                if val != 0 {
                    let coef = (self.p - val) % self.p;
                    self.rows[r].axpy(coef, &src_row);
                }
            }
        }
        self.back_reduced = true;
    }

    /// Basis of the null space of the accumulated row space, one vector per
    /// free column, deterministic (free columns ascending).
    #[must_use]
    pub fn kernel_basis(&mut self) -> Vec<FpVec> {
        self.back_reduce();
        let p = self.p;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if self.pivot_of[free] != NO_PIVOT {
                continue;
            }
            let mut v = FpVec::zero(p, self.cols);
            v.set(free, 1);
            for c in 0..self.cols {
                let r = self.pivot_of[c];
                if r != NO_PIVOT {
                    let val = self.rows[r as usize].get(free);
                    if val != 0 {
                        v.set(c, (p - val) % p);
                    }
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Membership of v in the accumulated row space.
    #[must_use]
    pub fn contains(&self, v: &FpVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}

// === dense matrices ===

/// Dense matrix over F_p, stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u8,
    nrows: usize,
    ncols: usize,
    rows: Vec<FpVec>,
}

/// Result of row reduction: rank, pivot columns ascending, and the reduced
/// matrix (same row space as the input).
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: FpMatrix,
}

impl FpMatrix {
    pub fn new(p: u32, nrows: usize, ncols: usize) -> Result<Self, FfError> {
        if !is_supported_prime(p) {
            return Err(FfError::BadPrime(p));
        }
        let p = p as u8;
        Ok(FpMatrix { p, nrows, ncols, rows: vec![FpVec::zero(p, ncols); nrows] })
    }

    pub fn from_entries(p: u32, nrows: usize, ncols: usize, entries: &[u32]) -> Result<Self, FfError> {
        if entries.len() != nrows * ncols {
            return Err(FfError::DimMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                nrows,
                ncols
            )));
        }
        let mut m = FpMatrix::new(p, nrows, ncols)?;
        for (k, &e) in entries.iter().enumerate() {
            if e >= p {
                return Err(FfError::BadEntry(e, p));
            }
            m.rows[k / ncols].set(k % ncols, e as u8);
        }
        Ok(m)
    }

    #[must_use]
    pub fn from_rows(p: u8, ncols: usize, rows: Vec<FpVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols && r.p() == p));
        FpMatrix { p, nrows: rows.len(), ncols, rows }
    }

    #[must_use]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[must_use]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[must_use]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    #[must_use]
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i].get(j)
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: u8) {
        self.rows[i].set(j, v);
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &FpVec {
        &self.rows[i]
    }

    /// Reduced row-echelon form; deterministic leftmost pivoting.
    #[must_use]
    pub fn rref(&self) -> Rref {
        let mut ech = Echelon::new(self.p, self.ncols);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.back_reduce();
        let pivots = ech.pivot_cols();
        // rows ordered by pivot column
        let rows: Vec<FpVec> = pivots.iter().map(|&c| ech.rows[ech.pivot_of[c] as usize].clone()).collect();
        let rank = rows.len();
        Rref { rank, pivots, reduced: FpMatrix::from_rows(self.p, self.ncols, rows) }
    }

    /// Basis for {x : self * x = 0}.
    #[must_use]
    pub fn kernel(&self) -> Vec<FpVec> {
        let mut ech = Echelon::new(self.p, self.ncols);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.kernel_basis()
    }

    /// One solution of self * x = b (free variables set to 0), or None.
    pub fn solve(&self, b: &[u8]) -> Result<Option<Vec<u8>>, FfError> {
        if b.len() != self.nrows {
            return Err(FfError::DimMismatch(format!(
                "rhs length {} for {} rows",
                b.len(),
                self.nrows
            )));
        }
        // eliminate on [A | b]
        let aug_cols = self.ncols + 1;
        let mut ech = Echelon::new(self.p, aug_cols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut v = FpVec::zero(self.p, aug_cols);
            for j in 0..self.ncols {
                let e = r.get(j);
                if e != 0 {
                    v.set(j, e);
                }
            }
            if b[i] != 0 {
                v.set(self.ncols, b[i] % self.p);
            }
            ech.insert(v);
        }
        if ech.pivot_of[self.ncols] != NO_PIVOT {
            return Ok(None); // inconsistent
        }
        ech.back_reduce();
        let mut x = vec![0u8; self.ncols];
        for c in 0..self.ncols {
            let r = ech.pivot_of[c];
            if r != NO_PIVOT {
                x[c] = ech.rows[r as usize].get(self.ncols);
            }
        }
        Ok(Some(x))
    }

    /// self * x over F_p.
    #[must_use]
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        debug_assert_eq!(x.len(), self.ncols);
        let p = self.p as u32;
        self.rows
            .iter()
            .map(|r| {
                let mut acc = 0u32;
                for (j, &xj) in x.iter().enumerate() {
                    if xj != 0 {
                        acc += r.get(j) as u32 * xj as u32;
                    }
                }
                (acc % p) as u8
            })
            .collect()
    }
}

// === tests ===

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u32, rows: usize, cols: usize, e: &[u32]) -> FpMatrix {
        FpMatrix::from_entries(p, rows, cols, e).unwrap()
    }

    #[test]
    fn rref_f2_two_by_three() {
        let m = mat(2, 2, 3, &[1, 1, 0, 0, 1, 1]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_f2_matches_exhaustive_oracle() {
        // oracle: enumerate all 8 vectors of F_2^3 and keep those annihilated
        let m = mat(2, 2, 3, &[1, 1, 0, 0, 1, 1]);
        let mut expected = Vec::new();
        for bits in 0..8u32 {
            let x = [(bits & 1) as u8, ((bits >> 1) & 1) as u8, ((bits >> 2) & 1) as u8];
            if x != [0, 0, 0] && m.apply(&x) == vec![0, 0] {
                expected.push(x.to_vec());
            }
        }
        assert_eq!(expected, vec![vec![1, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_entries(), vec![1, 1, 1]);
    }

    #[test]
    fn solve_f3_matches_exhaustive_oracle() {
        // oracle: exhaust all 9 candidate vectors over F_3^2
        let m = mat(3, 2, 2, &[1, 1, 0, 1]);
        let b = [0u8, 1];
        let mut expected = Vec::new();
        for a in 0..3u8 {
            for c in 0..3u8 {
                if m.apply(&[a, c]) == b.to_vec() {
                    expected.push(vec![a, c]);
                }
            }
        }
        assert_eq!(expected, vec![vec![2, 1]]);
        assert_eq!(m.solve(&b).unwrap(), Some(vec![2, 1]));
    }

    #[test]
    fn solve_reports_inconsistent_system() {
        let m = mat(2, 2, 2, &[1, 1, 1, 1]);
        assert_eq!(m.solve(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn solve_rejects_bad_rhs_length() {
        let m = mat(2, 2, 2, &[1, 0, 0, 1]);
        assert!(m.solve(&[1]).is_err());
    }

    #[test]
    fn bad_prime_rejected() {
        assert!(FpMatrix::new(4, 1, 1).is_err());
        assert!(FpMatrix::new(1, 1, 1).is_err());
        assert!(FpMatrix::new(13, 1, 1).is_err());
        assert!(FpMatrix::new(5, 1, 1).is_ok());
        assert!(FpMatrix::new(11, 1, 1).is_ok());
    }

    #[test]
    fn echelon_insert_tracks_rank() {
        let mut e = Echelon::new(2, 4);
        assert!(e.insert(FpVec::from_entries(2, &[1, 1, 0, 0])));
        assert!(e.insert(FpVec::from_entries(2, &[0, 1, 1, 0])));
        assert!(!e.insert(FpVec::from_entries(2, &[1, 0, 1, 0])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn echelon_kernel_annihilates() {
        let mut e = Echelon::new(5, 6);
        e.insert(FpVec::from_entries(5, &[1, 2, 3, 4, 0, 1]));
        e.insert(FpVec::from_entries(5, &[0, 1, 1, 1, 1, 1]));
        e.insert(FpVec::from_entries(5, &[2, 4, 1, 3, 0, 2]));
        let rank = e.rank();
        let kb = e.kernel_basis();
        assert_eq!(rank + kb.len(), 6);
        let rows = vec![
            FpVec::from_entries(5, &[1, 2, 3, 4, 0, 1]),
            FpVec::from_entries(5, &[0, 1, 1, 1, 1, 1]),
            FpVec::from_entries(5, &[2, 4, 1, 3, 0, 2]),
        ];
        let m = FpMatrix::from_rows(5, 6, rows);
        for v in &kb {
            assert!(m.apply(&v.to_entries()).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn axpy_lanes_stay_reduced() {
        for p in [3u8, 5, 7, 11] {
            let a: Vec<u8> = (0..40).map(|i| (i * 7 + 3) as u8 % p).collect();
            let b: Vec<u8> = (0..40).map(|i| (i * 11 + 1) as u8 % p).collect();
            for c in 1..p {
                let mut v = FpVec::from_entries(p, &a);
                v.axpy(c, &FpVec::from_entries(p, &b));
                for i in 0..40 {
                    let want = (a[i] as u32 + c as u32 * b[i] as u32) % p as u32;
                    assert_eq!(v.get(i) as u32, want, "p={p} c={c} i={i}");
                }
            }
        }
    }
}
