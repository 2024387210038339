//! Permutations in one-line notation: the Baxter (vincular) check, classical
//! pattern extraction, group plumbing, and empirical permuton histograms.
//!
//! A permutation of size `n` is stored 1-based, matching the usual one-line
//! notation `sigma(1) sigma(2) ... sigma(n)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Below this size the Baxter check uses the cubic vincular scan; above it,
/// the quadratic descent-indexed refinement. Both must agree on the overlap.
const BAXTER_NAIVE_LIMIT: usize = 512;

/// Permuton histograms are computed in exact integer arithmetic up to this
/// size and in double precision beyond it.
pub const PERMUTON_EXACT_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationError {
    /// Empty value sequence (permutations here have size at least 1).
    Empty,
    /// The values are not a bijection of `{1..n}`.
    NotAPermutation,
    /// An index set was out of range, unsorted, or contained duplicates.
    InvalidIndexSet,
    /// Requested pattern is larger than the permutation.
    PatternTooLarge,
    /// Histogram grid size must be at least 1.
    ZeroGrid,
    /// Size outside the supported range of the operation.
    SizeOutOfRange { n: usize },
    /// Histogram data does not match its grid.
    DimensionMismatch,
}

impl fmt::Display for PermutationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermutationError::Empty => write!(f, "permutation must be nonempty"),
            PermutationError::NotAPermutation => {
                write!(f, "values are not a bijection of 1..=n")
            }
            PermutationError::InvalidIndexSet => {
                write!(f, "index set must be sorted, distinct and within 1..=n")
            }
            PermutationError::PatternTooLarge => {
                write!(f, "pattern is larger than the permutation")
            }
            PermutationError::ZeroGrid => write!(f, "grid size must be at least 1"),
            PermutationError::SizeOutOfRange { n } => {
                write!(f, "size {n} out of supported range")
            }
            PermutationError::DimensionMismatch => {
                write!(f, "histogram data does not match its grid")
            }
        }
    }
}

impl core::error::Error for PermutationError {}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Permutation {
    /// Builds a permutation from one-line notation, validating that the
    /// values are a bijection of `{1..n}`.
    pub fn from_one_line(values: Vec<u32>) -> Result<Self, PermutationError> {
        if values.is_empty() {
            return Err(PermutationError::Empty);
        }
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(PermutationError::NotAPermutation);
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { values })
    }

    /// The identity permutation of size `n` (`n >= 1`).
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have size at least 1");
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: permutations have size at least 1.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Value at 1-based position `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// True iff the permutation avoids the vincular patterns 2-41-3 and
    /// 3-14-2, i.e. there are no indices `i < j < k` with
    /// `s(j+1) < s(i) < s(k) < s(j)` nor with `s(j) < s(k) < s(i) < s(j+1)`.
    pub fn is_baxter(&self) -> bool {
        if self.values.len() <= BAXTER_NAIVE_LIMIT {
            is_baxter_naive(&self.values)
        } else {
            is_baxter_refined(&self.values)
        }
    }

    /// The pattern induced by a sorted set of 1-based indices: the unique
    /// permutation of size `|I|` order-isomorphic to the selected values.
    pub fn pattern_at(&self, indices: &[usize]) -> Result<Permutation, PermutationError> {
        if indices.is_empty() {
            return Err(PermutationError::InvalidIndexSet);
        }
        let n = self.values.len();
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > n || i <= prev {
                return Err(PermutationError::InvalidIndexSet);
            }
            prev = i;
        }
        let selected: Vec<u32> = indices.iter().map(|&i| self.values[i - 1]).collect();
        let mut out = Vec::with_capacity(selected.len());
        for &v in &selected {
            let rank = selected.iter().filter(|&&w| w <= v).count() as u32;
            out.push(rank);
        }
        Ok(Permutation { values: out })
    }

    /// Group inverse.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values: inv }
    }

    /// Reverse-complement (180-degree rotation of the diagram). An
    /// involution; it swaps the two vincular patterns, so it preserves the
    /// Baxter class.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.values.len() as u32;
        let values = self
            .values
            .iter()
            .rev()
            .map(|&v| n + 1 - v)
            .collect();
        Permutation { values }
    }

    /// Grid histogram of the permuton of this permutation: cell `(a, b)` is
    /// the permuton mass of `[(a-1)/k, a/k] x [(b-1)/k, b/k]`, computed by
    /// exact rectangle intersection.
    pub fn permuton_histogram(&self, k: usize) -> Result<PermutonHistogram, PermutationError> {
        self.permuton_histogram_with_threshold(k, PERMUTON_EXACT_THRESHOLD)
    }

    /// Same as [`Permutation::permuton_histogram`] with an explicit cutoff
    /// for switching from exact integer arithmetic to double precision.
    pub fn permuton_histogram_with_threshold(
        &self,
        k: usize,
        exact_threshold: usize,
    ) -> Result<PermutonHistogram, PermutationError> {
        if k == 0 {
            return Err(PermutationError::ZeroGrid);
        }
        let n = self.values.len();
        let mass = if n <= exact_threshold {
            let (nums, denom) = self.permuton_histogram_exact(k)?;
            nums.iter().map(|&v| v as f64 / denom as f64).collect()
        } else {
            self.permuton_histogram_float(k)
        };
        Ok(PermutonHistogram { k, mass })
    }

    /// Exact histogram cells as integer numerators over the common
    /// denominator `(n*k)^2`. Row and column sums are exactly `n^2 * k`
    /// (that is, `1/k` of the total), which tests can assert verbatim.
    pub fn permuton_histogram_exact(
        &self,
        k: usize,
    ) -> Result<(Vec<i128>, i128), PermutationError> {
        if k == 0 {
            return Err(PermutationError::ZeroGrid);
        }
        let n = self.values.len();
        let (ni, ki) = (n as i128, k as i128);
        let denom = ni * ki * ni * ki;
        let mut nums = vec![0i128; k * k];
        // Work in units of 1/(n*k): point i/n sits at i*k, point a/k at a*n.
        for (i0, &v) in self.values.iter().enumerate() {
            let i = (i0 + 1) as i128;
            let s = v as i128;
            let (xl, xr) = ((i - 1) * ki, i * ki);
            let (yl, yr) = ((s - 1) * ki, s * ki);
            let a_lo = (xl / ni) as usize;
            let b_lo = (yl / ni) as usize;
            for a in a_lo..k {
                let (cl, cr) = (a as i128 * ni, (a as i128 + 1) * ni);
                if cl >= xr {
                    break;
                }
                let ox = xr.min(cr) - xl.max(cl);
                if ox <= 0 {
                    continue;
                }
                for b in b_lo..k {
                    let (dl, dr) = (b as i128 * ni, (b as i128 + 1) * ni);
                    if dl >= yr {
                        break;
                    }
                    let oy = yr.min(dr) - yl.max(dl);
                    if oy <= 0 {
                        continue;
                    }
                    nums[a * k + b] += ni * ox * oy;
                }
            }
        }
        Ok((nums, denom))
    }

    fn permuton_histogram_float(&self, k: usize) -> Vec<f64> {
        let n = self.values.len();
        let (nf, kf) = (n as f64, k as f64);
        let mut mass = vec![0.0f64; k * k];
        for (i0, &v) in self.values.iter().enumerate() {
            let i = (i0 + 1) as f64;
            let s = v as f64;
            let (xl, xr) = ((i - 1.0) / nf, i / nf);
            let (yl, yr) = ((s - 1.0) / nf, s / nf);
            let a_lo = (xl * kf) as usize;
            let b_lo = (yl * kf) as usize;
            for a in a_lo..k {
                let ox = xr.min((a + 1) as f64 / kf) - xl.max(a as f64 / kf);
                if ox <= 0.0 {
                    break;
                }
                for b in b_lo..k {
                    let oy = yr.min((b + 1) as f64 / kf) - yl.max(b as f64 / kf);
                    if oy <= 0.0 {
                        break;
                    }
                    mass[a * k + b] += nf * ox * oy;
                }
            }
        }
        mass
    }
}

fn is_baxter_naive(v: &[u32]) -> bool {
    let n = v.len();
    for j in 0..n.saturating_sub(1) {
        let (a, b) = (v[j], v[j + 1]);
        if a > b {
            // 2-41-3: s(j+1) < s(i) < s(k) < s(j)
            for i in 0..j {
                if v[i] > b && v[i] < a {
                    for &y in &v[j + 2..] {
                        if y > v[i] && y < a {
                            return false;
                        }
                    }
                }
            }
        } else {
            // 3-14-2: s(j) < s(k) < s(i) < s(j+1)
            for i in 0..j {
                if v[i] > a && v[i] < b {
                    for &y in &v[j + 2..] {
                        if y > a && y < v[i] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Descent-indexed quadratic refinement. For a descent (ascent) at `j, j+1`
/// it picks the extremal admissible left value and scans the right side once;
/// taking the minimum (maximum) left value maximizes the admissible window on
/// the right, so the scan finds an occurrence iff one exists.
fn is_baxter_refined(v: &[u32]) -> bool {
    let n = v.len();
    for j in 0..n.saturating_sub(1) {
        let (a, b) = (v[j], v[j + 1]);
        if a > b {
            let mut m = u32::MAX;
            for &x in &v[..j] {
                if x > b && x < a && x < m {
                    m = x;
                }
            }
            if m != u32::MAX {
                for &y in &v[j + 2..] {
                    if y > m && y < a {
                        return false;
                    }
                }
            }
        } else {
            let mut m = 0u32;
            for &x in &v[..j] {
                if x > a && x < b && x > m {
                    m = x;
                }
            }
            if m != 0 {
                for &y in &v[j + 2..] {
                    if y > a && y < m {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Calls `f` on every permutation of `{1..n}` in lexicographic order.
pub fn for_each_permutation<F: FnMut(&[u32])>(n: usize, mut f: F) {
    assert!(n >= 1);
    let mut v: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&v);
        // next_permutation
        let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            return;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
}

/// All Baxter permutations of size `n`, in lexicographic order. Brute-force
/// enumeration intended as a small-size oracle; guarded to `n <= 9`.
pub fn enumerate_baxter(n: usize) -> Result<Vec<Permutation>, PermutationError> {
    if n == 0 || n > 9 {
        return Err(PermutationError::SizeOutOfRange { n });
    }
    let mut out = Vec::new();
    for_each_permutation(n, |v| {
        if is_baxter_naive(v) {
            out.push(Permutation {
                values: v.to_vec(),
            });
        }
    });
    Ok(out)
}

/// An empirical permuton on a `k x k` grid. Row index is the x-cell, which
/// matches the CSV layout (one row per x-cell).
#[derive(Clone, Debug, PartialEq)]
pub struct PermutonHistogram {
    k: usize,
    mass: Vec<f64>,
}

impl PermutonHistogram {
    pub fn from_mass(k: usize, mass: Vec<f64>) -> Result<Self, PermutationError> {
        if k == 0 {
            return Err(PermutationError::ZeroGrid);
        }
        if mass.len() != k * k {
            return Err(PermutationError::DimensionMismatch);
        }
        Ok(Self { k, mass })
    }

    pub fn grid(&self) -> usize {
        self.k
    }

    /// Mass of cell `(a, b)`, 0-based, `a` along the x-axis.
    pub fn cell(&self, a: usize, b: usize) -> f64 {
        self.mass[a * self.k + b]
    }

    pub fn row(&self, a: usize) -> &[f64] {
        &self.mass[a * self.k..(a + 1) * self.k]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// L1 distance between two histograms on the same grid.
    pub fn l1_distance(&self, other: &PermutonHistogram) -> f64 {
        assert_eq!(self.k, other.k, "histogram grids differ");
        self.mass
            .iter()
            .zip(&other.mass)
            .map(|(x, y)| (x - y).abs())
            .sum()
    }

    /// The histogram rotated by 180 degrees, i.e. the histogram of the
    /// reverse-complement.
    pub fn rotate180(&self) -> PermutonHistogram {
        let k = self.k;
        let mut mass = vec![0.0; k * k];
        for a in 0..k {
            for b in 0..k {
                mass[a * k + b] = self.mass[(k - 1 - a) * k + (k - 1 - b)];
            }
        }
        PermutonHistogram { k, mass }
    }

    /// Pointwise mean of a nonempty set of histograms on a common grid.
    pub fn mean_of(histograms: &[PermutonHistogram]) -> PermutonHistogram {
        assert!(!histograms.is_empty());
        let k = histograms[0].k;
        let mut mass = vec![0.0; k * k];
        for h in histograms {
            assert_eq!(h.k, k, "histogram grids differ");
            for (acc, v) in mass.iter_mut().zip(&h.mass) {
                *acc += v;
            }
        }
        let inv = 1.0 / histograms.len() as f64;
        for v in &mut mass {
            *v *= inv;
        }
        PermutonHistogram { k, mass }
    }
}
