//! Discrete coalescent-walk processes: families of one-dimensional walks
//! driven by a plane walk with increments in `A`, one trajectory per start
//! time, all zero at their own start. Trajectories follow the driving walk's
//! `Y`-increment while non-negative and the reflected `X`-increment while
//! negative, jumping onto the `Y`-increment whenever the reflected increment
//! would cross zero; that jump is exactly where trajectories coalesce.
//!
//! The total order induced by trajectory signs turns a process over `[n]`
//! into a (Baxter) permutation, and the coalescence structure is a plane
//! forest equal to the dual down-right tree of the encoded bipolar map.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::permutation::Permutation;
use crate::walk::{PlaneWalk, QuadrantWalk, Step};

/// Full quadratic trajectory storage is used up to this size; beyond it the
/// coalescence-aware representation takes over for permutation extraction.
pub const FULL_STORAGE_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoalescentError {
    /// A queried time lies outside the process interval.
    IndexOutOfInterval { index: i64 },
    /// Pattern and index-set sizes differ.
    SizeMismatch,
    /// Indices must be strictly increasing within the interval.
    InvalidIndexSet,
}

impl fmt::Display for CoalescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoalescentError::IndexOutOfInterval { index } => {
                write!(f, "time {index} outside the process interval")
            }
            CoalescentError::SizeMismatch => write!(f, "pattern and index set sizes differ"),
            CoalescentError::InvalidIndexSet => {
                write!(f, "indices must be strictly increasing and in the interval")
            }
        }
    }
}

impl core::error::Error for CoalescentError {}

/// One trajectory of the coalescent-walk process driven by `steps`: value 0
/// before the first increment, then the three-case recursion. Entry `m` is
/// the value after `m` increments.
pub fn trajectory(steps: &[Step]) -> Vec<i64> {
    let mut out = Vec::with_capacity(steps.len() + 1);
    let mut z = 0i64;
    out.push(z);
    for s in steps {
        z = next_value(z, *s);
        out.push(z);
    }
    out
}

#[inline]
fn next_value(z: i64, s: Step) -> i64 {
    if z >= 0 {
        z + s.dy()
    } else {
        let candidate = z - s.dx();
        if candidate < 0 {
            candidate
        } else {
            s.dy()
        }
    }
}

/// A coalescent-walk process over a finite integer interval, with all
/// trajectories stored in full (quadratic memory).
#[derive(Clone, Debug)]
pub struct CoalescentProcess {
    start: i64,
    /// `traj[i][d]` is the value at time `start + i + d` of the trajectory
    /// started at `start + i`.
    traj: Vec<Vec<i64>>,
}

impl CoalescentProcess {
    /// The process driven by the increments of a quadrant walk (interval
    /// `1..=n`).
    pub fn from_walk(w: &QuadrantWalk) -> Self {
        Self::from_steps(1, &w.steps())
    }

    /// The process driven by an unconstrained plane walk (interval equal to
    /// the walk's window).
    pub fn from_plane_walk(w: &PlaneWalk) -> Self {
        Self::from_steps(w.interval().0, &w.steps())
    }

    /// The process over `start ..= start + steps.len()` driven by the given
    /// increments.
    pub fn from_steps(start: i64, steps: &[Step]) -> Self {
        let n = steps.len() + 1;
        let traj = (0..n).map(|i| trajectory(&steps[i..])).collect();
        CoalescentProcess { start, traj }
    }

    /// Inclusive time interval.
    pub fn interval(&self) -> (i64, i64) {
        (self.start, self.start + self.traj.len() as i64 - 1)
    }

    /// Number of time points.
    pub fn len(&self) -> usize {
        self.traj.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Z^{(t)}_s` for `t <= s` in the interval.
    pub fn z(&self, t: i64, s: i64) -> i64 {
        let (lo, hi) = self.interval();
        assert!(t >= lo && s <= hi && t <= s, "z({t},{s}) outside process");
        self.traj[(t - lo) as usize][(s - t) as usize]
    }

    fn check_index(&self, i: i64) -> Result<(), CoalescentError> {
        let (lo, hi) = self.interval();
        if i < lo || i > hi {
            Err(CoalescentError::IndexOutOfInterval { index: i })
        } else {
            Ok(())
        }
    }

    /// The total order: `i <= j` iff `i < j` and `Z^{(i)}_j < 0`, or `j < i`
    /// and `Z^{(j)}_i >= 0`, or `i = j`.
    pub fn compare(&self, i: i64, j: i64) -> Result<Ordering, CoalescentError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.cmp_internal(i, j))
    }

    fn cmp_internal(&self, i: i64, j: i64) -> Ordering {
        match i.cmp(&j) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Less => {
                // i precedes j iff the trajectory from i is negative at j
                if self.z(i, j) < 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            Ordering::Greater => {
                // i precedes j iff the trajectory from j is non-negative at i
                if self.z(j, i) >= 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// The permutation sorting the interval by the total order: `sigma(i)`
    /// is the rank of time `i`, i.e. the number of times `j` with `j <= i`.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.traj.len();
        let (lo, _) = self.interval();
        let mut times: Vec<i64> = (0..n as i64).map(|d| lo + d).collect();
        times.sort_unstable_by(|&a, &b| self.cmp_internal(a, b));
        let mut values = vec![0u32; n];
        for (rank, &t) in times.iter().enumerate() {
            values[(t - lo) as usize] = rank as u32 + 1;
        }
        Permutation::from_one_line(values).expect("total order yields a permutation")
    }

    /// The coalescence forest: the parent of time `i` is the first time
    /// `s > i` at which the trajectory from `i` hits zero (trajectories that
    /// never do are grafted to the root). Children are ordered bottom-to-top
    /// by trajectory order, and the exploration is the clockwise preorder;
    /// reading it off gives the inverse of [`CoalescentProcess::to_permutation`].
    pub fn forest(&self) -> CoalescentForest {
        let n = self.traj.len();
        let parent: Vec<Option<usize>> = self
            .traj
            .iter()
            .enumerate()
            .map(|(i, t)| t.iter().skip(1).position(|&v| v == 0).map(|d| i + d + 1))
            .collect();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut roots: Vec<usize> = Vec::new();
        for (i, p) in parent.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(i),
                None => roots.push(i),
            }
        }
        let (lo, _) = self.interval();
        let below = |a: &usize, b: &usize| -> Ordering {
            // Among siblings, a is below b iff its trajectory is negative at
            // b's start (they cannot touch zero there, or a would be b's
            // child instead).
            let (ta, tb) = (lo + *a as i64, lo + *b as i64);
            if a < b {
                if self.z(ta, tb) < 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            } else if self.z(tb, ta) < 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        };
        roots.sort_unstable_by(below);
        for list in &mut children {
            list.sort_unstable_by(below);
        }
        CoalescentForest::assemble(parent, children, roots)
    }

    /// True iff the sign condition for the pattern holds on the given
    /// strictly increasing indices: for all `l < s`,
    /// `Z^{(i_l)}_{i_s} >= 0  iff  pattern(s) < pattern(l)`.
    pub fn matches_pattern(
        &self,
        indices: &[i64],
        pattern: &Permutation,
    ) -> Result<bool, CoalescentError> {
        if indices.len() != pattern.len() {
            return Err(CoalescentError::SizeMismatch);
        }
        let (lo, hi) = self.interval();
        let mut prev = i64::MIN;
        for &i in indices {
            if i < lo || i > hi || i <= prev {
                return Err(CoalescentError::InvalidIndexSet);
            }
            prev = i;
        }
        for l in 0..indices.len() {
            for s in l + 1..indices.len() {
                let nonneg = self.z(indices[l], indices[s]) >= 0;
                if nonneg != (pattern.get(s + 1) < pattern.get(l + 1)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The plane forest of a coalescent-walk process, labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalescentForest {
    /// `parent[i]` is the 1-based parent label of label `i+1` (`None` for
    /// children of the root).
    pub parent: Vec<Option<usize>>,
    /// Ordered children lists, 1-based labels; `children[i]` lists the
    /// children of label `i+1`.
    pub children: Vec<Vec<usize>>,
    /// Ordered children of the root.
    pub root_children: Vec<usize>,
    /// Preorder exploration (1-based labels); equals the inverse permutation
    /// of the process read as a sequence.
    pub exploration: Vec<usize>,
}

impl CoalescentForest {
    fn assemble(
        parent0: Vec<Option<usize>>,
        children0: Vec<Vec<usize>>,
        roots0: Vec<usize>,
    ) -> Self {
        let n = parent0.len();
        let parent = parent0.iter().map(|p| p.map(|x| x + 1)).collect();
        let children: Vec<Vec<usize>> = children0
            .iter()
            .map(|l| l.iter().map(|&x| x + 1).collect())
            .collect();
        let root_children: Vec<usize> = roots0.iter().map(|&x| x + 1).collect();
        let mut exploration = Vec::with_capacity(n);
        let mut stack: Vec<usize> = root_children.iter().rev().copied().collect();
        while let Some(label) = stack.pop() {
            exploration.push(label);
            stack.extend(children[label - 1].iter().rev());
        }
        CoalescentForest {
            parent,
            children,
            root_children,
            exploration,
        }
    }

    /// The permutation whose inverse is the exploration sequence.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.exploration.len();
        let mut values = vec![0u32; n];
        for (pos, &label) in self.exploration.iter().enumerate() {
            values[label - 1] = pos as u32 + 1;
        }
        Permutation::from_one_line(values).expect("exploration is a permutation")
    }
}

/// Coalescence-aware construction of the forest (and hence the permutation)
/// in near-linear memory: trajectories are advanced as merged classes of
/// distinct values, each storing only the members whose parent is still
/// unassigned. A class hitting zero at time `k` hands all its pending
/// members to vertex `k` (bottom-to-top) and absorbs the trajectory born
/// there; classes still alive at the end graft to the root.
pub fn forest_via_merges(steps: &[Step]) -> CoalescentForest {
    let n = steps.len() + 1;
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    // Classes sorted by value, bottom to top; values are pairwise distinct.
    let mut values: Vec<i64> = vec![0];
    let mut pending: Vec<Vec<usize>> = vec![vec![0]];
    for (k, s) in steps.iter().enumerate() {
        let born = k + 1; // 0-based label of the trajectory starting now
        let mut new_values: Vec<i64> = Vec::with_capacity(values.len() + 1);
        let mut new_pending: Vec<Vec<usize>> = Vec::with_capacity(values.len() + 1);
        for (v, pend) in values.iter().zip(pending.drain(..)) {
            let nv = next_value(*v, *s);
            match new_values.last() {
                Some(&last) if last == nv => {
                    // Coalescence: same future, keep vertical order.
                    new_pending.last_mut().unwrap().extend(pend);
                }
                _ => {
                    debug_assert!(new_values.last().is_none_or(|&last| last < nv));
                    new_values.push(nv);
                    new_pending.push(pend);
                }
            }
        }
        // The newborn trajectory sits at zero. A class already there has hit
        // zero: its pending members become children of the newborn vertex.
        match new_values.binary_search(&0) {
            Ok(idx) => {
                for member in new_pending[idx].drain(..) {
                    parent[member] = Some(born);
                    children[born].push(member);
                }
                new_pending[idx].push(born);
            }
            Err(idx) => {
                new_values.insert(idx, 0);
                new_pending.insert(idx, vec![born]);
            }
        }
        values = new_values;
        pending = new_pending;
    }
    let mut roots = Vec::new();
    for pend in &pending {
        roots.extend(pend.iter().copied());
    }
    CoalescentForest::assemble(parent, children, roots)
}

/// The Baxter permutation of a quadrant walk (the composite bijection):
/// full trajectory storage for small walks, the coalescence-aware
/// representation beyond [`FULL_STORAGE_LIMIT`].
pub fn baxter_from_walk(w: &QuadrantWalk) -> Permutation {
    if w.len() <= FULL_STORAGE_LIMIT {
        CoalescentProcess::from_walk(w).to_permutation()
    } else {
        forest_via_merges(&w.steps()).to_permutation()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{enumerate_walks, sample_bidirectional, sample_uniform_excursion};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn example_walk() -> QuadrantWalk {
        QuadrantWalk::validate(vec![
            (0, 2),
            (0, 3),
            (0, 3),
            (1, 2),
            (2, 1),
            (0, 3),
            (1, 2),
            (2, 1),
            (3, 0),
            (2, 0),
        ])
        .unwrap()
    }

    #[test]
    fn single_point_process() {
        let w = QuadrantWalk::validate(vec![(0, 0)]).unwrap();
        let z = CoalescentProcess::from_walk(&w);
        assert_eq!(z.interval(), (1, 1));
        assert_eq!(z.z(1, 1), 0);
        assert_eq!(z.to_permutation(), Permutation::identity(1));
        let f = z.forest();
        assert_eq!(f.root_children, vec![1]);
        assert_eq!(f.exploration, vec![1]);
    }

    #[test]
    fn example_trajectories() {
        let z = CoalescentProcess::from_walk(&example_walk());
        assert_eq!(z.traj[0], vec![0, 1, 1, 0, -1, 2, 1, 0, -1, 0]);
        assert_eq!(z.traj[5], vec![0, -1, -2, -3, -2]);
        assert_eq!(z.traj[7], vec![0, -1, 0]);
    }

    #[test]
    fn example_permutation_and_forest() {
        let z = CoalescentProcess::from_walk(&example_walk());
        let sigma = z.to_permutation();
        assert_eq!(
            sigma,
            Permutation::from_one_line(vec![8, 6, 5, 7, 9, 1, 2, 4, 10, 3]).unwrap()
        );
        let f = z.forest();
        assert_eq!(f.exploration, vec![6, 7, 10, 8, 3, 2, 4, 1, 5, 9]);
        assert_eq!(f.to_permutation(), sigma);
        assert_eq!(f.parent[0], Some(4));
        assert_eq!(f.parent[5], None);
    }

    #[test]
    fn merged_representation_agrees_small() {
        for n in 1..=6 {
            for w in enumerate_walks(n).unwrap() {
                let full = CoalescentProcess::from_walk(&w);
                let merged = forest_via_merges(&w.steps());
                assert_eq!(full.forest(), merged);
                assert_eq!(full.to_permutation(), merged.to_permutation());
            }
        }
    }

    #[test]
    fn merged_representation_agrees_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..20 {
            let w = sample_uniform_excursion(30, 90, 10_000_000, &mut rng).unwrap();
            let full = CoalescentProcess::from_walk(&w);
            let merged = forest_via_merges(&w.steps());
            assert_eq!(full.forest(), merged);
        }
    }

    #[test]
    fn merged_representation_agrees_on_long_plane_walk() {
        // The merged representation is the production path for large sizes;
        // agreement does not require conditioned walks, so drive both with a
        // long unconstrained nu-walk.
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        let w = sample_bidirectional(0, 3000, &mut rng).unwrap();
        let steps = w.steps();
        let full = CoalescentProcess::from_steps(0, &steps);
        let merged = forest_via_merges(&steps);
        assert_eq!(full.forest(), merged);
        assert_eq!(full.to_permutation(), merged.to_permutation());
    }

    #[test]
    fn storage_dispatch_boundary_agrees() {
        // A deterministic quadrant walk above the full-storage limit: the
        // dispatched (merged) extraction must match the quadratic one, and
        // the result must pass the large-size Baxter scan.
        let mut positions = Vec::new();
        let mut pos = (0i64, 0i64);
        positions.push(pos);
        for block in 0..(FULL_STORAGE_LIMIT as i64 / 2 + 200) {
            if block % 3 == 0 {
                pos = (pos.0, pos.1 + 1); // face step (0, +1)
                positions.push(pos);
                pos = (pos.0 - pos.0.min(1), pos.1); // face step (-1, 0) when possible
                positions.push(pos);
            } else {
                pos = (pos.0, pos.1 + 1);
                positions.push(pos);
                pos = (pos.0 + 1, pos.1 - 1); // diagonal
                positions.push(pos);
            }
        }
        if pos.1 != 0 {
            while pos.1 > 0 {
                pos = (pos.0 + 1, pos.1 - 1);
                positions.push(pos);
            }
        }
        let w = QuadrantWalk::validate(positions).unwrap();
        assert!(w.len() > FULL_STORAGE_LIMIT);
        let via_dispatch = baxter_from_walk(&w);
        let via_full = CoalescentProcess::from_walk(&w).to_permutation();
        assert_eq!(via_dispatch, via_full);
        // exercises the quadratic Baxter scan (size > 512)
        assert!(via_dispatch.is_baxter());
    }

    #[test]
    fn forest_equals_dual_down_right_tree() {
        // The coalescence forest of wcp(w) is the down-right tree of the
        // dual of from_walk(w), with edges labeled by the primal
        // exploration (which is the canonical edge numbering).
        use crate::bipolar::BipolarMap;
        for n in 1..=6 {
            for w in enumerate_walks(n).unwrap() {
                let forest = CoalescentProcess::from_walk(&w).forest();
                let dual_tree = BipolarMap::from_walk(&w).dual().down_right_tree();
                let parents_1based: Vec<Option<usize>> = dual_tree
                    .parent
                    .iter()
                    .map(|p| p.map(|e| e + 1))
                    .collect();
                assert_eq!(forest.parent, parents_1based);
                let explo_1based: Vec<usize> =
                    dual_tree.exploration.iter().map(|&e| e + 1).collect();
                assert_eq!(forest.exploration, explo_1based);
            }
        }
    }

    #[test]
    fn order_is_total_exhaustive() {
        for n in 1..=6 {
            for w in enumerate_walks(n).unwrap() {
                let z = CoalescentProcess::from_walk(&w);
                for i in 1..=n as i64 {
                    assert_eq!(z.compare(i, i).unwrap(), Ordering::Equal);
                    for j in 1..=n as i64 {
                        if i != j {
                            let ij = z.compare(i, j).unwrap();
                            let ji = z.compare(j, i).unwrap();
                            assert_eq!(ij, ji.reverse());
                            assert_ne!(ij, Ordering::Equal);
                        }
                    }
                }
                // transitivity
                for i in 1..=n as i64 {
                    for j in 1..=n as i64 {
                        for k in 1..=n as i64 {
                            use Ordering::Less;
                            if z.cmp_internal(i, j) == Less && z.cmp_internal(j, k) == Less {
                                assert_eq!(z.cmp_internal(i, k), Less);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compare_rejects_out_of_interval() {
        let z = CoalescentProcess::from_walk(&example_walk());
        assert_eq!(
            z.compare(0, 3),
            Err(CoalescentError::IndexOutOfInterval { index: 0 })
        );
        assert_eq!(
            z.compare(1, 11),
            Err(CoalescentError::IndexOutOfInterval { index: 11 })
        );
    }

    #[test]
    fn coalescent_points_non_negative() {
        // The y-coordinate of every coalescent point is non-negative: scan
        // every pair of trajectories for their first meeting value.
        for n in 1..=6 {
            for w in enumerate_walks(n).unwrap() {
                let z = CoalescentProcess::from_walk(&w);
                for t in 1..=n as i64 {
                    for u in t + 1..=n as i64 {
                        for s in u..=n as i64 {
                            if z.z(t, s) == z.z(u, s) {
                                assert!(z.z(t, s) >= 0, "negative coalescent point");
                                break;
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_coupling_invariant() {
        let check = |z: &CoalescentProcess| {
            let (lo, hi) = z.interval();
            for t in lo..=hi {
                for u in t + 1..=hi {
                    let mut sign = 0i8;
                    for s in u..=hi {
                        let d = z.z(t, s) - z.z(u, s);
                        let ds = if d > 0 {
                            1
                        } else if d < 0 {
                            -1
                        } else {
                            0
                        };
                        if sign == 0 {
                            sign = ds;
                        } else if ds != 0 {
                            assert_eq!(ds, sign, "coupling order flipped");
                        } else {
                            // equal once means equal forever
                            for s2 in s..=hi {
                                assert_eq!(z.z(t, s2), z.z(u, s2));
                            }
                            break;
                        }
                    }
                }
            }
        };
        for n in 1..=6 {
            for w in enumerate_walks(n).unwrap() {
                check(&CoalescentProcess::from_walk(&w));
            }
        }
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let w = sample_bidirectional(-100, 100, &mut rng).unwrap();
        check(&CoalescentProcess::from_plane_walk(&w));
    }

    #[test]
    fn bijection_onto_baxter_class() {
        use crate::permutation::enumerate_baxter;
        use std::collections::BTreeSet;
        for n in 1..=6 {
            let images: BTreeSet<Vec<u32>> = enumerate_walks(n)
                .unwrap()
                .iter()
                .map(|w| baxter_from_walk(w).values().to_vec())
                .collect();
            let baxter: BTreeSet<Vec<u32>> = enumerate_baxter(n)
                .unwrap()
                .into_iter()
                .map(|p| p.values().to_vec())
                .collect();
            assert_eq!(images, baxter, "n={n}");
            assert_eq!(images.len(), enumerate_walks(n).unwrap().len(), "injective");
        }
    }

    #[test]
    fn matches_pattern_consistent_with_extraction() {
        for n in 1..=6 {
            for w in enumerate_walks(n).unwrap() {
                let z = CoalescentProcess::from_walk(&w);
                let sigma = z.to_permutation();
                // every 2- and 3-subset
                let subsets: Vec<Vec<i64>> = two_and_three_subsets(n as i64);
                for idx in subsets {
                    let usize_idx: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
                    let pat = sigma.pattern_at(&usize_idx).unwrap();
                    assert_eq!(z.matches_pattern(&idx, &pat), Ok(true));
                    // any other pattern of the same size must not match
                    crate::permutation::for_each_permutation(idx.len(), |v| {
                        if v != pat.values() {
                            let other = Permutation::from_one_line(v.to_vec()).unwrap();
                            assert_eq!(z.matches_pattern(&idx, &other), Ok(false));
                        }
                    });
                }
            }
        }
    }

    fn two_and_three_subsets(n: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(vec![i, j]);
                for k in j + 1..=n {
                    out.push(vec![i, j, k]);
                }
            }
        }
        out
    }

    #[test]
    fn matches_pattern_errors() {
        let z = CoalescentProcess::from_walk(&example_walk());
        let p2 = Permutation::identity(2);
        assert_eq!(
            z.matches_pattern(&[1, 2, 3], &p2),
            Err(CoalescentError::SizeMismatch)
        );
        assert_eq!(
            z.matches_pattern(&[2, 1], &p2),
            Err(CoalescentError::InvalidIndexSet)
        );
        assert_eq!(
            z.matches_pattern(&[1], &Permutation::identity(1)),
            Ok(true)
        );
    }

    #[test]
    fn trajectory_increment_law() {
        // Each trajectory of the process driven by the bidirectional walk is
        // a random walk with the dy-marginal law: P(-1) = 1/2, P(j) = 2^-j-2.
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let w = sample_bidirectional(0, 200_000, &mut rng).unwrap();
        let traj = trajectory(&w.steps());
        let mut counts = std::collections::BTreeMap::new();
        for pair in traj.windows(2) {
            *counts.entry(pair[1] - pair[0]).or_insert(0u64) += 1;
        }
        let total = (traj.len() - 1) as f64;
        let freq = |d: i64| counts.get(&d).copied().unwrap_or(0) as f64 / total;
        assert!((freq(-1) - 0.5).abs() < 0.01);
        assert!((freq(0) - 0.25).abs() < 0.01);
        assert!((freq(1) - 0.125).abs() < 0.01);
        assert!((freq(2) - 0.0625).abs() < 0.005);
    }
}
