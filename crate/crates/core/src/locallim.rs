//! Local statistics: consecutive-pattern densities of finite permutations
//! and rooted windows of the infinite objects (the bidirectional walk, its
//! coalescent-walk process, and the infinite permutation it induces).
//!
//! Comparing times `i < j` in the infinite order only reads the driving
//! walk's increments on `(i, j]`, so the order restricted to a window is
//! fully determined by the window itself and window extraction is exact.

use alloc::vec::Vec;
use core::fmt;

use crate::coalescent::{trajectory, CoalescentProcess};
use crate::permutation::Permutation;
use crate::walk::PlaneWalk;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowError {
    /// The requested window is not contained in the sampled range.
    ExceedsRange,
    /// Pattern larger than the permutation.
    PatternTooLarge,
}

impl fmt::Display for WindowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowError::ExceedsRange => write!(f, "window exceeds the available range"),
            WindowError::PatternTooLarge => write!(f, "pattern larger than the permutation"),
        }
    }
}

impl core::error::Error for WindowError {}

/// Fraction of windows of consecutive indices inducing the pattern:
/// `#{i : pat(i..i+k-1) = pattern} / (n - k + 1)`.
pub fn consecutive_pattern_density(
    p: &Permutation,
    pattern: &Permutation,
) -> Result<f64, WindowError> {
    let (n, k) = (p.len(), pattern.len());
    if k > n {
        return Err(WindowError::PatternTooLarge);
    }
    let mut hits = 0usize;
    for start in 1..=n - k + 1 {
        let indices: Vec<usize> = (start..start + k).collect();
        if p.pattern_at(&indices).unwrap() == *pattern {
            hits += 1;
        }
    }
    Ok(hits as f64 / (n - k + 1) as f64)
}

/// The order pattern seen in a radius-`h` window around a center, with the
/// center re-indexed to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedWindow {
    pub radius: usize,
    pub center: i64,
    /// Pattern of size `2h + 1` induced by the (finite or infinite)
    /// permutation order on the window.
    pub pattern: Permutation,
}

/// Window of a finite permutation at a 1-based center.
pub fn permutation_window(
    p: &Permutation,
    center: usize,
    radius: usize,
) -> Result<RootedWindow, WindowError> {
    if center <= radius || center + radius > p.len() {
        return Err(WindowError::ExceedsRange);
    }
    let indices: Vec<usize> = (center - radius..=center + radius).collect();
    Ok(RootedWindow {
        radius,
        center: center as i64,
        pattern: p.pattern_at(&indices).unwrap(),
    })
}

/// Window of the infinite permutation induced by an `A`-walk: ranks the
/// window times by the trajectory-sign order, evaluated from the increments
/// inside the window only.
pub fn infinite_order_window(
    walk: &PlaneWalk,
    center: i64,
    radius: usize,
) -> Result<RootedWindow, WindowError> {
    let (lo, hi) = walk.interval();
    let (a, b) = (center - radius as i64, center + radius as i64);
    if a < lo || b > hi {
        return Err(WindowError::ExceedsRange);
    }
    let steps = walk.steps();
    let size = 2 * radius + 1;
    // less[(u, v)] for window offsets u < v: trajectory from a+u negative at
    // a+v means a+u precedes a+v in the order.
    let offset0 = (a - lo) as usize;
    let mut values = Vec::with_capacity(size);
    for u in 0..size {
        let traj = trajectory(&steps[offset0 + u..]);
        let mut rank = 1u32;
        for v in 0..size {
            if v == u {
                continue;
            }
            let precedes = if v < u {
                // a+v before a+u iff trajectory from a+v is negative at a+u
                let tv = trajectory(&steps[offset0 + v..]);
                tv[u - v] < 0
            } else {
                traj[v - u] >= 0
            };
            if precedes {
                rank += 1;
            }
        }
        values.push(rank);
    }
    let pattern = Permutation::from_one_line(values).expect("total order on the window");
    Ok(RootedWindow {
        radius,
        center,
        pattern,
    })
}

/// Window of the walk itself: times re-indexed so the center is 0 and
/// positions translated so the center position is the origin.
pub fn walk_window(
    walk: &PlaneWalk,
    center: i64,
    radius: usize,
) -> Result<PlaneWalk, WindowError> {
    let (lo, hi) = walk.interval();
    let (a, b) = (center - radius as i64, center + radius as i64);
    if a < lo || b > hi {
        return Err(WindowError::ExceedsRange);
    }
    let (cx, cy) = walk.position(center);
    let positions: Vec<(i64, i64)> = (a..=b)
        .map(|t| {
            let (x, y) = walk.position(t);
            (x - cx, y - cy)
        })
        .collect();
    Ok(PlaneWalk::new(-(radius as i64), positions).expect("restriction keeps steps in A"))
}

/// Window of the coalescent-walk process: the process driven by the window
/// of the walk (re-indexed to `-h ..= h`).
pub fn coalescent_window(
    walk: &PlaneWalk,
    center: i64,
    radius: usize,
) -> Result<CoalescentProcess, WindowError> {
    let w = walk_window(walk, center, radius)?;
    Ok(CoalescentProcess::from_plane_walk(&w))
}
