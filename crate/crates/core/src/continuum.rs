//! Numerical layer: correlated Brownian drivers, the Euler scheme for the
//! sign-switched SDE `dZ = 1{Z>0} dY - 1{Z<=0} dX`, rescaling of discrete
//! objects onto `[0,1]`, and Monte-Carlo estimation of pattern probabilities
//! of the coalescent Baxter permuton through the discrete rejection sampler.
//!
//! The indicator convention at zero is the `<= 0` branch: a trajectory at
//! exactly zero follows `-dX`. (The discrete recursion uses the `>= 0`
//! branch at zero; the step-discrepancy helper quantifies how rarely the two
//! conventions disagree along a rescaled walk.)

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::coalescent::{trajectory, CoalescentProcess};
use crate::permutation::Permutation;
use crate::walk::{sample_uniform_excursion, Step, WalkError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContinuumError {
    /// Correlation must lie in the open interval (-1, 1).
    InvalidCorrelation { rho: f64 },
    /// Step size must be positive and the horizon nonempty.
    InvalidGrid,
    /// A queried time lies outside the path's span.
    TimeOutOfRange { t: f64 },
}

impl fmt::Display for ContinuumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuumError::InvalidCorrelation { rho } => {
                write!(f, "correlation {rho} outside (-1, 1)")
            }
            ContinuumError::InvalidGrid => write!(f, "invalid discretization grid"),
            ContinuumError::TimeOutOfRange { t } => write!(f, "time {t} out of range"),
        }
    }
}

impl core::error::Error for ContinuumError {}

/// A two-dimensional path on a uniform grid, meant as the driver of the SDE.
/// Sampled paths have centered Gaussian increments with covariance
/// `dt * [[1, rho], [rho, 1]]`; deterministic paths are allowed for tests.
#[derive(Clone, Debug)]
pub struct CorrelatedPath {
    rho: f64,
    dt: f64,
    values: Vec<(f64, f64)>,
}

impl CorrelatedPath {
    /// Wraps explicit grid values (time `m * dt` at index `m`).
    pub fn from_values(
        rho: f64,
        dt: f64,
        values: Vec<(f64, f64)>,
    ) -> Result<Self, ContinuumError> {
        if !dt.is_finite() || dt <= 0.0 || values.len() < 2 {
            return Err(ContinuumError::InvalidGrid);
        }
        Ok(CorrelatedPath { rho, dt, values })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[(f64, f64)] {
        &self.values
    }

    /// Time of the last grid point.
    pub fn horizon(&self) -> f64 {
        self.dt * (self.values.len() - 1) as f64
    }
}

/// Samples a correlated two-dimensional Brownian path on `[0, t_max]` with
/// increment covariance `dt * [[1, rho], [rho, 1]]`, via the Cholesky factor
/// of the 2x2 matrix.
pub fn sample_correlated_bm<R: RngCore + ?Sized>(
    rho: f64,
    dt: f64,
    t_max: f64,
    rng: &mut R,
) -> Result<CorrelatedPath, ContinuumError> {
    if !(-1.0 < rho && rho < 1.0) {
        return Err(ContinuumError::InvalidCorrelation { rho });
    }
    if !dt.is_finite() || dt <= 0.0 || !t_max.is_finite() || t_max < dt {
        return Err(ContinuumError::InvalidGrid);
    }
    let steps = (t_max / dt + 0.5) as usize;
    let sqrt_dt = libm::sqrt(dt);
    let cross = libm::sqrt(1.0 - rho * rho);
    let mut values = Vec::with_capacity(steps + 1);
    values.push((0.0, 0.0));
    let (mut x, mut y) = (0.0f64, 0.0f64);
    for _ in 0..steps {
        let g1: f64 = StandardNormal.sample(rng);
        let g2: f64 = StandardNormal.sample(rng);
        x += sqrt_dt * g1;
        y += sqrt_dt * (rho * g1 + cross * g2);
        values.push((x, y));
    }
    CorrelatedPath::from_values(rho, dt, values)
}

/// Euler solution of the sign-switched SDE started at time `u`: zero up to
/// `u`, then `Z(t + dt) = Z(t) + dY` when `Z(t) > 0` and `Z(t) - dX`
/// otherwise.
#[derive(Clone, Debug)]
pub struct SdePath {
    u: f64,
    dt: f64,
    start_index: usize,
    values: Vec<f64>,
}

impl SdePath {
    pub fn start_time(&self) -> f64 {
        self.u
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    /// Value at grid index `m`.
    pub fn value(&self, m: usize) -> f64 {
        self.values[m]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn solve_sde_euler(path: &CorrelatedPath, u: f64) -> Result<SdePath, ContinuumError> {
    if !(0.0..=path.horizon()).contains(&u) {
        return Err(ContinuumError::TimeOutOfRange { t: u });
    }
    let dt = path.dt();
    let start_index = (u / dt + 0.5) as usize;
    let vals = path.values();
    let mut values = vec![0.0f64; vals.len()];
    let mut z = 0.0f64;
    for m in start_index..vals.len() - 1 {
        let dx = vals[m + 1].0 - vals[m].0;
        let dy = vals[m + 1].1 - vals[m].1;
        z += if z > 0.0 { dy } else { -dx };
        values[m + 1] = z;
    }
    Ok(SdePath {
        u,
        dt,
        start_index,
        values,
    })
}

/// A piecewise-linear function on a uniform grid.
#[derive(Clone, Debug)]
pub struct LinearPath {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
}

impl LinearPath {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Self {
        assert!(dt > 0.0 && !values.is_empty());
        LinearPath { t0, dt, values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Linear interpolation, clamped to the grid span.
    pub fn eval(&self, t: f64) -> f64 {
        let s = (t - self.t0) / self.dt;
        if s <= 0.0 {
            return self.values[0];
        }
        let last = (self.values.len() - 1) as f64;
        if s >= last {
            return *self.values.last().unwrap();
        }
        let m = s as usize;
        let frac = s - m as f64;
        self.values[m] * (1.0 - frac) + self.values[m + 1] * frac
    }
}

/// Diffusive rescaling: point `k` of the sequence is placed at time `k / n`
/// with value `v_k / sqrt(2n)`, linearly interpolated.
pub fn rescale_discrete(values: &[i64], n: usize) -> LinearPath {
    assert!(n >= 1 && !values.is_empty());
    let scale = 1.0 / libm::sqrt(2.0 * n as f64);
    LinearPath::new(
        0.0,
        1.0 / n as f64,
        values.iter().map(|&v| v as f64 * scale).collect(),
    )
}

/// Rescales a plane walk coordinatewise.
pub fn rescale_walk(positions: &[(i64, i64)], n: usize) -> (LinearPath, LinearPath) {
    let xs: Vec<i64> = positions.iter().map(|p| p.0).collect();
    let ys: Vec<i64> = positions.iter().map(|p| p.1).collect();
    (rescale_discrete(&xs, n), rescale_discrete(&ys, n))
}

/// Discrete analogue of the permuton height function: the fraction of times
/// weakly below `floor(n t)` in the trajectory-sign order, which equals
/// `sigma(floor(n t)) / n` for the extracted permutation.
pub fn phi_estimate(z: &CoalescentProcess, t: f64) -> Result<f64, ContinuumError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(ContinuumError::TimeOutOfRange { t });
    }
    let n = z.len();
    let (lo, hi) = z.interval();
    // 1-based index floor(n t), clamped into the interval.
    let mut i = lo + (n as f64 * t) as i64 - 1;
    if i < lo {
        i = lo;
    }
    if i > hi {
        i = hi;
    }
    let mut count = 0usize;
    for j in lo..=hi {
        if z.compare(j, i).unwrap() != core::cmp::Ordering::Greater {
            count += 1;
        }
    }
    Ok(count as f64 / n as f64)
}

/// Outcome of a Monte-Carlo pattern estimation.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternEstimate {
    pub pattern: Vec<u32>,
    pub n: usize,
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
}

impl PatternEstimate {
    pub fn from_counts(pattern: &Permutation, n: usize, samples: u64, successes: u64) -> Self {
        let estimate = successes as f64 / samples as f64;
        let stderr = libm::sqrt(estimate * (1.0 - estimate) / samples as f64);
        PatternEstimate {
            pattern: pattern.values().to_vec(),
            n,
            samples,
            successes,
            estimate,
            stderr,
        }
    }
}

/// The size window used around a target size `n`: plus or minus ten percent.
pub fn size_window(n: usize) -> (usize, usize) {
    let slack = n / 10;
    ((n - slack).max(1), n + slack)
}

/// One Monte-Carlo indicator: draw a uniform quadrant walk with size in
/// `[n_min, n_max]`, draw `k` sorted uniform times, and report whether the
/// trajectory signs at the induced indices realize the pattern. Only the `k`
/// queried trajectories are computed.
pub fn sample_pattern_indicator<R: RngCore + ?Sized>(
    pattern: &Permutation,
    n_min: usize,
    n_max: usize,
    max_attempts: u64,
    rng: &mut R,
) -> Result<bool, WalkError> {
    let w = sample_uniform_excursion(n_min, n_max, max_attempts, rng)?;
    let m = w.len();
    let k = pattern.len();
    let steps = w.steps();
    let indices = draw_sorted_indices(m, k, rng);
    for l in 0..k {
        let tl = indices[l];
        if l + 1 >= k {
            break;
        }
        let traj = trajectory(&steps[tl - 1..]);
        for s in l + 1..k {
            let z = traj[indices[s] - tl];
            if (z >= 0) != (pattern.get(s + 1) < pattern.get(l + 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `k` distinct indices in `1..=m` obtained as `floor(m u)` from sorted
/// uniforms (clamped into range), redrawing on collisions.
fn draw_sorted_indices<R: RngCore + ?Sized>(m: usize, k: usize, rng: &mut R) -> Vec<usize> {
    assert!(k <= m, "cannot pick {k} distinct indices from {m}");
    loop {
        let mut idx: Vec<usize> = (0..k)
            .map(|_| ((m as f64 * uniform01(rng)) as usize).clamp(1, m))
            .collect();
        idx.sort_unstable();
        if idx.windows(2).all(|w| w[0] < w[1]) {
            return idx;
        }
    }
}

fn uniform01<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Monte-Carlo estimate of the probability that the coalescent Baxter
/// permuton realizes `pattern`, through the discrete sampler at resolution
/// `n` (size window plus or minus ten percent). Sequential; for parallel
/// drivers split samples across independent RNG streams and merge counts.
pub fn estimate_pattern_probability<R: RngCore + ?Sized>(
    pattern: &Permutation,
    n: usize,
    samples: u64,
    max_attempts: u64,
    rng: &mut R,
) -> Result<PatternEstimate, WalkError> {
    let (n_min, n_max) = size_window(n);
    if n_min < pattern.len() {
        return Err(WalkError::BadWindow);
    }
    let mut successes = 0u64;
    for _ in 0..samples {
        if sample_pattern_indicator(pattern, n_min, n_max, max_attempts, rng)? {
            successes += 1;
        }
    }
    Ok(PatternEstimate::from_counts(pattern, n, samples, successes))
}

/// Branch bookkeeping for one step of the two evolutions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Branch {
    FollowY,
    FollowX,
    Jump,
}

/// Fraction of steps at which the discrete coalescent recursion and the
/// Euler scheme driven by the same (rescaled) walk choose different
/// branches: every crossing-case jump counts, as does any sign disagreement
/// caused by the differing convention at zero. Branch choices are invariant
/// under the diffusive rescaling, so the comparison runs in integers.
pub fn sde_discrete_step_discrepancy(steps: &[Step], start_offset: usize) -> f64 {
    assert!(start_offset < steps.len());
    let tail = &steps[start_offset..];
    let mut zd = 0i64; // discrete recursion (>= 0 follows Y, crossing jumps)
    let mut zc = 0i64; // Euler scheme (> 0 follows Y, <= 0 follows -X)
    let mut disagree = 0usize;
    for s in tail {
        let branch_d = if zd >= 0 {
            Branch::FollowY
        } else if zd - s.dx() < 0 {
            Branch::FollowX
        } else {
            Branch::Jump
        };
        let branch_c = if zc > 0 { Branch::FollowY } else { Branch::FollowX };
        if branch_d != branch_c {
            disagree += 1;
        }
        zd = match branch_d {
            Branch::FollowY => zd + s.dy(),
            Branch::FollowX => zd - s.dx(),
            Branch::Jump => s.dy(),
        };
        zc += if zc > 0 { s.dy() } else { -s.dx() };
    }
    disagree as f64 / tail.len() as f64
}
