//! Plane walks with the admissible step set
//! `A = {(+1,-1)} ∪ {(-i,+j) : i,j >= 0}`, the step law `nu`, exhaustive
//! enumeration of quadrant walks, and the random samplers (rejection sampler
//! for uniform quadrant walks, bidirectional nu-walk).
//!
//! Geometric draws are made from raw random bits, never by floating-point
//! inversion, so the sampled law is exactly `nu`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::RngCore;

/// Default cap on rejection-sampling attempts per call.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000_000;

/// Guard for exhaustive enumeration.
pub const MAX_ENUMERATION_SIZE: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkError {
    /// Position sequences must be nonempty.
    EmptyWalk,
    /// The increment into the 1-based position `index` is not in `A`.
    StepNotInA { index: usize },
    /// The 1-based position `index` leaves the non-negative quadrant.
    NegativeCoordinate { index: usize },
    /// The walk does not start on the y-axis or does not end on the x-axis;
    /// `index` is the offending endpoint (1 or n).
    BadEndpoints { index: usize },
    /// Size outside the supported range of the operation.
    SizeOutOfRange { n: usize },
    /// Invalid size window for a sampler.
    BadWindow,
    /// The rejection sampler gave up.
    MaxAttemptsExceeded { attempts: u64 },
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::EmptyWalk => write!(f, "walk must contain at least one position"),
            WalkError::StepNotInA { index } => {
                write!(f, "step into position {index} is not in the step set A")
            }
            WalkError::NegativeCoordinate { index } => {
                write!(f, "position {index} leaves the non-negative quadrant")
            }
            WalkError::BadEndpoints { index } => {
                write!(f, "endpoint at position {index} is not on the required axis")
            }
            WalkError::SizeOutOfRange { n } => write!(f, "size {n} out of supported range"),
            WalkError::BadWindow => write!(f, "size window must satisfy 1 <= min <= max"),
            WalkError::MaxAttemptsExceeded { attempts } => {
                write!(f, "rejection sampler exceeded {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for WalkError {}

/// One increment of an `A`-walk: either the diagonal step `(+1,-1)` or a
/// face step `(-i,+j)` with `i, j >= 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    dx: i64,
    dy: i64,
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

impl Step {
    pub const DIAG: Step = Step { dx: 1, dy: -1 };

    /// Checked constructor: `None` when `(dx, dy)` is not in `A`.
    pub fn new(dx: i64, dy: i64) -> Option<Step> {
        if (dx == 1 && dy == -1) || (dx <= 0 && dy >= 0) {
            Some(Step { dx, dy })
        } else {
            None
        }
    }

    /// The face step `(-i, +j)`.
    pub fn face(i: u32, j: u32) -> Step {
        Step {
            dx: -(i as i64),
            dy: j as i64,
        }
    }

    pub fn dx(&self) -> i64 {
        self.dx
    }

    pub fn dy(&self) -> i64 {
        self.dy
    }

    pub fn is_diag(&self) -> bool {
        self.dx == 1
    }

    /// `Some((i, j))` for a face step `(-i, +j)`.
    pub fn face_parts(&self) -> Option<(i64, i64)> {
        if self.is_diag() {
            None
        } else {
            Some((-self.dx, self.dy))
        }
    }
}

/// The step law: mass 1/2 on `(+1,-1)` and `2^(-i-j-3)` on `(-i,+j)`.
pub struct NuLaw;

impl NuLaw {
    /// Probability mass of a step. Exact (powers of two).
    pub fn mass(step: Step) -> f64 {
        if step.is_diag() {
            0.5
        } else {
            let (i, j) = step.face_parts().unwrap();
            pow2_neg((i + j + 3) as u64)
        }
    }

    /// Draws one step of `nu` using exact fair bits: one bit chooses the
    /// diagonal step, then two independent geometric(1/2) draws give `(i, j)`.
    pub fn sample<R: RngCore + ?Sized>(rng: &mut R) -> Step {
        let mut bits = Bits::new(rng);
        if bits.bit() {
            Step::DIAG
        } else {
            let i = bits.geometric();
            let j = bits.geometric();
            Step::face(i, j)
        }
    }
}

/// `2^-e` as an exact f64 (0 below the subnormal range).
fn pow2_neg(e: u64) -> f64 {
    if e <= 1022 {
        f64::from_bits((1023 - e) << 52)
    } else if e <= 1074 {
        f64::from_bits(1u64 << (1074 - e))
    } else {
        0.0
    }
}

/// Buffered fair-bit source over an `RngCore`.
struct Bits<'a, R: ?Sized> {
    rng: &'a mut R,
    buf: u64,
    left: u32,
}

impl<'a, R: RngCore + ?Sized> Bits<'a, R> {
    fn new(rng: &'a mut R) -> Self {
        Bits { rng, buf: 0, left: 0 }
    }

    fn bit(&mut self) -> bool {
        if self.left == 0 {
            self.buf = self.rng.next_u64();
            self.left = 64;
        }
        let b = self.buf & 1 == 1;
        self.buf >>= 1;
        self.left -= 1;
        b
    }

    /// Geometric(1/2) on {0, 1, 2, ...}: the number of leading ones.
    fn geometric(&mut self) -> u32 {
        let mut c = 0;
        while self.bit() {
            c += 1;
        }
        c
    }
}

/// A walk in the non-negative quadrant with increments in `A`, starting at
/// `(0, h)` and ending at `(k, 0)`. Positions are indexed `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadrantWalk {
    positions: Vec<(i64, i64)>,
}

impl QuadrantWalk {
    /// Validates a raw position sequence against all invariants, identifying
    /// the offending 1-based index on failure. Coordinates are checked first,
    /// then increments, then endpoints.
    pub fn validate(positions: Vec<(i64, i64)>) -> Result<Self, WalkError> {
        if positions.is_empty() {
            return Err(WalkError::EmptyWalk);
        }
        for (t0, &(x, y)) in positions.iter().enumerate() {
            if x < 0 || y < 0 {
                return Err(WalkError::NegativeCoordinate { index: t0 + 1 });
            }
        }
        for t0 in 1..positions.len() {
            let (px, py) = positions[t0 - 1];
            let (x, y) = positions[t0];
            if Step::new(x - px, y - py).is_none() {
                return Err(WalkError::StepNotInA { index: t0 + 1 });
            }
        }
        if positions[0].0 != 0 {
            return Err(WalkError::BadEndpoints { index: 1 });
        }
        if positions[positions.len() - 1].1 != 0 {
            return Err(WalkError::BadEndpoints {
                index: positions.len(),
            });
        }
        Ok(QuadrantWalk { positions })
    }

    /// Number of positions (the size of the walk).
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    /// Always false: walks contain at least one position.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positions(&self) -> &[(i64, i64)] {
        &self.positions
    }

    /// Position at 1-based time `t`.
    pub fn position(&self, t: usize) -> (i64, i64) {
        self.positions[t - 1]
    }

    /// The `n - 1` increments.
    pub fn steps(&self) -> Vec<Step> {
        self.positions
            .windows(2)
            .map(|w| Step::new(w[1].0 - w[0].0, w[1].1 - w[0].1).unwrap())
            .collect()
    }

    /// Height of the starting point `(0, h)`.
    pub fn start_height(&self) -> i64 {
        self.positions[0].1
    }

    /// Abscissa of the end point `(k, 0)`.
    pub fn end_width(&self) -> i64 {
        self.positions[self.positions.len() - 1].0
    }
}

/// An unconstrained plane walk with increments in `A` over an integer time
/// window (used for the bidirectional nu-walk and local-limit windows).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneWalk {
    t_min: i64,
    positions: Vec<(i64, i64)>,
}

impl PlaneWalk {
    pub fn new(t_min: i64, positions: Vec<(i64, i64)>) -> Result<Self, WalkError> {
        if positions.is_empty() {
            return Err(WalkError::EmptyWalk);
        }
        for t0 in 1..positions.len() {
            let (px, py) = positions[t0 - 1];
            let (x, y) = positions[t0];
            if Step::new(x - px, y - py).is_none() {
                return Err(WalkError::StepNotInA { index: t0 + 1 });
            }
        }
        Ok(PlaneWalk { t_min, positions })
    }

    /// Inclusive time window.
    pub fn interval(&self) -> (i64, i64) {
        (self.t_min, self.t_min + self.positions.len() as i64 - 1)
    }

    pub fn position(&self, t: i64) -> (i64, i64) {
        let (lo, hi) = self.interval();
        assert!(t >= lo && t <= hi, "time {t} outside walk window");
        self.positions[(t - lo) as usize]
    }

    pub fn positions(&self) -> &[(i64, i64)] {
        &self.positions
    }

    pub fn steps(&self) -> Vec<Step> {
        self.positions
            .windows(2)
            .map(|w| Step::new(w[1].0 - w[0].0, w[1].1 - w[0].1).unwrap())
            .collect()
    }
}

/// All quadrant walks of size `n` exactly once, by depth-first search over
/// positions: the diagonal step first, then face steps `(-i,+j)` in
/// lexicographic `(i, j)` order. Guarded to `n <= 9`.
pub fn enumerate_walks(n: usize) -> Result<Vec<QuadrantWalk>, WalkError> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(WalkError::SizeOutOfRange { n });
    }
    let mut out = Vec::new();
    let mut path: Vec<(i64, i64)> = Vec::with_capacity(n);
    for h in 0..n as i64 {
        path.push((0, h));
        dfs(&mut path, n, &mut out);
        path.pop();
    }
    Ok(out)
}

fn dfs(path: &mut Vec<(i64, i64)>, n: usize, out: &mut Vec<QuadrantWalk>) {
    let (x, y) = *path.last().unwrap();
    let rem = (n - path.len()) as i64;
    if rem == 0 {
        if y == 0 {
            out.push(QuadrantWalk {
                positions: path.clone(),
            });
        }
        return;
    }
    // y may decrease by at most 1 per step, so it must not exceed the
    // remaining step budget at any point.
    if y >= 1 && y <= rem {
        path.push((x + 1, y - 1));
        dfs(path, n, out);
        path.pop();
    }
    for i in 0..=x {
        for j in 0..=(rem - 1 - y) {
            path.push((x - i, y + j));
            dfs(path, n, out);
            path.pop();
        }
    }
}

/// One rejection attempt: run a nu-walk from the origin until it first
/// leaves the quadrant, accepting if the last in-quadrant position is the
/// origin and the in-quadrant length lies in `[min_len, max_len]`.
/// Returns the accepted excursion (all positions in the quadrant, first and
/// last equal to `(0, 0)`).
fn excursion_attempt<R: RngCore + ?Sized>(
    min_len: usize,
    max_len: usize,
    rng: &mut R,
) -> Option<Vec<(i64, i64)>> {
    let mut pos: Vec<(i64, i64)> = vec![(0, 0)];
    loop {
        let s = NuLaw::sample(rng);
        let (px, py) = *pos.last().unwrap();
        let (x, y) = (px + s.dx, py + s.dy);
        if x < 0 || y < 0 {
            let ok = (px, py) == (0, 0) && pos.len() >= min_len && pos.len() <= max_len;
            return ok.then_some(pos);
        }
        pos.push((x, y));
        if pos.len() > max_len {
            return None;
        }
    }
}

/// Samples a uniform quadrant excursion (a nu-walk from `(0,0)` to `(0,0)`
/// staying in the quadrant) whose length lies in `[n_min + 2, n_max + 2]`.
pub fn sample_excursion_raw<R: RngCore + ?Sized>(
    n_min: usize,
    n_max: usize,
    max_attempts: u64,
    rng: &mut R,
) -> Result<Vec<(i64, i64)>, WalkError> {
    if n_min == 0 || n_min > n_max {
        return Err(WalkError::BadWindow);
    }
    for _ in 0..max_attempts {
        if let Some(exc) = excursion_attempt(n_min + 2, n_max + 2, rng) {
            return Ok(exc);
        }
    }
    Err(WalkError::MaxAttemptsExceeded {
        attempts: max_attempts,
    })
}

/// Samples a uniform element of `W_m` for a random `m` in `[n_min, n_max]`
/// by the rejection method: accept a quadrant excursion and strip its first
/// and last steps. The realized size is `walk.len()`.
pub fn sample_uniform_excursion<R: RngCore + ?Sized>(
    n_min: usize,
    n_max: usize,
    max_attempts: u64,
    rng: &mut R,
) -> Result<QuadrantWalk, WalkError> {
    let exc = sample_excursion_raw(n_min, n_max, max_attempts, rng)?;
    let trimmed = exc[1..exc.len() - 1].to_vec();
    QuadrantWalk::validate(trimmed)
}

/// A bidirectional nu-walk pinned to `(0,0)` at time 0 on the window
/// `[t_min, t_max]`. Forward increments are drawn first (times 1..=t_max),
/// then backward ones (times 0 down to t_min + 1).
pub fn sample_bidirectional<R: RngCore + ?Sized>(
    t_min: i64,
    t_max: i64,
    rng: &mut R,
) -> Result<PlaneWalk, WalkError> {
    if t_min > 0 || t_max < 0 {
        return Err(WalkError::BadWindow);
    }
    let len = (t_max - t_min + 1) as usize;
    let mut fwd: Vec<(i64, i64)> = Vec::with_capacity((t_max + 1) as usize);
    fwd.push((0, 0));
    for _ in 0..t_max {
        let s = NuLaw::sample(rng);
        let (x, y) = *fwd.last().unwrap();
        fwd.push((x + s.dx, y + s.dy));
    }
    let mut bwd: Vec<(i64, i64)> = Vec::with_capacity((-t_min) as usize);
    let mut cur = (0i64, 0i64);
    for _ in 0..(-t_min) {
        let s = NuLaw::sample(rng);
        cur = (cur.0 - s.dx, cur.1 - s.dy);
        bwd.push(cur);
    }
    let mut positions = Vec::with_capacity(len);
    positions.extend(bwd.into_iter().rev());
    positions.extend(fwd);
    PlaneWalk::new(t_min, positions)
}
