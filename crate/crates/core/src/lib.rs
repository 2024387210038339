//! Four families of discrete objects and the bijections between them:
//! Baxter permutations, quadrant walks with the admissible step set `A`,
//! plane bipolar orientations, and coalescent-walk processes. On top of the
//! discrete layer sits a numerical one: correlated Brownian drivers, an Euler
//! scheme for the sign-switched (perturbed Tanaka) SDE, and Monte-Carlo
//! estimation of pattern probabilities of the coalescent Baxter permuton.
//!
//! The crate is `no_std` (with `alloc`); all randomness flows through caller
//! supplied [`rand::RngCore`] state, so everything is reproducible and safe
//! to drive from independent tasks.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bipolar;
pub mod coalescent;
pub mod continuum;
pub mod locallim;
pub mod permutation;
pub mod walk;

pub use bipolar::BipolarMap;
pub use coalescent::{baxter_from_walk, CoalescentForest, CoalescentProcess};
pub use permutation::{Permutation, PermutonHistogram};
pub use walk::{PlaneWalk, QuadrantWalk, Step};
