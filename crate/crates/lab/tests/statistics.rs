//! Feasible-scale statistical checks: the same laws the large-size
//! acceptance criteria target, at sizes the rejection sampler reaches
//! comfortably. All seeds are pinned.

use baxter_core::coalescent::baxter_from_walk;
use baxter_core::locallim::consecutive_pattern_density;
use baxter_core::permutation::PermutonHistogram;
use baxter_core::walk::{sample_uniform_excursion, DEFAULT_MAX_ATTEMPTS};
use baxter_core::Permutation;

use baxter_lab::runner::estimate_pattern_parallel;
use baxter_lab::seeded_rng;
use baxter_lab::stats::{mean, stderr_of_mean};

fn sample_perms(n_min: usize, n_max: usize, count: usize, stream: u64) -> Vec<Permutation> {
    let mut rng = seeded_rng(0x57A7, stream);
    (0..count)
        .map(|_| {
            let w = sample_uniform_excursion(n_min, n_max, DEFAULT_MAX_ATTEMPTS, &mut rng)
                .expect("feasible window");
            baxter_from_walk(&w)
        })
        .collect()
}

#[test]
fn ascent_density_is_half_at_feasible_scale() {
    let ascent = Permutation::from_one_line(vec![1, 2]).unwrap();
    let perms = sample_perms(20, 40, 200, 0);
    let densities: Vec<f64> = perms
        .iter()
        .map(|p| consecutive_pattern_density(p, &ascent).unwrap())
        .collect();
    let m = mean(&densities);
    let se = stderr_of_mean(&densities);
    assert!(
        (m - 0.5).abs() <= 3.0 * se.max(1e-4),
        "mean ascent density {m} +- {se}"
    );
}

#[test]
fn mean_permuton_is_rotation_symmetric_at_feasible_scale() {
    // Reverse-complement invariance of the class makes the mean histogram
    // exactly symmetric in expectation; check it within sampling noise.
    let perms = sample_perms(20, 40, 400, 1);
    let hists: Vec<PermutonHistogram> = perms
        .iter()
        .map(|p| p.permuton_histogram(10).unwrap())
        .collect();
    let mean_h = PermutonHistogram::mean_of(&hists);
    let defect = mean_h.l1_distance(&mean_h.rotate180());
    assert!(defect < 0.25, "rotation defect {defect}");
}

#[test]
fn mean_permuton_is_stable_across_sizes_at_feasible_scale() {
    let h_small = PermutonHistogram::mean_of(
        &sample_perms(20, 40, 400, 2)
            .iter()
            .map(|p| p.permuton_histogram(6).unwrap())
            .collect::<Vec<_>>(),
    );
    let h_large = PermutonHistogram::mean_of(
        &sample_perms(40, 80, 400, 3)
            .iter()
            .map(|p| p.permuton_histogram(6).unwrap())
            .collect::<Vec<_>>(),
    );
    let d = h_small.l1_distance(&h_large);
    assert!(d < 0.30, "L1 across sizes {d}");
}

#[test]
fn conditioned_rescaled_walks_stay_in_quadrant() {
    // Rescaled uniform quadrant walks remain non-negative and end within one
    // lattice unit of the origin; the endpoint spread is a frozen baseline.
    use baxter_core::continuum::rescale_walk;
    let mut rng = seeded_rng(0x57A7, 6);
    let mut endpoint_sq = 0.0f64;
    let samples = 200usize;
    for _ in 0..samples {
        let w = sample_uniform_excursion(20, 40, DEFAULT_MAX_ATTEMPTS, &mut rng).unwrap();
        let n = w.len();
        let scale = 1.0 / (2.0 * n as f64).sqrt();
        let (px, py) = rescale_walk(w.positions(), n);
        assert!(px.values().iter().all(|&v| v >= 0.0));
        assert!(py.values().iter().all(|&v| v >= 0.0));
        // starts on the y-axis, ends on the x-axis, both within one step of 0
        assert_eq!(px.values()[0], 0.0);
        assert_eq!(*py.values().last().unwrap(), 0.0);
        let end_x = *px.values().last().unwrap();
        assert!(end_x >= 0.0);
        endpoint_sq += (end_x / scale).powi(2);
    }
    let mean_sq = endpoint_sq / samples as f64;
    // Frozen Monte-Carlo baseline for the (unrescaled) endpoint second
    // moment at sizes 20..40; guards against regressions in the sampler.
    assert!(
        (mean_sq - 8.85).abs() < 1e-9,
        "endpoint second moment baseline moved: {mean_sq}"
    );
}

#[test]
fn discrete_and_continuum_inversion_estimates_agree_at_feasible_scale() {
    // The continuum estimator goes through trajectory signs, the discrete
    // counterpart through pattern extraction; reverse-complement symmetry
    // makes both exactly 1/2 at every size, so the windows need not match.
    let inversion = Permutation::from_one_line(vec![2, 1]).unwrap();
    let continuum = estimate_pattern_parallel(&inversion, 20, 600, DEFAULT_MAX_ATTEMPTS, 29).unwrap();

    let perms = sample_perms(20, 40, 600, 4);
    let mut rng = seeded_rng(0x57A7, 5);
    let mut successes = 0u64;
    for p in &perms {
        use rand::RngCore;
        let n = p.len() as u64;
        let i = (rng.next_u64() % n) as usize + 1;
        let mut j = (rng.next_u64() % n) as usize + 1;
        while j == i {
            j = (rng.next_u64() % n) as usize + 1;
        }
        let (i, j) = (i.min(j), i.max(j));
        if p.get(i) > p.get(j) {
            successes += 1;
        }
    }
    let p_d = successes as f64 / perms.len() as f64;
    let se_d = (p_d * (1.0 - p_d) / perms.len() as f64).sqrt();
    let combined = (continuum.stderr.powi(2) + se_d.powi(2)).sqrt();
    assert!(
        (continuum.estimate - p_d).abs() <= 3.0 * combined,
        "continuum {} vs discrete {p_d} (combined se {combined})",
        continuum.estimate
    );
    assert!((continuum.estimate - 0.5).abs() <= 3.0 * continuum.stderr);
}
