//! Statistical behavior of the Monte Carlo oracle that the unit tests do
//! not cover: the 1/sqrt(samples) convergence rate.

use evidence_core::*;

fn joint_l2_deviation(params: &FrameworkParams, table: &JointCountTable) -> f64 {
    let prior = params.hypothesis_prior();
    let total = table.total() as f64;
    let mut sum = 0.0;
    for truth in [true, false] {
        let weight = if truth { prior } else { 1.0 - prior };
        for j in 0..=table.max_count_tracked() {
            for k in 0..=table.max_count_tracked() {
                let expected = weight
                    * observation_probability(params, truth, Observation::new(j, k)).unwrap();
                let observed = table.tally(truth, j, k).unwrap() as f64 / total;
                sum += (observed - expected) * (observed - expected);
            }
        }
    }
    sum.sqrt()
}

#[test]
fn deviation_shrinks_at_root_n_rate() {
    let params = FrameworkParams::new(
        ErrorRates::new(0.05, 0.2).unwrap(),
        ErrorRates::new(0.01, 0.9).unwrap(),
        1.0,
        0.5,
        InterestPrior::gamma(1.0, 0.1).unwrap(),
    )
    .unwrap();
    let small = simulate_framework(&params, &SimulationConfig::new(250_000, 2024).unwrap())
        .unwrap();
    let large = simulate_framework(&params, &SimulationConfig::new(1_000_000, 2024).unwrap())
        .unwrap();
    let ratio = joint_l2_deviation(&params, &small) / joint_l2_deviation(&params, &large);
    // quadrupling the samples should roughly halve the deviation
    assert!(
        (1.5..=3.0).contains(&ratio),
        "deviation ratio {ratio} outside the 1/sqrt(n) band"
    );
}
