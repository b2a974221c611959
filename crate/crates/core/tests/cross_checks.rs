//! Sampler-vs-analysis cross-check at an exactly solvable size: the full
//! triple process on six vertices, where the lifetime expectations are
//! known rationals (creations at excess 0 = 15/19, statics = 17/19, vertex
//! mass V[0] = 4).

use hyperphase::sim::{monte_carlo, StopRule};

#[test]
fn six_vertex_triple_process_matches_the_exact_rational_expectations() {
    let reps = 30_000;
    let s = monte_carlo(6, 3, reps, hyperphase::DEFAULT_SEED, StopRule::AllEdges);
    for (name, stat, exact) in [
        ("creations[0]", &s.creations[&0], 15.0 / 19.0),
        ("statics[0]", &s.statics[&0], 17.0 / 19.0),
        ("V[0]", &s.v[&0], 4.0),
    ] {
        let z = (stat.mean - exact) / stat.std_error;
        assert!(
            z.abs() <= 4.0,
            "{name}: mean {} vs exact {exact} is {z:+.2} standard errors",
            stat.mean
        );
    }
}
