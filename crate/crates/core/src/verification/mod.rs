//! Oracles and statistics for checking the generators at small scale.

mod chisq;
mod enumerate;
mod oracle;
mod synthetic;

pub use chisq::{chi_square_uniformity, critical_value, ChiSquareReport, MIN_EXPECTED};
pub use enumerate::{
    enumerate_bipartite, enumerate_graphs, enumerate_graphs_brute_force, EdgeKey, GraphUniverse,
    BRUTE_FORCE_LIMIT, ENUMERATION_LIMIT,
};
pub use oracle::{
    candidate_space, for_each_matching, level_one_anchors, multigraphs_of, oracle_b0, oracle_b1,
    oracle_count_switchings, DenseMultigraph, ExhaustiveBounds, PAIRING_POINT_LIMIT,
};
pub use synthetic::SyntheticFamily;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multigraph::Vertex;

/// The generator for run `index` of a batch seeded with `seed`: the same
/// key with its own stream, so runs are independent and reproducible
/// regardless of scheduling.
pub fn run_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws `samples` graphs in parallel with `draw` and tallies them over
/// `universe`. `draw` receives the per-run generator and returns a sorted
/// edge list.
pub fn tally_samples<F>(
    universe: &GraphUniverse,
    samples: u64,
    seed: u64,
    draw: F,
) -> Result<Vec<u64>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<(Vertex, Vertex)>> + Sync,
{
    let cells = universe.len();
    (0..samples)
        .into_par_iter()
        .try_fold(
            || vec![0u64; cells],
            |mut acc, k| {
                let mut rng = run_rng(seed, k);
                let edges = draw(&mut rng)?;
                let i = universe.index_of(&edges).ok_or_else(|| {
                    Error::InternalInvariantViolation(format!(
                        "sample {edges:?} is not in the enumerated universe"
                    ))
                })?;
                acc[i] += 1;
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u64; cells],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )
}
