//! Uniform generation of simple bipartite graphs with given part degrees.
//!
//! Bipartite pairings have no loops, so a single phase of bipartite
//! d-switchings is enough.

use rand::Rng;
use serde::Serialize;

use crate::degree::BipartiteDegreeSequence;
use crate::driver::{restart_loop, GenerationStats, DEFAULT_MAX_RESTARTS};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use crate::pairing::{generate_bipartite_pairing, Phi0Thresholds};
use crate::switching::{
    bipartite_no_doubles, BipartiteFormulaBounds, LowerBounds, PhaseOutcome, RejectCause, Workspace,
};

/// A simple bipartite graph. Vertices `0..x_len` form `X`, vertices
/// `x_len..x_len + y_len` form `Y`; edges are `(x, y)` sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleBipartiteGraph {
    x_len: usize,
    y_len: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl SimpleBipartiteGraph {
    /// Edges given as `(x, y)` in global numbering. Returns `None` on a
    /// repeated edge or an edge not joining `X` to `Y`.
    pub fn from_edges(x_len: usize, y_len: usize, edges: &[(Vertex, Vertex)]) -> Option<Self> {
        let split = x_len as Vertex;
        let end = (x_len + y_len) as Vertex;
        let mut e: Vec<_> = edges.iter().map(|&(u, w)| (u.min(w), u.max(w))).collect();
        e.sort_unstable();
        let ok = e.iter().all(|&(x, y)| x < split && y >= split && y < end)
            && e.windows(2).all(|p| p[0] != p[1]);
        ok.then_some(SimpleBipartiteGraph {
            x_len,
            y_len,
            edges: e,
        })
    }

    pub fn x_len(&self) -> usize {
        self.x_len
    }

    pub fn y_len(&self) -> usize {
        self.y_len
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// `(X degrees, Y degrees)`.
    pub fn degrees(&self) -> (Vec<u32>, Vec<u32>) {
        let mut x = vec![0u32; self.x_len];
        let mut y = vec![0u32; self.y_len];
        for &(u, w) in &self.edges {
            x[u as usize] += 1;
            y[w as usize - self.x_len] += 1;
        }
        (x, y)
    }
}

#[derive(Clone, Debug)]
pub struct BipartiteGenerator<B = BipartiteFormulaBounds> {
    bds: BipartiteDegreeSequence,
    thresholds: Phi0Thresholds,
    bounds: B,
    max_restarts: u64,
    workspace: Workspace,
}

impl BipartiteGenerator<BipartiteFormulaBounds> {
    pub fn new(bds: BipartiteDegreeSequence) -> Result<Self> {
        let thresholds = Phi0Thresholds::bipartite(&bds);
        let bounds = BipartiteFormulaBounds::new(&bds);
        Self::with_bounds(bds, thresholds, bounds)
    }
}

impl<B: LowerBounds> BipartiteGenerator<B> {
    pub fn with_bounds(
        bds: BipartiteDegreeSequence,
        thresholds: Phi0Thresholds,
        bounds: B,
    ) -> Result<Self> {
        let (x_sum, y_sum) = bds.part_totals();
        if x_sum != y_sum {
            return Err(Error::UnbalancedParts { x_sum, y_sum });
        }
        if !bds.is_bigraphical() {
            return Err(Error::NotBigraphical);
        }
        let workspace = Workspace::new(bds.x_len() + bds.y_len());
        Ok(BipartiteGenerator {
            bds,
            thresholds,
            bounds,
            max_restarts: DEFAULT_MAX_RESTARTS,
            workspace,
        })
    }

    pub fn with_max_restarts(mut self, max_restarts: u64) -> Self {
        self.max_restarts = max_restarts.max(1);
        self
    }

    pub fn attempt<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        stats: &mut GenerationStats,
    ) -> Result<std::result::Result<Multigraph, RejectCause>> {
        let mut g = Multigraph::from_pairing(generate_bipartite_pairing(&self.bds, rng)?);
        if !self.thresholds.admits(&g.profile()) {
            return Ok(Err(RejectCause::Initial));
        }
        let outcome = bipartite_no_doubles(
            &mut g,
            &self.bounds,
            &mut self.workspace,
            rng,
            &mut stats.switching_steps_d,
        )?;
        Ok(match outcome {
            PhaseOutcome::Completed => Ok(g),
            PhaseOutcome::Restart(c) => Err(c),
        })
    }

    pub fn sample<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> Result<(SimpleBipartiteGraph, GenerationStats)> {
        let mut stats = GenerationStats::default();
        let max = self.max_restarts;
        let g = restart_loop(max, &mut stats, |s| self.attempt(rng, s))?;
        if !g.is_simple() {
            return Err(Error::InternalInvariantViolation(
                "finished bipartite graph is not simple".into(),
            ));
        }
        let out =
            SimpleBipartiteGraph::from_edges(self.bds.x_len(), self.bds.y_len(), &g.edge_list())
                .ok_or_else(|| Error::InternalInvariantViolation("edge crosses no parts".into()))?;
        Ok((out, stats))
    }
}

/// Draws one uniformly random simple bipartite graph with part degrees
/// `bds`.
pub fn inc_bipartite<R: Rng + ?Sized>(
    bds: &BipartiteDegreeSequence,
    rng: &mut R,
    max_restarts: Option<u64>,
) -> Result<(SimpleBipartiteGraph, GenerationStats)> {
    BipartiteGenerator::new(bds.clone())?
        .with_max_restarts(max_restarts.unwrap_or(DEFAULT_MAX_RESTARTS))
        .sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degrees_preserved() {
        let bds = BipartiteDegreeSequence::new(&[3, 2, 2, 1], &[2, 2, 2, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (g, _) = inc_bipartite(&bds, &mut rng, None).unwrap();
            let (x, y) = g.degrees();
            assert_eq!(x, bds.x_degrees());
            assert_eq!(y, bds.y_degrees());
        }
    }

    #[test]
    fn unbalanced_and_infeasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = BipartiteDegreeSequence::new(&[2], &[1]).unwrap();
        assert!(matches!(
            inc_bipartite(&u, &mut rng, None),
            Err(Error::UnbalancedParts { x_sum: 2, y_sum: 1 })
        ));
        let nb = BipartiteDegreeSequence::new(&[2], &[2]).unwrap();
        assert!(matches!(
            inc_bipartite(&nb, &mut rng, None),
            Err(Error::NotBigraphical)
        ));
    }

    #[test]
    fn switchings_fire_for_large_sparse_input() {
        let bds = BipartiteDegreeSequence::from_degrees(vec![6; 400], vec![6; 400]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut steps = 0;
        for _ in 0..10 {
            let (g, s) = inc_bipartite(&bds, &mut rng, None).unwrap();
            assert_eq!(g.degrees().0, bds.x_degrees());
            steps += s.switching_steps_d;
        }
        assert!(steps > 0);
    }
}
