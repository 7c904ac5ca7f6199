//! The restart loop tying the pieces together.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::degree::DegreeSequence;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use crate::pairing::{generate_pairing, phi0_thresholds, Phi0Thresholds};
use crate::switching::{
    no_doubles, no_loops, FormulaBounds, LowerBounds, PhaseOutcome, RejectCause, Workspace,
};

/// Default cap on restarts before giving up.
pub const DEFAULT_MAX_RESTARTS: u64 = 1_000_000;

/// Counters collected while producing one sample.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GenerationStats {
    pub restarts_initial: u64,
    pub restarts_f: u64,
    pub restarts_b: u64,
    pub switching_steps_l: u64,
    pub switching_steps_d: u64,
    pub wall_time: Duration,
}

impl GenerationStats {
    pub fn total_restarts(&self) -> u64 {
        self.restarts_initial + self.restarts_f + self.restarts_b
    }

    pub fn record(&mut self, cause: RejectCause) {
        match cause {
            RejectCause::Initial => self.restarts_initial += 1,
            RejectCause::Forward => self.restarts_f += 1,
            RejectCause::Backward => self.restarts_b += 1,
        }
    }

    /// Adds another sample's counters to these.
    pub fn accumulate(&mut self, other: &GenerationStats) {
        self.restarts_initial += other.restarts_initial;
        self.restarts_f += other.restarts_f;
        self.restarts_b += other.restarts_b;
        self.switching_steps_l += other.switching_steps_l;
        self.switching_steps_d += other.switching_steps_d;
        self.wall_time += other.wall_time;
    }
}

/// A simple graph as a sorted list of edges `(u, w)` with `u < w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl SimpleGraph {
    /// Builds a graph from edges in any order or orientation. Returns `None`
    /// if the list has a loop, a repeated edge or an out-of-range vertex.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Option<Self> {
        let mut e: Vec<_> = edges.iter().map(|&(u, w)| (u.min(w), u.max(w))).collect();
        e.sort_unstable();
        let ok = e.iter().all(|&(u, w)| u != w && (w as usize) < n)
            && e.windows(2).all(|p| p[0] != p[1]);
        ok.then_some(SimpleGraph { n, edges: e })
    }

    pub(crate) fn from_multigraph(g: &Multigraph) -> Result<Self> {
        if !g.is_simple() {
            return Err(Error::InternalInvariantViolation(
                "finished graph is not simple".into(),
            ));
        }
        Ok(SimpleGraph {
            n: g.n(),
            edges: g.edge_list(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n];
        for &(u, w) in &self.edges {
            d[u as usize] += 1;
            d[w as usize] += 1;
        }
        d
    }
}

/// Repeats `attempt` until it succeeds, counting restarts in `stats`.
pub(crate) fn restart_loop<F>(
    max_restarts: u64,
    stats: &mut GenerationStats,
    mut attempt: F,
) -> Result<Multigraph>
where
    F: FnMut(&mut GenerationStats) -> Result<std::result::Result<Multigraph, RejectCause>>,
{
    let start = Instant::now();
    loop {
        match attempt(stats)? {
            Ok(g) => {
                stats.wall_time = start.elapsed();
                return Ok(g);
            }
            Err(cause) => {
                stats.record(cause);
                if stats.total_restarts() >= max_restarts {
                    stats.wall_time = start.elapsed();
                    return Err(Error::GaveUp(Box::new(stats.clone())));
                }
            }
        }
    }
}

/// Exactly uniform sampler of simple graphs with a fixed degree sequence.
///
/// The thresholds and bounds are normally the closed-form ones; other
/// choices are accepted so long as the thresholds are admissible and every
/// bound really is a lower bound for the graphs it is applied to.
#[derive(Clone, Debug)]
pub struct Generator<B = FormulaBounds> {
    ds: DegreeSequence,
    thresholds: Phi0Thresholds,
    bounds: B,
    max_restarts: u64,
    workspace: Workspace,
}

impl Generator<FormulaBounds> {
    pub fn new(ds: DegreeSequence) -> Result<Self> {
        let thresholds = phi0_thresholds(&ds);
        let bounds = FormulaBounds::new(&ds);
        Self::with_bounds(ds, thresholds, bounds)
    }
}

impl<B: LowerBounds> Generator<B> {
    pub fn with_bounds(ds: DegreeSequence, thresholds: Phi0Thresholds, bounds: B) -> Result<Self> {
        if ds.total() % 2 == 1 {
            return Err(Error::OddDegreeSum(ds.total()));
        }
        if !ds.is_graphical() {
            return Err(Error::NotGraphical);
        }
        let workspace = Workspace::new(ds.n());
        Ok(Generator {
            ds,
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

    pub fn degree_sequence(&self) -> &DegreeSequence {
        &self.ds
    }

    pub fn thresholds(&self) -> &Phi0Thresholds {
        &self.thresholds
    }

    /// One pass: pairing, initial rejection, then both switching phases.
    pub fn attempt<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        stats: &mut GenerationStats,
    ) -> Result<std::result::Result<Multigraph, RejectCause>> {
        let mut g = Multigraph::from_pairing(generate_pairing(&self.ds, rng)?);
        if !self.thresholds.admits(&g.profile()) {
            return Ok(Err(RejectCause::Initial));
        }
        let ws = &mut self.workspace;
        if let PhaseOutcome::Restart(c) =
            no_loops(&mut g, &self.bounds, ws, rng, &mut stats.switching_steps_l)?
        {
            return Ok(Err(c));
        }
        if let PhaseOutcome::Restart(c) =
            no_doubles(&mut g, &self.bounds, ws, rng, &mut stats.switching_steps_d)?
        {
            return Ok(Err(c));
        }
        Ok(Ok(g))
    }

    pub fn sample<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> Result<(SimpleGraph, GenerationStats)> {
        let mut stats = GenerationStats::default();
        let max = self.max_restarts;
        let g = restart_loop(max, &mut stats, |s| self.attempt(rng, s))?;
        Ok((SimpleGraph::from_multigraph(&g)?, stats))
    }
}

/// Draws one uniformly random simple graph with degree sequence `ds`.
pub fn inc_gen<R: Rng + ?Sized>(
    ds: &DegreeSequence,
    rng: &mut R,
    max_restarts: Option<u64>,
) -> Result<(SimpleGraph, GenerationStats)> {
    Generator::new(ds.clone())?
        .with_max_restarts(max_restarts.unwrap_or(DEFAULT_MAX_RESTARTS))
        .sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn output_has_requested_degrees() {
        let ds = DegreeSequence::new(&[3, 3, 2, 2, 2, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (g, _) = inc_gen(&ds, &mut rng, None).unwrap();
            assert_eq!(g.degrees(), ds.degrees());
        }
    }

    #[test]
    fn rejects_bad_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let odd = DegreeSequence::new(&[1, 1, 1]).unwrap();
        assert!(matches!(
            inc_gen(&odd, &mut rng, None),
            Err(Error::OddDegreeSum(3))
        ));
        let ng = DegreeSequence::new(&[3, 1]).unwrap();
        assert!(matches!(
            inc_gen(&ng, &mut rng, None),
            Err(Error::NotGraphical)
        ));
    }

    #[test]
    fn empty_sequence_gives_empty_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ds = DegreeSequence::new(&[0, 0, 0]).unwrap();
        let (g, stats) = inc_gen(&ds, &mut rng, None).unwrap();
        assert!(g.edges().is_empty());
        assert_eq!(stats.total_restarts(), 0);
    }

    #[test]
    fn gives_up_at_cap() {
        // Few pairings for 4-regular graphs on 6 vertices are simple, so a
        // cap of one restart is usually hit.
        let ds = DegreeSequence::regular(6, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut gave_up = false;
        for _ in 0..20 {
            if let Err(Error::GaveUp(s)) = inc_gen(&ds, &mut rng, Some(1)) {
                assert_eq!(s.total_restarts(), 1);
                gave_up = true;
            }
        }
        assert!(gave_up);
    }

    #[test]
    fn switchings_fire_in_regime() {
        let ds = DegreeSequence::regular(2000, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut total = GenerationStats::default();
        for _ in 0..20 {
            let (g, s) = inc_gen(&ds, &mut rng, None).unwrap();
            assert_eq!(g.degrees(), ds.degrees());
            total.accumulate(&s);
        }
        assert!(total.switching_steps_l > 0);
        assert!(total.switching_steps_d > 0);
    }

    #[test]
    fn simple_graph_validation() {
        assert!(SimpleGraph::from_edges(3, &[(0, 1), (1, 0)]).is_none());
        assert!(SimpleGraph::from_edges(3, &[(1, 1)]).is_none());
        assert!(SimpleGraph::from_edges(3, &[(0, 3)]).is_none());
        let g = SimpleGraph::from_edges(3, &[(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }
}
