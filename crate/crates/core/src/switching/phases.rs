use rand::Rng;
use serde::Serialize;

use super::counts::backward_counts;
use super::{
    apply_bipartite_d_switching, apply_d_switching, apply_l_switching,
    sample_bipartite_d_candidate, sample_d_candidate, sample_l_candidate, Anchor, LowerBounds,
    SwitchingKind, Workspace,
};
use crate::error::Result;
use crate::multigraph::Multigraph;
use crate::relaxation::{accept_levels, Level};

/// Why a run of the generator was abandoned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RejectCause {
    /// The initial pairing fell outside the admissible set.
    Initial,
    /// The sampled candidate was not a valid switching.
    Forward,
    /// The backward relaxation rejected the switched graph.
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseOutcome {
    Completed,
    Restart(RejectCause),
}

fn step<R, B>(
    g: &mut Multigraph,
    kind: SwitchingKind,
    bounds: &B,
    ws: &mut Workspace,
    rng: &mut R,
) -> Result<Option<RejectCause>>
where
    R: Rng + ?Sized,
    B: LowerBounds + ?Sized,
{
    let sampled: Option<Anchor> = match kind {
        SwitchingKind::Loop => sample_l_candidate(g, rng),
        SwitchingKind::Double => sample_d_candidate(g, rng),
        SwitchingKind::BipartiteDouble => sample_bipartite_d_candidate(g, rng),
    };
    let Some(anchor) = sampled else {
        return Ok(Some(RejectCause::Forward));
    };
    match kind {
        SwitchingKind::Loop => apply_l_switching(g, &anchor)?,
        SwitchingKind::Double => apply_d_switching(g, &anchor)?,
        SwitchingKind::BipartiteDouble => apply_bipartite_d_switching(g, &anchor)?,
    }
    let Some((lower0, lower1)) = bounds.lower_bounds(kind, g.loop_total(), g.double_total()) else {
        return Ok(Some(RejectCause::Backward));
    };
    let (b0, b1) = backward_counts(g, kind, anchor.level(1), ws)?;
    let levels = [Level::new(lower0, b0), Level::new(lower1, b1)];
    Ok((!accept_levels(&levels, rng)?).then_some(RejectCause::Backward))
}

fn run<R, B>(
    g: &mut Multigraph,
    kind: SwitchingKind,
    bounds: &B,
    ws: &mut Workspace,
    rng: &mut R,
    steps: &mut u64,
) -> Result<PhaseOutcome>
where
    R: Rng + ?Sized,
    B: LowerBounds + ?Sized,
{
    let remaining = |g: &Multigraph| match kind {
        SwitchingKind::Loop => g.loop_total(),
        _ => g.double_total(),
    };
    while remaining(g) > 0 {
        if let Some(cause) = step(g, kind, bounds, ws, rng)? {
            return Ok(PhaseOutcome::Restart(cause));
        }
        *steps += 1;
    }
    Ok(PhaseOutcome::Completed)
}

/// Removes every loop by ℓ-switchings. Double edges are left in place.
pub fn no_loops<R, B>(
    g: &mut Multigraph,
    bounds: &B,
    ws: &mut Workspace,
    rng: &mut R,
    steps: &mut u64,
) -> Result<PhaseOutcome>
where
    R: Rng + ?Sized,
    B: LowerBounds + ?Sized,
{
    run(g, SwitchingKind::Loop, bounds, ws, rng, steps)
}

/// Removes every double edge by d-switchings. Expects a loop-free input.
pub fn no_doubles<R, B>(
    g: &mut Multigraph,
    bounds: &B,
    ws: &mut Workspace,
    rng: &mut R,
    steps: &mut u64,
) -> Result<PhaseOutcome>
where
    R: Rng + ?Sized,
    B: LowerBounds + ?Sized,
{
    run(g, SwitchingKind::Double, bounds, ws, rng, steps)
}

/// Removes every double edge of a bipartite multigraph by bipartite
/// d-switchings.
pub fn bipartite_no_doubles<R, B>(
    g: &mut Multigraph,
    bounds: &B,
    ws: &mut Workspace,
    rng: &mut R,
    steps: &mut u64,
) -> Result<PhaseOutcome>
where
    R: Rng + ?Sized,
    B: LowerBounds + ?Sized,
{
    run(g, SwitchingKind::BipartiteDouble, bounds, ws, rng, steps)
}
