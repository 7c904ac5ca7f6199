//! Switching phases that remove loops and double edges.
//!
//! Each phase repeatedly picks a candidate switching uniformly from a fixed
//! candidate space of size `f̄(m)` (discarding invalid candidates is the
//! f-rejection), performs it, and then relaxes the anchoring of the new
//! graph in two levels (the b-rejection). Any rejection restarts the whole
//! generator.

mod candidates;
mod counts;
mod phases;

pub use candidates::{
    apply_bipartite_d_switching, apply_d_switching, apply_l_switching, is_valid_anchor,
    sample_bipartite_d_candidate, sample_d_candidate, sample_l_candidate,
};
pub use counts::{b_bipartite_0, b_bipartite_1, b_d_0, b_d_1, b_l_0, b_l_1, Workspace};
pub use phases::{bipartite_no_doubles, no_doubles, no_loops, PhaseOutcome, RejectCause};

use serde::Serialize;

use crate::degree::{BipartiteDegreeSequence, DegreeSequence};
use crate::error::{Error, Result};
use crate::multigraph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SwitchingKind {
    /// ℓ-switching: removes the loop at `v₂`.
    Loop,
    /// d-switching: removes the double edge `v₂v₅`.
    Double,
    /// d-switching with `v₂, v₄, v₆ ∈ X` and `v₁, v₃, v₅ ∈ Y`.
    BipartiteDouble,
}

/// The ordered vertices `(v₁, …, v₅)` or `(v₁, …, v₆)` whose adjacencies a
/// switching changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Anchor {
    kind: SwitchingKind,
    vertices: [Vertex; 6],
}

impl Anchor {
    pub fn ell(v: [Vertex; 5]) -> Self {
        Anchor {
            kind: SwitchingKind::Loop,
            vertices: [v[0], v[1], v[2], v[3], v[4], Vertex::MAX],
        }
    }

    pub fn dee(v: [Vertex; 6]) -> Self {
        Anchor {
            kind: SwitchingKind::Double,
            vertices: v,
        }
    }

    pub fn bipartite_dee(v: [Vertex; 6]) -> Self {
        Anchor {
            kind: SwitchingKind::BipartiteDouble,
            vertices: v,
        }
    }

    pub fn kind(&self) -> SwitchingKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Vertex] {
        match self.kind {
            SwitchingKind::Loop => &self.vertices[..5],
            _ => &self.vertices,
        }
    }

    /// `v_i` with 1-based indexing.
    pub fn v(&self, i: usize) -> Vertex {
        self.vertices[i - 1]
    }

    /// The sub-anchor kept at relaxation level `i`: empty at level 0, the
    /// created 2-path at level 1, everything at level 2.
    ///
    /// For bipartite switchings the level-1 path is `(v₄, v₅, v₆)`, centered
    /// in `Y`; relabeling `v₁↔v₄, v₂↔v₅, v₃↔v₆` maps the switching to itself.
    pub fn level(&self, i: usize) -> &[Vertex] {
        match i {
            0 => &[],
            1 => match self.kind {
                SwitchingKind::BipartiteDouble => &self.vertices[3..6],
                _ => &self.vertices[..3],
            },
            _ => self.vertices(),
        }
    }
}

/// The degree statistics the bound formulas depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundStats {
    pub total: u64,
    pub second_moment: u64,
    pub max_degree: u32,
}

impl From<&DegreeSequence> for BoundStats {
    fn from(ds: &DegreeSequence) -> Self {
        BoundStats {
            total: ds.total(),
            second_moment: ds.second_moment(),
            max_degree: ds.max_degree(),
        }
    }
}

/// Candidate-space sizes and lower bounds on the backward counts, for a
/// multigraph class with `m₁` loops and `m₂` double edges. Lower bounds are
/// signed: outside the switching regime they may be nonpositive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseBounds {
    /// `f̄_ℓ(m) = m₁M²`.
    pub f_loop: u128,
    /// `b̲_ℓ(m;0) = M₂ − 8m₂Δ − m₁Δ²`.
    pub b_loop_0: i128,
    /// `b̲_ℓ(m;1) = M − 6Δ² + 4Δ`.
    pub b_loop_1: i128,
    /// `f̄_d(m) = 2m₂M²`.
    pub f_double: u128,
    /// `b̲_d(m;0) = M₂ − 8m₂Δ`.
    pub b_double_0: i128,
    /// `b̲_d(m;1) = M₂ − 4m₂(2Δ − 3) − 3Δ³`.
    pub b_double_1: i128,
}

impl PhaseBounds {
    pub fn evaluate(stats: BoundStats, m1: u64, m2: u64) -> Self {
        let m = i128::from(stats.total);
        let m_sq = u128::from(stats.total) * u128::from(stats.total);
        let sec = i128::from(stats.second_moment);
        let d = i128::from(stats.max_degree);
        let (m1i, m2i) = (i128::from(m1), i128::from(m2));
        PhaseBounds {
            f_loop: u128::from(m1) * m_sq,
            b_loop_0: sec - 8 * m2i * d - m1i * d * d,
            b_loop_1: m - 6 * d * d + 4 * d,
            f_double: 2 * u128::from(m2) * m_sq,
            b_double_0: sec - 8 * m2i * d,
            b_double_1: sec - 4 * m2i * (2 * d - 3) - 3 * d * d * d,
        }
    }
}

/// Evaluates [`PhaseBounds`] at `m = (m₁, m₂)`. When `22Δ³ < M₂` every
/// lower bound must come out positive; a nonpositive one is reported as an
/// invariant violation.
pub fn phase_bounds(stats: BoundStats, m1: u64, m2: u64) -> Result<PhaseBounds> {
    let b = PhaseBounds::evaluate(stats, m1, m2);
    let delta = u128::from(stats.max_degree);
    let in_regime = 22 * delta * delta * delta < u128::from(stats.second_moment);
    if in_regime
        && [b.b_loop_0, b.b_loop_1, b.b_double_0, b.b_double_1]
            .iter()
            .any(|&x| x <= 0)
    {
        return Err(Error::InternalInvariantViolation(format!(
            "nonpositive lower bound at m = ({m1}, {m2}): {b:?}"
        )));
    }
    Ok(b)
}

/// Lower bounds `(b̲(m;0), b̲(m;1))` used by the b-rejection step.
pub trait LowerBounds {
    /// Bounds for switchings of `kind` whose result has `loops` loops and
    /// `doubles` double edges. `None` when a bound is not positive, in
    /// which case every such switching is rejected.
    fn lower_bounds(&self, kind: SwitchingKind, loops: u64, doubles: u64) -> Option<(u64, u64)>;
}

fn positive_pair(a: i128, b: i128) -> Option<(u64, u64)> {
    (a > 0 && b > 0).then_some((a as u64, b as u64))
}

/// The closed-form bounds for general degree sequences.
#[derive(Clone, Copy, Debug)]
pub struct FormulaBounds {
    stats: BoundStats,
}

impl FormulaBounds {
    pub fn new(ds: &DegreeSequence) -> Self {
        FormulaBounds { stats: ds.into() }
    }
}

impl LowerBounds for FormulaBounds {
    fn lower_bounds(&self, kind: SwitchingKind, loops: u64, doubles: u64) -> Option<(u64, u64)> {
        let b = PhaseBounds::evaluate(self.stats, loops, doubles);
        match kind {
            SwitchingKind::Loop => positive_pair(b.b_loop_0, b.b_loop_1),
            SwitchingKind::Double => positive_pair(b.b_double_0, b.b_double_1),
            SwitchingKind::BipartiteDouble => None,
        }
    }
}

/// Bipartite lower bounds: `b̲_d(m;0) = T₂ − 4m₂Δ` and
/// `b̲_d(m;1) = S₂ − 4m₂Δ − 4Δ² − 3Δ³`.
#[derive(Clone, Copy, Debug)]
pub struct BipartiteFormulaBounds {
    x_second_moment: u64,
    y_second_moment: u64,
    max_degree: u32,
}

impl BipartiteFormulaBounds {
    pub fn new(bds: &BipartiteDegreeSequence) -> Self {
        BipartiteFormulaBounds {
            x_second_moment: bds.x_second_moment(),
            y_second_moment: bds.y_second_moment(),
            max_degree: bds.max_degree(),
        }
    }

    /// `(b̲_d(m;0), b̲_d(m;1))` at `m₂` double edges, signed.
    pub fn evaluate(&self, doubles: u64) -> (i128, i128) {
        let d = i128::from(self.max_degree);
        let m2 = i128::from(doubles);
        (
            i128::from(self.y_second_moment) - 4 * m2 * d,
            i128::from(self.x_second_moment) - 4 * m2 * d - 4 * d * d - 3 * d * d * d,
        )
    }
}

impl LowerBounds for BipartiteFormulaBounds {
    fn lower_bounds(&self, kind: SwitchingKind, _loops: u64, doubles: u64) -> Option<(u64, u64)> {
        match kind {
            SwitchingKind::BipartiteDouble => {
                let (b0, b1) = self.evaluate(doubles);
                positive_pair(b0, b1)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(total: u64, second_moment: u64, max_degree: u32) -> BoundStats {
        BoundStats {
            total,
            second_moment,
            max_degree,
        }
    }

    #[test]
    fn loop_bound_formulas() {
        let b = PhaseBounds::evaluate(stats(100, 200, 3), 2, 1);
        assert_eq!(b.f_loop, 2 * 100 * 100);
        assert_eq!(b.b_loop_1, 58);
        assert_eq!(b.b_loop_0, 200 - 24 - 18);
    }

    #[test]
    fn double_bound_formulas() {
        let b = PhaseBounds::evaluate(stats(100, 200, 3), 0, 2);
        assert_eq!(b.b_double_0, 152);
        assert_eq!(b.b_double_1, 95);
        assert_eq!(b.f_double, 2 * 2 * 100 * 100);
    }

    #[test]
    fn bounds_positive_in_regime() {
        // 4-regular, n = 1000: M = 4000, M2 = 12000 > 22 * 64.
        let ds = DegreeSequence::regular(1000, 4);
        let th = crate::pairing::phi0_thresholds(&ds);
        for m1 in 0..=th.max_loops() {
            for m2 in 0..=th.max_doubles() {
                phase_bounds((&ds).into(), m1, m2).unwrap();
            }
        }
    }

    #[test]
    fn anchor_levels() {
        let a = Anchor::ell([1, 2, 3, 4, 5]);
        assert_eq!(a.level(0), &[] as &[Vertex]);
        assert_eq!(a.level(1), &[1, 2, 3]);
        assert_eq!(a.level(2), &[1, 2, 3, 4, 5]);
        let b = Anchor::bipartite_dee([1, 2, 3, 4, 5, 6]);
        assert_eq!(b.level(1), &[4, 5, 6]);
    }
}
