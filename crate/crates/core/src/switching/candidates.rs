//! Uniform candidate sampling and in-place application of switchings.
//!
//! A candidate is drawn from a space of exactly `f̄(m)` equally likely
//! choices: a loop (or a double edge plus an orientation) and two uniform
//! points, each point naming an ordered edge slot. Valid switchings
//! correspond one-to-one to the valid choices, so returning `None` on an
//! invalid choice is the f-rejection.

use rand::Rng;

use super::{Anchor, SwitchingKind};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Part, Vertex};

fn distinct(vs: &[Vertex]) -> bool {
    vs.iter().enumerate().all(|(i, v)| !vs[..i].contains(v))
}

/// Checks that `anchor` names a valid forward switching on `g`.
pub fn is_valid_anchor(g: &Multigraph, anchor: &Anchor) -> bool {
    let vs = anchor.vertices();
    if vs.iter().any(|&v| v as usize >= g.n()) || !distinct(vs) {
        return false;
    }
    let v = |i| anchor.v(i);
    match anchor.kind() {
        SwitchingKind::Loop => {
            g.loop_count(v(2)) == 1
                && g.is_single_edge(v(1), v(4))
                && g.is_single_edge(v(3), v(5))
                && !g.is_adjacent(v(1), v(2))
                && !g.is_adjacent(v(2), v(3))
                && !g.is_adjacent(v(4), v(5))
        }
        SwitchingKind::Double | SwitchingKind::BipartiteDouble => {
            let parts_ok = anchor.kind() == SwitchingKind::Double
                || ([2, 4, 6].iter().all(|&i| g.part(v(i)) == Part::X)
                    && [1, 3, 5].iter().all(|&i| g.part(v(i)) == Part::Y));
            parts_ok
                && g.multiplicity(v(2), v(5)) == 2
                && g.is_single_edge(v(1), v(4))
                && g.is_single_edge(v(3), v(6))
                && !g.is_adjacent(v(1), v(2))
                && !g.is_adjacent(v(2), v(3))
                && !g.is_adjacent(v(4), v(5))
                && !g.is_adjacent(v(5), v(6))
        }
    }
}

fn uniform_point<R: Rng + ?Sized>(g: &Multigraph, rng: &mut R) -> u32 {
    rng.random_range(0..g.point_count() as u32)
}

/// Draws one of the `m₁M²` choices; `None` when it is not a valid
/// ℓ-switching. Requires `m₁ > 0`.
pub fn sample_l_candidate<R: Rng + ?Sized>(g: &Multigraph, rng: &mut R) -> Option<Anchor> {
    let v2 = g.loop_vertex(rng.random_range(0..g.loop_total() as usize));
    let (v1, v4) = g.ordered_edge_at(uniform_point(g, rng));
    let (v3, v5) = g.ordered_edge_at(uniform_point(g, rng));
    let anchor = Anchor::ell([v1, v2, v3, v4, v5]);
    is_valid_anchor(g, &anchor).then_some(anchor)
}

/// Draws one of the `2m₂M²` choices; `None` when it is not a valid
/// d-switching. Requires `m₂ > 0`.
pub fn sample_d_candidate<R: Rng + ?Sized>(g: &Multigraph, rng: &mut R) -> Option<Anchor> {
    let (a, b) = g.double_edge(rng.random_range(0..g.double_total() as usize));
    let (v2, v5) = if rng.random::<bool>() { (a, b) } else { (b, a) };
    let (v1, v4) = g.ordered_edge_at(uniform_point(g, rng));
    let (v3, v6) = g.ordered_edge_at(uniform_point(g, rng));
    let anchor = Anchor::dee([v1, v2, v3, v4, v5, v6]);
    is_valid_anchor(g, &anchor).then_some(anchor)
}

/// Draws one of the `m₂M²` bipartite choices: a double edge (oriented with
/// `v₂ ∈ X`) and two uniform `Y`-side points giving the edges `v₁v₄` and
/// `v₃v₆` with `v₁, v₃ ∈ Y`.
pub fn sample_bipartite_d_candidate<R: Rng + ?Sized>(
    g: &Multigraph,
    rng: &mut R,
) -> Option<Anchor> {
    let split = g.y_start()?;
    let (v2, v5) = g.double_edge(rng.random_range(0..g.double_total() as usize));
    let lo = g.first_point(split);
    let hi = g.first_point(g.n() as Vertex);
    let (v1, v4) = g.ordered_edge_at(rng.random_range(lo..hi));
    let (v3, v6) = g.ordered_edge_at(rng.random_range(lo..hi));
    let anchor = Anchor::bipartite_dee([v1, v2, v3, v4, v5, v6]);
    is_valid_anchor(g, &anchor).then_some(anchor)
}

fn find_point(g: &Multigraph, u: Vertex, w: Vertex, skip: Option<u32>) -> Result<u32> {
    g.point_between(u, w, skip)
        .ok_or_else(|| Error::InternalInvariantViolation(format!("no point pair for {u}-{w}")))
}

fn check_after(g: &Multigraph) -> Result<()> {
    if cfg!(debug_assertions) && g.n() <= 2048 {
        g.check_consistency()
            .map_err(Error::InternalInvariantViolation)?;
    }
    Ok(())
}

fn require_valid(g: &Multigraph, anchor: &Anchor, kind: SwitchingKind) -> Result<()> {
    if anchor.kind() != kind || !is_valid_anchor(g, anchor) {
        return Err(Error::InvalidAnchor(format!(
            "{anchor:?} is not a valid switching"
        )));
    }
    Ok(())
}

/// Replaces the loop at `v₂` and the edges `v₁v₄`, `v₃v₅` by `v₁v₂`,
/// `v₂v₃`, `v₄v₅`.
pub fn apply_l_switching(g: &mut Multigraph, anchor: &Anchor) -> Result<()> {
    require_valid(g, anchor, SwitchingKind::Loop)?;
    let [v1, v2, v3, v4, v5] = [1, 2, 3, 4, 5].map(|i| anchor.v(i));
    let loop_a = find_point(g, v2, v2, None)?;
    let loop_b = g.partner(loop_a);
    let p1 = find_point(g, v1, v4, None)?;
    let p4 = g.partner(p1);
    let p3 = find_point(g, v3, v5, None)?;
    let p5 = g.partner(p3);
    g.rematch(loop_a, p1);
    g.rematch(loop_b, p3);
    g.rematch(p4, p5);
    g.adjust_pair(v2, v2, -1);
    g.adjust_pair(v1, v4, -1);
    g.adjust_pair(v3, v5, -1);
    g.adjust_pair(v1, v2, 1);
    g.adjust_pair(v2, v3, 1);
    g.adjust_pair(v4, v5, 1);
    check_after(g)
}

fn apply_double(g: &mut Multigraph, anchor: &Anchor) -> Result<()> {
    let [v1, v2, v3, v4, v5, v6] = [1, 2, 3, 4, 5, 6].map(|i| anchor.v(i));
    let d1 = find_point(g, v2, v5, None)?;
    let d2 = find_point(g, v2, v5, Some(d1))?;
    let (e1, e2) = (g.partner(d1), g.partner(d2));
    let p1 = find_point(g, v1, v4, None)?;
    let p4 = g.partner(p1);
    let p3 = find_point(g, v3, v6, None)?;
    let p6 = g.partner(p3);
    g.rematch(d1, p1);
    g.rematch(d2, p3);
    g.rematch(e1, p4);
    g.rematch(e2, p6);
    g.adjust_pair(v2, v5, -2);
    g.adjust_pair(v1, v4, -1);
    g.adjust_pair(v3, v6, -1);
    g.adjust_pair(v1, v2, 1);
    g.adjust_pair(v2, v3, 1);
    g.adjust_pair(v4, v5, 1);
    g.adjust_pair(v5, v6, 1);
    check_after(g)
}

/// Replaces the double edge `v₂v₅` and the edges `v₁v₄`, `v₃v₆` by `v₁v₂`,
/// `v₂v₃`, `v₄v₅`, `v₅v₆`.
pub fn apply_d_switching(g: &mut Multigraph, anchor: &Anchor) -> Result<()> {
    require_valid(g, anchor, SwitchingKind::Double)?;
    apply_double(g, anchor)
}

pub fn apply_bipartite_d_switching(g: &mut Multigraph, anchor: &Anchor) -> Result<()> {
    require_valid(g, anchor, SwitchingKind::BipartiteDouble)?;
    apply_double(g, anchor)
}
