//! Backward counts for the b-rejection step, evaluated on the graph a
//! switching has just produced.
//!
//! Level 0 counts the 2-paths that could serve as the first part of an
//! inverse switching; this is the cached `P₂` (or its `Y`-centered share).
//! Level 1 counts the ways to complete a given 2-path, in `O(Δ²)` expected
//! time using only the cached totals and the neighborhoods of the anchor.

use super::SwitchingKind;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Part, Vertex};

/// Reusable scratch space for [`b_d_1`] and [`b_bipartite_1`]. Per-vertex
/// tallies are invalidated by bumping an epoch instead of clearing.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    stamp: Vec<u32>,
    epoch: u32,
    tally: Vec<[u32; 3]>,
    touched: Vec<Vertex>,
    bad_first: Vec<Vertex>,
    bad_last: Vec<Vertex>,
    bad_centre: Vec<Vertex>,
    union: Vec<Vertex>,
}

impl Workspace {
    pub fn new(n: usize) -> Self {
        let mut ws = Workspace::default();
        ws.reserve(n);
        ws
    }

    fn reserve(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.tally.resize(n, [0; 3]);
        }
    }

    fn begin(&mut self, n: usize) {
        self.reserve(n);
        self.touched.clear();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    #[inline]
    fn add(&mut self, v: Vertex, first: bool, last: bool) {
        let i = v as usize;
        if self.stamp[i] != self.epoch {
            self.stamp[i] = self.epoch;
            self.tally[i] = [0; 3];
            self.touched.push(v);
        }
        let t = &mut self.tally[i];
        t[0] += u32::from(first);
        t[1] += u32::from(last);
        t[2] += u32::from(first && last);
    }
}

fn closed_set(g: &Multigraph, base: &[Vertex], around: Vertex, out: &mut Vec<Vertex>) {
    out.clear();
    out.extend_from_slice(base);
    out.extend(g.neighbors(around));
    out.sort_unstable();
    out.dedup();
}

fn check_path(g: &Multigraph, path: &[Vertex], centre: Option<Part>) -> Result<[Vertex; 3]> {
    let &[a, b, c] = path else {
        return Err(Error::InvalidAnchor(format!(
            "expected a 2-path, got {path:?}"
        )));
    };
    let n = g.n() as Vertex;
    let ok = a < n
        && b < n
        && c < n
        && a != c
        && g.is_single_edge(a, b)
        && g.is_single_edge(b, c)
        && g.loop_count(b) == 0
        && centre.is_none_or(|p| g.part(b) == p);
    if ok {
        Ok([a, b, c])
    } else {
        Err(Error::InvalidAnchor(format!(
            "{path:?} is not a simple 2-path with a loopless centre"
        )))
    }
}

/// `b_ℓ(G;0)`: simple ordered 2-paths with a loopless centre.
pub fn b_l_0(g: &Multigraph) -> u64 {
    g.p2()
}

/// `b_ℓ(G;1)`: for the 2-path `(v₁, v₂, v₃)`, the number of simple ordered
/// edges `u′w′` avoiding `{v₁, v₂, v₃}` with `v₁u′` and `v₃w′` non-edges.
///
/// Starting from all simple ordered edges, subtract those whose tail lies
/// in `A = V₁ ∪ N(v₁)`, those whose head lies in `B = V₁ ∪ N(v₃)`, and add
/// back those doing both.
pub fn b_l_1(g: &Multigraph, path: &[Vertex]) -> Result<u64> {
    let [v1, _, v3] = check_path(g, path, None)?;
    let mut tails = Vec::new();
    let mut heads = Vec::new();
    closed_set(g, path, v1, &mut tails);
    closed_set(g, path, v3, &mut heads);
    let in_heads = |w: Vertex| heads.binary_search(&w).is_ok();
    let mut bad_tail = 0u64;
    let mut both = 0u64;
    for &a in &tails {
        bad_tail += u64::from(g.simple_degree(a));
        both += g.simple_neighbors(a).filter(|&w| in_heads(w)).count() as u64;
    }
    let bad_head: u64 = heads.iter().map(|&b| u64::from(g.simple_degree(b))).sum();
    (g.simple_endpoints() + both)
        .checked_sub(bad_tail + bad_head)
        .ok_or_else(|| Error::InternalInvariantViolation("negative b_l_1".into()))
}

/// `b_d(G;0)`; with no loops present this is every simple ordered 2-path.
pub fn b_d_0(g: &Multigraph) -> u64 {
    g.p2()
}

/// `b_d(G;1)`: for the 2-path `(v₁, v₂, v₃)`, the number of simple ordered
/// 2-paths `(u′, v′, w′)` avoiding `{v₁, v₂, v₃}`, with a loopless centre
/// and `v₁u′`, `v₂v′`, `v₃w′` all non-edges.
pub fn b_d_1(g: &Multigraph, path: &[Vertex], ws: &mut Workspace) -> Result<u64> {
    let anchor = check_path(g, path, None)?;
    extensions(g, anchor, None, g.p2(), ws)
}

/// Bipartite level 0: simple ordered 2-paths centered in `Y`.
pub fn b_bipartite_0(g: &Multigraph) -> u64 {
    g.p2_in_y()
}

/// Bipartite level 1: for the `Y`-centered 2-path `(v₄, v₅, v₆)`, the
/// number of `X`-centered 2-paths `(v₁, v₂, v₃)` avoiding it with `v₁v₄`,
/// `v₂v₅`, `v₃v₆` all non-edges.
pub fn b_bipartite_1(g: &Multigraph, path: &[Vertex], ws: &mut Workspace) -> Result<u64> {
    let anchor = check_path(g, path, Some(Part::Y))?;
    if g.part(anchor[0]) != Part::X || g.part(anchor[2]) != Part::X {
        return Err(Error::InvalidAnchor(format!("{path:?} has ends outside X")));
    }
    extensions(g, anchor, Some(Part::X), g.p2() - g.p2_in_y(), ws)
}

/// Counts 2-paths `(u′, v′, w′)` with centre in `centre` (any part when
/// `None`) that avoid the anchor and are not adjacent to it position-wise.
/// `total` is the number of eligible 2-paths before those restrictions.
///
/// A loopless centre `v′` with `k` simple neighbors, `x` of them forbidden
/// as `u′`, `y` forbidden as `w′` and `z` forbidden as both, admits
/// `(k − x)(k − y) − (k − x − y + z)` ordered pairs. Only centres adjacent
/// to a forbidden end vertex deviate from `k(k − 1)`.
fn extensions(
    g: &Multigraph,
    [a, b, c]: [Vertex; 3],
    centre: Option<Part>,
    total: u64,
    ws: &mut Workspace,
) -> Result<u64> {
    let anchor = [a, b, c];
    let mut first = std::mem::take(&mut ws.bad_first);
    let mut last = std::mem::take(&mut ws.bad_last);
    let mut centres = std::mem::take(&mut ws.bad_centre);
    let mut union = std::mem::take(&mut ws.union);
    closed_set(g, &anchor, a, &mut first);
    closed_set(g, &anchor, c, &mut last);
    closed_set(g, &anchor, b, &mut centres);
    union.clear();
    union.extend_from_slice(&first);
    union.extend_from_slice(&last);
    union.sort_unstable();
    union.dedup();

    ws.begin(g.n());
    for &u in &union {
        let f = first.binary_search(&u).is_ok();
        let l = last.binary_search(&u).is_ok();
        for w in g.simple_neighbors(u) {
            ws.add(w, f, l);
        }
    }

    let eligible = |v: Vertex| g.loop_count(v) == 0 && centre.is_none_or(|p| g.part(v) == p);
    let pairs = |v: Vertex| {
        let k = i128::from(g.simple_degree(v));
        k * (k - 1).max(0)
    };
    let mut count = i128::from(total);
    for &v in &centres {
        if eligible(v) {
            count -= pairs(v);
        }
    }
    for &v in &ws.touched {
        if eligible(v) && centres.binary_search(&v).is_err() {
            let k = i128::from(g.simple_degree(v));
            let [x, y, z] = ws.tally[v as usize].map(i128::from);
            count += xy_correction(k, x, y, z);
        }
    }

    ws.bad_first = first;
    ws.bad_last = last;
    ws.bad_centre = centres;
    ws.union = union;
    u64::try_from(count).map_err(|_| Error::InternalInvariantViolation("negative b_d_1".into()))
}

#[inline]
fn xy_correction(k: i128, x: i128, y: i128, z: i128) -> i128 {
    -(x + y) * (k - 1) + x * y - z
}

/// Which backward counts a switching kind uses, as `(level 0, level 1)`.
pub(crate) fn backward_counts(
    g: &Multigraph,
    kind: SwitchingKind,
    path: &[Vertex],
    ws: &mut Workspace,
) -> Result<(u64, u64)> {
    match kind {
        SwitchingKind::Loop => Ok((b_l_0(g), b_l_1(g, path)?)),
        SwitchingKind::Double => Ok((b_d_0(g), b_d_1(g, path, ws)?)),
        SwitchingKind::BipartiteDouble => Ok((b_bipartite_0(g), b_bipartite_1(g, path, ws)?)),
    }
}
