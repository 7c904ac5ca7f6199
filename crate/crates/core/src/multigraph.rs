//! The mutable working multigraph.
//!
//! A [`Multigraph`] keeps two synchronized views of the same object:
//!
//! * the configuration-model *points*: vertex `v` owns a contiguous block of
//!   `d_v` points and every point is matched to a partner point. A uniform
//!   point therefore yields a uniform ordered edge slot in `O(1)`, and the
//!   points double as per-vertex neighbor containers;
//! * a hashed pair → multiplicity map answering adjacency queries in
//!   expected `O(1)`, with per-vertex loop counts kept separately.
//!
//! On top of those it maintains `m₁`, `m₂`, the set of loop vertices and
//! double edges (for uniform selection), the number of simple-edge endpoints
//! at each vertex, and `P₂`: the number of simple ordered 2-paths whose
//! middle vertex carries no loop. All of it is updated in `O(1)` per
//! adjacency change.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::pairing::Pairing;

pub type Vertex = u32;

const ABSENT: u32 = u32::MAX;

#[inline]
pub(crate) fn pair_key(u: Vertex, w: Vertex) -> u64 {
    let (a, b) = if u < w { (u, w) } else { (w, u) };
    (u64::from(a) << 32) | u64::from(b)
}

#[inline]
pub(crate) fn unpack_key(key: u64) -> (Vertex, Vertex) {
    ((key >> 32) as Vertex, key as Vertex)
}

/// Loop and double-edge counts of a multigraph, plus whether anything worse
/// (an edge of multiplicity three or more, or a multiple loop) is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub loops: u64,
    pub doubles: u64,
    pub has_bad_multiplicity: bool,
}

/// Which side of a bipartition a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    X,
    Y,
}

#[derive(Clone, Debug)]
pub struct Multigraph {
    offsets: Vec<u32>,
    owner: Vec<Vertex>,
    partner: Vec<u32>,
    mult: FxHashMap<u64, u32>,
    loops: Vec<u32>,
    simple_deg: Vec<u32>,
    simple_endpoints: u64,
    loop_vertices: Vec<Vertex>,
    loop_pos: Vec<u32>,
    doubles: Vec<u64>,
    double_pos: FxHashMap<u64, u32>,
    bad: u64,
    p2: u64,
    p2_y: u64,
    /// First vertex of part `Y` when the graph is bipartite.
    y_start: Option<Vertex>,
}

impl Multigraph {
    /// Projects a pairing: bins become vertices and pairs become edges.
    pub fn from_pairing(pairing: Pairing) -> Self {
        let (offsets, partner, y_start) = pairing.into_parts();
        let n = offsets.len() - 1;
        let mut owner = vec![0 as Vertex; partner.len()];
        for v in 0..n {
            for p in offsets[v]..offsets[v + 1] {
                owner[p as usize] = v as Vertex;
            }
        }
        let mut g = Multigraph {
            offsets,
            owner,
            partner,
            mult: FxHashMap::default(),
            loops: vec![0; n],
            simple_deg: vec![0; n],
            simple_endpoints: 0,
            loop_vertices: Vec::new(),
            loop_pos: vec![ABSENT; n],
            doubles: Vec::new(),
            double_pos: FxHashMap::default(),
            bad: 0,
            p2: 0,
            p2_y: 0,
            y_start,
        };
        g.mult.reserve(g.partner.len() / 2);
        for p in 0..g.partner.len() as u32 {
            let q = g.partner[p as usize];
            if p < q {
                let (u, w) = (g.owner[p as usize], g.owner[q as usize]);
                g.adjust_pair(u, w, 1);
            }
        }
        g
    }

    /// Builds a multigraph from an explicit edge list; loops are `(v, v)`
    /// and repeated entries give multiplicities. Degrees follow from the list.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        Self::from_edges_with_split(n, edges, None)
    }

    /// As [`Multigraph::from_edges`], marking vertices `y_start..n` as part `Y`.
    pub fn from_bipartite_edges(n: usize, y_start: Vertex, edges: &[(Vertex, Vertex)]) -> Self {
        Self::from_edges_with_split(n, edges, Some(y_start))
    }

    fn from_edges_with_split(
        n: usize,
        edges: &[(Vertex, Vertex)],
        y_start: Option<Vertex>,
    ) -> Self {
        let mut degree = vec![0u32; n];
        for &(u, w) in edges {
            degree[u as usize] += 1;
            degree[w as usize] += 1;
        }
        let mut offsets = vec![0u32; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut next = offsets.clone();
        let mut partner = vec![0u32; offsets[n] as usize];
        for &(u, w) in edges {
            let p = next[u as usize];
            next[u as usize] += 1;
            let q = next[w as usize];
            next[w as usize] += 1;
            partner[p as usize] = q;
            partner[q as usize] = p;
        }
        Self::from_pairing(Pairing::from_parts(offsets, partner, y_start))
    }

    pub fn n(&self) -> usize {
        self.loops.len()
    }

    /// `M`, the number of points (twice the number of edges, loops included).
    pub fn point_count(&self) -> u64 {
        self.partner.len() as u64
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n() as Vertex).map(|v| self.degree(v)).collect()
    }

    /// Number of edges between `u` and `w`; for `u == w` the loop count.
    #[inline]
    pub fn multiplicity(&self, u: Vertex, w: Vertex) -> u32 {
        if u == w {
            self.loops[u as usize]
        } else {
            self.mult.get(&pair_key(u, w)).copied().unwrap_or(0)
        }
    }

    #[inline]
    pub fn is_adjacent(&self, u: Vertex, w: Vertex) -> bool {
        self.multiplicity(u, w) > 0
    }

    /// True iff `uw` is a single (multiplicity one, non-loop) edge.
    #[inline]
    pub fn is_single_edge(&self, u: Vertex, w: Vertex) -> bool {
        u != w && self.multiplicity(u, w) == 1
    }

    #[inline]
    pub fn loop_count(&self, v: Vertex) -> u32 {
        self.loops[v as usize]
    }

    /// Number of single edges at `v`.
    #[inline]
    pub fn simple_degree(&self, v: Vertex) -> u32 {
        self.simple_deg[v as usize]
    }

    /// `Σ_v simple_degree(v)`: the number of simple ordered edges.
    pub fn simple_endpoints(&self) -> u64 {
        self.simple_endpoints
    }

    /// Neighbors of `v` read off its points, repeated by multiplicity; a loop
    /// shows `v` twice.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.points(v)
            .map(move |p| self.owner[self.partner[p as usize] as usize])
    }

    /// Distinct neighbors `w != v` joined to `v` by a single edge.
    pub fn simple_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.neighbors(v)
            .filter(move |&w| self.is_single_edge(v, w))
    }

    pub(crate) fn points(&self, v: Vertex) -> std::ops::Range<u32> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    /// First point of `v`; `first_point(n)` is the total point count.
    #[inline]
    pub(crate) fn first_point(&self, v: Vertex) -> u32 {
        self.offsets[v as usize]
    }

    #[inline]
    pub(crate) fn owner(&self, point: u32) -> Vertex {
        self.owner[point as usize]
    }

    #[inline]
    pub(crate) fn partner(&self, point: u32) -> u32 {
        self.partner[point as usize]
    }

    /// The ordered edge slot belonging to `point`: `(owner, owner of partner)`.
    #[inline]
    pub fn ordered_edge_at(&self, point: u32) -> (Vertex, Vertex) {
        (
            self.owner[point as usize],
            self.owner[self.partner[point as usize] as usize],
        )
    }

    pub fn loop_total(&self) -> u64 {
        self.loop_vertices.len() as u64
    }

    pub fn double_total(&self) -> u64 {
        self.doubles.len() as u64
    }

    /// The `i`-th vertex carrying exactly one loop (arbitrary but fixed order).
    pub fn loop_vertex(&self, i: usize) -> Vertex {
        self.loop_vertices[i]
    }

    /// The `i`-th double edge as `(u, w)` with `u < w`.
    pub fn double_edge(&self, i: usize) -> (Vertex, Vertex) {
        unpack_key(self.doubles[i])
    }

    pub fn profile(&self) -> MultiplicityProfile {
        MultiplicityProfile {
            loops: self.loop_total(),
            doubles: self.double_total(),
            has_bad_multiplicity: self.bad > 0,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.loop_vertices.is_empty() && self.doubles.is_empty() && self.bad == 0
    }

    /// Cached `P₂`.
    pub fn p2(&self) -> u64 {
        self.p2
    }

    /// Cached count of simple ordered 2-paths centered in part `Y`.
    pub fn p2_in_y(&self) -> u64 {
        self.p2_y
    }

    pub fn y_start(&self) -> Option<Vertex> {
        self.y_start
    }

    pub fn part(&self, v: Vertex) -> Part {
        match self.y_start {
            Some(split) if v >= split => Part::Y,
            _ => Part::X,
        }
    }

    /// Every vertex pair with its multiplicity, loops as `(v, v, count)`,
    /// sorted.
    pub fn edge_multiplicities(&self) -> Vec<(Vertex, Vertex, u32)> {
        let mut out: Vec<_> = self
            .mult
            .iter()
            .map(|(&k, &m)| {
                let (u, w) = unpack_key(k);
                (u, w, m)
            })
            .chain(
                self.loops
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(v, &c)| (v as Vertex, v as Vertex, c)),
            )
            .collect();
        out.sort_unstable();
        out
    }

    /// Sorted edge list with each pair listed once per unit of multiplicity.
    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.partner.len() / 2);
        for (u, w, m) in self.edge_multiplicities() {
            out.extend(std::iter::repeat_n((u, w), m as usize));
        }
        out
    }

    #[inline]
    fn contribution(&self, v: Vertex) -> u64 {
        if self.loops[v as usize] > 0 {
            0
        } else {
            let k = u64::from(self.simple_deg[v as usize]);
            k * k.saturating_sub(1)
        }
    }

    #[inline]
    fn add_contribution(&mut self, v: Vertex, value: u64, sign: bool) {
        let in_y = self.part(v) == Part::Y;
        if sign {
            self.p2 += value;
            if in_y {
                self.p2_y += value;
            }
        } else {
            self.p2 -= value;
            if in_y {
                self.p2_y -= value;
            }
        }
    }

    fn set_loop_membership(&mut self, v: Vertex, present: bool) {
        let pos = self.loop_pos[v as usize];
        if present && pos == ABSENT {
            self.loop_pos[v as usize] = self.loop_vertices.len() as u32;
            self.loop_vertices.push(v);
        } else if !present && pos != ABSENT {
            let last = *self.loop_vertices.last().expect("non-empty loop list");
            self.loop_vertices.swap_remove(pos as usize);
            if last != v {
                self.loop_pos[last as usize] = pos;
            }
            self.loop_pos[v as usize] = ABSENT;
        }
    }

    fn set_double_membership(&mut self, key: u64, present: bool) {
        if present {
            let idx = self.doubles.len() as u32;
            self.doubles.push(key);
            self.double_pos.insert(key, idx);
        } else if let Some(pos) = self.double_pos.remove(&key) {
            let last = *self.doubles.last().expect("non-empty double list");
            self.doubles.swap_remove(pos as usize);
            if last != key {
                self.double_pos.insert(last, pos);
            }
        }
    }

    /// Changes the multiplicity of `uw` (a loop when `u == w`) by `delta`
    /// and updates every derived counter, `P₂` included, in `O(1)`.
    /// Returns the new `P₂`. Points are not touched; callers keep them in
    /// step.
    pub(crate) fn adjust_pair(&mut self, u: Vertex, w: Vertex, delta: i32) -> u64 {
        if u == w {
            let before = self.contribution(u);
            let old = self.loops[u as usize];
            let new = old.checked_add_signed(delta).expect("loop count underflow");
            self.loops[u as usize] = new;
            if old >= 2 {
                self.bad -= 1;
            }
            if new >= 2 {
                self.bad += 1;
            }
            self.set_loop_membership(u, new == 1);
            let after = self.contribution(u);
            self.add_contribution(u, before, false);
            self.add_contribution(u, after, true);
            return self.p2;
        }

        let key = pair_key(u, w);
        let old = self.mult.get(&key).copied().unwrap_or(0);
        let new = old
            .checked_add_signed(delta)
            .expect("multiplicity underflow");
        if old == new {
            return self.p2;
        }
        let (before_u, before_w) = (self.contribution(u), self.contribution(w));

        if old == 1 {
            self.simple_deg[u as usize] -= 1;
            self.simple_deg[w as usize] -= 1;
            self.simple_endpoints -= 2;
        }
        if new == 1 {
            self.simple_deg[u as usize] += 1;
            self.simple_deg[w as usize] += 1;
            self.simple_endpoints += 2;
        }
        if old == 2 {
            self.set_double_membership(key, false);
        }
        if new == 2 {
            self.set_double_membership(key, true);
        }
        if old >= 3 {
            self.bad -= 1;
        }
        if new >= 3 {
            self.bad += 1;
        }
        if new == 0 {
            self.mult.remove(&key);
        } else {
            self.mult.insert(key, new);
        }

        let (after_u, after_w) = (self.contribution(u), self.contribution(w));
        self.add_contribution(u, before_u, false);
        self.add_contribution(u, after_u, true);
        self.add_contribution(w, before_w, false);
        self.add_contribution(w, after_w, true);
        self.p2
    }

    #[inline]
    pub(crate) fn rematch(&mut self, p: u32, q: u32) {
        self.partner[p as usize] = q;
        self.partner[q as usize] = p;
    }

    /// Finds a point of `u` matched to a point of `w`, skipping `skip`.
    pub(crate) fn point_between(&self, u: Vertex, w: Vertex, skip: Option<u32>) -> Option<u32> {
        self.points(u)
            .find(|&p| Some(p) != skip && self.owner(self.partner(p)) == w)
    }

    /// Checks the points, the multiplicity map and every cached counter
    /// against each other. Returns a description of the first mismatch.
    pub fn check_consistency(&self) -> Result<(), String> {
        let n = self.n();
        let mut mult: FxHashMap<u64, u32> = FxHashMap::default();
        let mut loops = vec![0u32; n];
        for p in 0..self.partner.len() as u32 {
            let q = self.partner(p);
            if self.partner(q) != p || q == p {
                return Err(format!("point {p} is not in a proper pair"));
            }
            if p < q {
                let (u, w) = (self.owner(p), self.owner(q));
                if u == w {
                    loops[u as usize] += 1;
                } else {
                    *mult.entry(pair_key(u, w)).or_insert(0) += 1;
                }
            }
        }
        if mult != self.mult {
            return Err("multiplicity map disagrees with points".into());
        }
        if loops != self.loops {
            return Err("loop counts disagree with points".into());
        }
        let mut simple = vec![0u32; n];
        let mut bad = 0;
        let mut doubles = 0;
        for (&k, &m) in &self.mult {
            let (u, w) = unpack_key(k);
            if m == 1 {
                simple[u as usize] += 1;
                simple[w as usize] += 1;
            }
            doubles += u64::from(m == 2);
            bad += u64::from(m >= 3);
        }
        bad += loops.iter().filter(|&&c| c >= 2).count() as u64;
        if simple != self.simple_deg {
            return Err("simple degrees stale".into());
        }
        if self.simple_endpoints != simple.iter().map(|&k| u64::from(k)).sum::<u64>() {
            return Err("simple endpoint total stale".into());
        }
        if bad != self.bad || doubles != self.double_total() {
            return Err("multiplicity counters stale".into());
        }
        let single_loops = loops.iter().filter(|&&c| c == 1).count() as u64;
        if single_loops != self.loop_total() {
            return Err("loop counter stale".into());
        }
        for (i, &v) in self.loop_vertices.iter().enumerate() {
            if self.loop_pos[v as usize] != i as u32 || loops[v as usize] != 1 {
                return Err("loop index stale".into());
            }
        }
        for (i, &k) in self.doubles.iter().enumerate() {
            if self.double_pos.get(&k) != Some(&(i as u32)) || self.mult.get(&k) != Some(&2) {
                return Err("double-edge index stale".into());
            }
        }
        let (p2, p2_y) = self.recompute_p2();
        if p2 != self.p2 || p2_y != self.p2_y {
            return Err(format!(
                "cached P2 {}/{} but recomputed {}/{}",
                self.p2, self.p2_y, p2, p2_y
            ));
        }
        Ok(())
    }

    /// `P₂` and its `Y`-centered part recomputed from the multiplicity map
    /// alone, ignoring every cached counter.
    fn recompute_p2(&self) -> (u64, u64) {
        let mut simple = vec![0u64; self.n()];
        for (&k, &m) in &self.mult {
            if m == 1 {
                let (u, w) = unpack_key(k);
                simple[u as usize] += 1;
                simple[w as usize] += 1;
            }
        }
        let mut total = 0;
        let mut in_y = 0;
        for (v, &k) in simple.iter().enumerate() {
            if self.loops[v] == 0 {
                let c = k * k.saturating_sub(1);
                total += c;
                if self.part(v as Vertex) == Part::Y {
                    in_y += c;
                }
            }
        }
        (total, in_y)
    }
}

/// Number of simple ordered 2-paths `uvw` with no loop on `v`, counted from
/// scratch: every loopless `v` with `k` single edges contributes `k(k − 1)`.
pub fn compute_p2(g: &Multigraph) -> u64 {
    g.recompute_p2().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn p2_of_small_graphs() {
        assert_eq!(compute_p2(&triangle()), 6);
        assert_eq!(triangle().p2(), 6);
        let path = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(path.p2(), 2);
        let looped = Multigraph::from_edges(1, &[(0, 0)]);
        assert_eq!(looped.p2(), 0);
        assert_eq!(looped.loop_total(), 1);
        let cycle5 = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(cycle5.p2(), 10);
    }

    #[test]
    fn loop_silences_center() {
        // v=1 has two single edges and a loop: contributes nothing.
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (1, 1)]);
        assert_eq!(g.p2(), 0);
        assert_eq!(compute_p2(&g), 0);
    }

    #[test]
    fn update_tracks_removal_from_double_edge() {
        // a-b=c: b-c doubled.
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (1, 2)]);
        assert_eq!(g.p2(), 0);
        assert_eq!(g.double_total(), 1);
        let p2 = g.adjust_pair(1, 2, -1);
        assert_eq!(p2, compute_p2(&g));
        assert_eq!(p2, 2);
        assert_eq!(g.double_total(), 0);
    }

    #[test]
    fn isolated_edge_adds_no_path() {
        let mut g = Multigraph::from_edges(4, &[]);
        assert_eq!(g.adjust_pair(0, 1, 1), 0);
        assert_eq!(compute_p2(&g), 0);
    }

    #[test]
    fn profile_counts() {
        let double = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        assert_eq!(
            double.profile(),
            MultiplicityProfile {
                loops: 0,
                doubles: 1,
                has_bad_multiplicity: false
            }
        );
        let looped = Multigraph::from_edges(3, &[(0, 0), (1, 2)]);
        assert_eq!(looped.profile().loops, 1);
        let triple = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        assert!(triple.profile().has_bad_multiplicity);
        let double_loop = Multigraph::from_edges(1, &[(0, 0), (0, 0)]);
        assert!(double_loop.profile().has_bad_multiplicity);
        assert_eq!(double_loop.profile().loops, 0);
    }

    #[test]
    fn neighbor_views() {
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 1), (0, 2), (0, 0)]);
        let mut all: Vec<_> = g.neighbors(0).collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 0, 1, 1, 2]);
        let simple: Vec<_> = g.simple_neighbors(0).collect();
        assert_eq!(simple, vec![2]);
        assert_eq!(g.degree(0), 5);
        assert!(g.check_consistency().is_ok());
    }

    #[test]
    fn bipartite_p2_split() {
        // X = {0, 1}, Y = {2, 3}: a 4-cycle.
        let g = Multigraph::from_bipartite_edges(4, 2, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(g.p2(), 8);
        assert_eq!(g.p2_in_y(), 4);
        assert!(g.check_consistency().is_ok());
    }
}
