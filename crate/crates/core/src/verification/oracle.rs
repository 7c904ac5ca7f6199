//! Brute-force oracles over a dense multiplicity matrix.
//!
//! Nothing here reads the cached counters of [`Multigraph`]; every count is
//! re-derived from the definitions by scanning vertex tuples.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, MultiplicityProfile, Part, Vertex};
use crate::pairing::Phi0Thresholds;
use crate::switching::{LowerBounds, SwitchingKind};

/// Point limit for exhaustive pairing enumeration (`15!! ≈ 2·10⁶`).
pub const PAIRING_POINT_LIMIT: usize = 16;

/// Symmetric multiplicity matrix; the diagonal holds loop counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMultigraph {
    n: usize,
    mult: Vec<u32>,
    y_start: Option<Vertex>,
}

impl DenseMultigraph {
    pub fn new(n: usize, y_start: Option<Vertex>) -> Self {
        DenseMultigraph {
            n,
            mult: vec![0; n * n],
            y_start,
        }
    }

    pub fn from_multigraph(g: &Multigraph) -> Self {
        let mut d = Self::new(g.n(), g.y_start());
        for (u, w, m) in g.edge_multiplicities() {
            for _ in 0..m {
                d.add_edge(u, w);
            }
        }
        d
    }

    pub fn add_edge(&mut self, u: Vertex, w: Vertex) {
        let (u, w) = (u as usize, w as usize);
        self.mult[u * self.n + w] += 1;
        if u != w {
            self.mult[w * self.n + u] += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mult(&self, u: Vertex, w: Vertex) -> u32 {
        self.mult[u as usize * self.n + w as usize]
    }

    #[inline]
    fn single(&self, u: Vertex, w: Vertex) -> bool {
        u != w && self.mult(u, w) == 1
    }

    #[inline]
    fn absent(&self, u: Vertex, w: Vertex) -> bool {
        self.mult(u, w) == 0
    }

    fn loopless(&self, v: Vertex) -> bool {
        self.mult(v, v) == 0
    }

    pub fn part(&self, v: Vertex) -> Part {
        match self.y_start {
            Some(s) if v >= s => Part::Y,
            _ => Part::X,
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n as Vertex)
            .map(|v| {
                (0..self.n as Vertex)
                    .map(|w| {
                        if v == w {
                            2 * self.mult(v, v)
                        } else {
                            self.mult(v, w)
                        }
                    })
                    .sum()
            })
            .collect()
    }

    pub fn profile(&self) -> MultiplicityProfile {
        let mut p = MultiplicityProfile {
            loops: 0,
            doubles: 0,
            has_bad_multiplicity: false,
        };
        for u in 0..self.n as Vertex {
            match self.mult(u, u) {
                0 => {}
                1 => p.loops += 1,
                _ => p.has_bad_multiplicity = true,
            }
            for w in u + 1..self.n as Vertex {
                match self.mult(u, w) {
                    2 => p.doubles += 1,
                    m if m >= 3 => p.has_bad_multiplicity = true,
                    _ => {}
                }
            }
        }
        p
    }

    fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n as Vertex
    }
}

fn all_distinct(vs: &[Vertex]) -> bool {
    vs.iter().enumerate().all(|(i, v)| !vs[..i].contains(v))
}

/// Number of valid switchings of `kind` that can be performed on `g`.
pub fn oracle_count_switchings(g: &DenseMultigraph, kind: SwitchingKind) -> u64 {
    let mut count = 0;
    match kind {
        SwitchingKind::Loop => {
            for v2 in g.vertices().filter(|&v| g.mult(v, v) == 1) {
                for v1 in g.vertices() {
                    if !g.absent(v1, v2) || v1 == v2 {
                        continue;
                    }
                    for v4 in g.vertices() {
                        if !g.single(v1, v4) {
                            continue;
                        }
                        for v3 in g.vertices() {
                            if !g.absent(v2, v3) || v3 == v2 {
                                continue;
                            }
                            for v5 in g.vertices() {
                                if g.single(v3, v5)
                                    && g.absent(v4, v5)
                                    && all_distinct(&[v1, v2, v3, v4, v5])
                                {
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        SwitchingKind::Double | SwitchingKind::BipartiteDouble => {
            let bip = kind == SwitchingKind::BipartiteDouble;
            for v2 in g.vertices() {
                if bip && g.part(v2) != Part::X {
                    continue;
                }
                for v5 in g.vertices().filter(|&v5| v5 != v2 && g.mult(v2, v5) == 2) {
                    for v1 in g.vertices() {
                        if v1 == v2 || !g.absent(v1, v2) {
                            continue;
                        }
                        for v4 in g.vertices() {
                            if !g.single(v1, v4) || !g.absent(v4, v5) || v4 == v5 {
                                continue;
                            }
                            for v3 in g.vertices() {
                                if v3 == v2 || !g.absent(v2, v3) {
                                    continue;
                                }
                                for v6 in g.vertices() {
                                    let vs = [v1, v2, v3, v4, v5, v6];
                                    let parts_ok =
                                        !bip || (g.part(v1) == Part::Y && g.part(v3) == Part::Y);
                                    if parts_ok
                                        && g.single(v3, v6)
                                        && v6 != v5
                                        && g.absent(v5, v6)
                                        && all_distinct(&vs)
                                    {
                                        count += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    count
}

/// Size of the candidate space sampled for `kind` on `g`, given the number
/// of points `M` used for edge slots.
pub fn candidate_space(g: &DenseMultigraph, kind: SwitchingKind, points: u64) -> u128 {
    let p = g.profile();
    let m_sq = u128::from(points) * u128::from(points);
    match kind {
        SwitchingKind::Loop => u128::from(p.loops) * m_sq,
        SwitchingKind::Double => 2 * u128::from(p.doubles) * m_sq,
        SwitchingKind::BipartiteDouble => u128::from(p.doubles) * m_sq,
    }
}

/// Level-0 backward count: simple ordered 2-paths `uvw` with no loop on `v`;
/// for bipartite switchings only those centered in `Y`.
pub fn oracle_b0(g: &DenseMultigraph, kind: SwitchingKind) -> u64 {
    let centre = (kind == SwitchingKind::BipartiteDouble).then_some(Part::Y);
    two_paths(g, centre).count() as u64
}

fn two_paths(g: &DenseMultigraph, centre: Option<Part>) -> impl Iterator<Item = [Vertex; 3]> + '_ {
    g.vertices().flat_map(move |u| {
        g.vertices().flat_map(move |v| {
            g.vertices().filter_map(move |w| {
                let ok = u != w
                    && g.single(u, v)
                    && g.single(v, w)
                    && g.loopless(v)
                    && centre.is_none_or(|p| g.part(v) == p);
                ok.then_some([u, v, w])
            })
        })
    })
}

/// Level-1 backward count for the 2-path `path`.
///
/// * `Loop`: simple ordered edges `u′w′` vertex-disjoint from the path with
///   `v₁u′` and `v₃w′` non-edges.
/// * `Double`: simple ordered 2-paths `u′v′w′`, loopless centre, disjoint
///   from the path, with `v₁u′`, `v₂v′`, `v₃w′` non-edges.
/// * `BipartiteDouble`: as `Double` with `path` centered in `Y` and the
///   counted 2-paths centered in `X`.
pub fn oracle_b1(g: &DenseMultigraph, kind: SwitchingKind, path: [Vertex; 3]) -> u64 {
    let [a, b, c] = path;
    let mut count = 0;
    match kind {
        SwitchingKind::Loop => {
            for u in g.vertices() {
                for w in g.vertices() {
                    if g.single(u, w)
                        && !path.contains(&u)
                        && !path.contains(&w)
                        && g.absent(a, u)
                        && g.absent(c, w)
                    {
                        count += 1;
                    }
                }
            }
        }
        SwitchingKind::Double | SwitchingKind::BipartiteDouble => {
            let centre = (kind == SwitchingKind::BipartiteDouble).then_some(Part::X);
            for [u, v, w] in two_paths(g, centre) {
                if [u, v, w].iter().all(|x| !path.contains(x))
                    && g.absent(a, u)
                    && g.absent(b, v)
                    && g.absent(c, w)
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Every 2-path that can serve as the level-1 anchor for `kind` on `g`.
pub fn level_one_anchors(g: &DenseMultigraph, kind: SwitchingKind) -> Vec<[Vertex; 3]> {
    let centre = (kind == SwitchingKind::BipartiteDouble).then_some(Part::Y);
    two_paths(g, centre).collect()
}

/// Calls `visit` with the partner array of every perfect matching of
/// `points` points.
pub fn for_each_matching(points: usize, mut visit: impl FnMut(&[u32])) -> Result<()> {
    if points > PAIRING_POINT_LIMIT {
        return Err(Error::TooLargeForOracle {
            n: points,
            limit: PAIRING_POINT_LIMIT,
        });
    }
    if points % 2 == 1 {
        return Ok(());
    }
    let mut partner = vec![u32::MAX; points];
    fn rec(partner: &mut [u32], visit: &mut dyn FnMut(&[u32])) {
        let Some(p) = partner.iter().position(|&q| q == u32::MAX) else {
            visit(partner);
            return;
        };
        for q in p + 1..partner.len() {
            if partner[q] == u32::MAX {
                partner[p] = q as u32;
                partner[q] = p as u32;
                rec(partner, visit);
                partner[p] = u32::MAX;
                partner[q] = u32::MAX;
            }
        }
    }
    rec(&mut partner, &mut visit);
    Ok(())
}

/// Every distinct multigraph arising from a pairing of `degrees`, with the
/// number of pairings projecting to it.
pub fn multigraphs_of(degrees: &[u32]) -> Result<Vec<(DenseMultigraph, u64)>> {
    let owner: Vec<Vertex> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v as Vertex, d as usize))
        .collect();
    let mut seen: FxHashMap<DenseMultigraph, u64> = FxHashMap::default();
    for_each_matching(owner.len(), |partner| {
        let mut g = DenseMultigraph::new(degrees.len(), None);
        for (p, &q) in partner.iter().enumerate() {
            if (p as u32) < q {
                g.add_edge(owner[p], owner[q as usize]);
            }
        }
        *seen.entry(g).or_insert(0) += 1;
    })?;
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.mult.cmp(&b.0.mult));
    Ok(out)
}

/// Lower bounds computed exactly by exhausting every multigraph with the
/// given degrees: for each class `(m₁, m₂)` and switching kind, the
/// minimum level-0 count and the minimum level-1 count over all anchors.
///
/// A class gets no bounds (every switching into it is rejected) when some
/// anchor has no extension, since the level-0 count would then overcount
/// the anchors that actually occur.
#[derive(Clone, Debug, Default)]
pub struct ExhaustiveBounds {
    table: FxHashMap<(SwitchingKind, u64, u64), Option<(u64, u64)>>,
}

impl ExhaustiveBounds {
    pub fn new(degrees: &[u32], thresholds: &Phi0Thresholds) -> Result<Self> {
        let mut table: FxHashMap<(SwitchingKind, u64, u64), Option<(u64, u64)>> =
            FxHashMap::default();
        for (g, _) in multigraphs_of(degrees)? {
            let p = g.profile();
            if p.has_bad_multiplicity
                || !thresholds.loops_ok(p.loops)
                || !thresholds.doubles_ok(p.doubles)
            {
                continue;
            }
            let mut kinds = vec![SwitchingKind::Loop];
            if p.loops == 0 {
                kinds.push(SwitchingKind::Double);
            }
            for kind in kinds {
                let b0 = oracle_b0(&g, kind);
                let b1 = level_one_anchors(&g, kind)
                    .into_iter()
                    .map(|path| oracle_b1(&g, kind, path))
                    .min();
                let here = match b1 {
                    Some(b1) if b0 > 0 && b1 > 0 => Some((b0, b1)),
                    _ => None,
                };
                table
                    .entry((kind, p.loops, p.doubles))
                    .and_modify(|cur| {
                        *cur = match (*cur, here) {
                            (Some((a0, a1)), Some((c0, c1))) => Some((a0.min(c0), a1.min(c1))),
                            _ => None,
                        }
                    })
                    .or_insert(here);
            }
        }
        Ok(ExhaustiveBounds { table })
    }

    pub fn get(&self, kind: SwitchingKind, loops: u64, doubles: u64) -> Option<(u64, u64)> {
        self.table.get(&(kind, loops, doubles)).copied().flatten()
    }
}

impl LowerBounds for ExhaustiveBounds {
    fn lower_bounds(&self, kind: SwitchingKind, loops: u64, doubles: u64) -> Option<(u64, u64)> {
        self.get(kind, loops, doubles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> DenseMultigraph {
        let mut g = DenseMultigraph::new(n as usize, None);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn complete(n: u32) -> DenseMultigraph {
        let mut g = DenseMultigraph::new(n as usize, None);
        for u in 0..n {
            for w in u + 1..n {
                g.add_edge(u, w);
            }
        }
        g
    }

    #[test]
    fn hand_counted_backward_values() {
        assert_eq!(oracle_b1(&cycle(5), SwitchingKind::Loop, [0, 1, 2]), 1);
        assert_eq!(oracle_b1(&cycle(6), SwitchingKind::Double, [0, 1, 2]), 1);
        assert_eq!(oracle_b1(&complete(6), SwitchingKind::Double, [0, 1, 2]), 0);
        assert_eq!(oracle_b1(&complete(5), SwitchingKind::Loop, [0, 1, 2]), 0);
        assert_eq!(oracle_b0(&cycle(5), SwitchingKind::Loop), 10);
        assert_eq!(oracle_b0(&cycle(6), SwitchingKind::Double), 12);
        assert_eq!(oracle_b0(&complete(3), SwitchingKind::Double), 6);
    }

    #[test]
    fn no_loops_no_l_switchings() {
        assert_eq!(oracle_count_switchings(&cycle(7), SwitchingKind::Loop), 0);
    }

    #[test]
    fn matching_counts() {
        let mut c = 0;
        for_each_matching(6, |_| c += 1).unwrap();
        assert_eq!(c, 15);
        let gs = multigraphs_of(&[2, 2]).unwrap();
        // Two loops (1 pairing) or a double edge (2 pairings).
        assert_eq!(gs.len(), 2);
        assert_eq!(gs.iter().map(|g| g.1).sum::<u64>(), 3);
    }

    #[test]
    fn single_l_switching_counted() {
        let mut g = DenseMultigraph::new(5, None);
        g.add_edge(1, 1);
        g.add_edge(0, 3);
        g.add_edge(2, 4);
        // Either edge may play v1v4, and each edge may be read either way.
        assert_eq!(oracle_count_switchings(&g, SwitchingKind::Loop), 8);
    }
}
