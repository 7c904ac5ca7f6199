//! Exhaustive enumeration of labeled simple graphs and bipartite graphs
//! realizing a degree sequence.

use rustc_hash::FxHashMap;

use crate::degree::{BipartiteDegreeSequence, DegreeSequence};
use crate::error::{Error, Result};
use crate::multigraph::Vertex;

/// Vertex limit for the backtracking enumerator.
pub const ENUMERATION_LIMIT: usize = 14;
/// Vertex limit for the subset-scanning enumerator.
pub const BRUTE_FORCE_LIMIT: usize = 6;

pub type EdgeKey = Vec<(Vertex, Vertex)>;

/// Every labeled realization of a degree sequence, each keyed by its sorted
/// edge list.
#[derive(Clone, Debug, Default)]
pub struct GraphUniverse {
    graphs: Vec<EdgeKey>,
    index: FxHashMap<EdgeKey, usize>,
}

impl GraphUniverse {
    fn from_graphs(mut graphs: Vec<EdgeKey>) -> Self {
        for g in &mut graphs {
            g.sort_unstable();
        }
        graphs.sort_unstable();
        graphs.dedup();
        let index = graphs
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        GraphUniverse { graphs, index }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[EdgeKey] {
        &self.graphs
    }

    /// Position of the graph with these (sorted, `u < w`) edges.
    pub fn index_of(&self, edges: &[(Vertex, Vertex)]) -> Option<usize> {
        self.index.get(edges).copied()
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLargeForOracle { n, limit });
    }
    Ok(())
}

/// All labeled simple graphs with degrees `ds`, by backtracking: vertex
/// `u` picks its remaining neighbors among higher-numbered vertices.
pub fn enumerate_graphs(ds: &DegreeSequence) -> Result<GraphUniverse> {
    let n = ds.n();
    guard(n, ENUMERATION_LIMIT)?;
    let mut rem: Vec<u32> = ds.degrees().to_vec();
    let mut out = Vec::new();
    if ds.total().is_multiple_of(2) {
        let mut edges = Vec::new();
        backtrack(0, &mut rem, &mut edges, &mut out);
    }
    Ok(GraphUniverse::from_graphs(out))
}

fn backtrack(u: usize, rem: &mut [u32], edges: &mut EdgeKey, out: &mut Vec<EdgeKey>) {
    let n = rem.len();
    if u == n {
        out.push(edges.clone());
        return;
    }
    let need = rem[u] as usize;
    let later: Vec<usize> = (u + 1..n).filter(|&w| rem[w] > 0).collect();
    if later.len() < need {
        return;
    }
    let mut chosen = Vec::with_capacity(need);
    choose(u, need, &later, 0, &mut chosen, rem, edges, out);
}

#[allow(clippy::too_many_arguments)]
fn choose(
    u: usize,
    need: usize,
    cands: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    rem: &mut [u32],
    edges: &mut EdgeKey,
    out: &mut Vec<EdgeKey>,
) {
    if chosen.len() == need {
        let saved = rem[u];
        rem[u] = 0;
        for &w in chosen.iter() {
            rem[w] -= 1;
            edges.push((u as Vertex, w as Vertex));
        }
        backtrack(u + 1, rem, edges, out);
        for &w in chosen.iter() {
            rem[w] += 1;
            edges.pop();
        }
        rem[u] = saved;
        return;
    }
    for i in start..cands.len() {
        if cands.len() - i < need - chosen.len() {
            break;
        }
        chosen.push(cands[i]);
        choose(u, need, cands, i + 1, chosen, rem, edges, out);
        chosen.pop();
    }
}

/// The same universe found by scanning every subset of vertex pairs.
pub fn enumerate_graphs_brute_force(ds: &DegreeSequence) -> Result<GraphUniverse> {
    let n = ds.n();
    guard(n, BRUTE_FORCE_LIMIT)?;
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex)
        .flat_map(|u| (u + 1..n as Vertex).map(move |w| (u, w)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut deg = vec![0u32; n];
        let mut edges = Vec::new();
        for (i, &(u, w)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u as usize] += 1;
                deg[w as usize] += 1;
                edges.push((u, w));
            }
        }
        if deg == ds.degrees() {
            out.push(edges);
        }
    }
    Ok(GraphUniverse::from_graphs(out))
}

/// All simple bipartite graphs with part degrees `bds`; `Y` vertices are
/// numbered after `X`.
pub fn enumerate_bipartite(bds: &BipartiteDegreeSequence) -> Result<GraphUniverse> {
    let (m, n) = (bds.x_len(), bds.y_len());
    guard(m + n, ENUMERATION_LIMIT)?;
    let mut rem: Vec<u32> = bds.y_degrees().to_vec();
    let mut out = Vec::new();
    if bds.is_balanced() {
        let mut edges = Vec::new();
        bipartite_backtrack(0, bds.x_degrees(), m, &mut rem, &mut edges, &mut out);
    }
    Ok(GraphUniverse::from_graphs(out))
}

fn bipartite_backtrack(
    x: usize,
    xdeg: &[u32],
    m: usize,
    rem: &mut [u32],
    edges: &mut EdgeKey,
    out: &mut Vec<EdgeKey>,
) {
    if x == xdeg.len() {
        if rem.iter().all(|&r| r == 0) {
            out.push(edges.clone());
        }
        return;
    }
    let n = rem.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != xdeg[x] {
            continue;
        }
        if (0..n).any(|j| mask >> j & 1 == 1 && rem[j] == 0) {
            continue;
        }
        for j in (0..n).filter(|&j| mask >> j & 1 == 1) {
            rem[j] -= 1;
            edges.push((x as Vertex, (m + j) as Vertex));
        }
        bipartite_backtrack(x + 1, xdeg, m, rem, edges, out);
        for j in (0..n).rev().filter(|&j| mask >> j & 1 == 1) {
            rem[j] += 1;
            edges.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(d: &[i64]) -> DegreeSequence {
        DegreeSequence::new(d).unwrap()
    }

    #[test]
    fn small_universes() {
        assert_eq!(enumerate_graphs(&ds(&[1, 1])).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(&ds(&[2, 2, 2, 2])).unwrap().len(), 3);
        assert_eq!(enumerate_graphs(&ds(&[3, 1])).unwrap().len(), 0);
        assert_eq!(enumerate_graphs(&ds(&[3, 3, 3, 3])).unwrap().len(), 1);
    }

    #[test]
    fn cubic_on_six() {
        // 10 labeled copies of K3,3 and 60 of the triangular prism.
        let u = enumerate_graphs(&DegreeSequence::regular(6, 3)).unwrap();
        assert_eq!(u.len(), 70);
    }

    #[test]
    fn strategies_agree() {
        for d in [
            vec![2, 2, 2, 2],
            vec![3, 3, 3, 3, 3, 3],
            vec![3, 2, 2, 2, 1, 0],
            vec![4, 3, 3, 2, 2, 2],
            vec![1, 1, 1, 1, 1, 1],
        ] {
            let s = ds(&d);
            assert_eq!(
                enumerate_graphs(&s).unwrap().graphs(),
                enumerate_graphs_brute_force(&s).unwrap().graphs(),
                "{d:?}"
            );
        }
    }

    #[test]
    fn bipartite_universes() {
        let b = BipartiteDegreeSequence::new(&[2, 1, 1], &[2, 1, 1]).unwrap();
        let u = enumerate_bipartite(&b).unwrap();
        assert_eq!(u.len(), 5);
        let k22 = BipartiteDegreeSequence::new(&[2, 2], &[2, 2]).unwrap();
        assert_eq!(
            enumerate_bipartite(&k22).unwrap().graphs(),
            &[vec![(0, 2), (0, 3), (1, 2), (1, 3)]]
        );
    }

    #[test]
    fn too_large() {
        let big = DegreeSequence::regular(15, 2);
        assert!(matches!(
            enumerate_graphs(&big),
            Err(Error::TooLargeForOracle { n: 15, limit: 14 })
        ));
    }
}
