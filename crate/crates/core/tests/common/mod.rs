#![allow(dead_code)]

use incgen_core::multigraph::Part;
use incgen_core::verification::DenseMultigraph;
use incgen_core::{DegreeSequence, SwitchingKind, Vertex};
use rand::Rng;

/// A random degree sequence on `n` vertices with entries in `lo..=hi` and
/// an even sum.
pub fn random_sequence<R: Rng>(rng: &mut R, n: usize, lo: u32, hi: u32) -> DegreeSequence {
    let mut d: Vec<u32> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    if d.iter().sum::<u32>() % 2 == 1 {
        let i = rng.random_range(0..n);
        if d[i] > lo {
            d[i] -= 1;
        } else {
            d[i] += 1;
        }
    }
    DegreeSequence::from_degrees(d)
}

/// Ordered pairs `(u, w)` joined by an edge of multiplicity exactly one.
pub fn single_ordered_edges(g: &DenseMultigraph) -> Vec<(Vertex, Vertex)> {
    let n = g.n() as Vertex;
    let mut out = Vec::new();
    for u in 0..n {
        for w in 0..n {
            if u != w && g.mult(u, w) == 1 {
                out.push((u, w));
            }
        }
    }
    out
}

fn distinct(vs: &[Vertex]) -> bool {
    vs.iter().enumerate().all(|(i, v)| !vs[..i].contains(v))
}

/// Counts valid forward switchings by scanning the structured candidate
/// space (a loop or ordered double edge, then two ordered single edges)
/// directly on the dense matrix. Feasible for a few hundred vertices.
pub fn forward_count(g: &DenseMultigraph, kind: SwitchingKind) -> u64 {
    let n = g.n() as Vertex;
    let edges = single_ordered_edges(g);
    let none = |u: Vertex, w: Vertex| g.mult(u, w) == 0;
    let mut count = 0;
    match kind {
        SwitchingKind::Loop => {
            for v2 in (0..n).filter(|&v| g.mult(v, v) == 1) {
                for &(v1, v4) in &edges {
                    if !none(v1, v2) {
                        continue;
                    }
                    for &(v3, v5) in &edges {
                        if none(v2, v3) && none(v4, v5) && distinct(&[v1, v2, v3, v4, v5]) {
                            count += 1;
                        }
                    }
                }
            }
        }
        SwitchingKind::Double | SwitchingKind::BipartiteDouble => {
            let bip = kind == SwitchingKind::BipartiteDouble;
            for v2 in 0..n {
                if bip && g.part(v2) != Part::X {
                    continue;
                }
                for v5 in (0..n).filter(|&w| w != v2 && g.mult(v2, w) == 2) {
                    for &(v1, v4) in &edges {
                        if !none(v1, v2) || !none(v4, v5) || (bip && g.part(v1) != Part::Y) {
                            continue;
                        }
                        for &(v3, v6) in &edges {
                            if (!bip || g.part(v3) == Part::Y)
                                && none(v2, v3)
                                && none(v5, v6)
                                && distinct(&[v1, v2, v3, v4, v5, v6])
                            {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    count
}
