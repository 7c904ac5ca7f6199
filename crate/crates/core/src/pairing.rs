//! Configuration-model pairings and the initial rejection step.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::degree::{BipartiteDegreeSequence, DegreeSequence};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, MultiplicityProfile, Vertex};

/// A perfect matching on the points of the configuration model. Vertex `v`
/// owns points `offsets[v]..offsets[v + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    offsets: Vec<u32>,
    partner: Vec<u32>,
    y_start: Option<Vertex>,
}

impl Pairing {
    /// Assembles a pairing from point offsets and a partner table. Panics if
    /// `partner` is not an involution without fixed points.
    pub fn from_parts(offsets: Vec<u32>, partner: Vec<u32>, y_start: Option<Vertex>) -> Self {
        assert_eq!(
            *offsets.last().expect("offsets has n + 1 entries") as usize,
            partner.len()
        );
        for (p, &q) in partner.iter().enumerate() {
            assert!(
                q as usize != p && partner[q as usize] as usize == p,
                "partner table is not a perfect matching"
            );
        }
        Pairing {
            offsets,
            partner,
            y_start,
        }
    }

    pub(crate) fn into_parts(self) -> (Vec<u32>, Vec<u32>, Option<Vertex>) {
        (self.offsets, self.partner, self.y_start)
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn point_count(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, point: u32) -> u32 {
        self.partner[point as usize]
    }

    pub fn vertex_of(&self, point: u32) -> Vertex {
        (self.offsets.partition_point(|&o| o <= point) - 1) as Vertex
    }

    /// Every pair once, as `(p, q)` with `p < q`.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .map(|(p, &q)| (p as u32, q))
            .filter(|&(p, q)| p < q)
    }
}

fn offsets_for(degrees: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut offsets = vec![0u32];
    let mut acc = 0u32;
    for d in degrees {
        acc += d;
        offsets.push(acc);
    }
    offsets
}

/// Draws a uniformly random perfect matching on the `M` points: shuffle the
/// points and pair consecutive entries.
pub fn generate_pairing<R: Rng + ?Sized>(ds: &DegreeSequence, rng: &mut R) -> Result<Pairing> {
    if ds.total() % 2 == 1 {
        return Err(Error::OddDegreeSum(ds.total()));
    }
    let offsets = offsets_for(ds.degrees().iter().copied());
    let m = ds.total() as usize;
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.shuffle(rng);
    let mut partner = vec![0u32; m];
    for chunk in order.chunks_exact(2) {
        partner[chunk[0] as usize] = chunk[1];
        partner[chunk[1] as usize] = chunk[0];
    }
    Ok(Pairing {
        offsets,
        partner,
        y_start: None,
    })
}

/// Draws a uniformly random bipartite pairing: a uniform bijection between
/// the points of `X` and the points of `Y`.
pub fn generate_bipartite_pairing<R: Rng + ?Sized>(
    bds: &BipartiteDegreeSequence,
    rng: &mut R,
) -> Result<Pairing> {
    let (x_sum, y_sum) = bds.part_totals();
    if x_sum != y_sum {
        return Err(Error::UnbalancedParts { x_sum, y_sum });
    }
    let offsets = offsets_for(bds.combined_degrees().into_iter());
    let m = x_sum as u32;
    let mut y_points: Vec<u32> = (m..2 * m).collect();
    y_points.shuffle(rng);
    let mut partner = vec![0u32; 2 * m as usize];
    for (x, &y) in y_points.iter().enumerate() {
        partner[x] = y;
        partner[y as usize] = x as u32;
    }
    Ok(Pairing {
        offsets,
        partner,
        y_start: Some(bds.x_len() as Vertex),
    })
}

/// Caps on loops and double edges accepted by the initial rejection step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phi0Thresholds {
    pub loops: Ratio<u128>,
    pub doubles: Ratio<u128>,
}

impl Phi0Thresholds {
    pub fn new(loops: Ratio<u128>, doubles: Ratio<u128>) -> Self {
        Phi0Thresholds { loops, doubles }
    }

    pub fn zero() -> Self {
        Self::new(Ratio::from_integer(0), Ratio::from_integer(0))
    }

    /// No loops; at most `S₂T₂/M²` double edges.
    pub fn bipartite(bds: &BipartiteDegreeSequence) -> Self {
        let m = u128::from(bds.total());
        if m == 0 {
            return Self::zero();
        }
        let cap = u128::from(bds.x_second_moment()) * u128::from(bds.y_second_moment());
        Self::new(Ratio::from_integer(0), Ratio::new(cap, m * m))
    }

    /// Exact comparison `m₁ ≤ B₁`.
    pub fn loops_ok(&self, m1: u64) -> bool {
        u128::from(m1) * self.loops.denom() <= *self.loops.numer()
    }

    /// Exact comparison `m₂ ≤ B₂`.
    pub fn doubles_ok(&self, m2: u64) -> bool {
        u128::from(m2) * self.doubles.denom() <= *self.doubles.numer()
    }

    pub fn admits(&self, profile: &MultiplicityProfile) -> bool {
        !profile.has_bad_multiplicity
            && self.loops_ok(profile.loops)
            && self.doubles_ok(profile.doubles)
    }

    /// Largest integer loop count admitted.
    pub fn max_loops(&self) -> u64 {
        self.loops.floor().to_integer() as u64
    }

    /// Largest integer double-edge count admitted.
    pub fn max_doubles(&self) -> u64 {
        self.doubles.floor().to_integer() as u64
    }
}

/// True when the switching phases may run for `ds`: `22Δ³ < M₂`.
pub fn switching_regime(ds: &DegreeSequence) -> bool {
    let delta = u128::from(ds.max_degree());
    22 * delta * delta * delta < u128::from(ds.second_moment())
}

/// `B₁ = M₂/M` and `B₂ = (M₂/M)²` when `22Δ³ < M₂`, zero otherwise.
pub fn phi0_thresholds(ds: &DegreeSequence) -> Phi0Thresholds {
    let m = u128::from(ds.total());
    if m == 0 || !switching_regime(ds) {
        return Phi0Thresholds::zero();
    }
    let m2 = u128::from(ds.second_moment());
    Phi0Thresholds::new(Ratio::new(m2, m), Ratio::new(m2 * m2, m * m))
}

/// Projects a pairing to its multigraph.
pub fn project(pairing: Pairing) -> Multigraph {
    Multigraph::from_pairing(pairing)
}

/// Whether a pairing survives initial rejection.
pub fn in_phi0(pairing: &Pairing, thresholds: &Phi0Thresholds) -> bool {
    thresholds.admits(&pairing_profile(pairing))
}

/// Loop/double counts of a pairing without building the full multigraph.
pub fn pairing_profile(pairing: &Pairing) -> MultiplicityProfile {
    let mut pairs = rustc_hash::FxHashMap::<(Vertex, Vertex), u32>::default();
    for (p, q) in pairing.pairs() {
        let (u, w) = (pairing.vertex_of(p), pairing.vertex_of(q));
        *pairs.entry((u.min(w), u.max(w))).or_insert(0) += 1;
    }
    let mut profile = MultiplicityProfile {
        loops: 0,
        doubles: 0,
        has_bad_multiplicity: false,
    };
    for (&(u, w), &m) in &pairs {
        match (u == w, m) {
            (true, 1) => profile.loops += 1,
            (true, _) => profile.has_bad_multiplicity = true,
            (false, 2) => profile.doubles += 1,
            (false, m) if m >= 3 => profile.has_bad_multiplicity = true,
            _ => {}
        }
    }
    profile
}

/// Serializable view of the thresholds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThresholdSummary {
    pub max_loops: u64,
    pub max_doubles: u64,
}

impl From<&Phi0Thresholds> for ThresholdSummary {
    fn from(t: &Phi0Thresholds) -> Self {
        ThresholdSummary {
            max_loops: t.max_loops(),
            max_doubles: t.max_doubles(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ratio(n: u128, d: u128) -> Ratio<u128> {
        Ratio::new(n, d)
    }

    #[test]
    fn single_pair_is_forced() {
        let ds = DegreeSequence::new(&[1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let p = generate_pairing(&ds, &mut rng).unwrap();
            assert_eq!(p.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
        }
    }

    #[test]
    fn single_vertex_degree_two_is_a_loop() {
        let ds = DegreeSequence::new(&[2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = project(generate_pairing(&ds, &mut rng).unwrap());
        assert_eq!(g.loop_total(), 1);
    }

    #[test]
    fn odd_sum_rejected() {
        let ds = DegreeSequence::new(&[1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            generate_pairing(&ds, &mut rng),
            Err(Error::OddDegreeSum(3))
        ));
    }

    #[test]
    fn thresholds_below_guard_are_zero() {
        let ds = DegreeSequence::new(&[2, 2, 2]).unwrap();
        assert_eq!(ds.second_moment(), 6);
        assert_eq!(phi0_thresholds(&ds), Phi0Thresholds::zero());
        let ds = DegreeSequence::new(&[1, 1]).unwrap();
        assert_eq!(phi0_thresholds(&ds), Phi0Thresholds::zero());
    }

    #[test]
    fn thresholds_for_cubic_hundred() {
        let ds = DegreeSequence::regular(100, 3);
        assert_eq!(ds.second_moment(), 600);
        let th = phi0_thresholds(&ds);
        assert_eq!(th.loops, ratio(2, 1));
        assert_eq!(th.doubles, ratio(4, 1));
    }

    #[test]
    fn phi0_membership() {
        let simple = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).profile();
        assert!(Phi0Thresholds::zero().admits(&simple));
        let th = Phi0Thresholds::new(ratio(2, 1), ratio(4, 1));
        let five_doubles = MultiplicityProfile {
            loops: 0,
            doubles: 5,
            has_bad_multiplicity: false,
        };
        assert!(!th.admits(&five_doubles));
        let triple = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).profile();
        assert!(!Phi0Thresholds::new(ratio(100, 1), ratio(100, 1)).admits(&triple));
    }

    #[test]
    fn projection_examples() {
        // d = (2,2): a1-b1, a2-b2.
        let p = Pairing::from_parts(vec![0, 2, 4], vec![2, 3, 0, 1], None);
        let g = project(p.clone());
        assert_eq!(g.double_total(), 1);
        assert_eq!(g.loop_total(), 0);
        assert_eq!(pairing_profile(&p).doubles, 1);

        let p = Pairing::from_parts(vec![0, 2], vec![1, 0], None);
        assert_eq!(project(p).loop_total(), 1);

        let p = Pairing::from_parts(vec![0, 1, 2, 3, 4], vec![1, 0, 3, 2], None);
        let g = project(p);
        assert_eq!(g.edge_list(), vec![(0, 1), (2, 3)]);
        assert_eq!(g.p2(), 0);
    }

    #[test]
    fn bipartite_pairing_crosses_parts() {
        let bds = BipartiteDegreeSequence::new(&[1, 1], &[2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let g = project(generate_bipartite_pairing(&bds, &mut rng).unwrap());
            assert_eq!(g.edge_list(), vec![(0, 2), (1, 2)]);
        }
        let bds = BipartiteDegreeSequence::new(&[2], &[2]).unwrap();
        let g = project(generate_bipartite_pairing(&bds, &mut rng).unwrap());
        assert_eq!(g.double_total(), 1);
        let bad = BipartiteDegreeSequence::new(&[2], &[1]).unwrap();
        assert!(matches!(
            generate_bipartite_pairing(&bad, &mut rng),
            Err(Error::UnbalancedParts { x_sum: 2, y_sum: 1 })
        ));
    }

    #[test]
    fn bipartite_cap() {
        let bds = BipartiteDegreeSequence::new(&[2, 2], &[2, 2]).unwrap();
        let th = Phi0Thresholds::bipartite(&bds);
        assert_eq!(th.doubles, ratio(1, 1));
        assert!(th.doubles_ok(1));
        assert!(!th.doubles_ok(2));
    }
}
