//! Degree sequences and their realizability tests.

use serde::Serialize;

use crate::error::{Error, Result};

/// A degree sequence `d_1..d_n` together with the statistics the generator
/// needs: `M = Σ d_i`, `M₂ = Σ d_i (d_i − 1)` and `Δ = max d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    total: u64,
    second_moment: u64,
    max_degree: u32,
    graphical: bool,
}

impl DegreeSequence {
    /// Builds a sequence from signed input, rejecting negative entries.
    pub fn new(degrees: &[i64]) -> Result<Self> {
        let degrees = degrees
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u32::try_from(value).map_err(|_| Error::InvalidDegree { index, value })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_degrees(degrees))
    }

    pub fn from_degrees(degrees: Vec<u32>) -> Self {
        let mut total = 0u64;
        let mut second_moment = 0u64;
        let mut max_degree = 0u32;
        for &d in &degrees {
            let d64 = u64::from(d);
            total += d64;
            second_moment += d64 * d64.saturating_sub(1);
            max_degree = max_degree.max(d);
        }
        let graphical = total.is_multiple_of(2) && erdos_gallai(&degrees);
        DegreeSequence {
            degrees,
            total,
            second_moment,
            max_degree,
            graphical,
        }
    }

    /// The `d`-regular sequence on `n` vertices.
    pub fn regular(n: usize, d: u32) -> Self {
        Self::from_degrees(vec![d; n])
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `M`, the number of points in the configuration model.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `M₂ = Σ d_i (d_i − 1)`.
    pub fn second_moment(&self) -> u64 {
        self.second_moment
    }

    /// `Δ`.
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_graphical(&self) -> bool {
        self.graphical
    }
}

/// Degree sequences of the two sides of a bipartite graph. Vertices of `X`
/// are numbered `0..m`, vertices of `Y` follow as `m..m+n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteDegreeSequence {
    x: Vec<u32>,
    y: Vec<u32>,
    x_total: u64,
    y_total: u64,
    x_second_moment: u64,
    y_second_moment: u64,
    max_degree: u32,
    bigraphical: bool,
}

impl BipartiteDegreeSequence {
    pub fn new(x: &[i64], y: &[i64]) -> Result<Self> {
        let convert = |side: &[i64], offset: usize| {
            side.iter()
                .enumerate()
                .map(|(i, &value)| {
                    u32::try_from(value).map_err(|_| Error::InvalidDegree {
                        index: offset + i,
                        value,
                    })
                })
                .collect::<Result<Vec<_>>>()
        };
        Ok(Self::from_degrees(convert(x, 0)?, convert(y, x.len())?))
    }

    pub fn from_degrees(x: Vec<u32>, y: Vec<u32>) -> Self {
        let stats = |side: &[u32]| {
            side.iter().fold((0u64, 0u64, 0u32), |(t, s, m), &d| {
                let d64 = u64::from(d);
                (t + d64, s + d64 * d64.saturating_sub(1), m.max(d))
            })
        };
        let (x_total, x_second_moment, x_max) = stats(&x);
        let (y_total, y_second_moment, y_max) = stats(&y);
        let bigraphical = x_total == y_total && gale_ryser(&x, &y);
        BipartiteDegreeSequence {
            x,
            y,
            x_total,
            y_total,
            x_second_moment,
            y_second_moment,
            max_degree: x_max.max(y_max),
            bigraphical,
        }
    }

    /// Degrees of part `X` (the sequence `s`).
    pub fn x_degrees(&self) -> &[u32] {
        &self.x
    }

    /// Degrees of part `Y` (the sequence `t`).
    pub fn y_degrees(&self) -> &[u32] {
        &self.y
    }

    pub fn x_len(&self) -> usize {
        self.x.len()
    }

    pub fn y_len(&self) -> usize {
        self.y.len()
    }

    /// Both parts concatenated, `X` first.
    pub fn combined_degrees(&self) -> Vec<u32> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    /// `M`, the common degree sum. Only meaningful when the parts balance.
    pub fn total(&self) -> u64 {
        self.x_total
    }

    pub fn is_balanced(&self) -> bool {
        self.x_total == self.y_total
    }

    pub fn part_totals(&self) -> (u64, u64) {
        (self.x_total, self.y_total)
    }

    /// `S₂ = Σ s_i (s_i − 1)` over `X`.
    pub fn x_second_moment(&self) -> u64 {
        self.x_second_moment
    }

    /// `T₂ = Σ t_j (t_j − 1)` over `Y`.
    pub fn y_second_moment(&self) -> u64 {
        self.y_second_moment
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_bigraphical(&self) -> bool {
        self.bigraphical
    }
}

/// Erdős–Gallai test in `O(n log n)`. Parity is checked by the caller.
pub fn erdos_gallai(degrees: &[u32]) -> bool {
    let n = degrees.len();
    let mut d: Vec<u64> = degrees.iter().map(|&x| u64::from(x)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = vec![0u64; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + d[i];
    }
    // `at_least` = number of entries >= k; shrinks as k grows.
    let mut at_least = n;
    for k in 1..=n {
        let k64 = k as u64;
        while at_least > 0 && d[at_least - 1] < k64 {
            at_least -= 1;
        }
        let split = at_least.max(k);
        let capped = k64 * (at_least.saturating_sub(k) as u64);
        let rhs = k64 * (k64 - 1) + capped + (prefix[n] - prefix[split]);
        if prefix[k] > rhs {
            return false;
        }
    }
    true
}

/// Gale–Ryser test for the existence of a simple bipartite graph with part
/// degrees `x` and `y`.
pub fn gale_ryser(x: &[u32], y: &[u32]) -> bool {
    let sx: u64 = x.iter().map(|&v| u64::from(v)).sum();
    let sy: u64 = y.iter().map(|&v| u64::from(v)).sum();
    if sx != sy {
        return false;
    }
    let mut xs: Vec<u64> = x.iter().map(|&v| u64::from(v)).collect();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    if xs.first().is_some_and(|&top| top > y.len() as u64) {
        return false;
    }
    let max_y = y.iter().copied().max().unwrap_or(0) as usize;
    let mut count = vec![0u64; max_y + 2];
    for &t in y {
        count[t as usize] += 1;
    }
    // at_least[k] = #{j : y_j >= k}
    let mut at_least = vec![0u64; max_y + 2];
    for k in (0..=max_y).rev() {
        at_least[k] = at_least[k + 1] + count[k];
    }
    let mut lhs = 0u64;
    let mut rhs = 0u64;
    for (i, &s) in xs.iter().enumerate() {
        let k = i + 1;
        lhs += s;
        rhs += if k <= max_y { at_least[k] } else { 0 };
        if lhs > rhs {
            return false;
        }
    }
    true
}
