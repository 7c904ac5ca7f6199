//! Incremental relaxation.
//!
//! An element of level `i` is a ground object `G` together with a chain of
//! constraints `C₁ ⊇ … ⊇ Cᵢ` it satisfies. [`loosen`] drops the innermost
//! constraint, keeping the prefix with probability `b̲(i−1) / b(prefix)`
//! where `b(prefix)` counts the level-`i` elements extending the prefix and
//! `b̲(i−1)` is a positive lower bound on that count over all of level
//! `i−1`. A uniform element of level `i` that survives comes out uniform
//! on level `i−1`; chaining all the way down ([`relax_iterated`]) yields a
//! uniform ground object. [`relax`] does the same with one draw against the
//! product of the per-level ratios.
//!
//! All acceptance decisions are exact: a uniform integer in
//! `[0, denominator)` is compared against the numerator.

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};

/// Lower bound and actual extension count at one relaxation level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level {
    pub lower: u64,
    pub count: u64,
}

impl Level {
    pub fn new(lower: u64, count: u64) -> Self {
        Level { lower, count }
    }

    fn check(&self) -> Result<()> {
        if self.lower == 0 {
            return Err(Error::InternalInvariantViolation(
                "relaxation lower bound must be positive".into(),
            ));
        }
        if self.lower > self.count {
            return Err(Error::BoundViolation {
                lower: self.lower,
                count: self.count,
            });
        }
        Ok(())
    }
}

/// Returns true with probability exactly `numer / denom`.
pub fn bernoulli_ratio<R: Rng + ?Sized>(numer: u128, denom: u128, rng: &mut R) -> bool {
    debug_assert!(denom > 0 && numer <= denom);
    numer == denom || rng.random_range(0..denom) < numer
}

/// Exact numerator and denominator of `∏ lower / count`.
pub fn acceptance_terms(levels: &[Level]) -> Result<(u128, u128)> {
    let overflow = || Error::InternalInvariantViolation("acceptance product overflows u128".into());
    let mut numer = 1u128;
    let mut denom = 1u128;
    for level in levels {
        level.check()?;
        numer = numer
            .checked_mul(u128::from(level.lower))
            .ok_or_else(overflow)?;
        denom = denom
            .checked_mul(u128::from(level.count))
            .ok_or_else(overflow)?;
    }
    Ok((numer, denom))
}

/// `∏ lower / count` as a reduced fraction.
pub fn acceptance_probability(levels: &[Level]) -> Result<Ratio<u128>> {
    let (numer, denom) = acceptance_terms(levels)?;
    Ok(Ratio::new(numer, denom))
}

/// One acceptance draw for all levels at once.
pub fn accept_levels<R: Rng + ?Sized>(levels: &[Level], rng: &mut R) -> Result<bool> {
    let (numer, denom) = acceptance_terms(levels)?;
    Ok(bernoulli_ratio(numer, denom, rng))
}

/// A ground object with its constraint chain `(G, C₁, …, Cᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintChain<G, C> {
    pub ground: G,
    pub constraints: Vec<C>,
}

impl<G: Clone, C: Clone> ConstraintChain<G, C> {
    pub fn new(ground: G, constraints: Vec<C>) -> Self {
        ConstraintChain {
            ground,
            constraints,
        }
    }

    /// `i`, the number of constraints.
    pub fn depth(&self) -> usize {
        self.constraints.len()
    }

    /// `P(F)`: the chain with its innermost constraint removed.
    pub fn prefix(&self) -> Self {
        let mut constraints = self.constraints.clone();
        constraints.pop();
        ConstraintChain {
            ground: self.ground.clone(),
            constraints,
        }
    }
}

/// Supplies `b(F)` and `b̲(i)` for a family of constraint chains.
pub trait ExtensionCounter<G, C> {
    /// Number of chains one level deeper whose prefix is `(ground, constraints)`.
    fn extensions(&self, ground: &G, constraints: &[C]) -> u64;

    /// Lower bound on [`ExtensionCounter::extensions`] over every chain of
    /// depth `level`.
    fn lower_bound(&self, level: usize) -> u64;
}

/// Result of a relaxation step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relaxed<T> {
    Accepted(T),
    Rejected,
}

impl<T> Relaxed<T> {
    pub fn accepted(self) -> Option<T> {
        match self {
            Relaxed::Accepted(t) => Some(t),
            Relaxed::Rejected => None,
        }
    }
}

fn loosen_level<G, C, X>(chain: &ConstraintChain<G, C>, counter: &X) -> Result<Level>
where
    G: Clone,
    C: Clone,
    X: ExtensionCounter<G, C> + ?Sized,
{
    let depth = chain.depth();
    if depth == 0 {
        return Err(Error::InternalInvariantViolation(
            "cannot loosen a bare ground element".into(),
        ));
    }
    let prefix = &chain.constraints[..depth - 1];
    Ok(Level::new(
        counter.lower_bound(depth - 1),
        counter.extensions(&chain.ground, prefix),
    ))
}

/// Probability that [`loosen`] keeps the prefix of `chain`.
pub fn loosen_probability<G, C, X>(
    chain: &ConstraintChain<G, C>,
    counter: &X,
) -> Result<Ratio<u128>>
where
    G: Clone,
    C: Clone,
    X: ExtensionCounter<G, C> + ?Sized,
{
    acceptance_probability(&[loosen_level(chain, counter)?])
}

/// Drops the innermost constraint of `chain`, rejecting with probability
/// `1 − b̲(i−1) / b(P(F))`.
pub fn loosen<G, C, X, R>(
    chain: &ConstraintChain<G, C>,
    counter: &X,
    rng: &mut R,
) -> Result<Relaxed<ConstraintChain<G, C>>>
where
    G: Clone,
    C: Clone,
    X: ExtensionCounter<G, C> + ?Sized,
    R: Rng + ?Sized,
{
    let level = loosen_level(chain, counter)?;
    if accept_levels(&[level], rng)? {
        Ok(Relaxed::Accepted(chain.prefix()))
    } else {
        Ok(Relaxed::Rejected)
    }
}

fn relax_levels<G, C, X>(chain: &ConstraintChain<G, C>, counter: &X) -> Vec<Level>
where
    X: ExtensionCounter<G, C> + ?Sized,
{
    (0..chain.constraints.len())
        .map(|i| {
            Level::new(
                counter.lower_bound(i),
                counter.extensions(&chain.ground, &chain.constraints[..i]),
            )
        })
        .collect()
}

/// `∏_{i<k} b̲(i) / b(G, C₁, …, Cᵢ)`, the probability that [`relax`]
/// outputs the ground element.
pub fn relax_probability<G, C, X>(chain: &ConstraintChain<G, C>, counter: &X) -> Result<Ratio<u128>>
where
    X: ExtensionCounter<G, C> + ?Sized,
{
    acceptance_probability(&relax_levels(chain, counter))
}

/// Relaxes every constraint with a single acceptance draw.
pub fn relax<G, C, X, R>(
    chain: &ConstraintChain<G, C>,
    counter: &X,
    rng: &mut R,
) -> Result<Relaxed<G>>
where
    G: Clone,
    X: ExtensionCounter<G, C> + ?Sized,
    R: Rng + ?Sized,
{
    if accept_levels(&relax_levels(chain, counter), rng)? {
        Ok(Relaxed::Accepted(chain.ground.clone()))
    } else {
        Ok(Relaxed::Rejected)
    }
}

/// Relaxes by calling [`loosen`] once per level.
pub fn relax_iterated<G, C, X, R>(
    chain: &ConstraintChain<G, C>,
    counter: &X,
    rng: &mut R,
) -> Result<Relaxed<G>>
where
    G: Clone,
    C: Clone,
    X: ExtensionCounter<G, C> + ?Sized,
    R: Rng + ?Sized,
{
    let mut current = chain.clone();
    while current.depth() > 0 {
        match loosen(&current, counter, rng)? {
            Relaxed::Accepted(next) => current = next,
            Relaxed::Rejected => return Ok(Relaxed::Rejected),
        }
    }
    Ok(Relaxed::Accepted(current.ground))
}

/// Acceptance probability of [`relax_iterated`], multiplied out step by
/// step from [`loosen_probability`].
pub fn iterated_probability<G, C, X>(
    chain: &ConstraintChain<G, C>,
    counter: &X,
) -> Result<Ratio<u128>>
where
    G: Clone,
    C: Clone,
    X: ExtensionCounter<G, C> + ?Sized,
{
    let mut current = chain.clone();
    let mut prob = Ratio::from_integer(1u128);
    while current.depth() > 0 {
        prob *= loosen_probability(&current, counter)?;
        current = current.prefix();
    }
    Ok(prob)
}
