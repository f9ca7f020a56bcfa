//! Saturated powers `I^s : K^∞` and the two symbolic powers.
//!
//! The minimal-prime symbolic power keeps the primary components of `I^s`
//! over minimal primes of `I`; the associated-prime version keeps those whose
//! prime sits inside some associated prime of `I`. Both are also saturations
//! of `I^s` by an intersection of the discarded primes, which is what the
//! saturator functions build.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decomposition::{
    ass_star_bounded, associated_primes, minimal_primes, primary_decomposition,
};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, MonomialPrime, Ring};

/// Which family of primes defines the symbolic power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notion {
    /// Components over minimal primes of `I`.
    Min,
    /// Components over primes contained in an associated prime of `I`.
    Ass,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notion::Min => "min",
            Notion::Ass => "ass",
        })
    }
}

impl FromStr for Notion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Notion> {
        match s {
            "min" => Ok(Notion::Min),
            "ass" => Ok(Notion::Ass),
            other => Err(Error::InvalidArgument(format!("unknown notion `{other}` (expected min or ass)"))),
        }
    }
}

/// `I^s : K^∞`. `s = 0` gives the unit ideal.
pub fn saturated_power(ideal: &MonomialIdeal, k: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    ideal.ring().check(k.ring())?;
    if ideal.is_zero() {
        return Err(Error::Degenerate(ideal.to_string()));
    }
    ideal.power(s).saturate(k)
}

fn intersect_primes<'a, I>(ring: &Ring, primes: I) -> MonomialIdeal
where
    I: IntoIterator<Item = &'a MonomialPrime>,
{
    primes
        .into_iter()
        .fold(MonomialIdeal::unit(ring), |acc, p| acc.intersect(&p.to_ideal()).expect("same ring"))
}

/// The primes of `candidates` that a given notion discards for `ideal`.
fn discarded(
    ideal: &MonomialIdeal,
    candidates: &BTreeSet<MonomialPrime>,
    notion: Notion,
) -> Result<BTreeSet<MonomialPrime>> {
    match notion {
        Notion::Min => {
            let min = minimal_primes(ideal)?;
            Ok(candidates.difference(&min).cloned().collect())
        }
        Notion::Ass => {
            let ass = associated_primes(ideal)?;
            Ok(candidates
                .iter()
                .filter(|p| !ass.iter().any(|q| p.is_subset(q)))
                .cloned()
                .collect())
        }
    }
}

/// `K_s`: intersection of the primes of `Ass(I^s)` discarded by `notion`,
/// or `(1)` when there are none.
pub fn saturator(ideal: &MonomialIdeal, s: u32, notion: Notion) -> Result<MonomialIdeal> {
    ideal.require_proper_nonzero()?;
    if s == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let ass = associated_primes(&ideal.power(s))?;
    Ok(intersect_primes(ideal.ring(), &discarded(ideal, &ass, notion)?))
}

pub fn saturator_min(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    saturator(ideal, s, Notion::Min)
}

pub fn saturator_ass(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    saturator(ideal, s, Notion::Ass)
}

/// Saturator built from `⋃_{n ≤ n_max} Ass(I^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSaturator {
    pub ideal: MonomialIdeal,
    /// The discarded primes the intersection ran over.
    pub primes: BTreeSet<MonomialPrime>,
    /// Copied from the bounded `Ass*` computation.
    pub stabilized: bool,
}

pub fn saturator_global(ideal: &MonomialIdeal, n_max: u32, notion: Notion) -> Result<GlobalSaturator> {
    let star = ass_star_bounded(ideal, n_max)?;
    let primes = discarded(ideal, &star.primes, notion)?;
    Ok(GlobalSaturator {
        ideal: intersect_primes(ideal.ring(), &primes),
        primes,
        stabilized: star.stabilized,
    })
}

pub fn saturator_min_global(ideal: &MonomialIdeal, n_max: u32) -> Result<GlobalSaturator> {
    saturator_global(ideal, n_max, Notion::Min)
}

pub fn saturator_ass_global(ideal: &MonomialIdeal, n_max: u32) -> Result<GlobalSaturator> {
    saturator_global(ideal, n_max, Notion::Ass)
}

/// Symbolic power read off a primary decomposition of `I^s`. `s = 0` gives `(1)`.
pub fn symbolic_power(ideal: &MonomialIdeal, s: u32, notion: Notion) -> Result<MonomialIdeal> {
    ideal.require_proper_nonzero()?;
    if s == 0 {
        return Ok(MonomialIdeal::unit(ideal.ring()));
    }
    let pd = primary_decomposition(&ideal.power(s))?;
    match notion {
        Notion::Min => {
            let min = minimal_primes(ideal)?;
            Ok(pd.intersect_where(ideal.ring(), |p| min.contains(p)))
        }
        Notion::Ass => {
            let ass = associated_primes(ideal)?;
            Ok(pd.intersect_where(ideal.ring(), |p| ass.iter().any(|q| p.is_subset(q))))
        }
    }
}

pub fn symbolic_min(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    symbolic_power(ideal, s, Notion::Min)
}

pub fn symbolic_ass(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    symbolic_power(ideal, s, Notion::Ass)
}

/// A monomial `x` in the global saturator that is a nonzerodivisor on
/// `A/√I` (`Min`) or `A/I` (`Ass`).
///
/// Returns `Some(1)` when no prime is discarded. A monomial is regular exactly
/// when its support misses every relevant prime, and any such monomial of the
/// saturator is a multiple of a generator with the same property, so the
/// lowest-degree witness is the first qualifying generator. `None` means no
/// monomial witness exists.
pub fn regular_witness(ideal: &MonomialIdeal, notion: Notion, n_max: u32) -> Result<Option<Monomial>> {
    let global = saturator_global(ideal, n_max, notion)?;
    if global.primes.is_empty() {
        return Ok(Some(Monomial::one(ideal.ring())));
    }
    let avoid = match notion {
        Notion::Min => minimal_primes(ideal)?,
        Notion::Ass => associated_primes(ideal)?,
    };
    let witness = global.ideal.generators().find(|g| avoid.iter().all(|p| !p.contains_exps(g.exponents())));
    Ok(witness)
}

/// The symbolic power computed along each available route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoutesReport {
    pub s: u32,
    pub notion: Notion,
    /// Components of `I^s` kept by the notion.
    pub decomposition: String,
    /// `I^s : K_s^∞`.
    pub local_saturator: String,
    /// `I^s : K^∞` with `K` from the bounded union of associated primes.
    pub global_saturator: String,
    /// `I^s : x^∞` for the regular witness `x`; `None` when no witness exists.
    pub witness: Option<String>,
    pub stabilized: bool,
    pub agree: bool,
}

/// Compares the decomposition route with the saturation routes. The global
/// route uses powers up to `max(default bound, s)`, which already contains
/// every prime of `Ass(I^s)`, so it is exact regardless of stabilization.
pub fn check_symbolic_routes(ideal: &MonomialIdeal, s: u32, notion: Notion) -> Result<RoutesReport> {
    if s == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let n_max = crate::decomposition::default_ass_star_bound(ideal).max(s);
    let by_decomposition = symbolic_power(ideal, s, notion)?;
    let local = saturated_power(ideal, &saturator(ideal, s, notion)?, s)?;
    let global = saturator_global(ideal, n_max, notion)?;
    let by_global = saturated_power(ideal, &global.ideal, s)?;
    let by_witness = regular_witness(ideal, notion, n_max)?
        .map(|x| saturated_power(ideal, &MonomialIdeal::principal(&x), s))
        .transpose()?;
    let agree = local == by_decomposition
        && by_global == by_decomposition
        && by_witness.as_ref().is_none_or(|w| *w == by_decomposition);
    Ok(RoutesReport {
        s,
        notion,
        decomposition: by_decomposition.to_string(),
        local_saturator: local.to_string(),
        global_saturator: by_global.to_string(),
        witness: by_witness.map(|w| w.to_string()),
        stabilized: global.stabilized,
        agree,
    })
}
