use std::collections::BTreeSet;

use serde::Serialize;

use super::filtration::NamedCheck;
use super::{binomial_saturated, binomial_symbolic, JoinedRing};
use crate::decomposition::{
    ass_module_quotient, associated_primes, default_ass_star_bound, grade_zero, minimal_primes,
};
use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, MonomialPrime, Ring};
use crate::powers::{saturated_power, saturator_global, symbolic_power, Notion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

/// An expansion compared against the directly computed ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub s: u32,
    pub expansion: String,
    pub direct: String,
    pub equal: bool,
}

/// `binomial_saturated` against `(I+J)^s : (KL)^∞` computed in the joined ring.
pub fn check_binomial_saturated(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    k: &MonomialIdeal,
    j: &MonomialIdeal,
    l: &MonomialIdeal,
    s: u32,
) -> Result<ExpansionReport> {
    let expansion = binomial_saturated(joined, i, k, j, l, s)?;
    let direct = joined.sum(i, j)?.power(s).saturate(&joined.product(k, l)?)?;
    Ok(ExpansionReport {
        s,
        equal: expansion == direct,
        expansion: expansion.to_string(),
        direct: direct.to_string(),
    })
}

/// `binomial_symbolic` against the symbolic power of `I + J` read off a
/// primary decomposition in the joined ring.
pub fn check_binomial_symbolic(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: u32,
    notion: Notion,
) -> Result<ExpansionReport> {
    let expansion = binomial_symbolic(joined, i, j, s, notion)?;
    let direct = symbolic_power(&joined.sum(i, j)?, s, notion)?;
    Ok(ExpansionReport {
        s,
        equal: expansion == direct,
        expansion: expansion.to_string(),
        direct: direct.to_string(),
    })
}

/// Each term `I^(i)_K · J^(s-i)_L` lies in `(I+J)^s : (KL)^∞`.
pub fn check_saturated_inclusion(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    k: &MonomialIdeal,
    j: &MonomialIdeal,
    l: &MonomialIdeal,
    s: u32,
) -> Result<NamedCheck> {
    let target = joined.sum(i, j)?.power(s).saturate(&joined.product(k, l)?)?;
    for t in 0..=s {
        let term = joined.product(&saturated_power(i, k, t)?, &saturated_power(j, l, s - t)?)?;
        if !term.is_subset(&target)? {
            return Ok(NamedCheck::new("term_inclusion", Some(format!("i = {t}: {term} not in {target}"))));
        }
    }
    Ok(NamedCheck::new("term_inclusion", None))
}

/// Componentwise equalities against the joint one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityReport {
    pub s: u32,
    /// Entry `i - 1` records whether the left power `i` is unchanged.
    pub left: Vec<bool>,
    pub right: Vec<bool>,
    pub joint: bool,
    /// `Pass` when the joint equality holds exactly when all componentwise ones do.
    pub verdict: Outcome,
}

impl EqualityReport {
    fn new(s: u32, left: Vec<bool>, right: Vec<bool>, joint: bool) -> EqualityReport {
        let componentwise = left.iter().chain(&right).all(|&b| b);
        let verdict = if componentwise == joint { Outcome::Pass } else { Outcome::Fail };
        EqualityReport { s, left, right, joint, verdict }
    }
}

fn require_nonzero_proper(ideals: &[&MonomialIdeal]) -> Result<()> {
    ideals.iter().try_for_each(|x| x.require_proper_nonzero())
}

/// `I^(i)_K = I^i` and `J^(i)_L = J^i` for all `i ≤ s`, against
/// `(I+J)^(s)_{KL} = (I+J)^s`.
pub fn check_equality_criteria(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    k: &MonomialIdeal,
    j: &MonomialIdeal,
    l: &MonomialIdeal,
    s: u32,
) -> Result<EqualityReport> {
    require_nonzero_proper(&[i, j])?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let unchanged = |x: &MonomialIdeal, y: &MonomialIdeal| {
        (1..=s).map(|t| Ok(saturated_power(x, y, t)? == x.power(t))).collect::<Result<Vec<_>>>()
    };
    let left = unchanged(i, k)?;
    let right = unchanged(j, l)?;
    let joint = binomial_saturated(joined, i, k, j, l, s)? == joined.sum(i, j)?.power(s);
    Ok(EqualityReport::new(s, left, right, joint))
}

/// The same biconditional with symbolic powers in place of saturated ones.
pub fn check_symbolic_equality_criteria(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: u32,
    notion: Notion,
) -> Result<EqualityReport> {
    require_nonzero_proper(&[i, j])?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let unchanged = |x: &MonomialIdeal| {
        (1..=s).map(|t| Ok(symbolic_power(x, t, notion)? == x.power(t))).collect::<Result<Vec<_>>>()
    };
    let left = unchanged(i)?;
    let right = unchanged(j)?;
    let joint = symbolic_power(&joined.sum(i, j)?, s, notion)? == joined.sum(i, j)?.power(s);
    Ok(EqualityReport::new(s, left, right, joint))
}

/// Saturation by the product of global saturators, for one notion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationCheck {
    pub notion: Notion,
    pub saturator_left: String,
    pub saturator_right: String,
    pub stabilized: bool,
    /// Saturation by `KL` equals the symbolic power of `I + J`.
    pub equality: bool,
    /// Every `P ∈ Ass((I+J)^s)` is discarded by the notion exactly when `KL ⊆ P`.
    pub classification: bool,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssStructureReport {
    pub s: u32,
    /// `Ass(R/(I+J)) = {p + q}` over associated primes of both sides.
    pub tensor_ass: bool,
    /// The same for minimal primes.
    pub tensor_min: bool,
    /// Primes built from the power quotients lie in `Ass((I+J)^s)`.
    pub power_lower_bound: bool,
    /// `Ass((I+J)^s)` lies in the primes built from `Ass(I^i)`.
    pub power_upper_bound: bool,
    /// `grade(p+q) = 0` iff both `grade(p) = 0` and `grade(q) = 0`, for all
    /// nonempty primes `p` of `A` and `q` of `B`.
    pub grade_additivity: bool,
    pub saturation: Vec<SaturationCheck>,
}

impl AssStructureReport {
    pub fn outcome(&self) -> Outcome {
        let structural =
            self.tensor_ass && self.tensor_min && self.power_lower_bound && self.power_upper_bound && self.grade_additivity;
        if !structural || self.saturation.iter().any(|c| c.outcome == Outcome::Fail) {
            Outcome::Fail
        } else if self.saturation.iter().any(|c| c.outcome == Outcome::Inconclusive) {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }
}

fn prime_sums(
    joined: &JoinedRing,
    left: &BTreeSet<MonomialPrime>,
    right: &BTreeSet<MonomialPrime>,
) -> Result<BTreeSet<MonomialPrime>> {
    let mut out = BTreeSet::new();
    for p in left {
        for q in right {
            out.insert(joined.prime_sum(p, q)?);
        }
    }
    Ok(out)
}

fn all_nonempty_primes(ring: &Ring) -> Vec<MonomialPrime> {
    let n = ring.nvars();
    (1u32..1 << n)
        .map(|mask| MonomialPrime::new(ring, (0..n).filter(|b| mask >> b & 1 == 1).collect()).expect("valid"))
        .collect()
}

/// Associated-prime structure of `I + J` and its powers, and the saturation
/// description of both symbolic powers of `I + J`.
pub fn check_ass_structure(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: u32,
) -> Result<AssStructureReport> {
    require_nonzero_proper(&[i, j])?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let sum = joined.sum(i, j)?;
    let ass_sum = associated_primes(&sum)?;
    let tensor_ass = ass_sum == prime_sums(joined, &associated_primes(i)?, &associated_primes(j)?)?;
    let tensor_min = minimal_primes(&sum)? == prime_sums(joined, &minimal_primes(i)?, &minimal_primes(j)?)?;

    let sum_power = sum.power(s);
    let ass_power = associated_primes(&sum_power)?;
    let mut lower = BTreeSet::new();
    let mut upper = BTreeSet::new();
    for t in 1..=s {
        let q = ass_module_quotient(j, s - t + 1)?;
        lower.extend(prime_sums(joined, &ass_module_quotient(i, t)?, &q)?);
        upper.extend(prime_sums(joined, &associated_primes(&i.power(t))?, &q)?);
    }
    let power_lower_bound = lower.is_subset(&ass_power);
    let power_upper_bound = ass_power.is_subset(&upper);

    let mut grade_additivity = true;
    'outer: for p in all_nonempty_primes(joined.left.source()) {
        for q in all_nonempty_primes(joined.right.source()) {
            let big = joined.prime_sum(&p, &q)?;
            let joint = ass_sum.iter().any(|x| big.is_subset(x));
            if joint != (grade_zero(&p, i)? && grade_zero(&q, j)?) {
                grade_additivity = false;
                break 'outer;
            }
        }
    }

    let mut saturation = Vec::new();
    for notion in [Notion::Min, Notion::Ass] {
        let gk = saturator_global(i, default_ass_star_bound(i).max(s), notion)?;
        let gl = saturator_global(j, default_ass_star_bound(j).max(s), notion)?;
        let kl = joined.product(&gk.ideal, &gl.ideal)?;
        let equality = saturated_power(&sum, &kl, s)? == symbolic_power(&sum, s, notion)?;
        let kept = match notion {
            Notion::Min => minimal_primes(&sum)?,
            Notion::Ass => ass_sum.clone(),
        };
        let classification = ass_power.iter().all(|p| {
            let discarded = match notion {
                Notion::Min => !kept.contains(p),
                Notion::Ass => !kept.iter().any(|q| p.is_subset(q)),
            };
            discarded == p.contains_exps_all(&kl)
        });
        let stabilized = gk.stabilized && gl.stabilized;
        let outcome = match (equality && classification, stabilized) {
            (true, _) => Outcome::Pass,
            (false, true) => Outcome::Fail,
            (false, false) => Outcome::Inconclusive,
        };
        saturation.push(SaturationCheck {
            notion,
            saturator_left: gk.ideal.to_string(),
            saturator_right: gl.ideal.to_string(),
            stabilized,
            equality,
            classification,
            outcome,
        });
    }

    Ok(AssStructureReport {
        s,
        tensor_ass,
        tensor_min,
        power_lower_bound,
        power_upper_bound,
        grade_additivity,
        saturation,
    })
}

impl MonomialPrime {
    /// Whether every generator of `ideal` lies in this prime.
    pub(crate) fn contains_exps_all(&self, ideal: &MonomialIdeal) -> bool {
        ideal.exponents().iter().all(|g| self.contains_exps(g))
    }
}
