use serde::Serialize;

use super::{betti_table, deriv_star, Characteristic, ExtendedInt};
use crate::binomial::{binomial_saturated, JoinedRing, NamedCheck};
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::powers::{saturated_power, symbolic_power, Notion};

/// Depth and regularity of `R/(I+J)^(s)` against the min/max formulas in
/// the depths and regularities of the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthRegReport {
    pub s: u32,
    pub characteristic: Characteristic,
    pub ideal: String,
    pub depth_lhs: ExtendedInt,
    pub depth_rhs: ExtendedInt,
    pub reg_lhs: ExtendedInt,
    pub reg_rhs: ExtendedInt,
}

impl DepthRegReport {
    pub fn depth_equal(&self) -> bool {
        self.depth_lhs == self.depth_rhs
    }

    pub fn reg_equal(&self) -> bool {
        self.reg_lhs == self.reg_rhs
    }

    pub fn passed(&self) -> bool {
        self.depth_equal() && self.reg_equal()
    }
}

/// `left[i]`, `right[j]` are the ideals of power `i`, `j` on each side, with
/// index 0 the unit ideal; both must have `s + 1` entries.
fn assemble(
    joined_ideal: &MonomialIdeal,
    left: &[MonomialIdeal],
    right: &[MonomialIdeal],
    s: u32,
    ch: Characteristic,
) -> DepthRegReport {
    let lhs = betti_table(joined_ideal, ch);
    let side = |xs: &[MonomialIdeal]| -> Vec<(ExtendedInt, ExtendedInt)> {
        xs.iter()
            .map(|x| {
                let t = betti_table(x, ch);
                (t.depth(), t.regularity())
            })
            .collect()
    };
    let (l, r) = (side(left), side(right));
    let s = s as usize;
    let mut depth_rhs = ExtendedInt::PosInf;
    let mut reg_rhs = ExtendedInt::NegInf;
    for i in 1..=s {
        let (dl, rl) = l[i];
        depth_rhs = depth_rhs.min(dl + r[s - i].0 + 1).min(dl + r[s + 1 - i].0);
        reg_rhs = reg_rhs.max(rl + r[s - i].1 + 1).max(rl + r[s + 1 - i].1);
    }
    DepthRegReport {
        s: s as u32,
        characteristic: ch,
        ideal: joined_ideal.to_string(),
        depth_lhs: lhs.depth(),
        depth_rhs,
        reg_lhs: lhs.regularity(),
        reg_rhs,
    }
}

/// Saturated powers `(I+J)^(s)_{KL}`.
pub fn check_depth_reg_binomial(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    k: &MonomialIdeal,
    j: &MonomialIdeal,
    l: &MonomialIdeal,
    s: u32,
    ch: Characteristic,
) -> Result<DepthRegReport> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let lhs = binomial_saturated(joined, i, k, j, l, s)?;
    let left = (0..=s).map(|t| saturated_power(i, k, t)).collect::<Result<Vec<_>>>()?;
    let right = (0..=s).map(|t| saturated_power(j, l, t)).collect::<Result<Vec<_>>>()?;
    Ok(assemble(&lhs, &left, &right, s, ch))
}

/// Symbolic powers of the given notion. The formulas are only claimed for
/// the associated-prime notion; the minimal-prime one is accepted for
/// experimentation.
pub fn check_depth_reg_symbolic(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: u32,
    notion: Notion,
    ch: Characteristic,
) -> Result<DepthRegReport> {
    i.require_proper_nonzero()?;
    j.require_proper_nonzero()?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let lhs = symbolic_power(&joined.sum(i, j)?, s, notion)?;
    let left = (0..=s).map(|t| symbolic_power(i, t, notion)).collect::<Result<Vec<_>>>()?;
    let right = (0..=s).map(|t| symbolic_power(j, t, notion)).collect::<Result<Vec<_>>>()?;
    Ok(assemble(&lhs, &left, &right, s, ch))
}

/// `∂*(I^(s)_K) ⊆ I^(s-1)_K`.
pub fn check_deriv_star(i: &MonomialIdeal, k: &MonomialIdeal, s: u32) -> Result<NamedCheck> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let top = saturated_power(i, k, s)?;
    let lower = saturated_power(i, k, s - 1)?;
    let d = deriv_star(&top);
    let failure = (!d.is_subset(&lower)?).then(|| format!("{d} not in {lower}"));
    Ok(NamedCheck::new("derivative_lowers_power", failure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::join_rings;
    use crate::monomial::testutil::*;

    #[test]
    fn worked_example() {
        let a = ring("a,b");
        let b = ring("c,d");
        let jr = join_rings(&a, &b);
        let rep = check_depth_reg_binomial(
            &jr,
            &ideal(&a, "a^2, a*b"),
            &ideal(&a, "a, b"),
            &ideal(&b, "c^2, c*d"),
            &ideal(&b, "c, d"),
            2,
            Characteristic::Zero,
        )
        .unwrap();
        assert_eq!(rep.ideal, "(a^2, a*c, c^2)");
        assert_eq!(rep.depth_lhs, 2);
        assert_eq!(rep.reg_lhs, 1);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn unit_saturators() {
        let x = ring("x");
        let z = ring("z");
        let jr = join_rings(&x, &z);
        let rep = check_depth_reg_binomial(
            &jr,
            &ideal(&x, "x"),
            &MonomialIdeal::unit(&x),
            &ideal(&z, "z"),
            &MonomialIdeal::unit(&z),
            1,
            Characteristic::Zero,
        )
        .unwrap();
        assert_eq!(rep.depth_lhs, 0);
        assert!(rep.passed(), "{rep:?}");

        let a = ring("x,y");
        let b = ring("z,t");
        let jr = join_rings(&a, &b);
        let rep = check_depth_reg_binomial(
            &jr,
            &ideal(&a, "x"),
            &MonomialIdeal::unit(&a),
            &ideal(&b, "z"),
            &MonomialIdeal::unit(&b),
            1,
            Characteristic::Zero,
        )
        .unwrap();
        assert_eq!(rep.depth_lhs, 2);
        assert!(rep.passed());
    }

    #[test]
    fn deriv_star_lowers_saturated_powers() {
        let r = ring("a,b");
        let i = ideal(&r, "a^2, a*b");
        for s in 1..5 {
            assert!(check_deriv_star(&i, &ideal(&r, "a, b"), s).unwrap().passed);
            assert!(check_deriv_star(&i, &ideal(&r, "b"), s).unwrap().passed);
        }
    }

    #[test]
    fn symbolic_variant() {
        let a = ring("a,b");
        let b = ring("c,d");
        let jr = join_rings(&a, &b);
        for s in 1..=3 {
            for ch in [Characteristic::Zero, Characteristic::Prime(2)] {
                let rep =
                    check_depth_reg_symbolic(&jr, &ideal(&a, "a^2, a*b"), &ideal(&b, "c^2, c*d"), s, Notion::Ass, ch)
                        .unwrap();
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }
}
