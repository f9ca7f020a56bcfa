use serde::Serialize;

use super::JoinedRing;
use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, Ring};
use crate::powers::{saturated_power, symbolic_power, Notion};

/// A finite prefix `I_0 ⊇ I_1 ⊇ … ⊇ I_top` of a multiplicative filtration
/// with `I_0 = (1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ring: Ring,
    terms: Vec<MonomialIdeal>,
}

impl Filtration {
    /// Validates every condition on the given prefix, including
    /// `I_i · I_j ⊆ I_{i+j}` whenever `i + j ≤ top`.
    pub fn new(terms: Vec<MonomialIdeal>) -> Result<Filtration> {
        let first = terms.first().ok_or_else(|| Error::NotFiltration("no terms".into()))?;
        let ring = first.ring().clone();
        if !first.is_unit() {
            return Err(Error::NotFiltration(format!("term 0 is {first}, expected (1)")));
        }
        for t in &terms {
            ring.check(t.ring())?;
        }
        for (i, w) in terms.windows(2).enumerate() {
            if !w[1].is_subset(&w[0])? {
                return Err(Error::NotFiltration(format!("term {} is not contained in term {i}", i + 1)));
            }
        }
        let top = terms.len() - 1;
        for i in 1..=top {
            for j in i..=top - i {
                if !terms[i].product(&terms[j])?.is_subset(&terms[i + j])? {
                    return Err(Error::NotFiltration(format!(
                        "product of terms {i} and {j} is not contained in term {}",
                        i + j
                    )));
                }
            }
        }
        Ok(Filtration { ring, terms })
    }

    /// `I^0, …, I^top`.
    pub fn ordinary_powers(ideal: &MonomialIdeal, top: u32) -> Result<Filtration> {
        Filtration::new((0..=top).map(|t| ideal.power(t)).collect())
    }

    /// `I^(0)_K, …, I^(top)_K`.
    pub fn saturated_powers(ideal: &MonomialIdeal, k: &MonomialIdeal, top: u32) -> Result<Filtration> {
        Filtration::new((0..=top).map(|t| saturated_power(ideal, k, t)).collect::<Result<_>>()?)
    }

    pub fn symbolic_powers(ideal: &MonomialIdeal, top: u32, notion: Notion) -> Result<Filtration> {
        Filtration::new((0..=top).map(|t| symbolic_power(ideal, t, notion)).collect::<Result<_>>()?)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[MonomialIdeal] {
        &self.terms
    }

    pub fn top(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> &MonomialIdeal {
        &self.terms[i]
    }
}

/// A named equality or inclusion and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    /// First failing instance, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl NamedCheck {
    pub(crate) fn new(name: &str, failure: Option<String>) -> NamedCheck {
        NamedCheck { name: name.into(), passed: failure.is_none(), detail: failure }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub s: usize,
    pub checks: Vec<NamedCheck>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `Σ_{i=lo}^{hi} left_i · right_{total-i}` in the joined ring.
fn partial_sum(
    joined: &JoinedRing,
    left: &Filtration,
    right: &Filtration,
    lo: usize,
    hi: usize,
    total: usize,
) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::zero(&joined.ring);
    for i in lo..=hi {
        acc = acc.sum(&joined.product(left.term(i), right.term(total - i))?)?;
    }
    Ok(acc)
}

fn first_failure<I>(cases: I) -> Result<Option<String>>
where
    I: IntoIterator<Item = Result<Option<String>>>,
{
    for c in cases {
        if let Some(msg) = c? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

fn mismatch(label: String, lhs: &MonomialIdeal, rhs: &MonomialIdeal) -> Option<String> {
    (lhs != rhs).then(|| format!("{label}: {lhs} != {rhs}"))
}

/// Checks the intersection and colon identities for filtrations `I_•`, `K_•`
/// of `A` and `J_•` of `B`, each with at least `s + 1` terms, and the colon
/// by an ideal `colon_by` of `A`.
pub fn check_filtration_identities(
    joined: &JoinedRing,
    i_f: &Filtration,
    k_f: &Filtration,
    j_f: &Filtration,
    colon_by: &MonomialIdeal,
    s: usize,
) -> Result<FiltrationReport> {
    let a = joined.left.source();
    let b = joined.right.source();
    a.check(i_f.ring())?;
    a.check(k_f.ring())?;
    a.check(colon_by.ring())?;
    b.check(j_f.ring())?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    if colon_by.is_zero() {
        return Err(Error::ColonByZero);
    }
    for f in [i_f, k_f, j_f] {
        if f.top() < s {
            return Err(Error::NotFiltration(format!("need {} terms, got {}", s + 1, f.terms.len())));
        }
    }
    let ext_a = |x: &MonomialIdeal| joined.left.extend(x);
    let ext_b = |x: &MonomialIdeal| joined.right.extend(x);
    let pairs = || (0..=s).flat_map(|i| (0..=s).map(move |j| (i, j)));

    let mut checks = Vec::new();

    let fail = first_failure(pairs().map(|(i, j)| {
        let (x, y) = (ext_a(i_f.term(i))?, ext_b(j_f.term(j))?);
        Ok(mismatch(format!("I_{i}, J_{j}"), &x.product(&y)?, &x.intersect(&y)?))
    }))?;
    checks.push(NamedCheck::new("product_equals_intersection", fail));

    let fail = first_failure(pairs().map(|(i, j)| {
        let (x, z) = (ext_a(i_f.term(i))?, ext_a(k_f.term(i))?);
        let y = ext_b(j_f.term(j))?;
        let lhs = x.sum(&y)?.intersect(&z.sum(&y)?)?;
        let rhs = x.intersect(&z)?.sum(&y)?;
        Ok(mismatch(format!("I_{i}, K_{i}, J_{j}"), &lhs, &rhs))
    }))?;
    checks.push(NamedCheck::new("intersection_of_sums", fail));

    let fail = first_failure((1..=s).map(|t| {
        let mut inner = ext_a(i_f.term(t - 1))?;
        if t >= 2 {
            inner = inner.sum(&partial_sum(joined, i_f, j_f, 0, t - 2, t)?)?;
        }
        let lhs = ext_b(j_f.term(1))?.intersect(&inner)?;
        let rhs = partial_sum(joined, i_f, j_f, 0, t - 1, t)?;
        Ok(mismatch(format!("t = {t}"), &lhs, &rhs))
    }))?;
    checks.push(NamedCheck::new("intersection_with_first_term", fail));

    let meet_terms = (0..=s)
        .map(|i| i_f.term(i).intersect(k_f.term(i)))
        .collect::<Result<Vec<_>>>()?;
    let meet = Filtration { ring: a.clone(), terms: meet_terms };
    let fail = first_failure((1..=s).map(|t| {
        let lhs = partial_sum(joined, i_f, j_f, 0, t, t)?.intersect(&partial_sum(joined, k_f, j_f, 0, t, t)?)?;
        let rhs = partial_sum(joined, &meet, j_f, 0, t, t)?;
        Ok(mismatch(format!("t = {t}"), &lhs, &rhs))
    }))?;
    checks.push(NamedCheck::new("intersection_of_binomial_sums", fail));

    let fail = first_failure(colon_by.generators().flat_map(|g| {
        (0..s).map(move |t| -> Result<Option<String>> {
            let ga = joined.left.extend(&MonomialIdeal::principal(&g))?;
            let lhs = partial_sum(joined, i_f, j_f, t, s, s)?.colon(&ga)?;
            let head = joined.product(&i_f.term(t).colon_monomial(&g)?, j_f.term(s - t))?;
            let rhs = head.sum(&partial_sum(joined, i_f, j_f, t + 1, s, s)?.colon(&ga)?)?;
            Ok((!lhs.is_subset(&rhs)?).then(|| format!("a = {g}, t = {t}: {lhs} not in {rhs}")))
        })
    }))?;
    checks.push(NamedCheck::new("colon_by_element_step", fail));

    let colon_terms = (0..=s).map(|i| i_f.term(i).colon(colon_by)).collect::<Result<Vec<_>>>()?;
    let coloned = Filtration { ring: a.clone(), terms: colon_terms };
    let lhs = partial_sum(joined, i_f, j_f, 0, s, s)?.colon(&ext_a(colon_by)?)?;
    let rhs = partial_sum(joined, &coloned, j_f, 0, s, s)?;
    checks.push(NamedCheck::new("colon_of_binomial_sum", mismatch(format!("K = {colon_by}"), &lhs, &rhs)));

    Ok(FiltrationReport { s, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::join_rings;
    use crate::monomial::testutil::*;

    #[test]
    fn validation_rejects_non_filtrations() {
        let r = ring("x,y");
        assert!(Filtration::new(vec![]).is_err());
        assert!(Filtration::new(vec![ideal(&r, "x")]).is_err());
        assert!(Filtration::new(vec![MonomialIdeal::unit(&r), ideal(&r, "x^2"), ideal(&r, "x")]).is_err());
        // descending but I_1 · I_1 = (x^2) is not inside I_2 = (x^3)
        let bad = vec![MonomialIdeal::unit(&r), ideal(&r, "x"), ideal(&r, "x^3")];
        assert!(matches!(Filtration::new(bad), Err(Error::NotFiltration(_))));
        assert!(Filtration::ordinary_powers(&ideal(&r, "x, y"), 4).is_ok());
    }

    #[test]
    fn ordinary_and_saturated_filtrations_pass() {
        let a = ring("x,y");
        let b = ring("z,t");
        let j = join_rings(&a, &b);
        let i = ideal(&a, "x^2, x*y");
        let k = ideal(&a, "x, y^2");
        let jj = ideal(&b, "z^2, z*t");
        for s in 1..=3u32 {
            let rep = check_filtration_identities(
                &j,
                &Filtration::ordinary_powers(&i, s).unwrap(),
                &Filtration::ordinary_powers(&k, s).unwrap(),
                &Filtration::ordinary_powers(&jj, s).unwrap(),
                &ideal(&a, "x, y"),
                s as usize,
            )
            .unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.checks.len(), 6);

            let m = ideal(&a, "x, y");
            let rep = check_filtration_identities(
                &j,
                &Filtration::saturated_powers(&i, &m, s).unwrap(),
                &Filtration::saturated_powers(&k, &ideal(&a, "y"), s).unwrap(),
                &Filtration::saturated_powers(&jj, &ideal(&b, "z, t"), s).unwrap(),
                &ideal(&a, "x*y, y^2"),
                s as usize,
            )
            .unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn short_filtration_is_rejected() {
        let a = ring("x");
        let b = ring("z");
        let j = join_rings(&a, &b);
        let f = Filtration::ordinary_powers(&ideal(&a, "x"), 1).unwrap();
        let g = Filtration::ordinary_powers(&ideal(&b, "z"), 1).unwrap();
        assert!(check_filtration_identities(&j, &f, &f, &g, &ideal(&a, "x"), 2).is_err());
        assert!(check_filtration_identities(&j, &f, &f, &g, &ideal(&a, "x"), 1).unwrap().passed());
    }
}
