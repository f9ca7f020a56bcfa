//! Irreducible and primary decomposition of monomial ideals, and the
//! associated-prime computations built on them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{
    canonical_cmp, minimalize_exps, support, Exps, Monomial, MonomialIdeal,
    MonomialPrime, Ring,
};

/// An ideal `(x_{i1}^{a1}, ..., x_{ik}^{ak})` generated by pure powers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IrreducibleComponent {
    ring: Ring,
    powers: BTreeMap<usize, u32>,
}

impl IrreducibleComponent {
    pub fn new(ring: &Ring, powers: BTreeMap<usize, u32>) -> Result<IrreducibleComponent> {
        if powers.is_empty() || powers.values().any(|e| *e == 0) {
            return Err(Error::InvalidArgument("irreducible component needs positive powers".into()));
        }
        if powers.keys().any(|&i| i >= ring.nvars()) {
            return Err(Error::InvalidArgument("variable index out of range".into()));
        }
        Ok(IrreducibleComponent { ring: ring.clone(), powers })
    }

    fn from_power_vector(ring: &Ring, v: &[u32]) -> IrreducibleComponent {
        let powers = v.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e)).collect();
        IrreducibleComponent { ring: ring.clone(), powers }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn powers(&self) -> &BTreeMap<usize, u32> {
        &self.powers
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime::from_sorted(&self.ring, self.powers.keys().copied().collect())
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.ring.nvars();
        let gens = self
            .powers
            .iter()
            .map(|(&i, &e)| {
                let mut g = vec![0; n];
                g[i] = e;
                g
            })
            .collect();
        MonomialIdeal::from_exponents(&self.ring, gens).expect("lengths match ring")
    }
}

impl fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_ideal(), f)
    }
}

impl fmt::Debug for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a ⊆ b` for irreducible ideals given as power vectors (0 = variable absent).
fn power_vector_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || (*y > 0 && y <= x))
}

/// Keep the inclusion-minimal power vectors; these form the irredundant
/// decomposition of their intersection.
fn prune(mut comps: Vec<Exps>) -> Vec<Exps> {
    comps.sort();
    comps.dedup();
    let keep: Vec<bool> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            !comps.iter().enumerate().any(|(j, d)| j != i && power_vector_subset(d, c))
        })
        .collect();
    comps.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

type Memo = HashMap<Vec<Exps>, Vec<Exps>>;

/// Split `gens` (canonical, proper, nonzero) into irreducible components.
fn split(gens: Vec<Exps>, memo: &mut Memo) -> Vec<Exps> {
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let mixed = gens.iter().position(|g| g.iter().filter(|e| **e > 0).count() >= 2);
    let result = match mixed {
        None => {
            let mut v = vec![0; gens[0].len()];
            for g in &gens {
                let i = g.iter().position(|e| *e > 0).expect("proper ideal");
                v[i] = g[i];
            }
            vec![v]
        }
        Some(idx) => {
            let m = &gens[idx];
            let var = m.iter().position(|e| *e > 0).expect("mixed generator");
            let mut u = vec![0; m.len()];
            u[var] = m[var];
            let mut v = m.clone();
            v[var] = 0;

            let mut left = gens.clone();
            left.push(u);
            let mut right = gens.clone();
            right.push(v);
            let mut comps = split(minimalize_exps(left), memo);
            comps.extend(split(minimalize_exps(right), memo));
            prune(comps)
        }
    };
    memo.insert(gens, result.clone());
    result
}

fn irreducible_power_vectors(ideal: &MonomialIdeal) -> Result<Vec<Exps>> {
    ideal.require_proper_nonzero()?;
    let mut memo = Memo::new();
    let mut comps = split(ideal.exponents().to_vec(), &mut memo);
    comps.sort_by(|a, b| {
        support(a).len().cmp(&support(b).len()).then_with(|| support(a).cmp(&support(b))).then_with(|| canonical_cmp(a, b))
    });
    Ok(comps)
}

/// The unique irredundant decomposition into irreducible monomial ideals.
///
/// Components are ordered by their radical (size, then support) and then by
/// the canonical order of their power vectors.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    Ok(irreducible_power_vectors(ideal)?
        .iter()
        .map(|v| IrreducibleComponent::from_power_vector(ideal.ring(), v))
        .collect())
}

/// Irredundant primary decomposition with distinct radicals.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    components: BTreeMap<MonomialPrime, MonomialIdeal>,
}

impl PrimaryDecomposition {
    pub fn components(&self) -> &BTreeMap<MonomialPrime, MonomialIdeal> {
        &self.components
    }

    pub fn primes(&self) -> BTreeSet<MonomialPrime> {
        self.components.keys().cloned().collect()
    }

    pub fn get(&self, p: &MonomialPrime) -> Option<&MonomialIdeal> {
        self.components.get(p)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Intersection of the components whose prime satisfies `keep`; the
    /// empty intersection is the unit ideal of `ring`.
    pub fn intersect_where<F>(&self, ring: &Ring, mut keep: F) -> MonomialIdeal
    where
        F: FnMut(&MonomialPrime) -> bool,
    {
        self.components
            .iter()
            .filter(|(p, _)| keep(p))
            .fold(MonomialIdeal::unit(ring), |acc, (_, q)| acc.intersect(q).expect("same ring"))
    }
}

impl fmt::Display for PrimaryDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|(p, q)| format!("{p} -> {q}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for PrimaryDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn primary_decomposition(ideal: &MonomialIdeal) -> Result<PrimaryDecomposition> {
    let ring = ideal.ring();
    let mut groups: BTreeMap<MonomialPrime, MonomialIdeal> = BTreeMap::new();
    for v in irreducible_power_vectors(ideal)? {
        let comp = IrreducibleComponent::from_power_vector(ring, &v);
        let prime = comp.radical();
        let q = comp.to_ideal();
        let merged = match groups.remove(&prime) {
            Some(prev) => prev.intersect(&q)?,
            None => q,
        };
        groups.insert(prime, merged);
    }
    Ok(PrimaryDecomposition { components: groups })
}

pub fn associated_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    Ok(irreducible_power_vectors(ideal)?
        .iter()
        .map(|v| MonomialPrime::from_sorted(ideal.ring(), support(v)))
        .collect())
}

/// Inclusion-minimal members of a set of primes.
pub fn minimal_elements(primes: &BTreeSet<MonomialPrime>) -> BTreeSet<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect()
}

pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    Ok(minimal_elements(&associated_primes(ideal)?))
}

/// `⋃_{n ≤ n_max} Ass(I^n)` together with a stabilization hint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssStar {
    pub primes: BTreeSet<MonomialPrime>,
    /// `Ass(I^{n_max-1}) == Ass(I^{n_max})`. Evidence, not proof.
    pub stabilized: bool,
}

pub fn ass_star_bounded(ideal: &MonomialIdeal, n_max: u32) -> Result<AssStar> {
    ideal.require_proper_nonzero()?;
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut primes = BTreeSet::new();
    let mut power = MonomialIdeal::unit(ideal.ring());
    let mut previous = BTreeSet::new();
    let mut stabilized = false;
    for n in 1..=n_max {
        power = power.product(ideal)?;
        let ass = associated_primes(&power)?;
        if n == n_max {
            stabilized = ass == previous;
        }
        primes.extend(ass.iter().cloned());
        previous = ass;
    }
    Ok(AssStar { primes, stabilized })
}

/// Default power bound for `ass_star_bounded`: number of variables plus the
/// largest generator degree.
pub fn default_ass_star_bound(ideal: &MonomialIdeal) -> u32 {
    (ideal.ring().nvars() as u32 + ideal.max_degree()).max(2)
}

/// Whether `grade(p, A/I) = 0`, i.e. `p` lies inside some associated prime of `I`.
pub fn grade_zero(p: &MonomialPrime, ideal: &MonomialIdeal) -> Result<bool> {
    ideal.ring().check(p.ring())?;
    if p.support().is_empty() {
        return Err(Error::InvalidArgument("prime with empty support".into()));
    }
    Ok(associated_primes(ideal)?.iter().any(|q| p.is_subset(q)))
}

fn prime_of(colon: &MonomialIdeal) -> Option<MonomialPrime> {
    if colon.is_zero() || colon.is_unit() {
        return None;
    }
    let mut support = Vec::with_capacity(colon.len());
    for g in colon.exponents() {
        let s: Vec<usize> = g.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect();
        if s.len() != 1 || g[s[0]] != 1 {
            return None;
        }
        support.push(s[0]);
    }
    support.sort_unstable();
    Some(MonomialPrime::from_sorted(colon.ring(), support))
}

/// `Ass(I^{i-1} / I^i)`: primes of the form `I^i : m` with `m ∈ I^{i-1} \ I^i`.
///
/// Witnesses are searched as `m = g·d` with `g` a minimal generator of
/// `I^{i-1}` and `d` dividing the lcm of the generators of `I^i : g`. That box
/// is complete: raising an exponent of `m` past the largest exponent of that
/// variable among the generators of `I^i` leaves `I^i : m` unchanged.
pub fn ass_module_quotient(ideal: &MonomialIdeal, i: u32) -> Result<BTreeSet<MonomialPrime>> {
    ideal.require_proper_nonzero()?;
    if i == 0 {
        return Err(Error::InvalidArgument("power quotient index must be at least 1".into()));
    }
    let lower = ideal.power(i - 1);
    let upper = lower.product(ideal)?;
    let mut found = BTreeSet::new();
    for g in lower.exponents() {
        let base = upper.colon_exps(g);
        if base.is_unit() {
            continue;
        }
        let bound = base.lcm_exponents();
        for_each_divisor(&bound, |d| {
            if let Some(p) = prime_of(&base.colon_exps(d)) {
                found.insert(p);
            }
        });
    }
    Ok(found)
}

/// Visit every exponent vector `d` with `0 ≤ d ≤ bound`.
pub(crate) fn for_each_divisor<F: FnMut(&[u32])>(bound: &[u32], mut f: F) {
    let mut d = vec![0u32; bound.len()];
    loop {
        f(&d);
        let mut k = 0;
        loop {
            if k == d.len() {
                return;
            }
            if d[k] < bound[k] {
                d[k] += 1;
                break;
            }
            d[k] = 0;
            k += 1;
        }
    }
}

/// `Ass(A/(I^i : m))` for a monomial `m`; handy when cross-checking witnesses.
pub fn ass_of_colon(ideal: &MonomialIdeal, m: &Monomial) -> Result<BTreeSet<MonomialPrime>> {
    let c = ideal.colon_monomial(m)?;
    if c.is_unit() {
        return Ok(BTreeSet::new());
    }
    associated_primes(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::testutil::*;

    fn primes(r: &Ring, list: &[&[&str]]) -> BTreeSet<MonomialPrime> {
        list.iter().map(|names| MonomialPrime::from_names(r, names).unwrap()).collect()
    }

    #[test]
    fn irreducible_small_example() {
        let r = ring("a,b");
        let comps = irreducible_decomposition(&ideal(&r, "a^2, a*b")).unwrap();
        let rendered: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered, ["(a)", "(b, a^2)"]);
        let back = comps.iter().fold(MonomialIdeal::unit(&r), |acc, c| acc.intersect(&c.to_ideal()).unwrap());
        assert_eq!(back, ideal(&r, "a^2, a*b"));
        assert!(!comps[0].to_ideal().is_subset(&comps[1].to_ideal()).unwrap());
        assert!(!comps[1].to_ideal().is_subset(&comps[0].to_ideal()).unwrap());
    }

    #[test]
    fn irreducible_four_variable_example() {
        let r = ring("x,y,z,t");
        let comps = irreducible_decomposition(&ideal(&r, "x^2, x*y, z^2, z*t")).unwrap();
        let got: BTreeSet<String> = comps.iter().map(|c| c.to_ideal().to_string()).collect();
        let want: BTreeSet<String> = ["x, z", "x, z^2, t", "x^2, y, z", "x^2, y, z^2, t"]
            .iter()
            .map(|s| ideal(&r, s).to_string())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn irreducible_already_irreducible() {
        let r = ring("x");
        let comps = irreducible_decomposition(&ideal(&r, "x^3")).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].to_ideal(), ideal(&r, "x^3"));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let r = ring("x");
        assert!(irreducible_decomposition(&MonomialIdeal::zero(&r)).is_err());
        assert!(primary_decomposition(&MonomialIdeal::unit(&r)).is_err());
        assert!(associated_primes(&MonomialIdeal::unit(&r)).is_err());
    }

    #[test]
    fn primary_examples() {
        let r = ring("a,b");
        let pd = primary_decomposition(&ideal(&r, "a^2, a*b")).unwrap();
        assert_eq!(pd.to_string(), "[(a) -> (a), (a, b) -> (b, a^2)]");

        let pd = primary_decomposition(&ideal(&r, "a, b").power(2)).unwrap();
        assert_eq!(pd.len(), 1);
        assert_eq!(pd.get(&MonomialPrime::from_names(&r, &["a", "b"]).unwrap()), Some(&ideal(&r, "a,b").power(2)));

        let r = ring("x,y,z,t");
        let pd = primary_decomposition(&ideal(&r, "x^2, x*y, z^2, z*t")).unwrap();
        assert_eq!(
            pd.primes(),
            primes(&r, &[&["x", "z"], &["x", "z", "t"], &["x", "y", "z"], &["x", "y", "z", "t"]])
        );
    }

    #[test]
    fn ass_and_min_examples() {
        let r = ring("a,b");
        let i = ideal(&r, "a^2, a*b");
        assert_eq!(associated_primes(&i).unwrap(), primes(&r, &[&["a"], &["a", "b"]]));
        assert_eq!(minimal_primes(&i).unwrap(), primes(&r, &[&["a"]]));

        let r4 = ring("x,y,z,t");
        assert_eq!(minimal_primes(&ideal(&r4, "x^2, x*y, z^2, z*t")).unwrap(), primes(&r4, &[&["x", "z"]]));

        let r2 = ring("x,y");
        let p = ideal(&r2, "x, y");
        assert_eq!(associated_primes(&p).unwrap(), primes(&r2, &[&["x", "y"]]));
        assert_eq!(minimal_primes(&p).unwrap(), primes(&r2, &[&["x", "y"]]));
    }

    #[test]
    fn ass_star_examples() {
        let r = ring("a,b");
        let s = ass_star_bounded(&ideal(&r, "a^2, a*b"), 3).unwrap();
        assert_eq!(s.primes, primes(&r, &[&["a"], &["a", "b"]]));
        assert!(s.stabilized);

        let r = ring("x,y");
        let s = ass_star_bounded(&ideal(&r, "x, y"), 2).unwrap();
        assert_eq!(s.primes, primes(&r, &[&["x", "y"]]));
        assert!(s.stabilized);

        // I = (x^2y, xy^2) = (x)∩(y)∩(x^2,y^2)... primes (x), (y), (x,y)
        let s = ass_star_bounded(&ideal(&r, "x^2*y, x*y^2"), 4).unwrap();
        assert!(primes(&r, &[&["x"], &["y"], &["x", "y"]]).is_subset(&s.primes));

        assert!(ass_star_bounded(&ideal(&r, "x"), 1).is_err());
    }

    #[test]
    fn grade_zero_examples() {
        let r = ring("a,b");
        let i = ideal(&r, "a^2, a*b");
        assert!(grade_zero(&MonomialPrime::from_names(&r, &["a", "b"]).unwrap(), &i).unwrap());
        // (b) ⊆ (a,b) ∈ Ass(I)
        assert!(grade_zero(&MonomialPrime::from_names(&r, &["b"]).unwrap(), &i).unwrap());
        assert!(!grade_zero(&MonomialPrime::from_names(&r, &["b"]).unwrap(), &ideal(&r, "a")).unwrap());
        let r = ring("x");
        assert!(grade_zero(&MonomialPrime::from_names(&r, &["x"]).unwrap(), &ideal(&r, "x")).unwrap());
        assert!(grade_zero(&MonomialPrime::new(&r, vec![]).unwrap(), &ideal(&r, "x")).is_err());
    }

    #[test]
    fn power_quotient_examples() {
        let r = ring("a,b");
        assert_eq!(
            ass_module_quotient(&ideal(&r, "a^2, a*b"), 1).unwrap(),
            primes(&r, &[&["a"], &["a", "b"]])
        );
        let r1 = ring("x");
        assert_eq!(ass_module_quotient(&ideal(&r1, "x"), 2).unwrap(), primes(&r1, &[&["x"]]));
        let r2 = ring("x,y");
        assert_eq!(
            ass_module_quotient(&ideal(&r2, "x^2, x*y"), 1).unwrap(),
            primes(&r2, &[&["x"], &["x", "y"]])
        );
        assert!(ass_module_quotient(&ideal(&r2, "x"), 0).is_err());
    }

    #[test]
    fn power_quotient_matches_exhaustive_search() {
        // m ranges over every monomial of degree ≤ 6 in I^{i-1} \ I^i
        let r = ring("x,y");
        for text in ["x^2, x*y", "x^2*y, x*y^2", "x^3, y^2, x*y"] {
            let i = ideal(&r, text);
            for k in 1..=2u32 {
                let lower = i.power(k - 1);
                let upper = i.power(k);
                let mut brute = BTreeSet::new();
                for a in 0..=6u32 {
                    for b in 0..=(6 - a) {
                        let m = vec![a, b];
                        if lower.contains_exps(&m) && !upper.contains_exps(&m) {
                            if let Some(p) = prime_of(&upper.colon_exps(&m)) {
                                brute.insert(p);
                            }
                        }
                    }
                }
                assert_eq!(ass_module_quotient(&i, k).unwrap(), brute, "{text} i={k}");
            }
        }
    }

    #[test]
    fn divisor_box_enumeration() {
        let mut seen = Vec::new();
        for_each_divisor(&[1, 2], |d| seen.push(d.to_vec()));
        assert_eq!(seen.len(), 6);
        assert!(seen.contains(&vec![1, 2]));
    }
}
