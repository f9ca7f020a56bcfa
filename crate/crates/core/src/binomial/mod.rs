//! Ideals in disjoint sets of variables.
//!
//! `A` and `B` are joined into `R = A ⊗ B`, ideals of either side are extended
//! to `R`, and saturated or symbolic powers of `I + J` are assembled from
//! those of `I` and `J` by the binomial expansion
//! `(I+J)^(s) = Σ_{i=0}^{s} I^(i) · J^(s-i)`.

mod checks;
mod filtration;

pub use checks::{
    check_ass_structure, check_binomial_saturated, check_binomial_symbolic, check_equality_criteria,
    check_saturated_inclusion, check_symbolic_equality_criteria, AssStructureReport, EqualityReport,
    ExpansionReport, Outcome,
};
pub use filtration::{check_filtration_identities, Filtration, FiltrationReport, NamedCheck};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, MonomialPrime, Ring};
use crate::powers::{saturated_power, symbolic_power, Notion};

/// An injective map of variables from `source` into `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingEmbedding {
    source: Ring,
    target: Ring,
    index_map: Vec<usize>,
}

impl RingEmbedding {
    pub fn new(source: &Ring, target: &Ring, index_map: Vec<usize>) -> Result<RingEmbedding> {
        if index_map.len() != source.nvars() {
            return Err(Error::InvalidArgument("index map length differs from source ring".into()));
        }
        let mut seen = HashSet::new();
        for &i in &index_map {
            if i >= target.nvars() || !seen.insert(i) {
                return Err(Error::InvalidArgument("index map must be injective into the target".into()));
            }
        }
        Ok(RingEmbedding { source: source.clone(), target: target.clone(), index_map })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    fn map_exps(&self, e: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.target.nvars()];
        for (k, &i) in e.iter().zip(&self.index_map) {
            out[i] = *k;
        }
        out
    }

    /// The extension `I·R`.
    pub fn extend(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.source.check(ideal.ring())?;
        let gens = ideal.exponents().iter().map(|g| self.map_exps(g)).collect();
        MonomialIdeal::from_exponents(&self.target, gens)
    }

    pub fn extend_prime(&self, p: &MonomialPrime) -> Result<MonomialPrime> {
        self.source.check(p.ring())?;
        MonomialPrime::new(&self.target, p.support().iter().map(|&i| self.index_map[i]).collect())
    }

    /// `P ∩ source` for a prime of the target.
    pub fn contract_prime(&self, p: &MonomialPrime) -> Result<MonomialPrime> {
        self.target.check(p.ring())?;
        let support = self
            .index_map
            .iter()
            .enumerate()
            .filter(|(_, t)| p.support().contains(t))
            .map(|(s, _)| s)
            .collect();
        MonomialPrime::new(&self.source, support)
    }
}

pub fn extend(ideal: &MonomialIdeal, emb: &RingEmbedding) -> Result<MonomialIdeal> {
    emb.extend(ideal)
}

/// `R = A ⊗ B` with its two coordinate embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinedRing {
    pub ring: Ring,
    pub left: RingEmbedding,
    pub right: RingEmbedding,
}

/// Variables of `a` followed by those of `b`; a name of `b` already taken is
/// renamed to `name_k` with the smallest free `k ≥ 1`.
pub fn join_rings(a: &Ring, b: &Ring) -> JoinedRing {
    let mut names: Vec<String> = a.variables().to_vec();
    let reserved: HashSet<&str> = a.variables().iter().chain(b.variables()).map(String::as_str).collect();
    for v in b.variables() {
        if !names.contains(v) {
            names.push(v.clone());
            continue;
        }
        let fresh = (1..)
            .map(|k| format!("{v}_{k}"))
            .find(|cand| !reserved.contains(cand.as_str()) && !names.contains(cand))
            .expect("unbounded search");
        names.push(fresh);
    }
    let ring = Ring::new(names).expect("names are distinct by construction");
    let na = a.nvars();
    let left = RingEmbedding::new(a, &ring, (0..na).collect()).expect("valid");
    let right = RingEmbedding::new(b, &ring, (na..na + b.nvars()).collect()).expect("valid");
    JoinedRing { ring, left, right }
}

impl JoinedRing {
    /// `I·R + J·R`.
    pub fn sum(&self, i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.left.extend(i)?.sum(&self.right.extend(j)?)
    }

    /// `I·R · J·R`.
    pub fn product(&self, i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.left.extend(i)?.product(&self.right.extend(j)?)
    }

    /// `p + q` for primes of the two sides.
    pub fn prime_sum(&self, p: &MonomialPrime, q: &MonomialPrime) -> Result<MonomialPrime> {
        let mut support = self.left.extend_prime(p)?.support().to_vec();
        support.extend_from_slice(self.right.extend_prime(q)?.support());
        MonomialPrime::new(&self.ring, support)
    }

    /// `Σ_{i=0}^{s} left[i] · right[s-i]` in `R`.
    pub fn binomial_sum(&self, left: &[MonomialIdeal], right: &[MonomialIdeal], s: usize) -> Result<MonomialIdeal> {
        if left.len() <= s || right.len() <= s {
            return Err(Error::InvalidArgument(format!("need {} terms on each side", s + 1)));
        }
        let mut acc = MonomialIdeal::zero(&self.ring);
        for i in 0..=s {
            acc = acc.sum(&self.product(&left[i], &right[s - i])?)?;
        }
        Ok(acc)
    }
}

fn require_nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        Err(Error::Degenerate(ideal.to_string()))
    } else {
        Ok(())
    }
}

/// `Σ_{i=0}^{s} I^(i)_K · J^(s-i)_L`, with `I^(0)_K = (1)`.
pub fn binomial_saturated(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    k: &MonomialIdeal,
    j: &MonomialIdeal,
    l: &MonomialIdeal,
    s: u32,
) -> Result<MonomialIdeal> {
    for x in [i, k, j, l] {
        require_nonzero(x)?;
    }
    if s == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let left = (0..=s).map(|t| saturated_power(i, k, t)).collect::<Result<Vec<_>>>()?;
    let right = (0..=s).map(|t| saturated_power(j, l, t)).collect::<Result<Vec<_>>>()?;
    joined.binomial_sum(&left, &right, s as usize)
}

/// `Σ_{i=0}^{s} I^(i) · J^(s-i)` for the chosen symbolic power.
pub fn binomial_symbolic(
    joined: &JoinedRing,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: u32,
    notion: Notion,
) -> Result<MonomialIdeal> {
    i.require_proper_nonzero()?;
    j.require_proper_nonzero()?;
    if s == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let left = (0..=s).map(|t| symbolic_power(i, t, notion)).collect::<Result<Vec<_>>>()?;
    let right = (0..=s).map(|t| symbolic_power(j, t, notion)).collect::<Result<Vec<_>>>()?;
    joined.binomial_sum(&left, &right, s as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::testutil::*;
    use crate::powers::symbolic_power;

    #[test]
    fn join_examples() {
        let j = join_rings(&ring("x,y"), &ring("z,t"));
        assert_eq!(j.ring.variables(), ["x", "y", "z", "t"]);
        assert_eq!(j.right.index_map(), [2, 3]);

        let j = join_rings(&ring("x"), &ring("x"));
        assert_eq!(j.ring.variables(), ["x", "x_1"]);

        let j = join_rings(&ring("a,b"), &ring("c,d"));
        assert_eq!(j.ring.variables(), ["a", "b", "c", "d"]);
    }

    #[test]
    fn join_renaming_skips_taken_suffixes() {
        let j = join_rings(&ring("x, x_1"), &ring("x"));
        assert_eq!(j.ring.variables(), ["x", "x_1", "x_2"]);
        let j = join_rings(&ring("x"), &ring("x, x_1"));
        assert_eq!(j.ring.variables(), ["x", "x_2", "x_1"]);
    }

    #[test]
    fn embedding_images_are_disjoint_and_cover() {
        let j = join_rings(&ring("a,b,c"), &ring("a,d"));
        let mut all: Vec<usize> = j.left.index_map().iter().chain(j.right.index_map()).copied().collect();
        all.sort();
        assert_eq!(all, (0..5).collect::<Vec<_>>());
        assert!(RingEmbedding::new(&ring("a,b"), &j.ring, vec![0, 0]).is_err());
    }

    #[test]
    fn extension_examples() {
        let a = ring("x,y");
        let j = join_rings(&a, &ring("z,t"));
        let e = extend(&ideal(&a, "x^2, x*y"), &j.left).unwrap();
        assert_eq!(e, ideal(&j.ring, "x^2, x*y"));
        assert!(extend(&MonomialIdeal::unit(&a), &j.left).unwrap().is_unit());
        assert!(extend(&MonomialIdeal::zero(&a), &j.left).unwrap().is_zero());
        assert!(extend(&ideal(&a, "x"), &j.right).is_err());
    }

    #[test]
    fn binomial_saturated_examples() {
        let a = ring("x,y");
        let b = ring("z,t");
        let j = join_rings(&a, &b);
        let (i, k) = (ideal(&a, "x^2, x*y"), ideal(&a, "x, y"));
        let (jj, l) = (ideal(&b, "z^2, z*t"), ideal(&b, "z, t"));
        let direct = |s: u32| {
            j.sum(&i, &jj).unwrap().power(s).saturate(&j.product(&k, &l).unwrap()).unwrap()
        };
        assert_eq!(binomial_saturated(&j, &i, &k, &jj, &l, 1).unwrap(), ideal(&j.ring, "x, z"));
        assert_eq!(binomial_saturated(&j, &i, &k, &jj, &l, 1).unwrap(), direct(1));
        assert_eq!(binomial_saturated(&j, &i, &k, &jj, &l, 2).unwrap(), ideal(&j.ring, "x^2, x*z, z^2"));
        assert_eq!(binomial_saturated(&j, &i, &k, &jj, &l, 2).unwrap(), direct(2));

        let ua = MonomialIdeal::unit(&a);
        let ub = MonomialIdeal::unit(&b);
        for s in 1..4 {
            assert_eq!(binomial_saturated(&j, &i, &ua, &jj, &ub, s).unwrap(), j.sum(&i, &jj).unwrap().power(s));
        }
    }

    #[test]
    fn binomial_symbolic_examples() {
        let a = ring("a,b");
        let b = ring("c,d");
        let j = join_rings(&a, &b);
        let i = ideal(&a, "a^2, a*b");
        let jj = ideal(&b, "c^2, c*d");
        let sum = j.sum(&i, &jj).unwrap();

        let m = binomial_symbolic(&j, &i, &jj, 2, Notion::Min).unwrap();
        assert_eq!(m, ideal(&j.ring, "a^2, a*c, c^2"));
        assert_eq!(m, symbolic_power(&sum, 2, Notion::Min).unwrap());

        let s = binomial_symbolic(&j, &i, &jj, 2, Notion::Ass).unwrap();
        assert_eq!(s, sum.power(2));
        assert_eq!(s, symbolic_power(&sum, 2, Notion::Ass).unwrap());

        let x = ring("x");
        let j = join_rings(&x, &x);
        let got = binomial_symbolic(&j, &ideal(&x, "x"), &ideal(&x, "x"), 1, Notion::Min).unwrap();
        assert_eq!(got, ideal(&j.ring, "x, x_1"));
    }

    #[test]
    fn prime_contraction_round_trip() {
        let a = ring("x,y");
        let b = ring("z");
        let j = join_rings(&a, &b);
        let p = MonomialPrime::from_names(&a, &["y"]).unwrap();
        let q = MonomialPrime::from_names(&b, &["z"]).unwrap();
        let big = j.prime_sum(&p, &q).unwrap();
        assert_eq!(big.to_string(), "(y, z)");
        assert_eq!(j.left.contract_prime(&big).unwrap(), p);
        assert_eq!(j.right.contract_prime(&big).unwrap(), q);
    }
}
