//! Multigraded Betti numbers, depth and regularity of `R/I`.
//!
//! `β_{i,b}(R/I)` is read off the upper Koszul complex
//! `K^b(I) = { F ⊆ supp(b) squarefree : x^{b-F} ∈ I }` as
//! `dim H̃_{i-2}(K^b(I))`, where the empty face sits in dimension `-1`.
//! Only multidegrees in the lcm lattice of the generators can contribute.

mod checks;
mod rank;

pub use checks::{check_depth_reg_binomial, check_depth_reg_symbolic, check_deriv_star, DepthRegReport};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{divides, lcm, support, Monomial, MonomialIdeal, Ring};

/// An integer or one of `±∞`. Ordered `-∞ < n < +∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtendedInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtendedInt::Finite(n) => Some(n),
            _ => None,
        }
    }
}

impl From<i64> for ExtendedInt {
    fn from(n: i64) -> Self {
        ExtendedInt::Finite(n)
    }
}

impl Add for ExtendedInt {
    type Output = ExtendedInt;

    /// Infinities absorb finite values.
    ///
    /// # Panics
    /// On `+∞ + -∞`, which has no value.
    fn add(self, rhs: ExtendedInt) -> ExtendedInt {
        use ExtendedInt::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => panic!("+inf + -inf is undefined"),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl Add<i64> for ExtendedInt {
    type Output = ExtendedInt;

    fn add(self, rhs: i64) -> ExtendedInt {
        self + ExtendedInt::Finite(rhs)
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::NegInf => f.write_str("-inf"),
            ExtendedInt::Finite(n) => write!(f, "{n}"),
            ExtendedInt::PosInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtendedInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedInt::Finite(n) => s.serialize_i64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Characteristic of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Characteristic {
    Zero,
    Prime(u32),
}

impl Characteristic {
    pub fn prime(p: u32) -> Result<Characteristic> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if is_prime {
            Ok(Characteristic::Prime(p))
        } else {
            Err(Error::InvalidArgument(format!("characteristic {p} is not prime")))
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => f.write_str("0"),
            Characteristic::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Characteristic> {
        let n: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad characteristic `{s}`")))?;
        if n == 0 {
            Ok(Characteristic::Zero)
        } else {
            Characteristic::prime(n)
        }
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Characteristic::Zero => s.serialize_u32(0),
            Characteristic::Prime(p) => s.serialize_u32(*p),
        }
    }
}

/// Nonzero multigraded Betti numbers of `R/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    ideal: MonomialIdeal,
    characteristic: Characteristic,
    entries: BTreeMap<(usize, Vec<u32>), u64>,
}

impl BettiTable {
    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// The ideal `I` of the resolved quotient `R/I`.
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    pub fn get(&self, i: usize, b: &Monomial) -> u64 {
        self.entries.get(&(i, b.exponents().to_vec())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Monomial, u64)> + '_ {
        self.entries.iter().map(|((i, b), &n)| (*i, Monomial::from_exps(self.ring(), b.clone()), n))
    }

    /// `β_{i,j}` summed over multidegrees of total degree `j`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, b), n) in &self.entries {
            *out.entry((*i, b.iter().sum())).or_insert(0) += n;
        }
        out
    }

    /// `β_i` for `i = 0..=pd`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0; self.projective_dimension().map_or(0, |p| p + 1)];
        for ((i, _), n) in &self.entries {
            out[*i] += n;
        }
        out
    }

    /// `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn depth(&self) -> ExtendedInt {
        match self.projective_dimension() {
            None => ExtendedInt::PosInf,
            Some(pd) => ExtendedInt::Finite(self.ring().nvars() as i64 - pd as i64),
        }
    }

    pub fn regularity(&self) -> ExtendedInt {
        self.entries
            .keys()
            .map(|(i, b)| ExtendedInt::Finite(b.iter().sum::<u32>() as i64 - *i as i64))
            .max()
            .unwrap_or(ExtendedInt::NegInf)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("zero module");
        }
        let totals = self.totals();
        let rendered: Vec<String> = totals.iter().map(u64::to_string).collect();
        write!(f, "total: {}", rendered.join(" "))?;
        for ((i, j), n) in self.graded() {
            write!(f, "\nb[{i},{j}] = {n}")?;
        }
        Ok(())
    }
}

/// Every lcm of a nonempty subset of `gens`.
fn lcm_lattice(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = gens.iter().cloned().collect();
    let mut frontier: Vec<Vec<u32>> = seen.iter().cloned().collect();
    while let Some(m) = frontier.pop() {
        for g in gens {
            let l = lcm(&m, g);
            if !seen.contains(&l) {
                seen.insert(l.clone());
                frontier.push(l);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Reduced Betti numbers `(k, dim H̃_k)` of `K^b(I)`, skipping zeros.
fn koszul_homology(gens: &[Vec<u32>], b: &[u32], ch: Characteristic) -> Vec<(i64, u64)> {
    let local: Vec<&Vec<u32>> = gens.iter().filter(|g| divides(g, b)).collect();
    let supp = support(b);
    let m = supp.len();
    let mut is_face = vec![false; 1 << m];
    let mut c = b.to_vec();
    for (mask, slot) in is_face.iter_mut().enumerate() {
        for (bit, &v) in supp.iter().enumerate() {
            c[v] = b[v] - (mask >> bit & 1) as u32;
        }
        *slot = local.iter().any(|g| divides(g, &c));
    }
    if !is_face[0] {
        return Vec::new();
    }
    // faces grouped by cardinality, indexed for matrix rows
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    let mut index = vec![usize::MAX; 1 << m];
    for mask in 0..1usize << m {
        if is_face[mask] {
            let k = mask.count_ones() as usize;
            index[mask] = by_size[k].len();
            by_size[k].push(mask);
        }
    }
    // rank of the boundary from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; m + 2];
    for k in 1..=m {
        if by_size[k].is_empty() {
            break;
        }
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|&face| {
                let mut row = vec![0i64; by_size[k - 1].len()];
                let mut sign = 1;
                for bit in 0..m {
                    if face >> bit & 1 == 1 {
                        row[index[face ^ (1 << bit)]] = sign;
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        ranks[k] = rank::rank(&rows, ch);
    }
    (0..=m)
        .filter_map(|k| {
            let h = by_size[k].len() - ranks[k] - ranks[k + 1];
            (h > 0).then_some((k as i64 - 1, h as u64))
        })
        .collect()
}

/// Multigraded Betti numbers of `R/I`. The unit ideal gives the empty table.
pub fn betti_table(ideal: &MonomialIdeal, ch: Characteristic) -> BettiTable {
    let mut entries = BTreeMap::new();
    let ring = ideal.ring();
    if !ideal.is_unit() {
        entries.insert((0, vec![0; ring.nvars()]), 1);
    }
    if ideal.is_proper_nonzero() {
        let gens = ideal.exponents();
        let lattice = lcm_lattice(gens);
        let found: Vec<((usize, Vec<u32>), u64)> = lattice
            .par_iter()
            .flat_map_iter(|b| {
                koszul_homology(gens, b, ch)
                    .into_iter()
                    .map(move |(k, h)| (((k + 2) as usize, b.clone()), h))
            })
            .collect();
        entries.extend(found);
    }
    BettiTable { ideal: ideal.clone(), characteristic: ch, entries }
}

pub fn projective_dimension(ideal: &MonomialIdeal, ch: Characteristic) -> Option<usize> {
    betti_table(ideal, ch).projective_dimension()
}

/// `depth R/I`; `+∞` for `I = (1)`.
pub fn depth_quotient(ideal: &MonomialIdeal, ch: Characteristic) -> ExtendedInt {
    betti_table(ideal, ch).depth()
}

/// `reg R/I`; `-∞` for `I = (1)`.
pub fn reg_quotient(ideal: &MonomialIdeal, ch: Characteristic) -> ExtendedInt {
    betti_table(ideal, ch).regularity()
}

/// `(f/x_i : f ∈ I a monomial, x_i | f)`.
pub fn deriv_star(ideal: &MonomialIdeal) -> MonomialIdeal {
    if ideal.is_unit() && ideal.ring().nvars() > 0 {
        return ideal.clone();
    }
    let mut out = Vec::new();
    for g in ideal.exponents() {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                let mut q = g.clone();
                q[i] -= 1;
                out.push(q);
            }
        }
    }
    MonomialIdeal::from_exps(ideal.ring(), crate::monomial::minimalize_exps(out))
}

impl PartialOrd<i64> for ExtendedInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&ExtendedInt::Finite(*other)))
    }
}

impl PartialEq<i64> for ExtendedInt {
    fn eq(&self, other: &i64) -> bool {
        *self == ExtendedInt::Finite(*other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::testutil::*;

    const Q: Characteristic = Characteristic::Zero;

    #[test]
    fn principal_ideal() {
        let r = ring("x");
        let t = betti_table(&ideal(&r, "x"), Q);
        assert_eq!(t.totals(), [1, 1]);
        assert_eq!(t.get(1, &mono(&r, "x")), 1);
        assert_eq!(t.projective_dimension(), Some(1));
    }

    #[test]
    fn triangle() {
        let r = ring("x,y,z");
        let t = betti_table(&ideal(&r, "x*y, x*z, y*z"), Q);
        assert_eq!(t.totals(), [1, 3, 2]);
        assert_eq!(t.projective_dimension(), Some(2));
        assert_eq!(t.get(2, &mono(&r, "x*y*z")), 2);
    }

    #[test]
    fn complete_intersection() {
        let r = ring("x,y,z,t");
        let i = ideal(&r, "x, z");
        let t = betti_table(&i, Q);
        assert_eq!(t.totals(), [1, 2, 1]);
        assert_eq!(depth_quotient(&i, Q), 2);
        assert_eq!(reg_quotient(&i, Q), 0);
    }

    #[test]
    fn depth_and_reg_examples() {
        let r = ring("a,b");
        assert_eq!(depth_quotient(&ideal(&r, "a"), Q), 1);
        assert_eq!(reg_quotient(&ideal(&r, "a"), Q), 0);
        let r4 = ring("a,b,c,d");
        let sq = ideal(&r4, "a, c").power(2);
        assert_eq!(depth_quotient(&sq, Q), 2);
        assert_eq!(reg_quotient(&sq, Q), 1);
        assert_eq!(depth_quotient(&MonomialIdeal::unit(&r), Q), ExtendedInt::PosInf);
        assert_eq!(reg_quotient(&MonomialIdeal::unit(&r), Q), ExtendedInt::NegInf);
        assert_eq!(depth_quotient(&MonomialIdeal::zero(&r), Q), 2);
        assert_eq!(reg_quotient(&MonomialIdeal::zero(&r), Q), 0);
    }

    #[test]
    fn characteristic_dependence_of_the_projective_plane() {
        // Stanley-Reisner ideal of the six-vertex triangulation of RP^2
        let r = ring("a,b,c,d,e,f");
        let i = ideal(&r, "a*b*c, a*b*e, a*c*d, a*d*f, a*e*f, b*c*f, b*d*e, b*d*f, c*d*e, c*e*f");
        let q = betti_table(&i, Q);
        let two = betti_table(&i, Characteristic::Prime(2));
        assert_ne!(q.totals(), two.totals());
        assert_eq!(q.projective_dimension(), Some(3));
        assert_eq!(two.projective_dimension(), Some(4));
    }

    #[test]
    fn extended_arithmetic() {
        use ExtendedInt::*;
        assert_eq!(PosInf + 3, PosInf);
        assert_eq!(NegInf + Finite(-2), NegInf);
        assert_eq!(Finite(2) + Finite(3), 5);
        assert!(NegInf < Finite(i64::MIN) && Finite(i64::MAX) < PosInf);
        assert_eq!(serde_json::to_string(&PosInf).unwrap(), "\"+inf\"");
        assert_eq!(serde_json::to_string(&Finite(4)).unwrap(), "4");
    }

    #[test]
    #[should_panic]
    fn opposite_infinities_do_not_add() {
        let _ = ExtendedInt::PosInf + ExtendedInt::NegInf;
    }

    #[test]
    fn deriv_star_examples() {
        let r = ring("a,b");
        assert_eq!(deriv_star(&ideal(&r, "a^2, a*b")), ideal(&r, "a, b"));
        assert!(deriv_star(&ideal(&r, "a")).is_unit());
        assert!(deriv_star(&MonomialIdeal::zero(&r)).is_zero());
        assert!(deriv_star(&MonomialIdeal::unit(&r)).is_unit());
    }

    #[test]
    fn deriv_star_matches_definition_on_all_small_monomials() {
        let r = ring("a,b,c");
        let i = ideal(&r, "a^2*b, b*c^2, a*c");
        let d = deriv_star(&i);
        // every f/x_i with f ∈ I of degree ≤ 5 lies in d, and each generator of d arises that way
        let mut reached = Vec::new();
        crate::decomposition::for_each_divisor(&[5, 5, 5], |f| {
            if f.iter().sum::<u32>() <= 5 && i.contains_exps(f) {
                for v in 0..3 {
                    if f[v] > 0 {
                        let mut q = f.to_vec();
                        q[v] -= 1;
                        assert!(d.contains_exps(&q));
                        reached.push(q);
                    }
                }
            }
        });
        for g in d.exponents() {
            assert!(reached.contains(g));
        }
    }

    #[test]
    fn characteristic_parsing() {
        assert_eq!("0".parse::<Characteristic>().unwrap(), Characteristic::Zero);
        assert_eq!("7".parse::<Characteristic>().unwrap(), Characteristic::Prime(7));
        assert!("4".parse::<Characteristic>().is_err());
        assert!("x".parse::<Characteristic>().is_err());
    }
}
