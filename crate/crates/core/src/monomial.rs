//! Monomials and monomial ideals over a polynomial ring `k[x_1, ..., x_n]`.
//!
//! Coefficients never appear: a monomial is its exponent vector and a monomial
//! ideal is its minimal generating set. Every ideal is kept in canonical form,
//! an antichain under divisibility sorted by total degree and then by
//! descending lexicographic order of exponents, so structural equality is
//! ideal equality.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Raw exponent vector. Length always matches the owning ring.
pub(crate) type Exps = Vec<u32>;

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn mul(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a / gcd(a, b)`, the generator of `(a) : b`.
pub(crate) fn quotient(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x.saturating_sub(*y)).collect()
}

pub(crate) fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub(crate) fn canonical_cmp(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| b.cmp(a))
}

/// Reduce a list of exponent vectors to its sorted divisibility antichain.
pub(crate) fn minimalize_exps(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort_by(|a, b| canonical_cmp(a, b));
    gens.dedup();
    let mut kept: Vec<Exps> = Vec::with_capacity(gens.len());
    for g in gens {
        // a proper divisor has strictly smaller degree, so it is already kept
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept
}

/// An ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring { vars: vars.into() })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub(crate) fn check(&self, other: &Ring) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.vars.join(", "),
                right: other.vars.join(", "),
            })
        }
    }

    pub(crate) fn render_exps(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(self.vars.iter())
            .filter(|(k, _)| **k > 0)
            .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.vars.join(", "))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.vars.join(", "))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    ring: Ring,
    exps: Exps,
}

impl Monomial {
    pub fn new(ring: &Ring, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != ring.nvars() {
            return Err(Error::Arity { expected: ring.nvars(), got: exps.len() });
        }
        Ok(Monomial { ring: ring.clone(), exps })
    }

    pub(crate) fn from_exps(ring: &Ring, exps: Exps) -> Monomial {
        debug_assert_eq!(exps.len(), ring.nvars());
        Monomial { ring: ring.clone(), exps }
    }

    pub fn one(ring: &Ring) -> Monomial {
        Monomial { ring: ring.clone(), exps: vec![0; ring.nvars()] }
    }

    /// `x_i^e`.
    pub fn var_power(ring: &Ring, index: usize, e: u32) -> Result<Monomial> {
        if index >= ring.nvars() {
            return Err(Error::InvalidArgument(format!("variable index {index} out of range")));
        }
        let mut exps = vec![0; ring.nvars()];
        exps[index] = e;
        Ok(Monomial { ring: ring.clone(), exps })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        degree(&self.exps)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    /// Indices of the variables that divide this monomial.
    pub fn support(&self) -> Vec<usize> {
        support(&self.exps)
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.ring.check(&other.ring)?;
        Ok(divides(&self.exps, &other.exps))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.ring.check(&other.ring)?;
        Ok(Monomial::from_exps(&self.ring, mul(&self.exps, &other.exps)))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.ring.check(&other.ring)?;
        Ok(Monomial::from_exps(&self.ring, lcm(&self.exps, &other.exps)))
    }
}

pub(crate) fn support(e: &[u32]) -> Vec<usize> {
    e.iter().enumerate().filter(|(_, k)| **k > 0).map(|(i, _)| i).collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.render_exps(&self.exps))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial ideal in canonical form.
///
/// The zero ideal has no generators; the unit ideal has the single generator 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Ring,
    gens: Vec<Exps>,
}

impl MonomialIdeal {
    pub fn zero(ring: &Ring) -> MonomialIdeal {
        MonomialIdeal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Ring) -> MonomialIdeal {
        MonomialIdeal { ring: ring.clone(), gens: vec![vec![0; ring.nvars()]] }
    }

    pub fn principal(m: &Monomial) -> MonomialIdeal {
        MonomialIdeal { ring: m.ring.clone(), gens: vec![m.exps.clone()] }
    }

    /// The ideal generated by the given variables.
    pub fn variables(ring: &Ring, indices: &[usize]) -> MonomialIdeal {
        let gens = indices
            .iter()
            .map(|&i| {
                let mut e = vec![0; ring.nvars()];
                e[i] = 1;
                e
            })
            .collect();
        MonomialIdeal::from_exps(ring, gens)
    }

    /// Canonical form of the ideal generated by `gens`.
    pub fn minimalize<I>(ring: &Ring, gens: I) -> Result<MonomialIdeal>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut raw = Vec::new();
        for m in gens {
            ring.check(&m.ring)?;
            raw.push(m.exps);
        }
        Ok(MonomialIdeal::from_exps(ring, raw))
    }

    /// Build from raw exponent vectors, checking their length.
    pub fn from_exponents(ring: &Ring, gens: Vec<Vec<u32>>) -> Result<MonomialIdeal> {
        if let Some(bad) = gens.iter().find(|g| g.len() != ring.nvars()) {
            return Err(Error::Arity { expected: ring.nvars(), got: bad.len() });
        }
        Ok(MonomialIdeal::from_exps(ring, gens))
    }

    pub(crate) fn from_exps(ring: &Ring, gens: Vec<Exps>) -> MonomialIdeal {
        MonomialIdeal { ring: ring.clone(), gens: minimalize_exps(gens) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Minimal generators as exponent vectors, in canonical order.
    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn generators(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.gens.iter().map(|g| Monomial::from_exps(&self.ring, g.clone()))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|e| *e == 0)
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub(crate) fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_proper_nonzero() {
            Ok(())
        } else {
            Err(Error::Degenerate(self.to_string()))
        }
    }

    pub(crate) fn contains_exps(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.ring.check(&m.ring)?;
        Ok(self.contains_exps(&m.exps))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> Result<bool> {
        self.ring.check(&other.ring)?;
        Ok(self.gens.iter().all(|g| other.contains_exps(g)))
    }

    pub fn max_exponent(&self) -> u32 {
        self.gens.iter().flat_map(|g| g.iter().copied()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| degree(g)).max().unwrap_or(0)
    }

    /// Exponentwise maximum over the generators.
    pub fn lcm_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.nvars()];
        for g in &self.gens {
            for (o, e) in out.iter_mut().zip(g) {
                *o = (*o).max(*e);
            }
        }
        out
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.ring.check(&other.ring)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal::from_exps(&self.ring, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.ring.check(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(mul(a, b));
            }
        }
        Ok(MonomialIdeal::from_exps(&self.ring, gens))
    }

    /// `I^s`, with `I^0 = (1)`.
    pub fn power(&self, s: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(&self.ring);
        for _ in 0..s {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.ring.check(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(lcm(a, b));
            }
        }
        Ok(MonomialIdeal::from_exps(&self.ring, gens))
    }

    /// `I : (m)`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.ring.check(&m.ring)?;
        Ok(self.colon_exps(&m.exps))
    }

    pub(crate) fn colon_exps(&self, m: &[u32]) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| quotient(g, m)).collect();
        MonomialIdeal::from_exps(&self.ring, gens)
    }

    /// `I : K`, the intersection of `I : (g)` over the generators `g` of `K`.
    pub fn colon(&self, k: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.ring.check(&k.ring)?;
        if k.is_zero() {
            return Err(Error::ColonByZero);
        }
        let mut parts = k.gens.iter().map(|g| self.colon_exps(g));
        let first = parts.next().expect("nonzero ideal has a generator");
        Ok(parts.fold(first, |acc, p| acc.intersect(&p).expect("same ring")))
    }

    /// `I : K^∞`, computed as the fixpoint of `J ↦ J : K` starting at `I`.
    pub fn saturate(&self, k: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.ring.check(&k.ring)?;
        if k.is_zero() {
            return Err(Error::ColonByZero);
        }
        // every primary component of I over a prime containing K contains
        // p^((e-1)n+1) with e the largest exponent of I, so K^(en) already kills it
        let cap = (self.max_exponent() as usize) * self.ring.nvars() + 2;
        let mut current = self.clone();
        for _ in 0..cap {
            let next = current.colon(k)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::SaturationCap(cap))
    }

    pub fn radical(&self) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().map(|e| u32::from(*e > 0)).collect())
            .collect();
        MonomialIdeal::from_exps(&self.ring, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.render_exps(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A prime generated by a subset of the variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    ring: Ring,
    support: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(ring: &Ring, mut support: Vec<usize>) -> Result<MonomialPrime> {
        support.sort_unstable();
        support.dedup();
        if support.last().is_some_and(|&i| i >= ring.nvars()) {
            return Err(Error::InvalidArgument("prime support out of range".into()));
        }
        Ok(MonomialPrime { ring: ring.clone(), support })
    }

    pub(crate) fn from_sorted(ring: &Ring, support: Vec<usize>) -> MonomialPrime {
        MonomialPrime { ring: ring.clone(), support }
    }

    /// The prime whose generators are the variables in `names`.
    pub fn from_names(ring: &Ring, names: &[&str]) -> Result<MonomialPrime> {
        let mut support = Vec::with_capacity(names.len());
        for n in names {
            support.push(
                ring.index_of(n)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{n}`")))?,
            );
        }
        MonomialPrime::new(ring, support)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `self ⊆ other` as ideals.
    pub fn is_subset(&self, other: &MonomialPrime) -> bool {
        self.support.iter().all(|i| other.support.binary_search(i).is_ok())
    }

    /// Whether the monomial with these exponents lies in the prime.
    pub(crate) fn contains_exps(&self, m: &[u32]) -> bool {
        self.support.iter().any(|&i| m[i] > 0)
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::variables(&self.ring, &self.support)
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support
            .len()
            .cmp(&other.support.len())
            .then_with(|| self.support.cmp(&other.support))
            .then_with(|| self.ring.vars.cmp(&other.ring.vars))
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("(0)");
        }
        let names: Vec<&str> = self.support.iter().map(|&i| self.ring.vars[i].as_str()).collect();
        write!(f, "({})", names.join(", "))
    }
}

impl fmt::Debug for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    pub fn ring(vars: &str) -> Ring {
        Ring::new(vars.split(',').map(|v| v.trim().to_string())).unwrap()
    }

    /// Parse a monomial like `x^2*y` or `1`.
    pub fn mono(r: &Ring, text: &str) -> Monomial {
        let mut exps = vec![0; r.nvars()];
        let text = text.trim();
        if text != "1" {
            for factor in text.split('*') {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n.trim(), e.trim().parse::<u32>().unwrap()),
                    None => (factor.trim(), 1),
                };
                exps[r.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"))] += e;
            }
        }
        Monomial::new(r, exps).unwrap()
    }

    /// Parse `x^2, x*y` (no parentheses); empty string is the zero ideal.
    pub fn ideal(r: &Ring, text: &str) -> MonomialIdeal {
        let text = text.trim();
        if text.is_empty() {
            return MonomialIdeal::zero(r);
        }
        MonomialIdeal::minimalize(r, text.split(',').map(|m| mono(r, m))).unwrap()
    }
}
