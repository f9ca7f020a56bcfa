//! Oracles written against raw exponent vectors, sharing no code with the kernel.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Exps = Vec<u32>;

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Minimal generators, sorted.
pub fn minimalize(gens: &[Exps]) -> Vec<Exps> {
    let set: BTreeSet<Exps> = gens.iter().cloned().collect();
    let all: Vec<Exps> = set.into_iter().collect();
    all.iter()
        .filter(|g| !all.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect()
}

pub fn member(gens: &[Exps], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

pub fn product(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    minimalize(&out)
}

/// `I^s` with `I^0 = (1)` in `n` variables.
pub fn power(gens: &[Exps], n: usize, s: u32) -> Vec<Exps> {
    let mut acc = vec![vec![0; n]];
    for _ in 0..s {
        acc = product(&acc, gens);
    }
    acc
}

/// `I : m` for a monomial `m`.
pub fn colon_monomial(gens: &[Exps], m: &[u32]) -> Vec<Exps> {
    let q: Vec<Exps> = gens.iter().map(|g| g.iter().zip(m).map(|(x, y)| x.saturating_sub(*y)).collect()).collect();
    minimalize(&q)
}

/// The support of `gens` if it is generated by distinct variables.
pub fn as_prime(gens: &[Exps]) -> Option<BTreeSet<usize>> {
    let mut support = BTreeSet::new();
    for g in gens {
        let nz: Vec<(usize, u32)> = g.iter().copied().enumerate().filter(|(_, e)| *e > 0).collect();
        match nz.as_slice() {
            [(v, 1)] => {
                support.insert(*v);
            }
            _ => return None,
        }
    }
    (!support.is_empty()).then_some(support)
}

/// All `m` with `0 ≤ m ≤ bound` componentwise.
pub fn box_points(bound: &[u32]) -> Vec<Exps> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out.into_iter().flat_map(|p: Exps| (0..=b).map(move |e| [p.clone(), vec![e]].concat())).collect();
    }
    out
}

/// Primes `(I^i : m)` over every monomial `m ∈ I^{i-1} \ I^i`.
///
/// Colons and both memberships only see `m` capped at the lcm of the
/// generators of `I^{i-1}` and `I^i`, so the box up to that lcm is complete.
pub fn ass_of_power_quotient(gens: &[Exps], n: usize, i: u32) -> BTreeSet<BTreeSet<usize>> {
    let lower = power(gens, n, i - 1);
    let upper = power(gens, n, i);
    let bound = upper.iter().chain(&lower).fold(vec![0; n], |acc, g| lcm(&acc, g));
    box_points(&bound)
        .into_iter()
        .filter(|m| member(&lower, m) && !member(&upper, m))
        .filter_map(|m| as_prime(&colon_monomial(&upper, &m)))
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank by row reduction, over the rationals (`p = 0`) or `F_p`.
pub fn rank(mut rows: Vec<Vec<i128>>, p: i128) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let normalize = |row: &mut Vec<i128>| {
        if p > 0 {
            row.iter_mut().for_each(|x| *x = x.rem_euclid(p));
        } else {
            let g = row.iter().fold(0, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
    };
    rows.iter_mut().for_each(normalize);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, pivot);
        let top = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&top) {
                    *x = *x * top[c] - f * y;
                }
                normalize(row);
            }
        }
        r += 1;
    }
    r
}

/// Multigraded Betti numbers of `R/I` from the Taylor complex tensored with
/// the field: at multidegree `b`, the faces are generator subsets with lcm
/// exactly `b`, and a boundary term survives only when dropping a generator
/// keeps the lcm.
pub fn taylor_betti(gens: &[Exps], n: usize, p: i128) -> BTreeMap<(usize, Exps), u64> {
    let k = gens.len();
    assert!(k <= 12);
    let lcm_of = |mask: usize| (0..k).filter(|j| mask >> j & 1 == 1).fold(vec![0; n], |acc, j| lcm(&acc, &gens[j]));
    let mut by_degree: BTreeMap<Exps, Vec<usize>> = BTreeMap::new();
    for mask in 0..1usize << k {
        by_degree.entry(lcm_of(mask)).or_default().push(mask);
    }
    let mut out = BTreeMap::new();
    for (b, masks) in by_degree {
        let size = |i: usize| masks.iter().filter(|m| m.count_ones() as usize == i).count();
        // rank of the boundary from size-i faces to size-(i-1) faces at b
        let boundary_rank = |i: usize| -> usize {
            if i == 0 || i > k {
                return 0;
            }
            let src: Vec<usize> = masks.iter().copied().filter(|m| m.count_ones() as usize == i).collect();
            let dst: Vec<usize> = masks.iter().copied().filter(|m| m.count_ones() as usize == i - 1).collect();
            if src.is_empty() || dst.is_empty() {
                return 0;
            }
            let rows = src
                .iter()
                .map(|&f| {
                    let mut row = vec![0i128; dst.len()];
                    let mut sign = 1;
                    for j in 0..k {
                        if f >> j & 1 == 1 {
                            if let Some(pos) = dst.iter().position(|&d| d == f ^ (1 << j)) {
                                row[pos] = sign;
                            }
                            sign = -sign;
                        }
                    }
                    row
                })
                .collect();
            rank(rows, p)
        };
        for i in 0..=k {
            let h = size(i) as i64 - boundary_rank(i) as i64 - boundary_rank(i + 1) as i64;
            if h > 0 {
                out.insert((i, b.clone()), h as u64);
            }
        }
    }
    out
}

/// `"a^2*b"` as an exponent vector over `vars`; `"1"` is the unit monomial.
pub fn parse_monomial(vars: &[&str], text: &str) -> Exps {
    let mut e = vec![0; vars.len()];
    let text = text.trim();
    if text == "1" {
        return e;
    }
    for factor in text.split('*') {
        let (name, pow) = match factor.split_once('^') {
            Some((v, p)) => (v.trim(), p.trim().parse().expect("exponent")),
            None => (factor.trim(), 1),
        };
        let v = vars.iter().position(|x| *x == name).unwrap_or_else(|| panic!("unknown variable {name}"));
        e[v] += pow;
    }
    e
}

pub fn ring(vars: &[&str]) -> idealkit::Ring {
    idealkit::Ring::new(vars.iter().copied()).unwrap()
}

/// Comma-separated monomials.
pub fn ideal(r: &idealkit::Ring, text: &str) -> idealkit::MonomialIdeal {
    let vars: Vec<&str> = r.variables().iter().map(String::as_str).collect();
    let gens = text.split(',').map(|m| parse_monomial(&vars, m)).collect();
    idealkit::MonomialIdeal::from_exponents(r, gens).unwrap()
}
