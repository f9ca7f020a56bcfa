//! Exact matrix rank over the rationals or a prime field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Characteristic;

pub(crate) fn rank(rows: &[Vec<i64>], ch: Characteristic) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match ch {
        Characteristic::Zero => {
            let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
            bareiss_i128(m).unwrap_or_else(|| {
                let m = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                bareiss_big(m)
            })
        }
        Characteristic::Prime(p) => rank_mod_p(rows, p as u64),
    }
}

/// Fraction-free elimination; `None` on overflow.
fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let (nr, nc) = (m.len(), m[0].len());
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..nc {
        let Some(piv) = (r..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = m[i][j].checked_mul(m[r][c])?.checked_sub(m[i][c].checked_mul(m[r][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == nr {
            break;
        }
    }
    Some(r)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let (nr, nc) = (m.len(), m[0].len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        let Some(piv) = (r..nr).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> =
        rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let (nr, nc) = (m.len(), m[0].len());
    let mut r = 0;
    for c in 0..nc {
        let Some(piv) = (r..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        m[r][c..].iter_mut().for_each(|x| *x = *x * inv % p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}
