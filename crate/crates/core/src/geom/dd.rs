//! Double description method for pointed polyhedral cones `{y : A y >= 0}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::{inverse, rref};
use super::rational::{primitive_integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DdError {
    /// The constraint matrix has rank below the dimension.
    NotPointed,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Extreme rays of `{y in Q^d : rows · y >= 0}` as primitive integer vectors,
/// in no particular order. Fails when the cone contains a line.
pub fn extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Result<Vec<Vec<BigInt>>, DdError> {
    if d == 0 {
        return Ok(Vec::new());
    }
    // Greedy choice of d independent rows for the initial simplicial cone.
    let mut basis_idx = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.iter().map(|x| Rational::from_integer(x.clone())).collect());
        if rref(&mut trial, d).len() > echelon.len() {
            echelon = trial;
            basis_idx.push(i);
            if basis_idx.len() == d {
                break;
            }
        }
    }
    if basis_idx.len() < d {
        return Err(DdError::NotPointed);
    }
    let b: Vec<Vec<Rational>> = basis_idx
        .iter()
        .map(|&i| {
            rows[i]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let inv = inverse(&b).expect("independent rows");
    let words = rows.len().div_ceil(64).max(1);
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: Vec<Rational> = (0..d).map(|i| inv[i][j].clone()).collect();
            let mut zeros = vec![0u64; words];
            for (k, &bi) in basis_idx.iter().enumerate() {
                if k != j {
                    bit_set(&mut zeros, bi);
                }
            }
            Ray {
                v: primitive_integer(&col),
                zeros,
            }
        })
        .collect();

    for (i, a) in rows.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = and(&rays[p].zeros, &rays[n].zeros);
                if (popcount(&common) as usize) + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != n && subset(&common, &r.zeros));
                if blocked {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                    .collect();
                let mut zeros = common;
                bit_set(&mut zeros, i);
                fresh.push(Ray {
                    v: primitive(v),
                    zeros,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_zero() {
                bit_set(&mut r.zeros, i);
                next.push(r);
            } else if vals[k].is_positive() {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}
