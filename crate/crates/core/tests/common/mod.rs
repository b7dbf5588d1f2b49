//! Helpers shared by the integration tests: random quivers and brute-force
//! reference computations that avoid the library's linear algebra.

#![allow(dead_code)]

use proptest::prelude::*;
use ribbon_core::fd::FdAlgebra;
use ribbon_core::field::{Fp, PrimeField};
use ribbon_core::quiver::{Arrow, GentleQuiver, VertexId};

/// Arrow `k` starts at vertex `k / 2`; targets follow from `σ`, so every
/// permutation gives a complete gentle quiver.
pub fn quiver_from_sigma(sigma: Vec<usize>) -> GentleQuiver {
    let arrows = (0..sigma.len())
        .map(|k| Arrow { name: format!("r{k:02}"), source: VertexId(k / 2), target: VertexId(sigma[k] / 2) })
        .collect();
    let vertices = (0..sigma.len() / 2).map(|v| format!("v{v}")).collect();
    GentleQuiver::from_parts("random".into(), vertices, arrows, sigma).expect("valid by construction")
}

pub fn arb_quiver(max_vertices: usize) -> impl Strategy<Value = GentleQuiver> {
    (1..=max_vertices)
        .prop_flat_map(|n| Just((0..2 * n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(quiver_from_sigma)
}

/// Determinant mod `p` by plain elimination on `u64`.
pub fn det_mod_p(p: u64, mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    let inv = |x: u64| {
        let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_multiple_of(p)) else { return 0 };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        let ic = inv(m[c][c]);
        for r in c + 1..n {
            let f = m[r][c] * ic % p;
            if f != 0 {
                for k in c..n {
                    m[r][k] = (m[r][k] + p * p - f * m[c][k] % p) % p;
                }
            }
        }
    }
    det
}

/// Rank of an integer matrix by fraction-free elimination on `i128`.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(piv, rank);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..ncols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Tries every linear form on a small algebra over `GF(p)`; `None` when the
/// search space exceeds `cap`.
pub fn brute_force_symmetric(alg: &FdAlgebra<PrimeField>, cap: u64) -> Option<bool> {
    let p = alg.field().modulus();
    let n = alg.dim();
    if p.checked_pow(n as u32)? > cap {
        return None;
    }
    let value = |form: &[u64], i: usize, j: usize| -> u64 {
        alg.product(i, j).iter().fold(0, |acc, (k, c): &(usize, Fp)| (acc + form[*k] * c.value()) % p)
    };
    let mut form = vec![0u64; n];
    loop {
        let mut k = 0;
        while k < n {
            form[k] += 1;
            if form[k] < p {
                break;
            }
            form[k] = 0;
            k += 1;
        }
        if k == n {
            return Some(false);
        }
        let symmetric = (0..n).all(|i| (0..n).all(|j| value(&form, i, j) == value(&form, j, i)));
        if symmetric {
            let gram = (0..n).map(|i| (0..n).map(|j| value(&form, i, j)).collect()).collect();
            if det_mod_p(p, gram) != 0 {
                return Some(true);
            }
        }
    }
}
