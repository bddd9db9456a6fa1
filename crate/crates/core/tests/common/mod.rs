//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's evaluation paths.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// `q` in `(Q, 2Q]` with `q² mod Q = 1`, by scanning.
pub fn brute_roots(modulus: i128) -> Vec<i128> {
    (modulus + 1..=2 * modulus)
        .filter(|q| q * q % modulus == 1)
        .collect()
}

/// `S(Q)` by the fully naive double loop over every `a ≤ q²`.
pub fn naive_s(modulus: i128) -> Vec<(i128, i128)> {
    let mut out = Vec::new();
    for q in modulus + 1..=2 * modulus {
        for a in 1..=q * q {
            if gcd(a, q) == 1 && (a * modulus - q * q).abs() * modulus * modulus <= q * q {
                out.push((a, q));
            }
        }
    }
    out
}

/// Smallest nonnegative solution of a CRT system by exhaustive scan.
pub fn brute_crt(residues: &[i128], moduli: &[i128]) -> i128 {
    let prod: i128 = moduli.iter().product();
    (0..prod)
        .find(|x| residues.iter().zip(moduli).all(|(r, n)| x % n == *r))
        .expect("system solvable")
}

/// Möbius table for `0..=n` by a linear sieve (entry 0 unused).
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    mu[0] = 0;
    for i in 2..=n {
        if !is_comp[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            is_comp[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

pub fn brute_phi(n: i128) -> i128 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as i128
}

/// `Σ_n c_n exp(2πi·a·n/q²)`, summed left to right with the angle formed in
/// floating point.
pub fn naive_inner(coeffs: &[Complex64], offset: i128, a: i128, q: i128) -> Complex64 {
    let q2 = (q * q) as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for (i, c) in coeffs.iter().enumerate() {
        let n = (offset + 1 + i as i128) as f64;
        let angle = 2.0 * std::f64::consts::PI * (a as f64) * n / q2;
        s += c * Complex64::new(angle.cos(), angle.sin());
    }
    s
}

/// `Σ_{a mod q², (a,q)=1} |S(a)|²` by the double loop.
pub fn naive_coprime_block(coeffs: &[Complex64], offset: i128, q: i128) -> f64 {
    (1..=q * q)
        .filter(|&a| gcd(a, q) == 1)
        .map(|a| naive_inner(coeffs, offset, a, q).norm_sqr())
        .sum()
}

pub fn extremal_coeffs(modulus: i128, len: usize) -> Vec<Complex64> {
    (1..=len as i128)
        .map(|n| {
            let angle = -2.0 * std::f64::consts::PI * n as f64 / modulus as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect()
}

pub fn random_coeffs(seed: u64, len: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Largest eigenvalue of a Hermitian matrix by cyclic Jacobi rotations on its
/// real symmetric embedding `[[A, −B], [B, A]]`.
pub fn jacobi_top_eigenvalue(h: &[Vec<Complex64>]) -> f64 {
    let r = h.len();
    let n = 2 * r;
    let mut m = vec![vec![0.0f64; n]; n];
    for i in 0..r {
        for j in 0..r {
            let z = h[i][j];
            m[i][j] = z.re;
            m[i + r][j + r] = z.re;
            m[i][j + r] = -z.im;
            m[i + r][j] = z.im;
        }
    }
    let frob: f64 = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

/// `G[r,s] = Σ_{n=1}^{N} exp(2πi(θ_r − θ_s)n)` summed term by term.
pub fn naive_gram(thetas: &[(i128, i128)], len: usize) -> Vec<Vec<Complex64>> {
    thetas
        .iter()
        .map(|&(ar, qr)| {
            thetas
                .iter()
                .map(|&(as_, qs)| {
                    let num = ar * qs * qs - as_ * qr * qr;
                    let den = qr * qr * qs * qs;
                    (1..=len as i128)
                        .map(|n| {
                            let x = (num * n).rem_euclid(den) as f64 / den as f64;
                            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x)
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}
