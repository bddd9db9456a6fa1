//! Exact integer number theory: odd primes, odd primorials, the Chinese
//! remainder theorem, the Möbius function, and square roots of unity modulo
//! an odd primorial.
//!
//! All exact arithmetic is carried out in `i128`. Products that could leave
//! that range use checked operations and surface [`Error::Overflow`].

use crate::error::{domain, Error, Result};
use num_integer::Integer;

/// The product `Q = p_1 ⋯ p_m` of the first `m` odd primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPrimorial {
    m: usize,
    primes: Vec<i128>,
    modulus: i128,
}

impl OddPrimorial {
    pub fn m(&self) -> usize {
        self.m
    }

    /// The first `m` odd primes, ascending.
    pub fn primes(&self) -> &[i128] {
        &self.primes
    }

    /// `Q`, the product of [`primes`](Self::primes).
    pub fn modulus(&self) -> i128 {
        self.modulus
    }

    /// `N = Q³/9`, exact because `3 | Q`.
    pub fn cube_ninth(&self) -> Result<i128> {
        let cube = cube(self.modulus)?;
        debug_assert_eq!(cube % 9, 0);
        Ok(cube / 9)
    }
}

pub(crate) fn cube(x: i128) -> Result<i128> {
    x.checked_mul(x)
        .and_then(|s| s.checked_mul(x))
        .ok_or(Error::Overflow("Q³"))
}

fn sieve_primes(bound: usize) -> Vec<usize> {
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for n in 2..=bound {
        if composite[n] {
            continue;
        }
        out.push(n);
        let mut k = n * n;
        while k <= bound {
            composite[k] = true;
            k += n;
        }
    }
    out
}

/// The `m` smallest odd primes in increasing order.
///
/// The sieve bound starts small and doubles until enough primes are found.
pub fn first_odd_primes(m: usize) -> Result<Vec<i128>> {
    if m == 0 {
        return Err(domain("m must be at least 1"));
    }
    let mut bound = 32usize;
    loop {
        let odd: Vec<i128> = sieve_primes(bound)
            .into_iter()
            .filter(|&p| p != 2)
            .take(m)
            .map(|p| p as i128)
            .collect();
        if odd.len() == m {
            return Ok(odd);
        }
        bound = bound.checked_mul(2).ok_or(Error::Overflow("prime sieve bound"))?;
    }
}

/// Builds `Q = 3·5·7⋯p_m`, reporting overflow of the exact-integer width.
pub fn odd_primorial(m: usize) -> Result<OddPrimorial> {
    let primes = first_odd_primes(m)?;
    let modulus = primes
        .iter()
        .try_fold(1i128, |acc, &p| acc.checked_mul(p))
        .ok_or(Error::Overflow("odd primorial"))?;
    Ok(OddPrimorial { m, primes, modulus })
}

/// Inverse of `x` modulo `n`, if it exists.
pub fn mod_inverse(x: i128, n: i128) -> Option<i128> {
    let g = x.rem_euclid(n).extended_gcd(&n);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n))
}

/// Solves `x ≡ residues[i] (mod moduli[i])` for pairwise coprime moduli.
///
/// Returns `(x, M)` with `0 ≤ x < M = ∏ moduli`.
pub fn crt_combine(residues: &[i128], moduli: &[i128]) -> Result<(i128, i128)> {
    if residues.len() != moduli.len() {
        return Err(domain("residues and moduli differ in length"));
    }
    if moduli.is_empty() {
        return Err(domain("at least one modulus is required"));
    }
    if let Some(&bad) = moduli.iter().find(|&&n| n < 1) {
        return Err(domain(format!("modulus {bad} is not positive")));
    }
    for (i, &a) in moduli.iter().enumerate() {
        for &b in &moduli[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::NotCoprime(a, b));
            }
        }
    }

    let mut x = 0i128;
    let mut modulus = 1i128;
    for (&r, &n) in residues.iter().zip(moduli) {
        // x + modulus·t ≡ r (mod n)
        let inv = mod_inverse(modulus, n).expect("coprimality checked above");
        let t = mul_mod((r - x).rem_euclid(n), inv, n)?;
        let step = modulus.checked_mul(t).ok_or(Error::Overflow("CRT lift"))?;
        x = x.checked_add(step).ok_or(Error::Overflow("CRT lift"))?;
        modulus = modulus.checked_mul(n).ok_or(Error::Overflow("CRT modulus"))?;
        x = x.rem_euclid(modulus);
    }
    Ok((x, modulus))
}

fn mul_mod(a: i128, b: i128, n: i128) -> Result<i128> {
    a.checked_mul(b)
        .map(|p| p.rem_euclid(n))
        .ok_or(Error::Overflow("modular product"))
}

/// Prime factorisation by trial division, as `(p, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The Möbius function μ(d).
pub fn mobius(d: u64) -> Result<i8> {
    if d == 0 {
        return Err(domain("μ(0) is undefined"));
    }
    let f = factorize(d);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All squarefree divisors `d` of `n` together with `μ(d)`, ascending in `d`.
pub fn squarefree_divisors(n: u64) -> Vec<(u64, i8)> {
    let mut out = vec![(1u64, 1i8)];
    for (p, _) in factorize(n) {
        let prev = out.clone();
        out.extend(prev.into_iter().map(|(d, mu)| (d * p, -mu)));
    }
    out.sort_unstable();
    out
}

/// All `q` with `Q < q ≤ 2Q` and `q² ≡ 1 (mod Q)`, ascending.
///
/// Each sign vector in `{±1}^m` is visited in binary-counter order (bit `i`
/// set selects `−1` modulo the `i`-th prime), CRT-combined, and shifted into
/// `(Q, 2Q]`. There are exactly `2^m` of them.
pub fn roots_of_unity_in_dilate(p: &OddPrimorial) -> Vec<i128> {
    let m = p.primes.len();
    let q = p.modulus;
    let mut roots: Vec<i128> = (0u64..1 << m)
        .map(|signs| {
            let residues: Vec<i128> = p
                .primes
                .iter()
                .enumerate()
                .map(|(i, &pr)| if signs >> i & 1 == 1 { pr - 1 } else { 1 })
                .collect();
            let (x, _) = crt_combine(&residues, &p.primes).expect("distinct primes are coprime");
            // x ≠ 0 since x² ≡ 1, so x + Q lies in (Q, 2Q).
            x + q
        })
        .collect();
    roots.sort_unstable();
    roots
}

/// `Σ_{lo < q ≤ hi} q·φ(q)`: the number of pairs `(a, q)` with `1 ≤ a ≤ q²`
/// and `gcd(a, q) = 1`.
pub fn coprime_pair_count(lo: u64, hi: u64) -> u128 {
    (lo + 1..=hi).map(|q| q as u128 * euler_phi(q) as u128).sum()
}
