//! Integer helpers: valuations, trial-division factorization, squarefree
//! kernels, primality and the Jacobi symbol.

use crate::error::{Error, Result};

/// Default trial-division bound for factorization.
pub const DEFAULT_FACTOR_BOUND: u64 = 10_000_000;

/// Splits `n = p^k * u` with `p ∤ u`. `n` must be nonzero.
pub fn valuation(n: i128, p: u64) -> (u32, i128) {
    debug_assert!(n != 0 && p >= 2);
    let p = p as i128;
    let mut k = 0;
    let mut u = n;
    while u % p == 0 {
        u /= p;
        k += 1;
    }
    (k, u)
}

/// Prime factorization of `|n|` by trial division up to `bound`.
///
/// Fails when a cofactor remains whose smallest prime divisor could exceed
/// the bound.
pub fn factor(n: i128, bound: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Malformed("cannot factor zero".into()));
    }
    let mut rest = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= rest {
        if p > bound as u128 {
            return Err(Error::Factorization { value: n, bound });
        }
        if rest.is_multiple_of(p) {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            out.push((p as u64, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let q = u64::try_from(rest).map_err(|_| Error::Factorization { value: n, bound })?;
        out.push((q, 1));
    }
    Ok(out)
}

/// The squarefree integer in the rational square class of `n`, sign kept.
pub fn squarefree_kernel(n: i128, bound: u64) -> Result<i128> {
    let mut k: i128 = n.signum();
    for (p, e) in factor(n, bound)? {
        if e % 2 == 1 {
            k *= p as i128;
        }
    }
    Ok(k)
}

pub fn is_squarefree(n: i128, bound: u64) -> Result<bool> {
    Ok(factor(n, bound)?.iter().all(|&(_, e)| e == 1))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// Distinct primes dividing `n`, ascending.
pub fn prime_divisors(n: i128, bound: u64) -> Result<Vec<u64>> {
    Ok(factor(n, bound)?.into_iter().map(|(p, _)| p).collect())
}

/// Sieve of Eratosthenes: all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i128, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}
