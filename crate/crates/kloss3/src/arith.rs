//! Exact integer and modular arithmetic kernel.
//!
//! Everything here is pure and reentrant. Modular products go through u128
//! intermediates, so any modulus below 2^63 is safe without big integers.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("{a} is not invertible mod {n}")]
    NotInvertible { a: i64, n: u64 },
    #[error("no (Y, Z) with {b}*Y + {c}*Z = 1 mod {n}: gcd({b}, {c}, {n}) > 1")]
    NoSolution { b: i64, c: i64, n: u64 },
}

/// A canonical residue: `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueSolution {
    pub modulus: u64,
    pub value: u64,
}

impl ResidueSolution {
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!(modulus >= 1);
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        ResidueSolution {
            modulus,
            value: v as u64,
        }
    }
}

/// Prime factorization of `base`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub base: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Recompose the product of prime powers.
    pub fn recompose(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a
}

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c)
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `a*b mod m` through a 128-bit intermediate.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m >= 1);
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by binary exponentiation.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_mod(a: i64, m: u64) -> u64 {
    let m128 = m as i128;
    (((a as i128 % m128) + m128) % m128) as u64
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn egcd(a: i64, b: i64) -> Result<(u64, i64, i64), ArithError> {
    if a == 0 && b == 0 {
        return Err(ArithError::UndefinedGcd);
    }
    // Iterative Euclid on i128 so |a|, |b| up to i64::MAX are safe.
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    Ok((r0 as u64, s0 as i64, t0 as i64))
}

/// Inverse of `a` mod `n`, canonical in `[0, n)`. For `n = 1` every residue
/// inverts to 0.
pub fn inv_mod(a: i64, n: u64) -> Result<ResidueSolution, ArithError> {
    debug_assert!(n >= 1);
    if n == 1 {
        return Ok(ResidueSolution { modulus: 1, value: 0 });
    }
    let (g, x, _) = egcd(a, n as i64).map_err(|_| ArithError::NotInvertible { a, n })?;
    if g != 1 {
        return Err(ArithError::NotInvertible { a, n });
    }
    Ok(ResidueSolution::new(x, n))
}

/// Canonical `(Y, Z)` with `Y*b + Z*c = 1 mod n`, requiring `gcd(b, c, n) = 1`.
///
/// The choice is fixed: take the Bezout pair for `g = gcd(b, c)` from `egcd`,
/// then scale both by the inverse of `g` mod `n`.
pub fn solve_pair_congruence(
    b: i64,
    c: i64,
    n: u64,
) -> Result<(ResidueSolution, ResidueSolution), ArithError> {
    debug_assert!(n >= 1);
    if n == 1 {
        return Ok((
            ResidueSolution { modulus: 1, value: 0 },
            ResidueSolution { modulus: 1, value: 0 },
        ));
    }
    if gcd(gcd_i(b, c), n) != 1 {
        return Err(ArithError::NoSolution { b, c, n });
    }
    let (g, y, z) = egcd(b, c).map_err(|_| ArithError::NoSolution { b, c, n })?;
    let g_inv = inv_mod(g as i64, n)?.value;
    let scale = |t: i64| -> ResidueSolution {
        let r = reduce_mod(t, n);
        ResidueSolution {
            modulus: n,
            value: mul_mod(r, g_inv, n),
        }
    };
    Ok((scale(y), scale(z)))
}

/// Number of positive divisors, `prod (e_i + 1)` over the factorization.
pub fn divisor_count(n: u64) -> u64 {
    debug_assert!(n >= 1);
    factor(n)
        .factors
        .iter()
        .map(|&(_, e)| e as u64 + 1)
        .product()
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Deterministic factorization for `n < 2^63`: trial division to 10^6, then
/// Miller-Rabin plus Brent-rho splitting for whatever survives.
pub fn factor(n: u64) -> Factorization {
    debug_assert!(n >= 1);
    let base = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut n = n;
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0u32;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p <= TRIAL_BOUND && p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        if n <= TRIAL_BOUND * TRIAL_BOUND || is_prime_u64(n) {
            // Either below the trial square, hence prime, or certified prime.
            factors.push((n, 1));
        } else {
            let mut stack = vec![n];
            let mut primes: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime_u64(m) {
                    primes.push(m);
                    continue;
                }
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
            primes.sort_unstable();
            let mut i = 0;
            while i < primes.len() {
                let p = primes[i];
                let mut e = 0u32;
                while i < primes.len() && primes[i] == p {
                    e += 1;
                    i += 1;
                }
                factors.push((p, e));
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Factorization { base, factors }
}

/// Deterministic Miller-Rabin, complete for all u64 with these twelve bases.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle variant of Pollard rho. `n` must be odd composite with no
/// factor below the trial bound.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut saved = 0u64;
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            if diff == 0 {
                break;
            }
            // Batch gcds 64 products at a time.
            saved = if saved == 0 { diff } else { mul_mod(saved, diff, n) };
            count += 1;
            if count == 64 {
                d = gcd(saved, n);
                saved = 0;
                count = 0;
            }
        }
        if d == 1 && saved != 0 {
            d = gcd(saved, n);
        }
        if d > 1 && d < n {
            return d;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn egcd_matches_examples() {
        assert_eq!(egcd(0, 7).unwrap(), (7, 0, 1));
        assert_eq!(egcd(6, 4).unwrap(), (2, 1, -1));
        let (g, x, y) = egcd(240, 46).unwrap();
        assert_eq!(g, 2);
        assert_eq!(240 * x + 46 * y, 2);
        assert_eq!(egcd(0, 0), Err(ArithError::UndefinedGcd));
    }

    #[test]
    fn inv_mod_examples() {
        for n in [2u64, 5, 100, 997] {
            assert_eq!(inv_mod(1, n).unwrap().value, 1);
        }
        assert_eq!(inv_mod(2, 3).unwrap().value, 2);
        assert_eq!(inv_mod(7, 100).unwrap().value, 43);
        assert_eq!(inv_mod(0, 1).unwrap().value, 0);
        assert!(matches!(
            inv_mod(4, 6),
            Err(ArithError::NotInvertible { .. })
        ));
    }

    #[test]
    fn pair_congruence_examples() {
        let (y, z) = solve_pair_congruence(1, 0, 2).unwrap();
        assert_eq!((y.value, z.value), (1, 0));
        let (y, z) = solve_pair_congruence(17, -5, 1).unwrap();
        assert_eq!((y.value, z.value), (0, 0));
        let (y, z) = solve_pair_congruence(4, 6, 5).unwrap();
        assert_eq!(reduce_mod(4 * y.value as i64 + 6 * z.value as i64, 5), 1);
        // The canonical answer is one of the full-scan solutions.
        let scan: Vec<(u64, u64)> = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|&(a, b)| (4 * a + 6 * b) % 5 == 1)
            .collect();
        assert!(scan.contains(&(y.value, z.value)));
        assert!(matches!(
            solve_pair_congruence(2, 4, 6),
            Err(ArithError::NoSolution { .. })
        ));
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(97), 2);
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(1).factors, vec![]);
        assert_eq!(factor(360).factors, vec![(2, 3), (3, 2), (5, 1)]);
        let m61 = (1u64 << 61) - 1;
        assert!(is_prime_u64(m61));
        assert_eq!(factor(m61).factors, vec![(m61, 1)]);
        // A 63-bit semiprime with both factors above the trial bound.
        let p = 2_147_483_647u64; // 2^31 - 1
        let q = 2_147_483_629u64;
        assert_eq!(factor(p * q).factors, vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn factor_roundtrip_small_exhaustive() {
        for n in 1..=100_000u64 {
            let f = factor(n);
            assert_eq!(f.recompose(), n);
            let d = divisor_count(n);
            let brute = (1..=n).filter(|k| n % k == 0).count() as u64;
            if n <= 2_000 {
                assert_eq!(d, brute, "divisor_count({n})");
            }
        }
    }

    proptest! {
        #[test]
        fn egcd_bezout(a in -1_000_000_000i64..1_000_000_000, b in -1_000_000_000i64..1_000_000_000) {
            prop_assume!(a != 0 || b != 0);
            let (g, x, y) = egcd(a, b).unwrap();
            prop_assert_eq!(a as i128 * x as i128 + b as i128 * y as i128, g as i128);
            prop_assert_eq!(g, gcd_i(a, b));
        }

        #[test]
        fn inv_mod_is_inverse(a in 1i64..1_000_000, n in 2u64..1_000_000) {
            prop_assume!(gcd(a as u64, n) == 1);
            let inv = inv_mod(a, n).unwrap();
            prop_assert_eq!(mul_mod(reduce_mod(a, n), inv.value, n), 1);
        }

        #[test]
        fn pair_congruence_holds(b in -500i64..500, c in -500i64..500, n in 1u64..500) {
            prop_assume!(gcd(gcd_i(b, c), n) == 1);
            let (y, z) = solve_pair_congruence(b, c, n).unwrap();
            let lhs = reduce_mod(b, n) as i128 * y.value as i128
                + reduce_mod(c, n) as i128 * z.value as i128;
            prop_assert_eq!((lhs % n as i128) as u64, 1 % n);
        }

        #[test]
        fn factor_roundtrip_random_63bit(n in 1u64..(1u64 << 63)) {
            let f = factor(n);
            prop_assert_eq!(f.recompose(), n);
            let mut last = 0u64;
            for &(p, e) in &f.factors {
                prop_assert!(p > last && e >= 1);
                prop_assert!(is_prime_u64(p));
                last = p;
            }
        }

        #[test]
        fn divisor_count_multiplicative(n in 1u64..1_000_000) {
            let f = factor(n);
            let prod: u64 = f.factors.iter().map(|&(_, e)| e as u64 + 1).product();
            prop_assert_eq!(divisor_count(n), prod);
        }
    }
}
