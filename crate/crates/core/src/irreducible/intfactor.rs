//! Integer factorization for divisor enumeration: trial division, then
//! Miller–Rabin and Pollard–Brent on the cofactor.

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Zero};

const TRIAL_LIMIT: u32 = 10_000;
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic for `n < 3.3e24`; a strong probable-prime test beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of an odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, m) = (BigUint::from(2u32), 128u64);
        let (mut g, mut r, mut q) = (BigUint::one(), 1u64, BigUint::one());
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let f = pollard_brent(&n);
    let rest = &n / &f;
    split(f, out);
    split(rest, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs; `n > 0`.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut n = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    for p in (2..TRIAL_LIMIT).filter(|&p| p == 2 || p % 2 == 1) {
        let p = BigUint::from(p);
        if &p * &p > n {
            break;
        }
        while (&n % &p).is_zero() {
            n /= &p;
            primes.push(p.clone());
        }
    }
    split(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// All positive divisors in ascending order.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let base = divs.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(base.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (2..200).filter(|&n| is_probable_prime(&big(n))).collect();
        assert_eq!(primes.len(), 46);
        assert!(is_probable_prime(&big(1_000_000_007)));
        assert!(!is_probable_prime(&big(3_215_031_751)));
    }

    #[test]
    fn factors_with_large_primes() {
        let n = big(1_000_000_007) * big(998_244_353) * big(12);
        let f = factorize(&n);
        assert_eq!(
            f,
            vec![(big(2), 2), (big(3), 1), (big(998_244_353), 1), (big(1_000_000_007), 1)]
        );
    }

    #[test]
    fn divisors_of_small() {
        assert_eq!(divisors(&big(12)), [1, 2, 3, 4, 6, 12].map(big).to_vec());
        assert_eq!(divisors(&big(1)), vec![big(1)]);
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(n in 1u64..u64::MAX) {
            let f = factorize(&big(n));
            let prod = f.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
            prop_assert_eq!(prod, big(n));
            prop_assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
        }
    }
}
