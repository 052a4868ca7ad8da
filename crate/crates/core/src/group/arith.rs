//! Integer arithmetic: gcd/lcm, p-adic valuations, primality and factorization.
//!
//! Factorization is trial division up to `TRIAL_LIMIT`, followed by a
//! deterministic Miller-Rabin test and Brent's variant of Pollard rho with a
//! fixed sequence of polynomial constants, so the output never depends on any
//! random state.

use std::fmt;

use serde::{Deserialize, Serialize};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Witnesses that make Miller-Rabin deterministic on all of `u64`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Largest `e` with `p^e | n`. Requires `n >= 1` and `p >= 2`.
pub fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    assert!(n >= 1, "valuation of zero is undefined");
    assert!(p >= 2, "valuation base must be at least 2");
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Reduce an arbitrary integer to its canonical residue in `[0, modulus)`.
pub fn residue(value: i64, modulus: u64) -> u64 {
    assert!(modulus >= 1);
    (value as i128).rem_euclid(modulus as i128) as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding Pollard rho; `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
        let mut g = 1;
        let (mut x, mut ys) = (0, 0);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted every constant")
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(n: u64) -> Factorization {
        assert!(n >= 1, "cannot factor zero");
        let mut rest = n;
        let mut pairs = Vec::new();
        let mut push = |p: u64, rest: &mut u64| {
            let e = p_adic_valuation(*rest, p);
            if e > 0 {
                *rest /= p.pow(e);
                pairs.push((p, e));
            }
        };
        push(2, &mut rest);
        let mut p = 3;
        while p <= TRIAL_LIMIT && p * p <= rest {
            push(p, &mut rest);
            p += 2;
        }
        if rest > 1 {
            if rest < p * p || is_prime(rest) {
                pairs.push((rest, 1));
            } else {
                let mut primes = Vec::new();
                split_large(rest, &mut primes);
                primes.sort_unstable();
                for q in primes {
                    match pairs.last_mut() {
                        Some((last, e)) if *last == q => *e += 1,
                        _ => pairs.push((q, 1)),
                    }
                }
            }
        }
        Factorization { pairs }
    }

    /// Build from explicit pairs, checking every invariant.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Option<Factorization> {
        let sorted = pairs.windows(2).all(|w| w[0].0 < w[1].0);
        let valid = pairs.iter().all(|&(p, e)| e >= 1 && is_prime(p));
        (sorted && valid).then_some(Factorization { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.pairs.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.pairs.len() == 1
    }

    pub fn euler_phi(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn factorize(n: u64) -> Factorization {
    Factorization::of(n)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).euler_phi()
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit as usize + 1];
    let mut primes = Vec::new();
    for i in 2..=limit as usize {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
