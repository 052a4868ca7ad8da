//! Reference implementations used as oracles. They follow the definitions
//! literally and share no code with the library.

#![allow(dead_code)]

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// True when `M·S` hits every nonzero residue mod `n` exactly once.
pub fn is_splitting(n: u64, m: &[u64], s: &[u64]) -> bool {
    let mut hits = vec![0u32; n as usize];
    for &x in m {
        for &y in s {
            hits[(x * y % n) as usize] += 1;
        }
    }
    hits[0] == 0 && hits[1..].iter().all(|&h| h == 1)
}

/// Every splitter set for `m` over `Z_n`, by include/exclude over the
/// residues `1..n` with a disjointness cut, sorted. Only for tiny `n`.
pub fn naive_splitter_sets(n: u64, m: &[u64]) -> Vec<Vec<u64>> {
    fn go(
        n: u64,
        m: &[u64],
        next: u64,
        used: &mut Vec<bool>,
        chosen: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if next == n {
            if is_splitting(n, m, chosen) {
                out.push(chosen.clone());
            }
            return;
        }
        go(n, m, next + 1, used, chosen, out);
        let products: Vec<usize> = m.iter().map(|&x| (x * next % n) as usize).collect();
        let mut distinct = products.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() == products.len() && products.iter().all(|&p| p != 0 && !used[p]) {
            for &p in &products {
                used[p] = true;
            }
            chosen.push(next);
            go(n, m, next + 1, used, chosen, out);
            chosen.pop();
            for &p in &products {
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        n,
        m,
        1,
        &mut vec![false; n as usize],
        &mut Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// Some splitter set for `m` over `Z_n`, found by always covering the least
/// uncovered residue with a plain backtracking search.
pub fn some_splitter_set(n: u64, m: &[u64]) -> Option<Vec<u64>> {
    let orbits: Vec<(u64, Vec<usize>)> = (1..n)
        .filter_map(|s| {
            let mut p: Vec<usize> = m.iter().map(|&x| (x * s % n) as usize).collect();
            p.sort_unstable();
            let len = p.len();
            p.dedup();
            (p.len() == len && p[0] != 0).then_some((s, p))
        })
        .collect();
    fn go(
        n: u64,
        orbits: &[(u64, Vec<usize>)],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<u64>,
    ) -> bool {
        let Some(x) = (1..n as usize).find(|&x| !covered[x]) else {
            return true;
        };
        for (s, p) in orbits {
            if p.contains(&x) && p.iter().all(|&y| !covered[y]) {
                p.iter().for_each(|&y| covered[y] = true);
                chosen.push(*s);
                if go(n, orbits, covered, chosen) {
                    return true;
                }
                chosen.pop();
                p.iter().for_each(|&y| covered[y] = false);
            }
        }
        false
    }
    let mut covered = vec![false; n as usize];
    let mut chosen = Vec::new();
    go(n, &orbits, &mut covered, &mut chosen).then_some(chosen)
}

/// `[|A|, |B|, |C|, |D|, |E|]` straight from the set definitions, with
/// `big_p = ∏ p_i` over the primes of `m'` and `order` any integer with the
/// same prime divisors as `|G|`.
pub fn abcde_sets(k: u64, p: u64, big_p: u64, order: u64) -> [u64; 5] {
    let q = k - k / p;
    let count = |hi: u64, modulus: u64| (1..=hi).filter(|&x| gcd(x, modulus) == 1).count() as u64;
    [
        count(k, big_p),
        count(k / p, big_p),
        count(q, big_p),
        count(k, p * big_p),
        count(k, order),
    ]
}

pub fn primes_below(limit: u64) -> Vec<u64> {
    (2..limit)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}
