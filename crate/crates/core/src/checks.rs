//! Counting machinery behind the nonexistence argument for nontrivial purely
//! singular splittings by `S(k)`.
//!
//! For a cyclic group of order `p^α m` with `p ∤ m`, the stratum `G_i` holds
//! the elements whose order has `p`-adic valuation exactly `i`. Every product
//! `m·s` with `s ∈ S_j` and `v_p(m) = j - i` lands in `G_i`, which gives one
//! linear identity per stratum. The remaining checks evaluate the integer
//! sets `A`..`E`, the decomposition `k - ⌊k/p⌋ = p^β d m'`, the base-`p`
//! digit pattern of `k` and the translates `T·W_i` of a unit splitter.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::arith::{euler_phi, is_prime};
use crate::group::{factorize, gcd, p_adic_valuation, Factorization, GroupElement};
use crate::splitting::{SingularityTag, SplittingCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub base: u64,
    /// Least significant first; empty for zero.
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &b| acc * self.base + b)
    }

    /// `b_i`, with zero above the leading digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }
}

pub fn base_p_digits(k: u64, p: u64) -> Result<DigitExpansion> {
    if p < 2 {
        return Err(Error::Precondition(format!(
            "base must be at least 2, got {p}"
        )));
    }
    let mut digits = Vec::new();
    let mut rest = k;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    Ok(DigitExpansion { base: p, digits })
}

/// `k - ⌊k/p⌋ = p^β · d · m'` with `d = gcd(k - ⌊k/p⌋, p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KDecomposition {
    pub k: u64,
    pub p: u64,
    pub m: u64,
    pub beta: u32,
    pub d: u64,
    pub m_prime: u64,
    /// False means `m' ∤ m`, which no genuine splitting allows.
    pub m_prime_divides_m: bool,
}

impl KDecomposition {
    pub fn q(&self) -> u64 {
        self.k - self.k / self.p
    }
}

pub fn decompose_k(k: u64, p: u64, m: u64) -> Result<KDecomposition> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if m == 0 || m.is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "m = {m} must be positive and prime to {p}"
        )));
    }
    let q = k - k / p;
    let beta = p_adic_valuation(q, p);
    let d = gcd(q, p - 1);
    let m_prime = q / p.pow(beta) / d;
    Ok(KDecomposition {
        k,
        p,
        m,
        beta,
        d,
        m_prime,
        m_prime_divides_m: m.is_multiple_of(m_prime),
    })
}

/// `b_β = ⋯ = b_0`, and `b_{β+1} ≠ b_β` when `k` has more than `β + 1`
/// digits.
pub fn digit_pattern_check(dec: &KDecomposition) -> bool {
    let Ok(digits) = base_p_digits(dec.k, dec.p) else {
        return false;
    };
    let beta = dec.beta as usize;
    let b0 = digits.digit(0);
    let flat = (0..=beta).all(|i| digits.digit(i) == b0);
    let r = digits.digits.len() - 1;
    flat && (r <= beta || digits.digit(beta + 1) != digits.digit(beta))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationProfile {
    pub p: u64,
    pub alpha: u32,
    /// `|G_i|` for `0 <= i <= α`.
    pub g_counts: Vec<u64>,
    /// `|S_i|` for `0 <= i <= α`.
    pub s_counts: Vec<u64>,
}

pub fn stratify(cert: &SplittingCertificate, p: u64) -> Result<StratificationProfile> {
    let group = cert.group();
    let alpha = group.order_factorization().exponent_of(p);
    if alpha == 0 || !is_prime(p) {
        return Err(Error::Precondition(format!(
            "{p} is not a prime divisor of |G| = {}",
            group.order()
        )));
    }
    let stratum = |g: &GroupElement| p_adic_valuation(group.element_order(g), p) as usize;
    let mut g_counts = vec![0u64; alpha as usize + 1];
    for g in group.elements() {
        g_counts[stratum(&g)] += 1;
    }
    let mut s_counts = vec![0u64; alpha as usize + 1];
    for s in cert.splitters().elements() {
        s_counts[stratum(s)] += 1;
    }
    Ok(StratificationProfile {
        p,
        alpha,
        g_counts,
        s_counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingCheck {
    pub p: u64,
    pub stratum: u32,
    /// `|G_i|`.
    pub expected: u64,
    /// `Σ_{j >= i} #{m ∈ M : v_p(m) = j - i} · |S_j|`.
    pub actual: u64,
}

impl CountingCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

/// The stratum-`i` identity for `1 <= i <= α`.
pub fn check_counting_identity(
    cert: &SplittingCertificate,
    p: u64,
    i: u32,
) -> Result<CountingCheck> {
    cert.group().cyclic_order()?;
    let profile = stratify(cert, p)?;
    if i == 0 || i > profile.alpha {
        return Err(Error::Precondition(format!(
            "stratum {i} outside [1, {}]",
            profile.alpha
        )));
    }
    let valuations: Vec<u32> = cert
        .multipliers()
        .values()
        .iter()
        .map(|&m| p_adic_valuation(m.unsigned_abs(), p))
        .collect();
    let actual = (i..=profile.alpha)
        .map(|j| {
            let hits = valuations.iter().filter(|&&v| v == j - i).count() as u64;
            hits * profile.s_counts[j as usize]
        })
        .sum();
    Ok(CountingCheck {
        p,
        stratum: i,
        expected: profile.g_counts[i as usize],
        actual,
    })
}

/// A prime `p_i` of `m` with its exponent `α_i` in `m` and `β_i` in `m'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSpec {
    pub prime: u64,
    pub alpha: u32,
    pub beta: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcdeProfile {
    pub k: u64,
    pub p: u64,
    pub primes: Vec<PrimeSpec>,
    pub decomposition: KDecomposition,
    /// `m'` from the decomposition equals `∏ p_i^{β_i}`.
    pub hypothesis: bool,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    /// `p^β d ∏_{β_i >= 1} p_i^{β_i - 1}(p_i - 1)`.
    pub closed_form_d: u64,
}

impl AbcdeProfile {
    pub fn a_is_b_plus_c(&self) -> bool {
        self.a == self.b + self.c
    }

    pub fn d_is_c(&self) -> bool {
        self.d == self.c
    }

    pub fn c_is_closed_form(&self) -> bool {
        self.c == self.closed_form_d
    }

    pub fn identities_hold(&self) -> bool {
        self.a_is_b_plus_c() && self.d_is_c() && self.c_is_closed_form()
    }
}

fn count_coprime(upto: u64, primes: &[u64]) -> u64 {
    (1..=upto)
        .filter(|x| primes.iter().all(|q| x % q != 0))
        .count() as u64
}

/// `[|A|, |B|, |C|, |D|, |E|]` in one pass over `[1, k]`, tracking
/// divisibility with a countdown per prime instead of a remainder.
fn tally(k: u64, p: u64, q: u64, in_m_prime: &[u64], extra: &[u64]) -> [u64; 5] {
    let primes: Vec<u64> = std::iter::once(p)
        .chain(in_m_prime.iter().copied())
        .chain(extra.iter().copied())
        .collect();
    let l = in_m_prime.len();
    let mut until: Vec<u64> = primes.clone();
    let mut out = [0u64; 5];
    let b_end = k / p;
    for x in 1..=k {
        let mut hit = [false; 3];
        for (i, u) in until.iter_mut().enumerate() {
            *u -= 1;
            if *u == 0 {
                *u = primes[i];
                hit[if i == 0 {
                    0
                } else if i <= l {
                    1
                } else {
                    2
                }] = true;
            }
        }
        if hit[1] {
            continue;
        }
        out[0] += 1;
        out[1] += (x <= b_end) as u64;
        out[2] += (x <= q) as u64;
        if !hit[0] {
            out[3] += 1;
            out[4] += !hit[2] as u64;
        }
    }
    out
}

/// Cardinalities of `A`..`E` for `|G| = p^α ∏ p_i^{α_i}`. `A`..`D` use the
/// primes with `β_i >= 1`; `E` uses every prime of `|G|`.
pub fn abcde_profile(k: u64, p: u64, primes: &[PrimeSpec]) -> Result<AbcdeProfile> {
    let mut previous = p;
    for spec in primes {
        if !is_prime(spec.prime) || spec.prime <= previous {
            return Err(Error::Precondition(format!(
                "primes must be increasing primes above {p}, got {}",
                spec.prime
            )));
        }
        if spec.alpha == 0 || spec.beta > spec.alpha {
            return Err(Error::Precondition(format!(
                "need 0 <= beta <= alpha with alpha >= 1 for prime {}",
                spec.prime
            )));
        }
        previous = spec.prime;
    }
    let m: u64 = primes.iter().map(|s| s.prime.pow(s.alpha)).product();
    let decomposition = decompose_k(k, p, m)?;
    let in_m_prime: Vec<u64> = primes
        .iter()
        .filter(|s| s.beta >= 1)
        .map(|s| s.prime)
        .collect();
    let m_prime: u64 = primes.iter().map(|s| s.prime.pow(s.beta)).product();

    let extra: Vec<u64> = primes
        .iter()
        .filter(|s| s.beta == 0)
        .map(|s| s.prime)
        .collect();
    let t = tally(k, p, decomposition.q(), &in_m_prime, &extra);
    let closed_form_d = p.pow(decomposition.beta)
        * decomposition.d
        * primes
            .iter()
            .filter(|s| s.beta >= 1)
            .map(|s| s.prime.pow(s.beta - 1) * (s.prime - 1))
            .product::<u64>();
    Ok(AbcdeProfile {
        k,
        p,
        primes: primes.to_vec(),
        decomposition,
        hypothesis: decomposition.m_prime == m_prime,
        a: t[0],
        b: t[1],
        c: t[2],
        d: t[3],
        e: t[4],
        closed_form_d,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwUnit {
    pub splitter: u64,
    pub w_size: u64,
    pub tw_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwReport {
    pub order: u64,
    pub k: u64,
    pub p: u64,
    pub alpha: u32,
    pub decomposition: KDecomposition,
    /// Order of the subgroup `M'`.
    pub subgroup_order: u64,
    pub units: Vec<TwUnit>,
    /// `p^β ∏ u_j`.
    pub expected_w_size: u64,
    pub size_d: u64,
    pub size_e: u64,
    pub unit_count: u64,
    pub pairwise_disjoint: bool,
    pub within_units: bool,
    /// `|T·W_i| = d·|W_i|` for every `i`.
    pub scaling: bool,
    /// `|W_i| = p^β ∏ u_j` for every `i`.
    pub w_sizes_match: bool,
    /// `|T·W_i| = |D| = |E|` for every `i` and `r·|E| = |Z_N^*|`.
    pub chain: bool,
}

impl TwReport {
    /// `r`, the number of splitters that are units.
    pub fn r(&self) -> usize {
        self.units.len()
    }

    pub fn passed(&self) -> bool {
        self.pairwise_disjoint
            && self.within_units
            && self.scaling
            && self.w_sizes_match
            && self.chain
    }
}

/// Build `M'`, `W_i = {s_i + x : x ∈ M'} ∩ Z_N^*` and `T·W_i` with `T = [1, d]`
/// for a purely singular splitting of `Z_N` by `S(k)` with `gcd(N, 6) = 1`.
pub fn tw_disjointness_check(cert: &SplittingCertificate) -> Result<TwReport> {
    let n = cert.group().cyclic_order()?;
    let Some(k) = cert.multipliers().as_interval() else {
        return Err(Error::Precondition(
            "multiplier set is not an interval S(k)".into(),
        ));
    };
    if gcd(n, 6) != 1 {
        return Err(Error::Precondition(format!("gcd({n}, 6) != 1")));
    }
    if cert.classification().tag != SingularityTag::PurelySingular || n == 1 {
        return Err(Error::Precondition(
            "splitting is not purely singular".into(),
        ));
    }
    let f = cert.group().order_factorization();
    let (p, alpha) = f.pairs()[0];
    let m = n / p.pow(alpha);
    let dec = decompose_k(k, p, m)?;
    if !dec.m_prime_divides_m {
        return Err(Error::Precondition(format!(
            "m' = {} does not divide m = {m}",
            dec.m_prime
        )));
    }
    let subgroup_order = p.pow(dec.beta) * dec.m_prime;
    let step = n / subgroup_order;
    let is_unit = |x: u64| gcd(x, n) == 1;

    let m_prime_f = factorize(dec.m_prime);
    let expected_w_size = p.pow(dec.beta)
        * m_prime_f
            .pairs()
            .iter()
            .map(|&(q, b)| {
                if b < f.exponent_of(q) {
                    q.pow(b)
                } else {
                    q.pow(b - 1) * (q - 1)
                }
            })
            .product::<u64>();
    let with_p: Vec<u64> = std::iter::once(p).chain(m_prime_f.primes()).collect();
    let all: Vec<u64> = f.primes().collect();
    let size_d = count_coprime(k, &with_p);
    let size_e = count_coprime(k, &all);
    let unit_count = euler_phi(n);

    let mut seen: HashSet<u64> = HashSet::new();
    let mut pairwise_disjoint = true;
    let mut within_units = true;
    let mut units = Vec::new();
    for s in cert
        .splitters()
        .residues()
        .into_iter()
        .filter(|&s| is_unit(s))
    {
        let w: Vec<u64> = (0..subgroup_order)
            .map(|j| (s + j * step) % n)
            .filter(|&x| is_unit(x))
            .collect();
        let tw: HashSet<u64> = (1..=dec.d)
            .flat_map(|t| {
                w.iter()
                    .map(move |&x| (t as u128 * x as u128 % n as u128) as u64)
            })
            .collect();
        within_units &= tw.iter().all(|&x| is_unit(x));
        for &x in &tw {
            pairwise_disjoint &= seen.insert(x);
        }
        units.push(TwUnit {
            splitter: s,
            w_size: w.len() as u64,
            tw_size: tw.len() as u64,
        });
    }
    let scaling = units.iter().all(|u| u.tw_size == dec.d * u.w_size);
    let w_sizes_match = units.iter().all(|u| u.w_size == expected_w_size);
    let chain = units
        .iter()
        .all(|u| u.tw_size == size_d && size_d == size_e)
        && units.len() as u64 * size_e == unit_count;
    Ok(TwReport {
        order: n,
        k,
        p,
        alpha,
        decomposition: dec,
        subgroup_order,
        units,
        expected_w_size,
        size_d,
        size_e,
        unit_count,
        pairwise_disjoint,
        within_units,
        scaling,
        w_sizes_match,
        chain,
    })
}

/// `|G_α| = p^{α-1}(p-1)m` in `Z_{p^α m}`.
pub fn top_stratum_size(order: &Factorization, p: u64) -> u64 {
    let alpha = order.exponent_of(p);
    if alpha == 0 {
        return 1;
    }
    let m = order.value() / p.pow(alpha);
    p.pow(alpha - 1) * (p - 1) * m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;
    use crate::splitting::{trivial_certificate, MultiplierSet, SplitterSet, TrivialOrder};

    fn cert(n: u64, k: u64, s: &[u64]) -> SplittingCertificate {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let splitters = SplitterSet::cyclic(&g, s).unwrap();
        SplittingCertificate::new(g, MultiplierSet::interval(k).unwrap(), splitters).unwrap()
    }

    #[test]
    fn digits() {
        assert_eq!(base_p_digits(8, 3).unwrap().digits, vec![2, 2]);
        assert_eq!(base_p_digits(24, 5).unwrap().digits, vec![4, 4]);
        assert_eq!(base_p_digits(1, 7).unwrap().digits, vec![1]);
        assert!(base_p_digits(0, 7).unwrap().digits.is_empty());
        assert_eq!(base_p_digits(12345, 7).unwrap().value(), 12345);
    }

    #[test]
    fn decompositions() {
        let d = decompose_k(8, 3, 1).unwrap();
        assert_eq!(
            (d.beta, d.d, d.m_prime, d.m_prime_divides_m),
            (1, 2, 1, true)
        );
        let d = decompose_k(24, 5, 1).unwrap();
        assert_eq!((d.beta, d.d, d.m_prime), (1, 4, 1));
        let d = decompose_k(5, 11, 1).unwrap();
        assert_eq!((d.beta, d.d, d.m_prime), (0, 5, 1));
        let d = decompose_k(20, 3, 5).unwrap();
        assert_eq!(
            (d.beta, d.d, d.m_prime, d.m_prime_divides_m),
            (0, 2, 7, false)
        );
        assert!(decompose_k(8, 4, 1).is_err());
        assert!(decompose_k(8, 3, 6).is_err());
        assert!(decompose_k(0, 3, 1).is_err());
    }

    #[test]
    fn digit_patterns() {
        assert!(digit_pattern_check(&decompose_k(8, 3, 1).unwrap()));
        assert!(digit_pattern_check(&decompose_k(24, 5, 1).unwrap()));
        for k in 1..3000 {
            for p in [2, 3, 5, 7, 11] {
                assert!(
                    digit_pattern_check(&decompose_k(k, p, 1).unwrap()),
                    "k={k} p={p}"
                );
            }
        }
    }

    #[test]
    fn digit_pattern_rejects_wrong_beta() {
        let mut d = decompose_k(8, 3, 1).unwrap();
        d.beta = 0;
        assert!(!digit_pattern_check(&d));
        d.beta = 2;
        assert!(!digit_pattern_check(&d));
    }

    #[test]
    fn strata() {
        let z9 = cert(9, 8, &[1]);
        let s = stratify(&z9, 3).unwrap();
        assert_eq!(s.g_counts, vec![1, 2, 6]);
        assert_eq!(s.s_counts, vec![0, 0, 1]);
        let z11 = trivial_certificate(5, TrivialOrder::TwoKPlusOne).unwrap();
        let s = stratify(&z11, 11).unwrap();
        assert_eq!((s.g_counts[1], s.s_counts[1]), (10, 2));
        let z25 = cert(25, 24, &[1]);
        let s = stratify(&z25, 5).unwrap();
        assert_eq!(s.g_counts, vec![1, 4, 20]);
        assert_eq!(s.s_counts, vec![0, 0, 1]);
        assert!(stratify(&z25, 3).is_err());
    }

    #[test]
    fn counting_identities() {
        let c = check_counting_identity(&cert(9, 8, &[1]), 3, 2).unwrap();
        assert_eq!((c.expected, c.actual), (6, 6));
        let z25 = cert(25, 24, &[1]);
        for i in 1..=2 {
            assert!(check_counting_identity(&z25, 5, i).unwrap().holds());
        }
        assert_eq!(check_counting_identity(&z25, 5, 1).unwrap().actual, 4);
        let z11 = trivial_certificate(5, TrivialOrder::TwoKPlusOne).unwrap();
        let c = check_counting_identity(&z11, 11, 1).unwrap();
        assert_eq!((c.expected, c.actual), (10, 10));
        assert!(check_counting_identity(&z25, 5, 0).is_err());
        assert!(check_counting_identity(&z25, 5, 3).is_err());
    }

    #[test]
    fn top_stratum_matches_enumeration() {
        for n in 2..200u64 {
            let g = FiniteAbelianGroup::cyclic(n).unwrap();
            let multipliers = MultiplierSet::interval(n - 1).unwrap();
            let c = SplittingCertificate::new(
                g.clone(),
                multipliers,
                SplitterSet::cyclic(&g, &[1]).unwrap(),
            );
            let Ok(c) = c else { continue };
            for p in g.order_factorization().primes() {
                let s = stratify(&c, p).unwrap();
                assert_eq!(
                    s.g_counts[s.alpha as usize],
                    top_stratum_size(g.order_factorization(), p)
                );
            }
        }
    }

    #[test]
    fn abcde_examples() {
        let a = abcde_profile(8, 3, &[]).unwrap();
        assert_eq!((a.a, a.b, a.c, a.d, a.closed_form_d), (8, 2, 6, 6, 6));
        assert!(a.hypothesis && a.identities_hold());
        let a = abcde_profile(24, 5, &[]).unwrap();
        assert_eq!((a.a, a.b, a.c, a.d, a.closed_form_d), (24, 4, 20, 20, 20));
        // k - ⌊k/p⌋ = 14 = 2·7 is not of the form p^β d 5^β_1
        let a = abcde_profile(
            20,
            3,
            &[PrimeSpec {
                prime: 5,
                alpha: 1,
                beta: 1,
            }],
        )
        .unwrap();
        assert_eq!((a.a, a.b, a.c), (16, 5, 12));
        assert!(!a.hypothesis);
        assert!(!a.a_is_b_plus_c());
    }

    #[test]
    fn abcde_with_m_prime() {
        // k = 17, p = 2: k - ⌊k/p⌋ = 9, so β = 0, d = 1, m' = 3^2
        let a = abcde_profile(
            17,
            2,
            &[PrimeSpec {
                prime: 3,
                alpha: 3,
                beta: 2,
            }],
        )
        .unwrap();
        assert!(a.hypothesis);
        assert!(a.identities_hold(), "{a:?}");
        let e = abcde_profile(
            17,
            2,
            &[
                PrimeSpec {
                    prime: 3,
                    alpha: 2,
                    beta: 2,
                },
                PrimeSpec {
                    prime: 7,
                    alpha: 1,
                    beta: 0,
                },
            ],
        )
        .unwrap();
        assert!(e.hypothesis && e.identities_hold());
        assert_eq!((e.d, e.e), (a.d, a.d - 1));
    }

    #[test]
    fn abcde_rejects_bad_primes() {
        let spec = |prime, alpha, beta| PrimeSpec { prime, alpha, beta };
        assert!(abcde_profile(8, 3, &[spec(2, 1, 1)]).is_err());
        assert!(abcde_profile(8, 3, &[spec(7, 1, 1), spec(5, 1, 1)]).is_err());
        assert!(abcde_profile(8, 3, &[spec(9, 1, 1)]).is_err());
        assert!(abcde_profile(8, 3, &[spec(5, 1, 2)]).is_err());
    }

    #[test]
    fn tw_instances() {
        let r = tw_disjointness_check(&cert(25, 24, &[1])).unwrap();
        assert!(r.passed());
        assert_eq!((r.subgroup_order, r.decomposition.d, r.r()), (5, 4, 1));
        assert_eq!(
            (r.units[0].w_size, r.units[0].tw_size, r.unit_count),
            (5, 20, 20)
        );

        let r = tw_disjointness_check(&cert(49, 48, &[1])).unwrap();
        assert!(r.passed());
        assert_eq!(
            (r.subgroup_order, r.units[0].w_size, r.decomposition.d),
            (7, 7, 6)
        );
        assert_eq!(r.units[0].tw_size, 42);

        let r = tw_disjointness_check(&trivial_certificate(12, TrivialOrder::TwoKPlusOne).unwrap())
            .unwrap();
        assert!(r.passed());
        assert_eq!((r.r(), r.size_e, r.unit_count), (2, 10, 20));
    }

    #[test]
    fn tw_rejects_outside_hypothesis() {
        assert!(tw_disjointness_check(&cert(9, 8, &[1])).is_err());
        // Z_5 by S(2) is nonsingular
        let c = trivial_certificate(2, TrivialOrder::TwoKPlusOne).unwrap();
        assert!(tw_disjointness_check(&c).is_err());
    }
}
