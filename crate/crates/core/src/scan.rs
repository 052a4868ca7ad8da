//! Desk-scale scan of purely singular splittings by `S(k)`.
//!
//! For `M = S(k)` a prime divides some multiplier exactly when it is at most
//! `k`, so the purely singular orders are the `k`-smooth `N = nk + 1`. Every
//! such order is searched; splittings are expected only at `k + 1` and
//! `2k + 1`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{factorize, Factorization, FiniteAbelianGroup};
use crate::splitting::exact_cover::LimitKind;
use crate::splitting::{
    search_splitter, MultiplierSet, SearchConfig, SearchOutcome, SearchResult, SplittingCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateOrder {
    pub k: u64,
    pub n: u64,
    pub order: u64,
    /// Factorization of `order`; every prime is at most `k`.
    pub factorization: Factorization,
}

impl CandidateOrder {
    pub fn is_trivial(&self) -> bool {
        self.order == self.k + 1 || self.order == 2 * self.k + 1
    }
}

/// `N = nk + 1` for `1 <= n <= n_max` whose prime divisors are all `<= k`.
pub fn purely_singular_candidates(k: u64, n_max: u64) -> Vec<CandidateOrder> {
    (1..=n_max)
        .filter_map(|n| {
            let order = n * k + 1;
            let factorization = factorize(order);
            factorization
                .largest_prime()
                .is_some_and(|p| p <= k)
                .then_some(CandidateOrder {
                    k,
                    n,
                    order,
                    factorization,
                })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    /// Splitting found at `k + 1` or `2k + 1`.
    TrivialExpected,
    /// Search exhausted at a nontrivial order.
    ConjectureConsistent,
    /// Splitting found at a nontrivial order.
    ConjectureViolation,
    /// Search exhausted at `k + 1` or `2k + 1`, where splittings always exist.
    TrivialMissing,
    /// Resource limit reached.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::TrivialExpected => "trivial_expected",
            Verdict::ConjectureConsistent => "conjecture_consistent",
            Verdict::ConjectureViolation => "CONJECTURE_VIOLATION",
            Verdict::TrivialMissing => "trivial_missing",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        [
            Verdict::TrivialExpected,
            Verdict::ConjectureConsistent,
            Verdict::ConjectureViolation,
            Verdict::TrivialMissing,
            Verdict::Inconclusive,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }

    fn of(candidate: &CandidateOrder, result: &SearchResult) -> Verdict {
        match (result, candidate.is_trivial()) {
            (SearchResult::Found(_), true) => Verdict::TrivialExpected,
            (SearchResult::Found(_), false) => Verdict::ConjectureViolation,
            (SearchResult::ExhaustedNoSolution, true) => Verdict::TrivialMissing,
            (SearchResult::ExhaustedNoSolution, false) => Verdict::ConjectureConsistent,
            (SearchResult::ResourceLimit(_), _) => Verdict::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub candidate: CandidateOrder,
    pub outcome: SearchOutcome,
    pub verdict: Verdict,
    /// Present exactly when a splitting was found; always re-verified.
    pub certificate: Option<SplittingCertificate>,
}

impl ScanRecord {
    /// Assemble a record, re-verifying any found splitter set.
    pub fn new(candidate: CandidateOrder, outcome: SearchOutcome) -> Result<ScanRecord> {
        let certificate = match &outcome.result {
            SearchResult::Found(splitters) => Some(SplittingCertificate::new(
                FiniteAbelianGroup::cyclic(candidate.order)?,
                MultiplierSet::interval(candidate.k)?,
                splitters.clone(),
            )?),
            _ => None,
        };
        let verdict = Verdict::of(&candidate, &outcome.result);
        Ok(ScanRecord {
            candidate,
            outcome,
            verdict,
            certificate,
        })
    }

    fn key(&self) -> (u64, u64) {
        (self.candidate.k, self.candidate.order)
    }

    pub fn limit(&self) -> Option<LimitKind> {
        match self.outcome.result {
            SearchResult::ResourceLimit(kind) => Some(kind),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanParams {
    pub k_min: u64,
    pub k_max: u64,
    /// Largest `n` scanned for every `k`; `None` means `2k`.
    pub n_max: Option<u64>,
}

impl ScanParams {
    pub fn n_max_for(&self, k: u64) -> u64 {
        self.n_max.unwrap_or(2 * k)
    }

    fn validate(&self) -> Result<()> {
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(Error::Precondition(format!(
                "invalid k range {}..{}",
                self.k_min, self.k_max
            )));
        }
        if self.n_max == Some(0) {
            return Err(Error::Precondition("n_max must be positive".into()));
        }
        Ok(())
    }

    pub fn candidates(&self) -> Vec<CandidateOrder> {
        (self.k_min..=self.k_max)
            .flat_map(|k| purely_singular_candidates(k, self.n_max_for(k)))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub params: ScanParams,
    pub search: SearchConfig,
    /// Worker threads; 0 uses the machine's parallelism.
    pub threads: usize,
    /// Stop after this many newly searched records, leaving a partial report.
    pub max_new_records: Option<usize>,
}

impl ScanConfig {
    pub fn new(params: ScanParams) -> ScanConfig {
        ScanConfig {
            params,
            search: SearchConfig::default(),
            threads: 0,
            max_new_records: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanTotals {
    pub records: u64,
    pub found: u64,
    pub trivial_expected: u64,
    pub conjecture_consistent: u64,
    pub violations: u64,
    pub trivial_missing: u64,
    pub inconclusive: u64,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanStatus {
    Consistent,
    Violation,
    Inconclusive,
    /// Some candidates were not searched yet.
    Partial,
    /// A splitting known to exist was not found.
    Defect,
}

impl ScanStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanStatus::Consistent => "consistent",
            ScanStatus::Violation => "violation",
            ScanStatus::Inconclusive => "inconclusive",
            ScanStatus::Partial => "partial",
            ScanStatus::Defect => "defect",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub params: ScanParams,
    /// Sorted by `(k, N)`.
    pub records: Vec<ScanRecord>,
    pub complete: bool,
    pub wall_clock: Duration,
}

impl ScanReport {
    pub fn totals(&self) -> ScanTotals {
        let mut t = ScanTotals::default();
        for r in &self.records {
            t.records += 1;
            t.nodes += r.outcome.stats.nodes;
            if r.outcome.found().is_some() {
                t.found += 1;
            }
            match r.verdict {
                Verdict::TrivialExpected => t.trivial_expected += 1,
                Verdict::ConjectureConsistent => t.conjecture_consistent += 1,
                Verdict::ConjectureViolation => t.violations += 1,
                Verdict::TrivialMissing => t.trivial_missing += 1,
                Verdict::Inconclusive => t.inconclusive += 1,
            }
        }
        t
    }

    pub fn status(&self) -> ScanStatus {
        let t = self.totals();
        if t.violations > 0 {
            ScanStatus::Violation
        } else if t.trivial_missing > 0 {
            ScanStatus::Defect
        } else if !self.complete {
            ScanStatus::Partial
        } else if t.inconclusive > 0 {
            ScanStatus::Inconclusive
        } else {
            ScanStatus::Consistent
        }
    }

    pub fn found_records(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.outcome.found().is_some())
    }
}

fn search_candidate(candidate: CandidateOrder, search: &SearchConfig) -> Result<ScanRecord> {
    let group = FiniteAbelianGroup::cyclic(candidate.order)?;
    let multipliers = MultiplierSet::interval(candidate.k)?;
    let outcome = search_splitter(&group, &multipliers, search)?;
    ScanRecord::new(candidate, outcome)
}

/// Run (or resume) a scan. Records already present in `resume` are kept and
/// their `(k, N)` pairs are not searched again.
pub fn scan(config: &ScanConfig, resume: Option<ScanReport>) -> Result<ScanReport> {
    config.params.validate()?;
    let start = Instant::now();
    let mut records = match resume {
        Some(prior) if prior.params != config.params => {
            return Err(Error::Precondition(format!(
                "resumed report was produced with {:?}, not {:?}",
                prior.params, config.params
            )))
        }
        Some(prior) => prior.records,
        None => Vec::new(),
    };
    let done: BTreeSet<(u64, u64)> = records.iter().map(ScanRecord::key).collect();
    let mut pending: Vec<CandidateOrder> = config
        .params
        .candidates()
        .into_iter()
        .filter(|c| !done.contains(&(c.k, c.order)))
        .collect();
    let mut complete = true;
    if let Some(cap) = config.max_new_records {
        if pending.len() > cap {
            pending.truncate(cap);
            complete = false;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let search = config.search;
    let fresh: Vec<ScanRecord> = pool.install(|| {
        pending
            .into_par_iter()
            .map(|c| search_candidate(c, &search))
            .collect::<Result<_>>()
    })?;
    records.extend(fresh);
    records.sort_by_key(ScanRecord::key);
    records.dedup_by_key(|r| r.key());

    Ok(ScanReport {
        params: config.params,
        records,
        complete,
        wall_clock: start.elapsed(),
    })
}

/// No splitting of order `nk + 1` with `n >= 3` has `k > n - 2`.
pub fn check_k_le_n_minus_2(report: &ScanReport) -> bool {
    report
        .found_records()
        .all(|r| r.candidate.n < 3 || r.candidate.k + 2 <= r.candidate.n)
}

/// Every purely singular splitting of `Z_{nk+1}` by `S(k)` has `k >= n`.
pub fn check_k_ge_n(report: &ScanReport) -> bool {
    report
        .found_records()
        .all(|r| r.candidate.k >= r.candidate.n)
}

/// Builds a record for a found splitting without searching; used to inject
/// synthetic records when exercising the theorem checks.
pub fn synthetic_found_record(
    k: u64,
    n: u64,
    splitters: crate::splitting::SplitterSet,
) -> ScanRecord {
    let order = n * k + 1;
    ScanRecord {
        candidate: CandidateOrder {
            k,
            n,
            order,
            factorization: factorize(order),
        },
        outcome: SearchOutcome {
            result: SearchResult::Found(splitters),
            stats: Default::default(),
        },
        verdict: Verdict::ConjectureViolation,
        certificate: None,
    }
}
