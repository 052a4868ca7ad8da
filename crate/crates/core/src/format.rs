//! On-disk documents.
//!
//! Structured documents are JSON objects that start with `format_version`
//! and `kind`. Field order is fixed by the structs below, so equal inputs
//! serialize to identical bytes. Scan reports also have a CSV export, and
//! tiling exports are CSV preceded by a one-line `# {json}` header.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{factorize, FiniteAbelianGroup};
use crate::scan::{CandidateOrder, ScanParams, ScanRecord, ScanReport, Verdict};
use crate::splitting::exact_cover::LimitKind;
use crate::splitting::{
    MultiplierKind, MultiplierSet, SearchOutcome, SearchResult, SearchStats, SingularityClass,
    SplitterSet, SplittingCertificate,
};
use crate::tiling::{IntBox, Translate};

pub const FORMAT_VERSION: u32 = 1;

pub const KIND_CERTIFICATE: &str = "splitting_certificate";
pub const KIND_NONEXISTENCE: &str = "nonexistence_attestation";
pub const KIND_INCONCLUSIVE: &str = "search_inconclusive";
pub const KIND_SCAN_REPORT: &str = "scan_report";
pub const KIND_CHECK_REPORT: &str = "check_report";
pub const KIND_TILING_EXPORT: &str = "tiling_export";

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

/// `(format_version, kind)` of a structured document.
pub fn peek_kind(text: &str) -> Result<String> {
    let v: Value = serde_json::from_str(text).map_err(format_err)?;
    let version = v.get("format_version").and_then(Value::as_u64);
    if version != Some(FORMAT_VERSION as u64) {
        return Err(Error::Format(format!(
            "unsupported format_version {version:?}, expected {FORMAT_VERSION}"
        )));
    }
    v.get("kind")
        .and_then(Value::as_str)
        .map(str::to_owned)
        .ok_or_else(|| Error::Format("missing kind".into()))
}

fn parse_kind<T: for<'de> Deserialize<'de>>(text: &str, kind: &str) -> Result<T> {
    let found = peek_kind(text)?;
    if found != kind {
        return Err(Error::Format(format!(
            "expected a {kind} document, found {found}"
        )));
    }
    serde_json::from_str(text).map_err(format_err)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipliersDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub values: Vec<i64>,
}

impl MultipliersDoc {
    pub fn of(m: &MultiplierSet) -> MultipliersDoc {
        match m.kind() {
            MultiplierKind::Interval { k } => MultipliersDoc {
                kind: "interval".into(),
                k: Some(k),
                values: m.values().to_vec(),
            },
            MultiplierKind::Explicit => MultipliersDoc {
                kind: "explicit".into(),
                k: None,
                values: m.values().to_vec(),
            },
        }
    }

    pub fn to_set(&self) -> Result<MultiplierSet> {
        match (self.kind.as_str(), self.k) {
            ("interval", Some(k)) => {
                let m = MultiplierSet::interval(k)?;
                if m.values() != self.values.as_slice() {
                    return Err(Error::Format(format!("values do not match S({k})")));
                }
                Ok(m)
            }
            ("interval", None) => Err(Error::Format("interval multipliers need k".into())),
            ("explicit", _) => MultiplierSet::explicit(self.values.clone()),
            (other, _) => Err(Error::Format(format!("unknown multiplier kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format_version: u32,
    pub kind: String,
    pub group_factors: Vec<u64>,
    pub multipliers: MultipliersDoc,
    /// Coordinate vectors, sorted.
    pub splitters: Vec<Vec<u64>>,
    pub classification: SingularityClass,
}

impl CertificateDoc {
    pub fn of(cert: &SplittingCertificate) -> CertificateDoc {
        CertificateDoc {
            format_version: FORMAT_VERSION,
            kind: KIND_CERTIFICATE.into(),
            group_factors: cert.group().factors().to_vec(),
            multipliers: MultipliersDoc::of(cert.multipliers()),
            splitters: cert
                .splitters()
                .elements()
                .iter()
                .map(|e| e.coords().to_vec())
                .collect(),
            classification: cert.classification().clone(),
        }
    }

    pub fn parse(text: &str) -> Result<CertificateDoc> {
        parse_kind(text, KIND_CERTIFICATE)
    }

    pub fn to_text(&self) -> String {
        to_json(self)
    }

    /// The group, multipliers and splitters, without checking the splitting.
    pub fn parts(&self) -> Result<(FiniteAbelianGroup, MultiplierSet, SplitterSet)> {
        let group = FiniteAbelianGroup::new(self.group_factors.clone())?;
        let multipliers = self.multipliers.to_set()?;
        let elements = self
            .splitters
            .iter()
            .map(|c| group.element(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        let splitters = SplitterSet::new(&group, elements)?;
        Ok((group, multipliers, splitters))
    }

    /// A verified certificate; fails if the stored classification is stale.
    pub fn to_certificate(&self) -> Result<SplittingCertificate> {
        let (g, m, s) = self.parts()?;
        let cert = SplittingCertificate::new(g, m, s)?;
        if cert.classification() != &self.classification {
            return Err(Error::Format(format!(
                "stored classification {} does not match computed {}",
                self.classification.tag,
                cert.classification().tag
            )));
        }
        Ok(cert)
    }
}

/// Written by a search that did not produce a splitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchAttestationDoc {
    pub format_version: u32,
    pub kind: String,
    pub group_factors: Vec<u64>,
    pub multipliers: MultipliersDoc,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    pub nodes: u64,
    pub max_depth: usize,
}

fn limit_name(kind: LimitKind) -> &'static str {
    match kind {
        LimitKind::Nodes => "nodes",
        LimitKind::Time => "time",
    }
}

fn parse_limit(s: &str) -> Result<LimitKind> {
    match s {
        "nodes" => Ok(LimitKind::Nodes),
        "time" => Ok(LimitKind::Time),
        other => Err(Error::Format(format!("unknown limit {other:?}"))),
    }
}

fn result_name(result: &SearchResult) -> &'static str {
    match result {
        SearchResult::Found(_) => "found",
        SearchResult::ExhaustedNoSolution => "exhausted_no_solution",
        SearchResult::ResourceLimit(_) => "resource_limit",
    }
}

impl SearchAttestationDoc {
    /// `None` when the search found a splitting.
    pub fn of(
        group: &FiniteAbelianGroup,
        m: &MultiplierSet,
        outcome: &SearchOutcome,
    ) -> Option<SearchAttestationDoc> {
        let (kind, limit) = match outcome.result {
            SearchResult::Found(_) => return None,
            SearchResult::ExhaustedNoSolution => (KIND_NONEXISTENCE, None),
            SearchResult::ResourceLimit(l) => (KIND_INCONCLUSIVE, Some(limit_name(l).to_owned())),
        };
        Some(SearchAttestationDoc {
            format_version: FORMAT_VERSION,
            kind: kind.into(),
            group_factors: group.factors().to_vec(),
            multipliers: MultipliersDoc::of(m),
            result: result_name(&outcome.result).into(),
            limit,
            nodes: outcome.stats.nodes,
            max_depth: outcome.stats.max_depth,
        })
    }

    pub fn parse(text: &str) -> Result<SearchAttestationDoc> {
        let kind = peek_kind(text)?;
        if kind != KIND_NONEXISTENCE && kind != KIND_INCONCLUSIVE {
            return Err(Error::Format(format!(
                "expected a search attestation, found {kind}"
            )));
        }
        serde_json::from_str(text).map_err(format_err)
    }

    pub fn to_text(&self) -> String {
        to_json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParamsDoc {
    pub k_min: u64,
    pub k_max: u64,
    pub n_max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTotalsDoc {
    pub records: u64,
    pub found: u64,
    pub trivial_expected: u64,
    pub conjecture_consistent: u64,
    pub violations: u64,
    pub trivial_missing: u64,
    pub inconclusive: u64,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecordDoc {
    pub k: u64,
    pub n: u64,
    #[serde(rename = "N")]
    pub order: u64,
    pub factorization: String,
    pub verdict: String,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    pub nodes: u64,
    pub max_depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitters: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReportDoc {
    pub format_version: u32,
    pub kind: String,
    pub params: ScanParamsDoc,
    pub complete: bool,
    pub status: String,
    pub totals: ScanTotalsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_millis: Option<u64>,
    pub records: Vec<ScanRecordDoc>,
}

impl ScanReportDoc {
    /// Timing fields are written only when `timing` is set, so that reports
    /// of identical scans are byte-identical by default.
    pub fn of(report: &ScanReport, timing: bool) -> ScanReportDoc {
        let t = report.totals();
        ScanReportDoc {
            format_version: FORMAT_VERSION,
            kind: KIND_SCAN_REPORT.into(),
            params: ScanParamsDoc {
                k_min: report.params.k_min,
                k_max: report.params.k_max,
                n_max: report.params.n_max,
            },
            complete: report.complete,
            status: report.status().as_str().into(),
            totals: ScanTotalsDoc {
                records: t.records,
                found: t.found,
                trivial_expected: t.trivial_expected,
                conjecture_consistent: t.conjecture_consistent,
                violations: t.violations,
                trivial_missing: t.trivial_missing,
                inconclusive: t.inconclusive,
                nodes: t.nodes,
            },
            wall_clock_millis: timing.then_some(report.wall_clock.as_millis() as u64),
            records: report
                .records
                .iter()
                .map(|r| ScanRecordDoc {
                    k: r.candidate.k,
                    n: r.candidate.n,
                    order: r.candidate.order,
                    factorization: r.candidate.factorization.to_string(),
                    verdict: r.verdict.as_str().into(),
                    result: result_name(&r.outcome.result).into(),
                    limit: r.limit().map(|l| limit_name(l).to_owned()),
                    nodes: r.outcome.stats.nodes,
                    max_depth: r.outcome.stats.max_depth,
                    millis: timing.then_some(r.outcome.stats.elapsed.as_millis() as u64),
                    splitters: r.outcome.found().map(SplitterSet::residues),
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<ScanReportDoc> {
        parse_kind(text, KIND_SCAN_REPORT)
    }

    pub fn to_text(&self) -> String {
        to_json(self)
    }

    /// Rebuild the report, re-verifying every found splitting and checking
    /// that stored verdicts match.
    pub fn to_report(&self) -> Result<ScanReport> {
        let params = ScanParams {
            k_min: self.params.k_min,
            k_max: self.params.k_max,
            n_max: self.params.n_max,
        };
        let records = self
            .records
            .iter()
            .map(record_from_doc)
            .collect::<Result<Vec<_>>>()?;
        if records.windows(2).any(|w| {
            (w[0].candidate.k, w[0].candidate.order) >= (w[1].candidate.k, w[1].candidate.order)
        }) {
            return Err(Error::Format(
                "records are not strictly sorted by (k, N)".into(),
            ));
        }
        Ok(ScanReport {
            params,
            records,
            complete: self.complete,
            wall_clock: Duration::from_millis(self.wall_clock_millis.unwrap_or(0)),
        })
    }
}

fn record_from_doc(doc: &ScanRecordDoc) -> Result<ScanRecord> {
    if doc.k == 0 || doc.order != doc.n * doc.k + 1 {
        return Err(Error::Format(format!(
            "N = {} is not n*k + 1 for n={}, k={}",
            doc.order, doc.n, doc.k
        )));
    }
    let factorization = factorize(doc.order);
    if factorization.to_string() != doc.factorization {
        return Err(Error::Format(format!(
            "factorization {} does not match N = {}",
            doc.factorization, doc.order
        )));
    }
    let group = FiniteAbelianGroup::cyclic(doc.order)?;
    let result = match (doc.result.as_str(), &doc.splitters, &doc.limit) {
        ("found", Some(s), None) => SearchResult::Found(SplitterSet::cyclic(&group, s)?),
        ("exhausted_no_solution", None, None) => SearchResult::ExhaustedNoSolution,
        ("resource_limit", None, Some(l)) => SearchResult::ResourceLimit(parse_limit(l)?),
        (other, _, _) => {
            return Err(Error::Format(format!(
                "inconsistent record result {other:?}"
            )))
        }
    };
    let outcome = SearchOutcome {
        result,
        stats: SearchStats {
            nodes: doc.nodes,
            max_depth: doc.max_depth,
            elapsed: Duration::from_millis(doc.millis.unwrap_or(0)),
        },
    };
    let candidate = CandidateOrder {
        k: doc.k,
        n: doc.n,
        order: doc.order,
        factorization,
    };
    let record = ScanRecord::new(candidate, outcome)?;
    if Verdict::parse(&doc.verdict) != Some(record.verdict) {
        return Err(Error::Format(format!(
            "stored verdict {} disagrees with recomputed {}",
            doc.verdict,
            record.verdict.as_str()
        )));
    }
    Ok(record)
}

/// One row of the scan CSV export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCsvRow {
    pub k: u64,
    pub n: u64,
    #[serde(rename = "N")]
    pub order: u64,
    pub factorization: String,
    pub verdict: String,
    pub nodes: u64,
    /// Empty unless timing was requested.
    pub millis: Option<u64>,
}

pub fn scan_csv(report: &ScanReport, timing: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.records {
        w.serialize(ScanCsvRow {
            k: r.candidate.k,
            n: r.candidate.n,
            order: r.candidate.order,
            factorization: r.candidate.factorization.to_string(),
            verdict: r.verdict.as_str().into(),
            nodes: r.outcome.stats.nodes,
            millis: timing.then_some(r.outcome.stats.elapsed.as_millis() as u64),
        })
        .expect("in-memory csv write");
    }
    if report.records.is_empty() {
        w.write_record(["k", "n", "N", "factorization", "verdict", "nodes", "millis"])
            .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

pub fn parse_scan_csv(text: &str) -> Result<Vec<ScanCsvRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(format_err)?.clone();
    if headers.iter().collect::<Vec<_>>()
        != ["k", "n", "N", "factorization", "verdict", "nodes", "millis"]
    {
        return Err(Error::Format(format!(
            "unexpected scan csv header {headers:?}"
        )));
    }
    r.deserialize()
        .map(|row| {
            let row: ScanCsvRow = row.map_err(format_err)?;
            if Verdict::parse(&row.verdict).is_none() {
                return Err(Error::Format(format!("unknown verdict {:?}", row.verdict)));
            }
            Ok(row)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReportDoc {
    pub format_version: u32,
    pub kind: String,
    pub check_name: String,
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
    pub verdict: String,
}

impl CheckReportDoc {
    pub fn new(
        check_name: &str,
        inputs: Value,
        expected: Value,
        actual: Value,
        pass: bool,
    ) -> CheckReportDoc {
        CheckReportDoc {
            format_version: FORMAT_VERSION,
            kind: KIND_CHECK_REPORT.into(),
            check_name: check_name.into(),
            inputs,
            expected,
            actual,
            verdict: if pass { "pass" } else { "fail" }.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn parse(text: &str) -> Result<CheckReportDoc> {
        parse_kind(text, KIND_CHECK_REPORT)
    }

    pub fn to_text(&self) -> String {
        to_json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingHeader {
    pub format_version: u32,
    pub kind: String,
    pub n: usize,
    pub k: u64,
    #[serde(rename = "N")]
    pub order: u64,
    pub weights: Vec<u64>,
    /// Row-major; columns are basis vectors.
    pub basis: Vec<Vec<i64>>,
    #[serde(rename = "box")]
    pub region: IntBox,
    pub translates: usize,
}

/// `# {header}` followed by CSV rows `a0..a{n-1},x0..x{n-1}`, one per tile
/// point, grouped by anchor.
pub fn tiling_export_text(header: &TilingHeader, translates: &[Translate]) -> String {
    let mut out = format!(
        "# {}\n",
        serde_json::to_string(header).expect("header serializes")
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    let names: Vec<String> = (0..header.n)
        .map(|i| format!("a{i}"))
        .chain((0..header.n).map(|i| format!("x{i}")))
        .collect();
    w.write_record(&names).expect("in-memory csv write");
    for t in translates {
        for p in &t.points {
            let row: Vec<String> = t.anchor.iter().chain(p).map(i64::to_string).collect();
            w.write_record(&row).expect("in-memory csv write");
        }
    }
    out.push_str(
        std::str::from_utf8(&w.into_inner().expect("in-memory csv flush")).expect("utf-8"),
    );
    out
}

pub fn parse_tiling_export(text: &str) -> Result<(TilingHeader, Vec<Translate>)> {
    let (first, rest) = text
        .split_once('\n')
        .ok_or_else(|| Error::Format("missing tiling header".into()))?;
    let json = first
        .strip_prefix("# ")
        .ok_or_else(|| Error::Format("tiling header must start with '# '".into()))?;
    let header: TilingHeader = serde_json::from_str(json).map_err(format_err)?;
    if header.format_version != FORMAT_VERSION || header.kind != KIND_TILING_EXPORT {
        return Err(Error::Format("not a version-1 tiling export".into()));
    }
    let n = header.n;
    let mut r = csv::Reader::from_reader(rest.as_bytes());
    if r.headers().map_err(format_err)?.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            actual: r.headers().map_err(format_err)?.len(),
        });
    }
    let mut translates: Vec<Translate> = Vec::new();
    for row in r.records() {
        let row = row.map_err(format_err)?;
        let values = row
            .iter()
            .map(|s| s.parse::<i64>().map_err(format_err))
            .collect::<Result<Vec<_>>>()?;
        let (anchor, point) = values.split_at(n);
        match translates.last_mut() {
            Some(t) if t.anchor == anchor => t.points.push(point.to_vec()),
            _ => translates.push(Translate {
                anchor: anchor.to_vec(),
                points: vec![point.to_vec()],
            }),
        }
    }
    if translates.len() != header.translates {
        return Err(Error::Format(format!(
            "header announces {} translates, found {}",
            header.translates,
            translates.len()
        )));
    }
    Ok((header, translates))
}
