//! `splitkit` command-line front end.
//!
//! Exit codes: 0 affirmative, 1 negative answer to a well-formed question,
//! 2 usage or input error, 3 budget exhausted or result incomplete. Every
//! command ends its standard output with one `key=value` summary line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use splitkit::checks::{
    abcde_profile, check_counting_identity, decompose_k, digit_pattern_check, stratify,
    tw_disjointness_check, PrimeSpec,
};
use splitkit::format::{
    scan_csv, tiling_export_text, CertificateDoc, CheckReportDoc, ScanReportDoc,
    SearchAttestationDoc, TilingHeader, FORMAT_VERSION, KIND_TILING_EXPORT,
};
use splitkit::group::FiniteAbelianGroup;
use splitkit::scan::{scan, ScanConfig, ScanParams, ScanStatus};
use splitkit::splitting::{
    enumerate_all_splittings, s87_property_check, search_splitter, verify_splitting,
    EnumerationBudget, MultiplierSet, SearchConfig, SearchResult, SplittingCertificate,
};
use splitkit::tiling::{export_translates, lattice_from_splitting, semi_cross, IntBox};
use splitkit::Error;

const CHECK_NAMES: [&str; 5] = ["abcde", "digits", "strata", "tw", "s87"];

#[derive(Parser)]
#[command(
    name = "splitkit",
    version,
    about = "Splittings of finite abelian groups by multiplier sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a certificate document.
    Verify { cert: PathBuf },
    /// Search for a splitter set of Z_N by S(k).
    Search(SearchArgs),
    /// Scan the purely singular orders of S(k) over a range of k.
    Scan(ScanArgs),
    /// Export the lattice tiling induced by a cyclic S(k) certificate.
    Tile(TileArgs),
    /// Run a named check: abcde, digits, strata, tw, s87.
    Check(CheckArgs),
}

#[derive(Args)]
struct Budget {
    /// Search node limit.
    #[arg(long, env = "SPLITKIT_NODE_LIMIT", default_value_t = splitkit::splitting::search::DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    /// Search time limit in seconds.
    #[arg(long, env = "SPLITKIT_TIME_LIMIT_SECS", default_value_t = 60)]
    time_limit_secs: u64,
}

impl Budget {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            node_limit: self.node_limit,
            time_limit: Duration::from_secs(self.time_limit_secs),
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "N", value_name = "N")]
    order: u64,
    #[arg(long)]
    k: u64,
    #[command(flatten)]
    budget: Budget,
    /// Write the certificate or attestation here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Structured,
    Tabular,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 1)]
    k_min: u64,
    #[arg(long)]
    k_max: u64,
    /// Largest n searched for each k (default 2k).
    #[arg(long)]
    n_max: Option<u64>,
    /// Continue from a structured report, skipping records it already holds.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Stop after this many newly searched records.
    #[arg(long)]
    max_records: Option<usize>,
    /// Include wall-clock and per-record times in the outputs.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "structured")]
    format: OutputFormat,
    /// Also write the tabular export here.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct TileArgs {
    #[arg(long)]
    cert: PathBuf,
    /// Inclusive ranges `lo:hi`, one per coordinate or one for all.
    #[arg(long = "box", value_name = "LO:HI,...")]
    region: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    name: String,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    /// p-coprime part of |G| for the digits check.
    #[arg(long, default_value_t = 1)]
    m: u64,
    /// Primes of m as `prime:alpha:beta`, comma separated.
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long = "N", value_name = "N")]
    order: Option<u64>,
    /// Node limit for the s87 enumeration.
    #[arg(long, env = "SPLITKIT_NODE_LIMIT", default_value_t = 100_000_000)]
    node_limit: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command outcome: exit code plus the summary line.
struct Done {
    code: u8,
    summary: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::ResourceLimit(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<Done, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_certificate(path: &Path) -> Result<CertificateDoc, Failure> {
    Ok(CertificateDoc::parse(&read(path)?)?)
}

/// Parse and verify; `Err` with code 1 when the certificate is not a splitting.
fn valid_certificate(path: &Path) -> Result<SplittingCertificate, Failure> {
    let doc = load_certificate(path)?;
    let (g, m, s) = doc.parts()?;
    if let Some(f) = verify_splitting(&g, &m, &s).failure {
        return Err(Failure {
            code: 1,
            message: format!("invalid certificate: {f}"),
        });
    }
    Ok(SplittingCertificate::new(g, m, s)?)
}

/// `Z_9 x Z_3` as `9x3`, so summary values never contain spaces.
fn group_tag(g: &FiniteAbelianGroup) -> String {
    g.factors()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("x")
}

fn cmd_verify(cert: &Path) -> CmdResult {
    let doc = load_certificate(cert)?;
    let (g, m, s) = doc.parts()?;
    let report = verify_splitting(&g, &m, &s);
    if let Some(failure) = report.failure {
        println!("invalid: {failure}");
        let kind = serde_json::to_value(&failure)
            .ok()
            .and_then(|v| v.get("failure").and_then(|f| f.as_str()).map(str::to_owned))
            .unwrap_or_default();
        return Ok(Done {
            code: 1,
            summary: format!("status=invalid failure={kind} group={}", group_tag(&g)),
        });
    }
    let cert = SplittingCertificate::new(g.clone(), m, s)?;
    if cert.classification() != &doc.classification {
        println!(
            "invalid: stored classification {} but computed {}",
            doc.classification.tag,
            cert.classification().tag
        );
        return Ok(Done {
            code: 1,
            summary: format!(
                "status=invalid failure=classification_mismatch group={}",
                group_tag(&g)
            ),
        });
    }
    println!("valid splitting of {g}");
    Ok(Done {
        code: 0,
        summary: format!(
            "status=valid group={} multipliers={} splitters={} classification={}",
            group_tag(cert.group()),
            cert.multipliers().len(),
            cert.splitters().len(),
            cert.classification().tag
        ),
    })
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let group = FiniteAbelianGroup::cyclic(args.order)?;
    let multipliers = MultiplierSet::interval(args.k)?;
    let outcome = search_splitter(&group, &multipliers, &args.budget.config())?;
    let stats = format!(
        "nodes={} max_depth={}",
        outcome.stats.nodes, outcome.stats.max_depth
    );
    let (code, text, result) = match &outcome.result {
        SearchResult::Found(s) => {
            let cert = SplittingCertificate::new(group.clone(), multipliers.clone(), s.clone())?;
            (0, CertificateDoc::of(&cert).to_text(), "found".to_owned())
        }
        SearchResult::ExhaustedNoSolution => {
            let doc = SearchAttestationDoc::of(&group, &multipliers, &outcome).expect("not found");
            (1, doc.to_text(), "exhausted_no_solution".to_owned())
        }
        SearchResult::ResourceLimit(_) => {
            let doc = SearchAttestationDoc::of(&group, &multipliers, &outcome).expect("not found");
            let limit = doc.limit.clone().unwrap_or_default();
            (3, doc.to_text(), format!("resource_limit limit={limit}"))
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(Done {
        code,
        summary: format!("result={result} N={} k={} {stats}", args.order, args.k),
    })
}

fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let params = ScanParams {
        k_min: args.k_min,
        k_max: args.k_max,
        n_max: args.n_max,
    };
    let resume = match &args.resume {
        Some(path) => Some(ScanReportDoc::parse(&read(path)?)?.to_report()?),
        None => None,
    };
    let mut config = ScanConfig::new(params);
    config.search = args.budget.config();
    config.threads = args.jobs;
    config.max_new_records = args.max_records;
    let report = scan(&config, resume)?;

    let text = match args.format {
        OutputFormat::Structured => ScanReportDoc::of(&report, args.timing).to_text(),
        OutputFormat::Tabular => scan_csv(&report, args.timing),
    };
    emit(args.out.as_deref(), &text)?;
    if let Some(path) = &args.csv {
        emit(Some(path), &scan_csv(&report, args.timing))?;
    }
    let status = report.status();
    let t = report.totals();
    let code = match status {
        ScanStatus::Consistent => 0,
        ScanStatus::Violation | ScanStatus::Defect => 1,
        ScanStatus::Inconclusive | ScanStatus::Partial => 3,
    };
    let mut summary = format!(
        "status={} records={} found={} violations={} inconclusive={} trivial_missing={} complete={} nodes={}",
        status.as_str(),
        t.records,
        t.found,
        t.violations,
        t.inconclusive,
        t.trivial_missing,
        report.complete,
        t.nodes
    );
    if args.timing {
        summary.push_str(&format!(" millis={}", report.wall_clock.as_millis()));
    }
    Ok(Done { code, summary })
}

fn parse_box(spec: &str, n: usize) -> Result<IntBox, Failure> {
    let ranges = spec
        .split(',')
        .map(|r| {
            let (lo, hi) = r
                .split_once(':')
                .ok_or_else(|| usage(format!("range {r:?} is not lo:hi")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| usage(format!("bad bound {s:?}")))
            };
            Ok((parse(lo)?, parse(hi)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let ranges = match ranges.len() {
        1 => vec![ranges[0]; n],
        len if len == n => ranges,
        len => return Err(usage(format!("box has {len} ranges for dimension {n}"))),
    };
    Ok(IntBox::new(
        ranges.iter().map(|r| r.0).collect(),
        ranges.iter().map(|r| r.1).collect(),
    )?)
}

fn cmd_tile(args: &TileArgs) -> CmdResult {
    let doc = load_certificate(&args.cert)?;
    let (g, m, _) = doc.parts()?;
    g.cyclic_order()?;
    let k = m
        .as_interval()
        .ok_or_else(|| usage("tiling needs interval multipliers S(k)"))?;
    let cert = valid_certificate(&args.cert)?;
    let (hom, lattice) = lattice_from_splitting(&cert)?;
    let n = hom.weights.len();
    let shape = semi_cross(n, k)?;
    let region = parse_box(&args.region, n)?;
    let translates = export_translates(&lattice, &shape, &region)?;
    let header = TilingHeader {
        format_version: FORMAT_VERSION,
        kind: KIND_TILING_EXPORT.into(),
        n,
        k,
        order: hom.modulus,
        weights: hom.weights.clone(),
        basis: lattice.basis().to_vec(),
        region: region.clone(),
        translates: translates.len(),
    };
    emit(
        args.out.as_deref(),
        &tiling_export_text(&header, &translates),
    )?;
    let anchors_in_box = translates
        .iter()
        .filter(|t| region.contains(&t.anchor))
        .count();
    Ok(Done {
        code: 0,
        summary: format!(
            "status=tiled n={n} k={k} N={} det={} translates={} anchors_in_box={anchors_in_box} cells={}",
            hom.modulus,
            lattice.determinant(),
            translates.len(),
            region.volume()
        ),
    })
}

fn need<T: Copy>(value: Option<T>, flag: &str, check: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("check {check} needs --{flag}")))
}

fn parse_primes(spec: Option<&str>) -> Result<Vec<PrimeSpec>, Failure> {
    let Some(spec) = spec.filter(|s| !s.trim().is_empty()) else {
        return Ok(Vec::new());
    };
    spec.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.split(':').collect();
            let [prime, alpha, beta] = parts.as_slice() else {
                return Err(usage(format!(
                    "prime spec {item:?} is not prime:alpha:beta"
                )));
            };
            let num = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| usage(format!("bad number {s:?}")))
            };
            Ok(PrimeSpec {
                prime: num(prime)?,
                alpha: num(alpha)? as u32,
                beta: num(beta)? as u32,
            })
        })
        .collect()
}

fn check_abcde(args: &CheckArgs) -> Result<CheckReportDoc, Failure> {
    let k = need(args.k, "k", "abcde")?;
    let p = need(args.p, "p", "abcde")?;
    let primes = parse_primes(args.primes.as_deref())?;
    let prof = abcde_profile(k, p, &primes)?;
    Ok(CheckReportDoc::new(
        "abcde",
        json!({ "k": k, "p": p, "primes": primes }),
        json!({ "A": prof.b + prof.c, "D": prof.c, "C": prof.closed_form_d, "hypothesis": true }),
        json!({
            "A": prof.a, "B": prof.b, "C": prof.c, "D": prof.d, "E": prof.e,
            "beta": prof.decomposition.beta, "d": prof.decomposition.d,
            "m_prime": prof.decomposition.m_prime, "hypothesis": prof.hypothesis,
        }),
        prof.hypothesis && prof.identities_hold(),
    ))
}

fn check_digits(args: &CheckArgs) -> Result<CheckReportDoc, Failure> {
    let k = need(args.k, "k", "digits")?;
    let p = need(args.p, "p", "digits")?;
    let dec = decompose_k(k, p, args.m)?;
    let digits = splitkit::checks::base_p_digits(k, p)?;
    let pass = digit_pattern_check(&dec);
    Ok(CheckReportDoc::new(
        "digits",
        json!({ "k": k, "p": p, "m": args.m }),
        json!({ "pattern": true }),
        json!({
            "pattern": pass, "digits": digits.digits, "beta": dec.beta, "d": dec.d,
            "m_prime": dec.m_prime, "m_prime_divides_m": dec.m_prime_divides_m,
        }),
        pass,
    ))
}

fn check_strata(args: &CheckArgs) -> Result<CheckReportDoc, Failure> {
    let path = args
        .cert
        .as_deref()
        .ok_or_else(|| usage("check strata needs --cert"))?;
    let cert = valid_certificate(path)?;
    let primes: Vec<u64> = match args.p {
        Some(p) => vec![p],
        None => cert.group().order_factorization().primes().collect(),
    };
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    let mut pass = true;
    for p in primes {
        let profile = stratify(&cert, p)?;
        for i in 1..=profile.alpha {
            let c = check_counting_identity(&cert, p, i)?;
            pass &= c.holds();
            expected.push(json!({ "p": p, "i": i, "G_i": c.expected }));
            actual.push(json!({ "p": p, "i": i, "sum": c.actual, "S_counts": profile.s_counts }));
        }
    }
    Ok(CheckReportDoc::new(
        "strata",
        json!({ "cert": path.display().to_string(), "p": args.p }),
        json!(expected),
        json!(actual),
        pass,
    ))
}

fn check_tw(args: &CheckArgs) -> Result<CheckReportDoc, Failure> {
    let path = args
        .cert
        .as_deref()
        .ok_or_else(|| usage("check tw needs --cert"))?;
    let cert = valid_certificate(path)?;
    let report = tw_disjointness_check(&cert)?;
    Ok(CheckReportDoc::new(
        "tw",
        json!({ "cert": path.display().to_string() }),
        json!({ "units": report.unit_count, "D": report.size_d, "E": report.size_e, "W": report.expected_w_size }),
        serde_json::to_value(&report).expect("report serializes"),
        report.passed(),
    ))
}

fn check_s87(args: &CheckArgs) -> Result<CheckReportDoc, Failure> {
    let n = match (args.order, args.cert.as_deref()) {
        (Some(n), None) => n,
        (None, Some(path)) => {
            let cert = valid_certificate(path)?;
            let holds = s87_property_check(&cert)?;
            return Ok(CheckReportDoc::new(
                "s87",
                json!({ "cert": path.display().to_string() }),
                json!({ "holds": true }),
                json!({ "holds": holds }),
                holds,
            ));
        }
        _ => return Err(usage("check s87 needs exactly one of --N or --cert")),
    };
    let mut total = 0u64;
    let mut counterexamples = Vec::new();
    let mut sizes = Vec::new();
    for size in (1..n).filter(|a| (n - 1) % a == 0) {
        let certs = enumerate_all_splittings(
            n,
            size as usize,
            EnumerationBudget {
                max_nodes: args.node_limit,
            },
        )?;
        sizes.push(json!({ "multipliers": size, "splittings": certs.len() }));
        for c in &certs {
            total += 1;
            if !s87_property_check(c)? {
                counterexamples.push(json!({
                    "multipliers": c.multipliers().values(),
                    "splitters": c.splitters().residues(),
                }));
            }
        }
    }
    Ok(CheckReportDoc::new(
        "s87",
        json!({ "N": n }),
        json!({ "counterexamples": 0 }),
        json!({ "splittings": total, "by_size": sizes, "counterexamples": counterexamples }),
        counterexamples.is_empty(),
    ))
}

fn cmd_check(args: &CheckArgs) -> CmdResult {
    let doc = match args.name.as_str() {
        "abcde" => check_abcde(args)?,
        "digits" => check_digits(args)?,
        "strata" => check_strata(args)?,
        "tw" => check_tw(args)?,
        "s87" => check_s87(args)?,
        other => {
            return Err(usage(format!(
                "unknown check {other:?}; known checks: {}",
                CHECK_NAMES.join(", ")
            )))
        }
    };
    emit(args.out.as_deref(), &doc.to_text())?;
    Ok(Done {
        code: if doc.passed() { 0 } else { 1 },
        summary: format!("check={} verdict={}", doc.check_name, doc.verdict),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { cert } => cmd_verify(cert),
        Command::Search(args) => cmd_search(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Tile(args) => cmd_tile(args),
        Command::Check(args) => cmd_check(args),
    };
    match result {
        Ok(done) => {
            println!("{}", done.summary);
            ExitCode::from(done.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            println!("status=error code={}", f.code);
            ExitCode::from(f.code)
        }
    }
}
