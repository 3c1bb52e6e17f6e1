//! `msetforge` command-line front end.
//!
//! Every subcommand prints one JSON object `{"status", "payload"}` on stdout
//! and a short human summary on stderr. Exit codes: 0 ok, 2 not covered or
//! partial, 1 error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{ArgGroup, Args, Parser, Subcommand};
use msetforge::aurifeuille::{aurifeuillian_pair, two_squares, verify_pair};
use msetforge::lehmer::{
    is_primitive_divisor, phi_value, primitive_divisors, rank_of_appearance, u, v_odd, LehmerParams,
};
use msetforge::nt::{has_order, is_prime};
use msetforge::poly::{cyclotomic, res_eps, resultant, IntPoly};
use msetforge::recsim::{mset_scan, verify_witness, ScanBudget};
use msetforge::suite;
use msetforge::witness::{
    find_witness, zsigmondy_certificate, zsigmondy_witness, Check, QuadraticSeed, Witness,
    WitnessOutcome, ZsigmondyOutcome,
};
use msetforge::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "msetforge",
    version,
    about = "Certified residue counts of integer linear recurrences"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that the recurrence for g takes exactly m residues modulo some prime.
    Witness(WitnessArgs),
    /// Enumerate residue counts of g for every modulus up to a bound.
    MsetScan(ScanArgs),
    /// Lehmer sequence values, cyclotomic parts, ranks and primitive divisors.
    Lehmer(LehmerArgs),
    /// The n-th cyclotomic polynomial.
    Cyclotomic(CyclotomicArgs),
    /// Resultant of f with g, or with Φ_m(εX).
    Resultant(ResultantArgs),
    /// Aurifeuillian factor pair F, G for (n, k).
    Aurifeuille(AurifeuilleArgs),
    /// Write Φ_ℓ(γ, δ) as a sum of two squares.
    TwoSquares(TwoSquaresArgs),
    /// Smallest prime p with ord_p(a) = m.
    Zsigmondy(ZsigmondyArgs),
    /// Run the acceptance suite or re-check a stored witness.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, allow_hyphen_values = true)]
    t: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    c: i8,
    /// Coefficients, constant term first (default: the quadratic itself).
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long)]
    m: u64,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    #[arg(long = "m-max")]
    m_max: u64,
    /// Cap on the total number of enumerated states.
    #[arg(long = "max-states")]
    max_states: Option<u64>,
    /// Also write the per-modulus table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("query").required(true).args(["u", "v", "phi", "rank", "primitive"])))]
struct LehmerArgs {
    #[arg(long = "R", allow_hyphen_values = true)]
    r: BigInt,
    #[arg(long = "Q", allow_hyphen_values = true)]
    q: BigInt,
    /// u_n
    #[arg(long)]
    u: Option<u64>,
    /// v_n for odd n
    #[arg(long)]
    v: Option<u64>,
    /// Φ_n(γ, δ)
    #[arg(long)]
    phi: Option<u64>,
    /// Rank of appearance of a prime
    #[arg(long)]
    rank: Option<BigInt>,
    /// Primitive divisors of u_n
    #[arg(long)]
    primitive: Option<u64>,
    /// With --primitive: test this prime instead of listing
    #[arg(long, requires = "primitive")]
    p: Option<BigInt>,
}

#[derive(Args)]
struct CyclotomicArgs {
    #[arg(long)]
    n: u64,
    /// Evaluate at this integer.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<BigInt>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("other").required(true).args(["g", "m"])))]
struct ResultantArgs {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    /// Sign ε in Φ_m(εX).
    #[arg(long, allow_hyphen_values = true, default_value_t = 1, requires = "m")]
    eps: i8,
}

#[derive(Args)]
struct AurifeuilleArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// Check gcd(F(x, y), G(x, y)) at this point (with --y).
    #[arg(long, allow_hyphen_values = true, requires = "y")]
    x: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    y: Option<BigInt>,
}

#[derive(Args)]
struct TwoSquaresArgs {
    #[arg(long = "R", allow_hyphen_values = true)]
    r: BigInt,
    #[arg(long = "Q", allow_hyphen_values = true, default_value_t = BigInt::from(1))]
    q: BigInt,
    #[arg(long)]
    ell: u64,
    /// Squarefree part of R(R - 4Q).
    #[arg(long)]
    d0: i64,
    /// R(R - 4Q) = d0 · d1^2
    #[arg(long, default_value_t = BigInt::from(1))]
    d1: BigInt,
}

#[derive(Args)]
struct ZsigmondyArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: BigInt,
    #[arg(long)]
    m: u64,
    /// Polynomial with root a; emits a full witness.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["suite", "witness"])))]
struct VerifyArgs {
    /// Only `paper` is available.
    #[arg(long, value_parser = ["paper"])]
    suite: Option<String>,
    /// Run a single criterion of the suite.
    #[arg(long, requires = "suite")]
    criterion: Option<u8>,
    /// Witness JSON file.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    NotCovered,
    Partial,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotCovered => "not-covered",
            Status::Partial => "partial",
            Status::Error => "error",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotCovered | Status::Partial => 2,
            Status::Error => 1,
        }
    }
}

struct Report {
    status: Status,
    payload: Value,
    summary: String,
}

impl Report {
    fn ok(payload: Value, summary: impl Into<String>) -> Self {
        Report {
            status: Status::Ok,
            payload,
            summary: summary.into(),
        }
    }
}

fn poly(s: &str) -> anyhow::Result<IntPoly> {
    s.parse::<IntPoly>()
        .with_context(|| format!("polynomial {s:?}"))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn outcome_report(out: WitnessOutcome) -> Report {
    match out {
        WitnessOutcome::Found(w) => {
            let summary = format!("m = {} via {}: p = {}, a = {}", w.m, w.route, w.p, w.a);
            Report::ok(to_value(&w), summary)
        }
        WitnessOutcome::NotCovered(nc) => Report {
            status: if nc.budget_exhausted {
                Status::Partial
            } else {
                Status::NotCovered
            },
            summary: format!("m = {} not covered: {}", nc.m, nc.reasons.join("; ")),
            payload: to_value(&nc),
        },
    }
}

fn run_witness(a: WitnessArgs) -> anyhow::Result<Report> {
    let seed = QuadraticSeed::new(a.t, a.c)?;
    let g = match &a.g {
        Some(s) => poly(s)?,
        None => seed.f(),
    };
    Ok(outcome_report(find_witness(&seed, &g, a.m)?))
}

fn run_scan(a: ScanArgs) -> anyhow::Result<Report> {
    let g = poly(&a.g)?;
    let mut budget = ScanBudget::default();
    if let Some(s) = a.max_states {
        budget.max_states = s;
    }
    let scan = mset_scan(&g, a.m_max, &budget)?;
    if let Some(path) = &a.csv {
        std::fs::write(path, scan.to_csv())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let counts: Vec<u64> = scan.counts().into_iter().collect();
    let summary = format!(
        "{} distinct counts up to modulus {}{}",
        counts.len(),
        scan.scanned_to,
        if scan.partial {
            " (budget reached)"
        } else {
            ""
        }
    );
    let payload = json!({
        "m_max": scan.m_max,
        "scanned_to": scan.scanned_to,
        "partial": scan.partial,
        "counts": counts,
        "witnesses": scan.witnesses,
    });
    let status = if scan.partial {
        Status::Partial
    } else {
        Status::Ok
    };
    Ok(Report {
        status,
        payload,
        summary,
    })
}

fn run_lehmer(a: LehmerArgs) -> anyhow::Result<Report> {
    let params = LehmerParams::new(a.r.clone(), a.q.clone())?;
    let base = |key: &str, n: Value, value: Value| json!({ "R": a.r.to_string(), "Q": a.q.to_string(), key: n, "value": value });
    if let Some(n) = a.u {
        let v = u(&params, n).to_string();
        return Ok(Report::ok(
            base("n", json!(n), json!(v)),
            format!("u_{n} = {v}"),
        ));
    }
    if let Some(n) = a.v {
        let v = v_odd(&params, n)?.to_string();
        return Ok(Report::ok(
            base("n", json!(n), json!(v)),
            format!("v_{n} = {v}"),
        ));
    }
    if let Some(n) = a.phi {
        let v = phi_value(&params, n)?.to_string();
        return Ok(Report::ok(
            base("n", json!(n), json!(v)),
            format!("Φ_{n} = {v}"),
        ));
    }
    if let Some(p) = &a.rank {
        let r = rank_of_appearance(&params, p)?;
        let summary = match r {
            Some(r) => format!("rank of {p} is {r}"),
            None => format!("{p} never divides the sequence"),
        };
        return Ok(Report::ok(
            base("p", json!(p.to_string()), json!(r)),
            summary,
        ));
    }
    let n = a.primitive.expect("group requires one query");
    if let Some(p) = &a.p {
        let rep = is_primitive_divisor(&params, p, n)?;
        let summary = format!("{p} primitive for u_{n}: {}", rep.is_primitive);
        return Ok(Report::ok(to_value(&rep), summary));
    }
    let pd = primitive_divisors(&params, n)?;
    let list: Vec<String> = pd.primes.iter().map(|p| p.to_string()).collect();
    let summary = format!("primitive divisors of u_{n}: [{}]", list.join(", "));
    let status = if pd.is_complete() {
        Status::Ok
    } else {
        Status::Partial
    };
    Ok(Report {
        status,
        payload: to_value(&pd),
        summary,
    })
}

fn run_cyclotomic(a: CyclotomicArgs) -> anyhow::Result<Report> {
    if a.n == 0 {
        return Err(Error::Domain("cyclotomic: n must be positive".into()).into());
    }
    let phi = cyclotomic(a.n);
    let mut payload = json!({ "n": a.n, "coeffs": phi, "pretty": phi.pretty() });
    if let Some(x) = &a.at {
        payload["at"] = json!(x.to_string());
        payload["value"] = json!(phi.eval(x).to_string());
    }
    Ok(Report::ok(payload, format!("Φ_{} = {}", a.n, phi.pretty())))
}

fn run_resultant(a: ResultantArgs) -> anyhow::Result<Report> {
    let f = poly(&a.f)?;
    let (value, other) = match (&a.g, a.m) {
        (Some(g), _) => {
            let g = poly(g)?;
            (resultant(&f, &g)?, g.pretty())
        }
        (None, Some(m)) => (
            res_eps(&f, m, a.eps)?,
            format!("Φ_{m}({}X)", if a.eps < 0 { "-" } else { "" }),
        ),
        (None, None) => unreachable!("group requires --g or --m"),
    };
    let summary = format!("Res({}, {other}) = {value}", f.pretty());
    Ok(Report::ok(
        json!({ "resultant": value.to_string() }),
        summary,
    ))
}

fn run_aurifeuille(a: AurifeuilleArgs) -> anyhow::Result<Report> {
    let pair = aurifeuillian_pair(a.n, a.k)?;
    let verified = verify_pair(&pair);
    let mut payload = to_value(&pair);
    payload["verified"] = json!(verified);
    if let (Some(x), Some(y)) = (&a.x, &a.y) {
        payload["common_divisor_ok"] = json!(pair.common_divisor_ok(x, y));
    }
    let summary = format!("F = {}, G = {}", pair.f, pair.g);
    let status = if verified { Status::Ok } else { Status::Error };
    Ok(Report {
        status,
        payload,
        summary,
    })
}

fn run_two_squares(a: TwoSquaresArgs) -> anyhow::Result<Report> {
    let params = LehmerParams::new(a.r, a.q)?;
    let ts = two_squares(&params, a.ell, a.d0, &a.d1)?;
    let summary = format!("Φ_{} = {}^2 + {}^2", ts.ell, ts.a, ts.b);
    Ok(Report::ok(to_value(&ts), summary))
}

fn run_zsigmondy(a: ZsigmondyArgs) -> anyhow::Result<Report> {
    if let Some(g) = &a.g {
        return Ok(outcome_report(zsigmondy_certificate(&poly(g)?, &a.a, a.m)?));
    }
    let out = zsigmondy_witness(&a.a, a.m)?;
    let (status, summary) = match &out {
        ZsigmondyOutcome::Prime { p } => (Status::Ok, format!("ord_{p}({}) = {}", a.a, a.m)),
        ZsigmondyOutcome::Exception { listed } => (
            Status::NotCovered,
            format!("no prime has order {} at {} (listed: {listed})", a.m, a.a),
        ),
    };
    Ok(Report {
        status,
        payload: to_value(&out),
        summary,
    })
}

fn run_verify(a: VerifyArgs) -> anyhow::Result<Report> {
    if let Some(path) = &a.witness {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let w = Witness::from_json(&text)?;
        let checks = vec![
            Check {
                name: "p-prime".into(),
                ok: is_prime(&w.p),
            },
            Check {
                name: "p-divides-g(a)".into(),
                ok: w.g.is_monic() && w.g.eval_mod(&w.a, &w.p) == BigInt::from(0),
            },
            Check {
                name: "order-of-a-is-m".into(),
                ok: has_order(&w.a, w.m, &w.p),
            },
            Check {
                name: "recurrence-simulation".into(),
                ok: verify_witness(&w),
            },
        ];
        let ok = checks.iter().all(|c| c.ok);
        let summary = format!(
            "witness m = {}, p = {}: {}",
            w.m,
            w.p,
            if ok { "verified" } else { "REJECTED" }
        );
        let status = if ok { Status::Ok } else { Status::Error };
        return Ok(Report {
            status,
            payload: json!({ "verified": ok, "checks": checks }),
            summary,
        });
    }
    let outcomes = match a.criterion {
        Some(id) => vec![suite::run(id).with_context(|| format!("no criterion {id}"))?],
        None => suite::run_all(),
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let summary = outcomes
        .iter()
        .map(|o| o.line())
        .collect::<Vec<_>>()
        .join("\n");
    let summary = format!("{summary}\n{passed}/{} criteria passed", outcomes.len());
    let status = if passed == outcomes.len() {
        Status::Ok
    } else {
        Status::Error
    };
    Ok(Report {
        status,
        payload: json!({ "criteria": outcomes }),
        summary,
    })
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring thread pool")?;
    }
    match cli.command {
        Command::Witness(a) => run_witness(a),
        Command::MsetScan(a) => run_scan(a),
        Command::Lehmer(a) => run_lehmer(a),
        Command::Cyclotomic(a) => run_cyclotomic(a),
        Command::Resultant(a) => run_resultant(a),
        Command::Aurifeuille(a) => run_aurifeuille(a),
        Command::TwoSquares(a) => run_two_squares(a),
        Command::Zsigmondy(a) => run_zsigmondy(a),
        Command::Verify(a) => run_verify(a),
    }
}

fn error_report(err: anyhow::Error) -> Report {
    let status = match err.downcast_ref::<Error>() {
        Some(Error::Budget { .. }) => Status::Partial,
        _ => Status::Error,
    };
    let message = format!("{err:#}");
    Report {
        status,
        payload: json!({ "message": message }),
        summary: message,
    }
}

fn emit(report: Report) -> ExitCode {
    let envelope = json!({ "status": report.status.as_str(), "payload": report.payload });
    println!("{envelope}");
    eprintln!("{}", report.summary);
    ExitCode::from(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let envelope =
                json!({ "status": "error", "payload": { "message": e.kind().to_string() } });
            println!("{envelope}");
            return ExitCode::from(1);
        }
    };
    emit(run(cli).unwrap_or_else(error_report))
}
