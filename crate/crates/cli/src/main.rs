use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sowkit::codes::all_vectors;
use sowkit::good::{self, MatrixEnsemble, DEFAULT_GOOD_LIMIT};
use sowkit::ldpc::{self, expected_second_moment};
use sowkit::oracle::{self, OracleReport, DEFAULT_CODEWORD_LIMIT, DEFAULT_CONFIG_LIMIT};
use sowkit::poly::{complete_enumerator, parse_rat, rat_to_f64, rat_to_string, EnumeratorJson};
use sowkit::{
    BigRat, EnsembleKind, EnsembleSpec, Enumerator, Error, Field, KMatrix, LinearCode, OrbitTable,
};

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "sowkit", version, about = "Second-order weight distributions over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Add a float column rounded to D decimals next to exact values.
    #[arg(long, global = true, value_name = "D")]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List the orbits of F_q^2 under scalar multiplication.
    Orbits {
        #[arg(long)]
        q: u64,
    },
    /// Print the MacWilliams kernel matrix K.
    Kmatrix {
        #[arg(long)]
        q: u64,
    },
    /// Closed-form enumerators of the atomic codes.
    Enumerator {
        #[arg(value_enum)]
        kind: AtomicKind,
        #[arg(long)]
        q: u64,
        /// Length c of the repetition code or d of the check code.
        #[arg(long)]
        param: Option<u32>,
        /// Length of the full space.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Apply the second-order MacWilliams transform to an enumerator file.
    Transform {
        #[arg(long)]
        q: u64,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        size_u: String,
        #[arg(long)]
        size_v: String,
    },
    /// Expected second-order weight distribution of a regular LDPC ensemble.
    Ldpc {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        /// Report E[A_J A_K] instead of the distribution.
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        moment: Option<Vec<u32>>,
    },
    /// k-good random matrices.
    Goodmat {
        #[command(subcommand)]
        cmd: GoodCmd,
    },
    /// Random-coding bounds.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Brute-force and Monte Carlo verification.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AtomicKind {
    Repetition,
    Check,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    One,
    Two,
}

impl From<KindArg> for EnsembleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::One => EnsembleKind::One,
            KindArg::Two => EnsembleKind::Two,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Gen,
    Par,
}

#[derive(Subcommand)]
enum GoodCmd {
    /// Decide k-goodness of a matrix support file.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "FILE")]
        support: PathBuf,
    },
    /// Expected enumerator of the generated or parity-check code.
    Theorem4 {
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Check the two MRD matrix sets over F_8.
    MrdDemo,
    /// Joint law of (xG, x'G) for every x, x' against the case table.
    Corollary1 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Linear intersecting codes from a 2-good parity-check matrix.
    Intersecting {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(clap::Args)]
struct EnsembleArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    c: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: u32,
}

impl EnsembleArgs {
    fn spec(&self) -> sowkit::Result<EnsembleSpec> {
        EnsembleSpec::new(self.kind.into(), self.q, self.c, self.d, self.n)
    }
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Monomial-map probabilities against sow-distribution ratios.
    Lemma4 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive ensemble average against the closed form.
    LdpcExact {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value_t = DEFAULT_CONFIG_LIMIT)]
        limit: u64,
    },
    /// Monte Carlo ensemble average against the closed form.
    LdpcMc {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Character-sum identities on random subspaces.
    Characters {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Transform against brute-force dual enumerators on random subspaces.
    Macwilliams {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Serialized result plus the exit status it implies.
struct Output {
    json: Value,
    csv: Vec<Vec<String>>,
    status: u8,
}

impl Output {
    fn ok(json: Value, csv: Vec<Vec<String>>) -> Self {
        Output { json, csv, status: 0 }
    }

    fn report(r: &OracleReport) -> Self {
        let json = serde_json::to_value(r).expect("report serializes");
        let csv = vec![
            vec!["check".into(), "max_abs_error".into(), "status".into()],
            vec![r.check.clone(), r.max_abs_error.clone(), r.status.clone()],
        ];
        Output {
            json,
            csv,
            status: if r.passed() { 0 } else { EXIT_MISMATCH },
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn decimal(r: &BigRat, d: usize) -> Value {
    let s = format!("{:.*}", d, rat_to_f64(r));
    serde_json::from_str(&s).unwrap_or(Value::Null)
}

fn decimal_str(r: &BigRat, d: usize) -> String {
    format!("{:.*}", d, rat_to_f64(r))
}

fn column_names(table: &OrbitTable) -> Vec<String> {
    (0..table.len())
        .map(|s| {
            let (a, b) = table.representative(s);
            format!("s_{}_{}", a.index(), b.index())
        })
        .collect()
}

fn enumerator_output(w: &Enumerator, table: &OrbitTable, dec: Option<usize>, extra: Value) -> Output {
    let ej = w.to_json();
    let mut terms = Vec::new();
    let mut header = column_names(table);
    header.push("coef".into());
    if dec.is_some() {
        header.push("decimal".into());
    }
    let mut rows = vec![header];
    for ((exp, c), t) in w.terms().zip(&ej.terms) {
        let mut obj = json!({"exp": t.exp, "coef": t.coef});
        let mut row: Vec<String> = exp.iter().map(u32::to_string).collect();
        row.push(t.coef.clone());
        if let Some(d) = dec {
            obj["decimal"] = decimal(c, d);
            row.push(decimal_str(c, d));
        }
        terms.push(obj);
        rows.push(row);
    }
    let mut json = json!({"q": table.q(), "orbit_order": table.labels()});
    if let Value::Object(extra) = extra {
        for (k, v) in extra {
            json[k] = v;
        }
    }
    json["nvars"] = json!(ej.nvars);
    json["terms"] = Value::Array(terms);
    Output::ok(json, rows)
}

fn table_for(q: u64) -> CliResult<OrbitTable> {
    Ok(OrbitTable::for_order(q)?)
}

fn cmd_orbits(q: u64) -> CliResult<Output> {
    let table = table_for(q)?;
    let orbits: Vec<Value> = table
        .orbits()
        .iter()
        .enumerate()
        .map(|(s, o)| {
            json!({
                "index": s,
                "label": table.label(s),
                "representative": [o.representative.0.index(), o.representative.1.index()],
                "size": o.size,
            })
        })
        .collect();
    let mut rows = vec![vec!["index".into(), "label".into(), "u".into(), "v".into(), "size".into()]];
    for (s, o) in table.orbits().iter().enumerate() {
        rows.push(vec![
            s.to_string(),
            table.label(s),
            o.representative.0.index().to_string(),
            o.representative.1.index().to_string(),
            o.size.to_string(),
        ]);
    }
    Ok(Output::ok(
        json!({
            "q": table.q(),
            "modulus": table.field().modulus(),
            "orbit_order": table.labels(),
            "orbits": orbits,
        }),
        rows,
    ))
}

fn cmd_kmatrix(q: u64) -> CliResult<Output> {
    let table = table_for(q)?;
    let k = KMatrix::build(&table);
    let mut rows = vec![std::iter::once("row".to_string()).chain(column_names(&table)).collect()];
    for (s, r) in k.entries.iter().enumerate() {
        rows.push(
            std::iter::once(column_names(&table)[s].clone())
                .chain(r.iter().map(i64::to_string))
                .collect(),
        );
    }
    Ok(Output::ok(
        json!({"q": table.q(), "orbit_order": table.labels(), "k": k.entries}),
        rows,
    ))
}

fn cmd_enumerator(kind: AtomicKind, q: u64, param: Option<u32>, n: Option<u32>, dec: Option<usize>) -> CliResult<Output> {
    let table = table_for(q)?;
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Failure::Usage(format!("missing --{name}")));
    let (w, label, p) = match kind {
        AtomicKind::Repetition => {
            let c = need(param, "param")?;
            (ldpc::repetition_enumerator(c, &table)?, "repetition", c)
        }
        AtomicKind::Check => {
            let d = need(param, "param")?;
            (ldpc::check_enumerator(d, &table, &KMatrix::build(&table))?, "check", d)
        }
        AtomicKind::Complete => {
            let n = need(n.or(param), "n")?;
            (complete_enumerator(&table, n)?, "complete", n)
        }
    };
    Ok(enumerator_output(&w, &table, dec, json!({"code": label, "length": p})))
}

fn cmd_transform(q: u64, input: &PathBuf, su: &str, sv: &str, dec: Option<usize>) -> CliResult<Output> {
    let table = table_for(q)?;
    let text = fs::read_to_string(input)?;
    let ej: EnumeratorJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let w = Enumerator::from_json(&ej)?;
    let (su, sv) = (parse_rat(su)?, parse_rat(sv)?);
    let out = sowkit::transform(&w, &su, &sv, &KMatrix::build(&table))?;
    Ok(enumerator_output(&out, &table, dec, json!({})))
}

fn cmd_ldpc(kind: KindArg, q: u32, c: u32, d: u32, n: u32, moment: Option<Vec<u32>>, dec: Option<usize>) -> CliResult<Output> {
    let spec = EnsembleSpec::new(kind.into(), q, c, d, n)?;
    let table = table_for(q as u64)?;
    let k = KMatrix::build(&table);
    let dist = ldpc::expected_distribution(&spec, &table, &k)?;
    if let Some(m) = moment {
        let (j, kk) = (m[0], m[1]);
        let v = expected_second_moment(&dist, j, kk)?;
        let mut json = json!({
            "kind": spec.kind.label(), "q": q, "c": c, "d": d, "n": n,
            "j": j, "k": kk, "value": rat_to_string(&v),
        });
        let mut header = vec!["j".to_string(), "k".into(), "value".into()];
        let mut row = vec![j.to_string(), kk.to_string(), rat_to_string(&v)];
        if let Some(dd) = dec {
            json["decimal"] = decimal(&v, dd);
            header.push("decimal".into());
            row.push(decimal_str(&v, dd));
        }
        return Ok(Output::ok(json, vec![header, row]));
    }
    let mut json = serde_json::to_value(dist.to_json(&table)).expect("distribution serializes");
    let mut header = column_names(&table);
    header.push("value".into());
    if dec.is_some() {
        header.push("decimal".into());
    }
    let mut rows = vec![header];
    let entries = json["entries"].as_array_mut().expect("entries array");
    for ((i, v), e) in dist.values.iter().zip(entries.iter_mut()) {
        let mut row: Vec<String> = i.0.iter().map(u32::to_string).collect();
        row.push(rat_to_string(v));
        if let Some(dd) = dec {
            e["decimal"] = decimal(v, dd);
            row.push(decimal_str(v, dd));
        }
        rows.push(row);
    }
    Ok(Output::ok(json, rows))
}

fn cmd_goodmat(cmd: GoodCmd, dec: Option<usize>) -> CliResult<Output> {
    match cmd {
        GoodCmd::Verify { k, support } => {
            let text = fs::read_to_string(&support)?;
            let e = MatrixEnsemble::parse(&text)?;
            let good = good::is_k_good(&e, k, DEFAULT_GOOD_LIMIT)?;
            let size = e.support_size().to_string();
            Ok(Output::ok(
                json!({"q": e.field().order(), "m": e.rows(), "n": e.cols(), "k": k, "support_size": size, "good": good}),
                vec![
                    vec!["q".into(), "m".into(), "n".into(), "k".into(), "support_size".into(), "good".into()],
                    vec![
                        e.field().order().to_string(),
                        e.rows().to_string(),
                        e.cols().to_string(),
                        k.to_string(),
                        size,
                        good.to_string(),
                    ],
                ],
            ))
        }
        GoodCmd::Theorem4 { side, q, m, n } => {
            let table = table_for(q)?;
            let (w, label) = match side {
                Side::Gen => (good::theorem4_generator(m, n, &table)?, "gen"),
                Side::Par => (good::theorem4_parity(m, n, &table)?, "par"),
            };
            Ok(enumerator_output(&w, &table, dec, json!({"side": label, "m": m, "n": n})))
        }
        GoodCmd::MrdDemo => {
            let (a1, a2) = good::mrd_examples()?;
            let mut sets = Vec::new();
            let mut rows = vec![vec!["set".into(), "size".into(), "one_good".into(), "two_good".into(), "expected_two_good".into()]];
            let mut ok = true;
            for (name, e, expect2) in [("A1", &a1, false), ("A2", &a2, true)] {
                let g1 = good::is_k_good(e, 1, DEFAULT_GOOD_LIMIT)?;
                let g2 = good::is_k_good(e, 2, DEFAULT_GOOD_LIMIT)?;
                ok &= g1 && g2 == expect2;
                sets.push(json!({"set": name, "size": e.support_size().to_string(), "one_good": g1, "two_good": g2, "expected_two_good": expect2}));
                rows.push(vec![name.into(), e.support_size().to_string(), g1.to_string(), g2.to_string(), expect2.to_string()]);
            }
            Ok(Output {
                json: json!({"q": 2, "m": 3, "n": 3, "sets": sets, "status": if ok { "pass" } else { "fail" }}),
                csv: rows,
                status: if ok { 0 } else { EXIT_MISMATCH },
            })
        }
        GoodCmd::Corollary1 { q, m, n } => {
            let field = Arc::new(Field::from_order(q)?);
            let xs = all_vectors(&field, m, DEFAULT_GOOD_LIMIT)?;
            let ys = all_vectors(&field, n, DEFAULT_GOOD_LIMIT)?;
            let mut err = BigRat::zero();
            for x in &xs {
                for x2 in &xs {
                    let d = good::corollary1_distribution(&field, n, x, x2, DEFAULT_GOOD_LIMIT)?;
                    for y in &ys {
                        for y2 in &ys {
                            let key = (y.iter().map(|e| e.index()).collect(), y2.iter().map(|e| e.index()).collect());
                            let got = d.get(&key).cloned().unwrap_or_else(BigRat::zero);
                            let want = good::corollary1_closed_form(&field, x, x2, y, y2);
                            err = err.max((got - want).abs());
                        }
                    }
                }
            }
            let uniform = good::invertible_product_uniform(&field, m, n, DEFAULT_GOOD_LIMIT)?;
            let mut r = OracleReport::exact("corollary1", json!({"q": q, "m": m, "n": n, "invertible_product_uniform": uniform}), &err);
            if !uniform {
                r.status = "fail".into();
            }
            Ok(Output::report(&r))
        }
    }
}

fn cmd_bounds(cmd: BoundsCmd) -> CliResult<Output> {
    let BoundsCmd::Intersecting { q, m, n } = cmd;
    let r = good::intersecting_report(q, m, n)?.to_json();
    let json = serde_json::to_value(&r).expect("report serializes");
    let mut rows = vec![vec!["field".to_string(), "value".into()]];
    if let Value::Object(map) = &json {
        for (k, v) in map {
            let s = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            rows.push(vec![k.clone(), s]);
        }
    }
    Ok(Output::ok(json, rows))
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_code(field: &Arc<Field>, n: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    let k = rng.random_range(0..=n);
    LinearCode::random(field.clone(), n, k, rng)
}

fn cmd_oracle(cmd: OracleCmd) -> CliResult<Output> {
    let limit = DEFAULT_CONFIG_LIMIT;
    match cmd {
        OracleCmd::Lemma4 { q, n, trials, seed } => {
            let table = table_for(q)?;
            let f = table.field().clone();
            let mut rng = seeded(seed);
            let vs = all_vectors(&f, n, limit)?;
            let mut err = BigRat::zero();
            for _ in 0..trials {
                let u = random_code(&f, n, &mut rng);
                let v = random_code(&f, n, &mut rng);
                for a in &vs {
                    for b in &vs {
                        let (l, r) = oracle::lemma4_exact(&u, &v, a, b, &table, limit)?;
                        err = err.max((l - r).abs());
                    }
                }
            }
            Ok(Output::report(&OracleReport::exact("lemma4", json!({"q": q, "n": n, "trials": trials, "seed": seed}), &err)))
        }
        OracleCmd::LdpcExact { ens, limit } => {
            let spec = ens.spec()?;
            let table = table_for(spec.q as u64)?;
            let exact = oracle::ldpc_exact_expectation(&spec, &table, limit)?;
            let closed = ldpc::expected_distribution(&spec, &table, &KMatrix::build(&table))?;
            let err = oracle::max_abs_diff_dist(&exact.values, &closed.values);
            let check = match spec.kind {
                EnsembleKind::One => "theorem2",
                EnsembleKind::Two => "theorem3",
            };
            Ok(Output::report(&OracleReport::exact(check, serde_json::to_value(spec).expect("spec serializes"), &err)))
        }
        OracleCmd::LdpcMc { ens, trials, seed } => {
            let spec = ens.spec()?;
            let table = table_for(spec.q as u64)?;
            let closed = ldpc::expected_distribution(&spec, &table, &KMatrix::build(&table))?;
            let mc = oracle::monte_carlo_ldpc(&spec, &table, trials, seed, DEFAULT_CODEWORD_LIMIT)?;
            let cmp = oracle::compare_mc(&mc, &closed, 5.0);
            let mut params = serde_json::to_value(spec).expect("spec serializes");
            params["trials"] = json!(trials);
            params["seed"] = json!(seed);
            params["indices"] = json!(cmp.indices);
            params["max_z"] = json!(cmp.max_z);
            let max_abs = closed
                .values
                .keys()
                .chain(mc.sums.keys())
                .map(|i| (mc.mean_se(i).0 - rat_to_f64(&closed.value(i))).abs())
                .fold(0.0f64, f64::max);
            let mut r = OracleReport::numeric("ldpc-mc", params, max_abs, f64::INFINITY);
            if !cmp.passed() {
                r.status = "fail".into();
            }
            Ok(Output::report(&r))
        }
        OracleCmd::Characters { q, n, trials, seed } => {
            let table = table_for(q)?;
            let f = table.field().clone();
            let mut rng = seeded(seed);
            let vs = all_vectors(&f, n, limit)?;
            let (mut l8, mut l9) = (0.0f64, 0.0f64);
            for _ in 0..trials {
                let code = random_code(&f, n, &mut rng);
                for v2 in &vs {
                    l8 = l8.max(oracle::subspace_character_residual(&code, v2, limit)?);
                }
                l9 = l9.max(oracle::character_checks(&code, &vs[0], &table, limit)?.pair);
            }
            let mut r = OracleReport::numeric(
                "characters",
                json!({"q": q, "n": n, "trials": trials, "seed": seed, "subspace_character_residual": l8, "pair_character_residual": l9}),
                l8.max(l9),
                1e-6,
            );
            r.max_abs_error = format!("{:e}", l8.max(l9));
            Ok(Output::report(&r))
        }
        OracleCmd::Macwilliams { q, n, trials, seed } => {
            let table = table_for(q)?;
            let f = table.field().clone();
            let mut rng = seeded(seed);
            let mut err = BigRat::zero();
            for _ in 0..trials {
                let u = random_code(&f, n, &mut rng);
                let v = random_code(&f, n, &mut rng);
                let (a, b) = oracle::macwilliams_brute(&u, &v, &table, limit)?;
                err = err.max(oracle::max_abs_diff(&a, &b)?);
            }
            Ok(Output::report(&OracleReport::exact("theorem1", json!({"q": q, "n": n, "trials": trials, "seed": seed}), &err)))
        }
    }
}

fn render(out: &Output, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(&out.json).expect("json serializes");
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &out.csv {
                w.write_record(row).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    if cli.threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let dec = cli.decimal;
    let out = match cli.command {
        Command::Orbits { q } => cmd_orbits(q)?,
        Command::Kmatrix { q } => cmd_kmatrix(q)?,
        Command::Enumerator { kind, q, param, n } => cmd_enumerator(kind, q, param, n, dec)?,
        Command::Transform { q, input, size_u, size_v } => cmd_transform(q, &input, &size_u, &size_v, dec)?,
        Command::Ldpc { kind, q, c, d, n, moment } => cmd_ldpc(kind, q, c, d, n, moment, dec)?,
        Command::Goodmat { cmd } => cmd_goodmat(cmd, dec)?,
        Command::Bounds { cmd } => cmd_bounds(cmd)?,
        Command::Oracle { cmd } => cmd_oracle(cmd)?,
    };
    let bytes = render(&out, cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().write_all(&bytes)?,
    }
    Ok(out.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_infeasible() { EXIT_INFEASIBLE } else { EXIT_USAGE })
        }
    }
}
