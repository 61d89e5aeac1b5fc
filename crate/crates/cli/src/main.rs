use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use menon::bench::{bench_row, BenchRow};
use menon::chargroup::characters;
use menon::{
    run_sweep, verify, ArithFn, CyclotomicInteger, EvenFnSpec, IdentityId, IdentityReport, Params,
    ShiftPolicy, SweepConfig,
};
use serde_json::json;

const CSV_HEADER: [&str; 12] = [
    "identity", "n", "chi", "d", "r", "s", "f", "lhs", "rhs", "equal", "lhs_us", "rhs_us",
];

#[derive(Parser)]
#[command(
    name = "menon",
    version,
    about = "Verify Menon-type identities in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep identities over a range of moduli and report every check.
    Verify(VerifyArgs),
    /// Evaluate one identity at explicit parameters.
    Eval(EvalArgs),
    /// Time the naive shifted Menon sum against its closed form.
    Bench(BenchArgs),
    /// List the Dirichlet characters modulo n.
    Chartable {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity tags, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    identity: Vec<String>,
    /// Range of moduli as `a..b` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    n: (u64, u64),
    /// `all`, `sample:COUNT`, or a comma separated list of shifts.
    #[arg(long, default_value = "all")]
    s: String,
    /// Seed for `--s sample:COUNT`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// With `--s sample:COUNT`, visit every shift for moduli up to this bound.
    #[arg(long, default_value_t = 0)]
    full_up_to: u64,
    /// Even functions for identities that take one.
    #[arg(long, value_delimiter = ',')]
    f: Vec<EvenFnSpec>,
    /// Functions for MULT_REMARK.
    #[arg(long, value_delimiter = ',')]
    arith: Vec<ArithFn>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Enumeration limit for nsolutions functions.
    #[arg(long, default_value_t = menon::evenfn::DEFAULT_BUDGET)]
    budget: u128,
    /// Write zero in the timing columns so output is byte-identical across runs.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct EvalArgs {
    identity: IdentityId,
    #[arg(long)]
    n: u64,
    /// Character index, in `chartable` order.
    #[arg(long)]
    chi: Option<usize>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    #[arg(long)]
    f: Option<EvenFnSpec>,
    #[arg(long)]
    arith: Option<ArithFn>,
    #[arg(long)]
    n2: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 10_000, 1_000_000])]
    n: Vec<u64>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, default_value_t = 3)]
    reps: u32,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let a = parse(s)?;
            (a, a)
        }
    };
    if a == 0 || a > b {
        return Err(format!("`{s}` is not a range of positive moduli"));
    }
    Ok((a, b))
}

fn parse_shifts(spec: &str, seed: u64, full_up_to: u64) -> Result<ShiftPolicy, String> {
    if spec == "all" {
        return Ok(ShiftPolicy::All);
    }
    if let Some(count) = spec.strip_prefix("sample:") {
        let count = count
            .parse()
            .map_err(|e| format!("--s sample count `{count}`: {e}"))?;
        return Ok(ShiftPolicy::Sample {
            count,
            seed,
            full_up_to,
        });
    }
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("--s value `{t}`: {e}"))
        })
        .collect::<Result<_, _>>()
        .map(ShiftPolicy::List)
}

fn parse_identities(names: &[String]) -> Result<Vec<IdentityId>, String> {
    if names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(IdentityId::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| n.parse().map_err(|e: menon::Error| e.to_string()))
        .collect()
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("run `menon help` for usage");
    ExitCode::from(2)
}

fn csv_line<S: AsRef<[u8]>>(fields: &[S]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("writing to memory");
    w.into_inner().expect("writing to memory")
}

fn approx(v: &CyclotomicInteger) -> String {
    let (re, im) = v.to_complex();
    if im.abs() < 1e-9 {
        format!("{re:.6}")
    } else {
        format!(
            "{re:.6}{}{:.6}i",
            if im < 0.0 { '-' } else { '+' },
            im.abs()
        )
    }
}

/// Column values for one report, in [`CSV_HEADER`] order.
struct Row {
    fields: [String; 12],
}

impl Row {
    fn new(rep: &IdentityReport, chi_label: Option<&str>, deterministic: bool) -> Self {
        let p = &rep.params;
        let opt = |v: Option<String>| v.unwrap_or_default();
        let n = match p.n2 {
            Some(n2) => format!("{}*{n2}", p.n),
            None => p.n.to_string(),
        };
        let f =
            p.f.map(|f| f.to_string())
                .or_else(|| p.arith.map(|a| a.to_string()));
        let (lus, rus) = if deterministic {
            (0, 0)
        } else {
            (rep.lhs_micros, rep.rhs_micros)
        };
        Row {
            fields: [
                rep.identity.to_string(),
                n,
                opt(chi_label.map(str::to_owned)),
                opt(p.d.map(|v| v.to_string())),
                opt(p.r.map(|v| v.to_string())),
                opt(p.s.map(|v| v.to_string())),
                opt(f),
                rep.lhs.to_string(),
                rep.rhs.to_string(),
                rep.equal.to_string(),
                lus.to_string(),
                rus.to_string(),
            ],
        }
    }

    fn json(&self) -> serde_json::Value {
        let f = &self.fields;
        let text = |s: &String| if s.is_empty() { json!(null) } else { json!(s) };
        let num = |s: &String| s.parse::<i64>().map_or(json!(null), |v| json!(v));
        json!({
            "identity": f[0],
            "n": f[1].parse::<u64>().map_or(json!(f[1]), |v| json!(v)),
            "chi": text(&f[2]),
            "d": num(&f[3]),
            "r": num(&f[4]),
            "s": num(&f[5]),
            "f": text(&f[6]),
            "lhs": f[7],
            "rhs": f[8],
            "equal": f[9] == "true",
            "lhs_us": num(&f[10]),
            "rhs_us": num(&f[11]),
        })
    }
}

/// Character labels by index, recomputed whenever the modulus changes.
struct ChiLabels {
    n: u64,
    labels: Vec<String>,
}

impl ChiLabels {
    fn get(&mut self, n: u64, index: usize) -> menon::Result<&str> {
        if self.n != n {
            self.labels = characters(n)?.iter().map(ToString::to_string).collect();
            self.n = n;
        }
        Ok(&self.labels[index])
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let identities = match parse_identities(&args.identity) {
        Ok(ids) => ids,
        Err(e) => return usage_error(e),
    };
    let shifts = match parse_shifts(&args.s, args.seed, args.full_up_to) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let mut config = SweepConfig::new(identities.clone(), args.n.0, args.n.1)
        .shifts(shifts.clone())
        .jobs(args.jobs)
        .budget(args.budget);
    if !args.f.is_empty() {
        config = config.functions(args.f);
    }
    if !args.arith.is_empty() {
        config = config.arith(args.arith);
    }

    let start = Instant::now();
    let reports = match run_sweep(&config) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let elapsed = start.elapsed();

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let tags: Vec<&str> = identities.iter().map(|id| id.tag()).collect();
    let fns: Vec<String> = config.functions.iter().map(ToString::to_string).collect();
    let seed = shifts.seed();
    match args.format {
        Format::Csv => {
            let seed = seed.map_or("none".to_owned(), |s| s.to_string());
            let _ = writeln!(
                out,
                "# menon verify identity={} n={}..{} s={} seed={seed} f={}",
                tags.join(","),
                config.n_min,
                config.n_max,
                args.s,
                fns.join(","),
            );
            let _ = out.write_all(&csv_line(&CSV_HEADER));
        }
        Format::Json => {
            let header = json!({"header": {
                "identity": tags,
                "n_min": config.n_min,
                "n_max": config.n_max,
                "s": args.s,
                "seed": seed,
                "f": fns,
            }});
            let _ = writeln!(out, "{header}");
        }
    }

    let mut labels = ChiLabels {
        n: 0,
        labels: Vec::new(),
    };
    let mut mismatches = 0usize;
    for rep in &reports {
        let label = match rep.params.chi {
            Some(i) => match labels.get(rep.params.n, i) {
                Ok(l) => Some(l.to_owned()),
                Err(e) => return usage_error(e),
            },
            None => None,
        };
        let row = Row::new(rep, label.as_deref(), args.deterministic);
        if !rep.equal {
            mismatches += 1;
            let tuple: Vec<String> = CSV_HEADER[..9]
                .iter()
                .zip(&row.fields)
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            eprintln!("MISMATCH {}", tuple.join(" "));
        }
        let _ = match args.format {
            Format::Csv => out.write_all(&csv_line(&row.fields)),
            Format::Json => writeln!(out, "{}", row.json()),
        };
    }
    let _ = out.flush();

    if reports.is_empty() {
        eprintln!("warning: 0 checks");
    }
    eprintln!(
        "{} checks, {} equal, {mismatches} mismatches in {:.3}s",
        reports.len(),
        reports.len() - mismatches,
        elapsed.as_secs_f64()
    );
    if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_eval(args: EvalArgs) -> ExitCode {
    let params = Params {
        n: args.n,
        chi: args.chi,
        d: args.d,
        r: args.r,
        s: args.s,
        f: args.f,
        arith: args.arith,
        n2: args.n2,
    };
    let rep = match verify(args.identity, &params) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let p = &rep.params;
    let mut desc = match p.n2 {
        Some(n2) => format!("n1={} n2={n2}", p.n),
        None => format!("n={}", p.n),
    };
    if let Some(i) = p.chi {
        match characters(p.n) {
            Ok(chars) => desc += &format!(" chi={}", chars[i]),
            Err(e) => return usage_error(e),
        }
    }
    for (name, v) in [("d", p.d.map(|v| v as i64)), ("r", p.r), ("s", p.s)] {
        if let Some(v) = v {
            desc += &format!(" {name}={v}");
        }
    }
    if let Some(f) = p.f {
        desc += &format!(" f={f}");
    }
    if let Some(a) = p.arith {
        desc += &format!(" F={a}");
    }
    println!("identity: {}", rep.identity);
    println!("params: {desc}");
    println!("lhs: {} ~ {}", rep.lhs, approx(&rep.lhs));
    println!("rhs: {} ~ {}", rep.rhs, approx(&rep.rhs));
    println!("equal: {}", rep.equal);
    if rep.equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    let rows = match args
        .n
        .iter()
        .map(|&n| bench_row(n, args.s, args.reps))
        .collect::<menon::Result<Vec<BenchRow>>>()
    {
        Ok(rows) => rows,
        Err(e) => return usage_error(e),
    };
    let micros = |d: std::time::Duration| d.as_secs_f64() * 1e6;
    match args.format {
        None => {
            println!(
                "{:>10} {:>6} {:>16} {:>16} {:>12} {:>12} {:>10} {:>6}",
                "n", "s", "naive", "fast", "naive_us", "fast_us", "speedup", "equal"
            );
            for r in &rows {
                println!(
                    "{:>10} {:>6} {:>16} {:>16} {:>12.3} {:>12.3} {:>10.1} {:>6}",
                    r.n,
                    r.s,
                    r.naive,
                    r.fast,
                    micros(r.naive_time),
                    micros(r.fast_time),
                    r.speedup(),
                    r.equal
                );
            }
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(io::stdout());
            let _ = w.write_record([
                "n", "s", "naive", "fast", "naive_us", "fast_us", "speedup", "equal",
            ]);
            for r in &rows {
                let _ = w.write_record([
                    r.n.to_string(),
                    r.s.to_string(),
                    r.naive.to_string(),
                    r.fast.to_string(),
                    format!("{:.3}", micros(r.naive_time)),
                    format!("{:.3}", micros(r.fast_time)),
                    format!("{:.1}", r.speedup()),
                    r.equal.to_string(),
                ]);
            }
            let _ = w.flush();
        }
        Some(Format::Json) => {
            for r in &rows {
                println!(
                    "{}",
                    json!({
                        "n": r.n,
                        "s": r.s,
                        "naive": r.naive,
                        "fast": r.fast,
                        "naive_us": micros(r.naive_time),
                        "fast_us": micros(r.fast_time),
                        "speedup": r.speedup(),
                        "equal": r.equal,
                    })
                );
            }
        }
    }
    if rows.iter().all(|r| r.equal) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_chartable(n: u64) -> ExitCode {
    let chars = match characters(n) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    println!(
        "{:>5}  {:<24} {:>5} {:>9}  {:<9} values",
        "index", "character", "order", "conductor", "primitive"
    );
    for (i, chi) in chars.iter().enumerate() {
        let values: Vec<String> = chi
            .group()
            .generator_units()
            .iter()
            .map(|&g| format!("chi({g})={}", chi.eval(g as i64)))
            .collect();
        println!(
            "{i:>5}  {:<24} {:>5} {:>9}  {:<9} {}",
            chi.to_string(),
            chi.order(),
            chi.conductor(),
            if chi.is_primitive() { "yes" } else { "no" },
            values.join(" ")
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Chartable { n } => cmd_chartable(n),
    }
}
