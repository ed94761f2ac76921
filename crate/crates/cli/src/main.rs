//! `pell`: solve Pell equations, generate solution families, scan ranges,
//! and benchmark the shortcut solver against the classical period walk.
//!
//! Exit codes: 0 success, 1 mathematical failure (perfect square, no
//! solution, condition violation, mismatch), 2 usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use pell_core::{
    cf, forms, minus3,
    relations::{self, FamilyId, FamilyParams, FamilySeed},
    scan::{self, TableMethod},
    Error, PellSolution, SolveMethod,
};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pell",
    about = "Multi-strategy Pell equation solver",
    version,
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Shortcut scan with silent fallback to the period walk.
    Fast,
    /// Classical full period walk.
    Standard,
    /// Sequential-differences inverse calculations.
    Seqdiff,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve y^2 - A x^2 = rhs for the minimal natural solution.
    Solve {
        /// The radicand A (>= 2, not a perfect square).
        a: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
        method: MethodArg,
        /// Right side of the equation: 1 or -3.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        rhs: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Print the reduction transcript (seqdiff method only).
        #[arg(long)]
        trace: bool,
        /// Search bound for rhs = -3 when no shortcut fires.
        #[arg(long, default_value_t = minus3::DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
    /// Emit verified solution-family records as JSON lines.
    Family(Box<FamilyArgs>),
    /// Build a solution table over a range; optionally report maxima.
    Scan {
        lo: u64,
        hi: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
        method: MethodArg,
        /// Also compute local/absolute maxima (needs whole k-intervals).
        #[arg(long)]
        maxima: bool,
        /// Output directory for table.jsonl / table.tsv (default: PELL_OUT_DIR or `.`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both solvers over a range, verify agreement, report ratios.
    Bench {
        lo: u64,
        hi: u64,
        /// Output directory for bench.json (default: PELL_OUT_DIR or `.`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Family kind: horizontal (h4n1, h8n3, h8n7, hce, hco, hm3), vertical
    /// (v4n1, v8n3, v8n7, vce, vco, vm3), or a parametric identity family
    /// (es1..es5, ds1, ds2, df1, df2, m3).
    kind: String,
    /// Seed representation (horizontal kinds).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Basic parameters.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Factor-pair seeds (composite kinds).
    #[arg(long, allow_hyphen_values = true)]
    p1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    p2: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Vertical / identity-family free variables.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    g1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    n1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Sign branch for kinds with a +- choice.
    #[arg(long, default_value = "top")]
    sign: String,
    /// Shift range, e.g. "-3..3" (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    i: Option<String>,
    /// Single shift value.
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CmdError {
    Math(String),
    Usage(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRange { .. } | Error::UnknownFamily(_) => CmdError::Usage(e.to_string()),
            other => CmdError::Math(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Math(format!("io: {e}"))
    }
}

type CmdResult = Result<(), CmdError>;

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve {
            a,
            method,
            rhs,
            format,
            trace,
            search_bound,
        } => cmd_solve(a, method, rhs, format, trace, search_bound),
        Command::Family(args) => cmd_family(*args),
        Command::Scan {
            lo,
            hi,
            method,
            maxima,
            out,
        } => cmd_scan(lo, hi, method, maxima, out),
        Command::Bench { lo, hi, out } => cmd_bench(lo, hi, out),
    }
}

fn print_solution(s: &PellSolution, method: SolveMethod, steps: usize, format: FormatArg) {
    match format {
        FormatArg::Json => println!(
            r#"{{"A":{},"x":"{}","y":"{}","method":"{}","steps":{}}}"#,
            s.radicand, s.x, s.y, method, steps
        ),
        FormatArg::Tsv => println!("{}\t{}\t{}\t{}\t{}", s.radicand, s.x, s.y, method, steps),
    }
}

fn cmd_solve(
    a: u64,
    method: MethodArg,
    rhs: i64,
    format: FormatArg,
    trace: bool,
    search_bound: u64,
) -> CmdResult {
    if a < 2 {
        return Err(CmdError::Usage(format!("A must be >= 2, got {a}")));
    }
    match rhs {
        1 => match method {
            MethodArg::Fast => {
                let f = cf::solve_fast(a)?;
                print_solution(&f.solution, f.method, f.steps, format);
            }
            MethodArg::Standard => {
                let (s, steps) = cf::solve_standard_with_steps(a)?;
                print_solution(&s, SolveMethod::Standard, steps, format);
            }
            MethodArg::Seqdiff => match forms::inverse_solve(a) {
                Ok(inv) => {
                    if trace {
                        let start = forms::start_form(a)?;
                        let (text, _) = forms::reduction_transcript(&start, 20_000);
                        eprintln!("start form: {start}");
                        eprintln!("{text}");
                    }
                    print_solution(&inv.solution, SolveMethod::SeqDiff, inv.steps, format);
                }
                Err(Error::Unclassifiable { .. }) => {
                    let (s, steps) = cf::solve_standard_with_steps(a)?;
                    print_solution(&s, SolveMethod::Standard, steps, format);
                }
                Err(e) => return Err(e.into()),
            },
        },
        -3 => {
            let r = minus3::solve_minus3(a, search_bound)?;
            match r {
                Some(sol) => print_solution(&sol.solution, sol.method, sol.steps, format),
                None => {
                    return Err(CmdError::Math(format!(
                        "no solution of y^2 - {a} x^2 = -3 found (bounded search)"
                    )))
                }
            }
        }
        other => {
            return Err(CmdError::Usage(format!(
                "right side must be 1 or -3, got {other}"
            )))
        }
    }
    Ok(())
}

fn parse_range(spec: &str) -> Result<(i64, i64), CmdError> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| CmdError::Usage(format!("bad shift range `{spec}`, expected LO..HI")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| CmdError::Usage(format!("bad range bound `{lo}`")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| CmdError::Usage(format!("bad range bound `{hi}`")))?;
    if lo > hi {
        return Err(CmdError::Usage(format!("empty shift range `{spec}`")));
    }
    Ok((lo, hi))
}

fn shifts(args: &FamilyArgs) -> Result<Vec<i64>, CmdError> {
    if let Some(single) = args.shift {
        return Ok(vec![single]);
    }
    if let Some(spec) = &args.i {
        let (lo, hi) = parse_range(spec)?;
        return Ok((lo..=hi).collect());
    }
    Ok((-3..=3).collect())
}

fn req(v: Option<i64>, name: &str) -> Result<i64, CmdError> {
    v.ok_or_else(|| CmdError::Usage(format!("missing required parameter --{name}")))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn cmd_family(args: FamilyArgs) -> CmdResult {
    let kind = args.kind.to_ascii_lowercase();
    let top = match args.sign.as_str() {
        "top" | "+" | "plus" => true,
        "bottom" | "-" | "minus" => false,
        other => {
            return Err(CmdError::Usage(format!(
                "--sign must be top or bottom, got `{other}`"
            )))
        }
    };
    let shifts = shifts(&args)?;
    let mut emitted = 0usize;

    let emit_pell = |fam: &relations::SolutionFamily,
                     kind: &str,
                     shifts: &[i64],
                     emitted: &mut usize|
     -> CmdResult {
        for &i in shifts {
            match fam.shift(i) {
                Ok(p) => {
                    println!(
                        r#"{{"family":"{kind}","l":"{}","m":"{}","a0":"{}","b0":"{}","i":{},"A":"{}","x":"{}","y":"{}","verified":true}}"#,
                        fam.l, fam.m, fam.a0, fam.b0, i, p.radicand, p.x, p.y
                    );
                    *emitted += 1;
                }
                Err(Error::SquareTarget(_)) | Err(Error::NonPositiveFactor(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(())
    };
    let emit_minus3 = |fam: &minus3::Minus3Family,
                       kind: &str,
                       shifts: &[i64],
                       emitted: &mut usize|
     -> CmdResult {
        for &i in shifts {
            match fam.shift(i) {
                Ok(p) => {
                    println!(
                        r#"{{"family":"{kind}","l":"{}","m":"{}","a0":"{}","b0":"{}","i":{},"A":"{}","x":"{}","y":"{}","verified":true}}"#,
                        fam.l, fam.m, fam.a0, fam.b0, i, p.radicand, p.x, p.y
                    );
                    *emitted += 1;
                }
                Err(Error::SquareTarget(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(())
    };
    let emit_composite = |fam: &relations::CompositeFamily,
                          kind: &str,
                          shifts: &[i64],
                          emitted: &mut usize|
     -> CmdResult {
        for &i in shifts {
            match fam.shift(i) {
                Ok(p) => {
                    println!(
                        r#"{{"family":"{kind}","p01":"{}","p02":"{}","s":"{}","q":"{}","i":{},"A":"{}","x":"{}","y":"{}","verified":true}}"#,
                        fam.p01, fam.p02, fam.s, fam.q, i, p.radicand, p.x, p.y
                    );
                    *emitted += 1;
                }
                Err(Error::SquareTarget(_)) | Err(Error::NonPositiveFactor(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(())
    };

    match kind.as_str() {
        "h4n1" | "h8n3" | "h8n7" => {
            let cls = match kind.as_str() {
                "h4n1" => forms::FormClass::EqualSquares,
                "h8n3" => forms::FormClass::DoubleSquares,
                _ => forms::FormClass::SumEqualsCross,
            };
            let (l, m) = (req(args.l, "l")?, req(args.m, "m")?);
            if gcd(l, m) != 1 {
                return Err(CmdError::Usage(format!(
                    "l = {l} and m = {m} must be coprime"
                )));
            }
            let (a, b) = (req(args.a, "a")?, req(args.b, "b")?);
            let fam = relations::SolutionFamily::new(cls, l, m, a.into(), b.into())?;
            emit_pell(&fam, &kind, &shifts, &mut emitted)?;
        }
        "hce" | "hco" => {
            let (p1, p2) = (req(args.p1, "p1")?, req(args.p2, "p2")?);
            let (s, q) = (req(args.s, "s")?, req(args.q, "q")?);
            let fam = relations::CompositeFamily::new(
                kind == "hce",
                p1.into(),
                p2.into(),
                s.into(),
                q.into(),
            )?;
            emit_composite(&fam, &kind, &shifts, &mut emitted)?;
        }
        "hm3" => {
            let (l, m) = (req(args.l, "l")?, req(args.m, "m")?);
            let (a, b) = (req(args.a, "a")?, req(args.b, "b")?);
            let fam = minus3::Minus3Family::new(a.into(), b.into(), l.into(), m.into())?;
            emit_minus3(&fam, &kind, &shifts, &mut emitted)?;
        }
        "v4n1" | "v8n3" | "v8n7" => {
            let (l, m) = (req(args.l, "l")?, req(args.m, "m")?);
            let d = req(args.d, "d")?;
            let (cls, seed) = match kind.as_str() {
                "v4n1" => (
                    forms::FormClass::EqualSquares,
                    relations::vertical_4n1(req(args.g, "g")?, d, l, m)?,
                ),
                "v8n3" => (
                    forms::FormClass::DoubleSquares,
                    relations::vertical_8n3(req(args.g1, "g1")?, d, l, m)?,
                ),
                _ => (
                    forms::FormClass::SumEqualsCross,
                    relations::vertical_8n7(req(args.g1, "g1")?, d, l, m)?,
                ),
            };
            let fam = relations::SolutionFamily::new(cls, l, m, seed.0, seed.1)?;
            emit_pell(&fam, &kind, &shifts, &mut emitted)?;
        }
        "vce" | "vco" => {
            let (l, m) = (req(args.l, "l")?, req(args.m, "m")?);
            let (s, q) = (req(args.s, "s")?, req(args.q, "q")?);
            let even = kind == "vce";
            let (p01, p02) = relations::vertical_composite(l, m, q, s, even)?;
            let fam = relations::CompositeFamily::new(even, p01, p02, s.into(), q.into())?;
            emit_composite(&fam, &kind, &shifts, &mut emitted)?;
        }
        "vm3" => {
            let (l, m) = (req(args.l, "l")?, req(args.m, "m")?);
            let (g, d) = (req(args.g, "g")?, req(args.d, "d")?);
            let (a0, b0) = minus3::vertical_minus3(g, d, l, m)?;
            let fam = minus3::Minus3Family::new(a0, b0, l.into(), m.into())?;
            emit_minus3(&fam, &kind, &shifts, &mut emitted)?;
        }
        id => {
            let id: FamilyId = id.parse()?;
            let params = FamilyParams {
                g: args.g,
                g1: args.g1,
                d: args.d,
                m: args.m,
                t: args.t,
                k: args.k,
                j: args.j,
                n1: args.n1,
                r: args.r,
                top,
            };
            match relations::identity_family(id, &params) {
                Ok(FamilySeed::Pell(fam)) => emit_pell(&fam, &kind, &shifts, &mut emitted)?,
                Ok(FamilySeed::Minus3(fam)) => emit_minus3(&fam, &kind, &shifts, &mut emitted)?,
                Err(Error::ConditionViolated(msg)) if msg.contains("requires parameter") => {
                    return Err(CmdError::Usage(msg))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    if emitted == 0 {
        eprintln!("note: every shift in range was skipped (square or non-positive target)");
    }
    Ok(())
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("PELL_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn cmd_scan(lo: u64, hi: u64, method: MethodArg, maxima: bool, out: Option<PathBuf>) -> CmdResult {
    let table_method = match method {
        MethodArg::Fast => TableMethod::Fast,
        MethodArg::Standard => TableMethod::Standard,
        MethodArg::Seqdiff => TableMethod::SeqDiff,
    };
    let records = scan::build_table(lo, hi, table_method)?;
    let dir = out_dir(out);
    fs::create_dir_all(&dir)?;
    let jsonl = dir.join("table.jsonl");
    let tsv = dir.join("table.tsv");
    scan::write_jsonl(fs::File::create(&jsonl)?, &records)?;
    scan::write_tsv(fs::File::create(&tsv)?, &records)?;
    let mut summary = format!(
        "scanned [{lo}, {hi}]: {} records -> {}, {}\n",
        records.len(),
        jsonl.display(),
        tsv.display()
    );
    if maxima {
        let report = scan::find_maxima(&records)?;
        writeln!(summary, "local maxima per interval:").ok();
        for r in &report.locals {
            writeln!(
                summary,
                "  k={:<4} A={:<8} class={:?} x={}",
                r.k, r.a, r.class, r.x
            )
            .ok();
        }
        writeln!(summary, "absolute maxima:").ok();
        for r in &report.absolutes {
            writeln!(summary, "  A={:<8} class={:?} x={}", r.a, r.class, r.x).ok();
        }
        let maxima_path = dir.join("maxima.json");
        fs::write(&maxima_path, serde_json::to_string_pretty(&report)?)?;
        writeln!(summary, "maxima report -> {}", maxima_path.display()).ok();
    }
    print!("{summary}");
    Ok(())
}

impl From<serde_json::Error> for CmdError {
    fn from(e: serde_json::Error) -> Self {
        CmdError::Math(format!("serialization: {e}"))
    }
}

fn cmd_bench(lo: u64, hi: u64, out: Option<PathBuf>) -> CmdResult {
    let report = scan::bench(lo, hi)?;
    let dir = out_dir(out);
    fs::create_dir_all(&dir)?;
    let path = dir.join("bench.json");
    fs::write(&path, serde_json::to_string_pretty(&report)?)?;
    print!("{}", report.human_summary());
    println!("report -> {}", path.display());
    Ok(())
}
