use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tprim_core::constructions::{FamilyParams, FamilySpec};
use tprim_core::engine::{eta, explicit_power, gamma, power_entry, FamilyTrace, NestedIndex};
use tprim_core::format::{
    certificate_to_string, read_tensor, tensor_to_string, write_tensor, Layout,
};
use tprim_core::matrix::{mat_exponent, MatrixExpResult};
use tprim_core::screening::filter_report;
use tprim_core::search::verify::{verify_a_k, verify_theorem_3_2, verify_theorem_3_8};
use tprim_core::search::{classify_all, max_eta_search, Classification, EnumSpec, Mode};
use tprim_core::{BooleanTensor, Error};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

/// Decide primitivity and strong primitivity of nonnegative tensor zero patterns.
#[derive(Parser)]
#[command(name = "tprim", version)]
struct Cli {
    /// Worker threads for enumeration; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print γ and η with certificates and the structural filter report.
    Check { file: PathBuf },
    /// Print the majorization matrix M(A).
    Majorize { file: PathBuf },
    /// Summarize the support families of A^k, or write A^k itself with --explicit.
    Power {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        explicit: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print one entry of A^k; the column is given as blocks, e.g. [[3,3],[3,3]],[[3,3],[3,3]].
    Entry {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long = "row")]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        index: String,
    },
    /// Write a member of a named family.
    Construct {
        /// wielandt, a-k, example2.3, example3.3, example3.5, prop2.7, prop4.3, ones, zeros
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify every pattern of a shape (or a sample of them).
    Enumerate(EnumArgs),
    /// Run a theorem check over all dimension-2 patterns, or the A_k degree table.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Order m; for a-k a comma-separated list (default 3,4).
        #[arg(long)]
        m: Option<String>,
        /// Dimensions for a-k, comma-separated (default 3,4,5).
        #[arg(long)]
        n: Option<String>,
        /// Write the per-pattern CSV here ("-" for standard output).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Look for the largest strongly primitive degree at a shape with n >= 3.
    Search(EnumArgs),
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
    LowZero,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    #[value(name = "theorem-3.2")]
    Theorem32,
    #[value(name = "theorem-3.8")]
    Theorem38,
    #[value(name = "a-k")]
    AK,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_zeros: Option<usize>,
    /// Visit one pattern per relabeling orbit.
    #[arg(long)]
    canonicalize: bool,
    /// Let the structural filters skip engine calls.
    #[arg(long)]
    filters: bool,
    #[arg(long)]
    max_patterns: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Allow exhaustive sweeps beyond 2^20 patterns.
    #[arg(long)]
    long_run: bool,
    /// Append-only progress file; rerunning with the same file resumes.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Write the per-pattern CSV here ("-" for standard output).
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl EnumArgs {
    fn spec(&self, threads: usize) -> Result<EnumSpec, Error> {
        let mode = match self.mode {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Random => Mode::Random {
                samples: self
                    .samples
                    .ok_or_else(|| Error::InvalidParameter("random mode needs --samples".into()))?,
                seed: self.seed.ok_or_else(|| {
                    Error::InvalidParameter("random mode needs an explicit --seed".into())
                })?,
            },
            ModeArg::LowZero => Mode::LowZero {
                max_zeros: self.max_zeros.ok_or_else(|| {
                    Error::InvalidParameter("low-zero mode needs --max-zeros".into())
                })?,
            },
        };
        let mut spec = EnumSpec::new(self.m, self.n, mode);
        spec.canonicalize = self.canonicalize;
        spec.filters = self.filters;
        spec.budget.max_patterns = self.max_patterns;
        spec.budget.max_seconds = self.max_seconds;
        spec.threads = threads;
        spec.long_run = self.long_run;
        spec.checkpoint = self.checkpoint.clone();
        spec.records = self.csv.is_some();
        Ok(spec)
    }
}

fn load(path: &Path) -> Result<BooleanTensor, Error> {
    read_tensor(path)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text)?,
        _ => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn degree_text(d: Option<usize>) -> String {
    d.map_or_else(|| "no".to_string(), |d| format!("degree {d}"))
}

fn check(out: &mut dyn Write, file: &Path) -> Result<u8, Error> {
    let t = load(file)?;
    let g = gamma(&t)?;
    let e = eta(&t)?;
    writeln!(
        out,
        "primitive: {}; strongly primitive: {}",
        degree_text(g.degree()),
        degree_text(e.degree())
    )?;
    if let Some(c) = g.certificate() {
        writeln!(out, "not primitive: {}", certificate_to_string(c))?;
    }
    if let Some(c) = e.certificate() {
        writeln!(out, "not strongly primitive: {}", certificate_to_string(c))?;
    }
    let r = filter_report(&t);
    let mark = |b: bool| if b { "holds" } else { "fails" };
    writeln!(out, "every column nonzero: {}", mark(r.prop_2_1))?;
    writeln!(out, "every slice nonzero: {}", mark(r.prop_2_9))?;
    writeln!(
        out,
        "every M column positive off the diagonal: {}",
        mark(r.prop_2_5_1)
    )?;
    writeln!(
        out,
        "some M column with two positives: {}",
        mark(r.prop_2_5_2)
    )?;
    match r.prop_4_3 {
        Some((i, j)) => writeln!(out, "isolated 2-cycle in M: columns {i} and {j}")?,
        None => writeln!(out, "isolated 2-cycle in M: none")?,
    }
    match &r.thm_4_2 {
        Some(cols) => {
            let cols: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
            writeln!(out, "near-singleton columns: {}", cols.join(" "))?
        }
        None => writeln!(out, "near-singleton columns: none")?,
    }
    writeln!(
        out,
        "filters conclude: {}",
        match (r.not_primitive, r.not_strongly_primitive) {
            (true, _) => "not primitive",
            (false, true) => "not strongly primitive",
            _ => "nothing",
        }
    )?;
    Ok(if g.degree().is_some() && e.degree().is_some() {
        0
    } else {
        EXIT_NEGATIVE
    })
}

fn majorize(out: &mut dyn Write, file: &Path) -> Result<u8, Error> {
    let t = load(file)?;
    let mm = t.majorization();
    write!(out, "{mm}")?;
    match mat_exponent(&mm) {
        MatrixExpResult::Exponent(e) => {
            writeln!(out, "primitive matrix: exponent {e}")?;
            Ok(0)
        }
        MatrixExpResult::NotPrimitive => {
            writeln!(out, "primitive matrix: no")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn power(
    out: &mut dyn Write,
    file: &Path,
    k: usize,
    explicit: bool,
    output: Option<&Path>,
) -> Result<u8, Error> {
    let t = load(file)?;
    if k == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    if explicit {
        let p = explicit_power(&t, k)?;
        match output {
            Some(path) => write_tensor(path, &p)?,
            None => writeln!(out, "{}", tensor_to_string(&p, Layout::Dense))?,
        }
        return Ok(0);
    }
    let mut trace = FamilyTrace::new(&t)?;
    trace.extend_to(k);
    for level in 1..=k {
        let f = trace.level(level);
        let members: Vec<String> = f.members().iter().map(|s| s.to_string()).collect();
        writeln!(
            out,
            "level {level}: {} supports, positive: {}; {}",
            f.len(),
            if f.is_full_only(t.dim()) { "yes" } else { "no" },
            members.join(" ")
        )?;
    }
    Ok(0)
}

fn entry(out: &mut dyn Write, file: &Path, k: usize, row: usize, index: &str) -> Result<u8, Error> {
    let t = load(file)?;
    let column = NestedIndex::parse_blocks(index)?;
    let bit = power_entry(&t, k, row, &column)?;
    writeln!(out, "{}", bit as u8)?;
    Ok(0)
}

fn construct(
    out: &mut dyn Write,
    name: &str,
    p: &ParamArgs,
    output: Option<&Path>,
) -> Result<u8, Error> {
    let params = FamilyParams {
        m: p.m,
        n: p.n,
        k: p.k,
        i: p.i,
        j: p.j,
    };
    let t = FamilySpec::from_name(name, params)?.build()?;
    match output {
        Some(path) => write_tensor(path, &t)?,
        None => writeln!(out, "{}", tensor_to_string(&t, Layout::Ones))?,
    }
    Ok(0)
}

fn print_summary(out: &mut dyn Write, c: &Classification) -> Result<(), Error> {
    let s = &c.summary;
    writeln!(out, "spec: {}", c.spec.describe())?;
    writeln!(out, "rng: {}", c.spec.rng_description())?;
    writeln!(
        out,
        "visited: {} patterns: {} primitive: {} strongly primitive: {}",
        s.visited, s.patterns, s.primitive, s.strongly_primitive
    )?;
    writeln!(out, "gamma,eta,count")?;
    for line in c.histogram_lines() {
        writeln!(out, "{line}")?;
    }
    if c.resumed > 0 {
        writeln!(out, "resumed from checkpoint: {} positions", c.resumed)?;
    }
    writeln!(out, "wall time: {:.3} s", c.elapsed.as_secs_f64())?;
    if c.partial {
        writeln!(out, "partial: budget exhausted")?;
    }
    Ok(())
}

fn write_csv(out: &mut dyn Write, c: &Classification, path: Option<&Path>) -> Result<(), Error> {
    if let Some(p) = path {
        emit(out, Some(p), &c.csv_string())?;
    }
    Ok(())
}

fn enumerate(out: &mut dyn Write, args: &EnumArgs, threads: usize) -> Result<u8, Error> {
    let spec = args.spec(threads)?;
    let c = classify_all(&spec)?;
    let to_stdout = args.csv.as_deref() == Some(Path::new("-"));
    write_csv(out, &c, args.csv.as_deref())?;
    if !to_stdout {
        print_summary(out, &c)?;
    }
    Ok(if c.partial { EXIT_PARTIAL } else { 0 })
}

fn search(out: &mut dyn Write, args: &EnumArgs, threads: usize) -> Result<u8, Error> {
    let spec = args.spec(threads)?;
    let (r, c) = max_eta_search(&spec)?;
    write_csv(out, &c, args.csv.as_deref())?;
    if args.csv.as_deref() != Some(Path::new("-")) {
        print_summary(out, &c)?;
        writeln!(
            out,
            "max eta: {}; bound (n-1)^2+1 = {}",
            r.max_eta.map_or("none".to_string(), |e| e.to_string()),
            r.bound
        )?;
        writeln!(out, "attained by: {}", r.witnesses.join(" "))?;
        if r.counterexamples.is_empty() {
            writeln!(out, "patterns reaching the bound: none")?;
        } else {
            let shown: Vec<&str> = r
                .counterexamples
                .iter()
                .take(16)
                .map(String::as_str)
                .collect();
            writeln!(
                out,
                "patterns reaching the bound: {} distinct, first: {}",
                r.counterexamples.len(),
                shown.join(" ")
            )?;
        }
    }
    Ok(if r.partial {
        EXIT_PARTIAL
    } else if r.counterexamples.is_empty() {
        0
    } else {
        EXIT_NEGATIVE
    })
}

fn parse_list(s: Option<&str>, default: &[usize]) -> Result<Vec<usize>, Error> {
    match s {
        None => Ok(default.to_vec()),
        Some(s) => s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("not a number: {x:?}")))
            })
            .collect(),
    }
}

fn verify(
    out: &mut dyn Write,
    target: VerifyTarget,
    m: Option<&str>,
    n: Option<&str>,
    csv: Option<&Path>,
    threads: usize,
) -> Result<u8, Error> {
    let single_m = || -> Result<usize, Error> {
        let v = parse_list(m, &[])?;
        match v[..] {
            [m] => Ok(m),
            _ => Err(Error::InvalidParameter("give one order with --m".into())),
        }
    };
    let quiet = csv == Some(Path::new("-"));
    let ok = match target {
        VerifyTarget::Theorem32 => {
            let (r, c) = verify_theorem_3_2(single_m()?, threads)?;
            write_csv(out, &c, csv)?;
            if !quiet {
                writeln!(
                    out,
                    "m={} n=2: {}/{} agree; primitive {} ({} with primitive M)",
                    r.m, r.agree, r.visited, r.primitive, r.majorization_primitive
                )?;
                for x in &r.counterexamples {
                    writeln!(out, "counterexample: {x}")?;
                }
            }
            r.holds()
        }
        VerifyTarget::Theorem38 => {
            let (r, c) = verify_theorem_3_8(single_m()?, threads)?;
            write_csv(out, &c, csv)?;
            if !quiet {
                writeln!(
                    out,
                    "m={} n=2: strongly primitive {}, structural cases {}, identical: {}; max eta {}; non-all-ones {} (bound {})",
                    r.m,
                    r.strongly_primitive,
                    r.cases,
                    r.mismatches.is_empty(),
                    r.max_eta.map_or("none".to_string(), |e| e.to_string()),
                    r.non_all_ones,
                    r.lower_bound
                )?;
                for x in &r.mismatches {
                    writeln!(out, "mismatch: {x}")?;
                }
            }
            r.holds()
        }
        VerifyTarget::AK => {
            let r = verify_a_k(&parse_list(m, &[3, 4])?, &parse_list(n, &[3, 4, 5])?)?;
            for row in &r.rows {
                writeln!(
                    out,
                    "m={} n={} k={}: gamma {} (expected {}), zero column {}{}",
                    row.m,
                    row.n,
                    row.k,
                    row.gamma.map_or("none".to_string(), |g| g.to_string()),
                    row.expected_gamma,
                    if row.zero_column { "yes" } else { "no" },
                    if row.holds() { "" } else { "  FAIL" }
                )?;
            }
            writeln!(
                out,
                "failures: {}; reading the value-set rule as a subset also passes: {}",
                r.failures,
                if r.subset_reading_also_passes {
                    "yes"
                } else {
                    "no"
                }
            )?;
            r.failures == 0
        }
    };
    Ok(if ok { 0 } else { EXIT_NEGATIVE })
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Error> {
    match &cli.command {
        Command::Check { file } => check(out, file),
        Command::Majorize { file } => majorize(out, file),
        Command::Power {
            file,
            k,
            explicit,
            output,
        } => power(out, file, *k, *explicit, output.as_deref()),
        Command::Entry { file, k, i, index } => entry(out, file, *k, *i, index),
        Command::Construct {
            name,
            params,
            output,
        } => construct(out, name, params, output.as_deref()),
        Command::Enumerate(args) => enumerate(out, args, cli.threads),
        Command::Verify { target, m, n, csv } => verify(
            out,
            *target,
            m.as_deref(),
            n.as_deref(),
            csv.as_deref(),
            cli.threads,
        ),
        Command::Search(args) => search(out, args, cli.threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("tprim: {e}");
            EXIT_USAGE
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
