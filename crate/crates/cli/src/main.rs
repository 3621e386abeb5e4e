//! zetasum: evaluate sums over zeta zeros and their explicit expansions.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use zetasum_core::arith::RationalX;
use zetasum_core::rug;
use zetasum_core::constants::{a_oracle, laurent_table};
use zetasum_core::expansions::{self, ErrorShape, ExpansionBreakdown, FormulaId};
use zetasum_core::precision::{format_float, CValue};
use zetasum_core::report;
use zetasum_core::zeros::{self, ZeroTable};
use zetasum_core::zerosum;
use zetasum_core::PrecisionContext;

#[derive(Parser)]
#[command(
    name = "zetasum",
    about = "High-precision comparison of zero sums of zeta derivatives \
             against their explicit expansions",
    version
)]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, env = "ZETASUM_DIGITS", default_value_t = 40)]
    digits: u32,
    /// Worker threads for zero search and summation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Rh,
    Unconditional,
}

impl From<ShapeArg> for ErrorShape {
    fn from(s: ShapeArg) -> ErrorShape {
        match s {
            ShapeArg::Rh => ErrorShape::RiemannHypothesis,
            ShapeArg::Unconditional => ErrorShape::Unconditional,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Zero tables: search, validate, normalize.
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Laurent coefficients C_j and A_j as CSV/JSON.
    Constants(ConstantsArgs),
    /// Evaluate one right-hand-side formula, term by term.
    Rhs(RhsArgs),
    /// Evaluate the zero sum on the left-hand side.
    Lhs(LhsArgs),
    /// Compare both sides over a grid of heights.
    Compare(CompareArgs),
    /// Run the internal identity suite and report pass/fail.
    Selfcheck,
}

#[derive(Subcommand)]
enum ZerosCommand {
    /// Locate all zeros up to a height and write the table.
    Find(ZerosFindArgs),
    /// Read and verify a table, reporting a summary.
    Import(ZerosImportArgs),
    /// Read, verify, and re-emit a table in normalized form.
    Export(ZerosImportArgs),
}

#[derive(Args)]
struct ZerosFindArgs {
    /// Search height: all zeros with 0 < gamma <= t_max.
    #[arg(long = "t-max")]
    t_max: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZerosImportArgs {
    /// Table file: one ordinate per line, '#' comments allowed.
    #[arg(long)]
    input: PathBuf,
    /// Skip |zeta(1/2 + i gamma)| and completeness verification (unsafe).
    #[arg(long)]
    trust: bool,
    /// Output file for `export` (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Highest Laurent index to compute.
    #[arg(long, default_value_t = 8)]
    jmax: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RhsArgs {
    /// Formula: theorem1|explicit2|integer|general-sc|fujii2|fujii4|landau|s-asym.
    #[arg(long)]
    formula: String,
    /// Derivative order n (the S-sum power k for s-asym).
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// X as p/q, an integer, or a decimal (exact decimal fraction).
    #[arg(long = "X", default_value = "1")]
    x: String,
    /// Height T (Y for s-asym).
    #[arg(long = "T")]
    t: String,
    /// Error envelope shape for the integer-X and X = 1 expansions.
    #[arg(long = "error-shape", value_enum, default_value_t = ShapeArg::Rh)]
    error_shape: ShapeArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LhsArgs {
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long = "X", default_value = "1")]
    x: String,
    #[arg(long = "T")]
    t: String,
    /// Zero table file; computed in-process when omitted.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Trust the zero file without verification.
    #[arg(long)]
    trust: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long = "X", default_value = "1")]
    x: String,
    /// Ascending comma-separated heights, e.g. 100,250,500,1000.
    #[arg(long = "Tgrid")]
    t_grid: String,
    #[arg(long)]
    formula: String,
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long)]
    trust: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads < 1 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // Ignore failure: the global pool may already exist (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let ctx = PrecisionContext::new(cli.digits)?;
    match &cli.command {
        Command::Zeros(cmd) => run_zeros(cmd, &ctx),
        Command::Constants(args) => run_constants(args, cli, &ctx),
        Command::Rhs(args) => run_rhs(args, cli, &ctx),
        Command::Lhs(args) => run_lhs(args, cli, &ctx),
        Command::Compare(args) => run_compare(args, cli, &ctx),
        Command::Selfcheck => run_selfcheck(&ctx),
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let mut f = BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            );
            f.write_all(content.as_bytes())?;
            f.flush()?;
        }
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
        }
    }
    Ok(())
}

fn load_table(
    path: &Path,
    trust: bool,
    ctx: &PrecisionContext,
) -> anyhow::Result<ZeroTable> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(zeros::import_zeros(BufReader::new(f), ctx, trust)?)
}

fn table_for_height(
    zeros_file: &Option<PathBuf>,
    trust: bool,
    t_max: &rug::Float,
    ctx: &PrecisionContext,
) -> anyhow::Result<ZeroTable> {
    match zeros_file {
        Some(path) => {
            let table = load_table(path, trust, ctx)?;
            if table.verified_height() < t_max {
                bail!(
                    "zero table verified to {} but T = {} requires more",
                    table.verified_height().to_f64(),
                    t_max.to_f64()
                );
            }
            Ok(table)
        }
        None => {
            let margin = ctx.float(2);
            let height = rug::Float::with_val(ctx.bits(), t_max + &margin);
            Ok(zeros::find_zeros(&height, ctx)?)
        }
    }
}

fn run_zeros(cmd: &ZerosCommand, ctx: &PrecisionContext) -> anyhow::Result<()> {
    match cmd {
        ZerosCommand::Find(args) => {
            let t_max = ctx.parse_float(&args.t_max)?;
            let table = zeros::find_zeros(&t_max, ctx)?;
            let mut buf = Vec::new();
            zeros::export_zeros(&table, &mut buf)?;
            write_output(&args.out, std::str::from_utf8(&buf)?)
        }
        ZerosCommand::Import(args) => {
            let table = load_table(&args.input, args.trust, ctx)?;
            println!(
                "imported {} ordinates, verified height {}, precision {} digits{}",
                table.len(),
                format_float(table.verified_height(), 12),
                table.precision_digits(),
                if args.trust { " (trusted, unverified)" } else { "" }
            );
            Ok(())
        }
        ZerosCommand::Export(args) => {
            let table = load_table(&args.input, args.trust, ctx)?;
            let mut buf = Vec::new();
            zeros::export_zeros(&table, &mut buf)?;
            write_output(&args.out, std::str::from_utf8(&buf)?)
        }
    }
}

fn run_constants(args: &ConstantsArgs, cli: &Cli, ctx: &PrecisionContext) -> anyhow::Result<()> {
    let table = laurent_table(args.jmax, ctx)?;
    let d = ctx.digits();
    let content = match cli.format {
        Format::Csv => {
            let mut out = String::from("j,C_j,A_j\n");
            for j in 0..=args.jmax as usize {
                out.push_str(&format!(
                    "{j},{},{}\n",
                    format_float(&table.c()[j], d),
                    format_float(&table.a()[j], d)
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = (0..=args.jmax as usize)
                .map(|j| {
                    serde_json::json!({
                        "j": j,
                        "C_j": format_float(&table.c()[j], d),
                        "A_j": format_float(&table.a()[j], d),
                    })
                })
                .collect();
            format!("{}\n", serde_json::json!({ "digits": d, "rows": rows }))
        }
    };
    write_output(&args.out, &content)
}

fn breakdown_output(b: &ExpansionBreakdown, format: Format) -> String {
    match format {
        Format::Csv => report::breakdown_csv(b),
        Format::Json => format!("{}\n", report::breakdown_json(b)),
    }
}

fn run_rhs(args: &RhsArgs, cli: &Cli, ctx: &PrecisionContext) -> anyhow::Result<()> {
    let formula: FormulaId = args.formula.parse()?;
    let x = RationalX::parse(&args.x)?;
    let t = ctx.parse_float(&args.t)?;
    let shape: ErrorShape = args.error_shape.into();
    let breakdown = match formula {
        FormulaId::Landau => {
            let v = expansions::landau_rhs(&x, &t, ctx)?;
            let scale = rug::Float::with_val(ctx.bits(), t.ln_ref());
            landau_as_breakdown(v, scale, &x, &t, ctx)
        }
        FormulaId::Theorem1 => expansions::theorem1_rhs(args.n, &x, &t, ctx)?,
        FormulaId::Explicit2 => expansions::explicit2_rhs(args.n, &x, &t, ctx)?,
        FormulaId::Integer => {
            let tables = laurent_table(args.n, ctx)?;
            expansions::corollary_integer_rhs(args.n, &x, &t, &tables, ctx, shape)?
        }
        FormulaId::GeneralSc => {
            let tables = laurent_table(args.n, ctx)?;
            expansions::general_sc_rhs(args.n, &t, &tables, ctx, shape)?
        }
        FormulaId::Fujii2 => {
            let tables = laurent_table(1, ctx)?;
            expansions::fujii_shanks_rhs(&t, &tables, ctx, shape)?
        }
        FormulaId::Fujii4 => {
            let tables = laurent_table(1, ctx)?;
            expansions::fujii_integer_rhs(&x, &t, &tables, ctx, shape)?
        }
        FormulaId::SAsym => {
            let tables = laurent_table(args.n, ctx)?;
            expansions::s_asymptotic(args.n, &t, &tables, ctx)?
        }
    };
    write_output(&args.out, &breakdown_output(&breakdown, cli.format))
}

fn landau_as_breakdown(
    v: CValue,
    error_scale: rug::Float,
    x: &RationalX,
    t: &rug::Float,
    ctx: &PrecisionContext,
) -> ExpansionBreakdown {
    ExpansionBreakdown {
        terms: vec![("main".to_string(), v.clone())],
        total: v,
        error_scale,
        meta: expansions::BreakdownMeta {
            formula: "landau".into(),
            n: 0,
            x: x.to_string(),
            t: format_float(t, ctx.digits()),
            digits: ctx.digits(),
            error_shape: "log-T".into(),
        },
    }
}

fn run_lhs(args: &LhsArgs, cli: &Cli, ctx: &PrecisionContext) -> anyhow::Result<()> {
    let x = RationalX::parse(&args.x)?;
    let t = ctx.parse_float(&args.t)?;
    let table = table_for_height(&args.zeros, args.trust, &t, ctx)?;
    let t_eff = zeros::safe_truncation_height(&t, &table, ctx)?;
    let v = zerosum::lhs_zero_sum(args.n, &x, &t_eff, &table, ctx)?;
    let d = ctx.digits();
    let count = table.count_up_to(&t_eff);
    let content = match cli.format {
        Format::Csv => format!(
            "T_effective,zero_count,lhs_re,lhs_im\n{},{},{},{}\n",
            format_float(&t_eff, d),
            count,
            format_float(v.re(), d),
            format_float(v.im(), d)
        ),
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                "T_effective": format_float(&t_eff, d),
                "zero_count": count,
                "lhs_re": format_float(v.re(), d),
                "lhs_im": format_float(v.im(), d),
                "meta": { "n": args.n, "X": x.to_string(), "digits": d },
            })
        ),
    };
    write_output(&args.out, &content)
}

fn run_compare(args: &CompareArgs, cli: &Cli, ctx: &PrecisionContext) -> anyhow::Result<()> {
    let formula: FormulaId = args.formula.parse()?;
    let x = RationalX::parse(&args.x)?;
    let mut grid = Vec::new();
    for part in args.t_grid.split(',') {
        grid.push(ctx.parse_float(part.trim())?);
    }
    if grid.is_empty() {
        bail!("empty --Tgrid");
    }
    let t_max = grid
        .last()
        .cloned()
        .ok_or_else(|| anyhow!("empty --Tgrid"))?;
    let table = if formula == FormulaId::SAsym {
        // The S-sum comparison involves no zeros; an empty table suffices.
        zeros::find_zeros(&ctx.float(1), ctx)?
    } else {
        table_for_height(&args.zeros, args.trust, &t_max, ctx)?
    };
    let tables = laurent_table(args.n.max(1), ctx)?;
    let outcome = zerosum::compare(args.n, &x, &grid, formula, &table, &tables, ctx, None)?;
    let content = match cli.format {
        Format::Csv => zerosum::compare_csv(&outcome, ctx.digits()),
        Format::Json => format!("{}\n", report::compare_json(&outcome, ctx.digits())),
    };
    write_output(&args.out, &content)
}

fn run_selfcheck(ctx: &PrecisionContext) -> anyhow::Result<()> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool, detail: String| {
        if ok {
            println!("PASS {name}{detail}");
        } else {
            println!("FAIL {name}{detail}");
            failures += 1;
        }
    };
    let digits = ctx.digits() as i32;

    // Functional equation for zeta^(n) on strip points.
    {
        let tol = ctx.pow10(-(digits - 10));
        let mut worst = ctx.zero();
        let points = [(0.3, 12.0), (0.5, 21.7), (0.7, 33.3), (0.25, 8.2), (0.8, 17.1)];
        for n in 0..=4u32 {
            for (sigma, t) in points {
                let s = CValue::checked(ctx.complex((sigma, t)), "strip point")?;
                let r = zetasum_core::numkern::functional_equation_residual(n, &s, ctx)?;
                if r > worst {
                    worst = r;
                }
            }
        }
        check(
            "functional-equation residual (n <= 4, 25 strip points)",
            worst < tol,
            format!(": max {}", format_float(&worst, 3)),
        );
    }

    // Theorem <-> binomial rewrite.
    {
        let tol = ctx.pow10(-(digits - 8));
        let mut ok = true;
        let mut worst = ctx.zero();
        for (n, p, q, t) in [
            (1u32, 2u64, 1u64, 200.0),
            (2, 5, 2, 400.0),
            (3, 3, 1, 300.0),
            (4, 7, 3, 500.0),
        ] {
            let x = RationalX::new(p, q)?;
            let t = ctx.float(t);
            let a = expansions::theorem1_rhs(n, &x, &t, ctx)?;
            let b = expansions::explicit2_rhs(n, &x, &t, ctx)?;
            let d = rel_diff(&a, &b, ctx);
            if d > worst {
                worst = d.clone();
            }
            ok &= d < tol;
        }
        check(
            "explicit formula = binomial rewrite",
            ok,
            format!(": max rel {}", format_float(&worst, 3)),
        );
    }

    // Integer-X corollary: grouped vs pre-binomial substitution.
    {
        let tol = ctx.pow10(-(digits - 8));
        let tables = laurent_table(3, ctx)?;
        let mut ok = true;
        let mut worst = ctx.zero();
        for (n, xv, t) in [(1u32, 2u64, 300.0), (2, 3, 500.0), (3, 5, 800.0)] {
            let x = RationalX::new(xv, 1)?;
            let t = ctx.float(t);
            let a = expansions::corollary_integer_rhs(
                n,
                &x,
                &t,
                &tables,
                ctx,
                ErrorShape::RiemannHypothesis,
            )?;
            let b = expansions::corollary_integer_rhs_unexpanded(
                n,
                &x,
                &t,
                &tables,
                ctx,
                ErrorShape::RiemannHypothesis,
            )?;
            let d = rel_diff(&a, &b, ctx);
            if d > worst {
                worst = d.clone();
            }
            ok &= d < tol;
        }
        check(
            "integer-X corollary = pre-binomial route",
            ok,
            format!(": max rel {}", format_float(&worst, 3)),
        );
    }

    // n = 1 collapses.
    {
        let tol = ctx.pow10(-(digits - 8));
        let tables = laurent_table(2, ctx)?;
        let t = ctx.float(1000);
        let mut ok = true;
        for xv in [2u64, 4] {
            let x = RationalX::new(xv, 1)?;
            let a = expansions::corollary_integer_rhs(
                1,
                &x,
                &t,
                &tables,
                ctx,
                ErrorShape::RiemannHypothesis,
            )?;
            let b = expansions::fujii_integer_rhs(&x, &t, &tables, ctx, ErrorShape::RiemannHypothesis)?;
            ok &= rel_diff(&a, &b, ctx) < tol;
        }
        let shanks = expansions::fujii_shanks_rhs(&t, &tables, ctx, ErrorShape::RiemannHypothesis)?;
        let f1 = expansions::fujii_integer_rhs(
            &RationalX::new(1, 1)?,
            &t,
            &tables,
            ctx,
            ErrorShape::RiemannHypothesis,
        )?;
        ok &= rel_diff(&shanks, &f1, ctx) < tol;
        let general = expansions::general_sc_rhs(1, &t, &tables, ctx, ErrorShape::RiemannHypothesis)?;
        ok &= rel_diff(&shanks, &general, ctx) < tol;
        check("n = 1 collapses to the classical baselines", ok, String::new());
    }

    // Laurent coefficients: recursion vs contour oracle.
    {
        let tables = laurent_table(5, ctx)?;
        let oracle = a_oracle(5, ctx)?;
        let tol = ctx.pow10(-20);
        let mut ok = true;
        let mut worst = ctx.zero();
        for j in 0..=5usize {
            let d = rug::Float::with_val(ctx.bits(), &tables.a()[j] - &oracle[j]).abs();
            if d > worst {
                worst = d.clone();
            }
            ok &= d < tol;
        }
        check(
            "Israilov recursion = contour oracle (j <= 5)",
            ok,
            format!(": max {}", format_float(&worst, 3)),
        );
    }

    if failures > 0 {
        bail!("{failures} selfcheck group(s) failed");
    }
    println!("selfcheck: all groups passed at {} digits", ctx.digits());
    Ok(())
}

fn rel_diff(a: &ExpansionBreakdown, b: &ExpansionBreakdown, ctx: &PrecisionContext) -> rug::Float {
    let prec = ctx.bits();
    let d = rug::Complex::with_val(prec, a.total.as_complex() - b.total.as_complex());
    let mut mag = rug::Float::with_val(prec, a.total.abs());
    mag += 1u32;
    let mut abs = rug::Float::with_val(prec, d.real() * d.real());
    abs += rug::Float::with_val(prec, d.imag() * d.imag());
    rug::Float::with_val(prec, abs.sqrt() / &mag)
}
