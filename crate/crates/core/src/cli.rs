//! Command-line front end. [`run`] parses arguments and returns the exit code
//! together with everything that should be printed, so it can be driven
//! from tests as well as from the binary.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or budget error,
//! 3 internal invariant breach.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bigint_serde;
use crate::budget::OracleBudget;
use crate::counting::{CountEngine, CountReport};
use crate::curves::{count_points, hasse_weil_holds, CurveSpec, CurveSummary};
use crate::error::{Error, Result};
use crate::gf::{make_field, make_field_with_modulus, FieldSpec};
use crate::lpoly::LPolynomial;
use crate::oracle::verify_all;
use crate::sequences::{build_family, cross_correlation, distinct_family_count, family_complexity, omega_members};

/// Overrides the oracle element cap.
pub const BUDGET_ENV: &str = "VANTRACE_MAX_ELEMENTS";

#[derive(Parser, Debug)]
#[command(name = "vantrace", version, about = "Counts of elements and irreducibles with vanishing trace and reciprocal trace")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Explicit modulus of F_q over F_p, constant term first, e.g. `1,1,1`.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec> {
        match &self.modulus {
            None => make_field(self.p, self.r),
            Some(m) => {
                if m.len() != self.r as usize + 1 {
                    return Err(Error::InvalidInput(format!("modulus must have {} coefficients", self.r + 1)));
                }
                make_field_with_modulus(self.p, m)
            }
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// F_q(n,0,0) and I_q(n,0,0) for one n.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
    },
    /// One row per n in a range.
    Table {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Recount each row by brute force where the budget allows.
        #[arg(long)]
        oracle: bool,
    },
    /// Every oracle identity check for n = 1..=max-n.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_n: usize,
    },
    /// L-polynomial of one curve.
    Lpoly {
        #[command(flatten)]
        field: FieldArgs,
        /// Element code of alpha.
        #[arg(long)]
        alpha: u32,
        /// Element code of beta (odd characteristic only).
        #[arg(long)]
        beta: Option<u32>,
    },
    /// Point counts of one curve over F_{q^m}, m = 1..=m.
    Curve {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        m: usize,
    },
    /// A Legendre-symbol family and its measures.
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Which member of Omega_{p,n}, in enumeration order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Largest cross-correlation order.
        #[arg(long, default_value_t = 2)]
        ell: usize,
    },
    /// Distinct families over Omega_{p,n} against I_p(n,0,0).
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
}

/// The `count` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    pub q: u64,
    pub n: usize,
    #[serde(with = "bigint_serde")]
    pub f_count: BigInt,
    #[serde(with = "bigint_serde")]
    pub i_count: BigInt,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpolyOutput {
    pub curve: CurveSummary,
    pub lpoly: LPolynomial,
    pub functional_equation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveOutput {
    pub curve: CurveSummary,
    /// `counts[m - 1] = #C(F_{q^m})`.
    pub counts: Vec<u64>,
    pub hasse_weil: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyOutput {
    pub p: u64,
    pub n: usize,
    pub source: Vec<u32>,
    pub rows: Vec<Vec<i8>>,
    pub complexity: usize,
    /// `phi[l - 1]` is the cross-correlation of order `l`.
    pub phi: Vec<u64>,
}

/// Budget from the environment, or the default one.
pub fn budget_from_env() -> Result<OracleBudget> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(OracleBudget::default()),
        Ok(v) => {
            let cap: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{BUDGET_ENV} must be a positive integer")))?;
            if cap == 0 {
                return Err(Error::InvalidInput(format!("{BUDGET_ENV} must be positive")));
            }
            Ok(OracleBudget::default().with_max_elements(cap))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(e) => return (2, format!("error: {e}\n")),
    };
    match execute(&cli, &budget) {
        Ok(out) => out,
        Err(e) => {
            let code = if e.is_invariant_breach() { 3 } else { 2 };
            (code, format!("error: {e}\n"))
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn no_csv(format: Format) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::InvalidInput("csv output is only available for count, table and curve".into()));
    }
    Ok(())
}

fn curve_for(field: &FieldSpec, alpha: u32, beta: Option<u32>) -> Result<CurveSpec> {
    let alpha = field.element(alpha)?;
    match beta {
        None if field.is_even() => CurveSpec::even(field, alpha),
        None => Err(Error::InvalidInput("odd characteristic needs --beta".into())),
        Some(_) if field.is_even() => Err(Error::InvalidInput("--beta applies only in odd characteristic".into())),
        Some(b) => CurveSpec::odd(field, alpha, field.element(b)?),
    }
}

fn execute(cli: &Cli, budget: &OracleBudget) -> Result<(i32, String)> {
    let format = cli.format;
    match &cli.command {
        Command::Count { field, n } => {
            let field = field.field()?;
            let engine = CountEngine::new(&field)?;
            let out = CountOutput {
                q: field.q() as u64,
                n: *n,
                f_count: engine.f_count(*n)?,
                i_count: engine.i_count(*n)?,
                method: "formula".into(),
            };
            Ok((0, match format {
                Format::Json => json(&out),
                Format::Csv => format!("n,f_count,i_count\n{},{},{}\n", out.n, out.f_count, out.i_count),
                Format::Text => format!("q={} n={}\nF(n,0,0) = {}\nI(n,0,0) = {}\n", out.q, out.n, out.f_count, out.i_count),
            }))
        }
        Command::Table { field, n_min, n_max, oracle } => {
            let field = field.field()?;
            let engine = CountEngine::new(&field)?;
            let report = engine.table(*n_min, *n_max, oracle.then_some(budget))?;
            let code = if report.rows.iter().any(|r| r.oracle_mismatch()) { 3 } else { 0 };
            Ok((code, match format {
                Format::Json => json(&report),
                Format::Csv => report.to_csv(),
                Format::Text => table_text(&report),
            }))
        }
        Command::Verify { field, max_n } => {
            no_csv(format)?;
            let field = field.field()?;
            let report = verify_all(&field, *max_n, budget);
            let code = if report.all_passed() { 0 } else { 1 };
            Ok((code, if format == Format::Json { json(&report) } else { report.to_text() }))
        }
        Command::Lpoly { field, alpha, beta } => {
            no_csv(format)?;
            let field = field.field()?;
            let curve = curve_for(&field, *alpha, *beta)?;
            let engine = CountEngine::new(&field)?;
            let idx = engine.curves().iter().position(|c| c == &curve).ok_or_else(|| {
                Error::InvalidInput("beta is not one of the coset representatives; see `curve`".into())
            })?;
            let lp = engine.lpolys()[idx].clone();
            let out = LpolyOutput { curve: curve.summary(), functional_equation: lp.satisfies_functional_equation(), lpoly: lp };
            Ok((0, match format {
                Format::Json => json(&out),
                _ => format!("{}\nL(t) = {}\ncoefficients: {}\n", out.curve.equation, out.lpoly.pretty(), join(out.lpoly.coeffs())),
            }))
        }
        Command::Curve { field, alpha, beta, m } => {
            let field = field.field()?;
            let curve = curve_for(&field, *alpha, *beta)?;
            let counts = (1..=*m).map(|k| count_points(&curve, k, budget)).collect::<Result<Vec<_>>>()?;
            let q = field.q() as u64;
            let hasse_weil = counts.iter().enumerate().all(|(i, &c)| hasse_weil_holds(q, i + 1, curve.genus(), c));
            let out = CurveOutput { curve: curve.summary(), counts, hasse_weil };
            Ok((0, match format {
                Format::Json => json(&out),
                Format::Csv => {
                    let mut s = String::from("m,count\n");
                    for (i, c) in out.counts.iter().enumerate() {
                        s.push_str(&format!("{},{}\n", i + 1, c));
                    }
                    s
                }
                Format::Text => format!("{} (genus {})\ncounts: {}\n", out.curve.equation, out.curve.genus, join(&out.counts)),
            }))
        }
        Command::Family { p, n, index, ell } => {
            no_csv(format)?;
            let members = omega_members(*p, *n, budget)?;
            let f = members
                .get(*index)
                .ok_or_else(|| Error::InvalidInput(format!("Omega has only {} members", members.len())))?;
            let fam = build_family(f, *p)?;
            let complexity = family_complexity(&fam, budget)?;
            let phi = (1..=*ell).map(|l| cross_correlation(&fam, l, budget)).collect::<Result<Vec<_>>>()?;
            let out = FamilyOutput { p: *p, n: *n, source: fam.source.clone(), rows: fam.rows.clone(), complexity, phi };
            Ok((0, match format {
                Format::Json => json(&out),
                _ => {
                    let mut s = format!("source coefficients: {}\n", join(&out.source));
                    for r in &out.rows {
                        let line: String = r.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
                        s.push_str(&line);
                        s.push('\n');
                    }
                    s.push_str(&format!("f-complexity: {}\n", out.complexity));
                    for (l, v) in out.phi.iter().enumerate() {
                        s.push_str(&format!("phi_{}: {}\n", l + 1, v));
                    }
                    s
                }
            }))
        }
        Command::Bound { p, n } => {
            no_csv(format)?;
            let b = distinct_family_count(*p, *n, budget)?;
            Ok((0, match format {
                Format::Json => json(&b),
                _ => format!(
                    "p={} n={}\nOmega members: {}\ndistinct families: {}\nbound I_p(n,0,0): {}\nstrict: {} (margin {})\n",
                    b.p, b.n, b.members, b.distinct, b.bound, b.strict, b.margin
                ),
            }))
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn table_text(report: &CountReport) -> String {
    let mut s = format!("q = {}\n{:>4}  {:>24}  {:>24}  sources\n", report.field.q, "n", "F(n,0,0)", "I(n,0,0)");
    for r in &report.rows {
        let sources: Vec<String> = r.sources.iter().map(|x| format!("{x:?}").to_lowercase()).collect();
        s.push_str(&format!("{:>4}  {:>24}  {:>24}  {}\n", r.n, r.f_count, r.i_count, sources.join(",")));
        for d in &r.discrepancies {
            s.push_str(&format!("      note: {d}\n"));
        }
    }
    s
}
