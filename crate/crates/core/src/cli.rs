//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{npoly_to_string, IntPoly, Integer};
use crate::families::{Family, RangePolicy};
use crate::irreducible::{certify_irreducible, Verdict};
use crate::report::{
    first_bound_n, parse_degrees, render_csv, render_json, run_sweep, BoundStatus, Format, NGrid, RunMetadata,
    SweepConfig,
};
use crate::roots::{cluster_offset, cluster_product, PrecisionBits, RootOptions, Round};
use crate::verify::{run_suite, Canonical, Check, FamilySource, Perturbed, SuiteParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_REDUCIBLE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "seplab", version, about = "Close-root polynomial families: construction, exact identities, certified separations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member, symbolically or at a given n.
    Gen(GenArgs),
    /// Run the exact identity checks.
    Verify(VerifyArgs),
    /// Measure separations over a (d, n) grid.
    Sweep(SweepArgs),
    /// Certify irreducibility of a family member or a polynomial from a file.
    Certify(CertifyArgs),
    /// Measure the tightest root cluster of a clustered construction.
    Cluster(ClusterArgs),
}

#[derive(clap::Args, Debug)]
struct FamilyArgs {
    /// Family tag: p, L, P, K, q, Q, s, r, clusterP, clusterQ.
    family: String,
    /// Degree parameter (delta for clusters).
    d: Option<usize>,
    /// Cluster length parameter.
    #[arg(long)]
    h: Option<usize>,
    /// Extra factor x^pad for cluster families.
    #[arg(long, default_value_t = 0)]
    pad: usize,
    /// Allow parameters below the construction thresholds.
    #[arg(long)]
    explore: bool,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, String> {
        Family::from_tag(&self.family, self.d, self.h, self.pad).map_err(|e| e.to_string())
    }

    fn policy(&self) -> RangePolicy {
        RangePolicy {
            allow_below_threshold: self.explore,
        }
    }
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Substitute this value of n.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
    n: Option<Integer>,
    /// Print coefficients as polynomials in n (the default without --n).
    #[arg(long)]
    symbolic: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    All,
    Eq2,
    Qcong,
    Leading,
    Loworder,
    Rstruct,
    Xn,
    Yn,
    Bracket,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: Suite,
    /// Largest degree for the symbolic checks.
    #[arg(long, default_value_t = 12)]
    dmax: usize,
    /// Largest r degree (default 2*dmax + 1).
    #[arg(long)]
    rmax: Option<usize>,
    /// Also write the reports as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Add 1 to one coefficient of one family member (family:index:power).
    #[arg(long, hide = true)]
    inject_fault: Option<Perturbed>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
struct PrecisionArgs {
    /// Starting working precision in bits.
    #[arg(long, default_value_t = PrecisionBits::DEFAULT_START.get())]
    prec_start: u32,
    /// Precision cap in bits (default 8192, or SEPLAB_PRECISION_CAP).
    #[arg(long)]
    prec_cap: Option<u32>,
}

impl PrecisionArgs {
    fn options(&self) -> Result<RootOptions, String> {
        let env = RootOptions::from_env().map_err(|e| e.to_string())?;
        let cap = self.prec_cap.unwrap_or(env.cap.get());
        RootOptions::new(self.prec_start.min(cap), cap).map_err(|e| e.to_string())
    }
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    /// Family tag (P, Q, r, p, q, s, clusterP, clusterQ).
    #[arg(long)]
    family: String,
    /// Degrees: comma list or lo..hi.
    #[arg(long = "d")]
    degrees: String,
    /// n grid: comma list or start:factor:count.
    #[arg(long = "n")]
    grid: String,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pad: usize,
    #[command(flatten)]
    precision: PrecisionArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Output file; stdout when absent (no metadata sidecar then).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    explore: bool,
}

#[derive(clap::Args, Debug)]
struct CertifyArgs {
    /// Family tag; omit when using --file.
    family: Option<String>,
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<Integer>,
    #[arg(long)]
    h: Option<usize>,
    /// File holding one line of ascending integer coefficients.
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Number of good primes to try.
    #[arg(long, default_value_t = 50)]
    budget: usize,
    #[arg(long)]
    explore: bool,
}

#[derive(clap::Args, Debug)]
struct ClusterArgs {
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    h: usize,
    #[arg(long)]
    n: Integer,
    /// Cluster size; must equal h + 3.
    #[arg(long)]
    k: Option<usize>,
    /// Use the monic construction built from the Q family.
    #[arg(long)]
    monic: bool,
    #[arg(long, default_value_t = 0)]
    pad: usize,
    #[command(flatten)]
    precision: PrecisionArgs,
    #[arg(long)]
    explore: bool,
}

/// Parse arguments and run; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
        }
    };
    let command_line = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Sweep(a) => cmd_sweep(&a, command_line),
        Command::Certify(a) => cmd_certify(&a),
        Command::Cluster(a) => cmd_cluster(&a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn cmd_gen(a: &GenArgs) -> Result<i32, String> {
    let family = a.family.family()?;
    let poly = family.build(a.family.policy()).map_err(|e| e.to_string())?;
    let text = match &a.n {
        Some(n) => format_list(poly.instantiate(n).coeffs().iter().map(|c| c.to_string())),
        None => format_list(poly.coeffs().iter().map(npoly_to_string)),
    };
    println!("{text}");
    Ok(EXIT_OK)
}

fn format_list(items: impl Iterator<Item = String>) -> String {
    let v: Vec<String> = items.collect();
    if v.is_empty() {
        "[0]".into()
    } else {
        format!("[{}]", v.join(", "))
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32, String> {
    let checks: Vec<Check> = match a.suite {
        Suite::All => Check::ALL.to_vec(),
        Suite::Eq2 => vec![Check::Eq2],
        Suite::Qcong => vec![Check::QCong],
        Suite::Leading => vec![Check::Leading],
        Suite::Loworder => vec![Check::LowOrder],
        Suite::Rstruct => vec![Check::RStruct],
        Suite::Xn => vec![Check::Xn],
        Suite::Yn => vec![Check::Yn],
        Suite::Bracket => vec![Check::Bracket],
    };
    let mut params = SuiteParams::with_d_max(a.dmax);
    if let Some(r) = a.rmax {
        params.big_d_max = r;
    }
    let src: &dyn FamilySource = match &a.inject_fault {
        Some(p) => {
            log::warn!("verifying against a perturbed family: {p:?}");
            p
        }
        None => &Canonical,
    };
    let reports = run_suite(src, &checks, &params);
    for r in &reports {
        println!("{r}");
    }
    if let Some(path) = &a.json {
        let text = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
        fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if reports.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_sweep(a: &SweepArgs, command: Vec<String>) -> Result<i32, String> {
    let started = SystemTime::now();
    let clock = Instant::now();
    let cfg = SweepConfig {
        family: a.family.clone(),
        degrees: parse_degrees(&a.degrees).map_err(|e| e.to_string())?,
        h: a.h,
        pad: a.pad,
        grid: a.grid.parse::<NGrid>().map_err(|e| e.to_string())?,
        options: a.precision.options()?,
        policy: RangePolicy {
            allow_below_threshold: a.explore,
        },
        workers: a.workers,
    };
    let rows = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let format = match a.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let text = match format {
        Format::Csv => render_csv(&rows),
        Format::Json => render_json(&rows),
    };
    match &a.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            let meta = RunMetadata {
                tool: "seplab",
                version: env!("CARGO_PKG_VERSION"),
                command,
                started_unix: started.duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
                elapsed_ms: clock.elapsed().as_millis(),
                workers: a.workers.unwrap_or_else(rayon::current_num_threads),
                precision_start: cfg.options.start.get(),
                precision_cap: cfg.options.cap.get(),
                rows: rows.len(),
                failed_rows: rows.iter().filter(|r| matches!(r.bound, BoundStatus::Failed(_))).count(),
                bound_holds_from: first_bound_n(&rows),
            };
            let meta_path = sidecar_path(path);
            let body = serde_json::to_string_pretty(&meta).map_err(|e| e.to_string())?;
            fs::write(&meta_path, body + "\n").map_err(|e| format!("{}: {e}", meta_path.display()))?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(EXIT_OK)
}

/// `<out>.meta.json` next to the output file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}

/// One line of whitespace-separated ascending integer coefficients.
pub fn parse_poly_file(text: &str) -> Result<IntPoly, String> {
    let line = text.lines().find(|l| !l.trim().is_empty()).ok_or("empty polynomial file")?;
    let coeffs = line
        .split_whitespace()
        .map(|t| t.parse::<Integer>().map_err(|_| format!("bad coefficient '{t}'")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoly::from_coeffs(coeffs))
}

fn cmd_certify(a: &CertifyArgs) -> Result<i32, String> {
    let poly = match (&a.file, &a.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_poly_file(&text)?
        }
        (None, Some(tag)) => {
            let family = Family::from_tag(tag, a.d, a.h, 0).map_err(|e| e.to_string())?;
            let n = a.n.as_ref().ok_or("certify needs --n for a family member")?;
            let policy = RangePolicy {
                allow_below_threshold: a.explore,
            };
            family.build(policy).map_err(|e| e.to_string())?.instantiate(n)
        }
        (None, None) => return Err("give a family or --file".into()),
    };
    let cert = certify_irreducible(&poly, a.budget).map_err(|e| e.to_string())?;
    println!("{}", serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())?);
    Ok(match cert.verdict {
        Verdict::Irreducible => EXIT_OK,
        Verdict::Reducible { .. } => EXIT_REDUCIBLE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_cluster(a: &ClusterArgs) -> Result<i32, String> {
    let k = a.h + 3;
    if let Some(given) = a.k {
        if given != k {
            return Err(format!("cluster size must be h + 3 = {k}, got {given}"));
        }
    }
    let tag = if a.monic { "clusterQ" } else { "clusterP" };
    let policy = RangePolicy {
        allow_below_threshold: a.explore,
    };
    // Roots are measured without the x^pad factor, which only adds zeros far
    // from the cluster and would make the polynomial non-squarefree.
    let family = Family::from_tag(tag, Some(a.delta), Some(a.h), 0).map_err(|e| e.to_string())?;
    let poly = family.build(policy).map_err(|e| e.to_string())?.instantiate(&a.n);
    let degree = poly.degree().unwrap_or(0) + a.pad;
    let height = poly.height().map_err(|e| e.to_string())?;
    let c = cluster_product(&poly, k, &a.precision.options()?).map_err(|e| e.to_string())?;
    let (e_lo, e_hi) = c.exponent(&height).map_err(|e| e.to_string())?;
    let offset = cluster_offset(a.h, a.monic);
    let target = k as f64 / (k + 1) as f64 * degree as f64 - offset;
    let report = json!({
        "family": tag,
        "delta": a.delta,
        "h": a.h,
        "pad": a.pad,
        "n": a.n.to_string(),
        "k": k,
        "degree": degree,
        "height": height.to_string(),
        "indices": c.indices,
        "product_lo": c.product.lo.to_hex_string(),
        "product_hi": c.product.hi.to_hex_string(),
        "product_lo_decimal": format!("{:.16e}", c.product.lo.to_f64(Round::Down)),
        "product_hi_decimal": format!("{:.16e}", c.product.hi.to_f64(Round::Up)),
        "exponent_lo": e_lo,
        "exponent_hi": e_hi,
        "offset_c": offset,
        "target": target,
        "precision_bits": c.precision.get(),
    });
    println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("/tmp/a.csv")), PathBuf::from("/tmp/a.csv.meta.json"));
    }

    #[test]
    fn poly_file_parsing() {
        let p = parse_poly_file("-1 1 -1 1\n").unwrap();
        assert_eq!(p, IntPoly::from_i64(&[-1, 1, -1, 1]));
        assert!(parse_poly_file("1 x").is_err());
        assert!(parse_poly_file("\n").is_err());
    }

    #[test]
    fn bad_arguments_exit_with_failure() {
        assert_eq!(run(["seplab", "frobnicate"]), EXIT_FAILURE);
        assert_eq!(run(["seplab", "cluster", "--delta", "4", "--h", "0", "--n", "100", "--k", "4"]), EXIT_FAILURE);
    }
}
