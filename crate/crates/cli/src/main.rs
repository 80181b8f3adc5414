use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tvlab::cache::Cache;
use tvlab::claims::{seeded_search, verify, Context, Status};
use tvlab::io::{complex_json, parse_json, read_complex, read_text};
use tvlab_core::bounds::{bound_report, BoundQuery};
use tvlab_core::deleted_product::{
    betti_product, connectivity_bound, deleted_product_skeleton, homological_connectivity, sharpness_hypotheses,
    DEFAULT_CELL_BUDGET,
};
use tvlab_core::homology::betti_f2;
use tvlab_core::matroid::{build_mr, build_mr_hat, build_mr_prime, chessboard, uniform, Matroid};
use tvlab_core::shelling::{
    check_certificate, shelling_mr2, shelling_mr2_prime, verify_shelling_intersection, verify_shelling_pairwise,
    SearchOutcome, ShellingOrder, DEFAULT_SEARCH_BUDGET,
};
use tvlab_core::{deleted_join, SimplicialComplex};

const EXIT_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 1;

#[derive(Parser)]
#[command(name = "tvlab", version, about = "Matroid complexes, deleted joins and products, shellings and Tverberg bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ring {
    F2,
}

#[derive(Subcommand)]
enum Command {
    /// Write a matroid or chessboard complex as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Reduced F2 Betti numbers of a complex or of its deleted join.
    Homology {
        file: PathBuf,
        #[arg(long, value_name = "K")]
        deleted_join: Option<usize>,
    },
    /// Shelling certificates.
    Shell {
        #[command(subcommand)]
        action: ShellAction,
    },
    /// Homology of the k-fold deleted product.
    Delprod {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Generate only cells up to this dimension; Betti numbers below it are exact.
        #[arg(long)]
        max_dim_cap: Option<isize>,
        /// Refuse instances with more cells than this.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: usize,
    },
    /// Tverberg-number bounds for `b` disjoint bases of a rank-`r` matroid in dimension `d`.
    Bounds {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the claim registry and print a report.
    VerifyPaper {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=4))]
        rmax: u64,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, env = "TVLAB_CACHE", default_value = ".tvlab-cache")]
        cache_dir: PathBuf,
        #[arg(long)]
        no_cache: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Ring::F2)]
        ring: Ring,
        /// Run only these claim ids; the rest are reported as skipped.
        #[arg(long = "claim", value_name = "ID")]
        claims: Vec<String>,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// `M_r`.
    Mr {
        #[arg(long)]
        r: usize,
    },
    /// `M'_r`.
    MrPrime {
        #[arg(long)]
        r: usize,
    },
    /// The direct sum whose `(r−1)`-skeleton is `M_r`.
    MrHat {
        #[arg(long)]
        r: usize,
    },
    /// Chessboard complex with `k` rows and `r` columns.
    Chessboard {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Uniform matroid `U_{m,n}`.
    Uniform {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum ShellAction {
    /// Check a facet order (and its witnesses, when present) with both verifiers.
    Verify { complex: PathBuf, order: PathBuf },
    /// Exhaustive search for a shelling.
    Search {
        complex: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct the shelling of the 2-fold deleted join of `M_r` or `M'_r`.
    Mr2 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        prime: bool,
        /// Where to write the deleted join.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Where to write the certificate.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Verification failures carry a message and exit with code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Failed(String);

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn build(kind: &BuildKind) -> Result<SimplicialComplex> {
    let m: Matroid = match *kind {
        BuildKind::Mr { r } => build_mr(r)?,
        BuildKind::MrPrime { r } => build_mr_prime(r)?,
        BuildKind::MrHat { r } => build_mr_hat(r)?,
        BuildKind::Uniform { m, n } => uniform(m, n)?,
        BuildKind::Chessboard { k, r } => {
            if k == 0 || r == 0 {
                bail!("chessboard dimensions must be positive");
            }
            return Ok(chessboard(k, r));
        }
    };
    Ok(m.complex)
}

fn read_order(path: &Path) -> Result<ShellingOrder> {
    let text = read_text(path)?;
    let name = path.display().to_string();
    if text.trim_start().starts_with('[') {
        return Ok(ShellingOrder {
            order: parse_json(&text, &name)?,
            witnesses: Vec::new(),
        });
    }
    Ok(parse_json(&text, &name)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build { kind, output } => emit(output.as_deref(), &complex_json(&build(&kind)?)),
        Command::Homology { file, deleted_join: k } => {
            let mut c = read_complex(&file)?;
            if let Some(k) = k {
                if k == 0 {
                    bail!("--deleted-join needs k >= 1");
                }
                c = deleted_join(&c, k);
            }
            let b = betti_f2(&c);
            emit(None, &serde_json::to_string(&b)?)
        }
        Command::Shell { action } => shell(action),
        Command::Delprod { file, k, max_dim_cap, cell_budget } => {
            let c = read_complex(&file)?;
            let p = deleted_product_skeleton(&c, k, max_dim_cap, cell_budget)?;
            let b = betti_product(&p);
            let mut out = json!({
                "k": k,
                "max_dim_cap": max_dim_cap,
                "dim": p.dim(),
                "cell_counts": p.cell_counts(),
                "betti": b,
                "betti_minus_one": b.minus_one,
                "homological_connectivity": homological_connectivity(&p),
            });
            if let Ok(m) = Matroid::from_complex(c) {
                let (strict, relaxed) = sharpness_hypotheses(m.rank, m.b(), k);
                out["matroid"] = json!({
                    "rank": m.rank,
                    "disjoint_bases": m.b(),
                    "connectivity_bound": connectivity_bound(m.rank, m.b(), k),
                    "b > r(k-1)": strict,
                    "b > (r-1)(k-1)": relaxed,
                });
            }
            emit(None, &serde_json::to_string_pretty(&out)?)
        }
        Command::Bounds { b, r, d, format } => {
            let rep = bound_report(&BoundQuery::new(b, r, d)?);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&rep)?,
                Format::Md => {
                    let show = |v: Option<String>| v.unwrap_or_else(|| "none".into());
                    format!(
                        "| b | r | d | ell | best prime power | upper npp | connectivity |\n|---|---|---|---|---|---|---|\n| {b} | {r} | {d} | {:.6} | {} | {} | {} |",
                        rep.ell,
                        show(rep.best_prime_power.map(|v| v.to_string())),
                        show(rep.upper_npp.map(|v| v.to_string())),
                        show(rep.connectivity_lower.map(|v| v.to_string())),
                    )
                }
            };
            emit(None, &text)
        }
        Command::VerifyPaper { rmax, budget, cache_dir, no_cache, format, seed, ring: Ring::F2, claims } => {
            let cache = if no_cache { Cache::disabled() } else { Cache::at(&cache_dir)? };
            let ctx = Context {
                rmax: rmax as usize,
                budget,
                seed,
                cache,
                only: (!claims.is_empty()).then_some(claims),
            };
            let report = verify(&ctx);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)?,
                Format::Md => report.to_markdown(),
            };
            emit(None, &text)?;
            if !report.all_passed() {
                let failed: Vec<&str> = report
                    .claims
                    .iter()
                    .filter(|c| c.status == Status::Fail)
                    .map(|c| c.id.as_str())
                    .collect();
                return Err(Failed(format!("failed claims: {}", failed.join(", "))).into());
            }
            Ok(())
        }
    }
}

fn shell(action: ShellAction) -> Result<()> {
    match action {
        ShellAction::Verify { complex, order } => {
            let c = read_complex(&complex)?;
            let cert = read_order(&order)?;
            let pairwise = verify_shelling_pairwise(&c, &cert.order)?;
            let intersection = verify_shelling_intersection(&c, &cert.order)?;
            let witnesses = if cert.witnesses.is_empty() { None } else { Some(check_certificate(&c, &cert)?) };
            let pass = pairwise.valid && intersection.valid && witnesses != Some(false);
            emit(
                None,
                &serde_json::to_string(&json!({
                    "pairwise": pairwise.valid,
                    "intersection": intersection.valid,
                    "witnesses": witnesses,
                    "first_failure": pairwise.first_failure.or(intersection.first_failure),
                    "status": if pass { "pass" } else { "fail" },
                }))?,
            )?;
            if !pass {
                return Err(Failed("not a shelling".into()).into());
            }
            Ok(())
        }
        ShellAction::Search { complex, budget, seed, output } => {
            let c = read_complex(&complex)?;
            match seeded_search(&c, &[], budget, seed) {
                SearchOutcome::Shellable(cert) => emit(output.as_deref(), &serde_json::to_string(&cert)?),
                SearchOutcome::NotShellable => Err(Failed("not shellable".into()).into()),
                SearchOutcome::Exhausted => Err(Failed(format!("search budget {budget} exhausted")).into()),
            }
        }
        ShellAction::Mr2 { r, prime, complex, output } => {
            let s = if prime { shelling_mr2_prime(r)? } else { shelling_mr2(r)? };
            if let Some(p) = complex {
                emit(Some(&p), &complex_json(&s.complex))?;
            }
            emit(output.as_deref(), &serde_json::to_string(&s.shelling)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => {
            eprintln!("tvlab: {e}");
            ExitCode::from(EXIT_FAILED)
        }
        Err(e) => {
            eprintln!("tvlab: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
