//! Command-line interface: parsing, dispatch, and report serialization.

use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spl_core::arith::{rat, Rat};
use spl_core::constructions::{self, FamilySpec};
use spl_core::decompose::{self, DecomposeConfig};
use spl_core::energy::{self, Method};
use spl_core::ground::WeightFn;
use spl_core::padic;
use spl_core::poly::PolyVec;
use spl_core::sidon::{self, ScanOrder, SidonKind};
use spl_core::structure;
use spl_core::{GroundSet, PolyQ};

use crate::battery::{self, BatteryConfig};
use crate::io::{self, rat_str};
use crate::mve;

#[derive(Parser)]
#[command(name = "spl", about = "exact-arithmetic toolkit for sum-product experiments", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    E,
    M,
    J,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Split,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChangKind {
    Add,
    Mult,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FinderArg {
    ExactQc,
    GreedyFiber,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ap,
    Gp,
    OddTimesPowers,
    PrimeProducts,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: FamilyArg,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub step: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
    #[arg(long)]
    pub p_count: Option<usize>,
    #[arg(long)]
    pub q_count: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a structured example family as a set file.
    Gen(GenArgs),
    /// Compute an energy (E, M, or J) exactly.
    Energy {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        polys: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Valuation-fiber decoupling check at a prime.
    Chang {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum)]
        kind: ChangKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Query complexity of a set with a replayable strategy.
    Qc {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy multiplicative cover of A by shifts of B.
    Cover {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sidon subset extraction (greedy or exact maximum).
    Sidon {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum)]
        kind: ChangKind,
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Low-energy decomposition A = B ∪ C with certificates.
    Decompose {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        polys: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "greedy-fiber")]
        finder: FinderArg,
        #[arg(long = "D", default_value_t = 4)]
        d_const: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        tau: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moment-bound report for a weighted set.
    Mve {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded verification battery.
    Battery {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_opt_rat(s: &Option<String>, default: i64) -> Result<Rat> {
    match s {
        Some(t) => io::parse_rat(t),
        None => Ok(rat(default)),
    }
}

fn weights_or_ones(a: &GroundSet, path: &Option<PathBuf>) -> Result<WeightFn> {
    match path {
        Some(p) => io::read_weights(p),
        None => Ok(WeightFn::ones(a)),
    }
}

fn polys_or_identity(path: &Option<PathBuf>, s: u32) -> Result<PolyVec> {
    match path {
        Some(p) => io::read_polys(p, s),
        None => Ok(PolyVec::identity(s)),
    }
}

/// Runs a parsed command; the returned value is the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Energy {
            kind,
            set,
            polys,
            s,
            weights,
            method,
            out,
        } => {
            let a = io::read_set(&set)?;
            let phis = io::read_polys(&polys, s)?;
            let w = weights_or_ones(&a, &weights)?;
            let method = match method {
                MethodArg::Oracle => Method::Oracle,
                MethodArg::Split => Method::Split,
                MethodArg::Auto => Method::Auto,
            };
            let start = std::time::Instant::now();
            let report = match kind {
                KindArg::E => energy::energy_e(&a, &w, &phis, method),
                KindArg::M => energy::energy_m(&a, &w, &phis, method),
                KindArg::J => energy::energy_j(&a, &w, &phis, method),
            }
            .map_err(|e| anyhow!("{e}"))?;
            let v = json!({
                "kind": format!("{:?}", report.kind),
                "s": report.s,
                "value": rat_str(&report.value),
                "method": format!("{:?}", report.method),
                "elapsed_ms": start.elapsed().as_millis() as u64,
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Chang {
            set,
            poly,
            p,
            s,
            kind,
            out,
        } => {
            let a = io::read_set(&set)?;
            let phi = io::read_poly(&poly)?;
            let w = WeightFn::ones(&a);
            let check = match kind {
                ChangKind::Add => padic::check_chang_additive(&a, &w, &phi, p, s),
                ChangKind::Mult => {
                    let certified = energy::certify_interval(&a, &phi).is_ok();
                    padic::check_chang_multiplicative(&a, &w, &phi, p, s, certified)
                }
            }
            .map_err(|e| anyhow!("{e}"))?;
            let v = json!({
                "lhs": rat_str(&check.lhs_energy),
                "rhs": rat_str(&check.rhs_bound),
                "constant": rat_str(&check.constant_used),
                "holds": check.holds,
                "fiber_energies": check
                    .fiber_energies
                    .iter()
                    .map(|(n, e)| json!({"valuation": n, "energy": rat_str(e)}))
                    .collect::<Vec<_>>(),
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(if check.holds { 0 } else { 1 })
        }
        Command::Qc {
            set,
            exact,
            greedy,
            out,
        } => {
            let a = io::read_set(&set)?;
            let (q, strategy) = if greedy && !exact {
                structure::query_complexity_greedy(&a)
            } else {
                structure::query_complexity_exact(&a)
            }
            .map_err(|e| anyhow!("{e}"))?;
            let v = json!({
                "q": q,
                "strategy": io::strategy_to_json(&strategy),
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Cover { a, b, out } => {
            let sa = io::read_set(&a)?;
            let sb = io::read_set(&b)?;
            let r = structure::greedy_cover(&sa, &sb).map_err(|e| anyhow!("{e}"))?;
            let v = json!({
                "cover": format!("{}", r.cover),
                "c": rat_str(&r.c),
                "size_bound": r.size_bound,
                "holds": r.holds,
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(if r.holds { 0 } else { 1 })
        }
        Command::Sidon {
            set,
            s,
            kind,
            poly,
            exact,
            seed,
            out,
        } => {
            let a = io::read_set(&set)?;
            let phi = match poly {
                Some(p) => io::read_poly(&p)?,
                None => PolyQ::identity(),
            };
            let skind = match kind {
                ChangKind::Add => SidonKind::Additive,
                ChangKind::Mult => SidonKind::Multiplicative,
            };
            let cert = if exact {
                sidon::max_sidon_exact(&a, s, &phi, skind, 16).map_err(|e| anyhow!("{e}"))?
            } else {
                sidon::greedy_sidon_extract(&a, s, &phi, skind, ScanOrder::Shuffled(seed))
                    .map_err(|e| anyhow!("{e}"))?
                    .certificate
            };
            let v = json!({
                "subset": format!("{}", cert.subset),
                "size": cert.subset.len(),
                "verified": cert.verified,
                "collision": cert.collision.as_ref().map(|(l, r)| json!({
                    "left": l.iter().map(rat_str).collect::<Vec<_>>(),
                    "right": r.iter().map(rat_str).collect::<Vec<_>>(),
                })),
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Decompose {
            set,
            s,
            polys,
            finder,
            d_const,
            k,
            tau,
            out,
        } => {
            let a = io::read_set(&set)?;
            let phis = polys_or_identity(&polys, s)?;
            let cfg = DecomposeConfig {
                d_const,
                k,
                tau,
                finder: match finder {
                    FinderArg::ExactQc => decompose::Finder::ExactQc,
                    FinderArg::GreedyFiber => decompose::Finder::GreedyFiber,
                },
            };
            let r = decompose::decompose(&a, s, &cfg).map_err(|e| anyhow!("{e}"))?;
            let cert = decompose::certify(&r, &phis, false).map_err(|e| anyhow!("{e}"))?;
            let ub = decompose::union_bound_certificate(&r, &phis).map_err(|e| anyhow!("{e}"))?;
            let exp = |v: &Rat, n: usize| -> Option<f64> {
                // realized exponent log(value)/log(size); informational
                if n < 2 || *v <= rat(0) {
                    return None;
                }
                let f: f64 = format!("{}", v.numer()).parse().ok()?;
                let g: f64 = format!("{}", v.denom()).parse().ok()?;
                Some((f.ln() - g.ln()) / (n as f64).ln())
            };
            let v = json!({
                "b": format!("{}", r.b),
                "c": format!("{}", r.c),
                "rounds": r.rounds,
                "k": r.k,
                "tau": r.tau,
                "dilation": r.dilation.to_string(),
                "pieces": r.pieces.iter().map(|p| json!({
                    "set": format!("{}", p.set),
                    "witness": io::strategy_to_json(&p.witness),
                    "depth": p.witness.depth(),
                })).collect::<Vec<_>>(),
                "certificates": {
                    "e_b": rat_str(&cert.e_b),
                    "m_c": rat_str(&cert.m_c),
                    "threshold_holds": cert.threshold_holds,
                    "e_b_exponent": exp(&cert.e_b, r.b.len()),
                    "m_c_exponent": exp(&cert.m_c, r.c.len()),
                    "union_bound": {
                        "lhs": rat_str(&ub.lhs),
                        "rhs": rat_str(&ub.rhs),
                        "holds": ub.holds,
                    },
                },
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(if cert.threshold_holds && ub.holds { 0 } else { 1 })
        }
        Command::Mve {
            set,
            s,
            poly,
            weights,
            out,
        } => {
            let a = io::read_set(&set)?;
            let phi = match poly {
                Some(p) => io::read_poly(&p)?,
                None => PolyQ::identity(),
            };
            let w = weights_or_ones(&a, &weights)?;
            let r = mve::check_mve(&a, &w, &phi, s)?;
            let v = json!({
                "energy": rat_str(&r.energy),
                "k": rat_str(&r.k),
                "c": r.c,
                "bound": r.bound,
                "ratio": r.ratio,
                "holds_with_c1": r.holds_with_c1,
            });
            io::emit(out.as_deref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Battery {
            config,
            seed,
            format,
            out,
        } => {
            let cfg = match config {
                Some(p) => BatteryConfig::from_kv_file(&p)?,
                None => BatteryConfig::default(),
            };
            let report = battery::run_battery(&cfg, seed)?;
            let text = match format {
                FormatArg::Csv => battery::report_to_csv(&report),
                FormatArg::Json => {
                    serde_json::to_string_pretty(&battery::report_to_json(&report))?
                }
            };
            io::emit(out.as_deref(), &text)?;
            if report.failures > 0 {
                eprintln!("FAILED: {} theorem-test violations", report.failures);
                Ok(1)
            } else {
                Ok(0)
            }
        }
    }
}

fn run_gen(args: GenArgs) -> Result<i32> {
    let need = |o: Option<u32>, name: &str| o.ok_or_else(|| anyhow!("--{name} required"));
    let spec = match args.family {
        FamilyArg::Ap => FamilySpec::Ap {
            start: parse_opt_rat(&args.start, 1)?,
            step: parse_opt_rat(&args.step, 1)?,
            len: args.len.ok_or_else(|| anyhow!("--len required"))?,
        },
        FamilyArg::Gp => FamilySpec::Gp {
            base: parse_opt_rat(&args.base, 2)?,
            len: args.len.ok_or_else(|| anyhow!("--len required"))?,
        },
        FamilyArg::OddTimesPowers => FamilySpec::OddTimesPowers {
            m: need(args.m, "m")?,
            n: need(args.n, "n")?,
        },
        FamilyArg::PrimeProducts => FamilySpec::PrimeProducts {
            p_count: args
                .p_count
                .ok_or_else(|| anyhow!("--p-count required"))?,
            q_count: args
                .q_count
                .ok_or_else(|| anyhow!("--q-count required"))?,
        },
    };
    let set = constructions::gen(&spec).map_err(|e| anyhow!("{e}"))?;
    match args.out {
        Some(p) => io::write_set(&p, &set)?,
        None => println!("{set}"),
    }
    Ok(0)
}

pub fn main_impl() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success exit
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
