use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use ordroots::classify::{classify_order, classify_poly, cubic_route};
use ordroots::disc_search::{regenerate_tables, BASE_LEVELS, DEFAULT_DESCENT_STEPS, DEFAULT_XBOUND};
use ordroots::gadget::{self, theta, Flavor, DEFAULT_ENUM_CAP};
use ordroots::htp::{build_order, normalize_degree2, witness_to_zero, GaussianFraction, System};
use ordroots::io::{InstanceFile, OrderFile, ParamsFile, PolyArg};
use ordroots::order::{Order, Reducedness, Ring};
use ordroots::poly::{IntPolynomial, DEFAULT_DEGREE_CAP, DEFAULT_RANK_CAP};
use ordroots::reductions::{build, make_gadget, verify_reduction, FamilyId, GadgetFamily, Sweep};
use ordroots::rootfind::zeros_in_order;
use ordroots::Error;

const EXIT_PRECONDITION: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Root-finding in orders, hardness gadgets and their verification.
#[derive(Parser)]
#[command(name = "ordroots", version)]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Settings shared by every subcommand; `--config` reads the same keys from JSON.
#[derive(Args, Deserialize, Default, Clone)]
#[serde(default, deny_unknown_fields)]
struct RunFlags {
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    #[arg(long, global = true)]
    rank_cap: Option<usize>,
    #[arg(long, global = true)]
    enum_cap: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    xbound: Option<u64>,
    /// Pretty-print JSON.
    #[arg(short, long, global = true)]
    verbose: bool,
}

struct RunConfig {
    degree_cap: usize,
    rank_cap: usize,
    enum_cap: u64,
    seed: u64,
    xbound: u64,
    verbose: bool,
}

impl RunConfig {
    fn resolve(flags: &RunFlags) -> Result<Self, Error> {
        let file = match &flags.config {
            Some(p) => serde_json::from_str::<RunFlags>(&read(p)?).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?,
            None => RunFlags::default(),
        };
        let pick = |a: Option<u64>, b: Option<u64>, d: u64| a.or(b).unwrap_or(d);
        let cfg = RunConfig {
            degree_cap: flags.degree_cap.or(file.degree_cap).unwrap_or(DEFAULT_DEGREE_CAP),
            rank_cap: flags.rank_cap.or(file.rank_cap).unwrap_or(DEFAULT_RANK_CAP),
            enum_cap: pick(flags.enum_cap, file.enum_cap, DEFAULT_ENUM_CAP),
            seed: pick(flags.seed, file.seed, 0),
            xbound: pick(flags.xbound, file.xbound, DEFAULT_XBOUND),
            verbose: flags.verbose || file.verbose,
        };
        if cfg.degree_cap == 0 || cfg.rank_cap == 0 || cfg.enum_cap == 0 {
            return Err(Error::Malformed("caps must be positive".into()));
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the ring axioms of an order or finite-ring file.
    Validate {
        #[arg(long)]
        order: PathBuf,
    },
    /// Zeros of a polynomial in an order.
    Rootfind {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        poly: String,
        /// List every zero instead of one witness.
        #[arg(long)]
        enumerate: bool,
    },
    /// Complexity verdict for the zero problem of a polynomial.
    Classify {
        #[arg(long)]
        poly: String,
    },
    /// Verdict for the problem with a fixed order.
    ClassifyOrder {
        #[arg(long)]
        order: PathBuf,
    },
    /// Decide a finite-module instance by enumeration.
    GadgetSolve {
        #[arg(long)]
        instance: PathBuf,
    },
    /// P/NPC verdict for a finite module and target set.
    GadgetClassify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "pi")]
        flavor: FlavorArg,
    },
    /// Build the order of a reduction instance.
    Reduce {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare module answers with zero sets over many instances.
    VerifyReduction {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_t: usize,
        /// Random instances instead of the exhaustive sweep.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Integral points and the discriminant ±3^k cubic tables.
    DiscSearch {
        #[arg(long, default_value_t = BASE_LEVELS)]
        lmax: u32,
    },
    /// Order gadget for polynomial systems over Z[i].
    Htp {
        #[command(subcommand)]
        cmd: HtpCmd,
    },
}

#[derive(Subcommand)]
enum HtpCmd {
    /// Normalize to degree 2 and build the order.
    Build {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a unit solution into a zero of (X^2+1)^2.
    Witness {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    P,
    Pi,
}

#[derive(Deserialize)]
struct SolutionFile {
    x: Vec<GaussianFraction>,
}

fn read(p: &Path) -> Result<String, Error> {
    fs::read_to_string(p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(p: &Path) -> Result<T, Error> {
    serde_json::from_str(&read(p)?).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))
}

/// Relative output paths go under `OUTPUT_DIR` when it is set.
fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os("OUTPUT_DIR") {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write_json(p: &Path, v: &impl serde::Serialize) -> Result<String, Error> {
    let path = output_path(p);
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    fs::write(&path, text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

/// A file holding text or `{"coeffs": [...]}`, or the polynomial itself.
fn parse_poly(arg: &str, cfg: &RunConfig) -> Result<IntPolynomial, Error> {
    let f = if Path::new(arg).is_file() {
        let text = read(Path::new(arg))?;
        match serde_json::from_str::<PolyArg>(&text) {
            Ok(p) => p.to_poly()?,
            Err(_) => text.trim().parse()?,
        }
    } else {
        arg.parse()?
    };
    if f.deg() > cfg.degree_cap {
        return Err(Error::DegreeCapExceeded { degree: f.deg(), cap: cfg.degree_cap });
    }
    Ok(f)
}

fn load_order(p: &Path, cfg: &RunConfig) -> Result<Order, Error> {
    let file: OrderFile = read_json(p)?;
    if file.rank > cfg.rank_cap {
        return Err(Error::RankCapExceeded { rank: file.rank, cap: cfg.rank_cap });
    }
    file.to_order()
}

fn family(id: &str, params: Option<&PathBuf>) -> Result<GadgetFamily, Error> {
    let id: FamilyId = id.parse()?;
    let params: ParamsFile = match params {
        Some(p) => read_json(p)?,
        None => ParamsFile::default(),
    };
    let f = params.f.as_ref().map(PolyArg::to_poly).transpose()?;
    let p = match &params.p {
        Some(p) => Some(u64::try_from(p.to_i64()?).map_err(|_| Error::Malformed("p must be positive".into()))?),
        None => None,
    };
    let a = params.a.as_ref().map(|a| a.to_i64().map(Into::into)).transpose()?;
    GadgetFamily::from_parts(id, f, p, a)
}

fn rows(v: &[Vec<num_bigint::BigInt>]) -> Value {
    v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect()
}

fn ivec(v: &[i64]) -> Value {
    v.iter().map(|x| x.to_string()).collect()
}

fn run(cmd: &Cmd, cfg: &RunConfig) -> Result<Value, Error> {
    Ok(match cmd {
        Cmd::Validate { order } => {
            let file: OrderFile = read_json(order)?;
            if file.rank > cfg.rank_cap {
                return Err(Error::RankCapExceeded { rank: file.rank, cap: cfg.rank_cap });
            }
            if file.components.is_some() {
                let r = file.to_finite_ring()?;
                json!({"valid": true, "kind": "finite-ring", "rank": r.rank().to_string(), "cardinality": r.cardinality().to_string()})
            } else {
                let a = file.to_order()?;
                let (reduced, nilpotent) = match a.reducedness() {
                    Reducedness::Reduced => (true, Value::Null),
                    Reducedness::NotReduced { witness } => (false, rows(&[witness])[0].clone()),
                };
                json!({"valid": true, "kind": "order", "rank": a.rank().to_string(), "zero_ring": a.is_zero_ring(),
                       "reduced": reduced, "nilpotent": nilpotent})
            }
        }
        Cmd::Rootfind { order, poly, enumerate } => {
            let a = load_order(order, cfg)?;
            let f = parse_poly(poly, cfg)?;
            let z = zeros_in_order(&a, &f)?;
            let shown = if *enumerate { &z.zeros[..] } else { &z.zeros[..z.zeros.len().min(1)] };
            json!({"nonempty": z.nonempty, "every_element": z.all, "count": z.zeros.len().to_string(), "zeros": rows(shown)})
        }
        Cmd::Classify { poly } => {
            let f = parse_poly(poly, cfg)?;
            let v = classify_poly(&f)?;
            let mut out = serde_json::to_value(&v).expect("serializable");
            let monic = ordroots::poly::monic_part(&f, cfg.degree_cap)?;
            if monic.deg() == 3 && v.status != ordroots::classify::Status::Trivial {
                out["cubic_route"] = serde_json::to_value(cubic_route(&monic)?).expect("serializable");
            }
            out
        }
        Cmd::ClassifyOrder { order } => serde_json::to_value(classify_order(&load_order(order, cfg)?)?).expect("serializable"),
        Cmd::GadgetSolve { instance } => {
            let file: InstanceFile = read_json(instance)?;
            let (g, s) = file.module()?;
            let inst = file.instance(&g)?;
            let w = gadget::solve(&g, &s, &inst, cfg.enum_cap)?;
            json!({"yes": w.is_some(), "witness": w.as_deref().map(ivec)})
        }
        Cmd::GadgetClassify { instance, flavor } => {
            let file: InstanceFile = read_json(instance)?;
            let (g, s) = file.module()?;
            let flavor = match flavor {
                FlavorArg::P => Flavor::P,
                FlavorArg::Pi => Flavor::Pi,
            };
            let v = gadget::classify(&g, &s, flavor);
            let th: Vec<Value> = theta(&g, &s).elements().iter().map(|x| ivec(x)).collect();
            json!({"status": v.status, "reason": v.reason, "theta": th, "coset": gadget::is_coset(&g, &s)})
        }
        Cmd::Reduce { family: id, params, instance, out } => {
            let gadget = make_gadget(&family(id, params.as_ref())?)?;
            let file: InstanceFile = read_json(instance)?;
            let inst = file.instance(gadget.module())?;
            let built = build(&gadget, &inst)?;
            let order = OrderFile::from_ring(&built.order.order);
            let mut v = json!({
                "rank": built.order.order.rank().to_string(),
                "f": built.f.to_string(),
                "provenance": built.provenance,
                "expected_zero_images": built.expected_zero_images,
            });
            match out {
                Some(p) => v["out"] = json!(write_json(p, &order)?),
                None => v["order"] = serde_json::to_value(&order).expect("serializable"),
            }
            v
        }
        Cmd::VerifyReduction { family: id, params, max_t, trials } => {
            let gadget = make_gadget(&family(id, params.as_ref())?)?;
            let sweep = Sweep { max_t: *max_t, trials: *trials, seed: cfg.seed, submodule_cap: cfg.enum_cap, ..Sweep::default() };
            serde_json::to_value(verify_reduction(&gadget, &sweep)?).expect("serializable")
        }
        Cmd::DiscSearch { lmax } => {
            serde_json::to_value(regenerate_tables(cfg.xbound, *lmax, DEFAULT_DESCENT_STEPS)?).expect("serializable")
        }
        Cmd::Htp { cmd } => match cmd {
            HtpCmd::Build { system, out } => {
                let s: System = read_json(system)?;
                let nm = normalize_degree2(&s)?;
                let h = build_order(&nm.system)?;
                let order = OrderFile::from_ring(&h.order.order);
                let mut v = json!({
                    "rank": h.order.order.rank().to_string(),
                    "layout": h.layout,
                    "normalized": nm,
                    "basis": rows(&h.order.lattice.basis().to_vec()),
                });
                match out {
                    Some(p) => v["out"] = json!(write_json(p, &order)?),
                    None => v["order"] = serde_json::to_value(&order).expect("serializable"),
                }
                v
            }
            HtpCmd::Witness { system, solution } => {
                let s: System = read_json(system)?;
                let x: SolutionFile = read_json(solution)?;
                if x.x.len() != s.n {
                    return Err(Error::ShapeMismatch(format!("solution has {} coordinates, system {}", x.x.len(), s.n)));
                }
                let nm = normalize_degree2(&s)?;
                let h = build_order(&nm.system)?;
                let w = witness_to_zero(&h, &nm.system, &nm.extend_fractions(&x.x))?;
                serde_json::to_value(w).expect("serializable")
            }
        },
    })
}

fn error_code(e: &Error) -> u8 {
    match e {
        _ if e.is_cap() => EXIT_CAP,
        Error::Malformed(_) | Error::UnknownFamily(_) => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
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
    let result = RunConfig::resolve(&cli.run).and_then(|cfg| run(&cli.cmd, &cfg).map(|v| (v, cfg.verbose)));
    match result {
        Ok((v, pretty)) => {
            let text = if pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            println!("{}", text.expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", json!({"error": error_kind(&e), "message": e.to_string()}));
            ExitCode::from(error_code(&e))
        }
    }
}
