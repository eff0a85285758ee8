use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hessberg_core::basisgen::{basis_elements, basis_elements_d, verify_basis, BasisSpec};
use hessberg_core::hessfn::{enumerate_all, validate};
use hessberg_core::pdual::{gysin_injective, verify_basis_extends_duals, verify_duals_independent};
use hessberg_core::quotient::product_formula_series;
use hessberg_core::suite::{check_ceiling, run_suite, SuiteConfig, DEFAULT_SEED};
use hessberg_core::{
    build_quotient, build_root_table, generators, Family, HbError, HessFn, LieType, VERSION,
};

#[derive(Parser)]
#[command(name = "hessberg", version, about = "Cohomology rings of regular nilpotent Hessenberg varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads
    #[arg(long, global = true, env = "HESSBERG_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Allow ranks beyond the default ceilings
    #[arg(long, global = true)]
    ceiling_override: bool,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Family letter: A, B, C, D or G
    #[arg(long = "type")]
    family: Family,
    /// Lie rank (defaults to 2 for G)
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn lie_type(&self) -> Result<LieType, HbError> {
        let rank = match (self.family, self.rank) {
            (Family::G, r) => r.unwrap_or(2),
            (_, Some(r)) => r,
            (_, None) => return Err(HbError::Parse("--rank is required".into())),
        };
        LieType::new(self.family, rank)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots by chain
    Roots {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Validate one function (--h) or list all of a type
    Hess {
        #[arg(long, conflicts_with_all = ["family", "rank"])]
        h: Option<String>,
        #[arg(long = "type")]
        family: Option<Family>,
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Defining generators of the presentation
    Ideal {
        #[arg(long)]
        h: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert series against the product formula
    Hilbert {
        #[arg(long)]
        h: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify the basis
    Basis {
        #[arg(long)]
        h: String,
        /// Use random permutations drawn from this seed (types A, B, C, G)
        #[arg(long)]
        perm_seed: Option<u64>,
        /// Include every element
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Independence of the dual classes of all sub-functions
    Pdual {
        #[arg(long)]
        h: String,
        #[command(flatten)]
        common: Common,
    },
    /// Rank of the multiplication map from a sub-function
    Gysin {
        #[arg(long)]
        h: String,
        #[arg(long)]
        sub: String,
        #[command(flatten)]
        common: Common,
    },
    /// Every check for every function of a type
    Suite {
        #[command(flatten)]
        ty: TypeArgs,
        /// Random permutation tuples per function
        #[arg(long, default_value_t = 5)]
        perm_trials: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<HbError> for Failure {
    fn from(e: HbError) -> Self {
        match e {
            HbError::Parse(_)
            | HbError::UnsupportedType(_)
            | HbError::Arity { .. }
            | HbError::InvalidHessFn { .. }
            | HbError::InvalidPermutation(_)
            | HbError::Inclusion { .. }
            | HbError::CeilingExceeded(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit(common: &Common, value: Value, table: impl FnOnce() -> String) {
    if common.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{}", table());
    }
}

fn parse_h(s: &str) -> Result<HessFn, HbError> {
    s.parse()
}

fn guard(h: &HessFn, common: &Common) -> Result<(), HbError> {
    check_ceiling(h.lie_type(), common.ceiling_override)
}

fn cmd_roots(ty: &TypeArgs, common: &Common) -> Outcome {
    let table = build_root_table(ty.lie_type()?)?;
    let value = serde_json::to_value(&table).expect("serializable");
    emit(common, value, || {
        let mut out = String::new();
        for chain in table.chains() {
            for r in chain {
                let form = hessberg_core::Poly::linear(&r.coeffs);
                out.push_str(&format!("a[{},{}] = {}\n", r.row, r.col, form));
            }
        }
        out
    });
    Ok(true)
}

fn cmd_hess(h: Option<&str>, ty: Option<TypeArgs>, common: &Common) -> Outcome {
    if let Some(text) = h {
        let (t, vals) = text
            .split_once(':')
            .ok_or_else(|| HbError::Parse(format!("expected TYPE:v1,...,vn, got {text:?}")))?;
        let lie: LieType = t.parse()?;
        let values = vals
            .split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|_| HbError::Parse(format!("bad value {v:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let report = validate(lie, &values)?;
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|v| json!({"condition": v.condition.to_string(), "row": v.row}))
            .collect();
        let ok = report.is_ok();
        let value = json!({"version": VERSION, "h": text, "valid": ok, "violations": violations});
        emit(common, value, || {
            if ok {
                format!("{text}: valid\n")
            } else {
                let list: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| format!("condition {} at row {}", v.condition, v.row))
                    .collect();
                format!("{text}: invalid ({})\n", list.join(", "))
            }
        });
        return Ok(ok);
    }
    let ty = ty
        .ok_or_else(|| HbError::Parse("give --h or --type/--rank".into()))?
        .lie_type()?;
    check_ceiling(ty, common.ceiling_override)?;
    let all = enumerate_all(ty);
    let value = json!({
        "version": VERSION,
        "type": ty.family,
        "rank": ty.rank,
        "count": all.len(),
        "functions": all.iter().map(|h| h.values().to_vec()).collect::<Vec<_>>(),
    });
    emit(common, value, || {
        let mut out: String = all.iter().map(|h| format!("{h}\n")).collect();
        out.push_str(&format!("{} functions\n", all.len()));
        out
    });
    Ok(true)
}

fn cmd_ideal(h: &str, common: &Common) -> Outcome {
    let h = parse_h(h)?;
    let gs = generators(&h);
    let degrees = gs.degrees();
    let value = json!({
        "version": VERSION,
        "h": h.text(),
        "generators": gs.gens.iter().zip(&degrees).enumerate().map(|(k, (g, d))| json!({
            "row": k + 1, "degree": d, "poly": g.to_string()
        })).collect::<Vec<_>>(),
    });
    emit(common, value, || {
        gs.gens
            .iter()
            .zip(&degrees)
            .enumerate()
            .map(|(k, (g, d))| format!("f[{},{}] (degree {d}): {g}\n", k + 1, h.at(k + 1)))
            .collect()
    });
    Ok(true)
}

fn cmd_hilbert(h: &str, common: &Common) -> Outcome {
    let h = parse_h(h)?;
    guard(&h, common)?;
    let qr = build_quotient(&generators(&h))?;
    let hs = qr.hilbert_series().to_vec();
    let pf = product_formula_series(&h);
    let matches = hs == pf;
    let palindromic = hs.iter().eq(hs.iter().rev());
    let value = json!({
        "version": VERSION,
        "h": h.text(),
        "hilbert": hs,
        "product_formula": pf,
        "match": matches,
        "palindromic": palindromic,
        "dim": qr.dim(),
    });
    emit(common, value, || {
        format!(
            "{}\nhilbert          {:?}\nproduct formula  {:?}\nmatch {matches}, palindromic {palindromic}, dim {}\n",
            h,
            qr.hilbert_series(),
            pf,
            qr.dim()
        )
    });
    Ok(matches && palindromic)
}

fn cmd_basis(h: &str, perm_seed: Option<u64>, dump: bool, common: &Common) -> Outcome {
    let h = parse_h(h)?;
    guard(&h, common)?;
    let qr = build_quotient(&generators(&h))?;
    let mut els = match (h.lie_type().family, perm_seed) {
        (Family::D, Some(_)) => {
            return Err(Failure::Usage("type D bases take no permutations".into()))
        }
        (Family::D, None) => basis_elements_d(&h)?,
        (_, Some(s)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            basis_elements(&BasisSpec::random(&h, &mut rng))?
        }
        (_, None) => basis_elements(&BasisSpec::identity(&h))?,
    };
    let report = verify_basis(&qr, &mut els)?;
    let mut value = json!({
        "version": VERSION,
        "h": h.text(),
        "perm_seed": perm_seed,
        "count": report.count,
        "dim": report.dim,
        "rank": report.rank,
        "is_basis": report.is_basis,
    });
    if dump {
        value["elements"] = els
            .iter()
            .map(|e| json!({"m": e.m, "poly": e.poly.to_string(), "trace": e.trace}))
            .collect();
    }
    emit(common, value, || {
        let mut out = format!(
            "{h}\ncount {}, dim {}, rank {}, basis {}\n",
            report.count, report.dim, report.rank, report.is_basis
        );
        if dump {
            for e in &els {
                out.push_str(&format!("{:?}  {}\n", e.m, e.poly));
            }
        }
        out
    });
    Ok(report.is_basis)
}

fn cmd_pdual(h: &str, common: &Common) -> Outcome {
    let h = parse_h(h)?;
    guard(&h, common)?;
    let qr = build_quotient(&generators(&h))?;
    let duals = verify_duals_independent(&h, &qr)?;
    let extends = verify_basis_extends_duals(&h, &qr)?;
    let value = json!({
        "version": VERSION,
        "h": h.text(),
        "dim": qr.dim(),
        "count": duals.count,
        "rank": duals.rank,
        "independent": duals.independent,
        "basis_extends_duals": extends.holds,
        "classes": duals.classes,
    });
    emit(common, value, || {
        let mut out = format!("{h} (dim {})\n", qr.dim());
        for c in &duals.classes {
            out.push_str(&format!(
                "  {:<20} degree {:>3}  scalar {:<8} {}\n",
                c.h_sub,
                c.degree,
                c.scalar,
                &c.coords_sha256[..16]
            ));
        }
        out.push_str(&format!(
            "{} classes, rank {}, independent {}, basis extends duals {}\n",
            duals.count, duals.rank, duals.independent, extends.holds
        ));
        out
    });
    Ok(duals.independent && extends.holds)
}

fn cmd_gysin(h: &str, sub: &str, common: &Common) -> Outcome {
    let h = parse_h(h)?;
    let sub = parse_h(sub)?;
    guard(&h, common)?;
    let r = gysin_injective(&sub, &h)?;
    let mut value = serde_json::to_value(&r).expect("serializable");
    value["version"] = json!(VERSION);
    emit(common, value, || {
        format!(
            "{} -> {}: dims {} -> {}, degree shift {}, rank {}, injective {}\n",
            r.h_sub, r.h, r.dim_sub, r.dim, r.degree_shift, r.rank, r.injective
        )
    });
    Ok(r.injective && r.degrees_ok)
}

fn cmd_suite(ty: &TypeArgs, perm_trials: usize, common: &Common) -> Outcome {
    let cfg = SuiteConfig {
        ty: ty.lie_type()?,
        seed: common.seed,
        perm_trials,
        jobs: common.jobs,
        ceiling_override: common.ceiling_override,
    };
    let report = run_suite(&cfg)?;
    let value = serde_json::to_value(&report).expect("serializable");
    emit(common, value, || {
        let mut out = String::new();
        for r in &report.results {
            out.push_str(&format!(
                "{:<24} dim {:>5}  {}\n",
                r.h,
                r.dim,
                if r.pass { "ok".to_string() } else { r.failures.join(",") }
            ));
        }
        out.push_str(&format!(
            "{}/{} functions pass (seed {})\n",
            report.passed, report.functions, report.seed
        ));
        out
    });
    if !report.pass {
        for (h, check) in report.failures() {
            eprintln!("FAILED {h}: {check}");
        }
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Roots { ty, common } => cmd_roots(ty, common),
        Command::Hess {
            h,
            family,
            rank,
            common,
        } => {
            let ty = family.map(|family| TypeArgs {
                family,
                rank: *rank,
            });
            cmd_hess(h.as_deref(), ty, common)
        }
        Command::Ideal { h, common } => cmd_ideal(h, common),
        Command::Hilbert { h, common } => cmd_hilbert(h, common),
        Command::Basis {
            h,
            perm_seed,
            dump,
            common,
        } => cmd_basis(h, *perm_seed, *dump, common),
        Command::Pdual { h, common } => cmd_pdual(h, common),
        Command::Gysin { h, sub, common } => cmd_gysin(h, sub, common),
        Command::Suite {
            ty,
            perm_trials,
            common,
        } => cmd_suite(ty, *perm_trials, common),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
