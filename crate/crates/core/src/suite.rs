//! Batch verification over every Hessenberg function of a type.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basisgen::{basis_elements, default_basis, verify_basis, BasisReport, BasisSpec};
use crate::error::{HbError, Result};
use crate::hessfn::{enumerate_all, HessFn};
use crate::idealgen::generators;
use crate::pdual::{gysin_check, verify_basis_extends_duals, verify_duals_independent};
use crate::quotient::{build_quotient, product_formula_series, QuotientRing};
use crate::rootsystem::{Family, LieType};
use crate::VERSION;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Largest Lie rank run without an explicit override.
pub fn default_ceiling(family: Family) -> Option<usize> {
    match family {
        Family::A => Some(5),
        Family::B | Family::C => Some(4),
        Family::D => Some(5),
        Family::G => None,
    }
}

pub fn check_ceiling(ty: LieType, override_ceiling: bool) -> Result<()> {
    match default_ceiling(ty.family) {
        Some(max) if !override_ceiling && ty.rank > max => Err(HbError::CeilingExceeded(format!(
            "{ty} (limit {}{max}; pass --ceiling-override to run anyway)",
            ty.family.letter()
        ))),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub ty: LieType,
    pub seed: u64,
    /// Random permutation tuples per function (types A, B, C, G2).
    pub perm_trials: usize,
    pub jobs: usize,
    pub ceiling_override: bool,
}

impl SuiteConfig {
    pub fn new(ty: LieType) -> Self {
        SuiteConfig {
            ty,
            seed: DEFAULT_SEED,
            perm_trials: 5,
            jobs: 1,
            ceiling_override: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GysinSummary {
    pub h_sub: String,
    pub dim_sub: usize,
    pub rank: usize,
    pub injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionReport {
    pub h: String,
    pub dim: usize,
    pub hilbert: Vec<usize>,
    pub hilbert_matches: bool,
    pub palindromic: bool,
    pub basis: BasisReport,
    pub permuted_bases: usize,
    pub permuted_passed: usize,
    pub duals: usize,
    pub duals_rank: usize,
    pub extends_duals: bool,
    pub gysin: Vec<GysinSummary>,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub seed: u64,
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub functions: usize,
    pub passed: usize,
    pub pass: bool,
    pub results: Vec<FunctionReport>,
}

impl SuiteReport {
    /// `(h, check)` for each failing check.
    pub fn failures(&self) -> Vec<(String, String)> {
        self.results
            .iter()
            .flat_map(|r| r.failures.iter().map(|f| (r.h.clone(), f.clone())))
            .collect()
    }
}

fn is_palindrome(v: &[usize]) -> bool {
    v.iter().eq(v.iter().rev())
}

fn check_function(
    idx: usize,
    h: &HessFn,
    qr: &QuotientRing,
    rings: &[(HessFn, QuotientRing)],
    cfg: &SuiteConfig,
) -> Result<FunctionReport> {
    let mut failures = Vec::new();
    let hilbert = qr.hilbert_series().to_vec();
    let hilbert_matches = hilbert == product_formula_series(h);
    if !hilbert_matches {
        failures.push("hilbert".to_string());
    }
    let palindromic = is_palindrome(&hilbert);
    if !palindromic {
        failures.push("palindrome".to_string());
    }

    let mut els = default_basis(h)?;
    let basis = verify_basis(qr, &mut els)?;
    if !basis.is_basis {
        failures.push("basis".to_string());
    }

    let (mut permuted_bases, mut permuted_passed) = (0, 0);
    if h.lie_type().family != Family::D {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(idx as u64);
        for _ in 0..cfg.perm_trials {
            let spec = BasisSpec::random(h, &mut rng);
            let mut els = basis_elements(&spec)?;
            permuted_bases += 1;
            if verify_basis(qr, &mut els)?.is_basis {
                permuted_passed += 1;
            }
        }
        if permuted_passed != permuted_bases {
            failures.push("permuted-basis".to_string());
        }
    }

    let duals = verify_duals_independent(h, qr)?;
    if !duals.independent {
        failures.push("duals".to_string());
    }
    let extends = verify_basis_extends_duals(h, qr)?;
    if !extends.holds {
        failures.push("extends-duals".to_string());
    }

    let mut gysin = Vec::new();
    for sub in h.covered() {
        let (_, q_sub) = rings
            .iter()
            .find(|(g, _)| *g == sub)
            .ok_or_else(|| HbError::Internal(format!("missing quotient for {sub}")))?;
        let r = match gysin_check(&sub, q_sub, h, qr) {
            Ok(r) => r,
            Err(HbError::IllDefinedMap(_)) => {
                failures.push(format!("gysin-well-defined:{sub}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !r.injective || !r.degrees_ok {
            failures.push(format!("gysin:{sub}"));
        }
        gysin.push(GysinSummary {
            h_sub: sub.text(),
            dim_sub: r.dim_sub,
            rank: r.rank,
            injective: r.injective,
        });
    }

    Ok(FunctionReport {
        h: h.text(),
        dim: qr.dim(),
        hilbert,
        hilbert_matches,
        palindromic,
        basis,
        permuted_bases,
        permuted_passed,
        duals: duals.count,
        duals_rank: duals.rank,
        extends_duals: extends.holds,
        gysin,
        pass: failures.is_empty(),
        failures,
    })
}

fn run(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let all = enumerate_all(cfg.ty);
    let rings: Vec<(HessFn, QuotientRing)> = all
        .par_iter()
        .map(|h| Ok((h.clone(), build_quotient(&generators(h))?)))
        .collect::<Result<_>>()?;
    let results: Vec<FunctionReport> = rings
        .par_iter()
        .enumerate()
        .map(|(idx, (h, qr))| check_function(idx, h, qr, &rings, cfg))
        .collect::<Result<_>>()?;
    let passed = results.iter().filter(|r| r.pass).count();
    Ok(SuiteReport {
        version: VERSION.to_string(),
        seed: cfg.seed,
        family: cfg.ty.family,
        rank: cfg.ty.rank,
        functions: results.len(),
        passed,
        pass: passed == results.len(),
        results,
    })
}

/// Run every check on every Hessenberg function of `cfg.ty`.
/// Results come back in enumeration order regardless of `jobs`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    check_ceiling(cfg.ty, cfg.ceiling_override)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| HbError::Internal(e.to_string()))?;
    pool.install(|| run(cfg))
}
