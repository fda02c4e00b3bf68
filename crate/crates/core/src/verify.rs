//! Runs every check for one `(p, w)` and collects machine-readable records.

use serde::Serialize;

use crate::decomp::{degree_g, degree_h, k_coefficient, GLabel, HLabel};
use crate::error::{Error, Result};
use crate::oracle::{self, Comparison, OracleContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub claim: &'static str,
    pub p: usize,
    pub w: usize,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<Comparison>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub p: usize,
    pub w: usize,
    /// Primitive root used for `Z_p ⋊ Z_{p-1}`, when the groups were built.
    pub primitive_root: Option<usize>,
    pub claims: Vec<ClaimRecord>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.claims
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.claims
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }
}

/// Mismatches kept per claim record.
const MAX_MISMATCHES: usize = 10;

fn summarize(
    claim: &'static str,
    p: usize,
    w: usize,
    outcome: Result<Vec<Comparison>>,
) -> ClaimRecord {
    match outcome {
        Ok(comparisons) => {
            let total = comparisons.len();
            let bad: Vec<Comparison> = comparisons.into_iter().filter(|c| !c.passed()).collect();
            ClaimRecord {
                claim,
                p,
                w,
                expected: format!("{total} agreeing comparisons"),
                computed: format!("{} agreeing comparisons", total - bad.len()),
                status: if bad.is_empty() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                detail: None,
                mismatches: bad.into_iter().take(MAX_MISMATCHES).collect(),
            }
        }
        Err(e) => ClaimRecord {
            claim,
            p,
            w,
            expected: String::new(),
            computed: String::new(),
            status: if is_skip(&e) {
                Status::Skipped
            } else {
                Status::Fail
            },
            detail: Some(e.to_string()),
            mismatches: Vec::new(),
        },
    }
}

fn is_skip(e: &Error) -> bool {
    matches!(
        e,
        Error::GuardExceeded { .. } | Error::OutOfRange { .. } | Error::NotOddPrime(_)
    )
}

type Check<'a> = Box<dyn Fn() -> Result<Vec<Comparison>> + 'a>;

const FORMULA_CLAIMS: [&str; 3] = ["hat-columns", "degree-columns", "degree-rows"];

const ORACLE_CLAIMS: [&str; 10] = [
    "base-characters",
    "class-structure",
    "orthonormality",
    "restriction",
    "hat-pointwise",
    "middle-slot-values",
    "middle-slot-multiplicities",
    "mackey-multiplicities",
    "induction-reconstruction",
    "cycle-products",
];

/// `k_{α,γ} = δ_{α̂,γ}` whenever `γ^r = ∅`.
pub fn check_hat_columns(p: usize, w: usize) -> Result<Vec<Comparison>> {
    let rows = HLabel::all(p, w)?;
    let mut out = Vec::new();
    for gamma in GLabel::all(p, w)?.iter().filter(|g| g.middle().is_empty()) {
        for alpha in &rows {
            out.push(comparison(
                format!("k({alpha}, {gamma})"),
                u64::from(&alpha.hat() == gamma),
                k_coefficient(alpha, gamma)?,
            ));
        }
    }
    Ok(out)
}

/// `Σ_α k_{α,γ} deg ξ^α = deg χ^γ` for every `γ`.
pub fn check_degree_columns(p: usize, w: usize) -> Result<Vec<Comparison>> {
    let rows = HLabel::all(p, w)?;
    GLabel::all(p, w)?
        .iter()
        .map(|gamma| {
            let sum = rows
                .iter()
                .map(|alpha| Ok(k_coefficient(alpha, gamma)? as u128 * degree_h(alpha)))
                .sum::<Result<u128>>()?;
            Ok(comparison(format!("column {gamma}"), degree_g(gamma), sum))
        })
        .collect()
}

/// `Σ_γ k_{α,γ} deg χ^γ = p^w deg ξ^α` for every `α`.
pub fn check_degree_rows(p: usize, w: usize) -> Result<Vec<Comparison>> {
    let cols = GLabel::all(p, w)?;
    HLabel::all(p, w)?
        .iter()
        .map(|alpha| {
            let sum = cols
                .iter()
                .map(|gamma| Ok(k_coefficient(alpha, gamma)? as u128 * degree_g(gamma)))
                .sum::<Result<u128>>()?;
            Ok(comparison(
                format!("row {alpha}"),
                (p as u128).pow(w as u32) * degree_h(alpha),
                sum,
            ))
        })
        .collect()
}

fn comparison(what: String, expected: impl ToString, computed: impl ToString) -> Comparison {
    Comparison {
        what,
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

/// Every claim for `(p, w)`. Claims needing groups beyond the element guard
/// or an unsupported prime are reported as skipped.
pub fn run_suite(p: usize, w: usize) -> Report {
    let mut claims: Vec<ClaimRecord> = vec![
        summarize(FORMULA_CLAIMS[0], p, w, check_hat_columns(p, w)),
        summarize(FORMULA_CLAIMS[1], p, w, check_degree_columns(p, w)),
        summarize(FORMULA_CLAIMS[2], p, w, check_degree_rows(p, w)),
    ];
    let ctx = match OracleContext::new(p, w) {
        Ok(ctx) => ctx,
        Err(e) => {
            claims.extend(
                ORACLE_CLAIMS
                    .iter()
                    .map(|&claim| summarize(claim, p, w, Err(e.clone()))),
            );
            return Report {
                p,
                w,
                primitive_root: None,
                claims,
            };
        }
    };
    let checks: [(&'static str, Check<'_>); 10] = [
        (
            ORACLE_CLAIMS[0],
            Box::new(|| Ok(oracle::check_base_group(ctx.model()))),
        ),
        (
            ORACLE_CLAIMS[1],
            Box::new(|| oracle::check_class_structure(&ctx)),
        ),
        (
            ORACLE_CLAIMS[2],
            Box::new(|| oracle::check_orthonormality(&ctx)),
        ),
        (
            ORACLE_CLAIMS[3],
            Box::new(|| oracle::check_restrictions(&ctx)),
        ),
        (
            ORACLE_CLAIMS[4],
            Box::new(|| oracle::check_hat_restrictions(&ctx)),
        ),
        (
            ORACLE_CLAIMS[5],
            Box::new(|| oracle::check_middle_slot_closed_form(&ctx)),
        ),
        (
            ORACLE_CLAIMS[6],
            Box::new(|| oracle::check_middle_slot_restrictions(&ctx)),
        ),
        (
            ORACLE_CLAIMS[7],
            Box::new(|| oracle::verify_mackey_multiplicities(&ctx)),
        ),
        (
            ORACLE_CLAIMS[8],
            Box::new(|| oracle::check_induction_reconstruction(&ctx)),
        ),
        (
            ORACLE_CLAIMS[9],
            Box::new(|| oracle::check_cycle_product_invariance(&ctx)),
        ),
    ];
    claims.extend(
        checks
            .into_iter()
            .map(|(claim, f)| summarize(claim, p, w, f())),
    );
    Report {
        p,
        w,
        primitive_root: Some(ctx.model().g.generator()),
        claims,
    }
}
