//! Exact verification of the algebraic identities behind the sign arguments.
//!
//! Every case builds its two sides independently: one from the defining
//! products of Pochhammer symbols, the other from the expanded or rewritten
//! form as printed. Equality is decided exactly (cross-multiplication for
//! rational functions, term maps for polynomials). Misprints are kept in a
//! separate errata list that records both the refuted printed form and the
//! verified correction.

mod appendix;
mod gammaform;
pub mod printed;
mod rewrites;
mod shifts;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::exact::{fmt_pq, MultiPoly, Rational, RationalFunction, Ring, Vars};

pub use appendix::{verify_appendix, verify_remark_r3, verify_section5};
pub use rewrites::verify_rewrites;
pub use shifts::{
    lemma_t_sample, t_km, verify_a0_closedform, verify_n1_n2_identities,
    verify_supplemental_shifts, verify_t_and_i, LemmaSample, LEMMA_T_GRID,
};

/// Variable assignment (or other coordinates) exhibiting a failure.
pub type Witness = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status")]
pub enum CaseStatus {
    Verified,
    Failed { witness: Witness },
}

impl CaseStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, CaseStatus::Verified)
    }

    fn from_result(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => CaseStatus::Verified,
            Err(witness) => CaseStatus::Failed { witness },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Exact equality of polynomials or rational functions.
    Exact,
    /// Floating comparison at stated tolerance.
    Numeric,
    /// An implication or sign claim tested on a finite grid.
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCase {
    pub id: String,
    /// What the identity is about.
    pub context: String,
    pub kind: CheckKind,
    /// How the left side is constructed.
    pub lhs: String,
    /// How the right side is constructed.
    pub rhs: String,
    pub status: CaseStatus,
    /// Built from definitions only; no printed form exists to compare with.
    pub derived_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityCase {
    fn new(
        id: &str,
        context: &str,
        kind: CheckKind,
        lhs: &str,
        rhs: &str,
        r: Result<(), Witness>,
    ) -> Self {
        IdentityCase {
            id: id.into(),
            context: context.into(),
            kind,
            lhs: lhs.into(),
            rhs: rhs.into(),
            status: CaseStatus::from_result(r),
            derived_only: false,
            detail: None,
        }
    }

    fn exact(id: &str, context: &str, lhs: &str, rhs: &str, r: Result<(), Witness>) -> Self {
        Self::new(id, context, CheckKind::Exact, lhs, rhs, r)
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// A printed form that is false, next to the correction that holds.
#[derive(Clone, Debug, Serialize)]
pub struct Erratum {
    pub id: String,
    pub context: String,
    pub printed: String,
    pub corrected: String,
    /// Expected to be `Failed`, with a witness.
    pub printed_status: CaseStatus,
    pub corrected_status: CaseStatus,
}

impl Erratum {
    pub fn confirmed(&self) -> bool {
        !self.printed_status.is_verified() && self.corrected_status.is_verified()
    }
}

/// Output of one group of checks.
#[derive(Clone, Debug, Default)]
pub struct CaseGroup {
    pub cases: Vec<IdentityCase>,
    pub errata: Vec<Erratum>,
}

impl CaseGroup {
    fn push(&mut self, case: IdentityCase) {
        self.cases.push(case);
    }
}

impl From<Vec<IdentityCase>> for CaseGroup {
    fn from(cases: Vec<IdentityCase>) -> Self {
        CaseGroup {
            cases,
            errata: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ledger {
    pub cases: Vec<IdentityCase>,
    pub errata: Vec<Erratum>,
}

impl Ledger {
    pub fn failed(&self) -> Vec<&IdentityCase> {
        self.cases
            .iter()
            .filter(|c| !c.status.is_verified())
            .collect()
    }

    /// Every case verified and every erratum refuted as printed and verified
    /// as corrected.
    pub fn all_verified(&self) -> bool {
        self.failed().is_empty() && self.errata.iter().all(Erratum::confirmed)
    }

    pub fn get(&self, id: &str) -> Option<&IdentityCase> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("ledger serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let verified = self.cases.len() - self.failed().len();
        let _ = writeln!(out, "# Identity ledger\n");
        let _ = writeln!(out, "{verified}/{} cases verified.\n", self.cases.len());
        let _ = writeln!(out, "| id | kind | context | status |");
        let _ = writeln!(out, "|---|---|---|---|");
        for c in &self.cases {
            let kind = match c.kind {
                CheckKind::Exact => "exact",
                CheckKind::Numeric => "numeric",
                CheckKind::Sampled => "sampled",
            };
            let mut context = c.context.clone();
            if c.derived_only {
                context.push_str(" (derived, not printed)");
            }
            let _ = writeln!(
                out,
                "| {} | {kind} | {context} | {} |",
                c.id,
                status_cell(&c.status)
            );
        }
        if !self.errata.is_empty() {
            let _ = writeln!(out, "\n## Errata\n");
            let _ = writeln!(
                out,
                "| id | printed | corrected | printed form | corrected form |"
            );
            let _ = writeln!(out, "|---|---|---|---|---|");
            for e in &self.errata {
                let _ = writeln!(
                    out,
                    "| {} | `{}` | `{}` | {} | {} |",
                    e.id,
                    e.printed,
                    e.corrected,
                    status_cell(&e.printed_status),
                    status_cell(&e.corrected_status)
                );
            }
        }
        out
    }
}

fn status_cell(s: &CaseStatus) -> String {
    match s {
        CaseStatus::Verified => "verified".into(),
        CaseStatus::Failed { witness } => {
            let w: Vec<String> = witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("FAILED ({})", w.join(", "))
        }
    }
}

/// Runs every group concurrently; cases keep a fixed order.
pub fn run_all() -> Ledger {
    type Group = fn() -> CaseGroup;
    let groups: Vec<Group> = vec![
        || verify_n1_n2_identities().into(),
        || verify_a0_closedform().into(),
        || verify_t_and_i().into(),
        || verify_supplemental_shifts().into(),
        verify_appendix,
        || verify_remark_r3().into(),
        verify_section5,
        verify_rewrites,
    ];
    let results: Vec<CaseGroup> = groups.par_iter().map(|g| g()).collect();
    let mut ledger = Ledger {
        cases: Vec::new(),
        errata: Vec::new(),
    };
    for g in results {
        ledger.cases.extend(g.cases);
        ledger.errata.extend(g.errata);
    }
    ledger
}

// ---- shared helpers ----

const VAR_NAMES: [&str; 16] = [
    "mu", "alpha", "beta", "q", "t", "k", "m", "i", "s", "a1", "a2", "b1", "ak", "bk", "ck", "dk",
];

fn vars() -> &'static Vars {
    static VARS: OnceLock<Vars> = OnceLock::new();
    VARS.get_or_init(|| Vars::new(VAR_NAMES))
}

/// Parses a transcribed expression; the inputs are compile-time constants.
fn poly(text: &str) -> MultiPoly {
    vars()
        .parse(text)
        .unwrap_or_else(|e| panic!("bad transcription {text:?}: {e}"))
}

fn var(name: &str) -> RationalFunction {
    RationalFunction::from_poly(vars().var(name))
}

fn ratfun(num: &str, den: &str) -> RationalFunction {
    RationalFunction::new(poly(num), poly(den)).expect("nonzero printed denominator")
}

fn konst(r: &Rational) -> RationalFunction {
    RationalFunction::from_rational(r)
}

fn div(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    a.div(b).expect("nonzero divisor")
}

const WITNESS_VALUES: [(i64, i64); 7] = [(2, 1), (3, 1), (1, 2), (5, 1), (7, 3), (11, 1), (13, 2)];

/// A small rational point where the two sides differ.
fn witness_for(lhs: &RationalFunction, rhs: &RationalFunction) -> Witness {
    let mut names: Vec<String> = [
        lhs.numerator(),
        lhs.denominator(),
        rhs.numerator(),
        rhs.denominator(),
    ]
    .iter()
    .flat_map(|p| p.support())
    .collect();
    names.sort();
    names.dedup();
    let values: Vec<Rational> = WITNESS_VALUES
        .iter()
        .map(|&(p, q)| crate::exact::rat(p, q))
        .collect();
    let mut idx = vec![0usize; names.len()];
    for _ in 0..5000 {
        let assignment: BTreeMap<String, Rational> = names
            .iter()
            .zip(&idx)
            .map(|(n, &i)| (n.clone(), values[i].clone()))
            .collect();
        if let (Ok(l), Ok(r)) = (lhs.eval(&assignment), rhs.eval(&assignment)) {
            if l != r {
                let mut w: Witness = assignment
                    .iter()
                    .map(|(k, v)| (k.clone(), fmt_pq(v)))
                    .collect();
                w.insert("lhs".into(), fmt_pq(&l));
                w.insert("rhs".into(), fmt_pq(&r));
                return w;
            }
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Witness::from([(
                    "note".into(),
                    "sides differ; no small witness found".into(),
                )]);
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
    Witness::from([("note".into(), "sides differ; no small witness found".into())])
}

fn eq_rf(lhs: &RationalFunction, rhs: &RationalFunction) -> Result<(), Witness> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(witness_for(lhs, rhs))
    }
}

fn eq_poly(lhs: &MultiPoly, rhs: &MultiPoly) -> Result<(), Witness> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(witness_for(
            &RationalFunction::from_poly(lhs.clone()),
            &RationalFunction::from_poly(rhs.clone()),
        ))
    }
}

fn eq_rat(lhs: &Rational, rhs: &Rational) -> Result<(), Witness> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Witness::from([
            ("lhs".into(), fmt_pq(lhs)),
            ("rhs".into(), fmt_pq(rhs)),
        ]))
    }
}

/// Tags a failure with the loop coordinates it occurred at.
fn at<const N: usize>(r: Result<(), Witness>, coords: [(&str, String); N]) -> Result<(), Witness> {
    r.map_err(|mut w| {
        for (k, v) in coords {
            w.insert(k.into(), v);
        }
        w
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_finds_difference() {
        let a = ratfun("mu+1", "1");
        let b = ratfun("mu+2", "1");
        let w = eq_rf(&a, &b).unwrap_err();
        assert_eq!(w["mu"], "2/1");
        assert!(eq_rf(&ratfun("(mu+1)^2", "mu+1"), &ratfun("mu+1", "1")).is_ok());
    }

    #[test]
    fn ledger_markdown_lists_every_case() {
        let ledger = Ledger {
            cases: vec![IdentityCase::exact("x", "demo", "a", "b", Ok(()))],
            errata: vec![],
        };
        let md = ledger.to_markdown();
        assert!(md.contains("| x | exact | demo | verified |"));
        assert!(ledger.all_verified());
    }
}
