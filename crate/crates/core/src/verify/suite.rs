//! The parameter grid, parallel execution and negative controls.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{CheckReport, Checker, UnitPolicy};
use crate::hallcore::{HallAlgebra, HallError, TwistConvention};
use crate::symfun::{partitions_of, Partition};

/// One parametrized check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Serre(u8),
    Relation(u32),
    Ptilde(u32),
    Pseries(u32, bool),
    GammaMu(u32, u32),
    RhoCommutation(u32, u32, u8),
    Drinfeld(u8, u32, u32),
    QIdentity(u32),
    Kostka(Partition),
    FlagMonomial(Partition),
    CoproductRho(u32),
    Projection(u32),
    RegularExpressibility(u32),
    TauInvariance(u32, bool),
    Counting(u32),
}

/// Why the uninverted generating-series identity is not counted.
pub const PSERIES_WAIVER: &str =
    "with the ratio p(u/eps)/p(eps u), the series identity contradicts the rho recursion; \
the inverted ratio (pseries_inverted) is the consequence that holds";

impl Job {
    pub fn id(&self) -> &'static str {
        match self {
            Job::Serre(_) => "serre",
            Job::Relation(_) => "relation",
            Job::Ptilde(_) => "ptilde",
            Job::Pseries(_, false) => "pseries",
            Job::Pseries(_, true) => "pseries_inverted",
            Job::GammaMu(..) => "gamma_mu",
            Job::RhoCommutation(..) => "rho_commutation",
            Job::Drinfeld(..) => "drinfeld",
            Job::QIdentity(_) => "q_identity",
            Job::Kostka(_) => "kostka",
            Job::FlagMonomial(_) => "flag_monomial",
            Job::CoproductRho(_) => "coproduct_rho",
            Job::Projection(_) => "projection",
            Job::RegularExpressibility(_) => "regular_expressibility",
            Job::TauInvariance(..) => "tau_invariance",
            Job::Counting(_) => "counting",
        }
    }

    /// The first index of the check (the weight for partitions); used to
    /// pick a single grid point from the command line.
    pub fn leading_index(&self) -> u32 {
        match self {
            Job::Serre(i) => *i as u32,
            Job::Relation(n)
            | Job::Ptilde(n)
            | Job::Pseries(n, _)
            | Job::GammaMu(n, _)
            | Job::RhoCommutation(n, _, _)
            | Job::QIdentity(n)
            | Job::CoproductRho(n)
            | Job::Projection(n)
            | Job::RegularExpressibility(n)
            | Job::TauInvariance(n, _)
            | Job::Counting(n) => *n,
            Job::Drinfeld(_, a, _) => *a,
            Job::Kostka(l) | Job::FlagMonomial(l) => l.weight(),
        }
    }

    /// Runs the check; `policy` applies to the checks stated up to a unit.
    pub fn run(&self, ck: &Checker, policy: UnitPolicy) -> Result<CheckReport, HallError> {
        let r = match self {
            Job::Serre(i) => ck.check_serre(*i)?,
            Job::Relation(n) => ck.check_relation(*n)?,
            Job::Ptilde(n) => ck.check_ptilde(*n)?,
            Job::Pseries(n, inv) => {
                let r = ck.check_pseries(*n, *inv)?;
                if *inv {
                    r
                } else {
                    r.waive(PSERIES_WAIVER)
                }
            }
            Job::GammaMu(k, l) => ck.check_gamma_mu(*k, *l, policy)?,
            Job::RhoCommutation(r, s, h) => ck.check_rho_commutation(*r, *s, *h, policy)?,
            Job::Drinfeld(id, a, b) => ck.check_drinfeld(*id, *a, *b, policy)?,
            Job::QIdentity(m) => ck.check_q_identity(*m),
            Job::Kostka(l) => ck.check_kostka(l)?,
            Job::FlagMonomial(l) => ck.check_flag_monomial(l, policy)?,
            Job::CoproductRho(k) => ck.check_coproduct_rho(*k)?,
            Job::Projection(n) => ck.check_projection(*n)?,
            Job::RegularExpressibility(n) => ck.check_regular_expressibility(*n)?,
            Job::TauInvariance(k, phi) => ck.check_tau_invariance(*k, *phi)?,
            Job::Counting(n) => ck.check_counting(*n)?,
        };
        Ok(r)
    }
}

/// Suite selection and grid bounds.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub q_list: Vec<u32>,
    /// Largest `n` of grade `(n, n)` at `q = 2`; larger fields use `n - 1`
    /// (`q = 3`) or `n - 2` (`q ≥ 5`).
    pub max_n: u32,
    /// Check ids to run; empty means all.
    pub suites: Vec<String>,
    pub convention: TwistConvention,
    pub policy: UnitPolicy,
    /// Restrict to checks whose leading index equals this value.
    pub index: Option<u32>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            q_list: vec![2, 3],
            max_n: 4,
            suites: vec![],
            convention: TwistConvention::calibrated(),
            policy: UnitPolicy::Free,
            index: None,
        }
    }
}

pub const SUITE_IDS: [&str; 16] = [
    "serre",
    "relation",
    "ptilde",
    "pseries",
    "pseries_inverted",
    "gamma_mu",
    "rho_commutation",
    "drinfeld",
    "q_identity",
    "kostka",
    "flag_monomial",
    "coproduct_rho",
    "projection",
    "regular_expressibility",
    "tau_invariance",
    "counting",
];

fn max_n_at(max_n: u32, q: u32) -> u32 {
    match q {
        2 => max_n,
        3 => max_n.saturating_sub(1),
        _ => max_n.saturating_sub(2),
    }
}

/// The parameter grid at one field.
pub fn jobs_for(q: u32, max_n: u32) -> Vec<Job> {
    // products of ρ's of high grade get expensive fastest
    let n = max_n_at(max_n, q);
    let wide = if q <= 3 { max_n } else { n };
    let mut jobs = vec![Job::Serre(0), Job::Serre(1)];
    for k in 1..=n {
        jobs.push(Job::Relation(k));
        jobs.push(Job::Ptilde(k));
    }
    for k in 1..=wide {
        jobs.push(Job::Counting(k));
    }
    for big_n in 1..=n.min(3) {
        jobs.push(Job::Pseries(big_n, false));
        jobs.push(Job::Pseries(big_n, true));
    }
    let n = wide;
    for k in 1..=n {
        for l in 1..=n - k {
            jobs.push(Job::GammaMu(k, l));
        }
    }
    for r in 1..=n.saturating_sub(1).min(3) {
        for s in 1..=2 {
            jobs.push(Job::RhoCommutation(r, s, 1));
            jobs.push(Job::RhoCommutation(r, s, 2));
        }
    }
    // grades of the relations stay within (n, n)
    for s in 1..=n {
        for r in 0..n.saturating_sub(s) {
            jobs.push(Job::Drinfeld(1, s, r));
        }
        for r in 1..=n - s {
            jobs.push(Job::Drinfeld(2, s, r));
        }
    }
    for r in 0..=n {
        for s in 0..=n {
            if r + s + 3 <= n {
                jobs.push(Job::Drinfeld(3, r, s));
            }
            if r >= 1 && s >= 1 && r + s < n {
                jobs.push(Job::Drinfeld(4, r, s));
            }
            if s >= 1 && r + s <= n {
                jobs.push(Job::Drinfeld(5, r, s));
            }
        }
    }
    for m in 1..=12 {
        jobs.push(Job::QIdentity(m));
    }
    let n = max_n_at(max_n, q);
    for w in 1..=n {
        for l in partitions_of(w) {
            jobs.push(Job::Kostka(l.clone()));
            if w <= 3 {
                jobs.push(Job::FlagMonomial(l));
            }
        }
    }
    for k in 1..=n.min(3) {
        jobs.push(Job::CoproductRho(k));
        jobs.push(Job::Projection(k));
        jobs.push(Job::RegularExpressibility(k));
        jobs.push(Job::TauInvariance(k, false));
        jobs.push(Job::TauInvariance(k, true));
    }
    jobs
}

/// Reports of a suite run, sorted by `(id, params, q)`.
#[derive(Clone, Debug)]
pub struct SuiteSummary {
    pub reports: Vec<CheckReport>,
}

impl SuiteSummary {
    /// Failing checks that are not waived.
    pub fn failures(&self) -> Vec<&CheckReport> {
        self.reports.iter().filter(|r| !r.pass && r.waived.is_none()).collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures().is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reports": self.reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            "total": self.reports.len(),
            "failed": self.failures().len(),
        })
    }
}

fn selected(cfg: &SuiteConfig, job: &Job) -> bool {
    (cfg.suites.is_empty() || cfg.suites.iter().any(|s| s == job.id()))
        && cfg.index.is_none_or(|n| job.leading_index() == n)
}

/// The selected jobs at one field. A requested index widens the grid far
/// enough to contain it.
fn grid(cfg: &SuiteConfig, q: u32) -> Vec<Job> {
    let max_n = match cfg.index {
        Some(n) => cfg.max_n.max(n + 2),
        None => cfg.max_n,
    };
    jobs_for(q, max_n).into_iter().filter(|j| selected(cfg, j)).collect()
}

/// Runs the selected checks at every field, in parallel.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary, HallError> {
    let checkers: Vec<Checker> = cfg
        .q_list
        .iter()
        .map(|&q| Checker::new(q, cfg.convention))
        .collect::<Result<_, _>>()?;
    run_with(&checkers, cfg)
}

/// Runs the selected checks with prepared checkers (one per field).
pub fn run_with(checkers: &[Checker], cfg: &SuiteConfig) -> Result<SuiteSummary, HallError> {
    let tasks: Vec<(&Checker, Job)> = checkers
        .iter()
        .flat_map(|ck| grid(cfg, ck.q()).into_iter().map(move |j| (ck, j)))
        .collect();
    let mut reports: Vec<CheckReport> = tasks
        .par_iter()
        .map(|(ck, job)| job.run(ck, cfg.policy))
        .collect::<Result<_, _>>()?;
    reports.sort_by_key(CheckReport::key);
    Ok(SuiteSummary { reports })
}

/// A check rerun under the convention with `t01` raised by one.
#[derive(Clone, Debug)]
pub struct NegativeControl {
    pub original: CheckReport,
    pub perturbed: CheckReport,
}

impl NegativeControl {
    /// The perturbation was detected.
    pub fn detected(&self) -> bool {
        !self.perturbed.pass
    }
}

/// Reruns every selected check under the perturbed twist. Checks stated up
/// to a unit are held to the unit recorded in the unperturbed run.
pub fn negative_controls(cfg: &SuiteConfig) -> Result<Vec<NegativeControl>, HallError> {
    let mut out = Vec::new();
    for &q in &cfg.q_list {
        let alg = HallAlgebra::new(q, cfg.convention)?;
        let base = Checker::from_algebra(alg.clone());
        let bad = Checker::from_algebra(alg.with_convention(cfg.convention.perturbed()));
        let jobs = grid(cfg, q);
        let pairs: Vec<NegativeControl> = jobs
            .par_iter()
            .map(|job| -> Result<NegativeControl, HallError> {
                let original = job.run(&base, cfg.policy)?;
                let policy = original.unit.map(UnitPolicy::Fixed).unwrap_or(UnitPolicy::Exact);
                let perturbed = job.run(&bad, policy)?;
                Ok(NegativeControl { original, perturbed })
            })
            .collect::<Result<_, _>>()?;
        out.extend(pairs);
    }
    out.sort_by_key(|n| n.original.key());
    Ok(out)
}
