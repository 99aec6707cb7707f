//! Search for the twist convention satisfying the normalization anchors.
//!
//! Raw products of short words in a few fixed atoms are computed once per
//! factor order; for a candidate twist form the twisted word is the raw word
//! times `ε^{sum_{a<b} t(g_a, g_b)}` by bilinearity, so the search itself does
//! no structure-constant work.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{DividedRule, FactorOrder, HallAlgebra, HallElem, HallError, QEps, TwistConvention, COPRODUCT_TWIST};
use crate::generators::{gamma, indicator_all, rho, theta};

/// A normalization anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Anchor {
    /// A1: quantum Serre relations of degree 3.
    Serre,
    /// A2: `θ0^(d) θ1^(d)` is a pure ε-power times the indicator of `E_V`.
    DenseOrbit,
    /// A2 with no scalar: the ε-power must be 1.
    DenseOrbitLiteral,
    /// A3: `ρ1` as a twisted commutator of `θ0` and `θ1`.
    Rho1,
    /// A4: the `ρ` recursion at `n = 2`.
    RhoRecursion,
}

impl Anchor {
    /// The anchors used for calibration, cheapest first.
    pub const STANDARD: [Anchor; 4] = [Anchor::Rho1, Anchor::DenseOrbit, Anchor::Serre, Anchor::RhoRecursion];

    pub fn id(self) -> &'static str {
        match self {
            Anchor::Serre => "A1",
            Anchor::DenseOrbit => "A2",
            Anchor::DenseOrbitLiteral => "A2-literal",
            Anchor::Rho1 => "A3",
            Anchor::RhoRecursion => "A4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Atom {
    Theta0,
    Theta1,
    Gamma1,
    Rho1,
}

use Atom::*;

impl Atom {
    fn grade(self) -> (usize, usize) {
        match self {
            Theta0 => (1, 0),
            Theta1 => (0, 1),
            Gamma1 => (2, 1),
            Rho1 => (1, 1),
        }
    }
}

/// Result of one anchor at one field.
#[derive(Clone, Debug, Serialize)]
pub struct AnchorOutcome {
    pub anchor: String,
    pub q: u32,
    pub pass: bool,
    pub detail: String,
    /// `k` with `lhs = ε^k rhs` when the two sides differ by a pure ε-power.
    pub discrepancy: Option<i64>,
}

/// All anchor outcomes for one convention.
#[derive(Clone, Debug, Serialize)]
pub struct AnchorReport {
    pub convention: TwistConvention,
    pub hash: String,
    pub outcomes: Vec<AnchorOutcome>,
}

impl AnchorReport {
    pub fn passes(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationResult {
    pub anchors: Vec<String>,
    pub q_list: Vec<u32>,
    pub searched: usize,
    pub survivors: Vec<AnchorReport>,
}

impl CalibrationResult {
    /// The surviving convention, when exactly one survives.
    pub fn unique(&self) -> Result<TwistConvention, HallError> {
        match self.survivors.as_slice() {
            [one] => Ok(one.convention),
            [] => Err(HallError::NoConventionFound(format!(
                "none of {} candidates satisfies {}",
                self.searched,
                self.anchors.join(", ")
            ))),
            many => Err(HallError::MultipleConventions(many.len())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Raw word products for one field, both factor orders.
struct WordTable {
    q: u32,
    max_dense: usize,
    raw: HashMap<(FactorOrder, Vec<Atom>), HallElem>,
    all_e: Vec<HallElem>,
    rho1: HallElem,
    rho2: HallElem,
}

fn needed_words(max_dense: usize) -> Vec<Vec<Atom>> {
    let mut words = vec![
        vec![Theta0, Theta1],
        vec![Theta1, Theta0],
        vec![Theta0, Theta1, Rho1],
        vec![Theta1, Theta0, Rho1],
        vec![Gamma1, Theta1],
        vec![Theta1, Gamma1],
    ];
    for d in 1..=max_dense {
        let mut w = vec![Theta0; d];
        w.extend(std::iter::repeat_n(Theta1, d));
        words.push(w);
    }
    for (i, j) in [(Theta0, Theta1), (Theta1, Theta0)] {
        for k in 0..=3 {
            let mut w = vec![i; k];
            w.push(j);
            w.extend(std::iter::repeat_n(i, 3 - k));
            words.push(w);
        }
    }
    words
}

impl WordTable {
    fn build(alg: &HallAlgebra, max_dense: usize) -> Result<Self, HallError> {
        let q = alg.q();
        let atom = |a: Atom| -> Result<HallElem, HallError> {
            Ok(match a {
                Theta0 => theta(q, 0),
                Theta1 => theta(q, 1),
                Gamma1 => gamma(q, 1),
                Rho1 => rho(q, 1)?,
            })
        };
        let mut raw: HashMap<(FactorOrder, Vec<Atom>), HallElem> = HashMap::new();
        for order in [FactorOrder::QuotFirst, FactorOrder::SubFirst] {
            for word in needed_words(max_dense) {
                // extend the longest cached prefix
                for len in 1..=word.len() {
                    let key = (order, word[..len].to_vec());
                    if raw.contains_key(&key) {
                        continue;
                    }
                    let last = atom(word[len - 1])?;
                    let value = if len == 1 {
                        last
                    } else {
                        let prefix = &raw[&(order, word[..len - 1].to_vec())];
                        alg.raw_product(prefix, &last, order)?
                    };
                    raw.insert(key, value);
                }
            }
        }
        let all_e = (0..=max_dense)
            .map(|d| indicator_all(q, (d, d)))
            .collect::<Result<_, _>>()?;
        Ok(WordTable {
            q,
            max_dense,
            raw,
            all_e,
            rho1: rho(q, 1)?,
            rho2: rho(q, 2)?,
        })
    }

    fn eps(&self, k: i64) -> QEps {
        QEps::eps_pow(self.q, k)
    }

    fn word(&self, conv: &TwistConvention, atoms: &[Atom]) -> HallElem {
        let mut e = 0;
        for b in 1..atoms.len() {
            for a in 0..b {
                e += conv.t_form(atoms[a].grade(), atoms[b].grade());
            }
        }
        self.raw[&(conv.factor_order, atoms.to_vec())].shift(e)
    }

    fn outcome(&self, anchor: Anchor, pass: bool, detail: String, discrepancy: Option<i64>) -> AnchorOutcome {
        AnchorOutcome {
            anchor: anchor.id().to_string(),
            q: self.q,
            pass,
            detail,
            discrepancy,
        }
    }

    fn evaluate(&self, conv: &TwistConvention, anchor: Anchor) -> AnchorOutcome {
        match anchor {
            Anchor::Serre => self.serre(conv),
            Anchor::DenseOrbit => self.dense(conv, false),
            Anchor::DenseOrbitLiteral => self.dense(conv, true),
            Anchor::Rho1 => self.rho1(conv),
            Anchor::RhoRecursion => self.rho_recursion(conv),
        }
    }
}

fn eps_ratio(lhs: &HallElem, rhs: &HallElem) -> Option<i64> {
    lhs.proportionality(rhs).and_then(|s| s.as_eps_power())
}

impl WordTable {
    fn serre(&self, conv: &TwistConvention) -> AnchorOutcome {
        let q = self.q;
        let mut failed = Vec::new();
        for (i, j, name) in [(Theta0, Theta1, "(0,1)"), (Theta1, Theta0, "(1,0)")] {
            let mut sum = HallElem::zero(q);
            for k in 0..=3u32 {
                let mut w = vec![i; k as usize];
                w.push(j);
                w.extend(std::iter::repeat_n(i, 3 - k as usize));
                let rule = conv.divided.exponent(k) + conv.divided.exponent(3 - k);
                let denom = &QEps::qfactorial(q, k) * &QEps::qfactorial(q, 3 - k);
                let mut c = &self.eps(rule) / &denom;
                if k % 2 == 1 {
                    c = -c;
                }
                sum = sum.add(&self.word(conv, &w).scale(&c));
            }
            if !sum.is_zero() {
                failed.push(name);
            }
        }
        let pass = failed.is_empty();
        let detail = if pass {
            "both Serre relations vanish".to_string()
        } else {
            format!("nonzero Serre sum for (i,j) in {}", failed.join(" "))
        };
        self.outcome(Anchor::Serre, pass, detail, None)
    }

    fn dense(&self, conv: &TwistConvention, literal: bool) -> AnchorOutcome {
        let q = self.q;
        let anchor = if literal {
            Anchor::DenseOrbitLiteral
        } else {
            Anchor::DenseOrbit
        };
        let mut units = Vec::new();
        let mut pass = true;
        let mut first_bad = None;
        for d in 1..=self.max_dense {
            let mut w = vec![Theta0; d];
            w.extend(std::iter::repeat_n(Theta1, d));
            let f = QEps::qfactorial(q, d as u32);
            let c = &self.eps(2 * conv.divided.exponent(d as u32)) / &(&f * &f);
            let lhs = self.word(conv, &w).scale(&c);
            match eps_ratio(&lhs, &self.all_e[d]) {
                Some(k) => {
                    units.push(format!("d={d}: eps^{k}"));
                    if literal && k != 0 {
                        pass = false;
                        first_bad.get_or_insert(k);
                    }
                }
                None => {
                    units.push(format!("d={d}: not proportional"));
                    pass = false;
                }
            }
        }
        self.outcome(anchor, pass, units.join(", "), first_bad)
    }

    fn rho1(&self, conv: &TwistConvention) -> AnchorOutcome {
        let a = self.word(conv, &[Theta0, Theta1]);
        let b = self.word(conv, &[Theta1, Theta0]);
        let mut matches = Vec::new();
        for (first, second, name) in [(&a, &b, "th0*th1 - s th1*th0"), (&b, &a, "th1*th0 - s th0*th1")] {
            for (s, sname) in [(2, "q"), (-2, "q^-1"), (0, "1")] {
                if first.sub(&second.shift(s)) == self.rho1 {
                    matches.push(format!("rho1 = {name} with s = {sname}"));
                }
            }
        }
        let pass = !matches.is_empty();
        let discrepancy = eps_ratio(&a.sub(&b.shift(-2)), &self.rho1);
        let detail = if pass {
            matches.join("; ")
        } else {
            "no variant matches".to_string()
        };
        self.outcome(Anchor::Rho1, pass, detail, discrepancy.filter(|_| !pass))
    }

    fn rho_recursion(&self, conv: &TwistConvention) -> AnchorOutcome {
        let q = self.q;
        let lhs = self.rho2.scale(&QEps::qint(q, 2));
        let phi1_rho1 = self
            .word(conv, &[Theta0, Theta1, Rho1])
            .sub(&self.word(conv, &[Theta1, Theta0, Rho1]).shift(-2));
        let phi2 = self
            .word(conv, &[Gamma1, Theta1])
            .sub(&self.word(conv, &[Theta1, Gamma1]).shift(-2));
        let rhs = phi1_rho1.shift(-1).add(&phi2);
        let pass = lhs == rhs;
        let discrepancy = if pass { None } else { eps_ratio(&lhs, &rhs) };
        let detail = match (pass, discrepancy) {
            (true, _) => "[2] rho2 = eps^-1 phi1 rho1 + phi2".to_string(),
            (false, Some(k)) => format!("sides differ by eps^{k}"),
            (false, None) => "sides not proportional".to_string(),
        };
        self.outcome(Anchor::RhoRecursion, pass, detail, discrepancy)
    }
}

/// Search parameters.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub t_range: std::ops::RangeInclusive<i64>,
    pub orders: Vec<FactorOrder>,
    pub rules: Vec<DividedRule>,
    /// Largest `d` checked by the dense-orbit anchor.
    pub max_dense: usize,
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace {
            t_range: -3..=3,
            orders: vec![FactorOrder::QuotFirst, FactorOrder::SubFirst],
            rules: DividedRule::ALL.to_vec(),
            max_dense: 3,
        }
    }
}

impl SearchSpace {
    pub fn candidates(&self) -> Vec<TwistConvention> {
        let r: Vec<i64> = self.t_range.clone().collect();
        let mut out = Vec::new();
        for &factor_order in &self.orders {
            for &divided in &self.rules {
                for &a in &r {
                    for &b in &r {
                        for &c in &r {
                            for &d in &r {
                                out.push(TwistConvention {
                                    factor_order,
                                    t: [[a, b], [c, d]],
                                    u: COPRODUCT_TWIST,
                                    divided,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Prepared anchor evaluator over several fields.
pub struct Calibrator {
    tables: Vec<WordTable>,
}

impl Calibrator {
    pub fn new(q_list: &[u32], max_dense: usize) -> Result<Self, HallError> {
        let tables = q_list
            .iter()
            .map(|&q| {
                let alg = HallAlgebra::new(q, TwistConvention::calibrated())?;
                WordTable::build(&alg, max_dense)
            })
            .collect::<Result<_, _>>()?;
        Ok(Calibrator { tables })
    }

    pub fn q_list(&self) -> Vec<u32> {
        self.tables.iter().map(|t| t.q).collect()
    }

    /// Every anchor at every field, without early exit.
    pub fn evaluate(&self, conv: &TwistConvention, anchors: &[Anchor]) -> AnchorReport {
        let outcomes = self
            .tables
            .iter()
            .flat_map(|t| anchors.iter().map(move |&a| t.evaluate(conv, a)))
            .collect();
        AnchorReport {
            convention: *conv,
            hash: conv.hash(),
            outcomes,
        }
    }

    fn survives(&self, conv: &TwistConvention, anchors: &[Anchor]) -> bool {
        anchors
            .iter()
            .all(|&a| self.tables.iter().all(|t| t.evaluate(conv, a).pass))
    }

    pub fn search(&self, space: &SearchSpace, anchors: &[Anchor]) -> CalibrationResult {
        let candidates = space.candidates();
        let mut survivors: Vec<AnchorReport> = candidates
            .par_iter()
            .filter(|c| self.survives(c, anchors))
            .map(|c| self.evaluate(c, anchors))
            .collect();
        survivors.sort_by_key(|r| r.convention);
        CalibrationResult {
            anchors: anchors.iter().map(|a| a.id().to_string()).collect(),
            q_list: self.q_list(),
            searched: candidates.len(),
            survivors,
        }
    }
}

/// Searches the default space against the standard anchors.
pub fn calibrate(q_list: &[u32]) -> Result<CalibrationResult, HallError> {
    let space = SearchSpace::default();
    let cal = Calibrator::new(q_list, space.max_dense)?;
    Ok(cal.search(&space, &Anchor::STANDARD))
}
