//! Recovering generic structure constants by fitting values across fields.
//!
//! A coefficient `c(ε)` is split as `A(q) + ε B(q)` with `A`, `B` Laurent
//! polynomials in `q = ε²`. Classes are matched across fields by a type key
//! that forgets which closed points occur, keeping only their degrees; the
//! coefficient must be constant on each type at every field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::hallcore::HallElem;
use crate::kronrep::IsoClass;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InterpolateError {
    #[error("type {key}: {points} field values cannot determine degree {degree} (need {needed})")]
    Underdetermined {
        key: String,
        points: usize,
        degree: usize,
        needed: usize,
    },
    #[error("type {0}: coefficient differs between classes of the same type")]
    NotTypeInvariant(String),
    #[error("type {0}: no Laurent polynomial of the given degree fits every field")]
    Residual(String),
}

/// A class up to the choice of closed points of equal degree.
pub fn type_key(c: &IsoClass) -> String {
    let mut regular: Vec<(usize, Vec<u32>)> = c
        .regular
        .iter()
        .map(|(p, l)| (p.degree(), l.parts().to_vec()))
        .collect();
    regular.sort();
    format!("P{:?} I{:?} R{:?}", c.preproj, c.preinj, regular)
}

/// `sum_j coeffs[j] q^{lo + j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityFit {
    pub lo: i64,
    pub coeffs: Vec<BigRational>,
}

impl ParityFit {
    pub fn zero() -> Self {
        ParityFit { lo: 0, coeffs: vec![] }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, q: u32) -> BigRational {
        let qr = BigRational::from_integer(BigInt::from(q));
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * pow_i(&qr, self.lo + j as i64))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// `A(v²) + v B(v²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFit {
    pub even: ParityFit,
    pub odd: ParityFit,
}

impl LaurentFit {
    pub fn is_integral(&self) -> bool {
        self.even.is_integral() && self.odd.is_integral()
    }

    /// `(power of v, coefficient)`, nonzero terms only, ascending.
    pub fn terms(&self) -> Vec<(i64, BigRational)> {
        let mut out: Vec<(i64, BigRational)> = Vec::new();
        for (fit, shift) in [(&self.even, 0), (&self.odd, 1)] {
            for (j, c) in fit.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out.push((2 * (fit.lo + j as i64) + shift, c.clone()));
                }
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(k, c)| json!({"v": k, "coeff": c.to_string()}))
            .collect();
        json!({"terms": terms, "integral": self.is_integral()})
    }
}

impl fmt::Display for LaurentFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})v^{k}")?;
        }
        Ok(())
    }
}

fn pow_i(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// Exponent of the prime `p` in a nonzero rational.
fn valuation(x: &BigRational, p: u32) -> i64 {
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0;
        while !n.is_zero() && n.is_multiple_of(&p) {
            n /= &p;
            k += 1;
        }
        k
    };
    count(x.numer().abs()) - count(x.denom().abs())
}

/// Solves the square system `m c = rhs` exactly.
fn solve_square(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        rhs.swap(col, p);
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[col][col];
                for j in col..n {
                    let t = &f * &m[col][j];
                    m[i][j] -= t;
                }
                let t = &f * &rhs[col];
                rhs[i] -= t;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Fits `sum_{j ≤ degree} a_j q^{lo + j}` through `(q, value)` points; `lo` is
/// the least `q`-adic valuation among the nonzero values. The first
/// `degree + 1` points determine the fit and the rest must agree exactly.
fn fit_parity(key: &str, points: &[(u32, BigRational)], degree: usize) -> Result<ParityFit, InterpolateError> {
    let needed = degree + 2;
    if points.len() < needed {
        return Err(InterpolateError::Underdetermined {
            key: key.to_string(),
            points: points.len(),
            degree,
            needed,
        });
    }
    let Some(lo) = points
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(q, v)| valuation(v, *q))
        .min()
    else {
        return Ok(ParityFit::zero());
    };
    let used = &points[..degree + 1];
    let m: Vec<Vec<BigRational>> = used
        .iter()
        .map(|(q, _)| {
            let qr = BigRational::from_integer(BigInt::from(*q));
            (0..=degree).map(|j| pow_i(&qr, lo + j as i64)).collect()
        })
        .collect();
    let rhs = used.iter().map(|(_, v)| v.clone()).collect();
    let coeffs = solve_square(m, rhs).ok_or_else(|| InterpolateError::Residual(key.to_string()))?;
    let fit = ParityFit { lo, coeffs };
    if points.iter().any(|(q, v)| fit.eval(*q) != *v) {
        return Err(InterpolateError::Residual(key.to_string()));
    }
    Ok(fit)
}

/// Fits every class-type coefficient of an element evaluated at several
/// fields (one element per field).
pub fn interpolate_constants(
    values: &[HallElem],
    degree: usize,
) -> Result<BTreeMap<String, LaurentFit>, InterpolateError> {
    // key -> q -> (a, b)
    let mut table: BTreeMap<String, BTreeMap<u32, (BigRational, BigRational)>> = BTreeMap::new();
    for e in values {
        for (c, v) in e.terms() {
            let key = type_key(c);
            let entry = table.entry(key.clone()).or_default();
            let val = (v.rational_part().clone(), v.eps_part().clone());
            match entry.get(&e.q()) {
                Some(old) if *old != val => return Err(InterpolateError::NotTypeInvariant(key)),
                _ => {
                    entry.insert(e.q(), val);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (key, by_q) in table {
        // a type absent from the support at some field has coefficient 0
        // there; every type of total dimension ≤ 6 exists over each F_q
        let pts = |odd: bool| -> Vec<(u32, BigRational)> {
            values
                .iter()
                .map(|e| {
                    let v = by_q
                        .get(&e.q())
                        .map(|(a, b)| if odd { b.clone() } else { a.clone() })
                        .unwrap_or_else(BigRational::zero);
                    (e.q(), v)
                })
                .collect()
        };
        let even = fit_parity(&key, &pts(false), degree)?;
        let odd = fit_parity(&key, &pts(true), degree)?;
        out.insert(key, LaurentFit { even, odd });
    }
    Ok(out)
}
