//! Univariate polynomials over F_p, binary forms and closed points of P^1.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod, reduce, sub_mod};
use super::FieldError;

/// Polynomial over F_p with coefficients low degree first and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        let mut poly = Poly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_i64(p: u32, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| reduce(c, p)).collect())
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::new(p, vec![c])
    }

    /// The polynomial `t`.
    pub fn t(p: u32) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, s: u32) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                add_mod(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    o.coeffs.get(i).copied().unwrap_or(0),
                    self.p,
                )
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| neg_mod(c, self.p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.p, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let inv = inv_mod(d.leading(), p);
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = mul_mod(r[i], inv, p);
            if f == 0 {
                continue;
            }
            q[i - dd] = f;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = sub_mod(r[k], mul_mod(f, b, p), p);
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// Multiplicity of `t` as a factor.
    pub fn t_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        irreducibles_up_to(d / 2, self.p).iter().all(|g| !g.divides(self))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then(self.p.cmp(&other.p))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// All monic polynomials of exact degree `d`.
fn monic_of_degree(d: usize, p: u32) -> Vec<Poly> {
    let count = (p as usize).pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % p as usize) as u32);
                idx /= p as usize;
            }
            c.push(1);
            Poly::new(p, c)
        })
        .collect()
}

/// Monic irreducible polynomials of degree `1..=d`, by degree then coefficients.
///
/// A monic polynomial of degree `e` is kept iff no previously found irreducible
/// of degree `<= e/2` divides it.
pub fn irreducibles_up_to(d: usize, p: u32) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for e in 1..=d {
        for cand in monic_of_degree(e, p) {
            let prime = out
                .iter()
                .take_while(|g| g.degree().unwrap() * 2 <= e)
                .all(|g| !g.divides(&cand));
            if prime {
                out.push(cand);
            }
        }
    }
    out
}

/// Factorization of a nonzero polynomial into monic irreducibles with multiplicity.
pub fn factor_poly(f: &Poly) -> Result<Vec<(Poly, u32)>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroForm);
    }
    let p = f.modulus();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let deg = rest.degree().unwrap();
    for g in irreducibles_up_to(deg / 2, p) {
        let gd = g.degree().unwrap();
        if gd * 2 > rest.degree().unwrap() {
            break;
        }
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem(&g);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((g, mult));
        }
    }
    if rest.degree().unwrap() > 0 {
        // what remains has no factor of degree <= half its degree
        match out.iter_mut().find(|(g, _)| *g == rest) {
            Some((_, m)) => *m += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    Ok(out)
}

/// A closed point of P^1 over F_p: the point at infinity (`mu = 0`) or a monic
/// irreducible polynomial in `t = lambda/mu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    Infinity,
    Finite(Poly),
}

impl ClosedPoint {
    pub fn finite(poly: Poly) -> Result<Self, FieldError> {
        if !poly.is_monic() || !poly.is_irreducible() {
            return Err(FieldError::NotIrreducible(poly.to_string()));
        }
        Ok(ClosedPoint::Finite(poly))
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(f) => f.degree().unwrap(),
        }
    }

    /// Every closed point of degree `<= d`, infinity first.
    pub fn all_up_to(d: usize, p: u32) -> Vec<ClosedPoint> {
        let mut v = vec![ClosedPoint::Infinity];
        v.extend(irreducibles_up_to(d, p).into_iter().map(ClosedPoint::Finite));
        v.sort();
        v
    }

    /// The homogeneous form vanishing exactly at this point.
    pub fn form(&self, p: u32) -> BinaryFormFq {
        match self {
            ClosedPoint::Infinity => BinaryFormFq::new(p, vec![1, 0]),
            ClosedPoint::Finite(f) => BinaryFormFq::new(p, f.coeffs().to_vec()),
        }
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ClosedPoint::Infinity, ClosedPoint::Infinity) => Ordering::Equal,
            (ClosedPoint::Infinity, _) => Ordering::Less,
            (_, ClosedPoint::Infinity) => Ordering::Greater,
            (ClosedPoint::Finite(a), ClosedPoint::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => write!(f, "inf"),
            ClosedPoint::Finite(g) => write!(f, "{g}"),
        }
    }
}

/// Wire form: `"inf"` or the monic coefficient array, low degree first.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Label(String),
    Coeffs(Vec<u32>),
}

impl ClosedPoint {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ClosedPoint::Infinity => serde_json::Value::from("inf"),
            ClosedPoint::Finite(g) => serde_json::Value::from(g.coeffs().to_vec()),
        }
    }

    pub fn from_json(p: u32, v: &serde_json::Value) -> Result<Self, FieldError> {
        let repr: PointRepr = serde_json::from_value(v.clone()).map_err(|e| FieldError::Parse(e.to_string()))?;
        match repr {
            PointRepr::Label(s) if s == "inf" => Ok(ClosedPoint::Infinity),
            PointRepr::Label(s) => Err(FieldError::Parse(format!("unknown point label {s:?}"))),
            PointRepr::Coeffs(c) => {
                if c.iter().any(|&x| x >= p) {
                    return Err(FieldError::Parse(format!("coefficient out of range for p={p}")));
                }
                ClosedPoint::finite(Poly::new(p, c))
            }
        }
    }
}

/// A homogeneous form `sum_i c_i lambda^i mu^(deg-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryFormFq {
    p: u32,
    coeffs: Vec<u32>,
}

impl BinaryFormFq {
    /// `coeffs[i]` multiplies `lambda^i mu^(deg-i)`; the degree is `coeffs.len() - 1`.
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryFormFq {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Setting `mu = 1`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.p, self.coeffs.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prod = self.dehomogenize().mul(&o.dehomogenize());
        let mut c = prod.coeffs().to_vec();
        c.resize(self.degree() + o.degree() + 1, 0);
        BinaryFormFq::new(self.p, c)
    }

    /// True if `o = c * self` for some nonzero scalar `c`.
    pub fn proportional(&self, o: &Self) -> bool {
        if self.degree() != o.degree() || self.is_zero() || o.is_zero() {
            return false;
        }
        let i = self.coeffs.iter().position(|&c| c != 0).unwrap();
        if o.coeffs[i] == 0 {
            return false;
        }
        let s = mul_mod(o.coeffs[i], inv_mod(self.coeffs[i], self.p), self.p);
        self.coeffs
            .iter()
            .zip(&o.coeffs)
            .all(|(&a, &b)| mul_mod(a, s, self.p) == b)
    }
}

/// Splits a nonzero form into closed points with multiplicity.
pub fn factor_binary_form(form: &BinaryFormFq) -> Result<Vec<(ClosedPoint, u32)>, FieldError> {
    if form.is_zero() {
        return Err(FieldError::ZeroForm);
    }
    let f = form.dehomogenize();
    let deg_t = f.degree().unwrap();
    let mut out = Vec::new();
    let inf = form.degree() - deg_t;
    if inf > 0 {
        out.push((ClosedPoint::Infinity, inf as u32));
    }
    if deg_t > 0 {
        for (g, m) in factor_poly(&f)? {
            out.push((ClosedPoint::Finite(g), m));
        }
    }
    out.sort();
    Ok(out)
}

/// Product of the point forms raised to their multiplicities.
pub fn reconstruct_form(p: u32, factors: &[(ClosedPoint, u32)]) -> BinaryFormFq {
    let mut acc = BinaryFormFq::new(p, vec![1]);
    for (pt, m) in factors {
        for _ in 0..*m {
            acc = acc.mul(&pt.form(p));
        }
    }
    acc
}

/// Invariant factors of a matrix over F_p[t], monic and nonzero, in
/// divisibility order (the trailing unit factors included).
pub fn invariant_factors(mut m: Vec<Vec<Poly>>) -> Vec<Poly> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let deg = |x: &Poly| x.degree().unwrap_or(usize::MAX);
    for t in 0..rows.min(cols) {
        // pivot of minimal degree in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| deg(&m[i][j]) < deg(&m[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, _) = m[i][t].div_rem(&m[t][t]);
                for j in t..cols {
                    let v = m[i][j].sub(&q.mul(&m[t][j]));
                    m[i][j] = v;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, _) = m[t][j].div_rem(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = row[j].sub(&q.mul(&row[t]));
                    row[j] = v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[t][t].divides(&m[i][j]));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = m[t][j].add(&m[i][j]);
                        m[t][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn irreducible_lists_over_f2() {
        let one = irreducibles_up_to(1, 2);
        assert_eq!(one, vec![poly(2, &[0, 1]), poly(2, &[1, 1])]);
        let two = irreducibles_up_to(2, 2);
        assert_eq!(two.len(), 3);
        assert_eq!(two[2], poly(2, &[1, 1, 1]));
        let three = irreducibles_up_to(3, 2);
        assert_eq!(&three[3..], &[poly(2, &[1, 1, 0, 1]), poly(2, &[1, 0, 1, 1])]);
    }

    /// Independent count: monic irreducibles of degree n over F_q number
    /// (1/n) sum_{d|n} mobius(d) q^(n/d).
    #[test]
    fn necklace_counts() {
        fn mobius(n: u32) -> i64 {
            let (mut n, mut k, mut res) = (n, 2, 1i64);
            while k * k <= n {
                if n % k == 0 {
                    n /= k;
                    if n % k == 0 {
                        return 0;
                    }
                    res = -res;
                }
                k += 1;
            }
            if n > 1 {
                res = -res;
            }
            res
        }
        for &q in &[2u32, 3, 5] {
            let list = irreducibles_up_to(4, q);
            for n in 1..=4u32 {
                let got = list.iter().filter(|g| g.degree() == Some(n as usize)).count() as i64;
                let want: i64 = (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| mobius(d) * (q as i64).pow(n / d))
                    .sum::<i64>()
                    / n as i64;
                assert_eq!(got, want, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn factor_examples() {
        // lambda * mu over F2
        let f = BinaryFormFq::new(2, vec![0, 1, 0]);
        assert_eq!(
            factor_binary_form(&f).unwrap(),
            vec![(ClosedPoint::Infinity, 1), (ClosedPoint::Finite(poly(2, &[0, 1])), 1)]
        );
        let mu3 = BinaryFormFq::new(3, vec![1, 0, 0, 0]);
        assert_eq!(factor_binary_form(&mu3).unwrap(), vec![(ClosedPoint::Infinity, 3)]);
        let q = BinaryFormFq::new(2, vec![1, 1, 1]);
        assert_eq!(
            factor_binary_form(&q).unwrap(),
            vec![(ClosedPoint::Finite(poly(2, &[1, 1, 1])), 1)]
        );
        assert_eq!(
            factor_binary_form(&BinaryFormFq::new(2, vec![0, 0])),
            Err(FieldError::ZeroForm)
        );
    }

    #[test]
    fn smith_of_companion_pencil() {
        // t*I - C for C the companion of (t+1)^2 over F3: invariant factors 1, (t+1)^2
        let p = 3;
        let g = poly(p, &[1, 1]).pow(2); // t^2 + 2t + 1
        let m = vec![
            vec![poly(p, &[0, 1]), poly(p, &[g.coeffs()[0]])],
            vec![poly(p, &[p - 1]), poly(p, &[g.coeffs()[1], 1])],
        ];
        let inv = invariant_factors(m);
        assert_eq!(inv, vec![poly(p, &[1]), g]);
    }

    fn arb_form() -> impl Strategy<Value = BinaryFormFq> {
        (0usize..3, 1usize..=6).prop_flat_map(|(pi, deg)| {
            let p = [2u32, 3, 5][pi];
            proptest::collection::vec(0u32..p, deg + 1)
                .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
                .prop_map(move |c| BinaryFormFq::new(p, c))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factor_then_reconstruct(f in arb_form()) {
            let fac = factor_binary_form(&f).unwrap();
            let total: usize = fac.iter().map(|(pt, m)| pt.degree() * *m as usize).sum();
            prop_assert_eq!(total, f.degree());
            for (pt, _) in &fac {
                if let ClosedPoint::Finite(g) = pt {
                    prop_assert!(g.is_monic() && g.is_irreducible());
                }
            }
            let back = reconstruct_form(f.modulus(), &fac);
            prop_assert!(back.proportional(&f));
        }

        #[test]
        fn div_rem_identity(a in proptest::collection::vec(0u32..5, 0..7),
                            b in proptest::collection::vec(0u32..5, 1..5)) {
            let (a, b) = (Poly::new(5, a), Poly::new(5, b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
