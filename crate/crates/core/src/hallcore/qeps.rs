//! Exact arithmetic in Q(ε) with ε² = q.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// `a + b ε` with rational `a`, `b` and `ε = +sqrt(q)`.
///
/// Every supported `q` is prime, hence not a square, so the pair `(a, b)` is
/// unique and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QEps {
    q: u32,
    a: BigRational,
    b: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QEps {
    pub fn new(q: u32, a: BigRational, b: BigRational) -> Self {
        QEps { q, a, b }
    }

    pub fn zero(q: u32) -> Self {
        QEps::new(q, BigRational::zero(), BigRational::zero())
    }

    pub fn one(q: u32) -> Self {
        Self::from_int(q, 1)
    }

    pub fn from_int(q: u32, n: i64) -> Self {
        QEps::new(q, rat(n), BigRational::zero())
    }

    pub fn from_ratio(q: u32, num: i64, den: i64) -> Self {
        QEps::new(q, BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn from_rational(q: u32, r: BigRational) -> Self {
        QEps::new(q, r, BigRational::zero())
    }

    pub fn from_bigint(q: u32, n: BigInt) -> Self {
        QEps::new(q, BigRational::from_integer(n), BigRational::zero())
    }

    /// `ε^k` for any integer `k`.
    pub fn eps_pow(q: u32, k: i64) -> Self {
        let half = k.div_euclid(2);
        let base = BigRational::from_integer(BigInt::from(q));
        let mag = if half >= 0 {
            num_traits::pow(base, half as usize)
        } else {
            num_traits::pow(base.recip(), (-half) as usize)
        };
        if k.rem_euclid(2) == 0 {
            QEps::new(q, mag, BigRational::zero())
        } else {
            QEps::new(q, BigRational::zero(), mag)
        }
    }

    pub fn eps(q: u32) -> Self {
        Self::eps_pow(q, 1)
    }

    /// The balanced quantum integer `[n] = (ε^n - ε^-n)/(ε - ε^-1)`.
    pub fn qint(q: u32, n: i64) -> Self {
        let (sign, n) = if n < 0 { (-1, -n) } else { (1, n) };
        let mut acc = QEps::zero(q);
        for i in 0..n {
            acc += &QEps::eps_pow(q, n - 1 - 2 * i);
        }
        if sign < 0 {
            -acc
        } else {
            acc
        }
    }

    /// `[n]! = [1][2]...[n]`.
    pub fn qfactorial(q: u32, n: u32) -> Self {
        (1..=n as i64).fold(QEps::one(q), |acc, i| &acc * &QEps::qint(q, i))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn eps_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// `a² - q b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat(self.q as i64) * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        QEps::new(self.q, self.a.clone(), -self.b.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QEps::new(self.q, c.a / &n, c.b / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let r = rat(n);
        QEps::new(self.q, &self.a * &r, &self.b * &r)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        QEps::new(self.q, &self.a * r, &self.b * r)
    }

    /// `self * ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        self * &QEps::eps_pow(self.q, k)
    }

    /// `Some(k)` iff `self = ε^k`.
    pub fn as_eps_power(&self) -> Option<i64> {
        match self.as_signed_eps_power() {
            Some((1, k)) => Some(k),
            _ => None,
        }
    }

    /// `Some((s, k))` iff `self = s ε^k` with `s = ±1`.
    pub fn as_signed_eps_power(&self) -> Option<(i8, i64)> {
        let (val, odd) = if self.b.is_zero() && !self.a.is_zero() {
            (&self.a, 0)
        } else if self.a.is_zero() && !self.b.is_zero() {
            (&self.b, 1)
        } else {
            return None;
        };
        let sign = if val.is_negative() { -1 } else { 1 };
        let m = q_log(self.q, &val.abs())?;
        Some((sign, 2 * m + odd))
    }

    /// Integer value when `b = 0` and `a` is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(self.a.to_string()),
            Value::String(self.b.to_string()),
        ])
    }

    pub fn from_json(q: u32, v: &Value) -> Option<Self> {
        let arr = v.as_array()?;
        if arr.len() != 2 {
            return None;
        }
        let parse = |x: &Value| x.as_str()?.parse::<BigRational>().ok();
        Some(QEps::new(q, parse(&arr[0])?, parse(&arr[1])?))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "QEps values over different q");
    }
}

/// `Some(m)` with `r = q^m`, for positive rational `r`.
fn q_log(q: u32, r: &BigRational) -> Option<i64> {
    let qb = BigInt::from(q);
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut m = 0i64;
    while (&num % &qb).is_zero() {
        num /= &qb;
        m += 1;
    }
    while (&den % &qb).is_zero() {
        den /= &qb;
        m -= 1;
    }
    (num.is_one() && den.is_one()).then_some(m)
}

impl fmt::Debug for QEps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QEps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}e", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}e", self.a, -self.b.clone())
                } else {
                    write!(f, "{}+{}e", self.a, self.b)
                }
            }
        }
    }
}

impl Add<&QEps> for &QEps {
    type Output = QEps;
    fn add(self, o: &QEps) -> QEps {
        self.check(o);
        QEps::new(self.q, &self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub<&QEps> for &QEps {
    type Output = QEps;
    fn sub(self, o: &QEps) -> QEps {
        self.check(o);
        QEps::new(self.q, &self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul<&QEps> for &QEps {
    type Output = QEps;
    fn mul(self, o: &QEps) -> QEps {
        self.check(o);
        let qr = rat(self.q as i64);
        QEps::new(
            self.q,
            &self.a * &o.a + qr * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div<&QEps> for &QEps {
    type Output = QEps;
    fn div(self, o: &QEps) -> QEps {
        self.checked_div(o).expect("division by zero in Q(eps)")
    }
}

impl Neg for QEps {
    type Output = QEps;
    fn neg(self) -> QEps {
        QEps::new(self.q, -self.a, -self.b)
    }
}

impl Neg for &QEps {
    type Output = QEps;
    fn neg(self) -> QEps {
        -self.clone()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QEps> for QEps {
            type Output = QEps;
            fn $m(self, o: QEps) -> QEps { (&self).$m(&o) }
        }
        impl $tr<&QEps> for QEps {
            type Output = QEps;
            fn $m(self, o: &QEps) -> QEps { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&QEps> for QEps {
    fn add_assign(&mut self, o: &QEps) {
        self.check(o);
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&QEps> for QEps {
    fn sub_assign(&mut self, o: &QEps) {
        self.check(o);
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb(q: u32) -> impl Strategy<Value = QEps> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(move |(a, da, b, db)| {
            QEps::new(
                q,
                BigRational::new(a.into(), da.into()),
                BigRational::new(b.into(), db.into()),
            )
        })
    }

    #[test]
    fn eps_powers() {
        let q = 2;
        let e = QEps::eps(q);
        assert_eq!(&e * &e, QEps::from_int(q, 2));
        assert_eq!(QEps::eps_pow(q, -2), QEps::from_ratio(q, 1, 2));
        assert_eq!(&QEps::eps_pow(q, 3) * &QEps::eps_pow(q, -5), QEps::eps_pow(q, -2));
        for k in -7..7 {
            assert_eq!(QEps::eps_pow(q, k).as_eps_power(), Some(k));
            assert_eq!((-QEps::eps_pow(3, k)).as_signed_eps_power(), Some((-1, k)));
        }
        assert_eq!(QEps::from_int(q, 3).as_eps_power(), None);
        assert_eq!((QEps::one(q) + QEps::eps(q)).as_eps_power(), None);
    }

    #[test]
    fn quantum_integers() {
        let q = 3;
        assert_eq!(QEps::qint(q, 1), QEps::one(q));
        let e = QEps::eps(q);
        assert_eq!(QEps::qint(q, 2), &e + &e.inv().unwrap());
        assert_eq!(QEps::qint(q, -2), -QEps::qint(q, 2));
        assert_eq!(QEps::qint(q, 0), QEps::zero(q));
        // [3] = ε² + 1 + ε⁻²
        assert_eq!(QEps::qint(q, 3), QEps::from_ratio(q, 3 * 3 + 3 + 1, 3));
        assert_eq!(QEps::qfactorial(q, 3), QEps::qint(q, 2) * QEps::qint(q, 3));
    }

    #[test]
    fn json_round_trip() {
        let x = QEps::new(5, BigRational::new((-3).into(), 7.into()), rat(4));
        assert_eq!(QEps::from_json(5, &x.to_json()).unwrap(), x);
        assert_eq!(x.to_string(), "-3/7+4e");
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(2), y in arb(2), z in arb(2)) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
            prop_assert_eq!(x.norm(), (&x * &x.conj()).rational_part().clone());
        }
    }
}
